//! Helpers shared by the property and acceptance suites.

#![allow(dead_code)]

use interlace_core::exactnum::{rat, Rational};
use interlace_core::poly::Poly;
use interlace_core::sequence::Params;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Distinct rational roots on a quarter grid with multiplicities, plus
/// an optional factor `z^2 + s` without real zeros and a nonzero scale.
#[derive(Clone, Debug)]
pub struct KnownFactors {
    pub roots: Vec<(i64, u32)>,
    pub quadratic: Option<i64>,
    pub scale: i64,
}

impl KnownFactors {
    pub fn distinct(&self) -> Vec<Rational> {
        self.roots.iter().map(|(k, _)| rat(*k, 4)).collect()
    }

    pub fn expand(&self) -> Poly {
        let mut p = Poly::constant(rat(self.scale, 1));
        for (k, m) in &self.roots {
            p = &p * &Poly::linear(rat(1, 1), rat(-*k, 4)).pow(*m);
        }
        if let Some(s) = self.quadratic {
            p = &p * &Poly::from_ints(&[s, 0, 1]);
        }
        p
    }

    /// The same real zeros, each simple.
    pub fn simple_part(&self) -> Poly {
        self.distinct().iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::linear(rat(1, 1), -r.clone())
        })
    }

    /// Random factors of total degree at most 8.
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        loop {
            let count = rng.gen_range(1..=5);
            let mut roots: Vec<(i64, u32)> = (0..count)
                .map(|_| (rng.gen_range(-24..=24), rng.gen_range(1..=3)))
                .collect();
            roots.sort();
            roots.dedup_by_key(|(k, _)| *k);
            let quadratic = rng.gen_bool(0.5).then(|| rng.gen_range(1..=9));
            let linear: u32 = roots.iter().map(|(_, m)| m).sum();
            if linear + if quadratic.is_some() { 2 } else { 0 } > 8 {
                continue;
            }
            let scale = if rng.gen_bool(0.5) {
                rng.gen_range(1..=5)
            } else {
                -rng.gen_range(1..=5)
            };
            return Self {
                roots,
                quadratic,
                scale,
            };
        }
    }
}

/// Sign changes of the simple part across grid points `(2j+1)/16` in
/// `(lo, hi]`; every root `k/4` sits strictly between two grid points and
/// no two roots share a cell.
pub fn grid_scan_count(simple: &Poly, lo: i64, hi: i64) -> usize {
    let mut count = 0;
    let mut prev = simple.eval(&rat(lo, 16));
    let mut j = lo;
    while j < hi {
        j += 2;
        let x = rat(j.min(hi), 16);
        let v = simple.eval(&x);
        if (v < rat(0, 1)) != (prev < rat(0, 1)) && v != rat(0, 1) && prev != rat(0, 1) {
            count += 1;
        }
        prev = v;
    }
    count
}

/// Random parameters with `a, b, d < 0 < c`.
pub fn random_regime_params(rng: &mut ChaCha8Rng) -> Params {
    let mut coord = |sign: i64, num: i64| rat(sign * rng.gen_range(1..=num), rng.gen_range(1..=10));
    let a = coord(-1, 60);
    let b = coord(-1, 60);
    let c = coord(1, 200);
    let d = coord(-1, 60);
    Params::new(a, b, c, d).unwrap()
}

pub fn zero() -> Rational {
    rat(0, 1)
}
