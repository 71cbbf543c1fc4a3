//! Sturm chains, exact root counting on intervals with rational, quadratic
//! or infinite endpoints, root isolation and bisection refinement.

mod point;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, rational::serde_fraction, to_f64, QuadNum, Rational};
use crate::poly::Poly;

pub use point::{AlgebraicRoot, Interval, RealPoint};

/// Where a chain is evaluated when counting sign variations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Rat(Rational),
    Quad(QuadNum),
    PosInf,
}

impl Bound {
    fn cmp_exact(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Rat(x), Rat(y)) => x.cmp(y),
            (Rat(x), Quad(y)) => y.cmp_rational(x).reverse(),
            (Quad(x), Rat(y)) => x.cmp_rational(y),
            (Quad(x), Quad(y)) => x.cmp_exact(y),
        }
    }
}

/// Signed remainder sequence of the square-free part of a polynomial.
///
/// Every element is stored as a positive multiple with coprime integer
/// coefficients, which leaves all signs unchanged.
#[derive(Debug)]
pub struct SturmChain {
    polys: Vec<Poly>,
    ints: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self> {
        match p.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::ConstantPolynomial(p.to_string())),
        }
        let (base, _) = p.squarefree_part()?;
        let first = base.primitive_integer();
        let mut ints = vec![first.clone(), primitive(derivative_int(&first))];
        loop {
            let n = ints.len();
            let mut r = signed_prem(&ints[n - 2], &ints[n - 1]);
            if r.is_empty() {
                break;
            }
            for c in &mut r {
                *c = -&*c;
            }
            ints.push(primitive(r));
        }
        let polys = ints
            .iter()
            .map(|q| Poly::new(q.iter().cloned().map(Rational::from_integer).collect()))
            .collect();
        Ok(Self { polys, ints })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The square-free polynomial the chain is built on.
    pub fn base(&self) -> &Poly {
        &self.polys[0]
    }

    pub fn degree(&self) -> usize {
        self.polys[0].degree().unwrap_or(0)
    }

    /// Sign of `base(x)` at a rational point.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        sign_at_rational(&self.ints[0], x)
    }

    fn signs_at(&self, x: &Bound) -> Vec<Ordering> {
        match x {
            Bound::Rat(r) => self.ints.iter().map(|p| sign_at_rational(p, r)).collect(),
            Bound::Quad(q) => self.polys.iter().map(|p| p.eval_quad(q).sign()).collect(),
            Bound::PosInf | Bound::NegInf => self
                .ints
                .iter()
                .map(|p| {
                    let lead = p.last().unwrap().sign();
                    let s = if lead == num_bigint::Sign::Minus {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                    let odd = p.len() % 2 == 0;
                    if matches!(x, Bound::NegInf) && odd {
                        s.reverse()
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Bound) -> usize {
        let signs = self.signs_at(x);
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> Result<usize> {
        if lo.cmp_exact(hi) != Ordering::Less {
            return Err(Error::InvalidInterval(format!("{lo:?} >= {hi:?}")));
        }
        Ok(self.variations(lo) - self.variations(hi))
    }

    pub(crate) fn count_rat(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_rat(lo) - self.variations_rat(hi)
    }

    fn variations_rat(&self, x: &Rational) -> usize {
        self.variations(&Bound::Rat(x.clone()))
    }

    /// `1 + max |c_i / c_n|`; every root lies strictly inside.
    pub fn root_bound(&self) -> Rational {
        let base = self.base();
        let lead = base.leading().unwrap().abs();
        let max = base
            .coeffs()
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        max + int(1)
    }
}

/// Sign of `sum c_i x^i` for `x = n/m`, via the homogenized integer sum
/// `sum c_i n^i m^(deg - i)` (same sign because `m > 0`).
fn derivative_int(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Divides out the positive content.
fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let content = p
        .iter()
        .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut p {
            *c /= &content;
        }
    }
    p
}

/// Positive multiple of `rem(a, b)` via integer pseudo-division.
fn signed_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut steps = 0usize;
    while r.len() > db {
        let k = r.len() - 1;
        let lead = r[k].clone();
        for c in &mut r {
            *c *= lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] -= &lead * bc;
        }
        steps += 1;
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        r = primitive(r);
    }
    // each step scaled by lc; the content removal only divides by positives
    if lc.is_negative() && steps % 2 == 1 {
        for c in &mut r {
            *c = -&*c;
        }
    }
    r
}

fn sign_at_rational(coeffs: &[BigInt], x: &Rational) -> Ordering {
    let n = x.numer();
    let m = x.denom();
    let mut acc = BigInt::zero();
    let mut mpow = BigInt::one();
    // Horner from the top: acc = acc * n + c_i * m^(deg - i)
    for (k, c) in coeffs.iter().rev().enumerate() {
        if k == 0 {
            acc = c.clone();
        } else {
            mpow *= m;
            acc = acc * n + c * &mpow;
        }
    }
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        match self.sign() {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// One distinct real root of polynomial `poly_id`, isolated in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(with = "serde_fraction")]
    pub lo: Rational,
    #[serde(with = "serde_fraction")]
    pub hi: Rational,
    pub poly_id: usize,
    pub multiplicity: usize,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

/// Sorted isolating intervals for every distinct real root of a polynomial.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub poly_id: usize,
    pub degree: usize,
    pub chain: Arc<SturmChain>,
    pub real_roots: Vec<IsolatingInterval>,
    pub n_real_with_mult: usize,
    pub n_nonreal: usize,
}

impl RootReport {
    pub fn is_real_rooted(&self) -> bool {
        self.n_nonreal == 0
    }

    /// The `k`-th root (0-based, ascending) as an exact algebraic number.
    pub fn root(&self, k: usize) -> AlgebraicRoot {
        let iv = &self.real_roots[k];
        AlgebraicRoot::new(self.chain.clone(), iv.lo.clone(), iv.hi.clone())
    }

    pub fn roots(&self) -> Vec<AlgebraicRoot> {
        (0..self.real_roots.len()).map(|k| self.root(k)).collect()
    }

    /// A copy with every interval refined to width at most `eps`.
    pub fn refined(&self, eps: &Rational) -> RootReport {
        let mut out = self.clone();
        for iv in &mut out.real_roots {
            *iv = refine_with(iv, &self.chain, eps);
        }
        out
    }

    /// Root values with multiplicity, sorted.
    pub fn approximations(&self, eps: &Rational) -> Vec<f64> {
        self.refined(eps)
            .real_roots
            .iter()
            .flat_map(|iv| std::iter::repeat_n(iv.approx(), iv.multiplicity))
            .collect()
    }
}

pub fn sturm_chain(p: &Poly) -> Result<SturmChain> {
    SturmChain::new(p)
}

/// Distinct real roots of the chain's polynomial in `(lo, hi]`.
pub fn count_roots(chain: &SturmChain, lo: &Bound, hi: &Bound) -> Result<usize> {
    chain.count(lo, hi)
}

/// Isolates all distinct real roots of `p` into disjoint, sorted intervals.
pub fn isolate_roots(p: &Poly, poly_id: usize) -> Result<RootReport> {
    let chain = Arc::new(SturmChain::new(p)?);
    let (_, factors) = p.squarefree_part()?;
    let degree = p.degree().unwrap();
    let intervals = isolate_chain(&chain);

    let factor_chains: Vec<(SturmChain, usize)> = factors
        .iter()
        .map(|f| Ok((SturmChain::new(&f.factor)?, f.multiplicity)))
        .collect::<Result<_>>()?;
    let real_roots: Vec<IsolatingInterval> = intervals
        .into_iter()
        .map(|(lo, hi)| {
            let multiplicity = factor_chains
                .iter()
                .find(|(fc, _)| fc.count_rat(&lo, &hi) == 1)
                .map(|(_, m)| *m)
                .expect("every root belongs to one square-free factor");
            IsolatingInterval {
                lo,
                hi,
                poly_id,
                multiplicity,
            }
        })
        .collect();
    let n_real_with_mult = real_roots.iter().map(|iv| iv.multiplicity).sum();
    Ok(RootReport {
        poly_id,
        degree,
        chain,
        real_roots,
        n_real_with_mult,
        n_nonreal: degree - n_real_with_mult,
    })
}

/// Real roots of `p` counted with multiplicity, without isolating them.
pub fn count_real_with_multiplicity(p: &Poly) -> Result<usize> {
    let (_, factors) = p.squarefree_part()?;
    factors.iter().try_fold(0, |acc, f| {
        let chain = SturmChain::new(&f.factor)?;
        Ok(acc + f.multiplicity * chain.count(&Bound::NegInf, &Bound::PosInf)?)
    })
}

/// Bisection on the Cauchy bracket until each piece holds one root.
pub(crate) fn isolate_chain(chain: &SturmChain) -> Vec<(Rational, Rational)> {
    let bound = chain.root_bound();
    let lo = -bound.clone();
    let total = chain.count_rat(&lo, &bound);
    let mut out = Vec::with_capacity(total);
    // Depth-first, left half first, keeps the output sorted.
    let mut stack = vec![(lo, bound, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                let left = chain.count_rat(&lo, &mid);
                stack.push((mid.clone(), hi, n - left));
                stack.push((lo, mid, left));
            }
        }
    }
    out
}

/// Bisects `iv` until its width is at most `eps`, keeping the same root.
pub fn refine(iv: &IsolatingInterval, p: &Poly, eps: &Rational) -> Result<IsolatingInterval> {
    let chain = SturmChain::new(p)?;
    Ok(refine_with(iv, &chain, eps))
}

pub fn refine_with(
    iv: &IsolatingInterval,
    chain: &SturmChain,
    eps: &Rational,
) -> IsolatingInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / int(2);
        if chain.count_rat(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    IsolatingInterval {
        lo,
        hi,
        poly_id: iv.poly_id,
        multiplicity: iv.multiplicity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::sequence::{generate, Params};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn textbook_chain() {
        let chain = sturm_chain(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(chain.polys(), &[p(&[-2, 0, 1]), p(&[0, 1]), p(&[1])]);
    }

    #[test]
    fn chain_uses_squarefree_part() {
        let chain = sturm_chain(&p(&[1, -2, 1])).unwrap();
        assert_eq!(chain.base(), &p(&[-1, 1]));
        assert_eq!(chain.len(), 2);
        assert!(matches!(
            sturm_chain(&p(&[3])),
            Err(Error::ConstantPolynomial(_))
        ));
    }

    #[test]
    fn chain_for_quartic_example_has_five_terms() {
        let params = Params::new(int(-3), int(-5), rat(4, 5), int(-1)).unwrap();
        let bundle = generate(&params, 4).unwrap();
        let chain = sturm_chain(bundle.w(4)).unwrap();
        assert_eq!(chain.len(), 5);
        assert_eq!(chain.polys().last().unwrap().degree(), Some(0));
    }

    #[test]
    fn half_open_counting() {
        let chain = sturm_chain(&p(&[-1, 0, 1])).unwrap();
        let r = |x: i64| Bound::Rat(int(x));
        assert_eq!(count_roots(&chain, &r(0), &r(2)).unwrap(), 1);
        assert_eq!(count_roots(&chain, &r(-1), &r(0)).unwrap(), 0);
        assert_eq!(count_roots(&chain, &r(0), &r(1)).unwrap(), 1);
        assert_eq!(
            count_roots(&chain, &Bound::NegInf, &Bound::PosInf).unwrap(),
            2
        );
        assert_eq!(count_roots(&chain, &Bound::NegInf, &r(-1)).unwrap(), 1);
        assert!(count_roots(&chain, &r(1), &r(1)).is_err());
        assert!(count_roots(&chain, &Bound::PosInf, &r(1)).is_err());
    }

    #[test]
    fn counting_with_quadratic_endpoints() {
        // z^2 - 2 has roots +-sqrt(2); (1, sqrt 2] holds one, (sqrt 2, 2] none
        let chain = sturm_chain(&p(&[-2, 0, 1])).unwrap();
        let s = Bound::Quad(QuadNum::sqrt(int(2)).unwrap());
        assert_eq!(chain.count(&Bound::Rat(int(1)), &s).unwrap(), 1);
        assert_eq!(chain.count(&s, &Bound::Rat(int(2))).unwrap(), 0);
        let minus_s = Bound::Quad(QuadNum::sqrt(int(2)).unwrap().neg());
        assert_eq!(chain.count(&minus_s, &s).unwrap(), 1);
    }

    #[test]
    fn isolation_of_simple_quadratic() {
        let report = isolate_roots(&p(&[-2, 0, 1]), 2).unwrap();
        assert_eq!(report.real_roots.len(), 2);
        assert!(report.real_roots.iter().all(|iv| iv.multiplicity == 1));
        assert_eq!(report.n_nonreal, 0);
        assert!(report.real_roots[0].hi <= report.real_roots[1].lo);
    }

    #[test]
    fn multiplicities_and_nonreal_counts() {
        // (z-1)^2 (z+2) (z^2 + 1)
        let f = &(&(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1])) * &p(&[1, 0, 1]);
        let report = isolate_roots(&f, 0).unwrap();
        assert_eq!(report.real_roots.len(), 2);
        assert_eq!(report.real_roots[0].multiplicity, 1);
        assert_eq!(report.real_roots[1].multiplicity, 2);
        assert_eq!(report.n_real_with_mult, 3);
        assert_eq!(report.n_nonreal, 2);
    }

    #[test]
    fn real_count_with_multiplicity() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        assert_eq!(count_real_with_multiplicity(&f).unwrap(), 2);
        assert_eq!(count_real_with_multiplicity(&p(&[-1, 0, 0, 1])).unwrap(), 1);
    }

    #[test]
    fn refinement_reaches_sqrt2() {
        let f = p(&[-2, 0, 1]);
        let report = isolate_roots(&f, 0).unwrap();
        let eps = rat(1, 1_000_000);
        let iv = refine(&report.real_roots[1], &f, &eps).unwrap();
        assert!(iv.width() <= eps);
        assert!(iv.lo < rat(1414214, 1_000_000) && iv.hi > rat(1414213, 1_000_000));
    }

    #[test]
    fn rational_root_survives_refinement() {
        // roots 0, 1/2, 3: bisection midpoints hit them exactly
        let f = &(&p(&[0, 1]) * &p(&[-1, 2])) * &p(&[-3, 1]);
        let report = isolate_roots(&f, 0).unwrap().refined(&rat(1, 1 << 20));
        let mids: Vec<f64> = report.real_roots.iter().map(|iv| iv.approx()).collect();
        for (m, want) in mids.iter().zip([0.0, 0.5, 3.0]) {
            assert!((m - want).abs() < 1e-5, "{mids:?}");
        }
    }
}
