//! Exact real points: rationals, quadratic surds and isolated polynomial
//! roots, with a total order that never falls back to floating point.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::{Bound, SturmChain};
use crate::error::{Error, Result};
use crate::exactnum::{int, to_f64, QuadNum, Rational};

const MAX_BISECTIONS: usize = 512;

/// The unique root of a square-free chain base inside `(lo, hi]`.
#[derive(Clone, Debug)]
pub struct AlgebraicRoot {
    chain: Arc<SturmChain>,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicRoot {
    pub fn new(chain: Arc<SturmChain>, lo: Rational, hi: Rational) -> Self {
        debug_assert_eq!(chain.count_rat(&lo, &hi), 1);
        Self { chain, lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn chain(&self) -> &Arc<SturmChain> {
        &self.chain
    }

    /// Halves the isolating interval.
    pub fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / int(2);
        if self.chain.count_rat(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to(&mut self, eps: &Rational) {
        while &self.hi - &self.lo > *eps {
            self.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut r = self.clone();
        r.refine_to(&Rational::new(1.into(), (1u64 << 60).into()));
        to_f64(&((&r.lo + &r.hi) / int(2)))
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if *x <= self.lo {
            return Ordering::Greater;
        }
        if *x > self.hi {
            return Ordering::Less;
        }
        if self.chain.sign_at(x) == Ordering::Equal {
            return Ordering::Equal;
        }
        if self.chain.count_rat(&self.lo, x) == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn cmp_quad(&self, x: &QuadNum) -> Ordering {
        if let Some(r) = x.as_rational() {
            return self.cmp_rational(r);
        }
        // Cheap rational bisection first; the exact test below is costly
        // for long chains.
        let mut r = self.clone();
        for _ in 0..64 {
            if x.cmp_rational(&r.lo) != Ordering::Greater {
                return Ordering::Greater;
            }
            if x.cmp_rational(&r.hi) == Ordering::Greater {
                return Ordering::Less;
            }
            r.bisect();
        }
        if r.chain.base().eval_quad(x).is_zero() {
            return Ordering::Equal;
        }
        let below = r
            .chain
            .count(&Bound::Rat(r.lo.clone()), &Bound::Quad(x.clone()))
            .expect("lo < x");
        if below == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn cmp_root(&self, other: &Self) -> Result<Ordering> {
        let common = self.chain.base().gcd(other.chain.base())?;
        let shared = match common.degree() {
            Some(d) if d >= 1 => Some(SturmChain::new(&common)?),
            _ => None,
        };
        self.cmp_root_with(other, shared.as_ref())
    }

    /// Like [`cmp_root`](Self::cmp_root) with the Sturm chain of the gcd of
    /// both bases precomputed (`None` when the bases are coprime).
    pub fn cmp_root_with(&self, other: &Self, shared: Option<&SturmChain>) -> Result<Ordering> {
        let mut a = self.clone();
        let mut b = other.clone();
        for _ in 0..MAX_BISECTIONS {
            if a.hi <= b.lo {
                return Ok(Ordering::Less);
            }
            if b.hi <= a.lo {
                return Ok(Ordering::Greater);
            }
            if let Some(g) = shared {
                let lo = std::cmp::max(&a.lo, &b.lo);
                let hi = std::cmp::min(&a.hi, &b.hi);
                // a common root in the overlap is the root of both
                if lo < hi && g.count_rat(lo, hi) >= 1 {
                    return Ok(Ordering::Equal);
                }
            }
            a.bisect();
            b.bisect();
        }
        Err(Error::RefinementLimit(MAX_BISECTIONS))
    }
}

impl fmt::Display for AlgebraicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root of {} in ({}, {}]",
            self.chain.base(),
            self.lo,
            self.hi
        )
    }
}

/// A point of the extended real line.
#[derive(Clone, Debug)]
pub enum RealPoint {
    NegInf,
    Rat(Rational),
    Quad(QuadNum),
    Root(AlgebraicRoot),
    PosInf,
}

impl RealPoint {
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        use RealPoint::*;
        Ok(match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Rat(x), Rat(y)) => x.cmp(y),
            (Rat(x), Quad(y)) => y.cmp_rational(x).reverse(),
            (Quad(x), Rat(y)) => x.cmp_rational(y),
            (Quad(x), Quad(y)) => x.cmp_exact(y),
            (Root(r), Rat(x)) => r.cmp_rational(x),
            (Rat(x), Root(r)) => r.cmp_rational(x).reverse(),
            (Root(r), Quad(x)) => r.cmp_quad(x),
            (Quad(x), Root(r)) => r.cmp_quad(x).reverse(),
            (Root(r), Root(s)) => r.cmp_root(s)?,
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealPoint::NegInf => f64::NEG_INFINITY,
            RealPoint::PosInf => f64::INFINITY,
            RealPoint::Rat(x) => to_f64(x),
            RealPoint::Quad(x) => x.to_f64(),
            RealPoint::Root(r) => r.to_f64(),
        }
    }

    /// A rational `u >= self` with `u - self <= eps`; `None` at infinity.
    pub fn upper_bound(&self, eps: &Rational) -> Option<Rational> {
        match self {
            RealPoint::NegInf | RealPoint::PosInf => None,
            RealPoint::Rat(x) => Some(x.clone()),
            RealPoint::Quad(x) => Some(x.enclosure(eps).1),
            RealPoint::Root(r) => {
                let mut r = r.clone();
                r.refine_to(eps);
                Some(r.hi)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, RealPoint::NegInf | RealPoint::PosInf)
    }

    /// Endpoint form usable by Sturm counting, if the point is not a root.
    pub fn as_bound(&self) -> Option<Bound> {
        match self {
            RealPoint::NegInf => Some(Bound::NegInf),
            RealPoint::PosInf => Some(Bound::PosInf),
            RealPoint::Rat(x) => Some(Bound::Rat(x.clone())),
            RealPoint::Quad(x) => Some(match x.as_rational() {
                Some(r) => Bound::Rat(r.clone()),
                None => Bound::Quad(x.clone()),
            }),
            RealPoint::Root(_) => None,
        }
    }
}

impl From<Rational> for RealPoint {
    fn from(x: Rational) -> Self {
        RealPoint::Rat(x)
    }
}

impl From<QuadNum> for RealPoint {
    fn from(x: QuadNum) -> Self {
        RealPoint::Quad(x)
    }
}

impl From<AlgebraicRoot> for RealPoint {
    fn from(x: AlgebraicRoot) -> Self {
        RealPoint::Root(x)
    }
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPoint::NegInf => write!(f, "-inf"),
            RealPoint::PosInf => write!(f, "+inf"),
            RealPoint::Rat(x) => write!(f, "{x}"),
            RealPoint::Quad(x) => write!(f, "{x}"),
            RealPoint::Root(r) => write!(f, "{r}"),
        }
    }
}

/// A labelled real interval with independently open or closed ends.
#[derive(Clone, Debug)]
pub struct Interval {
    pub label: String,
    pub lo: RealPoint,
    pub lo_closed: bool,
    pub hi: RealPoint,
    pub hi_closed: bool,
}

impl Interval {
    pub fn open(label: &str, lo: impl Into<RealPoint>, hi: impl Into<RealPoint>) -> Self {
        Self::new(label, lo.into(), false, hi.into(), false)
    }

    pub fn new(
        label: &str,
        lo: RealPoint,
        lo_closed: bool,
        hi: RealPoint,
        hi_closed: bool,
    ) -> Self {
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        Self {
            label: label.to_string(),
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }

    pub fn contains(&self, x: &RealPoint) -> Result<bool> {
        let above = match self.lo.cmp_exact(x)? {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        if !above {
            return Ok(false);
        }
        Ok(match x.cmp_exact(&self.hi)? {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(match self.lo.cmp_exact(&self.hi)? {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(
            f,
            "{} = {open}{:.6}, {:.6}{close}",
            self.label,
            self.lo.to_f64(),
            self.hi.to_f64()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::isolate::isolate_roots;
    use crate::poly::Poly;

    fn roots(c: &[i64]) -> Vec<AlgebraicRoot> {
        isolate_roots(&Poly::from_ints(c), 0).unwrap().roots()
    }

    #[test]
    fn root_against_rationals() {
        let r = roots(&[-2, 0, 1]);
        let s2 = RealPoint::Root(r[1].clone());
        assert_eq!(
            s2.cmp_exact(&rat(141, 100).into()).unwrap(),
            Ordering::Greater
        );
        assert_eq!(s2.cmp_exact(&rat(142, 100).into()).unwrap(), Ordering::Less);
        let one = roots(&[-1, 1]);
        assert_eq!(
            RealPoint::Root(one[0].clone())
                .cmp_exact(&int(1).into())
                .unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn root_against_quadratic_surds() {
        let r = roots(&[-2, 0, 1]);
        let sqrt2 = QuadNum::sqrt(int(2)).unwrap();
        assert_eq!(r[1].cmp_quad(&sqrt2), Ordering::Equal);
        assert_eq!(r[0].cmp_quad(&sqrt2.neg()), Ordering::Equal);
        let sqrt3 = QuadNum::sqrt(int(3)).unwrap();
        assert_eq!(r[1].cmp_quad(&sqrt3), Ordering::Less);
        // 1 + sqrt(2) - 1e-9 sits just under the root of z^2 - 2z - 1
        let t = roots(&[-1, -2, 1]);
        let near = QuadNum::from_parts(int(1) - rat(1, 1_000_000_000), int(1), &int(2));
        assert_eq!(t[1].cmp_quad(&near), Ordering::Greater);
    }

    #[test]
    fn root_against_root() {
        // sqrt 2 (from z^2 - 2) vs sqrt 2 (from z^4 - 4) vs cbrt 3
        let a = roots(&[-2, 0, 1]);
        let b = roots(&[-4, 0, 0, 0, 1]);
        let c = roots(&[-3, 0, 0, 1]);
        assert_eq!(a[1].cmp_root(&b[1]).unwrap(), Ordering::Equal);
        assert_eq!(a[0].cmp_root(&b[0]).unwrap(), Ordering::Equal);
        assert_eq!(a[1].cmp_root(&c[0]).unwrap(), Ordering::Less);
        assert_eq!(c[0].cmp_root(&a[0]).unwrap(), Ordering::Greater);
    }

    #[test]
    fn interval_membership() {
        let sqrt2 = QuadNum::sqrt(int(2)).unwrap();
        let iv = Interval::new(
            "J",
            RealPoint::Rat(int(1)),
            false,
            RealPoint::Quad(sqrt2.clone()),
            true,
        );
        assert!(iv.contains(&RealPoint::Quad(sqrt2)).unwrap());
        assert!(!iv.contains(&RealPoint::Rat(int(1))).unwrap());
        assert!(iv.contains(&RealPoint::Rat(rat(5, 4))).unwrap());
        assert!(!iv.is_empty().unwrap());
        let unbounded = Interval::new("J", RealPoint::Rat(int(0)), false, RealPoint::PosInf, true);
        assert!(!unbounded.hi_closed);
        assert!(unbounded.contains(&RealPoint::Rat(int(10_000))).unwrap());
        let point = Interval::new("P", int(2).into(), true, int(2).into(), false);
        assert!(point.is_empty().unwrap());
    }
}
