use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{exact_rational_sqrt, int, pow2_at_least, to_decimal, to_f64, Rational};
use crate::error::{Error, Result};

/// Square factors `k^2` with `k` up to this bound are pulled out of radicands.
const SQUARE_STRIP_LIMIT: u32 = 1000;

/// An exact real number `p + q * sqrt(d)`.
///
/// Canonical form: `d` is a non-negative integer that is not a perfect
/// square and carries no square factor `k^2` with `k <= 1000`; `q == 0`
/// implies `d == 0`. Canonical forms make structural equality coincide with
/// numeric equality for values sharing a radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    p: Rational,
    q: Rational,
    d: Rational,
}

impl QuadNum {
    /// Builds `p + q sqrt(d)` and canonicalizes it.
    pub fn new(p: Rational, q: Rational, d: Rational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        if q.is_zero() || d.is_zero() {
            return Ok(Self::from_rational(p));
        }
        // sqrt(n/m) = sqrt(n m) / m
        let m = d.denom().clone();
        let mut radicand: BigInt = d.numer() * &m;
        let mut q = q / Rational::from_integer(m);
        for k in 2..=SQUARE_STRIP_LIMIT {
            let sq = BigInt::from(k) * BigInt::from(k);
            if sq > radicand {
                break;
            }
            while (&radicand % &sq).is_zero() {
                radicand /= &sq;
                q *= int(k as i64);
            }
        }
        let radicand = Rational::from_integer(radicand);
        if let Some(root) = exact_rational_sqrt(&radicand) {
            return Ok(Self::from_rational(p + q * root));
        }
        Ok(Self { p, q, d: radicand })
    }

    pub fn from_rational(p: Rational) -> Self {
        Self {
            p,
            q: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// `sqrt(d)` for `d >= 0`.
    pub fn sqrt(d: Rational) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// Internal constructor for results that share an already canonical
    /// radicand.
    pub(crate) fn from_parts(p: Rational, q: Rational, d: &Rational) -> Self {
        if q.is_zero() {
            Self::from_rational(p)
        } else {
            Self { p, q, d: d.clone() }
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn radical_coeff(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::from_parts(self.p.clone(), -&self.q, &self.d)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(-&self.p, -&self.q, &self.d)
    }

    /// Brings two operands onto a common radicand, returning
    /// `(radicand, q_self, q_other)`.
    fn align(&self, other: &Self) -> Result<(Rational, Rational, Rational)> {
        if other.q.is_zero() {
            return Ok((self.d.clone(), self.q.clone(), Rational::zero()));
        }
        if self.q.is_zero() {
            return Ok((other.d.clone(), Rational::zero(), other.q.clone()));
        }
        if self.d == other.d {
            return Ok((self.d.clone(), self.q.clone(), other.q.clone()));
        }
        // sqrt(d2) = s sqrt(d1) when d2 / d1 = s^2
        match exact_rational_sqrt(&(&other.d / &self.d)) {
            Some(s) => Ok((self.d.clone(), self.q.clone(), &other.q * s)),
            None => Err(Error::IncompatibleRadicand(
                self.d.to_string(),
                other.d.to_string(),
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (d, q1, q2) = self.align(other)?;
        Ok(Self::from_parts(&self.p + &other.p, q1 + q2, &d))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `(p1 p2 + q1 q2 D) + (p1 q2 + p2 q1) sqrt(D)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (d, q1, q2) = self.align(other)?;
        let p = &self.p * &other.p + &q1 * &q2 * &d;
        let q = &self.p * &q2 + &other.p * &q1;
        Ok(Self::from_parts(p, q, &d))
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Self::from_parts(&self.p + r, self.q.clone(), &self.d)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Self::from_parts(&self.p * r, &self.q * r, &self.d)
    }

    /// `p^2 - q^2 D`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * &self.d
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts(&self.p / &n, -&self.q / &n, &self.d))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.recip()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_rational(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same radicand");
            }
            base = base.mul(&base).expect("same radicand");
            e >>= 1;
        }
        acc
    }

    /// Exact sign of `p + q sqrt(D)`, by comparing `p^2` with `q^2 D` when
    /// the two terms have opposite signs.
    pub fn sign(&self) -> Ordering {
        let sp = self.p.cmp(&Rational::zero());
        let sq = self.q.cmp(&Rational::zero());
        match (sp, sq) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            _ => {
                let p2 = &self.p * &self.p;
                let q2d = &self.q * &self.q * &self.d;
                match p2.cmp(&q2d) {
                    Ordering::Greater => sp,
                    Ordering::Less => sq,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Rational enclosure `[lo, hi]` of the value with `hi - lo <= eps`.
    pub fn enclosure(&self, eps: &Rational) -> (Rational, Rational) {
        if self.q.is_zero() {
            return (self.p.clone(), self.p.clone());
        }
        // floor(sqrt(D) K) / K with K >= |q| / eps
        let k = pow2_at_least(&(self.q.abs() / eps));
        let k_int = k.to_integer();
        let n = self.d.numer() * &k_int * &k_int;
        let s = n.sqrt();
        let lo_root = Rational::new(s.clone(), k_int.clone());
        let hi_root = Rational::new(s + 1u32, k_int);
        let a = &self.p + &self.q * lo_root;
        let b = &self.p + &self.q * hi_root;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Rational `r` with `|r - x| <= eps`.
    pub fn approx(&self, eps: &Rational) -> Rational {
        self.enclosure(eps).0
    }

    pub fn to_f64(&self) -> f64 {
        if self.q.is_zero() {
            return to_f64(&self.p);
        }
        let scale = self.p.abs() + self.q.abs() * (self.d.clone() + int(1));
        let eps = scale * Rational::new(BigInt::one(), BigInt::from(1u64 << 60));
        to_f64(&self.approx(&eps))
    }

    /// Decimal string with `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let eps = Rational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10u32), digits + 12),
        );
        to_decimal(&self.approx(&eps), digits)
    }

    /// Exact comparison. Values with compatible radicands compare through
    /// the sign of their difference; otherwise the two numbers are distinct
    /// (1, sqrt(D1), sqrt(D2) are linearly independent over the rationals)
    /// and shrinking enclosures must eventually separate them.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.sub(other) {
            return diff.sign();
        }
        let mut eps = Rational::one();
        loop {
            let (lo1, hi1) = self.enclosure(&eps);
            let (lo2, hi2) = other.enclosure(&eps);
            if hi1 < lo2 {
                return Ordering::Less;
            }
            if hi2 < lo1 {
                return Ordering::Greater;
            }
            eps /= int(1 << 16);
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.add_rational(&-r).sign()
    }
}

impl From<Rational> for QuadNum {
    fn from(p: Rational) -> Self {
        Self::from_rational(p)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        let radical = if self.q.abs().is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.q.abs(), self.d)
        };
        let sign = if self.q.is_negative() { "-" } else { "+" };
        if self.p.is_zero() {
            if self.q.is_negative() {
                write!(f, "-{radical}")
            } else {
                write!(f, "{radical}")
            }
        } else {
            write!(f, "{} {sign} {radical}", self.p)
        }
    }
}
