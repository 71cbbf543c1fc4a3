//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, QuadNum, Rational};

/// Coefficients in ascending degree order; no trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// One factor of a square-free decomposition: `factor` is monic and
/// square-free, and its roots occur with `multiplicity` in the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactor {
    pub factor: Poly,
    pub multiplicity: usize,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn identity() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `slope * z + intercept`.
    pub fn linear(slope: Rational, intercept: Rational) -> Self {
        Self::new(vec![intercept, slope])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation at `x` inside the quadratic extension of `x`.
    pub fn eval_quad(&self, x: &QuadNum) -> QuadNum {
        if let Some(r) = x.as_rational() {
            return QuadNum::from(self.eval(r));
        }
        let (xp, xq, d) = (x.rational_part(), x.radical_coeff(), x.radicand());
        let mut p = Rational::zero();
        let mut q = Rational::zero();
        for c in self.coeffs.iter().rev() {
            let np = &p * xp + &q * xq * d + c;
            let nq = &p * xq + &q * xp;
            p = np;
            q = nq;
        }
        QuadNum::from_parts(p, q, d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::exactnum::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (dd..n).rev() {
            let factor = &rem[k] * &lc_inv;
            if factor.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &factor * dc;
            }
            quot[k - dd] = factor;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors only on a zero divisor. A nonzero remainder is
    /// dropped, so callers must know the division is exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    /// Monic greatest common divisor by Euclidean remainders over the
    /// rationals, normalizing to monic at each step.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        if !self.is_zero() && !other.is_zero() && self.coprime_mod_prime(other) {
            return Ok(Self::one());
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// `self / gcd(self, self')` made monic, together with Yun's square-free
    /// decomposition.
    pub fn squarefree_part(&self) -> Result<(Self, Vec<SquarefreeFactor>)> {
        if self.is_zero() {
            return Err(Error::ZeroGcd);
        }
        if self.degree() == Some(0) {
            return Ok((Self::one(), Vec::new()));
        }
        if self.squarefree_mod_prime() {
            let part = self.monic();
            let factor = SquarefreeFactor {
                factor: part.clone(),
                multiplicity: 1,
            };
            return Ok((part, vec![factor]));
        }
        let d = self.derivative();
        let g = self.gcd(&d)?;
        let part = self.div_exact(&g)?.monic();

        let mut factors = Vec::new();
        let mut b = part.clone();
        let mut c = d.div_exact(&g)?.scale(&self.leading().unwrap().recip());
        let mut dd = &c - &b.derivative();
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd)?;
            b = b.div_exact(&a)?;
            c = dd.div_exact(&a)?;
            dd = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                factors.push(SquarefreeFactor {
                    factor: a,
                    multiplicity: k,
                });
            }
            k += 1;
        }
        Ok((part, factors))
    }

    /// Sufficient test for square-freeness: `gcd(p, p') = 1` modulo a prime
    /// not dividing the leading coefficient implies it over the rationals.
    fn squarefree_mod_prime(&self) -> bool {
        let ints = self.primitive_integer();
        MODULAR_PRIMES.iter().any(|&q| {
            let reduced = reduce_mod(&ints, q);
            if reduced.last() == Some(&0) {
                return false;
            }
            let derivative: Vec<u64> = reduced
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| (k as u64 % q) * c % q)
                .collect();
            gcd_degree_mod(reduced, derivative, q) == 0
        })
    }

    /// Sufficient test for `gcd(self, other) = 1`, by the same argument.
    fn coprime_mod_prime(&self, other: &Self) -> bool {
        let (a, b) = (self.primitive_integer(), other.primitive_integer());
        MODULAR_PRIMES.iter().any(|&q| {
            let (ra, rb) = (reduce_mod(&a, q), reduce_mod(&b, q));
            if ra.last() == Some(&0) || rb.last() == Some(&0) {
                return false;
            }
            gcd_degree_mod(ra, rb, q) == 0
        })
    }

    /// Positive rational multiple with coprime integer coefficients. Signs
    /// of values are preserved.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let mut result = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    let denom = (xi - xj).recip();
                    basis = &basis * &Self::linear(denom.clone(), -xj * denom);
                }
            }
            result = &result + &basis;
        }
        result
    }

    /// Resultant via the Sylvester matrix determinant, computed by exact
    /// Gaussian elimination.
    pub fn resultant(&self, other: &Self) -> Result<Rational> {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return Ok(Rational::zero()),
        };
        if m == 0 && n == 0 {
            return Ok(Rational::one());
        }
        let size = m + n;
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(size);
        // n shifted rows of self, m shifted rows of other; descending degree
        for shift in 0..n {
            let mut row = vec![Rational::zero(); size];
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
        for shift in 0..m {
            let mut row = vec![Rational::zero(); size];
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
        Ok(determinant(rows))
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(p, p') / lc`.
    pub fn discriminant(&self) -> Result<Rational> {
        let n = self
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::ConstantPolynomial(self.to_string()))?;
        let res = self.resultant(&self.derivative())?;
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        Ok(res * int(sign) / self.leading().unwrap())
    }

    /// Coefficients as fraction strings, ascending degree.
    pub fn to_fraction_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let (above, below) = m.split_at_mut(r);
            let (pivot_row, row) = (&above[col], &mut below[0]);
            let f = &row[col] / &p;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

const MODULAR_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn reduce_mod(ints: &[BigInt], q: u64) -> Vec<u64> {
    let modq = BigInt::from(q);
    ints.iter()
        .map(|c| {
            c.mod_floor(&modq)
                .try_into()
                .expect("residue below modulus")
        })
        .collect()
}

fn trim_mod(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // Fermat; q is prime
    let (mut base, mut e, mut acc) = (a % q, q - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

/// Degree of `gcd(a, b)` over `F_q` for nonzero `a`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let lc_inv = inv_mod(*b.last().unwrap(), q);
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1;
            let factor = a[k] * lc_inv % q;
            for (j, bc) in b.iter().enumerate() {
                let idx = k - db + j;
                a[idx] = (a[idx] + q - factor * bc % q) % q;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|ch| DIGITS[ch.to_digit(10).unwrap() as usize])
        .collect()
}

/// Descending-degree form such as `9z³ + 10z² - 23z + 5`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coeff = if k > 0 && mag.is_one() {
                String::new()
            } else if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z{}", superscript(k)),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{coeff}{var}")?;
            first = false;
        }
        Ok(())
    }
}
