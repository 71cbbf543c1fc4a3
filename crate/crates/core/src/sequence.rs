//! The normalised sequence `W_0 = 1`, `W_1 = z`,
//! `W_n = A W_{n-1} + B W_{n-2}` with `A = az + b`, `B = cz + d`, plus the
//! auxiliary polynomials built from `A` and `B`.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{int, parse_rational, rational::serde_fraction, to_f64, QuadNum, Rational};
use crate::landmarks::Landmarks;
use crate::poly::Poly;

/// Coefficients of the recurrence. `a c != 0` always holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(with = "serde_fraction")]
    pub a: Rational,
    #[serde(with = "serde_fraction")]
    pub b: Rational,
    #[serde(with = "serde_fraction")]
    pub c: Rational,
    #[serde(with = "serde_fraction")]
    pub d: Rational,
}

impl Params {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if a.is_zero() || c.is_zero() {
            return Err(Error::InvalidParameters(format!(
                "need a*c != 0, got a = {a}, c = {c}"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    /// Parses each coefficient from a decimal or fraction string.
    pub fn parse(a: &str, b: &str, c: &str, d: &str) -> Result<Self> {
        Self::new(
            parse_rational(a)?,
            parse_rational(b)?,
            parse_rational(c)?,
            parse_rational(d)?,
        )
    }

    /// Whether `a, b, d < 0 < c`, the standing hypothesis of the
    /// interlacing results.
    pub fn in_regime(&self) -> bool {
        self.a.is_negative() && self.b.is_negative() && self.d.is_negative() && self.c.is_positive()
    }

    pub fn require_regime(&self) -> Result<()> {
        if self.in_regime() {
            Ok(())
        } else {
            Err(Error::Regime(self.to_string()))
        }
    }

    /// `A(z) = az + b`.
    pub fn a_poly(&self) -> Poly {
        Poly::linear(self.a.clone(), self.b.clone())
    }

    /// `B(z) = cz + d`.
    pub fn b_poly(&self) -> Poly {
        Poly::linear(self.c.clone(), self.d.clone())
    }

    /// `h(z) = 2 W_1 - A = (2 - a) z - b`.
    pub fn h_poly(&self) -> Poly {
        Poly::linear(int(2) - &self.a, -&self.b)
    }

    /// `g(z) = (1 - a) z^2 - (b + c) z - d`.
    pub fn g_poly(&self) -> Poly {
        Poly::new(vec![-&self.d, -(&self.b + &self.c), int(1) - &self.a])
    }

    /// `Delta(z) = A^2 + 4B`.
    pub fn delta_poly(&self) -> Poly {
        let a = self.a_poly();
        &(&a * &a) + &self.b_poly().scale(&int(4))
    }

    /// `F(z) = A^2 + B`.
    pub fn f_poly(&self) -> Poly {
        let a = self.a_poly();
        &(&a * &a) + &self.b_poly()
    }

    pub fn with_c(&self, c: Rational) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), c, self.d.clone())
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a={}, b={}, c={}, d={}", self.a, self.b, self.c, self.d)
    }
}

/// `W_0 .. W_N` together with `A, B, h, g, Delta, F`.
#[derive(Clone, Debug)]
pub struct SequenceBundle {
    pub params: Params,
    pub polys: Vec<Poly>,
    pub a: Poly,
    pub b: Poly,
    pub h: Poly,
    pub g: Poly,
    pub delta: Poly,
    pub f: Poly,
}

/// Builds `W_0 .. W_{n_max}` exactly.
pub fn generate(params: &Params, n_max: usize) -> Result<SequenceBundle> {
    if n_max < 1 {
        return Err(Error::InvalidParameters("n_max must be at least 1".into()));
    }
    let a = params.a_poly();
    let b = params.b_poly();
    let mut polys = Vec::with_capacity(n_max + 1);
    polys.push(Poly::one());
    polys.push(Poly::identity());
    for n in 2..=n_max {
        let next = &(&a * &polys[n - 1]) + &(&b * &polys[n - 2]);
        polys.push(next);
    }
    Ok(SequenceBundle {
        params: params.clone(),
        polys,
        h: params.h_poly(),
        g: params.g_poly(),
        delta: params.delta_poly(),
        f: params.f_poly(),
        a,
        b,
    })
}

impl SequenceBundle {
    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn w(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    /// Checks `W_n = (A^2 + 2B) W_{n-2} - B^2 W_{n-4}` as polynomial
    /// identities for `4 <= n <= N`.
    pub fn check_four_term(&self) -> bool {
        let a2_2b = &(&self.a * &self.a) + &self.b.scale(&int(2));
        let b2 = &self.b * &self.b;
        (4..=self.n_max()).all(|n| {
            let rhs = &(&a2_2b * &self.polys[n - 2]) - &(&b2 * &self.polys[n - 4]);
            rhs == self.polys[n]
        })
    }

    /// Checks `W_n(x) = ((A(x) + n h(x)) / 2) (A(x) / 2)^{n-1}` exactly at
    /// both zeros of `Delta`, for `1 <= n <= N`.
    pub fn check_xdelta_identity(&self, lm: &Landmarks) -> bool {
        let half = Rational::new(1.into(), 2.into());
        [&lm.x_delta_minus, &lm.x_delta_plus].into_iter().all(|x| {
            let ax = self.a.eval_quad(x);
            let hx = self.h.eval_quad(x);
            let base = ax.mul_rational(&half);
            (1..=self.n_max()).all(|n| {
                let lead = ax
                    .add(&hx.mul_rational(&int(n as i64)))
                    .expect("same radicand")
                    .mul_rational(&half);
                let rhs = lead.mul(&base.pow(n as u32 - 1)).expect("same radicand");
                self.polys[n].eval_quad(x) == rhs
            })
        })
    }
}

/// Checks `W_n(x_g) = x_g^n` exactly at both zeros of `g`, for `n <= N`.
pub fn check_xg_identity(bundle: &SequenceBundle, lm: &Landmarks) -> Result<bool> {
    let (lo, hi) = lm.x_g.as_ref().ok_or_else(|| {
        Error::NotApplicable("zeros of g are not real (c strictly between c- and c+)".into())
    })?;
    Ok([lo, hi]
        .into_iter()
        .all(|x| (0..=bundle.n_max()).all(|n| bundle.polys[n].eval_quad(x) == x.pow(n as u32))))
}

/// Floating-point value of `W_n(x)` from the eigenvalue closed form,
/// using the principal square root. The imaginary part of the result is
/// rounding noise and should be checked by the caller.
pub fn closed_form_eval(params: &Params, n: usize, x: &Rational) -> Complex64 {
    let a_x = params.a_poly().eval(x);
    let b_x = params.b_poly().eval(x);
    let disc = &a_x * &a_x + int(4) * &b_x;
    let af = to_f64(&a_x);
    let xf = to_f64(x);
    let h = 2.0 * xf - af;
    if disc.is_zero() {
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let value = (af + n as f64 * h) / 2.0 * (af / 2.0).powi(n as i32 - 1);
        return Complex64::new(value, 0.0);
    }
    let sqrt_disc = Complex64::new(to_f64(&disc), 0.0).sqrt();
    let lambda_plus = (af + sqrt_disc) / 2.0;
    let lambda_minus = (af - sqrt_disc) / 2.0;
    let alpha_plus = (sqrt_disc + h) / (2.0 * sqrt_disc);
    let alpha_minus = (sqrt_disc - h) / (2.0 * sqrt_disc);
    alpha_plus * lambda_plus.powu(n as u32) + alpha_minus * lambda_minus.powu(n as u32)
}

/// `W_n(x)` with `x` in the quadratic extension, convenience wrapper.
pub fn eval_at(bundle: &SequenceBundle, n: usize, x: &QuadNum) -> QuadNum {
    bundle.polys[n].eval_quad(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn example_31(c: Rational) -> Params {
        Params::new(int(-3), int(-5), c, int(-1)).unwrap()
    }

    #[test]
    fn rejects_ac_zero() {
        assert!(matches!(
            Params::new(int(0), int(-1), int(1), int(-1)),
            Err(Error::InvalidParameters(_))
        ));
        assert!(Params::parse("-3", "-5", "0", "-1").is_err());
    }

    #[test]
    fn small_terms_match_worked_example() {
        let bundle = generate(&example_31(int(10)), 4).unwrap();
        assert_eq!(bundle.w(1), &Poly::identity());
        assert_eq!(bundle.w(2), &Poly::from_ints(&[-1, 5, -3]));
        assert_eq!(bundle.w(3), &Poly::from_ints(&[5, -23, 10, 9]));
        assert_eq!(bundle.w(3).eval(&int(1)), int(1));

        let bundle = generate(&example_31(rat(4, 5)), 4).unwrap();
        assert_eq!(bundle.w(2).eval(&int(0)), int(-1));
        assert_eq!(bundle.w(4).coeff(0), int(-24));
        // c^2 + 20c - 228 at c = 4/5
        assert_eq!(bundle.w(4).coeff(2), rat(16, 25) + int(16) - int(228));
    }

    #[test]
    fn leading_coefficient_law() {
        let params = example_31(rat(4, 5));
        let bundle = generate(&params, 30).unwrap();
        for n in 1..=30 {
            let w = bundle.w(n);
            assert_eq!(w.degree(), Some(n));
            assert_eq!(w.leading().unwrap(), &num_traits::pow(int(-3), n - 1));
        }
    }

    #[test]
    fn auxiliary_polynomials() {
        let params = example_31(rat(4, 5));
        // g(z) = (1-a) z^2 - (b+c) z - d
        assert_eq!(params.g_poly(), Poly::new(vec![int(1), rat(21, 5), int(4)]));
        // Delta = a^2 z^2 + (2ab + 4c) z + (b^2 + 4d)
        assert_eq!(
            params.delta_poly(),
            Poly::new(vec![int(21), int(30) + rat(16, 5), int(9)])
        );
        // F = a^2 z^2 + (2ab + c) z + (b^2 + d)
        assert_eq!(
            params.f_poly(),
            Poly::new(vec![int(24), int(30) + rat(4, 5), int(9)])
        );
        assert_eq!(params.h_poly(), Poly::from_ints(&[5, 5]));
    }

    #[test]
    fn four_term_identity_holds_and_detects_perturbation() {
        let mut bundle = generate(&example_31(rat(4, 5)), 12).unwrap();
        assert!(bundle.check_four_term());
        bundle.polys[7] = &bundle.polys[7] + &Poly::one();
        assert!(!bundle.check_four_term());
    }

    #[test]
    fn closed_form_trivial_terms() {
        let params = example_31(rat(4, 5));
        for x in [int(-2), rat(1, 3), int(5)] {
            let w0 = closed_form_eval(&params, 0, &x);
            assert!((w0.re - 1.0).abs() < 1e-12 && w0.im.abs() < 1e-12);
            let w1 = closed_form_eval(&params, 1, &x);
            assert!((w1.re - to_f64(&x)).abs() < 1e-12 && w1.im.abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_matches_exact_evaluation() {
        let params = example_31(rat(4, 5));
        let bundle = generate(&params, 4).unwrap();
        let exact = to_f64(&bundle.w(4).eval(&int(-1)));
        assert_eq!(bundle.w(4).eval(&int(-1)), rat(-79, 25));
        let approx = closed_form_eval(&params, 4, &int(-1));
        assert!(((approx.re - exact) / exact).abs() < 1e-9);
        assert!(approx.im.abs() < 1e-9);
    }

    #[test]
    fn closed_form_complex_branch_and_degenerate_branch() {
        let params = example_31(rat(4, 5));
        let bundle = generate(&params, 9).unwrap();
        // Delta(x) < 0 between its zeros, e.g. x = -1.5
        let x = rat(-3, 2);
        assert!(params.delta_poly().eval(&x).is_negative());
        for n in 0..=9 {
            let v = closed_form_eval(&params, n, &x);
            let exact = to_f64(&bundle.w(n).eval(&x));
            assert!((v.re - exact).abs() <= 1e-9 * exact.abs().max(1.0), "n={n}");
            assert!(v.im.abs() <= 1e-9 * exact.abs().max(1.0));
        }
        // Delta(x) = 0: A = 2, B = -1 at x = 0 with b = 2, d = -1
        let params = Params::new(int(1), int(2), int(3), int(-1)).unwrap();
        let bundle = generate(&params, 6).unwrap();
        assert!(params.delta_poly().eval(&int(0)).is_zero());
        for n in 0..=6 {
            let v = closed_form_eval(&params, n, &int(0));
            assert!((v.re - to_f64(&bundle.w(n).eval(&int(0)))).abs() < 1e-12);
        }
    }
}
