//! Cutting points, thresholds and intervals derived from `(a, b, c, d)`,
//! and the classification of parameters into the real-rootedness cases.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, QuadNum, Rational};
use crate::isolate::{Interval, RealPoint, RootReport};
use crate::sequence::{generate, Params};

/// Position of `c` relative to the thresholds `c-` and `c+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `c <= c-`
    Low,
    /// `c- < c < c+`, where the zeros of `g` are not real
    Gap,
    /// `c >= c+`
    High,
}

#[derive(Clone, Debug)]
pub struct Landmarks {
    pub params: Params,
    pub x_a: Rational,
    pub x_b: Rational,
    pub delta_delta: Rational,
    pub delta_g: Rational,
    pub x_delta_minus: QuadNum,
    pub x_delta_plus: QuadNum,
    pub c_minus: QuadNum,
    pub c_plus: QuadNum,
    pub x_g: Option<(QuadNum, QuadNum)>,
    pub n_plus: Option<QuadNum>,
    pub x_0: Option<QuadNum>,
    /// `(field, reason)` for every absent optional field.
    pub absent: Vec<(&'static str, String)>,
    pub regime: Regime,
}

pub fn compute_landmarks(params: &Params) -> Result<Landmarks> {
    params.require_regime()?;
    let Params { a, b, c, d } = params;
    let a2 = a * a;
    let two = int(2);
    let four = int(4);
    let mut absent = Vec::new();

    let x_a = -b / a;
    let x_b = -d / c;

    let delta_delta = -(&a2 * d) + a * b * c + c * c;
    assert!(delta_delta > int(0), "each term is positive in the regime");
    // (-ab - 2c +- 2 sqrt(DD)) / a^2
    let xd_p = (-(a * b) - &two * c) / &a2;
    let xd_q = &two / &a2;
    let x_delta_minus = QuadNum::new(xd_p.clone(), -xd_q.clone(), delta_delta.clone())?;
    let x_delta_plus = QuadNum::new(xd_p, xd_q, delta_delta.clone())?;

    let bc = b + c;
    let one_minus_a = int(1) - a;
    let delta_g = &bc * &bc + &four * d * &one_minus_a;
    let c_rad = d * (a - int(1));
    let c_minus = QuadNum::new(-b.clone(), -two.clone(), c_rad.clone())?;
    let c_plus = QuadNum::new(-b.clone(), two.clone(), c_rad)?;

    let regime = if c_minus.cmp_rational(c) != Ordering::Less {
        Regime::Low
    } else if c_plus.cmp_rational(c) != Ordering::Greater {
        Regime::High
    } else {
        Regime::Gap
    };

    let x_g = if delta_g >= int(0) {
        // 1 - a > 0 in the regime
        let p = &bc / (&two * &one_minus_a);
        let q = int(1) / (&two * &one_minus_a);
        Some((
            QuadNum::new(p.clone(), -q.clone(), delta_g.clone())?,
            QuadNum::new(p, q, delta_g.clone())?,
        ))
    } else {
        absent.push(("x_g", format!("discriminant of g is negative ({delta_g})")));
        None
    };

    let h_at = params.h_poly().eval_quad(&x_delta_plus);
    let n_plus = if h_at.is_zero() {
        absent.push(("n_plus", "h vanishes at x_delta_plus".to_string()));
        None
    } else {
        let a_at = params.a_poly().eval_quad(&x_delta_plus);
        Some(a_at.neg().div(&h_at)?)
    };

    let x_0 = positive_zero_of_f(params, &mut absent)?;

    Ok(Landmarks {
        params: params.clone(),
        x_a,
        x_b,
        delta_delta,
        delta_g,
        x_delta_minus,
        x_delta_plus,
        c_minus,
        c_plus,
        x_g,
        n_plus,
        x_0,
        absent,
        regime,
    })
}

/// The unique positive zero of `F = A^2 + B`, if there is exactly one.
fn positive_zero_of_f(
    params: &Params,
    absent: &mut Vec<(&'static str, String)>,
) -> Result<Option<QuadNum>> {
    let f = params.f_poly();
    let (c0, c1, c2) = (f.coeff(0), f.coeff(1), f.coeff(2));
    let disc = &c1 * &c1 - int(4) * &c2 * &c0;
    if disc < int(0) {
        absent.push(("x_0", "F has no real zeros".to_string()));
        return Ok(None);
    }
    let denom = int(2) * &c2;
    let small = QuadNum::new(-&c1 / &denom, -int(1) / &denom, disc.clone())?;
    let large = QuadNum::new(-&c1 / &denom, int(1) / &denom, disc)?;
    let zero = Rational::from_integer(0.into());
    match (small.cmp_rational(&zero), large.cmp_rational(&zero)) {
        (Ordering::Greater, _) => {
            absent.push(("x_0", "F has two positive zeros".to_string()));
            Ok(None)
        }
        (_, Ordering::Greater) => Ok(Some(large)),
        _ => {
            absent.push(("x_0", "F has no positive zero".to_string()));
            Ok(None)
        }
    }
}

impl Landmarks {
    pub fn x_g_minus(&self) -> Option<&QuadNum> {
        self.x_g.as_ref().map(|(lo, _)| lo)
    }

    pub fn x_g_plus(&self) -> Option<&QuadNum> {
        self.x_g.as_ref().map(|(_, hi)| hi)
    }

    pub fn j1(&self) -> Interval {
        Interval::open("J1", self.x_delta_minus.clone(), self.x_a.clone())
    }

    pub fn j2(&self) -> Interval {
        Interval::open("J2", self.x_a.clone(), self.x_delta_plus.clone())
    }

    /// `[x_delta_plus, x_g-)`; `None` in the gap regime.
    pub fn j3(&self) -> Option<Interval> {
        let lo = self.x_g_minus()?;
        Some(Interval::new(
            "J3",
            self.x_delta_plus.clone().into(),
            true,
            lo.clone().into(),
            false,
        ))
    }

    /// `(x_g+, 0]` when `c <= c-`, `(x_g+, +inf)` when `c >= c+`.
    pub fn j4(&self) -> Option<Interval> {
        let lo: RealPoint = self.x_g_plus()?.clone().into();
        Some(match self.regime {
            Regime::Low => Interval::new("J4", lo, false, int(0).into(), true),
            _ => Interval::new("J4", lo, false, RealPoint::PosInf, false),
        })
    }

    pub fn j_g(&self) -> Option<Interval> {
        let (lo, hi) = self.x_g.as_ref()?;
        Some(Interval::open("Jg", lo.clone(), hi.clone()))
    }

    /// `J1, J2, J3, J4` in order (the last two only outside the gap).
    pub fn pieces(&self) -> Vec<Interval> {
        let mut out = vec![self.j1(), self.j2()];
        out.extend(self.j3());
        out.extend(self.j4());
        out
    }
}

/// Which case hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTag {
    pub regime: Regime,
    /// `c` equals `c-` or `c+` exactly.
    pub boundary: bool,
    /// `c > c+` and the two largest zeros of `W_3` lie in `J_g`.
    pub case_iii: bool,
    /// Outcome of the `W_3` test, `None` when `W_3` was not examined.
    pub w3_in_jg: Option<bool>,
}

impl CaseTag {
    pub fn case_i(&self) -> bool {
        self.regime == Regime::Low
    }

    pub fn case_ii(&self) -> bool {
        self.regime == Regime::High
    }

    pub fn is_gap(&self) -> bool {
        self.regime == Regime::Gap
    }

    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        match self.regime {
            Regime::Low => out.push("CaseI"),
            Regime::High => out.push("CaseII_even"),
            Regime::Gap => out.push("Gap"),
        }
        if self.case_iii {
            out.push("CaseIII_odd");
        }
        if self.boundary {
            out.push("Boundary");
        }
        out
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels().join("+"))
    }
}

/// Classifies `c` against `c-`/`c+`; in the high regime also checks whether
/// the two largest zeros of `W_3` (report `w3`) lie in `J_g`.
pub fn classify_case(lm: &Landmarks, w3: &RootReport) -> Result<CaseTag> {
    let c = &lm.params.c;
    let boundary = lm.c_minus.cmp_rational(c) == Ordering::Equal
        || lm.c_plus.cmp_rational(c) == Ordering::Equal;
    let mut tag = CaseTag {
        regime: lm.regime,
        boundary,
        case_iii: false,
        w3_in_jg: None,
    };
    if lm.regime != Regime::High {
        return Ok(tag);
    }
    let in_jg = w3_top_pair_in_jg(lm, w3)?;
    tag.w3_in_jg = Some(in_jg);
    tag.case_iii = in_jg && lm.c_plus.cmp_rational(c) == Ordering::Less;
    Ok(tag)
}

fn w3_top_pair_in_jg(lm: &Landmarks, w3: &RootReport) -> Result<bool> {
    if w3.degree != 3 || !w3.is_real_rooted() {
        return Ok(false);
    }
    let Some(jg) = lm.j_g() else {
        return Ok(false);
    };
    let mut roots = Vec::new();
    for (k, iv) in w3.real_roots.iter().enumerate() {
        for _ in 0..iv.multiplicity {
            roots.push(w3.root(k));
        }
    }
    for r in &roots[1..] {
        if !jg.contains(&RealPoint::Root(r.clone()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: landmarks plus case tag, isolating `W_3` on the way.
pub fn landmarks_and_case(params: &Params) -> Result<(Landmarks, CaseTag)> {
    let lm = compute_landmarks(params)?;
    let bundle = generate(params, 3)?;
    let w3 = crate::isolate::isolate_roots(bundle.w(3), 3)?;
    let tag = classify_case(&lm, &w3)?;
    Ok((lm, tag))
}

/// One checked sign or order fact.
#[derive(Clone, Debug, Serialize)]
pub struct SignCheck {
    pub law: String,
    pub n: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignReport {
    pub regime: Regime,
    pub checks: Vec<SignCheck>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &SignCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Evaluates the order relations among the landmarks and the sign laws of
/// `W_n` at them, exactly, for `1 <= n <= n_max`.
pub fn check_sign_lemma(params: &Params, n_max: usize) -> Result<SignReport> {
    if n_max == 0 {
        return Err(Error::InvalidParameters("n_max must be at least 1".into()));
    }
    let lm = compute_landmarks(params)?;
    let bundle = generate(params, n_max)?;
    let mut checks = Vec::new();
    let mut push = |law: &str, n: Option<usize>, passed: bool| {
        checks.push(SignCheck {
            law: law.to_string(),
            n,
            passed,
        })
    };

    let p = |x: &QuadNum| RealPoint::Quad(x.clone());
    let r = |x: &Rational| RealPoint::Rat(x.clone());
    let lt = |x: &RealPoint, y: &RealPoint| x.cmp_exact(y).map(|o| o == Ordering::Less);
    let le = |x: &RealPoint, y: &RealPoint| x.cmp_exact(y).map(|o| o != Ordering::Greater);
    let zero = RealPoint::Rat(int(0));
    let (xdm, xdp, xa, xb) = (
        p(&lm.x_delta_minus),
        p(&lm.x_delta_plus),
        r(&lm.x_a),
        r(&lm.x_b),
    );

    push("x_delta- < x_A", None, lt(&xdm, &xa)?);
    push("x_A < 0", None, lt(&xa, &zero)?);
    push("0 < x_B", None, lt(&zero, &xb)?);
    push("x_A < x_delta+", None, lt(&xa, &xdp)?);
    push("x_delta+ < x_B", None, lt(&xdp, &xb)?);
    let a_poly = params.a_poly();
    push(
        "A(x_delta-) > 0",
        None,
        a_poly.eval_quad(&lm.x_delta_minus).sign() == Ordering::Greater,
    );
    push(
        "A(x_delta+) < 0",
        None,
        a_poly.eval_quad(&lm.x_delta_plus).sign() == Ordering::Less,
    );

    let sign_of = |n: usize, x: &QuadNum| bundle.w(n).eval_quad(x).sign();
    let flip = |s: Ordering, odd: bool| if odd { s.reverse() } else { s };
    let xa_q = QuadNum::from_rational(lm.x_a.clone());
    let xb_q = QuadNum::from_rational(lm.x_b.clone());
    for n in 1..=n_max {
        let ceil_half_odd = n.div_ceil(2) % 2 == 1;
        push(
            "(-1)^ceil(n/2) W_n(x_A) > 0",
            Some(n),
            flip(sign_of(n, &xa_q), ceil_half_odd) == Ordering::Greater,
        );
        push(
            "(-1)^n W_n(x_B) < 0",
            Some(n),
            flip(sign_of(n, &xb_q), n % 2 == 1) == Ordering::Less,
        );
        push(
            "W_n(x_delta-) < 0",
            Some(n),
            sign_of(n, &lm.x_delta_minus) == Ordering::Less,
        );
    }

    match (lm.regime, &lm.x_g) {
        (Regime::Low, Some((gm, gp))) => {
            push("x_delta+ <= x_g-", None, le(&xdp, &p(gm))?);
            push("x_g- <= x_g+", None, le(&p(gm), &p(gp))?);
            push("x_g+ < 0", None, lt(&p(gp), &zero)?);
            let dd_above = lm.delta_delta > lm.delta_g;
            for n in 1..=n_max {
                let odd = n % 2 == 1;
                for (name, x) in [("W_n(x_g-)(-1)^n > 0", gm), ("W_n(x_g+)(-1)^n > 0", gp)] {
                    push(name, Some(n), flip(sign_of(n, x), odd) == Ordering::Greater);
                }
                let expected = match (&lm.n_plus, dd_above) {
                    (Some(np), true) => match np.cmp_rational(&int(n as i64)) {
                        Ordering::Less => Ordering::Less,
                        Ordering::Equal => Ordering::Equal,
                        Ordering::Greater => Ordering::Greater,
                    },
                    _ => Ordering::Greater,
                };
                push(
                    "(-1)^n W_n(x_delta+) three-way law",
                    Some(n),
                    flip(sign_of(n, &lm.x_delta_plus), odd) == expected,
                );
            }
        }
        (Regime::High, Some((gm, gp))) => {
            push("x_B < x_g-", None, lt(&xb, &p(gm))?);
            let np_ok = match &lm.n_plus {
                Some(np) => {
                    np.cmp_rational(&int(0)) == Ordering::Greater
                        && np.cmp_rational(&int(2)) == Ordering::Less
                }
                None => false,
            };
            push("0 < n+ < 2", None, np_ok);
            for n in 1..=n_max {
                for (name, x) in [("W_n(x_g-) > 0", gm), ("W_n(x_g+) > 0", gp)] {
                    push(name, Some(n), sign_of(n, x) == Ordering::Greater);
                }
                if n >= 2 {
                    push(
                        "(-1)^n W_n(x_delta+) < 0",
                        Some(n),
                        flip(sign_of(n, &lm.x_delta_plus), n % 2 == 1) == Ordering::Less,
                    );
                }
            }
        }
        _ => {}
    }

    Ok(SignReport {
        regime: lm.regime,
        checks,
    })
}
