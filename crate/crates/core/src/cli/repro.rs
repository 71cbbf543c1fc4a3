//! Worked-example fixtures: fixed parameters plus printed values, each checked
//! to one unit in its last printed decimal place.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, rat, to_decimal, to_f64, QuadNum, Rational};
use crate::interlace::with_multiplicity;
use crate::isolate::{isolate_roots, AlgebraicRoot, RealPoint, RootReport};
use crate::landmarks::{landmarks_and_case, Landmarks};
use crate::poly::Poly;
use crate::sequence::{generate, Params};

pub const FIXTURE_IDS: [&str; 5] = ["3.1a", "3.1b", "3.2", "5.3a", "5.3b"];

#[derive(Clone, Copy, Debug)]
pub enum Landmark {
    CMinus,
    CPlus,
    XgMinus,
    XgPlus,
    X0,
    XDeltaPlus,
    /// `-b/(a+1)`
    Lower,
}

impl Landmark {
    fn name(self) -> &'static str {
        match self {
            Landmark::CMinus => "c-",
            Landmark::CPlus => "c+",
            Landmark::XgMinus => "x_g-",
            Landmark::XgPlus => "x_g+",
            Landmark::X0 => "x_0",
            Landmark::XDeltaPlus => "x_Delta+",
            Landmark::Lower => "-b/(a+1)",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Point {
    Landmark(Landmark),
    /// `k`-th smallest real zero of `W_n`, counted with multiplicity, 1-based.
    Root {
        n: usize,
        k: usize,
    },
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Landmark(l) => write!(f, "{}", l.name()),
            Point::Root { n, k } => write!(f, "xi_{n},{k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Quantity {
    Value(Point),
    NonrealCount(usize),
    /// Real and imaginary part of the non-real conjugate pair of `W_n`.
    ComplexRe(usize),
    ComplexIm(usize),
    CaseLabel(&'static str),
    /// Strict increasing order of the listed points.
    Order(Vec<Point>),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Value(p) => write!(f, "{p}"),
            Quantity::NonrealCount(n) => write!(f, "non-real zeros of W_{n}"),
            Quantity::ComplexRe(n) => write!(f, "Re of non-real pair of W_{n}"),
            Quantity::ComplexIm(n) => write!(f, "|Im| of non-real pair of W_{n}"),
            Quantity::CaseLabel(l) => write!(f, "case {l}"),
            Quantity::Order(points) => {
                let names: Vec<String> = points.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join(" < "))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Expected {
    /// A printed decimal; tolerance is one unit in its last place.
    Approx(&'static str),
    /// Printed with `=`; compared exactly.
    Exact(&'static str),
    Count(usize),
    Flag(bool),
}

#[derive(Clone, Debug)]
pub struct ReproFixture {
    pub id: &'static str,
    pub params: [&'static str; 4],
    pub expected: Vec<(Quantity, Expected)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproRow {
    pub quantity: String,
    pub expected: String,
    pub observed: String,
    pub tolerance: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproTable {
    pub id: String,
    pub params: Params,
    pub rows: Vec<ReproRow>,
}

impl ReproTable {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

impl fmt::Display for ReproTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fixture {} {}", self.id, self.params)?;
        for r in &self.rows {
            writeln!(
                f,
                "  {:4} {:<40} expected {:<12} observed {:<16} tol {}",
                if r.passed { "ok" } else { "FAIL" },
                r.quantity,
                r.expected,
                r.observed,
                r.tolerance.as_deref().unwrap_or("exact"),
            )?;
        }
        writeln!(f, "  {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn roots(n: usize, ks: &[usize], printed: &[&'static str]) -> Vec<(Quantity, Expected)> {
    ks.iter()
        .zip(printed)
        .map(|(&k, &p)| (Quantity::Value(Point::Root { n, k }), Expected::Approx(p)))
        .collect()
}

fn value(l: Landmark, e: Expected) -> (Quantity, Expected) {
    (Quantity::Value(Point::Landmark(l)), e)
}

pub fn fixture(id: &str) -> Result<ReproFixture> {
    use Landmark::*;
    let root = |n, k| Point::Root { n, k };
    let (params, expected) = match id {
        "3.1a" => {
            let mut e = vec![
                value(CMinus, Expected::Exact("1")),
                value(CPlus, Expected::Exact("9")),
                (Quantity::CaseLabel("CaseI"), Expected::Flag(true)),
            ];
            e.extend(roots(
                4,
                &[1, 2, 3, 4],
                &["-2.396", "-1.446", "-0.704", "-0.364"],
            ));
            (["-3", "-5", "0.8", "-1"], e)
        }
        "3.1b" => {
            let mut e = vec![
                value(XgMinus, Expected::Exact("0.25")),
                value(XgPlus, Expected::Exact("1")),
            ];
            e.extend(roots(3, &[2, 3], &["0.251", "0.955"]));
            e.push((
                Quantity::Order(vec![
                    Point::Landmark(XgMinus),
                    root(3, 2),
                    root(3, 3),
                    Point::Landmark(XgPlus),
                ]),
                Expected::Flag(true),
            ));
            e.push((Quantity::CaseLabel("CaseII_even"), Expected::Flag(true)));
            e.push((Quantity::CaseLabel("CaseIII_odd"), Expected::Flag(true)));
            e.extend(roots(
                5,
                &[1, 2, 3, 4, 5],
                &["-15.70", "-1.962", "-0.534", "0.250", "0.999"],
            ));
            (["-3", "-5", "10", "-1"], e)
        }
        "3.2" => {
            let mut e = vec![
                value(CMinus, Expected::Approx("-16.6")),
                value(CPlus, Expected::Approx("18.6")),
                value(XgMinus, Expected::Approx("0.956")),
            ];
            e.extend(roots(3, &[2, 3], &["1.014", "1.276"]));
            e.push(value(XgPlus, Expected::Approx("48.274")));
            e.push((
                Quantity::Order(vec![
                    Point::Landmark(XgMinus),
                    root(3, 2),
                    root(3, 3),
                    Point::Landmark(XgPlus),
                ]),
                Expected::Flag(true),
            ));
            e.push((Quantity::CaseLabel("CaseII_even"), Expected::Flag(true)));
            e.push((Quantity::CaseLabel("CaseIII_odd"), Expected::Flag(true)));
            e.extend(roots(
                5,
                &[1, 2, 3, 4, 5],
                &["-1844.053", "-1255.040", "0.912", "0.958", "4.352"],
            ));
            (["-0.3", "-1", "65", "-60"], e)
        }
        "5.3a" => {
            let mut e = vec![
                value(CMinus, Expected::Approx("-16.6")),
                value(CPlus, Expected::Approx("18.6")),
                (Quantity::CaseLabel("CaseII_even"), Expected::Flag(true)),
                (Quantity::CaseLabel("CaseIII_odd"), Expected::Flag(false)),
            ];
            e.extend(roots(
                4,
                &[1, 2, 3, 4],
                &["-423.39", "2.89", "3.67", "29.03"],
            ));
            e.push(value(Lower, Expected::Approx("1.42")));
            e.extend(roots(3, &[2, 3], &["1.61", "2.48"]));
            e.push(value(X0, Expected::Approx("2.82")));
            e.push((
                Quantity::Order(vec![
                    Point::Landmark(Lower),
                    root(3, 2),
                    root(3, 3),
                    Point::Landmark(X0),
                    Point::Landmark(XDeltaPlus),
                ]),
                Expected::Flag(true),
            ));
            e.extend(roots(5, &[1, 2, 3], &["-574.73", "-47.44", "2.93"]));
            e.push((Quantity::NonrealCount(5), Expected::Count(2)));
            e.push((Quantity::ComplexRe(5), Expected::Approx("2.95")));
            e.push((Quantity::ComplexIm(5), Expected::Approx("1.52")));
            (["-0.3", "-1", "20", "-60"], e)
        }
        "5.3b" => {
            let e = vec![
                (Quantity::NonrealCount(3), Expected::Count(2)),
                (Quantity::ComplexRe(3), Expected::Approx("1.63")),
                (Quantity::ComplexIm(3), Expected::Approx("0.30")),
            ];
            (["-0.3", "-1", "30", "-60"], e)
        }
        _ => return Err(Error::UnknownFixture(id.to_string())),
    };
    let id = FIXTURE_IDS
        .iter()
        .find(|f| **f == id)
        .copied()
        .unwrap_or("");
    Ok(ReproFixture {
        id,
        params,
        expected,
    })
}

/// Decimal places in a printed number.
fn printed_places(printed: &str) -> usize {
    printed.split_once('.').map_or(0, |(_, frac)| frac.len())
}

/// One unit in the last printed place.
pub fn printed_unit(printed: &str) -> Rational {
    Rational::new(
        1.into(),
        num_bigint::BigInt::from(10u32).pow(printed_places(printed) as u32),
    )
}

struct Context {
    params: Params,
    lm: Landmarks,
    labels: Vec<&'static str>,
    reports: Vec<Option<RootReport>>,
    polys: Vec<Poly>,
}

impl Context {
    fn report(&mut self, n: usize) -> Result<&RootReport> {
        if self.reports[n].is_none() {
            self.reports[n] = Some(isolate_roots(&self.polys[n], n)?);
        }
        Ok(self.reports[n].as_ref().expect("just filled"))
    }

    fn point(&mut self, p: Point) -> Result<RealPoint> {
        Ok(match p {
            Point::Landmark(l) => match l {
                Landmark::CMinus => RealPoint::Quad(self.lm.c_minus.clone()),
                Landmark::CPlus => RealPoint::Quad(self.lm.c_plus.clone()),
                Landmark::XDeltaPlus => RealPoint::Quad(self.lm.x_delta_plus.clone()),
                Landmark::XgMinus => {
                    RealPoint::Quad(required(self.lm.x_g_minus(), "x_g-")?.clone())
                }
                Landmark::XgPlus => RealPoint::Quad(required(self.lm.x_g_plus(), "x_g+")?.clone()),
                Landmark::X0 => RealPoint::Quad(required(self.lm.x_0.as_ref(), "x_0")?.clone()),
                Landmark::Lower => {
                    let a1 = &self.params.a + Rational::from_integer(1.into());
                    if a1 == Rational::from_integer(0.into()) {
                        return Err(Error::NotApplicable("-b/(a+1) needs a != -1".into()));
                    }
                    RealPoint::Rat(-&self.params.b / a1)
                }
            },
            Point::Root { n, k } => {
                let roots = with_multiplicity(self.report(n)?);
                let r = roots.get(k.wrapping_sub(1)).ok_or_else(|| {
                    Error::NotApplicable(format!("W_{n} has no real zero number {k}"))
                })?;
                RealPoint::Root(r.clone())
            }
        })
    }

    /// The non-real conjugate pair of `W_n` by deflating the real zeros.
    fn complex_pair(&mut self, n: usize) -> Result<(f64, f64)> {
        let report = self.report(n)?.clone();
        if report.n_nonreal != 2 {
            return Err(Error::NotApplicable(format!(
                "W_{n} has {} non-real zeros, expected one pair",
                report.n_nonreal
            )));
        }
        let eps = rat(1, 1 << 40);
        let mut coeffs: Vec<f64> = self.polys[n].coeffs().iter().map(to_f64).collect();
        for r in with_multiplicity(&report) {
            let x = to_f64(&root_value(r, &eps));
            coeffs = deflate(&coeffs, x);
        }
        let (c0, c1, c2) = (coeffs[0], coeffs[1], coeffs[2]);
        let re = -c1 / (2.0 * c2);
        let im = (4.0 * c2 * c0 - c1 * c1).max(0.0).sqrt() / (2.0 * c2.abs());
        Ok((re, im))
    }
}

fn root_value(mut r: AlgebraicRoot, eps: &Rational) -> Rational {
    r.refine_to(eps);
    (r.lo() + r.hi()) / Rational::from_integer(2.into())
}

fn required<'a>(x: Option<&'a QuadNum>, name: &str) -> Result<&'a QuadNum> {
    x.ok_or_else(|| Error::NotApplicable(format!("{name} does not exist for these parameters")))
}

/// Synthetic division of ascending `coeffs` by `z - x`.
fn deflate(coeffs: &[f64], x: f64) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    let mut out = vec![0.0; deg];
    let mut carry = 0.0;
    for i in (1..=deg).rev() {
        carry = coeffs[i] + carry * x;
        out[i - 1] = carry;
    }
    out
}

fn approx_row(quantity: String, printed: &str, observed: &Rational) -> Result<ReproRow> {
    let target = parse_rational(printed)?;
    let tol = printed_unit(printed);
    let passed = (observed - &target).abs() <= tol;
    Ok(ReproRow {
        quantity,
        expected: printed.to_string(),
        observed: to_decimal(observed, printed_places(printed) + 3),
        tolerance: Some(to_decimal(&tol, printed_places(printed))),
        passed,
    })
}

fn float_row(quantity: String, printed: &str, observed: f64) -> Result<ReproRow> {
    let target = to_f64(&parse_rational(printed)?);
    let tol = to_f64(&printed_unit(printed));
    let places = printed_places(printed);
    Ok(ReproRow {
        quantity,
        expected: printed.to_string(),
        observed: format!("{:.*}", places + 3, observed),
        tolerance: Some(format!("{:.*}", places, tol)),
        passed: (observed - target).abs() <= tol,
    })
}

/// Recomputes every quantity of fixture `id` and compares it with the
/// printed value.
pub fn run_repro(id: &str) -> Result<ReproTable> {
    let fx = fixture(id)?;
    let [a, b, c, d] = fx.params;
    let params = Params::parse(a, b, c, d)?;
    let n_max = fx
        .expected
        .iter()
        .map(|(q, _)| match q {
            Quantity::Value(Point::Root { n, .. })
            | Quantity::NonrealCount(n)
            | Quantity::ComplexRe(n)
            | Quantity::ComplexIm(n) => *n,
            Quantity::Order(ps) => ps
                .iter()
                .map(|p| match p {
                    Point::Root { n, .. } => *n,
                    Point::Landmark(_) => 1,
                })
                .max()
                .unwrap_or(1),
            _ => 1,
        })
        .max()
        .unwrap_or(1)
        .max(3);
    let (lm, case) = landmarks_and_case(&params)?;
    let bundle = generate(&params, n_max)?;
    let mut ctx = Context {
        params: params.clone(),
        lm,
        labels: case.labels(),
        reports: vec![None; n_max + 1],
        polys: bundle.polys,
    };
    let eps = rat(1, 1 << 50);
    let mut rows = Vec::new();
    for (quantity, expected) in &fx.expected {
        let name = quantity.to_string();
        let row = match (quantity, expected) {
            (Quantity::Value(p), Expected::Approx(printed)) => {
                let observed = match ctx.point(*p)? {
                    RealPoint::Rat(r) => r,
                    RealPoint::Quad(q) => q.approx(&eps),
                    RealPoint::Root(r) => root_value(r, &eps),
                    other => return Err(Error::NotApplicable(format!("{name} is {other}"))),
                };
                approx_row(name, printed, &observed)?
            }
            (Quantity::Value(p), Expected::Exact(printed)) => {
                let target = RealPoint::Rat(parse_rational(printed)?);
                let point = ctx.point(*p)?;
                let passed = point.cmp_exact(&target)? == Ordering::Equal;
                ReproRow {
                    quantity: name,
                    expected: printed.to_string(),
                    observed: point.to_string(),
                    tolerance: None,
                    passed,
                }
            }
            (Quantity::NonrealCount(n), Expected::Count(k)) => {
                let observed = ctx.report(*n)?.n_nonreal;
                ReproRow {
                    quantity: name,
                    expected: k.to_string(),
                    observed: observed.to_string(),
                    tolerance: None,
                    passed: observed == *k,
                }
            }
            (Quantity::ComplexRe(n), Expected::Approx(printed)) => {
                float_row(name, printed, ctx.complex_pair(*n)?.0)?
            }
            (Quantity::ComplexIm(n), Expected::Approx(printed)) => {
                float_row(name, printed, ctx.complex_pair(*n)?.1)?
            }
            (Quantity::CaseLabel(label), Expected::Flag(want)) => {
                let observed = ctx.labels.contains(label);
                ReproRow {
                    quantity: name,
                    expected: want.to_string(),
                    observed: observed.to_string(),
                    tolerance: None,
                    passed: observed == *want,
                }
            }
            (Quantity::Order(points), Expected::Flag(want)) => {
                let mut resolved = Vec::new();
                for p in points {
                    resolved.push(ctx.point(*p)?);
                }
                let mut observed = true;
                for w in resolved.windows(2) {
                    observed &= w[0].cmp_exact(&w[1])? == Ordering::Less;
                }
                ReproRow {
                    quantity: name,
                    expected: want.to_string(),
                    observed: observed.to_string(),
                    tolerance: None,
                    passed: observed == *want,
                }
            }
            (q, e) => {
                return Err(Error::InvalidParameters(format!(
                    "fixture row {q} cannot expect {e:?}"
                )))
            }
        };
        rows.push(row);
    }
    Ok(ReproTable {
        id: fx.id.to_string(),
        params,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row<'a>(t: &'a ReproTable, quantity: &str) -> &'a ReproRow {
        t.rows.iter().find(|r| r.quantity == quantity).unwrap()
    }

    #[test]
    fn printed_unit_follows_places() {
        assert_eq!(printed_unit("-2.396"), rat(1, 1000));
        assert_eq!(printed_unit("-16.6"), rat(1, 10));
        assert_eq!(printed_unit("9"), rat(1, 1));
    }

    #[test]
    fn deflation_leaves_quadratic() {
        // (z - 2)(z^2 + 1) = z^3 - 2z^2 + z - 2
        let q = deflate(&[-2.0, 1.0, -2.0, 1.0], 2.0);
        assert_eq!(q, vec![1.0, 0.0, 1.0]);
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(run_repro("9.9"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn low_regime_fixture_passes() {
        let t = run_repro("3.1a").unwrap();
        assert!(t.passed(), "{t}");
        assert_eq!(t.rows.len(), 7);
    }

    #[test]
    fn inconsistent_reference_values_are_the_only_failures() {
        let t = run_repro("3.1b").unwrap();
        let failed: Vec<&str> = t
            .rows
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.quantity.as_str())
            .collect();
        assert_eq!(failed, vec!["xi_5,1"]);
        assert_eq!(row(&t, "xi_5,1").observed, "-5.41941");

        let t = run_repro("3.2").unwrap();
        let failed: Vec<&str> = t
            .rows
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.quantity.as_str())
            .collect();
        assert_eq!(failed, vec!["xi_5,2"]);
    }

    #[test]
    fn outside_jg_fixtures_pass() {
        for id in ["5.3a", "5.3b"] {
            let t = run_repro(id).unwrap();
            assert!(t.passed(), "{t}");
        }
    }
}
