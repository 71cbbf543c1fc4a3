//! Interval root counts, piecewise interlacing of zero sets, the per-case
//! verification driver and the analysis of `W_3`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, to_f64, Rational};
use crate::isolate::{isolate_roots, AlgebraicRoot, Interval, RealPoint, RootReport, SturmChain};
use crate::landmarks::{classify_case, compute_landmarks, CaseTag, Landmarks, Regime};
use crate::poly::Poly;
use crate::sequence::{generate, Params};

/// The intervals zeros are counted on: `J1..J4`, `J_g` and, when `W_3` has
/// its two largest zeros in `J_g`, `I3 = (x_g-, xi_32)` and
/// `I4 = (xi_33, x_g+)`.
#[derive(Clone, Debug)]
pub struct Pieces {
    pub j1: Interval,
    pub j2: Interval,
    pub j3: Option<Interval>,
    pub j4: Option<Interval>,
    pub j_g: Option<Interval>,
    pub i3: Option<Interval>,
    pub i4: Option<Interval>,
}

impl Pieces {
    /// `w3` is the root report of `W_3`; it is only used when `case` says its
    /// upper zeros lie in `J_g`.
    pub fn new(lm: &Landmarks, case: &CaseTag, w3: &RootReport) -> Self {
        let (i3, i4) = match (&lm.x_g, case.w3_in_jg) {
            (Some((gm, gp)), Some(true)) => {
                let roots = with_multiplicity(w3);
                let (x2, x3) = (roots[1].clone(), roots[2].clone());
                (
                    Some(Interval::open("I3", gm.clone(), x2)),
                    Some(Interval::open("I4", x3, gp.clone())),
                )
            }
            _ => (None, None),
        };
        Self {
            j1: lm.j1(),
            j2: lm.j2(),
            j3: lm.j3(),
            j4: lm.j4(),
            j_g: lm.j_g(),
            i3,
            i4,
        }
    }

    /// The pieces `J1, J2, J3, J4` whose union carries the counts and interlacing.
    pub fn union(&self) -> Vec<&Interval> {
        let mut out = vec![&self.j1, &self.j2];
        out.extend(self.j3.as_ref());
        out.extend(self.j4.as_ref());
        out
    }
}

/// Roots of a report repeated by multiplicity, ascending.
pub fn with_multiplicity(report: &RootReport) -> Vec<AlgebraicRoot> {
    report
        .real_roots
        .iter()
        .enumerate()
        .flat_map(|(k, iv)| std::iter::repeat_n(report.root(k), iv.multiplicity))
        .collect()
}

fn roots_in(roots: &[AlgebraicRoot], interval: &Interval) -> Result<Vec<AlgebraicRoot>> {
    let mut out = Vec::new();
    for r in roots {
        if interval.contains(&RealPoint::Root(r.clone()))? {
            out.push(r.clone());
        }
    }
    Ok(out)
}

/// Zero counts of one polynomial, with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntervalCounts {
    pub n: usize,
    pub real: usize,
    pub nonreal: usize,
    pub j1: usize,
    pub j2: usize,
    pub j3: Option<usize>,
    pub j4: Option<usize>,
    pub j23: Option<usize>,
    pub j_g: Option<usize>,
    pub i3: Option<usize>,
    pub i4: Option<usize>,
}

pub fn interval_counts(report: &RootReport, pieces: &Pieces) -> Result<IntervalCounts> {
    let roots = with_multiplicity(report);
    let count = |iv: &Interval| roots_in(&roots, iv).map(|v| v.len());
    let opt = |iv: &Option<Interval>| iv.as_ref().map(count).transpose();
    let j2 = count(&pieces.j2)?;
    let j3 = opt(&pieces.j3)?;
    Ok(IntervalCounts {
        n: report.poly_id,
        real: report.n_real_with_mult,
        nonreal: report.n_nonreal,
        j1: count(&pieces.j1)?,
        j2,
        j3,
        j4: opt(&pieces.j4)?,
        j23: j3.map(|k| k + j2),
        j_g: opt(&pieces.j_g)?,
        i3: opt(&pieces.i3)?,
        i4: opt(&pieces.i4)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Strict,
    Weak,
    Fail,
    Degenerate,
}

#[derive(Clone, Debug, Serialize)]
pub struct InterlacingVerdict {
    pub pair: (usize, usize),
    pub interval: String,
    pub sizes: (usize, usize),
    pub status: Status,
    pub witness: Option<String>,
}

impl InterlacingVerdict {
    /// Strict interlacing, counting the singleton/empty cases as strict.
    pub fn is_strict(&self) -> bool {
        matches!(self.status, Status::Strict | Status::Degenerate)
    }
}

/// Lazily computed Sturm chain of `gcd(P, Q)` for equality decisions.
struct SharedRoots<'a> {
    p: &'a Poly,
    q: &'a Poly,
    chain: Option<Option<SturmChain>>,
}

impl SharedRoots<'_> {
    fn cmp(&mut self, x: &AlgebraicRoot, y: &AlgebraicRoot) -> Result<Ordering> {
        // Distinct roots usually separate quickly; only fall back to the
        // gcd when they do not.
        if self.chain.is_none() {
            match x.cmp_root_with(y, None) {
                Ok(o) => return Ok(o),
                Err(Error::RefinementLimit(_)) => {}
                Err(e) => return Err(e),
            }
            let g = self.p.gcd(self.q)?;
            self.chain = Some(match g.degree() {
                Some(d) if d >= 1 => Some(SturmChain::new(&g)?),
                _ => None,
            });
        }
        x.cmp_root_with(y, self.chain.as_ref().unwrap().as_ref())
    }
}

/// Checks whether the zeros of `p` and `q` inside `interval` interlace.
pub fn check_pair_interlacing(
    p: &RootReport,
    q: &RootReport,
    interval: &Interval,
) -> Result<InterlacingVerdict> {
    let xs = roots_in(&with_multiplicity(p), interval)?;
    let ys = roots_in(&with_multiplicity(q), interval)?;
    verdict_from_lists((p.poly_id, q.poly_id), &interval.label, &xs, &ys)
}

fn verdict_from_lists(
    pair: (usize, usize),
    label: &str,
    xs: &[AlgebraicRoot],
    ys: &[AlgebraicRoot],
) -> Result<InterlacingVerdict> {
    let mut verdict = InterlacingVerdict {
        pair,
        interval: label.to_string(),
        sizes: (xs.len(), ys.len()),
        status: Status::Degenerate,
        witness: None,
    };
    if xs.len() + ys.len() <= 1 {
        return Ok(verdict);
    }
    if xs.len().abs_diff(ys.len()) > 1 {
        verdict.status = Status::Fail;
        verdict.witness = Some(format!(
            "sizes {} and {} differ by more than one",
            xs.len(),
            ys.len()
        ));
        return Ok(verdict);
    }
    let (p, q) = (xs[0].chain().base(), ys[0].chain().base());
    let mut shared = SharedRoots { p, q, chain: None };
    let orders: Vec<(&[AlgebraicRoot], &[AlgebraicRoot], usize)> = match xs.len().cmp(&ys.len()) {
        Ordering::Greater => vec![(xs, ys, pair.0)],
        Ordering::Less => vec![(ys, xs, pair.1)],
        Ordering::Equal => vec![(xs, ys, pair.0), (ys, xs, pair.1)],
    };
    let mut first_failure = None;
    for (alpha, beta, lead) in orders {
        let merged: Vec<&AlgebraicRoot> = (0..alpha.len().max(beta.len()))
            .flat_map(|i| [alpha.get(i), beta.get(i)])
            .flatten()
            .collect();
        let mut ties = None;
        let mut broken = None;
        for (i, w) in merged.windows(2).enumerate() {
            match shared.cmp(w[0], w[1])? {
                Ordering::Less => {}
                Ordering::Equal => {
                    ties.get_or_insert_with(|| format!("common zero near {:.6}", w[0].to_f64()));
                }
                Ordering::Greater => {
                    broken = Some(format!(
                        "W_{lead} first: position {i} ({:.6}) exceeds position {} ({:.6})",
                        w[0].to_f64(),
                        i + 1,
                        w[1].to_f64()
                    ));
                    break;
                }
            }
        }
        match (broken, ties) {
            (None, None) => {
                verdict.status = Status::Strict;
                verdict.witness = None;
                return Ok(verdict);
            }
            (None, Some(t)) => {
                verdict.status = Status::Weak;
                verdict.witness = Some(t);
            }
            (Some(b), _) => {
                first_failure.get_or_insert(b);
            }
        }
    }
    if verdict.status != Status::Weak {
        verdict.status = Status::Fail;
        verdict.witness = first_failure;
    }
    Ok(verdict)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub n: Option<usize>,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Debug>(name: &str, n: usize, expected: T, observed: T) -> Self {
        Self {
            name: name.to_string(),
            n: Some(n),
            passed: expected == observed,
            expected: format!("{expected:?}"),
            observed: format!("{observed:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// The distinguished zero of each applicable `W_n` in one interval.
#[derive(Clone, Debug, Serialize)]
pub struct MonotoneTrace {
    pub label: String,
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
    pub expected: Direction,
    /// `None` when the sequence is not monotone or has fewer than two terms.
    pub observed: Option<Direction>,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub params: Params,
    pub case: CaseTag,
    pub labels: Vec<&'static str>,
    pub n_max: usize,
    pub counts: Vec<IntervalCounts>,
    pub checks: Vec<Check>,
    pub verdicts: Vec<InterlacingVerdict>,
    pub traces: Vec<MonotoneTrace>,
    pub notes: Vec<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
            && self.verdicts.iter().all(InterlacingVerdict::is_strict)
            && self.traces.iter().all(|t| t.consistent)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                format!(
                    "{} (n={:?}): expected {}, got {}",
                    c.name, c.n, c.expected, c.observed
                )
            })
            .collect();
        out.extend(self.verdicts.iter().filter(|v| !v.is_strict()).map(|v| {
            format!(
                "pair {:?} on {}: {:?} {}",
                v.pair,
                v.interval,
                v.status,
                v.witness.as_deref().unwrap_or("")
            )
        }));
        out.extend(self.traces.iter().filter(|t| !t.consistent).map(|t| {
            format!(
                "trace {}: expected {:?}, observed {:?}",
                t.label, t.expected, t.observed
            )
        }));
        out
    }
}

struct Level {
    union: Vec<Vec<AlgebraicRoot>>,
    counts: IntervalCounts,
    i3: Vec<AlgebraicRoot>,
    i4: Vec<AlgebraicRoot>,
    j3: Vec<AlgebraicRoot>,
    j4: Vec<AlgebraicRoot>,
}

fn build_level(report: RootReport, pieces: &Pieces) -> Result<Level> {
    let roots = with_multiplicity(&report);
    let union = pieces
        .union()
        .into_iter()
        .map(|iv| roots_in(&roots, iv))
        .collect::<Result<Vec<_>>>()?;
    let opt = |iv: &Option<Interval>| match iv {
        Some(iv) => roots_in(&roots, iv),
        None => Ok(Vec::new()),
    };
    let counts = interval_counts(&report, pieces)?;
    Ok(Level {
        i3: opt(&pieces.i3)?,
        i4: opt(&pieces.i4)?,
        j3: opt(&pieces.j3)?,
        j4: opt(&pieces.j4)?,
        union,
        counts,
    })
}

/// Isolates `W_1..W_n_max` in parallel and checks every root count,
/// interlacing pair and monotonicity claim of the case the parameters
/// fall into.
pub fn verify_theorem(params: &Params, n_max: usize) -> Result<CaseReport> {
    if n_max < 2 {
        return Err(Error::InvalidParameters("n_max must be at least 2".into()));
    }
    let lm = compute_landmarks(params)?;
    let bundle = generate(params, n_max.max(3))?;
    let reports: Vec<RootReport> = (1..=n_max.max(3))
        .into_par_iter()
        .map(|n| isolate_roots(bundle.w(n), n))
        .collect::<Result<_>>()?;
    let case = classify_case(&lm, &reports[2])?;
    if case.is_gap() {
        return Err(Error::UnsupportedCase(format!(
            "c = {} lies strictly between c- and c+; use the scan command",
            params.c
        )));
    }
    let pieces = Pieces::new(&lm, &case, &reports[2]);
    let levels: Vec<Level> = reports
        .into_par_iter()
        .take(n_max)
        .map(|r| build_level(r, &pieces))
        .collect::<Result<_>>()?;
    let level = |n: usize| &levels[n - 1];

    let mut checks = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut traces = Vec::new();
    let mut notes = Vec::new();

    if case.case_i() {
        let dd_above = lm.delta_delta > lm.delta_g;
        for n in 1..=n_max {
            let c = &level(n).counts;
            checks.push(Check::eq("real-rooted", n, 0, c.nonreal));
            checks.push(Check::eq("|R_n^J1|", n, (n - 1) / 2, c.j1));
            checks.push(Check::eq("|R_n^(J2 u J3)|", n, Some(n / 2), c.j23));
            checks.push(Check::eq("|R_n^J4|", n, Some(1), c.j4));
            let past_n_plus = match &lm.n_plus {
                Some(np) => np.cmp_rational(&int(n as i64)) != Ordering::Greater,
                None => false,
            };
            let want_j3 = usize::from(dd_above && past_n_plus);
            checks.push(Check::eq("|R_n^J3|", n, Some(want_j3), c.j3));
            if n >= 2 {
                let step = c.j3.unwrap_or(0) as i64 - level(n - 1).counts.j3.unwrap_or(0) as i64;
                checks.push(Check::eq(
                    "|R_n^J3| - |R_(n-1)^J3| <= 1",
                    n,
                    true,
                    step <= 1,
                ));
            }
        }
        pairs.extend((1..n_max).map(|n| (n + 1, n)));
        pairs.extend(
            (1..)
                .map(|k| (2 * k + 2, 2 * k))
                .take_while(|p| p.0 <= n_max),
        );
        pairs.extend(
            (1..)
                .map(|k| (2 * k + 1, 2 * k - 1))
                .take_while(|p| p.0 <= n_max),
        );
        let all: Vec<usize> = (1..=n_max).collect();
        traces.push(trace(
            "J3 zero of W_n",
            &all,
            |n| &level(n).j3,
            Direction::Increasing,
        )?);
        traces.push(trace(
            "J4 zero of W_n",
            &all,
            |n| &level(n).j4,
            Direction::Decreasing,
        )?);
    }

    if case.case_ii() {
        notes.push("J4 is taken as (x_g+, +inf) since x_g+ > 0 when c >= c+".to_string());
        let evens: Vec<usize> = (1..=n_max / 2).map(|k| 2 * k).collect();
        for &n in &evens {
            let k = n / 2;
            let c = &level(n).counts;
            checks.push(Check::eq("real-rooted", n, 0, c.nonreal));
            checks.push(Check::eq("|R_2k^J1|", n, k - 1, c.j1));
            checks.push(Check::eq("|R_2k^J2|", n, k - 1, c.j2));
            checks.push(Check::eq("|R_2k^J3|", n, Some(1), c.j3));
            checks.push(Check::eq("|R_2k^J4|", n, Some(1), c.j4));
        }
        pairs.extend(
            (1..)
                .map(|k| (2 * k + 2, 2 * k))
                .take_while(|p| p.0 <= n_max),
        );
        traces.push(trace(
            "J3 zero of W_2k",
            &evens,
            |n| &level(n).j3,
            Direction::Increasing,
        )?);
        traces.push(trace(
            "J4 zero of W_2k",
            &evens,
            |n| &level(n).j4,
            Direction::Decreasing,
        )?);
    }

    if case.case_iii {
        let odds: Vec<usize> = (0..)
            .map(|k| 2 * k + 1)
            .take_while(|&n| n <= n_max)
            .collect();
        for &n in &odds {
            let c = &level(n).counts;
            checks.push(Check::eq("real-rooted", n, 0, c.nonreal));
            if n >= 5 {
                let k = (n - 1) / 2;
                checks.push(Check::eq("|R_(2k+1)^J1|", n, k, c.j1));
                checks.push(Check::eq("|R_(2k+1)^J2|", n, k - 1, c.j2));
                checks.push(Check::eq("|R_(2k+1)^I3|", n, Some(1), c.i3));
                checks.push(Check::eq("|R_(2k+1)^I4|", n, Some(1), c.i4));
            }
        }
        if n_max >= 5 {
            notes.push(
                "odd-index counts on J1/J2 are (k, k-1); the (k-1, k) assignment does not hold"
                    .to_string(),
            );
        }
        pairs.extend((1..n_max).map(|n| (n + 1, n)));
        pairs.extend(
            (1..)
                .map(|k| (2 * k + 1, 2 * k - 1))
                .take_while(|p| p.0 <= n_max),
        );
        let odds_from_5: Vec<usize> = odds.iter().copied().filter(|&n| n >= 5).collect();
        traces.push(trace(
            "I3 zero of W_2k+1",
            &odds_from_5,
            |n| &level(n).i3,
            Direction::Decreasing,
        )?);
        traces.push(trace(
            "I4 zero of W_2k+1",
            &odds_from_5,
            |n| &level(n).i4,
            Direction::Increasing,
        )?);
    }

    pairs.sort_unstable();
    pairs.dedup();
    let labels: Vec<String> = pieces.union().iter().map(|iv| iv.label.clone()).collect();
    let jobs: Vec<((usize, usize), usize)> = pairs
        .iter()
        .flat_map(|&p| (0..labels.len()).map(move |j| (p, j)))
        .collect();
    let verdicts: Vec<InterlacingVerdict> = jobs
        .par_iter()
        .map(|&((m, n), j)| {
            verdict_from_lists((m, n), &labels[j], &level(m).union[j], &level(n).union[j])
        })
        .collect::<Result<_>>()?;

    Ok(CaseReport {
        params: params.clone(),
        labels: case.labels(),
        case,
        n_max,
        counts: levels.iter().map(|l| l.counts.clone()).collect(),
        checks,
        verdicts,
        traces,
        notes,
    })
}

/// Collects the single zero `pick(n)` for each `n` that has exactly one and
/// compares consecutive ones exactly.
fn trace<'a>(
    label: &str,
    indices: &[usize],
    pick: impl Fn(usize) -> &'a Vec<AlgebraicRoot>,
    expected: Direction,
) -> Result<MonotoneTrace> {
    let chosen: Vec<(usize, &AlgebraicRoot)> = indices
        .iter()
        .filter_map(|&n| match pick(n).as_slice() {
            [r] => Some((n, r)),
            _ => None,
        })
        .collect();
    let mut dirs = Vec::new();
    for w in chosen.windows(2) {
        dirs.push(w[0].1.cmp_root(w[1].1)?);
    }
    let observed = if dirs.is_empty() {
        None
    } else if dirs.iter().all(|&o| o == Ordering::Less) {
        Some(Direction::Increasing)
    } else if dirs.iter().all(|&o| o == Ordering::Greater) {
        Some(Direction::Decreasing)
    } else {
        None
    };
    Ok(MonotoneTrace {
        label: label.to_string(),
        indices: chosen.iter().map(|(n, _)| *n).collect(),
        values: chosen.iter().map(|(_, r)| r.to_f64()).collect(),
        expected,
        consistent: dirs.is_empty() || observed == Some(expected),
        observed,
    })
}

/// Consequences of `c >= c+` when a positive zero of `W_3` lies outside `J_g`.
#[derive(Clone, Debug, Serialize)]
pub struct OutsideChain {
    /// `-b/(a+1)`, absent when `a <= -1`.
    pub lower: Option<f64>,
    pub x_0: Option<f64>,
    pub zeros_between_lower_and_x0: bool,
    pub x0_below_x_delta_plus: bool,
    pub a_above_minus_one: bool,
    pub c_below_bound: bool,
    pub c_minus_negative: bool,
}

impl OutsideChain {
    pub fn all_hold(&self) -> bool {
        self.zeros_between_lower_and_x0
            && self.x0_below_x_delta_plus
            && self.a_above_minus_one
            && self.c_below_bound
            && self.c_minus_negative
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct W3Report {
    pub params: Params,
    pub real_zeros: Vec<f64>,
    pub n_real: usize,
    pub n_nonreal: usize,
    /// Conjugate pair `(re, im)` with `im > 0`, when there is one.
    pub complex_pair: Option<(f64, f64)>,
    pub unique_negative_zero: bool,
    /// Both positive zeros in `J_g`.
    pub positive_zeros_in_jg: Option<bool>,
    pub outside: Option<OutsideChain>,
    /// Relative residuals of the three Vieta relations.
    pub vieta_residuals: Option<[f64; 3]>,
}

impl W3Report {
    pub fn vieta_ok(&self, tol: f64) -> bool {
        self.vieta_residuals
            .is_none_or(|r| r.iter().all(|x| *x <= tol))
    }
}

/// Zero structure of `W_3` for `c >= c+`.
pub fn analyze_w3(params: &Params) -> Result<W3Report> {
    let lm = compute_landmarks(params)?;
    if lm.regime != Regime::High {
        return Err(Error::NotApplicable("analysis of W_3 needs c >= c+".into()));
    }
    let bundle = generate(params, 3)?;
    let w3 = bundle.w(3);
    let report = isolate_roots(w3, 3)?;
    let roots = with_multiplicity(&report);
    let eps = Rational::new(1.into(), (1u64 << 50).into());
    let real_zeros = report.approximations(&eps);
    let zero = RealPoint::Rat(int(0));
    let mut negatives = 0;
    for r in &roots {
        if RealPoint::Root(r.clone()).cmp_exact(&zero)? == Ordering::Less {
            negatives += 1;
        }
    }

    let complex_pair = (report.n_nonreal == 2).then(|| {
        // deflate the cubic by its real zero
        let coeffs: Vec<f64> = w3.coeffs().iter().map(to_f64).collect();
        let r = real_zeros[0];
        let (c3, c2) = (coeffs[3], coeffs[2]);
        let q2 = c3;
        let q1 = c2 + r * q2;
        let q0 = coeffs[1] + r * q1;
        let disc = q1 * q1 - 4.0 * q2 * q0;
        (-q1 / (2.0 * q2), (-disc).sqrt() / (2.0 * q2.abs()))
    });

    let mut out = W3Report {
        params: params.clone(),
        n_real: report.n_real_with_mult,
        n_nonreal: report.n_nonreal,
        complex_pair,
        unique_negative_zero: negatives == 1,
        positive_zeros_in_jg: None,
        outside: None,
        vieta_residuals: None,
        real_zeros,
    };
    if !report.is_real_rooted() {
        return Ok(out);
    }

    let jg = lm.j_g().expect("x_g real for c >= c+");
    let upper = [
        RealPoint::Root(roots[1].clone()),
        RealPoint::Root(roots[2].clone()),
    ];
    let in_jg = jg.contains(&upper[0])? && jg.contains(&upper[1])?;
    out.positive_zeros_in_jg = Some(in_jg);

    let Params { a, b, c, d } = params;
    let a2 = to_f64(&(a * a));
    let u = to_f64(&(int(2) * a * b + a * c + c));
    let v = to_f64(&(a * d + b * c + b * b + d));
    let bd = to_f64(&(b * d));
    let z = &out.real_zeros;
    let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1.0);
    out.vieta_residuals = Some([
        rel(z[0] + z[1] + z[2], -u / a2),
        rel(z[0] * z[1] + z[0] * z[2] + z[1] * z[2], v / a2),
        rel(z[0] * z[1] * z[2], -bd / a2),
    ]);

    if !in_jg {
        let a_plus_1 = a + int(1);
        let lower = (a_plus_1 > int(0)).then(|| -b / &a_plus_1);
        let lt = |x: &RealPoint, y: &RealPoint| x.cmp_exact(y).map(|o| o == Ordering::Less);
        let zeros_between = match (&lower, &lm.x_0) {
            (Some(lo), Some(x0)) => {
                let lo = RealPoint::Rat(lo.clone());
                let x0 = RealPoint::Quad(x0.clone());
                lt(&lo, &upper[0])? && lt(&upper[1], &x0)?
            }
            _ => false,
        };
        let x0_below = match &lm.x_0 {
            Some(x0) => x0.cmp_exact(&lm.x_delta_plus) == Ordering::Less,
            None => false,
        };
        let c_below_bound = a_plus_1 != int(0) && *c < b / &a_plus_1 + &a_plus_1 * d / b;
        out.outside = Some(OutsideChain {
            lower: lower.as_ref().map(to_f64),
            x_0: lm.x_0.as_ref().map(|x| x.to_f64()),
            zeros_between_lower_and_x0: zeros_between,
            x0_below_x_delta_plus: x0_below,
            a_above_minus_one: a_plus_1 > int(0),
            c_below_bound,
            c_minus_negative: lm.c_minus.sign() == Ordering::Less,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn report(c: &[i64], id: usize) -> RootReport {
        isolate_roots(&Poly::from_ints(c), id).unwrap()
    }

    fn whole_line() -> Interval {
        Interval::new("R", RealPoint::NegInf, false, RealPoint::PosInf, false)
    }

    #[test]
    fn textbook_pair_is_strict() {
        let v = check_pair_interlacing(&report(&[-1, 0, 1], 2), &report(&[0, 1], 1), &whole_line())
            .unwrap();
        assert_eq!(v.status, Status::Strict);
        assert_eq!(v.sizes, (2, 1));
    }

    #[test]
    fn identical_polynomials_are_not_strict() {
        let p = report(&[-1, 0, 1], 0);
        let v = check_pair_interlacing(&p, &p, &whole_line()).unwrap();
        assert_eq!(v.status, Status::Weak);
        assert!(!v.is_strict());
        assert!(v.witness.is_some());
    }

    #[test]
    fn non_alternating_fails_with_witness() {
        // roots {1, 2} and {3, 4}
        let p = report(&[2, -3, 1], 0);
        let q = report(&[12, -7, 1], 1);
        let v = check_pair_interlacing(&p, &q, &whole_line()).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert!(v.witness.is_some());
        // roots {1,2,3,4} vs {5}: sizes differ by three
        let p4 = report(&[24, -50, 35, -10, 1], 0);
        let v = check_pair_interlacing(&p4, &report(&[-5, 1], 1), &whole_line()).unwrap();
        assert_eq!(v.status, Status::Fail);
    }

    #[test]
    fn singleton_and_empty_degenerate() {
        let v = check_pair_interlacing(&report(&[-1, 1], 0), &report(&[1, 0, 1], 1), &whole_line())
            .unwrap();
        assert_eq!(v.status, Status::Degenerate);
        assert!(v.is_strict());
    }

    #[test]
    fn symmetric_and_scale_invariant() {
        let p = report(&[-1, 0, 1], 0);
        let q = report(&[0, 1], 1);
        let q_scaled = report(&[0, -7], 1);
        let iv = whole_line();
        let s = |a: &RootReport, b: &RootReport| check_pair_interlacing(a, b, &iv).unwrap().status;
        assert_eq!(s(&p, &q), s(&q, &p));
        assert_eq!(s(&p, &q), s(&p, &q_scaled));
    }

    #[test]
    fn counts_for_w4_at_c_08() {
        let p = Params::new(int(-3), int(-5), rat(4, 5), int(-1)).unwrap();
        let lm = compute_landmarks(&p).unwrap();
        let b = generate(&p, 4).unwrap();
        let w3 = isolate_roots(b.w(3), 3).unwrap();
        let case = classify_case(&lm, &w3).unwrap();
        let pieces = Pieces::new(&lm, &case, &w3);
        let c = interval_counts(&isolate_roots(b.w(4), 4).unwrap(), &pieces).unwrap();
        assert_eq!((c.j1, c.j23, c.j4), (1, Some(2), Some(1)));
        let c1 = interval_counts(&isolate_roots(b.w(1), 1).unwrap(), &pieces).unwrap();
        assert_eq!(c1.j4, Some(1));
    }

    #[test]
    fn counts_for_w6_at_c_10() {
        let p = Params::new(int(-3), int(-5), int(10), int(-1)).unwrap();
        let rep = verify_theorem(&p, 6).unwrap();
        let c = &rep.counts[5];
        assert_eq!((c.j1, c.j2, c.j3, c.j4), (2, 2, Some(1), Some(1)));
    }

    #[test]
    fn case_one_small_run() {
        let p = Params::new(int(-3), int(-5), rat(4, 5), int(-1)).unwrap();
        let rep = verify_theorem(&p, 10).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn gap_is_unsupported() {
        let p = Params::new(int(-3), int(-5), int(5), int(-1)).unwrap();
        assert!(matches!(
            verify_theorem(&p, 6),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn w3_at_c_10_sits_in_jg() {
        let p = Params::new(int(-3), int(-5), int(10), int(-1)).unwrap();
        let r = analyze_w3(&p).unwrap();
        assert_eq!(r.positive_zeros_in_jg, Some(true));
        assert!(r.unique_negative_zero);
        assert!((r.real_zeros[1] - 0.251).abs() < 1e-3);
        assert!((r.real_zeros[2] - 0.955).abs() < 1e-3);
        assert!(r.vieta_ok(1e-9));
    }

    #[test]
    fn w3_outside_jg_chain() {
        let p = Params::new(rat(-3, 10), int(-1), int(20), int(-60)).unwrap();
        let r = analyze_w3(&p).unwrap();
        assert_eq!(r.positive_zeros_in_jg, Some(false));
        let chain = r.outside.unwrap();
        assert!(chain.all_hold(), "{chain:?}");
        assert!((chain.lower.unwrap() - 10.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn w3_complex_pair_at_c_30() {
        let p = Params::new(rat(-3, 10), int(-1), int(30), int(-60)).unwrap();
        let r = analyze_w3(&p).unwrap();
        assert_eq!((r.n_real, r.n_nonreal), (1, 2));
        let (re, im) = r.complex_pair.unwrap();
        assert!(
            (re - 1.63).abs() < 0.01 && (im - 0.30).abs() < 0.01,
            "{re} {im}"
        );
    }
}
