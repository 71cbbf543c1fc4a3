//! Seeded random sweeps over regime parameters counting non-real zeros,
//! and the large-`c` threshold beyond which every `W_n` is real-rooted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, parse_rational, QuadNum, Rational};
use crate::isolate::{count_real_with_multiplicity, isolate_roots, RealPoint};
use crate::landmarks::{landmarks_and_case, CaseTag};
use crate::poly::Poly;
use crate::sequence::{generate, Params};

const CHUNK: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    pub n_max: usize,
    /// Largest numerator of a drawn parameter.
    pub num_max: u32,
    /// Largest denominator of a drawn parameter.
    pub den_max: u32,
    /// Parameters held fixed instead of drawn.
    pub fixed_a: Option<Rational>,
    pub fixed_b: Option<Rational>,
    pub fixed_c: Option<Rational>,
    pub fixed_d: Option<Rational>,
    pub out: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            samples: 500,
            seed: 0,
            n_max: 12,
            num_max: 1000,
            den_max: 1000,
            fixed_a: None,
            fixed_b: None,
            fixed_c: None,
            fixed_d: None,
            out: None,
        }
    }
}

impl SweepConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Config(format!("line {}: {what} {value:?}", lineno + 1));
            match key {
                "samples" => cfg.samples = value.parse().map_err(|_| bad("bad integer"))?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad("bad integer"))?,
                "n_max" => cfg.n_max = value.parse().map_err(|_| bad("bad integer"))?,
                "num_max" => cfg.num_max = value.parse().map_err(|_| bad("bad integer"))?,
                "den_max" => cfg.den_max = value.parse().map_err(|_| bad("bad integer"))?,
                "a" => cfg.fixed_a = Some(parse_rational(value)?),
                "b" => cfg.fixed_b = Some(parse_rational(value)?),
                "c" => cfg.fixed_c = Some(parse_rational(value)?),
                "d" => cfg.fixed_d = Some(parse_rational(value)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                _ => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {key:?}",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::Config("n_max must be at least 1".into()));
        }
        if self.num_max < 1 || self.den_max < 1 {
            return Err(Error::Config(
                "num_max and den_max must be at least 1".into(),
            ));
        }
        let zero = int(0);
        for (name, value, negative) in [
            ("a", &self.fixed_a, true),
            ("b", &self.fixed_b, true),
            ("c", &self.fixed_c, false),
            ("d", &self.fixed_d, true),
        ] {
            if let Some(v) = value {
                let ok = if negative { *v < zero } else { *v > zero };
                if !ok {
                    let sign = if negative { "< 0" } else { "> 0" };
                    return Err(Error::Regime(format!("fixed {name} = {v} must be {sign}")));
                }
            }
        }
        Ok(())
    }

    /// The parameter tuples of the sweep, in order.
    pub fn draw(&self) -> Vec<Params> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let magnitude = |rng: &mut ChaCha8Rng| {
            let num = rng.gen_range(1..=self.num_max);
            let den = rng.gen_range(1..=self.den_max);
            Rational::new(num.into(), den.into())
        };
        (0..self.samples)
            .map(|_| {
                // draw every coordinate even when fixed so fixing one does
                // not shift the others
                let a = -magnitude(&mut rng);
                let b = -magnitude(&mut rng);
                let c = magnitude(&mut rng);
                let d = -magnitude(&mut rng);
                Params::new(
                    self.fixed_a.clone().unwrap_or(a),
                    self.fixed_b.clone().unwrap_or(b),
                    self.fixed_c.clone().unwrap_or(c),
                    self.fixed_d.clone().unwrap_or(d),
                )
                .expect("nonzero a and c")
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub index: usize,
    pub params: Params,
    /// Non-real zero count of `W_1..W_n_max`.
    pub nonreal: Vec<usize>,
    pub max_nonreal: usize,
    pub case: String,
    pub violation: bool,
    /// Disagreement with the real-rootedness the case predicts.
    pub inconsistent: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub samples: usize,
    pub seed: u64,
    pub n_max: usize,
    pub violations: usize,
    pub inconsistent: usize,
    pub errors: usize,
    pub count_by_case: BTreeMap<String, usize>,
    pub max_nonreal_by_case: BTreeMap<String, usize>,
}

impl SweepSummary {
    fn absorb(&mut self, r: &SweepRecord) {
        self.violations += usize::from(r.violation);
        self.inconsistent += usize::from(r.inconsistent);
        self.errors += usize::from(r.error.is_some());
        *self.count_by_case.entry(r.case.clone()).or_default() += 1;
        let m = self.max_nonreal_by_case.entry(r.case.clone()).or_default();
        *m = (*m).max(r.max_nonreal);
    }
}

/// Whether the case tag predicts `W_n` to be real-rooted.
fn predicted_real(case: &CaseTag, n: usize) -> bool {
    case.case_i()
        || (case.case_ii() && n.is_multiple_of(2))
        || (case.case_iii && !n.is_multiple_of(2))
}

pub fn scan_sample(index: usize, params: &Params, n_max: usize) -> SweepRecord {
    let mut record = SweepRecord {
        index,
        params: params.clone(),
        nonreal: Vec::new(),
        max_nonreal: 0,
        case: "Error".to_string(),
        violation: false,
        inconsistent: false,
        error: None,
    };
    let run = |record: &mut SweepRecord| -> Result<()> {
        let (_, case) = landmarks_and_case(params)?;
        record.case = case.labels().join("+");
        let bundle = generate(params, n_max)?;
        for n in 1..=n_max {
            let w = bundle.w(n);
            let nonreal = w.degree().unwrap() - count_real_with_multiplicity(w)?;
            record.nonreal.push(nonreal);
            if nonreal > 0 && predicted_real(&case, n) {
                record.inconsistent = true;
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut record) {
        record.error = Some(e.to_string());
    }
    record.max_nonreal = record.nonreal.iter().copied().max().unwrap_or(0);
    record.violation = record.max_nonreal > 2;
    record
}

/// Runs the sweep, streaming records as JSON lines to `sink` in sample
/// order. Per-sample failures are recorded, never fatal.
pub fn scan_conjecture(
    config: &SweepConfig,
    mut sink: Option<&mut dyn Write>,
) -> Result<(SweepSummary, Vec<SweepRecord>)> {
    config.validate()?;
    let params = config.draw();
    let mut summary = SweepSummary {
        samples: config.samples,
        seed: config.seed,
        n_max: config.n_max,
        ..Default::default()
    };
    let mut records = Vec::with_capacity(params.len());
    for (chunk_no, chunk) in params.chunks(CHUNK).enumerate() {
        let done: Vec<SweepRecord> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, p)| scan_sample(chunk_no * CHUNK + i, p, config.n_max))
            .collect();
        for r in done {
            if let Some(w) = sink.as_deref_mut() {
                let line = serde_json::to_string(&r)?;
                writeln!(w, "{line}").map_err(|source| Error::SweepOutput {
                    written: records.len(),
                    source,
                })?;
            }
            summary.absorb(&r);
            records.push(r);
        }
    }
    Ok((summary, records))
}

/// Which term attains the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdTerm {
    CPlus,
    DiscriminantRoot,
    Ratio,
}

#[derive(Clone, Debug, Serialize)]
pub struct CStarReport {
    /// Discriminant of `W_3` as a polynomial in `c`, ascending coefficients.
    pub quartic: Vec<String>,
    pub quartic_display: String,
    pub leading_positive: bool,
    /// Largest real zero of the quartic.
    pub n_root: Option<f64>,
    pub c_plus: f64,
    /// `b/(a+1) + (a+1) d / b`
    pub ratio_term: String,
    pub c_star: f64,
    pub attained_by: ThresholdTerm,
    /// Rational sample strictly above the threshold.
    pub sample_c: String,
    pub sample_case: String,
    pub w3_in_jg: Option<bool>,
    pub n_max: usize,
    pub nonreal: Vec<usize>,
    pub all_real_rooted: bool,
}

/// The discriminant of `W_3` as a polynomial in `c`, for fixed `a, b, d`.
pub fn w3_discriminant_in_c(a: &Rational, b: &Rational, d: &Rational) -> Result<Poly> {
    // degree 4 in c; eight nodes leave room to confirm the degree
    let points = (1..=8)
        .map(|k| {
            let c = int(k);
            let p = Params::new(a.clone(), b.clone(), c.clone(), d.clone())?;
            let disc = generate(&p, 3)?.w(3).discriminant()?;
            Ok((c, disc))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::interpolate(&points))
}

/// Computes the threshold `max(c+, N, b/(a+1) + (a+1)d/b)` with `N` the
/// largest real zero of the discriminant of `W_3` in `c`, then checks
/// `W_1..W_n_max` at a rational `c` one above a rational upper bound of it.
pub fn compute_c_star(
    a: &Rational,
    b: &Rational,
    d: &Rational,
    n_max: usize,
) -> Result<CStarReport> {
    let zero = int(0);
    if *a >= zero || *b >= zero || *d >= zero {
        return Err(Error::Regime(format!(
            "a = {a}, b = {b}, d = {d} must all be negative"
        )));
    }
    let a_plus_1 = a + int(1);
    if a_plus_1 == zero {
        return Err(Error::UnsupportedCase(
            "a = -1 leaves b/(a+1) undefined".into(),
        ));
    }
    let quartic = w3_discriminant_in_c(a, b, d)?;
    let leading_positive = quartic.leading().is_some_and(|l| *l > zero);

    let n_point = match quartic.degree() {
        Some(deg) if deg >= 1 => {
            let rep = isolate_roots(&quartic, 0)?;
            rep.real_roots
                .len()
                .checked_sub(1)
                .map(|k| RealPoint::Root(rep.root(k)))
        }
        _ => None,
    };
    let c_rad = d * (a - int(1));
    let c_plus = QuadNum::new(-b.clone(), int(2), c_rad)?;
    let ratio = b / &a_plus_1 + &a_plus_1 * d / b;

    let mut best = (RealPoint::Quad(c_plus.clone()), ThresholdTerm::CPlus);
    let mut candidates = vec![(RealPoint::Rat(ratio.clone()), ThresholdTerm::Ratio)];
    if let Some(np) = &n_point {
        candidates.push((np.clone(), ThresholdTerm::DiscriminantRoot));
    }
    for (point, term) in candidates {
        if point.cmp_exact(&best.0)? == Ordering::Greater {
            best = (point, term);
        }
    }
    let eps = Rational::new(1.into(), 1_000_000.into());
    let sample_c = best.0.upper_bound(&eps).expect("finite") + int(1);

    let params = Params::new(a.clone(), b.clone(), sample_c.clone(), d.clone())?;
    let (_, case) = landmarks_and_case(&params)?;
    let bundle = generate(&params, n_max.max(1))?;
    let nonreal = (1..=n_max)
        .map(|n| {
            let w = bundle.w(n);
            Ok(w.degree().unwrap() - count_real_with_multiplicity(w)?)
        })
        .collect::<Result<Vec<usize>>>()?;

    Ok(CStarReport {
        quartic: quartic.to_fraction_strings(),
        quartic_display: quartic.to_string(),
        leading_positive,
        n_root: n_point.as_ref().map(RealPoint::to_f64),
        c_plus: c_plus.to_f64(),
        ratio_term: ratio.to_string(),
        c_star: best.0.to_f64(),
        attained_by: best.1,
        sample_c: sample_c.to_string(),
        sample_case: case.labels().join("+"),
        w3_in_jg: case.w3_in_jg,
        n_max,
        all_real_rooted: nonreal.iter().all(|&k| k == 0),
        nonreal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn discriminant_quartic_for_first_family() {
        let q = w3_discriminant_in_c(&int(-3), &int(-5), &int(-1)).unwrap();
        assert_eq!(q, Poly::from_ints(&[8937, 5940, -14184, 580, 100]));
    }

    #[test]
    fn threshold_for_first_family() {
        let r = compute_c_star(&int(-3), &int(-5), &int(-1), 8).unwrap();
        assert_eq!(r.attained_by, ThresholdTerm::DiscriminantRoot);
        assert!((r.c_star - 9.04096).abs() < 1e-4, "{}", r.c_star);
        assert_eq!(r.ratio_term, "21/10");
        assert!(r.all_real_rooted);
        assert_eq!(r.w3_in_jg, Some(true));
        assert!(r.sample_case.contains("CaseIII_odd"));
    }

    #[test]
    fn minus_one_is_unsupported() {
        assert!(matches!(
            compute_c_star(&int(-1), &int(-5), &int(-1), 4),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn config_parsing() {
        let cfg =
            SweepConfig::parse("# sweep\nsamples = 7\nseed=42\nn_max = 6\na = -0.3 # fixed\n")
                .unwrap();
        assert_eq!(cfg.samples, 7);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.fixed_a, Some(rat(-3, 10)));
        assert!(cfg
            .draw()
            .iter()
            .all(|p| p.a == rat(-3, 10) && p.in_regime()));
        assert!(matches!(SweepConfig::parse("c = 0"), Err(Error::Regime(_))));
        assert!(matches!(
            SweepConfig::parse("colour = red"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            SweepConfig::parse("samples"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn records_for_known_samples() {
        let p = Params::new(rat(-3, 10), int(-1), int(20), int(-60)).unwrap();
        let r = scan_sample(0, &p, 5);
        assert_eq!(r.nonreal[4], 2);
        assert!(!r.violation && !r.inconsistent);
        let p = Params::new(int(-3), int(-5), rat(4, 5), int(-1)).unwrap();
        let r = scan_sample(0, &p, 12);
        assert!(r.nonreal.iter().all(|&k| k == 0));
        assert_eq!(r.case, "CaseI");
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = SweepConfig {
            samples: 20,
            seed: 7,
            n_max: 6,
            ..Default::default()
        };
        let mut first = Vec::new();
        let mut second = Vec::new();
        let (s1, _) = scan_conjecture(&cfg, Some(&mut first)).unwrap();
        scan_conjecture(&cfg, Some(&mut second)).unwrap();
        assert_eq!(first, second);
        assert_eq!(s1.samples, 20);
        assert_eq!(String::from_utf8(first).unwrap().lines().count(), 20);
    }
}
