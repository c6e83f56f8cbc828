use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;

use super::window::{admissible_window, Window};
use crate::error::{Error, Result};
use crate::exact::{wigner_15j_first, FifteenJLabels, Label};
use crate::halfint::HalfInt;
use crate::semiclassics::{asymptotic, Formula, Regime};

/// Relative errors are taken against `max(|exact|, REL_FLOOR)`.
pub const REL_FLOOR: f64 = 1e-300;

/// A sweep of one label through its window.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    /// Fixed labels; the varied one is overwritten point by point.
    pub labels: FifteenJLabels,
    pub varied: Label,
    /// Inclusive range; `None` means the whole admissible window.
    pub range: Option<(HalfInt, HalfInt)>,
    pub formula: Formula,
}

impl SweepSpec {
    pub fn new(labels: FifteenJLabels, formula: Formula) -> Self {
        SweepSpec { labels, varied: Label::J7, range: None, formula }
    }

    /// Check flags against the formula and resolve the range.
    pub fn validate(&self) -> Result<Window> {
        if Formula::from_flags(&self.labels) != Some(self.formula) {
            let want: Vec<&str> = self.formula.small_labels().iter().map(|l| l.name()).collect();
            let have: Vec<&str> = self.labels.small_labels().iter().map(|l| l.name()).collect();
            return Err(Error::Config(format!(
                "formula {} needs small = {}, config has small = {}",
                self.formula,
                want.join(","),
                have.join(",")
            )));
        }
        if self.formula.small_labels().contains(&self.varied) {
            return Err(Error::Config(format!("varied label {} is flagged small", self.varied)));
        }
        let window = admissible_window(&self.labels, self.varied).ok_or_else(|| {
            Error::ClassicallyForbidden(format!("no admissible values of {}", self.varied))
        })?;
        let Some((lo, hi)) = self.range else {
            return Ok(window);
        };
        // Clip to the window, then snap inward onto the window's parity.
        let p = window.lo.twice().rem_euclid(2);
        let mut a = lo.twice().max(window.lo.twice());
        let mut b = hi.twice().min(window.hi.twice());
        if a.rem_euclid(2) != p {
            a += 1;
        }
        if b.rem_euclid(2) != p {
            b -= 1;
        }
        if a > b {
            return Err(Error::ClassicallyForbidden(format!(
                "range {lo}..{hi} does not meet the admissible window {}..{}",
                window.lo, window.hi
            )));
        }
        Ok(Window { lo: HalfInt::from_twice(a), hi: HalfInt::from_twice(b) })
    }
}

/// One point of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub varied: HalfInt,
    pub exact: f64,
    pub asymptotic: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub regime: Regime,
}

/// Error statistics over a set of rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    /// Allowed rows that entered the statistics.
    pub count: usize,
    /// `√(Σ (a - e)² / Σ e²)`.
    pub rms_rel: f64,
    /// Median of the pointwise relative errors.
    pub median_rel: f64,
    /// Largest pointwise relative error.
    pub max_rel: f64,
    /// Points where the asymptotic value has the wrong sign.
    pub sign_mismatches: usize,
    /// Sign changes of the exact values, in order.
    pub exact_sign_changes: usize,
    /// Sign changes of the asymptotic values, in order.
    pub asymptotic_sign_changes: usize,
}

fn sign_changes(v: impl Iterator<Item = f64>) -> usize {
    let mut last = 0.0f64;
    let mut n = 0;
    for x in v.filter(|x| *x != 0.0) {
        if last != 0.0 && x.signum() != last.signum() {
            n += 1;
        }
        last = x;
    }
    n
}

/// Statistics over the Allowed rows among `rows`.
pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let ok: Vec<&SweepRow> = rows.iter().filter(|r| r.regime == Regime::Allowed).collect();
    let num: f64 = ok.iter().map(|r| (r.asymptotic - r.exact).powi(2)).sum();
    let den: f64 = ok.iter().map(|r| r.exact * r.exact).sum();
    let mut rel: Vec<f64> = ok.iter().map(|r| r.rel_err).collect();
    rel.sort_by(f64::total_cmp);
    let median_rel = match rel.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => rel[n / 2],
        n => 0.5 * (rel[n / 2 - 1] + rel[n / 2]),
    };
    SweepSummary {
        count: ok.len(),
        rms_rel: if den > 0.0 { (num / den).sqrt() } else { f64::NAN },
        median_rel,
        max_rel: rel.last().copied().unwrap_or(f64::NAN),
        sign_mismatches: ok.iter().filter(|r| r.exact != 0.0 && r.exact.signum() != r.asymptotic.signum()).count(),
        exact_sign_changes: sign_changes(ok.iter().map(|r| r.exact)),
        asymptotic_sign_changes: sign_changes(ok.iter().map(|r| r.asymptotic)),
    }
}

/// Rows of a finished sweep plus the window they cover.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub spec: SweepSpec,
    pub window: Window,
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    /// Statistics over every Allowed row.
    pub fn summary(&self) -> SweepSummary {
        summarize(&self.rows)
    }

    /// Statistics over the Allowed rows in the middle half of the window.
    pub fn central_summary(&self) -> SweepSummary {
        let c = self.window.central_half();
        let rows: Vec<SweepRow> = self.rows.iter().filter(|r| r.varied >= c.lo && r.varied <= c.hi).cloned().collect();
        summarize(&rows)
    }

    /// CSV text: header then one line per row, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "two_{},exact,asymptotic,abs_err,rel_err,regime", self.spec.varied.name()).unwrap();
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{},{}",
                r.varied.twice(),
                fmt17(r.exact),
                fmt17(r.asymptotic),
                fmt17(r.abs_err),
                fmt17(r.rel_err),
                r.regime
            )
            .unwrap();
        }
        s
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

/// A double printed with 17 significant digits, enough to round-trip.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Evaluate one point.
pub fn sweep_point(labels: &FifteenJLabels, formula: Formula) -> Result<SweepRow> {
    let exact = wigner_15j_first(labels).to_f64();
    let a = asymptotic(labels, formula)?;
    let abs_err = (a.value - exact).abs();
    Ok(SweepRow {
        varied: HalfInt::ZERO,
        exact,
        asymptotic: a.value,
        abs_err,
        rel_err: abs_err / exact.abs().max(REL_FLOOR),
        regime: a.regime,
    })
}

/// Run a sweep. Points are evaluated in parallel when `parallel` is set;
/// the rows come back in increasing order of the varied label either way.
pub fn run_sweep(spec: &SweepSpec, parallel: bool) -> Result<Sweep> {
    let window = spec.validate()?;
    let values = window.values();
    let eval = |v: &HalfInt| -> Result<SweepRow> {
        let l = spec.labels.with(spec.varied, *v);
        let mut row = match sweep_point(&l, spec.formula) {
            Ok(r) => r,
            // A point whose root finder stalls is marked, not fatal.
            Err(Error::ConvergenceFailure { .. }) => {
                let exact = wigner_15j_first(&l).to_f64();
                SweepRow {
                    varied: *v,
                    exact,
                    asymptotic: f64::NAN,
                    abs_err: f64::NAN,
                    rel_err: f64::NAN,
                    regime: Regime::Caustic,
                }
            }
            Err(e) => return Err(e),
        };
        row.varied = *v;
        Ok(row)
    };
    let rows: Result<Vec<SweepRow>> =
        if parallel { values.par_iter().map(eval).collect() } else { values.iter().map(eval).collect() };
    Ok(Sweep { spec: spec.clone(), window, rows: rows? })
}

/// Labels whose values are set directly when scaling; every other large
/// label follows from one of these plus a fixed small-spin difference.
fn anchors(f: Formula) -> &'static [Label] {
    use Label::*;
    match f {
        Formula::TwoSmall => &[J1, J2, J3, J4, J12, J34, J13, J24],
        Formula::ThreeSmall => &[J1, J2, J4, J12, J24],
        Formula::FourSmall => &[J2, J3],
    }
}

/// `(label, base, the small-spin difference from base)` for derived labels.
fn derived(f: Formula) -> &'static [(Label, Label)] {
    use Label::*;
    match f {
        Formula::TwoSmall => &[(J125, J12), (J1256, J125), (J135, J13), (J1356, J135)],
        Formula::ThreeSmall => {
            &[(J13, J1), (J34, J4), (J125, J12), (J1256, J125), (J135, J13), (J1356, J135)]
        }
        Formula::FourSmall => &[
            (J12, J2),
            (J24, J2),
            (J13, J3),
            (J34, J3),
            (J125, J12),
            (J1256, J125),
            (J135, J13),
            (J1356, J135),
        ],
    }
}

/// Multiply the large labels by `k`, keeping the small spins and every
/// difference that defines a small-spin index fixed. The varied label `j7`
/// is left alone; sweep it over the new window.
pub fn scale_large_labels(labels: &FifteenJLabels, f: Formula, k: i64) -> FifteenJLabels {
    let mut out = *labels;
    for &a in anchors(f) {
        out.set(a, HalfInt::from_twice(labels.twice(a) * k));
    }
    for &(x, base) in derived(f) {
        let diff = labels.get(x) - labels.get(base);
        out.set(x, out.get(base) + diff);
    }
    out
}
