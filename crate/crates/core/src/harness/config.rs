use std::path::PathBuf;

use super::sweep::{fmt17, SweepSpec};
use crate::error::{Error, Result};
use crate::exact::{wigner_15j_first, FifteenJLabels, Label};
use crate::halfint::HalfInt;
use crate::semiclassics::{asymptotic, Formula, Regime};

/// Parsed contents of a config file.
///
/// ```text
/// # labels are doubled
/// two_j1 = 197
/// two_j2 = 187
/// ...
/// small = s5, s6
/// varied = j7
/// formula = two_small
/// ```
///
/// Optional keys: `two_min`, `two_max` (doubled bounds on the varied label)
/// and `cache` (path of a 6j cache file).
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub labels: FifteenJLabels,
    pub varied: Label,
    pub formula: Option<Formula>,
    pub range: Option<(HalfInt, HalfInt)>,
    pub cache: Option<PathBuf>,
    /// Whether the varied label itself was given a value.
    pub varied_given: bool,
}

impl Config {
    /// The formula named in the file, or the one matching the small flags.
    pub fn formula(&self) -> Result<Formula> {
        match self.formula {
            Some(f) => Ok(f),
            None => Formula::from_flags(&self.labels).ok_or_else(|| {
                Error::Config("no formula given and the small flags match none".into())
            }),
        }
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        Ok(SweepSpec { labels: self.labels, varied: self.varied, range: self.range, formula: self.formula()? })
    }

    /// The labels for a single evaluation; the varied label must be set.
    pub fn point_labels(&self) -> Result<FifteenJLabels> {
        if !self.varied_given {
            return Err(Error::Config(format!("two_{} is required for a single evaluation", self.varied)));
        }
        Ok(self.labels)
    }
}

fn parse_twice(key: &str, v: &str, line: usize) -> Result<i64> {
    let x: i64 = v
        .parse()
        .map_err(|_| Error::Config(format!("line {line}: {key} must be a doubled integer, got {v:?}")))?;
    if x < 0 {
        return Err(Error::Config(format!("line {line}: {key} must be nonnegative")));
    }
    Ok(x)
}

/// Parse the flat `key = value` format.
pub fn parse_config(text: &str) -> Result<Config> {
    let mut twice: [Option<i64>; 15] = [None; 15];
    let mut small: Vec<Label> = Vec::new();
    let mut varied = Label::J7;
    let mut formula = None;
    let mut min = None;
    let mut max = None;
    let mut cache = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {n}: expected key = value, got {raw:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "small" => {
                small.clear();
                for name in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let l = Label::from_name(name)
                        .ok_or_else(|| Error::Config(format!("line {n}: unknown label {name:?} in small")))?;
                    small.push(l);
                }
            }
            "varied" => {
                varied = Label::from_name(v).ok_or_else(|| Error::Config(format!("line {n}: unknown label {v:?}")))?;
            }
            "formula" => {
                formula = Some(Formula::from_name(v).ok_or_else(|| {
                    Error::Config(format!("line {n}: formula must be two_small, three_small or four_small"))
                })?);
            }
            "two_min" => min = Some(parse_twice(k, v, n)?),
            "two_max" => max = Some(parse_twice(k, v, n)?),
            "cache" => cache = Some(PathBuf::from(v)),
            _ => {
                let l = k
                    .strip_prefix("two_")
                    .and_then(|name| Label::ALL.into_iter().find(|l| l.name() == name))
                    .ok_or_else(|| Error::Config(format!("line {n}: unknown key {k:?}")))?;
                if twice[l.index()].is_some() {
                    return Err(Error::Config(format!("line {n}: {k} given twice")));
                }
                twice[l.index()] = Some(parse_twice(k, v, n)?);
            }
        }
    }
    let missing: Vec<&str> = Label::ALL
        .into_iter()
        .filter(|l| *l != varied && twice[l.index()].is_none())
        .map(|l| l.name())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Config(format!("missing labels: {}", missing.join(", "))));
    }
    let varied_given = twice[varied.index()].is_some();
    let labels = FifteenJLabels::from_twice(twice.map(|x| x.unwrap_or(0))).with_small(&small);
    let range = match (min, max) {
        (None, None) => None,
        (a, b) => Some((HalfInt::from_twice(a.unwrap_or(0)), HalfInt::from_twice(b.unwrap_or(i64::MAX / 4)))),
    };
    Ok(Config { labels, varied, formula, range, cache, varied_given })
}

/// Exact value as two lines, the algebraic form and a 17-digit decimal, or
/// `0 (triad violation: ...)` when the labels are inadmissible.
pub fn eval_exact(labels: &FifteenJLabels) -> String {
    if let Err(e) = labels.check_admissible() {
        let msg = e.to_string();
        let why = msg.strip_prefix("invalid input: ").unwrap_or(&msg);
        return format!("0 ({why})");
    }
    let v = wigner_15j_first(labels);
    format!("{v}\n{}", fmt17(v.to_f64()))
}

/// Asymptotic value as a 17-digit decimal, followed by the regime when it is
/// not `allowed`.
pub fn eval_asymptotic(labels: &FifteenJLabels, formula: Formula) -> Result<String> {
    let r = asymptotic(labels, formula)?;
    Ok(match (r.regime, &r.note) {
        (Regime::Allowed, None) => fmt17(r.value),
        (Regime::Allowed, Some(n)) => format!("{} ({n})", fmt17(r.value)),
        (g, Some(n)) => format!("{g}: {n}"),
        (g, None) => g.to_string(),
    })
}
