use std::f64::consts::PI;
use std::fmt;

use super::action::{NineJAction, SignedDihedralAction};
use super::dmatrix::wigner_d_twice;
use crate::error::{Error, Result};
use crate::exact::{FifteenJLabels, Label};
use crate::geometry::{
    dihedral_angles, solve_nine_j_config, three_small_angles, three_small_tetrahedron, triangle_exterior_angle,
    two_small_angles, EmbeddedTetrahedron, NineJLengths, SIN_FLOOR,
};
use crate::halfint::{sign_twice, HalfInt};

/// Whether an asymptotic value is trustworthy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Allowed,
    Forbidden,
    Caustic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Allowed => "allowed",
            Regime::Forbidden => "forbidden",
            Regime::Caustic => "caustic",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the three formulas to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `j5`, `j6` small.
    TwoSmall,
    /// `j3`, `j5`, `j6` small.
    ThreeSmall,
    /// `j1`, `j4`, `j5`, `j6` small.
    FourSmall,
}

impl Formula {
    pub const ALL: [Formula; 3] = [Formula::TwoSmall, Formula::ThreeSmall, Formula::FourSmall];

    /// The labels this formula treats as small.
    pub fn small_labels(self) -> &'static [Label] {
        match self {
            Formula::TwoSmall => &[Label::J5, Label::J6],
            Formula::ThreeSmall => &[Label::J3, Label::J5, Label::J6],
            Formula::FourSmall => &[Label::J1, Label::J4, Label::J5, Label::J6],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Formula::TwoSmall => "two_small",
            Formula::ThreeSmall => "three_small",
            Formula::FourSmall => "four_small",
        }
    }

    pub fn from_name(s: &str) -> Option<Formula> {
        Formula::ALL.into_iter().find(|f| f.name() == s.trim())
    }

    /// The formula whose small set is exactly the flagged labels, if any.
    pub fn from_flags(l: &FifteenJLabels) -> Option<Formula> {
        let flagged = l.small_labels();
        Formula::ALL.into_iter().find(|f| f.small_labels() == flagged.as_slice())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Projection-like differences between large labels that the small spins
/// connect. All are populated; each formula reads the ones it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallSpinIndices {
    /// `j12 - j2`
    pub mu1: HalfInt,
    /// `j13 - j3`
    pub nu1: HalfInt,
    /// `j24 - j2`
    pub mu4: HalfInt,
    /// `j34 - j3`
    pub nu4: HalfInt,
    /// `j34 - j4`
    pub mu3: HalfInt,
    /// `j13 - j1`
    pub nu3: HalfInt,
    /// `j125 - j12`
    pub mu5: HalfInt,
    /// `j135 - j13`
    pub nu5: HalfInt,
    /// `j1256 - j125`
    pub mu6: HalfInt,
    /// `j1356 - j135`
    pub nu6: HalfInt,
}

impl SmallSpinIndices {
    pub fn of(l: &FifteenJLabels) -> Self {
        use Label::*;
        let d = |a: Label, b: Label| l.get(a) - l.get(b);
        SmallSpinIndices {
            mu1: d(J12, J2),
            nu1: d(J13, J3),
            mu4: d(J24, J2),
            nu4: d(J34, J3),
            mu3: d(J34, J4),
            nu3: d(J13, J1),
            mu5: d(J125, J12),
            nu5: d(J135, J13),
            mu6: d(J1256, J125),
            nu6: d(J1356, J135),
        }
    }

    /// `(s, μ, ν)` for each small spin of a formula, as doubled integers.
    pub fn triples(&self, l: &FifteenJLabels, f: Formula) -> Vec<(i64, i64, i64)> {
        f.small_labels()
            .iter()
            .map(|&s| {
                let (mu, nu) = match s {
                    Label::J1 => (self.mu1, self.nu1),
                    Label::J3 => (self.mu3, self.nu3),
                    Label::J4 => (self.mu4, self.nu4),
                    Label::J5 => (self.mu5, self.nu5),
                    Label::J6 => (self.mu6, self.nu6),
                    _ => unreachable!("not a small-spin slot"),
                };
                (l.twice(s), mu.twice(), nu.twice())
            })
            .collect()
    }

    /// Every `|μ|, |ν| ≤ s` with integral `s - μ`, `s - ν`.
    pub fn in_bounds(&self, l: &FifteenJLabels, f: Formula) -> bool {
        self.triples(l, f).iter().all(|&(s, mu, nu)| {
            mu.abs() <= s && nu.abs() <= s && (s - mu) % 2 == 0 && (s - nu) % 2 == 0
        })
    }
}

/// Value of an asymptotic formula plus the ingredients that went into it.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticResult {
    /// The approximation; `NaN` unless the regime is `Allowed`.
    pub value: f64,
    pub regime: Regime,
    pub formula: Formula,
    /// Named phase terms and amplitude factors.
    pub diagnostics: Vec<(&'static str, f64)>,
    /// Why the regime is not `Allowed`, or why the value is an exact zero.
    pub note: Option<String>,
}

impl AsymptoticResult {
    fn allowed(formula: Formula, value: f64, diagnostics: Vec<(&'static str, f64)>) -> Self {
        AsymptoticResult { value, regime: Regime::Allowed, formula, diagnostics, note: None }
    }

    fn zero(formula: Formula, why: &str) -> Self {
        AsymptoticResult { value: 0.0, regime: Regime::Allowed, formula, diagnostics: vec![], note: Some(why.into()) }
    }

    fn from_error(formula: Formula, e: Error) -> Result<Self> {
        let regime = match &e {
            Error::ClassicallyForbidden(_) => Regime::Forbidden,
            Error::CausticDegenerate(_) => Regime::Caustic,
            _ => return Err(e),
        };
        Ok(AsymptoticResult { value: f64::NAN, regime, formula, diagnostics: vec![], note: Some(e.to_string()) })
    }

    /// Look up a diagnostic by name.
    pub fn diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

/// `Σ (j+½) ψ` over the six edges, `ψ` the external dihedral angle.
/// `twice_j` is in the same edge order as the tetrahedron's lengths.
pub fn ponzano_regge_phase(t: &EmbeddedTetrahedron, twice_j: &[i64; 6]) -> Result<f64> {
    let d = dihedral_angles(t)?;
    Ok(d.iter().zip(twice_j).map(|(a, &j)| (j as f64 + 1.0) / 2.0 * a.external).sum())
}

fn dims(l: &FifteenJLabels, which: &[Label]) -> f64 {
    which.iter().map(|&x| (l.twice(x) + 1) as f64).product()
}

fn check(l: &FifteenJLabels, f: Formula) -> Result<Option<AsymptoticResult>> {
    if Formula::from_flags(l) != Some(f) {
        let names: Vec<&str> = f.small_labels().iter().map(|x| x.name()).collect();
        return Err(Error::Input(format!(
            "{f} needs exactly {} flagged small, got {:?}",
            names.join(", "),
            l.small_labels().iter().map(|x| x.name()).collect::<Vec<_>>()
        )));
    }
    if let Err(e) = l.check_admissible() {
        return Ok(Some(AsymptoticResult::zero(f, &e.to_string())));
    }
    if !SmallSpinIndices::of(l).in_bounds(l, f) {
        return Ok(Some(AsymptoticResult::zero(f, "small-spin index out of range")));
    }
    Ok(None)
}

fn sc(l: &FifteenJLabels, x: Label) -> f64 {
    l.get(x).semiclassical()
}

/// Four small spins `j1, j4, j5, j6`: the large labels reduce to the
/// triangle `(J2, J3, J7)`.
pub fn asymp_four_small(l: &FifteenJLabels) -> Result<AsymptoticResult> {
    use Label::*;
    let f = Formula::FourSmall;
    if let Some(r) = check(l, f)? {
        return Ok(r);
    }
    let theta = match triangle_exterior_angle(sc(l, J2), sc(l, J3), sc(l, J7)) {
        Ok(t) => t,
        Err(e) => return AsymptoticResult::from_error(f, e),
    };
    if theta.sin() < SIN_FLOOR {
        return AsymptoticResult::from_error(f, Error::CausticDegenerate("(J2, J3, J7) triangle is flat".into()));
    }
    let ix = SmallSpinIndices::of(l);
    let sign = sign_twice(
        l.twice(J2) + l.twice(J3) + l.twice(J7) + ix.mu1.twice() + ix.mu4.twice() + ix.mu5.twice() + ix.mu6.twice(),
    );
    let d: f64 = ix.triples(l, f).iter().map(|&(s, mu, nu)| wigner_d_twice(s, nu, mu, theta)).product();
    let norm = dims(l, &[J12, J34, J13, J24, J125, J135, J1256, J1356]).sqrt();
    let value = f64::from(sign) * d / norm;
    Ok(AsymptoticResult::allowed(f, value, vec![("theta", theta), ("d_product", d), ("sign", f64::from(sign))]))
}

/// Three small spins `j3, j5, j6`: the large labels form the tetrahedron
/// with edges `J1, J2, J4, J7, J12, J24`.
pub fn asymp_three_small(l: &FifteenJLabels) -> Result<AsymptoticResult> {
    use Label::*;
    let f = Formula::ThreeSmall;
    if let Some(r) = check(l, f)? {
        return Ok(r);
    }
    let geom = three_small_tetrahedron(sc(l, J1), sc(l, J2), sc(l, J12), sc(l, J4), sc(l, J24), sc(l, J7))
        .and_then(|t| three_small_angles(&t));
    let g = match geom {
        Ok(g) => g,
        Err(e) => return AsymptoticResult::from_error(f, e),
    };
    let scale = g.tetra.lengths.iter().fold(0.0f64, |m, &x| m.max(x)).powi(3);
    if g.volume < SIN_FLOOR * scale {
        return AsymptoticResult::from_error(f, Error::CausticDegenerate("tetrahedron volume vanishes".into()));
    }
    let ix = SmallSpinIndices::of(l);
    let half = |x: HalfInt| x.to_f64();
    let s3 = l.twice(J3);
    // The d^{s3} factor enters transposed relative to the others, which is
    // the extra (-1)^(ν3 - μ3).
    let sign = sign_twice(
        l.twice(J1) + l.twice(J2) + l.twice(J4) + l.twice(J7) + 2 * s3 + ix.nu3.twice() + ix.mu5.twice() + ix.mu6.twice(),
    ) * sign_twice(ix.nu3.twice() - ix.mu3.twice());
    let d = wigner_d_twice(s3, ix.nu3.twice(), ix.mu3.twice(), g.theta1)
        * wigner_d_twice(l.twice(J5), ix.nu5.twice(), ix.mu5.twice(), g.theta2)
        * wigner_d_twice(l.twice(J6), ix.nu6.twice(), ix.mu6.twice(), g.theta2);
    let norm = (dims(l, &[J34, J13, J135, J1356, J125, J1256]) * 12.0 * PI * g.volume).sqrt();
    let phase = g.ponzano_regge + PI / 4.0 - half(l.get(J3)) * PI
        + half(ix.mu3) * g.phi4p
        + half(ix.nu3) * g.phi1p
        - half(ix.mu5 + ix.mu6) * g.phi_j12()
        - half(ix.nu5 + ix.nu6) * g.phi_j1();
    let value = f64::from(sign) * d / norm * phase.cos();
    Ok(AsymptoticResult::allowed(
        f,
        value,
        vec![
            ("volume", g.volume),
            ("ponzano_regge", g.ponzano_regge),
            ("phi1", g.phi_j1()),
            ("phi12", g.phi_j12()),
            ("phi1p", g.phi1p),
            ("phi4p", g.phi4p),
            ("theta1", g.theta1),
            ("theta2", g.theta2),
            ("phase", phase),
            ("d_product", d),
            ("sign", f64::from(sign)),
        ],
    ))
}

/// Lengths of the 9j configuration underlying the two-small case.
pub fn two_small_lengths(l: &FifteenJLabels) -> NineJLengths {
    use Label::*;
    NineJLengths {
        j1: sc(l, J1),
        j2: sc(l, J2),
        j3: sc(l, J3),
        j4: sc(l, J4),
        j12: sc(l, J12),
        j34: sc(l, J34),
        j13: sc(l, J13),
        j24: sc(l, J24),
        j7: sc(l, J7),
    }
}

/// Two small spins `j5, j6`, with the default 9j action.
pub fn asymp_two_small(l: &FifteenJLabels) -> Result<AsymptoticResult> {
    asymp_two_small_with(l, &SignedDihedralAction)
}

/// Two small spins `j5, j6`: a sum over the two stationary 9j
/// configurations, one entering through a cosine and one through a sine.
pub fn asymp_two_small_with(l: &FifteenJLabels, action: &dyn NineJAction) -> Result<AsymptoticResult> {
    use Label::*;
    let f = Formula::TwoSmall;
    if let Some(r) = check(l, f)? {
        return Ok(r);
    }
    let (c1, c2) = match solve_nine_j_config(&two_small_lengths(l)) {
        Ok(c) => c,
        Err(e) => return AsymptoticResult::from_error(f, e),
    };
    let ix = SmallSpinIndices::of(l);
    let mu = (ix.mu5 + ix.mu6).to_f64();
    let nu = (ix.nu5 + ix.nu6).to_f64();
    let mut diagnostics = Vec::new();
    let mut terms = [0.0; 2];
    for (b, c) in [c1, c2].iter().enumerate() {
        let (phi12, phi13, theta) = match two_small_angles(c) {
            Ok(a) => a,
            Err(e) => return AsymptoticResult::from_error(f, e),
        };
        let det = c.amplitude_det();
        let d = wigner_d_twice(l.twice(J5), ix.nu5.twice(), ix.mu5.twice(), theta)
            * wigner_d_twice(l.twice(J6), ix.nu6.twice(), ix.mu6.twice(), theta);
        let s = action.action(c);
        let arg = s + mu * phi12 + nu * phi13;
        let amp = d / det.abs().sqrt();
        terms[b] = if b == 0 { amp * arg.cos() } else { amp * arg.sin() };
        let names: [&'static str; 6] = if b == 0 {
            ["S1", "det1", "phi12_1", "phi13_1", "theta_1", "amp1"]
        } else {
            ["S2", "det2", "phi12_2", "phi13_2", "theta_2", "amp2"]
        };
        diagnostics.extend(names.into_iter().zip([s, det, phi12, phi13, theta, amp]));
    }
    let sign = sign_twice(ix.mu5.twice() + ix.mu6.twice());
    let norm = 4.0 * PI * dims(l, &[J125, J135, J1256, J1356]).sqrt();
    let value = f64::from(sign) * (terms[0] + terms[1]) / norm;
    diagnostics.push(("sign", f64::from(sign)));
    Ok(AsymptoticResult::allowed(f, value, diagnostics))
}

/// Apply a formula by name.
pub fn asymptotic(l: &FifteenJLabels, f: Formula) -> Result<AsymptoticResult> {
    match f {
        Formula::TwoSmall => asymp_two_small(l),
        Formula::ThreeSmall => asymp_three_small(l),
        Formula::FourSmall => asymp_four_small(l),
    }
}
