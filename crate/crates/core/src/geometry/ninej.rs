//! Stationary vector configurations of the 9j symbol.
//!
//! Nine lengths are prescribed: `J1..J4`, `J12 = |J1+J2|`, `J34 = |J3+J4|`,
//! `J13 = |J1+J3|`, `J24 = |J2+J4|` and `J7 = |J1+J2+J3+J4|`. Up to rotations
//! the solutions form two mirror pairs. The two pairs are told apart by the
//! sign of `V123 V432 - V214 V341`, which is invariant under both rotations
//! and reflections.
//!
//! Gauge: `J7 = (0, 0, -J7)`, the `(J12, J34)` triangle in the xz-plane with
//! `J12.x > 0`. What is left free is the twist `τ` of the `(J13, J24)`
//! triangle about the z axis and the position of `J1`. Since `|J1|` and
//! `|J12 - J1|` are fixed, `J1` sits on a circle about the `J12` axis at an
//! angle `α`. The two remaining conditions `|J13 - J1| = J3` and
//! `|J34 - J13 + J1| = J4` are then smooth functions on the `(α, τ)` torus,
//! whose common zeros are bracketed on a grid and polished by damped Newton.

use std::f64::consts::PI;

use super::tetra::SIN_FLOOR;
use super::vec3::{angle_between, triple, Vec3};
use crate::error::{Error, Result};

/// The nine prescribed lengths, each `j + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NineJLengths {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub j4: f64,
    pub j12: f64,
    pub j34: f64,
    pub j13: f64,
    pub j24: f64,
    pub j7: f64,
}

impl NineJLengths {
    pub fn as_array(&self) -> [f64; 9] {
        [self.j1, self.j2, self.j3, self.j4, self.j12, self.j34, self.j13, self.j24, self.j7]
    }

    pub fn scaled(&self, k: f64) -> Self {
        let a = self.as_array().map(|x| x * k);
        NineJLengths {
            j1: a[0],
            j2: a[1],
            j3: a[2],
            j4: a[3],
            j12: a[4],
            j34: a[5],
            j13: a[6],
            j24: a[7],
            j7: a[8],
        }
    }

    /// The six triangles that must close: `(1,2,12)`, `(3,4,34)`, `(1,3,13)`,
    /// `(2,4,24)`, `(12,34,7)`, `(13,24,7)`.
    pub fn triangles(&self) -> [(&'static str, [f64; 3]); 6] {
        let s = self;
        [
            ("(J1, J2, J12)", [s.j1, s.j2, s.j12]),
            ("(J3, J4, J34)", [s.j3, s.j4, s.j34]),
            ("(J1, J3, J13)", [s.j1, s.j3, s.j13]),
            ("(J2, J4, J24)", [s.j2, s.j4, s.j24]),
            ("(J12, J34, J7)", [s.j12, s.j34, s.j7]),
            ("(J13, J24, J7)", [s.j13, s.j24, s.j7]),
        ]
    }
}

/// Which of the two stationary classes a configuration belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `V123 V432 - V214 V341 > 0`.
    One,
    /// `V123 V432 - V214 V341 < 0`.
    Two,
}

/// One stationary vector configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NineJConfig {
    pub j1: Vec3,
    pub j2: Vec3,
    pub j3: Vec3,
    pub j4: Vec3,
    pub j7: Vec3,
    pub lengths: NineJLengths,
    pub branch: Branch,
}

impl NineJConfig {
    pub fn j12(&self) -> Vec3 {
        self.j1 + self.j2
    }
    pub fn j34(&self) -> Vec3 {
        self.j3 + self.j4
    }
    pub fn j13(&self) -> Vec3 {
        self.j1 + self.j3
    }
    pub fn j24(&self) -> Vec3 {
        self.j2 + self.j4
    }
    /// `J3 - J2`, the sixth edge of the tetrahedron spanned by `J7`, `J12`,
    /// `J34`, `J13`, `J24`.
    pub fn j2p3(&self) -> Vec3 {
        self.j3 - self.j2
    }

    /// `J_i`, for `i` in 1..=4.
    pub fn vector(&self, i: usize) -> Vec3 {
        match i {
            1 => self.j1,
            2 => self.j2,
            3 => self.j3,
            4 => self.j4,
            _ => panic!("vector index {i} out of 1..=4"),
        }
    }

    /// `J7 · (J12 × J13)`, which flips sign under reflection.
    pub fn orientation(&self) -> f64 {
        triple(self.j7, self.j12(), self.j13())
    }

    /// Triple product `V_ijk = J_i · (J_j × J_k)`.
    pub fn v(&self, i: usize, j: usize, k: usize) -> f64 {
        triple(self.vector(i), self.vector(j), self.vector(k))
    }

    /// `V123 V432 - V214 V341`, the amplitude determinant.
    pub fn amplitude_det(&self) -> f64 {
        self.v(1, 2, 3) * self.v(4, 3, 2) - self.v(2, 1, 4) * self.v(3, 4, 1)
    }

    /// Reflection through the xz-plane. Stays in the same branch.
    pub fn mirror(&self) -> Self {
        NineJConfig {
            j1: self.j1.mirror_y(),
            j2: self.j2.mirror_y(),
            j3: self.j3.mirror_y(),
            j4: self.j4.mirror_y(),
            j7: self.j7.mirror_y(),
            ..*self
        }
    }

    /// Largest relative violation among the nine norms and the closure
    /// `J1 + J2 + J3 + J4 + J7 = 0`.
    pub fn max_residual(&self) -> f64 {
        let l = &self.lengths;
        let norms = [
            (self.j1, l.j1),
            (self.j2, l.j2),
            (self.j3, l.j3),
            (self.j4, l.j4),
            (self.j12(), l.j12),
            (self.j34(), l.j34),
            (self.j13(), l.j13),
            (self.j24(), l.j24),
            (self.j7, l.j7),
        ];
        let scale = l.as_array().iter().fold(0.0f64, |m, &x| m.max(x));
        let closure = (self.j1 + self.j2 + self.j3 + self.j4 + self.j7).norm() / scale;
        norms
            .iter()
            .map(|(v, len)| (v.norm() - len).abs() / len)
            .fold(closure, f64::max)
    }
}

/// Fixed part of the gauge: the `(J12, J34)` triangle and the untwisted
/// `(J13, J24)` triangle.
struct Frame {
    l: NineJLengths,
    j12: Vec3,
    j34: Vec3,
    j7: Vec3,
    /// `J13` at zero twist is `(x13, 0, z13)`.
    x13: f64,
    z13: f64,
    /// Circle of `J1` about the `J12` axis: center `c e12`, radius `rho`,
    /// in-plane axes `e_a` (in the xz-plane) and `e_b = ŷ`.
    c: f64,
    rho: f64,
    e12: Vec3,
    e_a: Vec3,
}

/// Apex of a triangle with base along +z of length `base`: the point at
/// distance `a` from the origin and `b` from the top of the base.
fn apex(a: f64, b: f64, base: f64) -> (f64, f64) {
    let z = (base * base + a * a - b * b) / (2.0 * base);
    ((a * a - z * z).max(0.0).sqrt(), z)
}

impl Frame {
    fn new(l: NineJLengths) -> Result<Frame> {
        for (name, [a, b, c]) in l.triangles() {
            if a <= 0.0 || b <= 0.0 || c <= 0.0 {
                return Err(Error::Input(format!("nonpositive length in {name}")));
            }
            if a > b + c || b > a + c || c > a + b {
                return Err(Error::ClassicallyForbidden(format!(
                    "triangle {name} = ({a}, {b}, {c}) cannot close"
                )));
            }
        }
        let (x12, z12) = apex(l.j12, l.j34, l.j7);
        let (x13, z13) = apex(l.j13, l.j24, l.j7);
        let j12 = Vec3::new(x12, 0.0, z12);
        let top = Vec3::new(0.0, 0.0, l.j7);
        let e12 = j12 / l.j12;
        let e_a = Vec3::new(-e12.z, 0.0, e12.x);
        let c = (l.j1 * l.j1 + l.j12 * l.j12 - l.j2 * l.j2) / (2.0 * l.j12);
        let rho = (l.j1 * l.j1 - c * c).max(0.0).sqrt();
        if x12 < SIN_FLOOR * l.j12 || x13 < SIN_FLOOR * l.j13 || rho < SIN_FLOOR * l.j1 {
            return Err(Error::CausticDegenerate("a coupling triangle is flat".into()));
        }
        Ok(Frame { l, j12, j34: top - j12, j7: -top, x13, z13, c, rho, e12, e_a })
    }

    fn j13(&self, tau: f64) -> Vec3 {
        Vec3::new(self.x13 * tau.cos(), self.x13 * tau.sin(), self.z13)
    }

    fn j1(&self, alpha: f64) -> Vec3 {
        self.e12 * self.c + (self.e_a * alpha.cos() + Vec3::new(0.0, alpha.sin(), 0.0)) * self.rho
    }

    /// The two remaining conditions, scaled to be dimensionless.
    fn residual(&self, alpha: f64, tau: f64) -> [f64; 2] {
        let j1 = self.j1(alpha);
        let j13 = self.j13(tau);
        let j3 = j13 - j1;
        let j4 = self.j34 - j3;
        [
            (j3.norm2() - self.l.j3 * self.l.j3) / (self.l.j3 * self.l.j3),
            (j4.norm2() - self.l.j4 * self.l.j4) / (self.l.j4 * self.l.j4),
        ]
    }

    fn jacobian(&self, alpha: f64, tau: f64) -> [[f64; 2]; 2] {
        let j1 = self.j1(alpha);
        let j13 = self.j13(tau);
        let j3 = j13 - j1;
        let j4 = self.j34 - j3;
        let dj1 = (self.e_a * -alpha.sin() + Vec3::new(0.0, alpha.cos(), 0.0)) * self.rho;
        let dj13 = Vec3::new(-self.x13 * tau.sin(), self.x13 * tau.cos(), 0.0);
        let s3 = 1.0 / (self.l.j3 * self.l.j3);
        let s4 = 1.0 / (self.l.j4 * self.l.j4);
        // d|J3|² = 2 J3·(dJ13 - dJ1);  d|J4|² = -2 J4·(dJ13 - dJ1)
        [
            [-2.0 * j3.dot(dj1) * s3, 2.0 * j3.dot(dj13) * s3],
            [2.0 * j4.dot(dj1) * s4, -2.0 * j4.dot(dj13) * s4],
        ]
    }

    /// Damped Newton from a seed. Returns the converged point, or the
    /// smallest residual reached.
    fn newton(&self, mut alpha: f64, mut tau: f64) -> std::result::Result<(f64, f64), f64> {
        let norm = |r: [f64; 2]| r[0].abs().max(r[1].abs());
        let mut r = self.residual(alpha, tau);
        for _ in 0..NEWTON_MAX_ITER {
            if norm(r) < NEWTON_TOL {
                return Ok((alpha, tau));
            }
            let [[a, b], [c, d]] = self.jacobian(alpha, tau);
            let det = a * d - b * c;
            if det.abs() < 1e-300 {
                return Err(norm(r));
            }
            let da = (d * r[0] - b * r[1]) / det;
            let dt = (-c * r[0] + a * r[1]) / det;
            let mut step = 1.0;
            loop {
                let (na, nt) = (alpha - step * da, tau - step * dt);
                let nr = self.residual(na, nt);
                if norm(nr) < norm(r) || step < 1e-6 {
                    alpha = na;
                    tau = nt;
                    r = nr;
                    break;
                }
                step *= 0.5;
            }
        }
        if norm(r) < NEWTON_TOL {
            Ok((alpha, tau))
        } else {
            Err(norm(r))
        }
    }

    fn config(&self, alpha: f64, tau: f64) -> NineJConfig {
        let j1 = self.j1(alpha);
        let j13 = self.j13(tau);
        let j2 = self.j12 - j1;
        let j3 = j13 - j1;
        let j4 = self.j34 - j3;
        let mut c = NineJConfig { j1, j2, j3, j4, j7: self.j7, lengths: self.l, branch: Branch::One };
        if c.amplitude_det() < 0.0 {
            c.branch = Branch::Two;
        }
        c
    }
}

const GRID: usize = 192;
const NEWTON_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 200;
const STALL_TOL: f64 = 1e-6;

/// Residual tolerance on every returned configuration.
pub const CONFIG_TOL: f64 = 1e-10;

fn wrap(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

/// All stationary configurations, one per root on the torus, sorted by twist.
///
/// The coarse grid is retried at four times the resolution when it does not
/// turn up both branches, which happens close to the window edges where
/// roots crowd together.
pub fn all_nine_j_configs(l: &NineJLengths) -> Result<Vec<NineJConfig>> {
    let f = Frame::new(*l)?;
    let coarse = scan(&f, GRID);
    let both = |r: &Result<Vec<NineJConfig>>| match r {
        Ok(c) => c.iter().any(|c| c.branch == Branch::One) && c.iter().any(|c| c.branch == Branch::Two),
        Err(_) => false,
    };
    if both(&coarse) {
        return coarse;
    }
    let fine = scan(&f, 4 * GRID);
    match (&coarse, &fine) {
        (Ok(c), Ok(d)) if c.len() > d.len() => coarse,
        (Ok(_), Err(_)) => coarse,
        _ => fine,
    }
}

fn scan(f: &Frame, grid_n: usize) -> Result<Vec<NineJConfig>> {
    let step = 2.0 * PI / grid_n as f64;
    let at = |i: usize| -PI + step * i as f64;
    let grid: Vec<Vec<[f64; 2]>> = (0..=grid_n)
        .map(|i| (0..=grid_n).map(|k| f.residual(at(i), at(k))).collect())
        .collect();

    let mut roots: Vec<(f64, f64)> = Vec::new();
    let mut best = f64::INFINITY;
    for i in 0..grid_n {
        for k in 0..grid_n {
            let corners = [grid[i][k], grid[i + 1][k], grid[i][k + 1], grid[i + 1][k + 1]];
            let changes = |c: usize| {
                let lo = corners.iter().map(|r| r[c]).fold(f64::INFINITY, f64::min);
                let hi = corners.iter().map(|r| r[c]).fold(f64::NEG_INFINITY, f64::max);
                lo <= 0.0 && hi >= 0.0
            };
            if !(changes(0) && changes(1)) {
                continue;
            }
            let (a0, t0) = (at(i) + step / 2.0, at(k) + step / 2.0);
            match f.newton(a0, t0) {
                Ok((a, t)) => {
                    let (a, t) = (wrap(a), wrap(t));
                    let dup = roots.iter().any(|&(ra, rt)| {
                        wrap(ra - a).abs() < 1e-7 && wrap(rt - t).abs() < 1e-7
                    });
                    if !dup {
                        roots.push((a, t));
                    }
                }
                Err(r) => best = best.min(r),
            }
        }
    }
    if roots.is_empty() {
        // Newton stalling well away from zero means the two residual curves
        // cross cells without meeting: the roots have gone complex.
        if best < STALL_TOL {
            return Err(Error::ConvergenceFailure { best_residual: best });
        }
        return Err(Error::ClassicallyForbidden("no real stationary configuration".into()));
    }
    roots.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
    let configs: Vec<NineJConfig> = roots.into_iter().map(|(a, t)| f.config(a, t)).collect();
    if let Some(bad) = configs.iter().find(|c| c.max_residual() >= CONFIG_TOL) {
        return Err(Error::ConvergenceFailure { best_residual: bad.max_residual() });
    }
    Ok(configs)
}

/// One configuration from each branch, `(Branch::One, Branch::Two)`.
///
/// Each branch is a mirror pair; the member returned is the one with
/// `J7 · (J12 × J13) ≥ 0`. The other member is available through
/// [`NineJConfig::mirror`].
pub fn solve_nine_j_config(l: &NineJLengths) -> Result<(NineJConfig, NineJConfig)> {
    let configs = all_nine_j_configs(l)?;
    let pick = |b: Branch| {
        configs
            .iter()
            .filter(|c| c.branch == b)
            .max_by(|x, y| x.orientation().total_cmp(&y.orientation()))
            .copied()
    };
    match (pick(Branch::One), pick(Branch::Two)) {
        (Some(one), Some(two)) => {
            let scale = l.as_array().iter().fold(0.0f64, |m, &x| m.max(x)).powi(6);
            if one.amplitude_det().abs() < SIN_FLOOR * scale || two.amplitude_det().abs() < SIN_FLOOR * scale {
                return Err(Error::CausticDegenerate("amplitude determinant vanishes".into()));
            }
            Ok((one, two))
        }
        _ => Err(Error::CausticDegenerate(format!(
            "only {} stationary configuration(s), both branches needed",
            configs.len()
        ))),
    }
}

/// `(φ12, φ13, θ)`: the internal dihedral angles at the edges `J12` and `J13`
/// of the tetrahedron with vertices `0`, `J12`, `J13`, `-J7`, and the angle
/// between `J12` and `J13`.
pub fn two_small_angles(c: &NineJConfig) -> Result<(f64, f64, f64)> {
    let (j12, j13, j7) = (c.j12(), c.j13(), c.j7);
    let a = j12.cross(j13);
    let b = j12.cross(j7);
    let d = j13.cross(j7);
    let floor = SIN_FLOOR * j12.norm() * j13.norm();
    if a.norm() < floor || b.norm() < SIN_FLOOR * j12.norm() * j7.norm() || d.norm() < SIN_FLOOR * j13.norm() * j7.norm() {
        return Err(Error::CausticDegenerate("J12, J13 and J7 are not in general position".into()));
    }
    let phi12 = PI - angle_between(a, b);
    let phi13 = PI - angle_between(-a, d);
    let theta = angle_between(j12, j13);
    Ok((phi12, phi13, theta))
}
