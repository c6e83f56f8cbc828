use std::f64::consts::PI;

use crate::geometry::{Branch, NineJConfig, Vec3};

/// Source of the stationary-phase action of one 9j configuration.
pub trait NineJAction: Sync {
    fn action(&self, c: &NineJConfig) -> f64;
}

/// Sum over the nine edges of `±J_e α_e`, with `α_e` the signed angle
/// between the two coupling triangles that meet at edge `e`.
///
/// Each edge belongs to one triangle of the `(12, 34)` scheme side or the
/// final coupling and one of the `(13, 24)` side, except `J12` and `J34`
/// which join two triangles of the same scheme and enter with a minus sign.
/// Angles are taken in `(-π, π]` on branch one and in `[0, 2π)` on branch
/// two. A reflection maps branch one to itself with `S → -S` and branch two
/// with `S → 2πΣJ - S`, so `cos S₁` and `sin S₂` do not depend on which
/// member of a mirror pair is used.
#[derive(Clone, Copy, Debug, Default)]
pub struct SignedDihedralAction;

/// The signed angle at edge `e` between normals `a` and `b`.
fn signed_angle(a: Vec3, b: Vec3, e: Vec3) -> f64 {
    a.cross(b).dot(e.normalized()).atan2(a.dot(b))
}

impl SignedDihedralAction {
    /// `(length, sign, α)` for each of the nine edges.
    pub fn edge_terms(&self, c: &NineJConfig) -> [(f64, f64, f64); 9] {
        let (j1, j2, j3, j4) = (c.j1, c.j2, c.j3, c.j4);
        let (j12, j34, j13, j24) = (c.j12(), c.j34(), c.j13(), c.j24());
        let a1 = j1.cross(j2);
        let a2 = j3.cross(j4);
        let a3 = j12.cross(j34);
        let b1 = j1.cross(j3);
        let b2 = j2.cross(j4);
        let b3 = j13.cross(j24);
        let l = &c.lengths;
        let lift = |x: f64| match c.branch {
            Branch::One => x,
            Branch::Two if x < 0.0 => x + 2.0 * PI,
            Branch::Two => x,
        };
        let t = |len: f64, sign: f64, a: Vec3, b: Vec3, e: Vec3| (len, sign, lift(signed_angle(a, b, e)));
        [
            t(l.j1, 1.0, a1, b1, j1),
            t(l.j2, 1.0, a1, b2, j2),
            t(l.j3, 1.0, a2, b1, j3),
            t(l.j4, 1.0, a2, b2, j4),
            t(l.j7, 1.0, a3, b3, c.j7),
            t(l.j12, -1.0, a1, a3, j12),
            t(l.j34, -1.0, a2, a3, j34),
            t(l.j13, 1.0, b1, b3, j13),
            t(l.j24, 1.0, b2, b3, j24),
        ]
    }
}

impl NineJAction for SignedDihedralAction {
    fn action(&self, c: &NineJConfig) -> f64 {
        self.edge_terms(c).iter().map(|(l, s, a)| l * s * a).sum()
    }
}
