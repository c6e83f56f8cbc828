use std::f64::consts::PI;

use super::tetra::{dihedral_angles, embed_tetrahedron, EmbeddedTetrahedron, SIN_FLOOR};
use super::vec3::{angle_between, Vec3};
use crate::error::{Error, Result};

/// Exterior angle at the vertex between sides `a` and `b` of the triangle
/// with sides `a`, `b`, `c`: `π - arccos((a² + b² - c²) / 2ab)`.
pub fn triangle_exterior_angle(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(Error::Input(format!("triangle sides must be positive: {a}, {b}, {c}")));
    }
    if c > a + b || a > b + c || b > a + c {
        return Err(Error::ClassicallyForbidden(format!(
            "sides {a}, {b}, {c} violate the triangle inequality"
        )));
    }
    let cos = ((a * a + b * b - c * c) / (2.0 * a * b)).clamp(-1.0, 1.0);
    Ok(PI - cos.acos())
}

/// `π - ∠(a×b, a×c)`: the angle at edge `a` between the half-planes through
/// `b` and through `-c`.
pub fn plane_angle(a: Vec3, b: Vec3, c: Vec3) -> Result<f64> {
    let (n1, n2) = (a.cross(b), a.cross(c));
    if n1.norm() < SIN_FLOOR * a.norm() * b.norm() || n2.norm() < SIN_FLOOR * a.norm() * c.norm() {
        return Err(Error::CausticDegenerate("collinear vectors in a plane angle".into()));
    }
    Ok(PI - angle_between(n1, n2))
}

/// Geometry of the case with `j3`, `j5`, `j6` small.
///
/// The six large labels `j1, j2, j12, j4, j24, j7` are the edges of a
/// tetrahedron `P0 P1 P2 P3` with
/// `J1 = P1-P0`, `J2 = P2-P1`, `J12 = P2-P0`, `J4 = P3-P2`, `J24 = P3-P1`,
/// `J7 = P0-P3`.
#[derive(Clone, Copy, Debug)]
pub struct ThreeSmallGeometry {
    pub tetra: EmbeddedTetrahedron,
    pub volume: f64,
    pub j1: Vec3,
    pub j2: Vec3,
    pub j12: Vec3,
    pub j4: Vec3,
    pub j24: Vec3,
    pub j7: Vec3,
    /// Internal dihedral angles at `J1, J12, J7, J2, J24, J4`, in edge order.
    pub internal: [f64; 6],
    /// `Σ J_e (π - φ_e)` over the six edges.
    pub ponzano_regge: f64,
    /// `π - ∠(J1×J4, J1×J7)`.
    pub phi1p: f64,
    /// `π - ∠(J4×J1, J4×J7)`.
    pub phi4p: f64,
    /// Angle between `J1` and `J4`.
    pub theta1: f64,
    /// Angle between `J1` and `J12`.
    pub theta2: f64,
}

impl ThreeSmallGeometry {
    /// Internal dihedral at the edge `J1`.
    pub fn phi_j1(&self) -> f64 {
        self.internal[0]
    }

    /// Internal dihedral at the edge `J12`.
    pub fn phi_j12(&self) -> f64 {
        self.internal[1]
    }
}

/// The tetrahedron of the three-small case, with edges in [`EDGES`] order
/// `(J1, J12, J7, J2, J24, J4)`. Lengths are `j + 1/2`.
///
/// [`EDGES`]: super::tetra::EDGES
pub fn three_small_tetrahedron(j1: f64, j2: f64, j12: f64, j4: f64, j24: f64, j7: f64) -> Result<EmbeddedTetrahedron> {
    embed_tetrahedron(&[j1, j12, j7, j2, j24, j4])
}

/// Angles of the three-small case read off a tetrahedron built by
/// [`three_small_tetrahedron`]. Either orientation gives the same angles.
pub fn three_small_angles(tetra: &EmbeddedTetrahedron) -> Result<ThreeSmallGeometry> {
    let volume = tetra.signed_volume().abs();
    let dihedrals = dihedral_angles(tetra)?;
    let internal = dihedrals.map(|d| d.internal);
    let ponzano_regge = tetra.lengths.iter().zip(internal.iter()).map(|(l, p)| l * (PI - p)).sum();
    let p = tetra.vertices;
    let (v1, v2, v12) = (p[1] - p[0], p[2] - p[1], p[2] - p[0]);
    let (v4, v24, v7) = (p[3] - p[2], p[3] - p[1], p[0] - p[3]);
    Ok(ThreeSmallGeometry {
        tetra: *tetra,
        volume,
        j1: v1,
        j2: v2,
        j12: v12,
        j4: v4,
        j24: v24,
        j7: v7,
        internal,
        ponzano_regge,
        phi1p: plane_angle(v1, v4, v7)?,
        phi4p: plane_angle(v4, v1, v7)?,
        theta1: angle_between(v1, v4),
        theta2: angle_between(v1, v12),
    })
}
