use rug::Float;

use super::vec3::{angle_between, triple, Vec3};
use crate::error::{Error, Result};

/// Vertex pairs of the six edges, in the order used for every length array:
/// `01, 02, 03, 12, 13, 23`.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the edge joining vertices `i` and `j`.
pub fn edge_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    EDGES.iter().position(|&e| e == (a, b)).expect("distinct vertices 0..4")
}

/// Angles below this sine count as degenerate.
pub const SIN_FLOOR: f64 = 1e-8;

const CM_PREC: u32 = 256;

/// Cayley–Menger determinant `288 V²` of six edge lengths (order of [`EDGES`]).
///
/// Evaluated as `8 det G`, with `G` the Gram matrix of the three edges at
/// vertex 0, in extended precision so that flat tetrahedra do not lose all
/// their significant bits to cancellation.
pub fn cayley_menger(l: &[f64; 6]) -> f64 {
    let sq = |x: f64| {
        let f = Float::with_val(CM_PREC, x);
        f.clone() * f
    };
    let [d01, d02, d03, d12, d13, d23] = l.map(sq);
    let half = |a: &Float, b: &Float, c: &Float| -> Float { (a.clone() + b - c) / 2u32 };
    let g11 = d01.clone();
    let g22 = d02.clone();
    let g33 = d03.clone();
    let g12 = half(&d01, &d02, &d12);
    let g13 = half(&d01, &d03, &d13);
    let g23 = half(&d02, &d03, &d23);
    let det = g11.clone() * (g22.clone() * &g33 - g23.clone() * &g23)
        - g12.clone() * (g12.clone() * &g33 - g23.clone() * &g13)
        + g13.clone() * (g12.clone() * &g23 - g22.clone() * &g13);
    (det * 8u32).to_f64()
}

fn check_lengths(l: &[f64; 6]) -> Result<()> {
    if l.iter().any(|&x| x.is_nan() || x <= 0.0 || !x.is_finite()) {
        return Err(Error::Input(format!("edge lengths must be positive and finite: {l:?}")));
    }
    Ok(())
}

/// Volume from the six edge lengths, `√(CM / 288)`.
///
/// A negative determinant beyond rounding means no Euclidean tetrahedron has
/// these edges.
pub fn cm_volume(l: &[f64; 6]) -> Result<f64> {
    check_lengths(l)?;
    let cm = cayley_menger(l);
    let scale = l.iter().fold(0.0f64, |m, &x| m.max(x)).powi(6);
    if cm < -1e-13 * scale {
        return Err(Error::ClassicallyForbidden(format!(
            "Cayley-Menger determinant {cm:e} < 0 for edges {l:?}"
        )));
    }
    Ok((cm.max(0.0) / 288.0).sqrt())
}

/// A tetrahedron realized in space with vertex 0 at the origin, vertex 1 on
/// the +x axis, vertex 2 in the upper xy half-plane and vertex 3 at z ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddedTetrahedron {
    pub vertices: [Vec3; 4],
    pub lengths: [f64; 6],
}

impl EmbeddedTetrahedron {
    /// Vector from vertex `i` to vertex `j`.
    pub fn edge_vector(&self, i: usize, j: usize) -> Vec3 {
        self.vertices[j] - self.vertices[i]
    }

    /// Signed volume `(P1-P0)·((P2-P0)×(P3-P0)) / 6`.
    pub fn signed_volume(&self) -> f64 {
        let p = &self.vertices;
        triple(p[1] - p[0], p[2] - p[0], p[3] - p[0]) / 6.0
    }

    /// Distances between vertices in [`EDGES`] order.
    pub fn measured_lengths(&self) -> [f64; 6] {
        EDGES.map(|(i, j)| self.edge_vector(i, j).norm())
    }

    /// Mirror image through the xy-plane (vertex 3 to z ≤ 0).
    pub fn reflected(&self) -> Self {
        let mut out = *self;
        for v in &mut out.vertices {
            v.z = -v.z;
        }
        out
    }
}

/// Build coordinates for six edge lengths (order of [`EDGES`]).
pub fn embed_tetrahedron(l: &[f64; 6]) -> Result<EmbeddedTetrahedron> {
    let volume = cm_volume(l)?;
    let [d01, d02, d03, d12, d13, d23] = *l;
    let x2 = (d01 * d01 + d02 * d02 - d12 * d12) / (2.0 * d01);
    let y2sq = d02 * d02 - x2 * x2;
    if y2sq < 0.0 && y2sq < -1e-12 * d02 * d02 {
        return Err(Error::ClassicallyForbidden(format!(
            "face (0,1,2) violates the triangle inequality: {d01}, {d02}, {d12}"
        )));
    }
    let y2 = y2sq.max(0.0).sqrt();
    if y2 == 0.0 {
        return Err(Error::CausticDegenerate("face (0,1,2) is collinear".into()));
    }
    let x3 = (d01 * d01 + d03 * d03 - d13 * d13) / (2.0 * d01);
    let y3 = (d03 * d03 - d23 * d23 + x2 * x2 + y2 * y2 - 2.0 * x2 * x3) / (2.0 * y2);
    // z from the volume is better conditioned than from the residual radius.
    let z3 = 6.0 * volume / (d01 * y2);
    Ok(EmbeddedTetrahedron {
        vertices: [Vec3::ZERO, Vec3::new(d01, 0.0, 0.0), Vec3::new(x2, y2, 0.0), Vec3::new(x3, y3, z3)],
        lengths: *l,
    })
}

/// Internal and external dihedral angle at one edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dihedral {
    pub edge: (usize, usize),
    /// Internal angle between the two faces, in `[0, π]`.
    pub internal: f64,
    /// External angle `π - internal`.
    pub external: f64,
}

fn other_two(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&k| k != i && k != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// Dihedral angles at the six edges (order of [`EDGES`]), from face normals.
pub fn dihedral_angles(t: &EmbeddedTetrahedron) -> Result<[Dihedral; 6]> {
    let mut out = [Dihedral { edge: (0, 0), internal: 0.0, external: 0.0 }; 6];
    for (slot, &(i, j)) in out.iter_mut().zip(EDGES.iter()) {
        let (k, l) = other_two(i, j);
        let u = t.edge_vector(i, j);
        let n1 = u.cross(t.edge_vector(i, k));
        let n2 = u.cross(t.edge_vector(i, l));
        let phi = angle_between(n1, n2);
        if phi.sin() < SIN_FLOOR {
            return Err(Error::CausticDegenerate(format!(
                "flat tetrahedron: dihedral at edge {i}{j} is {phi}"
            )));
        }
        *slot = Dihedral { edge: (i, j), internal: phi, external: std::f64::consts::PI - phi };
    }
    Ok(out)
}

/// Dihedral angles computed from the edge lengths alone, through the Gram
/// matrix of the edge vectors at one end of each edge.
pub fn dihedral_angles_from_lengths(l: &[f64; 6]) -> Result<[Dihedral; 6]> {
    cm_volume(l)?;
    let d = |i: usize, j: usize| l[edge_index(i, j)];
    // Dot product of the edges i→a and i→b.
    let dot = |i: usize, a: usize, b: usize| -> f64 {
        if a == b {
            return d(i, a).powi(2);
        }
        (d(i, a).powi(2) + d(i, b).powi(2) - d(a, b).powi(2)) / 2.0
    };
    let mut out = [Dihedral { edge: (0, 0), internal: 0.0, external: 0.0 }; 6];
    for (slot, &(i, j)) in out.iter_mut().zip(EDGES.iter()) {
        let (k, m) = other_two(i, j);
        let uu = dot(i, j, j);
        let ak = dot(i, k, k) - dot(i, k, j).powi(2) / uu;
        let am = dot(i, m, m) - dot(i, m, j).powi(2) / uu;
        let km = dot(i, k, m) - dot(i, k, j) * dot(i, m, j) / uu;
        let c = (km / (ak * am).sqrt()).clamp(-1.0, 1.0);
        let phi = c.acos();
        if phi.sin() < SIN_FLOOR {
            return Err(Error::CausticDegenerate(format!("flat tetrahedron at edge {i}{j}")));
        }
        *slot = Dihedral { edge: (i, j), internal: phi, external: std::f64::consts::PI - phi };
    }
    Ok(out)
}
