//! Vector geometry behind the asymptotic formulas.

mod angles;
mod ninej;
mod tetra;
mod vec3;

pub use angles::{plane_angle, three_small_angles, three_small_tetrahedron, triangle_exterior_angle, ThreeSmallGeometry};
pub use ninej::{all_nine_j_configs, solve_nine_j_config, two_small_angles, Branch, NineJConfig, NineJLengths, CONFIG_TOL};
pub use tetra::{
    cayley_menger, cm_volume, dihedral_angles, dihedral_angles_from_lengths, edge_index, embed_tetrahedron, Dihedral,
    EmbeddedTetrahedron, EDGES, SIN_FLOOR,
};
pub use vec3::{angle_between, triple, Vec3};
