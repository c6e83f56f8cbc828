//! Semiclassical approximations to the 15j symbol when some labels are small.

mod action;
mod dmatrix;
mod formulas;

pub use action::{NineJAction, SignedDihedralAction};
pub use dmatrix::{wigner_d, wigner_d_twice};
pub use formulas::{
    asymp_four_small, asymp_three_small, asymp_two_small, asymp_two_small_with, asymptotic, ponzano_regge_phase,
    two_small_lengths, AsymptoticResult, Formula, Regime, SmallSpinIndices,
};
