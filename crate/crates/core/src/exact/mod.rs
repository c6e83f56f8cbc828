//! Exact 3j, 6j, 9j and 15j symbols.

pub mod cache;
mod fifteenj;
mod labels;
mod ninej;
pub mod oracle;
mod sixj;
mod threej;

pub use cache::{cache_load, cache_store, global_cache, CacheStats, SymbolCache};
pub use fifteenj::{fifteen_j_sixj_terms, wigner_15j_first};
pub use labels::{enumerate_admissible, FifteenJLabels, Label, TRIADS};
pub use ninej::{wigner_9j, wigner_9j_twice};
pub use oracle::contract_moebius_oracle;
pub use sixj::{canonical_key, wigner_6j, wigner_6j_twice, wigner_6j_uncached};
pub use threej::wigner_3j;

use rug::{Integer, Rational};

use crate::factorial::PrimeExponents;

/// `√(Π pos! / Π neg!)` as `q √r` with `r` square-free.
pub(crate) fn sqrt_factorial_ratio(pos: &[u64], neg: &[u64]) -> (Rational, Integer) {
    let mut e = PrimeExponents::new();
    for &n in pos {
        e.add_factorial(n, 1);
    }
    for &n in neg {
        e.add_factorial(n, -1);
    }
    let (half, radicand) = e.split_sqrt();
    let (num, den) = half.to_num_den();
    (Rational::from((num, den)), radicand)
}
