//! Sweeps of one label through its window, comparing exact and asymptotic
//! values, plus the flat config format used by the command line.

mod config;
mod sweep;
mod window;

pub use config::{eval_asymptotic, eval_exact, parse_config, Config};
pub use sweep::{
    fmt17, run_sweep, scale_large_labels, summarize, sweep_point, Sweep, SweepRow, SweepSpec, SweepSummary, REL_FLOOR,
};
pub use window::{admissible_window, Window};
