use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fifteenj::exact::{cache_load, global_cache};
use fifteenj::harness::{admissible_window, eval_asymptotic, eval_exact, parse_config, run_sweep, Config};
use fifteenj::semiclassics::{asymptotic, Regime};
use fifteenj::Error;

/// Environment variable naming the 6j cache file; overrides `cache =` in a config.
const CACHE_ENV: &str = "FIFTEENJ_CACHE";

#[derive(Parser)]
#[command(name = "fifteenj", version, about = "Exact and asymptotic Wigner 15j symbols")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value: algebraic form, then a 17-digit decimal.
    Exact { config: PathBuf },
    /// Asymptotic value from the formula named in the config.
    Asymp { config: PathBuf },
    /// Sweep the varied label over its window and write CSV.
    Sweep {
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Evaluate points one at a time.
        #[arg(long)]
        serial: bool,
    },
    /// Print the admissible window of the varied label.
    Window { config: PathBuf },
    /// Inspect or rewrite a 6j cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Entry count and file size.
    Stats { path: PathBuf },
    /// Rewrite in canonical sorted form.
    Compact { path: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ClassicallyForbidden(_) | Error::CausticDegenerate(_) => 3,
        Error::ConvergenceFailure { .. } => 4,
        _ => 2,
    }
}

fn load_config(path: &Path) -> Result<Config, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

fn cache_path(cfg: &Config) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).or_else(|| cfg.cache.clone())
}

/// Load the cache file into the global cache if it exists.
fn open_cache(cfg: &Config) -> Result<Option<PathBuf>, Error> {
    let Some(path) = cache_path(cfg) else {
        return Ok(None);
    };
    if path.exists() {
        global_cache().replace_with(cache_load(&path)?);
    }
    global_cache().set_path(Some(path.clone()));
    Ok(Some(path))
}

fn close_cache(path: Option<PathBuf>) -> Result<(), Error> {
    match path {
        Some(p) => global_cache().store(&p),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Exact { config } => {
            let cfg = load_config(&config)?;
            let labels = cfg.point_labels()?;
            let cache = open_cache(&cfg)?;
            writeln!(out, "{}", eval_exact(&labels))?;
            close_cache(cache)?;
        }
        Command::Asymp { config } => {
            let cfg = load_config(&config)?;
            let labels = cfg.point_labels()?;
            let formula = cfg.formula()?;
            writeln!(out, "{}", eval_asymptotic(&labels, formula)?)?;
            let r = asymptotic(&labels, formula)?;
            if r.regime != Regime::Allowed {
                return Err(Error::ClassicallyForbidden(format!("regime {}", r.regime)));
            }
        }
        Command::Sweep { config, output, serial } => {
            let cfg = load_config(&config)?;
            let spec = cfg.sweep_spec()?;
            let cache = open_cache(&cfg)?;
            let sweep = run_sweep(&spec, !serial)?;
            sweep.write_csv(fs::File::create(&output)?)?;
            close_cache(cache)?;
            let all = sweep.summary();
            let mid = sweep.central_summary();
            writeln!(out, "{} rows, {} allowed", sweep.rows.len(), all.count)?;
            writeln!(
                out,
                "all:     rms {:.4} median {:.4} max {:.4} sign mismatches {}",
                all.rms_rel, all.median_rel, all.max_rel, all.sign_mismatches
            )?;
            writeln!(
                out,
                "central: rms {:.4} median {:.4} max {:.4} sign mismatches {}",
                mid.rms_rel, mid.median_rel, mid.max_rel, mid.sign_mismatches
            )?;
        }
        Command::Window { config } => {
            let cfg = load_config(&config)?;
            match admissible_window(&cfg.labels, cfg.varied) {
                Some(w) => writeln!(out, "{} {} {}", cfg.varied, w.lo, w.hi)?,
                None => {
                    writeln!(out, "{} empty", cfg.varied)?;
                    return Err(Error::ClassicallyForbidden("empty window".into()));
                }
            }
        }
        Command::Cache { action: CacheAction::Stats { path } } => {
            let c = cache_load(&path)?;
            let bytes = fs::metadata(&path)?.len();
            let terms: usize = c.entries().values().map(|v| v.len()).sum();
            writeln!(out, "entries {}\nterms {}\nbytes {}", c.len(), terms, bytes)?;
        }
        Command::Cache { action: CacheAction::Compact { path } } => {
            let c = cache_load(&path)?;
            let before = fs::metadata(&path)?.len();
            c.store(&path)?;
            let after = fs::metadata(&path)?.len();
            writeln!(out, "entries {}\nbytes {before} -> {after}", c.len())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fifteenj: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
