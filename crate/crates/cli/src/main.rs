//! `qcdeph`: sweep the correlation measures of a named state family over a
//! Γt grid, run random-state ensembles, or evaluate a single density matrix
//! from a JSON file. Output is CSV with 12 significant digits.
//!
//! Exit codes: 0 success, 2 invalid parameters, 3 unreadable/malformed
//! input, 4 density-matrix invariant violation.

use clap::{Parser, Subcommand, ValueEnum};
use qcdeph::channel::DephasingPoint;
use qcdeph::correlations::{
    correlation_record, discord_closed_form, lqu_closed_form_dfs_mix, lqu_closed_form_two_param,
    negativity_closed_form_dfs_mix, negativity_closed_form_iso_mix,
    negativity_closed_form_two_param, CorrelationRecord,
};
use qcdeph::ensemble::{run_ensemble, EnsembleConfig};
use qcdeph::states::{
    dfs_mix_state, iso_mix_state, two_param_state, DensityMatrix, DensityMatrixJson, DfsMixFamily,
    IsoMixFamily, StateError, TwoParamFamily,
};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcdeph", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one state family over a Γt grid and write a CSV of all four
    /// correlation measures (plus the family's closed forms).
    Family {
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// Γt grid as start:stop:step
        #[arg(long, value_parser = parse_grid)]
        grid: GridSpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve Haar-random pure states and write per-grid negativity
    /// statistics plus the per-state asymptotic bar data.
    Random {
        /// number of random pure states
        #[arg(long)]
        n: usize,
        /// master seed; state i draws from substream i
        #[arg(long)]
        seed: u64,
        /// Γt grid as start:stop:step
        #[arg(long, value_parser = parse_grid)]
        grid: GridSpec,
        /// summary CSV (gamma_t, mean, lo, hi)
        #[arg(long)]
        out: PathBuf,
        /// bar-data CSV (state_index, asymptotic_negativity)
        #[arg(long)]
        bars_out: PathBuf,
    },
    /// Evaluate one density matrix from a JSON file at a single Γt and print
    /// the CSV record to stdout.
    State {
        /// JSON file: {"dim": 6, "re": [36 numbers], "im": [36 numbers]}
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        gamma_t: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    TwoParam,
    DfsMix,
    IsoMix,
}

#[derive(Clone, Copy)]
struct GridSpec {
    start: f64,
    stop: f64,
    step: f64,
}

impl GridSpec {
    fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected start:stop:step".into());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if step.is_nan() || step <= 0.0 {
        return Err(format!("step must be > 0 (got {step})"));
    }
    if stop < start {
        return Err(format!("stop {stop} must be >= start {start}"));
    }
    if start < 0.0 {
        return Err(format!("start must be >= 0 (got {start})"));
    }
    Ok(GridSpec { start, stop, step })
}

enum CliError {
    Params(String),
    Parse(String),
    Invariant(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Params(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Invariant(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Params(m) | CliError::Parse(m) | CliError::Invariant(m) | CliError::Io(m) => {
                m
            }
        }
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::NotHermitian { .. }
            | StateError::BadTrace { .. }
            | StateError::NotPositive { .. } => CliError::Invariant(e.to_string()),
            StateError::BadDim { .. } | StateError::BadFieldLength { .. } => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Params(e.to_string()),
        }
    }
}

/// 12 significant digits, stable for exact CSV round-trips.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn record_fields(r: &CorrelationRecord) -> String {
    format!(
        "{},{},{},{},{}",
        sig12(r.gamma_t),
        sig12(r.negativity),
        sig12(r.classical),
        sig12(r.discord),
        sig12(r.lqu)
    )
}

const RECORD_HEADER: &str = "gamma_t,negativity,classical,discord,lqu";

fn require(value: Option<f64>, name: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Params(format!("--{name} is required for this family")))
}

fn reject(value: Option<f64>, name: &str, why: &str) -> Result<(), CliError> {
    if value.is_some() {
        return Err(CliError::Params(format!("--{name} is not accepted: {why}")));
    }
    Ok(())
}

fn run_family_sweep(
    family: FamilyKind,
    alpha: Option<f64>,
    gamma: Option<f64>,
    beta: Option<f64>,
    grid: GridSpec,
    out: &Path,
) -> Result<(), CliError> {
    let mut csv = String::new();
    match family {
        FamilyKind::TwoParam => {
            reject(
                beta,
                "beta",
                "it is derived from (alpha, gamma) for two-param",
            )?;
            let f = TwoParamFamily::new(require(alpha, "alpha")?, require(gamma, "gamma")?)?;
            let rho0 = two_param_state(&f);
            writeln!(csv, "{RECORD_HEADER},negativity_cf,discord_cf,lqu_cf").unwrap();
            for t in grid.points() {
                let p = DephasingPoint::new(t).expect("grid is non-negative");
                let r = correlation_record(&rho0, p);
                writeln!(
                    csv,
                    "{},{},{},{}",
                    record_fields(&r),
                    sig12(negativity_closed_form_two_param(&f, p)),
                    sig12(discord_closed_form(&f, p)),
                    sig12(lqu_closed_form_two_param(&f, p))
                )
                .unwrap();
            }
        }
        FamilyKind::DfsMix => {
            reject(gamma, "gamma", "dfs-mix takes only --alpha")?;
            reject(beta, "beta", "dfs-mix takes only --alpha")?;
            let f = DfsMixFamily::new(require(alpha, "alpha")?)?;
            let rho0 = dfs_mix_state(&f);
            writeln!(csv, "{RECORD_HEADER},negativity_cf,lqu_cf").unwrap();
            for t in grid.points() {
                let p = DephasingPoint::new(t).expect("grid is non-negative");
                let r = correlation_record(&rho0, p);
                writeln!(
                    csv,
                    "{},{},{}",
                    record_fields(&r),
                    sig12(negativity_closed_form_dfs_mix(&f, p)),
                    sig12(lqu_closed_form_dfs_mix(&f, p))
                )
                .unwrap();
            }
        }
        FamilyKind::IsoMix => {
            reject(gamma, "gamma", "iso-mix takes --alpha and --beta")?;
            let f = IsoMixFamily::new(require(alpha, "alpha")?, require(beta, "beta")?)?;
            let rho0 = iso_mix_state(&f);
            writeln!(csv, "{RECORD_HEADER},negativity_cf").unwrap();
            for t in grid.points() {
                let p = DephasingPoint::new(t).expect("grid is non-negative");
                let r = correlation_record(&rho0, p);
                writeln!(
                    csv,
                    "{},{}",
                    record_fields(&r),
                    sig12(negativity_closed_form_iso_mix(&f, p))
                )
                .unwrap();
            }
        }
    }
    std::fs::write(out, csv).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))
}

fn run_random(
    n: usize,
    seed: u64,
    grid: GridSpec,
    out: &Path,
    bars_out: &Path,
) -> Result<(), CliError> {
    let cfg = EnsembleConfig {
        n_states: n,
        master_seed: seed,
        grid: grid.points(),
    };
    let summary = run_ensemble(&cfg).map_err(|e| CliError::Params(e.to_string()))?;

    let mut csv = String::from("gamma_t,mean,lo,hi\n");
    for g in &summary.per_grid {
        writeln!(
            csv,
            "{},{},{},{}",
            sig12(g.gamma_t),
            sig12(g.mean),
            sig12(g.lo),
            sig12(g.hi)
        )
        .unwrap();
    }
    std::fs::write(out, csv).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;

    let mut bars = String::from("state_index,asymptotic_negativity\n");
    for (i, neg) in summary.asymptotic_negativity.iter().enumerate() {
        writeln!(bars, "{i},{}", sig12(*neg)).unwrap();
    }
    std::fs::write(bars_out, bars)
        .map_err(|e| CliError::Io(format!("{}: {e}", bars_out.display())))?;

    eprintln!(
        "# {n} states, asymptotic NPT fraction = {:.2}",
        summary.entangled_fraction
    );
    Ok(())
}

fn run_state_file(file: &Path, gamma_t: f64) -> Result<(), CliError> {
    if gamma_t < 0.0 {
        return Err(CliError::Params(format!(
            "gamma_t must be >= 0 (got {gamma_t})"
        )));
    }
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?;
    let json: DensityMatrixJson =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    let rho = DensityMatrix::try_from(&json)?;
    let p = DephasingPoint::new(gamma_t).expect("checked non-negative");
    let r = correlation_record(&rho, p);
    println!("{RECORD_HEADER}");
    println!("{}", record_fields(&r));
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("QCDEPH_THREADS") {
        let n: usize = raw.parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
            CliError::Params(format!(
                "QCDEPH_THREADS must be a positive integer (got {raw:?})"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Params(e.to_string()))?;
    }
    Ok(())
}

fn run() -> Result<(), CliError> {
    configure_threads()?;
    match Cli::parse().command {
        Command::Family {
            family,
            alpha,
            gamma,
            beta,
            grid,
            out,
        } => run_family_sweep(family, alpha, gamma, beta, grid, &out),
        Command::Random {
            n,
            seed,
            grid,
            out,
            bars_out,
        } => run_random(n, seed, grid, &out, &bars_out),
        Command::State { file, gamma_t } => run_state_file(&file, gamma_t),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
