use std::f64::consts::FRAC_PI_2;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rabiwave_core::ssh_band::{
    dispersion, find_dimerization_minima, ground_state_energy_elliptic, ground_state_energy_elliptic_literal,
    ground_state_energy_integral, ground_state_energy_smallz, Dimerization, NoMinimum,
};
use serde::Serialize;

use crate::catalog::{compare_catalog, MatchReport, ReferenceCatalog};
use crate::config::{missing, RunConfig};
use crate::error::CliError;
use crate::output::{
    emit, num, peaks_bytes, read_peaks, read_trace, sibling, snapshot_bytes, spectrum_bytes, to_json, trace_bytes,
    Format, Table,
};
use crate::pipeline::{analyze, linearity_scan, simulate, LinearityReport};
use crate::revival::{classify_revival, RevivalLabels};

#[derive(Debug, Parser)]
#[command(name = "rabiwave", version, about = "Dimerized-chain bands, multichain Rabi waves and their spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (stdout when absent). Relative paths go under $RABIWAVE_OUTPUT_DIR if set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed for randomized initial states.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Parallel runs for parameter sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dispersion ε, Δ, E over the reduced zone.
    Band,
    /// Ground-state energy against dimerization, and its minima.
    Groundstate,
    /// Lattice dynamics; writes the inversion trace.
    Evolve {
        /// Also write site densities every `run.snapshot_stride` steps.
        #[arg(long)]
        snapshots: Option<PathBuf>,
    },
    /// Spectrum and peaks of a trace.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        /// Peak list destination; defaults to `<output>.peaks.<ext>`.
        #[arg(long)]
        peaks: Option<PathBuf>,
    },
    /// Labels principal and revival peaks.
    Classify {
        /// Peak list from `spectrum`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        fundamental: Option<f64>,
    },
    /// Matches peaks against a catalog entry (the entry itself when no input).
    Compare {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        entry: Option<String>,
        #[arg(long)]
        scale: Option<f64>,
    },
    /// Dominant peak frequency against g√(l+1).
    Linearity,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("rabiwave: {e}");
            e.exit_code()
        }
    }
}

fn load(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Err(CliError::Usage("--config is required for this command".into())),
    }
}

fn load_optional(path: Option<&Path>) -> Result<RunConfig, CliError> {
    path.map_or_else(|| Ok(RunConfig::default()), RunConfig::load)
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = cli.output.as_deref();
    let config = cli.config.as_deref();
    match &cli.command {
        Command::Band => band(&load(config)?, out, cli.format),
        Command::Groundstate => groundstate(&load(config)?, out, cli.format),
        Command::Evolve { snapshots } => {
            let cfg = load(config)?;
            let e = cfg.experiment()?;
            let outcome = simulate(&e, cli.seed.or(cfg.seed).unwrap_or(0))?;
            emit(out, &trace_bytes(&outcome.trace, cli.format))?;
            if let Some(p) = snapshots {
                emit(Some(p), &snapshot_bytes(&outcome.trace, e.system.n_chains, cli.format))?;
            }
            Ok(())
        }
        Command::Spectrum { input, peaks } => {
            let cfg = load_optional(config)?;
            let trace = read_trace(input)?;
            let (s, p) = analyze(&trace, &cfg.analysis)?;
            emit(out, &spectrum_bytes(&s, cli.format))?;
            let peaks_path = peaks.clone().or_else(|| out.map(|o| sibling(o, "peaks")));
            match peaks_path {
                Some(pp) => emit(Some(&pp), &peaks_bytes(&p, cli.format)),
                None => Ok(()),
            }
        }
        Command::Classify { input, fundamental } => {
            let cfg = load_optional(config)?;
            let f = match (*fundamental, cfg.analysis.fundamental, &cfg.system) {
                (Some(f), _, _) | (None, Some(f), _) => f,
                (None, None, Some(sys)) => sys.system()?.rabi_frequency(),
                (None, None, None) => {
                    return Err(CliError::Usage("give --fundamental, analysis.fundamental or a system section".into()))
                }
            };
            let labels = classify_revival(&read_peaks(input)?, f)?;
            emit(out, &labels_bytes(&labels, cli.format))
        }
        Command::Compare { input, entry, scale } => {
            let cfg = load_optional(config)?;
            let cat = ReferenceCatalog::shipped();
            let entry = entry.clone().unwrap_or(cfg.catalog.entry);
            let scale = scale.unwrap_or(cfg.catalog.scale);
            let peaks = match input {
                Some(p) => read_peaks(p)?,
                None => cat.as_peaks(&entry)?,
            };
            let report = compare_catalog(&peaks, &cat, &entry, scale)?;
            emit(out, &match_bytes(&report, cli.format))
        }
        Command::Linearity => {
            let cfg = load(config)?;
            let e = cfg.experiment()?;
            let g_values = &cfg.linearity.as_ref().ok_or_else(|| missing("linearity"))?.g_values;
            let report = linearity_scan(&e, g_values, cli.seed.or(cfg.seed).unwrap_or(0), cli.jobs)?;
            emit(out, &linearity_bytes(&report, cli.format))?;
            if let Some(f) = &report.fit {
                eprintln!("slope {} intercept {} R^2 {}", num(f.slope), num(f.intercept), num(f.r_squared));
            }
            if report.is_complete() {
                Ok(())
            } else {
                Err(CliError::Partial("linearity scan incomplete: some runs produced no peak".into()))
            }
        }
    }
}

fn band(cfg: &RunConfig, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let p = cfg.ssh()?;
    let k_points = cfg.band.unwrap_or_default().k_points;
    if k_points < 2 {
        return Err(CliError::Config("band.k_points must be >= 2".into()));
    }
    let (lo, hi) = (-FRAC_PI_2 / p.a, FRAC_PI_2 / p.a);
    #[derive(Serialize)]
    struct Row {
        k: f64,
        epsilon: f64,
        delta: f64,
        #[serde(rename = "E")]
        energy: f64,
    }
    let rows: Vec<Row> = (0..k_points)
        .map(|i| {
            let k = lo + (hi - lo) * i as f64 / (k_points - 1) as f64;
            let d = dispersion(&p, k);
            Row { k, epsilon: d.epsilon, delta: d.delta, energy: d.energy }
        })
        .collect();
    let bytes = match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut t = Table::new(["k", "epsilon", "delta", "E"]);
            for r in &rows {
                t.push_f64(&[r.k, r.epsilon, r.delta, r.energy]);
            }
            t.to_csv()
        }
    };
    emit(out, &bytes)
}

#[derive(Serialize)]
struct GroundRow {
    u: f64,
    integral: f64,
    elliptic: Option<f64>,
    elliptic_literal: Option<f64>,
    smallz: f64,
}

#[derive(Serialize)]
struct MinimaReport {
    status: &'static str,
    u0: Option<f64>,
    energy: Option<f64>,
    energy_at_zero: Option<f64>,
}

fn groundstate(cfg: &RunConfig, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let p = cfg.ssh()?;
    let gs = cfg.groundstate.ok_or_else(|| missing("groundstate"))?;
    if !(gs.u_max > 0.0) || gs.u_points < 2 {
        return Err(CliError::Config("groundstate needs u_max > 0 and u_points >= 2".into()));
    }
    let mut rows = Vec::with_capacity(gs.u_points);
    for i in 0..gs.u_points {
        let u = -gs.u_max + 2.0 * gs.u_max * i as f64 / (gs.u_points - 1) as f64;
        let q = p.with_u(u);
        rows.push(GroundRow {
            u,
            integral: ground_state_energy_integral(&q)?,
            elliptic: ground_state_energy_elliptic(&q).ok(),
            elliptic_literal: ground_state_energy_elliptic_literal(&q).ok(),
            smallz: ground_state_energy_smallz(&q)?,
        });
    }
    let minima = match find_dimerization_minima(&p, gs.u_max)? {
        Dimerization::Dimerized { u0, energy, energy_at_zero } => MinimaReport {
            status: "dimerized",
            u0: Some(u0),
            energy: Some(energy),
            energy_at_zero: Some(energy_at_zero),
        },
        Dimerization::Undimerized { reason } => MinimaReport {
            status: match reason {
                NoMinimum::PeierlsAbsent => "peierls_absent",
                NoMinimum::MinimumBeyondRange => "minimum_beyond_range",
            },
            u0: None,
            energy: None,
            energy_at_zero: None,
        },
    };
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    match format {
        Format::Json => emit(out, &to_json(&serde_json::json!({ "scan": rows, "minima": minima }))),
        Format::Csv => {
            let mut t = Table::new(["u", "integral", "elliptic", "elliptic_literal", "smallz"]);
            for r in &rows {
                t.row([num(r.u), num(r.integral), opt(r.elliptic), opt(r.elliptic_literal), num(r.smallz)]);
            }
            emit(out, &t.to_csv())?;
            let mut m = Table::new(["status", "u0", "energy", "energy_at_zero"]);
            m.row([minima.status.to_string(), opt(minima.u0), opt(minima.energy), opt(minima.energy_at_zero)]);
            match out {
                Some(o) => emit(Some(&sibling(o, "minima")), &m.to_csv()),
                None => {
                    eprint!("{}", String::from_utf8_lossy(&m.to_csv()));
                    Ok(())
                }
            }
        }
    }
}

fn labels_bytes(l: &RevivalLabels, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(l),
        Format::Csv => {
            let mut t = Table::new(["label", "center", "height", "width", "prominence"]);
            let tagged = l
                .other
                .iter()
                .map(|p| ("other", p))
                .chain(std::iter::once(("principal", &l.principal)))
                .chain(l.revivals.iter().map(|p| ("revival", p)));
            for (tag, p) in tagged {
                t.row([tag.to_string(), num(p.center), num(p.height), num(p.width), num(p.prominence)]);
            }
            t.to_csv()
        }
    }
}

fn match_bytes(r: &MatchReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut t = Table::new(["kind", "label", "value", "reference", "tolerance", "ok"]);
            for l in &r.lines {
                t.row([
                    "line".into(),
                    num(l.reference),
                    l.observed.map(num).unwrap_or_default(),
                    num(l.reference),
                    num(l.uncertainty),
                    l.observed.is_some().to_string(),
                ]);
            }
            for p in &r.unmatched_peaks {
                t.row(["unmatched_peak".into(), String::new(), num(*p), String::new(), String::new(), "false".into()]);
            }
            let d = &r.diagnostics;
            let groups = [("ratio", &d.ratios), ("shift", &d.shifts), ("splitting", &d.splittings)];
            let checks = groups
                .iter()
                .flat_map(|(kind, cs)| cs.iter().map(move |c| (*kind, c)))
                .chain(std::iter::once(("splitting_average", &d.splitting_average)));
            for (kind, c) in checks {
                t.row([
                    kind.into(),
                    c.label.clone(),
                    num(c.computed),
                    num(c.printed),
                    num(c.tolerance),
                    c.agrees.to_string(),
                ]);
            }
            t.to_csv()
        }
    }
}

fn linearity_bytes(r: &LinearityReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut t = Table::new(["g", "coupling", "peak", "error"]);
            for p in &r.points {
                t.row([
                    num(p.g),
                    num(p.coupling),
                    p.peak.map(num).unwrap_or_default(),
                    p.error.clone().unwrap_or_default(),
                ]);
            }
            t.to_csv()
        }
    }
}
