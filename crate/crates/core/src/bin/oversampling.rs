use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oversampling::experiments::{run, Channels, Command, ExperimentConfig, MissingSpec};
use oversampling::recovery::{NoiseSpec, NoiseTarget};
use oversampling::report::Format;

/// Relative `--out` paths are resolved against this directory when set.
const OUT_DIR_ENV: &str = "OVERSAMPLING_OUT_DIR";

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 1;

#[derive(Parser)]
#[command(name = "oversampling", version, about = "Derivative oversampling experiments")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Eigenvalue extremes of S11 and S22 against their analytic bounds
    BoundsTable(Opts),
    /// Condition numbers of I - S across r
    CondTable(Opts),
    /// Eigenvalues of S versus the number of contiguous missing samples
    #[command(name = "eig-vs-N")]
    EigVsN(Opts),
    /// Eigenvalues of S versus r
    #[command(name = "eig-vs-r")]
    EigVsR(Opts),
    /// Eigenvalues of S versus the interleaving factor m
    #[command(name = "eig-vs-m")]
    EigVsM(Opts),
    /// Recover missing samples of the test signal
    Recover(Opts),
    /// Reconstruct the test signal on [-5, 5] after recovery
    Reconstruct(Opts),
    /// Spectrum diagnostics: largest imaginary part, eigenvalues outside (0, 1)
    Spectrum(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Oversampling ratio(s), comma separated
    #[arg(long = "r", allow_hyphen_values = true)]
    r: Option<String>,
    /// Band edge
    #[arg(long)]
    omega: Option<f64>,
    /// Explicit missing indices, e.g. -2,-1,0,1,2,3 (empty string for none)
    #[arg(long, allow_hyphen_values = true, conflicts_with = "base")]
    missing: Option<String>,
    /// Interleaving factor for a factored missing set
    #[arg(long = "m")]
    m: Option<u32>,
    /// Base set I of a factored missing set m*I
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
    /// Truncation half-width of the sample sums
    #[arg(long = "M")]
    truncation: Option<i64>,
    /// Noise magnitude (per-entry RMS)
    #[arg(long)]
    noise: Option<f64>,
    /// Noise seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where noise enters: rhs or samples
    #[arg(long, default_value = "rhs")]
    noise_target: String,
    /// Choose lambda by the discrepancy principle
    #[arg(long)]
    regularize: bool,
    /// Discrepancy target overriding the noise norm
    #[arg(long)]
    delta: Option<f64>,
    /// 1, 2, function-only or derivative-only
    #[arg(long)]
    channels: Option<Channels>,
    /// 1-based eigenvalue positions to report in sweeps
    #[arg(long)]
    indices: Option<String>,
    /// Sweep values (N, m or r depending on the subcommand)
    #[arg(long, allow_hyphen_values = true)]
    sweep: Option<String>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: Format,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| format!("invalid {what} value '{t}'")))
        .collect()
}

fn build_config(command: Command, o: &Opts) -> Result<ExperimentConfig, String> {
    let mut cfg = ExperimentConfig::defaults(command);
    if let Some(r) = &o.r {
        cfg.r = parse_list(r, "r")?;
    }
    if let Some(w) = o.omega {
        cfg.omega = w;
    }
    if let Some(list) = &o.missing {
        let v = parse_list(list, "missing index")?;
        cfg.missing = match o.m {
            Some(m) => MissingSpec::Factored { m, base: v },
            None => MissingSpec::Explicit(v),
        };
    } else if let Some(b) = &o.base {
        cfg.missing = MissingSpec::Factored { m: o.m.unwrap_or(1), base: parse_list(b, "base index")? };
    } else if let Some(m) = o.m {
        let base = cfg.missing.parts().1.to_vec();
        cfg.missing = MissingSpec::Factored { m, base };
    }
    if let Some(big_m) = o.truncation {
        cfg.truncation = big_m;
    }
    if let Some(mag) = o.noise {
        cfg.noise = Some(NoiseSpec { magnitude: mag, seed: o.seed });
    }
    cfg.noise_target = match o.noise_target.as_str() {
        "rhs" => NoiseTarget::RightHandSide,
        "samples" => NoiseTarget::Samples,
        other => return Err(format!("unknown noise target '{other}' (expected rhs or samples)")),
    };
    cfg.regularize = o.regularize;
    cfg.delta = o.delta;
    if let Some(c) = o.channels {
        cfg.channels = c;
    }
    if let Some(i) = &o.indices {
        cfg.indices = parse_list(i, "eigenvalue position")?;
    }
    if let Some(s) = &o.sweep {
        cfg.sweep = parse_list(s, "sweep")?;
    }
    cfg.format = o.format;
    Ok(cfg)
}

fn output_path(p: &PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match &cli.command {
        Sub::BoundsTable(o) => (Command::BoundsTable, o),
        Sub::CondTable(o) => (Command::CondTable, o),
        Sub::EigVsN(o) => (Command::EigVsN, o),
        Sub::EigVsR(o) => (Command::EigVsR, o),
        Sub::EigVsM(o) => (Command::EigVsM, o),
        Sub::Recover(o) => (Command::Recover, o),
        Sub::Reconstruct(o) => (Command::Reconstruct, o),
        Sub::Spectrum(o) => (Command::Spectrum, o),
    };
    let cfg = match build_config(command, opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let table = match run(&cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_VALIDATION };
            return ExitCode::from(code);
        }
    };
    let text = table.render(cfg.format, &cfg.to_json());
    match &opts.out {
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                // a closed pipe downstream is not an error of ours
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write to stdout: {e}");
                    ExitCode::from(EXIT_IO)
                }
            }
        }
        Some(p) => {
            let path = output_path(p);
            if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(parent) {
                    eprintln!("error: cannot create {}: {e}", parent.display());
                    return ExitCode::from(EXIT_IO);
                }
            }
            match std::fs::write(&path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(EXIT_IO)
                }
            }
        }
    }
}
