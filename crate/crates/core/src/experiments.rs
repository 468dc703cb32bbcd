//! Experiment drivers behind the command-line subcommands. Each returns a
//! [`Table`]; rendering and file handling live in the binary.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{OneChannelParams, TwoChannelParams};
use crate::linalg::{eig_general, eig_symmetric, spectral_condition, SpectrumReport, CONDITION_TRUST_LIMIT};
use crate::recovery::{
    recover_derivative_channel, recover_function_channel, recover_one_channel, recover_two_channel,
    sample_signal, NoiseSpec, NoiseTarget, RecoveryOptions, RecoveryResult, Warning,
};
use crate::report::{format_float, Cell, Format, Table};
use crate::signals::{
    reconstruct_one_channel, reconstruct_two_channel, test_signal_g, BandLimitedSignal, IndexedSamples,
};
use crate::system::{build_r, build_s, eig_bounds, separation_threshold, structural_case, MissingSet};

/// Imaginary parts below this are treated as zero when counting eigenvalues
/// outside `(0, 1)`.
pub const IMAG_TOLERANCE: f64 = 1e-10;
/// Points on the reconstruction grid.
pub const GRID_POINTS: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    BoundsTable,
    CondTable,
    #[serde(rename = "eig-vs-N")]
    EigVsN,
    EigVsR,
    EigVsM,
    Recover,
    Reconstruct,
    Spectrum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingSpec {
    Explicit(Vec<i64>),
    Factored { m: u32, base: Vec<i64> },
}

impl MissingSpec {
    pub fn resolve(&self) -> Result<MissingSet> {
        match self {
            MissingSpec::Explicit(v) => MissingSet::new(v),
            MissingSpec::Factored { m, base } => MissingSet::factored(*m, base),
        }
    }

    /// `(m, base)`; an explicit list counts as `m = 1`.
    pub fn parts(&self) -> (u32, &[i64]) {
        match self {
            MissingSpec::Explicit(v) => (1, v),
            MissingSpec::Factored { m, base } => (*m, base),
        }
    }

    fn is_empty(&self) -> bool {
        self.parts().1.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Channels {
    One,
    #[default]
    Two,
    FunctionOnly,
    DerivativeOnly,
}

impl std::str::FromStr for Channels {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "1" | "one" => Ok(Channels::One),
            "2" | "two" => Ok(Channels::Two),
            "function-only" => Ok(Channels::FunctionOnly),
            "derivative-only" => Ok(Channels::DerivativeOnly),
            other => Err(format!(
                "unknown channel mode '{other}' (expected 1, 2, function-only or derivative-only)"
            )),
        }
    }
}

/// Fully resolved parameters of one run; serialized into the output header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    /// Oversampling ratios; a single value for recover/reconstruct.
    pub r: Vec<f64>,
    pub omega: f64,
    pub missing: MissingSpec,
    pub truncation: i64,
    pub noise: Option<NoiseSpec>,
    pub noise_target: NoiseTarget,
    pub regularize: bool,
    pub delta: Option<f64>,
    pub channels: Channels,
    /// 1-based positions (ascending real part) of the eigenvalues to report.
    pub indices: Vec<usize>,
    /// Sweep axis values: N for eig-vs-N, m for eig-vs-m, r for eig-vs-r.
    pub sweep: Vec<f64>,
    pub format: Format,
}

fn range_f(lo: f64, step: f64, n: usize) -> Vec<f64> {
    // rounded so the values serialize cleanly
    (0..n).map(|k| ((lo + step * k as f64) * 1e12).round() / 1e12).collect()
}

impl ExperimentConfig {
    /// Reference configuration of each command.
    pub fn defaults(command: Command) -> Self {
        let contiguous = |lo: i64, hi: i64| MissingSpec::Explicit((lo..=hi).collect());
        let base = ExperimentConfig {
            command,
            r: vec![0.6],
            omega: PI,
            missing: contiguous(0, 5),
            truncation: 500,
            noise: None,
            noise_target: NoiseTarget::RightHandSide,
            regularize: false,
            delta: None,
            channels: Channels::Two,
            indices: Vec::new(),
            sweep: Vec::new(),
            format: Format::Csv,
        };
        let fig_indices = vec![1, 5, 10, 11, 15, 20];
        match command {
            Command::BoundsTable => ExperimentConfig {
                r: vec![0.55, 0.6, 0.7, 0.8, 0.9, 0.95],
                missing: MissingSpec::Factored { m: 8, base: vec![0, 1, 2, 3] },
                ..base
            },
            Command::CondTable => {
                ExperimentConfig { r: range_f(0.1, 0.1, 9), missing: contiguous(0, 9), ..base }
            }
            Command::EigVsN => ExperimentConfig {
                r: vec![0.5, 0.7, 0.9, 0.95, 0.99],
                missing: MissingSpec::Factored { m: 1, base: vec![0] },
                sweep: range_f(1.0, 1.0, 20),
                ..base
            },
            Command::EigVsR => ExperimentConfig {
                r: Vec::new(),
                missing: MissingSpec::Factored { m: 4, base: (0..=9).collect() },
                indices: fig_indices,
                sweep: range_f(0.02, 0.02, 49),
                ..base
            },
            Command::EigVsM => ExperimentConfig {
                r: vec![0.7],
                missing: MissingSpec::Factored { m: 1, base: (0..=9).collect() },
                indices: fig_indices,
                sweep: range_f(1.0, 1.0, 64),
                ..base
            },
            Command::Recover | Command::Reconstruct => ExperimentConfig { channels: Channels::One, ..base },
            Command::Spectrum => ExperimentConfig {
                r: vec![0.55, 0.6, 0.7, 0.8, 0.9, 0.95],
                missing: MissingSpec::Factored { m: 8, base: vec![0, 1, 2, 3] },
                ..base
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config always serializes")
    }

    /// Checks everything that can be checked before computing.
    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidParams(format!("omega must be positive, got {}", self.omega)));
        }
        for &r in &self.r {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::InvalidParams(format!("r must lie in (0, 1), got {r}")));
            }
        }
        if let Some(d) = self.delta {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::InvalidParams(format!("delta must be positive, got {d}")));
            }
        }
        if let Some(n) = self.noise {
            NoiseSpec::new(n.magnitude, n.seed)?;
        }
        let needs_single_r = matches!(self.command, Command::Recover | Command::Reconstruct);
        if needs_single_r && self.r.len() != 1 {
            return Err(Error::InvalidParams(format!("{:?} takes exactly one r", self.command)));
        }
        if self.command != Command::EigVsR && self.r.is_empty() {
            return Err(Error::InvalidParams("at least one r is required".into()));
        }
        if matches!(self.command, Command::EigVsN | Command::EigVsM | Command::EigVsR) && self.sweep.is_empty() {
            return Err(Error::InvalidParams("sweep values are required".into()));
        }
        match self.command {
            Command::EigVsN | Command::EigVsM => {
                if let Some(v) = self.sweep.iter().find(|v| !(v.fract() == 0.0 && **v >= 1.0 && **v <= 4096.0)) {
                    return Err(Error::InvalidParams(format!("sweep values must be positive integers, got {v}")));
                }
            }
            Command::EigVsR => {
                if let Some(v) = self.sweep.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
                    return Err(Error::InvalidParams(format!("r sweep values must lie in (0, 1), got {v}")));
                }
            }
            _ => {}
        }
        if self.indices.contains(&0) {
            return Err(Error::InvalidParams("eigenvalue positions are 1-based".into()));
        }
        let empty_ok = matches!(self.command, Command::Recover | Command::Reconstruct);
        if !(empty_ok && self.missing.is_empty()) && self.command != Command::EigVsN {
            let u = self.missing.resolve()?;
            let reaches = matches!(self.command, Command::Recover | Command::Reconstruct | Command::Spectrum);
            if reaches && self.truncation <= u.max_abs() {
                return Err(Error::InvalidParams(format!(
                    "truncation M = {} must exceed the largest missing index magnitude {}",
                    self.truncation,
                    u.max_abs()
                )));
            }
        }
        if self.regularize && self.noise.is_none() && self.delta.is_none() {
            return Err(Error::InvalidParams("--regularize needs --noise or --delta".into()));
        }
        Ok(())
    }

    pub fn single_r(&self) -> f64 {
        self.r[0]
    }

    fn options(&self) -> RecoveryOptions {
        RecoveryOptions {
            noise: self.noise,
            noise_target: self.noise_target,
            regularize: self.regularize,
            delta_override: self.delta,
        }
    }
}

/// Dispatches on `cfg.command`.
pub fn run(cfg: &ExperimentConfig) -> Result<Table> {
    cfg.validate()?;
    match cfg.command {
        Command::BoundsTable => cmd_bounds_table(cfg),
        Command::CondTable => cmd_cond_table(cfg),
        Command::EigVsN | Command::EigVsR | Command::EigVsM => cmd_eig_sweeps(cfg),
        Command::Recover => cmd_recover(cfg),
        Command::Reconstruct => cmd_reconstruct(cfg),
        Command::Spectrum => cmd_spectrum(cfg),
    }
}

/// Eigenvalue extremes of `S11` and `S22` against their analytic bounds.
pub fn cmd_bounds_table(cfg: &ExperimentConfig) -> Result<Table> {
    let u = cfg.missing.resolve()?;
    let (m, _) = u.factorization().ok_or_else(|| {
        Error::InvalidMissingSet("the bounds table needs a factored missing set (--m with --base)".into())
    })?;
    let mut t = Table::new([
        "r", "case", "s11_low_bound", "s11_lambda_min", "s11_lambda_max", "s11_high_bound",
        "s22_low_bound", "s22_lambda_min", "s22_lambda_max", "s22_high_bound", "separated",
        "separation_threshold",
    ]);
    for &r in &cfg.r {
        let p = TwoChannelParams::from_ratio(cfg.omega, r)?;
        let s = build_s(&p, &u);
        let n = u.len();
        let e11 = eig_symmetric(&s.block(0, 0, n, n))?;
        let e22 = eig_symmetric(&s.block(n, n, n, n))?;
        let separated = if e22.max_real() < e11.min_real() { "yes" } else { "no" };
        let (case, b11, b22) = match eig_bounds(m, r) {
            Ok(b) => ("bounds", (b.alpha11_low, b.alpha11_high), (b.beta22_low, b.beta22_high)),
            Err(Error::IntegerCase { .. }) => {
                let c = structural_case(m, r).expect("integer product");
                ("triangular case", (c.s11_diagonal, c.s11_diagonal), (c.s22_diagonal, c.s22_diagonal))
            }
            Err(e) => return Err(e),
        };
        t.push(vec![
            r.into(),
            case.into(),
            b11.0.into(),
            e11.min_real().into(),
            e11.max_real().into(),
            b11.1.into(),
            b22.0.into(),
            e22.min_real().into(),
            e22.max_real().into(),
            b22.1.into(),
            separated.into(),
            separation_threshold(r).into(),
        ]);
    }
    t.note("m", m);
    t.note("missing", format!("{:?}", u.indices()));
    Ok(t)
}

/// Spectral condition number of `I - S` across `r`.
pub fn cmd_cond_table(cfg: &ExperimentConfig) -> Result<Table> {
    let u = cfg.missing.resolve()?;
    let mut t = Table::new(["r", "condition", "trusted"]);
    let mut flagged = 0;
    for &r in &cfg.r {
        let p = TwoChannelParams::from_ratio(cfg.omega, r)?;
        let cond = spectral_condition(&build_s(&p, &u).identity_minus());
        let trusted = cond <= CONDITION_TRUST_LIMIT;
        if !trusted {
            flagged += 1;
        }
        t.push(vec![r.into(), cond.into(), if trusted { "yes" } else { "no: beyond binary64 trust" }.into()]);
    }
    t.note("missing", format!("{:?}", u.indices()));
    t.note_num("trust_limit", CONDITION_TRUST_LIMIT);
    t.note("entries_beyond_trust", flagged);
    Ok(t)
}

fn selected(spec: &SpectrumReport, positions: &[usize]) -> Vec<Cell> {
    positions
        .iter()
        .flat_map(|&i| match spec.eigenvalues.get(i - 1) {
            Some(z) => [Cell::Num(z.re), Cell::Num(z.im)],
            None => [Cell::Empty, Cell::Empty],
        })
        .collect()
}

/// Largest distance from any eigenvalue to the nearer of `2r - r^2` and `r^2`.
pub fn distance_to_limits(spec: &SpectrumReport, r: f64) -> f64 {
    let (a, b) = (2.0 * r - r * r, r * r);
    spec.eigenvalues
        .iter()
        .map(|z| {
            let da = ((z.re - a).powi(2) + z.im.powi(2)).sqrt();
            let db = ((z.re - b).powi(2) + z.im.powi(2)).sqrt();
            da.min(db)
        })
        .fold(0.0, f64::max)
}

/// Eigenvalues of `S` as functions of `N`, `r` or `m`.
pub fn cmd_eig_sweeps(cfg: &ExperimentConfig) -> Result<Table> {
    let axis = match cfg.command {
        Command::EigVsN => "N",
        Command::EigVsR => "r",
        Command::EigVsM => "m",
        other => return Err(Error::InvalidParams(format!("{other:?} is not a sweep"))),
    };
    let mut columns: Vec<String> = vec![axis.into()];
    if cfg.command != Command::EigVsR {
        columns.push("r".into());
    }
    if cfg.command == Command::EigVsN || cfg.command == Command::EigVsR {
        columns.push("m".into());
    }
    for i in &cfg.indices {
        columns.push(format!("lambda{i}_re"));
        columns.push(format!("lambda{i}_im"));
    }
    for c in ["lambda_min_re", "lambda_max_re", "max_imag_abs", "max_dist_to_limits"] {
        columns.push(c.into());
    }
    let mut t = Table::new(columns);
    let (m0, base) = cfg.missing.parts();

    let push = |t: &mut Table, lead: Vec<Cell>, r: f64, spec: &SpectrumReport| {
        let mut row = lead;
        row.extend(selected(spec, &cfg.indices));
        row.push(spec.min_real().into());
        row.push(spec.max_real().into());
        row.push(spec.max_imag_abs.into());
        row.push(distance_to_limits(spec, r).into());
        t.push(row);
    };

    match cfg.command {
        Command::EigVsN => {
            for &r in &cfg.r {
                let p = TwoChannelParams::from_ratio(cfg.omega, r)?;
                for &nv in &cfg.sweep {
                    let n = nv as i64;
                    let u = MissingSet::factored(m0, &(0..n).collect::<Vec<_>>())?;
                    let spec = eig_general(&build_s(&p, &u))?;
                    push(&mut t, vec![Cell::Int(n), r.into(), Cell::Int(m0 as i64)], r, &spec);
                }
            }
        }
        Command::EigVsR => {
            let u = MissingSet::factored(m0, base)?;
            for &r in &cfg.sweep {
                let p = TwoChannelParams::from_ratio(cfg.omega, r)?;
                let spec = eig_general(&build_s(&p, &u))?;
                push(&mut t, vec![r.into(), Cell::Int(m0 as i64)], r, &spec);
            }
        }
        Command::EigVsM => {
            for &r in &cfg.r {
                let p = TwoChannelParams::from_ratio(cfg.omega, r)?;
                for &mv in &cfg.sweep {
                    let u = MissingSet::factored(mv as u32, base)?;
                    let spec = eig_general(&build_s(&p, &u))?;
                    push(&mut t, vec![Cell::Int(mv as i64), r.into()], r, &spec);
                }
            }
        }
        _ => unreachable!(),
    }
    t.note("base", format!("{base:?}"));
    Ok(t)
}

/// Recovery run plus the ground truth it is compared with.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryRun {
    pub result: RecoveryResult,
    pub truth_function: Vec<f64>,
    pub truth_derivative: Vec<f64>,
    pub step: f64,
}

/// Recovers the missing samples of `signal` in the configured channel mode.
pub fn run_recovery(
    cfg: &ExperimentConfig,
    signal: &BandLimitedSignal,
    u: &MissingSet,
) -> Result<RecoveryRun> {
    let r = cfg.single_r();
    let m = cfg.truncation;
    let opts = cfg.options();
    let (result, step) = match cfg.channels {
        Channels::One => {
            let p = OneChannelParams::from_ratio(cfg.omega, r)?;
            let s = signal.samples(p.t_o(), -m, m);
            (recover_one_channel(&p, u, &s, m, &opts)?, p.t_o())
        }
        mode => {
            let p = TwoChannelParams::from_ratio(cfg.omega, r)?;
            let (s, d) = sample_signal(signal, p.t_o(), m);
            let res = match mode {
                Channels::Two => recover_two_channel(&p, u, &s, &d, m, &opts)?,
                Channels::FunctionOnly => recover_function_channel(&p, u, &s, &d, m, &opts)?,
                _ => recover_derivative_channel(&p, u, &s, &d, m, &opts)?,
            };
            (res, p.t_o())
        }
    };
    let xs: Vec<f64> = u.indices().iter().map(|&l| l as f64 * step).collect();
    Ok(RecoveryRun {
        truth_function: xs.iter().map(|&x| signal.eval(x)).collect(),
        truth_derivative: xs.iter().map(|&x| signal.eval_deriv(x)).collect(),
        result,
        step,
    })
}

fn warning_text(w: &[Warning]) -> String {
    if w.is_empty() {
        return "none".into();
    }
    w.iter()
        .map(|w| match w {
            Warning::IllConditioned { condition } => format!("ill-conditioned (cond {condition:.3e})"),
            Warning::BeyondBinary64Trust { condition } => {
                format!("condition {condition:.3e} beyond binary64 trust")
            }
            Warning::BracketFailure { lambda } => format!("bracket failure at lambda {lambda:e}"),
            Warning::Saturated { lambda } => format!("discrepancy saturated at lambda {lambda:e}"),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn relative(truth: f64, value: f64) -> f64 {
    if truth == 0.0 {
        f64::INFINITY
    } else {
        (value - truth).abs() / truth.abs()
    }
}

/// Recovered samples of the test signal with errors.
pub fn cmd_recover(cfg: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(["channel", "index", "x", "truth", "recovered", "abs_error", "rel_error"]);
    if cfg.missing.is_empty() {
        t.note("missing", "[]");
        return Ok(t);
    }
    let u = cfg.missing.resolve()?;
    let g = test_signal_g();
    let run = run_recovery(cfg, &g, &u)?;
    let res = &run.result;
    let mut max_f = 0.0f64;
    let mut max_d = 0.0f64;
    for (k, s) in res.recovered_function.iter().enumerate() {
        let truth = run.truth_function[k];
        let err = (s.value - truth).abs();
        max_f = max_f.max(err);
        t.push(vec!["f".into(), Cell::Int(s.index), s.x.into(), truth.into(), s.value.into(), err.into(), relative(truth, s.value).into()]);
    }
    for (k, s) in res.recovered_derivative.iter().flatten().enumerate() {
        let truth = run.truth_derivative[k];
        let err = (s.value - truth).abs();
        max_d = max_d.max(err);
        t.push(vec!["df".into(), Cell::Int(s.index), s.x.into(), truth.into(), s.value.into(), err.into(), relative(truth, s.value).into()]);
    }
    t.note_num("lambda", res.lambda_used);
    t.note_num("residual_norm", res.residual_norm);
    t.note_num("condition", res.condition_estimate);
    t.note("delta", res.delta.map_or("none".into(), format_float));
    t.note_num("max_abs_error_function", max_f);
    if res.recovered_derivative.is_some() {
        t.note_num("max_abs_error_derivative", max_d);
    }
    t.note("warnings", warning_text(&res.warnings));
    Ok(t)
}

/// Original and reconstructed test signal after splicing recovered samples
/// into the sample stream, on a uniform grid over `[-5, 5]`.
pub fn cmd_reconstruct(cfg: &ExperimentConfig) -> Result<Table> {
    let g = test_signal_g();
    let m = cfg.truncation;
    let r = cfg.single_r();
    let run = if cfg.missing.is_empty() {
        None
    } else {
        let u = cfg.missing.resolve()?;
        Some((run_recovery(cfg, &g, &u)?, u))
    };
    let splice = |s: &mut IndexedSamples, d: &mut IndexedSamples| {
        if let Some((run, _)) = &run {
            for x in &run.result.recovered_function {
                s.set(x.index, x.value);
            }
            for x in run.result.recovered_derivative.iter().flatten() {
                d.set(x.index, x.value);
            }
        }
    };
    let curve: Box<dyn Fn(f64) -> f64> = match cfg.channels {
        Channels::One => {
            let p = OneChannelParams::from_ratio(cfg.omega, r)?;
            let mut s = g.samples(p.t_o(), -m, m);
            let mut unused = IndexedSamples::zeros(0, -1);
            splice(&mut s, &mut unused);
            Box::new(move |x| reconstruct_one_channel(&p, &s, m, x))
        }
        _ => {
            let p = TwoChannelParams::from_ratio(cfg.omega, r)?;
            let (mut s, mut d) = sample_signal(&g, p.t_o(), m);
            splice(&mut s, &mut d);
            Box::new(move |x| reconstruct_two_channel(&p, &s, &d, m, x))
        }
    };
    let mut t = Table::new(["x", "truth", "reconstructed", "abs_diff"]);
    let mut max_diff = 0.0f64;
    for k in 0..GRID_POINTS {
        let x = -5.0 + 10.0 * k as f64 / (GRID_POINTS - 1) as f64;
        let truth = g.eval(x);
        let v = curve(x);
        max_diff = max_diff.max((v - truth).abs());
        t.push(vec![x.into(), truth.into(), v.into(), (v - truth).abs().into()]);
    }
    t.note_num("max_abs_diff", max_diff);
    if let Some((run, _)) = &run {
        t.note_num("lambda", run.result.lambda_used);
        t.note_num("condition", run.result.condition_estimate);
        t.note("warnings", warning_text(&run.result.warnings));
    }
    Ok(t)
}

/// One labelled system whose spectrum is monitored.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCase {
    pub label: String,
    pub channels: Channels,
    pub omega: f64,
    pub r: f64,
    pub missing: MissingSet,
}

/// Spectrum diagnostics of `S` (or `R` in one-channel mode).
pub fn spectrum_table(cases: &[SpectrumCase]) -> Result<Table> {
    let mut t = Table::new([
        "label", "channels", "r", "N", "min_re", "max_re", "max_imag_abs", "outside_unit_interval",
    ]);
    for c in cases {
        let spec = match c.channels {
            Channels::One => {
                let p = OneChannelParams::from_ratio(c.omega, c.r)?;
                eig_symmetric(&build_r(&p, &c.missing))?
            }
            _ => {
                let p = TwoChannelParams::from_ratio(c.omega, c.r)?;
                eig_general(&build_s(&p, &c.missing))?
            }
        };
        t.push(vec![
            c.label.as_str().into(),
            if c.channels == Channels::One { "1" } else { "2" }.into(),
            c.r.into(),
            Cell::Int(c.missing.len() as i64),
            spec.min_real().into(),
            spec.max_real().into(),
            spec.max_imag_abs.into(),
            Cell::Int(spec.count_outside_unit_interval(IMAG_TOLERANCE) as i64),
        ]);
    }
    let worst_imag = t.rows.iter().filter_map(|r| r[6].as_f64()).fold(0.0, f64::max);
    let outside: f64 = t.rows.iter().filter_map(|r| r[7].as_f64()).sum();
    t.note("configurations", cases.len());
    t.note_num("max_imag_abs", worst_imag);
    t.note("eigenvalues_outside_unit_interval", outside as u64);
    Ok(t)
}

pub fn cmd_spectrum(cfg: &ExperimentConfig) -> Result<Table> {
    let u = cfg.missing.resolve()?;
    let cases: Vec<SpectrumCase> = cfg
        .r
        .iter()
        .map(|&r| SpectrumCase {
            label: format!("r={r}"),
            channels: if cfg.channels == Channels::One { Channels::One } else { Channels::Two },
            omega: cfg.omega,
            r,
            missing: u.clone(),
        })
        .collect();
    spectrum_table(&cases)
}
