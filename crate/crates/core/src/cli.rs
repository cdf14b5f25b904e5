//! Command-line front end. Exit codes: 0 pass, 1 fail verdict, 2 usage or domain error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::certifier::{certify_bounded, certify_rect, certify_setcover, certify_unbounded, Certificate, CertifyOptions};
use crate::error::{Error, Result};
use crate::model::{exact_z_2spin, exact_z_setcover, z_polynomial_2spin, z_polynomial_setcover, Graph, Hypergraph, Pins, SpinParams};
use crate::potential::g_map;
use crate::regions::{triangle_boundary, triangle_params_for_case, Region};
use crate::spectra::{barvinok_eval, barvinok_eval_mapped, zero_scan, FamilySpec, ScanVerdict};
use crate::thresholds::{setcover_report, threshold_report, Sign};

#[derive(Debug, Parser)]
#[command(name = "zerocert", version, about = "Zero-free regions: thresholds, contraction certificates, root scans")]
pub struct Cli {
    /// Worker threads for grids and scans (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form thresholds (2-spin with --beta/--gamma, set covers with --mu).
    Thresholds(ThresholdArgs),
    /// Numerical contraction certificate for one regime.
    Certify(CertifyArgs),
    /// Root scan over a seeded random graph family.
    Zeros(ZerosArgs),
    /// Truncated-log approximation of Z for a graph file.
    Approx(ApproxArgs),
    /// Exact partition function of a graph or hypergraph file.
    Partition(PartitionArgs),
    /// Triangle boundary and its image under g as CSV (kind,re,im).
    RegionCsv(RegionCsvArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Pos,
    Neg,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, value_enum, default_value = "pos")]
    pub sign: SignArg,
    /// Set-cover edge weight; switches to the set-cover report.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Bounded,
    Rect,
    Unbounded,
    Setcover,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(value_enum)]
    pub regime: RegimeArg,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub eta0: Option<f64>,
    #[arg(long, default_value_t = 512)]
    pub grid_x: usize,
    #[arg(long, default_value_t = 64)]
    pub grid_lambda: usize,
    #[arg(long, default_value_t = 1024)]
    pub grid_theta: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub margin: f64,
    /// First k tried; 0 disables the seed.
    #[arg(long, default_value_t = 0.01)]
    pub k_seed: f64,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, default_value = "2spin")]
    pub model: String,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda0: f64,
    /// Roots closer than this to [0, λ₀] count as violations.
    #[arg(long, default_value_t = 1e-6)]
    pub delta_margin: f64,
    #[arg(long, default_value = "random:n=12,deg=3,count=200")]
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda_im: f64,
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    /// Compose with the slit map whose cut starts at −A before expanding.
    #[arg(long)]
    pub slit: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long, conflicts_with = "hypergraph")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub hypergraph: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda_im: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RegionCsvArgs {
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda0: f64,
    #[arg(long, default_value_t = 0.01)]
    pub k: f64,
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `{"n": 3, "edges": [[0, 1], ...], "pins": {"0": 1}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub pins: BTreeMap<String, u8>,
}

/// `{"n": 3, "edges": [[0, 1, 2], ...], "pins": {...}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default)]
    pub pins: BTreeMap<String, u8>,
}

fn parse_pins(p: &BTreeMap<String, u8>) -> Result<Pins> {
    let mut pins = Pins::new();
    for (k, &v) in p {
        let idx = k.parse().map_err(|_| Error::InvalidInstance(format!("pin key {k:?} is not a vertex index")))?;
        pins.pin(idx, v)?;
    }
    Ok(pins)
}

impl GraphFile {
    pub fn to_instance(&self) -> Result<(Graph, Pins)> {
        let g = Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))?;
        let pins = parse_pins(&self.pins)?;
        pins.check_range(self.n)?;
        Ok((g, pins))
    }
}

impl HypergraphFile {
    pub fn to_instance(&self) -> Result<(Hypergraph, Pins)> {
        let h = Hypergraph::new(self.n, self.edges.clone())?;
        let pins = parse_pins(&self.pins)?;
        pins.check_range(self.n)?;
        Ok((h, pins))
    }
}

/// A command failure: message plus exit code.
#[derive(Debug)]
struct Failure(String, i32);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string(), 2)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display()), 2))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display()), 2))
}

fn emit(out: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()), 2)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure(format!("missing required flag --{flag}"), 2))
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // a pool built earlier in the process wins; that is fine for repeated calls
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: &Command) -> std::result::Result<i32, Failure> {
    match cmd {
        Command::Thresholds(a) => thresholds(a),
        Command::Certify(a) => certify(a),
        Command::Zeros(a) => zeros(a),
        Command::Approx(a) => approx(a),
        Command::Partition(a) => partition(a),
        Command::RegionCsv(a) => region_csv(a),
    }
}

fn thresholds(a: &ThresholdArgs) -> std::result::Result<i32, Failure> {
    let text = if let Some(mu) = a.mu {
        to_json(&setcover_report(a.delta, mu)?)
    } else {
        let p = SpinParams::new(need(a.beta, "beta")?, need(a.gamma, "gamma")?, a.delta)?;
        let sign = match a.sign {
            SignArg::Pos => Sign::Positive,
            SignArg::Neg => Sign::Negative,
        };
        to_json(&threshold_report(&p, sign)?)
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

fn certify(a: &CertifyArgs) -> std::result::Result<i32, Failure> {
    let opts = CertifyOptions {
        grid_x: a.grid_x,
        grid_lambda: a.grid_lambda,
        grid_theta: a.grid_theta,
        margin: a.margin,
        k_seed: (a.k_seed > 0.0).then_some(a.k_seed),
        ..CertifyOptions::default()
    };
    if a.grid_x < 2 || a.grid_lambda < 2 || a.grid_theta < 2 || !(a.margin >= 0.0) {
        return Err(Failure("grids need at least 2 points and the margin must be non-negative".into(), 2));
    }
    let cert: Certificate = match a.regime {
        RegimeArg::Setcover => certify_setcover(need(a.delta, "delta")?, need(a.mu, "mu")?, need(a.eta0, "eta0")?, &opts)?,
        RegimeArg::Unbounded => certify_unbounded(need(a.beta, "beta")?, need(a.gamma, "gamma")?, need(a.lambda0, "lambda0")?, &opts)?,
        r => {
            let p = SpinParams::new(need(a.beta, "beta")?, need(a.gamma, "gamma")?, need(a.delta, "delta")?)?;
            let l = need(a.lambda0, "lambda0")?;
            if r == RegimeArg::Rect {
                certify_rect(&p, l, &opts)?
            } else {
                certify_bounded(&p, l, &opts)?
            }
        }
    };
    let text = to_json(&cert);
    emit(a.json.as_deref(), &text)?;
    if a.json.is_some() {
        eprintln!("verdict: {:?}", cert.verdict);
    }
    Ok(if cert.is_pass() { 0 } else { 1 })
}

fn zeros(a: &ZerosArgs) -> std::result::Result<i32, Failure> {
    if a.model != "2spin" {
        return Err(Failure(format!("unknown model {:?}; only 2spin is scanned", a.model), 2));
    }
    let family: FamilySpec = a.family.parse()?;
    let p = SpinParams::new(a.beta, a.gamma, a.delta)?;
    let report = zero_scan(&p, &family, a.lambda0, a.delta_margin, a.seed)?;
    emit(a.out.as_deref(), &to_json(&report))?;
    Ok(if report.verdict == ScanVerdict::Fail { 1 } else { 0 })
}

fn approx(a: &ApproxArgs) -> std::result::Result<i32, Failure> {
    let file: GraphFile = read_json(&a.graph)?;
    let (g, pins) = file.to_instance()?;
    let p = SpinParams::new(a.beta, a.gamma, g.max_degree().max(2))?;
    let poly = z_polynomial_2spin(&p, &g, &pins)?;
    let lam = Complex64::new(a.lambda, a.lambda_im);
    let t = match a.slit {
        Some(s) => barvinok_eval_mapped(&poly, lam, a.terms, s)?,
        None => barvinok_eval(&poly, lam, a.terms)?,
    };
    emit(a.out.as_deref(), &to_json(&t))?;
    Ok(0)
}

#[derive(Serialize)]
struct PartitionOut {
    value: Complex64,
    coefficients: Vec<f64>,
}

fn partition(a: &PartitionArgs) -> std::result::Result<i32, Failure> {
    let out = if let Some(path) = &a.hypergraph {
        let file: HypergraphFile = read_json(path)?;
        let (h, pins) = file.to_instance()?;
        let value = exact_z_setcover(&h, a.mu, Complex64::new(a.eta, 0.0), &pins)?;
        PartitionOut { value, coefficients: z_polynomial_setcover(&h, a.mu, &pins)?.coeffs }
    } else {
        let file: GraphFile = read_json(&need(a.graph.clone(), "graph")?)?;
        let (g, pins) = file.to_instance()?;
        let p = SpinParams::new(a.beta, a.gamma, g.max_degree().max(2))?;
        let value = exact_z_2spin(&p, &g, &pins, Complex64::new(a.lambda, a.lambda_im))?;
        PartitionOut { value, coefficients: z_polynomial_2spin(&p, &g, &pins)?.coeffs }
    };
    emit(a.out.as_deref(), &to_json(&out))?;
    Ok(0)
}

/// CSV rows for the triangle boundary (`u`), its trimmed target when trimmed (`target`) and the image (`image`).
pub fn region_csv_text(p: &SpinParams, lambda0: f64, k: f64, samples: usize) -> Result<(String, f64)> {
    let corners = triangle_params_for_case(p, lambda0)?;
    let target = corners.with_k(k)?;
    let full = target.untrimmed();
    let mut s = String::from("kind,re,im\n");
    let boundary = triangle_boundary(&full, samples);
    for (_, w) in &boundary.points {
        writeln!(s, "u,{},{}", w.re, w.im).expect("string write");
    }
    if target.trim.is_some() {
        for (_, w) in &triangle_boundary(&target, samples).points {
            writeln!(s, "target,{},{}", w.re, w.im).expect("string write");
        }
    }
    let mut min_slack = f64::INFINITY;
    for (_, w) in &boundary.points {
        let z = g_map(p, Complex64::new(lambda0, 0.0), p.d(), *w)?;
        min_slack = min_slack.min(target.slack(z));
        writeln!(s, "image,{},{}", z.re, z.im).expect("string write");
    }
    Ok((s, min_slack))
}

fn region_csv(a: &RegionCsvArgs) -> std::result::Result<i32, Failure> {
    let p = SpinParams::new(a.beta, a.gamma, a.delta)?;
    let (text, slack) = region_csv_text(&p, a.lambda0, a.k, a.samples.max(2))?;
    emit(a.out.as_deref(), text.trim_end())?;
    eprintln!("min slack of the image: {slack}");
    Ok(if slack > 0.0 { 0 } else { 1 })
}
