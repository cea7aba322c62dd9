//! Command-line surface: instance files, run reports, the benchmark harness
//! and the oblivious-rounding demo.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical or solver failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::instances::{self, Instance, Metadata, PerturbationParams};
use crate::matroid::Matroid;
use crate::numerics::VectorSet;
use crate::oracle::{self, ChainBound, ChainReport};
use crate::relaxation::{self, CpConfig};
use crate::rounding::{self, DeterministicConfig, RoundingInput};
use crate::sparsify::{self, SparsifyConfig};
use crate::{seed, Error, Result};

pub const SCHEMA_VERSION: &str = "1";

/// On-disk instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: String,
    pub d: usize,
    pub n: usize,
    pub vectors: Vec<Vec<f64>>,
    pub matroid: Matroid,
    #[serde(default)]
    pub metadata: Metadata,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            schema_version: SCHEMA_VERSION.into(),
            d: inst.d(),
            n: inst.n(),
            vectors: inst.vectors.to_vecs(),
            matroid: inst.matroid.clone(),
            metadata: inst.metadata.clone(),
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::input(format!("unsupported schema_version {:?}", self.schema_version)));
        }
        if self.vectors.len() != self.n {
            return Err(Error::input(format!("n = {} but {} vectors given", self.n, self.vectors.len())));
        }
        if self.vectors.iter().any(|v| v.len() != self.d) {
            return Err(Error::input(format!("every vector must have d = {} entries", self.d)));
        }
        Instance::new(VectorSet::new(self.d, &self.vectors)?, self.matroid, self.metadata)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("invalid instance file: {e}")))
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    InstanceFile::parse(&text)?.into_instance()
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    write_atomic(path, InstanceFile::from_instance(inst).to_json()?.as_bytes())
}

/// Writes through a sibling temporary file so readers never see a partial file.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::input("output path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "detmax", version, about = "Determinant maximization under matroid constraints")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Preprocess, relax, sparsify and round one instance.
    Solve(SolveArgs),
    /// Run the pipeline over every instance file in a directory.
    Bench(BenchArgs),
    /// Oblivious rounding versus sparsify-then-round on the adversarial family.
    DemoAdversarial(DemoArgs),
    /// Exhaustive optimum of an instance.
    Brute(BruteArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Random experimental-design vectors under a uniform, partition or graphic matroid.
    Design(DesignArgs),
    /// Nash social welfare from a utility matrix.
    Nsw {
        /// Rows separated by ';', entries by ',' (row i = agent i).
        #[arg(long)]
        utilities: String,
    },
    /// Spanning-tree network design.
    Network {
        #[arg(long)]
        vertices: usize,
        /// Edges as "a-b" separated by ','.
        #[arg(long)]
        edges: String,
        /// One weight per edge; drawn uniformly from [0.5, 2) when omitted.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The graph family on which oblivious rounding fails.
    Adversarial {
        #[arg(long)]
        m: usize,
        /// 0-based index of the vertex carrying the two nonzero vectors (default: last).
        #[arg(long)]
        distinguished: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct DesignArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: usize,
    #[arg(long, value_enum, default_value_t = MatroidKind::Uniform)]
    pub matroid: MatroidKind,
    /// Rank of the uniform matroid.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Part of each element, ',' separated.
    #[arg(long)]
    pub parts: Option<String>,
    /// Capacity of each part, ',' separated.
    #[arg(long)]
    pub caps: Option<String>,
    #[arg(long)]
    pub vertices: Option<usize>,
    /// Edges as "a-b" separated by ','.
    #[arg(long)]
    pub edges: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    Uniform,
    Partition,
    Graphic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundingMethod {
    Sparse,
    Deterministic,
    Partition,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub options: SolveOptions,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Relative Frank–Wolfe gap at which the relaxation stops.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub frac_eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Round the relaxation optimum directly, without sparsification.
    #[arg(long)]
    pub skip_sparsify: bool,
    #[arg(long, value_enum, default_value_t = RoundingMethod::Sparse)]
    pub rounding: RoundingMethod,
    /// Skip the brute-force comparison.
    #[arg(long)]
    pub no_oracle: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            eps: 1e-3,
            frac_eps: 1e-6,
            seed: 0,
            skip_sparsify: false,
            rounding: RoundingMethod::Sparse,
            no_oracle: false,
        }
    }
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    pub corpus: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = RoundingMethod::Sparse)]
    pub rounding: RoundingMethod,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
    pub m_list: Vec<usize>,
    /// Monte Carlo samples when exact enumeration is too large.
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BruteArgs {
    pub instance: PathBuf,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Errors are printed to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Gen(args) => {
            let inst = cmd_gen(&args.kind)?;
            emit(args.out.as_deref(), &InstanceFile::from_instance(&inst).to_json()?)?;
            Ok(0)
        }
        Command::Solve(args) => {
            let inst = read_instance(&args.instance)?;
            if args.options.rounding == RoundingMethod::Partition && inst.matroid.partition_structure().is_none() {
                return Err(Error::input(format!(
                    "partition rounding needs a partition matroid, got {}",
                    inst.matroid.kind_name()
                )));
            }
            let report = cmd_solve(&inst, &args.options);
            let mut report = report;
            report.instance = Some(args.instance.display().to_string());
            emit(args.out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            Ok(report.exit_code)
        }
        Command::Bench(args) => {
            let rows = cmd_bench(&args.corpus, args.trials, args.seed, args.rounding)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            if rows.is_empty() {
                w.write_record(BenchRow::HEADER)?;
            }
            for r in &rows {
                w.serialize(r)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            emit(args.csv.as_deref(), &String::from_utf8_lossy(&bytes))?;
            Ok(if rows.iter().any(|r| !r.error.is_empty()) { 3 } else { 0 })
        }
        Command::DemoAdversarial(args) => {
            let rows = cmd_demo_adversarial(&args.m_list, args.samples, args.seed)?;
            let mut text = format!(
                "{:>4} {:>12} {:>12} {:>12} {:>8} {:>12} {:>12} {:>12} {:>6}\n",
                "m", "relax(x*)", "E_obliv", "ratio", "m/4", "exp(f)", "E_pipeline", "ratio_pipe", "pass"
            );
            for r in &rows {
                text += &format!(
                    "{:>4} {:>12.6} {:>12.6e} {:>12.4} {:>8.2} {:>12.6} {:>12.6} {:>12.4} {:>6}\n",
                    r.m,
                    r.relaxation_value,
                    r.oblivious_expectation,
                    r.oblivious_ratio,
                    r.m as f64 / 4.0,
                    r.pipeline_relaxation,
                    r.pipeline_expectation,
                    r.pipeline_ratio,
                    r.pass()
                );
            }
            if let Some(p) = &args.out {
                write_atomic(p, (serde_json::to_string_pretty(&rows)? + "\n").as_bytes())?;
            }
            print!("{text}");
            Ok(if rows.iter().all(|r| r.pass()) { 0 } else { 3 })
        }
        Command::Brute(args) => {
            let inst = read_instance(&args.instance)?;
            let res = oracle::opt_exact(&inst)?;
            println!("{}", serde_json::to_string_pretty(&res)?);
            Ok(0)
        }
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::input(format!("bad {what} entry {s:?}"))))
        .collect()
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (a, b) = s.split_once('-').ok_or_else(|| Error::input(format!("edge {s:?} is not \"a-b\"")))?;
            let p = |t: &str| t.trim().parse().map_err(|_| Error::input(format!("bad vertex in edge {s:?}")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

pub fn cmd_gen(kind: &GenKind) -> Result<Instance> {
    match kind {
        GenKind::Design(a) => {
            let matroid = match a.matroid {
                MatroidKind::Uniform => {
                    let n = a.n.ok_or_else(|| Error::input("--n is required"))?;
                    Matroid::uniform(n, a.rank.ok_or_else(|| Error::input("--rank is required"))?)
                }
                MatroidKind::Partition => {
                    let parts = parse_list(a.parts.as_deref().ok_or_else(|| Error::input("--parts is required"))?, "part")?;
                    let caps = parse_list(a.caps.as_deref().ok_or_else(|| Error::input("--caps is required"))?, "capacity")?;
                    Matroid::partition(parts, caps)
                }
                MatroidKind::Graphic => {
                    let v = a.vertices.ok_or_else(|| Error::input("--vertices is required"))?;
                    Matroid::graphic(v, parse_edges(a.edges.as_deref().ok_or_else(|| Error::input("--edges is required"))?)?)
                }
            };
            matroid.validate()?;
            let n = matroid.ground_size();
            if a.n.is_some_and(|given| given != n) {
                return Err(Error::input(format!("--n {} disagrees with the matroid's {n} elements", a.n.unwrap())));
            }
            instances::gen_experimental_design(n, a.d, matroid, a.seed)
        }
        GenKind::Nsw { utilities } => {
            let rows: Vec<Vec<f64>> = utilities
                .split(';')
                .filter(|r| !r.trim().is_empty())
                .map(|r| parse_list(r, "utility"))
                .collect::<Result<_>>()?;
            instances::gen_nsw(&rows, None)
        }
        GenKind::Network {
            vertices,
            edges,
            weights,
            seed,
        } => {
            let edges = parse_edges(edges)?;
            let weights = match weights {
                Some(w) => parse_list(w, "weight")?,
                None => {
                    let mut rng = seed::stage_rng(*seed, "gen/network");
                    edges.iter().map(|_| rng.gen_range(0.5..2.0)).collect()
                }
            };
            let mut inst = instances::gen_network_design(*vertices, &edges, &weights, None)?;
            inst.metadata.seed = Some(*seed);
            Ok(inst)
        }
        GenKind::Adversarial { m, distinguished } => {
            let i = distinguished.unwrap_or(m.saturating_sub(1));
            Ok(instances::gen_adversarial(*m, i)?.instance)
        }
    }
}

/// Everything needed to replay a `solve` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub instance: Option<String>,
    pub config: SolveOptions,
    pub seeds: StageSeeds,
    /// `ok`, `opt_zero` or `error`.
    pub status: String,
    pub exit_code: i32,
    pub error: Option<String>,
    pub preprocessing: Option<instances::Preprocessing>,
    pub cp: Option<CpStage>,
    pub sparsify: Option<SparsifyStage>,
    pub round: Option<RoundStage>,
    pub oracle: Option<OracleStage>,
    pub timings: Timings,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StageSeeds {
    pub master: u64,
    pub preprocess: u64,
    pub cp: u64,
    pub sparsify: u64,
    pub round: u64,
}

impl StageSeeds {
    pub fn derive(master: u64) -> Self {
        StageSeeds {
            master,
            preprocess: seed::derive(master, "preprocess"),
            cp: seed::derive(master, "cp"),
            sparsify: seed::derive(master, "sparsify"),
            round: seed::derive(master, "round"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpStage {
    pub f_value: f64,
    pub exp_f: f64,
    pub outer_gap: f64,
    pub inner_gap: f64,
    pub iterations: usize,
    pub stalled: bool,
    pub kkt_certified: bool,
    pub fractional: usize,
    pub x: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifyStage {
    pub fractional: usize,
    pub bound: usize,
    pub value_check: f64,
    pub matrix_residual: f64,
    pub reseeds: usize,
    pub vertex_certified: bool,
    pub x_hat: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundStage {
    pub method: RoundingMethod,
    /// Basis of the original instance.
    pub basis: Vec<usize>,
    /// Objective of `basis` with the original vectors.
    pub objective: f64,
    /// Exact expected objective of the rounding, when enumerable.
    pub expectation: Option<f64>,
    pub rounded: rounding::RoundedBasis,
    pub deterministic_steps: Option<Vec<rounding::DeterministicStep>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleStage {
    pub opt: f64,
    pub opt_basis: Vec<usize>,
    pub basis_count: usize,
    pub chain: Option<ChainReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub preprocess_s: f64,
    pub cp_s: f64,
    pub sparsify_s: f64,
    pub round_s: f64,
    pub oracle_s: f64,
}

impl RunReport {
    fn new(options: &SolveOptions) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION.into(),
            instance: None,
            config: options.clone(),
            seeds: StageSeeds::derive(options.seed),
            status: "ok".into(),
            exit_code: 0,
            error: None,
            preprocessing: None,
            cp: None,
            sparsify: None,
            round: None,
            oracle: None,
            timings: Timings::default(),
        }
    }
}

/// Runs the pipeline. Failures are recorded in the report, not returned.
pub fn cmd_solve(inst: &Instance, options: &SolveOptions) -> RunReport {
    let mut report = RunReport::new(options);
    if let Err(e) = solve_into(inst, options, &mut report) {
        report.status = "error".into();
        report.exit_code = e.exit_code();
        report.error = Some(e.to_string());
    }
    report
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

fn solve_into(inst: &Instance, options: &SolveOptions, report: &mut RunReport) -> Result<()> {
    let seeds = report.seeds.clone();
    if options.rounding == RoundingMethod::Partition && inst.matroid.partition_structure().is_none() {
        return Err(Error::input("partition rounding needs a partition matroid"));
    }
    if !instances::check_opt_positive(inst) {
        report.status = "opt_zero".into();
        return Ok(());
    }

    let t = Instant::now();
    let pre = instances::preprocess(inst, &PerturbationParams::auto(inst, seeds.preprocess))?;
    report.preprocessing = pre.metadata.preprocessing.clone();
    report.timings.preprocess_s = secs(t);

    let t = Instant::now();
    let cp_cfg = CpConfig {
        eps: options.eps,
        seed: seeds.cp,
        ..CpConfig::default()
    };
    let cp = relaxation::solve_cp(&pre, &cp_cfg)?;
    let kkt = relaxation::check_kkt(&pre, &cp.x, &cp.z, 1e-4)?;
    report.cp = Some(CpStage {
        f_value: cp.f_value,
        exp_f: cp.f_value.exp(),
        outer_gap: cp.outer_gap,
        inner_gap: cp.inner_gap,
        iterations: cp.iterations.len(),
        stalled: cp.stalled,
        kkt_certified: kkt.is_optimal_certificate,
        fractional: sparsify::count_fractional(&cp.x, options.frac_eps),
        x: cp.x.clone(),
    });
    report.timings.cp_s = secs(t);

    let t = Instant::now();
    let x = if options.skip_sparsify {
        cp.x.clone()
    } else {
        let cfg = SparsifyConfig {
            frac_eps: options.frac_eps,
            seed: seeds.sparsify,
            ..SparsifyConfig::default()
        };
        let s = sparsify::sparsify(&pre, &cp, &cfg)?;
        report.sparsify = Some(SparsifyStage {
            fractional: s.fractional_support.len(),
            bound: s.bound,
            value_check: s.value_check,
            matrix_residual: s.matrix_residual,
            reseeds: s.reseeds,
            vertex_certified: s.certificate.as_ref().is_some_and(|c| c.is_vertex()),
            x_hat: s.x_hat.clone(),
        });
        s.x_hat
    };
    report.timings.sparsify_s = secs(t);

    let t = Instant::now();
    let copies = pre.copies();
    let project = |b: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = b.iter().map(|e| e / copies).collect();
        out.sort_unstable();
        out
    };
    let round = match options.rounding {
        RoundingMethod::Sparse => {
            let input = RoundingInput::new(&pre, &x, options.frac_eps)?;
            let rounded = if options.skip_sparsify {
                rounding::round_oblivious(&input, seeds.round)
            } else {
                rounding::round_sparse(&input, seeds.round)?
            };
            let expectation = match rounding::outcome_distribution(&input) {
                Ok(dist) => Some(dist.expected_objective(&pre)),
                Err(Error::Scale { .. }) => None,
                Err(e) => return Err(e),
            };
            let basis = project(&rounded.basis);
            RoundStage {
                method: options.rounding,
                objective: inst.objective(&basis),
                basis,
                expectation,
                rounded,
                deterministic_steps: None,
            }
        }
        RoundingMethod::Deterministic => {
            let cfg = DeterministicConfig {
                cp: cp_cfg.clone(),
                ..DeterministicConfig::default()
            };
            let res = rounding::round_deterministic_from(&pre, &cp, &x, &cfg)?;
            let basis = project(&res.rounded.basis);
            RoundStage {
                method: options.rounding,
                objective: inst.objective(&basis),
                basis,
                expectation: None,
                rounded: res.rounded,
                deterministic_steps: Some(res.steps),
            }
        }
        RoundingMethod::Partition => {
            let merged = instances::merge_copies(&x, copies);
            let rounded = rounding::round_partition(inst, &merged, seeds.round)?;
            let expectation = match rounding::partition_expected_value(inst, &merged) {
                Ok(v) => Some(v),
                Err(Error::Scale { .. }) => None,
                Err(e) => return Err(e),
            };
            RoundStage {
                method: options.rounding,
                objective: rounded.objective,
                basis: rounded.basis.clone(),
                expectation,
                rounded,
                deterministic_steps: None,
            }
        }
    };
    report.timings.round_s = secs(t);

    if !options.no_oracle {
        let t = Instant::now();
        match oracle::opt_exact(inst) {
            Ok(brute) => {
                let bound = match options.rounding {
                    RoundingMethod::Partition => ChainBound::Partition,
                    _ => ChainBound::General,
                };
                let expectation = match options.rounding {
                    RoundingMethod::Deterministic => Some(round.objective),
                    _ => round.expectation,
                };
                let chain = expectation.map(|e| oracle::chain_report(brute.opt_value, cp.f_value, e, inst.d(), bound, 1e-2));
                report.oracle = Some(OracleStage {
                    opt: brute.opt_value,
                    opt_basis: brute.opt_basis,
                    basis_count: brute.basis_count,
                    chain,
                });
            }
            Err(Error::Scale { .. }) => {}
            Err(e) => return Err(e),
        }
        report.timings.oracle_s = secs(t);
    }
    report.round = Some(round);
    Ok(())
}

/// One CSV row of `bench`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub matroid: String,
    pub opt: Option<f64>,
    pub exp_opt_cp: Option<f64>,
    pub fractional: Option<usize>,
    pub bound: usize,
    pub rounded_value: Option<f64>,
    pub expectation: Option<f64>,
    pub opt_le_exp_f: Option<bool>,
    pub exp_f_le_c_opt: Option<bool>,
    pub expectation_ge_exp_f_over_c: Option<bool>,
    pub expectation_le_opt: Option<bool>,
    pub chain_pass: Option<bool>,
    pub t_cp: f64,
    pub t_sparsify: f64,
    pub t_round: f64,
    pub t_oracle: f64,
    pub error: String,
}

impl BenchRow {
    pub const HEADER: [&'static str; 23] = [
        "instance",
        "trial",
        "seed",
        "n",
        "d",
        "k",
        "matroid",
        "opt",
        "exp_opt_cp",
        "fractional",
        "bound",
        "rounded_value",
        "expectation",
        "opt_le_exp_f",
        "exp_f_le_c_opt",
        "expectation_ge_exp_f_over_c",
        "expectation_le_opt",
        "chain_pass",
        "t_cp",
        "t_sparsify",
        "t_round",
        "t_oracle",
        "error",
    ];

    fn from_report(name: &str, trial: usize, inst: Option<&Instance>, r: &RunReport) -> Self {
        let chain = r.oracle.as_ref().and_then(|o| o.chain.clone());
        BenchRow {
            instance: name.into(),
            trial,
            seed: r.seeds.master,
            n: inst.map_or(0, |i| i.n()),
            d: inst.map_or(0, |i| i.d()),
            k: inst.map_or(0, |i| i.k()),
            matroid: inst.map_or(String::new(), |i| i.matroid.kind_name().into()),
            opt: r.oracle.as_ref().map(|o| o.opt),
            exp_opt_cp: r.cp.as_ref().map(|c| c.exp_f),
            fractional: r.sparsify.as_ref().map(|s| s.fractional).or(r.cp.as_ref().map(|c| c.fractional)),
            bound: inst.map_or(0, |i| sparsify::fractional_bound(i.d())),
            rounded_value: r.round.as_ref().map(|x| x.objective),
            expectation: r.round.as_ref().and_then(|x| x.expectation),
            opt_le_exp_f: chain.as_ref().map(|c| c.opt_le_exp_f),
            exp_f_le_c_opt: chain.as_ref().map(|c| c.exp_f_le_c_opt),
            expectation_ge_exp_f_over_c: chain.as_ref().map(|c| c.expectation_ge_exp_f_over_c),
            expectation_le_opt: chain.as_ref().map(|c| c.expectation_le_opt),
            chain_pass: chain.as_ref().map(|c| c.all_pass()),
            t_cp: r.timings.cp_s,
            t_sparsify: r.timings.sparsify_s,
            t_round: r.timings.round_s,
            t_oracle: r.timings.oracle_s,
            error: r.error.clone().unwrap_or_default(),
        }
    }
}

/// Runs `solve` on every `*.json` file in `dir` (sorted by name), `trials`
/// times each. Trial `t` of file `f` uses the master seed derived from `(seed, f, t)`.
pub fn cmd_bench(dir: &Path, trials: usize, seed: u64, rounding: RoundingMethod) -> Result<Vec<BenchRow>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut rows = Vec::new();
    for path in files {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let inst = read_instance(&path);
        for trial in 0..trials {
            let options = SolveOptions {
                seed: seed::derive(seed, &format!("bench/{name}/{trial}")),
                rounding,
                ..SolveOptions::default()
            };
            let report = match &inst {
                Ok(i) => cmd_solve(i, &options),
                Err(e) => {
                    let mut r = RunReport::new(&options);
                    r.status = "error".into();
                    r.exit_code = e.exit_code();
                    r.error = Some(e.to_string());
                    r
                }
            };
            rows.push(BenchRow::from_report(&name, trial, inst.as_ref().ok(), &report));
        }
    }
    Ok(rows)
}

/// One line of the oblivious-rounding demo.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversarialRow {
    pub m: usize,
    pub distinguished: usize,
    /// `exp f(x*)` at the fully fractional point.
    pub relaxation_value: f64,
    /// Exact expected objective of oblivious rounding at `x*`.
    pub oblivious_expectation: f64,
    pub oblivious_ratio: f64,
    /// `exp(OPT_CP)` on the preprocessed instance.
    pub pipeline_relaxation: f64,
    /// Exact expectation, or the Hoeffding lower bound when sampled.
    pub pipeline_expectation: f64,
    pub pipeline_exact: bool,
    pub pipeline_estimate: Option<rounding::MonteCarloEstimate>,
    pub pipeline_ratio: f64,
    pub chain_constant: f64,
}

impl AdversarialRow {
    pub fn oblivious_gap_holds(&self) -> bool {
        self.oblivious_ratio >= self.m as f64 / 4.0
    }

    pub fn pipeline_within_chain(&self) -> bool {
        self.pipeline_ratio < self.chain_constant
    }

    pub fn pass(&self) -> bool {
        self.oblivious_gap_holds() && self.pipeline_within_chain()
    }
}

pub fn cmd_demo_adversarial(ms: &[usize], samples: usize, master: u64) -> Result<Vec<AdversarialRow>> {
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        if m < 2 {
            return Err(Error::input("each m must be at least 2"));
        }
        rows.push(adversarial_row(m, samples, seed::derive(master, &format!("demo/{m}")))?);
    }
    Ok(rows)
}

/// The demo for one `m`; the distinguished vertex is the last one.
pub fn adversarial_row(m: usize, samples: usize, master: u64) -> Result<AdversarialRow> {
    let adv = instances::gen_adversarial(m, m - 1)?;
    let inst = &adv.instance;
    let relaxation_value = relaxation::inner_infimum(inst, &adv.x_star, 1e-10)?.value.exp();
    let oblivious_expectation = rounding::adversarial_oblivious_expectation(&adv);

    let seeds = StageSeeds::derive(master);
    let pre = instances::preprocess(inst, &PerturbationParams::auto(inst, seeds.preprocess))?;
    let cp = relaxation::solve_cp(
        &pre,
        &CpConfig {
            seed: seeds.cp,
            ..CpConfig::default()
        },
    )?;
    let sparse = sparsify::sparsify(
        &pre,
        &cp,
        &SparsifyConfig {
            seed: seeds.sparsify,
            ..SparsifyConfig::default()
        },
    )?;
    let input = RoundingInput::new(&pre, &sparse.x_hat, 1e-6)?;
    let (expectation, exact, estimate) = match rounding::outcome_distribution(&input) {
        Ok(dist) => (dist.expected_objective(&pre), true, None),
        Err(Error::Scale { .. }) => {
            let all: Vec<usize> = (0..pre.n()).collect();
            let bound = pre.objective(&all);
            let est = rounding::expected_value_monte_carlo(&input, samples, seeds.round, 1e-3, bound)?;
            (est.lower(), false, Some(est))
        }
        Err(e) => return Err(e),
    };
    let pipeline_relaxation = cp.f_value.exp();
    Ok(AdversarialRow {
        m,
        distinguished: adv.distinguished,
        relaxation_value,
        oblivious_expectation,
        oblivious_ratio: relaxation_value / oblivious_expectation,
        pipeline_relaxation,
        pipeline_expectation: expectation,
        pipeline_exact: exact,
        pipeline_estimate: estimate,
        pipeline_ratio: if expectation > 0.0 { pipeline_relaxation / expectation } else { f64::INFINITY },
        chain_constant: ChainBound::General.constant(2),
    })
}
