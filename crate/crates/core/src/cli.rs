//! The `unigraph` command line.
//!
//! Exit codes: 0 success, 1 usage, input or model error, 2 a failed check or
//! a `different` comparison, 3 an `inconclusive` comparison.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{self, clique_in, compare_matrix_distributions, extension_stats_with, induced_census_with, Verdict};
use crate::error::{Error, Result};
use crate::graphon::{self, parse_number, Graphon, SampledGraph, VertexMeasure};
use crate::measure::{cylinder_exact, cylinder_mc, CylinderPattern};
use crate::patterns::PatternFilter;
use crate::spec::{ModelKind, ModelSpec};

#[derive(Parser, Debug)]
#[command(name = "unigraph", version, about = "Sample and check random graphs from universal graphons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a graph and write it as an edge list or JSON.
    Gen(GenArgs),
    /// Run checks on a graph file.
    Verify(VerifyArgs),
    /// Evaluate the probability of a cylinder pattern.
    Cylinder(CylinderArgs),
    /// Compare the k-vertex matrix distributions of two models.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Er,
    LineUniversal,
    LineTrianglefree,
    Ksfree,
    Step,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Model family.
    #[arg(long)]
    model: Model,
    /// Edge probability for `er`, as `p/q` or a decimal.
    #[arg(long)]
    p: Option<String>,
    /// Forbidden clique size for `ksfree`.
    #[arg(long)]
    s: Option<usize>,
    /// Step-graphon JSON file for `step`.
    #[arg(long)]
    step: Option<PathBuf>,
    /// Vertex measure: `gaussian:MEAN:SIGMA`, `uniform:LO:HI` or `blocks:M1,M2,...`.
    #[arg(long)]
    measure: Option<String>,
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec> {
        let missing = |flag: &str| Error::Spec(format!("--model {:?} needs --{flag}", self.model).to_lowercase());
        let kind = match self.model {
            Model::Er => ModelKind::Er(parse_number(self.p.as_deref().ok_or_else(|| missing("p"))?)?),
            Model::LineUniversal => ModelKind::LineUniversal,
            Model::LineTrianglefree => ModelKind::LineTriangleFree,
            Model::Ksfree => ModelKind::KsFree(self.s.ok_or_else(|| missing("s"))?),
            Model::Step => ModelKind::Step(self.step.clone().ok_or_else(|| missing("step"))?),
        };
        let measure = self.measure.as_deref().map(str::parse::<VertexMeasure>).transpose()?;
        let spec = ModelSpec { kind, measure, seed: 0 };
        ModelSpec::parse(&spec.to_string())?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Random seed; required unless the sample is fully determined.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: GraphFormat,
    /// Refuse unless the model provably excludes K_S.
    #[arg(long, value_name = "S")]
    claim_ksfree: Option<usize>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Graph file, edge list or JSON.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Checks, comma separated or repeated:
    /// `clique:K` (fails if a K-clique exists),
    /// `census:K[:mode=M]` (fails unless exactly the expected classes occur),
    /// `extension:W:B[:tuples=N][:mode=M][:min=F]` (fails below F if given),
    /// `purity` (report only). Modes: plain, trianglefree, ksfreeS.
    #[arg(long = "checks", alias = "check", value_delimiter = ',', required = true)]
    checks: Vec<String>,
    /// Seed for sampled checks; required by census and extension.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CylinderMethod {
    Exact,
    Mc,
}

#[derive(Args, Debug)]
struct CylinderArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Pattern file: `n`, then n rows of n 0/1 entries.
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: CylinderMethod,
    /// Monte-Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Random seed; required by `mc`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// First model as `KIND[:ARG][@MEASURE]`, e.g. `er:0.3` or `line-universal@uniform:-10:10`.
    #[arg(long)]
    a: String,
    /// Second model, same syntax.
    #[arg(long)]
    b: String,
    /// Model seed of the first side.
    #[arg(long, default_value_t = 1)]
    a_seed: u64,
    /// Model seed of the second side.
    #[arg(long, default_value_t = 2)]
    b_seed: u64,
    /// Pattern order, at most 4.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Samples per side.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

/// Runs the CLI on `args` (program name first), returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Cylinder(a) => cylinder(a, out),
        Command::Compare(a) => compare(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn needs_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| Error::Spec(format!("{what} is randomized and needs an explicit --seed")))
}

/// Why `g` cannot be certified free of `K_s`, if it cannot.
fn ksfree_refusal(g: &Graphon, s: usize) -> Option<String> {
    if s < 2 {
        return Some(format!("K_{s}-freeness is unsatisfiable"));
    }
    if !g.is_deterministic_in_edges() {
        return Some("edge probabilities strictly between 0 and 1 put every finite graph in the support".into());
    }
    match g {
        Graphon::Constant(p) if p.numer() == p.denom() => Some("the complete graph contains every clique".into()),
        Graphon::Constant(_) => None,
        Graphon::Step(st) if st.has_sure_clique(s) => Some(format!("some blocks are pairwise joined with room for a K_{s}")),
        Graphon::Step(_) => None,
        Graphon::LineIndicator(m) if m.mode() == crate::line_graph::LineMode::TriangleFree && s >= 3 => None,
        Graphon::LineIndicator(_) => Some("the universal line graph contains every finite graph".into()),
        Graphon::PlaneIndicator(m) if m.s() <= s => None,
        Graphon::PlaneIndicator(m) => Some(format!("the plane model only excludes K_{}", m.s())),
    }
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = a.model.spec()?;
    let (g, m) = spec.build()?;
    if let Some(s) = a.claim_ksfree {
        if let Some(why) = ksfree_refusal(&g, s) {
            return Err(Error::Spec(format!("refusing K_{s}-free claim for {spec}: {why}")));
        }
    }
    let fixed = matches!(&g, Graphon::Constant(_)) && g.is_deterministic_in_edges();
    let seed = if fixed { a.seed.unwrap_or(0) } else { needs_seed(a.seed, "sampling this model")? };
    let sample = graphon::sample(&g, &m, a.n, seed)?;
    let text = match a.format {
        GraphFormat::Edgelist => sample.graph.to_edge_list(),
        GraphFormat::Json => sample.to_json(),
    };
    match &a.out {
        Some(path) => std::fs::write(path, text).map_err(io)?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(0)
}

fn parse_mode(s: &str) -> Result<PatternFilter> {
    match s {
        "plain" => Ok(PatternFilter::Plain),
        "trianglefree" => Ok(PatternFilter::TriangleFree),
        _ => match s.strip_prefix("ksfree").and_then(|n| n.parse().ok()) {
            Some(n) => PatternFilter::ks_free(n),
            None => Err(Error::Spec(format!("unknown mode `{s}`"))),
        },
    }
}

enum Check {
    Clique(usize),
    Census { k: usize, mode: PatternFilter },
    Extension { white: usize, black: usize, tuples: usize, mode: PatternFilter, min: Option<f64> },
    Purity,
}

fn parse_check(text: &str) -> Result<Check> {
    let bad = || Error::Spec(format!("bad check `{text}`"));
    let mut parts = text.split(':');
    let name = parts.next().unwrap_or_default();
    let (mut positional, mut options) = (Vec::new(), Vec::new());
    for p in parts {
        match p.split_once('=') {
            Some(kv) => options.push(kv),
            None => positional.push(p.parse::<usize>().map_err(|_| bad())?),
        }
    }
    let (mut mode, mut tuples, mut min) = (PatternFilter::Plain, 500, None);
    for (key, value) in options {
        match key {
            "mode" => mode = parse_mode(value)?,
            "tuples" => tuples = value.parse().map_err(|_| bad())?,
            "min" => min = Some(value.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    match (name, &positional[..]) {
        ("clique", &[k]) if k >= 2 => Ok(Check::Clique(k)),
        ("census", &[k]) if k <= 5 => Ok(Check::Census { k, mode }),
        ("extension", &[white, black]) => Ok(Check::Extension { white, black, tuples, mode, min }),
        ("purity", []) => Ok(Check::Purity),
        _ => Err(bad()),
    }
}

fn emit(out: &mut dyn Write, format: ReportFormat, text: &str, json: serde_json::Value) -> Result<()> {
    match format {
        ReportFormat::Text => out.write_all(text.as_bytes()).map_err(io),
        ReportFormat::Json => writeln!(out, "{json}").map_err(io),
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let checks = a.checks.iter().map(|c| parse_check(c)).collect::<Result<Vec<_>>>()?;
    let text = std::fs::read_to_string(&a.input).map_err(|e| Error::Io(format!("{}: {e}", a.input.display())))?;
    let g = SampledGraph::parse(&text)?;
    let mut failed = false;
    for check in checks {
        match check {
            Check::Clique(k) => {
                let found = clique_in(&g.graph, k);
                let line = match &found {
                    Some(vs) => format!("clique k={k} FAIL found {vs:?}\n"),
                    None => format!("clique k={k} pass none\n"),
                };
                emit(out, a.format, &line, serde_json::json!({"check": "clique", "k": k, "pass": found.is_none(), "witness": found}))?;
                failed |= found.is_some();
            }
            Check::Census { k, mode } => {
                let seed = needs_seed(a.seed, "census")?;
                let r = induced_census_with(&g, k, mode, seed, a.threads);
                let pass = r.complete() && r.unexpected().is_empty();
                let line = format!("{} {r}", if pass { "pass" } else { "FAIL" });
                emit(out, a.format, &line, serde_json::json!({"check": "census", "pass": pass, "report": r}))?;
                failed |= !pass;
            }
            Check::Extension { white, black, tuples, mode, min } => {
                let seed = needs_seed(a.seed, "extension")?;
                let r = extension_stats_with(&g, white, black, tuples, seed, mode, a.threads)?;
                let pass = min.is_none_or(|m| r.fraction() >= m);
                let status = match min {
                    Some(_) if pass => "pass ",
                    Some(_) => "FAIL ",
                    None => "",
                };
                emit(out, a.format, &format!("{status}{r}"), serde_json::json!({"check": "extension", "pass": pass, "report": r}))?;
                failed |= !pass;
            }
            Check::Purity => {
                let r = analysis::purity_diagnostic(&g.graph);
                emit(out, a.format, &r.to_string(), serde_json::json!({"check": "purity", "report": r}))?;
            }
        }
    }
    Ok(if failed { 2 } else { 0 })
}

fn cylinder(a: CylinderArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = a.model.spec()?;
    let (g, m) = spec.build()?;
    let text = std::fs::read_to_string(&a.pattern).map_err(|e| Error::Io(format!("{}: {e}", a.pattern.display())))?;
    let pattern = CylinderPattern::parse(&text)?;
    let estimate = match a.method {
        CylinderMethod::Exact => cylinder_exact(&g, &pattern)?,
        CylinderMethod::Mc => cylinder_mc(&g, &m, &pattern, a.samples, needs_seed(a.seed, "monte carlo")?)?,
    };
    emit(out, a.format, &format!("{estimate}\n"), serde_json::to_value(&estimate).expect("serializable"))?;
    Ok(0)
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> Result<i32> {
    let side = |text: &str, seed: u64| ModelSpec::parse(text).map(|s| ModelSpec { seed, ..s });
    let (x, y) = (side(&a.a, a.a_seed)?, side(&a.b, a.b_seed)?);
    let r = compare_matrix_distributions(&x, &y, a.k, a.samples, a.seed)?;
    emit(out, a.format, &r.to_string(), serde_json::to_value(&r).expect("serializable"))?;
    Ok(match r.verdict {
        Verdict::Same => 0,
        Verdict::Different => 2,
        Verdict::Inconclusive => 3,
    })
}
