//! `nilcone`: classify nilpotent elements, compute weight filtrations and
//! Deligne splittings, and verify limiting mixed Hodge structures and cones.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 parse or I/O
//! error, 3 validation error.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nilcone_core::cone::{fixtures as cone_fixtures, sample_cone, validate_cone, verify_theorem1, NilpotentCone, SampleStrategy};
use nilcone_core::hodge::{deligne_splitting, fixtures as hodge_fixtures, is_lmhs, HodgeFlag};
use nilcone_core::nilpotent::{invariants, weight_filtration};
use nilcone_core::orbit::{catalog, classify_complex, classify_real, construct_representative, validate_invariants};
use nilcone_core::{Error, NilpotentElement, OrbitInvariants, Rational};

#[derive(Parser, Debug)]
#[command(name = "nilcone", version, about = "Exact nilpotent orbit and limiting mixed Hodge structure toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Config,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Input JSON file. Relative paths missing from the working directory
    /// are looked up in $NILCONE_FIXTURES.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Number of seeded random cone samples.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Depth of the lattice grid of cone samples (0 disables the grid).
    #[arg(long, global = true, default_value_t = 3)]
    grid_depth: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Invariants (m, s) and class label of a nilpotent element.
    Classify,
    /// Weight filtration W(N) centered at the weight of the space.
    WeightFiltration,
    /// Deligne splitting of (W(N), F).
    Deligne,
    /// Check the limiting mixed Hodge structure axioms for (F, N).
    VerifyLmhs,
    /// Validate a nilpotent cone and check that its interior lies in one orbit.
    VerifyCone,
    /// Build the standard representative of the class (m, s).
    Representative {
        #[arg(long)]
        k: usize,
        /// Multiplicities m_0,m_1,... separated by commas.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Signature of Q_l as "l:p,q"; repeat for each l.
        #[arg(long)]
        s: Vec<String>,
    },
    /// Every valid class (m, s) up to the given dimension, both parities.
    Catalog {
        #[arg(long)]
        dim_max: usize,
    },
    /// Write the built-in fixtures as JSON files into --output (a directory).
    Fixtures,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::WeightFiltration => "weight-filtration",
            Command::Deligne => "deligne",
            Command::VerifyLmhs => "verify-lmhs",
            Command::VerifyCone => "verify-cone",
            Command::Representative { .. } => "representative",
            Command::Catalog { .. } => "catalog",
            Command::Fixtures => "fixtures",
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::parse(e.to_string())
        } else {
            Failure::validation(e.to_string())
        }
    }
}

/// What a subcommand produced: the JSON result and an optional verdict.
struct Outcome {
    result: Value,
    verdict: Option<bool>,
}

fn resolve_input(path: &Path) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(dir) = std::env::var_os("NILCONE_FIXTURES") {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

/// Reads the input document. A previous report is accepted too: its echoed
/// `input` is used.
fn read_input(config: &Config) -> Result<Value, Failure> {
    let path = config.input.as_ref().ok_or_else(|| Failure::parse("--input is required"))?;
    let path = resolve_input(path);
    let text = fs::read_to_string(&path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    if !v.is_object() {
        return Err(Failure::parse("input must be a JSON object"));
    }
    match (v.get("command"), v.get("input")) {
        (Some(_), Some(inner)) => Ok(inner.clone()),
        _ => Ok(v),
    }
}

fn read_element(input: &Value) -> Result<NilpotentElement, Failure> {
    Ok(NilpotentElement::from_json(input)?)
}

fn read_flag(input: &Value, dim: usize) -> Result<HodgeFlag, Failure> {
    let f = input.get("flag").ok_or_else(|| Failure::parse("input needs a Hodge \"flag\""))?;
    Ok(HodgeFlag::from_json(f, dim)?)
}

fn cmd_classify(input: &Value) -> Result<Outcome, Failure> {
    let n = read_element(input)?;
    let inv = invariants(&n)?;
    let sig = n.space().form().signature().ok().map(|s| (s.p, s.q));
    validate_invariants(&inv, n.k(), n.dim(), sig).into_result()?;
    let real = classify_real(&inv, n.k())?;
    let complex = classify_complex(&inv.m, n.space().parity())?;
    let mut result = real.to_json();
    result["complex"] = complex.to_json();
    result["partition"] = json!(inv.partition());
    Ok(Outcome { result, verdict: None })
}

fn cmd_weight_filtration(input: &Value) -> Result<Outcome, Failure> {
    let n = read_element(input)?;
    let wf = weight_filtration(&n)?;
    Ok(Outcome { result: wf.to_json(), verdict: None })
}

fn cmd_deligne(input: &Value) -> Result<Outcome, Failure> {
    let n = read_element(input)?;
    let flag = read_flag(input, n.dim())?;
    let wf = weight_filtration(&n)?;
    let split = deligne_splitting(&flag, &wf, Some(n.matrix()))?;
    Ok(Outcome { result: split.to_json(), verdict: Some(split.ok()) })
}

fn cmd_verify_lmhs(input: &Value) -> Result<Outcome, Failure> {
    let n = read_element(input)?;
    let flag = read_flag(input, n.dim())?;
    let record = is_lmhs(&flag, &n)?;
    let mut result = record.to_json();
    result["failed_axioms"] = json!(record.failed_axioms());
    Ok(Outcome { result, verdict: Some(record.verdict) })
}

/// Barycenter and near-vertex rays, the grid, then `count` seeded random points.
fn cone_samples(rank: usize, config: &Config) -> Vec<Vec<Rational>> {
    let mut out = sample_cone(rank, usize::MAX, SampleStrategy::VerticesBarycenter, config.seed);
    if config.grid_depth > 0 {
        out = sample_cone(rank, usize::MAX, SampleStrategy::Grid { depth: config.grid_depth }, config.seed);
    }
    let base = out.len();
    let mut seen: HashSet<Vec<Rational>> = out.iter().cloned().collect();
    for t in sample_cone(rank, base + config.samples, SampleStrategy::Random, config.seed) {
        if seen.insert(t.clone()) {
            out.push(t);
        }
    }
    out
}

fn cmd_verify_cone(input: &Value, config: &Config) -> Result<Outcome, Failure> {
    let cone = NilpotentCone::from_json(input)?;
    let validation = validate_cone(&cone);
    let samples = cone_samples(cone.rank(), config);
    let report = verify_theorem1(&cone, &samples);
    let verdict = validation.ok() && report.verdict;
    Ok(Outcome {
        result: json!({"validation": validation.to_json(), "orbit": report.to_json()}),
        verdict: Some(verdict),
    })
}

fn parse_signature(text: &str) -> Result<(usize, (usize, usize)), Failure> {
    let bad = || Failure::parse(format!("--s expects \"l:p,q\", got {text:?}"));
    let (l, pq) = text.split_once(':').ok_or_else(bad)?;
    let (p, q) = pq.split_once(',').ok_or_else(bad)?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    Ok((num(l)?, (num(p)?, num(q)?)))
}

/// The fixture file format read by the element subcommands.
fn cmd_representative(k: usize, m: &[usize], s: &[String]) -> Result<Value, Failure> {
    let mut sig = BTreeMap::new();
    for text in s {
        let (l, pq) = parse_signature(text)?;
        if sig.insert(l, pq).is_some() {
            return Err(Failure::parse(format!("--s given twice for l = {l}")));
        }
    }
    let inv = OrbitInvariants::new(m.to_vec(), sig);
    let (_, n) = construct_representative(&inv, k)?;
    let mut out = n.to_json();
    out["invariants"] = inv.to_json();
    Ok(out)
}

fn cmd_catalog(dim_max: usize) -> Value {
    let entries = catalog(dim_max);
    json!({
        "dim_max": dim_max,
        "count": entries.len(),
        "entries": entries.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
    })
}

fn write_file(path: &Path, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("json") + "\n";
    fs::write(path, text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn cmd_fixtures(config: &Config) -> Result<Value, Failure> {
    let dir = config.output.as_ref().ok_or_else(|| Failure::parse("fixtures needs --output DIR"))?;
    fs::create_dir_all(dir).map_err(|e| Failure::parse(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for f in hodge_fixtures::all() {
        let mut v = f.n.to_json();
        v["flag"] = f.flag.to_json();
        v["expect_lmhs"] = json!(f.expect_lmhs);
        let name = format!("lmhs_{}.json", file_stem(f.name));
        write_file(&dir.join(&name), &v)?;
        written.push(name);
    }
    for f in cone_fixtures::all() {
        let mut v = f.cone.to_json();
        v["expect_orbit"] = json!(f.expect_orbit);
        let name = format!("cone_{}.json", file_stem(&f.name));
        write_file(&dir.join(&name), &v)?;
        written.push(name);
    }
    Ok(json!({"directory": dir.display().to_string(), "files": written}))
}

fn config_json(cli: &Cli) -> Value {
    let c = &cli.config;
    json!({
        "subcommand": cli.command.name(),
        "input": c.input.as_ref().map(|p| p.display().to_string()),
        "output": c.output.as_ref().map(|p| p.display().to_string()),
        "samples": c.samples,
        "grid_depth": c.grid_depth,
        "seed": c.seed,
        "format": c.format.name(),
    })
}

/// `key.sub.0 = value` lines, one per leaf, in document order.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix} = {s}")),
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json") + "\n",
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", v, &mut lines);
            lines.join("\n") + "\n"
        }
    }
}

fn emit(v: &Value, config: &Config) -> Result<(), Failure> {
    let text = render(v, config.format);
    match &config.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let config = &cli.config;
    let outcome = match &cli.command {
        Command::Representative { k, m, s } => {
            emit(&cmd_representative(*k, m, s)?, config)?;
            return Ok(0);
        }
        Command::Catalog { dim_max } => {
            emit(&cmd_catalog(*dim_max), config)?;
            return Ok(0);
        }
        Command::Fixtures => {
            let summary = cmd_fixtures(config)?;
            print!("{}", render(&summary, config.format));
            return Ok(0);
        }
        _ => {
            let input = read_input(config)?;
            let outcome = match &cli.command {
                Command::Classify => cmd_classify(&input)?,
                Command::WeightFiltration => cmd_weight_filtration(&input)?,
                Command::Deligne => cmd_deligne(&input)?,
                Command::VerifyLmhs => cmd_verify_lmhs(&input)?,
                Command::VerifyCone => cmd_verify_cone(&input, config)?,
                _ => unreachable!(),
            };
            (input, outcome)
        }
    };
    let (input, Outcome { result, verdict }) = outcome;
    let mut report = Map::new();
    report.insert("command".into(), json!(cli.command.name()));
    report.insert("config".into(), config_json(cli));
    report.insert("input".into(), input);
    if let Some(v) = verdict {
        report.insert("verdict".into(), json!(v));
    }
    report.insert("result".into(), result);
    emit(&Value::Object(report), config)?;
    Ok(match verdict {
        Some(false) => 1,
        _ => 0,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
