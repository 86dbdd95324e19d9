//! The `triff` command line.
//!
//! Exit status: 0 on success, 1 when a code or graph fails a check (the
//! witness is printed), 2 on usage errors and malformed input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use trifferent_core::bounds::{self, ValueKind};
use trifferent_core::constructions::{
    one_bounded, recursive_construction, triple_construction_with, AffineIncidence, SigmaChoice,
};
use trifferent_core::graphs::{
    build_graph_r2, build_graph_r3, exhaustive_bipartition_check, random_bipartition_check, BipartitionStats,
    DerivedGraph, GraphKind, KstWitness, RightVertex,
};
use trifferent_core::search::{self, BoundRule, SearchCertificate, SearchConfig, ORACLE_CAP};
use trifferent_core::transform::{self, count_a_r};
use trifferent_core::{Code, Codeword, VerificationResult};

use crate::edges::{parse_edge_list, write_edge_list};
use crate::format::{parse, TriffFile};
use crate::parallel::verify_parallel;
use crate::report::{envelope, BoundReportDto, CertificateDto, ResultsTable};

#[derive(Debug, Parser, Serialize)]
#[command(name = "triff", version, about = "Construct, verify, search and bound trifferent codes")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Build an explicit code family.
    #[command(subcommand)]
    Construct(Construct),
    /// Check that a .triff code is trifferent.
    Verify(VerifyArgs),
    /// Exact maximum codes by branch-and-bound.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Numeric bounds on T(n) and T_b(n, r).
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Derived graphs of 2- and 3-bounded codes.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Statistics of |(C + v) ∩ A_r| over shifts v.
    SampleShift(SampleShiftArgs),
    /// Coordinate-by-coordinate pruning chain.
    Prune(CodeArg),
    /// Restrict to codewords with a 2 at one coordinate and delete it.
    Project(ProjectArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Construct {
    /// The 1-bounded code of size 2n.
    OneBounded {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One affine-plane layer over a base code.
    Triple {
        #[arg(long)]
        q: u64,
        /// Base code; defaults to the 1-bounded code with q² + q codewords.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Use seeded random fixed-point-free permutations instead of cyclic shifts.
        #[arg(long)]
        sigma_seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// t nested layers giving a 3^t-bounded code.
    Recursive {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        target: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
    workers: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum BoundArg {
    Candidates,
    SupportCap,
}

#[derive(Debug, Args, Serialize)]
struct SearchOpts {
    /// Node limit; exhausting it reports a lower bound.
    #[arg(long, default_value_t = SearchConfig::default().budget)]
    budget: u64,
    /// Do not fix the first codeword.
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long, value_enum, default_value_t = BoundArg::SupportCap)]
    bound: BoundArg,
    /// Confirm the optimum with the exhaustive oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = ORACLE_CAP)]
    oracle_cap: usize,
    /// Results table to update with optimal values.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Recorded only; the search is single-threaded and schedule-independent.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
    workers: u32,
    /// Also write the certificate JSON here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SearchCmd {
    /// T(n) over all of {0,1,2}^n.
    Max {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = SearchConfig::default().max_n)]
        max_n: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// T_b(n, r) over the strings with exactly r twos.
    MaxR {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = SearchConfig::default().universe_cap)]
        universe_cap: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum KindArg {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum BoundCmd {
    /// Every applicable bound on T(n).
    Report {
        #[arg(long)]
        n: u64,
        /// Results table written by `search --table`.
        #[arg(long)]
        exact_table: Option<PathBuf>,
        /// Codes whose rate is listed in the report.
        #[arg(long)]
        rate_code: Vec<PathBuf>,
    },
    /// (t−1)^{1/s}(u−s+1)v^{1−1/s} + (s−1)v.
    Zarankiewicz {
        #[arg(long)]
        u: u64,
        #[arg(long)]
        v: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
    },
    /// Density and transfer bound from a T_b value.
    Transfer {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        tb: f64,
    },
    /// r − ln T_b / ln n, and r − r^α when r is a power of 3.
    Deficit {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        tb: f64,
        #[arg(long, value_enum, default_value_t = KindArg::Exact)]
        kind: KindArg,
    },
}

#[derive(Debug, Args, Serialize)]
struct GraphInput {
    /// A 2- or 3-bounded .triff code.
    #[arg(required_unless_present = "edges")]
    code: Option<PathBuf>,
    /// An edge list instead of a code.
    #[arg(long, conflicts_with = "code")]
    edges: Option<PathBuf>,
    /// Vertex count for an edge list (default: largest vertex).
    #[arg(long, requires = "edges")]
    vertices: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GraphCmd {
    /// Derived graph summary and forbidden-subgraph check; writes the edge list.
    Build {
        code: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a K_{s,t}.
    KstCheck {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
    },
    /// Fraction of edges crossing equi-bipartitions.
    Bipartition {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, required_unless_present = "exhaustive")]
        seed: Option<u64>,
        #[arg(long, required_unless_present = "exhaustive")]
        trials: Option<u64>,
        #[arg(long, conflicts_with_all = ["seed", "trials"])]
        exhaustive: bool,
    },
}

#[derive(Debug, Args, Serialize)]
struct SampleShiftArgs {
    code: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long, required_unless_present = "exhaustive")]
    seed: Option<u64>,
    #[arg(long, required_unless_present = "exhaustive")]
    trials: Option<u64>,
    /// Average over all 3^n shifts instead of sampling.
    #[arg(long, conflicts_with_all = ["seed", "trials"])]
    exhaustive: bool,
    /// Write the best r-bounded code (C + v) ∩ A_r found.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct CodeArg {
    code: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct ProjectArgs {
    code: PathBuf,
    /// 1-based coordinate.
    #[arg(long, required_unless_present = "best", conflicts_with = "best")]
    coordinate: Option<usize>,
    /// Use the coordinate keeping the most codewords.
    #[arg(long)]
    best: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Doc {
    Json(Value),
    Text(String),
}

struct Output {
    doc: Doc,
    status: i32,
    /// Printed to stderr.
    note: Option<String>,
}

impl Output {
    fn ok(doc: Value) -> Self {
        Self { doc: Doc::Json(doc), status: 0, note: None }
    }
}

/// Messages for exit status 2.
type Fallible<T> = Result<T, String>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return e.exit_code();
        }
    };
    let config = serde_json::to_value(&cli).expect("config serializes");
    match dispatch(&cli, &config) {
        Ok(output) => {
            let text = match output.doc {
                Doc::Text(t) => t,
                Doc::Json(v) if cli.format == Format::Table => render_table(&v),
                Doc::Json(v) => {
                    let mut s = serde_json::to_string_pretty(&v).expect("json");
                    s.push('\n');
                    s
                }
            };
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: writing output: {e}");
                return 2;
            }
            if let Some(note) = output.note {
                let _ = writeln!(err, "{note}");
            }
            output.status
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn dispatch(cli: &Cli, config: &Value) -> Fallible<Output> {
    match &cli.command {
        Command::Construct(c) => construct(c, config),
        Command::Verify(a) => verify(a, config),
        Command::Search(s) => search_cmd(s, config),
        Command::Bound(b) => bound(b, config),
        Command::Graph(g) => graph(g, config),
        Command::SampleShift(a) => sample_shift(a, config),
        Command::Prune(a) => prune(a, config),
        Command::Project(a) => project(a, config),
    }
}

fn read_text(path: &Path) -> Fallible<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_code(path: &Path) -> Fallible<TriffFile> {
    parse(&read_text(path)?).map_err(|e| format!("{}:{}: {}", path.display(), e.line, e.message))
}

fn write_out(path: &Path, contents: &str) -> Fallible<()> {
    std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn core_err(e: trifferent_core::Error) -> String {
    e.to_string()
}

fn witness_json(code: &Code, w: [usize; 3]) -> Value {
    json!({
        "indices": w.map(|i| i + 1),
        "codewords": w.map(|i| code.words()[i].to_string()),
    })
}

fn witness_note(code: &Code, w: [usize; 3]) -> String {
    let words = w.map(|i| code.words()[i].to_string());
    format!(
        "not trifferent: codewords {}, {}, {} ({}, {}, {}) have no coordinate carrying 0, 1 and 2",
        w[0] + 1,
        w[1] + 1,
        w[2] + 1,
        words[0],
        words[1],
        words[2]
    )
}

/// A failing verification as an exit-1 output.
fn not_trifferent(command: &str, config: &Value, code: &Code, w: [usize; 3]) -> Output {
    Output {
        doc: Doc::Json(envelope(
            command,
            config,
            json!({
                "n": code.block_length(),
                "size": code.len(),
                "trifferent": false,
                "witness": witness_json(code, w),
            }),
        )),
        status: 1,
        note: Some(witness_note(code, w)),
    }
}

fn code_summary(code: &Code, result: &VerificationResult) -> Value {
    json!({
        "n": code.block_length(),
        "size": code.len(),
        "r_bound": code.r_bound(),
        "trifferent": result.is_trifferent(),
        "witness": result.witness().map(|w| witness_json(code, w)),
        "rate": bounds::rate(code),
        "max_support_multiplicity": code.max_support_multiplicity(),
    })
}

fn emit_code(command: &str, config: &Value, file: TriffFile, output: &Option<PathBuf>, extra: Value) -> Fallible<Output> {
    let result = verify_parallel(&file.code, 1);
    if let Some(w) = result.witness() {
        return Ok(not_trifferent(command, config, &file.code, w));
    }
    let file = file.with_comment(format!("config: {config}"));
    match output {
        Some(path) => {
            write_out(path, &file.to_string())?;
            let mut body = code_summary(&file.code, &result);
            merge(&mut body, extra);
            merge(&mut body, json!({ "output": path }));
            Ok(Output::ok(envelope(command, config, body)))
        }
        None => Ok(Output { doc: Doc::Text(file.to_string()), status: 0, note: None }),
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn construct(c: &Construct, config: &Value) -> Fallible<Output> {
    match c {
        Construct::OneBounded { n, output } => {
            let code = one_bounded(*n).map_err(core_err)?;
            let file = TriffFile::new(code).with_comment(format!("construction: one-bounded n={n}"));
            emit_code("construct one-bounded", config, file, output, json!({}))
        }
        Construct::Triple { q, base, sigma_seed, output } => {
            let sigma = match sigma_seed {
                Some(seed) => SigmaChoice::Random { seed: *seed },
                None => SigmaChoice::Cyclic,
            };
            let plane = AffineIncidence::with_sigma(*q, sigma).map_err(core_err)?;
            let needed = plane.lines().len();
            let (base_code, base_name) = match base {
                Some(path) => (read_code(path)?.code, path.display().to_string()),
                None => {
                    let k = needed.div_ceil(2);
                    (one_bounded(k).map_err(core_err)?, format!("one-bounded n={k}"))
                }
            };
            let base_check = verify_parallel(&base_code, 1);
            if let Some(w) = base_check.witness() {
                return Ok(not_trifferent("construct triple", config, &base_code, w));
            }
            let code = triple_construction_with(&plane, &base_code).map_err(core_err)?;
            let sigma_name = match sigma {
                SigmaChoice::Cyclic => "cyclic".to_string(),
                SigmaChoice::Random { seed } => format!("random seed={seed}"),
            };
            let file = TriffFile::new(code)
                .with_comment(format!("construction: triple q={q}"))
                .with_comment(format!("sigma: {sigma_name}"))
                .with_comment(format!("base: {base_name}"));
            let extra = json!({ "q": q, "sigma": sigma_name, "sigma_seed": sigma_seed, "base": base_name });
            emit_code("construct triple", config, file, output, extra)
        }
        Construct::Recursive { t, target, output } => {
            let rc = recursive_construction(*t, *target).map_err(core_err)?;
            let primes: Vec<String> = rc.primes.iter().map(u64::to_string).collect();
            let file = TriffFile::new(rc.code)
                .with_comment(format!("construction: recursive t={t} target={target}"))
                .with_comment(format!("primes (innermost first): {}", primes.join(" ")))
                .with_comment("sigma: cyclic");
            let extra = json!({ "t": t, "primes": rc.primes });
            emit_code("construct recursive", config, file, output, extra)
        }
    }
}

fn verify(a: &VerifyArgs, config: &Value) -> Fallible<Output> {
    let file = read_code(&a.file)?;
    let result = verify_parallel(&file.code, a.workers as usize);
    let doc = envelope("verify", config, code_summary(&file.code, &result));
    Ok(Output {
        doc: Doc::Json(doc),
        status: if result.is_trifferent() { 0 } else { 1 },
        note: result.witness().map(|w| witness_note(&file.code, w)),
    })
}

fn search_cmd(s: &SearchCmd, config: &Value) -> Fallible<Output> {
    let (opts, command) = match s {
        SearchCmd::Max { opts, .. } => (opts, "search max"),
        SearchCmd::MaxR { opts, .. } => (opts, "search max-r"),
    };
    let mut cfg = SearchConfig {
        budget: opts.budget,
        symmetry_breaking: !opts.no_symmetry,
        bound: match opts.bound {
            BoundArg::Candidates => BoundRule::Candidates,
            BoundArg::SupportCap => BoundRule::SupportCap,
        },
        ..SearchConfig::default()
    };
    let mut cert: SearchCertificate = match s {
        SearchCmd::Max { n, max_n, .. } => {
            cfg.max_n = *max_n;
            search::max_trifferent(*n, &cfg)
        }
        SearchCmd::MaxR { n, r, universe_cap, .. } => {
            cfg.universe_cap = *universe_cap;
            search::max_r_bounded(*n, *r, &cfg)
        }
    }
    .map_err(core_err)?;
    let reverified = verify_parallel(&cert.best_code, opts.workers as usize).is_trifferent()
        && cert.r.is_none_or(|r| cert.best_code.is_r_bounded(r));
    let mut oracle = Value::Null;
    let mut status = if reverified { 0 } else { 1 };
    let mut note = (!reverified).then(|| "certificate code failed re-verification".to_string());
    if opts.oracle {
        if cert.is_optimal() {
            let agrees = cert.check_with_oracle(opts.oracle_cap).map_err(core_err)?;
            oracle = json!({ "agrees": agrees });
            if !agrees {
                status = 1;
                note = Some("oracle maximum differs from the branch-and-bound optimum".into());
            }
        } else {
            oracle = json!({ "skipped": "budget exhausted" });
        }
    }
    let mut table_updated = false;
    if let Some(path) = &opts.table {
        let mut table = if path.exists() {
            ResultsTable::parse(&read_text(path)?).map_err(|e| format!("{}: {e}", path.display()))?
        } else {
            ResultsTable::default()
        };
        if status == 0 {
            table_updated = table.record(&cert);
        }
        write_out(path, &table.to_json())?;
    }
    let mut body = serde_json::to_value(CertificateDto::from(&cert)).expect("certificate serializes");
    merge(&mut body, json!({ "reverified": reverified, "oracle": oracle, "table_updated": table_updated }));
    let doc = envelope(command, config, body);
    if let Some(path) = &opts.output {
        write_out(path, &(serde_json::to_string_pretty(&doc).expect("json") + "\n"))?;
    }
    Ok(Output { doc: Doc::Json(doc), status, note })
}

fn bound(b: &BoundCmd, config: &Value) -> Fallible<Output> {
    match b {
        BoundCmd::Report { n, exact_table, rate_code } => {
            let table = match exact_table {
                Some(path) => Some(
                    ResultsTable::parse(&read_text(path)?)
                        .map_err(|e| format!("{}: {e}", path.display()))?
                        .to_exact_table(),
                ),
                None => None,
            };
            let mut report = bounds::bound_report(*n, table.as_ref()).map_err(core_err)?;
            for path in rate_code {
                let file = read_code(path)?;
                report.add_rate(path.display().to_string(), &file.code);
            }
            let body = serde_json::to_value(BoundReportDto::from(&report)).expect("report serializes");
            Ok(Output::ok(envelope("bound report", config, body)))
        }
        BoundCmd::Zarankiewicz { u, v, s, t } => {
            let value = bounds::zarankiewicz_bound(*u, *v, *s, *t).map_err(core_err)?;
            let body = json!({ "value": value, "edge_bound": value.floor() });
            Ok(Output::ok(envelope("bound zarankiewicz", config, body)))
        }
        BoundCmd::Transfer { n, r, tb } => {
            let body = json!({
                "rho_b": bounds::rho_b(*n, *r, *tb).map_err(core_err)?,
                "transfer": finite(bounds::transfer_bound(*n, *r, *tb).map_err(core_err)?),
                "log2_transfer": bounds::log2_transfer_bound(*n, *r, *tb).map_err(core_err)?,
                "elias": finite(bounds::elias_bound(*n)),
                "log2_elias": bounds::log2_elias_bound(*n),
            });
            Ok(Output::ok(envelope("bound transfer", config, body)))
        }
        BoundCmd::Deficit { n, r, tb, kind } => {
            let kind = match kind {
                KindArg::Exact => ValueKind::Exact,
                KindArg::LowerBound => ValueKind::LowerBound,
                KindArg::UpperBound => ValueKind::UpperBound,
            };
            let d = bounds::deficit(*n, *r, *tb, kind).map_err(core_err)?;
            let body = json!({
                "delta": d.delta,
                "tb_kind": kind_name(d.tb_kind),
                "delta_kind": kind_name(d.delta_kind()),
                "alpha": bounds::alpha(),
                "deficit_upper": bounds::deficit_upper(*r).ok(),
            });
            Ok(Output::ok(envelope("bound deficit", config, body)))
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn kind_name(k: ValueKind) -> &'static str {
    match k {
        ValueKind::Exact => "exact",
        ValueKind::LowerBound => "lower-bound",
        ValueKind::UpperBound => "upper-bound",
    }
}

fn derived_graph(code: &Code) -> Fallible<DerivedGraph> {
    match code.r_bound() {
        Some(2) => build_graph_r2(code).map_err(core_err),
        Some(3) => build_graph_r3(code).map_err(core_err),
        _ => Err("derived graphs need a nonempty 2- or 3-bounded code".into()),
    }
}

fn load_graph(input: &GraphInput) -> Fallible<DerivedGraph> {
    match (&input.code, &input.edges) {
        (Some(path), _) => derived_graph(&read_code(path)?.code),
        (None, Some(path)) => parse_edge_list(&read_text(path)?, input.vertices)
            .map_err(|e| format!("{}:{}: {}", path.display(), e.line, e.message)),
        (None, None) => Err("a code or --edges file is required".into()),
    }
}

fn right_name(r: RightVertex) -> String {
    match r {
        RightVertex::Coord(j) => (j + 1).to_string(),
        RightVertex::Pair(j, k) => format!("{},{}", j + 1, k + 1),
    }
}

fn kst_json(s: u64, t: u64, graph: &DerivedGraph, w: &Option<KstWitness>) -> Value {
    json!({
        "s": s,
        "t": t,
        "free": w.is_none(),
        "witness": w.as_ref().map(|w| json!({
            "left": w.left.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "right": w.right.iter().map(|&r| right_name(r)).collect::<Vec<_>>(),
            "validated": w.validate(graph),
        })),
    })
}

fn kst_note(s: u64, t: u64, w: &KstWitness) -> String {
    let left: Vec<String> = w.left.iter().map(|i| (i + 1).to_string()).collect();
    let right: Vec<String> = w.right.iter().map(|&r| right_name(r)).collect();
    format!("contains K_{{{s},{t}}}: left {{{}}}, right {{{}}}", left.join(" "), right.join(" "))
}

fn graph_summary(graph: &DerivedGraph) -> Value {
    json!({
        "kind": match graph.kind() {
            GraphKind::Simple => "simple",
            GraphKind::Bipartite => "bipartite",
        },
        "left_vertices": graph.left_count(),
        "right_vertices": graph.right_vertices().len(),
        "edges": graph.edge_count(),
        "multiplicity_histogram": graph.multiplicity_histogram(),
        "max_multiplicity": graph.max_multiplicity(),
    })
}

fn usize_of(x: u64) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

fn graph(g: &GraphCmd, config: &Value) -> Fallible<Output> {
    match g {
        GraphCmd::Build { code, output } => {
            let file = read_code(code)?;
            let graph = derived_graph(&file.code)?;
            let (s, t) = if graph.kind() == GraphKind::Simple { bounds::R2_FORBIDDEN } else { bounds::R3_FORBIDDEN };
            let witness = graph.contains_kst(usize_of(s), usize_of(t));
            if let Some(path) = output {
                write_out(path, &write_edge_list(&graph))?;
            }
            let mut body = graph_summary(&graph);
            merge(
                &mut body,
                json!({
                    "n": file.code.block_length(),
                    "code_size": file.code.len(),
                    "trifferent": verify_parallel(&file.code, 1).is_trifferent(),
                    "freeness": [kst_json(s, t, &graph, &witness)],
                    "output": output,
                }),
            );
            Ok(Output {
                doc: Doc::Json(envelope("graph build", config, body)),
                status: if witness.is_some() { 1 } else { 0 },
                note: witness.as_ref().map(|w| kst_note(s, t, w)),
            })
        }
        GraphCmd::KstCheck { input, s, t } => {
            let graph = load_graph(input)?;
            let witness = graph.contains_kst(usize_of(*s), usize_of(*t));
            let mut body = graph_summary(&graph);
            merge(&mut body, kst_json(*s, *t, &graph, &witness));
            Ok(Output {
                doc: Doc::Json(envelope("graph kst-check", config, body)),
                status: if witness.is_some() { 1 } else { 0 },
                note: witness.as_ref().map(|w| kst_note(*s, *t, w)),
            })
        }
        GraphCmd::Bipartition { input, seed, trials, exhaustive } => {
            let graph = load_graph(input)?;
            let stats = if *exhaustive {
                exhaustive_bipartition_check(&graph)
            } else {
                random_bipartition_check(&graph, seed.expect("clap requires seed"), trials.expect("clap requires trials"))
            }
            .map_err(core_err)?;
            let mut body = graph_summary(&graph);
            merge(&mut body, bipartition_json(&stats));
            Ok(Output::ok(envelope("graph bipartition", config, body)))
        }
    }
}

fn bipartition_json(s: &BipartitionStats) -> Value {
    json!({
        "bipartitions": s.bipartitions,
        "mean_fraction": s.mean_fraction,
        "min_fraction": s.min_fraction,
        "max_fraction": s.max_fraction,
        "best_crossing": s.best_crossing,
        "edge_crossing_probability": s.edge_crossing_probability,
    })
}

/// Input code that must verify; `Err(output)` is the exit-1 report.
fn trifferent_input(command: &str, config: &Value, path: &Path) -> Fallible<Result<TriffFile, Output>> {
    let file = read_code(path)?;
    Ok(match verify_parallel(&file.code, 1).witness() {
        Some(w) => Err(not_trifferent(command, config, &file.code, w)),
        None => Ok(file),
    })
}

fn restrict_to_a_r(code: &Code, v: &Codeword, r: usize) -> Fallible<Code> {
    let shifted = transform::shift(code, v).map_err(core_err)?;
    let words = shifted.into_words().into_iter().filter(|w| w.count_twos() == r).collect();
    Code::new(code.block_length(), words).map_err(core_err)
}

fn sample_shift(a: &SampleShiftArgs, config: &Value) -> Fallible<Output> {
    let file = match trifferent_input("sample-shift", config, &a.code)? {
        Ok(f) => f,
        Err(out) => return Ok(out),
    };
    let code = &file.code;
    let n = code.block_length();
    let a_r = count_a_r(n, a.r).map_err(core_err)?;
    let exact = a_r as f64 * code.len() as f64 / trifferent_core::math::pow3(n as u64);
    let (mut body, best_shift) = if a.exhaustive {
        let t = transform::shift_density_exhaustive(code, a.r).map_err(core_err)?;
        let identity = t.total == a_r * code.len() as u128;
        let body = json!({
            "mode": "exhaustive",
            "shifts": t.shifts.to_string(),
            "total": t.total.to_string(),
            "mean": t.mean(),
            "max": t.max,
            "best_shift": t.best_shift.to_string(),
            "total_equals_a_r_times_size": identity,
        });
        (body, t.best_shift)
    } else {
        let seed = a.seed.expect("clap requires seed");
        let trials = a.trials.expect("clap requires trials");
        let s = transform::shift_density_sample(code, a.r, trials, seed).map_err(core_err)?;
        let body = json!({
            "mode": "sample",
            "seed": s.seed,
            "trials": s.trials,
            "mean": s.mean,
            "min": s.min,
            "max": s.max,
            "relative_error": if exact > 0.0 { Some((s.mean - exact).abs() / exact) } else { None },
            "best_shift": s.best_shift.to_string(),
        });
        (body, s.best_shift)
    };
    let best = restrict_to_a_r(code, &best_shift, a.r)?;
    merge(
        &mut body,
        json!({
            "n": n,
            "size": code.len(),
            "r": a.r,
            "count_a_r": a_r.to_string(),
            "exact_expectation": exact,
            "certified_tb_lower_bound": best.len(),
            "output": a.output,
        }),
    );
    if let Some(path) = &a.output {
        let mut out = TriffFile::new(best).with_comment(format!("config: {config}"));
        out.r = Some(a.r);
        out = out.with_comment(format!("shift: {best_shift}"));
        write_out(path, &out.to_string())?;
    }
    Ok(Output::ok(envelope("sample-shift", config, body)))
}

fn prune(a: &CodeArg, config: &Value) -> Fallible<Output> {
    let file = match trifferent_input("prune", config, &a.code)? {
        Ok(f) => f,
        Err(out) => return Ok(out),
    };
    let chain = transform::prune(&file.code).map_err(core_err)?;
    let sizes: Vec<usize> = chain.codes.iter().map(Code::len).collect();
    let retention = sizes.windows(2).all(|p| p[1] >= p[0] - p[0] / 3);
    let body = json!({
        "n": file.code.block_length(),
        "sizes": sizes,
        "removed_symbols": chain.removed,
        "retention_holds": retention,
        "final_size": chain.last().len(),
        "final_code": chain.last().words().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(Output {
        doc: Doc::Json(envelope("prune", config, body)),
        status: if retention { 0 } else { 1 },
        note: (!retention).then(|| "pruning retention inequality violated".to_string()),
    })
}

fn project(a: &ProjectArgs, config: &Value) -> Fallible<Output> {
    let file = match trifferent_input("project", config, &a.code)? {
        Ok(f) => f,
        Err(out) => return Ok(out),
    };
    let code = &file.code;
    let n = code.block_length();
    let (i, projected) = match a.coordinate {
        Some(c) => {
            if c == 0 || c > n {
                return Err(format!("coordinate {c} is outside 1..={n}"));
            }
            (c - 1, transform::project(code, c - 1).map_err(core_err)?)
        }
        None => transform::best_project(code).map_err(core_err)?,
    };
    let sizes = transform::projection_sizes(code);
    let result = verify_parallel(&projected, 1);
    let mut body = code_summary(&projected, &result);
    merge(
        &mut body,
        json!({
            "coordinate": i + 1,
            "input_size": code.len(),
            "input_r_bound": code.r_bound(),
            "restricted_sizes": sizes,
            "output": a.output,
        }),
    );
    let out_file = TriffFile::new(projected)
        .with_comment(format!("config: {config}"))
        .with_comment(format!("projection at coordinate {}", i + 1));
    match &a.output {
        Some(path) => write_out(path, &out_file.to_string())?,
        None => merge(&mut body, json!({ "code": out_file.to_string() })),
    }
    Ok(Output {
        doc: Doc::Json(envelope("project", config, body)),
        status: if result.is_trifferent() { 0 } else { 1 },
        note: result.witness().map(|w| witness_note(&out_file.code, w)),
    })
}

/// `--format table`: the config line followed by aligned rows.
fn render_table(doc: &Value) -> String {
    let mut out = String::new();
    writeln!(out, "# config: {}", doc["config"]).unwrap();
    if doc["command"] == "bound report" {
        let entries = doc["entries"].as_array().cloned().unwrap_or_default();
        let width = entries.iter().filter_map(|e| e["name"].as_str()).map(str::len).max().unwrap_or(4).max(4);
        writeln!(out, "{:<width$}  {:>14}  {:>14}  {:<5}  provenance", "name", "value", "log2", "valid").unwrap();
        for e in &entries {
            let value = e["value"].as_f64().map_or("inf".to_string(), |v| format!("{v:.6e}"));
            let log2 = e["log2_value"].as_f64().map_or(String::new(), |v| format!("{v:.6}"));
            writeln!(
                out,
                "{:<width$}  {value:>14}  {log2:>14}  {:<5}  {}",
                e["name"].as_str().unwrap_or(""),
                e["valid"],
                e["provenance"].as_str().unwrap_or("")
            )
            .unwrap();
        }
        writeln!(out, "best: {}", doc["best"].as_str().unwrap_or("")).unwrap();
        writeln!(out, "crossover N0: {}", doc["crossover_N0"]).unwrap();
        for r in doc["rates"].as_array().into_iter().flatten() {
            writeln!(out, "rate {}: {}", r["label"].as_str().unwrap_or(""), r["rate"]).unwrap();
        }
        return out;
    }
    let Some(map) = doc.as_object() else { return out };
    let rows: Vec<(&String, String)> = map
        .iter()
        .filter(|(k, _)| *k != "config")
        .map(|(k, v)| (k, v.as_str().map_or_else(|| v.to_string(), str::to_string)))
        .collect();
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        if v.contains('\n') {
            writeln!(out, "{k}:").unwrap();
            out.push_str(&v);
        } else {
            writeln!(out, "{k:<width$}  {v}").unwrap();
        }
    }
    out
}
