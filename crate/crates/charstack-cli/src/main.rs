//! JSON-driven command line for exact character-stack computations.
//!
//! `charstack run problem.json` loads a problem specification (a group,
//! named elements, presentations and representations, and an ordered task
//! list), executes every task, and prints one report — machine-readable
//! JSON or aligned text. `charstack scan` drives the seeded commuting-pair
//! families directly.
//!
//! Exit codes: 0 success, 2 schema or reference errors in the input,
//! 3 mathematical precondition failures (naming the failing task).
//! JSON output is byte-identical across runs for identical input: anything
//! nondeterministic (timing) goes to stderr.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use charstack::complex::CochainComplex;
use charstack::lie::{GroupElement, GroupKind, LieContext};
use charstack::linalg::QMatrix;
use charstack::locsys::{
    boundary_monodromies, goldman_pairing, leaf_tangent, poisson_bivector, relative_complex,
    restriction_map, sphere_tangent, tangent_complex, BivectorReport, GoldmanReport, LeafReport,
    LeafTarget,
};
use charstack::presentation::{GroupPresentation, Representation, Word};
use charstack::strict::{
    classify_pair, double_point_leaf_model, strict_scan, PairFamily, PairReport, ScanSummary,
};

#[derive(Parser)]
#[command(name = "charstack", version, about = "Exact tangent complexes and strictness tests for character stacks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the tasks of a JSON problem specification.
    Run {
        /// Path to the problem file.
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Execute independent tasks on a thread pool; output order is
        /// unchanged.
        #[arg(long)]
        parallel: bool,
    },
    /// Classify a seeded batch of commuting pairs from one family.
    Scan {
        /// diagonal, polynomial_in, block_sl2 or unipotent_diagonal_pair.
        #[arg(long)]
        family: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Group as KIND:N, e.g. SL:4 or GL:2.
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Input-side problems exit with 2, failed mathematical preconditions
/// with 3.
enum Failure {
    Schema(String),
    Math(String),
}

impl Failure {
    fn schema(msg: impl Into<String>) -> Failure {
        Failure::Schema(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            spec,
            format,
            parallel,
        } => run_command(&spec, format, parallel),
        Command::Scan {
            family,
            count,
            seed,
            group,
            format,
        } => scan_command(&family, count, seed, &group, format),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Schema(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

// ---- problem specification ------------------------------------------------

const SPEC_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemSpec {
    spec_version: u32,
    group: GroupSpec,
    #[serde(default)]
    elements: BTreeMap<String, QMatrix>,
    #[serde(default)]
    presentations: BTreeMap<String, PresentationSpec>,
    #[serde(default)]
    representations: BTreeMap<String, RepresentationSpec>,
    #[serde(default)]
    tasks: Vec<TaskSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    kind: GroupKind,
    n: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationSpec {
    generators: usize,
    #[serde(default)]
    relators: Vec<String>,
    #[serde(default)]
    boundary_words: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationSpec {
    presentation: String,
    images: Vec<String>,
}

#[derive(Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
enum TaskSpec {
    ClassifyPair {
        name: Option<String>,
        left: String,
        right: String,
        #[serde(default)]
        require_commuting: bool,
    },
    StrictScan {
        name: Option<String>,
        family: String,
        count: usize,
        seed: u64,
    },
    Tangent {
        name: Option<String>,
        representation: String,
    },
    Sphere {
        name: Option<String>,
        dimension: usize,
        monodromy: Option<String>,
    },
    Restriction {
        name: Option<String>,
        representation: String,
    },
    Relative {
        name: Option<String>,
        representation: String,
    },
    Goldman {
        name: Option<String>,
        representation: String,
    },
    Bivector {
        name: Option<String>,
        representation: String,
    },
    Leaf {
        name: Option<String>,
        representation: String,
        targets: Option<Vec<LeafTargetSpec>>,
    },
    DoublePointLeaf {
        name: Option<String>,
        left: String,
        right: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LeafTargetSpec {
    class_rep: String,
    conjugator: Option<String>,
}

impl TaskSpec {
    fn kind(&self) -> &'static str {
        match self {
            TaskSpec::ClassifyPair { .. } => "classify_pair",
            TaskSpec::StrictScan { .. } => "strict_scan",
            TaskSpec::Tangent { .. } => "tangent",
            TaskSpec::Sphere { .. } => "sphere",
            TaskSpec::Restriction { .. } => "restriction",
            TaskSpec::Relative { .. } => "relative",
            TaskSpec::Goldman { .. } => "goldman",
            TaskSpec::Bivector { .. } => "bivector",
            TaskSpec::Leaf { .. } => "leaf",
            TaskSpec::DoublePointLeaf { .. } => "double_point_leaf",
        }
    }

    fn display_name(&self, index: usize) -> String {
        let given = match self {
            TaskSpec::ClassifyPair { name, .. }
            | TaskSpec::StrictScan { name, .. }
            | TaskSpec::Tangent { name, .. }
            | TaskSpec::Sphere { name, .. }
            | TaskSpec::Restriction { name, .. }
            | TaskSpec::Relative { name, .. }
            | TaskSpec::Goldman { name, .. }
            | TaskSpec::Bivector { name, .. }
            | TaskSpec::Leaf { name, .. }
            | TaskSpec::DoublePointLeaf { name, .. } => name,
        };
        match given {
            Some(n) => n.clone(),
            None => format!("{}:{}", index + 1, self.kind()),
        }
    }

    fn element_refs(&self) -> Vec<&str> {
        match self {
            TaskSpec::ClassifyPair { left, right, .. }
            | TaskSpec::DoublePointLeaf { left, right, .. } => vec![left, right],
            TaskSpec::Sphere { monodromy, .. } => {
                monodromy.iter().map(String::as_str).collect()
            }
            TaskSpec::Leaf { targets, .. } => targets
                .iter()
                .flatten()
                .flat_map(|t| {
                    std::iter::once(t.class_rep.as_str())
                        .chain(t.conjugator.iter().map(String::as_str))
                })
                .collect(),
            _ => vec![],
        }
    }

    fn representation_ref(&self) -> Option<&str> {
        match self {
            TaskSpec::Tangent { representation, .. }
            | TaskSpec::Restriction { representation, .. }
            | TaskSpec::Relative { representation, .. }
            | TaskSpec::Goldman { representation, .. }
            | TaskSpec::Bivector { representation, .. }
            | TaskSpec::Leaf { representation, .. } => Some(representation),
            _ => None,
        }
    }
}

// ---- report ----------------------------------------------------------------

#[derive(Serialize)]
struct RunReport {
    tool_version: &'static str,
    spec_version: u32,
    input_digest: String,
    tasks: Vec<TaskRecord>,
}

#[derive(Serialize)]
struct TaskRecord {
    name: String,
    task: &'static str,
    result: TaskResult,
}

#[derive(Serialize)]
#[serde(untagged)]
enum TaskResult {
    Pair(Box<PairReport>),
    Scan(ScanSummary),
    Complex(ComplexOutput),
    Restriction(Box<RestrictionOutput>),
    Goldman(GoldmanReport),
    Bivector(BivectorReport),
    Leaf(Box<LeafReport>),
}

#[derive(Serialize)]
struct ComplexOutput {
    complex: CochainComplex,
    cohomology: Vec<(i64, usize)>,
    euler_char: i64,
}

impl ComplexOutput {
    fn of(complex: CochainComplex) -> ComplexOutput {
        let cohomology = complex.cohomology_dims();
        let euler_char = complex.euler_char();
        ComplexOutput {
            complex,
            cohomology,
            euler_char,
        }
    }
}

#[derive(Serialize)]
struct RestrictionOutput {
    source: ComplexOutput,
    target: ComplexOutput,
    /// Rank of the induced map on cohomology per degree.
    induced_ranks: Vec<(i64, usize)>,
}

// ---- run -------------------------------------------------------------------

struct Workspace {
    ctx: Arc<LieContext>,
    elements: BTreeMap<String, GroupElement>,
    representations: BTreeMap<String, Representation>,
}

fn run_command(path: &PathBuf, format: Format, parallel: bool) -> Result<(), Failure> {
    let started = Instant::now();
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::schema(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex_digest(&bytes);
    let spec: ProblemSpec = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::schema(format!("{}: {e}", path.display())))?;
    if spec.spec_version != SPEC_VERSION {
        return Err(Failure::schema(format!(
            "unsupported spec_version {} (this tool reads version {SPEC_VERSION})",
            spec.spec_version
        )));
    }
    let workspace = build_workspace(&spec)?;
    validate_references(&spec, &workspace)?;

    let jobs: Vec<(String, &TaskSpec)> = spec
        .tasks
        .iter()
        .enumerate()
        .map(|(i, t)| (t.display_name(i), t))
        .collect();
    let results: Vec<Result<TaskRecord, Failure>> = if parallel {
        jobs.par_iter()
            .map(|(name, task)| execute_task(&workspace, name, task))
            .collect()
    } else {
        jobs.iter()
            .map(|(name, task)| execute_task(&workspace, name, task))
            .collect()
    };
    let mut tasks = Vec::with_capacity(results.len());
    for r in results {
        tasks.push(r?);
    }
    let report = RunReport {
        tool_version: env!("CARGO_PKG_VERSION"),
        spec_version: SPEC_VERSION,
        input_digest: digest,
        tasks,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Table => print!("{}", render_run_table(&report)),
    }
    eprintln!(
        "{} task(s) in {:.1} ms",
        report.tasks.len(),
        started.elapsed().as_secs_f64() * 1e3
    );
    Ok(())
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    let mut s = String::with_capacity(7 + 2 * out.len());
    s.push_str("sha256:");
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

fn build_workspace(spec: &ProblemSpec) -> Result<Workspace, Failure> {
    let ctx = match spec.group.kind {
        GroupKind::SL => LieContext::sl(spec.group.n),
        GroupKind::GL => LieContext::gl(spec.group.n),
    }
    .map_err(|e| Failure::schema(format!("group: {e}")))?;

    let mut elements = BTreeMap::new();
    for (name, mat) in &spec.elements {
        let g = GroupElement::new(&ctx, mat.clone())
            .map_err(|e| Failure::Math(format!("element {name:?}: {e}")))?;
        elements.insert(name.clone(), g);
    }

    let mut presentations = BTreeMap::new();
    for (name, p) in &spec.presentations {
        let parse_words = |words: &[String]| -> Result<Vec<Word>, Failure> {
            words
                .iter()
                .map(|w| {
                    Word::parse(w)
                        .map_err(|e| Failure::schema(format!("presentation {name:?}: {e}")))
                })
                .collect()
        };
        let pres = GroupPresentation::with_boundary(
            p.generators,
            parse_words(&p.relators)?,
            parse_words(&p.boundary_words)?,
        )
        .map_err(|e| Failure::schema(format!("presentation {name:?}: {e}")))?;
        presentations.insert(name.clone(), pres);
    }

    let mut representations = BTreeMap::new();
    for (name, r) in &spec.representations {
        let pres = presentations.get(&r.presentation).ok_or_else(|| {
            Failure::schema(format!(
                "representation {name:?} references undefined presentation {:?}",
                r.presentation
            ))
        })?;
        let images: Vec<GroupElement> = r
            .images
            .iter()
            .map(|img| {
                elements.get(img).cloned().ok_or_else(|| {
                    Failure::schema(format!(
                        "representation {name:?} references undefined element {img:?}"
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        let rep = Representation::new(pres.clone(), images)
            .map_err(|e| Failure::Math(format!("representation {name:?}: {e}")))?;
        representations.insert(name.clone(), rep);
    }

    Ok(Workspace {
        ctx,
        elements,
        representations,
    })
}

fn validate_references(spec: &ProblemSpec, ws: &Workspace) -> Result<(), Failure> {
    let families: BTreeSet<&str> = PairFamily::ALL.iter().map(|f| f.name()).collect();
    for (i, task) in spec.tasks.iter().enumerate() {
        let name = task.display_name(i);
        for e in task.element_refs() {
            if !ws.elements.contains_key(e) {
                return Err(Failure::schema(format!(
                    "task {name:?} references undefined element {e:?}"
                )));
            }
        }
        if let Some(r) = task.representation_ref() {
            if !ws.representations.contains_key(r) {
                return Err(Failure::schema(format!(
                    "task {name:?} references undefined representation {r:?}"
                )));
            }
        }
        if let TaskSpec::StrictScan { family, .. } = task {
            if !families.contains(family.as_str()) {
                return Err(Failure::schema(format!(
                    "task {name:?}: unknown family {family:?}"
                )));
            }
        }
    }
    Ok(())
}

fn execute_task(ws: &Workspace, name: &str, task: &TaskSpec) -> Result<TaskRecord, Failure> {
    let math = |e: charstack::Error| Failure::Math(format!("task {name:?}: {e}"));
    let result = match task {
        TaskSpec::ClassifyPair {
            left,
            right,
            require_commuting,
            ..
        } => {
            let a = &ws.elements[left.as_str()];
            let b = &ws.elements[right.as_str()];
            let report = classify_pair(a, b).map_err(math)?;
            if *require_commuting && !report.commuting {
                return Err(Failure::Math(format!(
                    "task {name:?}: elements {left:?} and {right:?} do not commute"
                )));
            }
            TaskResult::Pair(Box::new(report))
        }
        TaskSpec::StrictScan {
            family,
            count,
            seed,
            ..
        } => {
            let family: PairFamily = family.parse().map_err(math)?;
            TaskResult::Scan(strict_scan(&ws.ctx, family, *count, *seed).map_err(math)?)
        }
        TaskSpec::Tangent { representation, .. } => {
            let t = tangent_complex(&ws.representations[representation.as_str()])
                .map_err(math)?;
            TaskResult::Complex(ComplexOutput::of(t))
        }
        TaskSpec::Sphere {
            dimension,
            monodromy,
            ..
        } => {
            let g = monodromy.as_ref().map(|m| &ws.elements[m.as_str()]);
            let c = sphere_tangent(&ws.ctx, *dimension, g).map_err(math)?;
            TaskResult::Complex(ComplexOutput::of(c))
        }
        TaskSpec::Restriction { representation, .. } => {
            let map = restriction_map(&ws.representations[representation.as_str()])
                .map_err(math)?;
            let lo = map.source().lo().min(map.target().lo());
            let hi = map.source().hi().max(map.target().hi());
            let mut induced_ranks = Vec::new();
            for n in lo..=hi {
                let m = map.induced_on_cohomology(n).map_err(math)?;
                induced_ranks.push((n, m.rank()));
            }
            TaskResult::Restriction(Box::new(RestrictionOutput {
                source: ComplexOutput::of(map.source().clone()),
                target: ComplexOutput::of(map.target().clone()),
                induced_ranks,
            }))
        }
        TaskSpec::Relative { representation, .. } => {
            let r = relative_complex(&ws.representations[representation.as_str()])
                .map_err(math)?;
            TaskResult::Complex(ComplexOutput::of(r))
        }
        TaskSpec::Goldman { representation, .. } => TaskResult::Goldman(
            goldman_pairing(&ws.representations[representation.as_str()]).map_err(math)?,
        ),
        TaskSpec::Bivector { representation, .. } => TaskResult::Bivector(
            poisson_bivector(&ws.representations[representation.as_str()]).map_err(math)?,
        ),
        TaskSpec::Leaf {
            representation,
            targets,
            ..
        } => {
            let rep = &ws.representations[representation.as_str()];
            let leaf = match targets {
                None => {
                    let targets: Vec<LeafTarget> = boundary_monodromies(rep)
                        .into_iter()
                        .map(LeafTarget::at)
                        .collect();
                    leaf_tangent(rep, &targets).map_err(math)?
                }
                Some(specs) => {
                    let targets: Vec<LeafTarget> = specs
                        .iter()
                        .map(|t| LeafTarget {
                            class_rep: ws.elements[t.class_rep.as_str()].clone(),
                            conjugator: t
                                .conjugator
                                .as_ref()
                                .map(|c| ws.elements[c.as_str()].clone()),
                        })
                        .collect();
                    leaf_tangent(rep, &targets).map_err(math)?
                }
            };
            TaskResult::Leaf(Box::new(leaf))
        }
        TaskSpec::DoublePointLeaf { left, right, .. } => {
            let a = &ws.elements[left.as_str()];
            let b = &ws.elements[right.as_str()];
            let model = double_point_leaf_model(a, b).map_err(math)?;
            TaskResult::Complex(ComplexOutput::of(model))
        }
    };
    Ok(TaskRecord {
        name: name.to_string(),
        task: task.kind(),
        result,
    })
}

// ---- scan ------------------------------------------------------------------

fn scan_command(
    family: &str,
    count: usize,
    seed: u64,
    group: &str,
    format: Format,
) -> Result<(), Failure> {
    let family: PairFamily = family
        .parse()
        .map_err(|e| Failure::schema(format!("{e}")))?;
    let ctx = parse_group(group)?;
    let summary = strict_scan(&ctx, family, count, seed)
        .map_err(|e| Failure::Math(format!("scan: {e}")))?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&summary).expect("summary serializes")
        ),
        Format::Table => print!("{}", render_scan_table(&summary)),
    }
    Ok(())
}

fn parse_group(group: &str) -> Result<Arc<LieContext>, Failure> {
    let (kind, n) = group
        .split_once(':')
        .ok_or_else(|| Failure::schema(format!("group must look like SL:3, got {group:?}")))?;
    let n: usize = n
        .parse()
        .map_err(|_| Failure::schema(format!("group size {n:?} is not a number")))?;
    let ctx = match kind.to_ascii_uppercase().as_str() {
        "SL" => LieContext::sl(n),
        "GL" => LieContext::gl(n),
        other => {
            return Err(Failure::schema(format!(
                "unknown group kind {other:?}; use SL or GL"
            )))
        }
    };
    ctx.map_err(|e| Failure::schema(format!("group: {e}")))
}

// ---- table rendering --------------------------------------------------------

fn h_line(pairs: &[(i64, usize)]) -> String {
    if pairs.is_empty() {
        return "H: (empty)".to_string();
    }
    let lo = pairs.first().expect("nonempty").0;
    let hi = pairs.last().expect("nonempty").0;
    let dims: Vec<String> = pairs.iter().map(|(_, d)| d.to_string()).collect();
    format!("H^{lo}..H^{hi}: {}", dims.join(" "))
}

fn matrix_lines(m: &QMatrix, indent: &str) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m[(r, c)].to_string()).collect();
        out.push_str(&format!("{indent}[ {} ]\n", row.join(" ")));
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn complex_lines(c: &ComplexOutput, out: &mut String) {
    out.push_str(&format!(
        "  degrees: {}..{}\n  dims: {}\n  {}\n  euler characteristic: {}\n",
        c.complex.lo(),
        c.complex.hi(),
        c.complex
            .dims()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        h_line(&c.cohomology),
        c.euler_char
    ));
}

fn render_run_table(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "charstack {}  input {}\n",
        report.tool_version, report.input_digest
    ));
    for record in &report.tasks {
        out.push_str(&format!("\ntask {} ({})\n", record.name, record.task));
        match &record.result {
            TaskResult::Pair(p) => {
                out.push_str(&format!("  commuting: {}\n", yes_no(p.commuting)));
                out.push_str(&format!(
                    "  semisimple: {} {}\n  unipotent: {} {}\n",
                    yes_no(p.semisimple.0),
                    yes_no(p.semisimple.1),
                    yes_no(p.unipotent.0),
                    yes_no(p.unipotent.1)
                ));
                if let Some(h) = p.h_dims {
                    let pairs: Vec<(i64, usize)> =
                        (-1..=2).zip(h.iter().copied()).collect();
                    out.push_str(&format!("  {}\n", h_line(&pairs)));
                }
                if let Some(j) = p.joint_centralizer_dim {
                    out.push_str(&format!("  joint centralizer dim: {j}\n"));
                }
                if let Some(strict) = p.strict_direct {
                    out.push_str(&format!(
                        "  strict: {} (all 3 criteria)\n",
                        if strict { "YES" } else { "NO" }
                    ));
                }
            }
            TaskResult::Scan(s) => {
                out.push_str(&format!(
                    "  family: {}  group: {}  count: {}  seed: {}\n",
                    s.family.name(),
                    s.group,
                    s.count,
                    s.seed
                ));
                out.push_str(&format!(
                    "  strict: {}  non-strict: {}\n  criteria agreement: {}/{}\n",
                    s.strict_count, s.non_strict_count, s.criteria_agreement_count, s.count
                ));
            }
            TaskResult::Complex(c) => complex_lines(c, &mut out),
            TaskResult::Restriction(r) => {
                out.push_str("  source:\n");
                complex_lines(&r.source, &mut out);
                out.push_str("  target:\n");
                complex_lines(&r.target, &mut out);
                let ranks: Vec<String> = r
                    .induced_ranks
                    .iter()
                    .map(|(n, k)| format!("H^{n}:{k}"))
                    .collect();
                out.push_str(&format!("  induced ranks: {}\n", ranks.join(" ")));
            }
            TaskResult::Goldman(g) => {
                out.push_str(&format!(
                    "  dim: {}\n  nondegenerate: {}\n  pairing matrix:\n",
                    g.dim,
                    yes_no(g.nondegenerate)
                ));
                out.push_str(&matrix_lines(&g.matrix, "    "));
            }
            TaskResult::Bivector(b) => {
                out.push_str(&format!(
                    "  H dim: {}\n  bivector rank: {}\n  bivector:\n",
                    b.h_absolute, b.rank
                ));
                out.push_str(&matrix_lines(&b.bivector, "    "));
            }
            TaskResult::Leaf(l) => {
                out.push_str(&format!(
                    "  dims: {}\n",
                    l.complex
                        .dims()
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
                let pairs: Vec<(i64, usize)> =
                    (-1..=1).zip(l.h_dims.iter().copied()).collect();
                out.push_str(&format!("  {}\n", h_line(&pairs)));
                out.push_str(&format!("  duality marks: {}\n", yes_no(l.duality_ok)));
                for (i, m) in l.monodromies.iter().enumerate() {
                    out.push_str(&format!("  boundary monodromy {}:\n", i + 1));
                    out.push_str(&matrix_lines(m, "    "));
                }
            }
        }
    }
    out
}

fn render_scan_table(s: &ScanSummary) -> String {
    format!(
        "family {} on {}: {} pair(s), seed {}\n  strict: {}  non-strict: {}\n  criteria agreement: {}/{}\n",
        s.family.name(),
        s.group,
        s.count,
        s.seed,
        s.strict_count,
        s.non_strict_count,
        s.criteria_agreement_count,
        s.count
    )
}
