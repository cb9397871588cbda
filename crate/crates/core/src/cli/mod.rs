//! Command-line front end: argument parsing, command dispatch and report
//! emission.

pub mod parse;
mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::dynkin::{self, DynkinDSpec, DynkinError};
use crate::graphmap::{GraphMapError, ModulePair, DEFAULT_SEARCH_LIMIT};
use crate::indec::{classify, ClassifyOptions, IndecError};
use crate::linalg::{hom_space, FieldSpec, OracleConfig};
use crate::quiver::TreeMorphism;

use parse::{emit_problem, parse_problem, ParseError, Problem};

#[derive(Debug, Parser)]
#[command(
    name = "gentree",
    version,
    about = "Hom-spaces, graph maps and indecomposability of generalised tree modules"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalArgs {
    /// Ground field, `Q` or `F<p>`; overrides the input file.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    /// Endomorphism budget of the brute-force oracle; 0 disables it.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Also write a Graphviz rendering to this path.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Write the report to this path instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Step allowance per seed of a graph map or ghost search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_LIMIT)]
    pub search_limit: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis and dimension of Hom(M1, M2) by exact linear algebra.
    Hom(PairArgs),
    /// All generalised graph maps of a pair and the maps they realise.
    Ggm(PairArgs),
    /// All ghosts of a pair, and whether it is ghost-free.
    Ghosts(PairArgs),
    /// Writes a supplied homomorphism as a combination of graph maps.
    DecomposeHom {
        file: PathBuf,
        /// Name of the `hom` block; defaults to the first.
        #[arg(long, conflicts_with = "basis")]
        hom: Option<String>,
        /// Decompose every element of an exact Hom basis of the first two
        /// morphisms instead of a `hom` block.
        #[arg(long)]
        basis: bool,
    },
    /// Indecomposability verdicts for the morphisms of a file.
    Classify {
        file: PathBuf,
        /// Only this morphism.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Constructs and checks a module for every positive root of D_n.
    Dynkin {
        n: usize,
        /// Orientation of `e1 .. e{n-3}, b, c` as `<`/`>` characters.
        #[arg(long)]
        orientation: Option<String>,
        /// Run every orientation of the diagram.
        #[arg(long, conflicts_with = "orientation")]
        all_orientations: bool,
        /// Also build and classify the wrong-choice variants.
        #[arg(long)]
        variants: bool,
        /// Print the module of this root (comma separated) in input format.
        #[arg(long, value_delimiter = ',')]
        emit: Option<Vec<u8>>,
    },
    /// Graphviz rendering of the pullback network or its two-cover.
    Dot {
        #[command(flatten)]
        pair: PairArgs,
        /// Render the two-cover instead of the pullback network.
        #[arg(long)]
        cover: bool,
    },
}

#[derive(Debug, Args, Clone)]
pub struct PairArgs {
    pub file: PathBuf,
    /// Source morphism; defaults to the first in the file.
    #[arg(long)]
    pub source: Option<String>,
    /// Target morphism; defaults to the second, or the source if there is
    /// only one.
    #[arg(long)]
    pub target: Option<String>,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    match s {
        "Q" => Ok(FieldSpec::Rational),
        _ => s
            .strip_prefix('F')
            .and_then(|p| p.parse().ok())
            .and_then(FieldSpec::prime)
            .ok_or_else(|| format!("invalid field `{s}` (use Q or Fp with p an odd prime)")),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: Box<ParseError> },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Ghost(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Ghost(_) => 4,
        }
    }
}

impl From<GraphMapError> for CliError {
    fn from(e: GraphMapError) -> Self {
        match e {
            GraphMapError::GhostObstruction(_) => CliError::Ghost(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<IndecError> for CliError {
    fn from(e: IndecError) -> Self {
        match e {
            IndecError::GraphMap(g) => g.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<DynkinError> for CliError {
    fn from(e: DynkinError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// Output of a successful run: the report and an optional DOT rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub report: String,
    pub dot: Option<String>,
}

fn load(path: &PathBuf, global: &GlobalArgs) -> Result<Problem, CliError> {
    let src =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut p = parse_problem(&src).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source: Box::new(source),
    })?;
    if let Some(f) = global.field {
        p.field = Some(f);
    }
    Ok(p)
}

fn find(p: &Problem, name: &str) -> Result<TreeMorphism, CliError> {
    p.morphism(name)
        .cloned()
        .ok_or_else(|| CliError::Precondition(format!("no morphism named `{name}`")))
}

fn pick_pair(p: &Problem, args: &PairArgs) -> Result<(TreeMorphism, TreeMorphism), CliError> {
    let f1 = match &args.source {
        Some(n) => find(p, n)?,
        None => p
            .morphisms
            .first()
            .cloned()
            .ok_or_else(|| CliError::Precondition("the file declares no morphism".into()))?,
    };
    let f2 = match &args.target {
        Some(n) => find(p, n)?,
        None => p.morphisms.get(1).cloned().unwrap_or_else(|| f1.clone()),
    };
    if !Arc::ptr_eq(f1.codomain(), f2.codomain()) && f1.codomain() != f2.codomain() {
        return Err(CliError::Precondition(format!(
            "`{}` and `{}` map into different quivers",
            f1.name(),
            f2.name()
        )));
    }
    Ok((f1, f2))
}

fn new_pair(
    f1: TreeMorphism,
    f2: TreeMorphism,
    p: &Problem,
    g: &GlobalArgs,
) -> Result<ModulePair, CliError> {
    Ok(ModulePair::new(f1, f2, p.field())?.with_search_limit(g.search_limit))
}

fn oracle(global: &GlobalArgs) -> Option<OracleConfig> {
    match global.budget {
        Some(0) => None,
        Some(budget) => Some(OracleConfig {
            budget,
            ..OracleConfig::default()
        }),
        None => Some(OracleConfig::default()),
    }
}

/// Runs one command and returns its report.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Hom(args) => {
            let p = load(&args.file, g)?;
            let (f1, f2) = pick_pair(&p, args)?;
            let pair = new_pair(f1, f2, &p, g)?;
            let basis = hom_space(&pair.m1, &pair.m2).map_err(GraphMapError::from)?;
            Ok(plain(report::hom(&pair, &basis)))
        }
        Command::Ggm(args) => {
            let p = load(&args.file, g)?;
            let (f1, f2) = pick_pair(&p, args)?;
            let pair = new_pair(f1, f2, &p, g)?;
            let gs = pair.ggms()?;
            let dot = g.dot.as_ref().map(|_| {
                let all = gs
                    .iter()
                    .fold(Default::default(), |acc, x| union(acc, &x.sub));
                pair.n2.net.to_dot("graph maps", Some(&all))
            });
            Ok(Output {
                report: report::ggms(&pair, gs),
                dot,
            })
        }
        Command::Ghosts(args) => {
            let p = load(&args.file, g)?;
            let (f1, f2) = pick_pair(&p, args)?;
            let pair = new_pair(f1, f2, &p, g)?;
            let gs = pair.ghosts()?;
            let dot = g.dot.as_ref().map(|_| {
                let all = gs
                    .iter()
                    .fold(Default::default(), |acc, x| union(acc, &x.sub));
                pair.n2.net.to_dot("ghosts", Some(&all))
            });
            Ok(Output {
                report: report::ghosts(&pair, gs),
                dot,
            })
        }
        Command::DecomposeHom { file, hom, basis } => {
            let p = load(file, g)?;
            if *basis || (hom.is_none() && p.homs.is_empty()) {
                let args = PairArgs {
                    file: file.clone(),
                    source: None,
                    target: None,
                };
                let (f1, f2) = pick_pair(&p, &args)?;
                let pair = new_pair(f1, f2, &p, g)?;
                let mut out = String::new();
                for (i, h) in hom_space(&pair.m1, &pair.m2)
                    .map_err(GraphMapError::from)?
                    .iter()
                    .enumerate()
                {
                    let d = pair.decompose_hom(h)?;
                    let text =
                        report::decomposition(&pair, &format!("basis element {}", i + 1), h, &d);
                    if i == 0 {
                        out.push_str(&text);
                    } else {
                        out.extend(text.lines().skip(4).map(|l| format!("{l}\n")));
                    }
                }
                if out.is_empty() {
                    out = report::decomposition_header(&pair);
                }
                return Ok(plain(out));
            }
            let spec = match hom {
                Some(n) => p
                    .hom(n)
                    .ok_or_else(|| CliError::Precondition(format!("no hom named `{n}`")))?,
                None => &p.homs[0],
            };
            let (f1, f2) = (find(&p, &spec.source)?, find(&p, &spec.target)?);
            let pair = new_pair(f1, f2, &p, g)?;
            let h = spec
                .to_homomorphism(&pair.f1, &pair.f2, &pair.m1, &pair.m2)
                .map_err(|source| CliError::Parse {
                    path: file.display().to_string(),
                    source: Box::new(source),
                })?;
            let d = pair.decompose_hom(&h)?;
            Ok(plain(report::decomposition(&pair, &spec.name, &h, &d)))
        }
        Command::Classify { file, morphism } => {
            let p = load(file, g)?;
            let fs = match morphism {
                Some(n) => vec![find(&p, n)?],
                None => p.morphisms.clone(),
            };
            if fs.is_empty() {
                return Err(CliError::Precondition(
                    "the file declares no morphism".into(),
                ));
            }
            let opts = ClassifyOptions {
                field: p.field(),
                oracle: oracle(g),
                search_limit: g.search_limit,
            };
            let mut out = report::header("classify", p.field());
            for f in &fs {
                let c = classify(f, &opts)?;
                report::classification(&mut out, f, &c);
            }
            Ok(plain(out))
        }
        Command::Dynkin {
            n,
            orientation,
            all_orientations,
            variants,
            emit,
        } => {
            let specs = if *all_orientations {
                DynkinDSpec::all(*n)?
            } else {
                let s = match orientation {
                    Some(o) => format!("{n} {o}"),
                    None => n.to_string(),
                };
                vec![s.parse::<DynkinDSpec>()?]
            };
            if let Some(root) = emit {
                let q = Arc::new(dynkin::dynkin_d_quiver(&specs[0])?);
                let f = dynkin::build_gtm_for_root(&q, root)?;
                let p = Problem {
                    quivers: vec![Arc::clone(&q)],
                    trees: vec![f.tree().clone()],
                    morphisms: vec![f],
                    ..Problem::default()
                };
                return Ok(plain(emit_problem(&p)));
            }
            let opts = ClassifyOptions {
                field: g.field.unwrap_or(FieldSpec::Rational),
                oracle: oracle(g),
                search_limit: g.search_limit,
            };
            let mut out = report::header("dynkin", opts.field);
            let mut failed = Vec::new();
            for spec in &specs {
                let r = dynkin::verify_catalog(spec, *variants, &opts)?;
                if !r.all_ok() {
                    failed.push(spec.to_string());
                }
                report::catalog(&mut out, &r);
            }
            let _ = writeln!(out, "## summary");
            let _ = writeln!(out, "orientations: {}", specs.len());
            let _ = writeln!(
                out,
                "unproved: {}",
                if failed.is_empty() {
                    "none".into()
                } else {
                    failed.join(", ")
                }
            );
            Ok(plain(out))
        }
        Command::Dot { pair: args, cover } => {
            let p = load(&args.file, g)?;
            let (f1, f2) = pick_pair(&p, args)?;
            let pair = new_pair(f1, f2, &p, g)?;
            let text = if *cover {
                pair.n2.net.to_dot("two-cover", None)
            } else {
                pair.n1.net.to_dot("pullback", None)
            };
            Ok(Output {
                report: text.clone(),
                dot: g.dot.as_ref().map(|_| text),
            })
        }
    }
}

fn plain(report: String) -> Output {
    Output { report, dot: None }
}

fn union(
    mut acc: crate::network::Subnetwork,
    s: &crate::network::Subnetwork,
) -> crate::network::Subnetwork {
    acc.vertices.extend(&s.vertices);
    acc.arrows.extend(&s.arrows);
    acc.edges.extend(&s.edges);
    acc
}

/// Parses arguments, runs, writes outputs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli).and_then(|out| write_outputs(&cli.global, &out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_outputs(g: &GlobalArgs, out: &Output) -> Result<(), CliError> {
    let io = |p: &PathBuf, e: std::io::Error| CliError::Io(format!("{}: {e}", p.display()));
    if let (Some(path), Some(dot)) = (&g.dot, &out.dot) {
        fs::write(path, dot).map_err(|e| io(path, e))?;
    }
    match &g.report {
        Some(path) => fs::write(path, &out.report).map_err(|e| io(path, e)),
        None => {
            print!("{}", out.report);
            Ok(())
        }
    }
}
