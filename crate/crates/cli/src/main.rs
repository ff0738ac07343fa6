//! `homodigraph`: build family balls, run checks and analyses, export DOT,
//! run the bipartite census.
//!
//! Exit codes: 0 verified or exact-true, 1 refuted or exact-false (or an
//! unexpected census entry), 2 bad input, 3 construction failure,
//! 4 inconclusive.

mod dot;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homodigraph::census::CENSUS_DEFAULT_MAX;
use homodigraph::{
    arc_classes, check_c_homogeneity_with, check_k_arc_transitivity_with, check_property_z,
    census_c_homogeneous, ends_probe, intersection_digraph, is_anc_tree, is_desc_tree, match_relation,
    path_length_uniformity, path_length_uniformity_all, reachability_digraph, triangle_profile, CHomogeneityOptions, CheckReport, Error,
    FamilySpec, LabeledBall, Manifest, RootMode, SerializedBall,
};
use serde::Serialize;

use crate::dot::DotOptions;

#[derive(Parser)]
#[command(name = "homodigraph", version, about = "Balls of homogeneous digraph families and checks on them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a ball from a family spec such as `m:3,2@r4` or `dl:cp:3@r4`.
    Generate {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a check on a ball file and print its report.
    Check {
        what: CheckKind,
        ball: PathBuf,
        /// Largest subset size (c-homog).
        #[arg(short)]
        s: Option<usize>,
        /// Extension radius.
        #[arg(short)]
        t: Option<usize>,
        /// Arc length (k-arc).
        #[arg(short)]
        k: Option<usize>,
        /// Vertex: `center`, an id or a label.
        #[arg(short, long, default_value = "center")]
        u: String,
        /// Second vertex for path-length.
        #[arg(short, long)]
        v: Option<String>,
        /// Cut vertex for `ends` (id or label); repeat for several.
        #[arg(long)]
        cut: Vec<String>,
        /// Examine every deep subset, not only those at the center.
        #[arg(long)]
        all_deep: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reachability analyses of a ball.
    Analyze {
        what: AnalyzeKind,
        ball: PathBuf,
        /// Arc `u,v` whose class is reported (default: first arc out of the center).
        #[arg(long)]
        arc: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Graphviz DOT rendering.
    Export {
        ball: PathBuf,
        /// Colour arcs by reachability class.
        #[arg(long)]
        classes: bool,
        /// Dotted edges between matched pairs.
        #[arg(long)]
        matched: bool,
        /// Dashed boundary vertices, double-circled center.
        #[arg(long)]
        boundary: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive census of C-homogeneous connected bipartite graphs.
    Census {
        #[arg(short = 'n', long, default_value_t = CENSUS_DEFAULT_MAX)]
        max_vertices: usize,
        /// Allow sizes above the default guard.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = CensusFormat::Json)]
        format: CensusFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    CHomog,
    KArc,
    PropertyZ,
    DescTree,
    AncTree,
    PathLength,
    Triangles,
    Ends,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeKind {
    Reachability,
    Intersection,
    Match,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFormat {
    Json,
    Csv,
}

/// Error carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Construction(_) | Error::Contract(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(value: &T, output: Option<&Path>) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    emit(&s, output)
}

struct Loaded {
    ball: LabeledBall,
    family: String,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let s = SerializedBall::from_json(&text)?;
    Ok(Loaded {
        ball: s.to_labeled()?,
        family: s.family,
    })
}

fn resolve(b: &LabeledBall, name: &str) -> Result<usize, Failure> {
    let name = name.trim();
    if name == "center" {
        return Ok(b.ball.center());
    }
    if let Some(v) = b.vertex_by_label(name) {
        return Ok(v);
    }
    match name.parse::<usize>() {
        Ok(v) if b.ball.graph().contains(v) => Ok(v),
        _ => Err(Failure::usage(format!("no vertex `{name}` in the ball"))),
    }
}

fn verdict_code(r: &CheckReport) -> u8 {
    match r.verdict.holds() {
        Some(true) => 0,
        Some(false) => 1,
        None => 4,
    }
}

fn family_key(family: &str) -> String {
    family
        .parse::<FamilySpec>()
        .map(|f| f.family_key())
        .unwrap_or_else(|_| "default".into())
}

fn generate(spec: &str, output: Option<&Path>) -> Outcome {
    let parsed: FamilySpec = spec.parse()?;
    let ball = parsed.build()?;
    emit(&SerializedBall::from_labeled(&ball, &parsed.to_string()).to_json(), output)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn check(
    what: CheckKind,
    path: &Path,
    s: Option<usize>,
    t: Option<usize>,
    k: Option<usize>,
    u: &str,
    v: Option<&str>,
    cut: &[String],
    all_deep: bool,
    output: Option<&Path>,
) -> Outcome {
    let l = load(path)?;
    let b = &l.ball;
    let defaults = Manifest::builtin().defaults_for(&family_key(&l.family));
    let roots = if all_deep { RootMode::AllDeep } else { RootMode::Center };
    let t = t.unwrap_or(defaults.t);
    let report = match what {
        CheckKind::CHomog => {
            let opts = CHomogeneityOptions {
                roots,
                ..CHomogeneityOptions::new(s.unwrap_or(defaults.s), t)
            };
            check_c_homogeneity_with(&b.ball, opts)
        }
        CheckKind::KArc => check_k_arc_transitivity_with(&b.ball, k.unwrap_or(defaults.k), t, roots)?,
        CheckKind::PropertyZ => check_property_z(&b.ball)?,
        CheckKind::DescTree => is_desc_tree(&b.ball, resolve(b, u)?)?,
        CheckKind::AncTree => is_anc_tree(&b.ball, resolve(b, u)?)?,
        CheckKind::PathLength => {
            match v {
                Some(v) => path_length_uniformity(&b.ball, resolve(b, u)?, resolve(b, v)?)?,
                None => path_length_uniformity_all(&b.ball)?,
            }
        }
        CheckKind::Triangles => {
            emit_json(&triangle_profile(&b.ball, resolve(b, u)?)?, output)?;
            return Ok(0);
        }
        CheckKind::Ends => {
            let cut: BTreeSet<usize> = if cut.is_empty() {
                BTreeSet::from([resolve(b, u)?])
            } else {
                cut.iter().map(|x| resolve(b, x)).collect::<Result<_, _>>()?
            };
            #[derive(Serialize)]
            #[serde(rename_all = "camelCase")]
            struct Ends {
                cut: BTreeSet<usize>,
                boundary_components: usize,
            }
            let boundary_components = ends_probe(&b.ball, &cut);
            emit_json(&Ends { cut, boundary_components }, output)?;
            return Ok(0);
        }
    };
    emit_json(&report, output)?;
    Ok(verdict_code(&report))
}

fn analyze(what: AnalyzeKind, path: &Path, arc: Option<&str>, output: Option<&Path>) -> Outcome {
    let l = load(path)?;
    let b = &l.ball.ball;
    let g = b.graph();
    match what {
        AnalyzeKind::Reachability => {
            let e = match arc {
                Some(a) => {
                    let (x, y) = a
                        .split_once(',')
                        .ok_or_else(|| Failure::usage("--arc expects `u,v`"))?;
                    (resolve(&l.ball, x)?, resolve(&l.ball, y)?)
                }
                None => {
                    let c = b.center();
                    let y = *g
                        .out(c)
                        .first()
                        .or_else(|| g.inn(c).first())
                        .ok_or_else(|| Failure::usage("the center has no arcs"))?;
                    if g.has_arc(c, y) {
                        (c, y)
                    } else {
                        (y, c)
                    }
                }
            };
            emit_json(&reachability_digraph(g, e, b.interior())?, output)?;
        }
        AnalyzeKind::Intersection => {
            let p = arc_classes(g);
            emit_json(&intersection_digraph(g, &p), output)?;
        }
        AnalyzeKind::Match => emit_json(&match_relation(g, b.interior()), output)?,
    }
    Ok(0)
}

fn census(n: usize, force: bool, format: CensusFormat, output: Option<&Path>) -> Outcome {
    if n > CENSUS_DEFAULT_MAX && !force {
        return Err(Failure::usage(format!(
            "census above {CENSUS_DEFAULT_MAX} vertices is slow; pass --force"
        )));
    }
    let result = census_c_homogeneous(n)?;
    match format {
        CensusFormat::Json => emit_json(&result, output)?,
        CensusFormat::Csv => emit(&result.to_csv(), output)?,
    }
    Ok(u8::from(!result.unexpected.is_empty()))
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("HOMODIGRAPH_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Failure::usage(format!("HOMODIGRAPH_THREADS must be a number, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Generate { spec, output } => generate(&spec, output.as_deref()),
        Command::Check {
            what,
            ball,
            s,
            t,
            k,
            u,
            v,
            cut,
            all_deep,
            output,
        } => check(
            what,
            &ball,
            s,
            t,
            k,
            &u,
            v.as_deref(),
            &cut,
            all_deep,
            output.as_deref(),
        ),
        Command::Analyze { what, ball, arc, output } => analyze(what, &ball, arc.as_deref(), output.as_deref()),
        Command::Export {
            ball,
            classes,
            matched,
            boundary,
            output,
        } => {
            let l = load(&ball)?;
            let opts = DotOptions {
                classes,
                matched,
                boundary,
            };
            emit(&dot::render(&l.ball, opts), output.as_deref())?;
            Ok(0)
        }
        Command::Census {
            max_vertices,
            force,
            format,
            output,
        } => census(max_vertices, force, format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_error_maps_to_two() {
        let f: Failure = "dl:xx@r3".parse::<FamilySpec>().unwrap_err().into();
        assert_eq!(f.code, 2);
    }

    #[test]
    fn construction_error_maps_to_three() {
        let f: Failure = "cayley:3,2@r2".parse::<FamilySpec>().unwrap().build().unwrap_err().into();
        assert_eq!(f.code, 3);
    }

    #[test]
    fn inconclusive_maps_to_four() {
        let r = CheckReport::new("c", homodigraph::Verdict::Inconclusive, Default::default());
        assert_eq!(verdict_code(&r), 4);
    }
}
