//! Command-line front end: construct spaces, analyze homogeneity,
//! decompose, classify, factor duplicates, work with triangle schemes,
//! and run the distance-count searches.

use clap::{Args, Parser, Subcommand, ValueEnum};
use homlab::amalgamation::{
    coherence_check, limit_space, scheme_from_space, validate_scheme, z3z3_counterexample,
    TriangleScheme,
};
use homlab::constructions as cons;
use homlab::error::Error;
use homlab::homogeneity::{analyze, automorphisms};
use homlab::search::{self, render_table, SearchMethod};
use homlab::space::{ColoredSpace, SpaceJson};
use homlab::structure::{
    aut_star, classify, isosceles_free_components, isosceles_generated_components,
    quotient_space,
};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const USAGE_ERROR: u8 = 2;
const DOMAIN_ERROR: u8 = 1;

#[derive(Parser)]
#[command(name = "homlab", version, about = "finite homogeneous metric space laboratory")]
struct Cli {
    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Pretty, human-oriented output instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for the randomized relabeling self-check run on loaded spaces.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the named spaces and write it as JSON.
    Construct(ConstructArgs),
    /// Homogeneity report for a space.
    Analyze {
        input: PathBuf,
        /// Homogeneity levels to check, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        k: Vec<usize>,
        /// Also decide ultrahomogeneity.
        #[arg(long)]
        ultra: bool,
    },
    /// Invariant decomposition of a space.
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: DecompositionArg,
        /// Also emit the quotient by the isosceles-generated components.
        #[arg(long)]
        quotient: bool,
    },
    /// Classification labels of a 1-homogeneous space.
    Classify { input: PathBuf },
    /// Rainbow factorization of a two-component space.
    Factor { input: PathBuf },
    /// Automorphism group of a space.
    Aut { input: PathBuf },
    /// Triangle scheme operations.
    Amalgam {
        #[command(subcommand)]
        action: AmalgamAction,
    },
    /// Maximal distance count for k-homogeneous spaces of a given size.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Regular)]
        method: MethodArg,
    },
    /// Recompute the reference table of maximal distance counts.
    VerifyTable {
        #[arg(long, default_value_t = 16)]
        max: usize,
    },
    /// Weak-amalgamation obstruction gadget over a marked base space.
    Wap {
        input: PathBuf,
        /// The two marked points.
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "0,1")]
        marked: Vec<usize>,
        /// Write the two extension spaces next to this prefix.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Circle with graph distance.
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 2^m points at xor distance.
    Binary {
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scaled odd cycle times a binary space.
    B {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rainbow duplicate of a cycle.
    D {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rainbow duplicate of a b-space.
    E {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Six points over five distances in [1, 2].
    Hexagon {
        #[arg(long, value_delimiter = ',', default_value = "1.1,1.2,1.3,1.4,1.5")]
        d: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Four points over a scalene triangle of distances.
    Tetra {
        #[arg(long, value_delimiter = ',', default_value = "1.0,1.1,1.2")]
        sides: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Boolean duplicate of the discrete 2^n-point space.
    DiscreteDup {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Obstruction gadget over the 2-point base.
    Wap {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AmalgamAction {
    /// Structural validity of a scheme.
    Validate { input: PathBuf },
    /// Coherence condition, with a witness quadruple on failure.
    Coherence { input: PathBuf },
    /// The finite limit space of a valid coherent scheme.
    Limit { input: PathBuf },
    /// Extract the scheme of a homogeneous isosceles-free space.
    FromSpace { input: PathBuf },
    /// Emit the 3x3 affine-plane counterexample scheme.
    Z3z3 {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecompositionArg {
    Isofree,
    Isogen,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Regular,
    Full,
    Oracle,
    Formula,
}

fn aut_cap() -> usize {
    std::env::var("HOMLAB_AUT_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(homlab::DEFAULT_ORDER_CAP)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Later invocations in the same process keep the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
        Err(CliError::Domain(err)) => {
            let diagnostic = json!({ "error": err.to_string() });
            eprintln!("{diagnostic}");
            ExitCode::from(DOMAIN_ERROR)
        }
    }
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Domain(err)
    }
}

type CliResult = Result<(), CliError>;

fn read_space(path: &Path, seed: Option<u64>) -> Result<ColoredSpace, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let space = if path.extension().is_some_and(|e| e == "txt") {
        ColoredSpace::from_text(&text)?
    } else {
        let parsed: SpaceJson = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad space file {}: {e}", path.display())))?;
        ColoredSpace::from_json(parsed)?
    };
    if let Some(seed) = seed {
        relabeling_self_check(&space, seed)?;
    }
    Ok(space)
}

/// Seeded spot-check: the canonical form must not move under relabeling.
fn relabeling_self_check(space: &ColoredSpace, seed: u64) -> Result<(), CliError> {
    let reference = homlab::canonical_form(space);
    let mut state = seed.wrapping_add(0x9E3779B97F4A7C15);
    let mut next = move || {
        state ^= state >> 30;
        state = state.wrapping_mul(0xBF58476D1CE4E5B9);
        state ^= state >> 27;
        state = state.wrapping_mul(0x94D049BB133111EB);
        state ^= state >> 31;
        state
    };
    for _ in 0..8 {
        let mut order: Vec<usize> = (0..space.n()).collect();
        for i in (1..order.len()).rev() {
            let j = (next() % (i as u64 + 1)) as usize;
            order.swap(i, j);
        }
        if homlab::canonical_form(&space.relabel_points(&order)) != reference {
            return Err(CliError::Domain(Error::InternalInvariantViolation(
                "canonical form moved under a random relabeling".into(),
            )));
        }
    }
    Ok(())
}

fn read_scheme(path: &Path) -> Result<TriangleScheme, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed: TriangleScheme = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad scheme file {}: {e}", path.display())))?;
    TriangleScheme::new(parsed.r, parsed.t).map_err(CliError::Domain)
}

fn emit(value: &serde_json::Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        println!("{value}");
    }
}

fn write_space(space: &ColoredSpace, output: &Option<PathBuf>, pretty: bool) -> CliResult {
    let json = serde_json::to_value(space.to_json()).unwrap();
    match output {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&json).unwrap())
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            emit(
                &json!({
                    "written": path.display().to_string(),
                    "n": space.n(),
                    "delta": space.delta(),
                }),
                pretty,
            );
        }
        None => emit(&json, pretty),
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult {
    let cap = aut_cap();
    match &cli.command {
        Command::Construct(args) => {
            let (space, output) = match &args.kind {
                ConstructKind::Cycle { n, output } => {
                    if *n == 0 {
                        return Err(CliError::Usage("cycle needs --n >= 1".into()));
                    }
                    (cons::cycle(*n), output.clone())
                }
                ConstructKind::Binary { m, output } => (cons::binary_space(*m)?, output.clone()),
                ConstructKind::B { m, k, output } => (cons::b_space(*m, *k)?, output.clone()),
                ConstructKind::D { n, output } => (cons::d_space(*n)?, output.clone()),
                ConstructKind::E { m, k, output } => (cons::e_space(*m, *k)?, output.clone()),
                ConstructKind::Hexagon { d, output } => {
                    if d.len() != 5 {
                        return Err(CliError::Usage("hexagon needs five distances".into()));
                    }
                    (cons::hexagon(d[0], d[1], d[2], d[3], d[4])?, output.clone())
                }
                ConstructKind::Tetra { sides, output } => {
                    if sides.len() != 3 {
                        return Err(CliError::Usage("tetra needs three side lengths".into()));
                    }
                    (cons::tetrahedron(sides[0], sides[1], sides[2])?, output.clone())
                }
                ConstructKind::DiscreteDup { n, output } => {
                    (cons::discrete_boolean_duplicate(*n)?, output.clone())
                }
                ConstructKind::Wap { output } => {
                    let base =
                        ColoredSpace::new(vec![vec![0, 1], vec![1, 0]], Some(vec![0.0, 1.0]))?;
                    let gadget = cons::wap_gadget(&base, 0, 1)?;
                    emit(
                        &json!({
                            "r0": gadget.r0,
                            "eps": gadget.eps,
                            "r1": gadget.r1,
                            "common_distance": gadget.common_distance,
                            "obstruction_verified": gadget.obstruction_verified,
                            "x_space": gadget.x_space.to_json(),
                            "y_space": gadget.y_space.to_json(),
                        }),
                        cli.pretty,
                    );
                    if let Some(path) = output {
                        std::fs::write(
                            path,
                            serde_json::to_string_pretty(&gadget.x_space.to_json()).unwrap(),
                        )
                        .map_err(|e| CliError::Usage(format!("cannot write: {e}")))?;
                    }
                    return Ok(());
                }
            };
            write_space(&space, &output, cli.pretty)
        }
        Command::Analyze { input, k, ultra } => {
            let space = read_space(input, cli.seed)?;
            let report = analyze(&space, k, *ultra, cap)?;
            emit(&serde_json::to_value(&report).unwrap(), cli.pretty);
            Ok(())
        }
        Command::Decompose { input, kind, quotient } => {
            let space = read_space(input, cli.seed)?;
            let decomposition = match kind {
                DecompositionArg::Isofree => isosceles_free_components(&space, cap)?,
                DecompositionArg::Isogen => isosceles_generated_components(&space, cap)?,
            };
            let star = aut_star(&space, &decomposition, cap)?;
            let mut out = json!({
                "kind": decomposition.kind,
                "blocks": decomposition.blocks,
                "aut_star_order": star.order(),
            });
            if *quotient {
                if let DecompositionArg::Isogen = kind {
                    let q = quotient_space(&space, &decomposition, 1.0, cap)?;
                    out["quotient"] = serde_json::to_value(q.quotient.to_json()).unwrap();
                    out["aut_order"] = json!(q.aut_order);
                    out["quotient_aut_order"] = json!(q.quotient_aut_order);
                } else {
                    return Err(CliError::Usage(
                        "--quotient applies to the isogen decomposition".into(),
                    ));
                }
            }
            emit(&out, cli.pretty);
            Ok(())
        }
        Command::Classify { input } => {
            let space = read_space(input, cli.seed)?;
            let labels = classify(&space, cap)?;
            emit(&json!({ "labels": labels }), cli.pretty);
            Ok(())
        }
        Command::Factor { input } => {
            let space = read_space(input, cli.seed)?;
            match cons::rainbow_factorization(&space, cap)? {
                None => emit(&json!({ "factorization": null }), cli.pretty),
                Some(f) => emit(
                    &json!({
                        "factorization": {
                            "base": f.base.to_json(),
                            "subgroup_order": f.params.group.order(),
                            "cross_distances": f.params.cross,
                            "involution": f.params.involution.images(),
                        }
                    }),
                    cli.pretty,
                ),
            }
            Ok(())
        }
        Command::Aut { input } => {
            let space = read_space(input, cli.seed)?;
            let aut = automorphisms(&space, cap)?;
            emit(
                &json!({
                    "degree": aut.degree(),
                    "order": aut.order(),
                    "generators": aut.generators().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
                    "abelian": aut.is_abelian(),
                    "boolean": aut.is_boolean(),
                    "transitive": aut.is_transitive(),
                }),
                cli.pretty,
            );
            Ok(())
        }
        Command::Amalgam { action } => run_amalgam(action, cli),
        Command::Delta { n, k, method } => {
            if *n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let method = match (k, method) {
                (1, MethodArg::Regular) => SearchMethod::RegularOnly,
                (1, MethodArg::Full) => SearchMethod::FullTransitive,
                (1, MethodArg::Oracle) => SearchMethod::PartitionOracle,
                (2, MethodArg::Formula) => SearchMethod::Formula,
                (2, MethodArg::Full) => SearchMethod::FullTransitive,
                (2, MethodArg::Oracle) => SearchMethod::PartitionOracle,
                (2, MethodArg::Regular) => SearchMethod::Formula,
                _ => return Err(CliError::Usage("--k must be 1 or 2".into())),
            };
            let report = match k {
                1 => search::delta1(*n, method, cap)?,
                _ => search::delta2(*n, method, cap)?,
            };
            let mut out = serde_json::to_value(&report).unwrap();
            if let Some(space) = &report.witness_space {
                out["witness_space"] = serde_json::to_value(space.to_json()).unwrap();
            }
            emit(&out, cli.pretty);
            Ok(())
        }
        Command::VerifyTable { max } => {
            let report = search::verify_table(*max, cap)?;
            if cli.pretty {
                print!("{}", render_table(&report));
                println!("all_match: {}", report.all_match);
            } else {
                emit(&serde_json::to_value(&report).unwrap(), false);
            }
            if report.all_match {
                Ok(())
            } else {
                Err(CliError::Domain(Error::InternalInvariantViolation(
                    "reference table mismatch".into(),
                )))
            }
        }
        Command::Wap { input, marked, output } => {
            let space = read_space(input, cli.seed)?;
            if marked.len() != 2 {
                return Err(CliError::Usage("--marked needs exactly two points".into()));
            }
            let gadget = cons::wap_gadget(&space, marked[0], marked[1])?;
            emit(
                &json!({
                    "r0": gadget.r0,
                    "eps": gadget.eps,
                    "r1": gadget.r1,
                    "common_distance": gadget.common_distance,
                    "obstruction_verified": gadget.obstruction_verified,
                    "x_space": gadget.x_space.to_json(),
                    "y_space": gadget.y_space.to_json(),
                }),
                cli.pretty,
            );
            if let Some(prefix) = output {
                let write = |suffix: &str, s: &ColoredSpace| -> CliResult {
                    let path = prefix.with_extension(format!("{suffix}.json"));
                    std::fs::write(&path, serde_json::to_string_pretty(&s.to_json()).unwrap())
                        .map_err(|e| {
                            CliError::Usage(format!("cannot write {}: {e}", path.display()))
                        })
                };
                write("x", &gadget.x_space)?;
                write("y", &gadget.y_space)?;
            }
            Ok(())
        }
    }
}

fn run_amalgam(action: &AmalgamAction, cli: &Cli) -> CliResult {
    match action {
        AmalgamAction::Validate { input } => {
            let scheme = read_scheme(input)?;
            let report = validate_scheme(&scheme);
            emit(&serde_json::to_value(&report).unwrap(), cli.pretty);
            Ok(())
        }
        AmalgamAction::Coherence { input } => {
            let scheme = read_scheme(input)?;
            let witness = coherence_check(&scheme)?;
            emit(
                &json!({
                    "coherent": witness.is_none(),
                    "witness": witness.map(|(p, q, p2, q2)| vec![p, q, p2, q2]),
                }),
                cli.pretty,
            );
            Ok(())
        }
        AmalgamAction::Limit { input } => {
            let scheme = read_scheme(input)?;
            let space = limit_space(&scheme)?;
            emit(&serde_json::to_value(space.to_json()).unwrap(), cli.pretty);
            Ok(())
        }
        AmalgamAction::FromSpace { input } => {
            let space = read_space(input, cli.seed)?;
            let scheme = scheme_from_space(&space)?;
            emit(&serde_json::to_value(&scheme).unwrap(), cli.pretty);
            Ok(())
        }
        AmalgamAction::Z3z3 { output } => {
            let scheme = z3z3_counterexample();
            let value = serde_json::to_value(&scheme).unwrap();
            if let Some(path) = output {
                std::fs::write(path, serde_json::to_string_pretty(&value).unwrap())
                    .map_err(|e| CliError::Usage(format!("cannot write: {e}")))?;
            }
            emit(&value, cli.pretty);
            Ok(())
        }
    }
}
