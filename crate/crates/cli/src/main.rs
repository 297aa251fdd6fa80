//! `fusionkit` command-line front end.

mod checks;
mod report;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusionkit::arith::{enumerate_types, filter_provenance, squarefree_split, CategoryType, Filters};
use fusionkit::format::{parse_input, Input, Meta};
use fusionkit::group::class_data;
use fusionkit::identities::{class_sum, support};
use fusionkit::ring::{invertibles, subring_closure, BasedRing, Profile};
use fusionkit::{Error, Result, Tolerances, Verdict};
use serde_json::json;

use checks::{Ctx, Sink};
use report::{InputDigest, RunReport};

#[derive(Parser, Debug)]
#[command(
    name = "fusionkit",
    version,
    about = "Character tables, class-sum identities and type filters for fusion rings and finite groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Eigenvalue tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Snap threshold for exact dimensions.
    #[arg(long, global = true, default_value_t = 1e-6)]
    snap: f64,
    /// Seed for the random linear combination used in diagonalization.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Emit a single JSON document instead of JSON lines.
    #[arg(long, global = true)]
    json: bool,
    /// Axiom profile for ring validation.
    #[arg(long, global = true, value_enum)]
    profile: Option<ProfileArg>,
    /// Include wall-clock time in the summary record.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ProfileArg {
    Based,
    Fusion,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the based-ring (and fusion-ring) axioms.
    Validate { file: PathBuf },
    /// Character table with residual certificates.
    Chartab { file: PathBuf },
    /// Invertible simples are exactly those whose characters never vanish.
    Burnside { file: PathBuf },
    /// The class-product identity, exact for groups and numeric for rings.
    Harada { file: PathBuf },
    /// Central characters supported on a fusion subring.
    Support {
        file: PathBuf,
        /// Generators of the subring, as basis indices; defaults to the invertibles.
        #[arg(long, value_delimiter = ',')]
        subring: Vec<usize>,
    },
    /// Class sums, class dimensions and their divisibility checks.
    ClassSums { file: PathBuf },
    /// Divisibility checks on a modular type.
    Typecheck(TypecheckArgs),
    /// Enumerate candidate modular types of a given dimension.
    Enumerate(EnumerateArgs),
    /// Exact group checks: classes, class-product identity and oracles.
    Group { file: PathBuf },
    /// Run every applicable check over a directory of inputs.
    Sweep {
        dir: PathBuf,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Args, Debug)]
struct TypecheckArgs {
    /// A type document.
    file: Option<PathBuf>,
    /// Type entries `d,n;d,n;...`, with d = 1 first.
    #[arg(long, conflicts_with = "file")]
    entries: Option<String>,
    /// Expected total dimension, or the dimension to analyze on its own.
    #[arg(long)]
    n: Option<u64>,
    /// Also require the number of invertibles to divide every n_i d_i^2.
    #[arg(long)]
    pointed_orbit: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    n: u64,
    /// Require d^2 | N.
    #[arg(long)]
    dims_divide: bool,
    /// Require the square-free part of N to divide every multiplicity.
    #[arg(long)]
    multiplicity: bool,
    /// Require d^2 | N and gcd(d, N_1) = 1.
    #[arg(long)]
    coprimality: bool,
    /// Require the square-free part of N to divide the number of invertibles.
    #[arg(long)]
    pointed: bool,
    /// Require the number of invertibles to divide every n_i d_i^2.
    #[arg(long)]
    pointed_orbit: bool,
    /// Enable every filter except --pointed-orbit.
    #[arg(long)]
    all: bool,
    /// Allow non-integral dimensions with integer squares.
    #[arg(long)]
    weakly_integral: bool,
    /// Largest N accepted.
    #[arg(long, default_value_t = fusionkit::arith::DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    /// Largest number of types returned.
    #[arg(long, default_value_t = 100_000)]
    max_results: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let tol = Tolerances {
        eigen: g.tol,
        snap: g.snap,
        ..Tolerances::default()
    };
    let ctx = Ctx {
        tol,
        seed: g.seed,
        profile: g.profile.map(|p| match p {
            ProfileArg::Based => Profile::Based,
            ProfileArg::Fusion => Profile::Fusion,
        }),
    };
    let start = Instant::now();
    let mut report = RunReport::new(command_name(&cli.command), ctx.seed, ctx.tol);
    run(&cli.command, &ctx, &mut report);
    if g.timing {
        report.elapsed = Some(start.elapsed());
    }
    if let Command::Sweep { .. } = cli.command {
        eprint!("{}", sweep::summary_table(&report));
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = if g.json { report.to_json() } else { report.to_jsonl() };
    print!("{text}");
    ExitCode::from(report.exit_code() as u8)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Chartab { .. } => "chartab",
        Command::Burnside { .. } => "burnside",
        Command::Harada { .. } => "harada",
        Command::Support { .. } => "support",
        Command::ClassSums { .. } => "class-sums",
        Command::Typecheck(_) => "typecheck",
        Command::Enumerate(_) => "enumerate",
        Command::Group { .. } => "group",
        Command::Sweep { .. } => "sweep",
    }
}

fn run(command: &Command, ctx: &Ctx, report: &mut RunReport) {
    let result = match command {
        Command::Sweep { dir, jobs } => sweep::run(dir, *jobs, ctx, report),
        Command::Enumerate(args) => enumerate(args, report),
        Command::Typecheck(args) => typecheck(args, report),
        Command::Validate { file }
        | Command::Chartab { file }
        | Command::Burnside { file }
        | Command::Harada { file }
        | Command::ClassSums { file }
        | Command::Group { file }
        | Command::Support { file, .. } => load(file, report).and_then(|input| {
            let mut out = Sink { report, file: None };
            single(command, input, ctx, &mut out)
        }),
    };
    if let Err(e) = result {
        report.error(None, &e);
    }
}

pub(crate) fn load(path: &Path, report: &mut RunReport) -> Result<Input> {
    let bytes = std::fs::read(path)?;
    report.inputs.push(InputDigest::of(path, &bytes));
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    parse_input(&text)
}

fn expect_ring(input: Input) -> Result<(BasedRing, Meta)> {
    match input {
        Input::Ring { ring, meta } => Ok((ring, meta)),
        Input::Group { table, .. } => {
            let classes = class_data(&table)?;
            let ring = fusionkit::group::class_algebra_as_ring(&classes)?;
            Ok((ring, Meta::default()))
        }
        Input::Type { .. } => Err(Error::Parse("expected a ring or group document".into())),
    }
}

fn single(command: &Command, input: Input, ctx: &Ctx, out: &mut Sink) -> Result<()> {
    match command {
        Command::Validate { .. } => {
            let (ring, _) = expect_ring(input)?;
            checks::validate(&ring, ctx, out);
        }
        Command::Chartab { .. } => {
            let (ring, _) = expect_ring(input)?;
            if let Some(t) = checks::table(&ring, ctx, out)? {
                checks::certify_table(&ring, &t, ctx, out)?;
                checks::export_table(&t, out);
            }
        }
        Command::Burnside { .. } => {
            let (ring, _) = expect_ring(input)?;
            if let Some(t) = checks::table(&ring, ctx, out)? {
                checks::burnside(&ring, &t, ctx, out);
            }
        }
        Command::Harada { .. } => match input {
            Input::Group { table, .. } => {
                let classes = class_data(&table)?;
                checks::harada_group(&classes, out);
            }
            other => {
                let (ring, _) = expect_ring(other)?;
                if let Some(t) = checks::table(&ring, ctx, out)? {
                    checks::harada_ring(&ring, &t, ctx, out)?;
                }
            }
        },
        Command::Support { subring, .. } => {
            let (ring, _) = expect_ring(input)?;
            let seed = if subring.is_empty() {
                invertibles(&ring)
            } else {
                checks::subring_arg(&ring, subring)?
            };
            let closed = subring_closure(&ring, seed);
            if let Some(t) = checks::table(&ring, ctx, out)? {
                let s = support(&ring, &t, &closed, &ctx.tol)?;
                out.verdict(
                    Verdict::from_bool(
                        "support",
                        true,
                        format!("{} of {} characters", s.support.len(), t.rows()),
                    )
                    .with_residual(s.residual),
                );
                out.data("support", &s);
            }
        }
        Command::ClassSums { .. } => {
            let (ring, meta) = expect_ring(input)?;
            if let Some(t) = checks::table(&ring, ctx, out)? {
                let sums: Vec<Vec<[f64; 2]>> = (0..t.rows())
                    .map(|j| class_sum(&t, j).action.iter().map(|z| [z.re, z.im]).collect())
                    .collect();
                out.data(
                    "class-sums",
                    json!({ "class_dims": t.class_dims, "codegrees": t.codegrees, "actions": sums }),
                );
                checks::divisibility(&ring, &t, &meta, ctx, out);
            }
        }
        Command::Group { .. } => match input {
            Input::Group { table, .. } => checks::group_pipeline(&table, ctx, out)?,
            _ => return Err(Error::Parse("expected a group document".into())),
        },
        Command::Typecheck(_) | Command::Enumerate(_) | Command::Sweep { .. } => unreachable!(),
    }
    Ok(())
}

fn parse_entries(text: &str) -> Result<Vec<(u64, u64)>> {
    text.split(';')
        .map(|part| {
            let nums: Vec<u64> = part
                .split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                .collect::<Result<_>>()?;
            match nums[..] {
                [d, n] => Ok((d, n)),
                _ => Err(Error::Parse(format!("entry {part:?} is not d,n"))),
            }
        })
        .collect()
}

fn typecheck(args: &TypecheckArgs, report: &mut RunReport) -> Result<()> {
    let ty = match (&args.file, &args.entries) {
        (Some(path), _) => match load(path, report)? {
            Input::Type { ty, integral, .. } => Some((ty, integral)),
            _ => return Err(Error::Parse("expected a type document".into())),
        },
        (None, Some(text)) => {
            let ty = CategoryType::from_dims(&parse_entries(text)?).map_err(|e| Error::Parse(e.to_string()))?;
            Some((ty, true))
        }
        (None, None) => None,
    };
    let mut out = Sink { report, file: None };
    match (ty, args.n) {
        (Some((ty, integral)), n) => {
            if let Some(n) = n {
                out.verdict(
                    Verdict::from_bool("type.total", ty.total() == n, format!("sum n_i d_i^2 = {}", ty.total()))
                        .exact(),
                );
            }
            checks::type_checks(&ty, integral, args.pointed_orbit, &mut out);
        }
        (None, Some(n)) => {
            let (n1, n2) = squarefree_split(n)?;
            out.data("squarefree-split", json!({ "n": n, "sqfree": n1, "square_part": n2 }));
            if let Some(shape) = fusionkit::arith::detect_three_prime_shape(n) {
                out.data("three-prime-shape", checks::shape_report(&shape));
            }
        }
        (None, None) => return Err(Error::Parse("typecheck needs a file, --entries or --n".into())),
    }
    Ok(())
}

fn enumerate(args: &EnumerateArgs, report: &mut RunReport) -> Result<()> {
    let mut filters = if args.all { Filters::all() } else { Filters::default() };
    filters.dims_divide |= args.dims_divide;
    filters.multiplicity_divisibility |= args.multiplicity;
    filters.dimension_coprimality |= args.coprimality;
    filters.pointed_divisibility |= args.pointed;
    filters.pointed_orbit |= args.pointed_orbit;
    filters.weakly_integral |= args.weakly_integral;
    let types = enumerate_types(args.n, filters, args.cap, args.max_results)?;
    let listed: Vec<_> = types
        .iter()
        .map(|t| json!({ "type": t.to_string(), "passes": filter_provenance(t) }))
        .collect();
    let mut out = Sink { report, file: None };
    out.data("filters", filters);
    out.data("types", json!({ "n": args.n, "count": types.len(), "types": listed }));
    if let Some(shape) = fusionkit::arith::detect_three_prime_shape(args.n) {
        out.data("three-prime-shape", checks::shape_report(&shape));
    }
    out.verdict(Verdict::from_bool("enumerate", true, format!("{} type(s)", types.len())).exact());
    Ok(())
}
