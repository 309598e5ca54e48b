use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use k3forge::divisor::{load_graph, ns_check, DualGraph};
use k3forge::fibration::{fiber_configuration, WeierstrassModel};
use k3forge::lattice::{parse_lattice, two_elementary_invariants};
use k3forge::report::{emit, run_suite, suite_ids, Check, Format, Report, Status, SuiteConfig};
use k3forge::singularity::{classify_rdp_row, rdp_rows};
use k3forge::surface::map_catalog;

#[derive(Parser)]
#[command(name = "k3forge", version, about = "Exact checks for K3 surfaces with (Z/2)^2 automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Run(RunArgs),
    /// Lattice invariants and the glue overlattice.
    #[command(subcommand)]
    Lattices(LatticeCmd),
    /// Divisor identities on dual graphs of (-2)-curves.
    #[command(subcommand)]
    Graphs(GraphCmd),
    /// Elliptic fibrations: model files, frames and pencils.
    #[command(subcommand)]
    Fibrations(FibrationCmd),
    /// Singular points and birational maps of one family.
    #[command(subcommand)]
    Surfaces(SurfaceCmd),
    /// Rational double points of every family.
    #[command(subcommand)]
    Singularities(SingularityCmd),
}

#[derive(Args, Clone)]
struct Seeding {
    #[arg(long, env = "K3FORGE_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
}

#[derive(Args)]
struct RunArgs {
    /// Comma separated suite ids; all suites when omitted.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[command(flatten)]
    seeding: Seeding,
    #[arg(long, default_value_t = 20)]
    height: i64,
    #[arg(long, default_value_t = 32)]
    retries: u32,
    #[arg(long, value_enum, default_value_t = OutFormat::Md)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the suite ids and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Md,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Invariants of every catalogued presentation plus the glue overlattice.
    Verify,
    /// `(rho, ell, delta)` of a lattice expression such as `H+D4+A1^5`.
    Invariants { expr: String },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Checks shipped graphs and divisors, or the graph files in `--dir`.
    Check {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FibrationCmd {
    /// Fiber configuration of a model file `{"A": .., "B": .., "C": ..}`.
    Analyze { file: PathBuf },
    /// Forced alternate fibrations for every framed lattice.
    Frames(Seeding),
    /// Pencil fibrations through a singular point of the branch.
    Pencils(Seeding),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Rank9,
    #[value(name = "HN")]
    Hn,
    Rank10,
    Canonical,
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Singular points and catalogued maps for one family.
    Verify {
        #[arg(long, value_enum)]
        family: Family,
        /// Picard rank, required for the canonical family.
        #[arg(long)]
        rho: Option<usize>,
        #[arg(long, env = "K3FORGE_SEED", default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SingularityCmd {
    /// Rational double points of S and K for every family.
    Rdp(Seeding),
}

fn config(s: &Seeding) -> SuiteConfig {
    SuiteConfig {
        seed: s.seed,
        trials: s.trials,
        ..Default::default()
    }
}

fn suite(cfg: SuiteConfig, ids: &[&str]) -> Result<Report> {
    let ids: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    Ok(run_suite(&cfg, &ids)?)
}

fn print_checks<'a>(checks: impl IntoIterator<Item = &'a Check>) -> bool {
    let mut ok = true;
    for c in checks {
        ok &= c.status != Status::Fail;
        println!("{} {}  {}", c.status.mark(), c.id, c.details);
    }
    ok
}

fn finish(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(args: RunArgs) -> Result<ExitCode> {
    if args.list {
        for id in suite_ids() {
            println!("{id}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let cfg = SuiteConfig {
        height: args.height,
        retry_cap: args.retries,
        ..config(&args.seeding)
    };
    let report = run_suite(&cfg, &args.only)?;
    let doc = emit(
        &report,
        if matches!(args.format, OutFormat::Json) {
            Format::Json
        } else {
            Format::Markdown
        },
    );
    match &args.out {
        Some(p) => fs::write(p, doc).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{doc}"),
    }
    eprintln!(
        "{} checks: {} pass, {} fail, {} partial, {} skipped",
        report.checks.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Partial),
        report.count(Status::Skipped)
    );
    Ok(finish(!report.any_failed()))
}

fn graphs_in(dir: &PathBuf) -> Result<ExitCode> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    let mut ok = true;
    for p in entries {
        let g: DualGraph = load_graph(&p).with_context(|| format!("loading {}", p.display()))?;
        let expected = two_elementary_invariants(&parse_lattice(&g.lattice)?)?;
        let r = ns_check(&g, expected);
        ok &= r.pass;
        let got = r
            .computed
            .map_or_else(|| r.error.unwrap_or_default(), |t| format!("({}, {}, {})", t.rho, t.ell, t.delta));
        println!("{} {}  {} -> {got}", if r.pass { "✓" } else { "✗" }, p.display(), g.lattice);
    }
    Ok(finish(ok))
}

fn surfaces(family: Family, rho: Option<usize>, seed: u64) -> Result<ExitCode> {
    let (labels, maps): (Vec<&str>, &[&str]) = match family {
        Family::Rank9 => (vec!["9 (9,1)", "9 (7,1)"], &[]),
        Family::Hn => (vec![], &["hn_forward", "hn_backward", "hn_refactorization"]),
        Family::Rank10 => (
            vec!["10 (8,1)"],
            &[
                "rank10_k_to_s",
                "rank10_s_to_k",
                "rank10_sprime_to_k",
                "rank10_s_to_sprime",
                "rank10_composite",
                "shifted_sextic",
            ],
        ),
        Family::Canonical => {
            let Some(r) = rho else {
                bail!("--rho is required for the canonical family")
            };
            let ls: Vec<&str> = rdp_rows().iter().filter(|x| x.rho == r && x.rho >= 11).map(|x| x.label).collect();
            if ls.is_empty() {
                bail!("no canonical family of Picard rank {r}");
            }
            (
                ls,
                &[
                    "alternate_to_canonical",
                    "canonical_to_alternate",
                    "birational_composite",
                    "alternate_to_partner",
                    "partner_to_alternate",
                ],
            )
        }
    };
    let mut ok = true;
    for l in labels {
        for c in classify_rdp_row(l, seed)? {
            ok &= c.pass;
            println!(
                "{} {} / {}  {} (expected {})",
                if c.pass { "✓" } else { "✗" },
                c.label,
                c.location,
                c.observed,
                c.expected
            );
        }
    }
    if !maps.is_empty() {
        for m in map_catalog(seed, 1).iter().filter(|m| maps.contains(&m.id.as_str())) {
            ok &= m.holds;
            println!("{} {}  {}", if m.holds { "✓" } else { "✗" }, m.id, m.detail);
        }
    }
    Ok(finish(ok))
}

fn main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Run(a) => run(a),
        Command::Lattices(LatticeCmd::Verify) => Ok(finish(print_checks(
            &suite(SuiteConfig::default(), &["lattices", "overlattice"])?.checks,
        ))),
        Command::Lattices(LatticeCmd::Invariants { expr }) => {
            let l = parse_lattice(&expr)?;
            let t = two_elementary_invariants(&l)?;
            println!(
                "rank {}, det {}, (rho, ell, delta) = ({}, {}, {})",
                l.rank(),
                l.det(),
                t.rho,
                t.ell,
                t.delta
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Graphs(GraphCmd::Check { dir: Some(d) }) => graphs_in(&d),
        Command::Graphs(GraphCmd::Check { dir: None }) => Ok(finish(print_checks(&suite(SuiteConfig::default(), &["graphs"])?.checks))),
        Command::Fibrations(FibrationCmd::Analyze { file }) => {
            let src = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let m = WeierstrassModel::from_json(&src)?;
            let conf = fiber_configuration(&m)?;
            println!("{conf}");
            for f in &conf.fibers {
                println!("  {:?}: {} x{}", f.place, f.kodaira, f.count);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fibrations(FibrationCmd::Frames(s)) => Ok(finish(print_checks(&suite(config(&s), &["frames"])?.checks))),
        Command::Fibrations(FibrationCmd::Pencils(s)) => Ok(finish(print_checks(&suite(config(&s), &["pencils"])?.checks))),
        Command::Surfaces(SurfaceCmd::Verify { family, rho, seed }) => surfaces(family, rho, seed),
        Command::Singularities(SingularityCmd::Rdp(s)) => Ok(finish(print_checks(&suite(config(&s), &["rdp"])?.checks))),
    }
}
