mod cache;
mod error;
mod fixture;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use trackhom::cohomology::{
    bw_cohomology, compute_h, les_report, natural_system_from_module, verify_ses_level, Theory,
};
use trackhom::nerve::{classifying_space, const_cohomology};
use trackhom::resolution::{finiteness_gate, Resolution, DEFAULT_GENERATOR_BOUND};
use trackhom::zmod::{iso_check, FinAbGroup};
use trackhom::ValidationReport;

use crate::cache::CacheUse;
use crate::error::CliError;
use crate::fixture::{parse_fixture, Fixture, ModuleKind};
use crate::report::{CheckRow, CommandEcho, FixtureSummary, GateSummary, NerveSummary, Report, TheoryTable};

#[derive(Parser)]
#[command(name = "trackhom", version, about = "Cohomology of finite track categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a fixture and check the track-category and module axioms.
    Validate(Args),
    /// Run the finiteness gate and print the predicted level sizes.
    Gate(Args),
    /// Enumerate the resolution levels.
    Resolve(Args),
    /// Cohomology groups of one or all theories.
    Cohomology(Args),
    /// Check the short exact sequence of cochains level by level.
    Ses(Args),
    /// Check the long exact sequence in cohomology.
    Les(Args),
    /// Cohomology of the underlying category with the induced natural system.
    Bw(Args),
    /// Cohomology of the classifying space with constant coefficients.
    Nerve(Args),
}

impl Command {
    fn parts(&self) -> (&'static str, &Args) {
        match self {
            Command::Validate(a) => ("validate", a),
            Command::Gate(a) => ("gate", a),
            Command::Resolve(a) => ("resolve", a),
            Command::Cohomology(a) => ("cohomology", a),
            Command::Ses(a) => ("ses", a),
            Command::Les(a) => ("les", a),
            Command::Bw(a) => ("bw", a),
            Command::Nerve(a) => ("nerve", a),
        }
    }
}

#[derive(clap::Args)]
struct Args {
    /// Fixture file (JSON).
    fixture: PathBuf,
    /// Highest cohomological degree to report.
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = TheoryArg::All)]
    theory: TheoryArg,
    /// Directory for cached resolution levels.
    #[arg(long, env = "TRACKHOM_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Refuse fixtures whose resolution levels exceed this many generators.
    #[arg(long, default_value_t = DEFAULT_GENERATOR_BOUND)]
    max_generators: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum TheoryArg {
    Comonad,
    SoTotal,
    SoBase,
    Bw,
    All,
}

impl TheoryArg {
    fn name(self) -> &'static str {
        match self {
            TheoryArg::Comonad => "comonad",
            TheoryArg::SoTotal => "so_total",
            TheoryArg::SoBase => "so_base",
            TheoryArg::Bw => "bw",
            TheoryArg::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, args) = cli.command.parts();
    let mut report = Report::new(CommandEcho {
        name: name.into(),
        fixture: args.fixture.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        max_degree: args.max_degree,
        theory: args.theory.name().into(),
        max_generators: args.max_generators,
    });
    let result = run(name, args, &mut report);
    if let Err(e) = &result {
        eprintln!("trackhom: {e}");
    }
    report.finish(result);
    match args.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text(start.elapsed().as_secs_f64())),
    }
    ExitCode::from(report.outcome.exit_code)
}

fn run(name: &str, args: &Args, report: &mut Report) -> Result<(), CliError> {
    let f = parse_fixture(&args.fixture)?;
    report.fixture = Some(FixtureSummary::of(&f));
    report.validation = f.validation.clone();
    match name {
        "validate" => Ok(()),
        "bw" => {
            let groups = bw_cohomology(&natural_system_from_module(&f.module), args.max_degree)?;
            report.cohomology.push(TheoryTable::new("bw", &groups));
            Ok(())
        }
        "nerve" => nerve(&f, args, report),
        _ => {
            let res = gate_and_resolve(&f, args, report)?;
            match (name, res) {
                (_, None) => Ok(()),
                ("cohomology", Some(res)) => cohomology(&f, &res, args, report),
                ("ses", Some(res)) => ses(&f, &res, report),
                ("les", Some(res)) => les(&f, &res, args, report),
                (_, Some(_)) => Ok(()),
            }
        }
    }
}

/// Runs the gate to level `max_degree + 1`; every command except `gate`
/// then builds the resolution, through the cache when one is configured.
fn gate_and_resolve(f: &Fixture, args: &Args, report: &mut Report) -> Result<Option<Resolution>, CliError> {
    let depth = args.max_degree + 1;
    let gate = match finiteness_gate(&f.track, depth, args.max_generators) {
        Ok(g) => g,
        Err(e) => {
            report.gate = Some(GateSummary::refused(depth, args.max_generators, &e));
            return Err(CliError::Gate(e));
        }
    };
    report.gate = Some(GateSummary::passed(&gate));
    if report.command.name == "gate" {
        return Ok(None);
    }
    let (res, used) = cache::resolve(&f.track, gate, args.cache_dir.as_deref().map(Path::new))?;
    if used != CacheUse::Disabled {
        eprintln!("trackhom: resolution cache {}", if used == CacheUse::Hit { "hit" } else { "miss" });
    }
    report.resolution = Some(res.levels().iter().map(|l| l.len()).collect());
    Ok(Some(res))
}

fn cohomology(f: &Fixture, res: &Resolution, args: &Args, report: &mut Report) -> Result<(), CliError> {
    let n = args.max_degree;
    let wanted = |t: TheoryArg| args.theory == t || args.theory == TheoryArg::All;
    let mut computed: Vec<(Theory, Vec<FinAbGroup>)> = Vec::new();
    for (t, arg) in [
        (Theory::Comonad, TheoryArg::Comonad),
        (Theory::SoTotal, TheoryArg::SoTotal),
        (Theory::SoBase, TheoryArg::SoBase),
    ] {
        if wanted(arg) {
            let groups = compute_h(t, res, &f.module, n)?;
            report.cohomology.push(TheoryTable::new(t.name(), &groups));
            computed.push((t, groups));
        }
    }
    let bw = if wanted(TheoryArg::Bw) {
        let groups = bw_cohomology(&natural_system_from_module(&f.module), n)?;
        report.cohomology.push(TheoryTable::new("bw", &groups));
        Some(groups)
    } else {
        None
    };
    if args.theory != TheoryArg::All {
        return Ok(());
    }
    let get = |t: Theory| &computed.iter().find(|(s, _)| *s == t).expect("all theories computed").1;
    let bw = bw.expect("all theories computed");
    for k in 1..n {
        let (a, c) = (&get(Theory::SoTotal)[k + 1], &get(Theory::Comonad)[k]);
        report.checks.push(CheckRow {
            name: format!("so_total H^{} = comonad H^{k}", k + 1),
            passed: iso_check(a, c),
            detail: format!("{a} against {c}"),
        });
        let (b, w) = (&get(Theory::SoBase)[k], &bw[k + 1]);
        report.checks.push(CheckRow {
            name: format!("so_base H^{k} = bw H^{}", k + 1),
            passed: iso_check(b, w),
            detail: format!("{b} against {w}"),
        });
    }
    match report.checks.iter().find(|c| !c.passed) {
        Some(c) => Err(CliError::Verification(format!("{}: {}", c.name, c.detail))),
        None => Ok(()),
    }
}

fn ses(f: &Fixture, res: &Resolution, report: &mut Report) -> Result<(), CliError> {
    for n in 0..=res.max_level() {
        report.ses.push(verify_ses_level(res, &f.module, n)?);
    }
    match report.ses.iter().find(|s| !s.is_exact()) {
        Some(s) => Err(CliError::Verification(format!(
            "short exact sequence fails at level {}: {}",
            s.level,
            s.witness.clone().unwrap_or_default()
        ))),
        None => Ok(()),
    }
}

fn les(f: &Fixture, res: &Resolution, args: &Args, report: &mut Report) -> Result<(), CliError> {
    let les = les_report(res, &f.module, args.max_degree)?;
    let failure = les.first_failure();
    report.les = Some(les);
    match failure {
        Some((node, detail)) => Err(CliError::Verification(format!("{node}: {detail}"))),
        None => Ok(()),
    }
}

fn nerve(f: &Fixture, args: &Args, report: &mut Report) -> Result<(), CliError> {
    let ModuleKind::Constant(a) = &f.kind else {
        let mut r = ValidationReport::new("module");
        r.fail("the nerve command needs a constant module".to_string());
        return Err(CliError::Validation(vec![r]));
    };
    let s = classifying_space(&f.track, args.max_degree + 1);
    let identities = s.check_identities();
    report.checks.push(CheckRow {
        name: "simplicial identities of the diagonal".into(),
        passed: identities.is_valid(),
        detail: format!("{} checks, {} violations", identities.checks, identities.violations.len()),
    });
    if !identities.is_valid() {
        return Err(CliError::Verification(identities.to_string()));
    }
    let groups = const_cohomology(&s, a, args.max_degree)?;
    report.nerve = Some(NerveSummary {
        coefficients: a.to_string(),
        simplices: s.sizes.clone(),
        nondegenerate: (0..=s.depth()).map(|n| s.count_nondegenerate(n)).collect(),
        groups: report::rows(&groups),
    });
    Ok(())
}
