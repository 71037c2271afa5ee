use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kripke_st::consequence::{cross_check_st_classical, glivenko_battery, QueryReport};
use kripke_st::model::{load_model, write_model, Ceiling};
use kripke_st::properties;
use kripke_st::sample::{default_atoms, Sampler, DEFAULT_SEED};
use kripke_st::semantics::reduce_succedent;
use kripke_st::suite::{run_suite, SuiteOptions};
use kripke_st::{Bound, Checker, Error, Formula, Mode, ModelKind, Payload, Query, Semantics, Verdict};

const EXIT_FAILS: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_ERROR: u8 = 3;

/// Kripke-style checker for minimal, intuitionistic and classical logic,
/// with strict-tolerant inference and metainference.
#[derive(Parser)]
#[command(name = "kripke-st", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at every world of a model file.
    Eval {
        model: PathBuf,
        formula: String,
    },
    /// Decide a query; exit 1 if it fails.
    Check(CheckArgs),
    /// Search for a countermodel; exit 1 if found, 2 if none within the bound.
    Countermodel(CheckArgs),
    /// Run the shipped fixtures and property batteries.
    PaperSuite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run one randomised property battery.
    RandomTest {
        property: Property,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest model searched or enumerated (default depends on the property).
        #[arg(long)]
        max_worlds: Option<usize>,
        /// Largest formula depth sampled or enumerated.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long)]
    logic: Logic,
    #[arg(long, default_value = "tarskian")]
    mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    max_worlds: usize,
    /// Fresh atoms added to the search beyond those in the payload.
    #[arg(long, default_value_t = 0)]
    extra_atoms: usize,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    cert_out: Option<PathBuf>,
    /// A formula-level sequent, or a bracketed metainference for `--mode meta`.
    payload: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Logic {
    Minimal,
    Intuitionistic,
    Classical,
}

impl From<Logic> for ModelKind {
    fn from(l: Logic) -> ModelKind {
        match l {
            Logic::Minimal => ModelKind::Minimal,
            Logic::Intuitionistic => ModelKind::Intuitionistic,
            Logic::Classical => ModelKind::Classical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Tarskian,
    St,
    Meta,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Tarskian => Mode::Tarskian,
            ModeArg::St => Mode::St,
            ModeArg::Meta => Mode::Meta,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Glivenko,
    #[value(name = "thm44", alias = "st-classical")]
    StClassical,
    Reduction,
    Heredity,
}

fn checker() -> Checker {
    Checker {
        semantics: Semantics::STANDARD,
        ceiling: Ceiling::from_env(),
        parallel: true,
    }
}

fn eval(model: &PathBuf, formula: &str) -> Result<u8, Error> {
    let m = load_model(&std::fs::read_to_string(model)?)?;
    let f: Formula = formula.parse()?;
    let s = Semantics::STANDARD;
    for w in 0..m.world_count() {
        println!("{}: {}", m.world_name(w), u8::from(s.eval(&m, w, &f)?));
    }
    println!("true: {}", if s.is_true(&m, &f) { "yes" } else { "no" });
    println!("false: {}", if s.is_false(&m, &f) { "yes" } else { "no" });
    Ok(0)
}

fn report(q: &Query, v: &Verdict, cert_out: Option<&PathBuf>) -> Result<(), Error> {
    let mut path = None;
    if let (Some(m), Some(p)) = (v.certificate(), cert_out) {
        std::fs::write(p, write_model(m))?;
        path = Some(p.clone());
    }
    println!(
        "{}",
        QueryReport {
            query: q,
            verdict: v,
            certificate_path: path.clone(),
        }
    );
    if let (Some(m), None) = (v.certificate(), path) {
        print!("{}", write_model(m));
    }
    Ok(())
}

fn check(args: &CheckArgs, refuting: bool) -> Result<u8, Error> {
    let bound = Bound {
        max_worlds: args.max_worlds,
        extra_atoms: args.extra_atoms,
    };
    let q = Query::parse(args.logic.into(), args.mode.into(), &args.payload, bound)?;
    let c = checker();
    let verdict = c.check(&q)?;
    report(&q, &verdict, args.cert_out.as_ref())?;

    if let Payload::Inference(inf) = &q.payload {
        if q.mode == Mode::St && inf.succedent.len() > 1 {
            let reduced = Query::new(q.logic, Mode::St, Payload::Inference(reduce_succedent(inf)?), bound)?;
            let other = c.check(&reduced)?;
            println!("reduced: {} | {}", reduced.payload, other.label());
            if other.label() != verdict.label() {
                return Err(Error::InvalidQuery(format!(
                    "native verdict {} disagrees with reduced verdict {}",
                    verdict.label(),
                    other.label()
                )));
            }
        }
    }

    Ok(match verdict {
        Verdict::Fails(_) => EXIT_FAILS,
        Verdict::HoldsUpToBound(_) if refuting => EXIT_INCONCLUSIVE,
        _ => 0,
    })
}

fn random_test(property: Property, trials: usize, seed: u64, max_worlds: Option<usize>, depth: usize) -> Result<u8, Error> {
    let c = checker();
    let mut out = String::new();
    let passed = match property {
        Property::Glivenko => {
            let mut s = Sampler::new(seed, default_atoms(), depth);
            let r = glivenko_battery(&c, &mut s, trials, Bound::worlds(max_worlds.unwrap_or(4)))?;
            let _ = write!(out, "glivenko: {r}");
            r.passed()
        }
        Property::StClassical => {
            let mut s = Sampler::new(seed, default_atoms(), depth);
            let r = cross_check_st_classical(&c, &mut s, trials, Bound::worlds(max_worlds.unwrap_or(3)))?;
            let _ = write!(out, "st-classical: {r}");
            r.passed()
        }
        Property::Reduction => {
            let atoms = &default_atoms()[..2];
            let pool = properties::model_pool(max_worlds.unwrap_or(3), atoms);
            let mut s = Sampler::new(seed, atoms.to_vec(), depth);
            let r = properties::reduction_equivalence(&c.semantics, &mut s, &pool, trials);
            let _ = write!(out, "{r}");
            r.passed()
        }
        Property::Heredity => {
            // Exhaustive over models and definable formulas; no sampling.
            let r = properties::heredity(&c.semantics, max_worlds.unwrap_or(3), depth);
            let _ = write!(out, "{r}");
            r.passed()
        }
    };
    println!("seed {seed}");
    println!("{out}");
    Ok(if passed { 0 } else { EXIT_FAILS })
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Eval { model, formula } => eval(&model, &formula),
        Command::Check(args) => check(&args, false),
        Command::Countermodel(args) => check(&args, true),
        Command::PaperSuite { seed } => {
            let report = run_suite(&SuiteOptions {
                seed,
                ..SuiteOptions::default()
            });
            println!("{report}");
            Ok(if report.passed() { 0 } else { EXIT_FAILS })
        }
        Command::RandomTest {
            property,
            trials,
            seed,
            max_worlds,
            depth,
        } => random_test(property, trials as usize, seed, max_worlds, depth),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.to_string().lines().next().unwrap_or_default());
            ExitCode::from(EXIT_ERROR)
        }
    }
}
