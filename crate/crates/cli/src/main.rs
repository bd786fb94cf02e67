//! `bigrade`: grade, cohomological dimension and maximal depth of bigraded
//! monomial quotients from the command line.
//!
//! Exit codes: 0 success, 1 property-suite violations, 2 unreadable or
//! unparsable input, 3 a precondition or consistency error from the library.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bigrade::filtration::{dimension_filtration, mgrade_constancy_of, sequentially_cm_of};
use bigrade::hypersurface::{classify, monomial_crosscheck, FactorProfile};
use bigrade::invariants::{analyze, cd};
use bigrade::local_cohomology::{corollary_check, growth_scan, lc_report, CohomologyTable};
use bigrade::suite::run_property_suite;
use bigrade::text::{parse_factors, parse_ideal, parse_monomial, parse_profile};
use bigrade::{AxisIdeal, Characteristic, Error, MonomialIdeal, RingSpec, Subquotient};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "bigrade", version, about = "Invariants of bigraded monomial modules over K[x; y]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "all")]
    All,
}

#[derive(Args)]
struct IdealArgs {
    /// Ideal file: `ring m n` and `gens: ...` lines.
    file: PathBuf,
    /// Variables of the axis ideal: P (x-block), Q (y-block) or all.
    #[arg(long, value_enum, ignore_case = true, default_value_t = AxisArg::Q)]
    axis: AxisArg,
    /// Field characteristic used for ranks (0 or a prime).
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
}

#[derive(Subcommand)]
enum Command {
    /// grade, cd, mgrade, dim, depth and maximal depth.
    Analyze(IdealArgs),
    /// Irreducible and primary decompositions, associated and minimal primes.
    Decompose(IdealArgs),
    /// Dimension filtration with respect to the axis.
    Filtration(IdealArgs),
    /// Sequential Cohen-Macaulayness and mgrade constancy.
    Seqcm(IdealArgs),
    /// Local cohomology H^i fiber by fiber.
    Lc {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long = "i")]
        index: usize,
    },
    /// Generalized Cohen-Macaulayness and the three-way equivalence.
    Gencm(IdealArgs),
    /// Cumulative dim H^i over growing boxes.
    Growth {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long = "i")]
        index: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        radii: Vec<u32>,
    },
    /// Maximal depth of S/fS from the bidegrees of the factors of f.
    Hypersurface {
        /// Profile file: optional `ring m n` and `factors: ...` lines.
        file: Option<PathBuf>,
        /// Factor list such as "(1,0) (1,1) y2".
        #[arg(long, conflicts_with = "file")]
        factors: Option<String>,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        ring: Option<Vec<usize>>,
    },
    /// Compare the hypersurface classification of a monomial with the engine.
    Crosscheck {
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        ring: Vec<usize>,
        #[arg(long)]
        monomial: String,
    },
    /// Random property suite.
    Suite {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Library(Error),
    Violations(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            other => Failure::Library(other),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(args: &IdealArgs) -> Result<(MonomialIdeal, AxisIdeal), Failure> {
    let text = read(&args.file)?;
    let parsed = parse_ideal(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.file.display())))?;
    let r = parsed.ring();
    let ring = RingSpec::with_characteristic(r.m(), r.n(), Characteristic::new(args.characteristic)?)?;
    let ideal = MonomialIdeal::new(ring, parsed.gens().to_vec())?;
    let axis = match args.axis {
        AxisArg::P => AxisIdeal::x_block(&ring)?,
        AxisArg::Q => AxisIdeal::y_block(&ring)?,
        AxisArg::All => AxisIdeal::all(&ring),
    };
    Ok((ideal, axis))
}

/// Common header fields merged with a command's own fields.
fn document(command: &str, ideal: Option<&MonomialIdeal>, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(report::SCHEMA));
    map.insert("command".into(), json!(command));
    if let Some(i) = ideal {
        map.insert("ring".into(), report::ring(i.ring()));
        map.insert("ideal".into(), report::ideal(i));
    }
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

fn ring_arg(values: &[usize]) -> Result<RingSpec, Failure> {
    Ok(RingSpec::new(values[0], values[1])?)
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Analyze(args) => {
            let (ideal, axis) = load(args)?;
            let r = analyze(&ideal, &axis)?;
            Ok(document("analyze", Some(&ideal), report::invariants(&r, ideal.ring())))
        }
        Command::Decompose(args) => {
            let (ideal, _) = load(args)?;
            let body = report::decomposition(
                &ideal.irreducible_decomposition()?,
                &ideal.primary_decomposition()?,
                &ideal.associated_primes()?,
                &ideal.minimal_primes()?,
                &ideal.radical(),
                ideal.dim_quotient()?,
            );
            Ok(document("decompose", Some(&ideal), body))
        }
        Command::Filtration(args) => {
            let (ideal, axis) = load(args)?;
            let ladder = dimension_filtration(&ideal, &axis)?;
            Ok(document("filtration", Some(&ideal), report::ladder(&ladder)))
        }
        Command::Seqcm(args) => {
            let (ideal, axis) = load(args)?;
            let ladder = dimension_filtration(&ideal, &axis)?;
            let body = report::seqcm(&sequentially_cm_of(&ladder)?, &mgrade_constancy_of(&ladder)?);
            Ok(document("seqcm", Some(&ideal), body))
        }
        Command::Lc { ideal: args, index } => {
            let (ideal, axis) = load(args)?;
            let r = lc_report(&ideal, &axis, *index)?;
            Ok(document("lc", Some(&ideal), report::lc(&r, ideal.ring())))
        }
        Command::Gencm(args) => {
            let (ideal, axis) = load(args)?;
            if ideal.is_unit() {
                return Err(Error::UnitIdeal.into());
            }
            let module = Subquotient::cyclic(ideal.clone());
            let top = cd(&module, &axis)?;
            let table = CohomologyTable::new(&module, &axis)?;
            let fg: Vec<bool> = (0..=axis.len()).map(|i| table.report(i).finitely_generated).collect();
            let generalized = fg[..top].iter().all(|&b| b);
            let corollary = match corollary_check(&ideal, &axis) {
                Ok(t) => report::corollary(&t),
                Err(Error::PreconditionFailed(msg)) => json!({ "precondition_failed": msg }),
                Err(e) => return Err(e.into()),
            };
            let body = json!({
                "axis": report::axis(&axis, ideal.ring()),
                "cd": top,
                "finitely_generated": fg,
                "generalized_cm": generalized,
                "corollary": corollary,
            });
            Ok(document("gencm", Some(&ideal), body))
        }
        Command::Growth { ideal: args, index, radii } => {
            let (ideal, axis) = load(args)?;
            let dims = growth_scan(&ideal, &axis, *index, radii)?;
            let body = json!({
                "axis": report::axis(&axis, ideal.ring()),
                "index": index,
                "radii": radii,
                "dims": dims,
            });
            Ok(document("growth", Some(&ideal), body))
        }
        Command::Hypersurface { file, factors, ring } => {
            let (file_ring, profile): (Option<RingSpec>, FactorProfile) = match (file, factors) {
                (Some(path), _) => {
                    parse_profile(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
                }
                (None, Some(text)) => (None, parse_factors(text)?),
                (None, None) => return Err(Failure::Input("give a profile file or --factors".into())),
            };
            let ring = match ring {
                Some(values) => ring_arg(values)?,
                None => file_ring.ok_or_else(|| Failure::Input("no ring: pass --ring M N".into()))?,
            };
            let verdict = classify(&profile, &ring)?;
            let mut doc = document("hypersurface", None, report::hypersurface(&profile, &verdict));
            doc["ring"] = report::ring(&ring);
            Ok(doc)
        }
        Command::Crosscheck { ring, monomial } => {
            let ring = ring_arg(ring)?;
            let f = parse_monomial(monomial, &ring)?;
            let agrees = monomial_crosscheck(&f, &ring)?;
            let profile = FactorProfile::from_monomial(&f, &ring)?;
            let verdict = classify(&profile, &ring)?;
            let mut doc = document("crosscheck", None, report::hypersurface(&profile, &verdict));
            doc["ring"] = report::ring(&ring);
            doc["monomial"] = json!(f.render(&ring));
            doc["agrees"] = json!(agrees);
            Ok(doc)
        }
        Command::Suite { count, seed } => {
            let r = run_property_suite(*count, *seed);
            let doc = document("suite", None, report::suite(&r));
            if r.total_violations() > 0 {
                Err(Failure::Violations(doc))
            } else {
                Ok(doc)
            }
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BIGRADE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Input(format!("BIGRADE_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn emit(value: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => print!("{}", report::to_text(value)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| run(&cli.command));
    match outcome {
        Ok(value) => {
            emit(&value, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Violations(value)) => {
            emit(&value, cli.format);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("bigrade: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            eprintln!("bigrade: {e}");
            ExitCode::from(3)
        }
    }
}
