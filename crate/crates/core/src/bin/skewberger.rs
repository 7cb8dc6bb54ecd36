use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::seq::SliceRandom;
use serde_json::json;

use skewberger::linalg::{is_prime, Arithmetic, SolveOptions, Q};
use skewberger::registry::{
    emit_report, parse_spec, recompute, run_check, run_table, CheckOptions, CheckReport, Format, RepSpec,
    ResultCache,
};
use skewberger::weights::{
    format_epsilon, format_fundamental, parse_epsilon, spanning_triples_with, Coords, Display, RootDatum,
    SpanningTriple, DEFAULT_ORBIT_BUDGET,
};
use skewberger::Error;

/// Skew-curvature spaces, skew-prolongations and spanning triples of
/// complex Lie algebra representations, in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "skewberger", version)]
struct Cli {
    /// rational, modular or auto (modular above the row threshold)
    #[arg(long, global = true, env = "SKEWBERGER_ARITHMETIC", default_value = "auto")]
    arithmetic: Arithmetic,

    /// Primes for modular elimination, comma separated
    #[arg(long, global = true, env = "SKEWBERGER_PRIMES", value_delimiter = ',')]
    primes: Vec<u64>,

    /// Abort a stage whose matrix has more rows than this
    #[arg(long, global = true, env = "SKEWBERGER_MAX_ROWS")]
    max_rows: Option<usize>,

    #[arg(long, global = true, env = "SKEWBERGER_FORMAT", default_value = "json")]
    format: Format,

    /// Leave out timings so output is byte-identical between runs
    #[arg(long, global = true, env = "SKEWBERGER_NO_TIMINGS")]
    no_timings: bool,

    #[arg(long, global = true, env = "SKEWBERGER_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every stage on one representation
    Check { spec: String },
    /// Sweep the rows of Table 1 or Table 3
    Table {
        table: u8,
        #[arg(long, env = "SKEWBERGER_MAX_DIM")]
        max_dim: usize,
    },
    /// Spanning triples (λ₀, λ₁, α) up to the Weyl group
    Triples {
        spec: String,
        /// The root α, e.g. "e1-e7", or Cartan coordinates "[2,0,-1]"
        #[arg(long, env = "SKEWBERGER_ROOT", allow_hyphen_values = true)]
        root: String,
        /// Only weights of maximal norm
        #[arg(long, env = "SKEWBERGER_EXTREMAL")]
        extremal: bool,
        /// Reflections allowed for canonicalization
        #[arg(long, env = "SKEWBERGER_BUDGET", default_value_t = DEFAULT_ORBIT_BUDGET)]
        budget: usize,
    },
    /// Cache maintenance
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Recompute a random tenth of the entries and compare
    Verify {
        /// Recompute every entry
        #[arg(long)]
        all: bool,
    },
}

fn solve_options(cli: &Cli) -> Result<SolveOptions, Error> {
    let mut o = SolveOptions {
        arithmetic: cli.arithmetic,
        max_rows: cli.max_rows,
        ..Default::default()
    };
    if !cli.primes.is_empty() {
        if let Some(p) = cli.primes.iter().find(|p| !is_prime(**p)) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        o.primes = cli.primes.clone();
    }
    Ok(o)
}

fn write(bytes: &[u8]) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn exit_for(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(|r| r.aborted.is_some()) {
        2
    } else if reports.iter().any(|r| !r.expected_deltas.is_empty()) {
        1
    } else {
        0
    }
}

fn parse_root(rd: &RootDatum, s: &str) -> Result<Coords, Error> {
    if let Some(inner) = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let c: Vec<Q> = inner
            .split(',')
            .map(|x| x.trim().parse::<Q>().map_err(|_| Error::InvalidParameter(format!("bad coordinate {x:?}"))))
            .collect::<Result<_, _>>()?;
        if c.len() != rd.width() {
            return Err(Error::DimensionMismatch(format!("root needs {} coordinates", rd.width())));
        }
        return Ok(c);
    }
    let fr = rd
        .frame
        .ok_or_else(|| Error::InvalidParameter("no ε frame for this algebra: give Cartan coordinates [..]".into()))?;
    Ok(fr.from_epsilon(&parse_epsilon(s, fr.len())?, rd.width()))
}

fn triples(spec: &RepSpec, root: &str, extremal: bool, budget: usize) -> Result<serde_json::Value, Error> {
    let rep = spec.build()?;
    let rd = RootDatum::new(&rep)?;
    let alpha = parse_root(&rd, root)?;
    let t = spanning_triples_with(&rep, &alpha, extremal, budget)?;
    let show = |c: &Coords| match rd.frame {
        Some(fr) => format_epsilon(&fr.to_epsilon(c)),
        None => format!("{c:?}"),
    };
    let classes: Vec<_> = t
        .classes
        .iter()
        .map(|c| {
            let (a, x, y) = &c.canonical;
            let canon = SpanningTriple {
                l0: x.clone(),
                l1: y.clone(),
                alpha: a.clone(),
                extremal: c.representative.extremal,
            };
            let f = |v: &Coords| format_fundamental(&rd.dynkin_labels(v));
            json!({
                "canonical": Display(&rd, &canon).to_string(),
                "fundamental": format!("({}, {}, {})", f(x), f(y), f(a)),
                "representative": Display(&rd, &c.representative).to_string(),
                "extremal": c.representative.extremal,
                "count": c.count,
            })
        })
        .collect();
    Ok(json!({
        "spec": spec.to_string(),
        "root": show(&alpha),
        "extremalOnly": extremal,
        "budgetExceeded": t.budget_exceeded,
        "enumerated": t.raw.len(),
        "classes": classes,
    }))
}

fn verify(cache: &ResultCache, all: bool, base: &CheckOptions) -> Result<(serde_json::Value, bool), Error> {
    let entries = cache.entries()?;
    let k = if all { entries.len() } else { entries.len().div_ceil(10) };
    let mut rng = rand::thread_rng();
    let mut picked: Vec<_> = entries.choose_multiple(&mut rng, k).collect();
    picked.sort_by(|a, b| a.key.spec.cmp(&b.key.spec));
    let mut mismatches = Vec::new();
    let mut checked = Vec::new();
    for f in picked {
        let spec = parse_spec(&f.key.spec)?;
        let mut o = base.clone();
        o.solve.arithmetic = f.key.arithmetic;
        let fresh = recompute(&spec, &o)?;
        checked.push(f.key.spec.clone());
        if fresh != f.result {
            mismatches.push(f.key.spec.clone());
        }
    }
    let ok = mismatches.is_empty();
    Ok((
        json!({ "entries": entries.len(), "checked": checked, "mismatches": mismatches }),
        ok,
    ))
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let opts = CheckOptions {
        solve: solve_options(cli)?,
        cache_dir: cli.cache_dir.clone(),
        timings: !cli.no_timings,
        ..Default::default()
    };
    match &cli.command {
        Command::Check { spec } => {
            let r = run_check(&parse_spec(spec)?, &opts)?;
            write(&emit_report(std::slice::from_ref(&r), true, cli.format)?)?;
            Ok(exit_for(&[r]))
        }
        Command::Table { table, max_dim } => {
            let reports = run_table(*table, *max_dim, &opts)?;
            write(&emit_report(&reports, false, cli.format)?)?;
            Ok(exit_for(&reports))
        }
        Command::Triples {
            spec,
            root,
            extremal,
            budget,
        } => {
            let v = triples(&parse_spec(spec)?, root, *extremal, *budget)?;
            write(format!("{}\n", serde_json::to_string_pretty(&v)?).as_bytes())?;
            Ok(if v["budgetExceeded"] == json!(true) { 2 } else { 0 })
        }
        Command::Cache {
            action: CacheAction::Verify { all },
        } => {
            let dir = cli
                .cache_dir
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("cache verify needs --cache-dir".into()))?;
            let (v, ok) = verify(&ResultCache::open(dir)?, *all, &opts)?;
            write(format!("{}\n", serde_json::to_string_pretty(&v)?).as_bytes())?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
