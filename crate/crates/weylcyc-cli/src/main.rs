//! Command line front end: evaluate cocycle values, run verification
//! suites, emit exact tables.
//!
//! Exit codes: 0 pass, 1 identity failure, 2 usage or parse error,
//! 3 cap exceeded. Stdout is deterministic for a fixed configuration and
//! seed; timing goes to stderr.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;
use weylcyc::bernoulli::{bernoulli_numbers, cube_integrate, BFactor};
use weylcyc::cocycle::{
    canonical_cycle, tau_sigma_cochain, Engine, EvalConfig, TauFamily,
};
use weylcyc::liecw::{ahat_diagonal_series, chern_diagonal_series};
use weylcyc::perm::Perm;
use weylcyc::scalar::{factorial, rat, rat_string};
use weylcyc::suite::{run_suite, Rng, SuiteConfig, SUITE_NAMES};
use weylcyc::weyl::gl_embed;
use weylcyc::{Error, Rat};

#[derive(Parser)]
#[command(
    name = "weylcyc",
    about = "Exact cocycle computations for the polynomial Weyl algebra",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a cocycle component on a chain expression or chain file.
    EvalTau(EvalTauArgs),
    /// Run a verification suite and emit its certificate.
    Verify(VerifyArgs),
    /// Emit exact tables (Bernoulli numbers, cycle weights, A-roof components).
    Table(TableArgs),
}

#[derive(Args)]
struct EvalTauArgs {
    /// Weyl algebra dimension parameter (pairs of variables).
    #[arg(long)]
    n: usize,
    /// Matrix extension size (1 = scalar algebra).
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Component index: evaluates the degree-2k component (default k = n).
    #[arg(long)]
    k: Option<usize>,
    /// Inline chain expression, e.g. "[1; p1; q1] - [1; q1; p1]".
    #[arg(long, conflicts_with = "chain_file")]
    chain: Option<String>,
    /// File with one chain expression per line.
    #[arg(long)]
    chain_file: Option<std::path::PathBuf>,
    /// Comma-separated permutation images (1-based) selecting the permuted
    /// integration chamber; only valid for the top component with r = 1.
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 0x5eed_0001)]
    seed: u64,
    /// Sample count for randomized checks (0 = suite defaults).
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Largest moment order checked by the `hm` suite (default 3).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Table kind.
    #[arg(value_parser = ["bernoulli", "cycle-weights", "ahat-components"])]
    kind: String,
    /// Table size (max index).
    size: usize,
    /// Dimension for sampled matrices in `ahat-components`.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 0x5eed_0001)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn eval_config_from_env() -> EvalConfig {
    let mut cfg = EvalConfig::default();
    if let Ok(v) = std::env::var("WEYLCYC_DEGREE_CAP") {
        if let Ok(parsed) = v.parse() {
            cfg.degree_cap = parsed;
        }
    }
    if let Ok(v) = std::env::var("WEYLCYC_PLAN_CAP") {
        if let Ok(parsed) = v.parse() {
            cfg.plan_cap = parsed;
        }
    }
    cfg
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::UnknownSuite(_) => 2,
        Error::DegreeCapExceeded { .. }
        | Error::PlanCapExceeded { .. }
        | Error::ChamberCapExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::EvalTau(args) => cmd_eval_tau(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn cmd_eval_tau(args: EvalTauArgs) -> Result<ExitCode, Error> {
    let n = args.n;
    let r = args.r;
    let k = args.k.unwrap_or(n);
    if n == 0 || r == 0 || k > n {
        return Err(Error::Invalid("need n >= 1, r >= 1 and k <= n".into()));
    }
    let cfg = eval_config_from_env();
    let exprs: Vec<String> = if let Some(inline) = &args.chain {
        vec![inline.clone()]
    } else if let Some(path) = &args.chain_file {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?
            .lines()
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect()
    } else {
        return Err(Error::Invalid("need --chain or --chain-file".into()));
    };

    let engine = Arc::new(Engine::new(n, cfg));
    let family = TauFamily::build_with_engine(engine.clone(), r)?;
    let sigma = match &args.sigma {
        None => None,
        Some(text) => {
            if k != n || r != 1 {
                return Err(Error::Invalid(
                    "--sigma applies to the top component with r = 1".into(),
                ));
            }
            let images: Vec<usize> = text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse {
                            pos: 0,
                            msg: format!("permutation image: {e}"),
                        })
                })
                .collect::<Result<_, _>>()?;
            if images.len() != 2 * n {
                return Err(Error::Invalid(format!(
                    "permutation must have {} images",
                    2 * n
                )));
            }
            Some(Perm::from_one_based(&images)?)
        }
    };

    let start = Instant::now();
    let mut outputs = Vec::new();
    let mut normalized = Vec::new();
    for expr in &exprs {
        let chain = weylcyc::parse::chain(expr, n, r)?;
        if chain.degree() != 2 * k {
            return Err(Error::DegreeMismatch {
                expected: 2 * k,
                got: chain.degree(),
            });
        }
        normalized.push(
            chain
                .terms()
                .map(|(w, c)| {
                    (
                        rat_string(c),
                        w.iter().map(|e| format!("{e}")).collect::<Vec<_>>(),
                    )
                })
                .collect::<Vec<_>>(),
        );
        let value = match &sigma {
            Some(s) => {
                let scalar = weylcyc::parse::poly_chain(expr, n)?;
                tau_sigma_cochain(engine.clone(), s).eval(&scalar)?
            }
            None => family.component(k).eval(&chain)?,
        };
        // note when the input is the canonical pairing cycle
        let note = if r == 1 && k == n {
            let scalar = weylcyc::parse::poly_chain(expr, n)?;
            if scalar == canonical_cycle(n)? {
                let reference = factorial::<Rat>(2 * n);
                Some(format!(
                    "canonical pairing cycle: reference value {} under the (2n)! normalization                      (simplex-volume convention ratio {})",
                    rat_string(&reference),
                    rat_string(&(reference.clone() / value.clone()))
                ))
            } else {
                None
            }
        } else {
            None
        };
        outputs.push((expr.clone(), value, note));
    }
    let elapsed = start.elapsed();
    let stats = engine.stats();
    eprintln!(
        "evaluated {} chain(s) in {:.1} ms",
        outputs.len(),
        elapsed.as_secs_f64() * 1000.0
    );

    match args.format {
        Format::Text => {
            for (expr, value, note) in &outputs {
                println!("{expr} = {}", rat_string(value));
                if let Some(n) = note {
                    println!("  note: {n}");
                }
            }
            println!("plans: {}, integrals: {}", stats.plans, stats.integrals);
        }
        Format::Json => {
            let values: Vec<serde_json::Value> = outputs
                .iter()
                .zip(&normalized)
                .map(|((expr, value, note), norm)| {
                    serde_json::json!({
                        "chain": expr,
                        "normalized": norm,
                        "value": rat_string(value),
                        "note": note,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "n": n, "r": r, "k": k,
                "results": values,
                "plans": stats.plans,
                "integrals": stats.integrals,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let cfg = SuiteConfig {
        n: args.n,
        r: args.r,
        seed: args.seed,
        samples: args.samples,
        hm_max: args.m.unwrap_or(3),
        eval: eval_config_from_env(),
    };
    let names: Vec<&str> = if args.suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let mut all_pass = true;
    let mut reports = Vec::new();
    for name in names {
        let start = Instant::now();
        let report = run_suite(name, &cfg)?;
        eprintln!(
            "suite {name} ran in {:.1} ms",
            start.elapsed().as_secs_f64() * 1000.0
        );
        all_pass &= report.pass;
        reports.push(report);
    }
    match args.format {
        Format::Text => {
            for r in &reports {
                print!("{}", r.to_text());
            }
        }
        Format::Json => {
            if reports.len() == 1 {
                println!("{}", reports[0].to_json());
            } else {
                let docs: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| serde_json::from_str(&r.to_json()).unwrap())
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::Value::Array(docs)).unwrap()
                );
            }
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, Error> {
    match args.kind.as_str() {
        "bernoulli" => {
            let values = bernoulli_numbers::<Rat>(args.size);
            match args.format {
                Format::Text => {
                    for (j, b) in values.iter().enumerate() {
                        println!("B_{j} = {}", rat_string(b));
                    }
                }
                Format::Json => {
                    let doc: Vec<String> = values.iter().map(rat_string).collect();
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        "cycle-weights" => {
            let bern = bernoulli_numbers::<Rat>(args.size.max(2));
            let mut rows = Vec::new();
            let mut mismatches = 0usize;
            #[allow(clippy::needless_range_loop)]
            for l in 2..=args.size.max(2) {
                let mut factors = Vec::new();
                for i in 1..=l {
                    let j = if i == l { 1 } else { i + 1 };
                    factors.push(BFactor { i, j, power: 1 });
                }
                let computed = cube_integrate::<Rat>(&factors, l)?;
                let stated = bern[l].clone() * rat(if l % 2 == 0 { 1 } else { -1 }, 1)
                    / factorial::<Rat>(l);
                let matches = computed == stated;
                if !matches {
                    mismatches += 1;
                }
                rows.push((l, computed, stated, matches));
            }
            match args.format {
                Format::Text => {
                    println!("l | computed cube integral | (-1)^l B_l / l! | match");
                    for (l, computed, stated, matches) in &rows {
                        println!(
                            "{l} | {} | {} | {}",
                            rat_string(computed),
                            rat_string(stated),
                            if *matches { "yes" } else { "NO (sign)" }
                        );
                    }
                    if mismatches > 0 {
                        println!(
                            "note: the computed integrals equal (-1)^(l+1) B_l / l!; the stated \
                             closed form carries a sign slip at even l"
                        );
                    }
                }
                Format::Json => {
                    let doc: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(l, c, p, m)| {
                            serde_json::json!({
                                "l": l,
                                "computed": rat_string(c),
                                "stated": rat_string(p),
                                "match": m,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            Ok(if mismatches == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        "ahat-components" => {
            let mut rng = Rng::new(args.seed);
            let x = rng.gl(args.n);
            let sp = weylcyc::weyl::quad_to_sp_matrix(&gl_embed(&x, args.n)?)?;
            let series = ahat_diagonal_series(&sp, args.size.max(2));
            let chern = chern_diagonal_series(&x, args.size.max(2));
            match args.format {
                Format::Text => {
                    println!("sampled gl_{} matrix (seed {:#x}):", args.n, args.seed);
                    for i in 0..args.n {
                        let row: Vec<String> =
                            (0..args.n).map(|j| rat_string(&x[(i, j)])).collect();
                        println!("  [{}]", row.join(", "));
                    }
                    for m in 0..=args.size {
                        println!(
                            "Ahat_{m} = {}   Ch_{m} = {}",
                            rat_string(&series.coeff(m)),
                            rat_string(&chern.coeff(m))
                        );
                    }
                }
                Format::Json => {
                    let doc = serde_json::json!({
                        "n": args.n,
                        "seed": args.seed,
                        "ahat": (0..=args.size).map(|m| rat_string(&series.coeff(m))).collect::<Vec<_>>(),
                        "chern": (0..=args.size).map(|m| rat_string(&chern.coeff(m))).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        other => Err(Error::Invalid(format!("unknown table kind `{other}`"))),
    }
}
