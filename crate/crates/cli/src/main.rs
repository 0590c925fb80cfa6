mod args;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use mstd_core::analysis::{compare, generational_horizon, stabilize};
use mstd_core::construct::{
    build_arbitrary_difference, build_chain, build_generalized_mstd, build_k_generational,
    build_simultaneous, build_supernice, ArbDiffSpec, ChainLevel, ChainSpec, ConstructionResult,
    EmbedSpec, MiddleFill,
};
use mstd_core::density::config::{ExperimentConfig, Outcome};
use mstd_core::density::{embedding_success_rate, exhaustive_count};
use mstd_core::setcore::io::{parse_json, parse_text, ParseMode};
use mstd_core::sumexpr::{parse, Env};
use mstd_core::{Error, IntSet};
use serde::Serialize;
use serde_json::{json, Value};

use args::{Cli, Command, Construct, DensityArgs, Format, Suite, VerifyArgs};

/// What a command produced: a JSON document and its text rendering.
struct Output {
    json: Vec<Value>,
    text: String,
    /// Exit 1 even though the command ran, e.g. a failing oracle suite.
    failed: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json: vec![json], text, failed: false }
    }
}

enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let outcome = run(&cli);
    if cli.verbose > 0 {
        eprintln!("mstd: finished in {:.3}s", start.elapsed().as_secs_f64());
    }
    match outcome {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    for v in &out.json {
                        println!("{v}");
                    }
                }
                Format::Text => print!("{}", out.text),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let (code, kind, msg) = match &e {
                CliError::Usage(m) => (2, "usage", m.clone()),
                CliError::Core(err @ Error::Verification(_)) => (1, "verification", err.to_string()),
                CliError::Core(err) => (2, error_kind(err), err.to_string()),
            };
            if cli.format == Format::Json {
                let mut v = json!({"schema": 1, "error": {"kind": kind, "message": msg}});
                if let CliError::Core(Error::Unsupported(u)) = &e {
                    v["error"]["unsupported"] = json!({"construction": u.construction, "reason": u.reason});
                }
                println!("{v}");
            }
            eprintln!("mstd: {msg}");
            ExitCode::from(code)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Overflow(_) => "overflow",
        Error::Budget { .. } => "budget",
        Error::Parse { .. } => "parse",
        Error::Unbound(_) => "unbound",
        Error::Verification(_) => "verification",
        Error::Unsupported(_) => "unsupported",
        Error::Json(_) => "json",
        Error::Io(_) => "io",
    }
}

/// `value` as a JSON object with `"schema": 1` and `"command"` in front.
fn document(command: &str, value: impl Serialize) -> Result<Value, CliError> {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(1));
    out.insert("command".into(), json!(command));
    match serde_json::to_value(value).map_err(Error::from)? {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Ok(Value::Object(out))
}

fn read_set(arg: &str, lenient: bool) -> Result<IntSet, CliError> {
    let mode = if lenient { ParseMode::Lenient } else { ParseMode::Strict };
    Ok(match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            parse_json(&text, mode)?
        }
        None => parse_text(arg, mode)?,
    })
}

/// A seed from the command line, or a fresh one announced on stderr.
fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Construct(c) => construct(c),
        Command::Eval { expr, sets } => {
            let e = parse(expr)?;
            let mut env = Env::new();
            for s in sets {
                let (name, value) = s
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("--set {s:?} is not NAME=SET")))?;
                env.insert(name.trim(), read_set(value.trim(), cli.lenient)?);
            }
            let result = e.eval(&env)?;
            let text = format!("{result}\ncardinality {}\n", result.len());
            let json = document(
                "eval",
                json!({"expr": e.to_string(), "set": result, "cardinality": result.len()}),
            )?;
            Ok(Output::ok(json, text))
        }
        Command::Compare { set, pairs } => {
            let a = read_set(set, cli.lenient)?;
            let rep = compare(&a, pairs)?;
            let mut text = String::new();
            for r in &rep.rows {
                text += &format!("|{}| = {}\n", r.pair, r.cardinality);
            }
            for g in &rep.gaps {
                text += &format!("{} - {}: {:+}\n", g.lhs, g.rhs, g.gap);
            }
            text += &format!("classification {}\n", rep.classification.as_str());
            Ok(Output::ok(document("compare", &rep)?, text))
        }
        Command::Stabilize { set, horizon, window } => {
            let a = read_set(set, cli.lenient)?;
            let rep = stabilize(&a)?;
            let mut text = format!(
                "|kA| = {}k - {} for k >= {} (bound {})\n",
                rep.slope, rep.c, rep.onset, rep.bound
            );
            let mut json = json!({"stabilization": rep});
            if *horizon {
                let h = generational_horizon(&a, *window)?;
                text += &format!("kA is not sum-dominant for k in [{}, {}]\n", h.k0, h.k0 + h.window);
                json["horizon"] = serde_json::to_value(&h).map_err(Error::from)?;
            }
            Ok(Output::ok(document("stabilize", json)?, text))
        }
        Command::Density(d) => density(d),
        Command::Enumerate { n, predicate } => {
            let r = exhaustive_count(*n, predicate)?;
            let mut text = format!("{} of {} subsets of [0,{}] satisfy {predicate}\n", r.count, r.total, n.saturating_sub(1));
            for w in &r.witnesses {
                text += &format!("  {w}\n");
            }
            Ok(Output::ok(document("enumerate", json!({"predicate": predicate.to_string(), "count": r}))?, text))
        }
        Command::Embed { set, wins, loses, m, trials, seed } => {
            let seed = seed_or_fresh(*seed);
            let spec = EmbedSpec::new(read_set(set, cli.lenient)?, *wins, *loses, *m)?;
            let r = embedding_success_rate(&spec, MiddleFill::Random, *trials, seed)?;
            let text = format!(
                "{} of {} embeddings keep |{wins}| > |{loses}| (rate {:.6}, floor {:.6}, seed {seed})\n",
                r.hits, r.trials, r.rate, r.floor
            );
            let failed = !r.meets_floor;
            Ok(Output { json: vec![document("embed", &r)?], text, failed })
        }
        Command::Verify(v) => verify(v),
    }
}

fn construct(c: &Construct) -> Result<Output, CliError> {
    let r = match c {
        Construct::Generalized { pairs: (p1, p2), n } => build_generalized_mstd(*p1, *p2, *n)?,
        Construct::Supernice { k, pair, n } => build_supernice(*k, pair.s, pair.d, *n)?,
        Construct::Chain { k, levels } => build_chain(&ChainSpec {
            k: *k,
            levels: levels.iter().map(|&(wins, loses)| ChainLevel { wins, loses }).collect(),
        })?,
        Construct::Kgen { k } => build_k_generational(*k)?,
        Construct::Simultaneous { k, pairs } => build_simultaneous(*k, pairs)?,
        Construct::Arbdiff { a, b, c, d, m, ell } => {
            build_arbitrary_difference(&ArbDiffSpec { a: *a, b: *b, c: *c, d: *d, m: *m, ell: *ell })?
        }
    };
    Ok(Output::ok(document("construct", &r)?, construction_text(&r)))
}

fn construction_text(r: &ConstructionResult) -> String {
    let mut text = format!("{}\n", r.provenance);
    match (&r.set, &r.expansion) {
        (Some(a), _) => text += &format!("set ({} elements, max {}): {a}\n", a.len(), r.n),
        (None, Some(e)) => {
            text += &format!(
                "set not listed: {} digits in radix {}, max element {}\n",
                e.digits.len(),
                e.radix,
                r.n
            );
            for (i, d) in e.digits.iter().enumerate() {
                text += &format!("  digit {i}: {d}\n");
            }
        }
        (None, None) => {}
    }
    for c in &r.claims {
        text += &format!("|{}| = {}, |{}| = {}, gap {:+}\n", c.lhs, c.lhs_card, c.rhs, c.rhs_card, c.gap);
    }
    text += &format!("verified by {:?}\n", r.verified_by);
    text
}

fn density(d: &DensityArgs) -> Result<Output, CliError> {
    let mut cfg = match &d.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig {
            n: d.n.or_else(|| d.sweep.as_ref().and_then(|s| s.first().copied())).ok_or_else(|| {
                CliError::Usage("density needs --n, --sweep or --config".into())
            })?,
            model: d.model.clone(),
            p: d.p,
            predicate: d.predicate.clone(),
            trials: d.trials,
            seed: d.seed,
            sweep: d.sweep.clone(),
        },
    };
    if cfg.trials > 0 && cfg.seed.is_none() {
        cfg.seed = Some(seed_or_fresh(None));
    }
    let lines = cfg.run()?;
    let mut text = String::new();
    let mut json = Vec::new();
    for line in &lines {
        text += &match &line.result {
            Outcome::Estimate(e) => format!(
                "n = {}: {} / {} = {:.6e}, 95% CI [{:.6e}, {:.6e}], seed {}\n",
                e.n, e.hits, e.trials, e.estimate, e.ci_low, e.ci_high, e.seed
            ),
            Outcome::Exact(c) => format!("n = {}: {} of {} subsets\n", c.n, c.count, c.total),
        };
        let mut v = serde_json::to_value(line).map_err(Error::from)?;
        v["config"] = serde_json::to_value(&cfg).map_err(Error::from)?;
        json.push(v);
    }
    Ok(Output { json, text, failed: false })
}

fn verify(v: &VerifyArgs) -> Result<Output, CliError> {
    if *v.k.as_ref().map(|r| r.start()).unwrap_or(&2) < 2 && v.suite != Suite::Deficits {
        return Err(CliError::Usage("--k must start at 2 or more".into()));
    }
    let rep = match v.suite {
        Suite::XLyR => verify::xlyr(v.k.clone().unwrap_or(2..=6), v.xy.clone().unwrap_or(0..=4))?,
        Suite::Basexp => {
            let seed = seed_or_fresh(v.seed);
            let mut rep = verify::basexp(v.trials, 3, seed)?;
            rep.seed = Some(seed);
            rep
        }
        Suite::GapOne => verify::gap_one(v.k.clone().unwrap_or(2..=4))?,
        Suite::Deficits => verify::deficits(v.k.clone().unwrap_or(2..=2), v.m)?,
    };
    let mut text = format!(
        "{}: {} cases, {} passed, {} failed",
        rep.suite, rep.cases, rep.passed, rep.failures
    );
    if rep.unsupported > 0 {
        text += &format!(", {} declined as unsupported", rep.unsupported);
    }
    text.push('\n');
    if let Some(c) = &rep.first_counterexample {
        text += &format!("first counterexample: {c}\n");
    }
    let failed = rep.failures > 0;
    Ok(Output { json: vec![document("verify", &rep)?], text, failed })
}
