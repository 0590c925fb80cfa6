use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mstd_core::density::Predicate;
use mstd_core::SignedPair;

#[derive(Parser, Debug)]
#[command(name = "mstd", version, about = "Sum-dominant sets: construct, evaluate, compare, estimate")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// More detail on stderr; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    /// Accept unsorted or repeated elements in set arguments.
    #[arg(long, global = true)]
    pub lenient: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a set with prescribed combination sizes.
    #[command(subcommand)]
    Construct(Construct),
    /// Evaluate a sumset expression such as "3A-2A".
    Eval {
        expr: String,
        /// NAME=SET, where SET is a comma list or @file.json.
        #[arg(long = "set", value_name = "NAME=SET")]
        sets: Vec<String>,
    },
    /// Cardinalities of signed combinations sA-dA, with consecutive gaps.
    Compare {
        /// Comma list or @file.json.
        #[arg(long)]
        set: String,
        #[arg(long, num_args = 1.., required = true, value_name = "S,D")]
        pairs: Vec<SignedPair>,
    },
    /// Where |kA| becomes linear, and optionally where kA stops being sum-dominant.
    Stabilize {
        #[arg(long)]
        set: String,
        /// Also find the generational horizon.
        #[arg(long)]
        horizon: bool,
        #[arg(long, default_value_t = mstd_core::analysis::DEFAULT_WINDOW)]
        window: u32,
    },
    /// Monte Carlo or exhaustive density of a predicate; prints one JSON line per size.
    Density(DensityArgs),
    /// Count every subset of [0, n-1] satisfying a predicate.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "sum-dominant")]
        predicate: Predicate,
    },
    /// Success rate of random-middle embeddings of a seed set.
    Embed {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "2,0")]
        wins: SignedPair,
        #[arg(long, default_value = "1,1")]
        loses: SignedPair,
        /// Ambient span; defaults to 6(s1+d1)n.
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run an oracle suite over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// |s1 A - d1 A| = |s2 A - d2 A| + 1, balanced below that level.
    Generalized {
        #[arg(long, value_name = "S1,D1,S2,D2", value_parser = parse_two_pairs)]
        pairs: (SignedPair, SignedPair),
        #[arg(long)]
        n: Option<i64>,
    },
    /// |sA - dA| beats every other level-k combination by exactly 1.
    Supernice {
        #[arg(long)]
        k: u32,
        #[arg(long, value_name = "S,D")]
        pair: SignedPair,
        #[arg(long)]
        n: Option<i64>,
    },
    /// One set meeting a constraint |xA - yA| > |wA - zA| at each listed level.
    Chain {
        #[arg(long)]
        k: u32,
        #[arg(long = "level", value_name = "X,Y,W,Z", value_parser = parse_two_pairs)]
        levels: Vec<(SignedPair, SignedPair)>,
    },
    /// A, 2A, ..., kA all sum-dominant.
    Kgen {
        #[arg(long)]
        k: u32,
    },
    /// Level-k combinations strictly increasing in the listed order.
    Simultaneous {
        #[arg(long)]
        k: u32,
        #[arg(long, num_args = 2.., required = true, value_name = "S,D")]
        pairs: Vec<SignedPair>,
    },
    /// |aA - bA| = qn+1-m and |cA - dA| = qn+1-ell.
    Arbdiff {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: u32,
    },
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// Experiment config (JSON). Flags below are ignored when given.
    #[arg(long, conflicts_with_all = ["n", "sweep"])]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Several sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sweep: Option<Vec<u32>>,
    #[arg(long, default_value = "uniform")]
    pub model: String,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value = "sum-dominant")]
    pub predicate: String,
    /// 0 asks for an exhaustive count.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Closed form for xL + yR.
    #[value(name = "xLyR")]
    XLyR,
    /// Cardinalities multiply across base-expansion digits.
    #[value(name = "basexp")]
    Basexp,
    /// The +1-gap builder on every ordered pair comparison.
    #[value(name = "gap-one")]
    GapOne,
    /// The prescribed-deficit builder on every deficit combination.
    #[value(name = "deficits")]
    Deficits,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Which oracle suite to run.
    #[arg(long = "lemma", value_enum)]
    pub suite: Suite,
    /// Levels (half-levels q/2 for deficits), e.g. 2..6.
    #[arg(long, value_parser = parse_range)]
    pub k: Option<RangeInclusive<u32>>,
    /// Copies of each fringe for xLyR, e.g. 0..4.
    #[arg(long, value_parser = parse_range)]
    pub xy: Option<RangeInclusive<u32>>,
    /// Largest deficit m for the deficits suite.
    #[arg(long, default_value_t = 6)]
    pub m: u32,
    /// Random tuples for basexp.
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => num(s)?..=num(s)?,
    };
    if r.is_empty() {
        return Err(format!("range {s} is empty"));
    }
    Ok(r)
}

/// `s1,d1,s2,d2`.
pub fn parse_two_pairs(s: &str) -> Result<(SignedPair, SignedPair), String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c, d] => Ok((SignedPair::new(a, b), SignedPair::new(c, d))),
        _ => Err(format!("expected four numbers, got {}", v.len())),
    }
}
