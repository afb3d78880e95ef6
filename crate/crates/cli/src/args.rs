use std::ops::RangeInclusive;

use blockwise_core::counting::Method;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "blockwise",
    version,
    about = "Block-wise simple permutations: counts, interval posets, polygon dissections, gamma expansions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// w_n and s_n, the numbers of block-wise simple and simple permutations
    /// (default method: recursion)
    Count(Opts),
    /// Distinct interval posets of block-wise simple permutations
    /// (default method: series)
    Posets(Opts),
    /// Dissections of the (n+1)-gon whose faces all have 5 or more sides
    Polygon(Opts),
    /// Gamma expansions of the two-sided Eulerian polynomials of Simp_n and W_n
    Gamma(Opts),
    /// R_n, the share of S_n that is block-wise simple but not simple
    /// (default method: recursion)
    Ratio(Opts),
    /// Simplicity, decomposition tree and poset signature of one permutation
    Classify(ClassifyOpts),
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// A single n or an inclusive range a..b
    #[arg(long, value_parser = parse_range)]
    pub n: NRange,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Recompute with every other applicable method and compare; exits 2 on
    /// a mismatch
    #[arg(long)]
    pub check: bool,
    /// Worker threads (default: all cores)
    #[arg(long, value_parser = parse_positive)]
    pub workers: Option<usize>,
    /// Largest n for exhaustive enumeration (default 10, at most 12 without
    /// --unsafe)
    #[arg(long)]
    pub cap: Option<usize>,
    /// Lift the cap ceiling; alone it raises the default cap to 11
    #[arg(long = "unsafe")]
    pub unsafe_: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyOpts {
    /// e.g. 4253716 or 10,2,7,4,1,9,5,3,8,6
    pub permutation: String,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub fn iter(&self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

fn parse_range(s: &str) -> Result<NRange, String> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("{x:?} is not a non-negative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo == 0 {
        return Err("n must be at least 1".into());
    }
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(NRange { lo, hi })
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("{s:?} is not a positive integer")),
        Ok(k) => Ok(k),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bruteforce,
    Recursion,
    Series,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Bruteforce => Method::Bruteforce,
            MethodArg::Recursion => Method::Recursion,
            MethodArg::Series => Method::Series,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

pub const DEFAULT_CAP: usize = blockwise_core::DEFAULT_CAP;
pub const UNSAFE_DEFAULT_CAP: usize = 11;
pub const SAFE_CAP_CEILING: usize = 12;

impl Opts {
    pub fn cap(&self) -> Result<usize, String> {
        match (self.cap, self.unsafe_) {
            (None, false) => Ok(DEFAULT_CAP),
            (None, true) => Ok(UNSAFE_DEFAULT_CAP),
            (Some(c), false) if c > SAFE_CAP_CEILING => Err(format!(
                "--cap {c} is above {SAFE_CAP_CEILING}; pass --unsafe to allow it"
            )),
            (Some(c), _) => Ok(c),
        }
    }
}
