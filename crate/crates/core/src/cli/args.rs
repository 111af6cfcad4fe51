use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "nsopt", version, about = "Simplify nested sums to minimal nesting depth")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Largest power `e` of the denominator atoms `1/a^e` tried as summands.
    #[arg(long, env = "NSOPT_MAX_ATOM_POWER", default_value_t = 6)]
    pub max_atom_power: u32,
    /// Largest total degree of the generator monomial in candidate summands.
    #[arg(long, default_value_t = 3)]
    pub max_monomial_degree: u32,
    /// Register a product generator before compiling: `alpha,r` gives
    /// `t(n) = prod_{i=r}^n alpha(i-1)`; `alpha` is a rational function of n.
    #[arg(long, value_name = "ALPHA,R")]
    pub with_product: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rewrite an expression at minimal depth and check the result exactly.
    Simplify {
        /// Expression in n.
        #[arg(required_unless_present = "file")]
        expr: Option<String>,
        /// Read the expression from a file.
        #[arg(long, conflicts_with = "expr")]
        file: Option<PathBuf>,
        /// Number of values checked after the validity bound.
        #[arg(long, default_value_t = 60)]
        verify_range: u64,
        /// Print the generators of the constructed tower.
        #[arg(long)]
        emit_tower: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Print harmonic sums as H(n) and H(o,n).
        #[arg(long)]
        h_sugar: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare two expressions exactly on n = 0..range.
    Verify {
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 60)]
        range: u64,
    },
    /// Find g with g(n+1) - g(n) = f(n+1) without raising the depth of f.
    Telescope {
        /// Summand f in n.
        expr: String,
        #[arg(long)]
        h_sugar: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}
