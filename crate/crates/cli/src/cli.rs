//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "hecke", version, about = "Kazhdan-Lusztig cells, the a-function and the ring J for unequal parameters")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct GlobalArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cache directory (default: $HECKE_CACHE_DIR, then the user cache dir).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write cached tables.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct InstanceArgs {
    /// Group preset: A, B, D, I2, H3, H4, F4.
    #[arg(long = "type", value_name = "TYPE")]
    pub group_type: Option<String>,
    /// Rank for types A, B, D.
    #[arg(long)]
    pub rank: Option<usize>,
    /// m for I2(m).
    #[arg(long)]
    pub m: Option<u32>,
    /// Raw Coxeter matrix, rows separated by ';', e.g. "1,4;4,1".
    #[arg(long, conflicts_with = "group_type")]
    pub matrix: Option<String>,
    /// Weights: "s1=3,s2=2", or vectors "s1=0:1,s2=1:0".
    #[arg(long)]
    pub weights: Option<String>,
    /// Monomial order: "lex", "lex:1,0" or "weights:1,1;0,1".
    #[arg(long)]
    pub order: Option<String>,
    /// Read the whole instance configuration from a JSON file.
    #[arg(long, conflicts_with_all = ["group_type", "matrix", "weights", "order"])]
    pub config: Option<PathBuf>,
    /// Seed for every sampled check.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kazhdan-Lusztig polynomials p_{y,w} and μ-terms.
    Klpolys(InstanceArgs),
    /// Structure constants h_{x,y,z}.
    Hconsts(InstanceArgs),
    /// Left, right and two-sided cells with the two-sided order.
    Cells(InstanceArgs),
    /// a, Δ, n, the set 𝒟 and γ.
    Afn(InstanceArgs),
    /// The γ table of J with an associativity and unit certificate.
    Jring(InstanceArgs),
    /// φ(C_w) in J_A.
    Phi(InstanceArgs),
    /// ψ: H → A[W] with its certificate.
    Psi {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Pairs sampled when |W| > 48.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Check P1-P15 and E1-E4.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        /// "all" or a list such as "P1,P4,E3".
        #[arg(long, default_value = "all")]
        props: String,
        /// star, direct or p15prime.
        #[arg(long, default_value = "star")]
        p15_mode: String,
        /// Samples for direct P15 checks above the exhaustive limit.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Character table and a-values for E1/E2 (built in for rank 2).
        #[arg(long)]
        chartable: Option<PathBuf>,
        /// Also run the table and ring sanity checks.
        #[arg(long)]
        structure: bool,
    },
    /// Closed forms for I2(m), m even, L(s1) > L(s2).
    OracleDihedral {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        order: Option<String>,
        /// Compare against computed tables.
        #[arg(long)]
        compare: bool,
    },
    /// Search I2(4) and B2 with unequal weights for negative coefficients.
    Negativity {
        /// Largest weight tried.
        #[arg(long, default_value_t = 4)]
        max_weight: i32,
    },
}
