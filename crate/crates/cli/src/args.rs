use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use snspec_core::engine::Variant;

#[derive(Debug, Parser)]
#[command(
    name = "snspec",
    version,
    about = "Exact certificates for the spectral proof that maximum k-intersecting families of permutations are k-cosets",
    after_help = "Exit status: 0 on success, 1 on usage or input errors, 2 when an instance contradicts a certified theorem.\n\
                  SNSPEC_MAX_N overrides the size caps; it is clamped to each module's hard limit."
)]
pub struct Cli {
    /// Output format; csv is available for chartab and spectrum only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Even,
    Odd,
    Combined,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Even => Variant::Even,
            VariantArg::Odd => Variant::Odd,
            VariantArg::Combined => Variant::Combined,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertifyMode {
    Cyclic,
    Affine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table of S_n.
    Chartab {
        #[arg(long)]
        n: usize,
    },
    /// Spectrum of Γ_k (--k) or of the Cayley graph of one class (--class "3+2").
    #[command(group(ArgGroup::new("what").required(true).multiple(true).args(["k", "class"])))]
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        class: Option<String>,
    },
    /// Build the weighted combination Y and classify its spectrum.
    BuildY {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Combined)]
        variant: VariantArg,
    },
    /// Decide whether a combination with minimum eigenvalue ω exists.
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Hoffman-type bounds from ω and from the plain spectrum of Γ_k.
    Hoffman {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also report the cross-intersecting bound.
        #[arg(long)]
        cross: bool,
    },
    /// The span V_k of k-coset indicators.
    Vk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Compute the exact rank of the coset indicators.
        #[arg(long)]
        check_rank: bool,
        /// A group function {"n": N, "values": ["p/q", ...]} to test for membership.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Split a Boolean function in V_k into disjoint k-cosets.
    Peel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Check or decompose a tuple matrix {"n", "k", "entries"}.
    #[command(group(ArgGroup::new("action").required(true).args(["check", "decompose"])))]
    Birkhoff {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        decompose: bool,
    },
    /// Exhaustive search for maximum k-intersecting families.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        all_extremal: bool,
        #[arg(long)]
        symmetry_reduce: bool,
    },
    /// Sharply transitive partition certificates.
    #[command(group(ArgGroup::new("order").required(true).args(["n", "q"])))]
    Certify {
        #[arg(long, value_enum)]
        mode: CertifyMode,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
}
