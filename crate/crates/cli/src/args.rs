use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "arbor", version, about = "Level forests, Segal conditions and monoidal envelopes on finite windows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List trees up to isomorphism with corolla counts and automorphism orders.
    Enumerate,
    /// Check the level, root and shrub decompositions of a presheaf.
    CheckSegal,
    /// Compute the envelope at an object.
    Envelope,
    /// Run a property suite.
    Verify,
    /// Write DOT or JSON for a tree, a slice category, an envelope, a presheaf or an operad.
    Export {
        #[arg(long, value_enum, default_value_t = ExportWhat::Tree)]
        what: ExportWhat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternArg {
    Gamma,
    /// The plus construction of the point, i.e. simplices.
    Delta,
    Terminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceModeArg {
    Plus,
    Iso,
    Pre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Tree,
    Slice,
    Envelope,
    Presheaf,
    /// The `--operad` spec as JSON.
    Operad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Factorization,
    Segal,
    Envelope,
    Adjunction,
    Oracle,
    Counts,
    Automorphisms,
    Patterns,
    Lifts,
    Fuzz,
}

#[derive(Debug, Args)]
pub struct Opts {
    #[arg(long, value_enum, global = true, default_value_t = PatternArg::Gamma)]
    pub pattern: PatternArg,
    /// Maximum height (number of levels above the leaves).
    #[arg(long, global = true)]
    pub height: Option<usize>,
    /// Maximum size of every level.
    #[arg(long, global = true)]
    pub width: Option<usize>,
    /// Only trees of exactly `--height` levels.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Bound on every level of a slice object.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Bound on the total size of a forest.
    #[arg(long = "total-size", global = true)]
    pub total_size: Option<usize>,
    /// Largest pointed set for the factorization suite on Γ^op.
    #[arg(long, global = true, default_value_t = 4)]
    pub size: usize,
    /// Slice morphisms are plus-maps (the default).
    #[arg(long, global = true, overrides_with = "no_strict")]
    pub strict: bool,
    /// Slice morphisms are all natural transformations.
    #[arg(long = "no-strict", global = true, overrides_with = "strict")]
    pub no_strict: bool,
    /// Overrides the strict flags; `iso` keeps isomorphisms only.
    #[arg(long = "slice-mode", value_enum, global = true)]
    pub slice_mode: Option<SliceModeArg>,
    #[arg(long = "exclude-empty", global = true, overrides_with = "include_empty")]
    pub exclude_empty: bool,
    #[arg(long = "include-empty", global = true, overrides_with = "exclude_empty")]
    pub include_empty: bool,
    /// Extra room above the cap for the colimit's zigzags.
    #[arg(long, global = true, default_value_t = 0)]
    pub lookahead: usize,
    /// Operad JSON file, or the name of a built-in fixture.
    #[arg(long, global = true)]
    pub operad: Option<String>,
    /// Tabulated presheaf JSON (instead of a nerve).
    #[arg(long, global = true)]
    pub presheaf: Option<PathBuf>,
    /// `eta`, `c:N` or `@file.json`.
    #[arg(long, global = true, default_value = "eta")]
    pub object: String,
    /// Corrupt the presheaf at `--corrupt-at`: `remove:E` or `duplicate:E`.
    #[arg(long, global = true)]
    pub corrupt: Option<String>,
    #[arg(long = "corrupt-at", global = true)]
    pub corrupt_at: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub suite: Option<Suite>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}
