use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lpbesov::exponent::parse_exponent;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "lpbesov", version, about = "Lorentz, Besov and interpolation experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Norm of a sampled field read from a JSON file.
    Norm(NormArgs),
    /// Randomized suite for the Lorentz-Besov inequality.
    Verify(VerifyArgs),
    /// Randomized suite for an interpolation estimate.
    Interp(InterpArgs),
    /// Growth table of the atomic sharpness family.
    Sharpness(SharpnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    Lebesgue,
    Lorentz,
    Besov,
    Triebel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    KEquivalence,
    Lemma1,
    Partition,
    Duality,
    Reiteration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    SingleBlock,
    MultiBlockRandom,
    Lacunary,
    Atomic,
}

#[derive(Debug, Args, Serialize)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub space: Space,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub q: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub r: Option<f64>,
    #[arg(long)]
    pub input: PathBuf,
    /// Coarsest block scale (default 0).
    #[arg(long, allow_negative_numbers = true)]
    pub jmin: Option<i32>,
    /// Finest block scale (default: largest the grid resolves).
    #[arg(long, allow_negative_numbers = true)]
    pub jmax: Option<i32>,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Output file; stdout when absent. A CSV report also gets a companion
    /// `.json` file next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub q0: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub q1: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub r0: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub r1: f64,
    /// Lorentz index of the left-hand side.
    #[arg(long, value_parser = parse_exponent, conflicts_with = "auto_r_star")]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub r: Option<f64>,
    /// Use the critical index `1/r* = (1-θ)/r0 + θ/r1`.
    #[arg(long)]
    pub auto_r_star: bool,
    #[arg(long, value_enum, default_value_t = Generator::MultiBlockRandom)]
    pub generator: Generator,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid points on the torus of period 2π.
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct InterpArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub r: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub q0: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub q1: Option<f64>,
    /// Second endpoint indices for `reiteration`.
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub r0: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub r1: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub suite_size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SharpnessArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub q0: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub q1: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub r0: f64,
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf")]
    pub r1: f64,
    /// Lorentz index (default: the critical index r*).
    #[arg(long, value_parser = parse_exponent)]
    #[serde(with = "lpbesov::exponent::serde_inf_opt")]
    pub r: Option<f64>,
    #[arg(long = "Lmin", default_value_t = 8)]
    #[serde(rename = "Lmin")]
    pub l_min: u32,
    #[arg(long = "Lmax", default_value_t = 64)]
    #[serde(rename = "Lmax")]
    pub l_max: u32,
    /// Vanishing moments N of the atom.
    #[arg(long, default_value_t = 2)]
    pub moments: u32,
    /// Bump exponent minus N (default N + 1, making the atom C^N).
    #[arg(long)]
    pub smoothness: Option<u32>,
    /// Samples per axis used for the atom's rearrangement (default 2048 in
    /// one dimension, 256 in two).
    #[arg(long)]
    pub resolution: Option<usize>,
    /// First scale of the family (default: smallest j with 2^{δj} >= 16).
    #[arg(long)]
    pub j1: Option<i32>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}
