use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

#[derive(Debug, Parser)]
#[command(name = "galosc", version, about = "Spectra and consistency checks for the arbitrary-spin Galilean oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form level table up to an energy cutoff.
    Spectrum(SpectrumArgs),
    /// Run the symbolic and numerical consistency checks.
    Verify(VerifyArgs),
    /// Compare engine, closed form and radial solver level by level.
    Crosscheck(CrosscheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Exact rational given as `7`, `7/2` or `3.5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalArg(pub Rational64);

impl FromStr for RationalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("not a rational number: {s:?}");
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Self(Rational64::new(n, d)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let whole: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
            let den = 10i64.pow(frac.len() as u32);
            let f: i64 = frac.parse().map_err(|_| bad())?;
            let mag = whole.abs() * den + f;
            return Ok(Self(Rational64::new(if negative { -mag } else { mag }, den)));
        }
        s.parse::<i64>().map(|n| Self(Rational64::from_integer(n))).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, Args)]
pub struct PhysicsArgs {
    /// Twice the spin, 2S.
    #[arg(long = "two-s")]
    pub two_s: u32,
    /// Spin-orbit strength of the non-minimal theory.
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    pub lambda: RationalArg,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Fock-space cutoff on the total oscillator quanta.
    #[arg(long = "n-max", default_value_t = 8)]
    pub n_max: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Largest E/ω to list.
    #[arg(long = "e-max", allow_negative_numbers = true)]
    pub e_max: RationalArg,
    /// Largest ℓ to list; defaults to floor(e_max).
    #[arg(long = "l-max")]
    pub l_max: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Largest ℓ in the zero-energy family report.
    #[arg(long = "l-max", default_value_t = 4)]
    pub l_max: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CrosscheckArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Radial box size; defaults to 12/√(Mω).
    #[arg(long = "r-max")]
    pub r_max: Option<f64>,
    /// Interior radial grid points.
    #[arg(long, default_value_t = 2000)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
