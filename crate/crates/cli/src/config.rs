//! Command-line flags and the run configuration embedded in every output.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sa2::pingpong::{CertifyConfig, EtaMode};
use sa2::spectral::{ActionMode, NormConfig};

#[derive(Parser, Debug)]
#[command(name = "sa2", version, about = "Certified free pairs in SA(2,Z) and their consequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Certify,
    Recheck,
    FreeCheck,
    Paradox,
    Gap,
    QuotientCheck,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for a ping-pong pair and write its certificate.
    Certify(Flags),
    /// Re-derive every stored quantity of a certificate.
    Recheck(Flags),
    /// Brute-force freeness and local commutativity of a certified pair or
    /// of a two-element set `a`, `b`.
    FreeCheck(Flags),
    /// Four-piece decomposition of one free orbit of a certified pair.
    Paradox(Flags),
    /// Spectral gap table over a list of moduli.
    Gap(Flags),
    /// Closure of the reduction of the set modulo each prime.
    QuotientCheck(Flags),
}

impl Command {
    pub fn split(self) -> (CommandKind, Flags) {
        match self {
            Command::Certify(f) => (CommandKind::Certify, f),
            Command::Recheck(f) => (CommandKind::Recheck, f),
            Command::FreeCheck(f) => (CommandKind::FreeCheck, f),
            Command::Paradox(f) => (CommandKind::Paradox, f),
            Command::Gap(f) => (CommandKind::Gap, f),
            Command::QuotientCheck(f) => (CommandKind::QuotientCheck, f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaFlag {
    Paper,
    Data,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeFlag {
    Plane,
    Cayley,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Generating set (`a11 a12 a21 a22 | tx ty` per line) or certificate.
    #[arg(long)]
    pub input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub power_budget: u64,
    #[arg(long, default_value_t = sa2::arith::ball::DEFAULT_BALL_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub ball_cap: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub lfree: u64,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub lcomm: u64,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub orbit_radius: u64,
    #[arg(long, value_enum, default_value_t = EtaFlag::Data)]
    pub eta_mode: EtaFlag,
    #[arg(long, value_enum, default_value_t = ModeFlag::Plane)]
    pub mode: ModeFlag,
    /// Comma-separated moduli; `a..b` ranges are inclusive.
    #[arg(long, default_value = "")]
    pub moduli: String,
    #[arg(long, default_value_t = 1e-11)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Everything that influences an output, serialized into it.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: CommandKind,
    pub input: String,
    pub power_budget: u64,
    pub ball_cap: u64,
    pub lfree: u64,
    pub lcomm: u64,
    pub orbit_radius: u64,
    pub eta_mode: EtaFlag,
    pub mode: ModeFlag,
    pub moduli: Vec<u64>,
    pub tol: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(kind: CommandKind, f: &Flags) -> Result<Self, String> {
        if !(f.tol > 0.0 && f.tol < 1.0) {
            return Err(format!("tolerance {} outside (0, 1)", f.tol));
        }
        Ok(Self {
            subcommand: kind,
            input: f.input.display().to_string(),
            power_budget: f.power_budget,
            ball_cap: f.ball_cap,
            lfree: f.lfree,
            lcomm: f.lcomm,
            orbit_radius: f.orbit_radius,
            eta_mode: f.eta_mode,
            mode: f.mode,
            moduli: parse_moduli(&f.moduli)?,
            tol: f.tol,
            seed: f.seed,
        })
    }

    pub fn certify(&self) -> CertifyConfig {
        CertifyConfig {
            power_budget: self.power_budget as usize,
            ball_cap: self.ball_cap as usize,
            eta_mode: match self.eta_mode {
                EtaFlag::Paper => EtaMode::Paper,
                EtaFlag::Data => EtaMode::Data,
            },
            ..CertifyConfig::default()
        }
    }

    pub fn norm(&self) -> NormConfig {
        NormConfig {
            tol: self.tol,
            seed: self.seed,
            ..NormConfig::default()
        }
    }

    pub fn action(&self) -> ActionMode {
        match self.mode {
            ModeFlag::Plane => ActionMode::Plane,
            ModeFlag::Cayley => ActionMode::Cayley,
        }
    }
}

pub fn parse_moduli(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("bad modulus '{part}'");
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if let Some(n) = out.iter().find(|&&n| n < 2) {
        return Err(format!("modulus {n} below 2"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_lists() {
        assert_eq!(parse_moduli("").unwrap(), Vec::<u64>::new());
        assert_eq!(parse_moduli("2,3, 5").unwrap(), vec![2, 3, 5]);
        assert_eq!(parse_moduli("2..5,9").unwrap(), vec![2, 3, 4, 5, 9]);
        assert!(parse_moduli("1").is_err());
        assert!(parse_moduli("x").is_err());
    }
}
