//! Run configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use vol3_core::congruence::DEFAULT_CAP;
use vol3_core::numbers::check_radicand;
use vol3_core::pell::PrimeRule;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Transcription,
    Forms,
    Conjugacy,
    LeftRegular,
    Pell,
    Primes,
    Image,
    Su,
    Kernel,
    Systole,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Transcription,
        Suite::Forms,
        Suite::Conjugacy,
        Suite::LeftRegular,
        Suite::Pell,
        Suite::Primes,
        Suite::Image,
        Suite::Su,
        Suite::Kernel,
        Suite::Systole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Transcription => "transcription",
            Suite::Forms => "forms",
            Suite::Conjugacy => "conjugacy",
            Suite::LeftRegular => "left-regular",
            Suite::Pell => "pell",
            Suite::Primes => "primes",
            Suite::Image => "image",
            Suite::Su => "su",
            Suite::Kernel => "kernel",
            Suite::Systole => "systole",
        }
    }

    /// Suites that depend only on the symbolic parameter t.
    pub fn is_symbolic(self) -> bool {
        matches!(
            self,
            Suite::Transcription | Suite::Forms | Suite::Conjugacy | Suite::LeftRegular | Suite::Image
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "md",
        }
    }
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(CliError::Usage(format!("unknown format {s:?}"))),
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_DEPTH: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub d: i64,
    pub depth: u32,
    pub prime_rule: PrimeRule,
    pub suites: BTreeSet<Suite>,
    pub format: Format,
    pub seed: u64,
    pub cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            d: 3,
            depth: DEFAULT_DEPTH,
            prime_rule: PrimeRule::default(),
            suites: Suite::ALL.into_iter().collect(),
            format: Format::Json,
            seed: DEFAULT_SEED,
            cap: DEFAULT_CAP,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_radicand(self.d).map_err(|_| CliError::Usage(format!("d = {} must be square-free and >= 2", self.d)))?;
        if self.cap == 0 {
            return Err(CliError::Usage("cap must be positive".into()));
        }
        Ok(())
    }

    /// The suites that actually run: with depth 0 only the symbolic ones.
    pub fn active_suites(&self) -> BTreeSet<Suite> {
        self.suites
            .iter()
            .copied()
            .filter(|s| self.depth > 0 || s.is_symbolic())
            .collect()
    }
}
