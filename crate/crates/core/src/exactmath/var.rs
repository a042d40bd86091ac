use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MathError;

/// Number of symbolic variables known to the arithmetic layer.
pub const NVARS: usize = 6;

/// The fixed variable set: family parameters, the degeneration parameter
/// `t`, and the two automorphism coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Alpha,
    Beta,
    Gamma,
    T,
    Xi,
    Nu,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Alpha, Var::Beta, Var::Gamma, Var::T, Var::Xi, Var::Nu];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::Gamma => "gamma",
            Var::T => "t",
            Var::Xi => "xi",
            Var::Nu => "nu",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha" | "α" => Ok(Var::Alpha),
            "beta" | "β" => Ok(Var::Beta),
            "gamma" | "γ" => Ok(Var::Gamma),
            "t" => Ok(Var::T),
            "xi" | "ξ" => Ok(Var::Xi),
            "nu" | "ν" => Ok(Var::Nu),
            other => Err(MathError::UnknownVariable(other.to_string())),
        }
    }
}
