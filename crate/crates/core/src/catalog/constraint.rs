use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{MathError, RatFunc, Scalar, Var};

/// An open condition on family parameters.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Constraint {
    NonZero { expr: RatFunc },
    NotEqual { lhs: RatFunc, rhs: RatFunc },
    /// The tuples differ in at least one coordinate.
    TupleNotEqual { lhs: Vec<RatFunc>, rhs: Vec<RatFunc> },
}

impl Constraint {
    /// Parse `expr != 0`, `a != b` or `(a, b) != (c, d)`.
    pub fn parse(s: &str) -> Result<Constraint> {
        let (l, r) = s
            .split_once("!=")
            .ok_or_else(|| Error::Math(MathError::Parse(format!("expected `!=` in `{s}`"))))?;
        let (l, r) = (l.trim(), r.trim());
        let tuple = |t: &str| -> Option<Result<Vec<RatFunc>>> {
            let inner = t.strip_prefix('(')?.strip_suffix(')')?;
            if !inner.contains(',') {
                return None;
            }
            Some(inner.split(',').map(|x| Ok(x.trim().parse::<RatFunc>()?)).collect())
        };
        if let (Some(lt), Some(rt)) = (tuple(l), tuple(r)) {
            return Ok(Constraint::TupleNotEqual { lhs: lt?, rhs: rt? });
        }
        let lhs: RatFunc = l.parse()?;
        let rhs: RatFunc = r.parse()?;
        if rhs.is_zero() {
            Ok(Constraint::NonZero { expr: lhs })
        } else {
            Ok(Constraint::NotEqual { lhs, rhs })
        }
    }

    /// Expressions that must not vanish simultaneously.
    pub fn differences(&self) -> Vec<RatFunc> {
        match self {
            Constraint::NonZero { expr } => vec![expr.clone()],
            Constraint::NotEqual { lhs, rhs } => vec![lhs - rhs],
            Constraint::TupleNotEqual { lhs, rhs } => lhs.iter().zip(rhs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn holds_at(&self, point: &BTreeMap<Var, Scalar>) -> std::result::Result<bool, MathError> {
        for d in self.differences() {
            if !d.eval(point)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Holds for every parameter value.
    pub fn is_trivially_true(&self) -> bool {
        self.differences().iter().any(|d| d.constant_value().is_some_and(|c| !c.is_zero()))
    }

    /// Fails for every parameter value.
    pub fn is_trivially_false(&self) -> bool {
        self.differences().iter().all(RatFunc::is_zero)
    }

    pub fn substitute(&self, map: &BTreeMap<Var, RatFunc>) -> Result<Constraint> {
        let s = |x: &RatFunc| -> Result<RatFunc> { Ok(x.substitute(map)?) };
        Ok(match self {
            Constraint::NonZero { expr } => Constraint::NonZero { expr: s(expr)? },
            Constraint::NotEqual { lhs, rhs } => Constraint::NotEqual { lhs: s(lhs)?, rhs: s(rhs)? },
            Constraint::TupleNotEqual { lhs, rhs } => Constraint::TupleNotEqual {
                lhs: lhs.iter().map(s).collect::<Result<_>>()?,
                rhs: rhs.iter().map(s).collect::<Result<_>>()?,
            },
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[RatFunc]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            Constraint::NonZero { expr } => write!(f, "{expr} != 0"),
            Constraint::NotEqual { lhs, rhs } => write!(f, "{lhs} != {rhs}"),
            Constraint::TupleNotEqual { lhs, rhs } => write!(f, "({}) != ({})", join(lhs), join(rhs)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(pairs: &[(Var, i64)]) -> BTreeMap<Var, Scalar> {
        pairs.iter().map(|(v, x)| (*v, Scalar::from_int(*x))).collect()
    }

    #[test]
    fn parse_forms() {
        assert!(matches!(Constraint::parse("beta != 0").unwrap(), Constraint::NonZero { .. }));
        assert!(matches!(Constraint::parse("beta != alpha").unwrap(), Constraint::NotEqual { .. }));
        assert!(matches!(
            Constraint::parse("(alpha, gamma) != (1, beta)").unwrap(),
            Constraint::TupleNotEqual { .. }
        ));
        assert!(Constraint::parse("beta = 0").is_err());
    }

    #[test]
    fn tuple_constraint_semantics() {
        let c = Constraint::parse("(alpha, gamma) != (1, beta)").unwrap();
        assert!(!c.holds_at(&pt(&[(Var::Alpha, 1), (Var::Beta, 2), (Var::Gamma, 2)])).unwrap());
        assert!(c.holds_at(&pt(&[(Var::Alpha, 1), (Var::Beta, 2), (Var::Gamma, 3)])).unwrap());
        assert!(c.holds_at(&pt(&[(Var::Alpha, 0), (Var::Beta, 2), (Var::Gamma, 2)])).unwrap());
    }

    #[test]
    fn display_round_trips() {
        for s in ["beta != 0", "beta != alpha", "(alpha, gamma) != (1, beta)"] {
            let c = Constraint::parse(s).unwrap();
            assert_eq!(c.to_string(), s);
            assert_eq!(Constraint::parse(&c.to_string()).unwrap(), c);
        }
    }
}
