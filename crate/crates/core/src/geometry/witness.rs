use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_compatible_variety, BasisChange, Product, TwoProductAlgebra, Variety};
use crate::catalog::{Catalog, Constraint};
use crate::error::{Error, Result};
use crate::exactmath::{RatFunc, Var};

/// Where a witness comes from.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum WitnessOrigin {
    /// Taken over unchanged from the published list of degenerations.
    Published,
    /// Published with an error; the corrected data is what the witness holds.
    Corrected {
        published_subst: BTreeMap<Var, RatFunc>,
        published_basis: BasisChange,
        note: String,
    },
    /// Constructed here for an arrow that was only cited.
    Derived { note: String },
}

/// A parametrised basis and parametrised index realising `source -> target`.
///
/// `param_subst` expresses the source parameters in `t` and the target
/// parameters; `basis` row `i` is `E_i(t)` in the source basis.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct DegenerationWitness {
    pub name: String,
    /// The variety whose classification uses this arrow.
    pub variety: Variety,
    pub source: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub param_subst: BTreeMap<Var, RatFunc>,
    pub basis: BasisChange,
    pub target: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub target_params: BTreeMap<Var, RatFunc>,
    /// Conditions on the target parameters needed by the basis.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub side_conditions: Vec<Constraint>,
    pub origin: WitnessOrigin,
}

impl DegenerationWitness {
    /// Whether the source parameters move with `t`.
    pub fn has_moving_index(&self) -> bool {
        self.param_subst.values().any(|f| f.contains(Var::T))
    }

    /// The same witness with the published (uncorrected) data, if it differs.
    pub fn as_published(&self) -> Option<DegenerationWitness> {
        match &self.origin {
            WitnessOrigin::Corrected { published_subst, published_basis, .. } => Some(DegenerationWitness {
                param_subst: published_subst.clone(),
                basis: published_basis.clone(),
                origin: WitnessOrigin::Published,
                ..self.clone()
            }),
            _ => None,
        }
    }
}

/// Why a witness does not realise its arrow.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum DegenerationFailure {
    /// A structure constant (1-based indices, `primed` for the second product)
    /// has a pole at `t = 0`.
    NoFiniteLimit { primed: bool, i: usize, j: usize, k: usize },
    MismatchedConstant { primed: bool, i: usize, j: usize, k: usize, limit: String, expected: String },
    Singular,
    Malformed { reason: String },
}

fn symbol(primed: bool, i: usize, j: usize, k: usize) -> String {
    format!("c{}{i}{j}^{k}", if primed { "'" } else { "" })
}

impl fmt::Display for DegenerationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationFailure::NoFiniteLimit { primed, i, j, k } => {
                write!(f, "no finite limit for {}", symbol(*primed, *i, *j, *k))
            }
            DegenerationFailure::MismatchedConstant { primed, i, j, k, limit, expected } => {
                write!(f, "{} tends to {limit}, expected {expected}", symbol(*primed, *i, *j, *k))
            }
            DegenerationFailure::Singular => f.write_str("basis is singular"),
            DegenerationFailure::Malformed { reason } => write!(f, "malformed witness: {reason}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum DegenerationOutcome {
    Pass,
    Fail { failure: DegenerationFailure },
}

impl DegenerationOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, DegenerationOutcome::Pass)
    }
}

fn malformed(reason: impl Into<String>) -> DegenerationFailure {
    DegenerationFailure::Malformed { reason: reason.into() }
}

fn check_substitution(
    name: &str,
    params: &[Var],
    subst: &BTreeMap<Var, RatFunc>,
    allowed: &[Var],
) -> std::result::Result<(), DegenerationFailure> {
    for p in params {
        if !subst.contains_key(p) {
            return Err(malformed(format!("no value for {} of {name}", p.name())));
        }
    }
    for (v, f) in subst {
        if !params.contains(v) {
            return Err(malformed(format!("{name} has no parameter {}", v.name())));
        }
        if let Some(bad) = f.variables().into_iter().find(|x| !allowed.contains(x)) {
            return Err(malformed(format!("{} of {name} depends on {}", v.name(), bad.name())));
        }
    }
    Ok(())
}

fn to_failure(e: Error) -> DegenerationFailure {
    match e {
        Error::SingularMatrix => DegenerationFailure::Singular,
        other => malformed(other.to_string()),
    }
}

/// The target's structure constants at `target_params`.
pub fn witness_target(cat: &Catalog, w: &DegenerationWitness) -> std::result::Result<TwoProductAlgebra, DegenerationFailure> {
    let fam = cat.family(&w.target).map_err(to_failure)?;
    let allowed = [Var::Alpha, Var::Beta, Var::Gamma];
    check_substitution(&w.target, &fam.params, &w.target_params, &allowed)?;
    fam.instantiate_symbolic(&w.target_params).map_err(to_failure)
}

/// Source constants in the parametrised basis, as functions of `t` and
/// the target parameters.
pub fn apply_witness(cat: &Catalog, w: &DegenerationWitness) -> Result<TwoProductAlgebra> {
    let fam = cat.family(&w.source)?;
    let allowed = [Var::Alpha, Var::Beta, Var::Gamma, Var::T];
    check_substitution(&w.source, &fam.params, &w.param_subst, &allowed)
        .map_err(|e| Error::MalformedSubstitution(e.to_string()))?;
    if let Some(v) = w.basis.variables().into_iter().find(|v| !allowed.contains(v)) {
        return Err(Error::MalformedSubstitution(format!("basis depends on {}", v.name())));
    }
    fam.instantiate_symbolic(&w.param_subst)?.transport(&w.basis)
}

fn limit_product(p: &Product, primed: bool) -> std::result::Result<Product, DegenerationFailure> {
    p.limit_at_zero(Var::T)
        .map_err(|(i, j, k)| DegenerationFailure::NoFiniteLimit { primed, i: i + 1, j: j + 1, k: k + 1 })
}

/// The limit at `t = 0` of the transported source.
pub fn witness_limit(cat: &Catalog, w: &DegenerationWitness) -> std::result::Result<TwoProductAlgebra, DegenerationFailure> {
    let moved = apply_witness(cat, w).map_err(|e| match e {
        Error::MalformedSubstitution(r) => malformed(r),
        other => to_failure(other),
    })?;
    let first = limit_product(&moved.first, false)?;
    let second = limit_product(&moved.second, true)?;
    TwoProductAlgebra::new(first, second).map_err(to_failure)
}

fn compare(limit: &Product, expected: &Product, primed: bool) -> std::result::Result<(), DegenerationFailure> {
    for ((i, j, k, l), e) in limit.entries().zip(expected.constants()) {
        if l != e {
            return Err(DegenerationFailure::MismatchedConstant {
                primed,
                i: i + 1,
                j: j + 1,
                k: k + 1,
                limit: l.to_string(),
                expected: e.to_string(),
            });
        }
    }
    Ok(())
}

fn verify(cat: &Catalog, w: &DegenerationWitness) -> std::result::Result<(), DegenerationFailure> {
    let target = witness_target(cat, w)?;
    let limit = witness_limit(cat, w)?;
    compare(&limit.first, &target.first, false)?;
    compare(&limit.second, &target.second, true)?;
    if !projections_degenerate(cat, w)? {
        return Err(malformed("a single-product projection does not degenerate"));
    }
    Ok(())
}

/// Pass iff every constant has a limit at `t = 0` equal to the target's,
/// identically in the surviving parameters.
pub fn verify_degeneration(cat: &Catalog, w: &DegenerationWitness) -> DegenerationOutcome {
    match verify(cat, w) {
        Ok(()) => DegenerationOutcome::Pass,
        Err(failure) => DegenerationOutcome::Fail { failure },
    }
}

/// Each product taken on its own degenerates to the matching product of
/// the target along the same basis.
pub fn projections_degenerate(cat: &Catalog, w: &DegenerationWitness) -> std::result::Result<bool, DegenerationFailure> {
    let fam = cat.family(&w.source).map_err(to_failure)?;
    let src = fam.instantiate_symbolic(&w.param_subst).map_err(to_failure)?;
    let target = witness_target(cat, w)?;
    for (primed, p, e) in [(false, &src.first, &target.first), (true, &src.second, &target.second)] {
        let moved = p.transport(&w.basis).map_err(to_failure)?;
        if limit_product(&moved, primed)? != *e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the limit of `w` satisfies the identities of its variety.
pub fn limit_in_variety(cat: &Catalog, w: &DegenerationWitness) -> std::result::Result<bool, DegenerationFailure> {
    Ok(check_compatible_variety(&witness_limit(cat, w)?, w.variety))
}
