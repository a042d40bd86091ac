use std::collections::BTreeMap;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{derivation_dimension, Variety};
use crate::catalog::{Catalog, Constraint, FamilySpec};
use crate::error::{Error, Result};
use crate::exactmath::{Scalar, Var};

const MAX_TRIES: usize = 1000;

/// A random Gaussian rational with small numerator and denominator.
pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let re = Scalar::from_ratio(rng.random_range(-12..=12), rng.random_range(1..=7));
    if rng.random_bool(0.5) {
        re
    } else {
        re + Scalar::from_ratio(rng.random_range(-6..=6), rng.random_range(1..=5)) * Scalar::i()
    }
}

/// A random point for `vars` satisfying every constraint in `cons`.
pub fn random_admissible_point<R: Rng>(vars: &[Var], cons: &[Constraint], rng: &mut R) -> Result<BTreeMap<Var, Scalar>> {
    for _ in 0..MAX_TRIES {
        let point: BTreeMap<Var, Scalar> = vars.iter().map(|v| (*v, random_scalar(rng))).collect();
        if cons.iter().all(|c| c.holds_at(&point).unwrap_or(false)) {
            return Ok(point);
        }
    }
    Err(Error::ConstraintViolated { family: format!("{vars:?}"), constraint: "no admissible sample found".into() })
}

/// Deterministic per-item generator derived from a run seed and a label.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let h = label.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Derivation dimensions of a family at random admissible points.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FamilyDimension {
    pub family: String,
    pub label: String,
    pub params: usize,
    pub points: Vec<BTreeMap<Var, Scalar>>,
    pub derivation_dims: Vec<usize>,
    /// Minimum over the samples; rank is lower semicontinuous so this is
    /// the generic value.
    pub generic_derivation_dim: usize,
    /// `params + n^2 - generic_derivation_dim`.
    pub dimension: usize,
}

pub fn family_dimension<R: Rng>(fam: &FamilySpec, samples: usize, rng: &mut R) -> Result<FamilyDimension> {
    let n = fam.algebra.dim();
    let mut points = Vec::with_capacity(samples);
    let mut dims = Vec::with_capacity(samples);
    while points.len() < samples.max(1) {
        let p = random_admissible_point(&fam.params, &fam.constraints, rng)?;
        // Points on a pole of some constant are not admissible either.
        let a = match fam.instantiate(&p) {
            Ok(a) => a,
            Err(Error::Math(_)) => continue,
            Err(e) => return Err(e),
        };
        dims.push(derivation_dimension(&a)?);
        points.push(p);
    }
    let generic = *dims.iter().min().expect("at least one sample");
    Ok(FamilyDimension {
        family: fam.name.clone(),
        label: fam.label.clone(),
        params: fam.params.len(),
        points,
        derivation_dims: dims,
        generic_derivation_dim: generic,
        dimension: fam.params.len() + n * n - generic,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Match,
    /// Differs, with a recorded explanation.
    Flagged,
    Mismatch,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub family: String,
    pub claimed: u32,
    pub computed: usize,
    pub status: ClaimStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    pub variety: Variety,
    /// Dimension of the variety: the largest component dimension.
    pub dimension: usize,
    pub components: Vec<FamilyDimension>,
    /// Components given by a single algebra.
    pub rigid: Vec<String>,
    pub claims: Vec<ClaimCheck>,
}

/// The member of the `variety` list for `family` with the most free parameters.
pub fn list_member(cat: &Catalog, variety: Variety, family: &str) -> Result<FamilySpec> {
    cat.list(variety)?
        .into_iter()
        .filter(|f| f.name == family)
        .max_by_key(|f| f.params.len())
        .ok_or_else(|| Error::UnknownName(format!("{family} in {variety}")))
}

/// Computes the dimensions of the component families of `variety` and of
/// every family with a recorded dimension claim, and compares with the claims.
pub fn component_report(cat: &Catalog, variety: Variety, seed: u64, samples: usize) -> Result<ComponentReport> {
    let rec = cat.variety(variety);
    let mut names: Vec<String> = rec.components.clone();
    for c in &rec.dimension_claims {
        if !names.contains(&c.family) {
            names.push(c.family.clone());
        }
    }
    let dims: Vec<FamilyDimension> = names
        .par_iter()
        .map(|name| {
            let fam = list_member(cat, variety, name)?;
            family_dimension(&fam, samples, &mut rng_for(seed, &format!("{variety}/{name}")))
        })
        .collect::<Result<_>>()?;
    let by_name: BTreeMap<&str, &FamilyDimension> = dims.iter().map(|d| (d.family.as_str(), d)).collect();
    let claims = rec
        .dimension_claims
        .iter()
        .map(|c| {
            let computed = by_name[c.family.as_str()].dimension;
            let status = if computed == c.dimension as usize {
                ClaimStatus::Match
            } else if c.note.is_some() {
                ClaimStatus::Flagged
            } else {
                ClaimStatus::Mismatch
            };
            ClaimCheck { family: c.family.clone(), claimed: c.dimension, computed, status, note: c.note.clone() }
        })
        .collect();
    let components: Vec<FamilyDimension> =
        dims.iter().filter(|d| rec.components.contains(&d.family)).cloned().collect();
    let rigid = components.iter().filter(|d| d.params == 0).map(|d| d.family.clone()).collect();
    let dimension = components.iter().map(|d| d.dimension).max().unwrap_or(0);
    Ok(ComponentReport { variety, dimension, components, rigid, claims })
}
