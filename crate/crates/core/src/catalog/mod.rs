//! The classification of two-dimensional compatible pre-Lie algebras and
//! its commutative-associative, associative and Novikov sub-lists.

mod builtin;
mod constraint;

pub use constraint::Constraint;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{BasisChange, Product, TwoProductAlgebra, Variety};
use crate::error::{Error, Result};
use crate::exactmath::{RatFunc, Scalar, Var};

/// A family of compatible algebras with free parameters.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    /// Display form including any specialisation, e.g. `C24^{0,beta,0}`.
    pub label: String,
    /// Pre-Lie algebra equal to the first product (`zero` when it vanishes),
    /// e.g. `C05` (generic parameter) or `C05^1/2`.
    pub base: String,
    pub params: Vec<Var>,
    pub constraints: Vec<Constraint>,
    pub algebra: TwoProductAlgebra,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub varieties: BTreeSet<Variety>,
}

impl FamilySpec {
    /// Check the parameter constraints at a numeric point.
    pub fn admissible(&self, point: &BTreeMap<Var, Scalar>) -> Result<()> {
        for c in &self.constraints {
            if !c.holds_at(point).map_err(|_| self.missing(point))? {
                return Err(Error::ConstraintViolated { family: self.label.clone(), constraint: c.to_string() });
            }
        }
        Ok(())
    }

    fn missing(&self, point: &BTreeMap<Var, Scalar>) -> Error {
        let p = self.params.iter().find(|p| !point.contains_key(p)).copied().unwrap_or(Var::Alpha);
        Error::MissingParameter { family: self.label.clone(), param: p.name().to_string() }
    }

    /// Numeric member of the family.
    pub fn instantiate(&self, point: &BTreeMap<Var, Scalar>) -> Result<TwoProductAlgebra> {
        if self.params.iter().any(|p| !point.contains_key(p)) {
            return Err(self.missing(point));
        }
        self.admissible(point)?;
        let only_params: BTreeMap<Var, Scalar> =
            point.iter().filter(|(v, _)| self.params.contains(v)).map(|(v, x)| (*v, x.clone())).collect();
        self.algebra.partial_eval(&only_params)
    }

    /// Member with parameters replaced by expressions (no constraint check).
    pub fn instantiate_symbolic(&self, map: &BTreeMap<Var, RatFunc>) -> Result<TwoProductAlgebra> {
        self.algebra.substitute(map)
    }
}

/// A member of a variety list: a catalog family, possibly specialised.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VarietyEntry {
    pub family: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub specialize: BTreeMap<Var, RatFunc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
}

/// A dimension asserted for the orbit closure of a family.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DimensionClaim {
    pub family: String,
    pub dimension: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VarietyRecord {
    pub variety: Variety,
    pub entries: Vec<VarietyEntry>,
    /// Families whose orbit closures are the irreducible components.
    pub components: Vec<String>,
    pub dimension_claims: Vec<DimensionClaim>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum AutFamily {
    /// Entries are expressions in `xi` and `nu`; `xi != 0` throughout.
    Continuous { template: BasisChange },
    Finite { elements: Vec<BasisChange> },
}

/// Automorphism group of a base pre-Lie algebra.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct AutRecord {
    /// `C05` and `C06` mean the generic branch (`alpha != 1`, resp. `alpha != 0`).
    pub base: String,
    pub family: AutFamily,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Catalog {
    /// Pre-Lie tables of the base algebras `C01`-`C08`, `C05`/`C06` with a free `alpha`.
    pub bases: BTreeMap<String, Product>,
    pub families: Vec<FamilySpec>,
    pub varieties: Vec<VarietyRecord>,
    pub automorphisms: Vec<AutRecord>,
}

pub const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

impl Catalog {
    /// The catalog as authored in code.
    pub fn builtin() -> Catalog {
        builtin::catalog()
    }

    /// The catalog shipped as a data file and embedded at build time.
    pub fn embedded() -> Catalog {
        Catalog::from_json(CATALOG_JSON).expect("embedded catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        serde_json::from_str(text).map_err(|e| Error::Data { file: "catalog.json".into(), reason: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serialises");
        s.push('\n');
        s
    }

    pub fn family(&self, name: &str) -> Result<&FamilySpec> {
        self.families.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn variety(&self, v: Variety) -> &VarietyRecord {
        self.varieties.iter().find(|r| r.variety == v).expect("every variety is listed")
    }

    /// Numeric member of a full catalog family.
    pub fn instantiate(&self, name: &str, params: &BTreeMap<Var, Scalar>) -> Result<TwoProductAlgebra> {
        self.family(name)?.instantiate(params)
    }

    /// The families admitted in `variety`, specialised as the list requires.
    pub fn list(&self, variety: Variety) -> Result<Vec<FamilySpec>> {
        self.variety(variety).entries.iter().map(|e| self.specialise(e, variety)).collect()
    }

    fn specialise(&self, entry: &VarietyEntry, variety: Variety) -> Result<FamilySpec> {
        let fam = self.family(&entry.family)?;
        let algebra = fam.algebra.substitute(&entry.specialize)?;
        let mut constraints = Vec::new();
        for c in &fam.constraints {
            let c = c.substitute(&entry.specialize)?;
            if !c.is_trivially_true() {
                constraints.push(c);
            }
        }
        constraints.extend(entry.constraints.iter().cloned());
        let params = fam.params.iter().copied().filter(|p| !entry.specialize.contains_key(p)).collect();
        let mut base = fam.base.clone();
        if let (Some(a), true) = (entry.specialize.get(&Var::Alpha), base == "C05" || base == "C06") {
            base = format!("{base}^{a}");
        }
        let varieties = Variety::ALL.iter().copied().filter(|w| variety.is_contained_in(*w)).collect();
        Ok(FamilySpec {
            name: fam.name.clone(),
            label: entry.label.clone(),
            base,
            params,
            constraints,
            algebra,
            varieties,
        })
    }

    /// Pre-Lie table of a base algebra such as `C03`, `C05` or `C05^1/2`.
    pub fn base_product(&self, base: &str) -> Result<Product> {
        if base == "zero" {
            return Ok(Product::zero(2));
        }
        let (name, alpha) = match base.split_once('^') {
            Some((n, a)) => (n, Some(a.parse::<RatFunc>()?)),
            None => (base, None),
        };
        let p = self.bases.get(name).ok_or_else(|| Error::UnknownName(base.to_string()))?;
        match alpha {
            Some(a) => p.substitute(&BTreeMap::from([(Var::Alpha, a)])),
            None => Ok(p.clone()),
        }
    }

    pub fn automorphism_family(&self, base: &str) -> Result<&AutRecord> {
        self.automorphisms.iter().find(|r| r.base == base).ok_or_else(|| Error::UnknownName(base.to_string()))
    }

    /// The automorphism group of a base given with a numeric parameter,
    /// e.g. `C05^1` or `C05^3`; selects the special branch when it applies.
    pub fn automorphism_family_for(&self, base: &str) -> Result<&AutRecord> {
        if let Ok(r) = self.automorphism_family(base) {
            return Ok(r);
        }
        match base.split_once('^') {
            Some((n @ ("C05" | "C06"), _)) => self.automorphism_family(n),
            _ => Err(Error::UnknownName(base.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_product_parameter_branches() {
        let cat = Catalog::builtin();
        let half = cat.base_product("C05^1/2").unwrap();
        assert_eq!(half.get(0, 1, 1), &"1/2".parse::<RatFunc>().unwrap());
        assert_eq!(cat.base_product("zero").unwrap(), Product::zero(2));
        assert!(cat.base_product("C09").is_err());
    }

    #[test]
    fn generic_aut_branch_used_for_ordinary_parameters() {
        let cat = Catalog::builtin();
        assert_eq!(cat.automorphism_family_for("C05^3").unwrap().base, "C05");
        assert_eq!(cat.automorphism_family_for("C05^1").unwrap().base, "C05^1");
        assert!(cat.automorphism_family_for("C09").is_err());
    }
}
