use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, RngExt};
use serde::{Deserialize, Serialize};

use super::dimension::random_admissible_point;
use super::witness::DegenerationWitness;
use crate::algebra::{derivation_dimension, Variety};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactmath::{Scalar, Var};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub source: String,
    pub target: String,
    pub witness: String,
}

/// Families of a variety list and the degenerations between them.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DegenerationGraph {
    pub variety: Variety,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
}

impl DegenerationGraph {
    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(|e| e.source == e.target)
    }

    /// Nodes reachable from `start` along edges, including `start`.
    pub fn reachable_from<'a>(&self, start: impl IntoIterator<Item = &'a str>) -> BTreeSet<String> {
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.source.as_str()).or_default().push(e.target.as_str());
        }
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut stack: Vec<&str> = start.into_iter().collect();
        while let Some(n) = stack.pop() {
            if seen.insert(n.to_string()) {
                stack.extend(adj.get(n).into_iter().flatten().copied());
            }
        }
        seen
    }

    /// Nodes not reachable from any of `components`.
    pub fn unreached(&self, components: &[String]) -> Vec<String> {
        let r = self.reachable_from(components.iter().map(String::as_str));
        self.nodes.iter().filter(|n| !r.contains(*n)).cloned().collect()
    }
}

/// The graph of `variety` built from `witnesses` (normally the verified
/// ones). A witness used for a smaller variety also counts in every
/// variety containing it.
pub fn degeneration_graph(cat: &Catalog, witnesses: &[DegenerationWitness], variety: Variety) -> Result<DegenerationGraph> {
    let mut nodes: Vec<String> = cat.list(variety)?.into_iter().map(|f| f.name).collect();
    nodes.dedup();
    let edges = witnesses
        .iter()
        .filter(|w| w.variety.is_contained_in(variety) && nodes.contains(&w.source) && nodes.contains(&w.target))
        .map(|w| Edge { source: w.source.clone(), target: w.target.clone(), witness: w.name.clone() })
        .collect();
    Ok(DegenerationGraph { variety, nodes, edges })
}

/// Derivation dimensions on both sides of a witness at one sampled point.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MonotonicitySample {
    pub witness: String,
    pub point: BTreeMap<Var, Scalar>,
    pub source_derivation_dim: usize,
    pub target_derivation_dim: usize,
    /// The source index moves with `t`, so the arrow starts from a curve
    /// of orbits rather than a single orbit.
    pub moving_index: bool,
}

impl MonotonicitySample {
    /// A proper degeneration from a single orbit strictly lowers the orbit
    /// dimension. From a curve of orbits the bound is on the union, one
    /// dimension larger.
    pub fn holds(&self) -> bool {
        if self.moving_index {
            self.source_derivation_dim <= self.target_derivation_dim
        } else {
            self.source_derivation_dim < self.target_derivation_dim
        }
    }
}

/// Samples target parameters and a small `t`, then compares the derivation
/// dimension of the source at the matching index with that of the target.
pub fn monotonicity_sample<R: Rng>(cat: &Catalog, w: &DegenerationWitness, rng: &mut R) -> Result<MonotonicitySample> {
    let src = cat.family(&w.source)?;
    let tgt = cat.family(&w.target)?;
    let tvars: Vec<Var> = [Var::Alpha, Var::Beta, Var::Gamma]
        .into_iter()
        .filter(|v| w.target_params.values().any(|f| f.contains(*v)) || w.param_subst.values().any(|f| f.contains(*v)))
        .collect();
    for _ in 0..1000 {
        let mut point = random_admissible_point(&tvars, &[], rng)?;
        let t_inv = Scalar::from_int(rng.random_range(50..=500));
        point.insert(Var::T, t_inv.inv()?);
        let Ok(tp) = w.target_params.iter().map(|(v, f)| Ok((*v, f.eval(&point)?))).collect::<Result<BTreeMap<_, _>>>()
        else {
            continue;
        };
        if !w.side_conditions.iter().all(|c| c.holds_at(&point).unwrap_or(false)) {
            continue;
        }
        let Ok(sp) = w.param_subst.iter().map(|(v, f)| Ok((*v, f.eval(&point)?))).collect::<Result<BTreeMap<_, _>>>()
        else {
            continue;
        };
        let (Ok(a), Ok(b)) = (src.instantiate(&sp), tgt.instantiate(&tp)) else { continue };
        if w.basis.partial_eval(&point).map(|g| g.det().is_zero()).unwrap_or(true) {
            continue;
        }
        point.retain(|v, _| tvars.contains(v) || *v == Var::T);
        return Ok(MonotonicitySample {
            witness: w.name.clone(),
            point,
            source_derivation_dim: derivation_dimension(&a)?,
            target_derivation_dim: derivation_dimension(&b)?,
            moving_index: w.has_moving_index(),
        });
    }
    Err(Error::ConstraintViolated { family: w.name.clone(), constraint: "no admissible sample found".into() })
}
