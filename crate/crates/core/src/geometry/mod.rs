//! Degenerations, non-degeneration certificates, orbit dimensions and
//! irreducible components.

mod builtin;
mod dimension;
mod graph;
mod relation;
mod witness;

pub use dimension::{
    component_report, family_dimension, list_member, random_admissible_point, random_scalar, rng_for, ClaimCheck,
    ClaimStatus, ComponentReport, FamilyDimension,
};
pub use graph::{degeneration_graph, monotonicity_sample, DegenerationGraph, Edge, MonotonicitySample};
pub use relation::{
    check_relation, random_triangular, residuals, separation_certificate, verify_non_degeneration, ConstantSymbol,
    NonDegenerationCheck, RelPoly, RelationSet,
};
pub use witness::{
    apply_witness, limit_in_variety, projections_degenerate, verify_degeneration, witness_limit, witness_target,
    DegenerationFailure, DegenerationOutcome, DegenerationWitness, WitnessOrigin,
};

use crate::error::{Error, Result};

pub const WITNESSES_JSON: &str = include_str!("../../data/witnesses.json");
pub const RELATIONS_JSON: &str = include_str!("../../data/relations.json");

pub fn builtin_witnesses() -> Vec<DegenerationWitness> {
    builtin::witnesses()
}

pub fn builtin_relations() -> Vec<RelationSet> {
    builtin::relations()
}

pub fn witnesses_from_json(text: &str) -> Result<Vec<DegenerationWitness>> {
    serde_json::from_str(text).map_err(|e| Error::Data { file: "witnesses.json".into(), reason: e.to_string() })
}

pub fn relations_from_json(text: &str) -> Result<Vec<RelationSet>> {
    serde_json::from_str(text).map_err(|e| Error::Data { file: "relations.json".into(), reason: e.to_string() })
}

pub fn embedded_witnesses() -> Vec<DegenerationWitness> {
    witnesses_from_json(WITNESSES_JSON).expect("embedded witnesses parse")
}

pub fn embedded_relations() -> Vec<RelationSet> {
    relations_from_json(RELATIONS_JSON).expect("embedded relations parse")
}
