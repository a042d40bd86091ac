use std::collections::BTreeSet;

use cpl_core::algebra::{has_zero_mult_line, Variety};
use cpl_core::catalog::Catalog;
use cpl_core::exactmath::{RatFunc, Var};
use cpl_core::geometry::{
    apply_witness, check_relation, component_report, degeneration_graph, embedded_relations, embedded_witnesses,
    family_dimension, limit_in_variety, monotonicity_sample, projections_degenerate, random_admissible_point,
    residuals, rng_for, verify_degeneration, verify_non_degeneration, ClaimStatus, DegenerationFailure,
    DegenerationOutcome, RelationSet, WitnessOrigin,
};

fn relation(name: &str) -> RelationSet {
    embedded_relations().into_iter().find(|r| r.name == name).unwrap()
}

#[test]
fn every_witness_verifies() {
    let cat = Catalog::embedded();
    let ws = embedded_witnesses();
    assert_eq!(ws.len(), 41);
    let names: BTreeSet<&str> = ws.iter().map(|w| w.name.as_str()).collect();
    assert_eq!(names.len(), ws.len());
    let failed: Vec<String> = ws
        .iter()
        .filter_map(|w| match verify_degeneration(&cat, w) {
            DegenerationOutcome::Pass => None,
            DegenerationOutcome::Fail { failure } => Some(format!("{}: {failure}", w.name)),
        })
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn witness_counts_by_origin() {
    let ws = embedded_witnesses();
    let count = |f: fn(&WitnessOrigin) -> bool| ws.iter().filter(|w| f(&w.origin)).count();
    assert_eq!(count(|o| matches!(o, WitnessOrigin::Published)), 35);
    assert_eq!(count(|o| matches!(o, WitnessOrigin::Corrected { .. })), 3);
    assert_eq!(count(|o| matches!(o, WitnessOrigin::Derived { .. })), 3);
}

#[test]
fn published_forms_of_corrected_witnesses_fail() {
    let cat = Catalog::embedded();
    for w in embedded_witnesses() {
        if let Some(p) = w.as_published() {
            let out = verify_degeneration(&cat, &p);
            assert!(!out.is_pass(), "{} unexpectedly passes as published", w.name);
        }
    }
}

#[test]
fn limits_stay_in_the_variety_and_projections_degenerate() {
    let cat = Catalog::embedded();
    for w in embedded_witnesses() {
        assert_eq!(limit_in_variety(&cat, &w), Ok(true), "{}", w.name);
        assert_eq!(projections_degenerate(&cat, &w), Ok(true), "{}", w.name);
    }
}

#[test]
fn scaling_witness_keeps_poles_until_the_limit() {
    let cat = Catalog::embedded();
    let w = embedded_witnesses().into_iter().find(|w| w.name == "C38->C07").unwrap();
    let moved = apply_witness(&cat, &w).unwrap();
    // e1*e1 = e1 + (stuff) t in the new basis: constant term 1, not identically 1.
    let c = moved.second.get(0, 0, 0);
    assert_eq!(c.limit_at_zero(Var::T).unwrap(), RatFunc::one());
}

#[test]
fn sign_flip_in_basis_is_caught() {
    let cat = Catalog::embedded();
    let mut w = embedded_witnesses().into_iter().find(|w| w.name == "C24->C25").unwrap();
    let mut rows = w.basis.rows();
    rows[0][0] = -rows[0][0].clone();
    w.basis = cpl_core::algebra::BasisChange::new(rows).unwrap();
    match verify_degeneration(&cat, &w) {
        DegenerationOutcome::Fail { failure: DegenerationFailure::MismatchedConstant { .. } } => {}
        other => panic!("expected a mismatch, got {other:?}"),
    }
}

#[test]
fn pole_is_reported() {
    let cat = Catalog::embedded();
    let mut w = embedded_witnesses().into_iter().find(|w| w.name == "C38->C07").unwrap();
    w.basis = cpl_core::algebra::BasisChange::parse(&[&["1", "0"], &["0", "1"]]).unwrap();
    assert!(matches!(
        verify_degeneration(&cat, &w),
        DegenerationOutcome::Fail { failure: DegenerationFailure::NoFiniteLimit { .. } }
    ));
}

#[test]
fn commutative_relation_residual_on_c39() {
    let cat = Catalog::embedded();
    let r = relation("C38-not-to-C39");
    assert!(check_relation(&r, &cat.family("C38").unwrap().algebra));
    let res = residuals(&r, &cat.family("C39").unwrap().algebra);
    assert!(res[0].is_zero() && res[1].is_zero());
    assert_eq!(res[2], "beta - alpha".parse::<RatFunc>().unwrap());
}

#[test]
fn relation_sets_certify_their_non_degenerations() {
    let cat = Catalog::embedded();
    for r in embedded_relations() {
        for t in &r.targets {
            let mut rng = rng_for(11, &r.name);
            let c = verify_non_degeneration(&cat, &r.source, t, &r, 50, &mut rng).unwrap();
            assert!(c.is_pass(), "{c:?}");
        }
    }
}

#[test]
fn self_comparison_is_rejected() {
    let cat = Catalog::embedded();
    let r = relation("C38-not-to-C39");
    let c = verify_non_degeneration(&cat, "C38", "C38", &r, 5, &mut rng_for(1, "x")).unwrap();
    assert!(!c.is_pass());
    assert!(c.certificate.is_none());
}

#[test]
fn relations_hold_on_the_zero_algebra() {
    let cat = Catalog::embedded();
    let zero = cat.family("C01").unwrap().algebra.clone();
    let zero = cpl_core::algebra::TwoProductAlgebra::new(zero.first.clone(), zero.first).unwrap();
    for r in embedded_relations() {
        assert!(check_relation(&r, &zero), "{}", r.name);
    }
}

#[test]
fn zero_line_obstruction_for_c33() {
    let cat = Catalog::embedded();
    assert!(!has_zero_mult_line(&cat.family("C33").unwrap().algebra).unwrap());
    for name in ["C09", "C22", "C31"] {
        let fam = cat.family(name).unwrap();
        let mut rng = rng_for(5, name);
        for _ in 0..5 {
            let p = random_admissible_point(&fam.params, &fam.constraints, &mut rng).unwrap();
            assert!(has_zero_mult_line(&fam.instantiate(&p).unwrap()).unwrap(), "{name} at {p:?}");
        }
    }
}

#[test]
fn component_dimensions() {
    let cat = Catalog::embedded();
    let comm = component_report(&cat, Variety::CompatibleCommAssoc, 7, 5).unwrap();
    let dims: Vec<(String, usize)> = comm.components.iter().map(|d| (d.family.clone(), d.dimension)).collect();
    assert_eq!(dims, vec![("C38".to_string(), 7), ("C39".to_string(), 6)]);
    assert!(comm.rigid.is_empty());
    assert_eq!(comm.dimension, 7);

    let assoc = component_report(&cat, Variety::CompatibleAssoc, 7, 5).unwrap();
    assert_eq!(assoc.components.len(), 4);
    assert_eq!(assoc.rigid, vec!["C28".to_string(), "C33".to_string()]);
    let c34 = assoc.claims.iter().find(|c| c.family == "C34").unwrap();
    assert_eq!((c34.computed, c34.status), (6, ClaimStatus::Flagged));

    let pre_lie = component_report(&cat, Variety::CompatiblePreLie, 7, 5).unwrap();
    assert_eq!(pre_lie.components.len(), 14);
    assert_eq!(pre_lie.rigid, vec!["C28".to_string(), "C33".to_string()]);
    assert!(pre_lie.claims.iter().all(|c| c.status == ClaimStatus::Match), "{:?}", pre_lie.claims);

    let novikov = component_report(&cat, Variety::CompatibleNovikov, 7, 5).unwrap();
    assert_eq!(novikov.rigid, vec!["C33".to_string()]);
    let c31 = novikov.claims.iter().find(|c| c.family == "C31").unwrap();
    assert_eq!((c31.claimed, c31.computed, c31.status), (6, 7, ClaimStatus::Flagged));
}

#[test]
fn sampled_family_dimensions_are_seed_independent() {
    let cat = Catalog::embedded();
    for name in ["C09", "C25", "C37", "C03"] {
        let fam = cat.family(name).unwrap();
        let a = family_dimension(fam, 5, &mut rng_for(1, name)).unwrap();
        let b = family_dimension(fam, 5, &mut rng_for(2, name)).unwrap();
        assert_eq!(a.dimension, b.dimension);
        if !fam.params.is_empty() {
            assert_ne!(a.points, b.points);
        }
    }
}

#[test]
fn graphs_cover_every_family() {
    let cat = Catalog::embedded();
    let ws = embedded_witnesses();
    for v in Variety::ALL {
        let g = degeneration_graph(&cat, &ws, v).unwrap();
        assert!(!g.has_self_loops());
        let comps = &cat.variety(v).components;
        assert!(g.unreached(comps).is_empty(), "{v}: {:?}", g.unreached(comps));
    }
    let g = degeneration_graph(&cat, &ws, Variety::CompatibleCommAssoc).unwrap();
    assert!(g.edges.iter().any(|e| e.source == "C38" && e.target == "C07"));
    // C03 is only reached through C07.
    assert!(!g.edges.iter().any(|e| e.target == "C03" && comps_contains(&cat, &e.source)));
}

fn comps_contains(cat: &Catalog, name: &str) -> bool {
    cat.variety(Variety::CompatibleCommAssoc).components.iter().any(|c| c == name)
}

#[test]
fn derivation_dimension_increases_along_witnesses() {
    let cat = Catalog::embedded();
    for w in embedded_witnesses() {
        let mut rng = rng_for(3, &w.name);
        for _ in 0..3 {
            let s = monotonicity_sample(&cat, &w, &mut rng).unwrap();
            assert!(s.holds(), "{s:?}");
        }
    }
}
