use std::collections::BTreeMap;

use cpl_core::algebra::BasisChange;
use cpl_core::catalog::{AutFamily, Catalog};
use cpl_core::exactmath::{Scalar, Var};
use cpl_core::morphisms::{
    embedded_iso_exceptions, is_automorphism, search_isomorphism, verify_aut_family, verify_iso_exception,
    verify_isomorphism, SearchOutcome,
};
use cpl_core::Error;

fn point(pairs: &[(Var, &str)]) -> BTreeMap<Var, Scalar> {
    pairs.iter().map(|(v, s)| (*v, s.parse().unwrap())).collect()
}

fn inst(cat: &Catalog, name: &str, pairs: &[(Var, &str)]) -> cpl_core::algebra::TwoProductAlgebra {
    cat.instantiate(name, &point(pairs)).unwrap()
}

#[test]
fn automorphism_families_fix_their_base() {
    let cat = Catalog::embedded();
    assert_eq!(cat.automorphisms.len(), 10);
    for rec in &cat.automorphisms {
        assert!(verify_aut_family(&cat, rec).unwrap(), "{}", rec.base);
    }
}

#[test]
fn automorphism_templates_at_sample_points() {
    let cat = Catalog::embedded();
    for rec in &cat.automorphisms {
        let AutFamily::Continuous { template } = &rec.family else { continue };
        let base = cat.family(rec.base.split('^').next().unwrap()).unwrap();
        let alpha = rec.base.split_once('^').map(|(_, a)| a).unwrap_or("5/3");
        for (xi, nu) in [("2", "3"), ("-1/2", "i"), ("1+i", "-4")] {
            let g = template.partial_eval(&point(&[(Var::Xi, xi), (Var::Nu, nu)])).unwrap();
            let mut params = point(&[(Var::Alpha, alpha)]);
            params.retain(|v, _| base.params.contains(v));
            let a = base.instantiate(&params).unwrap();
            assert!(is_automorphism(&a, &g).unwrap(), "{} at ({xi}, {nu})", rec.base);
        }
    }
}

#[test]
fn wrong_branch_template_is_not_an_automorphism() {
    // The shear e1 -> e1 + nu e2 only preserves C05 when alpha = 1.
    let cat = Catalog::embedded();
    let a = inst(&cat, "C05", &[(Var::Alpha, "3")]);
    let g = BasisChange::parse(&[&["1", "1"], &["0", "1"]]).unwrap();
    assert!(!is_automorphism(&a, &g).unwrap());
}

#[test]
fn iso_exceptions_hold_symbolically() {
    let cat = Catalog::embedded();
    let excs = embedded_iso_exceptions();
    assert_eq!(excs.len(), 6);
    for e in &excs {
        assert!(verify_iso_exception(&cat, e).unwrap(), "{}", e.name);
    }
}

#[test]
fn search_over_finite_group() {
    let cat = Catalog::embedded();
    let a = inst(&cat, "C39", &[(Var::Alpha, "1"), (Var::Beta, "2")]);
    let b = inst(&cat, "C39", &[(Var::Alpha, "3"), (Var::Beta, "4")]);
    assert_eq!(search_isomorphism(&cat, "C07", &a, &b).unwrap(), SearchOutcome::NotFoundWithinFamily);
    let c = inst(&cat, "C39", &[(Var::Alpha, "2"), (Var::Beta, "1")]);
    let SearchOutcome::Found(g) = search_isomorphism(&cat, "C07", &a, &c).unwrap() else { panic!("swap expected") };
    assert!(verify_isomorphism(&a, &c, &g).unwrap());
}

#[test]
fn search_over_continuous_family() {
    let cat = Catalog::embedded();
    let a = inst(&cat, "C24", &[(Var::Alpha, "1"), (Var::Beta, "2"), (Var::Gamma, "3")]);
    let b = inst(&cat, "C25", &[(Var::Alpha, "1"), (Var::Beta, "2"), (Var::Gamma, "3")]);
    let SearchOutcome::Found(g) = search_isomorphism(&cat, "C05^1", &a, &b).unwrap() else { panic!("expected witness") };
    assert!(verify_isomorphism(&a, &b, &g).unwrap());
    // With gamma = beta the two stay apart.
    let a = inst(&cat, "C24", &[(Var::Alpha, "1"), (Var::Beta, "2"), (Var::Gamma, "2")]);
    let b = inst(&cat, "C25", &[(Var::Alpha, "1"), (Var::Beta, "2"), (Var::Gamma, "2")]);
    assert_eq!(search_isomorphism(&cat, "C05^1", &a, &b).unwrap(), SearchOutcome::NotFoundWithinFamily);
}

#[test]
fn search_recovers_a_planted_automorphism() {
    let cat = Catalog::embedded();
    let a = inst(&cat, "C13", &[(Var::Alpha, "2/3")]);
    let g = BasisChange::parse(&[&["-3", "1/2"], &["0", "9"]]).unwrap();
    let b = a.transport(&g).unwrap();
    let SearchOutcome::Found(h) = search_isomorphism(&cat, "C03", &a, &b).unwrap() else { panic!("planted") };
    assert!(verify_isomorphism(&a, &b, &h).unwrap());
    // Gaussian coordinates.
    let a = inst(&cat, "C31", &[(Var::Alpha, "0"), (Var::Beta, "i"), (Var::Gamma, "2")]);
    let g = BasisChange::parse(&[&["1", "1+i"], &["0", "-1/2*i"]]).unwrap();
    let b = a.transport(&g).unwrap();
    assert!(matches!(search_isomorphism(&cat, "C06^0", &a, &b).unwrap(), SearchOutcome::Found(_)));
}

#[test]
fn search_rejects_base_mismatch() {
    let cat = Catalog::embedded();
    let a = inst(&cat, "C39", &[(Var::Alpha, "1"), (Var::Beta, "2")]);
    let b = inst(&cat, "C13", &[(Var::Alpha, "1")]);
    assert!(matches!(search_isomorphism(&cat, "C07", &a, &b), Err(Error::BaseMismatch(_))));
}
