use std::collections::BTreeMap;

use cpl_core::algebra::{check_compatible_variety, compatibility_defects, z2_membership, Variety};
use cpl_core::catalog::Catalog;
use cpl_core::exactmath::{Scalar, Var};
use cpl_core::Error;

fn point(pairs: &[(Var, &str)]) -> BTreeMap<Var, Scalar> {
    pairs.iter().map(|(v, s)| (*v, s.parse().unwrap())).collect()
}

#[test]
fn every_family_is_compatible_pre_lie_symbolically() {
    let cat = Catalog::embedded();
    assert_eq!(cat.families.len(), 41);
    for f in &cat.families {
        let bad = compatibility_defects(&f.algebra, Variety::CompatiblePreLie);
        assert!(bad.is_empty(), "{}: {bad:?}", f.label);
    }
}

#[test]
fn second_product_is_a_cocycle_of_the_first() {
    let cat = Catalog::embedded();
    for f in &cat.families {
        assert!(z2_membership(&f.algebra.first, &f.algebra.second), "{}", f.label);
        assert_eq!(cat.base_product(&f.base).unwrap(), f.algebra.first, "{}", f.label);
    }
}

#[test]
fn variety_lists_have_expected_sizes() {
    let cat = Catalog::embedded();
    let sizes: Vec<usize> = Variety::ALL.iter().map(|v| cat.list(*v).unwrap().len()).collect();
    assert_eq!(sizes, vec![41, 18, 24, 32]);
}

#[test]
fn every_list_entry_satisfies_its_variety() {
    let cat = Catalog::embedded();
    for v in Variety::ALL {
        for f in cat.list(v).unwrap() {
            for w in &f.varieties {
                let bad = compatibility_defects(&f.algebra, *w);
                assert!(bad.is_empty(), "{} in {w}: {bad:?}", f.label);
            }
        }
    }
}

#[test]
fn non_members_fail_identities() {
    // Spot checks that the identity tests are not vacuous on the catalog.
    let cat = Catalog::embedded();
    let c24 = &cat.family("C24").unwrap().algebra;
    assert!(!check_compatible_variety(c24, Variety::CompatibleAssoc));
    assert!(!check_compatible_variety(c24, Variety::CompatibleNovikov));
    let c09 = &cat.family("C09").unwrap().algebra;
    assert!(check_compatible_variety(c09, Variety::CompatibleNovikov));
    assert!(!check_compatible_variety(c09, Variety::CompatibleAssoc));
    let c38 = &cat.family("C38").unwrap().algebra;
    assert!(check_compatible_variety(c38, Variety::CompatibleCommAssoc));
}

#[test]
fn full_family_memberships_are_recorded() {
    let cat = Catalog::embedded();
    let c38 = cat.family("C38").unwrap();
    assert_eq!(c38.varieties.len(), 4);
    let c24 = cat.family("C24").unwrap();
    assert_eq!(c24.varieties.iter().copied().collect::<Vec<_>>(), vec![Variety::CompatiblePreLie]);
}

#[test]
fn instantiate_checks_constraints() {
    let cat = Catalog::embedded();
    let err = cat.instantiate("C39", &point(&[(Var::Alpha, "1"), (Var::Beta, "1")])).unwrap_err();
    assert!(matches!(err, Error::ConstraintViolated { .. }), "{err}");
    let c15 = cat.instantiate("C15", &point(&[(Var::Alpha, "0")])).unwrap();
    assert!(c15.second.is_zero() && !c15.first.is_zero());
    assert!(matches!(cat.instantiate("C99", &BTreeMap::new()), Err(Error::UnknownName(_))));
    assert!(matches!(
        cat.instantiate("C38", &point(&[(Var::Alpha, "1")])),
        Err(Error::MissingParameter { .. })
    ));
    let c41 = cat.instantiate("C41", &point(&[(Var::Alpha, "i"), (Var::Beta, "1/2")])).unwrap();
    assert!(c41.is_numeric());
}

#[test]
fn specialised_entries_drop_fixed_parameters() {
    let cat = Catalog::embedded();
    let comm = cat.list(Variety::CompatibleCommAssoc).unwrap();
    let c24 = comm.iter().find(|f| f.name == "C24").unwrap();
    assert_eq!(c24.params, vec![Var::Beta]);
    assert_eq!(c24.base, "C05^0");
    let nov = cat.list(Variety::CompatibleNovikov).unwrap();
    let c31 = nov.iter().find(|f| f.label == "C31^{alpha,beta,gamma}").unwrap();
    assert_eq!(c31.constraints.len(), 1);
    let excluded = point(&[(Var::Alpha, "1"), (Var::Beta, "3"), (Var::Gamma, "3")]);
    assert!(c31.admissible(&excluded).is_err());
}

#[test]
fn component_lists() {
    let cat = Catalog::embedded();
    let count = |v| cat.variety(v).components.len();
    assert_eq!(count(Variety::CompatibleCommAssoc), 2);
    assert_eq!(count(Variety::CompatibleAssoc), 4);
    assert_eq!(count(Variety::CompatibleNovikov), 6);
    assert_eq!(count(Variety::CompatiblePreLie), 14);
}
