use std::collections::BTreeMap;

use cpl_core::algebra::{
    check_compatible_variety, derivation_dimension, BasisChange, Product, TwoProductAlgebra, Variety,
};
use cpl_core::catalog::Catalog;
use cpl_core::exactmath::{Monomial, MultiPoly, RatFunc, Scalar, Var};
use cpl_core::geometry::{random_admissible_point, rng_for};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(|(a, b, c, d)| Scalar::gaussian((a, b), (c, d)))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

const VARS: [Var; 3] = [Var::Alpha, Var::Beta, Var::T];

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::array::uniform3(0u16..=2), -5i64..=5), 1..=3).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(e, c)| {
            let mut m = Monomial::one();
            for (v, k) in VARS.iter().zip(e) {
                for _ in 0..k {
                    m = m.mul(&Monomial::var(*v));
                }
            }
            (m, Scalar::from_int(c))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn matrix() -> impl Strategy<Value = BasisChange> {
    prop::collection::vec(-4i64..=4, 4)
        .prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|m| {
            let r = |x: i64| RatFunc::from_int(x);
            BasisChange::new(vec![vec![r(m[0]), r(m[1])], vec![r(m[2]), r(m[3])]]).unwrap()
        })
}

fn numeric_product() -> impl Strategy<Value = Product> {
    prop::collection::vec(-3i64..=3, 8).prop_map(|c| {
        let mut p = Product::zero(2);
        for (idx, x) in c.into_iter().enumerate() {
            p.set(idx / 4, (idx / 2) % 2, idx % 2, RatFunc::from_int(x));
        }
        p
    })
}

/// A member of a random catalog family at a random admissible point.
fn catalog_member(cat: &Catalog, index: usize, seed: u64) -> TwoProductAlgebra {
    let fam = &cat.families[index % cat.families.len()];
    let mut rng = rng_for(seed, &fam.name);
    let point = random_admissible_point(&fam.params, &fam.constraints, &mut rng).unwrap();
    fam.instantiate(&point).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn poly_ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        if !g.is_zero() {
            prop_assert_eq!((&f * &g).exact_div(&g), Some(f));
        }
    }

    #[test]
    fn ratfunc_cancellation(f in ratfunc(), g in nonzero_poly()) {
        let g = RatFunc::from_poly(g);
        prop_assert_eq!((&f * &g).checked_div(&g).unwrap(), f.clone());
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert!(f.den().leading_coeff().is_one());
    }

    #[test]
    fn ratfunc_text_round_trip(f in ratfunc()) {
        prop_assert_eq!(f.to_string().parse::<RatFunc>().unwrap(), f);
    }

    #[test]
    fn ratfunc_evaluation_is_a_homomorphism(f in ratfunc(), g in ratfunc(), a in nonzero_scalar(), b in nonzero_scalar()) {
        let point = BTreeMap::from([(Var::Alpha, a), (Var::Beta, b), (Var::T, Scalar::from_ratio(1, 7))]);
        if let (Ok(x), Ok(y)) = (f.eval(&point), g.eval(&point)) {
            prop_assert_eq!((&f + &g).eval(&point).unwrap(), &x + &y);
            prop_assert_eq!((&f * &g).eval(&point).unwrap(), &x * &y);
        }
    }

    /// f = t^a p / (t^b q) with p(0), q(0) nonzero: the limit at t = 0 is finite
    /// exactly when a >= b, and equals p(0)/q(0) when a = b.
    #[test]
    fn limit_at_zero_follows_valuations(
        a in 0u32..3, b in 0u32..3,
        p0 in nonzero_scalar(), q0 in nonzero_scalar(),
        p1 in scalar(), q1 in scalar(),
        alpha in prop::bool::ANY,
    ) {
        let t = MultiPoly::var(Var::T);
        let lin = |c0: &Scalar, c1: &Scalar| {
            let mut x = MultiPoly::constant(c0.clone()) + t.scale(c1);
            if alpha {
                x = x + (&t * &MultiPoly::var(Var::Alpha));
            }
            x
        };
        let p = lin(&p0, &p1);
        let q = lin(&q0, &q1);
        let f = RatFunc::new(&t.pow(a) * &p, &t.pow(b) * &q).unwrap();
        let lim = f.limit_at_zero(Var::T);
        if a < b {
            prop_assert!(lim.is_err());
        } else if a > b {
            prop_assert_eq!(lim.unwrap(), RatFunc::zero());
        } else {
            prop_assert_eq!(lim.unwrap(), RatFunc::constant(p0.checked_div(&q0).unwrap()));
        }
    }

    #[test]
    fn transport_by_identity(p in numeric_product()) {
        prop_assert_eq!(p.transport(&BasisChange::identity(2)).unwrap(), p);
    }

    #[test]
    fn transport_composes(p in numeric_product(), g in matrix(), h in matrix()) {
        let two_steps = p.transport(&g).unwrap().transport(&h).unwrap();
        prop_assert_eq!(two_steps, p.transport(&h.compose(&g)).unwrap());
        prop_assert_eq!(p.transport(&g).unwrap().transport(&g.inverse().unwrap()).unwrap(), p);
    }

    #[test]
    fn transport_preserves_identities_and_derivations(index in 0usize..41, seed in any::<u64>(), g in matrix()) {
        let cat = Catalog::builtin();
        let a = catalog_member(&cat, index, seed);
        let b = a.transport(&g).unwrap();
        for v in Variety::ALL {
            prop_assert_eq!(check_compatible_variety(&a, v), check_compatible_variety(&b, v));
        }
        prop_assert!(check_compatible_variety(&b, Variety::CompatiblePreLie));
        prop_assert_eq!(derivation_dimension(&a).unwrap(), derivation_dimension(&b).unwrap());
    }
}
