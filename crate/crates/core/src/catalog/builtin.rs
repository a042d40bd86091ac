use std::collections::{BTreeMap, BTreeSet};

use super::{AutFamily, AutRecord, Catalog, Constraint, DimensionClaim, FamilySpec, VarietyEntry, VarietyRecord};
use crate::algebra::{BasisChange, Product, TwoProductAlgebra, Variety};
use crate::exactmath::{RatFunc, Var};

type Row = (usize, usize, &'static str, &'static str);

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap_or_else(|e| panic!("bad expression `{s}`: {e}"))
}

/// Rows `(i, j, coefficient of e1, coefficient of e2)`, indices from one.
fn table(rows: &[Row]) -> Product {
    Product::from_rows(2, rows.iter().map(|&(i, j, a, b)| (i - 1, j - 1, vec![rf(a), rf(b)])).collect())
        .expect("two-dimensional table")
}

fn params(s: &str) -> Vec<Var> {
    s.split_whitespace().map(|p| p.parse().unwrap()).collect()
}

fn base_tables() -> BTreeMap<String, Product> {
    let t: [(&str, &[Row]); 8] = [
        ("C01", &[(1, 1, "1", "1"), (2, 1, "0", "1")]),
        ("C02", &[(1, 1, "1", "1"), (1, 2, "0", "1")]),
        ("C03", &[(1, 1, "0", "1")]),
        ("C04", &[(2, 1, "1", "0")]),
        ("C05", &[(1, 1, "1", "0"), (1, 2, "0", "alpha")]),
        ("C06", &[(1, 1, "1", "0"), (1, 2, "0", "alpha"), (2, 1, "0", "1")]),
        ("C07", &[(1, 1, "1", "0"), (2, 2, "0", "1")]),
        ("C08", &[(1, 1, "1", "0"), (1, 2, "0", "2"), (2, 1, "1/2", "1"), (2, 2, "0", "1")]),
    ];
    t.iter().map(|(n, rows)| (n.to_string(), table(rows))).collect()
}

struct Def {
    name: &'static str,
    base: &'static str,
    params: &'static str,
    constraints: &'static [&'static str],
    second: &'static [Row],
}

const FAMILIES: &[Def] = &[
    Def { name: "C09", base: "C01", params: "alpha beta", constraints: &["beta != 0"],
          second: &[(1, 1, "alpha", "0"), (1, 2, "0", "beta"), (2, 1, "0", "alpha")] },
    Def { name: "C10", base: "C01", params: "alpha beta", constraints: &[],
          second: &[(1, 1, "alpha", "beta"), (2, 1, "0", "alpha")] },
    Def { name: "C11", base: "C02", params: "alpha beta", constraints: &["beta != alpha"],
          second: &[(1, 1, "alpha", "0"), (1, 2, "0", "beta")] },
    Def { name: "C12", base: "C02", params: "alpha beta", constraints: &[],
          second: &[(1, 1, "alpha", "beta"), (1, 2, "0", "alpha")] },
    Def { name: "C13", base: "C03", params: "alpha", constraints: &[],
          second: &[(1, 1, "alpha", "0"), (1, 2, "0", "1"), (2, 1, "0", "alpha")] },
    Def { name: "C14", base: "C03", params: "alpha", constraints: &[],
          second: &[(1, 1, "1", "alpha"), (2, 1, "0", "1")] },
    Def { name: "C15", base: "C03", params: "alpha", constraints: &[],
          second: &[(1, 1, "0", "alpha")] },
    Def { name: "C16", base: "C03", params: "alpha", constraints: &["alpha != 1"],
          second: &[(1, 1, "1", "0"), (1, 2, "0", "alpha")] },
    Def { name: "C17", base: "C03", params: "alpha", constraints: &[],
          second: &[(1, 1, "1", "alpha"), (1, 2, "0", "1")] },
    Def { name: "C18", base: "C03", params: "alpha", constraints: &[],
          second: &[(1, 1, "0", "alpha"), (1, 2, "1", "0"), (2, 1, "1", "0"), (2, 2, "0", "1")] },
    Def { name: "C19", base: "C03", params: "alpha", constraints: &[],
          second: &[(1, 1, "0", "alpha"), (2, 1, "1", "0"), (2, 2, "0", "2")] },
    Def { name: "C20", base: "C04", params: "alpha beta", constraints: &[],
          second: &[(2, 1, "alpha", "0"), (2, 2, "1", "beta")] },
    Def { name: "C21", base: "C04", params: "alpha beta", constraints: &[],
          second: &[(2, 1, "alpha", "0"), (2, 2, "0", "beta")] },
    Def { name: "C22", base: "C04", params: "alpha beta", constraints: &["alpha != 0"],
          second: &[(1, 2, "alpha", "0"), (2, 1, "beta", "0"), (2, 2, "1", "alpha")] },
    Def { name: "C23", base: "C04", params: "alpha beta", constraints: &["alpha != 0"],
          second: &[(1, 2, "alpha", "0"), (2, 1, "beta", "0"), (2, 2, "0", "alpha")] },
    Def { name: "C24", base: "C05", params: "alpha beta gamma", constraints: &[],
          second: &[(1, 1, "beta", "1"), (1, 2, "0", "gamma")] },
    Def { name: "C25", base: "C05", params: "alpha beta gamma", constraints: &[],
          second: &[(1, 1, "beta", "0"), (1, 2, "0", "gamma")] },
    Def { name: "C26", base: "C05^1/2", params: "alpha", constraints: &[],
          second: &[(1, 1, "2alpha", "0"), (1, 2, "0", "alpha"), (2, 2, "1", "0")] },
    Def { name: "C27", base: "C05^1/2", params: "alpha beta", constraints: &[],
          second: &[(1, 1, "2alpha", "0"), (1, 2, "1", "alpha"), (2, 1, "2", "0"), (2, 2, "beta", "1")] },
    Def { name: "C28", base: "C05^1", params: "", constraints: &[],
          second: &[(2, 1, "1", "0"), (2, 2, "0", "1")] },
    Def { name: "C29", base: "C05^0", params: "alpha", constraints: &[],
          second: &[(1, 1, "alpha", "0"), (2, 2, "0", "1")] },
    Def { name: "C30", base: "C05^0", params: "alpha beta", constraints: &[],
          second: &[(1, 1, "alpha", "beta"), (1, 2, "1", "0"), (2, 1, "1", "0"), (2, 2, "0", "1")] },
    Def { name: "C31", base: "C06", params: "alpha beta gamma", constraints: &[],
          second: &[(1, 1, "beta", "1"), (1, 2, "0", "gamma"), (2, 1, "0", "beta")] },
    Def { name: "C32", base: "C06", params: "alpha beta gamma", constraints: &[],
          second: &[(1, 1, "beta", "0"), (1, 2, "0", "gamma"), (2, 1, "0", "beta")] },
    Def { name: "C33", base: "C06^0", params: "", constraints: &[],
          second: &[(1, 2, "1", "0"), (2, 2, "0", "1")] },
    Def { name: "C34", base: "C06^1", params: "alpha beta", constraints: &[],
          second: &[(1, 1, "alpha", "0"), (1, 2, "0", "alpha"), (2, 1, "0", "alpha"), (2, 2, "1", "beta")] },
    Def { name: "C35", base: "C06^1", params: "alpha", constraints: &[],
          second: &[(1, 1, "alpha", "0"), (1, 2, "0", "alpha"), (2, 1, "0", "alpha"), (2, 2, "0", "1")] },
    Def { name: "C36", base: "C06^2", params: "alpha beta", constraints: &[],
          second: &[(1, 1, "alpha", "beta"), (1, 2, "0", "2alpha"), (2, 1, "1", "alpha"), (2, 2, "0", "2")] },
    Def { name: "C37", base: "C06^2", params: "alpha", constraints: &[],
          second: &[(1, 1, "alpha", "0"), (1, 2, "1", "2alpha"), (2, 1, "2", "alpha"), (2, 2, "0", "1")] },
    Def { name: "C38", base: "C07", params: "alpha beta gamma", constraints: &[],
          second: &[(1, 1, "gamma+beta-alpha", "-beta"), (1, 2, "alpha", "beta"), (2, 1, "alpha", "beta"),
                    (2, 2, "-alpha", "gamma")] },
    Def { name: "C39", base: "C07", params: "alpha beta", constraints: &["beta != alpha"],
          second: &[(1, 1, "alpha", "0"), (2, 2, "0", "beta")] },
    Def { name: "C40", base: "C08", params: "alpha beta gamma", constraints: &[],
          second: &[(1, 1, "alpha", "beta"), (1, 2, "0", "2alpha"), (2, 1, "gamma", "alpha"), (2, 2, "0", "2gamma")] },
    Def { name: "C41", base: "C08", params: "alpha beta", constraints: &["beta != 0"],
          second: &[(1, 1, "alpha", "0"), (1, 2, "beta", "2alpha"), (2, 1, "2beta+alpha/2", "alpha"),
                    (2, 2, "beta/2", "alpha+beta")] },
];

fn label(name: &str, ps: &[Var]) -> String {
    if ps.is_empty() {
        name.to_string()
    } else {
        format!("{name}^{{{}}}", ps.iter().map(|p| p.name()).collect::<Vec<_>>().join(","))
    }
}

fn families(bases: &BTreeMap<String, Product>) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    // The base algebras themselves, as (0, table).
    for (name, table) in bases {
        let ps = if table.variables().is_empty() { vec![] } else { vec![Var::Alpha] };
        out.push(FamilySpec {
            name: name.clone(),
            label: label(name, &ps),
            base: "zero".into(),
            params: ps,
            constraints: vec![],
            algebra: TwoProductAlgebra::new(Product::zero(2), table.clone()).unwrap(),
            varieties: BTreeSet::from([Variety::CompatiblePreLie]),
        });
    }
    for d in FAMILIES {
        let (bname, alpha) = match d.base.split_once('^') {
            Some((n, a)) => (n, Some(rf(a))),
            None => (d.base, None),
        };
        let mut first = bases[bname].clone();
        if let Some(a) = alpha {
            first = first.substitute(&BTreeMap::from([(Var::Alpha, a)])).unwrap();
        }
        let ps = params(d.params);
        out.push(FamilySpec {
            name: d.name.into(),
            label: label(d.name, &ps),
            base: d.base.into(),
            params: ps,
            constraints: d.constraints.iter().map(|c| Constraint::parse(c).unwrap()).collect(),
            algebra: TwoProductAlgebra::new(first, table(d.second)).unwrap(),
            varieties: BTreeSet::from([Variety::CompatiblePreLie]),
        });
    }
    out
}

/// `(family, label, specialisation, extra constraints)`
type EntryDef = (&'static str, &'static str, &'static [(&'static str, &'static str)], &'static [&'static str]);

const COMM_ASSOC: &[EntryDef] = &[
    ("C03", "C03", &[], &[]),
    ("C05", "C05^0", &[("alpha", "0")], &[]),
    ("C06", "C06^1", &[("alpha", "1")], &[]),
    ("C07", "C07", &[], &[]),
    ("C13", "C13^1", &[("alpha", "1")], &[]),
    ("C15", "C15^{alpha}", &[], &[]),
    ("C16", "C16^0", &[("alpha", "0")], &[]),
    ("C18", "C18^{alpha}", &[], &[]),
    ("C24", "C24^{0,beta,0}", &[("alpha", "0"), ("gamma", "0")], &[]),
    ("C25", "C25^{0,beta,0}", &[("alpha", "0"), ("gamma", "0")], &[]),
    ("C29", "C29^{alpha}", &[], &[]),
    ("C30", "C30^{alpha,beta}", &[], &[]),
    ("C31", "C31^{1,beta,beta}", &[("alpha", "1"), ("gamma", "beta")], &[]),
    ("C32", "C32^{1,beta,beta}", &[("alpha", "1"), ("gamma", "beta")], &[]),
    ("C34", "C34^{alpha,beta}", &[], &[]),
    ("C35", "C35^{alpha}", &[], &[]),
    ("C38", "C38^{alpha,beta,gamma}", &[], &[]),
    ("C39", "C39^{alpha,beta}", &[], &[]),
];

const ASSOC_EXTRA: &[EntryDef] = &[
    ("C05", "C05^1", &[("alpha", "1")], &[]),
    ("C06", "C06^0", &[("alpha", "0")], &[]),
    ("C25", "C25^{1,beta,beta}", &[("alpha", "1"), ("gamma", "beta")], &[]),
    ("C28", "C28", &[], &[]),
    ("C32", "C32^{0,beta,0}", &[("alpha", "0"), ("gamma", "0")], &[]),
    ("C33", "C33", &[], &[]),
];

const NOVIKOV_EXTRA: &[EntryDef] = &[
    ("C01", "C01", &[], &[]),
    ("C04", "C04", &[], &[]),
    ("C06", "C06^{alpha!=1}", &[], &["alpha != 1"]),
    ("C09", "C09^{alpha,beta}", &[], &[]),
    ("C10", "C10^{alpha,beta}", &[], &[]),
    ("C13", "C13^{alpha!=1}", &[], &["alpha != 1"]),
    ("C14", "C14^{alpha}", &[], &[]),
    ("C20", "C20^{alpha,0}", &[("beta", "0")], &[]),
    ("C21", "C21^{alpha,0}", &[("beta", "0")], &[]),
    ("C22", "C22^{alpha,beta}", &[], &[]),
    ("C23", "C23^{alpha,beta}", &[], &[]),
    ("C31", "C31^{alpha,beta,gamma}", &[], &["(alpha, gamma) != (1, beta)"]),
    ("C32", "C32^{alpha,beta,gamma}", &[], &["(alpha, gamma) != (1, beta)"]),
    ("C33", "C33", &[], &[]),
];

fn entries(defs: &[EntryDef]) -> Vec<VarietyEntry> {
    defs.iter()
        .map(|(family, lab, spec, cons)| VarietyEntry {
            family: family.to_string(),
            label: lab.to_string(),
            specialize: spec.iter().map(|(v, e)| (v.parse().unwrap(), rf(e))).collect(),
            constraints: cons.iter().map(|c| Constraint::parse(c).unwrap()).collect(),
        })
        .collect()
}

fn claims(list: &[(&str, u32)]) -> Vec<DimensionClaim> {
    list.iter().map(|(f, d)| DimensionClaim { family: f.to_string(), dimension: *d, note: None }).collect()
}

fn strings(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn varieties(all: &[FamilySpec]) -> Vec<VarietyRecord> {
    let pre_lie_entries = all
        .iter()
        .map(|f| VarietyEntry {
            family: f.name.clone(),
            label: f.label.clone(),
            specialize: BTreeMap::new(),
            constraints: vec![],
        })
        .collect();
    let comm = entries(COMM_ASSOC);
    let mut assoc = comm.clone();
    assoc.extend(entries(ASSOC_EXTRA));
    let mut novikov = comm.clone();
    novikov.extend(entries(NOVIKOV_EXTRA));

    let mut assoc_claims = claims(&[("C38", 7), ("C39", 6), ("C28", 4), ("C33", 4)]);
    assoc_claims.push(DimensionClaim {
        family: "C34".into(),
        dimension: 4,
        note: Some("asserted for a non-component family; C34 has two free parameters and no derivations".into()),
    });
    let mut novikov_claims = claims(&[("C38", 7), ("C09", 6), ("C22", 6), ("C39", 6)]);
    novikov_claims.push(DimensionClaim {
        family: "C31".into(),
        dimension: 6,
        note: Some("C31 satisfies the Novikov identities for all three parameters; the pre-Lie claims give it 7".into()),
    });
    novikov_claims.extend(claims(&[("C33", 4)]));
    vec![
        VarietyRecord {
            variety: Variety::CompatiblePreLie,
            entries: pre_lie_entries,
            components: strings(&[
                "C24", "C31", "C38", "C40", "C09", "C11", "C22", "C27", "C36", "C39", "C41", "C37", "C28", "C33",
            ]),
            dimension_claims: claims(&[
                ("C24", 7), ("C31", 7), ("C38", 7), ("C40", 7),
                ("C09", 6), ("C11", 6), ("C22", 6), ("C27", 6), ("C36", 6), ("C39", 6), ("C41", 6),
                ("C37", 5), ("C28", 4), ("C33", 4),
            ]),
        },
        VarietyRecord {
            variety: Variety::CompatibleCommAssoc,
            entries: comm,
            components: strings(&["C38", "C39"]),
            dimension_claims: claims(&[("C38", 7), ("C39", 6)]),
        },
        VarietyRecord {
            variety: Variety::CompatibleAssoc,
            entries: assoc,
            components: strings(&["C28", "C33", "C38", "C39"]),
            dimension_claims: assoc_claims,
        },
        VarietyRecord {
            variety: Variety::CompatibleNovikov,
            entries: novikov,
            components: strings(&["C09", "C22", "C31", "C33", "C38", "C39"]),
            dimension_claims: novikov_claims,
        },
    ]
}

fn basis(rows: &[&[&str]]) -> BasisChange {
    BasisChange::parse(rows).expect("valid basis")
}

fn automorphisms() -> Vec<AutRecord> {
    let cont = |base: &str, rows: &[&[&str]]| AutRecord {
        base: base.into(),
        family: AutFamily::Continuous { template: basis(rows) },
    };
    vec![
        cont("C01", &[&["1", "nu"], &["0", "1"]]),
        cont("C02", &[&["1", "nu"], &["0", "1"]]),
        cont("C03", &[&["xi", "nu"], &["0", "xi^2"]]),
        cont("C04", &[&["xi", "0"], &["0", "1"]]),
        cont("C05", &[&["1", "0"], &["0", "xi"]]),
        cont("C05^1", &[&["1", "nu"], &["0", "xi"]]),
        cont("C06", &[&["1", "0"], &["0", "xi"]]),
        cont("C06^0", &[&["1", "nu"], &["0", "xi"]]),
        AutRecord {
            base: "C07".into(),
            family: AutFamily::Finite { elements: vec![basis(&[&["1", "0"], &["0", "1"]]), basis(&[&["0", "1"], &["1", "0"]])] },
        },
        AutRecord {
            base: "C08".into(),
            family: AutFamily::Finite { elements: vec![basis(&[&["1", "0"], &["0", "1"]]), basis(&[&["-1", "4"], &["0", "1"]])] },
        },
    ]
}

pub fn catalog() -> Catalog {
    let bases = base_tables();
    let mut fams = families(&bases);
    let vars = varieties(&fams);
    // Unspecialised members of a list belong to that variety as whole families.
    for rec in &vars {
        for e in rec.entries.iter().filter(|e| e.specialize.is_empty() && e.constraints.is_empty()) {
            let f = fams.iter_mut().find(|f| f.name == e.family).expect("listed family exists");
            f.varieties.extend(Variety::ALL.iter().filter(|w| rec.variety.is_contained_in(**w)));
        }
    }
    Catalog { bases, families: fams, varieties: vars, automorphisms: automorphisms() }
}
