//! Degeneration witnesses and non-degeneration relation sets, as authored.

use std::collections::BTreeMap;

use super::relation::{RelPoly, RelationSet};
use super::witness::{DegenerationWitness, WitnessOrigin};
use crate::algebra::{BasisChange, Variety};
use crate::catalog::Constraint;
use crate::exactmath::{RatFunc, Var};

const PARAMS: [Var; 3] = [Var::Alpha, Var::Beta, Var::Gamma];

fn params(values: &[&str]) -> BTreeMap<Var, RatFunc> {
    PARAMS.iter().zip(values).map(|(v, e)| (*v, e.parse().expect("valid expression"))).collect()
}

fn basis(rows: [[&str; 2]; 2]) -> BasisChange {
    BasisChange::parse(&[&rows[0], &rows[1]]).expect("valid basis")
}

struct Arrow<'a> {
    source: &'a str,
    index: &'a [&'a str],
    basis: [[&'a str; 2]; 2],
    target: &'a str,
    target_index: &'a [&'a str],
    side: &'a [&'a str],
}

const fn arrow<'a>(
    source: &'a str,
    index: &'a [&'a str],
    basis: [[&'a str; 2]; 2],
    target: &'a str,
    target_index: &'a [&'a str],
    side: &'a [&'a str],
) -> Arrow<'a> {
    Arrow { source, index, basis, target, target_index, side }
}

fn build(variety: Variety, a: &Arrow, origin: WitnessOrigin) -> DegenerationWitness {
    DegenerationWitness {
        name: format!("{}->{}", a.source, a.target),
        variety,
        source: a.source.into(),
        param_subst: params(a.index),
        basis: basis(a.basis),
        target: a.target.into(),
        target_params: params(a.target_index),
        side_conditions: a.side.iter().map(|c| Constraint::parse(c).expect("valid constraint")).collect(),
        origin,
    }
}

// Rotation used by several commutative arrows: (i t e1 - i t e2, -t^2 e1 - t^2 e2).
const ROT: [[&str; 2]; 2] = [["i*t", "-i*t"], ["-t^2", "-t^2"]];
const E1_TE2: [[&str; 2]; 2] = [["1", "0"], ["0", "t"]];
const SUM_TE2: [[&str; 2]; 2] = [["1", "1"], ["0", "t"]];
const INV_T_E2: [[&str; 2]; 2] = [["1", "0"], ["0", "1/t"]];
const SWAP_T: [[&str; 2]; 2] = [["0", "1"], ["t", "0"]];

const COMM_ASSOC: &[Arrow] = &[
    arrow("C38", &["0", "0", "1/t"], [["t", "0"], ["0", "t"]], "C07", &[], &[]),
    arrow("C39", &["-i/t", "i/t"], ROT, "C13", &["1"], &[]),
    arrow("C38", &["0", "0", "alpha"], ROT, "C15", &["alpha"], &[]),
    arrow("C38", &["i/(2t)", "0", "i/t"], ROT, "C16", &["0"], &[]),
    arrow(
        "C38",
        &["-(1 + alpha*t^2)/(4t^2)", "-(1 + alpha*t^2)/(4t^2)", "(alpha*t^2 - 3)/(4t^2)"],
        ROT,
        "C18",
        &["alpha"],
        &[],
    ),
    arrow("C38", &["0", "-t", "beta + t"], E1_TE2, "C24", &["0", "beta", "0"], &[]),
    arrow("C38", &["0", "0", "beta"], E1_TE2, "C25", &["0", "beta", "0"], &[]),
    arrow("C39", &["alpha", "1/t"], E1_TE2, "C29", &["alpha"], &[]),
    arrow("C39", &["beta - t", "beta"], SUM_TE2, "C31", &["1", "beta", "beta"], &[]),
    arrow("C38", &["0", "beta", "0"], SUM_TE2, "C32", &["1", "beta", "beta"], &[]),
    arrow("C38", &["-1/t^2", "alpha - (1 + beta*t)/t^2", "(1 + beta*t)/t^2"], SUM_TE2, "C34", &["alpha", "beta"], &[]),
    arrow("C38", &["(1 + 2alpha*t)/(2t)", "alpha", "0"], [["1", "1"], ["-t", "t"]], "C35", &["alpha"], &[]),
];

/// Arrows out of `C07` that are only cited; the bases were found by hand.
const FROM_C07: &[Arrow] = &[
    arrow("C07", &[], [["t", "-t"], ["t^2", "t^2"]], "C03", &[], &[]),
    arrow("C07", &[], E1_TE2, "C05", &["0"], &[]),
    arrow("C07", &[], SUM_TE2, "C06", &["1"], &[]),
];

const ASSOC: &[Arrow] = &[
    arrow("C28", &[], SWAP_T, "C05", &["1"], &[]),
    arrow("C33", &[], SWAP_T, "C06", &["0"], &[]),
    arrow("C28", &[], [["1", "beta"], ["0", "t"]], "C25", &["1", "beta", "beta"], &[]),
    arrow("C33", &[], [["1", "beta"], ["0", "t"]], "C32", &["0", "beta", "0"], &[]),
];

const NOVIKOV: &[Arrow] = &[
    arrow("C31", &["t", "(t + 2)/(2t)", "-1/2"], [["t", "2t/3"], ["t^2/2", "t^2"]], "C01", &[], &[]),
    arrow("C31", &["0", "0", "1/t"], [["t^2", "1"], ["t", "-t^2"]], "C04", &[], &[]),
    arrow("C31", &["0", "1/t", "alpha/t"], [["t", "-t^2/alpha"], ["0", "t"]], "C06", &["alpha"], &["alpha != 0"]),
    arrow("C31", &["1", "alpha/t", "1/t"], [["t", "-t^2"], ["0", "-t^3"]], "C13", &["alpha"], &[]),
    arrow("C31", &["1", "1/t", "0"], [["t", "t/alpha"], ["0", "t^2/alpha"]], "C14", &["alpha"], &["alpha != 0"]),
    arrow(
        "C31",
        &["1/t - t", "0", "-1 + alpha/t"],
        [["t^2", "t^2/(1 - alpha*t)"], ["t", "t^3/(1 - alpha*t)"]],
        "C20",
        &["alpha", "0"],
        &[],
    ),
    arrow(
        "C31",
        &["1/t - t", "alpha/t", "beta/t"],
        [["t^2", "-t/beta"], ["t", "-t^2/beta"]],
        "C23",
        &["alpha", "beta"],
        &["beta != 0"],
    ),
    arrow("C31", &["alpha", "beta", "gamma"], INV_T_E2, "C32", &["alpha", "beta", "gamma"], &[]),
];

const PRE_LIE: &[Arrow] = &[
    arrow("C24", &["1", "1 + 1/t", "-1 + 1/t"], [["t", "t - 1"], ["t^2", "t"]], "C02", &[], &[]),
    arrow("C24", &["1", "1/t", "alpha/t"], [["t", "t^2/(1 - alpha)"], ["t^2", "1"]], "C05", &["alpha"], &["alpha != 1"]),
    arrow("C40", &["1/t", "0", "1/(2t)"], [["t", "0"], ["0", "t"]], "C08", &[], &[]),
    arrow("C11", &["alpha", "alpha + t"], [["1", "beta/t"], ["0", "1"]], "C12", &["alpha", "beta"], &[]),
    arrow(
        "C24",
        &["alpha - 1", "1/t", "alpha/t"],
        [["t", "-t^2/(alpha - 1)"], ["t^2", "-t^3"]],
        "C16",
        &["alpha"],
        &["alpha != 1"],
    ),
    arrow(
        "C24",
        &["-2", "alpha + 1/t", "-alpha + 1/t"],
        [["t", "-t/alpha"], ["t^2", "2t^2/alpha"]],
        "C17",
        &["alpha"],
        &["alpha != 0"],
    ),
    arrow(
        "C40",
        &["-alpha - 2/t^2", "-6alpha - 6/t^2", "-(4 + alpha*t^2)/(6t^2)"],
        [["t", "-3t"], ["t^2/2", "-3t^2"]],
        "C19",
        &["alpha"],
        &[],
    ),
    arrow(
        "C24",
        &["-1 - 1/t^2", "-(beta + t)/t^2", "(t - alpha)/t^2"],
        [["-t^3", "(t^4 + t^6)/(1 + alpha*t - beta*t)"], ["-t^2", "t^5/(beta*t - alpha*t - 1)"]],
        "C20",
        &["alpha", "beta"],
        &[],
    ),
    arrow(
        "C24",
        &["-1 - 1/t^2", "-beta/t^2", "-alpha/t^2"],
        [["-t^3", "(t^3 + t^5)/(alpha - beta)"], ["-t^2", "-t^4/(alpha - beta)"]],
        "C21",
        &["alpha", "beta"],
        &["alpha != beta"],
    ),
    arrow("C27", &["alpha - 5t^2", "1/t^2"], [["1", "2t^2"], ["0", "t"]], "C26", &["alpha"], &[]),
    arrow("C24", &["alpha", "beta", "gamma"], INV_T_E2, "C25", &["alpha", "beta", "gamma"], &[]),
];

struct Fix<'a> {
    variety: Variety,
    corrected: Arrow<'a>,
    published_index: &'a [&'a str],
    published_basis: [[&'a str; 2]; 2],
    note: &'a str,
}

const FIXES: &[Fix] = &[
    Fix {
        variety: Variety::CompatibleCommAssoc,
        corrected: arrow(
            "C38",
            &["-alpha - beta*t + 1/t", "-beta*t", "1/t"],
            E1_TE2,
            "C30",
            &["alpha", "beta"],
            &[],
        ),
        published_index: &["-alpha - beta*t + 1/t", "-beta*t", "1/t"],
        published_basis: SUM_TE2,
        note: "the published first basis vector e1 + e2 gives constants with poles; e1 works",
    },
    Fix {
        variety: Variety::CompatibleNovikov,
        corrected: arrow(
            "C09",
            &["(2alpha + t)*beta/(2beta + t)", "-beta*t/(2beta + t)"],
            [["(2beta + t)/(2beta)", "-(2beta + t)^2/(2beta*t)"], ["0", "(2beta + t)^2/(4beta^2)"]],
            "C10",
            &["alpha", "beta"],
            &["beta != 0"],
        ),
        published_index: &["(2alpha + t)*beta/(2beta + t)", "-beta*t/(2beta + t)"],
        published_basis: [
            ["(2beta + t)/(2beta)", "-(2beta + t)^2/(2beta*t)"],
            ["(2beta + t)*t^2/(4beta^2)", "0"],
        ],
        note: "the published second basis vector is a multiple of e1; it must be ((2beta + t)^2/(4beta^2)) e2",
    },
    Fix {
        variety: Variety::CompatibleNovikov,
        corrected: arrow(
            "C31",
            &["1/t - t", "0", "alpha/t"],
            [["t^2", "-t/alpha"], ["t", "-t^2/alpha"]],
            "C21",
            &["alpha", "0"],
            &["alpha != 0"],
        ),
        published_index: &["1/t - t", "0", "-alpha/t"],
        published_basis: [["t^2", "-t/alpha"], ["t", "-t/alpha"]],
        note: "with the published data both limit products keep e2e2 = e1; gamma = alpha/t and a second \
               basis vector t e1 - (t^2/alpha) e2 give C21",
    },
];

pub fn witnesses() -> Vec<DegenerationWitness> {
    let mut out = Vec::new();
    let published = [
        (Variety::CompatibleCommAssoc, COMM_ASSOC),
        (Variety::CompatibleAssoc, ASSOC),
        (Variety::CompatibleNovikov, NOVIKOV),
        (Variety::CompatiblePreLie, PRE_LIE),
    ];
    for (v, arrows) in published {
        out.extend(arrows.iter().map(|a| build(v, a, WitnessOrigin::Published)));
    }
    for f in FIXES {
        let origin = WitnessOrigin::Corrected {
            published_subst: params(f.published_index),
            published_basis: basis(f.published_basis),
            note: f.note.into(),
        };
        out.push(build(f.variety, &f.corrected, origin));
    }
    let note = "cited without a basis; the basis was constructed and is verified like the others";
    out.extend(
        FROM_C07
            .iter()
            .map(|a| build(Variety::CompatibleCommAssoc, a, WitnessOrigin::Derived { note: note.into() })),
    );
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

fn rel(
    name: &str,
    variety: Variety,
    source: &str,
    targets: &[&str],
    equalities: &[&str],
    as_printed: &str,
    correction: Option<&str>,
) -> RelationSet {
    RelationSet {
        name: name.into(),
        variety,
        source: source.into(),
        targets: targets.iter().map(|s| s.to_string()).collect(),
        equalities: equalities.iter().map(|e| e.parse::<RelPoly>().expect("valid relation")).collect(),
        as_printed: as_printed.into(),
        correction: correction.map(String::from),
    }
}

pub fn relations() -> Vec<RelationSet> {
    vec![
        rel(
            "C38-not-to-C39",
            Variety::CompatibleCommAssoc,
            "C38",
            &["C39"],
            &[
                "c22^1",
                "c12^1",
                "c22^2*c'12^2 + c12^2*c'21^1 + c11^1*c'22^2 - c'11^1*c22^2 - c11^1*c'21^1 - c12^2*c'22^2",
            ],
            "c22^1 = c12^1 = 0, c22^2 c'12^2 + c12^2 c'21^1 + c11^1 c'22^2 = c'11^1 c22^2 + c11^1 c'21^1 + c12^2 c'22^2",
            None,
        ),
        rel(
            "C24-not-to-C22-C26-C27-C28",
            Variety::CompatiblePreLie,
            "C24",
            &["C22", "C26", "C27", "C28"],
            &["c'21^1", "c'21^2", "c22^1", "c22^2", "c'22^1", "c'22^2"],
            "c'21^1 = c'21^2 = c22^1 = c22^2 = c'22^1 = c'22^2 = 0",
            None,
        ),
        rel(
            "C31-not-to-C33-C36-C37",
            Variety::CompatiblePreLie,
            "C31",
            &["C33", "C36", "C37"],
            &["c'22^1", "c'22^2", "c22^1", "c22^2"],
            "c'22^1 = c'23^2 = c22^1 = c22^2 = 0",
            Some(
                "index 23 is out of range in dimension 2; c'22^2 is the only single-index change under \
                 which C31 satisfies the set",
            ),
        ),
        rel(
            "C36-not-to-C37",
            Variety::CompatiblePreLie,
            "C36",
            &["C37"],
            &["c22^1", "c12^1", "c'12^1"],
            "c22^1 = c12^1 = c'12^1 = 0",
            None,
        ),
        rel(
            "C40-not-to-C41",
            Variety::CompatiblePreLie,
            "C40",
            &["C41"],
            &["c22^1", "c12^1", "c'12^1", "2c'11^1 - c'12^2"],
            "c22^1 = c12^1 = c'12^1 = 0, 2 c'11^1 = c'12^1",
            Some(
                "as printed the last equation reads 2 alpha = 0 on C40; with c'12^2 on the right it \
                 holds on C40 and is stable under triangular changes of basis",
            ),
        ),
    ]
}
