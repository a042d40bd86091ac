//! Isomorphisms between compatible algebras sharing a base pre-Lie algebra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{BasisChange, TwoProductAlgebra, Variety};
use crate::catalog::{AutFamily, AutRecord, Catalog, Constraint};
use crate::error::{Error, Result};
use crate::exactmath::{gcd_many, MultiPoly, RatFunc, Scalar, UniPoly, Var};

pub fn is_automorphism(a: &TwoProductAlgebra, g: &BasisChange) -> Result<bool> {
    Ok(a.transport(g)? == *a)
}

/// `g` carries `a` onto `b`: the constants of `a` in the basis `g` are those of `b`.
pub fn verify_isomorphism(a: &TwoProductAlgebra, b: &TwoProductAlgebra, g: &BasisChange) -> Result<bool> {
    Ok(a.transport(g)? == *b)
}

/// Whether every member of an automorphism family fixes the base product,
/// symbolically in `xi`, `nu` (and the base parameter on generic branches).
pub fn verify_aut_family(cat: &Catalog, rec: &AutRecord) -> Result<bool> {
    let base = cat.base_product(&rec.base)?;
    let fixes = |g: &BasisChange| -> Result<bool> { Ok(base.transport(g)? == base) };
    match &rec.family {
        AutFamily::Continuous { template } => fixes(template),
        AutFamily::Finite { elements } => {
            for g in elements {
                if !fixes(g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum SearchOutcome {
    Found(BasisChange),
    NotFoundWithinFamily,
}

/// Look for an automorphism of `base` mapping `a` to `b` (both numeric,
/// both with first product equal to `base`).
pub fn search_isomorphism(
    cat: &Catalog,
    base: &str,
    a: &TwoProductAlgebra,
    b: &TwoProductAlgebra,
) -> Result<SearchOutcome> {
    if !a.is_numeric() || !b.is_numeric() {
        return Err(Error::NotNumeric);
    }
    let base_product = cat.base_product(base)?;
    if a.first != base_product || b.first != base_product {
        return Err(Error::BaseMismatch(base.to_string()));
    }
    let rec = cat.automorphism_family_for(base)?;
    match &rec.family {
        AutFamily::Finite { elements } => {
            for g in elements {
                if verify_isomorphism(a, b, g)? {
                    return Ok(SearchOutcome::Found(g.clone()));
                }
            }
            Ok(SearchOutcome::NotFoundWithinFamily)
        }
        AutFamily::Continuous { template } => {
            let image = a.transport(template)?;
            let mut eqs = Vec::new();
            for (x, y) in image
                .first
                .constants()
                .iter()
                .zip(b.first.constants())
                .chain(image.second.constants().iter().zip(b.second.constants()))
            {
                let d = x - y;
                if !d.is_zero() {
                    eqs.push(d.num().clone());
                }
            }
            let unknowns = template.variables();
            for sol in solve(eqs, &unknowns)? {
                if sol.get(&Var::Xi).is_some_and(Scalar::is_zero) {
                    continue;
                }
                let Ok(g) = template.partial_eval(&sol) else { continue };
                if g.det().is_zero() {
                    continue;
                }
                if verify_isomorphism(a, b, &g)? {
                    return Ok(SearchOutcome::Found(g));
                }
            }
            Ok(SearchOutcome::NotFoundWithinFamily)
        }
    }
}

/// Values tried for an unknown left free by the equations.
const FREE_TRIALS: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (3, 1), (-1, 2), (5, 1)];

fn default_value(v: Var) -> Scalar {
    if v == Var::Nu {
        Scalar::zero()
    } else {
        Scalar::one()
    }
}

/// Gaussian-rational solutions of a polynomial system: eliminate the last
/// unknown by resultants, find roots of the eliminant, back-substitute.
/// Returns candidates; callers verify exactly.
fn solve(eqs: Vec<MultiPoly>, unknowns: &[Var]) -> Result<Vec<BTreeMap<Var, Scalar>>> {
    let eqs: Vec<MultiPoly> = eqs.into_iter().filter(|p| !p.is_zero()).collect();
    if eqs.iter().any(MultiPoly::is_constant) {
        return Ok(vec![]);
    }
    let Some((&u, rest)) = unknowns.split_last() else {
        return Ok(if eqs.is_empty() { vec![BTreeMap::new()] } else { vec![] });
    };
    if rest.is_empty() {
        let values = if eqs.is_empty() {
            vec![default_value(u)]
        } else {
            let g = gcd_many(eqs.iter());
            UniPoly::from_multi(&g, u)?.gaussian_rational_roots()?
        };
        return Ok(values.into_iter().map(|x| BTreeMap::from([(u, x)])).collect());
    }
    // Eliminate u.
    let (with_u, without_u): (Vec<_>, Vec<_>) = eqs.iter().cloned().partition(|p| p.contains(u));
    let mut eliminants = without_u;
    for (k, p) in with_u.iter().enumerate() {
        for q in &with_u[k + 1..] {
            eliminants.push(resultant(p, q, u));
        }
    }
    let x = *rest.last().unwrap();
    let mut candidates: Vec<BTreeMap<Var, Scalar>> = Vec::new();
    let nonzero: Vec<MultiPoly> = eliminants.into_iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        for (n, d) in FREE_TRIALS {
            candidates.push(BTreeMap::from([(x, Scalar::from_ratio(n, d))]));
        }
    } else {
        for sol in solve(nonzero, rest)? {
            candidates.push(sol);
        }
    }
    let mut out = Vec::new();
    for partial in candidates {
        let reduced: Vec<MultiPoly> = eqs.iter().map(|p| p.partial_eval(&partial)).collect();
        for mut sol in solve(reduced, &[u])? {
            sol.extend(partial.clone());
            out.push(sol);
        }
    }
    Ok(out)
}

/// Resultant of `p` and `q` with respect to `v`, by fraction-free
/// elimination on the Sylvester matrix.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: Var) -> MultiPoly {
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    if m == 0 {
        return pc[0].pow(n as u32);
    }
    if n == 0 {
        return qc[0].pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![MultiPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let mut sign = Scalar::one();
    let mut prev = MultiPoly::one();
    for i in 0..n {
        if m[i][i].is_zero() {
            let Some(r) = (i + 1..n).find(|&r| !m[r][i].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(i, r);
            sign = -sign;
        }
        for j in i + 1..n {
            for l in i + 1..n {
                let num = &(&m[j][l] * &m[i][i]) - &(&m[j][i] * &m[i][l]);
                m[j][l] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[i][i].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

/// A named catalog member with its parameters given by expressions.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FamilyRef {
    pub family: String,
    pub params: BTreeMap<Var, RatFunc>,
}

impl FamilyRef {
    pub fn algebra(&self, cat: &Catalog) -> Result<TwoProductAlgebra> {
        let fam = cat.family(&self.family)?;
        for p in &fam.params {
            if !self.params.contains_key(p) {
                return Err(Error::MissingParameter { family: fam.label.clone(), param: p.name().into() });
            }
        }
        fam.instantiate_symbolic(&self.params)
    }
}

/// Two list members that are isomorphic, with a frozen witness.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct IsoException {
    pub name: String,
    pub left: FamilyRef,
    pub right: FamilyRef,
    pub witness: BasisChange,
    /// Conditions on the parameters under which the witness applies.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<Constraint>,
    pub varieties: Vec<Variety>,
}

pub const ISO_EXCEPTIONS_JSON: &str = include_str!("../data/iso_exceptions.json");

pub fn verify_iso_exception(cat: &Catalog, exc: &IsoException) -> Result<bool> {
    let a = exc.left.algebra(cat)?;
    let b = exc.right.algebra(cat)?;
    verify_isomorphism(&a, &b, &exc.witness)
}

fn fref(family: &str, params: &[(&str, &str)]) -> FamilyRef {
    FamilyRef {
        family: family.into(),
        params: params.iter().map(|(v, e)| (v.parse().unwrap(), e.parse().unwrap())).collect(),
    }
}

pub fn builtin_iso_exceptions() -> Vec<IsoException> {
    use Variety::*;
    let b = |rows: &[&[&str]]| BasisChange::parse(rows).unwrap();
    let all = vec![CompatiblePreLie, CompatibleCommAssoc, CompatibleAssoc, CompatibleNovikov];
    vec![
        IsoException {
            name: "C24-C25".into(),
            left: fref("C24", &[("alpha", "1"), ("beta", "beta"), ("gamma", "gamma")]),
            right: fref("C25", &[("alpha", "1"), ("beta", "beta"), ("gamma", "gamma")]),
            witness: b(&[&["1", "1/(beta - gamma)"], &["0", "1"]]),
            conditions: vec![Constraint::parse("gamma != beta").unwrap()],
            varieties: vec![CompatiblePreLie],
        },
        IsoException {
            name: "C31-C32".into(),
            left: fref("C31", &[("alpha", "0"), ("beta", "beta"), ("gamma", "gamma")]),
            right: fref("C32", &[("alpha", "0"), ("beta", "beta"), ("gamma", "gamma")]),
            witness: b(&[&["1", "-1/gamma"], &["0", "1"]]),
            conditions: vec![Constraint::parse("gamma != 0").unwrap()],
            varieties: vec![CompatiblePreLie, CompatibleNovikov],
        },
        IsoException {
            name: "C38-swap".into(),
            left: fref("C38", &[("alpha", "alpha"), ("beta", "beta"), ("gamma", "gamma")]),
            right: fref("C38", &[("alpha", "beta"), ("beta", "alpha"), ("gamma", "gamma + beta - alpha")]),
            witness: b(&[&["0", "1"], &["1", "0"]]),
            conditions: vec![],
            varieties: all.clone(),
        },
        IsoException {
            name: "C39-swap".into(),
            left: fref("C39", &[("alpha", "alpha"), ("beta", "beta")]),
            right: fref("C39", &[("alpha", "beta"), ("beta", "alpha")]),
            witness: b(&[&["0", "1"], &["1", "0"]]),
            conditions: vec![],
            varieties: all,
        },
        IsoException {
            name: "C40-involution".into(),
            left: fref("C40", &[("alpha", "alpha"), ("beta", "beta"), ("gamma", "gamma")]),
            right: fref("C40", &[("alpha", "4gamma - alpha"), ("beta", "beta - 8alpha + 16gamma"), ("gamma", "gamma")]),
            witness: b(&[&["-1", "4"], &["0", "1"]]),
            conditions: vec![],
            varieties: vec![CompatiblePreLie],
        },
        IsoException {
            name: "C41-involution".into(),
            left: fref("C41", &[("alpha", "alpha"), ("beta", "beta")]),
            right: fref("C41", &[("alpha", "alpha + 4beta"), ("beta", "-beta")]),
            witness: b(&[&["-1", "4"], &["0", "1"]]),
            conditions: vec![],
            varieties: vec![CompatiblePreLie],
        },
    ]
}

pub fn iso_exceptions_from_json(text: &str) -> Result<Vec<IsoException>> {
    serde_json::from_str(text).map_err(|e| Error::Data { file: "iso_exceptions.json".into(), reason: e.to_string() })
}

pub fn embedded_iso_exceptions() -> Vec<IsoException> {
    iso_exceptions_from_json(ISO_EXCEPTIONS_JSON).expect("embedded isomorphism exceptions parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_poly;

    #[test]
    fn resultant_of_linear_polys() {
        // Res_nu(nu - xi, nu + xi - 2) = (xi + xi - 2) up to sign
        let p = parse_poly("nu - xi").unwrap();
        let q = parse_poly("nu + xi - 2").unwrap();
        let r = resultant(&p, &q, Var::Nu);
        assert_eq!(r.monic(), parse_poly("xi - 1").unwrap());
    }

    #[test]
    fn resultant_detects_common_root() {
        // Both vanish at nu = 1 when xi = 2.
        let p = parse_poly("nu^2 - 1").unwrap();
        let q = parse_poly("nu*xi - 2").unwrap();
        let r = resultant(&p, &q, Var::Nu);
        let at = |x: i64| r.eval(&BTreeMap::from([(Var::Xi, Scalar::from_int(x))])).unwrap();
        assert!(at(2).is_zero());
        assert!(at(-2).is_zero());
        assert!(!at(3).is_zero());
    }

    #[test]
    fn solver_two_unknowns() {
        let eqs = vec![parse_poly("xi^2 - 4").unwrap(), parse_poly("nu - xi + 1").unwrap()];
        let mut sols: Vec<(String, String)> = solve(eqs, &[Var::Xi, Var::Nu])
            .unwrap()
            .into_iter()
            .map(|s| (s[&Var::Xi].to_string(), s[&Var::Nu].to_string()))
            .collect();
        sols.sort();
        assert_eq!(sols, vec![("-2".to_string(), "-3".to_string()), ("2".to_string(), "1".to_string())]);
    }
}
