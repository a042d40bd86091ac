use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Product, TwoProductAlgebra};
use crate::error::Error;
use crate::exactmath::RatFunc;

/// The four varieties of compatible algebras handled by the catalog.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variety {
    CompatiblePreLie,
    CompatibleCommAssoc,
    CompatibleAssoc,
    CompatibleNovikov,
}

impl Variety {
    pub const ALL: [Variety; 4] = [
        Variety::CompatiblePreLie,
        Variety::CompatibleCommAssoc,
        Variety::CompatibleAssoc,
        Variety::CompatibleNovikov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variety::CompatiblePreLie => "compatible-pre-lie",
            Variety::CompatibleCommAssoc => "compatible-comm-assoc",
            Variety::CompatibleAssoc => "compatible-assoc",
            Variety::CompatibleNovikov => "compatible-novikov",
        }
    }

    /// `self ⊆ other` as varieties.
    pub fn is_contained_in(self, other: Variety) -> bool {
        self == other || other == Variety::CompatiblePreLie || self == Variety::CompatibleCommAssoc
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace(['_', ' '], "-");
        let key = key.strip_prefix("compatible-").unwrap_or(&key);
        match key {
            "pre-lie" | "prelie" => Ok(Variety::CompatiblePreLie),
            "comm-assoc" | "commutative-associative" | "commassoc" => Ok(Variety::CompatibleCommAssoc),
            "assoc" | "associative" => Ok(Variety::CompatibleAssoc),
            "novikov" => Ok(Variety::CompatibleNovikov),
            _ => Err(Error::UnknownVariety(s.to_string())),
        }
    }
}

fn e(dim: usize, i: usize) -> Vec<RatFunc> {
    let mut v = vec![RatFunc::zero(); dim];
    v[i] = RatFunc::one();
    v
}

fn sub(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn is_zero(v: &[RatFunc]) -> bool {
    v.iter().all(RatFunc::is_zero)
}

/// Runs `f` over every basis triple; true if every value vanishes.
fn holds_on_triples<F>(dim: usize, f: F) -> bool
where
    F: Fn(&[RatFunc], &[RatFunc], &[RatFunc]) -> Vec<RatFunc>,
{
    let basis: Vec<Vec<RatFunc>> = (0..dim).map(|i| e(dim, i)).collect();
    for x in &basis {
        for y in &basis {
            for z in &basis {
                if !is_zero(&f(x, y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

fn associator(p: &Product, x: &[RatFunc], y: &[RatFunc], z: &[RatFunc]) -> Vec<RatFunc> {
    sub(&p.mul(&p.mul(x, y), z), &p.mul(x, &p.mul(y, z)))
}

/// `(xy)z - x(yz) - (yx)z + y(xz)` for `x = e_i, y = e_j, z = e_k`.
pub fn defect_pre_lie(p: &Product, i: usize, j: usize, k: usize) -> Vec<RatFunc> {
    let n = p.dim();
    let (x, y, z) = (e(n, i), e(n, j), e(n, k));
    sub(&associator(p, &x, &y, &z), &associator(p, &y, &x, &z))
}

pub fn check_pre_lie(p: &Product) -> bool {
    holds_on_triples(p.dim(), |x, y, z| sub(&associator(p, x, y, z), &associator(p, y, x, z)))
}

pub fn check_commutative(p: &Product) -> bool {
    let n = p.dim();
    (0..n).all(|i| (0..n).all(|j| p.basis_product(i, j) == p.basis_product(j, i)))
}

pub fn check_associative(p: &Product) -> bool {
    holds_on_triples(p.dim(), |x, y, z| associator(p, x, y, z))
}

/// Pre-Lie together with right commutativity `(xy)z = (xz)y`.
pub fn check_novikov(p: &Product) -> bool {
    check_pre_lie(p) && holds_on_triples(p.dim(), |x, y, z| sub(&p.mul(&p.mul(x, y), z), &p.mul(&p.mul(x, z), y)))
}

/// Mixed associator `(x·y)∗z + (x∗y)·z - x·(y∗z) - x∗(y·z)`.
fn mixed_associator(a: &TwoProductAlgebra, x: &[RatFunc], y: &[RatFunc], z: &[RatFunc]) -> Vec<RatFunc> {
    let (d, s) = (&a.first, &a.second);
    let lhs = add(&s.mul(&d.mul(x, y), z), &d.mul(&s.mul(x, y), z));
    let rhs = add(&d.mul(x, &s.mul(y, z)), &s.mul(x, &d.mul(y, z)));
    sub(&lhs, &rhs)
}

fn mixed_pre_lie(a: &TwoProductAlgebra) -> bool {
    holds_on_triples(a.dim(), |x, y, z| sub(&mixed_associator(a, x, y, z), &mixed_associator(a, y, x, z)))
}

fn mixed_assoc(a: &TwoProductAlgebra) -> bool {
    holds_on_triples(a.dim(), |x, y, z| mixed_associator(a, x, y, z))
}

/// `(x·y)∗z + (x∗y)·z - (x·z)∗y - (x∗z)·y`.
fn mixed_right_comm(a: &TwoProductAlgebra) -> bool {
    let (d, s) = (&a.first, &a.second);
    holds_on_triples(a.dim(), |x, y, z| {
        let lhs = add(&s.mul(&d.mul(x, y), z), &d.mul(&s.mul(x, y), z));
        let rhs = add(&s.mul(&d.mul(x, z), y), &d.mul(&s.mul(x, z), y));
        sub(&lhs, &rhs)
    })
}

/// Names of the identities of `variety` that fail on `a`; empty when `a`
/// belongs to the variety.
pub fn compatibility_defects(a: &TwoProductAlgebra, variety: Variety) -> Vec<&'static str> {
    let sum = a.first.sum(&a.second);
    let mut failed = Vec::new();
    let mut need = |ok: bool, name: &'static str| {
        if !ok {
            failed.push(name);
        }
    };
    match variety {
        Variety::CompatiblePreLie => {
            need(check_pre_lie(&a.first), "first product pre-Lie");
            need(check_pre_lie(&a.second), "second product pre-Lie");
            need(mixed_pre_lie(a), "mixed pre-Lie identity");
            need(check_pre_lie(&sum), "sum product pre-Lie");
        }
        Variety::CompatibleAssoc | Variety::CompatibleCommAssoc => {
            need(check_associative(&a.first), "first product associative");
            need(check_associative(&a.second), "second product associative");
            need(mixed_assoc(a), "mixed associativity identity");
            need(check_associative(&sum), "sum product associative");
            if variety == Variety::CompatibleCommAssoc {
                need(check_commutative(&a.first), "first product commutative");
                need(check_commutative(&a.second), "second product commutative");
            }
        }
        Variety::CompatibleNovikov => {
            need(check_novikov(&a.first), "first product Novikov");
            need(check_novikov(&a.second), "second product Novikov");
            need(mixed_pre_lie(a), "mixed pre-Lie identity");
            need(mixed_right_comm(a), "mixed right-commutativity identity");
            need(check_novikov(&sum), "sum product Novikov");
        }
    }
    failed
}

pub fn check_compatible_variety(a: &TwoProductAlgebra, variety: Variety) -> bool {
    compatibility_defects(a, variety).is_empty()
}

/// Whether `theta` is a compatible 2-cocycle of the pre-Lie algebra `base`:
/// `theta` is pre-Lie and
/// `θ(x,y)·z - θ(x,y·z) + θ(x·y,z) - x·θ(y,z)` is symmetric in `x, y`.
pub fn z2_membership(base: &Product, theta: &Product) -> bool {
    if !check_pre_lie(theta) {
        return false;
    }
    let expr = |x: &[RatFunc], y: &[RatFunc], z: &[RatFunc]| {
        let a = base.mul(&theta.mul(x, y), z);
        let b = theta.mul(x, &base.mul(y, z));
        let c = theta.mul(&base.mul(x, y), z);
        let d = base.mul(x, &theta.mul(y, z));
        sub(&add(&sub(&a, &b), &c), &d)
    };
    holds_on_triples(base.dim(), |x, y, z| sub(&expr(x, y, z), &expr(y, x, z)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(rows: &[(usize, usize, [&str; 2])]) -> Product {
        Product::from_rows(
            2,
            rows.iter()
                .map(|(i, j, c)| (*i, *j, c.iter().map(|s| s.parse().unwrap()).collect()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn pre_lie_but_not_associative() {
        // e1e1 = e1, e1e2 = 2e2, e2e1 = e1/2 + e2, e2e2 = e2
        let p = product(&[(0, 0, ["1", "0"]), (0, 1, ["0", "2"]), (1, 0, ["1/2", "1"]), (1, 1, ["0", "1"])]);
        assert!(check_pre_lie(&p));
        assert!(!check_associative(&p));
    }

    #[test]
    fn non_pre_lie_detected() {
        // e1e2 = e1, e2e2 = e1: (e2 e2) e2 - e2 (e2 e2) = e1 e2 - e2 e1 = e1
        let p = product(&[(0, 1, ["1", "0"]), (1, 1, ["1", "0"])]);
        assert!(!check_pre_lie(&p));
        let d = defect_pre_lie(&p, 1, 0, 1);
        assert!(d.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn variety_names_parse() {
        for v in Variety::ALL {
            assert_eq!(v.name().parse::<Variety>().unwrap(), v);
        }
        assert_eq!("novikov".parse::<Variety>().unwrap(), Variety::CompatibleNovikov);
        assert!(matches!("lie".parse::<Variety>(), Err(Error::UnknownVariety(_))));
    }

    #[test]
    fn containment() {
        use Variety::*;
        assert!(CompatibleCommAssoc.is_contained_in(CompatibleNovikov));
        assert!(CompatibleAssoc.is_contained_in(CompatiblePreLie));
        assert!(!CompatibleAssoc.is_contained_in(CompatibleNovikov));
        assert!(!CompatiblePreLie.is_contained_in(CompatibleNovikov));
    }
}
