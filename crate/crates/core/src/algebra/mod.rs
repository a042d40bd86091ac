//! Bilinear products given by structure constants, pairs of products, and
//! the change-of-basis action on them.

mod derivations;
mod identities;
mod serde_impls;
mod zero_line;

pub use derivations::{derivation_dimension, derivation_dimension_at, rank};
pub use identities::{
    check_associative, check_commutative, check_compatible_variety, check_novikov, check_pre_lie,
    compatibility_defects, defect_pre_lie, z2_membership, Variety,
};
pub use zero_line::has_zero_mult_line;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{MathError, MultiPoly, RatFunc, Scalar, Var};

/// A bilinear product on an `n`-dimensional space:
/// `e_i e_j = sum_k c[i][j][k] e_k`, indices from zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Product {
    dim: usize,
    c: Vec<RatFunc>,
}

impl Product {
    pub fn zero(dim: usize) -> Self {
        Product { dim, c: vec![RatFunc::zero(); dim * dim * dim] }
    }

    /// Build from rows `(i, j, [coefficients of e_i e_j])`; unlisted products are zero.
    pub fn from_rows(dim: usize, rows: Vec<(usize, usize, Vec<RatFunc>)>) -> Result<Self> {
        let mut p = Product::zero(dim);
        for (i, j, coeffs) in rows {
            if i >= dim || j >= dim || coeffs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: coeffs.len().max(i + 1).max(j + 1) });
            }
            for (k, v) in coeffs.into_iter().enumerate() {
                p.set(i, j, k, v);
            }
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.c[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: RatFunc) {
        let n = self.idx(i, j, k);
        self.c[n] = v;
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[RatFunc] {
        let start = self.idx(i, j, 0);
        &self.c[start..start + self.dim]
    }

    /// All constants in `(i, j, k)` order.
    pub fn constants(&self) -> &[RatFunc] {
        &self.c
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &RatFunc)> {
        let n = self.dim;
        self.c.iter().enumerate().map(move |(x, v)| (x / (n * n), (x / n) % n, x % n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RatFunc::is_zero)
    }

    pub fn is_numeric(&self) -> bool {
        self.c.iter().all(|v| v.constant_value().is_some())
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| self.c.iter().any(|x| x.contains(v)))
            .collect()
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, u: &[RatFunc], v: &[RatFunc]) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.dim];
        for (p, up) in u.iter().enumerate() {
            if up.is_zero() {
                continue;
            }
            for (q, vq) in v.iter().enumerate() {
                if vq.is_zero() {
                    continue;
                }
                let w = up * vq;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(p, q, k);
                    if !c.is_zero() {
                        *o = &*o + &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// The product `x ⋆ y = x·y + x∗y`.
    pub fn sum(&self, other: &Product) -> Product {
        Product {
            dim: self.dim,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn try_map<F>(&self, f: F) -> Result<Product>
    where
        F: Fn(&RatFunc) -> std::result::Result<RatFunc, MathError>,
    {
        Ok(Product {
            dim: self.dim,
            c: self.c.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn substitute(&self, map: &BTreeMap<Var, RatFunc>) -> Result<Product> {
        self.try_map(|x| x.substitute(map))
    }

    pub fn partial_eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<Product> {
        self.try_map(|x| x.partial_eval(point))
    }

    /// Numeric constants at a point assigning every free variable.
    pub fn eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<Vec<Scalar>> {
        Ok(self.c.iter().map(|x| x.eval(point)).collect::<std::result::Result<_, _>>()?)
    }

    /// Structure constants in the basis `E_i = sum_j g[i][j] e_j`.
    pub fn transport(&self, g: &BasisChange) -> Result<Product> {
        let n = self.dim;
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.dim() });
        }
        // Work with polynomial numerators over common denominators and
        // reduce once per output constant.
        let mrefs: Vec<&RatFunc> = g.entries().iter().collect();
        let (mnum, d) = RatFunc::common_denominator(&mrefs);
        let crefs: Vec<&RatFunc> = self.c.iter().collect();
        let (cnum, cd) = RatFunc::common_denominator(&crefs);
        let nm = |i: usize, j: usize| &mnum[i * n + j];
        let nmat: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| nm(i, j).clone()).collect()).collect();
        let det = poly_det(&nmat);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let adj = poly_adjugate(&nmat);
        let den = &(&d * &cd) * &det;
        let mut out = Product::zero(n);
        for i in 0..n {
            for j in 0..n {
                // w_r = sum_{p,q} N_ip N_jq C_pq^r
                let mut w = vec![MultiPoly::zero(); n];
                for p in 0..n {
                    if nm(i, p).is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        if nm(j, q).is_zero() {
                            continue;
                        }
                        let coeff = nm(i, p) * nm(j, q);
                        for (r, wr) in w.iter_mut().enumerate() {
                            let c = &cnum[self.idx(p, q, r)];
                            if !c.is_zero() {
                                *wr = &*wr + &(&coeff * c);
                            }
                        }
                    }
                }
                #[allow(clippy::needless_range_loop)]
                for k in 0..n {
                    let mut acc = MultiPoly::zero();
                    for (r, wr) in w.iter().enumerate() {
                        if !wr.is_zero() && !adj[r][k].is_zero() {
                            acc = &acc + &(wr * &adj[r][k]);
                        }
                    }
                    out.set(i, j, k, RatFunc::new(acc, den.clone())?);
                }
            }
        }
        Ok(out)
    }

    /// Limit of every constant as `v -> 0`.
    pub fn limit_at_zero(&self, v: Var) -> std::result::Result<Product, (usize, usize, usize)> {
        let mut out = Product::zero(self.dim);
        for (i, j, k, x) in self.entries() {
            let l = x.limit_at_zero(v).map_err(|_| (i, j, k))?;
            out.set(i, j, k, l);
        }
        Ok(out)
    }
}

impl fmt::Display for Product {
    /// Nonzero products only, e.g. `e1e1 = e1 + alpha*e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.basis_product(i, j);
                if row.iter().all(RatFunc::is_zero) {
                    continue;
                }
                let mut rhs = String::new();
                for (k, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let (neg, mag) = match c.constant_value() {
                        Some(x) if x.is_real() && x.re() < &BigRational::zero() => (true, -c.clone()),
                        _ => (false, c.clone()),
                    };
                    rhs.push_str(match (rhs.is_empty(), neg) {
                        (true, true) => "-",
                        (true, false) => "",
                        (false, true) => " - ",
                        (false, false) => " + ",
                    });
                    match mag.constant_value() {
                        Some(x) if x.is_one() => {}
                        Some(x) if x.is_real() => rhs.push_str(&format!("{x} ")),
                        Some(x) => rhs.push_str(&format!("({x}) ")),
                        None => rhs.push_str(&format!("({mag}) ")),
                    }
                    rhs.push_str(&format!("e{}", k + 1));
                }
                lines.push(format!("e{}e{} = {rhs}", i + 1, j + 1));
            }
        }
        if lines.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&lines.join(", "))
        }
    }
}

/// A vector space with two bilinear products `·` (first) and `∗` (second).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoProductAlgebra {
    pub first: Product,
    pub second: Product,
}

impl TwoProductAlgebra {
    pub fn new(first: Product, second: Product) -> Result<Self> {
        if first.dim() != second.dim() {
            return Err(Error::DimensionMismatch { expected: first.dim(), got: second.dim() });
        }
        Ok(TwoProductAlgebra { first, second })
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn product(&self, second: bool) -> &Product {
        if second {
            &self.second
        } else {
            &self.first
        }
    }

    pub fn transport(&self, g: &BasisChange) -> Result<TwoProductAlgebra> {
        Ok(TwoProductAlgebra {
            first: self.first.transport(g)?,
            second: self.second.transport(g)?,
        })
    }

    pub fn substitute(&self, map: &BTreeMap<Var, RatFunc>) -> Result<TwoProductAlgebra> {
        Ok(TwoProductAlgebra {
            first: self.first.substitute(map)?,
            second: self.second.substitute(map)?,
        })
    }

    pub fn partial_eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<TwoProductAlgebra> {
        Ok(TwoProductAlgebra {
            first: self.first.partial_eval(point)?,
            second: self.second.partial_eval(point)?,
        })
    }

    pub fn is_numeric(&self) -> bool {
        self.first.is_numeric() && self.second.is_numeric()
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs = self.first.variables();
        for v in self.second.variables() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }
}

impl fmt::Display for TwoProductAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "·: {}; ∗: {}", self.first, self.second)
    }
}

/// Change of basis: row `i` holds the coordinates of the new vector `E_i`
/// in the old basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisChange {
    dim: usize,
    m: Vec<RatFunc>,
}

impl BasisChange {
    pub fn new(rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: rows.iter().map(Vec::len).max().unwrap_or(0) });
        }
        Ok(BasisChange { dim, m: rows.into_iter().flatten().collect() })
    }

    /// Parse rows of expressions, e.g. `[["t", "0"], ["0", "t^2"]]`.
    pub fn parse(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<RatFunc>()).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        BasisChange::new(rows)
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = vec![RatFunc::zero(); dim * dim];
        for i in 0..dim {
            m[i * dim + i] = RatFunc::one();
        }
        BasisChange { dim, m }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.m[i * self.dim + j]
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<RatFunc>> {
        self.m.chunks(self.dim).map(<[RatFunc]>::to_vec).collect()
    }

    pub fn det(&self) -> RatFunc {
        rf_det(&self.rows())
    }

    pub fn inverse(&self) -> Result<BasisChange> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let rows = self.rows();
        let n = self.dim;
        let mut out = vec![RatFunc::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                // inverse[i][j] = cofactor[j][i] / det
                let minor = rf_minor(&rows, j, i);
                let sign = if (i + j) % 2 == 0 { RatFunc::one() } else { RatFunc::from_int(-1) };
                out[i * n + j] = &(&sign * &rf_det(&minor)) / &det;
            }
        }
        Ok(BasisChange { dim: n, m: out })
    }

    /// Matrix product `self · other`. Transporting by `g` and then by `h`
    /// equals transporting by `h.compose(&g)`.
    pub fn compose(&self, other: &BasisChange) -> BasisChange {
        let n = self.dim;
        let mut out = vec![RatFunc::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = RatFunc::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out[i * n + j] = acc;
            }
        }
        BasisChange { dim: n, m: out }
    }

    pub fn substitute(&self, map: &BTreeMap<Var, RatFunc>) -> Result<BasisChange> {
        Ok(BasisChange {
            dim: self.dim,
            m: self.m.iter().map(|x| x.substitute(map)).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn partial_eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<BasisChange> {
        Ok(BasisChange {
            dim: self.dim,
            m: self.m.iter().map(|x| x.partial_eval(point)).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| self.m.iter().any(|x| x.contains(v)))
            .collect()
    }
}

impl fmt::Display for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn rf_minor(rows: &[Vec<RatFunc>], skip_r: usize, skip_c: usize) -> Vec<Vec<RatFunc>> {
    rows.iter()
        .enumerate()
        .filter(|(r, _)| *r != skip_r)
        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != skip_c).map(|(_, x)| x.clone()).collect())
        .collect()
}

fn rf_det(rows: &[Vec<RatFunc>]) -> RatFunc {
    match rows.len() {
        0 => RatFunc::one(),
        1 => rows[0][0].clone(),
        2 => &(&rows[0][0] * &rows[1][1]) - &(&rows[0][1] * &rows[1][0]),
        n => {
            let mut acc = RatFunc::zero();
            for c in 0..n {
                if rows[0][c].is_zero() {
                    continue;
                }
                let term = &rows[0][c] * &rf_det(&rf_minor(rows, 0, c));
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn poly_minor(rows: &[Vec<MultiPoly>], skip_r: usize, skip_c: usize) -> Vec<Vec<MultiPoly>> {
    rows.iter()
        .enumerate()
        .filter(|(r, _)| *r != skip_r)
        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != skip_c).map(|(_, x)| x.clone()).collect())
        .collect()
}

pub(crate) fn poly_det(rows: &[Vec<MultiPoly>]) -> MultiPoly {
    match rows.len() {
        0 => MultiPoly::one(),
        1 => rows[0][0].clone(),
        2 => &(&rows[0][0] * &rows[1][1]) - &(&rows[0][1] * &rows[1][0]),
        n => {
            let mut acc = MultiPoly::zero();
            for c in 0..n {
                if rows[0][c].is_zero() {
                    continue;
                }
                let term = &rows[0][c] * &poly_det(&poly_minor(rows, 0, c));
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `adj[r][k]` such that `N · adj = det(N) · I`.
fn poly_adjugate(rows: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let n = rows.len();
    let mut adj = vec![vec![MultiPoly::zero(); n]; n];
    for (r, adj_row) in adj.iter_mut().enumerate() {
        for (k, a) in adj_row.iter_mut().enumerate() {
            let minor = poly_det(&poly_minor(rows, k, r));
            *a = if (r + k) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn row(cs: &[&str]) -> Vec<RatFunc> {
        cs.iter().map(|c| rf(c)).collect()
    }

    #[test]
    fn transport_by_scaling() {
        // e1e1 = e2; in the basis (2e1, 4e2) we still get E1E1 = E2.
        let p = Product::from_rows(2, vec![(0, 0, row(&["0", "1"]))]).unwrap();
        let g = BasisChange::parse(&[&["2", "0"], &["0", "4"]]).unwrap();
        assert_eq!(p.transport(&g).unwrap(), p);
        // In (e1, 2e2) it becomes E1E1 = 1/2 E2.
        let g = BasisChange::parse(&[&["1", "0"], &["0", "2"]]).unwrap();
        assert_eq!(p.transport(&g).unwrap().get(0, 0, 1), &rf("1/2"));
    }

    #[test]
    fn transport_with_symbolic_basis() {
        // e1e1 = e1; basis E1 = t e1, E2 = e2 gives E1E1 = t E1.
        let p = Product::from_rows(2, vec![(0, 0, row(&["1", "0"]))]).unwrap();
        let g = BasisChange::parse(&[&["t", "0"], &["0", "1"]]).unwrap();
        assert_eq!(p.transport(&g).unwrap().get(0, 0, 0), &rf("t"));
    }

    #[test]
    fn singular_basis_rejected() {
        let p = Product::zero(2);
        let g = BasisChange::parse(&[&["1", "t"], &["2", "2*t"]]).unwrap();
        assert_eq!(p.transport(&g), Err(Error::SingularMatrix));
        assert_eq!(g.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let g = BasisChange::parse(&[&["t", "alpha"], &["1", "t^2"]]).unwrap();
        assert_eq!(g.compose(&g.inverse().unwrap()), BasisChange::identity(2));
    }

    #[test]
    fn display_lists_nonzero_products() {
        let p = Product::from_rows(2, vec![(0, 0, row(&["1", "1"])), (1, 0, row(&["0", "1"]))]).unwrap();
        assert_eq!(p.to_string(), "e1e1 = e1 + e2, e2e1 = e2");
    }
}
