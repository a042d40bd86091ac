use std::collections::BTreeMap;

use super::TwoProductAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{Scalar, Var};

/// Rank of a matrix over the Gaussian rationals.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * p);
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Dimension of the space of linear maps `D` that are derivations of both
/// products, for an algebra with numeric structure constants.
/// `D(e_i)` is row `i` of `D`.
pub fn derivation_dimension(a: &TwoProductAlgebra) -> Result<usize> {
    let n = a.dim();
    let mut rows = Vec::new();
    for p in [&a.first, &a.second] {
        let c: Vec<Scalar> = p
            .constants()
            .iter()
            .map(|x| x.constant_value().ok_or(Error::NotNumeric))
            .collect::<Result<_>>()?;
        let at = |i: usize, j: usize, k: usize| &c[(i * n + j) * n + k];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // D(e_i e_j) - D(e_i) e_j - e_i D(e_j), component l
                    let mut row = vec![Scalar::zero(); n * n];
                    for k in 0..n {
                        row[k * n + l] = &row[k * n + l] + at(i, j, k);
                        row[i * n + k] = &row[i * n + k] - at(k, j, l);
                        row[j * n + k] = &row[j * n + k] - at(i, k, l);
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(n * n - rank(rows))
}

/// Derivation dimension after fixing the free parameters.
pub fn derivation_dimension_at(a: &TwoProductAlgebra, point: &BTreeMap<Var, Scalar>) -> Result<usize> {
    derivation_dimension(&a.partial_eval(point)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Product, TwoProductAlgebra};

    #[test]
    fn rank_basics() {
        let s = |n: i64| Scalar::from_int(n);
        assert_eq!(rank(vec![vec![s(1), s(2)], vec![s(2), s(4)]]), 1);
        assert_eq!(rank(vec![vec![s(0), s(1)], vec![s(1), s(0)]]), 2);
        assert_eq!(rank(vec![]), 0);
    }

    #[test]
    fn zero_algebra_has_all_derivations() {
        let a = TwoProductAlgebra::new(Product::zero(2), Product::zero(2)).unwrap();
        assert_eq!(derivation_dimension(&a).unwrap(), 4);
    }

    #[test]
    fn symbolic_constants_rejected() {
        let mut p = Product::zero(2);
        p.set(0, 0, 0, "alpha".parse().unwrap());
        let a = TwoProductAlgebra::new(p, Product::zero(2)).unwrap();
        assert_eq!(derivation_dimension(&a), Err(Error::NotNumeric));
    }
}
