use super::TwoProductAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{Scalar, UniPoly};

/// Whether some nonzero `v` has `v·v = v∗v = 0` (over the complex numbers).
/// Two-dimensional numeric algebras only.
pub fn has_zero_mult_line(a: &TwoProductAlgebra) -> Result<bool> {
    if a.dim() != 2 {
        return Err(Error::UnsupportedDimension(a.dim()));
    }
    let mut squares = Vec::new();
    for p in [&a.first, &a.second] {
        let c = |i, j, k| -> Result<Scalar> { p.get(i, j, k).constant_value().ok_or(Error::NotNumeric) };
        // v = e2
        let e2_square_zero = c(1, 1, 0)?.is_zero() && c(1, 1, 1)?.is_zero();
        squares.push((e2_square_zero, c));
    }
    if squares.iter().all(|(z, _)| *z) {
        return Ok(true);
    }
    // v = e1 + s e2: v^2 = c11 + s (c12 + c21) + s^2 c22, componentwise.
    let mut g = UniPoly::zero();
    for (_, c) in &squares {
        for k in 0..2 {
            let q = UniPoly::new(vec![c(0, 0, k)?, &c(0, 1, k)? + &c(1, 0, k)?, c(1, 1, k)?]);
            g = g.gcd(&q);
        }
    }
    Ok(g.degree() != Some(0))
}
