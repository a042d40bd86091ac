use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BasisChange, Product};
use crate::exactmath::RatFunc;

/// One nonzero row `e_i e_j = sum_k coeffs[k] e_k`, indices from one.
#[derive(Serialize, Deserialize)]
struct RowRepr {
    ij: [usize; 2],
    coeffs: Vec<RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct ProductRepr {
    dim: usize,
    rows: Vec<RowRepr>,
}

impl Serialize for Product {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let coeffs = self.basis_product(i, j);
                if coeffs.iter().any(|c| !c.is_zero()) {
                    rows.push(RowRepr { ij: [i + 1, j + 1], coeffs: coeffs.to_vec() });
                }
            }
        }
        ProductRepr { dim: n, rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Product {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ProductRepr::deserialize(d)?;
        let mut rows = Vec::new();
        for row in r.rows {
            let [i, j] = row.ij;
            if i == 0 || j == 0 {
                return Err(D::Error::custom("product indices start at 1"));
            }
            rows.push((i - 1, j - 1, row.coeffs));
        }
        Product::from_rows(r.dim, rows).map_err(D::Error::custom)
    }
}

impl Serialize for BasisChange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasisChange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        BasisChange::new(Vec::<Vec<RatFunc>>::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TwoProductRepr {
    first: Product,
    second: Product,
}

impl Serialize for super::TwoProductAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TwoProductRepr { first: self.first.clone(), second: self.second.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for super::TwoProductAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TwoProductRepr::deserialize(d)?;
        super::TwoProductAlgebra::new(r.first, r.second).map_err(D::Error::custom)
    }
}
