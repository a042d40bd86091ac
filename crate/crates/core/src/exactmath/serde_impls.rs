//! Data-file encodings: scalars as `a/b+c/d*i` strings, polynomials as
//! sparse term lists `[coefficient, {variable: exponent}]` (leading term
//! first), rational functions as `{num, den}` with `den` omitted when one.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, MultiPoly, RatFunc, Scalar, Var};

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

type Term = (Scalar, BTreeMap<Var, u16>);

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms()
            .rev()
            .map(|(m, c)| {
                let exps = Var::ALL.iter().filter(|&&v| m.exp(v) > 0).map(|&v| (v, m.exp(v))).collect();
                (c.clone(), exps)
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        let mut p = MultiPoly::zero();
        for (c, exps) in terms {
            let mut m = Monomial::one();
            for (v, e) in exps {
                m.0[v.index()] = e;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

fn is_one(p: &MultiPoly) -> bool {
    *p == MultiPoly::one()
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: MultiPoly,
    #[serde(default = "MultiPoly::one", skip_serializing_if = "is_one")]
    den: MultiPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num().clone(), den: self.den().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        RatFunc::new(r.num, r.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratfunc_json_round_trip() {
        let f: RatFunc = "(2*alpha + t)*beta/(2*beta + t) - i/3".parse().unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: RatFunc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn constant_encoding_is_compact() {
        let f = RatFunc::from_int(3);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"num":[["3",{}]]}"#);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(serde_json::from_str::<RatFunc>(r#"{"num":[["1",{}]],"den":[]}"#).is_err());
    }
}
