use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngExt};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{BasisChange, TwoProductAlgebra, Variety};
use crate::catalog::{Catalog, Constraint};
use crate::error::{Error, Result};
use crate::exactmath::{MathError, RatFunc, Scalar};

/// One of the 16 structure constants of a 2-dimensional two-product
/// algebra: `c_ij^k` (first product) or `c'_ij^k` (second). Indices are
/// 0-based here and 1-based in text.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ConstantSymbol {
    pub primed: bool,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl ConstantSymbol {
    pub fn value<'a>(&self, a: &'a TwoProductAlgebra) -> &'a RatFunc {
        a.product(self.primed).get(self.i, self.j, self.k)
    }
}

impl fmt::Display for ConstantSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.primed { "'" } else { "" };
        write!(f, "c{p}{}{}^{}", self.i + 1, self.j + 1, self.k + 1)
    }
}

/// Polynomial with Gaussian-rational coefficients in the structure constants.
#[derive(Clone, PartialEq, Debug)]
pub struct RelPoly {
    terms: Vec<(Scalar, Vec<ConstantSymbol>)>,
}

impl RelPoly {
    pub fn terms(&self) -> &[(Scalar, Vec<ConstantSymbol>)] {
        &self.terms
    }

    pub fn eval(&self, a: &TwoProductAlgebra) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (c, syms) in &self.terms {
            let mut term = RatFunc::constant(c.clone());
            for s in syms {
                term = &term * s.value(a);
            }
            acc = &acc + &term;
        }
        acc
    }
}

fn parse_err(s: &str, why: &str) -> MathError {
    MathError::Parse(format!("{why} in relation `{s}`"))
}

fn parse_symbol(text: &str, whole: &str) -> std::result::Result<ConstantSymbol, MathError> {
    let rest = text.strip_prefix('c').ok_or_else(|| parse_err(whole, "expected a constant c_ij^k"))?;
    let (primed, rest) = match rest.strip_prefix('\'') {
        Some(r) => (true, r),
        None => (false, rest),
    };
    let b = rest.as_bytes();
    if b.len() != 4 || b[2] != b'^' {
        return Err(parse_err(whole, "expected cij^k"));
    }
    let digit = |x: u8| match x {
        b'1' => Ok(0),
        b'2' => Ok(1),
        _ => Err(parse_err(whole, "index out of range")),
    };
    Ok(ConstantSymbol { primed, i: digit(b[0])?, j: digit(b[1])?, k: digit(b[3])? })
}

fn parse_term(text: &str, sign: bool, whole: &str) -> std::result::Result<(Scalar, Vec<ConstantSymbol>), MathError> {
    let start = text.find('c').ok_or_else(|| parse_err(whole, "term without a constant"))?;
    let coeff = text[..start].trim().trim_end_matches('*').trim();
    let mut c = if coeff.is_empty() { Scalar::one() } else { coeff.parse()? };
    if sign {
        c = -c;
    }
    let syms = text[start..].split('*').map(|f| parse_symbol(f.trim(), whole)).collect::<std::result::Result<_, _>>()?;
    Ok((c, syms))
}

impl FromStr for RelPoly {
    type Err = MathError;

    /// Sums of monomials such as `2c'11^1 - c'12^2` or `c22^2*c'12^2`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut terms = Vec::new();
        let mut neg = false;
        let mut cur = String::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            // `^` is always followed by a digit, so + and - only separate terms.
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push(parse_term(&cur, neg, s)?);
                cur.clear();
                neg = ch == '-';
            } else if ch == '-' {
                neg = !neg;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(parse_err(s, "empty term"));
        }
        terms.push(parse_term(&cur, neg, s)?);
        Ok(RelPoly { terms })
    }
}

impl fmt::Display for RelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (c, syms)) in self.terms.iter().enumerate() {
            let negative = c.is_real() && c.re() < &num_rational::BigRational::from_integer(0.into());
            let mag = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                if mag.is_real() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            let body: Vec<String> = syms.iter().map(|s| s.to_string()).collect();
            f.write_str(&body.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for RelPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RelPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Polynomial conditions on structure constants that hold on the orbit
/// closure of `source` and fail on each of `targets`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RelationSet {
    pub name: String,
    pub variety: Variety,
    pub source: String,
    pub targets: Vec<String>,
    /// Each must vanish.
    pub equalities: Vec<RelPoly>,
    /// The set as it was published, kept verbatim.
    pub as_printed: String,
    /// How the equalities differ from `as_printed`, when they do.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correction: Option<String>,
}

/// Values of the equalities on `a` (zero where a relation holds).
pub fn residuals(r: &RelationSet, a: &TwoProductAlgebra) -> Vec<RatFunc> {
    r.equalities.iter().map(|e| e.eval(a)).collect()
}

/// True iff every equality vanishes on `a`, identically in its parameters.
pub fn check_relation(r: &RelationSet, a: &TwoProductAlgebra) -> bool {
    a.dim() == 2 && residuals(r, a).iter().all(RatFunc::is_zero)
}

/// Why a relation set separates a target from the source, if it does: a
/// residual that is a nonzero constant, or a constant multiple of a
/// quantity the target's constraints keep away from zero.
pub fn separation_certificate(r: &RelationSet, target: &TwoProductAlgebra, constraints: &[Constraint]) -> Option<String> {
    for (eq, res) in r.equalities.iter().zip(residuals(r, target)) {
        if res.is_zero() {
            continue;
        }
        if res.constant_value().is_some() {
            return Some(format!("{eq} = {res}"));
        }
        for c in constraints {
            if matches!(c, Constraint::TupleNotEqual { .. }) {
                continue;
            }
            for d in c.differences() {
                if let Ok(q) = res.checked_div(&d) {
                    if q.constant_value().is_some() {
                        return Some(format!("{eq} = {res}, nonzero since {c}"));
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NonDegenerationCheck {
    pub relation: String,
    pub source: String,
    pub target: String,
    pub holds_on_source: bool,
    /// Why the target violates the set for all admissible parameters.
    pub certificate: Option<String>,
    pub stability_samples: usize,
    /// Number of sampled triangular changes of basis that kept the set on the source.
    pub stability_passed: usize,
}

impl NonDegenerationCheck {
    pub fn is_pass(&self) -> bool {
        self.holds_on_source && self.certificate.is_some() && self.stability_passed == self.stability_samples
    }
}

fn small_scalar<R: Rng>(rng: &mut R, nonzero: bool) -> Scalar {
    loop {
        let re = Scalar::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=5));
        let im = if rng.random_bool(0.3) {
            Scalar::from_ratio(rng.random_range(-5..=5), rng.random_range(1..=3))
        } else {
            Scalar::zero()
        };
        let x = re + im * Scalar::i();
        if !(nonzero && x.is_zero()) {
            return x;
        }
    }
}

/// Random invertible upper-triangular matrix with Gaussian-rational entries.
pub fn random_triangular<R: Rng>(rng: &mut R, n: usize) -> BasisChange {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => RatFunc::zero(),
                    std::cmp::Ordering::Equal => RatFunc::constant(small_scalar(rng, true)),
                    std::cmp::Ordering::Greater => RatFunc::constant(small_scalar(rng, false)),
                })
                .collect()
        })
        .collect();
    BasisChange::new(rows).expect("square matrix")
}

/// Checks that `r` certifies `source -/-> target`: it holds identically on
/// the source family, fails on the target for every admissible parameter
/// value, and survives `samples` random triangular changes of basis of
/// the source.
pub fn verify_non_degeneration<R: Rng>(
    cat: &Catalog,
    source: &str,
    target: &str,
    r: &RelationSet,
    samples: usize,
    rng: &mut R,
) -> Result<NonDegenerationCheck> {
    let src = cat.family(source)?;
    let tgt = cat.family(target)?;
    if src.algebra.dim() != 2 {
        return Err(Error::UnsupportedDimension(src.algebra.dim()));
    }
    let holds = check_relation(r, &src.algebra);
    let certificate = separation_certificate(r, &tgt.algebra, &tgt.constraints);
    let mut passed = 0;
    for _ in 0..samples {
        let g = random_triangular(rng, 2);
        if check_relation(r, &src.algebra.transport(&g)?) {
            passed += 1;
        }
    }
    Ok(NonDegenerationCheck {
        relation: r.name.clone(),
        source: source.into(),
        target: target.into(),
        holds_on_source: holds,
        certificate,
        stability_samples: samples,
        stability_passed: passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_round_trip() {
        let p: RelPoly = "c22^2*c'12^2 + c12^2*c'21^1 - 2c'11^1 - 1/2c11^1".parse().unwrap();
        assert_eq!(p.to_string(), "c22^2*c'12^2 + c12^2*c'21^1 - 2c'11^1 - 1/2c11^1");
        assert_eq!(p.to_string().parse::<RelPoly>().unwrap(), p);
        assert_eq!(p.terms()[0].1[1], ConstantSymbol { primed: true, i: 0, j: 1, k: 1 });
    }

    #[test]
    fn out_of_range_index_rejected() {
        assert!("c'23^2".parse::<RelPoly>().is_err());
        assert!("c22^3".parse::<RelPoly>().is_err());
        assert!("x11^1".parse::<RelPoly>().is_err());
    }

    #[test]
    fn triangular_samples_are_invertible() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = random_triangular(&mut rng, 2);
            assert!(!g.det().is_zero());
            assert!(g.get(1, 0).is_zero());
        }
    }
}
