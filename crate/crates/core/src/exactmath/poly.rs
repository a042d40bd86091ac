use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{MathError, Scalar, Var, NVARS};

/// Exponent vector over the fixed variable set, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    /// `self / other` if every exponent allows it.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(Monomial(e))
    }

    fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(Monomial::var(v), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Lowest power of `v` over all terms.
    pub fn valuation_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|&v| self.contains(v)).collect()
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scale so that the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => MultiPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Substitute a value for one variable.
    pub fn eval_var(&self, v: Var, value: &Scalar) -> MultiPoly {
        if !self.contains(v) {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        let mut powers: Vec<Scalar> = vec![Scalar::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exp(v, 0), c * &powers[e]);
        }
        out
    }

    /// Substitute values for any subset of the variables.
    pub fn partial_eval(&self, point: &BTreeMap<Var, Scalar>) -> MultiPoly {
        let mut p = self.clone();
        for (v, x) in point {
            p = p.eval_var(*v, x);
        }
        p
    }

    /// Full evaluation; every variable that occurs must be assigned.
    pub fn eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<Scalar, MathError> {
        let p = self.partial_eval(point);
        match p.constant_value() {
            Some(c) => Ok(c),
            None => Err(MathError::MissingVariable(p.variables()[0].name().to_string())),
        }
    }

    /// Substitute a polynomial for a variable.
    pub fn compose(&self, v: Var, q: &MultiPoly) -> MultiPoly {
        if !self.contains(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        // Horner in v.
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// View as a univariate polynomial in `v`; index is the power of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut mm = *m;
                mm.0[v.index()] += e as u16;
                out.add_term(mm, a.clone());
            }
        }
        out
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = d.leading_term()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Divide out the largest monomial that divides every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut e = [u16::MAX; NVARS];
        for m in self.terms.keys() {
            for (a, b) in e.iter_mut().zip(m.0.iter()) {
                *a = (*a).min(*b);
            }
        }
        if self.is_zero() {
            Monomial::one()
        } else {
            Monomial(e)
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial divides"), c.clone()))
                .collect(),
        }
    }

    /// Lowest common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(&c.denominator_lcm()))
    }
}

fn add_polys(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (big, small) = if a.terms.len() >= b.terms.len() { (a, b) } else { (b, a) };
    let mut out = big.clone();
    for (m, c) in &small.terms {
        out.add_term(*m, c.clone());
    }
    out
}

fn sub_polys(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(*m, -c);
    }
    out
}

fn mul_polys(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let m = ma.mul(mb);
            let prod = ca * cb;
            match acc.get_mut(&m) {
                Some(x) => *x = &*x + &prod,
                None => {
                    acc.insert(m, prod);
                }
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    MultiPoly { terms: acc }
}

macro_rules! forward_poly_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                $f(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                $f(&self, &rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                $f(&self, rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                $f(self, &rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add, add_polys);
forward_poly_binop!(Sub, sub, sub_polys);
forward_poly_binop!(Mul, mul, mul_polys);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Scalar> for MultiPoly {
    fn from(c: Scalar) -> Self {
        MultiPoly::constant(c)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Highest term first, e.g. `alpha^2*t - 1/2*beta + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = if c.is_real() && c.re() < &num_rational::BigRational::from_integer(0.into()) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let mono = fmt_monomial(m);
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> MultiPoly {
        MultiPoly::var(v)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(Scalar::from_int(n))
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        let a = Monomial::var(Var::Nu);
        let b = Monomial::var(Var::Alpha).mul(&Monomial::var(Var::Alpha));
        assert!(a < b);
        assert!(Monomial::var(Var::Beta) < Monomial::var(Var::Alpha));
    }

    #[test]
    fn expand_square() {
        let p = &x(Var::Alpha) + &c(1);
        let sq = &p * &p;
        assert_eq!(sq.to_string(), "alpha^2 + 2*alpha + 1");
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let a = &x(Var::Alpha) - &x(Var::T);
        let b = &x(Var::Alpha) + &x(Var::Beta);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!((&prod + &c(1)).exact_div(&a).is_none());
    }

    #[test]
    fn compose_and_eval() {
        // p(t) = t^2 + 1, t -> alpha - 1
        let p = &(&x(Var::T) * &x(Var::T)) + &c(1);
        let q = p.compose(Var::T, &(&x(Var::Alpha) - &c(1)));
        assert_eq!(q.to_string(), "alpha^2 - 2*alpha + 2");
        let pt = BTreeMap::from([(Var::Alpha, Scalar::from_int(3))]);
        assert_eq!(q.eval(&pt).unwrap(), Scalar::from_int(5));
        assert!(q.eval(&BTreeMap::new()).is_err());
    }
}
