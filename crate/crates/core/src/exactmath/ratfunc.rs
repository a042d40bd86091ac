use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gcd::{gcd, lcm};
use super::{MathError, MultiPoly, Scalar, Var};

/// A rational function `num / den` kept in canonical form: `gcd(num, den)`
/// is a unit and `den` is monic. Structural equality is therefore equality
/// of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, MathError> {
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            return RatFunc { num: num.scale(&inv), den: MultiPoly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc { num: MultiPoly::constant(c), den: MultiPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::constant(Scalar::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|&v| self.contains(v)).collect()
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc, MathError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, MathError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, MathError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Substitute values for some variables.
    pub fn partial_eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<RatFunc, MathError> {
        let den = self.den.partial_eval(point);
        if den.is_zero() {
            return Err(MathError::DenominatorVanishes);
        }
        Ok(RatFunc::reduce(self.num.partial_eval(point), den))
    }

    /// Full evaluation at a point assigning every occurring variable.
    pub fn eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<Scalar, MathError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(MathError::DenominatorVanishes);
        }
        Ok(&self.num.eval(point)? / &d)
    }

    /// Simultaneously substitute rational functions for variables.
    pub fn substitute(&self, map: &BTreeMap<Var, RatFunc>) -> Result<RatFunc, MathError> {
        if !map.keys().any(|&v| self.contains(v)) {
            return Ok(self.clone());
        }
        let (a, ad) = substitute_poly(&self.num, map);
        let (b, bd) = substitute_poly(&self.den, map);
        if b.is_zero() {
            return Err(MathError::DenominatorVanishes);
        }
        RatFunc::new(&a * &bd, &ad * &b)
    }

    /// Limit as `v -> 0`; fails when the reduced denominator is divisible by `v`.
    pub fn limit_at_zero(&self, v: Var) -> Result<RatFunc, MathError> {
        let d0 = self.den.eval_var(v, &Scalar::zero());
        if d0.is_zero() {
            return Err(MathError::NoFiniteLimit);
        }
        RatFunc::new(self.num.eval_var(v, &Scalar::zero()), d0)
    }

    /// Write every function over one common (lcm) denominator.
    /// Returns the numerators and the denominator.
    pub fn common_denominator(fs: &[&RatFunc]) -> (Vec<MultiPoly>, MultiPoly) {
        let mut d = MultiPoly::one();
        for f in fs {
            if !f.den.is_constant() && d.exact_div(&f.den).is_none() {
                d = lcm(&d, &f.den);
            }
        }
        let nums = fs
            .iter()
            .map(|f| {
                if f.den.is_constant() {
                    (&f.num * &d).scale(&f.den.leading_coeff().inv().unwrap())
                } else {
                    &f.num * &d.exact_div(&f.den).expect("lcm is a multiple")
                }
            })
            .collect();
        (nums, d)
    }
}

/// Substitute into a polynomial. Returns `(numerator, denominator)` with the
/// denominator a product of powers of the substituted denominators.
fn substitute_poly(p: &MultiPoly, map: &BTreeMap<Var, RatFunc>) -> (MultiPoly, MultiPoly) {
    let mapped: Vec<(Var, &RatFunc, u16)> = map
        .iter()
        .filter(|(v, _)| p.contains(**v))
        .map(|(v, f)| (*v, f, p.degree_in(*v)))
        .collect();
    let mut num_pows: Vec<Vec<MultiPoly>> = Vec::new();
    let mut den_pows: Vec<Vec<MultiPoly>> = Vec::new();
    for (_, f, e) in &mapped {
        let mut np = vec![MultiPoly::one()];
        let mut dp = vec![MultiPoly::one()];
        for k in 1..=*e as usize {
            np.push(&np[k - 1] * &f.num);
            dp.push(&dp[k - 1] * &f.den);
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut term = MultiPoly::one();
        for (k, (v, _, e)) in mapped.iter().enumerate() {
            let ev = m.exp(*v) as usize;
            rest.0[v.index()] = 0;
            term = &term * &num_pows[k][ev];
            let dexp = *e as usize - ev;
            if !den_pows[k][dexp].is_constant() || !den_pows[k][dexp].leading_coeff().is_one() {
                term = &term * &den_pows[k][dexp];
            }
        }
        out = &out + &term.mul_monomial(&rest, c);
    }
    let mut den = MultiPoly::one();
    for (k, (_, _, e)) in mapped.iter().enumerate() {
        den = &den * &den_pows[k][*e as usize];
    }
    (out, den)
}

fn add_rf(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return RatFunc::reduce(&a.num + &b.num, a.den.clone());
    }
    let g = gcd(&a.den, &b.den);
    let bd_g = b.den.exact_div(&g).unwrap();
    let ad_g = a.den.exact_div(&g).unwrap();
    RatFunc::reduce(&(&a.num * &bd_g) + &(&b.num * &ad_g), &a.den * &bd_g)
}

fn sub_rf(a: &RatFunc, b: &RatFunc) -> RatFunc {
    add_rf(a, &-b)
}

fn mul_rf(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() || b.is_zero() {
        return RatFunc::zero();
    }
    if a.den.is_constant() && b.den.is_constant() {
        return RatFunc { num: &a.num * &b.num, den: MultiPoly::one() };
    }
    // Cross-cancel; inputs are reduced so the result is too, up to normalisation.
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let n = &a.num.exact_div(&g1).unwrap() * &b.num.exact_div(&g2).unwrap();
    let d = &a.den.exact_div(&g2).unwrap() * &b.den.exact_div(&g1).unwrap();
    let lc = d.leading_coeff();
    if lc.is_one() {
        RatFunc { num: n, den: d }
    } else {
        RatFunc::reduce(n, d)
    }
}

fn div_rf(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.checked_div(b).expect("division of a rational function by zero")
}

macro_rules! forward_rf_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $f(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $f(&self, &rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $f(&self, rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $f(self, &rhs)
            }
        }
    };
}

forward_rf_binop!(Add, add, add_rf);
forward_rf_binop!(Sub, sub, sub_rf);
forward_rf_binop!(Mul, mul, mul_rf);
forward_rf_binop!(Div, div, div_rf);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Scalar> for RatFunc {
    fn from(c: Scalar) -> Self {
        RatFunc::constant(c)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MultiPoly| {
            if p.num_terms() > 1 || !p.leading_coeff().is_real() {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        // A monic denominator is a bare power only with a single variable.
        let den = if self.den.num_terms() == 1 && self.den.variables().len() == 1 {
            self.den.to_string()
        } else {
            format!("({})", self.den)
        };
        write!(f, "{}/{den}", wrap(&self.num))
    }
}

impl std::str::FromStr for RatFunc {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_ratfunc(s)
    }
}
