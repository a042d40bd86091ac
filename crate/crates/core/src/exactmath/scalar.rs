use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MathError;

/// An element of the Gaussian rationals `a + b i` with `a, b` rational.
///
/// Both components are kept in lowest terms with a positive denominator,
/// so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = a^2 + b^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Checked division; the operator form panics on a zero divisor.
    pub fn checked_div(&self, other: &Scalar) -> Result<Self, MathError> {
        Ok(self * &other.inv()?)
    }

    /// Least common multiple of the two component denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        num_integer_lcm(self.re.denom(), self.im.denom())
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, MathError> {
    let bad = || MathError::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = MathError;

    /// Accepts `a/b`, `c/d*i`, `i`, `-i` and `a/b+c/d*i` (or `-`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(MathError::Parse("empty scalar".into()));
        }
        let imag_part = |p: &str| -> Result<BigRational, MathError> {
            let body = p.strip_suffix('i').unwrap_or(p);
            let body = body.strip_suffix('*').unwrap_or(body);
            match body {
                "" | "+" => Ok(BigRational::one()),
                "-" => Ok(-BigRational::one()),
                b => parse_rational(b.strip_prefix('+').unwrap_or(b)),
            }
        };
        if !s.ends_with('i') {
            return Ok(Scalar::new(parse_rational(&s)?, BigRational::zero()));
        }
        // Split at the last sign that is not the leading one.
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => Ok(Scalar::new(parse_rational(&s[..k])?, imag_part(&s[k..])?)),
            None => Ok(Scalar::new(BigRational::zero(), imag_part(&s)?)),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar::new(&a.re + &b.re, &a.im + &b.im)
}

fn sub_ref(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar::new(&a.re - &b.re, &a.im - &b.im)
}

fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::new(&a.re * &b.re, BigRational::zero());
    }
    Scalar::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
}

fn div_ref(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_div(b).expect("division of a Gaussian rational by zero")
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["0", "3", "-7/2", "1/2*i", "-i", "i", "3/4+1/2*i", "-1-5/3*i"] {
            let v = s(text);
            assert_eq!(s(&v.to_string()), v, "{text}");
        }
        assert_eq!(s("i").to_string(), "1*i");
        assert_eq!(s("2/4-2/4*i").to_string(), "1/2-1/2*i");
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_gaussian() {
        // (1+2i)^-1 = (1-2i)/5
        assert_eq!(s("1+2*i").inv().unwrap(), s("1/5-2/5*i"));
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }
}
