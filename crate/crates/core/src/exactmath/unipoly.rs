use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{MathError, MultiPoly, Scalar, Var};

/// Dense univariate polynomial over the Gaussian rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

/// Largest norm whose divisors are enumerated when hunting Gaussian-integer
/// root candidates. Beyond this the search gives up rather than stall.
const MAX_NORM_FOR_DIVISORS: u64 = 1_000_000_000_000;

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Convert a polynomial that involves only `v`.
    pub fn from_multi(p: &MultiPoly, v: Var) -> Result<Self, MathError> {
        let coeffs = p
            .coeffs_in(v)
            .into_iter()
            .map(|c| {
                c.constant_value()
                    .ok_or_else(|| MathError::MissingVariable(c.variables()[0].name().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_multi(&self, v: Var) -> MultiPoly {
        let coeffs: Vec<MultiPoly> = self.coeffs.iter().cloned().map(MultiPoly::constant).collect();
        MultiPoly::from_coeffs_in(v, &coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = l.inv().expect("nonzero lead");
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &inv;
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&q * c);
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// All roots lying in the Gaussian rationals, without multiplicity.
    ///
    /// Uses the rational-root test over the Gaussian integers: after clearing
    /// denominators every root is `p/q` with `p | a0` and `q | an`.
    pub fn gaussian_rational_roots(&self) -> Result<Vec<Scalar>, MathError> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(roots);
        }
        let mut f = self.squarefree_part();
        if f.coeffs[0].is_zero() {
            roots.push(Scalar::zero());
            f = UniPoly::new(f.coeffs[1..].to_vec());
        }
        match f.degree() {
            None | Some(0) => return Ok(roots),
            Some(1) => {
                roots.push(-(&f.coeffs[0] / &f.coeffs[1]));
                return Ok(roots);
            }
            _ => {}
        }
        let ints = f.gaussian_integer_coeffs();
        let a0 = &ints[0];
        let an = ints.last().unwrap();
        let ps = gaussian_divisors(a0)?;
        let qs = gaussian_divisors(an)?;
        let mut seen = std::collections::HashSet::new();
        for q in &qs {
            let qs_ = to_scalar(q);
            for p in &ps {
                let cand = &to_scalar(p) / &qs_;
                if seen.insert(cand.clone()) && f.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
        Ok(roots)
    }

    /// Scale by the lcm of all denominators; components become integers.
    fn gaussian_integer_coeffs(&self) -> Vec<(BigInt, BigInt)> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        let lr = BigRational::from_integer(l);
        self.coeffs
            .iter()
            .map(|c| {
                let re = c.re() * &lr;
                let im = c.im() * &lr;
                (re.to_integer(), im.to_integer())
            })
            .collect()
    }
}

fn to_scalar(z: &(BigInt, BigInt)) -> Scalar {
    Scalar::new(
        BigRational::from_integer(z.0.clone()),
        BigRational::from_integer(z.1.clone()),
    )
}

/// Every Gaussian integer dividing `z`, all four associates included.
fn gaussian_divisors(z: &(BigInt, BigInt)) -> Result<Vec<(BigInt, BigInt)>, MathError> {
    let norm: BigInt = &z.0 * &z.0 + &z.1 * &z.1;
    let n: u64 = norm
        .clone()
        .try_into()
        .ok()
        .filter(|&n: &u64| n <= MAX_NORM_FOR_DIVISORS)
        .ok_or_else(|| MathError::TooLarge(format!("norm {norm}")))?;
    let mut out = Vec::new();
    let mut k = 1u64;
    let mut norm_divisors = Vec::new();
    while k * k <= n {
        if n.is_multiple_of(k) {
            norm_divisors.push(k);
            if k != n / k {
                norm_divisors.push(n / k);
            }
        }
        k += 1;
    }
    for d in norm_divisors {
        let mut x = 0u64;
        while x * x <= d {
            let rest = d - x * x;
            let y = rest.sqrt();
            if y * y == rest {
                for (sx, sy) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                    let cand = (BigInt::from(x as i64 * sx), BigInt::from(y as i64 * sy));
                    if divides(&cand, z) && !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
            x += 1;
        }
    }
    Ok(out)
}

fn divides(d: &(BigInt, BigInt), z: &(BigInt, BigInt)) -> bool {
    // z / d = z * conj(d) / N(d)
    let nd: BigInt = &d.0 * &d.0 + &d.1 * &d.1;
    if nd.is_zero() {
        return false;
    }
    let re = &z.0 * &d.0 + &z.1 * &d.1;
    let im = &z.1 * &d.0 - &z.0 * &d.1;
    (re % &nd).is_zero() && (im % &nd).is_zero() && !nd.is_negative()
}
