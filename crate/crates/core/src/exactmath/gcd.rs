//! Multivariate gcd over the Gaussian rationals.
//!
//! Recursive content / primitive-part scheme with a primitive pseudo-remainder
//! sequence in the main variable. A cheap specialisation test proves most
//! gcds trivial before the recursion is attempted.

use std::collections::BTreeMap;

use super::{Monomial, MultiPoly, Scalar, UniPoly, Var};

/// Monic gcd (leading coefficient one in graded-lex order).
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    // Pull out the common monomial factor first; it is free.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mut common = [0u16; super::NVARS];
    for (k, c) in common.iter_mut().enumerate() {
        *c = ma.0[k].min(mb.0[k]);
    }
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    let mono = MultiPoly::monomial(Monomial(common), Scalar::one());
    if a.is_constant() || b.is_constant() || provably_coprime(&a, &b) {
        return mono;
    }
    let vars: Vec<Var> = Var::ALL
        .iter()
        .copied()
        .filter(|&v| a.contains(v) || b.contains(v))
        .collect();
    (&mono * &gcd_rec(&a, &b, &vars)).monic()
}

/// Gcd of a list; zero for an empty or all-zero list.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a MultiPoly>>(polys: I) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for p in polys {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = gcd(a, b);
    (a * &b.exact_div(&g).expect("gcd divides")).monic()
}

/// Specialise all but one variable; a constant univariate gcd for every
/// shared variable proves the multivariate gcd is constant. The point is
/// chosen so the leading coefficient in that variable survives, which makes
/// the degree bound valid.
fn provably_coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    for v in Var::ALL {
        if !(a.contains(v) && b.contains(v)) {
            continue;
        }
        let lead = a.coeffs_in(v).pop().unwrap();
        let mut ok = false;
        for attempt in 0..4 {
            let point: BTreeMap<Var, Scalar> = Var::ALL
                .iter()
                .enumerate()
                .filter(|&(_, &w)| w != v)
                .map(|(k, &w)| (w, Scalar::from_int(SAMPLE_PRIMES[(k + 3 * attempt) % SAMPLE_PRIMES.len()])))
                .collect();
            if lead.eval(&point).map(|c| c.is_zero()).unwrap_or(true) {
                continue;
            }
            let ua = UniPoly::from_multi(&a.partial_eval(&point), v).unwrap();
            let ub = UniPoly::from_multi(&b.partial_eval(&point), v).unwrap();
            ok = ua.gcd(&ub).degree() == Some(0);
            break;
        }
        if !ok {
            return false;
        }
    }
    true
}

const SAMPLE_PRIMES: [i64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn gcd_rec(a: &MultiPoly, b: &MultiPoly, vars: &[Var]) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let Some((&v, rest)) = vars.split_last() else {
        return MultiPoly::one();
    };
    if !a.contains(v) && !b.contains(v) {
        return gcd_rec(a, b, rest);
    }
    let ca = content(a, v, rest);
    let cb = content(b, v, rest);
    let c = gcd_rec(&ca, &cb, rest);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v, rest);
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content(p: &MultiPoly, v: Var, rest: &[Var]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c, rest);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn primitive_part(p: &MultiPoly, v: Var, rest: &[Var]) -> MultiPoly {
    let c = content(p, v, rest);
    p.exact_div(&c).expect("content divides").monic()
}

/// Gcd of two polynomials primitive in `v`, via primitive remainders.
fn primitive_prs(a: MultiPoly, b: MultiPoly, v: Var, rest: &[Var]) -> MultiPoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    while !g.is_zero() {
        if g.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        let r = pseudo_rem(&f, &g, v);
        f = g;
        g = if r.is_zero() { r } else { primitive_part(&r, v, rest) };
    }
    primitive_part(&f, v, rest)
}

/// `lc(g)^k f mod g` in the variable `v`.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, v: Var) -> MultiPoly {
    let dg = g.degree_in(v);
    let gc = g.coeffs_in(v);
    let lc = gc.last().unwrap().clone();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v).pop().unwrap();
        let mut shift = Monomial::one();
        shift.0[v.index()] = dr - dg;
        r = &(&r * &lc) - &(g * &lr).mul_monomial(&shift, &Scalar::one());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn recovers_common_factor() {
        let g = p("alpha*t - beta + 1");
        let a = &g * &p("t^2 + alpha");
        let b = &g * &p("beta*t - 3");
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn coprime_gives_one() {
        assert_eq!(gcd(&p("alpha + t"), &p("alpha - t")), MultiPoly::one());
    }

    #[test]
    fn monomial_factors() {
        assert_eq!(gcd(&p("t^3*alpha"), &p("t^2 + t^2*beta")), p("t^2"));
    }

    #[test]
    fn factor_with_gaussian_coefficients() {
        let g = p("t - i*alpha");
        let a = &g * &g;
        let b = &g * &p("t + i*alpha");
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn content_only_common_part() {
        // Common factor does not involve the main variable.
        let a = &p("alpha + 1") * &p("t^2 + 1");
        let b = &p("alpha + 1") * &p("t + beta");
        assert_eq!(gcd(&a, &b), p("alpha + 1"));
    }
}
