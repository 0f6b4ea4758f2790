//! Multivariate GCD over Z by the recursive subresultant scheme.
//!
//! A polynomial is viewed as univariate in its most significant variable
//! (order c1 < mu < p < n) with coefficients in the remaining variables;
//! contents are handled recursively and primitive parts go through a
//! fraction-free subresultant remainder sequence.

use super::poly::ParamPoly;
use super::rat::Rat;
use super::Var;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Scale `p` by a rational so that it has integer coefficients with content
/// one and a positive leading coefficient. Zero maps to zero.
pub fn primitive_integer(p: &ParamPoly) -> ParamPoly {
    p.scale(&integer_normalizer(p))
}

/// The rational factor applied by [`primitive_integer`].
pub(crate) fn integer_normalizer(p: &ParamPoly) -> Rat {
    if p.is_zero() {
        return Rat::one();
    }
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        let v = c.numer() * (&lcm / c.denom());
        g = g.gcd(&v);
    }
    let mut f = Rat::new(lcm, g);
    if p.leading_is_negative() {
        f = -f;
    }
    f
}

fn main_var(a: &ParamPoly, b: &ParamPoly) -> Option<Var> {
    Var::ALL.into_iter().find(|v| a.contains(*v) || b.contains(*v))
}

/// GCD of two polynomials, normalized by [`primitive_integer`]. The GCD of
/// two constants (nonzero) is one; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return primitive_integer(b);
    }
    if b.is_zero() {
        return primitive_integer(a);
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one();
    }
    if a == b {
        return primitive_integer(a);
    }
    gcd_rec(&primitive_integer(a), &primitive_integer(b))
}

fn gcd_rec(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return primitive_integer(b);
    }
    if b.is_zero() {
        return primitive_integer(a);
    }
    let Some(v) = main_var(a, b) else {
        return ParamPoly::one();
    };
    if !a.contains(v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !b.contains(v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = subresultant(&pa, &pb, v);
    let g = primitive_part_in(&g, v);
    let c = gcd_rec(&ca, &cb);
    primitive_integer(&(&c * &g))
}

/// GCD of the coefficients of `p` viewed as univariate in `v`.
fn content_in(p: &ParamPoly, v: Var) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return ParamPoly::one();
        }
    }
    g
}

fn primitive_part_in(p: &ParamPoly, v: Var) -> ParamPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    primitive_integer(&p.div_exact(&c).expect("content divides"))
}

fn lc_in(p: &ParamPoly, v: Var) -> ParamPoly {
    p.coeffs_in(v).pop().unwrap_or_default()
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn prem(a: &ParamPoly, b: &ParamPoly, v: Var) -> ParamPoly {
    let db = b.degree_in(v);
    let lb = lc_in(b, v);
    let da = a.degree_in(v);
    if da < db {
        return a.clone();
    }
    let mut e = (da - db + 1) as i32;
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let mut shift = [0u16; 4];
        shift[v.index()] = dr - db;
        let t = lc_in(&r, v).mul_monomial(&shift, &Rat::one());
        r = &(&lb * &r) - &(&t * b);
        e -= 1;
    }
    if e > 0 {
        r = &lb.pow(e as u32) * &r;
    }
    r
}

/// Subresultant PRS; returns the last nonzero remainder (not normalized).
fn subresultant(a: &ParamPoly, b: &ParamPoly, v: Var) -> ParamPoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let mut gg = ParamPoly::one();
    let mut h = ParamPoly::one();
    loop {
        let delta = f.degree_in(v) - g.degree_in(v);
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return g;
        }
        if r.degree_in(v) == 0 {
            return ParamPoly::one();
        }
        let divisor = &gg * &h.pow(delta as u32);
        let next = r.div_exact(&divisor).expect("subresultant division is exact");
        f = g;
        g = next;
        gg = lc_in(&f, v);
        // h <- gg^delta / h^(delta-1)
        h = if delta == 0 {
            h
        } else {
            let num = gg.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            num.div_exact(&den).expect("subresultant h update is exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Expr;

    fn poly(s: &str) -> ParamPoly {
        Expr::parse(s).unwrap().to_ratfunc().unwrap().num().clone()
    }

    #[test]
    fn univariate_gcd() {
        let g = poly_gcd(&poly("p^2 - 2*p + 1"), &poly("p^2 - 1"));
        assert_eq!(g, poly("p - 1"));
    }

    #[test]
    fn multivariate_gcd() {
        let f = poly("(p-1)*(4*n + 9*p - 4)*(n + mu)");
        let g = poly("(p-1)^2*(n+mu)*(c1 - 3)");
        assert_eq!(poly_gcd(&f, &g), poly("(p-1)*(n+mu)"));
    }

    #[test]
    fn coprime_and_constants() {
        assert_eq!(poly_gcd(&poly("n"), &poly("p - 1")), ParamPoly::one());
        assert_eq!(poly_gcd(&poly("6"), &poly("4*p")), ParamPoly::one());
        assert_eq!(poly_gcd(&poly("6*p + 6"), &ParamPoly::zero()), poly("p + 1"));
    }

    #[test]
    fn normalization_is_integer_primitive() {
        let p = poly("-2/3*p + 4/9");
        assert_eq!(primitive_integer(&p), poly("3*p - 2"));
    }
}
