use super::gcd::{integer_normalizer, poly_gcd};
use super::point::ParamPoint;
use super::poly::ParamPoly;
use super::quad::QField;
use super::rat::Rat;
use super::{Expr, Field, Var};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Reduced quotient of parameter polynomials.
///
/// Canonical form: `gcd(num, den) = 1`; `den` has integer coefficients with
/// content one and a positive leading coefficient (lex n > p > mu > c1).
/// Zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ParamPoly,
    den: ParamPoly,
}

impl RatFunc {
    /// Reduce `num/den` to lowest terms.
    pub fn make(num: ParamPoly, den: ParamPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(RatFunc { num: num.scale(&c.recip()), den: ParamPoly::one() });
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let k = integer_normalizer(&den);
        Ok(RatFunc { num: num.scale(&k), den: den.scale(&k) })
    }

    pub fn from_poly(p: ParamPoly) -> RatFunc {
        RatFunc { num: p, den: ParamPoly::one() }
    }

    pub fn var(v: Var) -> RatFunc {
        Self::from_poly(ParamPoly::var(v))
    }

    pub fn int(v: i64) -> RatFunc {
        Self::from_poly(ParamPoly::int(v))
    }

    pub fn constant(c: Rat) -> RatFunc {
        Self::from_poly(ParamPoly::constant(c))
    }

    /// Parse an expression such as `2*n^2/(p-1)`.
    pub fn parse(s: &str) -> Result<RatFunc> {
        Expr::parse(s)?.to_ratfunc()
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::make(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Exact value at a parameter point. Fails on a pole, naming the
    /// denominator factor that vanishes there.
    pub fn eval(&self, x: &ParamPoint) -> Result<QField> {
        if x.c1.is_none() && self.contains(Var::C1) {
            return Err(Error::InvalidPoint("c1 is required here".into()));
        }
        self.eval_at(&x.values())
    }

    /// Evaluate with explicit values for all four variables.
    pub fn eval_at(&self, vals: &[QField; 4]) -> Result<QField> {
        let d = self.den.eval(vals);
        if d.is_zero() {
            return Err(Error::Pole(describe_pole(&self.den, vals)));
        }
        Ok(self.num.eval(vals) / d)
    }

    /// Evaluate into any field, e.g. `Quad<RatFunc>` to substitute an
    /// irrational value for one variable while keeping the others symbolic.
    pub fn eval_in<T: Field>(&self, vals: &[T; 4]) -> Option<T> {
        self.num.eval(vals).checked_div(&self.den.eval(vals))
    }

    /// Substitute a variable by a rational function.
    pub fn substitute(&self, v: Var, by: &RatFunc) -> Result<RatFunc> {
        let vals: [RatFunc; 4] = Var::ALL.map(|w| if w == v { by.clone() } else { RatFunc::var(w) });
        let num = self.num.eval(&vals);
        let den = self.den.eval(&vals);
        num.checked_div(&den).ok_or(Error::ZeroDenominator)
    }

    /// Partial derivative with respect to a parameter.
    pub fn partial(&self, v: Var) -> RatFunc {
        let num = &(&self.num.partial(v) * &self.den) - &(&self.num * &self.den.partial(v));
        let den = &self.den * &self.den;
        RatFunc::make(num, den).expect("nonzero denominator")
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one_poly() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }
}

impl ParamPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

/// Name the vanishing factor of a denominator at a point: try the factors
/// that occur in practice, then fall back to the whole denominator.
fn describe_pole(den: &ParamPoly, vals: &[QField; 4]) -> String {
    const KNOWN: [&str; 8] = ["p - 1", "n", "p", "9*p - 4", "4*n + 9*p - 4", "4*p^2 - 9*p + 4", "3*p - 5", "p - 2"];
    for f in KNOWN {
        let fp = Expr::parse(f).unwrap().to_ratfunc().unwrap().num;
        if den.div_exact(&fp).is_some() && fp.eval(vals).is_zero() {
            return pole_message(&fp);
        }
    }
    format!("pole: denominator {den} vanishes")
}

fn pole_message(f: &ParamPoly) -> String {
    let vars = f.vars();
    if vars.len() == 1 && f.degree_in(vars[0]) == 1 {
        let c = f.coeffs_in(vars[0]);
        let root = -(c[0].as_constant().unwrap()) / c[1].as_constant().unwrap();
        format!("{} = {} pole", vars[0].name(), super::rat_to_string(&root))
    } else {
        format!("pole: factor ({f}) vanishes")
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: ParamPoly::zero(), den: ParamPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: ParamPoly::one(), den: ParamPoly::one() }
    }
}

impl Field for RatFunc {
    fn from_rat(r: &Rat) -> Self {
        RatFunc::constant(r.clone())
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        RatFunc::make(&self.num * &rhs.den, &self.den * &rhs.num).ok()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::make(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::make(num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one_poly() && rhs.den.is_one_poly() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::make(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<ParamPoly> for RatFunc {
    fn from(p: ParamPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &ParamPoly| {
            let s = p.to_string();
            if p.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn poly(s: &str) -> ParamPoly {
        rf(s).num().clone()
    }

    #[test]
    fn common_factor_cancels() {
        let f = RatFunc::make(poly("2*n^2*p - 2*n^2"), poly("p - 1")).unwrap();
        assert_eq!(f, rf("2*n^2"));
        assert!(f.is_polynomial());
    }

    #[test]
    fn eta1_is_irreducible() {
        let f = RatFunc::make(poly("2*n^2"), poly("p - 1")).unwrap();
        assert_eq!(f.num(), &poly("2*n^2"));
        assert_eq!(f.den(), &poly("p - 1"));
    }

    #[test]
    fn square_over_root() {
        let f = RatFunc::make(poly("p^2 - 2*p + 1"), poly("p - 1")).unwrap();
        assert_eq!(f, rf("p - 1"));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::make(poly("p"), ParamPoly::zero()), Err(Error::ZeroDenominator));
        assert_eq!(Error::ZeroDenominator.to_string(), "division by zero polynomial");
    }

    #[test]
    fn denominator_normalized_positive() {
        let f = RatFunc::make(poly("1"), poly("-2*p + 2")).unwrap();
        assert_eq!(f.den(), &poly("p - 1"));
        assert_eq!(f.num(), &poly("-1/2"));
    }

    #[test]
    fn evaluation_examples() {
        let x = ParamPoint::new(2, QField::rat(11, 5), QField::int(2)).unwrap();
        // Brute-force oracle: plain rational arithmetic.
        let n = rat(2, 1);
        let p = rat(11, 5);
        let mu = rat(2, 1);
        let one = rat(1, 1);
        let theta1 = -(&n * rat(2, 1)) / ((&p - &one) * (&p - &one));
        let theta4 = (&n * &n * &p - &n * &n - &n * &mu) / ((&p - &one) * (&p - &one));
        assert_eq!(theta1, rat(-25, 9));
        assert_eq!(theta4, rat(5, 9));
        assert_eq!(rf("-2*n/(p-1)^2").eval(&x).unwrap(), QField::from(theta1));
        assert_eq!(rf("(n^2*p - n^2 - n*mu)/(p-1)^2").eval(&x).unwrap(), QField::from(theta4));
    }

    #[test]
    fn pole_names_vanishing_factor() {
        let vals = [QField::int(2), QField::int(1), QField::int(0), QField::zero()];
        let err = rf("2*n^2/(p-1)").eval_at(&vals).unwrap_err();
        assert_eq!(err, Error::Pole("p = 1 pole".into()));
        let vals = [QField::int(2), QField::rat(4, 9), QField::int(0), QField::zero()];
        let err = rf("1/(n*(9*p-4))").eval_at(&vals).unwrap_err();
        assert_eq!(err, Error::Pole("p = 4/9 pole".into()));
    }

    #[test]
    fn substitution_and_derivative() {
        let f = rf("mu - n*(1-p)");
        let g = f.substitute(Var::Mu, &rf("2 + n*(p-1)")).unwrap();
        assert_eq!(g, rf("2*n*p - 2*n + 2"));
        assert_eq!(rf("mu^2/(p-1)").partial(Var::Mu), rf("2*mu/(p-1)"));
        assert!(rf("n").partial(Var::P).is_zero());
    }
}
