//! Exact arithmetic: rationals, the real quadratic field Q(sqrt 17),
//! multivariate polynomials in the parameters (n, p, mu, c1) and reduced
//! rational functions over them.

mod expr;
mod gcd;
mod point;
mod poly;
mod quad;
mod rat;
mod ratfunc;

pub use expr::Expr;
pub use gcd::{poly_gcd, primitive_integer};
pub use point::ParamPoint;
pub use poly::{poly_arith, Exps, ParamPoly, PolyOp};
pub use quad::{QField, Quad, Sign};
pub use rat::{parse_rat, rat, rat_to_string, Rat};
pub use ratfunc::RatFunc;

use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Neg, Sub};

/// The four parameter indeterminates. Index order doubles as the lex
/// priority used by polynomial division: n is the most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    N = 0,
    P = 1,
    Mu = 2,
    C1 = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::N, Var::P, Var::Mu, Var::C1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::P => "p",
            Var::Mu => "mu",
            Var::C1 => "c1",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::P => "p",
            Var::Mu => "\\mu",
            Var::C1 => "c_{1}",
        }
    }
}

/// Minimal field interface shared by `Rat`, `RatFunc` and `Quad<T>`, so that
/// polynomials can be evaluated into any of them.
pub trait Field: Clone + PartialEq + Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self> {
    fn from_rat(r: &Rat) -> Self;
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
}
