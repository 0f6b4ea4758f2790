//! Small expression language for parameter formulas:
//! integers, `n p mu c1`, `sqrt(17)`, `+ - * / ^` and parentheses.

use super::quad::Quad;
use super::rat::Rat;
use super::ratfunc::RatFunc;
use super::{Field, Var};
use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rat),
    Var(Var),
    Sqrt17,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(e)
    }

    pub fn has_sqrt17(&self) -> bool {
        match self {
            Expr::Sqrt17 => true,
            Expr::Num(_) | Expr::Var(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_sqrt17(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.has_sqrt17() || b.has_sqrt17(),
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        match self {
            Expr::Var(w) => *w == v,
            Expr::Num(_) | Expr::Sqrt17 => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses(v),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.uses(v) || b.uses(v),
        }
    }

    /// Evaluate in any field. `sqrt17` supplies the value of `sqrt(17)`;
    /// `None` makes its occurrence an error.
    pub fn eval_in<F: Field>(&self, vals: &[F; 4], sqrt17: Option<&F>) -> Result<F> {
        Ok(match self {
            Expr::Num(r) => F::from_rat(r),
            Expr::Var(v) => vals[v.index()].clone(),
            Expr::Sqrt17 => sqrt17.cloned().ok_or(Error::IrrationalExpression)?,
            Expr::Neg(a) => -a.eval_in(vals, sqrt17)?,
            Expr::Add(a, b) => a.eval_in(vals, sqrt17)? + b.eval_in(vals, sqrt17)?,
            Expr::Sub(a, b) => a.eval_in(vals, sqrt17)? - b.eval_in(vals, sqrt17)?,
            Expr::Mul(a, b) => a.eval_in(vals, sqrt17)? * b.eval_in(vals, sqrt17)?,
            Expr::Div(a, b) => {
                let d = b.eval_in(vals, sqrt17)?;
                a.eval_in(vals, sqrt17)?.checked_div(&d).ok_or(Error::ZeroDenominator)?
            }
            Expr::Pow(a, e) => a.eval_in(vals, sqrt17)?.pow(*e),
        })
    }

    /// Rational function value; fails if `sqrt(17)` occurs.
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        self.eval_in(&Var::ALL.map(RatFunc::var), None)
    }

    /// Symbolic value in Q(n, p, mu, c1)(sqrt 17).
    pub fn to_quad(&self) -> Result<Quad<RatFunc>> {
        let vals = Var::ALL.map(|v| Quad::from_base(RatFunc::var(v)));
        self.eval_in(&vals, Some(&Quad::sqrt17()))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let s = String::from_utf8_lossy(self.src);
        Error::Parse(format!("{what} at offset {} in `{s}`", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.integer()?;
            let e = u32::try_from(exp).map_err(|_| self.error("bad exponent"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(Rat::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                match self.ident() {
                    "n" => Ok(Expr::Var(Var::N)),
                    "p" => Ok(Expr::Var(Var::P)),
                    "mu" => Ok(Expr::Var(Var::Mu)),
                    "c1" => Ok(Expr::Var(Var::C1)),
                    "sqrt17" => Ok(Expr::Sqrt17),
                    "sqrt" => {
                        let ok = self.eat(b'(') && self.integer().ok() == Some(BigInt::from(17)) && self.eat(b')');
                        if ok {
                            Ok(Expr::Sqrt17)
                        } else {
                            Err(self.error("only sqrt(17) is supported"))
                        }
                    }
                    _ => {
                        self.pos = at;
                        Err(self.error("unknown identifier"))
                    }
                }
            }
            _ => Err(self.error("expected expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, QField};

    #[test]
    fn precedence_and_powers() {
        let e = Expr::parse("1 + 2*3^2 - 8/4").unwrap();
        let v = e.eval_in(&[rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)], None).unwrap();
        assert_eq!(v, rat(17, 1));
        let e = Expr::parse("-2^2").unwrap();
        assert_eq!(e.to_ratfunc().unwrap(), RatFunc::int(-4));
    }

    #[test]
    fn variables() {
        let f = Expr::parse("(n^2*p - n^2 - n*mu)/(p-1)^2").unwrap().to_ratfunc().unwrap();
        let vals = [QField::int(1), QField::int(2), QField::int(3), QField::int(0)];
        assert_eq!(f.eval_at(&vals).unwrap(), QField::int(-2));
    }

    #[test]
    fn sqrt17_handling() {
        let e = Expr::parse("(3*p - 4 + sqrt(17)) / 2").unwrap();
        assert!(e.has_sqrt17());
        assert_eq!(e.to_ratfunc(), Err(Error::IrrationalExpression));
        let q = e.to_quad().unwrap();
        assert_eq!(q.b, RatFunc::constant(rat(1, 2)));
        let sq = Expr::parse("sqrt17*sqrt17").unwrap().to_quad().unwrap();
        assert_eq!(sq, Quad::from_base(RatFunc::int(17)));
    }

    #[test]
    fn errors() {
        assert!(matches!(Expr::parse("2 +"), Err(Error::Parse(_))));
        assert!(matches!(Expr::parse("x"), Err(Error::Parse(_))));
        assert!(matches!(Expr::parse("sqrt(3)"), Err(Error::Parse(_))));
        assert!(matches!(Expr::parse("(1"), Err(Error::Parse(_))));
        assert_eq!(Expr::parse("1/(p-p)").unwrap().to_ratfunc(), Err(Error::ZeroDenominator));
    }
}
