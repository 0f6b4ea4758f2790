use super::rat::{rat_to_string, Rat};
use super::{Field, Var};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector over `(n, p, mu, c1)`.
pub type Exps = [u16; 4];

/// Sparse multivariate polynomial over Q in the parameters.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector; array ordering is
/// lexicographic with `n` most significant, so the last entry is the leading
/// term for the lex order n > p > mu > c1. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exps, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(e: Exps, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exps, Rat)>) -> Self {
        let mut p = ParamPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exps) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Leading term under lex n > p > mu > c1.
    pub fn leading(&self) -> Option<(&Exps, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.contains(*v)).collect()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Exps, c: &Rat) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    let mut ne = *e;
                    for i in 0..4 {
                        ne[i] += m[i];
                    }
                    (ne, k * c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`:
    /// entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<ParamPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![ParamPoly::zero(); deg + 1];
        if self.is_zero() {
            return vec![];
        }
        for (e, c) in &self.terms {
            let mut ne = *e;
            let k = ne[v.index()] as usize;
            ne[v.index()] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[ParamPoly]) -> Self {
        let mut out = ParamPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut ne = *e;
                ne[v.index()] += k as u16;
                out.add_term(ne, x.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (le, lc) = d.leading()?;
        let (le, lc) = (*le, lc.clone());
        if d.terms.len() == 1 {
            // monomial divisor: term-wise
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                let mut ne = *e;
                for i in 0..4 {
                    ne[i] = ne[i].checked_sub(le[i])?;
                }
                out.insert(ne, c / &lc);
            }
            return Some(ParamPoly { terms: out });
        }
        let mut r = self.clone();
        let mut q = ParamPoly::zero();
        while let Some((re, rc)) = r.leading() {
            let mut qe = [0u16; 4];
            for i in 0..4 {
                qe[i] = re[i].checked_sub(le[i])?;
            }
            let qc = rc / &lc;
            r = &r - &d.mul_monomial(&qe, &qc);
            q.add_term(qe, qc);
        }
        Some(q)
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let k = e[v.index()];
            if k > 0 {
                let mut ne = *e;
                ne[v.index()] -= 1;
                out.add_term(ne, c * Rat::from_integer(k.into()));
            }
        }
        out
    }

    /// Evaluate with every variable replaced by a value in `T`.
    pub fn eval<T: Field>(&self, vals: &[T; 4]) -> T {
        let mut cache: [Vec<T>; 4] = Default::default();
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = T::from_rat(c);
            for i in 0..4 {
                let k = e[i] as usize;
                if k == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                if pw.is_empty() {
                    pw.push(T::one());
                }
                while pw.len() <= k {
                    let next = pw.last().unwrap().clone() * vals[i].clone();
                    pw.push(next);
                }
                t = t * pw[k].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute a single variable by another polynomial.
    pub fn substitute(&self, v: Var, by: &ParamPoly) -> ParamPoly {
        let coeffs = self.coeffs_in(v);
        let mut acc = ParamPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * by) + c;
        }
        acc
    }

    /// Sign of the leading coefficient (lex order).
    pub fn leading_is_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Descending graded order reads most naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u16 = a.iter().sum();
            let db: u16 = b.iter().sum();
            db.cmp(&da).then(b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const = e.iter().all(|k| *k == 0);
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || is_const {
                factors.push(if latex && !abs.denom().is_one() {
                    format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
                } else {
                    rat_to_string(&abs)
                });
            }
            for v in Var::ALL {
                let k = e[v.index()];
                if k == 0 {
                    continue;
                }
                let name = if latex { v.latex() } else { v.name() };
                factors.push(match (k, latex) {
                    (1, _) => name.to_string(),
                    (k, true) => format!("{name}^{{{k}}}"),
                    (k, false) => format!("{name}^{k}"),
                });
            }
            out.push_str(&factors.join(if latex { " " } else { "*" }));
        }
        out
    }
}

/// `a op b` for the three ring operations.
pub fn poly_arith(a: &ParamPoly, b: &ParamPoly, op: PolyOp) -> ParamPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-Rat::one())
    }
}
