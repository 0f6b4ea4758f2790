use crate::algebra::{rat, RatFunc, Var};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Highest derivative order the engine will produce.
pub const MAX_ORDER: u8 = 4;

/// One of the two symbolic coordinate axes `x_a`, `x_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    A,
    B,
}

/// `u_{h1,h2}`: `h1` derivatives along `x_a` and `h2` along `x_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivSymbol {
    pub h1: u8,
    pub h2: u8,
}

impl DerivSymbol {
    pub fn new(h1: u8, h2: u8) -> Result<DerivSymbol> {
        if h1 + h2 > MAX_ORDER {
            return Err(Error::OrderCap);
        }
        Ok(DerivSymbol { h1, h2 })
    }

    pub fn order(self) -> u8 {
        self.h1 + self.h2
    }

    /// One more derivative along `axis`.
    pub fn bump(self, axis: Axis) -> Result<DerivSymbol> {
        match axis {
            Axis::A => DerivSymbol::new(self.h1 + 1, self.h2),
            Axis::B => DerivSymbol::new(self.h1, self.h2 + 1),
        }
    }

    /// Order along `axis`.
    pub fn along(self, axis: Axis) -> u8 {
        match axis {
            Axis::A => self.h1,
            Axis::B => self.h2,
        }
    }

    /// The symbol with one derivative along `axis` removed, if there is one.
    pub fn lower(self, axis: Axis) -> Option<DerivSymbol> {
        match axis {
            Axis::A if self.h1 > 0 => Some(DerivSymbol { h1: self.h1 - 1, h2: self.h2 }),
            Axis::B if self.h2 > 0 => Some(DerivSymbol { h1: self.h1, h2: self.h2 - 1 }),
            _ => None,
        }
    }

    pub fn mirror(self) -> DerivSymbol {
        DerivSymbol { h1: self.h2, h2: self.h1 }
    }

    /// Rank used by the monomial order: by total order, then by `h1`.
    fn rank(self) -> usize {
        let o = self.order() as usize;
        // symbols of order < o come first; within order o, h1 ascending
        o * (o + 1) / 2 + self.h1 as usize
    }

    /// All symbols of order 1..=4, highest rank first.
    pub fn ranked() -> Vec<DerivSymbol> {
        let mut v: Vec<DerivSymbol> =
            (1..=MAX_ORDER).flat_map(|o| (0..=o).map(move |h1| DerivSymbol { h1, h2: o - h1 })).collect();
        v.sort_by_key(|s| std::cmp::Reverse(s.rank()));
        v
    }
}

impl fmt::Display for DerivSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u[{},{}]", self.h1, self.h2)
    }
}

/// Exponent `coeff_p * p + constant` of the bare `u` factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UPower {
    pub coeff_p: i32,
    pub constant: i32,
}

impl UPower {
    pub const ZERO: UPower = UPower { coeff_p: 0, constant: 0 };

    pub fn new(coeff_p: i32, constant: i32) -> UPower {
        UPower { coeff_p, constant }
    }

    pub fn int(k: i32) -> UPower {
        UPower { coeff_p: 0, constant: k }
    }

    pub fn is_zero(self) -> bool {
        self == UPower::ZERO
    }

    pub fn as_ratfunc(self) -> RatFunc {
        &RatFunc::var(Var::P).scale(&rat(self.coeff_p as i64, 1)) + &RatFunc::int(self.constant as i64)
    }

    /// Affine text such as `3p-6`.
    pub fn affine(self) -> String {
        let UPower { coeff_p: a, constant: c } = self;
        let pterm = match a {
            0 => String::new(),
            1 => "p".into(),
            -1 => "-p".into(),
            a => format!("{a}p"),
        };
        match (a, c) {
            (_, 0) if a != 0 => pterm,
            (0, c) => c.to_string(),
            (_, c) if c > 0 => format!("{pterm}+{c}"),
            (_, c) => format!("{pterm}{c}"),
        }
    }
}

impl std::ops::Add for UPower {
    type Output = UPower;
    fn add(self, o: UPower) -> UPower {
        UPower { coeff_p: self.coeff_p + o.coeff_p, constant: self.constant + o.constant }
    }
}

impl std::ops::Sub for UPower {
    type Output = UPower;
    fn sub(self, o: UPower) -> UPower {
        UPower { coeff_p: self.coeff_p - o.coeff_p, constant: self.constant - o.constant }
    }
}

impl std::ops::Neg for UPower {
    type Output = UPower;
    fn neg(self) -> UPower {
        UPower { coeff_p: -self.coeff_p, constant: -self.constant }
    }
}

/// `u^alpha * prod u_{i,j}^{e}` with every listed derivative of order >= 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffMonomial {
    pub upower: UPower,
    derivs: BTreeMap<DerivSymbol, u32>,
}

impl DiffMonomial {
    pub fn one() -> DiffMonomial {
        DiffMonomial::default()
    }

    pub fn u_pow(upower: UPower) -> DiffMonomial {
        DiffMonomial { upower, derivs: BTreeMap::new() }
    }

    /// Build from a u-power and `(h1, h2, exponent)` triples; `(0,0)` entries
    /// are folded into the u-power.
    pub fn new(upower: UPower, derivs: &[(u8, u8, u32)]) -> Result<DiffMonomial> {
        let mut m = DiffMonomial::u_pow(upower);
        for &(h1, h2, e) in derivs {
            if e == 0 {
                continue;
            }
            if h1 == 0 && h2 == 0 {
                m.upower.constant += e as i32;
            } else {
                *m.derivs.entry(DerivSymbol::new(h1, h2)?).or_insert(0) += e;
            }
        }
        Ok(m)
    }

    /// A single derivative factor `u_{h1,h2}`.
    pub fn symbol(s: DerivSymbol) -> DiffMonomial {
        if s.order() == 0 {
            return DiffMonomial::u_pow(UPower::int(1));
        }
        DiffMonomial { upower: UPower::ZERO, derivs: BTreeMap::from([(s, 1)]) }
    }

    pub fn derivs(&self) -> impl Iterator<Item = (DerivSymbol, u32)> + '_ {
        self.derivs.iter().map(|(s, e)| (*s, *e))
    }

    pub fn exponent(&self, s: DerivSymbol) -> u32 {
        self.derivs.get(&s).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &DiffMonomial) -> DiffMonomial {
        let mut out = self.clone();
        out.upower = out.upower + o.upower;
        for (s, e) in &o.derivs {
            *out.derivs.entry(*s).or_insert(0) += e;
        }
        out
    }

    /// Remove one factor `s`; `None` if absent.
    pub fn remove_one(&self, s: DerivSymbol) -> Option<DiffMonomial> {
        let mut out = self.clone();
        if s.order() == 0 {
            out.upower.constant -= 1;
            return Some(out);
        }
        let e = out.derivs.get_mut(&s)?;
        *e -= 1;
        if *e == 0 {
            out.derivs.remove(&s);
        }
        Some(out)
    }

    pub fn mirror(&self) -> DiffMonomial {
        DiffMonomial { upower: self.upower, derivs: self.derivs.iter().map(|(s, e)| (s.mirror(), *e)).collect() }
    }

    pub fn max_order(&self) -> u8 {
        self.derivs.keys().map(|s| s.order()).max().unwrap_or(0)
    }

    /// `(degree, total order)`. Bare `u` factors count toward the degree
    /// through the integer part of the u-power; its `p`-part is a weight and
    /// is ignored.
    pub fn degree_total_order(&self) -> (i64, u32) {
        let deg: u32 = self.derivs.values().sum();
        let tot: u32 = self.derivs.iter().map(|(s, e)| e * s.order() as u32).sum();
        (deg as i64 + self.upower.constant as i64, tot)
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.upower.coeff_p == 0 && self.degree_total_order() == (k as i64, k)
    }

    /// Factor as a product of two of `m1..m6`, first pair `(i <= j)` wins.
    pub fn to_quadratic(&self) -> Option<(QuadMonomial, QuadMonomial)> {
        if !self.is_homogeneous(4) || self.max_order() > 2 {
            return None;
        }
        for i in 1..=6 {
            for j in i..=6 {
                let (a, b) = (QuadMonomial(i), QuadMonomial(j));
                if a.monomial().mul(&b.monomial()) == *self {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_quadratic(&self) -> bool {
        self.to_quadratic().is_some()
    }

    /// Sort key: non-quadratic above quadratic, then graded-lex on the
    /// derivative exponents with `u_{i,j}` ranked by `(i+j, i)`.
    pub fn key(&self) -> OrderKey {
        let (deg, _) = self.degree_total_order();
        OrderKey {
            nonquadratic: !self.is_quadratic(),
            deriv_degree: deg - self.upower.constant as i64,
            exponents: DerivSymbol::ranked().into_iter().map(|s| self.exponent(s)).collect(),
            upower: self.upower,
        }
    }
}

/// See [`DiffMonomial::key`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey {
    nonquadratic: bool,
    deriv_degree: i64,
    exponents: Vec<u32>,
    upower: UPower,
}

pub fn monomial_key(m: &DiffMonomial) -> OrderKey {
    m.key()
}

/// One of the six degree-2, total-order-2 monomials `m1..m6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadMonomial(pub u8);

impl QuadMonomial {
    pub fn monomial(self) -> DiffMonomial {
        let t: &[(u8, u8, u32)] = match self.0 {
            1 => &[(0, 0, 1), (0, 2, 1)],
            2 => &[(0, 0, 1), (1, 1, 1)],
            3 => &[(0, 0, 1), (2, 0, 1)],
            4 => &[(0, 1, 2)],
            5 => &[(1, 0, 1), (0, 1, 1)],
            6 => &[(1, 0, 2)],
            i => panic!("no quadratic monomial m{i}"),
        };
        DiffMonomial::new(UPower::ZERO, t).unwrap()
    }

    /// `m_i * m_j` as a differential monomial.
    pub fn product(i: u8, j: u8) -> DiffMonomial {
        QuadMonomial(i).monomial().mul(&QuadMonomial(j).monomial())
    }
}

impl fmt::Display for QuadMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// Every monomial of degree 4 and total order 4 in `u` and its derivatives
/// along the two axes.
pub fn degree4_monomials() -> Vec<DiffMonomial> {
    let syms: Vec<DerivSymbol> =
        (1..=MAX_ORDER).flat_map(|o| (0..=o).map(move |h1| DerivSymbol { h1, h2: o - h1 })).collect();
    let mut out = Vec::new();
    // choose a multiset of symbols whose orders sum to 4, using <= 4 factors
    fn rec(syms: &[DerivSymbol], start: usize, left: u8, cur: &mut Vec<DerivSymbol>, out: &mut Vec<DiffMonomial>) {
        if left == 0 {
            let mut m = DiffMonomial::u_pow(UPower::int(4 - cur.len() as i32));
            for s in cur.iter() {
                m = m.mul(&DiffMonomial::symbol(*s));
            }
            out.push(m);
            return;
        }
        for i in start..syms.len() {
            if syms[i].order() <= left {
                cur.push(syms[i]);
                rec(syms, i, left - syms[i].order(), cur, out);
                cur.pop();
            }
        }
    }
    rec(&syms, 0, 4, &mut Vec::new(), &mut out);
    out.sort_by_key(|m| std::cmp::Reverse(m.key()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(up: i32, d: &[(u8, u8, u32)]) -> DiffMonomial {
        DiffMonomial::new(UPower::int(up), d).unwrap()
    }

    #[test]
    fn degree_and_total_order() {
        assert_eq!(mono(1, &[(2, 0, 1), (1, 0, 2)]).degree_total_order(), (4, 4));
        assert_eq!(mono(4, &[]).degree_total_order(), (4, 0));
        assert_eq!(mono(0, &[(0, 1, 4)]).degree_total_order(), (4, 4));
    }

    #[test]
    fn quadratic_factorization() {
        let m = mono(2, &[(1, 1, 2)]);
        assert_eq!(m.to_quadratic(), Some((QuadMonomial(2), QuadMonomial(2))));
        assert_eq!(mono(3, &[(4, 0, 1)]).to_quadratic(), None);
        let m = mono(0, &[(1, 0, 2), (0, 1, 2)]);
        assert_eq!(m.to_quadratic(), Some((QuadMonomial(4), QuadMonomial(6))));
        let m = mono(2, &[(0, 2, 1), (2, 0, 1)]);
        assert_eq!(m.to_quadratic(), Some((QuadMonomial(1), QuadMonomial(3))));
    }

    #[test]
    fn enumeration_counts() {
        let all = degree4_monomials();
        assert_eq!(all.len(), 33);
        assert_eq!(all.iter().filter(|m| !m.is_quadratic()).count(), 13);
        let mut keys: Vec<_> = all.iter().map(|m| m.key()).collect();
        keys.dedup();
        assert_eq!(keys.len(), 33);
        assert!(all.windows(2).all(|w| w[0].key() > w[1].key()));
    }

    #[test]
    fn nonquadratic_above_quadratic() {
        let head = mono(3, &[(4, 0, 1)]);
        assert!(head.key() > QuadMonomial::product(3, 6).key());
        assert_eq!(head.key(), head.key());
        let low = mono(2, &[(1, 0, 1), (0, 3, 1)]);
        assert!(low.key() > QuadMonomial::product(2, 2).key());
    }

    #[test]
    fn ranking() {
        let r = DerivSymbol::ranked();
        assert_eq!(r[0], DerivSymbol { h1: 4, h2: 0 });
        assert_eq!(r[4], DerivSymbol { h1: 0, h2: 4 });
        assert_eq!(r[13], DerivSymbol { h1: 0, h2: 1 });
    }

    #[test]
    fn affine_text() {
        assert_eq!(UPower::new(3, -6).affine(), "3p-6");
        assert_eq!(UPower::new(-1, 2).affine(), "-p+2");
        assert_eq!(UPower::new(1, 0).affine(), "p");
        assert_eq!(UPower::int(0).affine(), "0");
    }

    #[test]
    fn order_cap() {
        assert_eq!(DerivSymbol::new(4, 1), Err(Error::OrderCap));
        assert_eq!(DerivSymbol { h1: 2, h2: 2 }.bump(Axis::A), Err(Error::OrderCap));
    }
}
