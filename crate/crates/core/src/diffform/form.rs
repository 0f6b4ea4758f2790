use super::monomial::{Axis, DiffMonomial, UPower};
use crate::algebra::{RatFunc, Var};
use crate::error::Result;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

/// Linear combination of differential monomials with rational-function
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DiffForm {
    terms: BTreeMap<DiffMonomial, RatFunc>,
}

impl DiffForm {
    pub fn zero() -> DiffForm {
        DiffForm::default()
    }

    pub fn monomial(m: DiffMonomial, c: RatFunc) -> DiffForm {
        let mut f = DiffForm::zero();
        f.add_term(m, c);
        f
    }

    pub fn from_terms(it: impl IntoIterator<Item = (DiffMonomial, RatFunc)>) -> DiffForm {
        let mut f = DiffForm::zero();
        for (m, c) in it {
            f.add_term(m, c);
        }
        f
    }

    pub fn add_term(&mut self, m: DiffMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &DiffMonomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &DiffMonomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Terms sorted by the monomial order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&DiffMonomial, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| std::cmp::Reverse(m.key()));
        v
    }

    /// Leading term under the monomial order.
    pub fn leading(&self) -> Option<(&DiffMonomial, &RatFunc)> {
        self.terms.iter().max_by_key(|(m, _)| m.key())
    }

    pub fn scale(&self, c: &RatFunc) -> DiffForm {
        if c.is_zero() {
            return DiffForm::zero();
        }
        DiffForm { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, w: &DiffMonomial) -> DiffForm {
        DiffForm { terms: self.terms.iter().map(|(m, c)| (m.mul(w), c.clone())).collect() }
    }

    pub fn mul(&self, o: &DiffForm) -> DiffForm {
        let mut out = DiffForm::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Swap the roles of the two axes.
    pub fn mirror(&self) -> DiffForm {
        DiffForm::from_terms(self.terms.iter().map(|(m, c)| (m.mirror(), c.clone())))
    }

    /// Apply a map to every coefficient, e.g. a parameter substitution.
    pub fn try_map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<DiffForm> {
        let mut out = DiffForm::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, v: Var, by: &RatFunc) -> Result<DiffForm> {
        self.try_map_coeffs(|c| c.substitute(v, by))
    }

    /// Derivative along an axis: Leibniz rule over the factors, with
    /// `d(u^alpha) = alpha * u^(alpha-1) * u_{1,0}` (or `u_{0,1}`).
    pub fn differentiate(&self, axis: Axis) -> Result<DiffForm> {
        let step = DiffMonomial::symbol(super::DerivSymbol::new(0, 0)?.bump(axis)?);
        let mut out = DiffForm::zero();
        for (m, c) in &self.terms {
            if !m.upower.is_zero() {
                let alpha = m.upower.as_ratfunc();
                let mut rest = m.clone();
                rest.upower = rest.upower - UPower::int(1);
                out.add_term(rest.mul(&step), c * &alpha);
            }
            for (s, e) in m.derivs() {
                let rest = m.remove_one(s).expect("factor present");
                let grown = DiffMonomial::symbol(s.bump(axis)?);
                out.add_term(rest.mul(&grown), c.scale(&crate::algebra::rat(e as i64, 1)));
            }
        }
        Ok(out)
    }

    /// True when every monomial has degree `k` and total order `k` with no
    /// `p` in its u-exponent.
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.is_homogeneous(k))
    }
}

impl<'a> Add<&'a DiffForm> for &'a DiffForm {
    type Output = DiffForm;
    fn add(self, o: &DiffForm) -> DiffForm {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DiffForm> for &'a DiffForm {
    type Output = DiffForm;
    fn sub(self, o: &DiffForm) -> DiffForm {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        DiffForm { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for DiffForm {
    type Output = DiffForm;
    fn add(self, o: DiffForm) -> DiffForm {
        &self + &o
    }
}

impl Sub for DiffForm {
    type Output = DiffForm;
    fn sub(self, o: DiffForm) -> DiffForm {
        &self - &o
    }
}

impl Neg for DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffform::DerivSymbol;

    fn f(s: &str) -> DiffForm {
        s.parse().unwrap()
    }

    #[test]
    fn power_rule_example() {
        let g = f("u^(3p-5) * u[1,0]^2");
        let d = g.differentiate(Axis::A).unwrap();
        assert_eq!(d, f("(3*p - 5) * u^(3p-6) * u[1,0]^3 + 2 * u^(3p-5) * u[1,0] * u[2,0]"));
    }

    #[test]
    fn simple_derivatives() {
        assert_eq!(f("u").differentiate(Axis::A).unwrap(), f("u[1,0]"));
        let d = f("u[1,0] * u[0,1]").differentiate(Axis::B).unwrap();
        assert_eq!(d, f("u[1,1] * u[0,1] + u[1,0] * u[0,2]"));
    }

    #[test]
    fn order_cap_enforced() {
        let e = f("u[2,2]").differentiate(Axis::B).unwrap_err();
        assert_eq!(e.to_string(), "derivative order cap exceeded");
    }

    #[test]
    fn mixed_partials_commute() {
        for h1 in 0..=2u8 {
            for h2 in 0..=(2 - h1) {
                let m = DiffForm::monomial(
                    DiffMonomial::symbol(DerivSymbol::new(h1, h2).unwrap())
                        .mul(&DiffMonomial::u_pow(UPower::new(1, -1))),
                    RatFunc::int(1),
                );
                let ab = m.differentiate(Axis::A).unwrap().differentiate(Axis::B).unwrap();
                let ba = m.differentiate(Axis::B).unwrap().differentiate(Axis::A).unwrap();
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = f("3 * u[1,0]^4");
        assert!((&a - &a).is_zero());
        assert_eq!((&a + &a).coeff(a.monomials().next().unwrap()), RatFunc::int(6));
    }
}
