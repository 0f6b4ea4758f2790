//! Fraction-free row reduction of differential forms, tracking how every
//! row is built from the input constraints.

use crate::algebra::{poly_arith, poly_gcd, ParamPoly, PolyOp, Rat, RatFunc};
use crate::diffform::{DiffForm, DiffMonomial, OrderKey};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A reduced row together with its coefficients over the input rows.
#[derive(Clone, Debug, PartialEq)]
pub struct EchelonRow {
    pub form: DiffForm,
    pub combo: Vec<RatFunc>,
    pub pivot: DiffMonomial,
}

/// Reduced row echelon form, rows sorted by pivot, largest first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Echelon {
    pub rows: Vec<EchelonRow>,
    pub inputs: usize,
}

fn lcm(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let g = poly_gcd(a, b);
    let ab = poly_arith(a, b, PolyOp::Mul);
    ab.div_exact(&g).expect("gcd divides product")
}

/// Scale a row so its coefficients are polynomials with trivial content
/// and the pivot coefficient has a positive leading term.
fn make_primitive(form: &mut DiffForm, combo: &mut [RatFunc], pivot: &DiffMonomial) {
    let mut l = ParamPoly::one();
    for (_, c) in form.terms() {
        if !c.den().is_constant() {
            l = lcm(&l, c.den());
        }
    }
    let lf = RatFunc::from_poly(l);
    let mut g = ParamPoly::zero();
    for (_, c) in form.terms() {
        let num = (c * &lf).num().clone();
        g = if g.is_zero() { num } else { poly_gcd(&g, &num) };
        if g.is_constant() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    let mut s = &lf / &RatFunc::from_poly(g);
    let c = rational_content(form.terms().map(|(_, c)| (c * &s).num().clone()));
    s = s.scale(&c.recip());
    if (form.coeff(pivot) * s.clone()).num().leading_is_negative() {
        s = -s;
    }
    if s.is_one() {
        return;
    }
    *form = form.scale(&s);
    for c in combo.iter_mut() {
        *c = &*c * &s;
    }
}

/// Positive rational `c` such that every coefficient of every polynomial,
/// divided by `c`, is an integer and the integers are jointly coprime.
fn rational_content(polys: impl Iterator<Item = ParamPoly>) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for p in polys {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    if num.is_zero() {
        return Rat::one();
    }
    Rat::new(num, den)
}

fn key_of(cache: &mut BTreeMap<DiffMonomial, OrderKey>, m: &DiffMonomial) -> OrderKey {
    cache.entry(m.clone()).or_insert_with(|| m.key()).clone()
}

fn leading(cache: &mut BTreeMap<DiffMonomial, OrderKey>, f: &DiffForm) -> Option<DiffMonomial> {
    let mut best: Option<(OrderKey, &DiffMonomial)> = None;
    for m in f.monomials() {
        let k = key_of(cache, m);
        if best.as_ref().is_none_or(|(bk, _)| k > *bk) {
            best = Some((k, m));
        }
    }
    best.map(|(_, m)| m.clone())
}

/// `b * r - a * pivot_row`, cancelling the pivot monomial of `row`.
fn cross_eliminate(form: &mut DiffForm, combo: &mut [RatFunc], m: &DiffMonomial, row: &EchelonRow) {
    let a = form.coeff(m);
    let b = row.form.coeff(m);
    *form = &form.scale(&b) - &row.form.scale(&a);
    for (c, rc) in combo.iter_mut().zip(&row.combo) {
        *c = &(&*c * &b) - &(rc * &a);
    }
}

impl Echelon {
    /// Row-reduce `inputs`. Coefficients stay polynomial throughout when
    /// the inputs are polynomial.
    pub fn new(inputs: &[DiffForm]) -> Echelon {
        let k = inputs.len();
        let mut cache = BTreeMap::new();
        let mut pivots: BTreeMap<DiffMonomial, EchelonRow> = BTreeMap::new();
        for (i, f) in inputs.iter().enumerate() {
            let mut form = f.clone();
            let mut combo = vec![RatFunc::zero(); k];
            combo[i] = RatFunc::one();
            while let Some(m) = leading(&mut cache, &form) {
                match pivots.get(&m) {
                    Some(row) => cross_eliminate(&mut form, &mut combo, &m, row),
                    None => {
                        make_primitive(&mut form, &mut combo, &m);
                        pivots.insert(m.clone(), EchelonRow { form, combo, pivot: m });
                        break;
                    }
                }
            }
        }
        let mut rows: Vec<EchelonRow> = pivots.into_values().collect();
        rows.sort_by_cached_key(|r| std::cmp::Reverse(key_of(&mut cache, &r.pivot)));
        // back substitution, smallest pivot first
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i + 1);
            let row = &mut head[i];
            let mut touched = false;
            for lower in tail.iter() {
                if !row.form.coeff(&lower.pivot).is_zero() {
                    cross_eliminate(&mut row.form, &mut row.combo, &lower.pivot, lower);
                    touched = true;
                }
            }
            if touched {
                let p = row.pivot.clone();
                make_primitive(&mut row.form, &mut row.combo, &p);
            }
        }
        Echelon { rows, inputs: k }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &DiffMonomial> {
        self.rows.iter().map(|r| &r.pivot)
    }

    /// Remainder of `f` modulo the row span and the multiplier of each row:
    /// `f = sum(mult[i] * rows[i]) + remainder`.
    pub fn reduce(&self, f: &DiffForm) -> (DiffForm, Vec<RatFunc>) {
        let mut r = f.clone();
        let mut mult = vec![RatFunc::zero(); self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let c = r.coeff(&row.pivot);
            if c.is_zero() {
                continue;
            }
            let q = &c / &row.form.coeff(&row.pivot);
            r = &r - &row.form.scale(&q);
            mult[i] = q;
        }
        (r, mult)
    }

    pub fn contains(&self, f: &DiffForm) -> bool {
        self.reduce(f).0.is_zero()
    }

    /// Coefficients over the inputs: `sum(mult[i] * rows[i].combo)`.
    pub fn to_inputs(&self, mult: &[RatFunc]) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.inputs];
        for (m, row) in mult.iter().zip(&self.rows) {
            if m.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&row.combo) {
                if !c.is_zero() {
                    *o = &*o + &(m * c);
                }
            }
        }
        out
    }
}

/// True when the two families span the same space.
pub fn same_span(a: &[DiffForm], b: &[DiffForm]) -> bool {
    let ea = Echelon::new(a);
    let eb = Echelon::new(b);
    ea.rank() == eb.rank() && a.iter().all(|f| eb.contains(f)) && b.iter().all(|f| ea.contains(f))
}

/// Leading coefficient under the monomial order, scaled to one.
pub fn monic(f: &DiffForm) -> DiffForm {
    match f.leading() {
        Some((_, c)) => {
            let inv = c.recip().expect("stored coefficients are nonzero");
            f.scale(&inv)
        }
        None => DiffForm::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> DiffForm {
        s.parse().unwrap()
    }

    #[test]
    fn rank_and_reduce() {
        let rows = vec![
            f("u[1,0]^4 + p * u * u[2,0] * u[1,0]^2"),
            f("2 * u[1,0]^4 + 2 * p * u * u[2,0] * u[1,0]^2"),
            f("u * u[2,0] * u[1,0]^2 - u[0,1]^4"),
        ];
        let e = Echelon::new(&rows);
        assert_eq!(e.rank(), 2);
        let target = &rows[0].scale(&RatFunc::var(crate::algebra::Var::N)) + &rows[2];
        let (r, mult) = e.reduce(&target);
        assert!(r.is_zero());
        let coeffs = e.to_inputs(&mult);
        let mut replay = DiffForm::zero();
        for (c, row) in coeffs.iter().zip(&rows) {
            replay = &replay + &row.scale(c);
        }
        assert_eq!(replay, target);
    }

    #[test]
    fn rows_are_reduced() {
        let rows = vec![f("u[1,0]^4 + u[0,1]^4"), f("u[0,1]^4 + (p - 2) * u[1,0]^2 * u[0,1]^2")];
        let e = Echelon::new(&rows);
        for a in &e.rows {
            for b in &e.rows {
                if a.pivot != b.pivot {
                    assert!(a.form.coeff(&b.pivot).is_zero());
                }
            }
        }
    }

    #[test]
    fn span_comparison() {
        let a = vec![f("u[1,0]^4"), f("u[0,1]^4")];
        let b = vec![f("u[1,0]^4 + u[0,1]^4"), f("u[1,0]^4 - u[0,1]^4")];
        assert!(same_span(&a, &b));
        assert!(!same_span(&a, &b[..1]));
    }
}
