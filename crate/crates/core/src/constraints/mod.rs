//! Integration-by-parts constraints on degree-4 forms, the trace
//! inequality, and their split into quadratic and non-quadratic parts.

mod echelon;
mod listing;

pub use echelon::{monic, same_span, Echelon, EchelonRow};
pub use listing::{R_HAT, R_LIST, R_TILDE};

use crate::algebra::{RatFunc, Var};
use crate::diffform::{degree4_monomials, Axis, DerivSymbol, DiffForm, DiffMonomial, UPower};
use crate::error::{Error, Result};
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    /// Integrates to zero.
    Equational,
    /// Integrates to something nonnegative.
    Inequality,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub form: DiffForm,
    pub kind: ConstraintKind,
    pub label: String,
}

impl Constraint {
    pub fn equational(form: DiffForm, label: impl Into<String>) -> Constraint {
        Constraint { form, kind: ConstraintKind::Equational, label: label.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstraintSet {
    pub equational: Vec<Constraint>,
    pub inequality: Vec<Constraint>,
}

/// Rows of the reduced echelon form of a constraint family, split by
/// whether the pivot is quadratic.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitSet {
    pub quadratic: Vec<Constraint>,
    pub nonquadratic: Vec<Constraint>,
    /// Labels of the rows the split was computed from.
    pub sources: Vec<String>,
    pub echelon: Echelon,
}

impl SplitSet {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Reduce `f` modulo the whole span: returns the normal form and the
    /// multiplier of each source constraint, so that
    /// `f = sum(e[i] * source[i]) + nf`.
    pub fn span_reduce(&self, f: &DiffForm) -> (DiffForm, Vec<RatFunc>) {
        let (nf, mult) = self.echelon.reduce(f);
        (nf, self.echelon.to_inputs(&mult))
    }

    /// The quadratic rows alone, as their own echelon form.
    pub fn quadratic_echelon(&self) -> Echelon {
        let forms: Vec<DiffForm> = self.quadratic.iter().map(|c| c.form.clone()).collect();
        Echelon::new(&forms)
    }
}

fn u_times(s: DerivSymbol) -> DiffMonomial {
    if s.order() == 0 {
        DiffMonomial::u_pow(UPower::int(1))
    } else {
        DiffMonomial::symbol(s)
    }
}

/// `seed + u^(6-3p) * w * d_x(u^(3p-6) * seed / w')` where `w'` is the
/// peeled factor and `w` is `w'` with one `x` derivative removed. The result
/// integrates to zero.
pub fn generate_ibp(seed: &DiffMonomial, peel: DerivSymbol, axis: Axis) -> Result<DiffForm> {
    if !seed.is_homogeneous(4) {
        return Err(Error::InvalidSeed(format!("{seed} is not of degree 4 and total order 4")));
    }
    let rest = seed.remove_one(peel).ok_or_else(|| Error::PeelNotFactor(peel.to_string()))?;
    let w = peel.lower(axis).ok_or_else(|| Error::InvalidSeed(format!("{peel} has no derivative along {axis:?}")))?;
    let g = rest.mul(&DiffMonomial::u_pow(UPower::new(3, -6)));
    let dg = DiffForm::monomial(g, RatFunc::one()).differentiate(axis)?;
    let back = u_times(w).mul(&DiffMonomial::u_pow(UPower::new(-3, 6)));
    Ok(&DiffForm::monomial(seed.clone(), RatFunc::one()) + &dg.mul_monomial(&back))
}

/// Every constraint reachable by one peel of a degree-4 seed along `x_a`,
/// together with its mirror image, deduplicated up to scaling. Forms that
/// match a reference constraint carry its label (`R1..R28`); the others are
/// labelled `G1, G2, ...`.
pub fn generate_all_constraints() -> Result<ConstraintSet> {
    let seeds = degree4_monomials();
    let along_a: Vec<DiffForm> = seeds
        .par_iter()
        .map(|seed| {
            let mut out = Vec::new();
            for (s, _) in seed.derivs() {
                if s.along(Axis::A) > 0 {
                    out.push(generate_ibp(seed, s, Axis::A)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let reference: HashMap<DiffForm, usize> =
        R_LIST.iter().enumerate().map(|(i, s)| (monic(&listing::parse(s)), i + 1)).collect();

    let mut seen: HashMap<DiffForm, ()> = HashMap::new();
    let mut labelled: Vec<(usize, DiffForm)> = Vec::new();
    let mut extra: Vec<DiffForm> = Vec::new();
    for f in along_a.iter().cloned().chain(along_a.iter().map(DiffForm::mirror)) {
        if f.is_zero() {
            continue;
        }
        let key = monic(&f);
        if seen.insert(key.clone(), ()).is_some() {
            continue;
        }
        match reference.get(&key) {
            Some(&i) => labelled.push((i, f)),
            None => extra.push(f),
        }
    }
    labelled.sort_by_key(|(i, _)| *i);
    let mut equational: Vec<Constraint> =
        labelled.into_iter().map(|(i, f)| Constraint::equational(f, format!("R{i}"))).collect();
    equational.extend(extra.into_iter().enumerate().map(|(k, f)| Constraint::equational(f, format!("G{}", k + 1))));
    Ok(ConstraintSet { equational, inequality: vec![trace_inequality()] })
}

/// The reference constraints `R1..R28`.
pub fn reference_constraints() -> Vec<Constraint> {
    R_LIST.iter().enumerate().map(|(i, s)| Constraint::equational(listing::parse(s), format!("R{}", i + 1))).collect()
}

/// The reference quadratic set, `Rhat1..Rhat9`.
pub fn reference_quadratic() -> Vec<Constraint> {
    R_HAT.iter().enumerate().map(|(i, s)| Constraint::equational(listing::parse(s), format!("Rhat{}", i + 1))).collect()
}

/// The reference non-quadratic set, `Rtilde1..Rtilde13`.
pub fn reference_nonquadratic() -> Vec<Constraint> {
    R_TILDE
        .iter()
        .enumerate()
        .map(|(i, s)| Constraint::equational(listing::parse(s), format!("Rtilde{}", i + 1)))
        .collect()
}

/// Seed, peeled factor and axis that regenerate reference constraint `i`
/// (1-based).
pub fn reference_seed(i: usize) -> Option<(DiffMonomial, DerivSymbol, Axis)> {
    (1..=R_LIST.len()).contains(&i).then(|| listing::seed_of(i - 1))
}

/// Parse a form written with the shorthands `m1..m6`.
pub fn parse_quadratic(s: &str) -> Result<DiffForm> {
    listing::expand_m(s).parse()
}

/// `u^(6-2p) [ (d_a d_b u^(p-1))^2 - (1/n) d_a^2 u^(p-1) d_b^2 u^(p-1) ]`,
/// nonnegative after integration by the trace inequality.
pub fn trace_constraint() -> DiffForm {
    let v = DiffForm::monomial(DiffMonomial::u_pow(UPower::new(1, -1)), RatFunc::one());
    let d = |f: &DiffForm, x: Axis| f.differentiate(x).expect("orders stay within the cap");
    let vab = d(&d(&v, Axis::A), Axis::B);
    let vaa = d(&d(&v, Axis::A), Axis::A);
    let vbb = d(&d(&v, Axis::B), Axis::B);
    let inv_n = RatFunc::var(Var::N).recip().expect("n is nonzero");
    let inner = &vab.mul(&vab) - &vaa.mul(&vbb).scale(&inv_n);
    inner.mul_monomial(&DiffMonomial::u_pow(UPower::new(-2, 6)))
}

/// The trace constraint symmetrised over the two axes, as it enters the
/// Lagrangian.
pub fn trace_inequality() -> Constraint {
    let i = trace_constraint();
    Constraint { form: &i + &i.mirror(), kind: ConstraintKind::Inequality, label: "I1".into() }
}

/// Row-reduce a constraint family and split the rows by pivot type.
pub fn gaussian_split(cs: &[Constraint]) -> SplitSet {
    let forms: Vec<DiffForm> = cs.iter().map(|c| c.form.clone()).collect();
    let echelon = Echelon::new(&forms);
    let mut quadratic = Vec::new();
    let mut nonquadratic = Vec::new();
    for row in &echelon.rows {
        if row.pivot.is_quadratic() {
            let label = format!("Q{}", quadratic.len() + 1);
            quadratic.push(Constraint::equational(row.form.clone(), label));
        } else {
            let label = format!("N{}", nonquadratic.len() + 1);
            nonquadratic.push(Constraint::equational(row.form.clone(), label));
        }
    }
    SplitSet { quadratic, nonquadratic, sources: cs.iter().map(|c| c.label.clone()).collect(), echelon }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> DiffForm {
        s.parse().unwrap()
    }

    #[test]
    fn first_constraint_from_its_seed() {
        let seed = DiffMonomial::new(UPower::int(1), &[(2, 0, 1), (1, 0, 2)]).unwrap();
        let r = generate_ibp(&seed, DerivSymbol::new(2, 0).unwrap(), Axis::A).unwrap();
        assert_eq!(r, f("3*p*u[1,0]^4 + 3*u*u[2,0]*u[1,0]^2 - 5*u[1,0]^4"));
    }

    #[test]
    fn peel_by_plain_u_factor_of_w() {
        let seed = DiffMonomial::new(UPower::int(2), &[(0, 1, 1), (0, 3, 1)]).unwrap();
        let r = generate_ibp(&seed, DerivSymbol::new(0, 1).unwrap(), Axis::B).unwrap();
        assert_eq!(monic(&r), monic(&listing::parse(R_LIST[9])));
    }

    #[test]
    fn peel_must_divide_seed() {
        let seed = DiffMonomial::new(UPower::int(3), &[(4, 0, 1)]).unwrap();
        let e = generate_ibp(&seed, DerivSymbol::new(0, 4).unwrap(), Axis::B).unwrap_err();
        assert!(matches!(e, Error::PeelNotFactor(_)));
        let e = generate_ibp(&seed, DerivSymbol::new(4, 0).unwrap(), Axis::B).unwrap_err();
        assert!(matches!(e, Error::InvalidSeed(_)));
        let bad = DiffMonomial::new(UPower::int(1), &[(1, 0, 1)]).unwrap();
        assert!(matches!(generate_ibp(&bad, DerivSymbol::new(1, 0).unwrap(), Axis::A), Err(Error::InvalidSeed(_))));
    }

    #[test]
    fn generated_forms_are_homogeneous() {
        let cs = generate_all_constraints().unwrap();
        assert!(cs.equational.iter().all(|c| c.form.is_homogeneous(4)));
        assert!(cs.inequality[0].form.is_homogeneous(4));
    }

    #[test]
    fn trace_is_symmetric_after_mirroring() {
        let i = trace_inequality().form;
        assert_eq!(i, i.mirror());
    }
}
