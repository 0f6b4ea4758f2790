//! Symbolic checks of the relations among the named constants, the sign
//! conditions and the reduced quadratic form.

use super::params::{subst, sym_contains, sym_is_zero, ParamTable, Sym};
use super::s_symbolic;
use crate::algebra::{Expr, QField, Quad, RatFunc, Var};
use crate::error::Result;
use crate::reduction::{reduction, QuadForm};
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub group: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn group(&self, g: &str) -> impl Iterator<Item = &IdentityCheck> + '_ {
        let g = g.to_string();
        self.checks.iter().filter(move |c| c.group == g)
    }

    fn push(&mut self, group: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(IdentityCheck { group, name: name.into(), passed, detail: detail.into() });
    }
}

/// Displayed differences `lhs - rhs = closed form`.
pub const DIFFERENCES: [(&str, &str, &str); 10] = [
    ("mu3", "mu4", "4*((p-1)^2*c1+2*n)/(9*p-4)"),
    ("mu1", "mu3", "(p-1)^2*c1+2*n"),
    ("mu1", "mu4", "9*p*((p-1)^2*c1+2*n)/(9*p-4)"),
    ("mu2", "mu3", "2*(p-2)^2*((1/2)*(p-1)^2*c1+n)/(4*p^2-9*p+4)"),
    ("mu2", "mu4", "p*(3*p-4)^2*((p-1)^2*c1+2*n)/((4*p^2-9*p+4)*(9*p-4))"),
    ("mu4", "theta7", "(-(p-1)^2*(4*n+9*p-4)*c1+2*n^2*p*(9*p-13))/(n*(9*p-4))"),
    ("mu3", "theta7", "(p-1)*(2*n^2-p*c1+c1)/n"),
    ("theta2", "theta1", "18*n*(n*p-n+1)*(p-4/9)/((p-1)^2*(4*n+9*p-4))"),
    ("theta1", "eta1", "-2*n*(n*p-n+1)/(p-1)^2"),
    ("eta1", "theta2", "8*n^2*(n*p-n+1)/((p-1)^2*(4*n+9*p-4))"),
];

/// `mu_k - mu = k (theta_j - c1)`: the multiplier `k` in closed form.
/// `mu4` flips sign at `p = 4/9`; every other multiplier is positive.
pub const C1_ELIMINATIONS: [(&str, &str, &str); 7] = [
    ("mu3", "theta4", "(p-1)^2/n"),
    ("mu4", "theta5", "(p-1)^2*(4*n+9*p-4)/(n*(9*p-4))"),
    ("mu6", "theta6", "(sqrt17+1)/(4*n*(sqrt17-1))"),
    ("mu7", "theta12", "(26*sqrt17*n+73*sqrt17+118*n+305)/(16*n*(11*sqrt17+47))"),
    ("mu9", "theta13", "(sqrt17-1)/(4*n*(sqrt17+1))"),
    ("mu10", "theta14", "(26*sqrt17*n+73*sqrt17-118*n-305)/(16*n*(11*sqrt17-47))"),
    ("mu13", "theta15", "25/(81*n)"),
];

/// Coincidences of the constants on the special rows `p = n2, n1, 4/9`.
pub const SPECIALIZATIONS: [(&str, &str, &str); 18] = [
    ("n2", "theta1", "theta3"),
    ("n2", "mu3", "mu6"),
    ("n2", "mu4", "mu7"),
    ("n2", "theta4", "theta6"),
    ("n2", "theta5", "theta12"),
    ("n1", "theta1", "theta10"),
    ("n1", "theta2", "theta11"),
    ("n1", "eta1", "eta2"),
    ("n1", "mu3", "mu9"),
    ("n1", "mu4", "mu10"),
    ("n1", "theta7", "theta16"),
    ("n1", "theta4", "theta13"),
    ("n1", "theta5", "theta14"),
    ("4/9", "theta1", "theta9"),
    ("4/9", "eta1", "eta3"),
    ("4/9", "theta7", "theta8"),
    ("4/9", "mu2", "mu12"),
    ("4/9", "mu3", "mu13"),
];

fn sym_expr(s: &str) -> Sym {
    Expr::parse(s).and_then(|e| e.to_quad()).expect("fixed expression")
}

fn base(r: &RatFunc) -> Sym {
    Quad::from_base(r.clone())
}

/// Sign of a function of `n` alone of the form `A + B/n` on `n >= 1`:
/// positive there iff `A + B > 0` and `A >= 0`. `None` if not of that form.
fn positive_for_n_at_least_one(k: &Sym) -> Option<bool> {
    if [Var::P, Var::Mu, Var::C1].iter().any(|v| sym_contains(k, *v)) {
        return None;
    }
    let kn = k.clone() * base(&RatFunc::var(Var::N));
    let mut a = [QField::zero(), QField::zero()];
    for (part, w) in [(&kn.a, QField::int(1)), (&kn.b, QField::sqrt17())] {
        if !part.is_polynomial() || part.num().degree_in(Var::N) > 1 {
            return None;
        }
        let den = part.den().as_constant()?;
        let c = part.num().coeffs_in(Var::N);
        let get = |i: usize| c.get(i).and_then(|q| q.as_constant()).map(|r| r / &den).unwrap_or_default();
        a[0] = a[0].clone() + QField::from_base(get(1)) * w.clone();
        a[1] = a[1].clone() + QField::from_base(get(0)) * w;
    }
    let at_one = a[0].clone() + a[1].clone();
    Some(at_one.is_positive() && !a[0].is_negative())
}

pub fn verify_identities() -> Result<IdentityReport> {
    let t = ParamTable::get();
    let mut rep = IdentityReport::default();

    for (l, r, closed) in DIFFERENCES {
        let d = t.sym(l).clone() - t.sym(r).clone() - sym_expr(closed);
        rep.push("difference", format!("{l} - {r}"), sym_is_zero(&d), format!("= {closed}"));
    }

    let [s1, s2, s3] = s_symbolic();
    let n = RatFunc::var(Var::N);
    let p = RatFunc::var(Var::P);
    let two_n = &RatFunc::int(2) / &n;
    for (which, q) in [("derived", &reduction()?.quad), ("displayed", &QuadForm::reference())] {
        let delta3 = &(&q.a1 * &q.a3) - &(&(&q.a2 * &q.a2) / &RatFunc::int(4));
        rep.push("bridge", format!("A1 = (2/n) s1 [{which}]"), (&q.a1 - &(&two_n * s1)).is_zero(), "");
        rep.push("bridge", format!("A3 = (2/n) s2 [{which}]"), (&q.a3 - &(&two_n * s2)).is_zero(), "");
        rep.push(
            "bridge",
            format!("A1 A3 - A2^2/4 = (p/n^2) s3 [{which}]"),
            (&delta3 - &(&(&p / &(&n * &n)) * s3)).is_zero(),
            "",
        );
    }
    rep.push("bridge", "s3 = (4-9p) n^2 (mu-mu3)(mu-mu4) is a polynomial", s3.is_polynomial(), "");

    let mu = base(&RatFunc::var(Var::Mu));
    let c1 = base(&RatFunc::var(Var::C1));
    for (m, th, closed) in C1_ELIMINATIONS {
        let lhs = t.sym(m).clone() - mu.clone();
        let k = sym_expr(closed);
        let ok = sym_is_zero(&(lhs - k.clone() * (t.sym(th).clone() - c1.clone())));
        let sign = match m {
            "mu3" => "positive for p != 1".to_string(),
            "mu4" => "sign of 9p - 4 for p > 0".to_string(),
            _ => match positive_for_n_at_least_one(&k) {
                Some(true) => "positive for n >= 1".to_string(),
                _ => "NOT positive for n >= 1".to_string(),
            },
        };
        let passed = ok && !sign.starts_with("NOT");
        rep.push("c1-elimination", format!("{m} - mu = k ({th} - c1)"), passed, format!("k = {closed}, {sign}"));
    }

    for (at, l, r) in SPECIALIZATIONS {
        let value = if at == "4/9" { base(&RatFunc::parse("4/9").expect("constant")) } else { t.sym(at).clone() };
        let lhs = subst(t.sym(l), Var::P, &value);
        let rhs = subst(t.sym(r), Var::P, &value);
        let ok = matches!((&lhs, &rhs), (Some(a), Some(b)) if sym_is_zero(&(a.clone() - b.clone())));
        rep.push("specialization", format!("{l} = {r} at p = {at}"), ok, "");
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let rep = verify_identities().unwrap();
        let failed: Vec<_> = rep.failures().map(|c| c.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(rep.group("difference").count(), 10);
    }

    #[test]
    fn a_wrong_closed_form_fails() {
        let t = ParamTable::get();
        let d = t.sym("mu1").clone() - t.sym("mu3").clone() - sym_expr("(p-1)^2*c1+3*n");
        assert!(!sym_is_zero(&d));
    }

    #[test]
    fn n_only_sign_test() {
        assert_eq!(positive_for_n_at_least_one(&sym_expr("25/(81*n)")), Some(true));
        assert_eq!(positive_for_n_at_least_one(&sym_expr("(1-2*n)/n")), Some(false));
        assert_eq!(positive_for_n_at_least_one(&sym_expr("(3*n-2)/n")), Some(true));
        assert_eq!(positive_for_n_at_least_one(&sym_expr("p/n")), None);
    }
}
