//! Parametric positivity of `A1 m2^2 + A2 m2 m5 + A3 m5^2`: the sign
//! conditions `s1, s2, s3`, the closed-form table for `Phi(n, p, mu)`, an
//! exact feasibility oracle over `c1`, and SOS certificates.

mod certify;
mod grid;
mod identities;
mod oracle;
mod params;
mod table;

pub use certify::{certify, complete_square, Certificate, CertifyOutcome, InfeasibleReport, SosTerm};
pub use grid::{certificate_sweep, default_grid, Density, GridComparison, Mismatch, SweepResult};
pub use identities::{verify_identities, IdentityCheck, IdentityReport};
pub use oracle::{condition_sets, phi_oracle, pick_c1, Bound, Interval, IntervalSet, OracleVerdict};
pub use params::{eval_sym, subst, sym_contains, ParamTable, Sym, DEFINITIONS};
pub use table::{phi_table, table_row, table_witnesses, Cell, TableVerdict};

use crate::algebra::{ParamPoint, QField, RatFunc, Var};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::sync::OnceLock;

/// `s1, s2, s3` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SValues {
    pub s1: QField,
    pub s2: QField,
    pub s3: QField,
}

pub const S1: &str = "(p-1)^2*(n-1)*c1+n^2*(p+1)-n*mu";
pub const S2: &str = "(p-1)^2*(n*(p-2)^2-4*p^2+9*p-4)*c1+n^2*(4*p^3-11*p^2+5*p+4)-(4*p^2-9*p+4)*n*mu";

/// Symbolic `s1, s2, s3`; `s3` is `(4-9p) n^2 (mu - mu3)(mu - mu4)`.
pub fn s_symbolic() -> &'static [RatFunc; 3] {
    static CELL: OnceLock<[RatFunc; 3]> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = ParamTable::get();
        let mu = RatFunc::var(Var::Mu);
        let s3 = RatFunc::parse("(4-9*p)*n^2").expect("fixed expression")
            * (&mu - &t.sym("mu3").a)
            * (&mu - &t.sym("mu4").a);
        [RatFunc::parse(S1).expect("fixed expression"), RatFunc::parse(S2).expect("fixed expression"), s3]
    })
}

/// Coefficients of `s_k` as a polynomial in `c1`, lowest degree first.
pub fn s_coeffs_in_c1(k: usize) -> Vec<RatFunc> {
    let s = &s_symbolic()[k];
    debug_assert!(!s.den().contains(Var::C1));
    s.num()
        .coeffs_in(Var::C1)
        .into_iter()
        .map(|c| RatFunc::make(c, s.den().clone()).expect("nonzero denominator"))
        .collect()
}

pub fn s_values(x: &ParamPoint) -> Result<SValues> {
    if x.c1.is_none() {
        return Err(Error::InvalidPoint("c1 is required here".into()));
    }
    let v = x.values();
    let [a, b, c] = s_symbolic();
    Ok(SValues { s1: a.eval_at(&v)?, s2: b.eval_at(&v)?, s3: c.eval_at(&v)? })
}

/// `A1 >= 0`, `A3 >= 0` and `4 A1 A3 - A2^2 >= 0`.
pub fn quad_psd(a1: &QField, a2: &QField, a3: &QField) -> bool {
    let four = QField::int(4);
    !a1.is_negative() && !a3.is_negative() && !(four * a1.clone() * a3.clone() - a2.clone() * a2.clone()).is_negative()
}

/// `mu = 2 + n(p-1)`.
pub fn on_savare_toscani_line(x: &ParamPoint) -> bool {
    let n = QField::int(x.n as i64);
    (x.mu.clone() - QField::int(2) - n * (x.p.clone() - QField::int(1))).is_zero()
}

/// Positive `p`, distinct from one.
pub(crate) fn check_p(x: &ParamPoint) -> Result<()> {
    if x.p == QField::int(1) {
        return Err(Error::PEqualsOne);
    }
    if !x.p.is_positive() {
        return Err(Error::InvalidPoint("p must be positive".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: u32, p: &str, mu: &str, c1: &str) -> ParamPoint {
        ParamPoint::new(n, p.parse().unwrap(), mu.parse().unwrap()).unwrap().with_c1(c1.parse().unwrap())
    }

    #[test]
    fn worked_example_s1() {
        let s = s_values(&pt(2, "11/5", "2", "-5/9")).unwrap();
        assert_eq!(s.s1, QField::int(8));
    }

    #[test]
    fn s_vanish_on_the_known_line() {
        let s = s_values(&pt(3, "2", "5", "-6")).unwrap();
        assert!(s.s1.is_zero() && s.s2.is_zero() && s.s3.is_zero());
    }

    #[test]
    fn s3_is_polynomial() {
        assert!(s_symbolic()[2].is_polynomial());
        assert_eq!(s_coeffs_in_c1(2).len(), 3);
    }

    #[test]
    fn psd_examples() {
        assert!(quad_psd(&QField::int(1), &QField::int(0), &QField::int(1)));
        assert!(!quad_psd(&QField::int(0), &QField::int(1), &QField::int(1)));
        assert!(quad_psd(&QField::int(8), &QField::rat(344, 25), &QField::rat(744, 125)));
    }
}
