//! SOS certificates for `A1 m2^2 + A2 m2 m5 + A3 m5^2` by completing the
//! square, together with the reduction's multiplier ledger.

use super::oracle::{condition_sets, phi_oracle, pick_c1, IntervalSet};
use super::{check_p, on_savare_toscani_line, s_values, ParamTable};
use crate::algebra::{ParamPoint, QField};
use crate::error::{Error, Result};
use crate::reduction::{reduction, LedgerEntry};
use num_traits::Zero;

/// `coeff * (m2 * m2_coeff + m5 * m5_coeff)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosTerm {
    pub coeff: QField,
    pub m2: QField,
    pub m5: QField,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// The point, with `c1` set.
    pub point: ParamPoint,
    pub sos_terms: Vec<SosTerm>,
    /// Symbolic multipliers; `("I1", -c1)` is last.
    pub ledger: Vec<LedgerEntry>,
    /// `(A1, A2, A3)` at the point.
    pub quad: [QField; 3],
}

impl Certificate {
    /// `(A1, A2, A3)` rebuilt from the SOS terms.
    pub fn reconstruct(&self) -> [QField; 3] {
        let mut a = [QField::zero(), QField::zero(), QField::zero()];
        for t in &self.sos_terms {
            a[0] = a[0].clone() + t.coeff.clone() * t.m2.clone() * t.m2.clone();
            a[1] = a[1].clone() + QField::int(2) * t.coeff.clone() * t.m2.clone() * t.m5.clone();
            a[2] = a[2].clone() + t.coeff.clone() * t.m5.clone() * t.m5.clone();
        }
        a
    }

    /// Recompute `(A1, A2, A3)` from the reduction at the point and compare
    /// with the SOS terms; also checks all signs.
    pub fn verify(&self) -> Result<bool> {
        let c1 = self.point.c1.clone().ok_or_else(|| Error::InvalidPoint("certificate without c1".into()))?;
        let fresh = reduction()?.quad.eval(&self.point)?;
        Ok(fresh == self.quad
            && self.reconstruct() == fresh
            && self.sos_terms.iter().all(|t| !t.coeff.is_negative())
            && !c1.is_positive())
    }

    /// The ledger multipliers at the point; `None` where a multiplier has a
    /// pole there (the identity itself holds symbolically).
    pub fn ledger_at(&self) -> Vec<(String, Option<QField>)> {
        self.ledger.iter().map(|e| (e.label.clone(), e.multiplier.eval(&self.point).ok())).collect()
    }

    /// Residual coefficient of `m5^2` after completing the square, if any.
    pub fn residual(&self) -> Option<&QField> {
        self.sos_terms.iter().find(|t| t.m2.is_zero()).map(|t| &t.coeff)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibleReport {
    pub point: ParamPoint,
    /// Conditions failing for every admissible `c1` (or at the given `c1`).
    pub violated: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum CertifyOutcome {
    Certified(Certificate),
    Infeasible(InfeasibleReport),
}

/// Complete the square. `None` when the form is not PSD.
pub fn complete_square(a: &[QField; 3]) -> Option<Vec<SosTerm>> {
    let [a1, a2, a3] = a;
    let one = QField::int(1);
    let zero = QField::zero();
    let mut out = Vec::new();
    if a1.is_positive() {
        let cross = a2.clone() / (QField::int(2) * a1.clone());
        out.push(SosTerm { coeff: a1.clone(), m2: one.clone(), m5: cross });
        let rest = a3.clone() - a2.clone() * a2.clone() / (QField::int(4) * a1.clone());
        if rest.is_negative() {
            return None;
        }
        if !rest.is_zero() {
            out.push(SosTerm { coeff: rest, m2: zero, m5: one });
        }
    } else if a1.is_zero() && a2.is_zero() {
        if a3.is_negative() {
            return None;
        }
        if !a3.is_zero() {
            out.push(SosTerm { coeff: a3.clone(), m2: zero, m5: one });
        }
    } else {
        return None;
    }
    Some(out)
}

/// Certify at `x`. With `c1` given it is used as is; otherwise `theta1` on
/// the line `mu = 2 + n(p-1)`, else a point of the oracle's set.
pub fn certify(x: &ParamPoint, c1: Option<QField>) -> Result<CertifyOutcome> {
    check_p(x)?;
    let base = x.without_c1();
    let c1 = match c1.or_else(|| x.c1.clone()) {
        Some(c) => {
            if c.is_positive() {
                return Err(Error::PositiveC1(c.to_string()));
            }
            c
        }
        None => {
            let set = phi_oracle(&base)?.c1_set;
            let theta1 = ParamTable::get().eval("theta1", &base)?;
            if on_savare_toscani_line(&base) && set.contains(&theta1) {
                theta1
            } else {
                match pick_c1(&set) {
                    Some(c) => c,
                    None => return Ok(CertifyOutcome::Infeasible(report_for_all(&base)?)),
                }
            }
        }
    };
    let point = base.with_c1(c1);
    let red = reduction()?;
    let quad = red.quad.eval(&point)?;
    match complete_square(&quad) {
        Some(sos_terms) => {
            Ok(CertifyOutcome::Certified(Certificate { point, sos_terms, ledger: red.multiplier_ledger.clone(), quad }))
        }
        None => Ok(CertifyOutcome::Infeasible(report_at(&point)?)),
    }
}

/// Conditions that fail on their own for every `c1 <= 0`; when each is
/// satisfiable alone, the joint failure is reported.
fn report_for_all(x: &ParamPoint) -> Result<InfeasibleReport> {
    let sets = condition_sets(x)?;
    let nonpos = IntervalSet::nonpositive();
    let mut violated: Vec<String> =
        sets.iter().filter(|(_, s)| s.intersect(&nonpos).is_empty()).map(|(n, _)| n.to_string()).collect();
    if violated.is_empty() {
        violated.push("s1 >= 0, s2 >= 0, s3 >= 0 have no common c1 <= 0".into());
    }
    Ok(InfeasibleReport { point: x.clone(), violated })
}

fn report_at(x: &ParamPoint) -> Result<InfeasibleReport> {
    let s = s_values(x)?;
    let theta7 = ParamTable::get().eval("theta7", x)?;
    let mut violated = Vec::new();
    if x.mu < theta7 {
        violated.push("mu >= theta7".to_string());
    }
    for (name, v) in [("s1 >= 0", &s.s1), ("s2 >= 0", &s.s2), ("s3 >= 0", &s.s3)] {
        if v.is_negative() {
            violated.push(name.to_string());
        }
    }
    if violated.is_empty() {
        violated.push("A1 = 0 with A2 != 0".into());
    }
    Ok(InfeasibleReport { point: x.clone(), violated })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: u32, p: &str, mu: &str) -> ParamPoint {
        ParamPoint::new(n, p.parse().unwrap(), mu.parse().unwrap()).unwrap()
    }

    #[test]
    fn worked_example_certificate() {
        let out = certify(&pt(2, "11/5", "2"), Some(QField::rat(-5, 9))).unwrap();
        let CertifyOutcome::Certified(c) = out else { panic!("expected a certificate") };
        assert_eq!(c.sos_terms[0].coeff, QField::int(8));
        assert_eq!(c.sos_terms[0].m5, QField::rat(344, 400));
        assert_eq!(c.residual(), Some(&QField::rat(22, 625)));
        assert!(c.verify().unwrap());
    }

    #[test]
    fn line_point_has_empty_sos() {
        let out = certify(&pt(3, "2", "5"), Some(QField::int(-6))).unwrap();
        let CertifyOutcome::Certified(c) = out else { panic!("expected a certificate") };
        assert!(c.sos_terms.is_empty() && c.quad.iter().all(|a| a.is_zero()));
        let CertifyOutcome::Certified(d) = certify(&pt(3, "2", "5"), None).unwrap() else { panic!() };
        assert_eq!(d.point.c1, Some(QField::int(-6)));
    }

    #[test]
    fn infeasible_point_is_reported() {
        let out = certify(&pt(2, "1/3", "1"), None).unwrap();
        let CertifyOutcome::Infeasible(r) = out else { panic!("expected a report") };
        assert!(!r.violated.is_empty());
    }

    #[test]
    fn positive_c1_rejected() {
        assert!(matches!(certify(&pt(2, "11/5", "2"), Some(QField::int(1))), Err(Error::PositiveC1(_))));
    }

    #[test]
    fn indefinite_forms_have_no_square() {
        assert!(complete_square(&[QField::int(0), QField::int(1), QField::int(1)]).is_none());
        assert!(complete_square(&[QField::int(1), QField::int(4), QField::int(1)]).is_none());
        assert_eq!(complete_square(&[QField::int(0), QField::int(0), QField::int(0)]), Some(vec![]));
    }
}
