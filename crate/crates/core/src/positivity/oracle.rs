//! Exact decision of `exists c1 <= 0 : s1 >= 0, s2 >= 0, s3 >= 0` with
//! `mu >= n(1-p)`, by intersecting the solution sets in `c1`.

use super::{check_p, s_coeffs_in_c1, ParamTable};
use crate::algebra::{ParamPoint, QField};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

/// Interval endpoint; infinite ends are open by nature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(QField),
    PosInf,
}

impl Bound {
    fn rank(&self) -> u8 {
        match self {
            Bound::NegInf => 0,
            Bound::At(_) => 1,
            Bound::PosInf => 2,
        }
    }

    pub fn value(&self) -> Option<&QField> {
        match self {
            Bound::At(v) => Some(v),
            _ => None,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Bound {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Bound::At(a), Bound::At(b)) => a.cmp(b),
            _ => self.rank().cmp(&o.rank()),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::At(v) => write!(f, "{v}"),
            Bound::PosInf => write!(f, "+inf"),
        }
    }
}

/// Closed interval `[lo, hi]` (closed at finite ends), `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Option<Interval> {
        (lo <= hi && lo != Bound::PosInf && hi != Bound::NegInf).then_some(Interval { lo, hi })
    }

    pub fn contains(&self, x: &QField) -> bool {
        let b = Bound::At(x.clone());
        self.lo <= b && b <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo == Bound::NegInf { "(" } else { "[" };
        let r = if self.hi == Bound::PosInf { ")" } else { "]" };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Finite union of disjoint closed intervals, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalSet {
    pub parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    pub fn all() -> IntervalSet {
        IntervalSet { parts: vec![Interval { lo: Bound::NegInf, hi: Bound::PosInf }] }
    }

    pub fn from_parts(parts: impl IntoIterator<Item = Option<Interval>>) -> IntervalSet {
        let mut v: Vec<Interval> = parts.into_iter().flatten().collect();
        v.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::new();
        for i in v {
            match out.last_mut() {
                Some(last) if i.lo <= last.hi => {
                    if i.hi > last.hi {
                        last.hi = i.hi;
                    }
                }
                _ => out.push(i),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &QField) -> bool {
        self.parts.iter().any(|i| i.contains(x))
    }

    pub fn intersect(&self, o: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::new();
        for a in &self.parts {
            for b in &o.parts {
                let lo = a.lo.clone().max(b.lo.clone());
                let hi = a.hi.clone().min(b.hi.clone());
                parts.push(Interval::new(lo, hi));
            }
        }
        IntervalSet::from_parts(parts)
    }

    /// `{c : a c + b >= 0}`.
    pub fn affine_nonneg(a: &QField, b: &QField) -> IntervalSet {
        if a.is_zero() {
            return if b.is_negative() { IntervalSet::empty() } else { IntervalSet::all() };
        }
        let root = Bound::At(-(b.clone() / a.clone()));
        if a.is_positive() {
            IntervalSet::from_parts([Interval::new(root, Bound::PosInf)])
        } else {
            IntervalSet::from_parts([Interval::new(Bound::NegInf, root)])
        }
    }

    /// `{c : a c^2 + b c + k >= 0}`. Roots must lie in `Q(sqrt 17)`.
    pub fn quadratic_nonneg(a: &QField, b: &QField, k: &QField) -> Result<IntervalSet> {
        if a.is_zero() {
            return Ok(IntervalSet::affine_nonneg(b, k));
        }
        let two_a = QField::int(2) * a.clone();
        let disc = b.clone() * b.clone() - QField::int(4) * a.clone() * k.clone();
        if disc.is_negative() {
            return Ok(if a.is_positive() { IntervalSet::all() } else { IntervalSet::empty() });
        }
        if disc.is_zero() {
            let r = -(b.clone() / two_a);
            return Ok(if a.is_positive() {
                IntervalSet::all()
            } else {
                IntervalSet::from_parts([Interval::new(Bound::At(r.clone()), Bound::At(r))])
            });
        }
        let sq = disc
            .sqrt_exact()
            .ok_or_else(|| Error::Reduction(format!("discriminant {disc} has no square root in Q(sqrt 17)")))?;
        let r1 = (-b.clone() - sq.clone()) / two_a.clone();
        let r2 = (-b.clone() + sq) / two_a;
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        Ok(if a.is_positive() {
            IntervalSet::from_parts([
                Interval::new(Bound::NegInf, Bound::At(lo)),
                Interval::new(Bound::At(hi), Bound::PosInf),
            ])
        } else {
            IntervalSet::from_parts([Interval::new(Bound::At(lo), Bound::At(hi))])
        })
    }

    pub fn nonpositive() -> IntervalSet {
        IntervalSet::from_parts([Interval::new(Bound::NegInf, Bound::At(QField::zero()))])
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let s: Vec<String> = self.parts.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", s.join(" u "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub feasible: bool,
    /// Admissible `c1`, a subset of `(-inf, 0]`.
    pub c1_set: IntervalSet,
}

/// Solution sets in `c1` of the individual conditions, in the order
/// `mu >= theta7`, `c1 <= 0`, `s1 >= 0`, `s2 >= 0`, `s3 >= 0`.
pub fn condition_sets(x: &ParamPoint) -> Result<Vec<(&'static str, IntervalSet)>> {
    check_p(x)?;
    let x = x.without_c1();
    let vals = x.values();
    let theta7 = ParamTable::get().eval("theta7", &x)?;
    let pre = if x.mu >= theta7 { IntervalSet::all() } else { IntervalSet::empty() };
    let coeffs = |k: usize| -> Result<Vec<QField>> { s_coeffs_in_c1(k).iter().map(|c| c.eval_at(&vals)).collect() };
    let get = |v: &[QField], i: usize| v.get(i).cloned().unwrap_or_else(QField::zero);
    let s1 = coeffs(0)?;
    let s2 = coeffs(1)?;
    let s3 = coeffs(2)?;
    Ok(vec![
        ("mu >= theta7", pre),
        ("c1 <= 0", IntervalSet::nonpositive()),
        ("s1 >= 0", IntervalSet::affine_nonneg(&get(&s1, 1), &get(&s1, 0))),
        ("s2 >= 0", IntervalSet::affine_nonneg(&get(&s2, 1), &get(&s2, 0))),
        ("s3 >= 0", IntervalSet::quadratic_nonneg(&get(&s3, 2), &get(&s3, 1), &get(&s3, 0))?),
    ])
}

/// Decide `exists c1` exactly and return the admissible set.
pub fn phi_oracle(x: &ParamPoint) -> Result<OracleVerdict> {
    let mut set = IntervalSet::all();
    for (_, s) in condition_sets(x)? {
        set = set.intersect(&s);
        if set.is_empty() {
            break;
        }
    }
    Ok(OracleVerdict { feasible: !set.is_empty(), c1_set: set })
}

/// A representative `c1` from an admissible set: a point of the rightmost
/// interval, rational whenever the interval has interior.
pub fn pick_c1(set: &IntervalSet) -> Option<QField> {
    let last = set.parts.last()?;
    let hi = last.hi.value().cloned().unwrap_or_else(QField::zero);
    let lo = match &last.lo {
        Bound::At(l) => l.clone(),
        _ => hi.clone() - QField::int(1),
    };
    if lo == hi {
        return Some(hi);
    }
    Some(QField::from_base(QField::simplest_rational_between(&lo, &hi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: u32, p: &str, mu: &str) -> ParamPoint {
        ParamPoint::new(n, p.parse().unwrap(), mu.parse().unwrap()).unwrap()
    }

    #[test]
    fn worked_example_witness_inside() {
        let v = phi_oracle(&pt(2, "11/5", "2")).unwrap();
        assert!(v.feasible);
        assert!(v.c1_set.contains(&QField::rat(-5, 9)));
    }

    #[test]
    fn known_line_point() {
        let v = phi_oracle(&pt(3, "2", "5")).unwrap();
        assert!(v.c1_set.contains(&QField::int(-6)));
        assert_eq!(pick_c1(&v.c1_set), Some(QField::int(-6)));
    }

    #[test]
    fn precondition_failure() {
        let v = phi_oracle(&pt(2, "1/2", "1/2")).unwrap();
        assert!(!v.feasible);
        let v = phi_oracle(&pt(2, "1/3", "1")).unwrap();
        assert!(!v.feasible);
    }

    #[test]
    fn interval_algebra() {
        let a = IntervalSet::quadratic_nonneg(&QField::int(1), &QField::int(0), &QField::int(-4)).unwrap();
        assert_eq!(a.to_string(), "(-inf, -2] u [2, +inf)");
        let b = a.intersect(&IntervalSet::nonpositive());
        assert_eq!(b.to_string(), "(-inf, -2]");
        let c = IntervalSet::quadratic_nonneg(&QField::int(-1), &QField::int(0), &QField::int(17)).unwrap();
        assert!(c.contains(&QField::sqrt17()) && !c.contains(&QField::int(5)));
    }
}
