//! Named constants of the decision tables: `n1..n3`, `theta1..theta16`,
//! `mu1..mu13`, `eta1..eta3`, symbolic in `Q(n, p, mu, c1)(sqrt 17)`.

use crate::algebra::{Expr, ParamPoint, QField, Quad, RatFunc, Var};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// A value in `Q(n, p, mu, c1)(sqrt 17)`.
pub type Sym = Quad<RatFunc>;

pub const DEFINITIONS: [(&str, &str); 35] = [
    ("n1", "(9 - sqrt17)/8"),
    ("n2", "(9 + sqrt17)/8"),
    ("n3", "(sqrt17 + 1)/2"),
    ("theta1", "-2*n/(p-1)^2"),
    ("theta2", "2*n^2*p*(9*p-13)/((p-1)^2*(4*n+9*p-4))"),
    ("theta3", "(sqrt17-9)*n"),
    ("theta4", "(n^2*p-n^2-n*mu)/(p-1)^2"),
    ("theta5", "(n^2*(9*p^2-13*p-4)-n*(9*p-4)*mu)/((p-1)^2*(4*n+9*p-4))"),
    ("theta6", "(-4*n*(sqrt17-1)*mu+8*n^2)/(sqrt17+1)"),
    ("theta7", "n*(1-p)"),
    ("theta8", "5*n/9"),
    ("theta9", "-162*n/25"),
    ("theta10", "64*n/(sqrt17-9)"),
    ("theta11", "8*(9*sqrt17+23)*n^2/(-32*n-49+9*sqrt17)"),
    ("theta12", "-(16*(11*sqrt17+47)*n*mu+152*n^2)/(26*sqrt17*n+73*sqrt17+118*n+305)"),
    ("theta13", "-4*n*(mu*sqrt17+2*n+mu)/(sqrt17-1)"),
    ("theta14", "-8*n*(22*mu*sqrt17-19*n-94*mu)/(26*sqrt17*n+73*sqrt17-118*n-305)"),
    ("theta15", "-9/5*n^2-81/25*mu*n"),
    ("theta16", "(sqrt17-1)*n/8"),
    ("mu1", "((p-1)^2*(n-1)*c1 + n^2*(p+1))/n"),
    ("mu2", "((p-1)^2*(n*(p-2)^2-4*p^2+9*p-4)*c1+n^2*(4*p^3-11*p^2+5*p+4))/(n*(4*p^2-9*p+4))"),
    ("mu3", "(n^2*p-p^2*c1-n^2+2*p*c1-c1)/n"),
    ("mu4", "(9*n^2*p^2-4*n*p^2*c1-9*p^3*c1-13*n^2*p+8*n*p*c1+22*p^2*c1-4*n^2-4*n*c1-17*p*c1+4*c1)/(n*(9*p-4))"),
    ("mu5", "-(n*c1*sqrt17-c1*sqrt17+136*n^2+17*n*c1-17*c1)/(4*n*(sqrt17-17))"),
    ("mu6", "-(c1*sqrt17-8*n^2+c1)/(4*n*(sqrt17-1))"),
    ("mu7", "-(26*n*c1*sqrt17+73*c1*sqrt17+152*n^2+118*n*c1+305*c1)/(16*n*(11*sqrt17+47))"),
    ("mu8", "-(n*c1*sqrt17-c1*sqrt17-136*n^2-17*n*c1+17*c1)/(4*n*(sqrt17+17))"),
    ("mu9", "-(c1*sqrt17+8*n^2-c1)/(4*n*(sqrt17+1))"),
    ("mu10", "-(26*n*c1*sqrt17+73*c1*sqrt17-152*n^2-118*n*c1-305*c1)/(16*n*(11*sqrt17-47))"),
    ("mu11", "(117*n^2+25*n*c1-25*c1)/(81*n)"),
    ("mu12", "(7218*n^2+1225*n*c1-400*c1)/(1296*n)"),
    ("mu13", "-(5*(9*n^2+5*c1))/(81*n)"),
    ("eta1", "2*n^2/(p-1)"),
    ("eta2", "-16*n^2/(sqrt17-1)"),
    ("eta3", "-18/5*n^2"),
];

/// The symbolic parameter table.
#[derive(Clone, Debug)]
pub struct ParamTable {
    entries: BTreeMap<&'static str, Sym>,
}

impl ParamTable {
    pub fn get() -> &'static ParamTable {
        static CELL: OnceLock<ParamTable> = OnceLock::new();
        CELL.get_or_init(|| ParamTable {
            entries: DEFINITIONS
                .iter()
                .map(|(k, s)| {
                    let e = Expr::parse(s).expect("definition parses");
                    (*k, e.to_quad().expect("definition is well formed"))
                })
                .collect(),
        })
    }

    pub fn sym(&self, name: &str) -> &Sym {
        self.entries.get(name).unwrap_or_else(|| panic!("unknown parameter {name}"))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    /// Exact value at a point. Fails on a pole, or when the constant
    /// depends on `c1` and the point carries none.
    pub fn eval(&self, name: &str, x: &ParamPoint) -> Result<QField> {
        eval_sym(self.sym(name), x)
    }
}

pub fn sym_contains(s: &Sym, v: Var) -> bool {
    s.a.contains(v) || s.b.contains(v)
}

pub fn eval_sym(s: &Sym, x: &ParamPoint) -> Result<QField> {
    if x.c1.is_none() && sym_contains(s, Var::C1) {
        return Err(Error::InvalidPoint("c1 is required here".into()));
    }
    let vals = x.values();
    let a = s.a.eval_at(&vals)?;
    let b = s.b.eval_at(&vals)?;
    Ok(a + b * QField::sqrt17())
}

/// Substitute `v := by` in a symbolic value. `None` on a pole.
pub fn subst(s: &Sym, v: Var, by: &Sym) -> Option<Sym> {
    let mut vals = Var::ALL.map(|w| Quad::from_base(RatFunc::var(w)));
    vals[v.index()] = by.clone();
    let a = s.a.eval_in(&vals)?;
    let b = s.b.eval_in(&vals)?;
    Some(a + b * Sym::sqrt17())
}

pub fn sym_is_zero(s: &Sym) -> bool {
    use num_traits::Zero;
    s.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: u32, p: &str, mu: &str) -> ParamPoint {
        ParamPoint::new(n, p.parse().unwrap(), mu.parse().unwrap()).unwrap()
    }

    #[test]
    fn worked_example_constants() {
        let t = ParamTable::get();
        let x = pt(2, "11/5", "2");
        assert_eq!(t.eval("theta1", &x).unwrap(), QField::rat(-25, 9));
        assert_eq!(t.eval("theta4", &x).unwrap(), QField::rat(5, 9));
        assert_eq!(t.eval("theta5", &x).unwrap(), QField::rat(-605, 1071));
    }

    #[test]
    fn c1_dependence_is_checked() {
        let t = ParamTable::get();
        let x = pt(2, "11/5", "2");
        assert!(matches!(t.eval("mu3", &x), Err(Error::InvalidPoint(_))));
        let y = x.with_c1(QField::rat(-5, 9));
        assert!(t.eval("mu3", &y).is_ok());
    }

    #[test]
    fn poles_are_reported() {
        let t = ParamTable::get();
        let x = pt(1, "4/9", "1").with_c1(QField::int(-1));
        let e = t.eval("mu4", &x).unwrap_err();
        assert!(e.to_string().contains("9p - 4") || e.to_string().contains("pole"), "{e}");
    }

    #[test]
    fn irrational_rows() {
        let t = ParamTable::get();
        let n1 = t.eval("n1", &pt(1, "1/2", "0")).unwrap();
        assert!(n1 > QField::rat(609, 1000) && n1 < QField::rat(61, 100));
    }
}
