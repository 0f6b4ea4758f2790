//! The closed-form decision table for `Phi(n, p, mu)`. Each cell is
//! `T(i,1) /\ T(i,j)`; rows are selected by comparing `p` against
//! `4/9 < n1 < 13/9 < n2`, and `*` cells never hold.

use super::oracle::{phi_oracle, pick_c1};
use super::{check_p, ParamTable};
use crate::algebra::{ParamPoint, QField};
use crate::error::Result;
use serde::Serialize;

/// A table cell `(row, col)`, one-based, `col` in `2..=4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub row: u8,
    pub col: u8,
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T({},{})", self.row, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableVerdict {
    pub holds: bool,
    pub witnesses: Vec<Cell>,
    pub suggested_c1: Option<QField>,
}

/// The row whose `T(i,1)` holds for this `p`.
pub fn table_row(p: &QField) -> u8 {
    let t = ParamTable::get();
    let x = ParamPoint { n: 1, p: p.clone(), mu: QField::int(0), c1: None };
    let n1 = t.eval("n1", &x).expect("constant");
    let n2 = t.eval("n2", &x).expect("constant");
    let r13_9 = QField::rat(13, 9);
    let r4_9 = QField::rat(4, 9);
    if *p > n2 {
        1
    } else if *p == n2 {
        2
    } else if *p > r13_9 {
        3
    } else if *p > n1 {
        4
    } else if *p == n1 {
        5
    } else if *p > r4_9 {
        6
    } else if *p == r4_9 {
        7
    } else {
        8
    }
}

/// Every satisfied cell at a point without `c1`.
pub fn table_witnesses(x: &ParamPoint) -> Result<Vec<Cell>> {
    check_p(x)?;
    let x = x.without_c1();
    let t = ParamTable::get();
    let th = |k: u8| t.eval(&format!("theta{k}"), &x);
    let n = QField::int(x.n as i64);
    let one = QField::int(1);
    let p = &x.p;
    let mu = &x.mu;
    let zero = QField::int(0);
    let floor_p = one.clone() - one.clone() / n.clone();
    let phi1 = *p >= floor_p;
    let phi2 = *mu == QField::int(2) + n.clone() * (p.clone() - one.clone());
    let phi3 = *p > floor_p;
    let n_is_1 = x.n == 1;
    let row = table_row(p);
    let mut w = Vec::new();
    let mut cell = |col: u8, holds: bool| {
        if holds {
            w.push(Cell { row, col });
        }
    };
    match row {
        1 | 3 => {
            cell(2, th(4)? > th(1)? && th(5)? <= zero);
            cell(4, phi1 && phi2);
        }
        2 => {
            cell(2, th(6)? > th(3)? && th(12)? <= zero);
            cell(4, phi1 && phi2);
        }
        4 | 6 => {
            cell(2, phi3 && th(4)? > th(1)? && th(5)? <= th(2)?);
            cell(3, phi3 && *mu >= th(7)? && th(4)? > th(2)?);
            cell(4, phi1 && phi2);
        }
        5 => {
            let n3 = t.eval("n3", &x)?;
            cell(2, n < n3 && th(13)? > th(10)? && th(14)? <= th(11)?);
            cell(3, n < n3 && th(13)? > th(11)? && *mu >= th(16)?);
            cell(4, phi1 && phi2);
        }
        7 => {
            cell(2, n_is_1 && th(15)? > th(9)? && *mu >= th(8)?);
            cell(4, n_is_1 && -p.clone() <= mu.clone() - one.clone() && mu.clone() - one.clone() <= *p);
        }
        _ => {
            cell(2, n_is_1 && *mu >= th(7)? && th(4)? > th(1)?);
            cell(3, n_is_1 && th(5)? < th(1)? && *mu >= th(7)?);
            cell(4, n_is_1 && -p.clone() <= mu.clone() - one.clone() && mu.clone() - one.clone() <= *p);
        }
    }
    Ok(w)
}

/// Evaluate the table. A column-4 witness suggests `c1 = theta1`; any
/// other witness takes a point of the oracle's admissible set.
pub fn phi_table(x: &ParamPoint) -> Result<TableVerdict> {
    let witnesses = table_witnesses(x)?;
    let x = x.without_c1();
    let suggested_c1 = if witnesses.iter().any(|c| c.col == 4) {
        Some(ParamTable::get().eval("theta1", &x)?)
    } else if !witnesses.is_empty() {
        pick_c1(&phi_oracle(&x)?.c1_set)
    } else {
        None
    };
    Ok(TableVerdict { holds: !witnesses.is_empty(), witnesses, suggested_c1 })
}
