//! Parameter grids, the table-versus-oracle sweep and the certificate sweep.

use super::certify::{certify, CertifyOutcome};
use super::oracle::{phi_oracle, IntervalSet};
use super::table::{table_row, table_witnesses, Cell};
use super::ParamTable;
use crate::algebra::{ParamPoint, QField};
use crate::error::Result;
use rayon::prelude::*;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Density {
    Coarse,
    #[default]
    Default,
    Fine,
}

impl FromStr for Density {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "coarse" => Ok(Density::Coarse),
            "default" => Ok(Density::Default),
            "fine" => Ok(Density::Fine),
            _ => Err(format!("unknown grid density {s:?}")),
        }
    }
}

/// `n` in `1..=n_max`; `p` in `k/p_den` for `k = 1..=4 p_den`, `p != 1`, plus
/// `4/9, n1, n2, 13/9`; `mu` from `-2` to `6` in steps of `1/mu_den`.
fn grid(n_max: u32, p_den: i64, mu_den: i64) -> Vec<ParamPoint> {
    let t = ParamTable::get();
    let probe = ParamPoint { n: 1, p: QField::int(2), mu: QField::int(0), c1: None };
    let mut ps: Vec<QField> = (1..=4 * p_den).filter(|k| *k != p_den).map(|k| QField::rat(k, p_den)).collect();
    ps.push(QField::rat(4, 9));
    ps.push(t.eval("n1", &probe).expect("constant"));
    ps.push(t.eval("n2", &probe).expect("constant"));
    ps.push(QField::rat(13, 9));
    ps.dedup();
    let mus: Vec<QField> = (-2 * mu_den..=6 * mu_den).map(|k| QField::rat(k, mu_den)).collect();
    let mut out = Vec::with_capacity(n_max as usize * ps.len() * mus.len());
    for n in 1..=n_max {
        for p in &ps {
            for mu in &mus {
                out.push(ParamPoint { n, p: p.clone(), mu: mu.clone(), c1: None });
            }
        }
    }
    out
}

pub fn default_grid(d: Density) -> Vec<ParamPoint> {
    match d {
        Density::Coarse => grid(3, 5, 1),
        Density::Default => grid(5, 10, 4),
        Density::Fine => grid(6, 20, 8),
    }
}

/// A point where the table and the oracle disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub point: ParamPoint,
    pub row: u8,
    pub table_cells: Vec<Cell>,
    pub oracle_set: IntervalSet,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridComparison {
    pub points: usize,
    pub feasible: usize,
    pub mismatches: Vec<Mismatch>,
}

impl GridComparison {
    /// Table against oracle at each point, in grid order.
    pub fn run(points: &[ParamPoint]) -> GridComparison {
        let results: Vec<(bool, Option<Mismatch>)> = points.par_iter().map(compare_point).collect();
        GridComparison {
            points: points.len(),
            feasible: results.iter().filter(|r| r.0).count(),
            mismatches: results.into_iter().filter_map(|r| r.1).collect(),
        }
    }
}

fn compare_point(x: &ParamPoint) -> (bool, Option<Mismatch>) {
    let row = table_row(&x.p);
    let mismatch = |cells: Vec<Cell>, set: IntervalSet, detail: String| Mismatch {
        point: x.clone(),
        row,
        table_cells: cells,
        oracle_set: set,
        detail,
    };
    match (table_witnesses(x), phi_oracle(x)) {
        (Ok(cells), Ok(v)) => {
            let feasible = v.feasible;
            if cells.is_empty() == feasible {
                let detail = if feasible {
                    format!("no cell of row {row} holds but the oracle is feasible")
                } else {
                    "table holds but the oracle is infeasible".to_string()
                };
                (feasible, Some(mismatch(cells, v.c1_set, detail)))
            } else {
                (feasible, None)
            }
        }
        (t, o) => {
            let detail = format!("evaluation error: table {:?}, oracle {:?}", t.err(), o.as_ref().err());
            (false, Some(mismatch(Vec::new(), IntervalSet::empty(), detail)))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepResult {
    pub checked: usize,
    pub failures: Vec<(ParamPoint, String)>,
}

/// Certify every oracle-feasible point and verify each certificate.
pub fn certificate_sweep(points: &[ParamPoint]) -> Result<SweepResult> {
    let outcomes: Vec<Option<std::result::Result<(), String>>> = points
        .par_iter()
        .map(|x| {
            let feasible = match phi_oracle(x) {
                Ok(v) => v.feasible,
                Err(e) => return Some(Err(e.to_string())),
            };
            if !feasible {
                return None;
            }
            Some(match certify(x, None) {
                Ok(CertifyOutcome::Certified(c)) => match c.verify() {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("certificate does not verify".into()),
                    Err(e) => Err(e.to_string()),
                },
                Ok(CertifyOutcome::Infeasible(r)) => {
                    Err(format!("feasible point reported infeasible: {:?}", r.violated))
                }
                Err(e) => Err(e.to_string()),
            })
        })
        .collect();
    let mut res = SweepResult::default();
    for (x, o) in points.iter().zip(outcomes) {
        match o {
            None => {}
            Some(Ok(())) => res.checked += 1,
            Some(Err(msg)) => {
                res.checked += 1;
                res.failures.push((x.clone(), msg));
            }
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(default_grid(Density::Default).len(), 5 * 43 * 33);
        assert_eq!(default_grid(Density::Coarse).len(), 3 * 23 * 9);
    }

    #[test]
    fn coarse_grid_agrees() {
        let pts = default_grid(Density::Coarse);
        let cmp = GridComparison::run(&pts);
        assert!(cmp.mismatches.is_empty(), "{:?}", cmp.mismatches.first());
        assert!(cmp.feasible > 0);
    }
}
