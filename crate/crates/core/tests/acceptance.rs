//! One PASS/FAIL line per acceptance criterion, each with its timing.

use crep_core::algebra::{ParamPoint, QField};
use crep_core::positivity::{
    certificate_sweep, certify, default_grid, on_savare_toscani_line, phi_table, table_row, verify_identities,
    CertifyOutcome, Density, GridComparison, ParamTable,
};
use crep_core::reduction::{reduction, savare_toscani_check};
use crep_core::selftest::{check_constraints, check_reduction, check_split, check_target, line_zeroes_quad};
use crep_core::Result;
use std::time::{Duration, Instant};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn c1_constraints() -> Result<Outcome> {
    let (ok, detail) = check_constraints()?;
    outcome(ok, detail)
}

fn c2_split() -> Result<Outcome> {
    let (ok, detail) = check_split()?;
    outcome(ok, detail)
}

fn c3_target() -> Result<Outcome> {
    let (ok, detail) = check_target(false)?;
    outcome(ok, detail)
}

fn c4_reduction() -> Result<Outcome> {
    let (ok, detail) = check_reduction()?;
    outcome(ok, detail)
}

fn identity_groups(groups: &[&str]) -> Result<Outcome> {
    let rep = verify_identities()?;
    let checks: Vec<_> = rep.checks.iter().filter(|c| groups.contains(&c.group)).collect();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    outcome(!checks.is_empty() && failed.is_empty(), format!("{} identities, failed: {failed:?}", checks.len()))
}

fn c5_bridge() -> Result<Outcome> {
    identity_groups(&["bridge"])
}

fn c6_identities() -> Result<Outcome> {
    identity_groups(&["difference", "c1-elimination", "specialization"])
}

fn c7_worked_example() -> Result<Outcome> {
    let x = ParamPoint::new(2, QField::rat(11, 5), QField::int(2))?.with_c1(QField::rat(-5, 9));
    let p7 = reduction()?.p7.eval(&x)?;
    let CertifyOutcome::Certified(cert) = certify(&x, None)? else {
        return outcome(false, "worked example reported infeasible");
    };
    let [a1, a2, a3] = cert.quad.clone();
    let det = QField::int(4) * a1.clone() * a3 - a2.clone() * a2;
    let residual = cert.residual().cloned().unwrap_or_else(|| QField::int(0));
    let ok = a1 == QField::int(8)
        && residual == QField::rat(22, 625)
        && p7 == QField::rat(172, 25)
        && det == QField::rat(704, 625)
        && cert.verify()?;
    outcome(ok, format!("A1 = {a1}, residual = {residual}, p7 = {p7}, 4A1A3 - A2^2 = {det}"))
}

fn c8_line_family() -> Result<Outcome> {
    let symbolic = savare_toscani_check()? && line_zeroes_quad()?;
    let mut checked = 0;
    let mut bad = Vec::new();
    for x in default_grid(Density::Default) {
        let n = QField::int(x.n as i64);
        if !on_savare_toscani_line(&x) || x.p < QField::int(1) - QField::int(1) / n {
            continue;
        }
        checked += 1;
        let v = phi_table(&x)?;
        let theta1 = ParamTable::get().eval("theta1", &x)?;
        let col4 = v.witnesses.iter().any(|c| c.col == 4);
        let zero_form = match certify(&x, Some(theta1.clone()))? {
            CertifyOutcome::Certified(c) => c.sos_terms.is_empty(),
            CertifyOutcome::Infeasible(_) => false,
        };
        if !(col4 && v.suggested_c1.as_ref() == Some(&theta1) && zero_form) {
            bad.push(x.to_string());
        }
    }
    outcome(
        symbolic && checked > 0 && bad.is_empty(),
        format!("symbolic zero: {symbolic}, {checked} grid points on the line, failures: {bad:?}"),
    )
}

fn c9_equivalence() -> Result<Outcome> {
    let pts = default_grid(Density::Default);
    let rows: std::collections::BTreeSet<u8> = pts.iter().map(|x| table_row(&x.p)).collect();
    let cmp = GridComparison::run(&pts);
    let mut detail =
        format!("{} points, rows {rows:?}, {} feasible, {} mismatches", cmp.points, cmp.feasible, cmp.mismatches.len());
    for m in cmp.mismatches.iter().take(5) {
        detail.push_str(&format!("; {} row {} cells {:?} oracle {}", m.point, m.row, m.table_cells, m.oracle_set));
    }
    outcome(cmp.points >= 5000 && rows.len() == 8 && cmp.mismatches.is_empty(), detail)
}

fn c10_certificates() -> Result<Outcome> {
    let sw = certificate_sweep(&default_grid(Density::Default))?;
    let first = sw.failures.first().map(|(x, m)| format!("; first failure at {x}: {m}")).unwrap_or_default();
    outcome(
        sw.checked > 0 && sw.failures.is_empty(),
        format!("{} certificates, {} failures{first}", sw.checked, sw.failures.len()),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>, Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        ("constraint reproduction", c1_constraints, Duration::from_secs(5)),
        ("gaussian split", c2_split, Duration::from_secs(5)),
        ("master derivation identity", c3_target, Duration::from_secs(5)),
        ("reduction agreement", c4_reduction, Duration::from_secs(10)),
        ("linear-algebra bridge", c5_bridge, Duration::from_secs(2)),
        ("identity suite", c6_identities, Duration::from_secs(5)),
        ("worked example", c7_worked_example, Duration::from_secs(1)),
        ("line family", c8_line_family, Duration::from_secs(5)),
        ("table-oracle equivalence", c9_equivalence, Duration::from_secs(60)),
        ("certificate sweep", c10_certificates, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let took = t.elapsed();
        let (ok, detail) = match res {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let timing = if took <= *budget { "" } else { " (over budget)" };
        println!(
            "criterion {:>2} {}: {name}: {detail} [{:.2}s of {}s{timing}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
