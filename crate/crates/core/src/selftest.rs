//! The self-test suite: every exact check of the pipeline in order, with
//! failures collected as findings instead of errors.

use crate::algebra::{QField, RatFunc, Var};
use crate::constraints::{
    gaussian_split, generate_all_constraints, generate_ibp, monic, reference_constraints, reference_nonquadratic,
    reference_quadratic, reference_seed, same_span, Constraint,
};
use crate::diffform::{DiffForm, QuadMonomial};
use crate::error::Result;
use crate::positivity::{certificate_sweep, default_grid, verify_identities, Density, GridComparison};
use crate::reduction::{
    build_T_ab, derive_T_ab, reduction, reference_path_residual, savare_toscani_check, QuadForm, P7,
};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    IdentityFailure,
    TableOracleMismatch,
    CertificateFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub location: String,
    pub detail: String,
}

/// One stage of the suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub stages: Vec<Stage>,
    pub findings: Vec<Finding>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub stages: usize,
    pub stages_passed: usize,
    pub identity_failures: usize,
    pub table_oracle_mismatches: usize,
    pub certificate_failures: usize,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn summary(&self) -> Summary {
        let count = |k| self.findings.iter().filter(|f| f.kind == k).count();
        Summary {
            stages: self.stages.len(),
            stages_passed: self.stages.iter().filter(|s| s.passed).count(),
            identity_failures: count(FindingKind::IdentityFailure),
            table_oracle_mismatches: count(FindingKind::TableOracleMismatch),
            certificate_failures: count(FindingKind::CertificateFailure),
        }
    }

    fn stage(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        if !passed {
            self.findings.push(Finding {
                kind: FindingKind::IdentityFailure,
                location: name.to_string(),
                detail: detail.clone(),
            });
        }
        self.stages.push(Stage { name: name.to_string(), passed, detail });
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SelftestOptions {
    pub density: Density,
    /// Perturb one coefficient of the hardcoded target before comparing it
    /// with the derived one; the run must then report a finding.
    pub perturb_target: bool,
}

/// Exact spot checks of the number types.
pub fn check_algebra() -> (bool, String) {
    let x = QField::new("3".parse().unwrap(), "-1/2".parse().unwrap());
    let norm_ok = &x * &x.conj() == QField::from_base(x.norm());
    let sq = &x * &x;
    let sqrt_ok = sq.sqrt_exact().map(|r| r == x || r == -x.clone()).unwrap_or(false);
    let f = RatFunc::parse("(n*p - mu)/(p - 1)^2").unwrap();
    let inv_ok = (&f * &f.recip().unwrap()).is_one();
    let s17 = QField::sqrt17();
    let between = QField::from_base(QField::simplest_rational_between(&QField::int(4), &s17));
    let cf_ok = between == QField::rat(37, 9) && QField::int(4) < between && between < s17;
    let ok = norm_ok && sqrt_ok && inv_ok && cf_ok;
    (ok, format!("norm {norm_ok}, sqrt {sqrt_ok}, inverse {inv_ok}, rounding {cf_ok}"))
}

/// Generated and listed constraints span the same space, and each listed
/// seed regenerates its form up to normalization.
pub fn check_constraints() -> Result<(bool, String)> {
    let cs = generate_all_constraints()?;
    let reference = reference_constraints();
    let forms = |v: &[Constraint]| v.iter().map(|c| c.form.clone()).collect::<Vec<_>>();
    let span = same_span(&forms(&cs.equational), &forms(&reference));
    let mut regenerated = 0;
    for (i, r) in reference.iter().enumerate() {
        if let Some((seed, peel, axis)) = reference_seed(i + 1) {
            if generate_ibp(&seed, peel, axis).map(|g| monic(&g) == monic(&r.form)).unwrap_or(false) {
                regenerated += 1;
            }
        }
    }
    let ok = span && regenerated == reference.len();
    Ok((
        ok,
        format!(
            "{} generated, spans equal: {span}, seeds regenerating: {regenerated}/{}",
            cs.equational.len(),
            reference.len()
        ),
    ))
}

/// 9 quadratic and 13 non-quadratic rows, with the listed spans.
pub fn check_split() -> Result<(bool, String)> {
    let cs = generate_all_constraints()?;
    let split = gaussian_split(&cs.equational);
    let forms = |v: &[Constraint]| v.iter().map(|c| c.form.clone()).collect::<Vec<_>>();
    let (q, nq) = (forms(&split.quadratic), forms(&split.nonquadratic));
    let (rq, rn) = (forms(&reference_quadratic()), forms(&reference_nonquadratic()));
    let q_span = same_span(&q, &rq);
    let all: Vec<DiffForm> = q.iter().chain(&nq).cloned().collect();
    let rall: Vec<DiffForm> = rq.iter().chain(&rn).cloned().collect();
    let all_span = same_span(&all, &rall);
    let ok = q.len() == 9 && nq.len() == 13 && q_span && all_span;
    Ok((
        ok,
        format!(
            "{} quadratic, {} non-quadratic, quadratic spans equal: {q_span}, full spans equal: {all_span}",
            q.len(),
            nq.len()
        ),
    ))
}

pub fn check_target(perturb: bool) -> Result<(bool, String)> {
    let mut built = build_T_ab().form;
    if perturb {
        built = &built + &DiffForm::monomial(QuadMonomial::product(4, 6), RatFunc::one());
    }
    let diff = &derive_T_ab()?.form - &built;
    Ok((diff.is_zero(), if diff.is_zero() { "difference is zero".into() } else { format!("difference {diff}") }))
}

pub fn check_reduction() -> Result<(bool, String)> {
    let r = reduction()?;
    let cs = generate_all_constraints()?;
    let p7_ok = r.p7 == RatFunc::parse(P7)?;
    let quad_ok = r.quad == QuadForm::reference();
    let path_ok = reference_path_residual().is_zero();
    let ledger_ok = r.ledger_residual(&cs.equational).is_zero();
    let ok = r.agrees_with_reference && p7_ok && quad_ok && path_ok && ledger_ok;
    Ok((
        ok,
        format!(
            "L_hat in quadratic span: {}, p7: {p7_ok}, A1..A3: {quad_ok}, displayed path: {path_ok}, ledger replay: {ledger_ok}",
            r.agrees_with_reference
        ),
    ))
}

pub fn run_selftest(opts: SelftestOptions) -> Report {
    let mut rep = Report::default();
    let run = |rep: &mut Report, name: &str, f: &dyn Fn() -> Result<(bool, String)>| match f() {
        Ok((ok, detail)) => rep.stage(name, ok, detail),
        Err(e) => rep.stage(name, false, format!("error: {e}")),
    };
    run(&mut rep, "algebra", &|| Ok(check_algebra()));
    run(&mut rep, "derive_T_ab = build_T_ab", &|| check_target(opts.perturb_target));
    run(&mut rep, "constraint reproduction", &check_constraints);
    run(&mut rep, "gaussian split", &check_split);
    run(&mut rep, "reduction agreement", &check_reduction);

    match verify_identities() {
        Ok(ids) => {
            let failed: Vec<_> = ids.failures().cloned().collect();
            rep.stages.push(Stage {
                name: "identities".into(),
                passed: failed.is_empty(),
                detail: format!("{} checks, {} failed", ids.checks.len(), failed.len()),
            });
            for c in failed {
                rep.findings.push(Finding {
                    kind: FindingKind::IdentityFailure,
                    location: format!("{}: {}", c.group, c.name),
                    detail: c.detail,
                });
            }
        }
        Err(e) => rep.stage("identities", false, format!("error: {e}")),
    }
    run(&mut rep, "savare-toscani", &|| Ok((savare_toscani_check()?, "L_hat vanishes on the line".into())));

    let points = default_grid(opts.density);
    let cmp = GridComparison::run(&points);
    rep.stages.push(Stage {
        name: "table vs oracle".into(),
        passed: cmp.mismatches.is_empty(),
        detail: format!("{} points, {} feasible, {} mismatches", cmp.points, cmp.feasible, cmp.mismatches.len()),
    });
    for m in cmp.mismatches {
        let cells: Vec<String> = m.table_cells.iter().map(|c| c.to_string()).collect();
        rep.findings.push(Finding {
            kind: FindingKind::TableOracleMismatch,
            location: format!("{} row {} cells [{}]", m.point, m.row, cells.join(", ")),
            detail: format!("{}; oracle c1 set {}", m.detail, m.oracle_set),
        });
    }

    match certificate_sweep(&points) {
        Ok(sw) => {
            rep.stages.push(Stage {
                name: "certificate sweep".into(),
                passed: sw.failures.is_empty(),
                detail: format!("{} certificates, {} failures", sw.checked, sw.failures.len()),
            });
            for (x, msg) in sw.failures {
                rep.findings.push(Finding {
                    kind: FindingKind::CertificateFailure,
                    location: x.to_string(),
                    detail: msg,
                });
            }
        }
        Err(e) => {
            rep.stages.push(Stage { name: "certificate sweep".into(), passed: false, detail: e.to_string() });
            rep.findings.push(Finding {
                kind: FindingKind::CertificateFailure,
                location: "sweep".into(),
                detail: e.to_string(),
            });
        }
    }
    rep
}

/// Symbolic check used by the line family: `mu = 2 + n(p-1)` and
/// `c1 = theta1` zero the reduced form.
pub fn line_zeroes_quad() -> Result<bool> {
    let q = &reduction()?.quad;
    let s = q
        .substitute(Var::Mu, &RatFunc::parse("2 + n*(p-1)")?)?
        .substitute(Var::C1, &RatFunc::parse("-2*n/(p-1)^2")?)?;
    Ok(s.a1.is_zero() && s.a2.is_zero() && s.a3.is_zero())
}
