//! Text, JSON and LaTeX renderings of each command's result.

use crate::Format;
use crep_core::algebra::{ParamPoint, QField};
use crep_core::constraints::{Constraint, ConstraintSet};
use crep_core::positivity::{
    default_grid, phi_table, table_row, Bound, Certificate, Density, InfeasibleReport, IntervalSet, OracleVerdict,
    TableVerdict,
};
use crep_core::reduction::ReductionResult;
use crep_core::selftest::Report;
use crep_core::Result;
use serde_json::{json, Value};
use std::fmt::Write;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

/// `a/b+c/d*sqrt(17)` in LaTeX.
pub fn qfield_latex(q: &QField) -> String {
    let s = q.to_string();
    let frac = |t: &str| -> String {
        let (sign, body) = t.strip_prefix('-').map(|b| ("-", b)).unwrap_or(("", t));
        match body.split_once('/') {
            Some((a, b)) => format!("{sign}\\frac{{{a}}}{{{b}}}"),
            None => format!("{sign}{body}"),
        }
    };
    match s.find("sqrt(17)") {
        None => frac(&s),
        Some(_) => {
            let head = s.trim_end_matches("sqrt(17)").trim_end_matches('*');
            let split = head.rfind(['+', '-']).filter(|i| *i > 0 && !head[..*i].ends_with('/'));
            let (a, b) = match split {
                Some(i) => (&head[..i], &head[i..]),
                None => ("", head),
            };
            let b = b.strip_prefix('+').unwrap_or(b);
            let b = match b {
                "" => String::new(),
                "-" => "-".to_string(),
                b => frac(b),
            };
            let sep = if a.is_empty() || b.starts_with('-') { "" } else { "+" };
            format!("{}{sep}{b}\\sqrt{{17}}", if a.is_empty() { String::new() } else { frac(a) })
        }
    }
}

/// `R3` to `R_{3,a,b}`, `Rhat7` to `\widehat{R}_{7}`, `I1` to `I_{1,a,b}`.
pub fn label_latex(label: &str) -> String {
    let split = label.find(|c: char| c.is_ascii_digit()).unwrap_or(label.len());
    let (head, idx) = label.split_at(split);
    match head {
        "R" | "G" | "I" => format!("{head}_{{{idx},a,b}}"),
        "Rhat" => format!("\\widehat{{R}}_{{{idx}}}"),
        "Rtilde" => format!("\\widetilde{{R}}_{{{idx}}}"),
        _ => format!("{head}_{{{idx}}}"),
    }
}

fn constraint_json(c: &Constraint) -> Value {
    json!({ "label": c.label, "kind": c.kind, "form": c.form.to_string(), "terms": c.form })
}

pub fn constraints(cs: &ConstraintSet, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(&json!({
            "equational": cs.equational.iter().map(constraint_json).collect::<Vec<_>>(),
            "inequality": cs.inequality.iter().map(constraint_json).collect::<Vec<_>>(),
        })),
        Format::Latex => {
            let mut s = String::new();
            for c in &cs.equational {
                let _ = writeln!(s, "${}={},$\n", label_latex(&c.label), c.form.to_latex());
            }
            for c in &cs.inequality {
                let _ = writeln!(s, "${}={}\\ge 0.$\n", label_latex(&c.label), c.form.to_latex());
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in cs.equational.iter().chain(&cs.inequality) {
                let rel = if c.kind == crep_core::constraints::ConstraintKind::Equational { "= 0" } else { ">= 0" };
                let _ = writeln!(s, "{}: {} {rel}", c.label, c.form);
            }
            s
        }
    }
}

pub fn reduction(r: &ReductionResult, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(&json!({
            "Lhat": r.lhat.to_string(),
            "p7": r.p7.to_string(),
            "A1": r.quad.a1.to_string(),
            "A2": r.quad.a2.to_string(),
            "A3": r.quad.a3.to_string(),
            "rank": r.rank,
            "agrees_with_reference": r.agrees_with_reference,
            "ledger": r.multiplier_ledger.iter()
                .map(|e| json!({ "label": e.label, "multiplier": e.multiplier.to_string() }))
                .collect::<Vec<_>>(),
        })),
        Format::Latex => {
            let mut s = String::new();
            let _ = writeln!(s, "\\begin{{align*}}");
            let _ = writeln!(s, "\\widehat{{L}}_{{a,b}} &= {} \\\\", r.lhat.to_latex());
            let _ = writeln!(s, "p_7 &= {} \\\\", r.p7.to_latex());
            let _ = writeln!(s, "A_1 &= {} \\\\", r.quad.a1.to_latex());
            let _ = writeln!(s, "A_2 &= {} \\\\", r.quad.a2.to_latex());
            let _ = writeln!(s, "A_3 &= {}", r.quad.a3.to_latex());
            let _ = writeln!(s, "\\end{{align*}}");
            let _ = writeln!(s, "\\begin{{align*}}");
            let n = r.multiplier_ledger.len();
            for (i, e) in r.multiplier_ledger.iter().enumerate() {
                let end = if i + 1 < n { " \\\\" } else { "" };
                let _ = writeln!(s, "e({}) &= {}{end}", label_latex(&e.label), e.multiplier.to_latex());
            }
            let _ = writeln!(s, "\\end{{align*}}");
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "Lhat = {}", r.lhat);
            let _ = writeln!(s, "p7 = {}", r.p7);
            let _ = writeln!(s, "A1 = {}", r.quad.a1);
            let _ = writeln!(s, "A2 = {}", r.quad.a2);
            let _ = writeln!(s, "A3 = {}", r.quad.a3);
            let _ = writeln!(s, "rank = {}, agrees with reference: {}", r.rank, r.agrees_with_reference);
            let _ = writeln!(s, "ledger:");
            for e in &r.multiplier_ledger {
                let _ = writeln!(s, "  {}: {}", e.label, e.multiplier);
            }
            s
        }
    }
}

fn bound_json(b: &Bound) -> Value {
    Value::String(b.to_string())
}

fn intervals_json(set: &IntervalSet) -> Value {
    Value::Array(set.parts.iter().map(|i| json!([bound_json(&i.lo), bound_json(&i.hi)])).collect())
}

fn point_json(x: &ParamPoint) -> Value {
    serde_json::to_value(x).expect("point serializes")
}

pub fn phi(
    x: &ParamPoint,
    table: &TableVerdict,
    oracle: &OracleVerdict,
    suggested: Option<&QField>,
    fmt: Format,
) -> String {
    let discrepancy = table.holds != oracle.feasible;
    match fmt {
        Format::Json => pretty(&json!({
            "point": point_json(x),
            "holds": oracle.feasible,
            "table_holds": table.holds,
            "discrepancy": discrepancy,
            "witnesses": table.witnesses,
            "oracle": { "feasible": oracle.feasible, "c1_intervals": intervals_json(&oracle.c1_set) },
            "suggested_c1": suggested,
        })),
        Format::Latex => {
            let cells: Vec<String> =
                table.witnesses.iter().map(|c| format!("\\mathbb{{T}}({},{})", c.row, c.col)).collect();
            let verdict = if oracle.feasible { "\\text{true}" } else { "\\text{false}" };
            let mut s = format!("$\\Phi({}, {}, {}) = {verdict}$", x.n, qfield_latex(&x.p), qfield_latex(&x.mu));
            if !cells.is_empty() {
                let _ = write!(s, " via ${}$", cells.join(", "));
            }
            if let Some(c) = suggested {
                let _ = write!(s, ", $c_1 = {}$", qfield_latex(c));
            }
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "point: {x}");
            let _ = writeln!(s, "holds: {}", oracle.feasible);
            let cells: Vec<String> = table.witnesses.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "table: {} [{}]", table.holds, cells.join(", "));
            let _ = writeln!(s, "oracle c1 set: {}", oracle.c1_set);
            if let Some(c) = suggested {
                let _ = writeln!(s, "suggested c1: {c}");
            }
            if discrepancy {
                let _ = writeln!(s, "discrepancy: table and oracle disagree; the oracle verdict is reported");
            }
            s
        }
    }
}

fn ledger_json(c: &Certificate) -> Value {
    let values = c.ledger_at();
    Value::Array(
        c.ledger
            .iter()
            .zip(values)
            .map(|(e, (_, v))| json!({ "label": e.label, "multiplier": e.multiplier.to_string(), "value": v }))
            .collect(),
    )
}

pub fn certificate(c: &Certificate, verified: bool, fmt: Format) -> String {
    let [a1, a2, a3] = &c.quad;
    match fmt {
        Format::Json => pretty(&json!({
            "point": point_json(&c.point),
            "c1": c.point.c1,
            "A": [a1, a2, a3],
            "sos": c.sos_terms.iter()
                .map(|t| json!({ "coeff": t.coeff, "m2_coeff": t.m2, "m5_coeff": t.m5 }))
                .collect::<Vec<_>>(),
            "ledger": ledger_json(c),
            "verified": verified,
        })),
        Format::Latex => {
            let terms: Vec<String> = c
                .sos_terms
                .iter()
                .map(|t| {
                    let zero = QField::int(0);
                    let lin = match (t.m2 == zero, t.m5 == zero) {
                        (false, false) => format!("m_{{2}} + {} m_{{5}}", qfield_latex(&t.m5)),
                        (false, true) => "m_{2}".to_string(),
                        _ => "m_{5}".to_string(),
                    };
                    format!("{}\\left({lin}\\right)^2", qfield_latex(&t.coeff))
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            format!(
                "${} m_{{2}}^2 + {} m_{{2}}m_{{5}} + {} m_{{5}}^2 = {rhs}$\n",
                qfield_latex(a1),
                qfield_latex(a2),
                qfield_latex(a3)
            )
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "point: {}", c.point);
            let _ = writeln!(s, "A1 = {a1}, A2 = {a2}, A3 = {a3}");
            if c.sos_terms.is_empty() {
                let _ = writeln!(s, "form is identically zero");
            }
            for t in &c.sos_terms {
                let _ = writeln!(s, "  {} * ({})^2", t.coeff, linear_text(&t.m2, &t.m5));
            }
            let _ = writeln!(s, "ledger:");
            for (label, v) in c.ledger_at() {
                let v = v.map(|v| v.to_string()).unwrap_or_else(|| "pole at this point".into());
                let _ = writeln!(s, "  {label}: {v}");
            }
            let _ = writeln!(s, "verified: {verified}");
            s
        }
    }
}

fn linear_text(m2: &QField, m5: &QField) -> String {
    let zero = QField::int(0);
    let one = QField::int(1);
    let term = |c: &QField, m: &str| if *c == one { m.to_string() } else { format!("({c}) {m}") };
    match (*m2 == zero, *m5 == zero) {
        (false, false) => format!("{} + {}", term(m2, "m2"), term(m5, "m5")),
        (false, true) => term(m2, "m2"),
        _ => term(m5, "m5"),
    }
}

pub fn infeasible(r: &InfeasibleReport, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(&json!({ "infeasible": true, "point": point_json(&r.point), "violated": r.violated })),
        Format::Latex => format!(
            "$\\Phi({}, {}, {}) = \\text{{false}}$: {}\n",
            r.point.n,
            qfield_latex(&r.point.p),
            qfield_latex(&r.point.mu),
            r.violated.join("; ")
        ),
        Format::Text => format!("infeasible at {}\nviolated: {}\n", r.point, r.violated.join("; ")),
    }
}

/// Per `(n, p)`: the table row and the grid values of `mu` where it holds.
pub fn table(density: Density, only_n: Option<u32>, fmt: Format) -> Result<String> {
    let points: Vec<ParamPoint> =
        default_grid(density).into_iter().filter(|x| only_n.is_none_or(|n| x.n == n)).collect();
    let mut rows: Vec<(u32, QField, u8, Vec<QField>)> = Vec::new();
    for x in &points {
        let v = phi_table(x)?;
        match rows.last_mut() {
            Some(r) if r.0 == x.n && r.1 == x.p => {
                if v.holds {
                    r.3.push(x.mu.clone());
                }
            }
            _ => rows.push((x.n, x.p.clone(), table_row(&x.p), if v.holds { vec![x.mu.clone()] } else { vec![] })),
        }
    }
    Ok(match fmt {
        Format::Json => pretty(&Value::Array(
            rows.iter().map(|(n, p, row, mus)| json!({ "n": n, "p": p, "row": row, "mu_holds": mus })).collect(),
        )),
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{llll}\n$n$ & $p$ & row & $\\mu$ with $\\Phi$ \\\\\n\\hline\n");
            for (n, p, row, mus) in &rows {
                let _ = writeln!(s, "{n} & ${}$ & {row} & {} \\\\", qfield_latex(p), range_text(mus, true));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (n, p, row, mus) in &rows {
                let _ = writeln!(s, "n={n} p={p} row={row} mu: {}", range_text(mus, false));
            }
            s
        }
    })
}

fn range_text(mus: &[QField], latex: bool) -> String {
    match (mus.first(), mus.last()) {
        (None, _) | (_, None) => "none".into(),
        (Some(a), Some(b)) if latex => format!("${}$ to ${}$ ({} values)", qfield_latex(a), qfield_latex(b), mus.len()),
        (Some(a), Some(b)) => format!("{a} .. {b} ({} values)", mus.len()),
    }
}

pub fn report(rep: &Report, fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(&json!({
            "summary": rep.summary(),
            "stages": rep.stages,
            "findings": rep.findings,
        })),
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{lll}\nstage & result & detail \\\\\n\\hline\n");
            for st in &rep.stages {
                let r = if st.passed { "pass" } else { "FAIL" };
                let _ = writeln!(s, "{} & {r} & {} \\\\", latex_escape(&st.name), latex_escape(&st.detail));
            }
            s.push_str("\\end{tabular}\n");
            let _ = writeln!(s, "\n{} findings.", rep.findings.len());
            s
        }
        Format::Text => {
            let mut s = String::new();
            for st in &rep.stages {
                let r = if st.passed { "pass" } else { "FAIL" };
                let _ = writeln!(s, "[{r}] {}: {}", st.name, st.detail);
            }
            for f in &rep.findings {
                let kind =
                    serde_json::to_value(f.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                let _ = writeln!(s, "finding {kind} at {}: {}", f.location, f.detail);
            }
            let _ = writeln!(s, "{} findings", rep.findings.len());
            s
        }
    }
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('>', "$>$").replace('<', "$<$")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qfield_to_latex() {
        let q = |s: &str| qfield_latex(&s.parse().unwrap());
        assert_eq!(q("-5/9"), "-\\frac{5}{9}");
        assert_eq!(q("9/8-1/8*sqrt(17)"), "\\frac{9}{8}-\\frac{1}{8}\\sqrt{17}");
        assert_eq!(q("sqrt(17)"), "\\sqrt{17}");
        assert_eq!(q("-1/2+sqrt(17)"), "-\\frac{1}{2}+\\sqrt{17}");
    }

    #[test]
    fn labels_to_latex() {
        assert_eq!(label_latex("R12"), "R_{12,a,b}");
        assert_eq!(label_latex("Rhat7"), "\\widehat{R}_{7}");
        assert_eq!(label_latex("I1"), "I_{1,a,b}");
    }

    #[test]
    fn linear_forms() {
        let q = |s: &str| -> QField { s.parse().unwrap() };
        assert_eq!(linear_text(&q("1"), &q("43/50")), "m2 + (43/50) m5");
        assert_eq!(linear_text(&q("0"), &q("1")), "m5");
    }
}
