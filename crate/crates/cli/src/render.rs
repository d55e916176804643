//! Aligned plain-text output.

use std::fmt::Write;

use genosc_core::classify::{ClassificationReport, DifferenceTable, Verdict};
use genosc_core::liealg::ClosureResult;
use genosc_core::oscillator::RelationReport;
use genosc_core::recurrence::MomentRecurrence;
use genosc_core::seqcore::rational::format_rational;
use genosc_core::Rational;

pub fn rat(r: &Rational) -> String {
    format_rational(r)
}

fn field(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "  {key:<14} {value}");
}

fn verdict_fields(out: &mut String, v: &Verdict) {
    field(out, "verdict", format!("{:?}", v.kind));
    if let (Some(a0), Some(a2)) = (&v.a0, &v.a2) {
        field(out, "a0", rat(a0));
        field(out, "a2", rat(a2));
    }
    if let Some(w) = &v.witness {
        field(out, "witness", format!("A^({}) {} at n={}, {} at n={}", w.j, rat(&w.v1), w.n1, rat(&w.v2), w.n2));
    }
    field(out, "note", &v.note);
}

pub fn verdict(label: &str, v: &Verdict, table: Option<&DifferenceTable>) -> String {
    let mut out = format!("{label}\n");
    verdict_fields(&mut out, v);
    if let Some(t) = table {
        for (j, row) in t.rows.iter().enumerate() {
            field(&mut out, &format!("A^({j})"), row);
        }
    }
    out
}

pub fn relations(label: &str, m: usize, reports: &[RelationReport]) -> String {
    let mut out = format!("{label} (M={m})\n");
    for r in reports {
        let _ = writeln!(
            out,
            "  {:<16} {:<4} residual {:.3e} over {} indices",
            r.relation,
            if r.pass { "pass" } else { "FAIL" },
            r.max_residual,
            r.checked_indices
        );
    }
    out
}

pub fn closure(label: &str, r: &ClosureResult) -> String {
    let mut out = format!("{label}\n");
    field(&mut out, "status", format!("{:?}", r.status));
    field(&mut out, "dim", r.dim);
    field(&mut out, "depth", r.depth_reached);
    let log: Vec<String> = r.growth_log.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    field(&mut out, "growth", log.join(" "));
    for (i, b) in r.basis.iter().enumerate() {
        field(&mut out, &format!("basis[{i}]"), b);
    }
    out
}

pub fn moments(label: &str, r: &MomentRecurrence) -> String {
    let mut out = format!("{label}\n  {:>3}  {:>16}  {:>16}\n", "n", "a_n", "b_n^2");
    for (n, (a, b2)) in r.a.iter().zip(&r.b2).enumerate() {
        let _ = writeln!(out, "  {n:>3}  {:>16}  {:>16}", rat(a), rat(b2));
    }
    out
}

pub fn report(r: &ClassificationReport) -> String {
    let mut out = format!("{}\n", r.label);
    field(&mut out, "validation", &r.validation);
    if let Some(v) = &r.verdict {
        verdict_fields(&mut out, v);
    }
    if let Some(inv) = r.symmetrization_invariant {
        field(&mut out, "symmetrized", if inv { "same verdict" } else { "DIFFERENT verdict" });
    }
    if let Some(c) = &r.closure {
        field(&mut out, "closure", &c.interpretation);
        let log: Vec<String> = c.growth_log.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        field(&mut out, "growth", log.join(" "));
    }
    if let Some(agree) = r.routes_agree {
        field(&mut out, "routes agree", agree);
    }
    out
}
