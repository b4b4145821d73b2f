//! Plain-text renderings for `--format text`.

use cliffweil::cwg::StructureReport;
use cliffweil::invariants::ExtremalReport;
use cliffweil::json::CodeJson;
use cliffweil::poly::SparsePoly;

pub fn code(c: &CodeJson) -> String {
    let mut s = format!("[{}, {}] code over {}", c.n, c.k, c.field);
    for row in &c.gens {
        s.push('\n');
        s.push_str(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    }
    s
}

pub fn profile(counts: &[u64]) -> String {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(w, c)| format!("{w}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `x0^4 + 12 x0 x1^3 - ...`, descending monomial order.
pub fn poly(p: &SparsePoly) -> String {
    let j = p.to_json("");
    if j.terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in j.terms.iter().enumerate() {
        let (neg, num) = match t.num.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.num.as_str()),
        };
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let vars: Vec<String> = t
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        let coeff = if t.den == "1" { num.to_string() } else { format!("{num}/{}", t.den) };
        if coeff != "1" || vars.is_empty() {
            s.push_str(&coeff);
            if !vars.is_empty() {
                s.push(' ');
            }
        }
        s.push_str(&vars.join(" "));
    }
    s
}

pub fn structure(r: &StructureReport) -> String {
    let mut s = format!("{}: order {}, center order {}", r.field, r.order, r.center_order);
    for c in &r.checks {
        s.push_str(&format!("\n{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail));
    }
    s
}

pub fn extremal(r: &ExtremalReport) -> String {
    let mut s = format!(
        "n={} d={}: {} (affine dimension {})",
        r.n,
        r.d,
        if r.feasible { "feasible" } else { "infeasible" },
        r.affine_dim.map_or("-".into(), |a| a.to_string())
    );
    for o in &r.obstructions {
        s.push_str(&format!("\n{:?}: {}", o.kind, o.detail));
    }
    for (p, m) in r.candidates.iter().zip(&r.rational_dims) {
        s.push_str(&format!("\ncandidate with rational subcode dimension {m}: {}", poly(p)));
    }
    s
}
