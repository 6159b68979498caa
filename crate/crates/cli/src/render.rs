use std::collections::BTreeMap;
use std::fmt::Write;

use crate::report::{PolyEntry, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    Info,
    Cosets,
    Polys,
    Characters,
    Multiplicities,
    Verification,
}

fn set(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

/// `w λ`, or `λ` for the identity.
fn acting(w: &str) -> String {
    if w == "1" {
        "λ".into()
    } else {
        format!("{w} λ")
    }
}

fn signed_sum(terms: impl Iterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (i, (c, x)) in terms.enumerate() {
        let sign = if c < 0 { "-" } else { "+" };
        let mag = c.unsigned_abs();
        let coeff = if mag == 1 { String::new() } else { format!("{mag} ") };
        if i == 0 {
            let lead = if c < 0 { "-" } else { "" };
            let _ = write!(out, "{lead}{coeff}{x}");
        } else {
            let _ = write!(out, " {sign} {coeff}{x}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

type SignedRow = (String, Vec<(i64, String)>);
type PolyTable = (String, Vec<String>, BTreeMap<(String, String), String>);

/// Model tables in first-appearance order: (model, row/column labels, entries).
fn poly_tables(entries: &[PolyEntry]) -> Vec<PolyTable> {
    let mut tables: Vec<PolyTable> = Vec::new();
    for e in entries {
        let model = e.model.clone().unwrap_or_else(|| "1".into());
        if tables.last().map(|t| &t.0) != Some(&model) {
            tables.push((model, Vec::new(), BTreeMap::new()));
        }
        let t = tables.last_mut().unwrap();
        for l in [&e.c, &e.d] {
            if !t.1.contains(l) {
                t.1.push(l.clone());
            }
        }
        t.2.insert((e.c.clone(), e.d.clone()), e.poly.to_string());
    }
    tables
}

fn pad(s: &str, width: usize) -> String {
    let n = s.chars().count();
    format!("{s}{}", " ".repeat(width.saturating_sub(n)))
}

pub fn text(r: &Report, sections: &[Section]) -> String {
    let mut o = String::new();
    let c = &r.context;
    let _ = writeln!(o, "root system {} (|W| = {})", c.root_system, c.weyl_order);
    let _ = writeln!(o, "Θ = {}", set(&c.theta));
    let _ = writeln!(o, "λ = ({})", c.lambda);
    let _ = writeln!(
        o,
        "antidominant: {}, regular: {}, integral: {}",
        c.antidominant, c.regular, c.integral
    );
    if let Some(m) = &c.mode {
        let _ = writeln!(o, "mode: {m}");
    }
    for s in sections {
        o.push('\n');
        match s {
            Section::Info => {
                if let Some(i) = &r.integral {
                    let _ = writeln!(o, "Σ_λ^+ = {}", set(&i.sigma_lambda_positive));
                    let _ = writeln!(o, "Π_λ = {}", set(&i.pi_lambda));
                    let _ = writeln!(o, "A_λ = {}", set(&i.a_lambda));
                    let _ = writeln!(o, "A_Θ,λ = {}", set(&i.a_theta_lambda));
                }
                for m in &r.models {
                    let _ = writeln!(o, "model u = {}: Θ(u,λ) = {}", m.u, set(&m.theta_u_lambda));
                    for mc in &m.cosets {
                        let _ = writeln!(o, "  W_• {} ↦ W_Θ {}", mc.label, mc.induced);
                    }
                }
            }
            Section::Cosets => {
                let _ = writeln!(o, "{} right W_Θ-cosets (longest | shortest | length | covers)", r.cosets.len());
                for row in &r.cosets {
                    let _ = writeln!(
                        o,
                        "  {}: {} | {} | {} | {}",
                        row.id,
                        row.longest,
                        row.shortest,
                        row.length,
                        set(&row.covers)
                    );
                }
            }
            Section::Polys => {
                for (model, labels, table) in poly_tables(&r.kl_polynomials) {
                    let _ = writeln!(o, "P^{{u,λ}}_EF for u = {model}");
                    let header: Vec<String> =
                        std::iter::once("E \\ F".to_string()).chain(labels.iter().cloned()).collect();
                    let width = header.iter().map(|h| h.chars().count()).max().unwrap_or(0) + 2;
                    let mut line: String = header.iter().map(|h| pad(h, width)).collect();
                    let _ = writeln!(o, "  {}", line.trim_end());
                    for e in &labels {
                        line = pad(e, width);
                        for f in &labels {
                            let p = table.get(&(e.clone(), f.clone())).map_or("0", String::as_str);
                            line.push_str(&pad(p, width));
                        }
                        let _ = writeln!(o, "  {}", line.trim_end());
                    }
                }
            }
            Section::Characters => {
                for row in &r.characters {
                    let rhs = signed_sum(
                        row.entries
                            .iter()
                            .map(|e| (e.coeff, format!("ch M({})", acting(&e.standard)))),
                    );
                    let _ = writeln!(o, "ch L({}) = {rhs}", acting(&row.irreducible));
                }
            }
            Section::Multiplicities => {
                for row in &r.multiplicities {
                    let rhs = signed_sum(
                        row.entries
                            .iter()
                            .map(|e| (e.multiplicity, format!("ch L({})", acting(&e.irreducible)))),
                    );
                    let _ = writeln!(o, "ch M({}) = {rhs}", acting(&row.standard));
                }
            }
            Section::Verification => {
                if let Some(v) = &r.verification {
                    for ch in &v.checks {
                        let status = if ch.passed { "PASS" } else { "FAIL" };
                        let _ = write!(o, "{status} {} [{}]", ch.name, ch.scope);
                        if let Some(x) = &ch.counterexample {
                            let _ = write!(o, ": {x}");
                        }
                        o.push('\n');
                    }
                    let verdict = if v.passed() { "all checks passed" } else { "verification FAILED" };
                    let _ = writeln!(o, "{verdict}");
                }
            }
        }
    }
    o
}

/// Greek letters to TeX macros, `*` dropped, exponents braced.
fn tex(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let mac = match c {
            'α' => "\\alpha",
            'β' => "\\beta",
            'γ' => "\\gamma",
            'δ' => "\\delta",
            'ε' => "\\varepsilon",
            'ζ' => "\\zeta",
            'λ' => "\\lambda",
            'Θ' => "\\Theta",
            '•' => "\\bullet",
            _ => "",
        };
        if !mac.is_empty() {
            out.push_str(mac);
            if chars.peek().is_some_and(char::is_ascii_alphabetic) {
                out.push(' ');
            }
            continue;
        }
        match c {
            '*' => {}
            '^' if chars.peek() == Some(&'-') || chars.peek().is_some_and(char::is_ascii_digit) => {
                out.push_str("^{");
                if chars.peek() == Some(&'-') {
                    out.push(chars.next().unwrap());
                }
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    out.push(chars.next().unwrap());
                }
                out.push('}');
            }
            _ => out.push(c),
        }
    }
    out
}

fn tex_word(w: &str) -> String {
    if w == "1" {
        "1".into()
    } else {
        tex(w)
    }
}

fn tex_acting(w: &str) -> String {
    if w == "1" {
        "\\lambda".into()
    } else {
        format!("{} \\lambda", tex(w))
    }
}

pub fn latex(r: &Report, sections: &[Section]) -> String {
    let mut o = String::new();
    let c = &r.context;
    let _ = writeln!(
        o,
        "% {} with \\Theta = \\{{{}\\}}, \\lambda = ({})",
        c.root_system,
        tex(&c.theta.join(", ")),
        c.lambda
    );
    for s in sections {
        match s {
            Section::Info => {
                if let Some(i) = &r.integral {
                    o.push_str("\\begin{align*}\n");
                    let rows = [
                        ("\\Sigma_\\lambda^+", &i.sigma_lambda_positive),
                        ("\\Pi_\\lambda", &i.pi_lambda),
                        ("A_\\lambda", &i.a_lambda),
                        ("A_{\\Theta,\\lambda}", &i.a_theta_lambda),
                    ];
                    for (k, (name, v)) in rows.iter().enumerate() {
                        let items: Vec<String> = v.iter().map(|x| tex_word(x)).collect();
                        let end = if k + 1 < rows.len() { "\\\\" } else { "" };
                        let _ = writeln!(o, "\t{name} &= \\{{{}\\}}{end}", items.join(", "));
                    }
                    o.push_str("\\end{align*}\n");
                }
            }
            Section::Cosets => {
                o.push_str("\\begin{tabular}{c|c|c|c}\n");
                o.push_str("\t$C$ & $w^C$ & shortest & $\\ell$\\\\ \\hline\n");
                for row in &r.cosets {
                    let _ = writeln!(
                        o,
                        "\t{} & $W_\\Theta {}$ & ${}$ & {}\\\\",
                        row.id,
                        tex_word(&row.longest),
                        tex_word(&row.shortest),
                        row.length
                    );
                }
                o.push_str("\\end{tabular}\n");
            }
            Section::Polys => {
                for (model, labels, table) in poly_tables(&r.kl_polynomials) {
                    let cols = "c".repeat(labels.len());
                    let _ = writeln!(o, "\\begin{{tabular}}{{c|{cols}}}");
                    let head: Vec<String> =
                        labels.iter().map(|l| format!("$W_\\bullet {}$", tex_word(l))).collect();
                    let _ = writeln!(
                        o,
                        "\t$P_{{EF}}^{{{},\\lambda}}$ & {}\\\\ \\hline",
                        tex_word(&model),
                        head.join(" & ")
                    );
                    for e in &labels {
                        let cells: Vec<String> = labels
                            .iter()
                            .map(|f| {
                                table
                                    .get(&(e.clone(), f.clone()))
                                    .map_or("0".to_string(), |p| format!("${}$", tex(p)))
                            })
                            .collect();
                        let _ = writeln!(o, "\t$W_\\bullet {}$ & {}\\\\", tex_word(e), cells.join(" & "));
                    }
                    o.push_str("\\end{tabular}\n");
                }
            }
            Section::Characters | Section::Multiplicities => {
                let (lhs, rhs_name, rows): (&str, &str, Vec<SignedRow>) =
                    if *s == Section::Characters {
                        (
                            "L",
                            "M",
                            r.characters
                                .iter()
                                .map(|row| {
                                    (
                                        row.irreducible.clone(),
                                        row.entries.iter().map(|e| (e.coeff, e.standard.clone())).collect(),
                                    )
                                })
                                .collect(),
                        )
                    } else {
                        (
                            "M",
                            "L",
                            r.multiplicities
                                .iter()
                                .map(|row| {
                                    (
                                        row.standard.clone(),
                                        row.entries
                                            .iter()
                                            .map(|e| (e.multiplicity, e.irreducible.clone()))
                                            .collect(),
                                    )
                                })
                                .collect(),
                        )
                    };
                o.push_str("\\begin{align*}\n");
                let n = rows.len();
                for (k, (head, terms)) in rows.into_iter().enumerate() {
                    let rhs = signed_sum(terms.into_iter().map(|(a, x)| {
                        (a, format!("\\operatorname{{ch}} {rhs_name}({},\\eta)", tex_acting(&x)))
                    }));
                    let end = if k + 1 < n { ",\\\\" } else { "." };
                    let _ = writeln!(
                        o,
                        "\t\\operatorname{{ch}} {lhs}({},\\eta) &= {rhs}{end}",
                        tex_acting(&head)
                    );
                }
                o.push_str("\\end{align*}\n");
            }
            Section::Verification => {
                if let Some(v) = &r.verification {
                    o.push_str("\\begin{tabular}{l|l|c}\n");
                    for ch in &v.checks {
                        let status = if ch.passed { "pass" } else { "fail" };
                        let _ = writeln!(o, "\t\\texttt{{{}}} & {} & {status}\\\\", ch.name, tex(&ch.scope));
                    }
                    o.push_str("\\end{tabular}\n");
                }
            }
        }
    }
    o
}
