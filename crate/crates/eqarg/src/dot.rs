//! Graphviz export.

use std::fmt::Write;

use eqarg_core::ArgumentationFramework;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per argument and one edge per attack. With `values`, node `x`
/// is labelled `x\n[value]`.
pub fn to_dot(af: &ArgumentationFramework, values: Option<&[f64]>) -> String {
    let mut out = String::from("digraph af {\n");
    for a in af.arguments() {
        let name = af.name(a);
        match values {
            Some(v) => {
                let label = format!("{name}\\n[{}]", format_value(v[a.0]));
                writeln!(out, "    {} [label=\"{label}\"];", quote(name)).unwrap();
            }
            None => writeln!(out, "    {};", quote(name)).unwrap(),
        }
    }
    for (x, y) in af.attacks() {
        writeln!(out, "    {} -> {};", quote(af.name(x)), quote(af.name(y))).unwrap();
    }
    out.push_str("}\n");
    out
}

fn format_value(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() {
        "0".into()
    } else {
        s.into()
    }
}
