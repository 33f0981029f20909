use std::fmt::Write;

use crate::trquiver::Fragment;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

pub fn export_fragment(f: &Fragment, format: Format) -> String {
    match format {
        Format::Json => f.to_json(),
        Format::Dot => to_dot(f),
    }
}

/// Dimension vector with vertex names in natural order (`2` before `10`).
fn dim_label(dim: &std::collections::BTreeMap<String, usize>) -> String {
    let mut keys: Vec<&String> = dim.keys().collect();
    keys.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    keys.iter().map(|k| dim[*k].to_string()).collect::<Vec<_>>().join(" ")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// Solid arrows for irreducible maps, dashed `X -> τX`, double border on projectives,
/// fill on injectives, dotted border on frontier vertices.
pub fn to_dot(f: &Fragment) -> String {
    let mut out = String::from("digraph fragment {\n  rankdir=LR;\n  node [shape=box];\n");
    for v in &f.vertices {
        let label = format!("{}\\n{}", escape(&v.id), dim_label(&v.dim));
        let mut attrs = vec![format!("label=\"{label}\"")];
        if v.proj {
            attrs.push("peripheries=2".into());
        }
        let mut style = Vec::new();
        if v.inj {
            style.push("filled");
        }
        if v.frontier {
            style.push("dotted");
        }
        if !style.is_empty() {
            attrs.push(format!("style={}", quote(&style.join(","))));
        }
        if v.inj {
            attrs.push("fillcolor=lightgray".into());
        }
        writeln!(out, "  {} [{}];", quote(&v.id), attrs.join(", ")).unwrap();
    }
    for a in &f.arrows {
        let label = if a.mult > 1 { format!(" [label={}]", quote(&a.mult.to_string())) } else { String::new() };
        writeln!(out, "  {} -> {}{label};", quote(&a.src), quote(&a.tgt)).unwrap();
    }
    for (x, t) in &f.tau {
        writeln!(out, "  {} -> {} [style=dashed, constraint=false];", quote(x), quote(t)).unwrap();
    }
    out.push_str("}\n");
    out
}
