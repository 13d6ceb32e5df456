//! Graphviz output for covering relations.

use emv_core::ideals::all_ideals;
use emv_core::{Algebra, EmvError};

const MAX_NODES: usize = 256;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Edges `i -> j` of the covering relation of a finite order given by `le`.
fn covers(n: usize, le: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |x: usize, y: usize| x != y && le(x, y);
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

fn render(name: &str, nodes: &[String], edges: &[(usize, usize)]) -> String {
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, l) in nodes.iter().enumerate() {
        s += &format!("  n{i} [label=\"{}\"];\n", escape(l));
    }
    for (x, y) in edges {
        s += &format!("  n{x} -> n{y};\n");
    }
    s += "}\n";
    s
}

pub fn hasse(a: &Algebra) -> Result<String, EmvError> {
    let f = a.require_finite("Hasse diagram")?;
    if f.size() > MAX_NODES {
        return Err(EmvError::SizeBound { size: f.size(), bound: MAX_NODES });
    }
    let nodes: Vec<String> = (0..f.size()).map(|x| f.label_of(x).to_string()).collect();
    Ok(render("hasse", &nodes, &covers(f.size(), |x, y| f.le(x, y))))
}

pub fn ideal_lattice(a: &Algebra) -> Result<String, EmvError> {
    let f = a.require_finite("ideal lattice")?;
    if f.size() > MAX_NODES {
        return Err(EmvError::SizeBound { size: f.size(), bound: MAX_NODES });
    }
    let ideals = all_ideals(a)?;
    let nodes: Vec<String> = ideals
        .iter()
        .map(|i| format!("{{{}}}", i.member_labels().expect("explicit").join(",")))
        .collect();
    let bits: Vec<_> = ideals.iter().map(|i| i.bits().expect("explicit").clone()).collect();
    Ok(render("ideals", &nodes, &covers(ideals.len(), |x, y| bits[x].is_subset(&bits[y]))))
}
