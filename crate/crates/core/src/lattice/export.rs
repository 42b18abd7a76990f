use std::fmt::Write;

use super::{EdgeSet, HasseLattice};

#[derive(Debug, Clone, Default)]
pub struct DotStyle<'a> {
    pub name: &'a str,
    /// Edges drawn shaded (dashed grey) as contracted.
    pub contracted: Option<&'a EdgeSet>,
    /// Edges drawn bold, e.g. search-tree edges.
    pub highlighted: Option<&'a EdgeSet>,
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering with the bottom element at the bottom.
pub fn to_dot(lattice: &HasseLattice, style: &DotStyle<'_>) -> String {
    let mut out = String::new();
    let name = if style.name.is_empty() { "hasse" } else { style.name };
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext, fontname=\"Helvetica\"];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    for x in 0..lattice.len() {
        writeln!(out, "  n{x} [label=\"{}\"];", escape(lattice.label(x))).unwrap();
    }
    for (e, &(lo, hi)) in lattice.edges().iter().enumerate() {
        let mut attrs = Vec::new();
        if style.contracted.is_some_and(|c| c.contains(e)) {
            attrs.push("style=dashed, color=\"#888888\", penwidth=3");
        }
        if style.highlighted.is_some_and(|h| h.contains(e)) {
            attrs.push("style=bold, color=\"#1f4e9c\"");
        }
        if attrs.is_empty() {
            writeln!(out, "  n{lo} -> n{hi};").unwrap();
        } else {
            writeln!(out, "  n{lo} -> n{hi} [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_marks_contracted_edges() {
        let l = HasseLattice::new(vec!["e".into(), "s\"1".into()], vec![(0, 1)]).unwrap();
        let c = EdgeSet::from_edges(1, [0]);
        let dot = to_dot(
            &l,
            &DotStyle {
                name: "t",
                contracted: Some(&c),
                highlighted: None,
            },
        );
        assert!(dot.contains("n1 [label=\"s\\\"1\"];"));
        assert!(dot.contains("n0 -> n1 [style=dashed"));
        assert!(dot.ends_with("}\n"));
    }
}
