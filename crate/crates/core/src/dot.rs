//! Graphviz output for quivers and layered module graphs.

use std::fmt::Write as _;

use crate::module::LayeredGraph;
use crate::quiver::{Quiver, Vertex};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The quiver as a digraph; vertices in `upper` are drawn in a separate cluster.
pub fn quiver_dot(q: &Quiver, upper: Option<&[Vertex]>) -> String {
    let mut out = String::from("digraph quiver {\n  rankdir=TB;\n  node [shape=circle];\n");
    match upper {
        Some(up) => {
            for (name, inside) in [("lower", false), ("upper", true)] {
                let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label={};", quote(name));
                for v in 0..q.vertex_count() {
                    if up.contains(&v) == inside {
                        let _ = writeln!(out, "    {};", quote(q.vertex_name(v)));
                    }
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for v in q.vertex_names() {
                let _ = writeln!(out, "  {};", quote(v));
            }
        }
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(q.vertex_name(a.source)),
            quote(q.vertex_name(a.target)),
            quote(&a.name)
        );
    }
    out.push_str("}\n");
    out
}

/// A layered graph with one node per graph node, labelled by its vertex, tops ranked first.
/// Identified nodes are joined by dashed undirected edges.
pub fn layered_dot(g: &LayeredGraph, q: &Quiver) -> String {
    let mut out = String::from("digraph module {\n  node [shape=plaintext];\n");
    for (i, n) in g.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(q.vertex_name(n.vertex)));
    }
    if !g.tops.is_empty() {
        out.push_str("  { rank=source;");
        for t in &g.tops {
            let _ = write!(out, " n{t};");
        }
        out.push_str(" }\n");
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  n{} -> n{} [arrowhead=none, label={}];",
            e.parent,
            e.child,
            quote(&q.arrow(e.arrow).name)
        );
    }
    for class in &g.identifications {
        for w in class.windows(2) {
            let _ = writeln!(out, "  n{} -> n{} [style=dashed, arrowhead=none];", w[0], w[1]);
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_clusters() {
        let mut q = Quiver::new();
        q.add_vertex("a").unwrap();
        q.add_vertex("b").unwrap();
        q.add_arrow("x", "a", "b").unwrap();
        let plain = quiver_dot(&q, None);
        assert!(plain.contains("\"a\" -> \"b\" [label=\"x\"];"));
        let split = quiver_dot(&q, Some(&[0]));
        assert!(split.contains("cluster_upper"));
        assert!(split.ends_with("}\n"));
    }
}
