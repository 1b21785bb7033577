//! Layered-graph presentations of modules.
//!
//! Grammar, one statement per line (`#` starts a comment):
//!
//! ```text
//! top <node>: <vertex>
//! edge <parent> --<arrow>--> <child>
//! identify <node> <node> [<node> ...]
//! kill [<c>*]<node> + [<c>*]<node> ...
//! ```
//!
//! A graph with tops `x_0..x_k` presents `P/V` where `P = ⊕ Λ·type(x_i)`.
//! Every node stands for the element `p·x_i` of `P` reached along its edges.
//! `V` is generated by `a·u` for every node `u` and every arrow `a` leaving
//! `type(u)` that has no edge out of `u`, by `u - u'` for identified nodes,
//! and by every `kill` combination.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::representation::{projective_sum, Representation};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;
use crate::quiver::{compose_paths, Path, Quiver, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub vertex: Vertex,
    /// Index of the top this node hangs from.
    pub root: usize,
    /// Path from the root, in traversal order.
    pub path: Path,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub parent: usize,
    pub arrow: usize,
    pub child: usize,
}

/// A parsed layered graph over a fixed quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredGraph {
    pub nodes: Vec<Node>,
    /// Node indices of the tops, in declaration order.
    pub tops: Vec<usize>,
    pub edges: Vec<Edge>,
    pub identifications: Vec<Vec<usize>>,
    /// Linear combinations `Σ c·node` lying in `V`.
    pub kills: Vec<Vec<(i64, usize)>>,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

impl LayeredGraph {
    pub fn parse(text: &str, q: &Quiver) -> Result<Self> {
        let mut g = LayeredGraph {
            nodes: Vec::new(),
            tops: Vec::new(),
            edges: Vec::new(),
            identifications: Vec::new(),
            kills: Vec::new(),
        };
        let mut index: HashMap<String, usize> = HashMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim_start();
            let indent = line.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            if trimmed.is_empty() {
                continue;
            }
            let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest_col = indent + kw.len() + 2;
            match kw {
                "top" => {
                    let (name, vertex) = rest
                        .split_once(':')
                        .ok_or_else(|| parse_err(line_no, rest_col, "expected `top <node>: <vertex>`"))?;
                    let name = name.trim();
                    let vname = vertex.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(parse_err(line_no, rest_col, "bad node name"));
                    }
                    let v = q
                        .vertex(vname)
                        .map_err(|_| parse_err(line_no, col_of(raw, vname), format!("unknown vertex `{vname}`")))?;
                    if index.contains_key(name) {
                        return Err(parse_err(line_no, col_of(raw, name), format!("duplicate node `{name}`")));
                    }
                    let id = g.nodes.len();
                    g.nodes.push(Node {
                        name: name.to_string(),
                        vertex: v,
                        root: g.tops.len(),
                        path: Path::trivial(v),
                    });
                    g.tops.push(id);
                    index.insert(name.to_string(), id);
                }
                "edge" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() != 3 || !toks[1].starts_with("--") || !toks[1].ends_with("-->") || toks[1].len() <= 5 {
                        return Err(parse_err(
                            line_no,
                            rest_col,
                            "expected `edge <parent> --<arrow>--> <child>`",
                        ));
                    }
                    let arrow_name = &toks[1][2..toks[1].len() - 3];
                    let a = q.arrow_id(arrow_name).map_err(|_| {
                        parse_err(line_no, col_of(raw, arrow_name), format!("unknown arrow `{arrow_name}`"))
                    })?;
                    let parent = *index.get(toks[0]).ok_or_else(|| {
                        parse_err(line_no, col_of(raw, toks[0]), format!("unknown node `{}`", toks[0]))
                    })?;
                    let ar = q.arrow(a);
                    if ar.source != g.nodes[parent].vertex {
                        return Err(parse_err(
                            line_no,
                            col_of(raw, arrow_name),
                            format!(
                                "arrow `{arrow_name}` starts at `{}` but node `{}` has type `{}`",
                                q.vertex_name(ar.source),
                                toks[0],
                                q.vertex_name(g.nodes[parent].vertex)
                            ),
                        ));
                    }
                    if index.contains_key(toks[2]) {
                        return Err(parse_err(line_no, col_of(raw, toks[2]), format!("duplicate node `{}`", toks[2])));
                    }
                    if g.edges.iter().any(|e| e.parent == parent && e.arrow == a) {
                        return Err(parse_err(
                            line_no,
                            col_of(raw, arrow_name),
                            format!("node `{}` already has an edge labelled `{arrow_name}`", toks[0]),
                        ));
                    }
                    let path = compose_paths(&q.arrow_path(a), &g.nodes[parent].path).expect("types checked");
                    let child = g.nodes.len();
                    g.nodes.push(Node {
                        name: toks[2].to_string(),
                        vertex: ar.target,
                        root: g.nodes[parent].root,
                        path,
                    });
                    index.insert(toks[2].to_string(), child);
                    g.edges.push(Edge { parent, arrow: a, child });
                }
                "identify" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() < 2 {
                        return Err(parse_err(line_no, rest_col, "identify needs at least two nodes"));
                    }
                    let mut class = Vec::new();
                    for t in &toks {
                        let n = *index
                            .get(*t)
                            .ok_or_else(|| parse_err(line_no, col_of(raw, t), format!("unknown node `{t}`")))?;
                        class.push(n);
                    }
                    let v0 = g.nodes[class[0]].vertex;
                    if let Some(bad) = class.iter().find(|&&n| g.nodes[n].vertex != v0) {
                        return Err(parse_err(
                            line_no,
                            col_of(raw, &g.nodes[*bad].name),
                            format!(
                                "cannot identify `{}` of type `{}` with `{}` of type `{}`",
                                g.nodes[*bad].name,
                                q.vertex_name(g.nodes[*bad].vertex),
                                g.nodes[class[0]].name,
                                q.vertex_name(v0)
                            ),
                        ));
                    }
                    g.identifications.push(class);
                }
                "kill" => {
                    let mut combo = Vec::new();
                    for term in rest.split('+').map(str::trim) {
                        let (c, name) = match term.split_once('*') {
                            Some((c, n)) => {
                                let c: i64 = c.trim().parse().map_err(|_| {
                                    parse_err(line_no, col_of(raw, term), format!("bad coefficient in `{term}`"))
                                })?;
                                (c, n.trim())
                            }
                            None => (1, term),
                        };
                        let n = *index
                            .get(name)
                            .ok_or_else(|| parse_err(line_no, col_of(raw, term), format!("unknown node `{name}`")))?;
                        combo.push((c, n));
                    }
                    let v0 = g.nodes[combo[0].1].vertex;
                    if let Some(&(_, bad)) = combo.iter().find(|(_, n)| g.nodes[*n].vertex != v0) {
                        return Err(parse_err(
                            line_no,
                            col_of(raw, &g.nodes[bad].name),
                            format!("`kill` mixes node types at `{}`", g.nodes[bad].name),
                        ));
                    }
                    g.kills.push(combo);
                }
                other => {
                    return Err(parse_err(line_no, indent + 1, format!("unknown statement `{other}`")));
                }
            }
        }
        if g.tops.is_empty() {
            return Err(parse_err(1, 1, "graph has no top nodes"));
        }
        Ok(g)
    }

    /// Acyclicity of the underlying undirected graph after merging identified nodes.
    pub fn is_tree(&self) -> bool {
        if self.kills.iter().any(|k| k.len() > 1) {
            return false;
        }
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for class in &self.identifications {
            for w in class.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let merged: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let mut forest: Vec<usize> = (0..n).collect();
        for e in &self.edges {
            let (a, b) = (merged[e.parent], merged[e.child]);
            let (ra, rb) = (find(&mut forest, a), find(&mut forest, b));
            if ra == rb {
                return false;
            }
            forest[ra] = rb;
        }
        true
    }

    /// The module `P/V`.
    pub fn build<F: Field>(&self, alg: &Arc<Algebra<F>>) -> Result<Representation<F>> {
        let (p, _) = self.presentation(alg)?;
        Ok(p)
    }

    /// `P/V` together with `(P, V)`.
    pub fn presentation<F: Field>(
        &self,
        alg: &Arc<Algebra<F>>,
    ) -> Result<(Representation<F>, (Representation<F>, Vec<Subspace<F>>))> {
        let f = alg.field();
        let q = alg.quiver();
        let top_vertices: Vec<Vertex> = self.tops.iter().map(|&t| self.nodes[t].vertex).collect();
        let (proj, labels) = projective_sum(alg, &top_vertices);
        let pos: Vec<HashMap<(usize, usize), usize>> = labels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &k)| (k, i)).collect())
            .collect();
        let element = |root: usize, path: &Path| -> F::Vector {
            let w = path.target();
            let mut v = f.zeros(proj.dim_at(w));
            for (b, c) in alg.normal_form(path) {
                f.set(&mut v, pos[w][&(root, b)], c);
            }
            v
        };
        let mut gens: Vec<(Vertex, F::Vector)> = Vec::new();
        for (u, node) in self.nodes.iter().enumerate() {
            for a in q.arrows_from(node.vertex) {
                if self.edges.iter().any(|e| e.parent == u && e.arrow == a) {
                    continue;
                }
                let path = compose_paths(&q.arrow_path(a), &node.path).expect("arrow leaves node");
                let v = element(node.root, &path);
                if !f.is_zero_vec(&v) {
                    gens.push((q.arrow(a).target, v));
                }
            }
        }
        for class in &self.identifications {
            let first = &self.nodes[class[0]];
            let base = element(first.root, &first.path);
            for &other in &class[1..] {
                let o = &self.nodes[other];
                let mut d = element(o.root, &o.path);
                f.axpy(&mut d, &f.neg(&f.one()), &base);
                if !f.is_zero_vec(&d) {
                    gens.push((first.vertex, d));
                }
            }
        }
        for combo in &self.kills {
            let w = self.nodes[combo[0].1].vertex;
            let mut d = f.zeros(proj.dim_at(w));
            for &(c, n) in combo {
                let node = &self.nodes[n];
                f.axpy(&mut d, &f.from_i64(c), &element(node.root, &node.path));
            }
            if !f.is_zero_vec(&d) {
                gens.push((w, d));
            }
        }
        let v = proj.generated(&gens);
        let m = proj.quotient(&v);
        Ok((m, (proj, v)))
    }

    pub fn to_text(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for &t in &self.tops {
            let _ = writeln!(s, "top {}: {}", self.nodes[t].name, q.vertex_name(self.nodes[t].vertex));
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "edge {} --{}--> {}",
                self.nodes[e.parent].name,
                q.arrow(e.arrow).name,
                self.nodes[e.child].name
            );
        }
        for class in &self.identifications {
            let names: Vec<&str> = class.iter().map(|&n| self.nodes[n].name.as_str()).collect();
            let _ = writeln!(s, "identify {}", names.join(" "));
        }
        for combo in &self.kills {
            let terms: Vec<String> = combo
                .iter()
                .map(|&(c, n)| {
                    if c == 1 {
                        self.nodes[n].name.clone()
                    } else {
                        format!("{c}*{}", self.nodes[n].name)
                    }
                })
                .collect();
            let _ = writeln!(s, "kill {}", terms.join(" + "));
        }
        s
    }
}

fn col_of(line: &str, token: &str) -> usize {
    line.find(token).map(|i| i + 1).unwrap_or(1)
}

/// Parse and build in one step.
pub fn parse_layered_graph<F: Field>(text: &str, alg: &Arc<Algebra<F>>) -> Result<Representation<F>> {
    LayeredGraph::parse(text, alg.quiver())?.build(alg)
}
