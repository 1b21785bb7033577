//! Quivers and paths.
//!
//! Paths are stored in traversal order (first arrow first). Products follow the
//! convention `pq = q followed by p`, and paths are rendered right to left, so
//! the rendering `b*a` means "first `a`, then `b`".

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: Vertex,
    pub target: Vertex,
}

/// A finite quiver with named vertices and arrows, ordered by declaration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, Vertex>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<Vertex> {
        if self.vertex_index.contains_key(name) || self.arrow_index.contains_key(name) {
            return Err(Error::Duplicate(name.to_string()));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId> {
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        self.add_arrow_ids(name, s, t)
    }

    pub fn add_arrow_ids(&mut self, name: &str, source: Vertex, target: Vertex) -> Result<ArrowId> {
        if self.arrow_index.contains_key(name) || self.vertex_index.contains_key(name) {
            return Err(Error::Duplicate(name.to_string()));
        }
        if source >= self.vertices.len() {
            return Err(Error::UnknownVertex(source.to_string()));
        }
        if target >= self.vertices.len() {
            return Err(Error::UnknownVertex(target.to_string()));
        }
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrows_from(&self, v: Vertex) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: Vertex) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Vertices with no incoming arrow. A loop makes its vertex a non-source.
    pub fn sources(&self) -> Vec<Vertex> {
        (0..self.vertices.len()).filter(|&v| self.is_source(v)).collect()
    }

    pub fn is_source(&self, v: Vertex) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    /// The full subquiver on `keep`, with maps from old to new vertex and arrow ids.
    pub fn full_subquiver(&self, keep: &[Vertex]) -> (Quiver, Vec<Option<Vertex>>, Vec<Option<ArrowId>>) {
        let mut sub = Quiver::new();
        let mut vmap = vec![None; self.vertices.len()];
        for v in 0..self.vertices.len() {
            if keep.contains(&v) {
                vmap[v] = Some(sub.add_vertex(&self.vertices[v]).expect("names unique"));
            }
        }
        let mut amap = vec![None; self.arrows.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            if let (Some(s), Some(t)) = (vmap[a.source], vmap[a.target]) {
                amap[i] = Some(sub.add_arrow_ids(&a.name, s, t).expect("names unique"));
            }
        }
        (sub, vmap, amap)
    }

    pub fn trivial(&self, v: Vertex) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let ar = &self.arrows[a];
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    /// Build a path from arrows listed in traversal order.
    pub fn path_from_traversal(&self, arrows: &[ArrowId]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::NotComposable(String::new()));
        };
        let mut p = self.arrow_path(first);
        for &a in &arrows[1..] {
            let ar = &self.arrows[a];
            if ar.source != p.target {
                return Err(Error::NotComposable(self.render_arrows(arrows)));
            }
            p.arrows.push(a);
            p.target = ar.target;
        }
        Ok(p)
    }

    /// Parse `c*b*a`, where the rightmost arrow is traversed first.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let mut names: Vec<&str> = text.split('*').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::NotComposable(text.to_string()));
        }
        names.reverse();
        let ids = names
            .iter()
            .map(|n| self.arrow_id(n))
            .collect::<Result<Vec<_>>>()?;
        self.path_from_traversal(&ids)
    }

    fn render_arrows(&self, traversal: &[ArrowId]) -> String {
        traversal
            .iter()
            .rev()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Right-to-left rendering; trivial paths render as `e_<vertex>`.
    pub fn render(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            self.render_arrows(&p.arrows)
        }
    }
}

/// A path, stored in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: Vertex,
    target: Vertex,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Arrows in traversal order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// The initial segment of the traversal with `k` arrows.
    pub fn initial(&self, k: usize, q: &Quiver) -> Path {
        if k == 0 {
            Path::trivial(self.source)
        } else {
            Path {
                source: self.source,
                target: q.arrow(self.arrows[k - 1]).target,
                arrows: self.arrows[..k].to_vec(),
            }
        }
    }

    /// The final segment of the traversal after dropping `k` arrows.
    pub fn tail_after(&self, k: usize, q: &Quiver) -> Path {
        if k == self.arrows.len() {
            Path::trivial(self.target)
        } else {
            Path {
                source: q.arrow(self.arrows[k]).source,
                target: self.target,
                arrows: self.arrows[k..].to_vec(),
            }
        }
    }

    /// Length-lexicographic comparison key.
    pub fn order_key(&self) -> (usize, &[ArrowId], Vertex) {
        (self.arrows.len(), &self.arrows, self.source)
    }
}

/// `pq`, meaning `q` followed by `p`; `None` unless `target(q) = source(p)`.
pub fn compose_paths(p: &Path, q: &Path) -> Option<Path> {
    if q.target != p.source {
        return None;
    }
    let mut arrows = q.arrows.clone();
    arrows.extend_from_slice(&p.arrows);
    Some(Path {
        source: q.source,
        target: p.target,
        arrows,
    })
}

/// All paths of length at most `max_len`, length-lexicographic by arrow id.
pub fn enumerate_paths(q: &Quiver, max_len: usize, cap: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    if out.len() > cap {
        return Err(Error::Budget { cap });
    }
    let mut layer: Vec<Path> = Vec::new();
    for len in 1..=max_len {
        let mut next = Vec::new();
        if len == 1 {
            next.extend((0..q.arrow_count()).map(|a| q.arrow_path(a)));
        } else {
            for p in &layer {
                for a in q.arrows_from(p.target) {
                    let mut e = p.clone();
                    e.arrows.push(a);
                    e.target = q.arrow(a).target;
                    next.push(e);
                }
            }
            next.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        }
        if out.len() + next.len() > cap {
            return Err(Error::Budget { cap });
        }
        out.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_quiver() -> Quiver {
        let mut q = Quiver::new();
        q.add_vertex("v").unwrap();
        q.add_arrow("eps", "v", "v").unwrap();
        q
    }

    #[test]
    fn loop_paths() {
        let q = loop_quiver();
        let ps = enumerate_paths(&q, 3, 100).unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(q.render(&ps[3]), "eps*eps*eps");
        assert!(q.sources().is_empty());
    }

    #[test]
    fn compose_convention() {
        let mut q = Quiver::new();
        for v in ["a", "b", "c"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("x", "a", "b").unwrap();
        q.add_arrow("y", "b", "c").unwrap();
        let x = q.arrow_path(0);
        let y = q.arrow_path(1);
        let yx = compose_paths(&y, &x).unwrap();
        assert_eq!(yx.source(), 0);
        assert_eq!(q.render(&yx), "y*x");
        assert!(compose_paths(&x, &y).is_none());
        assert_eq!(compose_paths(&Path::trivial(1), &x), Some(x.clone()));
        assert_eq!(q.parse_path("y*x").unwrap(), yx);
        assert!(q.parse_path("x*y").is_err());
    }

    #[test]
    fn duplicates_rejected() {
        let mut q = loop_quiver();
        assert!(q.add_vertex("v").is_err());
        assert!(q.add_arrow("eps", "v", "v").is_err());
        assert!(q.add_arrow("z", "v", "w").is_err());
    }

    #[test]
    fn budget_cap() {
        let q = loop_quiver();
        assert!(matches!(enumerate_paths(&q, 10, 5), Err(Error::Budget { cap: 5 })));
    }
}
