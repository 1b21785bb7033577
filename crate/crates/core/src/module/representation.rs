use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Relation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::quiver::{Path, Vertex};

/// A finite-dimensional left module given as a quiver representation.
///
/// `maps[a]` has shape `dims[target(a)] × dims[source(a)]`.
#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    alg: Arc<Algebra<F>>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<F: Field> {
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn compose(&self, inner: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap {
            blocks: self.blocks.iter().zip(inner.blocks.iter()).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }
}

/// Radical layers, socle and Loewy length of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layers {
    pub dimension_vector: Vec<usize>,
    pub top: Vec<usize>,
    /// `radical_layers[k]` is the dimension vector of `J^k M / J^{k+1} M`.
    pub radical_layers: Vec<Vec<usize>>,
    pub socle: Vec<usize>,
    pub loewy_length: usize,
}

impl<F: Field> Representation<F> {
    /// Build and check shapes and relations.
    pub fn new(alg: Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let rep = Representation { alg, dims, maps };
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        let rep = Representation { alg, dims, maps };
        debug_assert!(rep.validate().is_ok());
        rep
    }

    pub fn zero(alg: &Arc<Algebra<F>>) -> Self {
        let q = alg.quiver();
        let f = alg.field();
        Representation {
            alg: alg.clone(),
            dims: vec![0; q.vertex_count()],
            maps: q.arrows().iter().map(|_| Matrix::zero(f, 0, 0)).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.alg.quiver();
        if self.dims.len() != q.vertex_count() || self.maps.len() != q.arrow_count() {
            return Err(Error::InvalidModule("wrong number of vertex spaces or arrow maps".into()));
        }
        for (a, m) in self.maps.iter().enumerate() {
            let ar = q.arrow(a);
            if m.rows() != self.dims[ar.target] || m.cols() != self.dims[ar.source] {
                return Err(Error::InvalidModule(format!("map of arrow `{}` has the wrong shape", ar.name)));
            }
        }
        for r in self.alg.relations() {
            let ok = match r {
                Relation::Monomial(p) => self.path_matrix(p).is_zero(),
                Relation::Binomial(p, s) => self.path_matrix(p) == self.path_matrix(s),
            };
            if !ok {
                return Err(Error::InvalidModule(format!("relation `{}` does not hold", r.render(q))));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: Vertex) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Vertices where the module is nonzero.
    pub fn support(&self) -> Vec<Vertex> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    /// The matrix by which a path acts.
    pub fn path_matrix(&self, p: &Path) -> Matrix<F> {
        let f = self.field();
        let mut m = Matrix::identity(f, self.dims[p.source()]);
        for &a in p.arrows() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Apply a path to a vector sitting at its source vertex.
    pub fn act(&self, p: &Path, x: &F::Vector) -> F::Vector {
        let mut y = x.clone();
        for &a in p.arrows() {
            y = self.maps[a].apply(&y);
        }
        y
    }

    /// Apply basis element `i` of the algebra.
    pub fn act_basis(&self, i: usize, x: &F::Vector) -> F::Vector {
        self.act(self.alg.basis_path(i), x)
    }

    /// `JM` at every vertex.
    pub fn radical(&self) -> Vec<Subspace<F>> {
        let full: Vec<Subspace<F>> = self.dims.iter().map(|&d| Subspace::full(self.field(), d)).collect();
        self.radical_of(&full)
    }

    /// `J·U` for a vertex-graded subspace `U`.
    pub fn radical_of(&self, u: &[Subspace<F>]) -> Vec<Subspace<F>> {
        let q = self.alg.quiver();
        let f = self.field();
        let mut gens: Vec<Vec<F::Vector>> = vec![Vec::new(); self.dims.len()];
        for (a, m) in self.maps.iter().enumerate() {
            let ar = q.arrow(a);
            for x in u[ar.source].basis() {
                let y = m.apply(x);
                if !f.is_zero_vec(&y) {
                    gens[ar.target].push(y);
                }
            }
        }
        gens.into_iter()
            .enumerate()
            .map(|(v, g)| Subspace::span(f, self.dims[v], g))
            .collect()
    }

    /// Joint kernel of all arrows leaving each vertex.
    pub fn socle(&self) -> Vec<Subspace<F>> {
        let q = self.alg.quiver();
        let f = self.field();
        (0..self.dims.len())
            .map(|v| {
                let outs: Vec<usize> = q.arrows_from(v).collect();
                if outs.is_empty() {
                    return Subspace::full(f, self.dims[v]);
                }
                let mut stacked = Matrix::zero(f, 0, self.dims[v]);
                for a in outs {
                    stacked = stacked.vstack(&self.maps[a]);
                }
                Subspace::span(f, self.dims[v], stacked.kernel())
            })
            .collect()
    }

    /// Top elements: unit vectors spanning a complement of `JM` at each vertex.
    pub fn top_elements(&self) -> Vec<(Vertex, F::Vector)> {
        let f = self.field();
        let rad = self.radical();
        let mut out = Vec::new();
        for (v, r) in rad.iter().enumerate() {
            for j in r.non_pivots() {
                out.push((v, f.unit(self.dims[v], j)));
            }
        }
        out
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical()
            .iter()
            .enumerate()
            .map(|(v, r)| self.dims[v] - r.dim())
            .collect()
    }

    pub fn layers(&self) -> Layers {
        let mut layers = Vec::new();
        let mut cur: Vec<Subspace<F>> = self.dims.iter().map(|&d| Subspace::full(self.field(), d)).collect();
        let mut loewy = 0;
        while cur.iter().any(|s| s.dim() > 0) {
            let next = self.radical_of(&cur);
            layers.push(cur.iter().zip(next.iter()).map(|(a, b)| a.dim() - b.dim()).collect::<Vec<_>>());
            cur = next;
            loewy += 1;
            if loewy > self.alg.nilp() + 1 {
                break;
            }
        }
        Layers {
            dimension_vector: self.dims.clone(),
            top: layers.first().cloned().unwrap_or_else(|| vec![0; self.dims.len()]),
            radical_layers: layers,
            socle: self.socle().iter().map(|s| s.dim()).collect(),
            loewy_length: loewy,
        }
    }

    pub fn loewy_length(&self) -> usize {
        self.layers().loewy_length
    }

    /// Whether a vertex-graded subspace is closed under all arrows.
    pub fn is_submodule(&self, u: &[Subspace<F>]) -> bool {
        let q = self.alg.quiver();
        self.maps.iter().enumerate().all(|(a, m)| {
            let ar = q.arrow(a);
            u[ar.source].basis().iter().all(|x| u[ar.target].contains(&m.apply(x)))
        })
    }

    /// The smallest submodule containing the given graded elements.
    pub fn generated(&self, gens: &[(Vertex, F::Vector)]) -> Vec<Subspace<F>> {
        let f = self.field();
        let q = self.alg.quiver();
        let mut spaces: Vec<Subspace<F>> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        let mut queue: Vec<(Vertex, F::Vector)> = gens.to_vec();
        while let Some((v, x)) = queue.pop() {
            let r = spaces[v].reduce(&x);
            if f.is_zero_vec(&r) {
                continue;
            }
            let mut b = spaces[v].basis().to_vec();
            b.push(r.clone());
            spaces[v] = Subspace::span(f, self.dims[v], b);
            for a in q.arrows_from(v) {
                let y = self.maps[a].apply(&r);
                if !f.is_zero_vec(&y) {
                    queue.push((q.arrow(a).target, y));
                }
            }
        }
        spaces
    }

    /// The submodule on the given graded subspace, in its echelon coordinates.
    pub fn subrep(&self, u: &[Subspace<F>]) -> Representation<F> {
        let f = self.field();
        let q = self.alg.quiver();
        let dims: Vec<usize> = u.iter().map(|s| s.dim()).collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let ar = q.arrow(a);
                let cols: Vec<F::Vector> = u[ar.source]
                    .basis()
                    .iter()
                    .map(|x| {
                        let y = m.apply(x);
                        debug_assert!(u[ar.target].contains(&y));
                        f.from_elems(&u[ar.target].coords(&y))
                    })
                    .collect();
                Matrix::from_columns(f, dims[ar.target], &cols)
            })
            .collect();
        Representation::new_unchecked(self.alg.clone(), dims, maps)
    }

    /// `M/U`, with coordinates the non-pivot positions of each `U_v`.
    pub fn quotient(&self, u: &[Subspace<F>]) -> Representation<F> {
        let f = self.field();
        let q = self.alg.quiver();
        let keep: Vec<Vec<usize>> = u.iter().map(|s| s.non_pivots()).collect();
        let dims: Vec<usize> = keep.iter().map(|k| k.len()).collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let ar = q.arrow(a);
                let (s, t) = (ar.source, ar.target);
                let cols: Vec<F::Vector> = keep[s]
                    .iter()
                    .map(|&j| {
                        let y = u[t].reduce(&m.apply(&f.unit(self.dims[s], j)));
                        let elems: Vec<F::Elem> = keep[t].iter().map(|&i| f.get(&y, i)).collect();
                        f.from_elems(&elems)
                    })
                    .collect();
                Matrix::from_columns(f, dims[t], &cols)
            })
            .collect();
        Representation::new_unchecked(self.alg.clone(), dims, maps)
    }

    pub fn direct_sum(&self, other: &Representation<F>) -> Representation<F> {
        let dims = self.dims.iter().zip(other.dims.iter()).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(other.maps.iter())
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Representation::new_unchecked(self.alg.clone(), dims, maps)
    }

    pub fn direct_sum_all(alg: &Arc<Algebra<F>>, parts: &[Representation<F>]) -> Representation<F> {
        let mut acc = Representation::zero(alg);
        for p in parts {
            acc = acc.direct_sum(p);
        }
        acc
    }

    pub fn power(&self, n: usize) -> Representation<F> {
        Representation::direct_sum_all(&self.alg, &vec![self.clone(); n])
    }

    /// Transport the module along an invertible change of basis at each vertex.
    pub fn conjugate(&self, change: &[Matrix<F>]) -> Option<Representation<F>> {
        let q = self.alg.quiver();
        let inv: Vec<Matrix<F>> = change.iter().map(|c| c.inverse()).collect::<Option<_>>()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let ar = q.arrow(a);
                change[ar.target].mul(m).mul(&inv[ar.source])
            })
            .collect();
        Some(Representation::new_unchecked(self.alg.clone(), self.dims.clone(), maps))
    }

    /// The simple module `S(v)`.
    pub fn simple(alg: &Arc<Algebra<F>>, v: Vertex) -> Self {
        let q = alg.quiver();
        let f = alg.field();
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|a| Matrix::zero(f, dims[a.target], dims[a.source]))
            .collect();
        Representation::new_unchecked(alg.clone(), dims, maps)
    }

    /// The indecomposable projective `Λv`.
    pub fn projective(alg: &Arc<Algebra<F>>, v: Vertex) -> Self {
        projective_sum(alg, &[v]).0
    }

    /// The cyclic left ideal `Λp` of a basis path `p`, as a submodule of `Λ·source(p)`.
    pub fn path_ideal(alg: &Arc<Algebra<F>>, p: &Path) -> Result<Self> {
        let idx = alg
            .basis_index(p)
            .ok_or_else(|| Error::ZeroPath(alg.quiver().render(p)))?;
        let (proj, labels) = projective_sum(alg, &[p.source()]);
        let w = p.target();
        let pos = labels[w].iter().position(|&(_, q)| q == idx).expect("basis path from source");
        let gen = alg.field().unit(proj.dims[w], pos);
        let sub = proj.generated(&[(w, gen)]);
        Ok(proj.subrep(&sub))
    }

    pub fn render_summary(&self) -> String {
        let q = self.alg.quiver();
        let parts: Vec<String> = self
            .support()
            .iter()
            .map(|&v| format!("{}:{}", q.vertex_name(v), self.dims[v]))
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

/// `⊕ Λ v_i` together with, per vertex, the `(summand, basis path)` label of each coordinate.
pub fn projective_sum<F: Field>(
    alg: &Arc<Algebra<F>>,
    tops: &[Vertex],
) -> (Representation<F>, Vec<Vec<(usize, usize)>>) {
    let q = alg.quiver();
    let f = alg.field();
    let nv = q.vertex_count();
    let mut labels: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    let mut pos = std::collections::HashMap::new();
    for (i, &v) in tops.iter().enumerate() {
        for &b in alg.paths_from(v) {
            let w = alg.basis_path(b).target();
            pos.insert((i, b), labels[w].len());
            labels[w].push((i, b));
        }
    }
    let dims: Vec<usize> = labels.iter().map(|l| l.len()).collect();
    let maps = (0..q.arrow_count())
        .map(|a| {
            let ar = q.arrow(a);
            let ae = alg.arrow_element(a);
            let mut m = Matrix::zero(f, dims[ar.target], dims[ar.source]);
            for (col, &(i, b)) in labels[ar.source].iter().enumerate() {
                for (b2, c) in alg.mul_basis(ae, b) {
                    m.set(pos[&(i, *b2)], col, c.clone());
                }
            }
            m
        })
        .collect();
    (Representation::new_unchecked(alg.clone(), dims, maps), labels)
}
