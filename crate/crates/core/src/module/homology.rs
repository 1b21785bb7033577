//! Projective covers, syzygies and projective dimension.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::iso::{decompose, fingerprint, is_isomorphic, Fingerprint, SearchBudget};
use super::representation::{projective_sum, ModuleMap, Representation};
use crate::algebra::Algebra;
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::quiver::Vertex;

/// A minimal projective cover `π: P → M` and its kernel.
#[derive(Clone, Debug)]
pub struct Cover<F: Field> {
    /// Top elements of `M`; summand `i` of `P` maps its generator to `tops[i]`.
    pub tops: Vec<(Vertex, F::Vector)>,
    pub projective: Representation<F>,
    /// Per vertex, the `(summand, basis path)` label of each coordinate of `P`.
    pub labels: Vec<Vec<(usize, usize)>>,
    /// `π` at each vertex.
    pub map: Vec<Matrix<F>>,
    /// `ker π` at each vertex, inside `P`.
    pub kernel: Vec<Subspace<F>>,
}

impl<F: Field> Cover<F> {
    pub fn new(m: &Representation<F>) -> Self {
        Self::with_tops(m, m.top_elements())
    }

    /// Cover using the given top elements, which must be independent modulo `JM`.
    pub fn with_tops(m: &Representation<F>, tops: Vec<(Vertex, F::Vector)>) -> Self {
        let alg = m.algebra();
        let f = m.field();
        let top_vertices: Vec<Vertex> = tops.iter().map(|t| t.0).collect();
        let (projective, labels) = projective_sum(alg, &top_vertices);
        let nv = m.dims().len();
        let mut map = Vec::with_capacity(nv);
        let mut kernel = Vec::with_capacity(nv);
        for w in 0..nv {
            let cols: Vec<F::Vector> = labels[w]
                .iter()
                .map(|&(i, b)| m.act_basis(b, &tops[i].1))
                .collect();
            let pi = Matrix::from_columns(f, m.dim_at(w), &cols);
            kernel.push(Subspace::span(f, labels[w].len(), pi.kernel()));
            map.push(pi);
        }
        Cover {
            tops,
            projective,
            labels,
            map,
            kernel,
        }
    }

    pub fn is_projective(&self) -> bool {
        self.kernel.iter().all(|k| k.dim() == 0)
    }

    pub fn top_vertices(&self) -> Vec<Vertex> {
        self.tops.iter().map(|t| t.0).collect()
    }

    /// `Ω¹(M) = ker π` as a module in its own coordinates.
    pub fn syzygy(&self) -> Representation<F> {
        self.projective.subrep(&self.kernel)
    }

    pub fn cover_map(&self) -> ModuleMap<F> {
        ModuleMap {
            blocks: self.map.clone(),
        }
    }

    /// Minimality: `ker π ⊆ JP`.
    pub fn is_minimal(&self) -> bool {
        let rad = self.projective.radical();
        self.kernel.iter().zip(rad.iter()).all(|(k, r)| r.contains_subspace(k))
    }
}

/// `(P, π)` for the minimal projective cover of `M`.
pub fn projective_cover<F: Field>(m: &Representation<F>) -> (Representation<F>, ModuleMap<F>) {
    let c = Cover::new(m);
    let map = c.cover_map();
    (c.projective, map)
}

/// The `k`-th syzygy of `M` along minimal covers.
pub fn syzygy<F: Field>(m: &Representation<F>, k: usize) -> Representation<F> {
    let mut cur = m.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = Cover::new(&cur).syzygy();
    }
    cur
}

/// Projective dimension, with honest handling of what could not be decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pdim {
    Finite(usize),
    InfiniteDetected(String),
    ExceedsCutoff(usize),
}

impl Pdim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Pdim::Finite(d) => Some(*d),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Pdim::InfiniteDetected(_))
    }

    pub fn render(&self) -> String {
        match self {
            Pdim::Finite(d) => d.to_string(),
            Pdim::InfiniteDetected(_) => "inf".to_string(),
            Pdim::ExceedsCutoff(c) => format!(">{c}"),
        }
    }

    /// `pdim(A ⊕ B)` from the two parts.
    pub fn join(self, other: Pdim) -> Pdim {
        match (self, other) {
            (a @ Pdim::InfiniteDetected(_), _) => a,
            (_, b @ Pdim::InfiniteDetected(_)) => b,
            (a @ Pdim::ExceedsCutoff(_), _) => a,
            (_, b @ Pdim::ExceedsCutoff(_)) => b,
            (Pdim::Finite(a), Pdim::Finite(b)) => Pdim::Finite(a.max(b)),
        }
    }
}

/// One row of a minimal resolution.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionStep {
    /// Top multiplicities of the projective term, by vertex.
    pub projective_top: Vec<usize>,
    /// Dimension vector of the syzygy after this step.
    pub syzygy_dims: Vec<usize>,
}

/// The first `max_len` steps of the minimal resolution, stopping at zero.
pub fn minimal_resolution<F: Field>(m: &Representation<F>, max_len: usize) -> Vec<ResolutionStep> {
    let mut out = Vec::new();
    let mut cur = m.clone();
    let nv = m.dims().len();
    for _ in 0..=max_len {
        if cur.is_zero() {
            break;
        }
        let c = Cover::new(&cur);
        let mut top = vec![0; nv];
        for (v, _) in &c.tops {
            top[*v] += 1;
        }
        cur = c.syzygy();
        out.push(ResolutionStep {
            projective_top: top,
            syzygy_dims: cur.dims().to_vec(),
        });
    }
    out
}

/// Optional exact shortcut consulted before resolving a summand.
pub type PdimHook<F> = Arc<dyn Fn(&Representation<F>) -> Option<Pdim> + Send + Sync>;

#[derive(Clone, Copy, Debug)]
pub struct ResolverOptions {
    pub cutoff: usize,
    /// Split syzygies into summands and resolve each on its own.
    pub decompose: bool,
    pub search: SearchBudget,
}

impl Default for ResolverOptions {
    fn default() -> Self {
        ResolverOptions {
            cutoff: 32,
            decompose: true,
            search: SearchBudget::default(),
        }
    }
}

#[derive(Clone, Debug)]
enum SimpleState {
    Unknown,
    InProgress,
    Known(Pdim),
}

/// Computes projective dimensions, remembering every module it has settled.
///
/// Infinite projective dimension is only declared on proof: a syzygy with a
/// direct summand `S(v)` of infinite projective dimension, a summand
/// isomorphic (certainly) to one of its own ancestors in the resolution, or
/// an exact shortcut supplied through [`Resolver::with_hook`].
pub struct Resolver<F: Field> {
    alg: Arc<Algebra<F>>,
    opts: ResolverOptions,
    simples: Vec<SimpleState>,
    catalogue: HashMap<Fingerprint, Vec<(Representation<F>, Pdim)>>,
    hook: Option<PdimHook<F>>,
}

impl<F: Field> Resolver<F> {
    pub fn new(alg: &Arc<Algebra<F>>, opts: ResolverOptions) -> Self {
        Resolver {
            alg: alg.clone(),
            opts,
            simples: vec![SimpleState::Unknown; alg.quiver().vertex_count()],
            catalogue: HashMap::new(),
            hook: None,
        }
    }

    pub fn with_hook(mut self, hook: PdimHook<F>) -> Self {
        self.hook = Some(hook);
        self
    }

    pub fn options(&self) -> &ResolverOptions {
        &self.opts
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn pdim(&mut self, m: &Representation<F>) -> Pdim {
        if m.is_zero() {
            return Pdim::Finite(0);
        }
        let parts = self.split(m);
        let mut acc = Pdim::Finite(0);
        let mut ancestors = Vec::new();
        for p in parts {
            acc = acc.join(self.resolve(&p, &mut ancestors, 0));
            if acc.is_infinite() {
                break;
            }
        }
        acc
    }

    pub fn simple_pdim(&mut self, v: Vertex) -> Option<Pdim> {
        match &self.simples[v] {
            SimpleState::Known(p) => return Some(p.clone()),
            SimpleState::InProgress => return None,
            SimpleState::Unknown => {}
        }
        self.simples[v] = SimpleState::InProgress;
        let s = Representation::simple(&self.alg, v);
        let p = self.resolve(&s, &mut Vec::new(), 0);
        if matches!(p, Pdim::ExceedsCutoff(_)) {
            self.simples[v] = SimpleState::Unknown;
        } else {
            self.simples[v] = SimpleState::Known(p.clone());
        }
        Some(p)
    }

    fn split(&self, m: &Representation<F>) -> Vec<Representation<F>> {
        if self.opts.decompose {
            decompose(m, &self.opts.search).summands
        } else {
            vec![m.clone()]
        }
    }

    fn lookup(&self, fp: &Fingerprint, m: &Representation<F>) -> Option<Pdim> {
        let entries = self.catalogue.get(fp)?;
        entries
            .iter()
            .find(|(x, _)| is_isomorphic(x, m, &self.opts.search).is_yes())
            .map(|(_, p)| p.clone())
    }

    fn remember(&mut self, fp: Fingerprint, m: &Representation<F>, p: &Pdim) {
        if !matches!(p, Pdim::ExceedsCutoff(_)) {
            self.catalogue.entry(fp).or_default().push((m.clone(), p.clone()));
        }
    }

    fn resolve(
        &mut self,
        y: &Representation<F>,
        ancestors: &mut Vec<(Representation<F>, Fingerprint)>,
        depth: usize,
    ) -> Pdim {
        let fp = fingerprint(y);
        if let Some(p) = self.lookup(&fp, y) {
            return p;
        }
        if let Some(hook) = &self.hook {
            if let Some(p) = hook(y) {
                self.remember(fp, y, &p);
                return p;
            }
        }
        let cover = Cover::new(y);
        if cover.is_projective() {
            let p = Pdim::Finite(0);
            self.remember(fp, y, &p);
            return p;
        }
        if depth >= self.opts.cutoff {
            return Pdim::ExceedsCutoff(self.opts.cutoff);
        }
        let omega = cover.syzygy();
        if let Some(v) = self.infinite_simple_summand(&omega) {
            let p = Pdim::InfiniteDetected(format!(
                "syzygy has a direct summand S({}) of infinite projective dimension",
                self.alg.quiver().vertex_name(v)
            ));
            self.remember(fp, y, &p);
            return p;
        }

        ancestors.push((y.clone(), fp.clone()));
        let mut acc = Pdim::Finite(0);
        for z in self.split(&omega) {
            let zfp = fingerprint(&z);
            let back = ancestors
                .iter()
                .rev()
                .position(|(a, afp)| *afp == zfp && is_isomorphic(a, &z, &self.opts.search).is_yes());
            let r = match back {
                Some(k) => Pdim::InfiniteDetected(format!(
                    "a summand recurs {} syzygies later (periodic resolution)",
                    k + 1
                )),
                None => self.resolve(&z, ancestors, depth + 1),
            };
            acc = acc.join(r);
            if acc.is_infinite() {
                break;
            }
        }
        ancestors.pop();
        let p = match acc {
            Pdim::Finite(d) => Pdim::Finite(d + 1),
            other => other,
        };
        self.remember(fp, y, &p);
        p
    }

    fn infinite_simple_summand(&mut self, m: &Representation<F>) -> Option<Vertex> {
        let soc = m.socle();
        let rad = m.radical();
        for v in 0..soc.len() {
            if soc[v].dim() == 0 || rad[v].contains_subspace(&soc[v]) {
                continue;
            }
            if let Some(p) = self.simple_pdim(v) {
                if p.is_infinite() {
                    return Some(v);
                }
            }
        }
        None
    }
}

/// One-shot projective dimension with default options and the given cutoff.
pub fn projective_dimension<F: Field>(m: &Representation<F>, cutoff: usize) -> Pdim {
    let mut r = Resolver::new(
        m.algebra(),
        ResolverOptions {
            cutoff,
            ..Default::default()
        },
    );
    r.pdim(m)
}
