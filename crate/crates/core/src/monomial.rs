//! Syzygy calculus for monomial algebras: annihilator graphs, critical paths,
//! the invariant `s`, and checks of the syzygy structure theorem.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;
use crate::module::homology::{Cover, PdimHook};
use crate::module::{decompose, hom, is_isomorphic, Pdim, Representation, SearchBudget};
use crate::quiver::{compose_paths, Path, Vertex};

fn require_monomial<F: Field>(alg: &Algebra<F>) -> Result<()> {
    if alg.is_monomial() {
        Ok(())
    } else {
        Err(Error::NotMonomial)
    }
}

/// `q·p = 0` in the algebra (including products that overflow the nilpotency bound).
fn kills<F: Field>(alg: &Algebra<F>, q: &Path, p: &Path) -> bool {
    match compose_paths(q, p) {
        Some(qp) => alg.is_zero_path(&qp),
        None => false,
    }
}

/// Basis paths `q` leaving `target(p)` with `qp = 0` such that no proper
/// initial segment of `q` already kills `p`.
pub fn minimal_annihilators<F: Field>(alg: &Algebra<F>, p: &Path) -> Result<Vec<Path>> {
    require_monomial(alg)?;
    if alg.basis_index(p).is_none() {
        return Err(Error::ZeroPath(alg.quiver().render(p)));
    }
    let q = alg.quiver();
    let mut out = Vec::new();
    for &i in alg.paths_from(p.target()) {
        let cand = alg.basis_path(i);
        if cand.is_trivial() || !kills(alg, cand, p) {
            continue;
        }
        let minimal = (1..cand.len()).all(|k| !kills(alg, &cand.initial(k, q), p));
        if minimal {
            out.push(cand.clone());
        }
    }
    Ok(out)
}

/// Nodes are the basis paths of positive length; `p → q` when `q` is a
/// minimal annihilator of `p`, so that `ker(Λ·target(p) → Λp) = ⊕ Λq`.
#[derive(Clone, Debug)]
pub struct AnnihilatorGraph {
    nodes: Vec<usize>,
    edges: HashMap<usize, Vec<usize>>,
    pdims: HashMap<usize, Pdim>,
    rendered: HashMap<usize, String>,
}

impl AnnihilatorGraph {
    pub fn new<F: Field>(alg: &Algebra<F>) -> Result<Self> {
        require_monomial(alg)?;
        let nodes: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) > 0).collect();
        let mut edges = HashMap::new();
        let mut rendered = HashMap::new();
        for &i in &nodes {
            let anns = minimal_annihilators(alg, alg.basis_path(i))?;
            let targets = anns
                .iter()
                .map(|q| alg.basis_index(q).expect("annihilators are basis paths"))
                .collect();
            edges.insert(i, targets);
            rendered.insert(i, alg.render_basis(i));
        }
        let mut g = AnnihilatorGraph {
            nodes,
            edges,
            pdims: HashMap::new(),
            rendered,
        };
        let mut state: HashMap<usize, u8> = HashMap::new();
        for &i in &g.nodes.clone() {
            g.visit(i, &mut state);
        }
        Ok(g)
    }

    fn visit(&mut self, i: usize, state: &mut HashMap<usize, u8>) -> Pdim {
        match state.get(&i) {
            Some(2) => return self.pdims[&i].clone(),
            Some(1) => {
                return Pdim::InfiniteDetected(format!(
                    "annihilator cycle through {}",
                    self.rendered[&i]
                ))
            }
            _ => {}
        }
        state.insert(i, 1);
        let mut acc: Option<Pdim> = None;
        for j in self.edges[&i].clone() {
            let p = self.visit(j, state);
            acc = Some(match acc {
                None => p,
                Some(a) => a.join(p),
            });
            if acc.as_ref().is_some_and(Pdim::is_infinite) {
                break;
            }
        }
        let p = match acc {
            None => Pdim::Finite(0),
            Some(Pdim::Finite(d)) => Pdim::Finite(d + 1),
            Some(Pdim::InfiniteDetected(why)) => Pdim::InfiniteDetected(why),
            Some(other) => other,
        };
        // A cycle found below may have been closed by a node still on the stack;
        // only finished nodes are memoized.
        state.insert(i, 2);
        self.pdims.insert(i, p.clone());
        p
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn successors(&self, basis_index: usize) -> &[usize] {
        self.edges.get(&basis_index).map_or(&[], |v| v.as_slice())
    }

    /// Projective dimension of `Λp` for the basis path with the given index.
    pub fn pdim(&self, basis_index: usize) -> Option<&Pdim> {
        self.pdims.get(&basis_index)
    }
}

/// `p dim Λp` by longest-path search in the annihilator graph.
pub fn pdim_path_module<F: Field>(alg: &Algebra<F>, p: &Path) -> Result<Pdim> {
    require_monomial(alg)?;
    let idx = alg
        .basis_index(p)
        .ok_or_else(|| Error::ZeroPath(alg.quiver().render(p)))?;
    if p.is_trivial() {
        return Ok(Pdim::Finite(0));
    }
    let g = AnnihilatorGraph::new(alg)?;
    Ok(g.pdim(idx).cloned().expect("every positive-length basis path is a node"))
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPath {
    pub path: String,
    pub pdim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPathReport {
    pub critical: Vec<CriticalPath>,
    pub s: i64,
    pub witness: Option<String>,
    /// `[s + 1, s + 2]`.
    pub interval: (i64, i64),
    /// Every positive-length basis path with its projective dimension.
    pub all_paths: Vec<(String, Pdim)>,
}

pub fn critical_report<F: Field>(alg: &Algebra<F>) -> Result<CriticalPathReport> {
    let g = AnnihilatorGraph::new(alg)?;
    let q = alg.quiver();
    let mut critical = Vec::new();
    let mut all_paths = Vec::new();
    let mut best: Option<(usize, String)> = None;
    for &i in &g.nodes {
        let p = alg.basis_path(i);
        let pd = g.pdims[&i].clone();
        all_paths.push((alg.render_basis(i), pd.clone()));
        if q.is_source(p.source()) {
            continue;
        }
        if let Pdim::Finite(d) = pd {
            let name = alg.render_basis(i);
            if best.as_ref().map_or(true, |(b, _)| d > *b) {
                best = Some((d, name.clone()));
            }
            critical.push(CriticalPath { path: name, pdim: d });
        }
    }
    let s = best.as_ref().map_or(-1, |(d, _)| *d as i64);
    Ok(CriticalPathReport {
        critical,
        s,
        witness: best.map(|(_, n)| n),
        interval: (s + 1, s + 2),
        all_paths,
    })
}

/// `[s + 1, s + 2]`, the interval containing every finitistic dimension.
pub fn findim_interval<F: Field>(alg: &Algebra<F>) -> Result<(i64, i64)> {
    Ok(critical_report(alg)?.interval)
}

/// A shortcut for [`crate::module::Resolver`]: recognizes cyclic modules whose
/// annihilator is spanned by paths and matches them with a path ideal `Λq`.
pub fn path_ideal_hook<F: Field>(alg: &Arc<Algebra<F>>) -> Result<PdimHook<F>> {
    let g = Arc::new(AnnihilatorGraph::new(alg)?);
    let alg = alg.clone();
    Ok(Arc::new(move |x: &Representation<F>| {
        let q = identify_path_ideal(&alg, x)?;
        if q.is_trivial() {
            return Some(Pdim::Finite(0));
        }
        g.pdim(alg.basis_index(&q)?).cloned()
    }))
}

/// If `x ≅ Λq` for a basis path `q`, return such a `q` (trivial when `x` is projective).
pub fn identify_path_ideal<F: Field>(alg: &Arc<Algebra<F>>, x: &Representation<F>) -> Option<Path> {
    let tops = x.top_dims();
    if tops.iter().sum::<usize>() != 1 {
        return None;
    }
    let v = tops.iter().position(|&d| d == 1)?;
    let ann = monomial_annihilator(alg, x)?;
    if ann.is_empty() {
        return Some(Path::trivial(v));
    }
    (0..alg.dim())
        .filter(|&i| alg.degree(i) > 0 && alg.basis_path(i).target() == v)
        .map(|i| alg.basis_path(i))
        .find(|q| {
            let killed: BTreeSet<usize> = alg
                .paths_from(v)
                .iter()
                .copied()
                .filter(|&j| kills(alg, alg.basis_path(j), q))
                .collect();
            killed == ann
        })
        .cloned()
}

/// For a cyclic module, the set of basis paths killing its generator, if the
/// annihilator is spanned by paths.
fn monomial_annihilator<F: Field>(alg: &Arc<Algebra<F>>, x: &Representation<F>) -> Option<BTreeSet<usize>> {
    let f = alg.field();
    let cover = Cover::new(x);
    let mut out = BTreeSet::new();
    for (w, k) in cover.kernel.iter().enumerate() {
        for row in k.basis() {
            let nz: Vec<usize> = (0..k.ambient()).filter(|&c| !f.is_zero(&f.get(row, c))).collect();
            if nz.len() != 1 {
                return None;
            }
            out.insert(cover.labels[w][nz[0]].1);
        }
    }
    Some(out)
}

/// Whether `m` embeds into a projective module: the joint kernel of all maps
/// `m → Λv` must vanish.
pub fn embeds_in_projective<F: Field>(m: &Representation<F>) -> bool {
    let alg = m.algebra();
    let f = m.field();
    let nv = m.dims().len();
    let mut joint: Vec<Subspace<F>> = (0..nv).map(|v| Subspace::full(f, m.dim_at(v))).collect();
    for v in 0..nv {
        let p = Representation::projective(alg, v);
        for h in hom(m, &p) {
            for w in 0..nv {
                let k = Subspace::span(f, m.dim_at(w), h.blocks[w].kernel());
                joint[w] = joint[w].intersect(&k);
            }
        }
        if joint.iter().all(|s| s.dim() == 0) {
            return true;
        }
    }
    joint.iter().all(|s| s.dim() == 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandWitness {
    /// `q` with the summand isomorphic to `Λq`.
    pub path: String,
    /// `αp` from part (2), rendered, with the vertex type of `x`.
    pub alpha_p: Option<String>,
    pub top_type: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub embeds_in_projective: bool,
    pub summands: Vec<SummandWitness>,
    /// Summands of `Ω¹(M)` not recognized as path ideals from `E(M)`.
    pub unmatched: usize,
    /// Summands without a witness pair.
    pub missing_witness: usize,
    pub decomposition_certified: bool,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.unmatched == 0 && self.missing_witness == 0
    }
}

/// Check that `Ω¹(M)` is a direct sum of path ideals `Λq` with `q` starting in
/// `E(M)`, and find for each summand a top element `x` of `M` and a path `αp`
/// with `Λq ≅ Λαp`, `px ∉ J^{len p + 1}M` and `αpx = 0`.
pub fn theorem1_check<F: Field>(
    alg: &Arc<Algebra<F>>,
    m: &Representation<F>,
    budget: &SearchBudget,
) -> Result<SplittingReport> {
    require_monomial(alg)?;
    let f = alg.field();
    let quiver = alg.quiver();
    let embeds = embeds_in_projective(m);
    let omega = Cover::new(m).syzygy();
    let dec = decompose(&omega, budget);
    let e_m: Vec<Vertex> = m
        .top_dims()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(v, _)| v)
        .collect();

    // Radical powers J^k M.
    let mut powers = vec![(0..m.dims().len()).map(|v| Subspace::full(f, m.dim_at(v))).collect::<Vec<_>>()];
    loop {
        let next = m.radical_of(powers.last().expect("nonempty"));
        let done = next.iter().all(|s| s.dim() == 0);
        powers.push(next);
        if done {
            break;
        }
    }
    let jpow = |k: usize, v: Vertex| -> &Subspace<F> { &powers[k.min(powers.len() - 1)][v] };

    let candidates = top_candidates(m, budget);
    let mut ideal_cache: HashMap<usize, Representation<F>> = HashMap::new();
    let mut ideal = |i: usize| -> Representation<F> {
        ideal_cache
            .entry(i)
            .or_insert_with(|| Representation::path_ideal(alg, alg.basis_path(i)).expect("basis path"))
            .clone()
    };

    let mut summands = Vec::new();
    let mut unmatched = 0;
    let mut missing = 0;
    for z in &dec.summands {
        let tops = z.top_dims();
        let matched = if tops.iter().sum::<usize>() == 1 {
            let v = tops.iter().position(|&d| d == 1).expect("one top");
            (0..alg.dim()).find(|&i| {
                let p = alg.basis_path(i);
                alg.degree(i) > 0
                    && p.target() == v
                    && e_m.contains(&p.source())
                    && is_isomorphic(&ideal(i), z, budget).is_yes()
            })
        } else {
            None
        };
        let Some(qi) = matched else {
            unmatched += 1;
            summands.push(SummandWitness {
                path: String::from("?"),
                alpha_p: None,
                top_type: None,
            });
            continue;
        };
        let mut witness = None;
        'search: for (e, x) in &candidates {
            for &pi in alg.paths_from(*e) {
                let p = alg.basis_path(pi);
                let px = m.act(p, x);
                if jpow(p.len() + 1, p.target()).contains(&px) {
                    continue;
                }
                for a in quiver.arrows_from(p.target()) {
                    let ap = compose_paths(&quiver.arrow_path(a), p).expect("composable");
                    let Some(api) = alg.basis_index(&ap) else { continue };
                    if !f.is_zero_vec(&m.act(&ap, x)) {
                        continue;
                    }
                    let tgt = alg.basis_path(qi).target();
                    if ap.target() != tgt {
                        continue;
                    }
                    if is_isomorphic(&ideal(api), &ideal(qi), budget).is_yes() {
                        witness = Some((alg.render_basis(api), quiver.vertex_name(*e).to_string()));
                        break 'search;
                    }
                }
            }
        }
        if witness.is_none() {
            missing += 1;
        }
        summands.push(SummandWitness {
            path: alg.render_basis(qi),
            alpha_p: witness.as_ref().map(|w| w.0.clone()),
            top_type: witness.map(|w| w.1),
        });
    }
    Ok(SplittingReport {
        embeds_in_projective: embeds,
        summands,
        unmatched,
        missing_witness: missing,
        decomposition_certified: dec.certified,
    })
}

/// Top elements of `m` to try: all of them when the field is small enough,
/// otherwise complement basis vectors, their pairwise sums and seeded random ones.
fn top_candidates<F: Field>(m: &Representation<F>, budget: &SearchBudget) -> Vec<(Vertex, F::Vector)> {
    let f = m.field();
    let rad = m.radical();
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for v in 0..m.dims().len() {
        let n = m.dim_at(v);
        if n == 0 || rad[v].dim() == n {
            continue;
        }
        let exhaustive = f
            .size()
            .and_then(|q| q.checked_pow(n as u32))
            .is_some_and(|c| c <= budget.exhaustive as u64);
        if exhaustive {
            let q = f.size().expect("finite") as usize;
            let total = q.pow(n as u32);
            for code in 1..total {
                let mut x = f.zeros(n);
                let mut c = code;
                for i in 0..n {
                    f.set(&mut x, i, f.element((c % q) as u64));
                    c /= q;
                }
                if !rad[v].contains(&x) {
                    out.push((v, x));
                }
            }
        } else {
            let comp = rad[v].non_pivots();
            for (k, &i) in comp.iter().enumerate() {
                out.push((v, f.unit(n, i)));
                for &j in &comp[k + 1..] {
                    let mut x = f.unit(n, i);
                    f.axpy(&mut x, &f.one(), &f.unit(n, j));
                    out.push((v, x));
                }
            }
            for _ in 0..budget.random_trials {
                let mut x = f.zeros(n);
                for i in 0..n {
                    f.set(&mut x, i, f.random(&mut rng));
                }
                if !rad[v].contains(&x) {
                    out.push((v, x));
                }
            }
        }
    }
    out
}
