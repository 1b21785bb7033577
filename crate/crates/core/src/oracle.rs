//! Enumeration of Loewy length ≤ 2 modules `P/V`, `J²P ⊆ V ⊆ JP`, over a finite field,
//! and the largest finite projective dimension observed among them.

use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::lattice::AvoidingLattice;
use crate::linalg::{Matrix, Subspace};
use crate::module::representation::projective_sum;
use crate::module::{minimal_resolution, parse_layered_graph, Pdim, Representation, Resolver, ResolverOptions};
use crate::monomial::path_ideal_hook;
use crate::quiver::Vertex;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnumerationBudget {
    /// Modules visited per top; a top whose lattice is larger is sampled.
    pub max_modules: u64,
    /// Tops with `dim JP/J²P` at most this are enumerated in full regardless of `max_modules`.
    pub full_dim: usize,
    pub seed: u64,
    pub cutoff: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_modules: 1_000_000,
            full_dim: 12,
            seed: 7,
            cutoff: 16,
        }
    }
}

#[derive(Clone, Debug)]
struct Piece<F: Field> {
    /// Positions in `P_w` of the radical-layer-one coordinates.
    layer1: Vec<usize>,
    /// Positions in `P_w` of everything in `J²P`.
    deep: Vec<usize>,
    lattice: AvoidingLattice<F>,
    unconstrained: u128,
}

/// All `P/V` for a fixed top, `P = ⊕ Λv^{μ_v}`.
///
/// At every vertex flagged in `avoid`, only subspaces `V_w` meeting the socle part
/// `Z_w = {z ∈ (JP/J²P)_w : Jz = 0}` trivially are visited; any other `V` has `S(w)`
/// as a direct summand of `V = Ω¹(P/V)`.
#[derive(Clone, Debug)]
pub struct Loewy2Space<F: Field> {
    alg: Arc<Algebra<F>>,
    tops: Vec<Vertex>,
    proj: Representation<F>,
    labels: Vec<Vec<(usize, usize)>>,
    pieces: Vec<Piece<F>>,
}

impl<F: Field> Loewy2Space<F> {
    pub fn new(alg: &Arc<Algebra<F>>, mu: &[usize], avoid: &[bool]) -> Result<Self> {
        let f = alg.field();
        let q = alg.quiver();
        let nv = q.vertex_count();
        if mu.len() != nv || avoid.len() != nv {
            return Err(Error::Invalid(format!(
                "top multiplicities need {nv} entries, got {}",
                mu.len()
            )));
        }
        if f.size().is_none() {
            return Err(Error::Invalid("module enumeration needs a finite field".into()));
        }
        let tops: Vec<Vertex> = (0..nv).flat_map(|v| std::iter::repeat(v).take(mu[v])).collect();
        if tops.is_empty() {
            return Err(Error::Invalid("top multiplicities are all zero".into()));
        }
        let (proj, labels) = projective_sum(alg, &tops);
        let mut pieces = Vec::with_capacity(nv);
        for w in 0..nv {
            let layer1: Vec<usize> = (0..labels[w].len()).filter(|&i| alg.degree(labels[w][i].1) == 1).collect();
            let deep: Vec<usize> = (0..labels[w].len()).filter(|&i| alg.degree(labels[w][i].1) >= 2).collect();
            let k = layer1.len();
            let z = if avoid[w] && k > 0 {
                let mut stacked: Option<Matrix<F>> = None;
                for a in q.arrows_from(w) {
                    let m = proj.map(a).select_columns(&layer1);
                    stacked = Some(match stacked {
                        None => m,
                        Some(s) => s.vstack(&m),
                    });
                }
                match stacked {
                    Some(m) => Subspace::span(f, k, m.kernel()),
                    None => Subspace::full(f, k),
                }
            } else {
                Subspace::zero(f, k)
            };
            let lattice = AvoidingLattice::new(&z);
            let unconstrained = AvoidingLattice::<F>::full(f, k).count();
            pieces.push(Piece {
                layer1,
                deep,
                lattice,
                unconstrained,
            });
        }
        Ok(Loewy2Space {
            alg: alg.clone(),
            tops,
            proj,
            labels,
            pieces,
        })
    }

    pub fn count(&self) -> u128 {
        self.pieces
            .iter()
            .fold(1u128, |acc, p| acc.saturating_mul(p.lattice.count()))
    }

    /// Size of the lattice without the trivial-intersection constraint.
    pub fn unconstrained_count(&self) -> u128 {
        self.pieces.iter().fold(1u128, |acc, p| acc.saturating_mul(p.unconstrained))
    }

    /// `dim (JP/J²P)_w` summed over `w`.
    pub fn layer_dim(&self) -> usize {
        self.pieces.iter().map(|p| p.layer1.len()).sum()
    }

    pub fn projective(&self) -> &Representation<F> {
        &self.proj
    }

    fn choice(&self, mut idx: u128) -> Vec<Vec<F::Vector>> {
        self.pieces
            .iter()
            .map(|p| {
                let n = p.lattice.count();
                let local = idx % n;
                idx /= n;
                p.lattice.unrank(local)
            })
            .collect()
    }

    /// `V` for the `idx`-th module.
    pub fn submodule(&self, idx: u128) -> Vec<Subspace<F>> {
        let f = self.alg.field();
        let choice = self.choice(idx);
        self.pieces
            .iter()
            .zip(choice)
            .enumerate()
            .map(|(w, (p, us))| {
                let amb = self.proj.dim_at(w);
                let mut gens: Vec<F::Vector> = p.deep.iter().map(|&i| f.unit(amb, i)).collect();
                for u in us {
                    let mut v = f.zeros(amb);
                    for (j, &pos) in p.layer1.iter().enumerate() {
                        let x = f.get(&u, j);
                        if !f.is_zero(&x) {
                            f.set(&mut v, pos, x);
                        }
                    }
                    gens.push(v);
                }
                Subspace::span(f, amb, gens)
            })
            .collect()
    }

    pub fn module(&self, idx: u128) -> Representation<F> {
        self.proj.quotient(&self.submodule(idx))
    }

    /// `Ω¹(P/V) = V`.
    pub fn syzygy(&self, idx: u128) -> Representation<F> {
        self.proj.subrep(&self.submodule(idx))
    }

    /// Layered-graph text presenting the `idx`-th module.
    pub fn graph_text(&self, idx: u128) -> String {
        let f = self.alg.field();
        let q = self.alg.quiver();
        let node = |w: usize, i: usize| -> String {
            let (t, b) = self.labels[w][i];
            format!("x{t}_{}", q.render(self.alg.basis_path(b)))
        };
        let mut s = String::new();
        for (t, &v) in self.tops.iter().enumerate() {
            s.push_str(&format!("top x{t}: {}\n", q.vertex_name(v)));
        }
        for (w, p) in self.pieces.iter().enumerate() {
            for &i in &p.layer1 {
                let (t, b) = self.labels[w][i];
                s.push_str(&format!(
                    "edge x{t} --{}--> {}\n",
                    q.render(self.alg.basis_path(b)),
                    node(w, i)
                ));
            }
        }
        let q_size = f.size().expect("finite");
        let coef = |x: &F::Elem| -> i64 { (0..q_size).find(|&k| f.element(k) == *x).unwrap_or(1) as i64 };
        for (w, us) in self.choice(idx).into_iter().enumerate() {
            for u in us {
                let terms: Vec<String> = self.pieces[w]
                    .layer1
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &pos)| {
                        let x = f.get(&u, j);
                        if f.is_zero(&x) {
                            return None;
                        }
                        let c = coef(&x);
                        Some(if c == 1 {
                            node(w, pos)
                        } else {
                            format!("{c}*{}", node(w, pos))
                        })
                    })
                    .collect();
                s.push_str(&format!("kill {}\n", terms.join(" + ")));
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TopObservation {
    pub top: Vec<(String, usize)>,
    pub layer_dim: usize,
    pub lattice_size: String,
    pub visited: u64,
    pub exhaustive: bool,
    pub max_finite: Option<usize>,
    pub infinite: u64,
    pub unresolved: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FindimObservation {
    pub n: usize,
    pub field: String,
    pub budget: EnumerationBudget,
    /// Largest finite projective dimension seen.
    pub observed: Option<usize>,
    pub attaining_top: Vec<(String, usize)>,
    pub attaining_module: String,
    /// Top multiplicities of the terms of the attaining module's minimal resolution.
    pub attaining_resolution: Vec<Vec<(String, usize)>>,
    /// The attaining module rebuilt over the rationals.
    pub rational_pdim: Option<String>,
    /// True iff every lattice was enumerated in full.
    pub exhaustive: bool,
    pub visited: u64,
    pub skipped_simple_projective: Vec<String>,
    pub avoided_at: Vec<String>,
    pub unresolved_count: u64,
    pub unresolved: Vec<String>,
    pub tops: Vec<TopObservation>,
}

const UNRESOLVED_KEPT: usize = 16;

/// All top vectors with entries in `0..=n`, zero at the given vertices, omitting zero.
pub fn top_vectors(nv: usize, n: usize, skip: &[bool]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut mu = vec![0; nv];
    loop {
        let mut i = 0;
        while i < nv {
            if skip[i] || mu[i] == n {
                mu[i] = 0;
                i += 1;
            } else {
                mu[i] += 1;
                break;
            }
        }
        if i == nv {
            break;
        }
        out.push(mu.clone());
    }
    out.sort_by_key(|m| (m.iter().sum::<usize>(), m.iter().rev().cloned().collect::<Vec<_>>()));
    out
}

struct Pool<F: Field> {
    alg: Arc<Algebra<F>>,
    opts: ResolverOptions,
    monomial: bool,
    idle: Mutex<Vec<Resolver<F>>>,
}

impl<F: Field> Pool<F> {
    fn take(&self) -> Resolver<F> {
        if let Some(r) = self.idle.lock().expect("pool").pop() {
            return r;
        }
        let r = Resolver::new(&self.alg, self.opts);
        if self.monomial {
            if let Ok(h) = path_ideal_hook(&self.alg) {
                return r.with_hook(h);
            }
        }
        r
    }

    fn give(&self, r: Resolver<F>) {
        self.idle.lock().expect("pool").push(r);
    }
}

/// `pdim(P/V)` from `V`.
fn pdim_of<F: Field>(space: &Loewy2Space<F>, idx: u128, res: &mut Resolver<F>) -> Pdim {
    let omega = space.syzygy(idx);
    if omega.is_zero() {
        return Pdim::Finite(0);
    }
    match res.pdim(&omega) {
        Pdim::Finite(d) => Pdim::Finite(d + 1),
        other => other,
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    best: Option<(usize, u128)>,
    infinite: u64,
    unresolved: Vec<u128>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.best = match (self.best, o.best) {
            (Some(a), Some(b)) => Some(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        self.infinite += o.infinite;
        self.unresolved.extend(o.unresolved);
        self
    }
}

/// Simple-projective vertices and vertices whose simple has infinite projective dimension.
pub fn vertex_flags<F: Field>(alg: &Arc<Algebra<F>>, cutoff: usize) -> (Vec<bool>, Vec<bool>) {
    let nv = alg.quiver().vertex_count();
    let simple_proj: Vec<bool> = (0..nv).map(|v| alg.paths_from(v).len() == 1).collect();
    let mut res = Resolver::new(
        alg,
        ResolverOptions {
            cutoff,
            ..Default::default()
        },
    );
    let infinite: Vec<bool> = (0..nv)
        .map(|v| res.simple_pdim(v).map(|p| p.is_infinite()).unwrap_or(false))
        .collect();
    (simple_proj, infinite)
}

/// Largest finite projective dimension over Loewy length ≤ 2 modules with all top
/// multiplicities at most `n`.
pub fn observed_findim<F: Field>(
    alg: &Arc<Algebra<F>>,
    n: usize,
    budget: &EnumerationBudget,
) -> Result<FindimObservation> {
    if n == 0 {
        return Err(Error::Invalid("the multiplicity bound must be at least 1".into()));
    }
    if budget.max_modules == 0 {
        return Err(Error::Invalid("the enumeration budget must be positive".into()));
    }
    let q = alg.quiver();
    let nv = q.vertex_count();
    let (simple_proj, infinite) = vertex_flags(alg, budget.cutoff);
    let pool = Pool {
        alg: alg.clone(),
        opts: ResolverOptions {
            cutoff: budget.cutoff,
            ..Default::default()
        },
        monomial: alg.is_monomial(),
        idle: Mutex::new(Vec::new()),
    };
    let mut tops_seen = Vec::new();
    let mut best: Option<(usize, Vec<usize>, Loewy2Space<F>, u128)> = None;
    let mut visited_total = 0u64;
    let mut exhaustive = true;
    let mut unresolved = Vec::new();
    let mut unresolved_count = 0u64;
    for (k, mu) in top_vectors(nv, n, &simple_proj).into_iter().enumerate() {
        let space = Loewy2Space::new(alg, &mu, &infinite)?;
        let count = space.count();
        let full = count <= budget.max_modules as u128 || space.layer_dim() <= budget.full_dim;
        let indices: Vec<u128> = if full {
            (0..count).collect()
        } else {
            exhaustive = false;
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut v: Vec<u128> = (0..budget.max_modules).map(|_| rng.gen_range(0..count)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let tally = indices
            .par_chunks(256)
            .map(|chunk| {
                let mut res = pool.take();
                let mut t = Tally::default();
                for &i in chunk {
                    match pdim_of(&space, i, &mut res) {
                        Pdim::Finite(d) => {
                            t = t.merge(Tally {
                                best: Some((d, i)),
                                ..Default::default()
                            })
                        }
                        Pdim::InfiniteDetected(_) => t.infinite += 1,
                        Pdim::ExceedsCutoff(_) => t.unresolved.push(i),
                    }
                }
                pool.give(res);
                t
            })
            .reduce(Tally::default, Tally::merge);
        let top_named: Vec<(String, usize)> = (0..nv)
            .filter(|&v| mu[v] > 0)
            .map(|v| (q.vertex_name(v).to_string(), mu[v]))
            .collect();
        visited_total += indices.len() as u64;
        unresolved_count += tally.unresolved.len() as u64;
        for &i in tally.unresolved.iter() {
            if unresolved.len() < UNRESOLVED_KEPT {
                unresolved.push(space.graph_text(i));
            }
        }
        tops_seen.push(TopObservation {
            top: top_named,
            layer_dim: space.layer_dim(),
            lattice_size: count.to_string(),
            visited: indices.len() as u64,
            exhaustive: full,
            max_finite: tally.best.map(|b| b.0),
            infinite: tally.infinite,
            unresolved: tally.unresolved.len() as u64,
        });
        if let Some((d, i)) = tally.best {
            if best.as_ref().map_or(true, |b| d > b.0) {
                best = Some((d, mu.clone(), space, i));
            }
        }
    }
    let mut obs = FindimObservation {
        n,
        field: alg.field().spec().to_string(),
        budget: *budget,
        observed: None,
        attaining_top: Vec::new(),
        attaining_module: String::new(),
        attaining_resolution: Vec::new(),
        rational_pdim: None,
        exhaustive,
        visited: visited_total,
        skipped_simple_projective: names(alg, &simple_proj),
        avoided_at: names(alg, &infinite),
        unresolved_count,
        unresolved,
        tops: tops_seen,
    };
    if let Some((d, mu, space, i)) = best {
        let m = space.module(i);
        obs.observed = Some(d);
        obs.attaining_top = (0..nv)
            .filter(|&v| mu[v] > 0)
            .map(|v| (q.vertex_name(v).to_string(), mu[v]))
            .collect();
        obs.attaining_module = space.graph_text(i);
        obs.attaining_resolution = minimal_resolution(&m, d + 1)
            .iter()
            .map(|step| {
                (0..nv)
                    .filter(|&v| step.projective_top[v] > 0)
                    .map(|v| (q.vertex_name(v).to_string(), step.projective_top[v]))
                    .collect()
            })
            .collect();
        obs.rational_pdim = rational_check(alg, &obs.attaining_module, budget.cutoff);
    }
    Ok(obs)
}

fn names<F: Field>(alg: &Arc<Algebra<F>>, flags: &[bool]) -> Vec<String> {
    (0..flags.len())
        .filter(|&v| flags[v])
        .map(|v| alg.quiver().vertex_name(v).to_string())
        .collect()
}

/// Rebuild a presented module over the rationals and resolve it there.
fn rational_check<F: Field>(alg: &Arc<Algebra<F>>, graph: &str, cutoff: usize) -> Option<String> {
    let spec = alg.spec();
    let qalg = spec.build(&Rationals).ok()?;
    let m = parse_layered_graph(graph, &qalg).ok()?;
    let mut res = Resolver::new(
        &qalg,
        ResolverOptions {
            cutoff,
            ..Default::default()
        },
    );
    Some(res.pdim(&m).render())
}

/// Random Loewy length ≤ 2 modules with finite projective dimension, together with it
/// and their layered-graph text. Tops are drawn uniformly from the vectors with entries
/// at most `n`, then a module uniformly from the avoiding lattice of that top.
pub fn sample_finite<F: Field>(
    alg: &Arc<Algebra<F>>,
    n: usize,
    want: usize,
    seed: u64,
    cutoff: usize,
) -> Result<Vec<(Representation<F>, usize, String)>> {
    let nv = alg.quiver().vertex_count();
    let (simple_proj, infinite) = vertex_flags(alg, cutoff);
    let tops = top_vectors(nv, n, &simple_proj);
    if tops.is_empty() {
        return Ok(Vec::new());
    }
    let spaces: Vec<Loewy2Space<F>> = tops
        .iter()
        .map(|mu| Loewy2Space::new(alg, mu, &infinite))
        .collect::<Result<_>>()?;
    let mut res = Resolver::new(
        alg,
        ResolverOptions {
            cutoff,
            ..Default::default()
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0usize;
    while out.len() < want && tries < want * 50 {
        tries += 1;
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let idx = rng.gen_range(0..space.count());
        if let Pdim::Finite(d) = pdim_of(space, idx, &mut res) {
            out.push((space.module(idx), d, space.graph_text(idx)));
        }
    }
    Ok(out)
}
