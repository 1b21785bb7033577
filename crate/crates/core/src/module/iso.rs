//! Homomorphism spaces, isomorphism tests and direct-sum splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::homology::Cover;
use super::representation::{ModuleMap, Representation};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// Outcome of an isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reason", rename_all = "kebab-case")]
pub enum Iso {
    CertainYes,
    CertainNo(String),
    Undetermined,
}

impl Iso {
    pub fn is_yes(&self) -> bool {
        matches!(self, Iso::CertainYes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Iso::CertainNo(_))
    }
}

/// Search limits for isomorphism and splitting.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Exhaustive search over a finite field when `q^dim ≤ exhaustive`.
    pub exhaustive: u64,
    /// Number of random combinations tried otherwise.
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exhaustive: 1 << 12,
            random_trials: 64,
            seed: 0x5eed,
        }
    }
}

/// Cheap isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    pub radical_layers: Vec<Vec<usize>>,
    pub socle: Vec<usize>,
}

pub fn fingerprint<F: Field>(m: &Representation<F>) -> Fingerprint {
    let l = m.layers();
    Fingerprint {
        dims: l.dimension_vector,
        radical_layers: l.radical_layers,
        socle: l.socle,
    }
}

/// A presentation of `X` ready to compute `Hom(X, -)`.
pub struct HomSource<F: Field> {
    x: Representation<F>,
    cover: Cover<F>,
    sections: Vec<Vec<F::Vector>>,
}

impl<F: Field> HomSource<F> {
    pub fn new(x: &Representation<F>) -> Self {
        Self::with_cover(x, Cover::new(x))
    }

    pub fn with_cover(x: &Representation<F>, cover: Cover<F>) -> Self {
        let f = x.field();
        let sections = (0..x.dims().len())
            .map(|w| {
                (0..x.dim_at(w))
                    .map(|j| cover.map[w].solve(&f.unit(x.dim_at(w), j)).expect("cover is onto"))
                    .collect()
            })
            .collect();
        HomSource {
            x: x.clone(),
            cover,
            sections,
        }
    }

    pub fn module(&self) -> &Representation<F> {
        &self.x
    }

    pub fn cover(&self) -> &Cover<F> {
        &self.cover
    }

    /// A basis of `Hom(X, Y)`.
    pub fn hom(&self, y: &Representation<F>) -> Vec<ModuleMap<F>> {
        let f = self.x.field().clone();
        let alg = self.x.algebra().clone();
        let tops = &self.cover.tops;
        let mut offsets = Vec::with_capacity(tops.len());
        let mut n = 0;
        for (v, _) in tops {
            offsets.push(n);
            n += y.dim_at(*v);
        }
        if n == 0 {
            return Vec::new();
        }
        let mut path_mats: Vec<Option<Matrix<F>>> = vec![None; alg.dim()];
        let mut ymat = |b: usize| -> Matrix<F> {
            if path_mats[b].is_none() {
                path_mats[b] = Some(y.path_matrix(alg.basis_path(b)));
            }
            path_mats[b].clone().unwrap()
        };

        let mut rows: Vec<F::Vector> = Vec::new();
        for (w, kernel) in self.cover.kernel.iter().enumerate() {
            let dy = y.dim_at(w);
            if dy == 0 || kernel.dim() == 0 {
                continue;
            }
            let labels = &self.cover.labels[w];
            for k in kernel.basis() {
                let mut eqs: Vec<F::Vector> = (0..dy).map(|_| f.zeros(n)).collect();
                for (l, &(i, b)) in labels.iter().enumerate() {
                    let c = f.get(k, l);
                    if f.is_zero(&c) {
                        continue;
                    }
                    let m = ymat(b);
                    for (r, eq) in eqs.iter_mut().enumerate() {
                        for j in 0..m.cols() {
                            let e = m.get(r, j);
                            if !f.is_zero(&e) {
                                let cur = f.get(eq, offsets[i] + j);
                                f.set(eq, offsets[i] + j, f.add(&cur, &f.mul(&c, &e)));
                            }
                        }
                    }
                }
                rows.extend(eqs.into_iter().filter(|e| !f.is_zero_vec(e)));
            }
        }
        let sols = Matrix::from_rows(&f, n, rows).kernel();

        let mut maps = Vec::with_capacity(sols.len());
        for s in &sols {
            let images: Vec<F::Vector> = tops
                .iter()
                .enumerate()
                .map(|(i, (v, _))| f.slice(s, offsets[i], y.dim_at(*v)))
                .collect();
            let blocks = (0..self.x.dims().len())
                .map(|w| {
                    let cols: Vec<F::Vector> = self.sections[w]
                        .iter()
                        .map(|sec| {
                            let mut out = f.zeros(y.dim_at(w));
                            for (l, &(i, b)) in self.cover.labels[w].iter().enumerate() {
                                let c = f.get(sec, l);
                                if !f.is_zero(&c) {
                                    let img = ymat(b).apply(&images[i]);
                                    f.axpy(&mut out, &c, &img);
                                }
                            }
                            out
                        })
                        .collect();
                    Matrix::from_columns(&f, y.dim_at(w), &cols)
                })
                .collect();
            maps.push(ModuleMap { blocks });
        }
        maps
    }
}

pub fn hom<F: Field>(x: &Representation<F>, y: &Representation<F>) -> Vec<ModuleMap<F>> {
    HomSource::new(x).hom(y)
}

pub fn identity_map<F: Field>(m: &Representation<F>) -> ModuleMap<F> {
    ModuleMap {
        blocks: m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect(),
    }
}

fn combine<F: Field>(f: &F, basis: &[ModuleMap<F>], coeffs: &[F::Elem]) -> ModuleMap<F> {
    let mut acc = basis[0].scaled(f, &coeffs[0]);
    for (m, c) in basis.iter().zip(coeffs.iter()).skip(1) {
        if !f.is_zero(c) {
            for (a, b) in acc.blocks.iter_mut().zip(m.blocks.iter()) {
                a.axpy(c, b);
            }
        }
    }
    acc
}

impl<F: Field> ModuleMap<F> {
    pub fn scaled(&self, _f: &F, c: &F::Elem) -> ModuleMap<F> {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.scaled(c)).collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap {
            blocks: self.blocks.iter().zip(other.blocks.iter()).map(|(a, b)| a.add(b)).collect(),
        }
    }
}

/// Visit linear combinations of `basis`: all of them when the field is small
/// enough, otherwise basis elements followed by random combinations. Stops
/// when `visit` returns true. Returns whether the search was exhaustive.
fn search_combinations<F: Field>(
    f: &F,
    basis: &[ModuleMap<F>],
    budget: &SearchBudget,
    mut visit: impl FnMut(&ModuleMap<F>) -> bool,
) -> (bool, bool) {
    let h = basis.len();
    if h == 0 {
        return (false, true);
    }
    if let Some(q) = f.size() {
        let total = (q as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
        if total <= budget.exhaustive as u128 {
            let mut digits = vec![0u64; h];
            loop {
                let mut k = 0;
                while k < h {
                    digits[k] += 1;
                    if digits[k] < q {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == h {
                    return (false, true);
                }
                let coeffs: Vec<F::Elem> = digits.iter().map(|&d| f.element(d)).collect();
                if visit(&combine(f, basis, &coeffs)) {
                    return (true, true);
                }
            }
        }
    }
    for m in basis {
        if visit(m) {
            return (true, false);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ (h as u64).wrapping_mul(0x9e37_79b9));
    for _ in 0..budget.random_trials {
        let coeffs: Vec<F::Elem> = (0..h).map(|_| f.random(&mut rng)).collect();
        if coeffs.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        if visit(&combine(f, basis, &coeffs)) {
            return (true, false);
        }
    }
    (false, false)
}

/// Decide `X ≅ Y` where possible.
pub fn is_isomorphic<F: Field>(x: &Representation<F>, y: &Representation<F>, budget: &SearchBudget) -> Iso {
    if x.dims() != y.dims() {
        return Iso::CertainNo("dimension vectors differ".into());
    }
    if x.is_zero() {
        return Iso::CertainYes;
    }
    let (fx, fy) = (fingerprint(x), fingerprint(y));
    if fx.radical_layers != fy.radical_layers {
        return Iso::CertainNo("radical layers differ".into());
    }
    if fx.socle != fy.socle {
        return Iso::CertainNo("socles differ".into());
    }
    let sx = HomSource::new(x);
    let hxy = sx.hom(y);
    let hxx = sx.hom(x).len();
    if hxy.len() != hxx {
        return Iso::CertainNo(format!("dim Hom(X,Y) = {} but dim End(X) = {}", hxy.len(), hxx));
    }
    let hyy = HomSource::new(y).hom(y).len();
    if hyy != hxx {
        return Iso::CertainNo(format!("dim End(X) = {hxx} but dim End(Y) = {hyy}"));
    }
    match isomorphism_in(x.field(), &hxy, budget) {
        Iso::Undetermined => match_summands(x, y, budget),
        done => done,
    }
}

/// Krull-Schmidt comparison: pair up the indecomposable summands of `x` and `y`.
fn match_summands<F: Field>(x: &Representation<F>, y: &Representation<F>, budget: &SearchBudget) -> Iso {
    let dx = decompose(x, budget);
    if dx.summands.len() < 2 {
        return Iso::Undetermined;
    }
    let dy = decompose(y, budget);
    let certified = dx.certified && dy.certified;
    if certified && dx.summands.len() != dy.summands.len() {
        return Iso::CertainNo("different numbers of indecomposable summands".into());
    }
    let mut left: Vec<Option<&Representation<F>>> = dy.summands.iter().map(Some).collect();
    let mut undecided = false;
    for a in &dx.summands {
        let mut found = false;
        for slot in left.iter_mut() {
            let Some(b) = *slot else { continue };
            match is_isomorphic(a, b, budget) {
                Iso::CertainYes => {
                    *slot = None;
                    found = true;
                    break;
                }
                Iso::Undetermined => undecided = true,
                Iso::CertainNo(_) => {}
            }
        }
        if !found {
            return if certified && !undecided {
                Iso::CertainNo("an indecomposable summand has no partner".into())
            } else {
                Iso::Undetermined
            };
        }
    }
    if left.iter().all(Option::is_none) {
        Iso::CertainYes
    } else {
        Iso::Undetermined
    }
}

/// Search a Hom-space basis for an invertible map.
pub fn isomorphism_in<F: Field>(f: &F, homs: &[ModuleMap<F>], budget: &SearchBudget) -> Iso {
    if homs.is_empty() {
        return Iso::CertainNo("no nonzero homomorphisms".into());
    }
    let (found, exhaustive) = search_combinations(f, homs, budget, |m| m.is_invertible());
    if found {
        Iso::CertainYes
    } else if exhaustive {
        Iso::CertainNo("no invertible map in Hom(X,Y)".into())
    } else {
        Iso::Undetermined
    }
}

/// Find an isomorphism `X → Y` if the search budget allows.
pub fn find_isomorphism<F: Field>(
    x: &Representation<F>,
    y: &Representation<F>,
    budget: &SearchBudget,
) -> Option<ModuleMap<F>> {
    if x.dims() != y.dims() {
        return None;
    }
    let homs = hom(x, y);
    let mut out = None;
    search_combinations(x.field(), &homs, budget, |m| {
        if m.is_invertible() {
            out = Some(m.clone());
            true
        } else {
            false
        }
    });
    out
}

fn power_stable<F: Field>(m: &ModuleMap<F>, n: usize) -> ModuleMap<F> {
    let mut g = m.clone();
    let mut k = 1;
    while k < n {
        g = g.compose(&g);
        k *= 2;
    }
    g
}

/// `X = ker g ⊕ im g` for a non-nilpotent, non-invertible endomorphism.
fn fitting_split<F: Field>(x: &Representation<F>, g: &ModuleMap<F>) -> Option<(Vec<Subspace<F>>, Vec<Subspace<F>>)> {
    let gn = power_stable(g, x.total_dim().max(1));
    if gn.is_zero() || gn.is_invertible() {
        return None;
    }
    let f = x.field();
    let ker = gn
        .blocks
        .iter()
        .enumerate()
        .map(|(v, b)| Subspace::span(f, x.dim_at(v), b.kernel()))
        .collect();
    let im = gn
        .blocks
        .iter()
        .enumerate()
        .map(|(v, b)| Subspace::span(f, x.dim_at(v), b.image()))
        .collect();
    Some((ker, im))
}

/// A direct-sum decomposition; `certified` is true when every summand was
/// proved indecomposable by exhaustive search of its endomorphism ring.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub summands: Vec<Representation<F>>,
    pub certified: bool,
}

/// Split off direct summands until no splitting endomorphism is found.
pub fn decompose<F: Field>(x: &Representation<F>, budget: &SearchBudget) -> Decomposition<F> {
    let mut out = Vec::new();
    let mut certified = true;
    let mut stack = vec![x.clone()];
    while let Some(m) = stack.pop() {
        if m.is_zero() {
            continue;
        }
        match split_once(&m, budget) {
            Split::Parts(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            Split::Indecomposable(cert) => {
                certified &= cert;
                out.push(m);
            }
        }
    }
    out.reverse();
    Decomposition {
        summands: out,
        certified,
    }
}

enum Split<F: Field> {
    Parts(Representation<F>, Representation<F>),
    Indecomposable(bool),
}

fn split_once<F: Field>(m: &Representation<F>, budget: &SearchBudget) -> Split<F> {
    if m.total_dim() == 1 {
        return Split::Indecomposable(true);
    }
    let f = m.field().clone();
    if let Some((a, b)) = split_by_support(m) {
        return Split::Parts(a, b);
    }
    if m.top_dims().iter().sum::<usize>() == 1 || m.socle().iter().map(|s| s.dim()).sum::<usize>() == 1 {
        return Split::Indecomposable(true);
    }
    let end = hom(m, m);
    if end.len() <= 1 {
        return Split::Indecomposable(true);
    }
    let id = identity_map(m);
    let mut split = None;
    let (_, exhaustive) = search_combinations(&f, &end, budget, |g| {
        if let Some(s) = fitting_split(m, g) {
            split = Some(s);
            return true;
        }
        if f.size().is_none() {
            for lam in [1i64, -1, 2] {
                let shifted = g.add(&id.scaled(&f, &f.from_i64(-lam)));
                if let Some(s) = fitting_split(m, &shifted) {
                    split = Some(s);
                    return true;
                }
            }
        }
        false
    });
    match split {
        Some((ker, im)) => Split::Parts(m.subrep(&ker), m.subrep(&im)),
        None => Split::Indecomposable(exhaustive),
    }
}

/// Split along connected components of the support graph when the module
/// is visibly a direct sum of modules living on disjoint vertex sets.
fn split_by_support<F: Field>(m: &Representation<F>) -> Option<(Representation<F>, Representation<F>)> {
    let q = m.algebra().quiver();
    let support = m.support();
    if support.len() < 2 {
        return None;
    }
    let nv = m.dims().len();
    let mut comp = vec![usize::MAX; nv];
    let first = support[0];
    comp[first] = 0;
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for (a, ar) in q.arrows().iter().enumerate() {
            if m.map(a).is_zero() {
                continue;
            }
            for (s, t) in [(ar.source, ar.target), (ar.target, ar.source)] {
                if s == v && comp[t] == usize::MAX {
                    comp[t] = 0;
                    stack.push(t);
                }
            }
        }
    }
    if support.iter().all(|&v| comp[v] == 0) {
        return None;
    }
    let f = m.field();
    let part = |inside: bool| -> Vec<Subspace<F>> {
        (0..nv)
            .map(|v| {
                if (comp[v] == 0) == inside {
                    Subspace::full(f, m.dim_at(v))
                } else {
                    Subspace::zero(f, m.dim_at(v))
                }
            })
            .collect()
    };
    Some((m.subrep(&part(true)), m.subrep(&part(false))))
}

/// Whether `X` is indecomposable: `Some(true/false)` when certain.
pub fn is_indecomposable<F: Field>(x: &Representation<F>, budget: &SearchBudget) -> Option<bool> {
    if x.is_zero() {
        return Some(false);
    }
    match split_once(x, budget) {
        Split::Parts(..) => Some(false),
        Split::Indecomposable(true) => Some(true),
        Split::Indecomposable(false) => None,
    }
}
