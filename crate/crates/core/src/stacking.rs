//! Stacking partitions, corner algebras, 2-stacks and the splitting of second syzygies.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraSpec, Relation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::module::{is_isomorphic, syzygy, Pdim, Representation, Resolver, ResolverOptions, SearchBudget};
use crate::monomial::{critical_report, CriticalPathReport};
use crate::quiver::{compose_paths, enumerate_paths, ArrowId, Path, Quiver, Vertex};

/// A partition `E = E' ⊔ E''` of the vertices. `lower` is `E'`, `upper` is `E''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackingPartition {
    pub lower: Vec<Vertex>,
    pub upper: Vec<Vertex>,
    pub complexity: usize,
}

impl StackingPartition {
    pub fn new(q: &Quiver, lower: &[&str], upper: &[&str], complexity: usize) -> Result<Self> {
        let lookup = |names: &[&str]| -> Result<Vec<Vertex>> {
            names
                .iter()
                .map(|n| q.vertex(n.trim()).map_err(|_| Error::InvalidPartition(format!("unknown vertex `{n}`"))))
                .collect()
        };
        Self::from_ids(q, lookup(lower)?, lookup(upper)?, complexity)
    }

    pub fn from_ids(q: &Quiver, mut lower: Vec<Vertex>, mut upper: Vec<Vertex>, complexity: usize) -> Result<Self> {
        if complexity == 0 {
            return Err(Error::InvalidPartition("complexity must be at least 1".into()));
        }
        lower.sort_unstable();
        upper.sort_unstable();
        let mut seen = vec![0u8; q.vertex_count()];
        for &v in lower.iter().chain(&upper) {
            seen[v] += 1;
        }
        if let Some(v) = seen.iter().position(|&c| c > 1) {
            return Err(Error::InvalidPartition(format!("vertex `{}` lies in both parts", q.vertex_name(v))));
        }
        if let Some(v) = seen.iter().position(|&c| c == 0) {
            return Err(Error::InvalidPartition(format!("vertex `{}` lies in neither part", q.vertex_name(v))));
        }
        Ok(StackingPartition {
            lower,
            upper,
            complexity,
        })
    }

    /// `E'` as given, `E''` its complement.
    pub fn from_lower(q: &Quiver, lower: &[&str]) -> Result<Self> {
        let ids: Vec<Vertex> = lower
            .iter()
            .map(|n| q.vertex(n.trim()).map_err(|_| Error::InvalidPartition(format!("unknown vertex `{n}`"))))
            .collect::<Result<_>>()?;
        let upper = (0..q.vertex_count()).filter(|v| !ids.contains(v)).collect();
        Self::from_ids(q, ids, upper, 1)
    }

    /// Parse `E'=a0,c1;E''=a1,b1`, optionally followed by `;c=2`. A missing `E''` means the complement.
    pub fn parse(text: &str, q: &Quiver) -> Result<Self> {
        let mut lower: Option<Vec<&str>> = None;
        let mut upper: Option<Vec<&str>> = None;
        let mut c = 1;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidPartition(format!("expected `key=value` in `{part}`")))?;
            let names: Vec<&str> = val.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            match key.trim() {
                "E'" | "E1" | "lower" => lower = Some(names),
                "E''" | "E2" | "upper" => upper = Some(names),
                "c" => {
                    c = val
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidPartition(format!("bad complexity `{val}`")))?
                }
                other => return Err(Error::InvalidPartition(format!("unknown key `{other}`"))),
            }
        }
        let lower = lower.ok_or_else(|| Error::InvalidPartition("missing E'".into()))?;
        let mut part = match upper {
            Some(u) => Self::new(q, &lower, &u, 1)?,
            None => Self::from_lower(q, &lower)?,
        };
        if c == 0 {
            return Err(Error::InvalidPartition("complexity must be at least 1".into()));
        }
        part.complexity = c;
        Ok(part)
    }

    pub fn from_names(q: &Quiver, names: &(Vec<String>, Vec<String>)) -> Result<Self> {
        let l: Vec<&str> = names.0.iter().map(String::as_str).collect();
        let u: Vec<&str> = names.1.iter().map(String::as_str).collect();
        Self::new(q, &l, &u, 1)
    }

    pub fn names(&self, q: &Quiver) -> (Vec<String>, Vec<String>) {
        let f = |vs: &[Vertex]| vs.iter().map(|&v| q.vertex_name(v).to_string()).collect();
        (f(&self.lower), f(&self.upper))
    }

    pub fn render(&self, q: &Quiver) -> String {
        let (l, u) = self.names(q);
        let mut s = format!("E'={};E''={}", l.join(","), u.join(","));
        if self.complexity != 1 {
            s.push_str(&format!(";c={}", self.complexity));
        }
        s
    }

    pub fn is_lower(&self, v: Vertex) -> bool {
        self.lower.binary_search(&v).is_ok()
    }

    pub fn is_upper(&self, v: Vertex) -> bool {
        self.upper.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `a` or `b`.
    pub condition: char,
    pub alpha: String,
    pub beta: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub valid: bool,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub complexity: usize,
    pub violations: Vec<Violation>,
}

/// Vertices at which some path of length `c` ends.
fn path_ends(q: &Quiver, c: usize) -> BTreeSet<Vertex> {
    let mut cur: BTreeSet<Vertex> = (0..q.vertex_count()).collect();
    for _ in 0..c {
        cur = q
            .arrows()
            .iter()
            .filter(|a| cur.contains(&a.source))
            .map(|a| a.target)
            .collect();
    }
    cur
}

pub fn check_partition<F: Field>(alg: &Algebra<F>, part: &StackingPartition) -> PartitionReport {
    let q = alg.quiver();
    let mut violations = Vec::new();
    for a in q.arrows() {
        if part.is_lower(a.source) && part.is_upper(a.target) {
            violations.push(Violation {
                condition: 'a',
                alpha: a.name.clone(),
                beta: None,
                detail: format!(
                    "arrow `{}` starts in E' at `{}` and ends in E'' at `{}`",
                    a.name,
                    q.vertex_name(a.source),
                    q.vertex_name(a.target)
                ),
            });
        }
    }
    let ends = path_ends(q, part.complexity);
    for (ai, a) in q.arrows().iter().enumerate() {
        if !(part.is_upper(a.source) && part.is_lower(a.target)) {
            continue;
        }
        for bi in q.arrows_into(a.source) {
            let b = q.arrow(bi);
            let ab = compose_paths(&q.arrow_path(ai), &q.arrow_path(bi)).expect("composable");
            if alg.is_zero_path(&ab) || !ends.contains(&b.source) {
                continue;
            }
            let detail = if part.complexity == 1 {
                format!(
                    "`{}*{}` is nonzero but `{}` starts at `{}`, which is not a source",
                    a.name,
                    b.name,
                    b.name,
                    q.vertex_name(b.source)
                )
            } else {
                format!(
                    "`{}*{}` is nonzero but `{}` starts at `{}`, the end of a path of length {}",
                    a.name,
                    b.name,
                    b.name,
                    q.vertex_name(b.source),
                    part.complexity
                )
            };
            violations.push(Violation {
                condition: 'b',
                alpha: a.name.clone(),
                beta: Some(b.name.clone()),
                detail,
            });
        }
    }
    let (lower, upper) = part.names(q);
    PartitionReport {
        valid: violations.is_empty(),
        lower,
        upper,
        complexity: part.complexity,
        violations,
    }
}

/// The algebra `KQ_S / (I ∩ KQ_S)` on the full subquiver with vertex set `S`,
/// together with the identification maps.
#[derive(Clone, Debug)]
pub struct Corner<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    /// New vertex id to old.
    pub vertices: Vec<Vertex>,
    /// New arrow id to old.
    pub arrows: Vec<ArrowId>,
    vertex_map: Vec<Option<Vertex>>,
}

pub fn corner_algebra<F: Field>(alg: &Arc<Algebra<F>>, keep: &[Vertex]) -> Result<Corner<F>> {
    let spec = corner_spec(alg, keep)?;
    let q = alg.quiver();
    let (sub, vmap, amap) = q.full_subquiver(keep);
    let mut vertices = vec![0; sub.vertex_count()];
    for (old, new) in vmap.iter().enumerate() {
        if let Some(n) = new {
            vertices[*n] = old;
        }
    }
    let mut arrows = vec![0; sub.arrow_count()];
    for (old, new) in amap.iter().enumerate() {
        if let Some(n) = new {
            arrows[*n] = old;
        }
    }
    let algebra = spec.build(alg.field())?;
    Ok(Corner {
        algebra,
        vertices,
        arrows,
        vertex_map: vmap,
    })
}

/// Presentation of the corner algebra on `keep`.
pub fn corner_spec<F: Field>(alg: &Algebra<F>, keep: &[Vertex]) -> Result<AlgebraSpec> {
    let q = alg.quiver();
    let (sub, _, amap) = q.full_subquiver(keep);
    let mut back = vec![0; sub.arrow_count()];
    for (old, new) in amap.iter().enumerate() {
        if let Some(n) = new {
            back[*n] = old;
        }
    }
    let lift = |p: &Path| -> Path {
        let arrows: Vec<ArrowId> = p.arrows().iter().map(|&a| back[a]).collect();
        q.path_from_traversal(&arrows).expect("subquiver paths lift")
    };
    let max_len = alg.max_degree() + 1;
    let paths = enumerate_paths(&sub, max_len, 1 << 22)?;
    let zero = |p: &Path| alg.is_zero_path(&lift(p));
    let mut relations = Vec::new();
    let mut classes: BTreeMap<(usize, Vec<(usize, String)>), Path> = BTreeMap::new();
    for p in paths.iter().filter(|p| p.len() >= 2) {
        if zero(p) {
            let shorter = [p.initial(p.len() - 1, &sub), p.tail_after(1, &sub)];
            if !shorter.iter().any(|s| zero(s)) {
                relations.push(Relation::Monomial(p.clone()));
            }
            continue;
        }
        let f = alg.field();
        let nf: Vec<(usize, String)> = alg.normal_form(&lift(p)).iter().map(|(b, c)| (*b, f.render(c))).collect();
        if nf.len() != 1 || nf[0].1 != f.render(&f.one()) {
            return Err(Error::Unsupported(format!(
                "path `{}` has a normal form that is not a single basis path",
                q.render(&lift(p))
            )));
        }
        match classes.get(&(p.len(), nf.clone())) {
            Some(rep) => relations.push(Relation::Binomial(p.clone(), rep.clone())),
            None => {
                classes.insert((p.len(), nf), p.clone());
            }
        }
    }
    Ok(AlgebraSpec::new(sub, relations)
        .with_field(alg.field().spec())
        .with_nilp(alg.nilp()))
}

impl<F: Field> Corner<F> {
    /// The restriction `e_S M` as a module over the corner algebra.
    pub fn restrict(&self, m: &Representation<F>) -> Result<Representation<F>> {
        let dims = self.vertices.iter().map(|&v| m.dim_at(v)).collect();
        let maps = self.arrows.iter().map(|&a| m.map(a).clone()).collect();
        Representation::new(self.algebra.clone(), dims, maps)
    }

    /// A corner module viewed over the full algebra, zero outside `S`.
    pub fn extend(&self, big: &Arc<Algebra<F>>, m: &Representation<F>) -> Result<Representation<F>> {
        let q = big.quiver();
        let f = big.field();
        let dims: Vec<usize> = (0..q.vertex_count())
            .map(|v| self.vertex_map[v].map_or(0, |n| m.dim_at(n)))
            .collect();
        let mut maps: Vec<Matrix<F>> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zero(f, dims[a.target], dims[a.source]))
            .collect();
        for (new, &old) in self.arrows.iter().enumerate() {
            maps[old] = m.map(new).clone();
        }
        Representation::new(big.clone(), dims, maps)
    }

    pub fn old_vertex(&self, new: Vertex) -> Vertex {
        self.vertices[new]
    }

    pub fn new_vertex(&self, old: Vertex) -> Option<Vertex> {
        self.vertex_map[old]
    }
}

/// The submodule `e_S N` of `N` supported on `S` (a submodule when no arrow leaves `S`).
pub fn truncate<F: Field>(m: &Representation<F>, keep: &[Vertex]) -> Representation<F> {
    let f = m.field();
    let spaces: Vec<Subspace<F>> = (0..m.dims().len())
        .map(|v| {
            if keep.contains(&v) {
                Subspace::full(f, m.dim_at(v))
            } else {
                Subspace::zero(f, m.dim_at(v))
            }
        })
        .collect();
    m.subrep(&spaces)
}

/// An arrow of the 2-stack running from the upper quiver to the lower one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingArrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Stack `upper` on top of `lower`: disjoint union of the quivers plus the
/// connecting arrows, with the forced relations `α·β` for each connecting `α`
/// and each arrow `β` of the upper quiver starting in a non-source, and the
/// given extra relations (`p` or `p - q` in path notation).
pub fn build_2stack<F: Field>(
    field: &F,
    lower: &AlgebraSpec,
    upper: &AlgebraSpec,
    connecting: &[ConnectingArrow],
    extra: &[String],
) -> Result<AlgebraSpec> {
    if upper.quiver.vertex_count() == 0 {
        return Err(Error::InvalidPartition("the upper algebra is empty".into()));
    }
    if lower.quiver.vertex_count() == 0 {
        return Err(Error::InvalidPartition("the lower algebra is empty".into()));
    }
    let mut q = Quiver::new();
    for part in [lower, upper] {
        for v in part.quiver.vertex_names() {
            q.add_vertex(v)?;
        }
    }
    for part in [lower, upper] {
        for a in part.quiver.arrows() {
            q.add_arrow(&a.name, part.quiver.vertex_name(a.source), part.quiver.vertex_name(a.target))?;
        }
    }
    let mut conn_ids = Vec::new();
    for c in connecting {
        if upper.quiver.vertex(&c.source).is_err() {
            return Err(Error::InvalidPartition(format!(
                "connecting arrow `{}` must start in the upper algebra",
                c.name
            )));
        }
        if lower.quiver.vertex(&c.target).is_err() {
            return Err(Error::InvalidPartition(format!(
                "connecting arrow `{}` must end in the lower algebra",
                c.name
            )));
        }
        conn_ids.push(q.add_arrow(&c.name, &c.source, &c.target)?);
    }
    let translate = |part: &AlgebraSpec, p: &Path| -> Result<Path> {
        let ids: Vec<ArrowId> = p
            .arrows()
            .iter()
            .map(|&a| q.arrow_id(&part.quiver.arrow(a).name))
            .collect::<Result<_>>()?;
        if ids.is_empty() {
            return Ok(Path::trivial(q.vertex(part.quiver.vertex_name(p.source()))?));
        }
        q.path_from_traversal(&ids)
    };
    let mut relations: Vec<Relation> = Vec::new();
    for part in [lower, upper] {
        for r in &part.relations {
            relations.push(match r {
                Relation::Monomial(p) => Relation::Monomial(translate(part, p)?),
                Relation::Binomial(p, s) => Relation::Binomial(translate(part, p)?, translate(part, s)?),
            });
        }
    }
    let upper_sources: Vec<String> = upper
        .quiver
        .sources()
        .iter()
        .map(|&v| upper.quiver.vertex_name(v).to_string())
        .collect();
    for &a in &conn_ids {
        let src = q.arrow(a).source;
        for b in q.arrows_into(src).collect::<Vec<_>>() {
            let bs = q.vertex_name(q.arrow(b).source).to_string();
            if conn_ids.contains(&b) || upper_sources.contains(&bs) {
                continue;
            }
            let ab = compose_paths(&q.arrow_path(a), &q.arrow_path(b)).expect("composable");
            let r = Relation::Monomial(ab);
            if !relations.contains(&r) {
                relations.push(r);
            }
        }
    }
    for text in extra {
        let r = parse_relation(&q, text)?;
        if !relations.contains(&r) {
            relations.push(r);
        }
    }
    let nilp = lower.nilp + upper.nilp;
    let mut spec = AlgebraSpec::new(q, relations).with_field(field.spec()).with_nilp(nilp);
    let names = (
        lower.quiver.vertex_names().to_vec(),
        upper.quiver.vertex_names().to_vec(),
    );
    spec.partition = Some(names.clone());

    let alg = spec.build(field)?;
    let part = StackingPartition::from_names(alg.quiver(), &names)?;
    for (side, given, keep) in [("lower", lower, &part.lower), ("upper", upper, &part.upper)] {
        let corner = corner_algebra(&alg, keep)?;
        let expected = given.build(field)?;
        if corner.algebra.dim() != expected.dim() {
            return Err(Error::InvalidRelation(format!(
                "the extra relations change the {side} corner: dimension {} instead of {}",
                corner.algebra.dim(),
                expected.dim()
            )));
        }
    }
    Ok(spec)
}

/// `p` or `p - q` with paths written as `c*b*a`.
pub fn parse_relation(q: &Quiver, text: &str) -> Result<Relation> {
    match text.split_once(" - ") {
        Some((p, s)) => Ok(Relation::Binomial(q.parse_path(p.trim())?, q.parse_path(s.trim())?)),
        None => Ok(Relation::Monomial(q.parse_path(text.trim())?)),
    }
}

/// Supremum of the projective dimensions of the simples.
pub fn global_dimension<F: Field>(alg: &Arc<Algebra<F>>, cutoff: usize) -> Pdim {
    let mut res = Resolver::new(
        alg,
        ResolverOptions {
            cutoff,
            ..ResolverOptions::default()
        },
    );
    (0..alg.quiver().vertex_count())
        .map(|v| res.pdim(&Representation::simple(alg, v)))
        .fold(Pdim::Finite(0), Pdim::join)
}

/// Every indecomposable projective `Λv` is injective: its socle is a simple
/// `S(w)` and its dimension equals that of the injective envelope `D(wΛ)`.
pub fn is_selfinjective<F: Field>(alg: &Arc<Algebra<F>>) -> bool {
    let nv = alg.quiver().vertex_count();
    let mut into = vec![0usize; nv];
    for i in 0..alg.dim() {
        into[alg.basis_path(i).target()] += 1;
    }
    (0..nv).all(|v| {
        let p = Representation::projective(alg, v);
        let soc: Vec<usize> = p.socle().iter().map(|s| s.dim()).collect();
        soc.iter().sum::<usize>() == 1 && {
            let w = soc.iter().position(|&d| d == 1).expect("one");
            p.total_dim() == into[w]
        }
    })
}

/// What is known about a finitistic dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinDimBound {
    pub lo: i64,
    pub hi: Option<i64>,
    /// `global-dimension`, `self-injective`, `monomial-interval` or `unknown`.
    pub source: String,
}

impl FinDimBound {
    pub fn exact(d: i64, source: &str) -> Self {
        FinDimBound {
            lo: d,
            hi: Some(d),
            source: source.to_string(),
        }
    }

    pub fn unknown() -> Self {
        FinDimBound {
            lo: 0,
            hi: None,
            source: "unknown".to_string(),
        }
    }

    pub fn contains(&self, d: i64) -> bool {
        d >= self.lo && self.hi.map_or(true, |h| d <= h)
    }
}

fn findim_bound<F: Field>(alg: &Arc<Algebra<F>>, cutoff: usize) -> Result<(FinDimBound, Pdim)> {
    let gl = global_dimension(alg, cutoff);
    if let Pdim::Finite(d) = gl {
        return Ok((FinDimBound::exact(d as i64, "global-dimension"), gl));
    }
    if is_selfinjective(alg) {
        return Ok((FinDimBound::exact(0, "self-injective"), gl));
    }
    if alg.is_monomial() {
        let (lo, hi) = critical_report(alg)?.interval;
        return Ok((
            FinDimBound {
                lo,
                hi: Some(hi),
                source: "monomial-interval".into(),
            },
            gl,
        ));
    }
    Ok((FinDimBound::unknown(), gl))
}

#[derive(Clone, Debug, Serialize)]
pub struct TTerm {
    pub vertex: String,
    pub pdim: Pdim,
}

#[derive(Clone, Debug, Serialize)]
pub struct StackInvariants {
    pub partition: String,
    pub valid: bool,
    pub t: i64,
    /// `p dim_{Λ'} e'Λe` for the non-sources `e` of the upper quiver (zero modules omitted).
    pub t_terms: Vec<TTerm>,
    /// Vertices whose term could not be resolved within the cutoff.
    pub unresolved: Vec<String>,
    pub homogeneous: Vec<String>,
    pub lower_monomial: bool,
    pub upper_monomial: bool,
    pub lower_global_dimension: Pdim,
    pub upper_global_dimension: Pdim,
    pub lower_findim: FinDimBound,
    pub upper_findim: FinDimBound,
    /// `[fin dim Λ', fin dim Λ' + fin dim Λ'' + 1]` from the component bounds.
    pub findim_bound: FinDimBound,
    pub upper_critical: Option<CriticalPathReport>,
    /// Upper algebra monomial and every critical path of it ends in a homogeneous vertex.
    pub corollary9_applicable: bool,
    /// Critical paths of the upper algebra ending in non-homogeneous vertices.
    pub corollary9_offending: Vec<String>,
    /// Every offending `p` has `p dim_Λ Λ''p` infinite or equal to `p dim_Λ'' Λ''p`.
    pub corollary9_conclusion_holds: Option<bool>,
}

pub fn stack_invariants<F: Field>(
    alg: &Arc<Algebra<F>>,
    part: &StackingPartition,
    cutoff: usize,
) -> Result<StackInvariants> {
    let q = alg.quiver();
    let check = check_partition(alg, part);
    let lower = corner_algebra(alg, &part.lower)?;
    let upper = corner_algebra(alg, &part.upper)?;
    let opts = ResolverOptions {
        cutoff,
        ..ResolverOptions::default()
    };

    let mut res_lower = Resolver::new(&lower.algebra, opts.clone());
    let upper_q = upper.algebra.quiver();
    let mut t_terms = Vec::new();
    let mut unresolved = Vec::new();
    let mut t: i64 = -1;
    for &e in &part.upper {
        let ne = upper.new_vertex(e).expect("upper vertex");
        if upper_q.is_source(ne) {
            continue;
        }
        let ep = lower.restrict(&Representation::projective(alg, e))?;
        if ep.is_zero() {
            continue;
        }
        let pd = res_lower.pdim(&ep);
        match &pd {
            Pdim::Finite(d) => t = t.max(*d as i64),
            Pdim::ExceedsCutoff(_) => unresolved.push(q.vertex_name(e).to_string()),
            Pdim::InfiniteDetected(_) => {}
        }
        t_terms.push(TTerm {
            vertex: q.vertex_name(e).to_string(),
            pdim: pd,
        });
    }

    let homogeneous: Vec<Vertex> = part
        .upper
        .iter()
        .copied()
        .filter(|&e| q.arrows_from(e).all(|a| part.is_upper(q.arrow(a).target)))
        .collect();

    let (lower_findim, lower_gl) = findim_bound(&lower.algebra, cutoff)?;
    let (upper_findim, upper_gl) = findim_bound(&upper.algebra, cutoff)?;
    let findim_bound = FinDimBound {
        lo: lower_findim.lo,
        hi: match (lower_findim.hi, upper_findim.hi) {
            (Some(a), Some(b)) => Some(a + b + 1),
            _ => None,
        },
        source: format!("{}+{}", lower_findim.source, upper_findim.source),
    };

    let upper_monomial = upper.algebra.is_monomial();
    let mut offending = Vec::new();
    let mut conclusion = None;
    let upper_critical = if upper_monomial {
        let rep = critical_report(&upper.algebra)?;
        let mut holds = true;
        let mut res_big = Resolver::new(alg, opts.clone());
        let mut res_up = Resolver::new(&upper.algebra, opts.clone());
        for c in &rep.critical {
            let p_up = upper_q.parse_path(&c.path)?;
            let end = upper.old_vertex(p_up.target());
            if homogeneous.contains(&end) {
                continue;
            }
            offending.push(c.path.clone());
            let p_big = q.parse_path(&c.path)?;
            let big = res_big.pdim(&Representation::path_ideal(alg, &p_big)?);
            let small = res_up.pdim(&Representation::path_ideal(&upper.algebra, &p_up)?);
            if !(big.is_infinite() || big == small) {
                holds = false;
            }
        }
        conclusion = Some(holds);
        Some(rep)
    } else {
        None
    };

    Ok(StackInvariants {
        partition: part.render(q),
        valid: check.valid,
        t,
        t_terms,
        unresolved,
        homogeneous: homogeneous.iter().map(|&v| q.vertex_name(v).to_string()).collect(),
        lower_monomial: lower.algebra.is_monomial(),
        upper_monomial,
        lower_global_dimension: lower_gl,
        upper_global_dimension: upper_gl,
        lower_findim,
        upper_findim,
        findim_bound,
        upper_critical,
        corollary9_applicable: upper_monomial && offending.is_empty(),
        corollary9_offending: offending,
        corollary9_conclusion_holds: conclusion,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyComparison {
    pub k: usize,
    pub dims_match: bool,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub depth: usize,
    pub omega2_dims: Vec<usize>,
    /// Arrows from `E''` to `E'` acting nonzero on `Ω²(N)`.
    pub offending_arrows: Vec<String>,
    pub splits: bool,
    /// `Ω^k_{Λ''}(e''N)` against `e''Ω^k_Λ(N)`.
    pub upper_comparisons: Vec<SyzygyComparison>,
    /// `Ω^k_{Λ'}(e'N)` against `Ω^k_Λ(e'N)`.
    pub lower_comparisons: Vec<SyzygyComparison>,
    /// `(p dim_Λ e''X, p dim_Λ'' e''X, t)` with `X = Ω²(N)`.
    pub upper_pdims: Option<(Pdim, Pdim, i64)>,
    pub upper_pdim_bound_holds: Option<bool>,
    pub passed: bool,
}

pub fn verify_splitting<F: Field>(
    alg: &Arc<Algebra<F>>,
    part: &StackingPartition,
    n: &Representation<F>,
    depth: usize,
    t: Option<i64>,
    cutoff: usize,
) -> Result<SplittingReport> {
    let q = alg.quiver();
    let budget = SearchBudget::default();
    let lower = corner_algebra(alg, &part.lower)?;
    let upper = corner_algebra(alg, &part.upper)?;

    let x = syzygy(n, 2);
    let mut offending = Vec::new();
    for (a, ar) in q.arrows().iter().enumerate() {
        if part.is_upper(ar.source) && part.is_lower(ar.target) && !x.map(a).is_zero() {
            offending.push(ar.name.clone());
        }
    }
    let splits = offending.is_empty();

    let compare = |a: &Representation<F>, b: &Representation<F>, k: usize| SyzygyComparison {
        k,
        dims_match: a.dims() == b.dims(),
        isomorphic: a.dims() == b.dims() && is_isomorphic(a, b, &budget).is_yes(),
    };

    let mut upper_comparisons = Vec::new();
    let mut omega_big = n.clone();
    let mut omega_small = upper.restrict(n)?;
    for k in 0..=depth {
        if k > 0 {
            omega_big = syzygy(&omega_big, 1);
            omega_small = syzygy(&omega_small, 1);
        }
        upper_comparisons.push(compare(&omega_small, &upper.restrict(&omega_big)?, k));
    }

    let mut lower_comparisons = Vec::new();
    let mut big = truncate(n, &part.lower);
    let mut small = lower.restrict(&big)?;
    for k in 0..=depth {
        if k > 0 {
            big = syzygy(&big, 1);
            small = syzygy(&small, 1);
        }
        lower_comparisons.push(compare(&small, &lower.restrict(&big)?, k));
    }

    let (upper_pdims, upper_bound_ok) = match t {
        Some(t) if splits => {
            let ex = truncate(&x, &part.upper);
            let opts = ResolverOptions {
                cutoff,
                ..ResolverOptions::default()
            };
            let pd_big = Resolver::new(alg, opts.clone()).pdim(&ex);
            let pd_small = Resolver::new(&upper.algebra, opts).pdim(&upper.restrict(&ex)?);
            let holds = match (&pd_big, &pd_small) {
                (Pdim::Finite(b), Pdim::Finite(s)) => *b >= *s && (*b as i64) <= *s as i64 + t + 1,
                (Pdim::Finite(_), Pdim::InfiniteDetected(_)) => false,
                _ => true,
            };
            (Some((pd_big, pd_small, t)), Some(holds))
        }
        _ => (None, None),
    };

    let passed = splits
        && upper_comparisons.iter().all(|c| c.isomorphic)
        && lower_comparisons.iter().all(|c| c.isomorphic)
        && upper_bound_ok.unwrap_or(true);
    Ok(SplittingReport {
        depth,
        omega2_dims: x.dims().to_vec(),
        offending_arrows: offending,
        splits,
        upper_comparisons,
        lower_comparisons,
        upper_pdims,
        upper_pdim_bound_holds: upper_bound_ok,
        passed,
    })
}
