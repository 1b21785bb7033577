//! End-to-end checks of a generated family and the fixed acceptance battery.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::catalog;
use crate::error::Result;
use crate::family::{generate_family, FamilyBundle, StepFunction};
use crate::field::{Field, Gf2, Rationals};
use crate::lemmas::{run_lemma_suites, LemmaSuiteReport};
use crate::module::{is_isomorphic, syzygy, Pdim, Representation, Resolver, ResolverOptions, SearchBudget};
use crate::monomial::{critical_report, pdim_path_module, theorem1_check};
use crate::oracle::{observed_findim, EnumerationBudget, FindimObservation};
use crate::stacking::{
    check_partition, corner_algebra, global_dimension, stack_invariants, verify_splitting, StackingPartition,
};

#[derive(Clone, Debug, Serialize)]
pub struct WitnessLevel {
    pub level: usize,
    pub pdim: String,
    pub expected_pdim: usize,
    pub loewy_length: usize,
    pub tree: bool,
    /// The syzygy recursion checked at this level and whether it held.
    pub syzygy_expected: Option<String>,
    pub syzygy_matches: Option<bool>,
    pub splitting: Option<bool>,
}

impl WitnessLevel {
    pub fn passed(&self) -> bool {
        self.pdim == Pdim::Finite(self.expected_pdim).render()
            && self.loewy_length == 2
            && self.tree
            && self.syzygy_matches.unwrap_or(true)
            && self.splitting.unwrap_or(true)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessChainReport {
    pub family: String,
    pub levels: Vec<WitnessLevel>,
}

impl WitnessChainReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(WitnessLevel::passed)
    }
}

fn partition_of(bundle: &FamilyBundle, l: usize, q: &crate::quiver::Quiver) -> Result<StackingPartition> {
    StackingPartition::from_names(q, &bundle.standard_partition(l))
}

fn cutoff_for(bundle: &FamilyBundle) -> usize {
    bundle.f.max_value() + 4
}

/// Witness modules `N_l` over `Λ_l`: projective dimensions, syzygy recursion and the
/// splitting of second syzygies along the standard partition.
pub fn witness_chain(bundle: &FamilyBundle) -> Result<WitnessChainReport> {
    let cutoff = cutoff_for(bundle);
    let budget = SearchBudget {
        exhaustive: 1 << 16,
        ..Default::default()
    };
    let s = bundle.primed_from();
    let n_mult = bundle.f.second.map_or(0, |(n, _)| n);
    let mut levels = Vec::new();
    for l in 0..=bundle.d() {
        let alg = bundle.algebra(l, &Gf2)?;
        let n = bundle.witness_module(l, &alg)?;
        let mut res = Resolver::new(
            &alg,
            ResolverOptions {
                cutoff,
                ..Default::default()
            },
        );
        let pdim = res.pdim(&n);
        let (syzygy_expected, syzygy_matches) = if l == 0 {
            (None, None)
        } else {
            let prev = bundle.witness_module(l - 1, &alg)?;
            let omega = syzygy(&n, 1);
            if s == Some(l) {
                let q = alg.quiver();
                let v = q.vertex("b'-1")?;
                let target = prev.direct_sum(&Representation::projective(&alg, v).power(n_mult));
                (
                    Some(format!("Ω¹(N_{l}) ≅ N_{} + (P(b'-1))^{n_mult}", l - 1)),
                    Some(is_isomorphic(&omega, &target, &budget).is_yes()),
                )
            } else if s.is_some_and(|s| l == s + 1) {
                let target = syzygy(&prev, 1);
                (
                    Some(format!("Ω²(N_{l}) ≅ Ω¹(N_{})", l - 1)),
                    Some(is_isomorphic(&syzygy(&omega, 1), &target, &budget).is_yes()),
                )
            } else {
                (
                    Some(format!("Ω¹(N_{l}) ≅ N_{}", l - 1)),
                    Some(is_isomorphic(&omega, &prev, &budget).is_yes()),
                )
            }
        };
        let splitting = if l == 0 {
            None
        } else {
            let part = partition_of(bundle, l, alg.quiver())?;
            let t = stack_invariants(&alg, &part, cutoff)?.t;
            Some(verify_splitting(&alg, &part, &n, 2, Some(t), cutoff)?.passed)
        };
        levels.push(WitnessLevel {
            level: l,
            pdim: pdim.render(),
            expected_pdim: bundle.witness_pdim(l),
            loewy_length: n.loewy_length(),
            tree: bundle.witness_graph(l)?.is_tree(),
            syzygy_expected,
            syzygy_matches,
            splitting,
        });
    }
    Ok(WitnessChainReport {
        family: bundle.f.render(),
        levels,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelStructure {
    pub level: usize,
    pub radical_cube_zero: bool,
    pub partition_valid: Option<bool>,
    pub corner_matches_previous: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub family: String,
    pub levels: Vec<LevelStructure>,
    pub layer_count: usize,
    pub expected_layer_count: usize,
    /// Per layer: the corner on it is monomial and it stacks on the layers below.
    pub layers_monomial: Vec<bool>,
    pub layers_stack: Vec<bool>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| {
            l.radical_cube_zero && l.partition_valid.unwrap_or(true) && l.corner_matches_previous.unwrap_or(true)
        }) && self.layer_count == self.expected_layer_count
            && self.layers_monomial.iter().all(|&b| b)
            && self.layers_stack.iter().all(|&b| b)
    }
}

fn same_presented_algebra<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> bool {
    if a.quiver() != b.quiver() || a.basis() != b.basis() {
        return false;
    }
    let f = a.field();
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let x = a.mul_basis(i, j);
            let y = b.mul_basis(i, j);
            x.len() == y.len() && x.iter().zip(y).all(|((p, c), (q, d))| p == q && f.is_zero(&f.sub(c, d)))
        })
    })
}

/// Radical cube zero, standard partitions, corners and the economical stack of the top level.
pub fn family_structure(bundle: &FamilyBundle) -> Result<StructureReport> {
    let mut levels = Vec::new();
    let mut prev: Option<Arc<Algebra<Rationals>>> = None;
    for l in 0..=bundle.d() {
        let alg = bundle.algebra(l, &Rationals)?;
        let (partition_valid, corner_matches_previous) = match &prev {
            None => (None, None),
            Some(p) => {
                let part = partition_of(bundle, l, alg.quiver())?;
                let corner = corner_algebra(&alg, &part.lower)?;
                (
                    Some(check_partition(&alg, &part).valid),
                    Some(same_presented_algebra(&corner.algebra, p)),
                )
            }
        };
        levels.push(LevelStructure {
            level: l,
            radical_cube_zero: alg.radical_power(3).is_empty(),
            partition_valid,
            corner_matches_previous,
        });
        prev = Some(alg);
    }

    let top = prev.expect("at least one level");
    let q = top.quiver();
    let layers = bundle.alternate_layers();
    let mut below: Vec<String> = Vec::new();
    let mut layers_monomial = Vec::new();
    let mut layers_stack = Vec::new();
    for layer in &layers {
        let ids = layer.iter().map(|v| q.vertex(v)).collect::<Result<Vec<_>>>()?;
        layers_monomial.push(corner_algebra(&top, &ids)?.algebra.is_monomial());
        if !below.is_empty() {
            let mut all: Vec<String> = below.clone();
            all.extend(layer.iter().cloned());
            let all_ids = all.iter().map(|v| q.vertex(v)).collect::<Result<Vec<_>>>()?;
            let sub = corner_algebra(&top, &all_ids)?;
            let part = StackingPartition::from_names(sub.algebra.quiver(), &(below.clone(), layer.clone()))?;
            layers_stack.push(check_partition(&sub.algebra, &part).valid);
        }
        below.extend(layer.iter().cloned());
    }
    Ok(StructureReport {
        family: bundle.f.render(),
        levels,
        layer_count: layers.len(),
        expected_layer_count: bundle.d().div_ceil(2) + 1,
        layers_monomial,
        layers_stack,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FindimCheck {
    pub n: usize,
    pub expected: usize,
    pub observation: FindimObservation,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub lemma_samples: usize,
    pub seed: u64,
    /// Values of `n` at which the oracle is run on the top level.
    pub oracle_n: Vec<usize>,
    pub budget: EnumerationBudget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            lemma_samples: 200,
            seed: 11,
            oracle_n: Vec::new(),
            budget: EnumerationBudget::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub witness: WitnessChainReport,
    pub structure: StructureReport,
    pub lemmas: LemmaSuiteReport,
    pub findim: Vec<FindimCheck>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.witness.passed()
            && self.structure.passed()
            && self.lemmas.passed()
            && self.findim.iter().all(|c| c.matches)
    }
}

pub fn verify_family(bundle: &FamilyBundle, opts: &VerifyOptions) -> Result<FamilyReport> {
    let mut findim = Vec::new();
    if !opts.oracle_n.is_empty() {
        let alg = bundle.algebra(bundle.d(), &Gf2)?;
        for &n in &opts.oracle_n {
            let observation = observed_findim(&alg, n, &opts.budget)?;
            let expected = bundle.f.value(n);
            findim.push(FindimCheck {
                n,
                expected,
                matches: observation.observed == Some(expected),
                observation,
            });
        }
    }
    Ok(FamilyReport {
        family: bundle.f.render(),
        witness: witness_chain(bundle)?,
        structure: family_structure(bundle)?,
        lemmas: run_lemma_suites(bundle, opts.lemma_samples, opts.seed)?,
        findim,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub seconds: f64,
    pub limit_seconds: f64,
    pub detail: String,
    /// Reproducer text written out when a sampled check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<String>,
}

pub const CRITERIA: [(u8, &str, f64); 8] = [
    (1, "base algebras: monomial interval and simple pdims", 3.0),
    (2, "syzygies of submodules of projectives split into path ideals", 60.0),
    (3, "stacking examples: global and finitistic dimensions", 5.0),
    (4, "witness chains: syzygies, pdims and splitting", 30.0),
    (5, "oracle on a two-level family over F2", 600.0),
    (6, "lemma suites on sampled finite-pdim modules", 600.0),
    (7, "family structure: radical cube, partitions, corners, layers", 60.0),
    (8, "path calculus agrees with resolutions", 120.0),
];

struct Outcome {
    passed: bool,
    detail: String,
    reproducer: Option<String>,
}

fn ok(passed: bool, detail: String) -> Outcome {
    Outcome {
        passed,
        detail,
        reproducer: None,
    }
}

fn base_algebras() -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut passed = true;
    for (r, m) in [(2usize, 2usize), (3, 2), (4, 3)] {
        let start = Instant::now();
        let alg = catalog::lambda0(m, r)?.build(&Rationals)?;
        let q = alg.quiver();
        let crit = critical_report(&alg)?;
        let mut res = Resolver::new(&alg, ResolverOptions::default());
        let sa0 = res.pdim(&Representation::simple(&alg, q.vertex("a0")?));
        let g1 = res.pdim(&Representation::path_ideal(&alg, &q.parse_path("gamma1")?)?);
        let sb = res.pdim(&Representation::simple(&alg, q.vertex("b-1")?));
        let secs = start.elapsed().as_secs_f64();
        let good = crit.s == r as i64 - 2
            && crit.interval == (r as i64 - 1, r as i64)
            && sa0 == Pdim::Finite(r)
            && g1 == Pdim::Finite(r - 2)
            && sb.is_infinite()
            && secs < 1.0;
        passed &= good;
        lines.push(format!(
            "r={r} m={m}: s={} interval=[{},{}] pd S(a0)={} pd(gamma1)={} pd S(b-1)={} {:.2}s",
            crit.s,
            crit.interval.0,
            crit.interval.1,
            sa0.render(),
            g1.render(),
            sb.render(),
            secs
        ));
    }
    Ok(ok(passed, lines.join("; ")))
}

/// Random submodules of sums of indecomposable projectives over GF(2), each generated by
/// one to three random elements.
pub fn random_submodules_of_projectives(
    alg: &Arc<Algebra<Gf2>>,
    count: usize,
    seed: u64,
) -> Vec<Representation<Gf2>> {
    let f = Gf2;
    let nv = alg.quiver().vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < count * 50 {
        tries += 1;
        let summands = rng.gen_range(1..=2);
        let parts: Vec<Representation<Gf2>> = (0..summands)
            .map(|_| Representation::projective(alg, rng.gen_range(0..nv)))
            .collect();
        let p = Representation::direct_sum_all(alg, &parts);
        let gens: Vec<_> = (0..rng.gen_range(1..=3))
            .filter_map(|_| {
                let v = rng.gen_range(0..nv);
                let d = p.dim_at(v);
                if d == 0 {
                    return None;
                }
                let elems: Vec<_> = (0..d).map(|_| f.random(&mut rng)).collect();
                Some((v, f.from_elems(&elems)))
            })
            .collect();
        if gens.is_empty() {
            continue;
        }
        let m = p.subrep(&p.generated(&gens));
        if !m.is_zero() {
            out.push(m);
        }
    }
    out
}

fn splitting_suite() -> Result<Outcome> {
    let budget = SearchBudget {
        exhaustive: 1 << 16,
        ..Default::default()
    };
    let mut total = 0;
    let mut failures = Vec::new();
    let mut specs = Vec::new();
    for (m, r) in [(2, 2), (2, 3), (3, 4)] {
        specs.push((format!("lambda0-m{m}-r{r}"), catalog::lambda0(m, r)?));
        specs.push((format!("delta-upper-m{m}-r{r}"), catalog::delta_upper(m, r)?));
    }
    for (k, (name, spec)) in specs.iter().enumerate() {
        let alg = spec.build(&Gf2)?;
        for (i, m) in random_submodules_of_projectives(&alg, 12, 100 + k as u64).iter().enumerate() {
            total += 1;
            let rep = theorem1_check(&alg, m, &budget)?;
            if !rep.passed() {
                failures.push(format!("{name} #{i}: dims {:?} {}", m.dims(), m.render_summary()));
            }
        }
    }
    let detail = format!("{total} modules, {} failures", failures.len());
    Ok(Outcome {
        passed: total >= 50 && failures.is_empty(),
        detail,
        reproducer: (!failures.is_empty()).then(|| failures.join("\n")),
    })
}

fn stacking_examples() -> Result<Outcome> {
    let cutoff = 16;
    let looped = catalog::looped_radical_square_zero();
    let looped_alg = looped.build(&Rationals)?;
    let looped_part = StackingPartition::from_names(looped_alg.quiver(), looped.partition.as_ref().expect("partition"))?;
    let looped_valid = check_partition(&looped_alg, &looped_part).valid;
    let looped_upper = corner_algebra(&looped_alg, &looped_part.upper)?;
    let looped_gl_upper = global_dimension(&looped_upper.algebra, cutoff);
    let alg7_f2 = looped.build(&Gf2)?;
    let obs = observed_findim(
        &alg7_f2,
        1,
        &EnumerationBudget {
            cutoff,
            ..Default::default()
        },
    )?;

    let a5 = catalog::a5_radical_square_zero();
    let a5_alg = a5.build(&Rationals)?;
    let a5_part = StackingPartition::from_names(a5_alg.quiver(), a5.partition.as_ref().expect("partition"))?;
    let inv = stack_invariants(&a5_alg, &a5_part, cutoff)?;
    let a5_gl = global_dimension(&a5_alg, cutoff);
    let bound = &inv.findim_bound;

    let passed = looped_valid
        && looped_gl_upper == Pdim::Finite(3)
        && obs.exhaustive
        && obs.observed == Some(0)
        && check_partition(&a5_alg, &a5_part).valid
        && inv.lower_global_dimension == Pdim::Finite(1)
        && inv.upper_global_dimension == Pdim::Finite(2)
        && a5_gl == Pdim::Finite(4)
        && bound.lo <= 4
        && bound.hi == Some(4);
    Ok(ok(
        passed,
        format!(
            "looped radical square zero: partition valid={looped_valid} gl upper={} fin dim (n=1, exhaustive={})={:?}; \
             A5 radical square zero: gl lower={} upper={} whole={} bound=[{}, {:?}]",
            looped_gl_upper.render(),
            obs.exhaustive,
            obs.observed,
            inv.lower_global_dimension.render(),
            inv.upper_global_dimension.render(),
            a5_gl.render(),
            bound.lo,
            bound.hi
        ),
    ))
}

fn describe_chain(rep: &WitnessChainReport) -> String {
    rep.levels
        .iter()
        .map(|l| {
            format!(
                "N_{}: pd {} (want {}){}{}",
                l.level,
                l.pdim,
                l.expected_pdim,
                match (&l.syzygy_expected, l.syzygy_matches) {
                    (Some(e), Some(b)) => format!(", {e}: {b}"),
                    _ => String::new(),
                },
                l.splitting.map_or(String::new(), |b| format!(", splitting: {b}"))
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn witness_chains() -> Result<Outcome> {
    let one = witness_chain(&generate_family(&StepFunction::single(2, 2, 2)?)?)?;
    let two = witness_chain(&generate_family(&StepFunction::double(2, 3, 2, 1, 1)?)?)?;
    let part_two_top = two.levels.last().is_some_and(|l| l.pdim == "4");
    Ok(ok(
        one.passed() && two.passed() && part_two_top,
        format!("[{}] {}; [{}] {}", one.family, describe_chain(&one), two.family, describe_chain(&two)),
    ))
}

/// Budget used by the acceptance run of the oracle.
pub fn acceptance_oracle_budget() -> EnumerationBudget {
    EnumerationBudget {
        max_modules: 300,
        full_dim: 9,
        seed: 7,
        cutoff: 8,
    }
}

fn oracle_family() -> Result<Outcome> {
    let b = generate_family(&StepFunction::single(2, 2, 1)?)?;
    let alg = b.algebra(1, &Gf2)?;
    let budget = acceptance_oracle_budget();
    let mut parts = Vec::new();
    let mut passed = true;
    for (n, want) in [(1usize, 2usize), (2, 3)] {
        let obs = observed_findim(&alg, n, &budget)?;
        passed &= obs.observed == Some(want) && obs.unresolved_count == 0;
        parts.push(format!(
            "n={n}: observed {:?} (want {want}), {} modules, exhaustive={}, over Q: {}",
            obs.observed,
            obs.visited,
            obs.exhaustive,
            obs.rational_pdim.as_deref().unwrap_or("-")
        ));
    }
    Ok(ok(passed, parts.join("; ")))
}

fn lemma_suites() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    let mut dumps = Vec::new();
    for f in [StepFunction::single(2, 2, 2)?, StepFunction::double(2, 3, 2, 1, 1)?] {
        let rep = run_lemma_suites(&generate_family(&f)?, 200, 11)?;
        let enough = rep.finite_samples.iter().all(|&(_, c)| c >= 200);
        let applicable: usize = rep.checks.iter().map(|c| c.applicable).sum();
        passed &= enough && rep.passed();
        parts.push(format!(
            "{}: finite samples {:?}, {} applications, {} counterexamples",
            rep.family,
            rep.finite_samples.iter().map(|&(_, c)| c).collect::<Vec<_>>(),
            applicable,
            rep.counterexamples.len()
        ));
        for c in &rep.counterexamples {
            dumps.push(format!(
                "# {} lemma {} level {} ({})\n# {}\n{}",
                rep.family, c.lemma, c.level, c.origin, c.detail, c.module
            ));
        }
    }
    Ok(Outcome {
        passed,
        detail: parts.join("; "),
        reproducer: (!dumps.is_empty()).then(|| dumps.join("\n")),
    })
}

fn family_structures() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for f in [
        StepFunction::single(2, 2, 1)?,
        StepFunction::single(2, 2, 2)?,
        StepFunction::single(2, 3, 3)?,
        StepFunction::double(2, 3, 2, 1, 1)?,
        StepFunction::double(2, 3, 2, 1, 2)?,
    ] {
        let rep = family_structure(&generate_family(&f)?)?;
        passed &= rep.passed();
        parts.push(format!(
            "{}: {} levels, {} layers (want {}), {}",
            rep.family,
            rep.levels.len(),
            rep.layer_count,
            rep.expected_layer_count,
            if rep.passed() { "ok" } else { "FAILED" }
        ));
    }
    Ok(ok(passed, parts.join("; ")))
}

fn path_calculus() -> Result<Outcome> {
    let mut total = 0;
    let mut bad = Vec::new();
    for (name, spec) in catalog::monomial_corpus()? {
        let alg = spec.build(&Gf2)?;
        let mut res = Resolver::new(
            &alg,
            ResolverOptions {
                cutoff: 32,
                ..Default::default()
            },
        );
        for i in 0..alg.dim() {
            let p = alg.basis_path(i).clone();
            if p.is_trivial() {
                continue;
            }
            total += 1;
            let calc = pdim_path_module(&alg, &p)?;
            let direct = res.pdim(&Representation::path_ideal(&alg, &p)?);
            let agree = match (&calc, &direct) {
                (Pdim::Finite(a), Pdim::Finite(b)) => a == b,
                (a, b) => a.is_infinite() && b.is_infinite(),
            };
            if !agree {
                bad.push(format!("{name} {}: {} vs {}", alg.render_basis(i), calc.render(), direct.render()));
            }
        }
    }
    let detail = format!("{total} paths, {} disagreements", bad.len());
    Ok(Outcome {
        passed: total >= 500 && bad.is_empty(),
        detail,
        reproducer: (!bad.is_empty()).then(|| bad.join("\n")),
    })
}

/// Run one acceptance criterion by number.
pub fn run_criterion(id: u8) -> Result<Criterion> {
    let &(_, title, limit) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| crate::Error::Invalid(format!("no criterion {id}")))?;
    let start = Instant::now();
    let out = match id {
        1 => base_algebras()?,
        2 => splitting_suite()?,
        3 => stacking_examples()?,
        4 => witness_chains()?,
        5 => oracle_family()?,
        6 => lemma_suites()?,
        7 => family_structures()?,
        _ => path_calculus()?,
    };
    let seconds = start.elapsed().as_secs_f64();
    Ok(Criterion {
        id,
        title: title.to_string(),
        passed: out.passed && seconds <= limit,
        seconds,
        limit_seconds: limit,
        detail: out.detail,
        reproducer: out.reproducer,
    })
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {}: {} ({:.1}s / {:.0}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}
