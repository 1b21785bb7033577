//! Property suites for the structural lemmas behind the stacked families: each lemma is
//! checked on sampled Loewy length ≤ 2 modules (and their first syzygies) of every level.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::family::FamilyBundle;
use crate::field::{Field, Gf2, Rationals};
use crate::module::{
    decompose, is_isomorphic, parse_layered_graph, syzygy, Cover, Pdim, Representation, Resolver, ResolverOptions,
    SearchBudget,
};
use crate::monomial::critical_report;
use crate::oracle::{top_vectors, vertex_flags, Loewy2Space};
use crate::quiver::Vertex;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub level: usize,
    /// Modules meeting the hypothesis.
    pub applicable: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub lemma: String,
    pub level: usize,
    /// Layered-graph text of the module, or of the module it is a syzygy or summand of.
    pub module: String,
    pub origin: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseIntervalReport {
    pub r: usize,
    pub s: i64,
    pub interval: (i64, i64),
    pub pdim_simple_a0: Option<usize>,
    pub max_sampled: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaSuiteReport {
    pub family: String,
    pub primed: bool,
    /// Finite-pdim modules examined per level.
    pub finite_samples: Vec<(usize, usize)>,
    pub checks: Vec<LemmaCheck>,
    pub counterexamples: Vec<Counterexample>,
    pub base_interval: Option<BaseIntervalReport>,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.base_interval.as_ref().map_or(true, |l| l.passed)
    }
}

/// A module with its provenance.
#[derive(Clone)]
struct Sample<F: Field> {
    module: Representation<F>,
    pdim: Pdim,
    text: String,
    origin: String,
}

struct Ctx<'a, F: Field> {
    alg: &'a Arc<Algebra<F>>,
    level: usize,
    checks: Vec<LemmaCheck>,
    bad: Vec<Counterexample>,
}

impl<F: Field> Ctx<'_, F> {
    fn v(&self, name: &str) -> Option<Vertex> {
        self.alg.quiver().vertex(name).ok()
    }

    fn record(&mut self, lemma: &str, sample: &Sample<F>, outcome: Option<String>) {
        let level = self.level;
        let idx = match self.checks.iter().position(|c| c.lemma == lemma && c.level == level) {
            Some(i) => i,
            None => {
                self.checks.push(LemmaCheck {
                    lemma: lemma.to_string(),
                    level,
                    applicable: 0,
                    violations: 0,
                });
                self.checks.len() - 1
            }
        };
        self.checks[idx].applicable += 1;
        if let Some(detail) = outcome {
            self.checks[idx].violations += 1;
            self.bad.push(Counterexample {
                lemma: lemma.to_string(),
                level,
                module: sample.text.clone(),
                origin: sample.origin.clone(),
                detail,
            });
        }
    }
}

fn dim_at<F: Field>(m: &Representation<F>, v: Option<Vertex>) -> usize {
    v.map_or(0, |v| m.dim_at(v))
}

/// Loewy length ≤ 2 modules with top multiplicities at most `n`: every top of total
/// multiplicity ≤ 2 is visited (up to `PER_SMALL_TOP` modules each), then random draws
/// from tops of total multiplicity 2..=4, half of them with a top at `favour`, until
/// `want_finite` modules of finite projective dimension have been seen. The lattice of
/// `witness_top` is swept as well.
fn draw<F: Field>(
    alg: &Arc<Algebra<F>>,
    n: usize,
    favour: Option<Vertex>,
    witness_top: Option<Vec<usize>>,
    want_finite: usize,
    seed: u64,
    cutoff: usize,
) -> Result<Vec<Sample<F>>> {
    const PER_SMALL_TOP: u128 = 400;
    const PER_WITNESS_TOP: u128 = 1500;
    let nv = alg.quiver().vertex_count();
    let (simple_proj, infinite) = vertex_flags(alg, cutoff);
    let tops = top_vectors(nv, n, &simple_proj);
    let size = |mu: &Vec<usize>| mu.iter().sum::<usize>();
    let mut res = Resolver::new(
        alg,
        ResolverOptions {
            cutoff,
            ..Default::default()
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut finite = 0;
    let mut visit = |space: &Loewy2Space<F>, idx: u128, origin: String, res: &mut Resolver<F>| {
        let m = space.module(idx);
        let pdim = res.pdim(&m);
        let fin = pdim.finite().is_some();
        out.push(Sample {
            module: m,
            pdim,
            text: space.graph_text(idx),
            origin,
        });
        fin
    };
    for (k, mu) in tops.iter().filter(|mu| size(mu) <= 2).enumerate() {
        let space = Loewy2Space::new(alg, mu, &infinite)?;
        let count = space.count();
        let picks: Vec<u128> = if count <= PER_SMALL_TOP {
            (0..count).collect()
        } else {
            (0..PER_SMALL_TOP).map(|_| rng.gen_range(0..count)).collect()
        };
        for idx in picks {
            if visit(&space, idx, format!("small top {k}, module {idx}"), &mut res) {
                finite += 1;
            }
        }
    }
    if let Some(mu) = &witness_top {
        let space = Loewy2Space::new(alg, mu, &infinite)?;
        let count = space.count();
        let picks: Vec<u128> = if count <= PER_WITNESS_TOP {
            (0..count).collect()
        } else {
            (0..PER_WITNESS_TOP).map(|_| rng.gen_range(0..count)).collect()
        };
        for idx in picks {
            if visit(&space, idx, format!("witness top, module {idx}"), &mut res) {
                finite += 1;
            }
        }
    }
    let pool: Vec<&Vec<usize>> = tops.iter().filter(|mu| (2..=4).contains(&size(mu))).collect();
    let favoured: Vec<&Vec<usize>> = match favour {
        Some(v) => pool.iter().copied().filter(|mu| mu[v] > 0).collect(),
        None => Vec::new(),
    };
    let mut tries = 0;
    while finite < want_finite && tries < want_finite * 100 && !pool.is_empty() {
        tries += 1;
        let mu = if !favoured.is_empty() && rng.gen_bool(0.5) {
            favoured[rng.gen_range(0..favoured.len())]
        } else {
            pool[rng.gen_range(0..pool.len())]
        };
        let space = Loewy2Space::new(alg, mu, &infinite)?;
        let idx = rng.gen_range(0..space.count());
        if visit(&space, idx, format!("draw {tries}"), &mut res) {
            finite += 1;
        }
    }
    Ok(out)
}

/// Indecomposable non-projective summands of finite projective dimension.
fn indecomposables<F: Field>(s: &Sample<F>, budget: &SearchBudget) -> Vec<Sample<F>> {
    let d = decompose(&s.module, budget);
    if !d.certified {
        return Vec::new();
    }
    d.summands
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !Cover::new(x).is_projective())
        .map(|(i, x)| Sample {
            module: x,
            pdim: s.pdim.clone(),
            text: s.text.clone(),
            origin: format!("{} / summand {i}", s.origin),
        })
        .collect()
}

fn kernel_on<F: Field>(m: &Representation<F>, arrow: usize, v: Vertex) -> usize {
    m.dim_at(v) - m.map(arrow).rank()
}

/// Lemmas for level `L ≥ 1` of a single-jump family, or the unprimed levels of a two-jump one.
fn part_one<F: Field>(ctx: &mut Ctx<F>, m_mult: usize, samples: &[Sample<F>], budget: &SearchBudget) {
    let l = ctx.level as i64;
    let a_l = ctx.v(&format!("a{l}"));
    let b_l = ctx.v(&format!("b{l}"));
    let a_prev = ctx.v(&format!("a{}", l - 1));
    let alpha0 = ctx.alg.quiver().arrow_id(&format!("alpha{l}_0")).ok();
    let new: Vec<Vertex> = [a_l, b_l].into_iter().flatten().collect();
    for s in samples {
        let finite = s.pdim.finite().is_some();
        if s.module.loewy_length() == 2 && dim_at(&s.module, a_l) == 0 && dim_at(&s.module, b_l) > 0 && l >= 1 {
            let bad = finite.then(|| format!("finite pdim {} with a_L M = 0 and b_L M ≠ 0", s.pdim.render()));
            ctx.record("loewy2-top-at-b", s, bad);
        }
        if !finite {
            continue;
        }
        let omega = syzygy(&s.module, 1);
        let stray: Vec<String> = new
            .iter()
            .filter(|&&v| omega.dim_at(v) > 0)
            .map(|&v| ctx.alg.quiver().vertex_name(v).to_string())
            .collect();
        ctx.record(
            "syzygy-avoids-new-vertices",
            s,
            (!stray.is_empty()).then(|| format!("Ω¹ is nonzero at {stray:?}")),
        );
        if let (Some(a), Some(al)) = (a_l, alpha0) {
            if kernel_on(&s.module, al, a) > 0 {
                let top = s.module.top_dims();
                let got = dim_at_top(&top, b_l);
                ctx.record(
                    "kernel-forces-b-top",
                    s,
                    (got < m_mult).then(|| format!("S(b_L) has top multiplicity {got} < {m_mult}")),
                );
            }
        }
        if l >= 2 {
            for x in indecomposables(s, budget) {
                if dim_at(&x.module, a_l) == 0 && dim_at(&x.module, b_l) == 0 {
                    continue;
                }
                let om = syzygy(&x.module, 1);
                ctx.record(
                    "syzygy-meets-previous-a",
                    &x,
                    (dim_at(&om, a_prev) == 0).then(|| "a_{L-1} Ω¹(N) = 0".to_string()),
                );
                let got = dim_at_top(&x.module.top_dims(), b_l);
                ctx.record(
                    "indecomposable-b-top",
                    &x,
                    (got < m_mult).then(|| format!("S(b_L) has top multiplicity {got} < {m_mult}")),
                );
            }
        }
    }
}

fn dim_at_top(top: &[usize], v: Option<Vertex>) -> usize {
    v.map_or(0, |v| top[v])
}

/// Primed lemmas for level `L = s + ℓ` of a two-jump family.
fn part_two<F: Field>(
    ctx: &mut Ctx<F>,
    s_off: usize,
    m_mult: usize,
    n_mult: usize,
    samples: &[Sample<F>],
    budget: &SearchBudget,
) {
    let big_l = ctx.level as i64;
    let ell = big_l - s_off as i64;
    let a_l = ctx.v(&format!("a{big_l}"));
    let b_l = ctx.v(&format!("b{big_l}"));
    let bp_l = ctx.v(&format!("b'{ell}"));
    let a_prev = ctx.v(&format!("a{}", big_l - 1));
    let alpha0 = ctx.alg.quiver().arrow_id(&format!("alpha{big_l}_0")).ok();
    let q = ctx.alg.quiver().clone();
    let new: Vec<Vertex> = [a_l, b_l, bp_l].into_iter().flatten().collect();
    for s in samples {
        let finite = s.pdim.finite().is_some();
        if ell >= 1
            && s.module.loewy_length() == 2
            && dim_at(&s.module, a_l) == 0
            && (dim_at(&s.module, b_l) > 0 || dim_at(&s.module, bp_l) > 0)
        {
            let bad = finite.then(|| format!("finite pdim {} with a_L M = 0 and b_L M or b'_ℓ M ≠ 0", s.pdim.render()));
            ctx.record("loewy2-top-at-b-primed", s, bad);
        }
        if !finite || ell < 1 {
            continue;
        }
        let omega = syzygy(&s.module, 1);
        let stray: Vec<String> = new
            .iter()
            .filter(|&&v| omega.dim_at(v) > 0)
            .map(|&v| q.vertex_name(v).to_string())
            .collect();
        ctx.record("syzygy-avoids-new-vertices-primed", s, (!stray.is_empty()).then(|| format!("Ω¹ is nonzero at {stray:?}")));
        if let (Some(a), Some(al)) = (a_l, alpha0) {
            if kernel_on(&s.module, al, a) > 0 {
                let top = s.module.top_dims();
                let (gb, gp) = (dim_at_top(&top, b_l), dim_at_top(&top, bp_l));
                ctx.record(
                    "kernel-forces-b-top-primed",
                    s,
                    (gb < m_mult || gp < n_mult)
                        .then(|| format!("top multiplicities S(b_L) = {gb}, S(b'_ℓ) = {gp}; need {m_mult} and {n_mult}")),
                );
            }
        }
        for x in indecomposables(s, budget) {
            let hits_ab = dim_at(&x.module, a_l) > 0 || dim_at(&x.module, b_l) > 0;
            if hits_ab || dim_at(&x.module, bp_l) > 0 {
                let om = syzygy(&x.module, 1);
                ctx.record(
                    "syzygy-meets-previous-a-primed",
                    &x,
                    (dim_at(&om, a_prev) == 0).then(|| "a_{L-1} Ω¹(N) = 0".to_string()),
                );
            }
            if hits_ab {
                let got = dim_at_top(&x.module.top_dims(), b_l);
                ctx.record(
                    "indecomposable-b-top-primed",
                    &x,
                    (got < m_mult).then(|| format!("S(b_L) has top multiplicity {got} < {m_mult}")),
                );
            }
            if ell >= 2 && (hits_ab || dim_at(&x.module, bp_l) > 0) {
                let got = dim_at_top(&x.module.top_dims(), bp_l);
                ctx.record(
                    "indecomposable-bprime-top",
                    &x,
                    (got < n_mult).then(|| format!("S(b'_ℓ) has top multiplicity {got} < {n_mult}")),
                );
            }
        }
    }
}

/// `Ω^L(X_{L-1}) ≅ S(b_{-1})` over `Λ_L`.
fn x_chain<F: Field>(ctx: &mut Ctx<F>, budget: &SearchBudget) -> Result<()> {
    let l = ctx.level;
    let x = parse_layered_graph(&FamilyBundle::x_module_text(l as i64 - 1), ctx.alg)?;
    let target = Representation::simple(ctx.alg, ctx.alg.quiver().vertex("b-1")?);
    let omega = syzygy(&x, l);
    let ok = is_isomorphic(&omega, &target, budget).is_yes();
    let sample = Sample {
        module: x,
        pdim: Pdim::ExceedsCutoff(0),
        text: FamilyBundle::x_module_text(l as i64 - 1),
        origin: format!("X_{}", l - 1),
    };
    ctx.record(
        "x-chain",
        &sample,
        (!ok).then(|| format!("Ω^{l}(X_{}) is {} not S(b-1)", l - 1, omega.render_summary())),
    );
    Ok(())
}

fn base_interval(bundle: &FamilyBundle, finite_max: Option<usize>, cutoff: usize) -> Result<BaseIntervalReport> {
    let r = bundle.f.r;
    let qalg = bundle.algebra(0, &Rationals)?;
    let rep = critical_report(&qalg)?;
    let mut res = Resolver::new(
        &qalg,
        ResolverOptions {
            cutoff,
            ..Default::default()
        },
    );
    let sa0 = Representation::simple(&qalg, qalg.quiver().vertex("a0")?);
    let p = res.pdim(&sa0).finite();
    let passed = rep.s == r as i64 - 2
        && rep.interval == (r as i64 - 1, r as i64)
        && p == Some(r)
        && finite_max.map_or(true, |x| x <= r);
    Ok(BaseIntervalReport {
        r,
        s: rep.s,
        interval: rep.interval,
        pdim_simple_a0: p,
        max_sampled: finite_max,
        passed,
    })
}

/// Run every applicable lemma on at least `per_level` sampled finite-pdim modules of each
/// level, over the two-element field.
pub fn run_lemma_suites(bundle: &FamilyBundle, per_level: usize, seed: u64) -> Result<LemmaSuiteReport> {
    let f = &bundle.f;
    let cutoff = f.max_value() + 4;
    let budget = SearchBudget {
        exhaustive: 1 << 16,
        ..Default::default()
    };
    let primed_from = bundle.primed_from();
    let n_mult = f.second.map_or(0, |(n, _)| n);
    let bound = f.m.max(n_mult);
    let mut report = LemmaSuiteReport {
        family: f.render(),
        primed: primed_from.is_some(),
        finite_samples: Vec::new(),
        checks: Vec::new(),
        counterexamples: Vec::new(),
        base_interval: None,
    };
    for level in 0..=bundle.d() {
        let alg = bundle.algebra(level, &Gf2)?;
        let favour = alg.quiver().vertex(&format!("a{level}")).ok();
        let witness_top = if level >= 1 {
            let w = bundle.witness_module(level, &alg)?;
            Some(w.top_dims())
        } else {
            None
        };
        let mut samples = draw(&alg, bound, favour, witness_top, per_level, seed ^ level as u64, cutoff)?;
        for j in 0..=level {
            let w = bundle.witness_module(j, &alg)?;
            let mut res = Resolver::new(
                &alg,
                ResolverOptions {
                    cutoff,
                    ..Default::default()
                },
            );
            let pdim = res.pdim(&w);
            samples.push(Sample {
                module: w,
                pdim,
                text: bundle.levels[j].witness.clone(),
                origin: format!("N_{j}"),
            });
        }
        let syz: Vec<Sample<Gf2>> = samples
            .iter()
            .filter(|s| matches!(s.pdim, Pdim::Finite(d) if d > 0))
            .map(|s| Sample {
                module: syzygy(&s.module, 1),
                pdim: Pdim::Finite(s.pdim.finite().expect("finite") - 1),
                text: s.text.clone(),
                origin: format!("Ω¹({})", s.origin),
            })
            .collect();
        samples.extend(syz);
        let finite = samples.iter().filter(|s| s.pdim.finite().is_some()).count();
        report.finite_samples.push((level, finite));

        let mut ctx = Ctx {
            alg: &alg,
            level,
            checks: Vec::new(),
            bad: Vec::new(),
        };
        match primed_from {
            Some(s_off) if level > s_off => {
                part_two(&mut ctx, s_off, f.m, n_mult, &samples, &budget);
            }
            Some(s_off) if level >= 1 && level < s_off => {
                part_one(&mut ctx, f.m, &samples, &budget);
                x_chain(&mut ctx, &budget)?;
            }
            Some(_) => {}
            None if level >= 1 => {
                part_one(&mut ctx, f.m, &samples, &budget);
                x_chain(&mut ctx, &budget)?;
            }
            None => {}
        }
        if level == 0 {
            let max = samples.iter().filter_map(|s| s.pdim.finite()).max();
            report.base_interval = Some(base_interval(bundle, max, cutoff)?);
        }
        report.checks.extend(ctx.checks);
        report.counterexamples.extend(ctx.bad);
    }
    Ok(report)
}
