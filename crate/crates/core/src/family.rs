//! The stacked algebra families `Λ_0, ..., Λ_d` realizing a step function of
//! n-generated finitistic dimensions, together with their witness modules.
//!
//! Naming scheme (all ASCII):
//!
//! | object            | vertex / arrow names                          |
//! |-------------------|-----------------------------------------------|
//! | `c_j`, `a_l`, `b_l` | `c1`, `a0`, `b-1`, `b0`, ...                |
//! | `b'_j`            | `b'-1`, `b'0`, `b'1`, ...                     |
//! | `γ_j`             | `gamma0`, ...                                 |
//! | `α_{li}`          | `alpha1_0`, `alpha1_2`, ...                   |
//! | `α'_{lj}`         | `alpha'0_1`, ...                              |
//! | `β_l`, `ε_l`      | `beta0`, `eps-1`, ...                         |
//! | `β'_l`, `ε'_l`    | `beta'0`, `eps'-1`, ...                       |

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraSpec, Relation, DEFAULT_NILP};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{LayeredGraph, Representation};
use crate::quiver::Quiver;

/// An increasing step function with one or two jumps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StepFunction {
    pub r: usize,
    pub m: usize,
    pub s: usize,
    /// `(n, t)`: a second jump of size `t` at `n`.
    pub second: Option<(usize, usize)>,
}

impl StepFunction {
    pub fn single(m: usize, r: usize, s: usize) -> Result<Self> {
        let f = StepFunction { r, m, s, second: None };
        f.check()?;
        Ok(f)
    }

    pub fn double(m: usize, n: usize, r: usize, s: usize, t: usize) -> Result<Self> {
        let f = StepFunction {
            r,
            m,
            s,
            second: Some((n, t)),
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::Unsupported(format!("base value r = {} must be at least 2", self.r)));
        }
        if self.m < 2 {
            return Err(Error::Unsupported(format!("first jump position m = {} must be at least 2", self.m)));
        }
        if let Some((n, t)) = self.second {
            if n <= self.m {
                return Err(Error::Unsupported(format!("jump positions must satisfy m < n, got {} and {n}", self.m)));
            }
            if self.s == 0 || t == 0 {
                return Err(Error::Unsupported("jump sizes must be positive".into()));
            }
        }
        Ok(())
    }

    /// Parse breakpoints `k:f(k)` such as `"1:2,2:3"` or `"1:2,3:4,5:6"`.
    pub fn from_jumps(text: &str) -> Result<Self> {
        let mut points: Vec<(usize, usize)> = Vec::new();
        for (i, part) in text.split(',').enumerate() {
            let part = part.trim();
            let (k, v) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse {
                    line: 1,
                    col: i + 1,
                    msg: format!("expected `k:value`, got `{part}`"),
                })?;
            let parse = |s: &str| {
                s.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    col: i + 1,
                    msg: format!("`{s}` is not a natural number"),
                })
            };
            points.push((parse(k)?, parse(v)?));
        }
        if points.is_empty() || points[0].0 != 1 {
            return Err(Error::Unsupported("the first breakpoint must be at 1".into()));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::Unsupported(
                    "breakpoints must be strictly increasing in both position and value".into(),
                ));
            }
        }
        let r = points[0].1;
        match points.len() {
            1 => {
                let f = StepFunction { r, m: 2, s: 0, second: None };
                f.check()?;
                Ok(f)
            }
            2 => Self::single(points[1].0, r, points[1].1 - r),
            3 => Self::double(points[1].0, points[2].0, r, points[1].1 - r, points[2].1 - points[1].1),
            k => Err(Error::Unsupported(format!(
                "{k} distinct values: only one or two jumps have explicit quiver data; \
                 more jumps would require iterating the second-jump recursion, which is not implemented"
            ))),
        }
    }

    pub fn t(&self) -> usize {
        self.second.map_or(0, |(_, t)| t)
    }

    pub fn d(&self) -> usize {
        self.s + self.t()
    }

    pub fn value(&self, k: usize) -> usize {
        match self.second {
            Some((n, t)) if k >= n => self.r + self.s + t,
            _ if k >= self.m && self.s > 0 => self.r + self.s,
            _ => self.r,
        }
    }

    pub fn max_value(&self) -> usize {
        self.r + self.d()
    }

    /// Width of the primed strands (`n`), or 0 for a single jump.
    pub fn n(&self) -> usize {
        self.second.map_or(0, |(n, _)| n)
    }

    pub fn render(&self) -> String {
        match self.second {
            None if self.s == 0 => format!("1:{}", self.r),
            None => format!("1:{},{}:{}", self.r, self.m, self.r + self.s),
            Some((n, t)) => format!("1:{},{}:{},{}:{}", self.r, self.m, self.r + self.s, n, self.r + self.s + t),
        }
    }
}

/// One level `Λ_l` of a family.
#[derive(Clone, Debug)]
pub struct Level {
    pub index: usize,
    pub spec: AlgebraSpec,
    /// Vertices added at this level (`E''` of the standard partition).
    pub new_vertices: Vec<String>,
    /// Layered-graph text of the witness module `N_l`.
    pub witness: String,
}

/// All data generated for a step function.
#[derive(Clone, Debug)]
pub struct FamilyBundle {
    pub f: StepFunction,
    pub levels: Vec<Level>,
}

struct Builder {
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl Builder {
    fn vertex(&mut self, name: &str) {
        self.quiver.add_vertex(name).expect("fresh vertex");
    }

    fn arrow(&mut self, name: &str, s: &str, t: &str) {
        self.quiver.add_arrow(name, s, t).expect("fresh arrow");
    }

    fn zero(&mut self, path: &str) {
        let p = self.quiver.parse_path(path).expect("valid path");
        self.relations.push(Relation::Monomial(p));
    }

    fn commute(&mut self, p: &str, q: &str) {
        let p = self.quiver.parse_path(p).expect("valid path");
        let q = self.quiver.parse_path(q).expect("valid path");
        self.relations.push(Relation::Binomial(p, q));
    }

    fn snapshot(&self) -> AlgebraSpec {
        AlgebraSpec::new(self.quiver.clone(), self.relations.clone()).with_nilp(DEFAULT_NILP)
    }
}

fn b(l: i64) -> String {
    format!("b{l}")
}

fn bp(l: i64) -> String {
    format!("b'{l}")
}

fn a(l: usize) -> String {
    format!("a{l}")
}

fn alpha(l: usize, i: usize) -> String {
    format!("alpha{l}_{i}")
}

fn alpha_p(l: usize, j: usize) -> String {
    format!("alpha'{l}_{j}")
}

fn beta(l: i64) -> String {
    format!("beta{l}")
}

fn beta_p(l: i64) -> String {
    format!("beta'{l}")
}

fn eps(l: i64) -> String {
    format!("eps{l}")
}

fn eps_p(l: i64) -> String {
    format!("eps'{l}")
}

/// Layered graph of the witness module of level `l`: tops `x0` (type `a_l`),
/// `x1..xm` (type `b_l`) and, for primed levels, `y1..yn` (type `b'_{pl}`).
fn witness_text(l: usize, m: usize, primed: Option<(usize, usize)>) -> String {
    let li = l as i64;
    let mut s = String::new();
    let _ = writeln!(s, "# witness module N_{l}");
    let _ = writeln!(s, "top x0: {}", a(l));
    for i in 1..=m {
        let _ = writeln!(s, "top x{i}: {}", b(li));
    }
    if let Some((n, pl)) = primed {
        for j in 1..=n {
            let _ = writeln!(s, "top y{j}: {}", bp(pl as i64));
        }
    }
    for i in 1..=m {
        let _ = writeln!(s, "edge x0 --{}--> u{i}", alpha(l, i));
        let _ = writeln!(s, "edge x{i} --{}--> v{i}", beta(li));
        let _ = writeln!(s, "identify u{i} v{i}");
        let _ = writeln!(s, "edge x{i} --{}--> w{i}", eps(li));
    }
    if let Some((n, pl)) = primed {
        for j in 1..=n {
            let _ = writeln!(s, "edge x0 --{}--> p{j}", alpha_p(pl, j));
            let _ = writeln!(s, "edge y{j} --{}--> q{j}", beta_p(pl as i64));
            let _ = writeln!(s, "identify p{j} q{j}");
            let _ = writeln!(s, "edge y{j} --{}--> z{j}", eps_p(pl as i64));
        }
    }
    s
}

/// Standard step `l >= 1`: vertices `a_l`, `b_l` on top of the previous level.
fn standard_step(bld: &mut Builder, l: usize, m: usize) {
    let li = l as i64;
    bld.vertex(&a(l));
    bld.vertex(&b(li));
    bld.arrow(&alpha(l, 0), &a(l), &a(l - 1));
    for i in 1..=m {
        bld.arrow(&alpha(l, i), &a(l), &b(li - 1));
    }
    bld.arrow(&beta(li), &b(li), &b(li - 1));
    bld.arrow(&eps(li), &b(li), &b(li));
    if l == 1 {
        bld.zero(&format!("gamma0*{}", alpha(1, 0)));
    } else {
        bld.zero(&format!("{}*{}", alpha(l - 1, 0), alpha(l, 0)));
    }
    for i in 1..=m {
        bld.commute(
            &format!("{}*{}", alpha(l - 1, i), alpha(l, 0)),
            &format!("{}*{}", beta(li - 1), alpha(l, i)),
        );
        bld.zero(&format!("{}*{}", eps(li - 1), alpha(l, i)));
    }
    bld.zero(&format!("{}*{}", beta(li - 1), beta(li)));
    bld.zero(&format!("{}*{}", beta(li), eps(li)));
    bld.zero(&format!("{}*{}", eps(li), eps(li)));
}

/// Generate `Λ_0, ..., Λ_d` and the witness modules `N_0, ..., N_d`.
pub fn generate_family(f: &StepFunction) -> Result<FamilyBundle> {
    f.check()?;
    let (r, m, s) = (f.r, f.m, f.s);
    let mut bld = Builder {
        quiver: Quiver::new(),
        relations: Vec::new(),
    };
    for j in 1..=r {
        bld.vertex(&format!("c{j}"));
    }
    bld.vertex(&a(0));
    bld.vertex(&b(-1));
    bld.vertex(&b(0));
    bld.arrow("gamma0", &a(0), "c1");
    for j in 1..r {
        bld.arrow(&format!("gamma{j}"), &format!("c{j}"), &format!("c{}", j + 1));
    }
    for i in 1..=m {
        bld.arrow(&alpha(0, i), &a(0), &b(-1));
    }
    bld.arrow(&eps(-1), &b(-1), &b(-1));
    bld.arrow(&beta(0), &b(0), &b(-1));
    bld.arrow(&eps(0), &b(0), &b(0));
    bld.zero("eps-1*eps-1");
    bld.zero("eps0*eps0");
    bld.zero("eps-1*beta0");
    bld.zero("beta0*eps0");
    for j in 1..r {
        bld.zero(&format!("gamma{j}*gamma{}", j - 1));
    }
    let mut levels = vec![Level {
        index: 0,
        spec: bld.snapshot(),
        new_vertices: [(1..=r).map(|j| format!("c{j}")).collect::<Vec<_>>(), vec![a(0), b(-1), b(0)]].concat(),
        witness: witness_text(0, m, None),
    }];

    let primed_from = f.second.map(|_| s);
    for l in 1..=f.d() {
        match primed_from {
            Some(sp) if l == sp => {
                let (n, _) = f.second.expect("second jump");
                standard_step(&mut bld, l, m);
                bld.vertex(&bp(-1));
                bld.vertex(&bp(0));
                for j in 1..=n {
                    bld.arrow(&alpha_p(0, j), &a(l), &bp(-1));
                }
                bld.arrow(&eps_p(-1), &bp(-1), &bp(-1));
                bld.arrow(&beta_p(0), &bp(0), &bp(-1));
                bld.arrow(&eps_p(0), &bp(0), &bp(0));
                bld.zero("eps'-1*eps'-1");
                bld.zero("eps'0*eps'0");
                bld.zero("eps'-1*beta'0");
                bld.zero("beta'0*eps'0");
                levels.push(Level {
                    index: l,
                    spec: bld.snapshot(),
                    new_vertices: vec![a(l), b(l as i64), bp(-1), bp(0)],
                    witness: witness_text(l, m, None),
                });
            }
            Some(sp) if l > sp => {
                let (n, _) = f.second.expect("second jump");
                let pl = l - sp;
                let pli = pl as i64;
                standard_step(&mut bld, l, m);
                bld.vertex(&bp(pli));
                for j in 1..=n {
                    bld.arrow(&alpha_p(pl, j), &a(l), &bp(pli - 1));
                }
                bld.arrow(&beta_p(pli), &bp(pli), &bp(pli - 1));
                bld.arrow(&eps_p(pli), &bp(pli), &bp(pli));
                for j in 1..=n {
                    bld.commute(
                        &format!("{}*{}", alpha_p(pl - 1, j), alpha(l, 0)),
                        &format!("{}*{}", beta_p(pli - 1), alpha_p(pl, j)),
                    );
                    bld.zero(&format!("{}*{}", eps_p(pli - 1), alpha_p(pl, j)));
                }
                bld.zero(&format!("{}*{}", beta_p(pli - 1), beta_p(pli)));
                bld.zero(&format!("{}*{}", beta_p(pli), eps_p(pli)));
                bld.zero(&format!("{}*{}", eps_p(pli), eps_p(pli)));
                levels.push(Level {
                    index: l,
                    spec: bld.snapshot(),
                    new_vertices: vec![a(l), b(l as i64), bp(pli)],
                    witness: witness_text(l, m, Some((n, pl))),
                });
            }
            _ => {
                standard_step(&mut bld, l, m);
                levels.push(Level {
                    index: l,
                    spec: bld.snapshot(),
                    new_vertices: vec![a(l), b(l as i64)],
                    witness: witness_text(l, m, None),
                });
            }
        }
    }
    Ok(FamilyBundle { f: *f, levels })
}

impl FamilyBundle {
    pub fn d(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn top(&self) -> &Level {
        self.levels.last().expect("at least Λ_0")
    }

    pub fn algebra<F: Field>(&self, l: usize, field: &F) -> Result<Arc<Algebra<F>>> {
        self.levels[l].spec.build(field)
    }

    pub fn witness_graph(&self, l: usize) -> Result<LayeredGraph> {
        LayeredGraph::parse(&self.levels[l].witness, &self.levels[l].spec.quiver)
    }

    /// `N_l` over `alg`, which may be `Λ_l` or any later level.
    pub fn witness_module<F: Field>(&self, l: usize, alg: &Arc<Algebra<F>>) -> Result<Representation<F>> {
        LayeredGraph::parse(&self.levels[l].witness, alg.quiver())?.build(alg)
    }

    /// Vertex names of `Λ_l`.
    pub fn vertices(&self, l: usize) -> Vec<String> {
        self.levels[l].spec.quiver.vertex_names().to_vec()
    }

    /// Standard partition of level `l >= 1`: previous vertices below, new ones on top.
    pub fn standard_partition(&self, l: usize) -> (Vec<String>, Vec<String>) {
        assert!(l >= 1, "level 0 has no standard partition");
        (self.vertices(l - 1), self.levels[l].new_vertices.clone())
    }

    /// Layers `E_0, E_1, ...` of the economical stack of the top algebra: `E_0` is the
    /// base level, each later layer adds the vertices of two consecutive levels, and an
    /// odd final level forms a layer of its own. In a two-jump family the primed
    /// vertices `b'-1`, `b'0` join `E_0`.
    pub fn alternate_layers(&self) -> Vec<Vec<String>> {
        let d = self.d();
        let base_primed = [bp(-1), bp(0)];
        let mut layers = vec![self.levels[0].new_vertices.clone()];
        if self.primed_from().is_some() {
            layers[0].extend(base_primed.iter().cloned());
        }
        let mut l = 1;
        while l <= d {
            let mut layer = self.levels[l].new_vertices.clone();
            if l + 1 <= d {
                layer.extend(self.levels[l + 1].new_vertices.iter().cloned());
            }
            layer.retain(|v| !(self.primed_from().is_some() && base_primed.contains(v)));
            layers.push(layer);
            l += 2;
        }
        layers
    }

    /// Layered graph of `X_k`: `b_k` over `b_k` along `ε_k`.
    pub fn x_module_text(k: i64) -> String {
        format!("top y: {}\nedge y --{}--> z\n", b(k), eps(k))
    }

    pub fn witness_pdim(&self, l: usize) -> usize {
        self.f.r + l
    }

    /// The primed-level offset `s` if this is a two-jump family.
    pub fn primed_from(&self) -> Option<usize> {
        self.f.second.map(|_| self.f.s)
    }
}
