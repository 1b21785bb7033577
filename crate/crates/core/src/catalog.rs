//! Small named algebras used by the tests, the CLI and the demo.

use crate::algebra::{AlgebraSpec, Relation};
use crate::error::Result;
use crate::family::{generate_family, StepFunction};
use crate::field::Rationals;
use crate::quiver::{enumerate_paths, Quiver};
use crate::stacking::corner_spec;

/// Every path of length `k` becomes a monomial relation.
fn truncate_at(q: Quiver, k: usize) -> Result<AlgebraSpec> {
    let relations = enumerate_paths(&q, k, 1 << 20)?
        .into_iter()
        .filter(|p| p.len() == k)
        .map(Relation::Monomial)
        .collect();
    Ok(AlgebraSpec::new(q, relations).with_nilp(k.max(2)))
}

/// Vertices 1..5, arrows 1→2, 1→5, 2→3, 2→5, 3→4, 3→5, 4→5, a loop at 5, radical square zero.
pub fn looped_radical_square_zero() -> AlgebraSpec {
    let mut q = Quiver::new();
    for v in 1..=5 {
        q.add_vertex(&v.to_string()).expect("fresh");
    }
    for (s, t) in [(1, 2), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)] {
        q.add_arrow(&format!("a{s}{t}"), &s.to_string(), &t.to_string()).expect("fresh");
    }
    q.add_arrow("l5", "5", "5").expect("fresh");
    let mut spec = truncate_at(q, 2).expect("small");
    spec.partition = Some((vec!["5".into()], (1..=4).map(|v| v.to_string()).collect()));
    spec
}

/// `A_5` with arrows `i → i+1` and radical square zero.
pub fn a5_radical_square_zero() -> AlgebraSpec {
    let mut spec = nakayama_linear(5, 2);
    spec.partition = Some((vec!["4".into(), "5".into()], vec!["1".into(), "2".into(), "3".into()]));
    spec
}

/// `A_n` linearly oriented, vertices `1..n`, arrows `a<i>: i → i+1`, `J^k = 0`.
pub fn nakayama_linear(n: usize, k: usize) -> AlgebraSpec {
    let mut q = Quiver::new();
    for v in 1..=n {
        q.add_vertex(&v.to_string()).expect("fresh");
    }
    for i in 1..n {
        q.add_arrow(&format!("a{i}"), &i.to_string(), &(i + 1).to_string()).expect("fresh");
    }
    truncate_at(q, k).expect("small")
}

/// Cyclic quiver on `n` vertices with all paths of length `k` zero.
pub fn nakayama_cyclic(n: usize, k: usize) -> AlgebraSpec {
    let mut q = Quiver::new();
    for v in 1..=n {
        q.add_vertex(&v.to_string()).expect("fresh");
    }
    for i in 1..=n {
        let j = i % n + 1;
        q.add_arrow(&format!("a{i}"), &i.to_string(), &j.to_string()).expect("fresh");
    }
    truncate_at(q, k).expect("small")
}

/// `K[x]/(x^k)`.
pub fn truncated_loop(k: usize) -> AlgebraSpec {
    let mut q = Quiver::new();
    q.add_vertex("1").expect("fresh");
    q.add_arrow("x", "1", "1").expect("fresh");
    truncate_at(q, k).expect("small")
}

/// Generalized Kronecker quiver with `arrows` parallel arrows `1 → 2`, followed by `2 → 3`,
/// with the composites through the first `zeros` arrows killed.
pub fn kronecker_tail(arrows: usize, zeros: usize) -> AlgebraSpec {
    let mut q = Quiver::new();
    for v in ["1", "2", "3"] {
        q.add_vertex(v).expect("fresh");
    }
    let ks: Vec<usize> = (0..arrows)
        .map(|i| q.add_arrow(&format!("k{i}"), "1", "2").expect("fresh"))
        .collect();
    let b = q.add_arrow("b", "2", "3").expect("fresh");
    let relations = ks
        .iter()
        .take(zeros)
        .map(|&k| Relation::Monomial(q.path_from_traversal(&[k, b]).expect("composable")))
        .collect();
    AlgebraSpec::new(q, relations)
}

/// Λ₀ of the family with parameters `(m, r)`.
pub fn lambda0(m: usize, r: usize) -> Result<AlgebraSpec> {
    let b = generate_family(&StepFunction::single(m, r, 0)?)?;
    Ok(b.levels[0].spec.clone())
}

/// The upper corner Δ'' of Δ = Λ₁ for the partition `E' = {b-1}`.
pub fn delta_upper(m: usize, r: usize) -> Result<AlgebraSpec> {
    let b = generate_family(&StepFunction::single(m, r, 1)?)?;
    let alg = b.algebra(1, &Rationals)?;
    let lower = alg.quiver().vertex("b-1")?;
    let keep: Vec<usize> = (0..alg.quiver().vertex_count()).filter(|&v| v != lower).collect();
    corner_spec(&alg, &keep)
}

/// Named monomial algebras for cross-checking the path calculus against resolutions.
pub fn monomial_corpus() -> Result<Vec<(String, AlgebraSpec)>> {
    let mut out = Vec::new();
    for r in 2..=6 {
        for m in 2..=4 {
            out.push((format!("lambda0-m{m}-r{r}"), lambda0(m, r)?));
        }
    }
    for (m, r) in [(2, 2), (2, 3), (3, 4)] {
        out.push((format!("delta-upper-m{m}-r{r}"), delta_upper(m, r)?));
    }
    out.push(("looped_radical_square_zero".into(), looped_radical_square_zero()));
    out.push(("a5_radical_square_zero".into(), a5_radical_square_zero()));
    for n in 2..=8 {
        for k in 2..=5 {
            out.push((format!("nakayama-linear-{n}-{k}"), nakayama_linear(n, k)));
        }
    }
    for n in 1..=5 {
        for k in 2..=5 {
            out.push((format!("nakayama-cyclic-{n}-{k}"), nakayama_cyclic(n, k)));
        }
    }
    for k in 2..=7 {
        out.push((format!("loop-{k}"), truncated_loop(k)));
    }
    for (a, z) in [(2, 1), (3, 2), (3, 3)] {
        out.push((format!("kronecker-{a}-{z}"), kronecker_tail(a, z)));
    }
    Ok(out)
}
