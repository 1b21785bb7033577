use quiverstack::catalog;
use quiverstack::family::{generate_family, StepFunction};
use quiverstack::field::Gf2;
use quiverstack::lemmas::run_lemma_suites;
use quiverstack::module::{is_isomorphic, parse_layered_graph, SearchBudget};
use quiverstack::oracle::{observed_findim, top_vectors, EnumerationBudget, Loewy2Space};

#[test]
fn graded_subspaces_over_lambda0() {
    let b = generate_family(&StepFunction::single(2, 2, 1).unwrap()).unwrap();
    let alg = b.algebra(0, &Gf2).unwrap();
    let q = alg.quiver();
    let mut mu = vec![0; q.vertex_count()];
    mu[q.vertex("b0").unwrap()] = 1;
    let space = Loewy2Space::new(&alg, &mu, &vec![false; q.vertex_count()]).unwrap();
    assert_eq!(space.layer_dim(), 2);
    assert_eq!(space.count(), 4);
}

#[test]
fn witness_top_over_lambda1() {
    let b = generate_family(&StepFunction::single(2, 2, 1).unwrap()).unwrap();
    let alg = b.algebra(1, &Gf2).unwrap();
    let q = alg.quiver();
    let mut mu = vec![0; q.vertex_count()];
    mu[q.vertex("a1").unwrap()] = 1;
    mu[q.vertex("b1").unwrap()] = 2;
    let space = Loewy2Space::new(&alg, &mu, &vec![false; q.vertex_count()]).unwrap();
    assert_eq!(space.layer_dim(), 7);
    let budget = SearchBudget::default();
    let n1 = b.witness_module(1, &alg).unwrap();
    let found = (0..space.count()).any(|i| {
        let m = space.module(i);
        m.dims() == n1.dims() && is_isomorphic(&m, &n1, &budget).is_yes()
    });
    assert!(found);
    let idx = space.count() - 1;
    let text = space.graph_text(idx);
    let rebuilt = parse_layered_graph(&text, &alg).unwrap();
    assert!(is_isomorphic(&rebuilt, &space.module(idx), &budget).is_yes());
}

#[test]
fn top_vectors_skip_and_order() {
    let tops = top_vectors(3, 1, &[false, true, false]);
    assert!(tops.iter().all(|t| t[1] == 0));
    assert_eq!(tops.len(), 3);
    assert!(tops.windows(2).all(|w| w[0].iter().sum::<usize>() <= w[1].iter().sum::<usize>()));
}

#[test]
fn looped_radical_square_zero_findim_zero_and_determinism() {
    let alg = catalog::looped_radical_square_zero().build(&Gf2).unwrap();
    let budget = EnumerationBudget {
        cutoff: 16,
        ..Default::default()
    };
    let a = observed_findim(&alg, 1, &budget).unwrap();
    assert!(a.exhaustive);
    assert_eq!(a.observed, Some(0));
    let b = observed_findim(&alg, 1, &budget).unwrap();
    assert_eq!(a.visited, b.visited);
    assert_eq!(a.attaining_module, b.attaining_module);
}

#[test]
fn lambda1_first_value_exhaustive() {
    let b = generate_family(&StepFunction::single(2, 2, 1).unwrap()).unwrap();
    let alg = b.algebra(1, &Gf2).unwrap();
    let obs = observed_findim(
        &alg,
        1,
        &EnumerationBudget {
            max_modules: 1_000_000,
            full_dim: 12,
            seed: 7,
            cutoff: 8,
        },
    )
    .unwrap();
    assert!(obs.exhaustive);
    assert_eq!(obs.observed, Some(2));
    assert_eq!(obs.rational_pdim.as_deref(), Some("2"));
}

#[test]
fn lemma_suite_single_jump() {
    let b = generate_family(&StepFunction::single(2, 2, 1).unwrap()).unwrap();
    let rep = run_lemma_suites(&b, 60, 3).unwrap();
    assert!(rep.passed(), "{:?}", rep.counterexamples);
    assert!(rep.finite_samples.iter().all(|&(_, c)| c >= 60));
    assert!(rep.checks.iter().any(|c| c.applicable > 0));
    let base = rep.base_interval.unwrap();
    assert_eq!(base.pdim_simple_a0, Some(2));
    assert_eq!(base.interval, (1, 2));
}
