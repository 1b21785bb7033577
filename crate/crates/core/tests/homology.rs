use quiverstack::family::{generate_family, FamilyBundle, StepFunction};
use quiverstack::field::{Gf2, Rationals};
use quiverstack::module::{
    is_isomorphic, projective_cover, syzygy, LayeredGraph, Pdim, Representation, Resolver, ResolverOptions,
    SearchBudget,
};

fn bundle(m: usize, r: usize, s: usize) -> FamilyBundle {
    generate_family(&StepFunction::single(m, r, s).unwrap()).unwrap()
}

#[test]
fn lambda0_dimensions_and_radical() {
    let b = bundle(2, 2, 0);
    let alg = b.algebra(0, &Rationals).unwrap();
    assert_eq!(alg.dim(), 14);
    let j2: Vec<String> = alg.radical_power(2).iter().map(|&i| alg.render_basis(i)).collect();
    assert_eq!(j2, vec!["eps-1*alpha0_1", "eps-1*alpha0_2"]);
    assert!(alg.radical_power(3).is_empty());
    assert_eq!(alg.radical_power(0).len(), 14);
}

#[test]
fn simple_pdims_over_lambda0() {
    for r in 2..=4 {
        let b = bundle(2, r, 0);
        let alg = b.algebra(0, &Rationals).unwrap();
        let q = alg.quiver();
        let mut res = Resolver::new(&alg, ResolverOptions::default());
        let sa0 = Representation::simple(&alg, q.vertex("a0").unwrap());
        assert_eq!(res.pdim(&sa0), Pdim::Finite(r));
        let sb = Representation::simple(&alg, q.vertex("b-1").unwrap());
        assert!(res.pdim(&sb).is_infinite());
        let g1 = q.parse_path("gamma1").unwrap();
        let ideal = Representation::path_ideal(&alg, &g1).unwrap();
        assert_eq!(res.pdim(&ideal), Pdim::Finite(r - 2));
    }
}

#[test]
fn path_ideal_of_alpha_is_projective() {
    let b = bundle(2, 2, 0);
    let alg = b.algebra(0, &Rationals).unwrap();
    let q = alg.quiver();
    let p = q.parse_path("alpha0_1").unwrap();
    let ideal = Representation::path_ideal(&alg, &p).unwrap();
    let proj = Representation::projective(&alg, q.vertex("b-1").unwrap());
    assert!(is_isomorphic(&ideal, &proj, &SearchBudget::default()).is_yes());
    let sa = Representation::simple(&alg, q.vertex("a0").unwrap());
    let sc = Representation::simple(&alg, q.vertex("c1").unwrap());
    assert!(is_isomorphic(&sa, &sc, &SearchBudget::default()).is_no());
}

#[test]
fn socle_and_loewy_lengths() {
    let b = bundle(2, 2, 1);
    let alg0 = b.algebra(0, &Rationals).unwrap();
    let pb0 = Representation::projective(&alg0, alg0.quiver().vertex("b0").unwrap());
    let soc = pb0.socle();
    let dims: Vec<usize> = soc.iter().map(|s| s.dim()).collect();
    let q = alg0.quiver();
    assert_eq!(dims[q.vertex("b-1").unwrap()], 1);
    assert_eq!(dims[q.vertex("b0").unwrap()], 1);
    assert_eq!(dims.iter().sum::<usize>(), 2);

    let alg1 = b.algebra(1, &Rationals).unwrap();
    let pa1 = Representation::projective(&alg1, alg1.quiver().vertex("a1").unwrap());
    assert_eq!(pa1.loewy_length(), 3);
    let n1 = b.witness_module(1, &alg1).unwrap();
    assert_eq!(n1.loewy_length(), 2);
    assert!(b.witness_graph(1).unwrap().is_tree());
}

#[test]
fn witness_chain_part_one() {
    let b = bundle(2, 2, 2);
    let alg = b.algebra(2, &Gf2).unwrap();
    let budget = SearchBudget::default();
    for l in 1..=2 {
        let n = b.witness_module(l, &alg).unwrap();
        let prev = b.witness_module(l - 1, &alg).unwrap();
        assert!(is_isomorphic(&syzygy(&n, 1), &prev, &budget).is_yes(), "level {l}");
    }
    let mut res = Resolver::new(&alg, ResolverOptions::default());
    for l in 0..=2 {
        let n = b.witness_module(l, &alg).unwrap();
        assert_eq!(res.pdim(&n), Pdim::Finite(2 + l), "level {l}");
    }
}

#[test]
fn cover_of_n0() {
    let b = bundle(2, 2, 0);
    let alg = b.algebra(0, &Rationals).unwrap();
    let n0 = b.witness_module(0, &alg).unwrap();
    let (p, _) = projective_cover(&n0);
    assert_eq!(p.total_dim(), 6 + 2 * 3);
    let omega = syzygy(&n0, 1);
    let q = alg.quiver();
    let expected = Representation::direct_sum_all(
        &alg,
        &[
            Representation::simple(&alg, q.vertex("c1").unwrap()),
            Representation::projective(&alg, q.vertex("b-1").unwrap()),
            Representation::projective(&alg, q.vertex("b-1").unwrap()),
        ],
    );
    assert!(is_isomorphic(&omega, &expected, &SearchBudget::default()).is_yes());
}

#[test]
fn layered_single_node_is_simple() {
    let b = bundle(2, 2, 1);
    let alg = b.algebra(1, &Rationals).unwrap();
    let m = quiverstack::module::parse_layered_graph("top x: b1\n", &alg).unwrap();
    let s = Representation::simple(&alg, alg.quiver().vertex("b1").unwrap());
    assert!(is_isomorphic(&m, &s, &SearchBudget::default()).is_yes());
    let text = "top x: a1\nedge x --alpha1_0--> y\nedge x --alpha1_1--> u1\nedge x --alpha1_2--> u2\n\
                edge y --alpha0_1--> v1\nedge y --alpha0_2--> v2\nedge u1 --beta0--> w1\nedge u2 --beta0--> w2\n\
                identify v1 w1\nidentify v2 w2\n";
    let g = LayeredGraph::parse(text, alg.quiver()).unwrap();
    let pa1 = Representation::projective(&alg, alg.quiver().vertex("a1").unwrap());
    assert!(is_isomorphic(&g.build(&alg).unwrap(), &pa1, &SearchBudget::default()).is_yes());
    assert!(!g.is_tree());
}

#[test]
fn layered_parse_errors_carry_positions() {
    let b = bundle(2, 2, 1);
    let q = &b.levels[1].spec.quiver;
    let err = LayeredGraph::parse("top x: a1\nedge x --beta1--> y\n", q).unwrap_err();
    assert!(matches!(err, quiverstack::Error::Parse { line: 2, .. }), "{err}");
    let err = LayeredGraph::parse("top x: nowhere\n", q).unwrap_err();
    assert!(matches!(err, quiverstack::Error::Parse { line: 1, col: 8, .. }), "{err}");
}

#[test]
fn part_two_vertex_counts() {
    let f = StepFunction::double(2, 3, 2, 1, 1).unwrap();
    let b = generate_family(&f).unwrap();
    assert_eq!(b.levels[2].spec.quiver.vertex_count(), 12);
    let alg = b.algebra(2, &Gf2).unwrap();
    assert_eq!(alg.radical_power(3).len(), 0);
    let one = generate_family(&StepFunction::single(2, 2, 1).unwrap()).unwrap();
    assert_eq!(one.levels[1].spec.quiver.vertex_count(), 7);
    assert_eq!(one.levels[1].spec.quiver.arrow_count(), 12);
    assert_eq!(one.alternate_layers().len(), 2);
}
