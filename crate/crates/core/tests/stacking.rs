use std::sync::Arc;

use quiverstack::algebra::{Algebra, AlgebraSpec};
use quiverstack::catalog;
use quiverstack::family::{generate_family, StepFunction};
use quiverstack::field::{Gf2, Rationals};
use quiverstack::module::{Pdim, Representation};
use quiverstack::quiver::Quiver;
use quiverstack::stacking::{
    build_2stack, check_partition, corner_algebra, global_dimension, stack_invariants, verify_splitting,
    ConnectingArrow, StackingPartition,
};

fn with_partition(spec: &AlgebraSpec) -> (Arc<Algebra<Rationals>>, StackingPartition) {
    let alg = spec.build(&Rationals).unwrap();
    let part = StackingPartition::from_names(alg.quiver(), spec.partition.as_ref().unwrap()).unwrap();
    (alg, part)
}

#[test]
fn looped_radical_square_zero_upper_corner_does_not_bound_below() {
    let (alg, part) = with_partition(&catalog::looped_radical_square_zero());
    assert!(check_partition(&alg, &part).valid);
    let upper = corner_algebra(&alg, &part.upper).unwrap();
    assert_eq!(global_dimension(&upper.algebra, 16), Pdim::Finite(3));
    assert!(global_dimension(&alg, 16).is_infinite());
    let inv = stack_invariants(&alg, &part, 16).unwrap();
    assert_eq!(inv.lower_findim.hi, Some(0));
}

#[test]
fn a5_radical_square_zero_upper_bound_attained() {
    let (alg, part) = with_partition(&catalog::a5_radical_square_zero());
    assert!(check_partition(&alg, &part).valid);
    let inv = stack_invariants(&alg, &part, 16).unwrap();
    assert_eq!(inv.lower_global_dimension, Pdim::Finite(1));
    assert_eq!(inv.upper_global_dimension, Pdim::Finite(2));
    assert_eq!(inv.t, 1);
    assert_eq!(global_dimension(&alg, 16), Pdim::Finite(4));
    assert_eq!(inv.findim_bound.lo, 1);
    assert_eq!(inv.findim_bound.hi, Some(4));

    let flipped = StackingPartition::new(alg.quiver(), &["1", "2", "3"], &["4", "5"], 1).unwrap();
    let report = check_partition(&alg, &flipped);
    assert!(!report.valid);
    assert_eq!(report.violations[0].condition, 'a');
    assert_eq!(report.violations[0].alpha, "a3");
}

#[test]
fn partition_errors() {
    let alg = catalog::a5_radical_square_zero().build(&Rationals).unwrap();
    let q = alg.quiver();
    assert!(StackingPartition::new(q, &["1", "2"], &["2", "3", "4", "5"], 1).is_err());
    assert!(StackingPartition::new(q, &["1"], &["2", "3"], 1).is_err());
    let p = StackingPartition::parse("E'=4,5;c=2", q).unwrap();
    assert_eq!(p.upper.len(), 3);
    assert_eq!(p.complexity, 2);
}

#[test]
fn complexity_relaxes_condition_b() {
    let alg = catalog::nakayama_linear(5, 3).build(&Rationals).unwrap();
    let part = StackingPartition::from_lower(alg.quiver(), &["4", "5"]).unwrap();
    let r1 = check_partition(&alg, &part);
    assert!(!r1.valid);
    assert_eq!(r1.violations[0].beta.as_deref(), Some("a2"));
    let mut relaxed = part.clone();
    relaxed.complexity = 2;
    assert!(check_partition(&alg, &relaxed).valid);
}

#[test]
fn family_corners_and_partitions() {
    let b = generate_family(&StepFunction::single(2, 3, 2).unwrap()).unwrap();
    for l in 1..=2 {
        let alg = b.algebra(l, &Rationals).unwrap();
        let (lower, upper) = b.standard_partition(l);
        let l_names: Vec<&str> = lower.iter().map(String::as_str).collect();
        let u_names: Vec<&str> = upper.iter().map(String::as_str).collect();
        let part = StackingPartition::new(alg.quiver(), &l_names, &u_names, 1).unwrap();
        assert!(check_partition(&alg, &part).valid, "level {l}");
        let corner = corner_algebra(&alg, &part.lower).unwrap();
        let prev = b.algebra(l - 1, &Rationals).unwrap();
        assert_eq!(corner.algebra.dim(), prev.dim());
        assert_eq!(corner.algebra.quiver(), prev.quiver());
        assert_eq!(corner.algebra.basis(), prev.basis());
    }
    let alg = b.algebra(2, &Rationals).unwrap();
    let all: Vec<usize> = (0..alg.quiver().vertex_count()).collect();
    assert_eq!(corner_algebra(&alg, &all).unwrap().algebra.basis(), alg.basis());
}

#[test]
fn delta_partition_invariants() {
    for r in 2..=4 {
        let b = generate_family(&StepFunction::single(2, r, 1).unwrap()).unwrap();
        let alg = b.algebra(1, &Rationals).unwrap();
        assert!(!alg.is_monomial());
        let part = StackingPartition::from_lower(alg.quiver(), &["b-1"]).unwrap();
        assert!(check_partition(&alg, &part).valid);
        let inv = stack_invariants(&alg, &part, 16).unwrap();
        assert!(inv.lower_monomial && inv.upper_monomial);
        assert_eq!(inv.lower_findim.hi, Some(0));
        let crit = inv.upper_critical.as_ref().unwrap();
        assert_eq!(crit.s, r as i64 - 1);
        let attaining: Vec<&str> = crit
            .critical
            .iter()
            .filter(|c| c.pdim as i64 == crit.s)
            .map(|c| c.path.as_str())
            .collect();
        assert_eq!(attaining, vec!["gamma0"]);
        assert!(!inv.corollary9_applicable);
        assert_eq!(inv.corollary9_offending, vec!["beta1"]);
        assert_eq!(inv.corollary9_conclusion_holds, Some(true));
    }
}

#[test]
fn t_is_minus_one_when_upper_is_all_sources() {
    let alg = catalog::kronecker_tail(2, 0).build(&Rationals).unwrap();
    let part = StackingPartition::from_lower(alg.quiver(), &["2", "3"]).unwrap();
    assert!(check_partition(&alg, &part).valid);
    assert_eq!(stack_invariants(&alg, &part, 8).unwrap().t, -1);
}

fn single_vertex(name: &str) -> AlgebraSpec {
    let mut q = Quiver::new();
    q.add_vertex(name).unwrap();
    AlgebraSpec::new(q, vec![])
}

#[test]
fn two_stacks() {
    let lower = catalog::lambda0(2, 2).unwrap();
    let conn = [ConnectingArrow {
        name: "new".into(),
        source: "top".into(),
        target: "a0".into(),
    }];
    let spec = build_2stack(&Rationals, &lower, &single_vertex("top"), &conn, &[]).unwrap();
    let alg = spec.build(&Rationals).unwrap();
    let lam0 = lower.build(&Rationals).unwrap();
    let top = alg.quiver().vertex("top").unwrap();
    assert_eq!(alg.dim(), lam0.dim() + alg.paths_from(top).len());
    let part = StackingPartition::from_names(alg.quiver(), spec.partition.as_ref().unwrap()).unwrap();
    assert!(check_partition(&alg, &part).valid);

    let empty = AlgebraSpec::new(Quiver::new(), vec![]);
    assert!(build_2stack(&Rationals, &lower, &empty, &[], &[]).is_err());

    let b = generate_family(&StepFunction::single(2, 2, 1).unwrap()).unwrap();
    let lam1 = b.levels[1].spec.clone();
    let mut upper_q = Quiver::new();
    for v in ["a1", "b1"] {
        upper_q.add_vertex(v).unwrap();
    }
    upper_q.add_arrow("eps1", "b1", "b1").unwrap();
    let upper = AlgebraSpec::new(upper_q.clone(), vec![quiverstack::algebra::Relation::Monomial(
        upper_q.parse_path("eps1*eps1").unwrap(),
    )]);
    let mut conn = vec![ConnectingArrow {
        name: "alpha1_0".into(),
        source: "a1".into(),
        target: "a0".into(),
    }];
    for i in 1..=2 {
        conn.push(ConnectingArrow {
            name: format!("alpha1_{i}"),
            source: "a1".into(),
            target: "b0".into(),
        });
    }
    conn.push(ConnectingArrow {
        name: "beta1".into(),
        source: "b1".into(),
        target: "b0".into(),
    });
    let extra: Vec<String> = vec![
        "gamma0*alpha1_0".into(),
        "eps0*alpha1_1".into(),
        "eps0*alpha1_2".into(),
        "beta0*beta1".into(),
        "alpha0_1*alpha1_0 - beta0*alpha1_1".into(),
        "alpha0_2*alpha1_0 - beta0*alpha1_2".into(),
    ];
    let stacked = build_2stack(&Rationals, &lower, &upper, &conn, &extra).unwrap();
    let a = stacked.build(&Rationals).unwrap();
    let expected = lam1.build(&Rationals).unwrap();
    assert_eq!(a.dim(), expected.dim());
    assert_eq!(a.radical_power(1).len(), expected.radical_power(1).len());
    assert_eq!(a.radical_power(2).len(), expected.radical_power(2).len());

    let bad = vec!["gamma1*gamma0".to_string(), "eps-1*alpha0_1".to_string()];
    assert!(build_2stack(&Rationals, &lower, &upper, &conn, &bad).is_err());
}

#[test]
fn splitting_of_second_syzygies() {
    let b = generate_family(&StepFunction::single(2, 2, 1).unwrap()).unwrap();
    let alg = b.algebra(1, &Gf2).unwrap();
    let (lower, upper) = b.standard_partition(1);
    let l: Vec<&str> = lower.iter().map(String::as_str).collect();
    let u: Vec<&str> = upper.iter().map(String::as_str).collect();
    let part = StackingPartition::new(alg.quiver(), &l, &u, 1).unwrap();
    let t = stack_invariants(&alg, &part, 16).unwrap().t;

    let n1 = b.witness_module(1, &alg).unwrap();
    let rep = verify_splitting(&alg, &part, &n1, 3, Some(t), 16).unwrap();
    assert!(rep.passed, "{rep:?}");

    let sa1 = Representation::simple(&alg, alg.quiver().vertex("a1").unwrap());
    let rep = verify_splitting(&alg, &part, &sa1, 3, Some(t), 16).unwrap();
    assert!(rep.passed, "{rep:?}");
    assert!(rep.upper_comparisons.iter().all(|c| c.isomorphic));

    let n0 = b.witness_module(0, &alg).unwrap();
    let rep = verify_splitting(&alg, &part, &n0, 2, Some(t), 16).unwrap();
    assert!(rep.passed);
    assert!(rep.upper_comparisons.iter().all(|c| c.dims_match));
}
