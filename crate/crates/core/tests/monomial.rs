use quiverstack::family::{generate_family, StepFunction};
use quiverstack::field::{Gf2, Rationals};
use quiverstack::module::{Pdim, Representation, Resolver, ResolverOptions, SearchBudget};
use quiverstack::monomial::{
    critical_report, embeds_in_projective, minimal_annihilators, path_ideal_hook, pdim_path_module,
    theorem1_check,
};

#[test]
fn annihilators_in_lambda0() {
    let b = generate_family(&StepFunction::single(2, 3, 0).unwrap()).unwrap();
    let alg = b.algebra(0, &Rationals).unwrap();
    let q = alg.quiver();
    let names = |p: &str| -> Vec<String> {
        minimal_annihilators(&alg, &q.parse_path(p).unwrap())
            .unwrap()
            .iter()
            .map(|x| q.render(x))
            .collect()
    };
    assert_eq!(names("gamma0"), vec!["gamma1"]);
    assert_eq!(names("eps-1"), vec!["eps-1"]);
    assert!(names("alpha0_1").is_empty());
    assert_eq!(names("beta0"), vec!["eps-1"]);
}

#[test]
fn path_module_pdims() {
    for r in 2..=5 {
        let b = generate_family(&StepFunction::single(2, r, 0).unwrap()).unwrap();
        let alg = b.algebra(0, &Rationals).unwrap();
        let q = alg.quiver();
        assert_eq!(pdim_path_module(&alg, &q.parse_path("gamma1").unwrap()).unwrap(), Pdim::Finite(r - 2));
        assert!(pdim_path_module(&alg, &q.parse_path("eps0").unwrap()).unwrap().is_infinite());
        let rep = critical_report(&alg).unwrap();
        assert_eq!(rep.s, r as i64 - 2, "r = {r}");
        assert_eq!(rep.witness.as_deref(), Some("gamma1"));
        assert_eq!(rep.interval, (r as i64 - 1, r as i64));
    }
}

#[test]
fn hook_agrees_with_resolution() {
    let b = generate_family(&StepFunction::single(2, 4, 0).unwrap()).unwrap();
    let alg = b.algebra(0, &Gf2).unwrap();
    let q = alg.quiver();
    let hook = path_ideal_hook(&alg).unwrap();
    let mut plain = Resolver::new(&alg, ResolverOptions::default());
    let mut hooked = Resolver::new(&alg, ResolverOptions::default()).with_hook(hook);
    for i in 0..alg.dim() {
        let p = alg.basis_path(i).clone();
        let m = Representation::path_ideal(&alg, &p).unwrap();
        assert_eq!(plain.pdim(&m).finite(), hooked.pdim(&m).finite(), "{}", q.render(&p));
    }
}

fn radical_of_projective(alg: &std::sync::Arc<quiverstack::algebra::Algebra<Gf2>>, v: &str) -> Representation<Gf2> {
    let p = Representation::projective(alg, alg.quiver().vertex(v).unwrap());
    p.subrep(&p.radical())
}

#[test]
fn syzygy_structure_of_radicals() {
    let b = generate_family(&StepFunction::single(2, 3, 0).unwrap()).unwrap();
    let alg = b.algebra(0, &Gf2).unwrap();
    let budget = SearchBudget::default();
    for v in ["a0", "b0", "c1"] {
        let m = radical_of_projective(&alg, v);
        assert!(embeds_in_projective(&m));
        let rep = theorem1_check(&alg, &m, &budget).unwrap();
        assert!(rep.passed(), "{v}: {rep:?}");
        assert!(rep.decomposition_certified);
    }
    let m = radical_of_projective(&alg, "a0");
    let rep = theorem1_check(&alg, &m, &budget).unwrap();
    let paths: Vec<&str> = rep.summands.iter().map(|s| s.path.as_str()).collect();
    assert!(paths == ["gamma1"], "{paths:?}");

    let p = Representation::projective(&alg, alg.quiver().vertex("a0").unwrap());
    let rep = theorem1_check(&alg, &p, &budget).unwrap();
    assert!(rep.summands.is_empty() && rep.passed());

    let s = Representation::simple(&alg, alg.quiver().vertex("a0").unwrap());
    assert!(!embeds_in_projective(&s));
}
