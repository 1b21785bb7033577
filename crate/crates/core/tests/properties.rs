use proptest::prelude::*;

use quiverstack::catalog;
use quiverstack::field::Gf2;
use quiverstack::module::{projective_cover, syzygy, Pdim, Resolver, ResolverOptions};
use quiverstack::monomial::pdim_path_module;
use quiverstack::verify::random_submodules_of_projectives;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cover_dimension_splits(seed in any::<u64>(), r in 2usize..=4) {
        let alg = catalog::lambda0(2, r).unwrap().build(&Gf2).unwrap();
        for m in random_submodules_of_projectives(&alg, 3, seed) {
            let (p, _) = projective_cover(&m);
            prop_assert_eq!(p.total_dim(), m.total_dim() + syzygy(&m, 1).total_dim());
        }
    }

    #[test]
    fn syzygy_lowers_pdim(seed in any::<u64>()) {
        let alg = catalog::nakayama_linear(5, 3).build(&Gf2).unwrap();
        let mut res = Resolver::new(&alg, ResolverOptions::default());
        for m in random_submodules_of_projectives(&alg, 3, seed) {
            if let Pdim::Finite(d) = res.pdim(&m) {
                if d > 0 {
                    prop_assert_eq!(res.pdim(&syzygy(&m, 1)), Pdim::Finite(d - 1));
                }
            }
        }
    }

    #[test]
    fn path_calculus_matches_resolution_on_cyclic_nakayama(n in 1usize..=5, k in 2usize..=5, pick in any::<prop::sample::Index>()) {
        let alg = catalog::nakayama_cyclic(n, k).build(&Gf2).unwrap();
        let paths: Vec<usize> = (0..alg.dim()).filter(|&i| !alg.basis_path(i).is_trivial()).collect();
        let i = paths[pick.index(paths.len())];
        let p = alg.basis_path(i).clone();
        let direct = Resolver::new(&alg, ResolverOptions::default())
            .pdim(&quiverstack::module::Representation::path_ideal(&alg, &p).unwrap());
        let calc = pdim_path_module(&alg, &p).unwrap();
        prop_assert_eq!(calc.is_infinite(), direct.is_infinite());
        prop_assert_eq!(calc.finite(), direct.finite());
    }
}
