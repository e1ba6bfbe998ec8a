use std::sync::OnceLock;

use proptest::prelude::*;

use silting::complex::ProjComplex;
use silting::decompose::{decompose, is_iso, iso_classes};
use silting::harness::fixture_modules;
use silting::homology::{ext, min_resolution};
use silting::io::fixture;
use silting::module::Module;

fn pool(pack: &str) -> Vec<Module> {
    let fx = fixture(pack, None).unwrap();
    let mods: Vec<Module> = fixture_modules(&fx).unwrap().into_iter().map(|(_, m)| m).collect();
    let mut parts = Vec::new();
    for m in &mods {
        parts.extend(decompose(m).unwrap());
    }
    iso_classes(&parts).unwrap().into_iter().map(|(m, _)| m).collect()
}

fn pools() -> &'static [Vec<Module>] {
    static POOLS: OnceLock<Vec<Vec<Module>>> = OnceLock::new();
    POOLS.get_or_init(|| ["eximp", "ejp1", "radsq3"].iter().map(|p| pool(p)).collect())
}

fn multiplicity(classes: &[(Module, usize)], m: &Module) -> usize {
    classes.iter().find(|(c, _)| is_iso(c, m).unwrap()).map_or(0, |(_, k)| *k)
}

fn pick(pack: usize, picks: &[usize]) -> (Vec<Module>, Module) {
    let p = &pools()[pack];
    let parts: Vec<Module> = picks.iter().map(|&i| p[i % p.len()].clone()).collect();
    let sum = Module::direct_sum(&parts).module;
    (parts, sum)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn decomposition_recovers_the_summands(pack in 0usize..3, picks in prop::collection::vec(0usize..64, 1..4)) {
        let (parts, sum) = pick(pack, &picks);
        let found = decompose(&sum).unwrap();
        prop_assert_eq!(found.len(), parts.len());
        let want = iso_classes(&parts).unwrap();
        let got = iso_classes(&found).unwrap();
        prop_assert_eq!(want.len(), got.len());
        for (m, k) in &want {
            prop_assert_eq!(multiplicity(&got, m), *k);
        }
    }

    #[test]
    fn resolutions_are_minimal_complexes(pack in 0usize..3, picks in prop::collection::vec(0usize..64, 1..3)) {
        let (_, sum) = pick(pack, &picks);
        let res = min_resolution(&sum, 4);
        prop_assert!(res.check().is_ok());
        prop_assert!(res.is_minimal());
        let c = ProjComplex::from_resolution(&res, 4);
        prop_assert!(c.check().is_ok());
        prop_assert!(c.is_minimal());
    }

    #[test]
    fn projectives_and_injectives_read_dimension_vectors(pack in 0usize..3, picks in prop::collection::vec(0usize..64, 1..3)) {
        let (_, sum) = pick(pack, &picks);
        let alg = sum.algebra().clone();
        for v in 0..alg.num_vertices() {
            let p = Module::projective(&alg, v);
            let i = Module::injective(&alg, v);
            prop_assert_eq!(p.hom_dim(&sum), sum.dims()[v]);
            prop_assert_eq!(sum.hom_dim(&i), sum.dims()[v]);
            prop_assert_eq!(ext(&p, &sum, 1), 0);
            prop_assert_eq!(ext(&sum, &i, 1), 0);
        }
    }
}
