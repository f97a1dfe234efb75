use homodec::algorithms::{is_trivial, mhs, shs};
use homodec::generate::{digraph, gnp, random_relation, two_structure};
use homodec::instances::{from_directed, from_two_structure, from_undirected, ColorMode};
use homodec::oracle::{brute_is_trivial, brute_mhs, brute_shs, brute_strong_sets, homogeneous_masks, mask_to_set};
use homodec::strong::strong_sets;
use homodec::{ElementSet, Relation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn agree(r: &Relation) {
    let n = r.len();
    for x in 0..n {
        for y in x..n {
            let seeds = ElementSet::new(n, [x, y]);
            assert_eq!(shs(r, &seeds).unwrap(), brute_shs(r, &seeds).unwrap(), "shs {x} {y}");
        }
        assert_eq!(mhs(r, x), brute_mhs(r, x).unwrap(), "mhs {x}");
    }
    assert_eq!(is_trivial(r), brute_is_trivial(r).unwrap());
    assert_eq!(strong_sets(r), brute_strong_sets(r).unwrap());
}

fn arbitrary_relation() -> impl Strategy<Value = Relation> {
    (1usize..=7, 1usize..=4, any::<u64>()).prop_map(|(n, k, seed)| {
        random_relation(n, k, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

/// Random relation where each `H_s` has few classes, so homogeneous sets are common.
fn coarse_relation() -> impl Strategy<Value = Relation> {
    (2usize..=7, any::<u64>()).prop_map(|(n, seed)| random_relation(n, 2, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graphs_agree(n in 1usize..=7, p in 0.0f64..=1.0, seed: u64) {
        agree(&from_undirected(&gnp(n, p, seed)).unwrap());
    }

    #[test]
    fn digraphs_agree(n in 1usize..=7, p in 0.0f64..=1.0, seed: u64) {
        agree(&from_directed(&digraph(n, p, seed)).unwrap());
    }

    #[test]
    fn two_structures_agree(n in 2usize..=7, k in 1usize..=3, seed: u64) {
        agree(&from_two_structure(&two_structure(n, k, seed), ColorMode::Symmetric).unwrap());
    }

    #[test]
    fn arbitrary_relations_agree(r in arbitrary_relation()) {
        agree(&r);
    }

    #[test]
    fn coarse_relations_agree(r in coarse_relation()) {
        agree(&r);
    }

    #[test]
    fn shs_is_minimal_homogeneous(r in coarse_relation(), a: usize, b: usize) {
        let n = r.len();
        let seeds = ElementSet::new(n, [a % n, b % n]);
        let m = shs(&r, &seeds).unwrap();
        prop_assert!(r.is_homogeneous_set(&m).unwrap());
        prop_assert!(seeds.is_subset(&m));
        for mask in homogeneous_masks(&r).unwrap() {
            let other = mask_to_set(n, mask);
            if seeds.is_subset(&other) {
                prop_assert!(m.is_subset(&other));
            }
        }
    }

    #[test]
    fn mhs_is_maximal_partition(r in coarse_relation(), x: usize) {
        let n = r.len();
        let x = x % n;
        let parts = mhs(&r, x);
        let mut covered = vec![false; n];
        for part in &parts {
            prop_assert!(r.is_homogeneous_set(part).unwrap());
            prop_assert!(!part.contains(x));
            for v in part.iter() {
                prop_assert!(!covered[v]);
                covered[v] = true;
            }
            for other in (0..n).filter(|&v| v != x && !part.contains(v)) {
                let grown = part.union(&ElementSet::singleton(n, other));
                prop_assert!(!r.is_homogeneous_set(&shs(&r, &grown).unwrap()).unwrap()
                    || shs(&r, &grown).unwrap().contains(x));
            }
        }
        prop_assert_eq!(covered.iter().filter(|&&c| c).count(), n - 1);
    }

    #[test]
    fn mhs_ignores_element_order(r in coarse_relation(), x: usize) {
        let n = r.len();
        let x = x % n;
        // the same relation with ids reversed, mapped back
        let rev = Relation::from_class_ids(n, |s, y| r.class_of(n - 1 - s, n - 1 - y) as usize);
        let back: homodec::SetFamily = mhs(&rev, n - 1 - x)
            .iter()
            .map(|p| ElementSet::new(n, p.iter().map(|v| n - 1 - v)))
            .collect();
        prop_assert_eq!(mhs(&r, x), back);
    }
}
