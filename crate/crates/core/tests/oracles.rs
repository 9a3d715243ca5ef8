//! The library against brute-force oracles on exhaustive small inputs.

mod common;

use std::sync::Arc;

use invrel_core::catalog;
use invrel_core::group::{enumerate_subgroups, library};
use invrel_core::lattice::search::{sample_seed, sample_structure};
use invrel_core::lattice::{
    quotient_separated, stabilizer_pseudo_closed_check, LatticeError, SetLattice, Slot,
};
use invrel_core::relations::{
    is_invariant, is_orbital, is_weakly_orbital, kernel_group, orbit_relation, point_mask, r_relation,
    transversal_witness_search, witnesses, DeciderConfig,
};
use invrel_core::{GAction, Partition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

#[test]
fn subgroup_enumeration_matches_subset_search() {
    for (name, g) in library::small_groups(8) {
        let mut fast: Vec<Vec<usize>> =
            enumerate_subgroups(&g, false).unwrap().iter().map(|h| h.elements().to_vec()).collect();
        fast.sort();
        let mut slow = oracle_subgroups(&g);
        slow.sort();
        assert_eq!(fast, slow, "{name}");
        for h in enumerate_subgroups(&g, false).unwrap() {
            assert_eq!(g.index(&h) * h.order(), g.order(), "{name}: Lagrange");
            assert_eq!(g.is_normal(&h), oracle_is_normal(&g, h.elements()), "{name}: normality");
            for x in g.elements() {
                let c = g.conjugate_subgroup(x, &h);
                assert_eq!(c.order(), h.order());
                assert!(fast.contains(&c.elements().to_vec()), "{name}: not closed under conjugation");
            }
        }
    }
}

#[test]
fn subgroups_up_to_conjugacy_cover_every_class_once() {
    for (name, g) in library::small_groups(8) {
        let all = enumerate_subgroups(&g, false).unwrap();
        let reps = enumerate_subgroups(&g, true).unwrap();
        for h in &all {
            let hits = reps
                .iter()
                .filter(|r| g.elements().any(|x| g.conjugate_subgroup(x, r) == *h))
                .count();
            assert_eq!(hits, 1, "{name}: {:?}", h.elements());
        }
    }
}

#[test]
fn orbits_are_reachability_classes() {
    let mut actions = all_small_actions(8, 6);
    let ico = catalog::icosahedron_antipodism().unwrap().action;
    actions.push(("icosahedron".into(), ico));
    for (name, a) in &actions {
        let all: Vec<usize> = a.group().elements().collect();
        assert_eq!(a.orbits(), oracle_orbit_relation(a, &all), "{name}");
        if a.is_transitive() {
            let stab = a.class_stabilizer(&a.orbits(), 0).unwrap();
            assert_eq!(stab.order(), a.group().order(), "{name}");
        }
        let eq = Partition::discrete(a.domain());
        let free = (0..a.domain()).all(|x| a.class_stabilizer(&eq, x).unwrap().is_trivial());
        assert_eq!(a.is_free(), free, "{name}");
    }
}

#[test]
fn invariance_kernel_and_orbitality_match_oracles() {
    for (name, a) in all_small_actions(6, 5) {
        for e in Partition::all(a.domain()) {
            let inv = oracle_invariant(&a, &e);
            assert_eq!(is_invariant(&a, &e).unwrap(), inv, "{name}: {:?}", e.blocks());
            if inv {
                let kernel = kernel_group(&a, &e).unwrap();
                assert_eq!(kernel.elements(), oracle_kernel(&a, &e).as_slice(), "{name}");
                assert!(a.group().is_normal(&kernel), "{name}: kernel of an invariant relation is normal");
                let orbital = oracle_orbit_relation(&a, kernel.elements()) == e;
                assert_eq!(is_orbital(&a, &e).unwrap().is_some(), orbital, "{name}: {:?}", e.blocks());
            }
        }
        for h in enumerate_subgroups(a.group(), false).unwrap() {
            assert_eq!(orbit_relation(&a, &h), oracle_orbit_relation(&a, h.elements()), "{name}");
        }
    }
}

/// Weak orbitality by trying every subgroup and every witness set.
fn oracle_weakly_orbital(a: &GAction, e: &Partition) -> bool {
    let target = partition_pairs(e);
    let subgroups = enumerate_subgroups(a.group(), false).unwrap();
    (1u32..(1 << a.domain())).any(|bits| {
        let xt: Vec<usize> = (0..a.domain()).filter(|&i| bits >> i & 1 == 1).collect();
        subgroups.iter().any(|h| oracle_r(a, h.elements(), &xt) == target)
    })
}

#[test]
fn weak_orbitality_decider_matches_exhaustive_search() {
    let cfg = DeciderConfig { parallel: false, ..DeciderConfig::default() };
    let mut weak_not_orbital = 0;
    for (name, a) in all_small_actions(6, 5) {
        for e in Partition::all(a.domain()).filter(|e| oracle_invariant(&a, e)) {
            let expected = oracle_weakly_orbital(&a, &e);
            let found = is_weakly_orbital(&a, &e, &cfg);
            match found {
                Ok(Some(w)) => {
                    assert!(expected, "{name}: spurious witness for {:?}", e.blocks());
                    let r = oracle_r(&a, w.subgroup.elements(), &w.witness_set);
                    assert_eq!(r, partition_pairs(&e), "{name}: witness does not generate E");
                    if is_orbital(&a, &e).unwrap().is_none() {
                        weak_not_orbital += 1;
                    }
                }
                Ok(None) => assert!(!expected, "{name}: missed witness for {:?}", e.blocks()),
                Err(err) => {
                    // Relations whose classes cross orbits are never weakly orbital.
                    assert!(!expected, "{name}: {err} on a weakly orbital relation");
                }
            }
        }
    }
    assert!(weak_not_orbital > 0);
}

#[test]
fn commutative_groups_have_no_gap_between_the_notions() {
    let cfg = DeciderConfig::default();
    let a = GAction::regular(Arc::new(library::cyclic(6)));
    for e in Partition::all(6).filter(|e| oracle_invariant(&a, e)) {
        let orbital = is_orbital(&a, &e).unwrap().is_some();
        let weak = is_weakly_orbital(&a, &e, &cfg).unwrap().is_some();
        assert_eq!(orbital, weak);
    }
}

#[test]
fn free_actions_recover_the_subgroup() {
    for (name, a) in all_small_actions(8, 8).into_iter().filter(|(_, a)| a.is_free()) {
        for h in enumerate_subgroups(a.group(), false).unwrap() {
            let e = orbit_relation(&a, &h);
            if is_invariant(&a, &e).unwrap() {
                assert_eq!(kernel_group(&a, &e).unwrap(), h, "{name}");
            }
        }
    }
}

#[test]
fn r_relation_on_larger_domains() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let pool = all_small_actions(8, 12);
    for _ in 0..300 {
        let a = random_action(&mut rng, &pool);
        let h = random_subgroup(&mut rng, a.group());
        let xt = random_nonempty_subset(&mut rng, a.domain());
        let fast: Pairs = r_relation(&a, &h, &xt).unwrap().pairs().into_iter().collect();
        assert_eq!(fast, oracle_r(&a, h.elements(), &xt));
    }
}

#[test]
fn non_transitive_r_fixture() {
    // S3 acting on itself, H = {e, (01)}, X~ = {e, (02)}: the generated
    // relation is reflexive and symmetric but not transitive.
    let a = GAction::regular(Arc::new(library::s3().into_group()));
    let h = a.group().subgroup_closure(&[1]).unwrap();
    let r = r_relation(&a, &h, &[0, 2]).unwrap();
    assert_eq!(r.pairs().into_iter().collect::<Pairs>(), oracle_r(&a, h.elements(), &[0, 2]));
    assert!(r.is_reflexive() && r.is_symmetric());
    assert!(!r.is_transitive());
    assert!(r.to_partition().is_none());
    assert_eq!(r.pair_count(), 18);
}

#[test]
fn transversal_search_matches_brute_force() {
    for (name, a) in all_small_actions(6, 5) {
        let orbits = a.orbit_data();
        for e in Partition::all(a.domain()).filter(|e| oracle_invariant(&a, e)) {
            let found = transversal_witness_search(&a, &e, None, 1 << 20).unwrap();
            let transversals: Vec<Vec<usize>> = (0u32..(1 << a.domain()))
                .map(|bits| (0..a.domain()).filter(|&i| bits >> i & 1 == 1).collect::<Vec<_>>())
                .filter(|s| (0..orbits.count()).all(|o| s.iter().filter(|&&x| orbits.orbit_of[x] == o).count() == 1))
                .collect();
            let subgroups = enumerate_subgroups(a.group(), false).unwrap();
            let exists = transversals
                .iter()
                .any(|s| subgroups.iter().any(|h| oracle_r(&a, h.elements(), s) == partition_pairs(&e)));
            assert_eq!(found.is_some(), exists, "{name}: {:?}", e.blocks());
            if let Some(w) = found {
                let mask = point_mask(&a, &w.witness_set).unwrap();
                assert!(witnesses(&a, &e, &w.subgroup, &mask));
            }
        }
    }
}

#[test]
fn class_stabilizer_of_pseudo_closed_class_is_pseudo_closed() {
    let mut checked = 0;
    for i in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(41, i));
        let s = sample_structure(&mut rng, 6, 5);
        let a = s.action();
        for e in Partition::all(a.domain()).filter(|e| oracle_invariant(a, e)) {
            for x in 0..a.domain() {
                match stabilizer_pseudo_closed_check(&s, &e, x) {
                    Ok(conclusion) => {
                        assert!(conclusion, "sample {i}: {:?} at {x}", e.blocks());
                        checked += 1;
                    }
                    Err(LatticeError::HypothesisNotMet(_)) => {}
                    Err(other) => panic!("{other}"),
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn separation_makes_the_relation_pseudo_closed() {
    let mut separated = 0;
    for i in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(43, i));
        let s = sample_structure(&mut rng, 6, 5);
        let a = s.action();
        let lx = s.lattice(Slot::X);
        assert_eq!(*s.lattice(Slot::XxX), SetLattice::product(lx.clone(), lx.clone()));
        for e in Partition::all(a.domain()).filter(|e| oracle_invariant(a, e)) {
            if quotient_separated(&s, &e).unwrap() {
                separated += 1;
                assert!(s.lattice(Slot::XxX).contains(&e.pair_set()), "sample {i}: {:?}", e.blocks());
            }
        }
    }
    assert!(separated > 0);
}
