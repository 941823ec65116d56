use std::sync::Arc;

use proptest::prelude::*;

use modelkit::catalog::{catalog, lookup};
use modelkit::localisation::{s_local_equivalences, s_local_objects};
use modelkit::{enumerate_model_structures, enumerate_ofs, mix, FiniteLattice, Keep, Limits, MapClass, ModelStructure};

fn lattices() -> Vec<Arc<FiniteLattice>> {
    catalog().into_iter().map(|e| e.lattice).collect()
}

fn small_lattices() -> Vec<Arc<FiniteLattice>> {
    catalog()
        .into_iter()
        .filter(|e| e.name != "b3")
        .map(|e| e.lattice)
        .collect()
}

fn any_lattice() -> impl Strategy<Value = Arc<FiniteLattice>> {
    proptest::sample::select(lattices())
}

fn class(l: &FiniteLattice, mask: u64) -> MapClass {
    let n = l.map_count();
    MapClass::from_mask(n, if n >= 64 { mask } else { mask & ((1u64 << n) - 1) })
}

/// A lattice with a random class of its maps.
fn lattice_and_class() -> impl Strategy<Value = (Arc<FiniteLattice>, MapClass)> {
    (any_lattice(), any::<u64>()).prop_map(|(l, m)| {
        let k = class(&l, m);
        (l, k)
    })
}

fn lattice_and_two_classes() -> impl Strategy<Value = (Arc<FiniteLattice>, MapClass, MapClass)> {
    (any_lattice(), any::<u64>(), any::<u64>()).prop_map(|(l, a, b)| {
        let (a, b) = (class(&l, a), class(&l, b));
        (l, a, b)
    })
}

fn composable(l: &FiniteLattice) -> impl Iterator<Item = (modelkit::LatticeMap, modelkit::LatticeMap)> + '_ {
    l.maps().iter().flat_map(move |&f| {
        l.maps()
            .iter()
            .filter(move |g| g.source == f.target)
            .map(move |&g| (f, g))
    })
}

proptest! {
    #[test]
    fn lifting_classes_form_a_galois_connection((l, k) in lattice_and_class()) {
        prop_assert_eq!(l.llp(&l.rlp(&l.llp(&k))), l.llp(&k));
        prop_assert_eq!(l.rlp(&l.llp(&l.rlp(&k))), l.rlp(&k));
        prop_assert!(k.is_subset(&l.rlp(&l.llp(&k))));
        prop_assert!(k.is_subset(&l.llp(&l.rlp(&k))));
    }

    #[test]
    fn lifting_classes_are_antitone((l, a, b) in lattice_and_two_classes()) {
        let big = a.union(&b);
        prop_assert!(l.llp(&big).is_subset(&l.llp(&a)));
        prop_assert!(l.rlp(&big).is_subset(&l.rlp(&a)));
    }

    #[test]
    fn lifting_classes_contain_identities_and_compose((l, k) in lattice_and_class()) {
        for c in [l.llp(&k), l.rlp(&k)] {
            prop_assert!(l.identities().is_subset(&c));
            for (f, g) in composable(&l) {
                if l.contains(&c, f) && l.contains(&c, g) {
                    prop_assert!(l.contains(&c, l.compose(f, g).unwrap()));
                }
            }
        }
    }

    #[test]
    fn lifting_classes_cancel((l, k) in lattice_and_class()) {
        let (left, right) = (l.llp(&k), l.rlp(&k));
        for (f, g) in composable(&l) {
            let gf = l.compose(f, g).unwrap();
            if l.contains(&left, f) {
                prop_assert_eq!(l.contains(&left, g), l.contains(&left, gf));
            }
            if l.contains(&right, g) {
                prop_assert_eq!(l.contains(&right, f), l.contains(&right, gf));
            }
        }
    }

    #[test]
    fn lifting_classes_are_stable_under_base_change((l, k) in lattice_and_class()) {
        let (left, right) = (l.llp(&k), l.rlp(&k));
        for &c in l.maps() {
            for &f in l.maps() {
                if f.source == c.source && l.contains(&left, f) {
                    prop_assert!(l.contains(&left, l.pushout(f, c).unwrap()));
                }
                if f.target == c.target && l.contains(&right, f) {
                    prop_assert!(l.contains(&right, l.pullback(f, c).unwrap()));
                }
            }
        }
    }

    #[test]
    fn s_locality_is_monotone((l, a, b) in lattice_and_two_classes(), pick in any::<prop::sample::Index>()) {
        prop_assume!(l.len() <= 5);
        let census = enumerate_model_structures(&l, Limits::default()).unwrap();
        let m = pick.get(&census);
        let (s1, s2) = (a.intersection(&b), a);
        prop_assert!(s_local_objects(m, &s2).is_subset(&s_local_objects(m, &s1)));
        prop_assert!(s_local_equivalences(m, &s1).is_subset(&s_local_equivalences(m, &s2)));
    }
}

#[test]
fn a_map_lifting_against_itself_is_an_identity() {
    for l in lattices() {
        for &f in l.maps() {
            assert_eq!(l.has_lift(f, f), f.is_identity(), "{} {}", l.name(), l.format_map(f));
        }
    }
}

#[test]
fn factorisation_systems_cancel_and_factor_idempotently() {
    for l in small_lattices() {
        for fs in enumerate_ofs(&l, Limits::default()).unwrap() {
            for (f, g) in composable(&l) {
                let gf = l.compose(f, g).unwrap();
                if fs.left().contains(l.map_index(f)) {
                    assert_eq!(fs.left().contains(l.map_index(g)), fs.left().contains(l.map_index(gf)));
                }
                if fs.right().contains(l.map_index(g)) {
                    assert_eq!(
                        fs.right().contains(l.map_index(f)),
                        fs.right().contains(l.map_index(gf))
                    );
                }
            }
            for &f in l.maps() {
                let fac = fs.factor(f).unwrap();
                assert_eq!(fs.factor(fac.left_part).unwrap().mid, fac.left_part.target);
                assert_eq!(fs.factor(fac.right_part).unwrap().mid, fac.right_part.source);
                for &r in &l.members(fs.right()) {
                    assert!(!fs.left().contains(l.map_index(f)) || l.has_lift(f, r));
                }
            }
        }
    }
}

#[test]
fn the_discrete_structure_is_left_and_right_proper() {
    for l in lattices() {
        let m = ModelStructure::discrete(l.clone());
        assert!(m.is_left_proper() && m.is_right_proper(), "{}", l.name());
    }
}

#[test]
fn properness_witnesses_are_genuine() {
    for l in small_lattices() {
        for m in enumerate_model_structures(&l, Limits::default()).unwrap() {
            if let Some(w) = m.left_properness_witness() {
                let (f, c) = (
                    l.parse_map(&w.weak_equivalence).unwrap(),
                    l.parse_map(&w.along).unwrap(),
                );
                assert!(m.is_weak_equivalence(f) && m.is_cofibration(c));
                let p = l.pushout(f, c).unwrap();
                assert_eq!(l.format_map(p), w.result);
                assert!(!m.is_weak_equivalence(p));
            }
            if let Some(w) = m.right_properness_witness() {
                let (f, c) = (
                    l.parse_map(&w.weak_equivalence).unwrap(),
                    l.parse_map(&w.along).unwrap(),
                );
                assert!(m.is_weak_equivalence(f) && m.is_fibration(c));
                let p = l.pullback(f, c).unwrap();
                assert_eq!(l.format_map(p), w.result);
                assert!(!m.is_weak_equivalence(p));
            }
        }
    }
}

#[test]
fn structures_are_closed_under_duality() {
    for l in small_lattices() {
        let dual = Arc::new(l.dual());
        let census = enumerate_model_structures(&l, Limits::default()).unwrap();
        let dual_census = enumerate_model_structures(&dual, Limits::default()).unwrap();
        assert_eq!(census.len(), dual_census.len());
        for m in &census {
            let d = m.dual_onto(&dual);
            assert!(dual_census.contains(&d));
            assert_eq!(d.dual_onto(&l), *m);
            assert_eq!(m.is_left_proper(), d.is_right_proper());
        }
    }
}

#[test]
fn weak_equivalences_are_detected_by_replacement() {
    for l in small_lattices() {
        for m in enumerate_model_structures(&l, Limits::default()).unwrap() {
            let reps = m.replacements();
            assert_eq!(reps.qr(), reps.rq(), "{}\n{}", l.name(), m.describe());
            for &f in l.maps() {
                assert_eq!(m.is_weq_via_qr(f), m.is_weak_equivalence(f));
            }
            let fibrant = m.fibrant_objects();
            for &f in l.maps() {
                if fibrant.contains(f.source) && fibrant.contains(f.target) {
                    assert!(m.is_fibration(f));
                }
            }
        }
    }
}

#[test]
fn mix_takes_the_second_weak_equivalences_monotonically() {
    let l = lookup("b2").unwrap().lattice;
    let census = enumerate_model_structures(&l, Limits::default()).unwrap();
    for m1 in &census {
        for m2 in &census {
            for m3 in &census {
                if m2.cofibrations() != m3.cofibrations()
                    || !m2.acyclic_cofibrations().is_subset(&m3.acyclic_cofibrations())
                {
                    continue;
                }
                for keep in [Keep::Fibrations, Keep::Cofibrations] {
                    if let (Ok(a), Ok(b)) = (mix(m1, m2, keep), mix(m1, m3, keep)) {
                        assert_eq!(a.weak_equivalences(), m2.weak_equivalences());
                        assert!(a.weak_equivalences().is_subset(b.weak_equivalences()));
                    }
                }
            }
        }
    }
}
