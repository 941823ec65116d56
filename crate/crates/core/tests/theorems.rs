use std::sync::Arc;

use modelkit::catalog::{catalog, lookup};
use modelkit::colocalisation::{enumerate_colocalities, k_colocal_objects};
use modelkit::constructions::{prop15_pairs, verify_lemma_1, verify_prop15};
use modelkit::localisation::{enumerate_localisations, enumerate_localities, reflective_subsets};
use modelkit::{
    enumerate_model_structures, is_semi_left_exact, prop15_build, run_verification, s_localise, FiniteLattice, Limits,
    ModelStructure, Reflection, Theorem,
};

fn lattice(name: &str) -> Arc<FiniteLattice> {
    lookup(name).unwrap().lattice
}

#[test]
fn every_statement_holds_on_the_catalog() {
    for e in catalog() {
        for theorem in Theorem::ALL {
            // Mixing every pair of the b3 census is a minute of work; c2 and
            // b2 cover it in the acceptance suite.
            if e.name == "b3" && theorem == Theorem::Prop11 {
                continue;
            }
            let r = run_verification(theorem, &e.lattice, None, Limits::default())
                .unwrap_or_else(|err| panic!("{theorem} on {}: {err}", e.name));
            assert!(r.bijection_ok, "{theorem} on {}: {:?}", e.name, r.witnesses);
            assert_eq!(r.theorem, theorem.name());
            assert_eq!(r.lattice, e.name);
        }
    }
}

#[test]
fn discrete_counts() {
    for (name, n) in [("c1", 1), ("c2", 2), ("c3", 4), ("b2", 7)] {
        let l = lattice(name);
        let base = ModelStructure::discrete(l.clone());
        let r = run_verification(Theorem::Thm3, &l, Some(&base), Limits::default()).unwrap();
        assert_eq!(r.counts["localisations"], n, "{name}");
        assert_eq!(r.counts["reflective_subcats"], n, "{name}");
        let r = run_verification(Theorem::Thm4, &l, Some(&base), Limits::default()).unwrap();
        assert_eq!(r.counts["colocalisations"], n, "{name}");
    }
}

#[test]
fn localities_over_left_proper_bases_are_homotopical() {
    for e in catalog().iter().filter(|e| e.name != "b3") {
        for m in enumerate_model_structures(&e.lattice, Limits::default()).unwrap() {
            if m.is_left_proper() {
                for loc in enumerate_localities(&m, Limits::default()).unwrap() {
                    assert!(loc.is_homotopical(), "{}", e.name);
                }
            }
            if m.is_right_proper() {
                for coloc in enumerate_colocalities(&m, Limits::default()).unwrap() {
                    assert!(coloc.is_homotopical(), "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn colocal_objects_contain_the_normalised_generators() {
    for e in catalog().iter().filter(|e| e.name != "b3") {
        let l = &e.lattice;
        for m in enumerate_model_structures(l, Limits::default()).unwrap() {
            let reps = m.replacements();
            for mask in 0u64..1 << l.len() {
                let k = l.objects_where(|x| mask >> x & 1 == 1);
                let colocal = k_colocal_objects(&m, &k);
                for x in k.iter() {
                    assert!(colocal.contains(reps.cofibrant[reps.fibrant[x]]), "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn extreme_reflections_are_semi_left_exact() {
    for e in catalog() {
        let l = &e.lattice;
        let top = l.objects_where(|x| x == l.top());
        for set in [l.all_objects(), top] {
            assert!(
                is_semi_left_exact(&Reflection::new(l.clone(), set).unwrap()),
                "{}",
                e.name
            );
        }
    }
}

#[test]
fn chain_reflections_are_semi_left_exact() {
    let l = lattice("c4");
    for b in reflective_subsets(&l, &l.all_objects(), Limits::default()).unwrap() {
        assert!(is_semi_left_exact(&Reflection::new(l.clone(), b).unwrap()));
    }
}

#[test]
fn properness_criterion_and_prescribed_objects_on_every_lattice() {
    for e in catalog() {
        let r = verify_lemma_1(&e.lattice, Limits::default()).unwrap();
        assert!(r.bijection_ok);
        let r = verify_prop15(&e.lattice, Limits::default()).unwrap();
        assert!(r.bijection_ok);
    }
}

#[test]
fn nested_pairs_build_the_prescribed_objects() {
    for name in ["c4", "b2", "n5", "m3"] {
        let l = lattice(name);
        let pairs = prop15_pairs(&l, Limits::default()).unwrap();
        assert!(!pairs.is_empty());
        for (r, a) in pairs {
            let m = prop15_build(&r, &a).unwrap();
            assert_eq!(&m.fibrant_objects(), r.subobjects());
            assert_eq!(m.bifibrant_objects(), a);
            assert_eq!(m.cofibrant_objects(), l.objects_where(|x| a.contains(r.apply(x))));
        }
    }
}

#[test]
fn localising_at_its_own_weak_equivalences_recovers_each_localisation() {
    for name in ["c3", "b2", "n5"] {
        let l = lattice(name);
        for base in enumerate_model_structures(&l, Limits::default()).unwrap() {
            if !base.is_left_proper() {
                continue;
            }
            for m in enumerate_localisations(&base, Limits::default()).unwrap() {
                assert_eq!(s_localise(&base, m.weak_equivalences()).unwrap(), m);
            }
        }
    }
}
