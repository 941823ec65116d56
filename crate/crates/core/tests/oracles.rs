//! Independent brute-force oracles checked against the library.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use modelkit::catalog::{catalog, lookup};
use modelkit::transfer::LiftFailure;
use modelkit::{
    enumerate_model_structures, enumerate_ofs, injective_lift, projective_lift, FiniteLattice, GaloisConnection,
    Limits, MapClass, ModelStructure, Side,
};

fn lattice(name: &str) -> Arc<FiniteLattice> {
    lookup(name).unwrap().lattice
}

/// Maps as `(source, target)` pairs in a fixed order, with the lifting
/// relation computed from the order alone.
struct Poset {
    le: Vec<Vec<bool>>,
    maps: Vec<(usize, usize)>,
}

impl Poset {
    fn new(l: &FiniteLattice) -> Self {
        let n = l.len();
        let le: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| l.leq(a, b)).collect()).collect();
        let maps = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| le[a][b])
            .collect();
        Poset { le, maps }
    }

    fn mask(&self, l: &FiniteLattice, class: &MapClass) -> u64 {
        l.members(class)
            .iter()
            .map(|f| self.maps.iter().position(|&m| m == (f.source, f.target)).unwrap())
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Every commuting square `a -> c`, `b -> d` has a diagonal `b -> c`.
    fn lifts(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        !(self.le[a][c] && self.le[b][d]) || self.le[b][c]
    }

    fn llp(&self, r: u64) -> u64 {
        (0..self.maps.len())
            .filter(|&i| (0..self.maps.len()).all(|j| r >> j & 1 == 0 || self.lifts(self.maps[i], self.maps[j])))
            .fold(0, |acc, i| acc | 1 << i)
    }

    fn rlp(&self, l: u64) -> u64 {
        (0..self.maps.len())
            .filter(|&i| (0..self.maps.len()).all(|j| l >> j & 1 == 0 || self.lifts(self.maps[j], self.maps[i])))
            .fold(0, |acc, i| acc | 1 << i)
    }

    fn factors(&self, l: u64, r: u64) -> bool {
        let has = |mask: u64, m: (usize, usize)| {
            self.maps
                .iter()
                .position(|&x| x == m)
                .is_some_and(|i| mask >> i & 1 == 1)
        };
        self.maps
            .iter()
            .all(|&(x, y)| (0..self.le.len()).any(|m| has(l, (x, m)) && has(r, (m, y))))
    }

    /// Every pair `(L, R)` of map subsets with `L = LLP(R)`, `R = RLP(L)`
    /// and factorisations.
    fn systems(&self) -> BTreeSet<(u64, u64)> {
        let k = self.maps.len();
        (0..1u64 << k)
            .filter_map(|r| {
                let l = self.llp(r);
                (self.rlp(l) == r && self.factors(l, r)).then_some((l, r))
            })
            .collect()
    }
}

#[test]
fn factorisation_systems_match_the_pair_scan() {
    for name in ["c1", "c2", "c3", "c4", "b2", "n5", "m3"] {
        let l = lattice(name);
        let p = Poset::new(&l);
        let found: BTreeSet<(u64, u64)> = enumerate_ofs(&l, Limits::default())
            .unwrap()
            .iter()
            .map(|fs| (p.mask(&l, fs.left()), p.mask(&l, fs.right())))
            .collect();
        assert_eq!(found, p.systems(), "{name}");
    }
}

#[test]
fn the_two_chain_has_two_systems_and_three_structures() {
    let l = lattice("c2");
    assert_eq!(enumerate_ofs(&l, Limits::default()).unwrap().len(), 2);
    let census = enumerate_model_structures(&l, Limits::default()).unwrap();
    let all = l.all_maps();
    let ids = l.identities();
    let triples: HashSet<(MapClass, MapClass, MapClass)> = census
        .iter()
        .map(|m| {
            (
                m.cofibrations().clone(),
                m.weak_equivalences().clone(),
                m.fibrations().clone(),
            )
        })
        .collect();
    let expected: HashSet<_> = [
        (all.clone(), ids.clone(), all.clone()),
        (all.clone(), all.clone(), ids.clone()),
        (ids, all.clone(), all),
    ]
    .into_iter()
    .collect();
    assert_eq!(triples, expected);
}

#[test]
fn model_structures_match_the_weak_equivalence_scan() {
    for name in ["c2", "c3", "b2"] {
        let l = lattice(name);
        let p = Poset::new(&l);
        let systems = p.systems();
        let is_wfs = |l: u64, r: u64| systems.contains(&(l, r));
        let k = p.maps.len();
        let mut expected = BTreeSet::new();
        for w in 0..1u64 << k {
            let closed = p.maps.iter().enumerate().all(|(i, &(x, y))| {
                (x != y || w >> i & 1 == 1)
                    && p.maps
                        .iter()
                        .enumerate()
                        .filter(|(_, &(y2, _))| y2 == y)
                        .all(|(j, &(_, z))| {
                            let xz = p.maps.iter().position(|&m| m == (x, z)).unwrap();
                            [i, j, xz].iter().filter(|&&t| w >> t & 1 == 1).count() != 2
                        })
            });
            if !closed {
                continue;
            }
            for &(tc, f) in &systems {
                for &(c, tf) in &systems {
                    if c & w == tc && f & w == tf {
                        expected.insert((c, w, f));
                    }
                }
            }
        }
        assert!(expected.iter().all(|&(c, w, f)| is_wfs(c & w, f) && is_wfs(c, f & w)));
        let found: BTreeSet<(u64, u64, u64)> = enumerate_model_structures(&l, Limits::default())
            .unwrap()
            .iter()
            .map(|m| {
                (
                    p.mask(&l, m.cofibrations()),
                    p.mask(&l, m.weak_equivalences()),
                    p.mask(&l, m.fibrations()),
                )
            })
            .collect();
        assert_eq!(found, expected, "{name}");
    }
}

#[test]
fn systems_are_closed_under_duality() {
    for e in catalog().iter().filter(|e| e.name != "b3") {
        let l = &e.lattice;
        let dual = Arc::new(l.dual());
        let systems = enumerate_ofs(l, Limits::default()).unwrap();
        let dual_systems: HashSet<(MapClass, MapClass)> = enumerate_ofs(&dual, Limits::default())
            .unwrap()
            .into_iter()
            .map(|fs| (fs.left().clone(), fs.right().clone()))
            .collect();
        for fs in &systems {
            let d = fs.dual_onto(&dual);
            assert!(
                dual_systems.contains(&(d.left().clone(), d.right().clone())),
                "{}",
                e.name
            );
        }
        assert_eq!(systems.len(), dual_systems.len());
    }
}

/// All Galois connections `lower -> upper`, from all monotone tables.
fn connections(lower: &Arc<FiniteLattice>, upper: &Arc<FiniteLattice>) -> Vec<GaloisConnection> {
    fn tables(n: usize, m: usize) -> Vec<Vec<usize>> {
        (0..m.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let v = code % m;
                        code /= m;
                        v
                    })
                    .collect()
            })
            .collect()
    }
    let mut out = Vec::new();
    for left in tables(lower.len(), upper.len()) {
        for right in tables(upper.len(), lower.len()) {
            if let Ok(g) = GaloisConnection::new(lower.clone(), upper.clone(), left.clone(), right) {
                out.push(g);
            }
        }
    }
    out
}

#[test]
fn injective_lift_failures_are_genuine() {
    let (c2, b2) = (lattice("c2"), lattice("b2"));
    let mut failures = 0;
    let mut successes = 0;
    for (lower, upper) in [(&c2, &b2), (&b2, &c2)] {
        let census = enumerate_model_structures(upper, Limits::default()).unwrap();
        for g in connections(lower, upper) {
            for m in &census {
                let c = g.preimage_class(Side::Left, m.cofibrations());
                let w = g.preimage_class(Side::Left, m.weak_equivalences());
                let acyclic = lower.rlp(&c).is_subset(&w);
                match injective_lift(&g, Side::Left, m) {
                    Ok(lifted) => {
                        assert!(acyclic);
                        assert_eq!(lifted.cofibrations(), &c);
                        assert_eq!(lifted.weak_equivalences(), &w);
                        successes += 1;
                    }
                    Err(LiftFailure::Acyclicity(_)) => {
                        assert!(!acyclic);
                        failures += 1;
                    }
                    Err(e) => panic!("unexpected failure {e}"),
                }
            }
        }
    }
    assert!(failures > 0, "scan found no acyclicity failure");
    assert!(successes > 0);
}

#[test]
fn projective_lifts_have_the_preimage_classes() {
    let (c2, b2) = (lattice("c2"), lattice("b2"));
    for (lower, upper) in [(&c2, &b2), (&b2, &c2)] {
        let census = enumerate_model_structures(lower, Limits::default()).unwrap();
        for g in connections(lower, upper) {
            for m in &census {
                let w = g.preimage_class(Side::Right, m.weak_equivalences());
                let f = g.preimage_class(Side::Right, m.fibrations());
                match projective_lift(&g, Side::Right, m) {
                    Ok(lifted) => {
                        assert_eq!(lifted.weak_equivalences(), &w);
                        assert_eq!(lifted.fibrations(), &f);
                        assert!(modelkit::is_model_structure(upper, lifted.cofibrations(), &w, &f).is_ok());
                    }
                    Err(LiftFailure::Acyclicity(_)) => assert!(!upper.llp(&f).is_subset(&w)),
                    Err(e) => panic!("unexpected failure {e}"),
                }
            }
        }
    }
}

#[test]
fn lifting_from_a_point() {
    let one = Arc::new(FiniteLattice::parse("one", "objects: *").unwrap());
    let point = ModelStructure::discrete(one.clone());
    for e in catalog().iter().filter(|e| e.name != "b3") {
        let l = &e.lattice;
        let collapse = GaloisConnection::new(l.clone(), one.clone(), vec![0; l.len()], vec![l.top()]).unwrap();
        // Preimages of the one-object structure are everything; the lift
        // exists and is (all, all, identities) with fibrant object top.
        let lifted = injective_lift(&collapse, Side::Left, &point).unwrap();
        assert_eq!(lifted.cofibrations(), &l.all_maps());
        assert_eq!(lifted.weak_equivalences(), &l.all_maps());
        assert_eq!(lifted.fibrations(), &l.identities());
        let bottom = GaloisConnection::new(one.clone(), l.clone(), vec![l.bottom()], vec![0; l.len()]).unwrap();
        let lifted = projective_lift(&bottom, Side::Right, &point).unwrap();
        assert_eq!(lifted.weak_equivalences(), &l.all_maps());
        assert_eq!(lifted.cofibrations(), &l.identities());
    }
}
