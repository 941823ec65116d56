//! Orthogonal factorisation systems on a finite lattice.
//!
//! Every weak factorisation system on a poset is orthogonal, because
//! diagonals are unique whenever they exist. Retract closure is automatic
//! too (antisymmetry), so recognition only checks the two lifting
//! closures and the existence of factorisations.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::class::MapClass;
use crate::lattice::{FiniteLattice, LatticeMap};

/// Default cap on non-identity maps for exhaustive enumeration.
pub const MAX_ENUMERATION_MAPS: usize = 24;

/// Default cap on objects for exhaustive scans over object subsets.
pub const MAX_SUBSET_OBJECTS: usize = 20;

/// Enumeration guardrail settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct Limits {
    /// Lift the default cap of [`MAX_ENUMERATION_MAPS`] non-identity maps.
    pub allow_large: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("{lattice} has {maps} non-identity maps; enumeration is capped at {limit} unless overridden")]
    Guardrail { lattice: String, maps: usize, limit: usize },
    #[error("{lattice}: scanning subsets of {objects} objects is capped at {limit} unless overridden")]
    TooManyObjects {
        lattice: String,
        objects: usize,
        limit: usize,
    },
}

pub(crate) fn check_guardrail(lattice: &FiniteLattice, limits: Limits) -> Result<(), EnumerationError> {
    let maps = lattice.non_identity_map_count();
    if maps > MAX_ENUMERATION_MAPS && !limits.allow_large {
        return Err(EnumerationError::Guardrail {
            lattice: lattice.name().to_owned(),
            maps,
            limit: MAX_ENUMERATION_MAPS,
        });
    }
    Ok(())
}

pub(crate) fn check_subset_guardrail(
    lattice: &FiniteLattice,
    objects: usize,
    limits: Limits,
) -> Result<(), EnumerationError> {
    if objects > MAX_SUBSET_OBJECTS && !limits.allow_large {
        return Err(EnumerationError::TooManyObjects {
            lattice: lattice.name().to_owned(),
            objects,
            limit: MAX_SUBSET_OBJECTS,
        });
    }
    Ok(())
}

/// The first condition a candidate pair `(L, R)` fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WfsDiagnostic {
    #[error("{left} is in the left class but does not lift against {right}")]
    NoLift { left: String, right: String },
    #[error("{0} lifts against the right class but is not in the left class")]
    LeftNotSaturated(String),
    #[error("{0} lifts against the left class but is not in the right class")]
    RightNotSaturated(String),
    #[error("{0} has no factorisation")]
    NoFactorisation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("{0} has no factorisation through the given classes")]
    NoCandidate(String),
    #[error("{map} factors through several objects: {mids:?}")]
    Ambiguous { map: String, mids: Vec<String> },
}

/// Checks `L = LLP(R)`, `R = RLP(L)` and that every map factors as an
/// `L`-map followed by an `R`-map.
pub fn is_wfs(lattice: &FiniteLattice, left: &MapClass, right: &MapClass) -> Result<(), WfsDiagnostic> {
    for l in left {
        let l_map = lattice.map_at(l);
        if let Some(r) = right.iter().find(|&r| !lattice.lifts_right(l).contains(r)) {
            return Err(WfsDiagnostic::NoLift {
                left: lattice.format_map(l_map),
                right: lattice.format_map(lattice.map_at(r)),
            });
        }
    }
    for &f in lattice.maps() {
        if factor_candidates(lattice, left, right, f).next().is_none() {
            return Err(WfsDiagnostic::NoFactorisation(lattice.format_map(f)));
        }
    }
    if let Some(m) = lattice.llp(right).difference(left).first() {
        return Err(WfsDiagnostic::LeftNotSaturated(lattice.format_map(lattice.map_at(m))));
    }
    if let Some(m) = lattice.rlp(left).difference(right).first() {
        return Err(WfsDiagnostic::RightNotSaturated(lattice.format_map(lattice.map_at(m))));
    }
    Ok(())
}

/// Objects `m` with `f.source <= m <= f.target`, `(f.source, m)` in `left`
/// and `(m, f.target)` in `right`.
pub fn factor_candidates<'a>(
    lattice: &'a FiniteLattice,
    left: &'a MapClass,
    right: &'a MapClass,
    f: LatticeMap,
) -> impl Iterator<Item = usize> + 'a {
    lattice.objects().filter(move |&m| {
        lattice.leq(f.source, m)
            && lattice.leq(m, f.target)
            && left.contains(lattice.map_index(LatticeMap::new(f.source, m)))
            && right.contains(lattice.map_index(LatticeMap::new(m, f.target)))
    })
}

/// The unique middle object of the `(left, right)` factorisation of `f`.
pub fn factor_through(
    lattice: &FiniteLattice,
    left: &MapClass,
    right: &MapClass,
    f: LatticeMap,
) -> Result<usize, FactorError> {
    let mids: Vec<usize> = factor_candidates(lattice, left, right, f).collect();
    match mids.as_slice() {
        [m] => Ok(*m),
        [] => Err(FactorError::NoCandidate(lattice.format_map(f))),
        _ => Err(FactorError::Ambiguous {
            map: lattice.format_map(f),
            mids: mids.iter().map(|&m| lattice.label(m).to_owned()).collect(),
        }),
    }
}

/// A factorisation `f = right_part . left_part` through `mid`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorisation {
    pub mid: usize,
    pub left_part: LatticeMap,
    pub right_part: LatticeMap,
}

/// An (orthogonal) factorisation system `(L, R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorisationSystem {
    lattice: Arc<FiniteLattice>,
    left: MapClass,
    right: MapClass,
}

impl FactorisationSystem {
    pub fn new(lattice: Arc<FiniteLattice>, left: MapClass, right: MapClass) -> Result<Self, WfsDiagnostic> {
        is_wfs(&lattice, &left, &right)?;
        Ok(Self { lattice, left, right })
    }

    /// `(identities, all maps)`.
    pub fn trivial_left(lattice: Arc<FiniteLattice>) -> Self {
        let (left, right) = (lattice.identities(), lattice.all_maps());
        Self { lattice, left, right }
    }

    /// `(all maps, identities)`.
    pub fn trivial_right(lattice: Arc<FiniteLattice>) -> Self {
        let (left, right) = (lattice.all_maps(), lattice.identities());
        Self { lattice, left, right }
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn left(&self) -> &MapClass {
        &self.left
    }

    pub fn right(&self) -> &MapClass {
        &self.right
    }

    pub fn factor(&self, f: LatticeMap) -> Result<Factorisation, FactorError> {
        let mid = factor_through(&self.lattice, &self.left, &self.right, f)?;
        Ok(Factorisation {
            mid,
            left_part: LatticeMap::new(f.source, mid),
            right_part: LatticeMap::new(mid, f.target),
        })
    }

    /// `(R^op, L^op)` on the order-dual lattice `dual`.
    pub fn dual_onto(&self, dual: &Arc<FiniteLattice>) -> Self {
        Self {
            lattice: dual.clone(),
            left: self.lattice.dualize_class(&self.right, dual),
            right: self.lattice.dualize_class(&self.left, dual),
        }
    }
}

/// All factorisation systems on `lattice`, ordered lexicographically by the
/// left class.
///
/// Every right class is `RLP(S)` for `S` the non-identity maps of its left
/// class, so closing each subset of non-identity maps reaches all of them.
pub fn enumerate_ofs(
    lattice: &Arc<FiniteLattice>,
    limits: Limits,
) -> Result<Vec<FactorisationSystem>, EnumerationError> {
    check_guardrail(lattice, limits)?;
    let generators: Vec<usize> = lattice
        .maps()
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_identity())
        .map(|(i, _)| i)
        .collect();
    assert!(generators.len() < 64, "too many generators to enumerate subsets");
    let subsets = 1u64 << generators.len();

    let rights: HashSet<MapClass> = (0..subsets)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, mask| {
            let mut right = lattice.all_maps();
            let mut bits = mask;
            while bits != 0 {
                let g = generators[bits.trailing_zeros() as usize];
                right.intersect_with(lattice.lifts_right(g));
                bits &= bits - 1;
            }
            acc.insert(right);
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    let mut systems: Vec<FactorisationSystem> = rights
        .into_par_iter()
        .filter_map(|right| {
            let left = lattice.llp(&right);
            is_wfs(lattice, &left, &right).ok()?;
            Some(FactorisationSystem {
                lattice: lattice.clone(),
                left,
                right,
            })
        })
        .collect();
    systems.sort_by(|a, b| a.left.lex_cmp(&b.left));
    Ok(systems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::chain("c2", 2))
    }

    #[test]
    fn trivial_systems_are_recognised() {
        for l in [c2(), Arc::new(FiniteLattice::chain("c4", 4))] {
            assert!(is_wfs(&l, &l.identities(), &l.all_maps()).is_ok());
            assert!(is_wfs(&l, &l.all_maps(), &l.identities()).is_ok());
        }
    }

    #[test]
    fn all_all_is_not_a_system() {
        let l = c2();
        assert_eq!(
            is_wfs(&l, &l.all_maps(), &l.all_maps()),
            Err(WfsDiagnostic::NoLift {
                left: "0<=1".into(),
                right: "0<=1".into()
            })
        );
    }

    #[test]
    fn trivial_factorisations() {
        let l = Arc::new(FiniteLattice::chain("c3", 3));
        let f = LatticeMap::new(0, 2);
        assert_eq!(FactorisationSystem::trivial_left(l.clone()).factor(f).unwrap().mid, 0);
        assert_eq!(FactorisationSystem::trivial_right(l).factor(f).unwrap().mid, 2);
    }

    #[test]
    fn factor_reports_missing_and_ambiguous_mids() {
        let l = c2();
        let f = LatticeMap::new(0, 1);
        assert!(matches!(
            factor_through(&l, &l.identities(), &l.identities(), f),
            Err(FactorError::NoCandidate(_))
        ));
        assert!(matches!(
            factor_through(&l, &l.all_maps(), &l.all_maps(), f),
            Err(FactorError::Ambiguous { .. })
        ));
    }

    #[test]
    fn enumeration_small_cases() {
        let one = Arc::new(FiniteLattice::parse("c1", "objects: x").unwrap());
        let systems = enumerate_ofs(&one, Limits::default()).unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].left(), &one.identities());

        let l = c2();
        let systems = enumerate_ofs(&l, Limits::default()).unwrap();
        assert_eq!(systems.len(), 2);
        // canonical order: lexicographic on the left bitset
        assert_eq!(systems[0], FactorisationSystem::trivial_left(l.clone()));
        assert_eq!(systems[1], FactorisationSystem::trivial_right(l));
    }

    #[test]
    fn guardrail() {
        let big = Arc::new(FiniteLattice::chain("c8", 8));
        assert_eq!(big.non_identity_map_count(), 28);
        assert!(matches!(
            enumerate_ofs(&big, Limits::default()),
            Err(EnumerationError::Guardrail { maps: 28, .. })
        ));
    }
}
