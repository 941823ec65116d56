//! Model structures on a finite lattice.
//!
//! A model structure `(C, W, F)` is recognised by 2-of-3 for `W` and the two
//! factorisation systems `(C ∩ W, F)` and `(C, F ∩ W)`. On a skeletal poset
//! both systems are orthogonal, so every structure here is one-dimensional.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::class::{MapClass, ObjectSet};
use crate::factorisation::{
    enumerate_ofs, factor_through, is_wfs, EnumerationError, FactorisationSystem, Limits, WfsDiagnostic,
};
use crate::lattice::{FiniteLattice, LatticeMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelDiagnostic {
    #[error("weak equivalences miss the identity {0}")]
    MissingIdentity(String),
    #[error("2-of-3 fails for the composable pair {f}, {g}")]
    TwoOfThree { f: String, g: String },
    #[error("(C ∩ W, F) is not a factorisation system: {0}")]
    AcyclicCofibrations(WfsDiagnostic),
    #[error("(C, F ∩ W) is not a factorisation system: {0}")]
    Cofibrations(WfsDiagnostic),
}

/// Why a pair of factorisation systems does not assemble into a model structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairRejection {
    #[error("the two systems live on different lattices")]
    DifferentLattices,
    #[error("{0} is an acyclic cofibration but not a cofibration")]
    LeftNotIncluded(String),
    #[error("{0} is an acyclic fibration but not a fibration")]
    RightNotIncluded(String),
    #[error("recovered weak equivalences fail 2-of-3 at {f}, {g}")]
    TwoOfThree { f: String, g: String },
    #[error("C ∩ W differs from the acyclic cofibrations at {0}")]
    AcyclicCofibrationsMismatch(String),
    #[error("F ∩ W differs from the acyclic fibrations at {0}")]
    AcyclicFibrationsMismatch(String),
}

/// A model structure `(C, W, F)`.
#[derive(Debug, Clone)]
pub struct ModelStructure {
    lattice: Arc<FiniteLattice>,
    cofibrations: MapClass,
    weak_equivalences: MapClass,
    fibrations: MapClass,
}

/// Structures are equal when their lattices have equal content and their
/// classes coincide.
impl PartialEq for ModelStructure {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
            && self.cofibrations == other.cofibrations
            && self.weak_equivalences == other.weak_equivalences
            && self.fibrations == other.fibrations
    }
}

impl Eq for ModelStructure {}

/// Fibrant replacement `R` with unit `X -> RX`, cofibrant replacement `Q`
/// with counit `QX -> X`, as object tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replacements {
    pub fibrant: Vec<usize>,
    pub cofibrant: Vec<usize>,
}

impl Replacements {
    pub fn unit(&self, x: usize) -> LatticeMap {
        LatticeMap::new(x, self.fibrant[x])
    }

    pub fn counit(&self, x: usize) -> LatticeMap {
        LatticeMap::new(self.cofibrant[x], x)
    }

    /// `QR` as an object table.
    pub fn qr(&self) -> Vec<usize> {
        self.fibrant.iter().map(|&r| self.cofibrant[r]).collect()
    }

    /// `RQ` as an object table.
    pub fn rq(&self) -> Vec<usize> {
        self.cofibrant.iter().map(|&q| self.fibrant[q]).collect()
    }
}

/// A pushout or pullback that leaves the weak equivalences.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PropernessWitness {
    pub weak_equivalence: String,
    pub along: String,
    pub result: String,
}

impl std::fmt::Display for PropernessWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "base change of {} along {} is {}, not a weak equivalence",
            self.weak_equivalence, self.along, self.result
        )
    }
}

/// First failing axiom of a candidate triple, if any.
pub fn is_model_structure(
    lattice: &FiniteLattice,
    c: &MapClass,
    w: &MapClass,
    f: &MapClass,
) -> Result<(), ModelDiagnostic> {
    if let Some(id) = lattice.identities().difference(w).first() {
        return Err(ModelDiagnostic::MissingIdentity(lattice.format_map(lattice.map_at(id))));
    }
    if let Some((a, b)) = lattice.two_of_three_violation(w) {
        return Err(ModelDiagnostic::TwoOfThree {
            f: lattice.format_map(a),
            g: lattice.format_map(b),
        });
    }
    is_wfs(lattice, &c.intersection(w), f).map_err(ModelDiagnostic::AcyclicCofibrations)?;
    is_wfs(lattice, c, &f.intersection(w)).map_err(ModelDiagnostic::Cofibrations)?;
    Ok(())
}

impl ModelStructure {
    pub fn new(
        lattice: Arc<FiniteLattice>,
        cofibrations: MapClass,
        weak_equivalences: MapClass,
        fibrations: MapClass,
    ) -> Result<Self, ModelDiagnostic> {
        is_model_structure(&lattice, &cofibrations, &weak_equivalences, &fibrations)?;
        Ok(Self {
            lattice,
            cofibrations,
            weak_equivalences,
            fibrations,
        })
    }

    pub(crate) fn new_unchecked(
        lattice: Arc<FiniteLattice>,
        cofibrations: MapClass,
        weak_equivalences: MapClass,
        fibrations: MapClass,
    ) -> Self {
        Self {
            lattice,
            cofibrations,
            weak_equivalences,
            fibrations,
        }
    }

    /// `(all, identities, all)`.
    pub fn discrete(lattice: Arc<FiniteLattice>) -> Self {
        let (all, ids) = (lattice.all_maps(), lattice.identities());
        Self::new_unchecked(lattice, all.clone(), ids, all)
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn cofibrations(&self) -> &MapClass {
        &self.cofibrations
    }

    pub fn weak_equivalences(&self) -> &MapClass {
        &self.weak_equivalences
    }

    pub fn fibrations(&self) -> &MapClass {
        &self.fibrations
    }

    pub fn acyclic_cofibrations(&self) -> MapClass {
        self.cofibrations.intersection(&self.weak_equivalences)
    }

    pub fn acyclic_fibrations(&self) -> MapClass {
        self.fibrations.intersection(&self.weak_equivalences)
    }

    pub fn is_weak_equivalence(&self, f: LatticeMap) -> bool {
        self.lattice.contains(&self.weak_equivalences, f)
    }

    pub fn is_cofibration(&self, f: LatticeMap) -> bool {
        self.lattice.contains(&self.cofibrations, f)
    }

    pub fn is_fibration(&self, f: LatticeMap) -> bool {
        self.lattice.contains(&self.fibrations, f)
    }

    /// `(TC, F)`.
    pub fn acyclic_cofibration_system(&self) -> FactorisationSystem {
        FactorisationSystem::new(
            self.lattice.clone(),
            self.acyclic_cofibrations(),
            self.fibrations.clone(),
        )
        .expect("model structure invariant")
    }

    /// `(C, TF)`.
    pub fn cofibration_system(&self) -> FactorisationSystem {
        FactorisationSystem::new(
            self.lattice.clone(),
            self.cofibrations.clone(),
            self.acyclic_fibrations(),
        )
        .expect("model structure invariant")
    }

    /// `R(X)` factors `X -> top` through `(TC, F)`; `Q(X)` factors
    /// `bottom -> X` through `(C, TF)`.
    pub fn replacements(&self) -> Replacements {
        let l = &self.lattice;
        let (tc, tf) = (self.acyclic_cofibrations(), self.acyclic_fibrations());
        let fibrant = l
            .objects()
            .map(|x| {
                factor_through(l, &tc, &self.fibrations, LatticeMap::new(x, l.top()))
                    .expect("model structure invariant")
            })
            .collect();
        let cofibrant = l
            .objects()
            .map(|x| {
                factor_through(l, &self.cofibrations, &tf, LatticeMap::new(l.bottom(), x))
                    .expect("model structure invariant")
            })
            .collect();
        Replacements { fibrant, cofibrant }
    }

    pub fn fibrant_objects(&self) -> ObjectSet {
        let l = &self.lattice;
        l.objects_where(|x| self.is_fibration(LatticeMap::new(x, l.top())))
    }

    pub fn cofibrant_objects(&self) -> ObjectSet {
        let l = &self.lattice;
        l.objects_where(|x| self.is_cofibration(LatticeMap::new(l.bottom(), x)))
    }

    pub fn bifibrant_objects(&self) -> ObjectSet {
        self.fibrant_objects().intersection(&self.cofibrant_objects())
    }

    /// Whether `QR` identifies the endpoints of `f`.
    pub fn is_weq_via_qr(&self, f: LatticeMap) -> bool {
        let qr = self.replacements().qr();
        qr[f.source] == qr[f.target]
    }

    /// Pushouts of weak equivalences along cofibrations stay weak equivalences.
    pub fn left_properness_witness(&self) -> Option<PropernessWitness> {
        let l = &self.lattice;
        for w in self.weak_equivalences.iter().map(|i| l.map_at(i)) {
            for c in self.cofibrations.iter().map(|i| l.map_at(i)) {
                if c.source != w.source {
                    continue;
                }
                let p = l.pushout(w, c).expect("common source");
                if !self.is_weak_equivalence(p) {
                    return Some(PropernessWitness {
                        weak_equivalence: l.format_map(w),
                        along: l.format_map(c),
                        result: l.format_map(p),
                    });
                }
            }
        }
        None
    }

    /// Pullbacks of weak equivalences along fibrations stay weak equivalences.
    pub fn right_properness_witness(&self) -> Option<PropernessWitness> {
        let l = &self.lattice;
        for w in self.weak_equivalences.iter().map(|i| l.map_at(i)) {
            for f in self.fibrations.iter().map(|i| l.map_at(i)) {
                if f.target != w.target {
                    continue;
                }
                let p = l.pullback(w, f).expect("common target");
                if !self.is_weak_equivalence(p) {
                    return Some(PropernessWitness {
                        weak_equivalence: l.format_map(w),
                        along: l.format_map(f),
                        result: l.format_map(p),
                    });
                }
            }
        }
        None
    }

    pub fn is_left_proper(&self) -> bool {
        self.left_properness_witness().is_none()
    }

    pub fn is_right_proper(&self) -> bool {
        self.right_properness_witness().is_none()
    }

    /// The same structure read on the order-dual lattice: `(F^op, W^op, C^op)`.
    pub fn dual_onto(&self, dual: &Arc<FiniteLattice>) -> Self {
        let l = &self.lattice;
        Self::new_unchecked(
            dual.clone(),
            l.dualize_class(&self.fibrations, dual),
            l.dualize_class(&self.weak_equivalences, dual),
            l.dualize_class(&self.cofibrations, dual),
        )
    }

    pub fn dual(&self) -> Self {
        self.dual_onto(&Arc::new(self.lattice.dual()))
    }

    /// Canonical order: cofibrations, then weak equivalences, then fibrations,
    /// each compared lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cofibrations
            .lex_cmp(&other.cofibrations)
            .then_with(|| self.weak_equivalences.lex_cmp(&other.weak_equivalences))
            .then_with(|| self.fibrations.lex_cmp(&other.fibrations))
    }

    pub fn describe(&self) -> String {
        let l = &self.lattice;
        format!(
            "C = {{{}}}\nW = {{{}}}\nF = {{{}}}",
            l.format_class(&self.cofibrations).join(", "),
            l.format_class(&self.weak_equivalences).join(", "),
            l.format_class(&self.fibrations).join(", ")
        )
    }
}

/// Assembles a model structure from `fs1 = (TC, F)` and `fs2 = (C, TF)`.
///
/// `W` is recovered as the maps whose `(TC, F)` factorisation has its right
/// part in `TF`.
pub fn model_from_wfs_pair(
    fs1: &FactorisationSystem,
    fs2: &FactorisationSystem,
) -> Result<ModelStructure, PairRejection> {
    let l = fs1.lattice();
    if !(Arc::ptr_eq(l, fs2.lattice()) || **l == **fs2.lattice()) {
        return Err(PairRejection::DifferentLattices);
    }
    let fmt = |i: usize| l.format_map(l.map_at(i));
    if let Some(m) = fs1.left().difference(fs2.left()).first() {
        return Err(PairRejection::LeftNotIncluded(fmt(m)));
    }
    if let Some(m) = fs2.right().difference(fs1.right()).first() {
        return Err(PairRejection::RightNotIncluded(fmt(m)));
    }
    let w = l.class_where(|f| {
        let mid = factor_through(l, fs1.left(), fs1.right(), f).expect("fs1 is a factorisation system");
        fs2.right().contains(l.map_index(LatticeMap::new(mid, f.target)))
    });
    if let Some((a, b)) = l.two_of_three_violation(&w) {
        return Err(PairRejection::TwoOfThree {
            f: l.format_map(a),
            g: l.format_map(b),
        });
    }
    let tc = fs2.left().intersection(&w);
    if let Some(m) = differing(&tc, fs1.left()) {
        return Err(PairRejection::AcyclicCofibrationsMismatch(fmt(m)));
    }
    let tf = fs1.right().intersection(&w);
    if let Some(m) = differing(&tf, fs2.right()) {
        return Err(PairRejection::AcyclicFibrationsMismatch(fmt(m)));
    }
    Ok(ModelStructure::new_unchecked(
        l.clone(),
        fs2.left().clone(),
        w,
        fs1.right().clone(),
    ))
}

fn differing(a: &MapClass, b: &MapClass) -> Option<usize> {
    a.difference(b).first().or_else(|| b.difference(a).first())
}

/// Every model structure on `lattice`, in canonical order.
pub fn enumerate_model_structures(
    lattice: &Arc<FiniteLattice>,
    limits: Limits,
) -> Result<Vec<ModelStructure>, EnumerationError> {
    let systems = enumerate_ofs(lattice, limits)?;
    let mut structures: Vec<ModelStructure> = systems
        .par_iter()
        .flat_map_iter(|fs2| {
            systems.iter().filter_map(move |fs1| {
                if !fs1.left().is_subset(fs2.left()) || !fs2.right().is_subset(fs1.right()) {
                    return None;
                }
                model_from_wfs_pair(fs1, fs2).ok()
            })
        })
        .collect();
    structures.sort_by(|a, b| a.canonical_cmp(b));
    structures.dedup();
    Ok(structures)
}
