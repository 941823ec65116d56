//! Colocalisations, computed by running the localisation code on the
//! order-dual lattice.
//!
//! The dual of a lattice keeps object indices, so object sets transfer
//! unchanged; map classes are reindexed and model structures become
//! `(F^op, W^op, C^op)`.

use std::sync::Arc;

use crate::class::{MapClass, ObjectSet};
use crate::factorisation::{EnumerationError, Limits};
use crate::lattice::{FiniteLattice, LatticeMap};
use crate::localisation::{
    enumerate_localisations, enumerate_localities, is_locality, localisations_among, localise_from_locality,
    reflective_subsets, verify_theorem_1_with, verify_theorem_3_with, DerivedHom, LocalisationError, Locality,
    LocalityRejection, Reflection, ReflectionError,
};
use crate::model::ModelStructure;
use crate::report::{VerificationReport, VerifyError};

/// A coreflective subposet, stored as a reflection on the dual lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coreflection {
    ambient: Arc<FiniteLattice>,
    dual: Reflection,
}

impl Coreflection {
    pub fn new(ambient: Arc<FiniteLattice>, subobjects: ObjectSet) -> Result<Self, ReflectionError> {
        let dual = Reflection::new(Arc::new(ambient.dual()), subobjects)?;
        Ok(Self { ambient, dual })
    }

    pub fn ambient(&self) -> &Arc<FiniteLattice> {
        &self.ambient
    }

    pub fn subobjects(&self) -> &ObjectSet {
        self.dual.subobjects()
    }

    /// Greatest member below each object.
    pub fn coreflector(&self) -> &[usize] {
        self.dual.reflector()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.dual.apply(x)
    }

    /// The counit `Q(X) -> X`.
    pub fn counit(&self, x: usize) -> LatticeMap {
        LatticeMap::new(self.dual.apply(x), x)
    }

    /// The same coreflection read as a reflection of the dual lattice.
    pub fn as_dual_reflection(&self) -> &Reflection {
        &self.dual
    }
}

/// A coreflective subposet of cofibrant objects, closed under weak
/// equivalence. Held as a locality for the dual structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colocality {
    base: ModelStructure,
    coreflection: Coreflection,
    dual: Locality,
}

pub fn is_colocality(base: &ModelStructure, subset: &ObjectSet) -> Result<Colocality, LocalityRejection> {
    let dual = is_locality(&base.dual(), subset)?;
    let coreflection = Coreflection {
        ambient: base.lattice().clone(),
        dual: dual.reflection().clone(),
    };
    Ok(Colocality {
        base: base.clone(),
        coreflection,
        dual,
    })
}

impl Colocality {
    pub fn base(&self) -> &ModelStructure {
        &self.base
    }

    pub fn coreflection(&self) -> &Coreflection {
        &self.coreflection
    }

    pub fn colocals(&self) -> &ObjectSet {
        self.coreflection.subobjects()
    }

    /// A weak equivalence whose coreflection is not one.
    pub fn homotopy_witness(&self) -> Option<LatticeMap> {
        self.dual.homotopy_witness().map(|f| f.opposite())
    }

    pub fn is_homotopical(&self) -> bool {
        self.dual.is_homotopical()
    }

    pub fn as_dual_locality(&self) -> &Locality {
        &self.dual
    }
}

pub fn is_homotopical_colocality(coloc: &Colocality) -> bool {
    coloc.is_homotopical()
}

fn undual(m: ModelStructure, onto: &Arc<FiniteLattice>) -> ModelStructure {
    m.dual_onto(onto)
}

/// Colocalisation with cofibrant objects the colocals of a homotopical
/// colocality.
pub fn colocalise_from_colocality(coloc: &Colocality) -> Result<ModelStructure, LocalisationError> {
    localise_from_locality(&coloc.dual).map(|m| undual(m, coloc.base.lattice()))
}

/// Members of `census` with the fibrations of `base` and at least its
/// acyclic fibrations.
pub fn colocalisations_among(base: &ModelStructure, census: &[ModelStructure]) -> Vec<ModelStructure> {
    let dual_lattice = Arc::new(base.lattice().dual());
    let dual_census: Vec<ModelStructure> = census.iter().map(|m| m.dual_onto(&dual_lattice)).collect();
    localisations_among(&base.dual_onto(&dual_lattice), &dual_census)
        .into_iter()
        .map(|m| undual(m, base.lattice()))
        .collect()
}

pub fn enumerate_colocalisations(
    base: &ModelStructure,
    limits: Limits,
) -> Result<Vec<ModelStructure>, EnumerationError> {
    Ok(enumerate_localisations(&base.dual(), limits)?
        .into_iter()
        .map(|m| undual(m, base.lattice()))
        .collect())
}

pub fn enumerate_colocalities(base: &ModelStructure, limits: Limits) -> Result<Vec<Colocality>, EnumerationError> {
    let dual = base.dual();
    Ok(enumerate_localities(&dual, limits)?
        .into_iter()
        .map(|loc| Colocality {
            base: base.clone(),
            coreflection: Coreflection {
                ambient: base.lattice().clone(),
                dual: loc.reflection().clone(),
            },
            dual: loc,
        })
        .collect())
}

/// Subsets of `universe` for which every member of `universe` has a
/// greatest element of the subset below it.
pub fn coreflective_subsets(
    lattice: &FiniteLattice,
    universe: &ObjectSet,
    limits: Limits,
) -> Result<Vec<ObjectSet>, EnumerationError> {
    reflective_subsets(&lattice.dual(), universe, limits)
}

fn relabel(mut report: VerificationReport, theorem: &str, lattice: &FiniteLattice) -> VerificationReport {
    report.theorem = theorem.to_owned();
    report.lattice = lattice.name().to_owned();
    if let Some(v) = report.counts.remove("localisations") {
        report.counts.insert("colocalisations".into(), v);
    }
    for (from, to) in [
        ("homotopical_localities", "homotopical_colocalities"),
        ("reflective_subcats", "coreflective_subcats"),
    ] {
        if let Some(v) = report.counts.remove(from) {
            report.counts.insert(to.into(), v);
        }
    }
    report
}

fn dual_census(base: &ModelStructure, census: &[ModelStructure]) -> (ModelStructure, Vec<ModelStructure>) {
    let dual_lattice = Arc::new(base.lattice().dual());
    (
        base.dual_onto(&dual_lattice),
        census.iter().map(|m| m.dual_onto(&dual_lattice)).collect(),
    )
}

/// Colocalisations correspond to homotopical colocalities via their
/// cofibrant objects, reversing order.
pub fn verify_theorem_2(base: &ModelStructure, limits: Limits) -> Result<VerificationReport, VerifyError> {
    let census = crate::model::enumerate_model_structures(base.lattice(), limits)?;
    verify_theorem_2_with(base, &census, limits)
}

pub fn verify_theorem_2_with(
    base: &ModelStructure,
    census: &[ModelStructure],
    limits: Limits,
) -> Result<VerificationReport, VerifyError> {
    let (dual, dual_census) = dual_census(base, census);
    verify_theorem_1_with(&dual, &dual_census, limits).map(|r| relabel(r, "thm2", base.lattice()))
}

/// For a right proper `base`: colocalisations correspond to coreflective
/// subposets of the bifibrant objects.
pub fn verify_theorem_4(base: &ModelStructure, limits: Limits) -> Result<VerificationReport, VerifyError> {
    let census = crate::model::enumerate_model_structures(base.lattice(), limits)?;
    verify_theorem_4_with(base, &census, limits)
}

pub fn verify_theorem_4_with(
    base: &ModelStructure,
    census: &[ModelStructure],
    limits: Limits,
) -> Result<VerificationReport, VerifyError> {
    if let Some(w) = base.right_properness_witness() {
        return Err(VerifyError::Precondition(format!("base is not right proper: {w}")));
    }
    let (dual, dual_census) = dual_census(base, census);
    verify_theorem_3_with(&dual, &dual_census, limits).map(|r| relabel(r, "thm4", base.lattice()))
}

/// Maps `(u, v)` with `Q(X) <= R(u)` iff `Q(X) <= R(v)` for every `X` in `k`.
pub fn k_colocal_equivalences(m: &ModelStructure, k: &ObjectSet) -> MapClass {
    let dh = DerivedHom::new(m);
    m.lattice().class_where(|f| k.iter().all(|x| dh.right_orthogonal(x, f)))
}

/// Objects seeing every `K`-colocal equivalence as a derived-hom bijection.
pub fn k_colocal_objects(m: &ModelStructure, k: &ObjectSet) -> ObjectSet {
    let l = m.lattice();
    let dh = DerivedHom::new(m);
    let equivalences = k_colocal_equivalences(m, k);
    l.objects_where(|x| equivalences.iter().all(|f| dh.right_orthogonal(x, l.map_at(f))))
}

/// Colocalisation at a set of objects over a right proper base: cofibrant
/// objects are the `K`-colocal cofibrant objects and weak equivalences the
/// `K`-colocal equivalences.
pub fn k_colocalise(m: &ModelStructure, k: &ObjectSet) -> Result<ModelStructure, LocalisationError> {
    if let Some(w) = m.right_properness_witness() {
        return Err(LocalisationError::NotRightProper(w));
    }
    let l = m.lattice();
    let qr = m.replacements().qr();
    let normalised = l.objects_where(|y| k.iter().any(|x| qr[x] == y));
    let colocal = k_colocal_objects(m, k);
    let check = |cond: bool, check: &'static str, witness: String| {
        if cond {
            Ok(())
        } else {
            Err(LocalisationError::Invariant { check, witness })
        }
    };
    check(
        normalised.is_subset(&colocal),
        "fibrant-cofibrant replacements of K are colocal",
        l.format_objects(&normalised.difference(&colocal)).join(","),
    )?;
    check(
        k_colocal_equivalences(m, &normalised) == k_colocal_equivalences(m, k),
        "replacing K by its fibrant-cofibrant replacements changes nothing",
        l.format_objects(&normalised).join(","),
    )?;
    let colocals = colocal.intersection(&m.cofibrant_objects());
    let coloc = is_colocality(m, &colocals)?;
    let result = colocalise_from_colocality(&coloc)?;
    check(
        result.cofibrant_objects() == colocals,
        "cofibrant objects are the K-colocal cofibrant objects",
        l.format_objects(&result.cofibrant_objects()).join(","),
    )?;
    let equivalences = k_colocal_equivalences(m, k);
    check(
        result.weak_equivalences() == &equivalences,
        "weak equivalences are the K-colocal equivalences",
        l.format_class(&result.weak_equivalences().difference(&equivalences))
            .join(","),
    )?;
    Ok(result)
}

/// Colocalisation at a set of maps over a right proper base, obtained by
/// localising the dual structure at the opposite maps.
pub fn s_colocalise(m: &ModelStructure, s: &MapClass) -> Result<ModelStructure, LocalisationError> {
    if let Some(w) = m.right_properness_witness() {
        return Err(LocalisationError::NotRightProper(w));
    }
    let l = m.lattice();
    let dual_lattice = Arc::new(l.dual());
    let dual = m.dual_onto(&dual_lattice);
    crate::localisation::s_localise(&dual, &l.dualize_class(s, &dual_lattice)).map(|r| r.dual_onto(l))
}
