//! Semi-exact (co)reflections and two-step model structures built from a
//! reflection followed by a coreflection.

use std::sync::Arc;

use thiserror::Error;

use crate::class::ObjectSet;
use crate::colocalisation::{colocalise_from_colocality, coreflective_subsets, is_colocality, Coreflection};
use crate::factorisation::{EnumerationError, Limits};
use crate::lattice::FiniteLattice;
use crate::localisation::{
    is_locality, localise_from_locality, reflective_subsets, LocalisationError, LocalityRejection, Reflection,
};
use crate::model::ModelStructure;
use crate::report::{ensure, VerificationReport, VerifyError};

/// `x` and `b` for which reflecting `x ∧ b` differs from `R(x) ∧ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessWitness {
    pub object: usize,
    pub member: usize,
}

/// Whether the reflector commutes with meets against members of the
/// subposet. Every cospan has the top as a common upper bound, so all pairs
/// are checked.
pub fn semi_left_exact_witness(r: &Reflection) -> Option<ExactnessWitness> {
    let l = r.ambient();
    for x in l.objects() {
        for b in r.subobjects().iter() {
            if r.apply(l.meet(x, b)) != l.meet(r.apply(x), b) {
                return Some(ExactnessWitness { object: x, member: b });
            }
        }
    }
    None
}

pub fn is_semi_left_exact(r: &Reflection) -> bool {
    semi_left_exact_witness(r).is_none()
}

/// Whether the coreflector commutes with joins against members.
pub fn semi_right_exact_witness(c: &Coreflection) -> Option<ExactnessWitness> {
    semi_left_exact_witness(c.as_dual_reflection())
}

pub fn is_semi_right_exact(c: &Coreflection) -> bool {
    semi_right_exact_witness(c).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("reflection is not semi-left-exact at {object} and {member}")]
    NotSemiLeftExact { object: String, member: String },
    #[error("coreflection is not semi-right-exact at {object} and {member}")]
    NotSemiRightExact { object: String, member: String },
    #[error("{0} lies outside the outer subposet")]
    NotNested(String),
    #[error("inner subposet is not {kind} in the outer one at {object}")]
    NotAdjoint { kind: &'static str, object: String },
    #[error("second step rejected: {0}")]
    SecondStep(LocalityRejection),
    #[error("second step is not homotopical at {0}")]
    NotHomotopical(String),
    #[error(transparent)]
    Pipeline(#[from] LocalisationError),
    #[error("{check} fails: {witness}")]
    Invariant { check: &'static str, witness: String },
}

fn check(cond: bool, check: &'static str, witness: impl FnOnce() -> String) -> Result<(), ConstructionError> {
    if cond {
        Ok(())
    } else {
        Err(ConstructionError::Invariant {
            check,
            witness: witness(),
        })
    }
}

/// Localise the discrete structure at the reflection onto `B`, then
/// colocalise at the objects whose reflection lies in `a`.
///
/// The result has fibrant objects `B`, cofibrant objects `R⁻¹(a)` and
/// bifibrant objects `a`.
pub fn prop15_build(r: &Reflection, a: &ObjectSet) -> Result<ModelStructure, ConstructionError> {
    let l = r.ambient();
    let b = r.subobjects();
    if let Some(w) = semi_left_exact_witness(r) {
        return Err(ConstructionError::NotSemiLeftExact {
            object: l.label(w.object).to_owned(),
            member: l.label(w.member).to_owned(),
        });
    }
    if let Some(x) = a.difference(b).first() {
        return Err(ConstructionError::NotNested(l.label(x).to_owned()));
    }
    if let Some(x) = b.iter().find(|&x| l.greatest_below(a, x).is_none()) {
        return Err(ConstructionError::NotAdjoint {
            kind: "coreflective",
            object: l.label(x).to_owned(),
        });
    }

    let discrete = ModelStructure::discrete(l.clone());
    let loc = is_locality(&discrete, b).map_err(LocalisationError::from)?;
    let first = localise_from_locality(&loc)?;
    check(
        first.is_right_proper(),
        "semi-left-exact localisation is right proper",
        || {
            first
                .right_properness_witness()
                .map(|w| w.to_string())
                .unwrap_or_default()
        },
    )?;

    let colocals = l.objects_where(|x| a.contains(r.apply(x)));
    let coloc = is_colocality(&first, &colocals).map_err(ConstructionError::SecondStep)?;
    if let Some(w) = coloc.homotopy_witness() {
        return Err(ConstructionError::NotHomotopical(l.format_map(w)));
    }
    let result = colocalise_from_colocality(&coloc)?;
    let fmt = |s: &ObjectSet| l.format_objects(s).join(",");
    check(
        &result.fibrant_objects() == b,
        "fibrant objects are the reflective subposet",
        || fmt(&result.fibrant_objects()),
    )?;
    check(
        result.cofibrant_objects() == colocals,
        "cofibrant objects reflect into the inner subposet",
        || fmt(&result.cofibrant_objects()),
    )?;
    check(
        &result.bifibrant_objects() == a,
        "bifibrant objects are the inner subposet",
        || fmt(&result.bifibrant_objects()),
    )?;
    Ok(result)
}

/// Order dual of [`prop15_build`]: colocalise the discrete structure at a
/// semi-right-exact coreflection onto `B`, then localise at the objects
/// whose coreflection lies in `a`.
pub fn prop15_dual_build(c: &Coreflection, a: &ObjectSet) -> Result<ModelStructure, ConstructionError> {
    let l = c.ambient();
    if let Some(w) = semi_right_exact_witness(c) {
        return Err(ConstructionError::NotSemiRightExact {
            object: l.label(w.object).to_owned(),
            member: l.label(w.member).to_owned(),
        });
    }
    if let Some(x) = a.difference(c.subobjects()).first() {
        return Err(ConstructionError::NotNested(l.label(x).to_owned()));
    }
    if let Some(x) = c.subobjects().iter().find(|&x| l.least_above(a, x).is_none()) {
        return Err(ConstructionError::NotAdjoint {
            kind: "reflective",
            object: l.label(x).to_owned(),
        });
    }
    let dual = prop15_build(c.as_dual_reflection(), a)?;
    Ok(dual.dual_onto(l))
}

/// Pairs `(B, A)` with `B` reflective and semi-left-exact and `A`
/// coreflective in `B`.
pub fn prop15_pairs(
    lattice: &Arc<FiniteLattice>,
    limits: Limits,
) -> Result<Vec<(Reflection, ObjectSet)>, EnumerationError> {
    let mut pairs = Vec::new();
    for b in reflective_subsets(lattice, &lattice.all_objects(), limits)? {
        let r = Reflection::new(lattice.clone(), b.clone()).expect("reflective by construction");
        if !is_semi_left_exact(&r) {
            continue;
        }
        for a in coreflective_subsets(lattice, &b, limits)? {
            pairs.push((r.clone(), a));
        }
    }
    Ok(pairs)
}

/// Pairs `(B, A)` with `B` coreflective and semi-right-exact and `A`
/// reflective in `B`.
pub fn prop15_dual_pairs(
    lattice: &Arc<FiniteLattice>,
    limits: Limits,
) -> Result<Vec<(Coreflection, ObjectSet)>, EnumerationError> {
    let mut pairs = Vec::new();
    for b in coreflective_subsets(lattice, &lattice.all_objects(), limits)? {
        let c = Coreflection::new(lattice.clone(), b.clone()).expect("coreflective by construction");
        if !is_semi_right_exact(&c) {
            continue;
        }
        for a in reflective_subsets(lattice, &b, limits)? {
            pairs.push((c.clone(), a));
        }
    }
    Ok(pairs)
}

/// For every reflective subposet, the localised discrete structure is
/// right proper exactly when the reflection is semi-left-exact.
pub fn verify_lemma_1(lattice: &Arc<FiniteLattice>, limits: Limits) -> Result<VerificationReport, VerifyError> {
    let discrete = ModelStructure::discrete(lattice.clone());
    let subsets = reflective_subsets(lattice, &lattice.all_objects(), limits)?;
    let mut exact = 0;
    for b in &subsets {
        let loc = is_locality(&discrete, b)
            .map_err(|e| VerifyError::failed("reflective subposet is a locality", e.to_string()))?;
        let m = localise_from_locality(&loc)
            .map_err(|e| VerifyError::failed("localising the discrete structure", e.to_string()))?;
        let sle = is_semi_left_exact(loc.reflection());
        exact += usize::from(sle);
        ensure(m.is_right_proper() == sle, "right proper iff semi-left-exact", || {
            format!(
                "{{{}}}: right proper {}, semi-left-exact {}",
                lattice.format_objects(b).join(","),
                m.is_right_proper(),
                sle
            )
        })?;
    }
    Ok(VerificationReport::new("lemma1", lattice.name())
        .count("reflections", subsets.len())
        .count("semi_left_exact", exact))
}

/// Runs both builders on every admissible pair and checks the three
/// object-set identities.
pub fn verify_prop15(lattice: &Arc<FiniteLattice>, limits: Limits) -> Result<VerificationReport, VerifyError> {
    let fmt = |s: &ObjectSet| lattice.format_objects(s).join(",");
    let pairs = prop15_pairs(lattice, limits)?;
    for (r, a) in &pairs {
        prop15_build(r, a).map_err(|e| {
            VerifyError::failed(
                "two-step build",
                format!("B = {{{}}}, A = {{{}}}: {e}", fmt(r.subobjects()), fmt(a)),
            )
        })?;
    }
    let dual_pairs = prop15_dual_pairs(lattice, limits)?;
    for (c, a) in &dual_pairs {
        let m = prop15_dual_build(c, a).map_err(|e| {
            VerifyError::failed(
                "dual two-step build",
                format!("B = {{{}}}, A = {{{}}}: {e}", fmt(c.subobjects()), fmt(a)),
            )
        })?;
        let reflected_into = lattice.objects_where(|x| a.contains(c.apply(x)));
        ensure(
            &m.cofibrant_objects() == c.subobjects()
                && m.fibrant_objects() == reflected_into
                && &m.bifibrant_objects() == a,
            "dual two-step object sets",
            || format!("B = {{{}}}, A = {{{}}}", fmt(c.subobjects()), fmt(a)),
        )?;
    }
    Ok(VerificationReport::new("prop15", lattice.name())
        .count("pairs", pairs.len())
        .count("dual_pairs", dual_pairs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::parse("b2", "objects: bot a b top\nle: bot<=a, bot<=b, a<=top, b<=top").unwrap())
    }

    #[test]
    fn chains_are_semi_left_exact() {
        let l = Arc::new(FiniteLattice::chain("c4", 4));
        for b in reflective_subsets(&l, &l.all_objects(), Limits::default()).unwrap() {
            assert!(is_semi_left_exact(&Reflection::new(l.clone(), b).unwrap()));
        }
    }

    #[test]
    fn identity_reflection_is_semi_left_exact() {
        let l = b2();
        assert!(is_semi_left_exact(
            &Reflection::new(l.clone(), l.all_objects()).unwrap()
        ));
    }

    #[test]
    fn two_step_on_the_chain() {
        let l = Arc::new(FiniteLattice::chain("c4", 4));
        let r = Reflection::new(l.clone(), l.parse_object_list("1,3").unwrap()).unwrap();
        let m = prop15_build(&r, &l.parse_object_list("1").unwrap()).unwrap();
        assert_eq!(m.fibrant_objects(), l.parse_object_list("1,3").unwrap());
        assert_eq!(m.cofibrant_objects(), l.parse_object_list("0,1").unwrap());
        assert_eq!(m.bifibrant_objects(), l.parse_object_list("1").unwrap());
    }

    #[test]
    fn two_step_on_the_diamond() {
        let l = b2();
        let r = Reflection::new(l.clone(), l.parse_object_list("a,top").unwrap()).unwrap();
        let m = prop15_build(&r, &l.parse_object_list("a").unwrap()).unwrap();
        assert_eq!(m.fibrant_objects(), l.parse_object_list("a,top").unwrap());
        assert_eq!(m.cofibrant_objects(), l.parse_object_list("bot,a").unwrap());
        assert_eq!(m.bifibrant_objects(), l.parse_object_list("a").unwrap());
    }

    #[test]
    fn trivial_two_step() {
        let l = b2();
        let r = Reflection::new(l.clone(), l.all_objects()).unwrap();
        assert_eq!(prop15_build(&r, &l.all_objects()).unwrap(), ModelStructure::discrete(l));
    }

    #[test]
    fn lemma_and_pairs_on_small_lattices() {
        for l in [
            Arc::new(FiniteLattice::chain("c1", 1)),
            Arc::new(FiniteLattice::chain("c2", 2)),
            b2(),
        ] {
            let report = verify_lemma_1(&l, Limits::default()).unwrap();
            let expected = match l.len() {
                1 => 1,
                2 => 2,
                _ => 7,
            };
            assert_eq!(report.counts["reflections"], expected);
            verify_prop15(&l, Limits::default()).unwrap();
        }
    }
}
