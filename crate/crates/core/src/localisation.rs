//! Localities and Bousfield localisations.
//!
//! A localisation keeps the cofibrations and enlarges the acyclic
//! cofibrations; it is determined by its fibrant objects. The pipeline
//! restricts the base to the local objects, lifts back injectively along
//! the reflector and mixes the result with the base.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::class::{MapClass, ObjectSet};
use crate::factorisation::{check_subset_guardrail, EnumerationError, Limits};
use crate::galois::{GaloisConnection, Side};
use crate::lattice::{FiniteLattice, LatticeMap};
use crate::model::{enumerate_model_structures, ModelStructure, PropernessWitness};
use crate::report::{ensure, VerificationReport, VerifyError};
use crate::transfer::{injective_lift, mix, projective_lift, Keep, LiftFailure, MixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectionError {
    #[error("{0} has no least member of the subset above it")]
    NoLeastAbove(String),
}

/// A reflective subposet with its reflector and the induced sublattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    ambient: Arc<FiniteLattice>,
    subobjects: ObjectSet,
    reflector: Vec<usize>,
    sub: Arc<FiniteLattice>,
    embedding: Vec<usize>,
}

impl Reflection {
    pub fn new(ambient: Arc<FiniteLattice>, subobjects: ObjectSet) -> Result<Self, ReflectionError> {
        let reflector = ambient
            .objects()
            .map(|x| {
                ambient
                    .least_above(&subobjects, x)
                    .ok_or_else(|| ReflectionError::NoLeastAbove(ambient.label(x).to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let name = format!(
            "{}/{{{}}}",
            ambient.name(),
            ambient.format_objects(&subobjects).join(",")
        );
        let (sub, embedding) = ambient
            .induced(name, &subobjects)
            .expect("a reflective subposet of a finite lattice is a lattice");
        Ok(Self {
            ambient,
            subobjects,
            reflector,
            sub: Arc::new(sub),
            embedding,
        })
    }

    pub fn ambient(&self) -> &Arc<FiniteLattice> {
        &self.ambient
    }

    pub fn subobjects(&self) -> &ObjectSet {
        &self.subobjects
    }

    pub fn reflector(&self) -> &[usize] {
        &self.reflector
    }

    pub fn apply(&self, x: usize) -> usize {
        self.reflector[x]
    }

    /// The unit `X -> R(X)`.
    pub fn unit(&self, x: usize) -> LatticeMap {
        LatticeMap::new(x, self.reflector[x])
    }

    /// Maps whose endpoints have the same reflection.
    pub fn inverted(&self) -> MapClass {
        self.ambient
            .class_where(|f| self.reflector[f.source] == self.reflector[f.target])
    }

    /// The subposet as a lattice in its own right.
    pub fn sublattice(&self) -> &Arc<FiniteLattice> {
        &self.sub
    }

    /// Sublattice index to ambient index.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// Reflector ⊣ inclusion: lower is the ambient lattice, upper the sublattice.
    pub fn connection(&self) -> GaloisConnection {
        let position = |a: usize| {
            self.embedding
                .binary_search(&a)
                .expect("reflector lands in the subposet")
        };
        let left = self.reflector.iter().map(|&r| position(r)).collect();
        GaloisConnection::new(self.ambient.clone(), self.sub.clone(), left, self.embedding.clone())
            .expect("a reflection is a Galois connection")
    }
}

/// Subsets of `universe` (in mask order) for which every member of
/// `universe` has a least element of the subset above it.
pub fn reflective_subsets(
    lattice: &FiniteLattice,
    universe: &ObjectSet,
    limits: Limits,
) -> Result<Vec<ObjectSet>, EnumerationError> {
    subsets_where(lattice, universe, limits, |s| {
        universe.iter().all(|x| lattice.least_above(s, x).is_some())
    })
}

pub(crate) fn subsets_where(
    lattice: &FiniteLattice,
    universe: &ObjectSet,
    limits: Limits,
    pred: impl Fn(&ObjectSet) -> bool + Sync,
) -> Result<Vec<ObjectSet>, EnumerationError> {
    check_subset_guardrail(lattice, universe.len(), limits)?;
    let members: Vec<usize> = universe.iter().collect();
    Ok((0..1u64 << members.len())
        .into_par_iter()
        .filter_map(|mask| {
            let set = ObjectSet::from_indices(
                lattice.len(),
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x),
            );
            pred(&set).then_some(set)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalityRejection {
    #[error(transparent)]
    NotReflective(#[from] ReflectionError),
    #[error("{0} is not fibrant in the base")]
    NotFibrant(String),
    #[error("{local} is local and {other} is not, yet they are weakly equivalent")]
    NotSaturated { local: String, other: String },
}

/// A reflective subposet of fibrant objects, closed under weak equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locality {
    base: ModelStructure,
    reflection: Reflection,
}

/// Checks that `subset` is a locality for `base`.
pub fn is_locality(base: &ModelStructure, subset: &ObjectSet) -> Result<Locality, LocalityRejection> {
    let l = base.lattice();
    let fibrant = base.fibrant_objects();
    if let Some(x) = subset.difference(&fibrant).first() {
        return Err(LocalityRejection::NotFibrant(l.label(x).to_owned()));
    }
    let reflection = Reflection::new(l.clone(), subset.clone())?;
    let q = base.replacements().cofibrant;
    for x in subset.iter() {
        if let Some(y) = fibrant.iter().find(|&y| q[y] == q[x] && !subset.contains(y)) {
            return Err(LocalityRejection::NotSaturated {
                local: l.label(x).to_owned(),
                other: l.label(y).to_owned(),
            });
        }
    }
    Ok(Locality {
        base: base.clone(),
        reflection,
    })
}

impl Locality {
    pub fn base(&self) -> &ModelStructure {
        &self.base
    }

    pub fn reflection(&self) -> &Reflection {
        &self.reflection
    }

    pub fn locals(&self) -> &ObjectSet {
        &self.reflection.subobjects
    }

    /// A weak equivalence whose reflection is not one.
    pub fn homotopy_witness(&self) -> Option<LatticeMap> {
        let r = &self.reflection.reflector;
        self.base
            .weak_equivalences()
            .iter()
            .map(|i| self.base.lattice().map_at(i))
            .find(|f| !self.base.is_weak_equivalence(LatticeMap::new(r[f.source], r[f.target])))
    }

    pub fn is_homotopical(&self) -> bool {
        self.homotopy_witness().is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalisationError {
    #[error("base is not left proper: {0}")]
    NotLeftProper(PropernessWitness),
    #[error("base is not right proper: {0}")]
    NotRightProper(PropernessWitness),
    #[error("not homotopical: {0} is a weak equivalence whose reflection is not")]
    NotHomotopical(String),
    #[error("locality rejected: {0}")]
    Rejected(#[from] LocalityRejection),
    #[error(transparent)]
    Lift(#[from] LiftFailure),
    #[error(transparent)]
    Mix(#[from] MixError),
    #[error("internal invariant `{check}` violated: {witness}")]
    Invariant { check: &'static str, witness: String },
}

fn invariant(cond: bool, check: &'static str, witness: impl FnOnce() -> String) -> Result<(), LocalisationError> {
    if cond {
        Ok(())
    } else {
        Err(LocalisationError::Invariant {
            check,
            witness: witness(),
        })
    }
}

fn class_diff(l: &FiniteLattice, a: &MapClass, b: &MapClass) -> String {
    let first = a.difference(b).first().or_else(|| b.difference(a).first());
    first.map(|i| l.format_map(l.map_at(i))).unwrap_or_default()
}

fn object_diff(l: &FiniteLattice, a: &ObjectSet, b: &ObjectSet) -> String {
    let first = a.difference(b).first().or_else(|| b.difference(a).first());
    first.map(|i| l.label(i).to_owned()).unwrap_or_default()
}

/// The base restricted to the local objects: `W = TF` the maps inverted by
/// `Q`, `F` all maps, `C = LLP(W)`.
pub fn restrict_to_locality(loc: &Locality) -> Result<ModelStructure, LocalisationError> {
    let sub = loc.reflection.sublattice().clone();
    let emb = loc.reflection.embedding();
    let q = loc.base.replacements().cofibrant;
    let w = sub.class_where(|f| q[emb[f.source]] == q[emb[f.target]]);
    let c = sub.llp(&w);
    let restricted =
        ModelStructure::new(sub.clone(), c, w, sub.all_maps()).map_err(|e| LocalisationError::Invariant {
            check: "restriction is a model structure",
            witness: e.to_string(),
        })?;
    invariant(
        restricted.acyclic_cofibrations() == sub.identities(),
        "restricted acyclic cofibrations are identities",
        || class_diff(&sub, &restricted.acyclic_cofibrations(), &sub.identities()),
    )?;
    let lifted = projective_lift(&loc.reflection.connection(), Side::Right, &loc.base)?;
    invariant(lifted == restricted, "restriction is the projective lift", || {
        format!("{} vs {}", lifted.describe(), restricted.describe())
    })?;
    Ok(restricted)
}

/// Localisation with fibrant objects the locals of a homotopical locality.
pub fn localise_from_locality(loc: &Locality) -> Result<ModelStructure, LocalisationError> {
    let base = &loc.base;
    let l = base.lattice();
    if let Some(w) = loc.homotopy_witness() {
        return Err(LocalisationError::NotHomotopical(l.format_map(w)));
    }
    let restricted = restrict_to_locality(loc)?;
    let lifted = injective_lift(&loc.reflection.connection(), Side::Left, &restricted)?;
    let inverted = loc.reflection.inverted();
    invariant(
        lifted.acyclic_cofibrations() == inverted,
        "lifted acyclic cofibrations are the maps the reflector inverts",
        || class_diff(l, &lifted.acyclic_cofibrations(), &inverted),
    )?;
    invariant(
        &lifted.fibrant_objects() == loc.locals(),
        "lifted fibrant objects are the locals",
        || object_diff(l, &lifted.fibrant_objects(), loc.locals()),
    )?;
    let result = mix(base, &lifted, Keep::Cofibrations)?;
    invariant(
        result.cofibrations() == base.cofibrations(),
        "localisation keeps the cofibrations",
        || class_diff(l, result.cofibrations(), base.cofibrations()),
    )?;
    invariant(
        &result.fibrant_objects() == loc.locals(),
        "localised fibrant objects are the locals",
        || object_diff(l, &result.fibrant_objects(), loc.locals()),
    )?;
    let q = base.replacements().cofibrant;
    let r = loc.reflection.reflector();
    let expected = l.class_where(|f| r[q[f.source]] == r[q[f.target]]);
    invariant(
        result.weak_equivalences() == &expected,
        "localised weak equivalences are the maps inverted by reflecting the cofibrant replacement",
        || class_diff(l, result.weak_equivalences(), &expected),
    )?;
    Ok(result)
}

fn tc_order(a: &ModelStructure, b: &ModelStructure) -> std::cmp::Ordering {
    let (ta, tb) = (a.acyclic_cofibrations(), b.acyclic_cofibrations());
    ta.len().cmp(&tb.len()).then_with(|| ta.lex_cmp(&tb))
}

/// Members of `census` with the cofibrations of `base` and at least its
/// acyclic cofibrations, ordered by size and then lexicographically on the
/// acyclic cofibrations.
pub fn localisations_among(base: &ModelStructure, census: &[ModelStructure]) -> Vec<ModelStructure> {
    let tc = base.acyclic_cofibrations();
    let mut out: Vec<ModelStructure> = census
        .iter()
        .filter(|m| m.cofibrations() == base.cofibrations() && tc.is_subset(&m.acyclic_cofibrations()))
        .cloned()
        .collect();
    out.sort_by(tc_order);
    out
}

pub fn enumerate_localisations(base: &ModelStructure, limits: Limits) -> Result<Vec<ModelStructure>, EnumerationError> {
    let census = enumerate_model_structures(base.lattice(), limits)?;
    Ok(localisations_among(base, &census))
}

/// Every locality for `base`, in mask order over the fibrant objects.
pub fn enumerate_localities(base: &ModelStructure, limits: Limits) -> Result<Vec<Locality>, EnumerationError> {
    let l = base.lattice();
    let candidates = subsets_where(l, &base.fibrant_objects(), limits, |s| {
        l.objects().all(|x| l.least_above(s, x).is_some())
    })?;
    Ok(candidates.iter().filter_map(|s| is_locality(base, s).ok()).collect())
}

pub fn enumerate_homotopical_localities(
    base: &ModelStructure,
    limits: Limits,
) -> Result<Vec<Locality>, EnumerationError> {
    let mut locs = enumerate_localities(base, limits)?;
    locs.retain(Locality::is_homotopical);
    Ok(locs)
}

fn pipeline(check: &str) -> impl Fn(LocalisationError) -> VerifyError + '_ {
    move |e| VerifyError::failed(check, e.to_string())
}

/// Localisations of `base` correspond to its homotopical localities via
/// their fibrant objects, reversing order, with [`localise_from_locality`]
/// as inverse.
pub fn verify_theorem_1(base: &ModelStructure, limits: Limits) -> Result<VerificationReport, VerifyError> {
    let census = enumerate_model_structures(base.lattice(), limits)?;
    verify_theorem_1_with(base, &census, limits)
}

pub fn verify_theorem_1_with(
    base: &ModelStructure,
    census: &[ModelStructure],
    limits: Limits,
) -> Result<VerificationReport, VerifyError> {
    let l = base.lattice();
    let localisations = localisations_among(base, census);
    let localities = enumerate_homotopical_localities(base, limits)?;
    let fibrant: Vec<ObjectSet> = localisations.iter().map(ModelStructure::fibrant_objects).collect();

    for (m, f) in localisations.iter().zip(&fibrant) {
        let loc =
            is_locality(base, f).map_err(|e| VerifyError::failed("fibrant objects form a locality", e.to_string()))?;
        ensure(
            loc.is_homotopical(),
            "fibrant objects form a homotopical locality",
            || l.format_objects(f).join(","),
        )?;
        let back = localise_from_locality(&loc).map_err(pipeline("localising a localisation's locality"))?;
        ensure(&back == m, "localisation round trip", || m.describe())?;
    }
    let distinct: HashSet<&ObjectSet> = fibrant.iter().collect();
    ensure(
        distinct.len() == fibrant.len(),
        "fibrant objects determine the localisation",
        || "two localisations share their fibrant objects".into(),
    )?;
    for loc in &localities {
        ensure(
            distinct.contains(loc.locals()),
            "every homotopical locality is reached",
            || l.format_objects(loc.locals()).join(","),
        )?;
        let m = localise_from_locality(loc).map_err(pipeline("localising a homotopical locality"))?;
        ensure(&m.fibrant_objects() == loc.locals(), "locality round trip", || {
            l.format_objects(loc.locals()).join(",")
        })?;
    }
    ensure(localities.len() == localisations.len(), "bijection", || {
        format!(
            "{} localisations, {} homotopical localities",
            localisations.len(),
            localities.len()
        )
    })?;
    for (i, a) in localisations.iter().enumerate() {
        for (j, b) in localisations.iter().enumerate() {
            let tc = a.acyclic_cofibrations().is_subset(&b.acyclic_cofibrations());
            let locals = fibrant[j].is_subset(&fibrant[i]);
            ensure(tc == locals, "order reversal", || {
                format!(
                    "{{{}}} vs {{{}}}",
                    l.format_objects(&fibrant[i]).join(","),
                    l.format_objects(&fibrant[j]).join(",")
                )
            })?;
        }
    }
    Ok(VerificationReport::new("thm1", l.name())
        .count("localisations", localisations.len())
        .count("homotopical_localities", localities.len()))
}

/// For a left proper `base`: localisations correspond to reflective
/// subposets of the bifibrant objects, every locality is homotopical, and
/// the supporting lemmas hold on every locality.
pub fn verify_theorem_3(base: &ModelStructure, limits: Limits) -> Result<VerificationReport, VerifyError> {
    let census = enumerate_model_structures(base.lattice(), limits)?;
    verify_theorem_3_with(base, &census, limits)
}

pub fn verify_theorem_3_with(
    base: &ModelStructure,
    census: &[ModelStructure],
    limits: Limits,
) -> Result<VerificationReport, VerifyError> {
    let l = base.lattice();
    if let Some(w) = base.left_properness_witness() {
        return Err(VerifyError::Precondition(format!("base is not left proper: {w}")));
    }
    let fmt_objects = |s: &ObjectSet| format!("{{{}}}", l.format_objects(s).join(","));
    let localisations = localisations_among(base, census);
    let bifibrant = base.bifibrant_objects();
    let cofibrant = base.cofibrant_objects();
    let targets = reflective_subsets(l, &bifibrant, limits)?;
    let target_set: HashSet<&ObjectSet> = targets.iter().collect();

    let images: Vec<ObjectSet> = localisations.iter().map(ModelStructure::bifibrant_objects).collect();
    let image_set: HashSet<&ObjectSet> = images.iter().collect();
    ensure(
        image_set.len() == images.len(),
        "bifibrant objects determine the localisation",
        || "two localisations share their bifibrant objects".into(),
    )?;
    ensure(
        image_set == target_set,
        "bifibrant objects are exactly the reflective subposets",
        || {
            targets
                .iter()
                .chain(&images)
                .find(|s| image_set.contains(s) != target_set.contains(s))
                .map(fmt_objects)
                .unwrap_or_default()
        },
    )?;
    for m in &localisations {
        ensure(
            m.is_left_proper(),
            "localisations of a left proper base are left proper",
            || m.describe(),
        )?;
    }

    let localities = enumerate_localities(base, limits)?;
    let restricted_images: Vec<ObjectSet> = localities
        .iter()
        .map(|loc| loc.locals().intersection(&cofibrant))
        .collect();
    let restricted_set: HashSet<&ObjectSet> = restricted_images.iter().collect();
    ensure(
        restricted_set.len() == localities.len() && restricted_set == target_set,
        "localities correspond to reflective subposets of the bifibrant objects",
        || {
            format!(
                "{} localities, {} reflective subposets",
                localities.len(),
                targets.len()
            )
        },
    )?;
    for (i, a) in localities.iter().enumerate() {
        for (j, b) in localities.iter().enumerate() {
            let before = a.locals().is_subset(b.locals());
            let after = restricted_images[i].is_subset(&restricted_images[j]);
            ensure(
                before == after,
                "cutting down to cofibrant objects preserves order",
                || format!("{} vs {}", fmt_objects(a.locals()), fmt_objects(b.locals())),
            )?;
        }
    }

    let reps = base.replacements();
    let fibrant = base.fibrant_objects();
    for loc in &localities {
        let locals = loc.locals();
        let ref_tab = loc.reflection().reflector();
        if let Some(w) = loc.homotopy_witness() {
            return Err(VerifyError::failed(
                "localities over a left proper base are homotopical",
                format!("{}: {}", fmt_objects(locals), l.format_map(w)),
            ));
        }
        for x in fibrant.iter() {
            ensure(
                locals.contains(x) == locals.contains(reps.cofibrant[x]),
                "cofibrant replacement preserves and reflects locality",
                || format!("{}: {}", fmt_objects(locals), l.label(x)),
            )?;
        }
        for x in l.objects() {
            ensure(
                base.is_cofibration(loc.reflection().unit(x)),
                "reflection units are cofibrations",
                || format!("{}: {}", fmt_objects(locals), l.format_map(loc.reflection().unit(x))),
            )?;
        }
        for c in base.cofibrations().iter().map(|i| l.map_at(i)) {
            let image = LatticeMap::new(ref_tab[c.source], ref_tab[c.target]);
            ensure(
                base.is_cofibration(image),
                "the reflector preserves cofibrations",
                || format!("{}: {}", fmt_objects(locals), l.format_map(c)),
            )?;
        }
        for f in base.weak_equivalences().iter().map(|i| l.map_at(i)) {
            if !fibrant.contains(f.source) || !fibrant.contains(f.target) {
                continue;
            }
            let corner = reps.fibrant[l.join(f.target, ref_tab[f.source])];
            ensure(
                corner == ref_tab[f.target],
                "reflection squares are pushouts among fibrant objects",
                || format!("{}: {}", fmt_objects(locals), l.format_map(f)),
            )?;
        }
        let m = localise_from_locality(loc).map_err(pipeline("localising a locality"))?;
        ensure(
            m.bifibrant_objects() == locals.intersection(&cofibrant),
            "localised bifibrant objects are the cofibrant locals",
            || fmt_objects(locals),
        )?;
    }

    let maximal = is_locality(base, &fibrant)
        .map_err(|e| VerifyError::failed("fibrant objects form a locality", e.to_string()))?;
    let on_fibrant = restrict_to_locality(&maximal).map_err(pipeline("restricting to fibrant objects"))?;
    ensure(
        on_fibrant.is_left_proper(),
        "restriction to fibrant objects is left proper",
        || {
            on_fibrant
                .left_properness_witness()
                .map(|w| w.to_string())
                .unwrap_or_default()
        },
    )?;

    ensure(localisations.len() == targets.len(), "bijection", || {
        format!(
            "{} localisations, {} reflective subposets",
            localisations.len(),
            targets.len()
        )
    })?;
    Ok(VerificationReport::new("thm3", l.name())
        .count("localisations", localisations.len())
        .count("reflective_subcats", targets.len()))
}

/// The derived hom `Q(a) <= R(b)` of a structure, with its replacement tables.
#[derive(Debug, Clone)]
pub struct DerivedHom {
    lattice: Arc<FiniteLattice>,
    q: Vec<usize>,
    r: Vec<usize>,
}

impl DerivedHom {
    pub fn new(m: &ModelStructure) -> Self {
        let reps = m.replacements();
        Self {
            lattice: m.lattice().clone(),
            q: reps.cofibrant,
            r: reps.fibrant,
        }
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(self.q[a], self.r[b])
    }

    /// Whether `f` induces a bijection on derived homs into `x`.
    pub fn left_orthogonal(&self, f: LatticeMap, x: usize) -> bool {
        self.holds(f.target, x) == self.holds(f.source, x)
    }

    /// Whether `f` induces a bijection on derived homs out of `x`.
    pub fn right_orthogonal(&self, x: usize, f: LatticeMap) -> bool {
        self.holds(x, f.source) == self.holds(x, f.target)
    }
}

pub fn derived_hom(m: &ModelStructure, a: usize, b: usize) -> bool {
    DerivedHom::new(m).holds(a, b)
}

pub fn s_local_objects(m: &ModelStructure, s: &MapClass) -> ObjectSet {
    let l = m.lattice();
    let dh = DerivedHom::new(m);
    l.objects_where(|x| s.iter().all(|f| dh.left_orthogonal(l.map_at(f), x)))
}

pub fn s_local_equivalences(m: &ModelStructure, s: &MapClass) -> MapClass {
    let l = m.lattice();
    let dh = DerivedHom::new(m);
    let locals = s_local_objects(m, s);
    l.class_where(|f| locals.iter().all(|x| dh.left_orthogonal(f, x)))
}

/// Localisation at a set of maps over a left proper base: fibrant objects
/// are the `S`-local fibrant objects and weak equivalences the `S`-local
/// equivalences.
pub fn s_localise(m: &ModelStructure, s: &MapClass) -> Result<ModelStructure, LocalisationError> {
    if let Some(w) = m.left_properness_witness() {
        return Err(LocalisationError::NotLeftProper(w));
    }
    let l = m.lattice();
    let qr = m.replacements().qr();
    let normalised = l.class_from_maps(s.iter().map(|i| {
        let f = l.map_at(i);
        LatticeMap::new(qr[f.source], qr[f.target])
    }));
    let local = s_local_objects(m, s);
    invariant(
        s_local_objects(m, &normalised) == local,
        "replacing S by its fibrant-cofibrant replacements changes nothing",
        || object_diff(l, &s_local_objects(m, &normalised), &local),
    )?;
    let locals = local.intersection(&m.fibrant_objects());
    let loc = is_locality(m, &locals)?;
    let result = localise_from_locality(&loc)?;
    let equivalences = s_local_equivalences(m, s);
    invariant(
        result.weak_equivalences() == &equivalences,
        "weak equivalences are the S-local equivalences",
        || class_diff(l, result.weak_equivalences(), &equivalences),
    )?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::parse("b2", "objects: bot a b top\nle: bot<=a, bot<=b, a<=top, b<=top").unwrap())
    }

    fn objects(l: &FiniteLattice, csv: &str) -> ObjectSet {
        l.parse_object_list(csv).unwrap()
    }

    #[test]
    fn locality_examples_on_the_diamond() {
        let l = b2();
        let base = ModelStructure::discrete(l.clone());
        let loc = is_locality(&base, &objects(&l, "a,top")).unwrap();
        let r: Vec<&str> = loc.reflection().reflector().iter().map(|&x| l.label(x)).collect();
        assert_eq!(r, ["a", "a", "top", "top"]);
        assert!(loc.is_homotopical());
        assert_eq!(
            is_locality(&base, &objects(&l, "a,b,top")),
            Err(LocalityRejection::NotReflective(ReflectionError::NoLeastAbove(
                "bot".into()
            )))
        );
    }

    #[test]
    fn restriction_to_a_chain() {
        let l = b2();
        let base = ModelStructure::discrete(l.clone());
        let loc = is_locality(&base, &objects(&l, "a,top")).unwrap();
        let restricted = restrict_to_locality(&loc).unwrap();
        let sub = restricted.lattice();
        assert_eq!(sub.labels(), ["a", "top"]);
        assert_eq!(restricted, ModelStructure::discrete(sub.clone()));
    }

    #[test]
    fn localising_the_diamond() {
        let l = b2();
        let base = ModelStructure::discrete(l.clone());
        let loc = is_locality(&base, &objects(&l, "a,top")).unwrap();
        let m = localise_from_locality(&loc).unwrap();
        assert_eq!(m.cofibrations(), &l.all_maps());
        let mut w = l.identities();
        w.union_with(&l.parse_map_list("bot<=a, b<=top").unwrap());
        assert_eq!(m.weak_equivalences(), &w);
        assert_eq!(m.fibrant_objects(), objects(&l, "a,top"));
        assert_eq!(s_localise(&base, &l.parse_map_list("bot<=a").unwrap()).unwrap(), m);
    }

    #[test]
    fn localising_the_chain() {
        let l = Arc::new(FiniteLattice::chain("c2", 2));
        let base = ModelStructure::discrete(l.clone());
        let loc = is_locality(&base, &objects(&l, "1")).unwrap();
        let m = localise_from_locality(&loc).unwrap();
        assert_eq!(
            m,
            ModelStructure::new(l.clone(), l.all_maps(), l.all_maps(), l.identities()).unwrap()
        );
        let maximal = is_locality(&base, &l.all_objects()).unwrap();
        assert_eq!(localise_from_locality(&maximal).unwrap(), base);
        assert_eq!(enumerate_localisations(&base, Limits::default()).unwrap().len(), 2);
    }

    #[test]
    fn derived_hom_examples() {
        let l = Arc::new(FiniteLattice::chain("c2", 2));
        let m = ModelStructure::new(l.clone(), l.all_maps(), l.all_maps(), l.identities()).unwrap();
        assert!(derived_hom(&m, 1, 0));
        let d = ModelStructure::discrete(l);
        assert!(!derived_hom(&d, 1, 0));
        assert!(derived_hom(&d, 0, 1));
    }

    #[test]
    fn s_local_truth_tables() {
        let l = b2();
        let base = ModelStructure::discrete(l.clone());
        assert_eq!(s_local_objects(&base, &l.no_maps()), l.all_objects());
        assert_eq!(s_local_equivalences(&base, &l.no_maps()), l.identities());
        let s = l.parse_map_list("bot<=a").unwrap();
        assert_eq!(s_local_objects(&base, &s), objects(&l, "a,top"));
        assert_eq!(
            s_local_equivalences(&base, &s),
            l.parse_map_list("bot<=bot, a<=a, b<=b, top<=top, bot<=a, b<=top")
                .unwrap()
        );
    }

    #[test]
    fn diamond_theorem_counts() {
        let l = b2();
        let base = ModelStructure::discrete(l);
        let r1 = verify_theorem_1(&base, Limits::default()).unwrap();
        assert_eq!(r1.counts["localisations"], 7);
        let r3 = verify_theorem_3(&base, Limits::default()).unwrap();
        assert_eq!(r3.counts["reflective_subcats"], 7);
    }
}
