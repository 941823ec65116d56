//! Exhaustive checkers for the remaining statements, and a dispatcher that
//! runs any checker against one base or every structure in a census.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::colocalisation::{
    colocalisations_among, k_colocal_equivalences, k_colocalise, verify_theorem_2_with, verify_theorem_4_with,
};
use crate::constructions::{verify_lemma_1, verify_prop15};
use crate::factorisation::Limits;
use crate::lattice::{FiniteLattice, LatticeMap};
use crate::localisation::{localisations_among, s_localise, verify_theorem_1_with, verify_theorem_3_with};
use crate::model::{enumerate_model_structures, is_model_structure, ModelStructure};
use crate::report::{ensure, VerificationReport, VerifyError};
use crate::transfer::{mix, DiagonalLifting, Keep, MixError};

/// The checkable statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Prop5,
    Prop11,
    Prop15,
    Lemma1,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::Thm1,
        Theorem::Thm2,
        Theorem::Thm3,
        Theorem::Thm4,
        Theorem::Thm5,
        Theorem::Thm6,
        Theorem::Prop5,
        Theorem::Prop11,
        Theorem::Prop15,
        Theorem::Lemma1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Thm2 => "thm2",
            Theorem::Thm3 => "thm3",
            Theorem::Thm4 => "thm4",
            Theorem::Thm5 => "thm5",
            Theorem::Thm6 => "thm6",
            Theorem::Prop5 => "prop5",
            Theorem::Prop11 => "prop11",
            Theorem::Prop15 => "prop15",
            Theorem::Lemma1 => "lemma1",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown statement `{s}`"))
    }
}

/// Replacement tables, fibrancy, Quillen-style preservation and the `QR`
/// description of weak equivalences, on one structure.
pub fn check_prop5(m: &ModelStructure) -> Result<(), VerifyError> {
    let l = m.lattice();
    let d = m.describe();
    let reps = m.replacements();
    let (r, q) = (&reps.fibrant, &reps.cofibrant);
    let fmt = |f: LatticeMap| format!("{}\n{d}", l.format_map(f));
    let image = |t: &[usize], f: LatticeMap| LatticeMap::new(t[f.source], t[f.target]);
    let (top, bottom) = (l.top(), l.bottom());

    for x in l.objects() {
        ensure(
            m.acyclic_cofibrations().contains(l.map_index(reps.unit(x))) && m.is_fibration(LatticeMap::new(r[x], top)),
            "fibrant replacement factors X -> top",
            || fmt(reps.unit(x)),
        )?;
        ensure(
            m.acyclic_fibrations().contains(l.map_index(reps.counit(x)))
                && m.is_cofibration(LatticeMap::new(bottom, q[x])),
            "cofibrant replacement factors bottom -> X",
            || fmt(reps.counit(x)),
        )?;
    }
    let fibrant = m.fibrant_objects();
    let cofibrant = m.cofibrant_objects();
    let bifibrant = m.bifibrant_objects();
    for f in l.maps().iter().copied() {
        ensure(
            l.leq(r[f.source], r[f.target]) && l.leq(q[f.source], q[f.target]),
            "replacements are monotone",
            || fmt(f),
        )?;
        if fibrant.contains(f.source) && fibrant.contains(f.target) {
            ensure(m.is_fibration(f), "maps between fibrant objects are fibrations", || {
                fmt(f)
            })?;
        }
        if cofibrant.contains(f.source) && cofibrant.contains(f.target) {
            ensure(
                m.is_cofibration(f),
                "maps between cofibrant objects are cofibrations",
                || fmt(f),
            )?;
        }
        let w = m.is_weak_equivalence(f);
        ensure(
            w == m.is_weak_equivalence(image(r, f)) && w == m.is_weak_equivalence(image(q, f)),
            "replacements preserve and reflect weak equivalences",
            || fmt(f),
        )?;
        if m.is_cofibration(f) {
            ensure(
                m.is_cofibration(image(r, f)),
                "fibrant replacement preserves cofibrations",
                || fmt(f),
            )?;
            if w {
                ensure(
                    r[f.source] == r[f.target],
                    "fibrant replacement inverts acyclic cofibrations",
                    || fmt(f),
                )?;
            }
        }
        if m.is_fibration(f) {
            ensure(
                m.is_fibration(image(q, f)),
                "cofibrant replacement preserves fibrations",
                || fmt(f),
            )?;
            if w {
                ensure(
                    q[f.source] == q[f.target],
                    "cofibrant replacement inverts acyclic fibrations",
                    || fmt(f),
                )?;
            }
        }
        if w && bifibrant.contains(f.source) && bifibrant.contains(f.target) {
            ensure(
                f.is_identity(),
                "weak equivalences between bifibrant objects are identities",
                || fmt(f),
            )?;
        }
        ensure(
            w == m.is_weq_via_qr(f),
            "weak equivalences are the maps inverted by QR",
            || fmt(f),
        )?;
    }
    ensure(reps.qr() == reps.rq(), "QR = RQ", || d.clone())?;
    for x in l.objects() {
        for y in fibrant.iter() {
            ensure(
                l.leq(x, y) == l.leq(r[x], y),
                "fibrant objects are reflective via R",
                || format!("{} {}", l.label(x), l.label(y)),
            )?;
        }
        for y in cofibrant.iter() {
            ensure(
                l.leq(y, x) == l.leq(y, q[x]),
                "cofibrant objects are coreflective via Q",
                || format!("{} {}", l.label(y), l.label(x)),
            )?;
        }
    }
    Ok(())
}

pub fn verify_prop5(lattice: &FiniteLattice, structures: &[ModelStructure]) -> Result<VerificationReport, VerifyError> {
    structures.par_iter().try_for_each(check_prop5)?;
    Ok(VerificationReport::new("prop5", lattice.name()).count("structures", structures.len()))
}

/// Checks direct mixing against lifting along the diagonal for every
/// admissible pair drawn from `structures` (with `m1` restricted to
/// `first` when given), and idempotence of mixing.
pub fn verify_prop11(
    lattice: &Arc<FiniteLattice>,
    structures: &[ModelStructure],
    first: Option<&ModelStructure>,
) -> Result<VerificationReport, VerifyError> {
    let lifting = DiagonalLifting::new(lattice.clone());
    let firsts: Vec<&ModelStructure> = match first {
        Some(m) => vec![m],
        None => structures.iter().collect(),
    };
    let per_first: Vec<[usize; 4]> = firsts
        .par_iter()
        .map(|m1| {
            let mut counts = [0usize; 4];
            for keep in [Keep::Fibrations, Keep::Cofibrations] {
                ensure(mix(m1, m1, keep).as_ref() == Ok(*m1), "mixing is idempotent", || {
                    m1.describe()
                })?;
            }
            for m2 in structures {
                for (k, keep) in [Keep::Fibrations, Keep::Cofibrations].into_iter().enumerate() {
                    let direct = match mix(m1, m2, keep) {
                        Ok(direct) => direct,
                        Err(MixError::NotAModel(e)) => {
                            return Err(VerifyError::failed(
                                "admissible pairs mix to a model structure",
                                e.to_string(),
                            ))
                        }
                        Err(_) => continue,
                    };
                    counts[k] += 1;
                    let lifted = lifting
                        .mix(m1, m2, keep)
                        .map_err(|e| VerifyError::failed("mixing by lifting along the diagonal", e.to_string()))?;
                    ensure(lifted == direct, "direct and diagonal mixing agree", || {
                        format!("{}\n--\n{}", m1.describe(), m2.describe())
                    })?;
                }
                // Keeping fibrations with the inclusion of fibrations reversed.
                if m2.fibrations().is_subset(m1.fibrations())
                    && m1.fibrations() != m2.fibrations()
                    && m1.weak_equivalences().is_subset(m2.weak_equivalences())
                {
                    counts[2] += 1;
                    let w = m2.weak_equivalences();
                    let c = lattice.llp(&m1.fibrations().intersection(w));
                    if is_model_structure(lattice, &c, w, m1.fibrations()).is_ok() {
                        counts[3] += 1;
                    }
                }
            }
            Ok(counts)
        })
        .collect::<Result<_, VerifyError>>()?;
    let total = per_first.iter().fold([0; 4], |mut acc, c| {
        for i in 0..4 {
            acc[i] += c[i];
        }
        acc
    });
    Ok(VerificationReport::new("prop11", lattice.name())
        .count("structures", structures.len())
        .count("keep_fibrations_pairs", total[0])
        .count("keep_cofibrations_pairs", total[1])
        .count("reversed_inclusion_pairs", total[2])
        .count("reversed_inclusion_models", total[3]))
}

/// Every localisation of a left proper base is the localisation at its own
/// weak equivalences; localising at nothing returns the base.
pub fn verify_theorem_5_with(
    base: &ModelStructure,
    census: &[ModelStructure],
) -> Result<VerificationReport, VerifyError> {
    let l = base.lattice();
    if let Some(w) = base.left_properness_witness() {
        return Err(VerifyError::Precondition(format!("base is not left proper: {w}")));
    }
    let localisations = localisations_among(base, census);
    let pipeline =
        |e: crate::localisation::LocalisationError| VerifyError::failed("localising at a set of maps", e.to_string());
    ensure(
        &s_localise(base, &l.no_maps()).map_err(pipeline)? == base,
        "localising at nothing",
        || base.describe(),
    )?;
    for m in &localisations {
        let back = s_localise(base, m.weak_equivalences()).map_err(pipeline)?;
        ensure(&back == m, "every localisation arises from a set of maps", || {
            m.describe()
        })?;
    }
    Ok(VerificationReport::new("thm5", l.name()).count("localisations", localisations.len()))
}

/// Every colocalisation of a right proper base is the colocalisation at its
/// own cofibrant objects, and colocalising agrees with localising the dual
/// at the dualised colocal equivalences.
pub fn verify_theorem_6_with(
    base: &ModelStructure,
    census: &[ModelStructure],
) -> Result<VerificationReport, VerifyError> {
    let l = base.lattice();
    if let Some(w) = base.right_properness_witness() {
        return Err(VerifyError::Precondition(format!("base is not right proper: {w}")));
    }
    let dual_lattice = Arc::new(l.dual());
    let dual_base = base.dual_onto(&dual_lattice);
    let colocalisations = colocalisations_among(base, census);
    let pipeline = |e: crate::localisation::LocalisationError| {
        VerifyError::failed("colocalising at a set of objects", e.to_string())
    };
    for m in &colocalisations {
        let k = m.cofibrant_objects();
        let back = k_colocalise(base, &k).map_err(pipeline)?;
        ensure(&back == m, "every colocalisation arises from a set of objects", || {
            m.describe()
        })?;
        let s = l.dualize_class(&k_colocal_equivalences(base, &k), &dual_lattice);
        let via_dual = s_localise(&dual_base, &s).map_err(pipeline)?.dual_onto(l);
        ensure(via_dual == back, "colocalising is dual to localising", || m.describe())?;
    }
    Ok(VerificationReport::new("thm6", l.name()).count("colocalisations", colocalisations.len()))
}

/// Runs `theorem` on `lattice`. With `base`, only that structure is used as
/// base; without it, every eligible structure of the census is, and the
/// counts are summed with a `bases` entry.
pub fn run_verification(
    theorem: Theorem,
    lattice: &Arc<FiniteLattice>,
    base: Option<&ModelStructure>,
    limits: Limits,
) -> Result<VerificationReport, VerifyError> {
    match theorem {
        Theorem::Lemma1 | Theorem::Prop15 => {
            if base.is_some_and(|b| b != &ModelStructure::discrete(lattice.clone())) {
                return Err(VerifyError::Precondition(format!(
                    "{theorem} is stated for the discrete base"
                )));
            }
            return if theorem == Theorem::Lemma1 {
                verify_lemma_1(lattice, limits)
            } else {
                verify_prop15(lattice, limits)
            };
        }
        _ => {}
    }
    let census = enumerate_model_structures(lattice, limits)?;
    match theorem {
        Theorem::Prop5 => match base {
            Some(b) => verify_prop5(lattice, std::slice::from_ref(b)),
            None => verify_prop5(lattice, &census),
        },
        Theorem::Prop11 => verify_prop11(lattice, &census, base),
        _ => {
            let single = |b: &ModelStructure| -> Result<VerificationReport, VerifyError> {
                match theorem {
                    Theorem::Thm1 => verify_theorem_1_with(b, &census, limits),
                    Theorem::Thm2 => verify_theorem_2_with(b, &census, limits),
                    Theorem::Thm3 => verify_theorem_3_with(b, &census, limits),
                    Theorem::Thm4 => verify_theorem_4_with(b, &census, limits),
                    Theorem::Thm5 => verify_theorem_5_with(b, &census),
                    Theorem::Thm6 => verify_theorem_6_with(b, &census),
                    _ => unreachable!("handled above"),
                }
            };
            if let Some(b) = base {
                return single(b);
            }
            let eligible: Vec<&ModelStructure> = census
                .iter()
                .filter(|m| match theorem {
                    Theorem::Thm3 | Theorem::Thm5 => m.is_left_proper(),
                    Theorem::Thm4 | Theorem::Thm6 => m.is_right_proper(),
                    _ => true,
                })
                .collect();
            let reports: Vec<VerificationReport> = eligible.par_iter().map(|b| single(b)).collect::<Result<_, _>>()?;
            let mut total = VerificationReport::new(theorem.name(), lattice.name()).count("bases", eligible.len());
            for r in &reports {
                total.absorb(r);
            }
            Ok(total)
        }
    }
}
