//! Transfer of model structures along Galois connections, and mixing.
//!
//! Projective lifting pulls `W` and `F` back along a right adjoint;
//! injective lifting pulls `C` and `W` back along a left adjoint. The
//! existence of the lifted factorisations is checked exhaustively.

use std::sync::Arc;

use thiserror::Error;

use crate::class::MapClass;
use crate::factorisation::{is_wfs, WfsDiagnostic};
use crate::galois::{GaloisConnection, Side};
use crate::lattice::{FiniteLattice, LatticeMap};
use crate::model::{is_model_structure, ModelDiagnostic, ModelStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftFailure {
    #[error("{lifting} lifting runs along a {expected} adjoint, not a {given} adjoint")]
    WrongSide {
        lifting: &'static str,
        expected: Side,
        given: Side,
    },
    #[error("the model structure does not live on the codomain of the chosen adjoint")]
    LatticeMismatch,
    #[error("acyclicity condition fails: {0} is in the lifted closure but not a lifted weak equivalence")]
    Acyclicity(String),
    #[error("lifted factorisation system fails: {0}")]
    Factorisation(WfsDiagnostic),
    #[error("lifted classes are not a model structure: {0}")]
    NotAModel(ModelDiagnostic),
}

/// Which class a mixed structure keeps from the first input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keep {
    Fibrations,
    Cofibrations,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MixError {
    #[error("the two structures live on different lattices")]
    LatticeMismatch,
    #[error("mixing needs {inclusion}; {witness} violates it")]
    Precondition { inclusion: &'static str, witness: String },
    #[error("mixed classes are not a model structure: {0}")]
    NotAModel(ModelDiagnostic),
}

fn same_lattice(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Projective lifting along the right adjoint of `g`: `W' = U⁻¹(W)`,
/// `F' = U⁻¹(F)`, `C' = LLP(F' ∩ W')`, subject to `LLP(F') ⊆ W'`.
pub fn projective_lift(g: &GaloisConnection, along: Side, m: &ModelStructure) -> Result<ModelStructure, LiftFailure> {
    if along != Side::Right {
        return Err(LiftFailure::WrongSide {
            lifting: "projective",
            expected: Side::Right,
            given: along,
        });
    }
    if !same_lattice(g.codomain(along), m.lattice()) {
        return Err(LiftFailure::LatticeMismatch);
    }
    let d = g.domain(along).clone();
    let w = g.preimage_class(along, m.weak_equivalences());
    let f = g.preimage_class(along, m.fibrations());
    let tf = f.intersection(&w);
    let c = d.llp(&tf);
    let tc = d.llp(&f);
    if let Some(x) = tc.difference(&w).first() {
        return Err(LiftFailure::Acyclicity(d.format_map(d.map_at(x))));
    }
    finish_lift(d, c, w, f, &tc, &tf)
}

/// Injective lifting along the left adjoint of `g`: `C' = U⁻¹(C)`,
/// `W' = U⁻¹(W)`, `F' = RLP(C' ∩ W')`, subject to `RLP(C') ⊆ W'`.
pub fn injective_lift(g: &GaloisConnection, along: Side, m: &ModelStructure) -> Result<ModelStructure, LiftFailure> {
    if along != Side::Left {
        return Err(LiftFailure::WrongSide {
            lifting: "injective",
            expected: Side::Left,
            given: along,
        });
    }
    if !same_lattice(g.codomain(along), m.lattice()) {
        return Err(LiftFailure::LatticeMismatch);
    }
    let d = g.domain(along).clone();
    let c = g.preimage_class(along, m.cofibrations());
    let w = g.preimage_class(along, m.weak_equivalences());
    let tc = c.intersection(&w);
    let f = d.rlp(&tc);
    let tf = d.rlp(&c);
    if let Some(x) = tf.difference(&w).first() {
        return Err(LiftFailure::Acyclicity(d.format_map(d.map_at(x))));
    }
    finish_lift(d, c, w, f, &tc, &tf)
}

fn finish_lift(
    d: Arc<FiniteLattice>,
    c: MapClass,
    w: MapClass,
    f: MapClass,
    tc: &MapClass,
    tf: &MapClass,
) -> Result<ModelStructure, LiftFailure> {
    is_wfs(&d, tc, &f).map_err(LiftFailure::Factorisation)?;
    is_wfs(&d, &c, tf).map_err(LiftFailure::Factorisation)?;
    is_model_structure(&d, &c, &w, &f).map_err(LiftFailure::NotAModel)?;
    Ok(ModelStructure::new_unchecked(d, c, w, f))
}

/// Mixes two structures on one lattice.
///
/// `Keep::Fibrations` needs `F1 ⊆ F2`, `W1 ⊆ W2` and returns
/// `(LLP(F1 ∩ W2), W2, F1)`; `Keep::Cofibrations` needs `C1 ⊆ C2`,
/// `W1 ⊆ W2` and returns `(C1, W2, RLP(C1 ∩ W2))`.
pub fn mix(m1: &ModelStructure, m2: &ModelStructure, keep: Keep) -> Result<ModelStructure, MixError> {
    if !same_lattice(m1.lattice(), m2.lattice()) {
        return Err(MixError::LatticeMismatch);
    }
    let l = m1.lattice();
    let witness = |a: &MapClass, b: &MapClass| a.difference(b).first().map(|i| l.format_map(l.map_at(i)));
    let (kept_inclusion, kept_witness) = match keep {
        Keep::Fibrations => ("F1 ⊆ F2", witness(m1.fibrations(), m2.fibrations())),
        Keep::Cofibrations => ("C1 ⊆ C2", witness(m1.cofibrations(), m2.cofibrations())),
    };
    if let Some(w) = kept_witness {
        return Err(MixError::Precondition {
            inclusion: kept_inclusion,
            witness: w,
        });
    }
    if let Some(w) = witness(m1.weak_equivalences(), m2.weak_equivalences()) {
        return Err(MixError::Precondition {
            inclusion: "W1 ⊆ W2",
            witness: w,
        });
    }
    let w = m2.weak_equivalences().clone();
    let (c, f) = match keep {
        Keep::Fibrations => (l.llp(&m1.fibrations().intersection(&w)), m1.fibrations().clone()),
        Keep::Cofibrations => (m1.cofibrations().clone(), l.rlp(&m1.cofibrations().intersection(&w))),
    };
    is_model_structure(l, &c, &w, &f).map_err(MixError::NotAModel)?;
    Ok(ModelStructure::new_unchecked(l.clone(), c, w, f))
}

/// Componentwise product of two structures on `product = a × b`, where
/// `product` was built by [`FiniteLattice::product`].
pub fn product_structure(
    product: &Arc<FiniteLattice>,
    m1: &ModelStructure,
    m2: &ModelStructure,
) -> Result<ModelStructure, ModelDiagnostic> {
    let (a, b) = (m1.lattice(), m2.lattice());
    let k = b.len();
    let split = |f: LatticeMap| {
        (
            LatticeMap::new(f.source / k, f.target / k),
            LatticeMap::new(f.source % k, f.target % k),
        )
    };
    let pair = |k1: &MapClass, k2: &MapClass| {
        product.class_where(|f| {
            let (f1, f2) = split(f);
            a.contains(k1, f1) && b.contains(k2, f2)
        })
    };
    ModelStructure::new(
        product.clone(),
        pair(m1.cofibrations(), m2.cofibrations()),
        pair(m1.weak_equivalences(), m2.weak_equivalences()),
        pair(m1.fibrations(), m2.fibrations()),
    )
}

/// The diagonal `E -> E × E` with both of its adjoints, for realising
/// mixing as a lifting.
pub struct DiagonalLifting {
    lattice: Arc<FiniteLattice>,
    product: Arc<FiniteLattice>,
    /// `join ⊣ Δ`: lower `E × E`, upper `E`.
    join_diagonal: GaloisConnection,
    /// `Δ ⊣ meet`: lower `E`, upper `E × E`.
    diagonal_meet: GaloisConnection,
}

impl DiagonalLifting {
    pub fn new(lattice: Arc<FiniteLattice>) -> Self {
        let n = lattice.len();
        let product = Arc::new(lattice.product(&lattice));
        let diagonal: Vec<usize> = lattice.objects().map(|x| x * n + x).collect();
        let join: Vec<usize> = product.objects().map(|p| lattice.join(p / n, p % n)).collect();
        let meet: Vec<usize> = product.objects().map(|p| lattice.meet(p / n, p % n)).collect();
        let join_diagonal = GaloisConnection::new(product.clone(), lattice.clone(), join, diagonal.clone())
            .expect("join is left adjoint to the diagonal");
        let diagonal_meet = GaloisConnection::new(lattice.clone(), product.clone(), diagonal, meet)
            .expect("the diagonal is left adjoint to meet");
        Self {
            lattice,
            product,
            join_diagonal,
            diagonal_meet,
        }
    }

    pub fn product(&self) -> &Arc<FiniteLattice> {
        &self.product
    }

    /// Mixing by lifting along the diagonal. For `Keep::Fibrations` the
    /// product carries `(TC1, all, F1) × (C2, W2, F2)` and is lifted
    /// projectively; for `Keep::Cofibrations` it carries
    /// `(C1, all, TF1) × (C2, W2, F2)` and is lifted injectively.
    pub fn mix(&self, m1: &ModelStructure, m2: &ModelStructure, keep: Keep) -> Result<ModelStructure, LiftFailure> {
        let l = &self.lattice;
        if !same_lattice(l, m1.lattice()) || !same_lattice(l, m2.lattice()) {
            return Err(LiftFailure::LatticeMismatch);
        }
        let first = match keep {
            Keep::Fibrations => ModelStructure::new(
                l.clone(),
                m1.acyclic_cofibrations(),
                l.all_maps(),
                m1.fibrations().clone(),
            ),
            Keep::Cofibrations => ModelStructure::new(
                l.clone(),
                m1.cofibrations().clone(),
                l.all_maps(),
                m1.acyclic_fibrations(),
            ),
        }
        .map_err(LiftFailure::NotAModel)?;
        let m2 = ModelStructure::new_unchecked(
            l.clone(),
            m2.cofibrations().clone(),
            m2.weak_equivalences().clone(),
            m2.fibrations().clone(),
        );
        let product = product_structure(&self.product, &first, &m2).map_err(LiftFailure::NotAModel)?;
        match keep {
            Keep::Fibrations => projective_lift(&self.join_diagonal, Side::Right, &product),
            Keep::Cofibrations => injective_lift(&self.diagonal_meet, Side::Left, &product),
        }
    }
}
