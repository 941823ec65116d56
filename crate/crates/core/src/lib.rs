//! One-dimensional model structures on finite bounded lattices.
//!
//! A finite lattice is read as a skeletal category with at most one map
//! `x -> y`, present iff `x <= y`. On such categories every weak
//! factorisation system is orthogonal and every model structure is
//! one-dimensional, so all of the constructions below are decidable by
//! exhaustive search.

pub mod bitset;
pub mod catalog;
pub mod class;
pub mod colocalisation;
pub mod constructions;
pub mod factorisation;
pub mod galois;
pub mod json;
pub mod lattice;
pub mod localisation;
pub mod model;
pub mod report;
pub mod transfer;
pub mod verify;

pub use class::{MapClass, ObjectSet};
pub use colocalisation::{is_colocality, k_colocalise, Colocality, Coreflection};
pub use constructions::{is_semi_left_exact, is_semi_right_exact, prop15_build, prop15_dual_build};
pub use factorisation::{enumerate_ofs, is_wfs, EnumerationError, FactorisationSystem, Limits};
pub use galois::{GaloisConnection, Side};
pub use lattice::{FiniteLattice, LatticeError, LatticeMap};
pub use localisation::{is_locality, localise_from_locality, s_localise, Locality, Reflection};
pub use model::{enumerate_model_structures, is_model_structure, ModelStructure, Replacements};
pub use report::{VerificationReport, VerifyError};
pub use transfer::{injective_lift, mix, projective_lift, Keep};
pub use verify::{run_verification, Theorem};
