//! JSON shapes for factorisation systems, model structures and censuses.
//!
//! Maps are written `"a<=b"`. A structure records its lattice by name; when
//! the lattice is not a catalog entry its text definition travels along.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog;
use crate::factorisation::FactorisationSystem;
use crate::lattice::{FiniteLattice, LatticeError};
use crate::model::{ModelDiagnostic, ModelStructure};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("unknown lattice `{0}` and no definition given")]
    UnknownLattice(String),
    #[error("structure is on `{found}`, expected `{expected}`")]
    LatticeMismatch { expected: String, found: String },
    #[error("not a model structure: {0}")]
    NotAModel(#[from] ModelDiagnostic),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub lattice: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definition: Option<String>,
    #[serde(rename = "C")]
    pub c: Vec<String>,
    #[serde(rename = "W")]
    pub w: Vec<String>,
    #[serde(rename = "F")]
    pub f: Vec<String>,
}

fn definition_for(l: &FiniteLattice) -> Option<String> {
    match catalog::lookup(l.name()) {
        Some(e) if *e.lattice == *l => None,
        _ => Some(l.to_text()),
    }
}

impl ModelJson {
    pub fn from_model(m: &ModelStructure) -> Self {
        let l = m.lattice();
        Self {
            lattice: l.name().to_owned(),
            definition: definition_for(l),
            c: l.format_class(m.cofibrations()),
            w: l.format_class(m.weak_equivalences()),
            f: l.format_class(m.fibrations()),
        }
    }

    /// Resolves the lattice from the definition or the catalog.
    pub fn resolve_lattice(&self) -> Result<Arc<FiniteLattice>, JsonError> {
        match &self.definition {
            Some(text) => Ok(Arc::new(FiniteLattice::parse(self.lattice.clone(), text)?)),
            None => catalog::lookup(&self.lattice)
                .map(|e| e.lattice)
                .ok_or_else(|| JsonError::UnknownLattice(self.lattice.clone())),
        }
    }

    /// Validated structure on `lattice`, which must carry the recorded name.
    pub fn to_model(&self, lattice: Arc<FiniteLattice>) -> Result<ModelStructure, JsonError> {
        if lattice.name() != self.lattice {
            return Err(JsonError::LatticeMismatch {
                expected: lattice.name().to_owned(),
                found: self.lattice.clone(),
            });
        }
        let class = |items: &[String]| lattice.parse_map_list(&items.join(","));
        let (c, w, f) = (class(&self.c)?, class(&self.w)?, class(&self.f)?);
        Ok(ModelStructure::new(lattice, c, w, f)?)
    }

    pub fn parse(text: &str) -> Result<ModelStructure, JsonError> {
        let raw: ModelJson = serde_json::from_str(text)?;
        raw.to_model(raw.resolve_lattice()?)
    }
}

/// A census entry: the structure with its properness and (co)fibrant objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    #[serde(flatten)]
    pub model: ModelJson,
    pub left_proper: bool,
    pub right_proper: bool,
    pub fibrant: Vec<String>,
    pub cofibrant: Vec<String>,
}

impl CensusEntry {
    pub fn from_model(m: &ModelStructure) -> Self {
        let l = m.lattice();
        Self {
            model: ModelJson::from_model(m),
            left_proper: m.is_left_proper(),
            right_proper: m.is_right_proper(),
            fibrant: l.format_objects(&m.fibrant_objects()),
            cofibrant: l.format_objects(&m.cofibrant_objects()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorisationJson {
    pub lattice: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl FactorisationJson {
    pub fn from_system(fs: &FactorisationSystem) -> Self {
        let l = fs.lattice();
        Self {
            lattice: l.name().to_owned(),
            left: l.format_class(fs.left()),
            right: l.format_class(fs.right()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_round_trip() {
        let l = catalog::lookup("b2").unwrap().lattice;
        let m = ModelStructure::discrete(l.clone());
        let text = serde_json::to_string(&ModelJson::from_model(&m)).unwrap();
        assert!(text.starts_with(r#"{"lattice":"b2","C":["#));
        assert_eq!(ModelJson::parse(&text).unwrap(), m);
    }

    #[test]
    fn custom_lattices_carry_their_definition() {
        let l = Arc::new(FiniteLattice::parse("v", "objects: x y\nle: x<=y").unwrap());
        let m = ModelStructure::discrete(l);
        let json = ModelJson::from_model(&m);
        assert!(json.definition.is_some());
        assert_eq!(ModelJson::parse(&serde_json::to_string(&json).unwrap()).unwrap(), m);
    }

    #[test]
    fn invalid_structures_are_rejected() {
        let text = r#"{"lattice":"c2","C":[],"W":["0<=0","1<=1"],"F":[]}"#;
        assert!(matches!(ModelJson::parse(text), Err(JsonError::NotAModel(_))));
        let text = r#"{"lattice":"zz","C":[],"W":[],"F":[]}"#;
        assert!(matches!(ModelJson::parse(text), Err(JsonError::UnknownLattice(_))));
    }
}
