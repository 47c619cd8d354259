//! Domain types: scenario maps, cognitive maps, intersection matrices and
//! the results derived from them. All values are immutable once built.

mod cogmap;
mod matrix;
mod results;
mod scenario;

pub use cogmap::{CognitiveMap, CognitiveMapDraft, ConceptEntryDraft, EdgeDraft};
pub use matrix::IntersectionMatrix;
pub use results::{ComplexityScore, LineGraph, Partition, QClassification, StructureVector, Variant};
pub use scenario::{
    validate_scenario, AlternativeDraft, AlternativeEntry, ConceptDraft, ScenarioDraft, ScenarioMap,
};

use serde::{Deserialize, Serialize};

use crate::error::ValidationError;

/// Simplicial dimension: cardinality minus one, with `-1` for the empty face.
pub type Dim = i64;

/// Sentinel for "no shared vertex".
pub const DISJOINT: Dim = -1;

/// A concept token with its human-readable label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConceptId {
    id: String,
    label: String,
}

impl ConceptId {
    /// Trims the id; an absent or blank label falls back to the id.
    pub fn new(
        role: &'static str,
        id: &str,
        label: Option<&str>,
    ) -> Result<Self, ValidationError> {
        let id = id.trim();
        if id.is_empty() {
            return Err(ValidationError::EmptyId { role });
        }
        let label = match label.map(str::trim) {
            Some(l) if !l.is_empty() => l.to_string(),
            _ => id.to_string(),
        };
        Ok(ConceptId {
            id: id.to_string(),
            label,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The label, or `None` when it merely repeats the id.
    pub(crate) fn explicit_label(&self) -> Option<String> {
        (self.label != self.id).then(|| self.label.clone())
    }
}

impl std::fmt::Display for ConceptId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.id)
    }
}
