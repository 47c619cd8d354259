use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ConceptId;
use crate::error::ValidationError;

/// Unvalidated cognitive map in the `cogmap-json` layout.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CognitiveMapDraft {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub concepts: Vec<ConceptEntryDraft>,
    pub edges: Vec<EdgeDraft>,
    pub alternatives: Vec<String>,
    pub consequences: Vec<String>,
}

/// A concept given either as a bare id or as `{"id", "label"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConceptEntryDraft {
    Id(String),
    Labeled {
        id: String,
        #[serde(default)]
        label: Option<String>,
    },
}

impl ConceptEntryDraft {
    fn parts(&self) -> (&str, Option<&str>) {
        match self {
            ConceptEntryDraft::Id(id) => (id, None),
            ConceptEntryDraft::Labeled { id, label } => (id, label.as_deref()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeDraft {
    pub from: String,
    pub to: String,
    /// Polarity of the causal link. Accepted for compatibility, never used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<serde_json::Value>,
}

/// Directed causal graph over concepts, with designated alternatives and
/// consequences. Concepts in neither role are intermediate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CognitiveMap {
    label: Option<String>,
    concepts: Vec<ConceptId>,
    successors: Vec<Vec<usize>>,
    alternatives: Vec<usize>,
    consequences: Vec<usize>,
}

impl CognitiveMap {
    pub fn from_draft(draft: &CognitiveMapDraft) -> Result<Self, ValidationError> {
        let mut index = HashMap::with_capacity(draft.concepts.len());
        let mut concepts = Vec::with_capacity(draft.concepts.len());
        for entry in &draft.concepts {
            let (id, label) = entry.parts();
            let concept = ConceptId::new("concept", id, label)?;
            if index.insert(concept.id().to_string(), concepts.len()).is_some() {
                return Err(ValidationError::DuplicateId {
                    role: "concept",
                    id: concept.id().to_string(),
                });
            }
            concepts.push(concept);
        }
        let lookup = |id: &str| {
            index
                .get(id.trim())
                .copied()
                .ok_or_else(|| ValidationError::UnknownConcept {
                    id: id.trim().to_string(),
                })
        };

        let mut successors = vec![Vec::new(); concepts.len()];
        for edge in &draft.edges {
            let from = lookup(&edge.from)?;
            let to = lookup(&edge.to)?;
            if !successors[from].contains(&to) {
                successors[from].push(to);
            }
        }

        let mut role = vec![None; concepts.len()];
        let mut collect = |ids: &[String], name: &'static str| {
            let mut out = Vec::with_capacity(ids.len());
            for id in ids {
                let idx = lookup(id)?;
                match role[idx] {
                    None => role[idx] = Some(name),
                    Some(prev) if prev == name => {
                        return Err(ValidationError::DuplicateId {
                            role: name,
                            id: concepts[idx].id().to_string(),
                        })
                    }
                    Some(_) => {
                        return Err(ValidationError::RoleOverlap {
                            id: concepts[idx].id().to_string(),
                        })
                    }
                }
                out.push(idx);
            }
            if out.is_empty() {
                return Err(ValidationError::MissingRole { role: name });
            }
            Ok(out)
        };
        let alternatives = collect(&draft.alternatives, "alternative")?;
        let consequences = collect(&draft.consequences, "consequence")?;

        Ok(CognitiveMap {
            label: draft.label.clone(),
            concepts,
            successors,
            alternatives,
            consequences,
        })
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn concepts(&self) -> &[ConceptId] {
        &self.concepts
    }

    pub fn successors(&self, concept: usize) -> &[usize] {
        &self.successors[concept]
    }

    pub fn alternatives(&self) -> &[usize] {
        &self.alternatives
    }

    pub fn consequences(&self) -> &[usize] {
        &self.consequences
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }
}
