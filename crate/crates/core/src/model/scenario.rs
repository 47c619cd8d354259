use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::ConceptId;
use crate::error::ValidationError;

/// Unvalidated scenario in the `scenario-json` layout.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioDraft {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub consequences: Vec<ConceptDraft>,
    pub alternatives: Vec<AlternativeDraft>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptDraft {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternativeDraft {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub consequences: Vec<String>,
}

/// An evoked alternative and the indices of its perceived consequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlternativeEntry {
    concept: ConceptId,
    consequences: Vec<usize>,
}

impl AlternativeEntry {
    pub fn concept(&self) -> &ConceptId {
        &self.concept
    }

    pub fn id(&self) -> &str {
        self.concept.id()
    }

    /// Consequence indices, ascending and distinct.
    pub fn consequences(&self) -> &[usize] {
        &self.consequences
    }
}

/// Validated mapping from evoked alternatives to sets of perceived
/// consequences. Alternatives and consequences keep declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScenarioMap {
    label: Option<String>,
    consequences: Vec<ConceptId>,
    alternatives: Vec<AlternativeEntry>,
}

impl ScenarioMap {
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn consequences(&self) -> &[ConceptId] {
        &self.consequences
    }

    pub fn alternatives(&self) -> &[AlternativeEntry] {
        &self.alternatives
    }

    pub fn alternative_ids(&self) -> Vec<String> {
        self.alternatives.iter().map(|a| a.id().to_string()).collect()
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    /// True iff every alternative has exactly one consequence and no two
    /// alternatives share it.
    pub fn is_one_to_one(&self) -> bool {
        let mut seen = HashSet::new();
        self.alternatives
            .iter()
            .all(|a| a.consequences.len() == 1 && seen.insert(a.consequences[0]))
    }

    pub fn to_draft(&self) -> ScenarioDraft {
        ScenarioDraft {
            label: self.label.clone(),
            consequences: self
                .consequences
                .iter()
                .map(|c| ConceptDraft {
                    id: c.id().to_string(),
                    label: c.explicit_label(),
                })
                .collect(),
            alternatives: self
                .alternatives
                .iter()
                .map(|a| AlternativeDraft {
                    id: a.id().to_string(),
                    label: a.concept.explicit_label(),
                    consequences: a
                        .consequences
                        .iter()
                        .map(|&c| self.consequences[c].id().to_string())
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ScenarioDraft> for ScenarioMap {
    type Error = ValidationError;

    fn try_from(draft: &ScenarioDraft) -> Result<Self, Self::Error> {
        validate_scenario(draft)
    }
}

/// Checks every scenario invariant and builds the validated map.
pub fn validate_scenario(draft: &ScenarioDraft) -> Result<ScenarioMap, ValidationError> {
    let mut index = HashMap::with_capacity(draft.consequences.len());
    let mut consequences = Vec::with_capacity(draft.consequences.len());
    for c in &draft.consequences {
        let concept = ConceptId::new("consequence", &c.id, c.label.as_deref())?;
        if index.insert(concept.id().to_string(), consequences.len()).is_some() {
            return Err(ValidationError::DuplicateId {
                role: "consequence",
                id: concept.id().to_string(),
            });
        }
        consequences.push(concept);
    }

    let mut seen_alternatives = HashSet::with_capacity(draft.alternatives.len());
    let mut alternatives = Vec::with_capacity(draft.alternatives.len());
    for a in &draft.alternatives {
        let concept = ConceptId::new("alternative", &a.id, a.label.as_deref())?;
        if !seen_alternatives.insert(concept.id().to_string()) {
            return Err(ValidationError::DuplicateId {
                role: "alternative",
                id: concept.id().to_string(),
            });
        }
        if a.consequences.is_empty() {
            return Err(ValidationError::EmptyAlternative {
                alternative: concept.id().to_string(),
            });
        }
        let mut set = Vec::with_capacity(a.consequences.len());
        for reference in &a.consequences {
            let reference = reference.trim();
            let &idx = index
                .get(reference)
                .ok_or_else(|| ValidationError::DanglingConsequence {
                    alternative: concept.id().to_string(),
                    consequence: reference.to_string(),
                })?;
            set.push(idx);
        }
        set.sort_unstable();
        if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
            return Err(ValidationError::DuplicateId {
                role: "consequence reference",
                id: consequences[w[0]].id().to_string(),
            });
        }
        alternatives.push(AlternativeEntry {
            concept,
            consequences: set,
        });
    }

    Ok(ScenarioMap {
        label: draft.label.clone(),
        consequences,
        alternatives,
    })
}
