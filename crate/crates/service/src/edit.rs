//! What-if edits applied to a stored scenario map.

use qscen_core::model::{AlternativeDraft, ConceptDraft};
use qscen_core::{validate_scenario, ScenarioDraft, ScenarioMap, ValidationError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Edit {
    AddConsequence {
        id: String,
        #[serde(default)]
        label: Option<String>,
    },
    /// Drops the consequence from every alternative that references it.
    RemoveConsequence { id: String },
    AddAlternative {
        id: String,
        #[serde(default)]
        label: Option<String>,
        consequences: Vec<String>,
    },
    RemoveAlternative { id: String },
    /// Replaces an alternative's consequence set.
    Relink {
        alternative: String,
        consequences: Vec<String>,
    },
    Link {
        alternative: String,
        consequence: String,
    },
    Unlink {
        alternative: String,
        consequence: String,
    },
    SetLabel {
        #[serde(default)]
        label: Option<String>,
    },
}

/// A PATCH body: either `{"edits": [...]}` or a single edit object.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum EditBatch {
    Batch { edits: Vec<Edit> },
    Single(Edit),
}

impl EditBatch {
    pub fn into_edits(self) -> Vec<Edit> {
        match self {
            EditBatch::Batch { edits } => edits,
            EditBatch::Single(edit) => vec![edit],
        }
    }
}

fn unknown(id: &str) -> ValidationError {
    ValidationError::UnknownConcept { id: id.to_string() }
}

fn alternative<'a>(
    draft: &'a mut ScenarioDraft,
    id: &str,
) -> Result<&'a mut AlternativeDraft, ValidationError> {
    draft
        .alternatives
        .iter_mut()
        .find(|a| a.id.trim() == id.trim())
        .ok_or_else(|| unknown(id))
}

/// Applies all edits in order, then validates the result once.
/// Intermediate states may violate invariants; only the final map counts.
pub fn apply_edits(map: &ScenarioMap, edits: &[Edit]) -> Result<ScenarioMap, ValidationError> {
    let mut draft = map.to_draft();
    for edit in edits {
        match edit {
            Edit::AddConsequence { id, label } => draft.consequences.push(ConceptDraft {
                id: id.clone(),
                label: label.clone(),
            }),
            Edit::RemoveConsequence { id } => {
                let before = draft.consequences.len();
                draft.consequences.retain(|c| c.id.trim() != id.trim());
                if draft.consequences.len() == before {
                    return Err(unknown(id));
                }
                for a in &mut draft.alternatives {
                    a.consequences.retain(|c| c.trim() != id.trim());
                }
            }
            Edit::AddAlternative {
                id,
                label,
                consequences,
            } => draft.alternatives.push(AlternativeDraft {
                id: id.clone(),
                label: label.clone(),
                consequences: consequences.clone(),
            }),
            Edit::RemoveAlternative { id } => {
                let before = draft.alternatives.len();
                draft.alternatives.retain(|a| a.id.trim() != id.trim());
                if draft.alternatives.len() == before {
                    return Err(unknown(id));
                }
            }
            Edit::Relink {
                alternative: id,
                consequences,
            } => alternative(&mut draft, id)?.consequences = consequences.clone(),
            Edit::Link {
                alternative: id,
                consequence,
            } => alternative(&mut draft, id)?
                .consequences
                .push(consequence.clone()),
            Edit::Unlink {
                alternative: id,
                consequence,
            } => {
                let a = alternative(&mut draft, id)?;
                let before = a.consequences.len();
                a.consequences.retain(|c| c.trim() != consequence.trim());
                if a.consequences.len() == before {
                    return Err(unknown(consequence));
                }
            }
            Edit::SetLabel { label } => draft.label = label.clone(),
        }
    }
    if draft.alternatives.is_empty() {
        return Err(ValidationError::MissingRole {
            role: "alternative",
        });
    }
    validate_scenario(&draft)
}
