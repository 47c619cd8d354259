use std::collections::VecDeque;

use crate::error::IngestError;
use crate::model::{
    validate_scenario, AlternativeDraft, CognitiveMap, ConceptDraft, ScenarioDraft, ScenarioMap,
};

/// Follows causal links from every alternative and keeps the designated
/// consequences it reaches. Intermediate concepts are traversed, never
/// emitted. Consequences keep the map's declaration order.
pub fn reduce_cognitive_map(map: &CognitiveMap) -> Result<ScenarioMap, IngestError> {
    let concepts = map.concepts();
    let mut alternatives = Vec::with_capacity(map.alternatives().len());
    for &start in map.alternatives() {
        let reached = reachable_from(map, start);
        let consequences: Vec<String> = map
            .consequences()
            .iter()
            .filter(|&&c| reached[c])
            .map(|&c| concepts[c].id().to_string())
            .collect();
        if consequences.is_empty() {
            return Err(IngestError::UnreachableAlternative {
                alternative: concepts[start].id().to_string(),
            });
        }
        alternatives.push(AlternativeDraft {
            id: concepts[start].id().to_string(),
            label: Some(concepts[start].label().to_string()),
            consequences,
        });
    }

    let draft = ScenarioDraft {
        label: map.label().map(str::to_string),
        consequences: map
            .consequences()
            .iter()
            .map(|&c| ConceptDraft {
                id: concepts[c].id().to_string(),
                label: Some(concepts[c].label().to_string()),
            })
            .collect(),
        alternatives,
    };
    Ok(validate_scenario(&draft)?)
}

/// Concepts reachable by one or more links (the start only if on a cycle).
fn reachable_from(map: &CognitiveMap, start: usize) -> Vec<bool> {
    let mut seen = vec![false; map.concepts().len()];
    let mut queue: VecDeque<usize> = map.successors(start).iter().copied().collect();
    while let Some(next) = queue.pop_front() {
        if std::mem::replace(&mut seen[next], true) {
            continue;
        }
        queue.extend(map.successors(next).iter().copied().filter(|&s| !seen[s]));
    }
    seen
}
