//! Seeded scenario generators for the benchmarks.

use qscen_core::model::{AlternativeDraft, ConceptDraft};
use qscen_core::{validate_scenario, ScenarioDraft, ScenarioMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `alternatives` hyperedges over `consequences` vertices, each vertex
/// included with probability `density` (at least one per hyperedge).
pub fn random_scenario(seed: u64, alternatives: usize, consequences: usize, density: f64) -> ScenarioMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pc = |j: usize| format!("PC_{}", j + 1);
    let draft = ScenarioDraft {
        label: None,
        consequences: (0..consequences)
            .map(|j| ConceptDraft { id: pc(j), label: None })
            .collect(),
        alternatives: (0..alternatives)
            .map(|i| {
                let mut set: Vec<String> = (0..consequences)
                    .filter(|_| rng.gen_bool(density))
                    .map(pc)
                    .collect();
                if set.is_empty() {
                    set.push(pc(rng.gen_range(0..consequences)));
                }
                AlternativeDraft {
                    id: format!("EA_{}", i + 1),
                    label: None,
                    consequences: set,
                }
            })
            .collect(),
    };
    validate_scenario(&draft).expect("generated scenario is valid")
}
