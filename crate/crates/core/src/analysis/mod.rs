//! Q-analysis: shared-face matrices, connectivity classes per level,
//! structure vectors and the complexity index.
//!
//! Classes at level q always partition every hyperedge. A hyperedge with no
//! qualifying neighbour forms a singleton class, including hyperedges whose
//! own dimension is below q.

mod compare;

pub use compare::{compare_variants, Direction, LevelCounts, LevelPairs, VariantDiff};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::components::DisjointSets;
use crate::error::AnalysisError;
use crate::model::{
    ComplexityScore, Dim, IntersectionMatrix, Partition, QClassification, ScenarioMap,
    StructureVector, Variant,
};

pub fn intersection_matrix(map: &ScenarioMap) -> IntersectionMatrix {
    let sets: Vec<&[usize]> = map.alternatives().iter().map(|a| a.consequences()).collect();
    IntersectionMatrix::from_sorted_sets(map.alternative_ids(), &sets)
}

fn check_level(m: &IntersectionMatrix, q: usize) -> Result<(), AnalysisError> {
    if m.max_face() < 0 || q as Dim > m.max_face() {
        return Err(AnalysisError::LevelOutOfRange {
            q,
            max: m.max_face(),
        });
    }
    Ok(())
}

fn components_where(m: &IntersectionMatrix, linked: impl Fn(Dim) -> bool) -> Partition {
    let n = m.len();
    let mut sets = DisjointSets::new(n);
    for h in 0..n {
        for k in h + 1..n {
            if linked(m.face(h, k)) {
                sets.union(h, k);
            }
        }
    }
    sets.into_partition()
}

/// Classes of simplices at level `q`: components of the graph linking
/// hyperedges whose shared face has dimension at least `q`.
pub fn q_classes_complex(m: &IntersectionMatrix, q: usize) -> Result<Partition, AnalysisError> {
    check_level(m, q)?;
    let q = q as Dim;
    Ok(components_where(m, |p| p >= q))
}

/// Classes of hyperedges at level `q` under chains of faces of dimension
/// exactly `q`.
pub fn q_classes_hypergraph_exact(
    m: &IntersectionMatrix,
    q: usize,
) -> Result<Partition, AnalysisError> {
    check_level(m, q)?;
    let q = q as Dim;
    Ok(components_where(m, |p| p == q))
}

pub fn q_classes(
    m: &IntersectionMatrix,
    q: usize,
    variant: Variant,
) -> Result<Partition, AnalysisError> {
    match variant {
        Variant::ComplexThreshold => q_classes_complex(m, q),
        Variant::HypergraphEquality => q_classes_hypergraph_exact(m, q),
    }
}

/// Every level from 0 to Q = P. Empty when no two hyperedges intersect.
pub fn classify(m: &IntersectionMatrix, variant: Variant) -> QClassification {
    let levels = (0..=m.max_face())
        .map(|q| q_classes(m, q as usize, variant).expect("level within 0..=P"))
        .collect();
    QClassification::new(variant, levels)
}

pub fn structure_vector(
    m: &IntersectionMatrix,
    variant: Variant,
) -> Result<StructureVector, AnalysisError> {
    if m.max_face() < 0 {
        return Err(AnalysisError::NoSharedFaces);
    }
    Ok(classify(m, variant).structure_vector())
}

/// Σ (q+1)/s_q over the vector, exactly. An empty vector sums to zero.
pub fn complexity_sum(s: &StructureVector) -> Result<BigRational, AnalysisError> {
    let mut total = BigRational::zero();
    for (q, &count) in s.entries().iter().enumerate() {
        if count == 0 {
            return Err(AnalysisError::ZeroClassCount { q });
        }
        total += BigRational::new(BigInt::from(q + 1), BigInt::from(count));
    }
    Ok(total)
}

/// Zero with the one-to-one flag when `one_to_one`, else [`complexity_sum`].
pub fn complexity_score(
    one_to_one: bool,
    s: &StructureVector,
) -> Result<ComplexityScore, AnalysisError> {
    if one_to_one {
        return Ok(ComplexityScore::one_to_one());
    }
    Ok(ComplexityScore::new(complexity_sum(s)?, false))
}

pub fn complexity(map: &ScenarioMap, s: &StructureVector) -> Result<ComplexityScore, AnalysisError> {
    complexity_score(map.is_one_to_one(), s)
}
