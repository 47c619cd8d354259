use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::components::DisjointSets;
use crate::numeric::{format_decimal, format_exact};

/// Classes at one level: disjoint member lists of hyperedge indices, each
/// in input order, ordered by their smallest member.
pub type Partition = Vec<Vec<usize>>;

/// How hyperedges are chained at level q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Simplicial complex: linked when the shared face has dimension ≥ q.
    #[default]
    ComplexThreshold,
    /// Hypergraph: linked when the shared face has dimension exactly q.
    HypergraphEquality,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::ComplexThreshold => "complex-threshold",
            Variant::HypergraphEquality => "hypergraph-equality",
        }
    }

    /// Symbol of the analysed object, `K` or `H`.
    pub fn symbol(self) -> &'static str {
        match self {
            Variant::ComplexThreshold => "K",
            Variant::HypergraphEquality => "H",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complex-threshold" | "complex" | "threshold" | "K" => Ok(Variant::ComplexThreshold),
            "hypergraph-equality" | "hypergraph" | "equality" | "H" => {
                Ok(Variant::HypergraphEquality)
            }
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// Partitions of the hyperedges for every level q in `0..=Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QClassification {
    variant: Variant,
    levels: Vec<Partition>,
}

impl QClassification {
    pub(crate) fn new(variant: Variant, levels: Vec<Partition>) -> Self {
        QClassification { variant, levels }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Q, or `None` when there are no levels.
    pub fn top_level(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    pub fn level(&self, q: usize) -> Option<&Partition> {
        self.levels.get(q)
    }

    pub fn structure_vector(&self) -> StructureVector {
        StructureVector(self.levels.iter().map(Vec::len).collect())
    }
}

/// `[s_0, s_1, …, s_Q]`: number of classes at each level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StructureVector(pub Vec<usize>);

impl StructureVector {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for StructureVector {
    fn from(entries: Vec<usize>) -> Self {
        StructureVector(entries)
    }
}

impl fmt::Display for StructureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Exact complexity value together with the one-to-one flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexityScore {
    value: BigRational,
    all_one_to_one: bool,
}

impl ComplexityScore {
    pub(crate) fn new(value: BigRational, all_one_to_one: bool) -> Self {
        debug_assert!(!all_one_to_one || value.is_zero());
        ComplexityScore {
            value,
            all_one_to_one,
        }
    }

    pub fn one_to_one() -> Self {
        ComplexityScore::new(BigRational::zero(), true)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn is_one_to_one(&self) -> bool {
        self.all_one_to_one
    }

    /// Reduced fraction, e.g. `29/2`, or an integer such as `3`.
    pub fn exact(&self) -> String {
        format_exact(&self.value)
    }

    /// Round-half-even decimal with trailing zeros removed.
    pub fn decimal(&self, precision: u32) -> String {
        format_decimal(&self.value, precision)
    }
}

/// Graph whose nodes are hyperedges, with an edge wherever the shared face
/// dimension falls inside `band` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineGraph {
    nodes: Vec<String>,
    edges: Vec<(usize, usize)>,
    band: (usize, usize),
}

impl LineGraph {
    /// `edges` must hold `h < k` pairs, sorted.
    pub(crate) fn new(nodes: Vec<String>, edges: Vec<(usize, usize)>, band: (usize, usize)) -> Self {
        debug_assert!(edges.iter().all(|&(h, k)| h < k && k < nodes.len()));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        LineGraph { nodes, edges, band }
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn band(&self) -> (usize, usize) {
        self.band
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn edge_ids(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(h, k)| (self.nodes[h].as_str(), self.nodes[k].as_str()))
            .collect()
    }

    /// Connected components, including isolated nodes.
    pub fn components(&self) -> Partition {
        let mut sets = DisjointSets::new(self.nodes.len());
        for &(h, k) in &self.edges {
            sets.union(h, k);
        }
        sets.into_partition()
    }
}

impl Serialize for LineGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LineGraph", 3)?;
        s.serialize_field("band", &[self.band.0, self.band.1])?;
        s.serialize_field("nodes", &self.nodes)?;
        let edges: Vec<[&str; 2]> = self.edge_ids().into_iter().map(|(a, b)| [a, b]).collect();
        s.serialize_field("edges", &edges)?;
        s.end()
    }
}
