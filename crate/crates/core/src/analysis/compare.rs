use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::model::Partition;
use crate::report::AnalysisReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increased,
    Decreased,
    Unchanged,
    /// One side has no complexity value.
    Undefined,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increased => "increased",
            Direction::Decreased => "decreased",
            Direction::Unchanged => "unchanged",
            Direction::Undefined => "undefined",
        }
    }
}

/// Class counts of both sides at one level; `None` where a side has no such level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCounts {
    pub q: usize,
    pub a: Option<usize>,
    pub b: Option<usize>,
}

impl LevelCounts {
    pub fn delta(&self) -> Option<i64> {
        Some(self.b? as i64 - self.a? as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPairs {
    pub q: usize,
    pub pairs: Vec<(String, String)>,
}

/// Structural difference from report `a` to report `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantDiff {
    pub a: String,
    pub b: String,
    pub complexity_a: Option<BigRational>,
    pub complexity_b: Option<BigRational>,
    /// `C(b) - C(a)`.
    pub delta: Option<BigRational>,
    pub direction: Direction,
    pub levels: Vec<LevelCounts>,
    /// Pairs of shared alternatives joined in `b` but separate in `a`.
    pub merged: Vec<LevelPairs>,
    /// Pairs of shared alternatives joined in `a` but separate in `b`.
    pub split: Vec<LevelPairs>,
}

impl VariantDiff {
    pub fn is_unchanged(&self) -> bool {
        self.direction == Direction::Unchanged
            && self.levels.iter().all(|l| l.a.is_some() && l.a == l.b)
            && self.merged.is_empty()
            && self.split.is_empty()
    }
}

pub fn compare_variants(a: &AnalysisReport, b: &AnalysisReport) -> VariantDiff {
    let complexity_a = a.complexity().map(|c| c.value().clone());
    let complexity_b = b.complexity().map(|c| c.value().clone());
    let delta = match (&complexity_a, &complexity_b) {
        (Some(x), Some(y)) => Some(y - x),
        _ => None,
    };
    let direction = match &delta {
        None => Direction::Undefined,
        Some(d) if d.is_zero() => Direction::Unchanged,
        Some(d) if d.is_positive() => Direction::Increased,
        Some(_) => Direction::Decreased,
    };

    let levels_a = a.selected_classes().levels();
    let levels_b = b.selected_classes().levels();
    let levels = (0..levels_a.len().max(levels_b.len()))
        .map(|q| LevelCounts {
            q,
            a: levels_a.get(q).map(Vec::len),
            b: levels_b.get(q).map(Vec::len),
        })
        .collect();

    let ids_b: HashSet<&str> = b.alternative_ids().iter().map(String::as_str).collect();
    let shared: Vec<&str> = a
        .alternative_ids()
        .iter()
        .map(String::as_str)
        .filter(|id| ids_b.contains(id))
        .collect();

    let mut merged = Vec::new();
    let mut split = Vec::new();
    for q in 0..levels_a.len().min(levels_b.len()) {
        let class_a = class_lookup(a.alternative_ids(), &levels_a[q]);
        let class_b = class_lookup(b.alternative_ids(), &levels_b[q]);
        let mut joined = Vec::new();
        let mut parted = Vec::new();
        for (i, x) in shared.iter().enumerate() {
            for y in &shared[i + 1..] {
                let in_a = class_a[x] == class_a[y];
                let in_b = class_b[x] == class_b[y];
                if in_b && !in_a {
                    joined.push((x.to_string(), y.to_string()));
                } else if in_a && !in_b {
                    parted.push((x.to_string(), y.to_string()));
                }
            }
        }
        if !joined.is_empty() {
            merged.push(LevelPairs { q, pairs: joined });
        }
        if !parted.is_empty() {
            split.push(LevelPairs { q, pairs: parted });
        }
    }

    VariantDiff {
        a: a.scenario_id().to_string(),
        b: b.scenario_id().to_string(),
        complexity_a,
        complexity_b,
        delta,
        direction,
        levels,
        merged,
        split,
    }
}

fn class_lookup<'a>(ids: &'a [String], partition: &Partition) -> HashMap<&'a str, usize> {
    let mut out = HashMap::with_capacity(ids.len());
    for (c, members) in partition.iter().enumerate() {
        for &h in members {
            out.insert(ids[h].as_str(), c);
        }
    }
    out
}
