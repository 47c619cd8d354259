//! The analysis report: every derived structure for one scenario snapshot,
//! with a fixed JSON layout and a plain-text rendering.
//!
//! JSON field order:
//!
//! ```text
//! scenario            {id, label, kind, digest, revision?}
//! alternatives        [id, ...]
//! consequence_count   n | null            (null for matrix-only input)
//! hyperedges          [{id, consequences}] | null
//! intersection_matrix {ids, dims, max_face_dim}
//! one_to_one          bool
//! condition           null | "NoSharedFaces"
//! variant             "complex-threshold" | "hypergraph-equality"
//! classes             {"complex-threshold": [{q, classes}], "hypergraph-equality": [...]}
//! structure_vector    [s_0, ...] | null
//! complexity          {exact, decimal, one_to_one} | null
//! line_graphs         [{band, nodes, edges}, ...]
//! ```

use std::fmt::Write;
use std::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::analysis::{classify, complexity_score, Direction, VariantDiff};
use crate::error::AnalysisError;
use crate::ingestion::ScenarioInput;
use crate::linegraph::{complex_line_graph, generalized_line_graph};
use crate::model::{
    ComplexityScore, IntersectionMatrix, LineGraph, Partition, QClassification, StructureVector,
    Variant,
};
use crate::numeric::{format_decimal, format_exact};

pub const DEFAULT_PRECISION: u32 = 4;

/// A line graph to include in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineGraphRequest {
    /// Complex line graph: shared faces of dimension at least `p`.
    MinDim(usize),
    /// Generalized line graph over an inclusive band.
    Band(i64, i64),
}

impl FromStr for LineGraphRequest {
    type Err = String;

    /// `lo:hi` for a band.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("band `{s}` is not of the form lo:hi"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<i64>()
                .map_err(|_| format!("band bound `{v}` is not an integer"))
        };
        Ok(LineGraphRequest::Band(parse(lo)?, parse(hi)?))
    }
}

impl LineGraphRequest {
    pub fn build(self, m: &IntersectionMatrix) -> Result<LineGraph, AnalysisError> {
        match self {
            LineGraphRequest::MinDim(p) => Ok(complex_line_graph(m, p)),
            LineGraphRequest::Band(lo, hi) => generalized_line_graph(m, lo, hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub variant: Variant,
    pub line_graphs: Vec<LineGraphRequest>,
    pub precision: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            variant: Variant::ComplexThreshold,
            line_graphs: Vec::new(),
            precision: DEFAULT_PRECISION,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioMeta {
    pub id: String,
    pub label: Option<String>,
    pub kind: &'static str,
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revision: Option<u64>,
}

/// An alternative with its consequence ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperedge {
    pub id: String,
    pub consequences: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    scenario: ScenarioMeta,
    alternatives: Vec<String>,
    alternative_labels: Vec<(String, String)>,
    consequence_count: Option<usize>,
    hyperedges: Option<Vec<Hyperedge>>,
    matrix: IntersectionMatrix,
    one_to_one: bool,
    condition: Option<&'static str>,
    variant: Variant,
    complex: QClassification,
    hypergraph: QClassification,
    structure_vector: Option<StructureVector>,
    complexity: Option<ComplexityScore>,
    line_graphs: Vec<LineGraph>,
    precision: u32,
}

/// Runs the whole pipeline on one scenario snapshot.
///
/// A map that is not one-to-one yet has no two intersecting alternatives
/// yields a report with `condition = NoSharedFaces` and neither structure
/// vector nor complexity. Only an invalid line-graph band is an error.
pub fn analyze(
    id: &str,
    scenario: &ScenarioInput,
    options: &ReportOptions,
) -> Result<AnalysisReport, AnalysisError> {
    let matrix = scenario.intersection_matrix();
    let one_to_one = scenario.is_one_to_one();
    let complex = classify(&matrix, Variant::ComplexThreshold);
    let hypergraph = classify(&matrix, Variant::HypergraphEquality);

    let (condition, structure_vector, complexity) = if one_to_one {
        (None, None, Some(ComplexityScore::one_to_one()))
    } else if matrix.max_face() < 0 {
        (Some(AnalysisError::NoSharedFaces.kind()), None, None)
    } else {
        let s = match options.variant {
            Variant::ComplexThreshold => complex.structure_vector(),
            Variant::HypergraphEquality => hypergraph.structure_vector(),
        };
        let c = complexity_score(false, &s)?;
        (None, Some(s), Some(c))
    };

    let line_graphs = options
        .line_graphs
        .iter()
        .map(|request| request.build(&matrix))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(AnalysisReport {
        scenario: ScenarioMeta {
            id: id.to_string(),
            label: scenario.label().map(str::to_string),
            kind: scenario.kind(),
            digest: scenario.digest(),
            revision: None,
        },
        alternatives: matrix.ids().to_vec(),
        alternative_labels: scenario.alternative_labels(),
        consequence_count: match scenario {
            ScenarioInput::Map(map) => Some(map.consequences().len()),
            ScenarioInput::Matrix { .. } => None,
        },
        hyperedges: match scenario {
            ScenarioInput::Map(map) => Some(
                map.alternatives()
                    .iter()
                    .map(|a| Hyperedge {
                        id: a.id().to_string(),
                        consequences: a
                            .consequences()
                            .iter()
                            .map(|&c| map.consequences()[c].id().to_string())
                            .collect(),
                    })
                    .collect(),
            ),
            ScenarioInput::Matrix { .. } => None,
        },
        matrix,
        one_to_one,
        condition,
        variant: options.variant,
        complex,
        hypergraph,
        structure_vector,
        complexity,
        line_graphs,
        precision: options.precision,
    })
}

impl AnalysisReport {
    pub fn with_revision(mut self, revision: u64) -> Self {
        self.scenario.revision = Some(revision);
        self
    }

    pub fn scenario(&self) -> &ScenarioMeta {
        &self.scenario
    }

    pub fn scenario_id(&self) -> &str {
        &self.scenario.id
    }

    pub fn alternative_ids(&self) -> &[String] {
        &self.alternatives
    }

    pub fn alternative_labels(&self) -> &[(String, String)] {
        &self.alternative_labels
    }

    /// Consequence sets, absent for matrix-only input.
    pub fn hyperedges(&self) -> Option<&[Hyperedge]> {
        self.hyperedges.as_deref()
    }

    pub fn intersection_matrix(&self) -> &IntersectionMatrix {
        &self.matrix
    }

    pub fn is_one_to_one(&self) -> bool {
        self.one_to_one
    }

    /// `Some("NoSharedFaces")` when the structure vector is undefined.
    pub fn condition(&self) -> Option<&'static str> {
        self.condition
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn classes(&self, variant: Variant) -> &QClassification {
        match variant {
            Variant::ComplexThreshold => &self.complex,
            Variant::HypergraphEquality => &self.hypergraph,
        }
    }

    /// Classification behind the structure vector.
    pub fn selected_classes(&self) -> &QClassification {
        self.classes(self.variant)
    }

    pub fn structure_vector(&self) -> Option<&StructureVector> {
        self.structure_vector.as_ref()
    }

    pub fn complexity(&self) -> Option<&ComplexityScore> {
        self.complexity.as_ref()
    }

    pub fn line_graphs(&self) -> &[LineGraph] {
        &self.line_graphs
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// True when this report was derived from exactly `scenario`.
    pub fn matches(&self, scenario: &ScenarioInput) -> bool {
        self.scenario.digest == scenario.digest()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn ids_of(&self, class: &[usize]) -> Vec<&str> {
        class.iter().map(|&h| self.alternatives[h].as_str()).collect()
    }

    /// Text layout: matrix table, class table per level, vector, index and
    /// any requested line graphs.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let s = &self.scenario;
        match &s.label {
            Some(label) => writeln!(out, "scenario: {} ({label})", s.id).unwrap(),
            None => writeln!(out, "scenario: {}", s.id).unwrap(),
        }
        if let Some(revision) = s.revision {
            writeln!(out, "revision: {revision}").unwrap();
        }
        match self.consequence_count {
            Some(n) => writeln!(
                out,
                "source:   {}, {} alternatives, {n} consequences",
                s.kind,
                self.alternatives.len()
            ),
            None => writeln!(out, "source:   {}, {} alternatives", s.kind, self.alternatives.len()),
        }
        .unwrap();
        writeln!(out, "digest:   {}", s.digest).unwrap();
        out.push('\n');

        if let Some(hyperedges) = &self.hyperedges {
            let width = hyperedges.iter().map(|h| h.id.len()).max().unwrap_or(0);
            writeln!(out, "hyperedges").unwrap();
            for h in hyperedges {
                writeln!(out, "  {:<width$} = {{{}}}", h.id, h.consequences.join(", ")).unwrap();
            }
            out.push('\n');
        }

        self.render_matrix(&mut out);
        out.push('\n');
        self.render_classes(&mut out);
        out.push('\n');

        let sym = self.variant.symbol();
        if let Some(condition) = self.condition {
            writeln!(out, "condition: {condition} (no two alternatives share a consequence)")
                .unwrap();
        }
        match &self.structure_vector {
            Some(v) => writeln!(out, "s({sym}) = {v}").unwrap(),
            None if self.one_to_one => writeln!(out, "s({sym}) = n/a (one-to-one)").unwrap(),
            None => writeln!(out, "s({sym}) = n/a").unwrap(),
        }
        match &self.complexity {
            Some(c) if c.is_one_to_one() => writeln!(out, "C({sym}) = 0 (one-to-one)").unwrap(),
            Some(c) => {
                let decimal = c.decimal(self.precision);
                let exact = c.exact();
                if decimal == exact {
                    writeln!(out, "C({sym}) = {decimal}").unwrap()
                } else {
                    writeln!(out, "C({sym}) = {decimal} (exact {exact})").unwrap()
                }
            }
            None => writeln!(out, "C({sym}) = n/a").unwrap(),
        }

        for g in &self.line_graphs {
            let (lo, hi) = g.band();
            let edges: Vec<String> = g
                .edge_ids()
                .into_iter()
                .map(|(a, b)| format!("{a} -- {b}"))
                .collect();
            let comps: Vec<String> = g
                .components()
                .iter()
                .map(|c| format!("{{{}}}", self.ids_of(c).join(", ")))
                .collect();
            out.push('\n');
            writeln!(out, "line graph p in [{lo}, {hi}]").unwrap();
            if edges.is_empty() {
                writeln!(out, "  edges: none").unwrap();
            } else {
                writeln!(out, "  edges: {}", edges.join(", ")).unwrap();
            }
            writeln!(out, "  components: {}", comps.join(" ")).unwrap();
        }
        out
    }

    fn render_matrix(&self, out: &mut String) {
        writeln!(
            out,
            "shared-face dimensions (diagonal: hyperedge dimension, -1: disjoint)"
        )
        .unwrap();
        let ids = &self.alternatives;
        let name_width = ids.iter().map(|i| i.len()).max().unwrap_or(0);
        let cell_width = ids.iter().map(|i| i.len()).max().unwrap_or(0).max(3);
        write!(out, "  {:name_width$}  ", "").unwrap();
        for id in ids {
            write!(out, " {id:>cell_width$}").unwrap();
        }
        out.push('\n');
        for (h, row) in self.matrix.rows().iter().enumerate() {
            write!(out, "  {:<name_width$} |", ids[h]).unwrap();
            for value in row {
                write!(out, " {value:>cell_width$}").unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "P = {}", self.matrix.max_face()).unwrap();
    }

    fn render_classes(&self, out: &mut String) {
        if self.complex.levels().is_empty() {
            writeln!(out, "q-classes: none (no shared faces)").unwrap();
            return;
        }
        let fmt_level = |partition: &Partition| {
            partition
                .iter()
                .map(|c| format!("{{{}}}", self.ids_of(c).join(", ")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let rows: Vec<(usize, String, String)> = self
            .hypergraph
            .levels()
            .iter()
            .zip(self.complex.levels())
            .enumerate()
            .map(|(q, (h, k))| (q, fmt_level(h), fmt_level(k)))
            .collect();
        let q_width = rows.len().saturating_sub(1).to_string().len();
        let h_title = "H (equality chains)";
        let h_width = rows
            .iter()
            .map(|r| r.1.chars().count())
            .max()
            .unwrap_or(0)
            .max(h_title.len());
        writeln!(out, "{:>q_width$} | {h_title:<h_width$} | K (threshold)", "q").unwrap();
        writeln!(out, "{}-+-{}-+-{}", "-".repeat(q_width), "-".repeat(h_width), "-".repeat(13))
            .unwrap();
        for (q, h, k) in rows {
            let pad = h_width - h.chars().count();
            writeln!(out, "{q:>q_width$} | {h}{} | {k}", " ".repeat(pad)).unwrap();
        }
    }
}

struct Levels<'a> {
    report: &'a AnalysisReport,
    classes: &'a QClassification,
}

impl Serialize for Levels<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Level<'a> {
            q: usize,
            classes: Vec<Vec<&'a str>>,
        }
        serializer.collect_seq(self.classes.levels().iter().enumerate().map(|(q, p)| Level {
            q,
            classes: p.iter().map(|c| self.report.ids_of(c)).collect(),
        }))
    }
}

struct ClassesByVariant<'a>(&'a AnalysisReport);

impl Serialize for ClassesByVariant<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        for variant in [Variant::ComplexThreshold, Variant::HypergraphEquality] {
            map.serialize_entry(
                variant.as_str(),
                &Levels {
                    report: self.0,
                    classes: self.0.classes(variant),
                },
            )?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct ComplexityView {
    exact: String,
    decimal: String,
    one_to_one: bool,
}

impl ComplexityView {
    fn new(score: &ComplexityScore, precision: u32) -> Self {
        ComplexityView {
            exact: score.exact(),
            decimal: score.decimal(precision),
            one_to_one: score.is_one_to_one(),
        }
    }
}

impl Serialize for AnalysisReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AnalysisReport", 12)?;
        s.serialize_field("scenario", &self.scenario)?;
        s.serialize_field("alternatives", &self.alternatives)?;
        s.serialize_field("consequence_count", &self.consequence_count)?;
        s.serialize_field("hyperedges", &self.hyperedges)?;
        s.serialize_field("intersection_matrix", &self.matrix)?;
        s.serialize_field("one_to_one", &self.one_to_one)?;
        s.serialize_field("condition", &self.condition)?;
        s.serialize_field("variant", &self.variant)?;
        s.serialize_field("classes", &ClassesByVariant(self))?;
        s.serialize_field("structure_vector", &self.structure_vector)?;
        s.serialize_field(
            "complexity",
            &self
                .complexity
                .as_ref()
                .map(|c| ComplexityView::new(c, self.precision)),
        )?;
        s.serialize_field("line_graphs", &self.line_graphs)?;
        s.end()
    }
}

/// Serializable view of a [`VariantDiff`] at a decimal precision.
pub struct DiffView<'a> {
    pub diff: &'a VariantDiff,
    pub precision: u32,
}

impl Serialize for DiffView<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Value {
            exact: String,
            decimal: String,
        }
        #[derive(Serialize)]
        struct Count {
            q: usize,
            a: Option<usize>,
            b: Option<usize>,
            delta: Option<i64>,
        }
        #[derive(Serialize)]
        struct Pairs<'a> {
            q: usize,
            pairs: Vec<[&'a str; 2]>,
        }
        let d = self.diff;
        let value = |r: &Option<num_rational::BigRational>| {
            r.as_ref().map(|r| Value {
                exact: format_exact(r),
                decimal: format_decimal(r, self.precision),
            })
        };
        fn pairs(list: &[crate::analysis::LevelPairs]) -> Vec<Pairs<'_>> {
            list.iter()
                .map(|l| Pairs {
                    q: l.q,
                    pairs: l.pairs.iter().map(|(x, y)| [x.as_str(), y.as_str()]).collect(),
                })
                .collect()
        }
        let mut s = serializer.serialize_struct("VariantDiff", 9)?;
        s.serialize_field("a", &d.a)?;
        s.serialize_field("b", &d.b)?;
        s.serialize_field("complexity_a", &value(&d.complexity_a))?;
        s.serialize_field("complexity_b", &value(&d.complexity_b))?;
        s.serialize_field("delta", &value(&d.delta))?;
        s.serialize_field("direction", d.direction.as_str())?;
        s.serialize_field(
            "levels",
            &d.levels
                .iter()
                .map(|l| Count {
                    q: l.q,
                    a: l.a,
                    b: l.b,
                    delta: l.delta(),
                })
                .collect::<Vec<_>>(),
        )?;
        s.serialize_field("merged", &pairs(&d.merged))?;
        s.serialize_field("split", &pairs(&d.split))?;
        s.end()
    }
}

impl<'a> DiffView<'a> {
    pub fn render_text(&self) -> String {
        let d = self.diff;
        let p = self.precision;
        let mut out = String::new();
        writeln!(out, "compare: {} -> {}", d.a, d.b).unwrap();
        let show = |r: &Option<num_rational::BigRational>| {
            r.as_ref()
                .map(|r| format_decimal(r, p))
                .unwrap_or_else(|| "n/a".into())
        };
        write!(
            out,
            "complexity: {} → {} ({})",
            show(&d.complexity_a),
            show(&d.complexity_b),
            d.direction.as_str()
        )
        .unwrap();
        if let Some(delta) = &d.delta {
            if d.direction != Direction::Unchanged {
                write!(out, ", delta {} = {}", format_exact(delta), format_decimal(delta, p)).unwrap();
            }
        }
        out.push('\n');
        if d.is_unchanged() {
            writeln!(out, "no structural change").unwrap();
            return out;
        }
        writeln!(out, "class counts by level:").unwrap();
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        for l in &d.levels {
            let delta = l
                .delta()
                .map(|v| format!("{v:+}"))
                .unwrap_or_else(|| "".into());
            writeln!(out, "  q={}: {} -> {} {delta}", l.q, opt(l.a), opt(l.b))
                .unwrap();
        }
        for (title, list) in [("merged", &d.merged), ("split", &d.split)] {
            for l in list {
                let pairs: Vec<String> =
                    l.pairs.iter().map(|(x, y)| format!("{x}+{y}")).collect();
                writeln!(out, "{title} at q={}: {}", l.q, pairs.join(", ")).unwrap();
            }
        }
        out
    }
}
