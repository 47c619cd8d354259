//! Structural analysis of scenarios.
//!
//! Evoked alternatives are hyperedges over the perceived consequences they
//! may lead to. From that hypergraph (or directly from a matrix of shared
//! faces) this crate derives q-connectivity classes, the structure vector,
//! the complexity index `Σ (q+1)/s_q` and generalized line graphs, and
//! compares scenario variants.
//!
//! ```
//! use qscen_core::{analyze, parse_scenario, InputFormat, ReportOptions, ScenarioDocument};
//!
//! let doc = ScenarioDocument::new(
//!     InputFormat::IncidenceCsv,
//!     ",PC_1,PC_2,PC_3\nEA_1,1,1,0\nEA_2,1,1,0\nEA_3,0,1,1\nEA_4,0,1,1\n",
//! );
//! let parsed = parse_scenario(&doc).unwrap();
//! let report = analyze("demo", &parsed.scenario, &ReportOptions::default()).unwrap();
//! assert_eq!(report.structure_vector().unwrap().entries(), &[1, 2]);
//! assert_eq!(report.complexity().unwrap().exact(), "2");
//! ```

pub mod analysis;
pub mod components;
pub mod error;
pub mod ingestion;
pub mod linegraph;
pub mod model;
pub mod numeric;
pub mod report;

pub use analysis::{
    classify, compare_variants, complexity, complexity_score, complexity_sum, intersection_matrix,
    q_classes, q_classes_complex, q_classes_hypergraph_exact, structure_vector, Direction,
    VariantDiff,
};
pub use error::{AnalysisError, Error, IngestError, MatrixError, Result, ValidationError};
pub use ingestion::{
    detect_format, parse_scenario, reduce_cognitive_map, serialize_scenario, sniff_json,
    InputFormat, Parsed, ScenarioDocument, ScenarioInput,
};
pub use linegraph::{complex_line_graph, export_dot, generalized_line_graph, RenderOptions};
pub use model::{
    validate_scenario, CognitiveMap, CognitiveMapDraft, ComplexityScore, ConceptId, Dim,
    IntersectionMatrix, LineGraph, Partition, QClassification, ScenarioDraft, ScenarioMap,
    StructureVector, Variant,
};
pub use report::{analyze, AnalysisReport, DiffView, Hyperedge, LineGraphRequest, ReportOptions};
