//! Input formats and their reduction to scenario maps.
//!
//! | format             | yields                                   |
//! |--------------------|------------------------------------------|
//! | `scenario-json`    | [`ScenarioMap`]                          |
//! | `incidence-csv`    | [`ScenarioMap`]                          |
//! | `intersection-csv` | [`IntersectionMatrix`] (no set data)     |
//! | `cogmap-json`      | [`ScenarioMap`] via [`reduce_cognitive_map`] |

mod tabular;
mod reduce;

pub use reduce::reduce_cognitive_map;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::intersection_matrix;
use crate::error::IngestError;
use crate::model::{
    validate_scenario, CognitiveMap, CognitiveMapDraft, Dim, IntersectionMatrix, ScenarioDraft,
    ScenarioMap,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    ScenarioJson,
    IncidenceCsv,
    IntersectionCsv,
    CogmapJson,
}

impl InputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            InputFormat::ScenarioJson => "scenario-json",
            InputFormat::IncidenceCsv => "incidence-csv",
            InputFormat::IntersectionCsv => "intersection-csv",
            InputFormat::CogmapJson => "cogmap-json",
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scenario-json" => Ok(InputFormat::ScenarioJson),
            "incidence-csv" => Ok(InputFormat::IncidenceCsv),
            "intersection-csv" => Ok(InputFormat::IntersectionCsv),
            "cogmap-json" => Ok(InputFormat::CogmapJson),
            other => Err(format!("unknown input format `{other}`")),
        }
    }
}

/// Raw input awaiting [`parse_scenario`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioDocument {
    pub format: InputFormat,
    pub payload: Vec<u8>,
    /// Overrides any label carried by the payload.
    pub label: Option<String>,
}

impl ScenarioDocument {
    pub fn new(format: InputFormat, payload: impl Into<Vec<u8>>) -> Self {
        ScenarioDocument {
            format,
            payload: payload.into(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// A scenario ready for analysis: either full consequence sets or only
/// their pairwise intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioInput {
    Map(ScenarioMap),
    Matrix {
        matrix: IntersectionMatrix,
        label: Option<String>,
    },
}

/// `intersection-csv` content in JSON form, used for storage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub ids: Vec<String>,
    pub dims: Vec<Vec<Dim>>,
}

impl ScenarioInput {
    pub fn label(&self) -> Option<&str> {
        match self {
            ScenarioInput::Map(map) => map.label(),
            ScenarioInput::Matrix { label, .. } => label.as_deref(),
        }
    }

    pub fn with_label(self, label: Option<String>) -> Self {
        match self {
            ScenarioInput::Map(map) => ScenarioInput::Map(map.with_label(label)),
            ScenarioInput::Matrix { matrix, .. } => ScenarioInput::Matrix { matrix, label },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioInput::Map(_) => "scenario-map",
            ScenarioInput::Matrix { .. } => "intersection-matrix",
        }
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        match self {
            ScenarioInput::Map(map) => intersection_matrix(map),
            ScenarioInput::Matrix { matrix, .. } => matrix.clone(),
        }
    }

    pub fn is_one_to_one(&self) -> bool {
        match self {
            ScenarioInput::Map(map) => map.is_one_to_one(),
            ScenarioInput::Matrix { matrix, .. } => matrix.is_one_to_one(),
        }
    }

    pub fn alternative_ids(&self) -> Vec<String> {
        match self {
            ScenarioInput::Map(map) => map.alternative_ids(),
            ScenarioInput::Matrix { matrix, .. } => matrix.ids().to_vec(),
        }
    }

    /// Labels of alternatives that carry one distinct from their id.
    pub fn alternative_labels(&self) -> Vec<(String, String)> {
        match self {
            ScenarioInput::Map(map) => map
                .alternatives()
                .iter()
                .filter(|a| a.concept().label() != a.id())
                .map(|a| (a.id().to_string(), a.concept().label().to_string()))
                .collect(),
            ScenarioInput::Matrix { .. } => Vec::new(),
        }
    }

    /// Canonical JSON content: `scenario-json` for maps, [`MatrixDocument`]
    /// for matrices.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ScenarioInput::Map(map) => serde_json::to_value(map.to_draft()),
            ScenarioInput::Matrix { matrix, label } => serde_json::to_value(MatrixDocument {
                label: label.clone(),
                ids: matrix.ids().to_vec(),
                dims: matrix.rows().to_vec(),
            }),
        }
        .expect("scenario content serializes")
    }

    /// `sha256:` digest of the canonical content.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&self.to_json()).expect("scenario content serializes");
        format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
    }

    /// Inverse of [`to_json`](Self::to_json) for the given kind.
    pub fn from_json(kind: &str, value: serde_json::Value) -> Result<Self, IngestError> {
        match kind {
            "scenario-map" => {
                let draft: ScenarioDraft = serde_json::from_value(value).map_err(json_error)?;
                Ok(ScenarioInput::Map(validate_scenario(&draft)?))
            }
            "intersection-matrix" => {
                let doc: MatrixDocument = serde_json::from_value(value).map_err(json_error)?;
                Ok(ScenarioInput::Matrix {
                    matrix: IntersectionMatrix::new(doc.ids, doc.dims)?,
                    label: doc.label,
                })
            }
            other => Err(IngestError::Schema(format!("unknown scenario kind `{other}`"))),
        }
    }
}

/// Parse outcome plus non-fatal diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub scenario: ScenarioInput,
    pub warnings: Vec<String>,
}

pub fn parse_scenario(doc: &ScenarioDocument) -> Result<Parsed, IngestError> {
    let text = std::str::from_utf8(&doc.payload)
        .map_err(|e| IngestError::Malformed(format!("payload is not UTF-8: {e}")))?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    if text.trim().is_empty() {
        return Err(IngestError::Malformed("empty document".into()));
    }

    let mut warnings = Vec::new();
    let scenario = match doc.format {
        InputFormat::ScenarioJson => {
            let draft: ScenarioDraft = serde_json::from_str(text).map_err(json_error)?;
            ScenarioInput::Map(validate_scenario(&draft)?)
        }
        InputFormat::CogmapJson => {
            let draft: CognitiveMapDraft = serde_json::from_str(text).map_err(json_error)?;
            let signed = draft.edges.iter().filter(|e| e.sign.is_some()).count();
            if signed > 0 {
                warnings.push(format!(
                    "ignored the sign of {signed} causal link(s); links are treated as unsigned"
                ));
            }
            let map = CognitiveMap::from_draft(&draft)?;
            ScenarioInput::Map(reduce_cognitive_map(&map)?)
        }
        InputFormat::IncidenceCsv => ScenarioInput::Map(tabular::parse_incidence(text)?),
        InputFormat::IntersectionCsv => ScenarioInput::Matrix {
            matrix: tabular::parse_intersections(text)?,
            label: None,
        },
    };
    let scenario = match &doc.label {
        Some(label) => scenario.with_label(Some(label.clone())),
        None => scenario,
    };
    Ok(Parsed { scenario, warnings })
}

/// `scenario-json` text for a validated map.
pub fn serialize_scenario(map: &ScenarioMap) -> String {
    let mut out =
        serde_json::to_string_pretty(&map.to_draft()).expect("scenario draft serializes");
    out.push('\n');
    out
}

/// Guesses the format from the file name, looking into JSON payloads to
/// tell cognitive maps from scenario maps.
pub fn detect_format(path: &Path, payload: &[u8]) -> Option<InputFormat> {
    let name = path.file_name()?.to_str()?.to_ascii_lowercase();
    if name.ends_with(".intersections.csv") || name.ends_with(".intersection.csv") {
        Some(InputFormat::IntersectionCsv)
    } else if name.ends_with(".csv") {
        Some(InputFormat::IncidenceCsv)
    } else if name.ends_with(".cogmap.json") {
        Some(InputFormat::CogmapJson)
    } else if name.ends_with(".json") {
        Some(sniff_json(payload))
    } else {
        None
    }
}

/// `cogmap-json` when the object has a `concepts` key, else `scenario-json`.
pub fn sniff_json(payload: &[u8]) -> InputFormat {
    match serde_json::from_slice::<serde_json::Value>(payload) {
        Ok(serde_json::Value::Object(obj)) if obj.contains_key("concepts") => {
            InputFormat::CogmapJson
        }
        _ => InputFormat::ScenarioJson,
    }
}

fn json_error(err: serde_json::Error) -> IngestError {
    match err.classify() {
        serde_json::error::Category::Data => IngestError::Schema(err.to_string()),
        _ => IngestError::Malformed(err.to_string()),
    }
}
