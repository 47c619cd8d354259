use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use qscen_core::{
    analyze, compare_variants, export_dot, parse_scenario, sniff_json, AnalysisReport, DiffView,
    IngestError, InputFormat, LineGraphRequest, RenderOptions, ReportOptions, ScenarioDocument,
    Variant,
};
use serde_json::{json, Value};

use crate::edit::EditBatch;
use crate::store::{Record, Store, StoreError};

type Params = Query<BTreeMap<String, String>>;

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/scenarios", get(list_scenarios).post(create_scenario))
        .route("/scenarios/{id}", get(get_scenario).patch(patch_scenario))
        .route("/scenarios/{id}/analysis", get(analysis))
        .route("/scenarios/{id}/linegraph", get(linegraph))
        .route("/scenarios/{id}/compare/{other}", get(compare))
        .with_state(store)
}

/// Error body: `{"reason": .., "cause"?: .., "message": .., ...}`.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    reason: &'static str,
    cause: Option<&'static str>,
    message: String,
    extra: Vec<(&'static str, Value)>,
}

impl ApiError {
    fn new(status: StatusCode, reason: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            reason,
            cause: None,
            message: message.into(),
            extra: Vec::new(),
        }
    }

    fn query(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "InvalidQuery", message)
    }

    fn with(mut self, key: &'static str, value: Value) -> Self {
        self.extra.push((key, value));
        self
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = serde_json::Map::new();
        body.insert("reason".into(), self.reason.into());
        if let Some(cause) = self.cause {
            body.insert("cause".into(), cause.into());
        }
        body.insert("message".into(), self.message.into());
        for (key, value) in self.extra {
            body.insert(key.into(), value);
        }
        (self.status, Json(Value::Object(body))).into_response()
    }
}

impl From<IngestError> for ApiError {
    fn from(err: IngestError) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            reason: err.kind(),
            cause: err.cause(),
            message: err.to_string(),
            extra: Vec::new(),
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(err: StoreError) -> Self {
        let message = err.to_string();
        match err {
            StoreError::NotFound(_) => ApiError::new(StatusCode::NOT_FOUND, "NotFound", message),
            StoreError::Stale { current, .. } => {
                ApiError::new(StatusCode::CONFLICT, "StaleRevision", message)
                    .with("revision", current.into())
            }
            StoreError::NotEditable(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "NotEditable", message)
            }
            StoreError::Invalid(inner) => ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                reason: "ValidationFailure",
                cause: Some(inner.kind()),
                message,
                extra: Vec::new(),
            },
            StoreError::Io { .. } | StoreError::Corrupt { .. } => {
                tracing::error!(%message, "storage failure");
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "StorageError", message)
            }
        }
    }
}

fn etag(revision: u64) -> [(header::HeaderName, HeaderValue); 1] {
    [(
        header::ETAG,
        HeaderValue::from_str(&format!("\"{revision}\"")).expect("valid etag"),
    )]
}

fn summary(record: &Record) -> Value {
    json!({
        "id": record.id,
        "revision": record.revision,
        "kind": record.scenario.kind(),
        "label": record.scenario.label(),
        "digest": record.digest,
    })
}

fn request_format(params: &BTreeMap<String, String>, headers: &HeaderMap, body: &[u8]) -> Result<InputFormat, ApiError> {
    if let Some(format) = params.get("format") {
        return InputFormat::from_str(format).map_err(|_| {
            ApiError::new(StatusCode::BAD_REQUEST, "UnknownFormat", format!("unknown format `{format}`"))
        });
    }
    let content_type = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or("");
    if content_type.starts_with("text/csv") {
        return Ok(InputFormat::IncidenceCsv);
    }
    let text = String::from_utf8_lossy(body);
    Ok(if text.trim_start().starts_with('{') || content_type.contains("json") {
        sniff_json(body)
    } else {
        InputFormat::IncidenceCsv
    })
}

async fn list_scenarios(State(store): State<Arc<Store>>) -> Json<Value> {
    let ids = store.ids();
    let list: Vec<Value> = ids
        .iter()
        .filter_map(|id| store.get(id).ok())
        .map(|r| summary(&r))
        .collect();
    Json(json!({ "scenarios": list }))
}

/// `POST /scenarios[?format=..&label=..]`; the body is the raw document.
async fn create_scenario(
    State(store): State<Arc<Store>>,
    Query(params): Params,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, ApiError> {
    let format = request_format(&params, &headers, &body)?;
    let mut doc = ScenarioDocument::new(format, body.to_vec());
    if let Some(label) = params.get("label") {
        doc = doc.with_label(label.clone());
    }
    let parsed = parse_scenario(&doc)?;
    let record = store.create(parsed.scenario)?;
    tracing::info!(id = %record.id, format = %format, "scenario created");
    let mut body = summary(&record);
    body["warnings"] = json!(parsed.warnings);
    let location = HeaderValue::from_str(&format!("/scenarios/{}", record.id)).expect("valid location");
    Ok((
        StatusCode::CREATED,
        etag(record.revision),
        [(header::LOCATION, location)],
        Json(body),
    )
        .into_response())
}

async fn get_scenario(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let record = store.get(&id)?;
    let mut body = summary(&record);
    body["content"] = record.scenario.to_json();
    Ok((etag(record.revision), Json(body)).into_response())
}

/// Accepts `If-Match: 3`, `If-Match: "3"` or `W/"3"`.
fn if_match(headers: &HeaderMap) -> Result<Option<u64>, ApiError> {
    let Some(value) = headers.get(header::IF_MATCH) else {
        return Ok(None);
    };
    let bad = || ApiError::new(StatusCode::BAD_REQUEST, "InvalidPrecondition", "If-Match must carry a revision number");
    let text = value.to_str().map_err(|_| bad())?.trim();
    let text = text.strip_prefix("W/").unwrap_or(text).trim_matches('"');
    text.parse().map(Some).map_err(|_| bad())
}

async fn patch_scenario(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, ApiError> {
    let expected = if_match(&headers)?;
    let batch: EditBatch = serde_json::from_slice(&body).map_err(|e| {
        let err = match e.classify() {
            serde_json::error::Category::Data => IngestError::Schema(e.to_string()),
            _ => IngestError::Malformed(e.to_string()),
        };
        ApiError::from(err)
    })?;
    let record = store.update(&id, expected, &batch.into_edits())?;
    tracing::info!(id = %record.id, revision = record.revision, "scenario updated");
    let mut body = summary(&record);
    body["content"] = record.scenario.to_json();
    Ok((etag(record.revision), Json(body)).into_response())
}

fn list<T: FromStr>(value: Option<&String>, what: &str) -> Result<Vec<T>, ApiError> {
    value
        .map(|v| {
            v.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<T>().map_err(|_| ApiError::query(format!("invalid {what} `{s}`"))))
                .collect()
        })
        .unwrap_or_else(|| Ok(Vec::new()))
}

fn options(params: &BTreeMap<String, String>) -> Result<ReportOptions, ApiError> {
    let mut options = ReportOptions::default();
    if let Some(v) = params.get("variant") {
        options.variant = v.parse::<Variant>().map_err(|_| ApiError::query(format!("unknown variant `{v}`")))?;
    }
    if let Some(p) = params.get("precision") {
        options.precision = p
            .parse::<u32>()
            .ok()
            .filter(|p| *p <= 30)
            .ok_or_else(|| ApiError::query(format!("invalid precision `{p}`")))?;
    }
    for p in list::<usize>(params.get("min-dim"), "min-dim")? {
        options.line_graphs.push(LineGraphRequest::MinDim(p));
    }
    options
        .line_graphs
        .extend(list::<LineGraphRequest>(params.get("band"), "band")?);
    Ok(options)
}

fn report_for(record: &Record, options: &ReportOptions) -> Result<AnalysisReport, ApiError> {
    analyze(&record.id, &record.scenario, options)
        .map(|r| r.with_revision(record.revision))
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.kind(), e.to_string()))
}

/// `GET /scenarios/{id}/analysis?variant=..&min-dim=..&band=lo:hi&precision=..`
async fn analysis(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let options = options(&params)?;
    let record = store.get(&id)?;
    let report = report_for(&record, &options)?;
    if let Some(condition) = report.condition() {
        let message = "no two alternatives share a consequence; structure vector and complexity are undefined";
        return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, condition, message)
            .with("report", serde_json::to_value(&report).expect("report serializes")));
    }
    Ok((etag(record.revision), Json(report)).into_response())
}

/// `GET /scenarios/{id}/linegraph?min-dim=N|band=lo:hi[&format=dot]`
async fn linegraph(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let request = match (params.get("min-dim"), params.get("band")) {
        (Some(p), None) => LineGraphRequest::MinDim(
            p.parse().map_err(|_| ApiError::query(format!("invalid min-dim `{p}`")))?,
        ),
        (None, Some(b)) => b.parse().map_err(ApiError::query)?,
        _ => return Err(ApiError::query("exactly one of min-dim or band is required")),
    };
    let record = store.get(&id)?;
    let matrix = record.scenario.intersection_matrix();
    let graph = request
        .build(&matrix)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.kind(), e.to_string()))?;

    match params.get("format").map(String::as_str) {
        Some("dot") => {
            let style = RenderOptions {
                name: Some(record.id.clone()),
                labels: record.scenario.alternative_labels().into_iter().collect(),
            };
            Ok((
                etag(record.revision),
                [(header::CONTENT_TYPE, HeaderValue::from_static("text/vnd.graphviz"))],
                export_dot(&graph, &style),
            )
                .into_response())
        }
        None | Some("json") => {
            let components: Vec<Vec<&str>> = graph
                .components()
                .iter()
                .map(|c| c.iter().map(|&h| matrix.ids()[h].as_str()).collect())
                .collect();
            let body = json!({
                "scenario": {"id": record.id, "revision": record.revision, "digest": record.digest},
                "line_graph": graph,
                "components": components,
            });
            Ok((etag(record.revision), Json(body)).into_response())
        }
        Some(other) => Err(ApiError::query(format!("unknown format `{other}`"))),
    }
}

/// `GET /scenarios/{id}/compare/{other}`: `other` relative to `id`.
async fn compare(
    State(store): State<Arc<Store>>,
    Path((id, other)): Path<(String, String)>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let options = options(&params)?;
    let (a, b) = (store.get(&id)?, store.get(&other)?);
    let (ra, rb) = (report_for(&a, &options)?, report_for(&b, &options)?);
    let diff = compare_variants(&ra, &rb);
    let view = DiffView {
        diff: &diff,
        precision: options.precision,
    };
    let body = json!({
        "a": {"id": a.id, "revision": a.revision, "digest": a.digest},
        "b": {"id": b.id, "revision": b.revision, "digest": b.digest},
        "diff": view,
    });
    Ok(Json(body).into_response())
}
