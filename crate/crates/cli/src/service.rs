//! HTTP+JSON job service.
//!
//! Jobs run on the blocking pool, at most `service.max_jobs` at a time. The
//! job registry is the only shared state; handlers hold its lock briefly and
//! never across an await point.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use axum::extract::{Path, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::Semaphore;

use mirrorplan::analysis::{convergence_trace, TraceRow};
use mirrorplan::io::{pareto_rows, render_svg, write_run_outputs, ParetoRow, RunConfig, PARETO_HEADER, SCHEMA_VERSION};
use mirrorplan::harmony::run_optimization_with;
use mirrorplan::{ArrangementSolution, OptimizationRun};

use crate::commands::{self, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JobState {
    Queued,
    Running,
    Done,
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct JobRecord {
    pub id: String,
    pub state: JobState,
    /// Iterations completed.
    pub progress: usize,
    pub iterations: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

struct JobResult {
    config: RunConfig,
    run: OptimizationRun<ArrangementSolution>,
    rows: Vec<ParetoRow>,
}

struct Job {
    record: JobRecord,
    result: Option<Arc<JobResult>>,
}

pub struct AppState {
    base: RunConfig,
    jobs: RwLock<HashMap<String, Job>>,
    slots: Arc<Semaphore>,
    next_id: AtomicU64,
    /// Finished jobs are also written below this directory when set.
    write_through: Option<PathBuf>,
}

impl AppState {
    pub fn new(base: RunConfig, write_through: Option<PathBuf>) -> Arc<Self> {
        let slots = Arc::new(Semaphore::new(base.service.max_jobs));
        Arc::new(Self { base, jobs: RwLock::default(), slots, next_id: AtomicU64::new(1), write_through })
    }

    fn update(&self, id: &str, f: impl FnOnce(&mut Job)) {
        if let Some(job) = self.jobs.write().expect("registry lock").get_mut(id) {
            f(job);
        }
    }

    fn record(&self, id: &str) -> Option<(JobRecord, Option<Arc<JobResult>>)> {
        self.jobs.read().expect("registry lock").get(id).map(|j| (j.record.clone(), j.result.clone()))
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/v1/config", get(get_config))
        .route("/api/v1/evaluate", post(post_evaluate))
        .route("/api/v1/jobs", post(post_job))
        .route("/api/v1/jobs/{id}", get(get_job))
        .route("/api/v1/jobs/{id}/pareto", get(get_pareto))
        .route("/api/v1/jobs/{id}/trace", get(get_trace))
        .route("/api/v1/jobs/{id}/arrangement/{file}", get(get_arrangement))
        .layer(tower_http::cors::CorsLayer::permissive())
        .with_state(state)
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "schema_version": SCHEMA_VERSION, "error": message.into() }))).into_response()
}

fn versioned<T: Serialize>(body: T) -> Json<Value> {
    let mut value = serde_json::to_value(body).expect("serializable payload");
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
    }
    Json(value)
}

async fn get_config(State(state): State<Arc<AppState>>) -> Json<Value> {
    versioned(json!({ "config": state.base }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateBody {
    a: f64,
    b: f64,
    c: f64,
    theta1_deg: f64,
}

fn parse_body<T: serde::de::DeserializeOwned>(body: &str) -> Result<T, Response> {
    serde_json::from_str(body).map_err(|e| error(StatusCode::BAD_REQUEST, format!("invalid body: {e}")))
}

async fn post_evaluate(State(state): State<Arc<AppState>>, body: String) -> Response {
    let body: EvaluateBody = match parse_body(&body) {
        Ok(b) => b,
        Err(r) => return r,
    };
    match commands::evaluate(&state.base, body.a, body.b, body.c, body.theta1_deg) {
        Ok(doc) => Json(doc).into_response(),
        Err(e) if e.code == CliError::GEOMETRIC_FAILURE => error(StatusCode::UNPROCESSABLE_ENTITY, e.message),
        Err(e) => error(StatusCode::BAD_REQUEST, e.message),
    }
}

/// Recursively overlays `patch` onto `base`.
fn merge(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                merge(b.entry(k).or_insert(Value::Null), v);
            }
        }
        (slot, v) => *slot = v,
    }
}

async fn post_job(State(state): State<Arc<AppState>>, body: String) -> Response {
    let patch: Value = if body.trim().is_empty() {
        json!({})
    } else {
        match parse_body(&body) {
            Ok(v) => v,
            Err(r) => return r,
        }
    };
    if !patch.is_object() {
        return error(StatusCode::BAD_REQUEST, "body must be a JSON object of config overrides");
    }
    let mut merged = serde_json::to_value(&state.base).expect("config serializes");
    merge(&mut merged, patch);
    let config = match RunConfig::from_json(&merged.to_string()) {
        Ok(c) => c,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };

    let id = format!("job-{:06}", state.next_id.fetch_add(1, Ordering::Relaxed));
    let record = JobRecord {
        id: id.clone(),
        state: JobState::Queued,
        progress: 0,
        iterations: config.hs.iterations,
        seed: config.hs.seed,
        error: None,
    };
    state.jobs.write().expect("registry lock").insert(id.clone(), Job { record: record.clone(), result: None });
    tokio::spawn(run_job(state.clone(), id, config));
    (StatusCode::ACCEPTED, versioned(record)).into_response()
}

async fn run_job(state: Arc<AppState>, id: String, config: RunConfig) {
    let Ok(_permit) = state.slots.clone().acquire_owned().await else { return };
    state.update(&id, |j| j.record.state = JobState::Running);
    let worker_state = state.clone();
    let worker_id = id.clone();
    let outcome = tokio::task::spawn_blocking(move || execute(&worker_state, &worker_id, config)).await;
    let outcome = outcome.unwrap_or_else(|e| Err(format!("job panicked: {e}")));
    state.update(&id, |j| match outcome {
        Ok(result) => {
            j.record.state = JobState::Done;
            j.result = Some(Arc::new(result));
        }
        Err(message) => {
            j.record.state = JobState::Failed;
            j.record.error = Some(message);
        }
    });
}

fn execute(state: &AppState, id: &str, config: RunConfig) -> Result<JobResult, String> {
    let problem = config.problem().map_err(|e| e.to_string())?;
    let spec = problem.spec().map_err(|e| e.to_string())?;
    let run = run_optimization_with(&spec, &problem, &config.hs, |t| {
        state.update(id, |j| j.record.progress = t.iteration + 1)
    })
    .map_err(|e| e.to_string())?;
    if let Some(root) = &state.write_through {
        write_run_outputs(&root.join(id), &config.scene, &spec, &run, 50).map_err(|e| e.to_string())?;
    }
    let rows = pareto_rows(run.archive.members(), &spec.objective_scales);
    Ok(JobResult { config, run, rows })
}

async fn get_job(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Response {
    match state.record(&id) {
        Some((record, _)) => versioned(record).into_response(),
        None => error(StatusCode::NOT_FOUND, format!("unknown job {id}")),
    }
}

/// The finished result of a job, or the response explaining why there is none.
fn finished(state: &AppState, id: &str) -> Result<Arc<JobResult>, Response> {
    match state.record(id) {
        None => Err(error(StatusCode::NOT_FOUND, format!("unknown job {id}"))),
        Some((_, Some(result))) => Ok(result),
        Some((record, None)) => Err(error(
            StatusCode::CONFLICT,
            format!("job {id} is {}", serde_json::to_value(record.state).expect("state")),
        )),
    }
}

async fn get_pareto(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Response {
    match finished(&state, &id) {
        Ok(result) => versioned(json!({ "id": id, "columns": PARETO_HEADER, "rows": result.rows })).into_response(),
        Err(r) => r,
    }
}

async fn get_trace(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Response {
    match finished(&state, &id) {
        Ok(result) => {
            let rows: Vec<TraceRow> = convergence_trace(&result.run);
            versioned(json!({ "id": id, "rows": rows })).into_response()
        }
        Err(r) => r,
    }
}

async fn get_arrangement(State(state): State<Arc<AppState>>, Path((id, file)): Path<(String, String)>) -> Response {
    let result = match finished(&state, &id) {
        Ok(r) => r,
        Err(r) => return r,
    };
    let Some(row) = file.strip_suffix(".svg").and_then(|s| s.parse::<usize>().ok()) else {
        return error(StatusCode::BAD_REQUEST, "expected <row>.svg with a 1-based row number");
    };
    let Some(wanted) = row.checked_sub(1).and_then(|i| result.rows.get(i)) else {
        return error(StatusCode::NOT_FOUND, format!("job {id} has no pareto row {row}"));
    };
    let member = result
        .run
        .archive
        .members()
        .iter()
        .find(|m| m.x == [wanted.a_mm, wanted.b_mm, wanted.c_mm, wanted.theta1_rad])
        .expect("pareto rows come from the archive");
    let svg = render_svg(&result.config.scene, &member.detail);
    (
        [
            (header::CONTENT_TYPE, HeaderValue::from_static("image/svg+xml")),
            (header::HeaderName::from_static("x-schema-version"), HeaderValue::from(SCHEMA_VERSION)),
        ],
        svg,
    )
        .into_response()
}

/// Binds `host:port` and serves until the process is stopped.
pub async fn serve(state: Arc<AppState>, host: &str, port: u16) -> Result<(), CliError> {
    let listener = tokio::net::TcpListener::bind((host, port))
        .await
        .map_err(|e| CliError::new(CliError::PORT_BUSY, format!("cannot bind {host}:{port}: {e}")))?;
    eprintln!("listening on http://{}", listener.local_addr().map_err(|e| CliError::new(1, e.to_string()))?);
    axum::serve(listener, router(state)).await.map_err(|e| CliError::new(1, e.to_string()))
}
