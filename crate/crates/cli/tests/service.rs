use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use mirrorplan::io::RunConfig;
use mirrorplan_cli::commands;
use mirrorplan_cli::service::{router, AppState};

fn app() -> (Arc<AppState>, axum::Router) {
    let state = AppState::new(RunConfig::default(), None);
    (state.clone(), router(state))
}

async fn send(app: &axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or(Body::empty(), |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn send_json(app: &axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let (status, bytes) = send(app, method, uri, body).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

const ROW1: [f64; 4] = [187.879, 255.392, 181.091, 149.679];

#[tokio::test]
async fn evaluate_matches_command() {
    let (_, app) = app();
    let body = json!({"a": ROW1[0], "b": ROW1[1], "c": ROW1[2], "theta1_deg": ROW1[3]});
    let (status, value) = send_json(&app, "POST", "/api/v1/evaluate", Some(body)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(value["schema_version"], 1);
    let f2 = value["solution"]["f"][1].as_f64().unwrap();
    assert!((f2 - 180.589).abs() <= 0.002);

    let doc = commands::evaluate(&RunConfig::default(), ROW1[0], ROW1[1], ROW1[2], ROW1[3]).unwrap();
    assert_eq!(value, serde_json::to_value(doc).unwrap());
}

#[tokio::test]
async fn bad_requests() {
    let (_, app) = app();
    let (status, value) = send_json(&app, "POST", "/api/v1/evaluate", Some(json!({"a": 1}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(value["schema_version"], 1);
    let (status, _) =
        send_json(&app, "POST", "/api/v1/evaluate", Some(json!({"a": 0, "b": 250, "c": 180, "theta1_deg": 150}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = send_json(&app, "POST", "/api/v1/jobs", Some(json!({"hs": {"hmcr": 1.5}}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = send_json(&app, "POST", "/api/v1/jobs", Some(json!({"bogus": true}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, value) = send_json(&app, "GET", "/api/v1/jobs/job-999999", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(value["schema_version"], 1);
    let (status, _) = send_json(&app, "GET", "/api/v1/jobs/job-999999/pareto", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

async fn wait_done(app: &axum::Router, id: &str) -> Value {
    for _ in 0..600 {
        let (status, record) = send_json(app, "GET", &format!("/api/v1/jobs/{id}"), None).await;
        assert_eq!(status, StatusCode::OK);
        if record["state"] == "done" || record["state"] == "failed" {
            return record;
        }
        tokio::time::sleep(Duration::from_millis(50)).await;
    }
    panic!("job {id} did not finish");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn job_lifecycle() {
    let (_, app) = app();
    let (status, created) = send_json(&app, "POST", "/api/v1/jobs", Some(json!({"hs": {"iterations": 20}}))).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    assert_eq!(created["schema_version"], 1);
    let id = created["id"].as_str().unwrap().to_string();

    let record = wait_done(&app, &id).await;
    assert_eq!(record["state"], "done", "{record}");
    assert_eq!(record["progress"], 20);

    let (status, pareto) = send_json(&app, "GET", &format!("/api/v1/jobs/{id}/pareto"), None).await;
    assert_eq!(status, StatusCode::OK);
    let rows = pareto["rows"].as_array().unwrap();
    assert!(rows.len() <= 10);
    assert_eq!(pareto["columns"][0], "No");

    let (status, trace) = send_json(&app, "GET", &format!("/api/v1/jobs/{id}/trace"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(trace["rows"].as_array().unwrap().len(), 20);

    if !rows.is_empty() {
        let (status, svg) = send(&app, "GET", &format!("/api/v1/jobs/{id}/arrangement/1.svg"), None).await;
        assert_eq!(status, StatusCode::OK);
        let svg = String::from_utf8(svg).unwrap();
        assert_eq!(svg.matches(r#"class="mirror""#).count(), 3);
    }
    let (status, _) = send(&app, "GET", &format!("/api/v1/jobs/{id}/arrangement/99.svg"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = send(&app, "GET", &format!("/api/v1/jobs/{id}/arrangement/first.svg"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn concurrent_jobs_are_isolated() {
    let (_, app) = app();
    let mut ids = Vec::new();
    for seed in [5, 5, 6] {
        let (status, created) =
            send_json(&app, "POST", "/api/v1/jobs", Some(json!({"hs": {"iterations": 6, "seed": seed}}))).await;
        assert_eq!(status, StatusCode::ACCEPTED);
        ids.push(created["id"].as_str().unwrap().to_string());
    }
    let mut tables = Vec::new();
    for id in &ids {
        assert_eq!(wait_done(&app, id).await["state"], "done");
        tables.push(send_json(&app, "GET", &format!("/api/v1/jobs/{id}/pareto"), None).await.1["rows"].clone());
    }
    assert_eq!(tables[0], tables[1], "same seed, same table");
}
