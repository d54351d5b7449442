use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use mguard::oracle::{guards_move_reachable, is_dominating, GuardConfig};
use mguard::Graph;
use mguard_cli::service::{router, AppState, ServiceConfig};

fn state(persist: Option<std::path::PathBuf>) -> Arc<AppState> {
    AppState::new(ServiceConfig { budget: 50_000_000, persist, workers: 2 }).unwrap()
}

async fn call(state: &Arc<AppState>, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = router(state.clone()).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let v = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, v)
}

fn star_json() -> Value {
    json!({ "n": 5, "edges": [[0, 1], [0, 2], [0, 3], [0, 4]] })
}

fn config(v: &Value) -> GuardConfig {
    serde_json::from_value(v.clone()).unwrap()
}

#[tokio::test]
async fn star_session_lifecycle() {
    let st = state(None);
    let (status, created) = call(&st, Method::POST, "/api/session", Some(json!({ "graph": star_json(), "k": 2 }))).await;
    assert_eq!(status, StatusCode::CREATED);
    let id = created["id"].as_str().unwrap().to_string();
    assert_eq!(created["config"].as_array().unwrap().len(), 2);

    let g = Graph::star(4);
    let mut prev = config(&created["config"]);
    for leaf in [3, 1, 4, 2, 3] {
        let (status, out) = call(&st, Method::POST, &format!("/api/session/{id}/attack"), Some(json!({ "vertex": leaf }))).await;
        assert_eq!(status, StatusCode::OK);
        let next = config(&out["config"]);
        assert!(next.contains(leaf) && next.contains(0));
        assert!(is_dominating(&g, next.vertices()));
        assert!(guards_move_reachable(&g, &prev, &next).unwrap());
        prev = next;
    }

    let (status, view) = call(&st, Method::GET, &format!("/api/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["history"].as_array().unwrap().len(), 5);
    assert_eq!(view["mode"], "oracle");

    let (status, err) = call(&st, Method::POST, &format!("/api/session/{id}/attack"), Some(json!({ "vertex": 9 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["error"], "bad_request");

    let (status, _) = call(&st, Method::DELETE, &format!("/api/session/{id}"), None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    let (status, err) = call(&st, Method::GET, &format!("/api/session/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["error"], "not_found");
}

#[tokio::test]
async fn infeasible_and_malformed_requests() {
    let st = state(None);
    let (status, err) = call(&st, Method::POST, "/api/session", Some(json!({ "graph": star_json(), "k": 1 }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "infeasible");
    let (status, _) = call(&st, Method::POST, "/api/session", Some(json!({ "k": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) =
        call(&st, Method::POST, "/api/session", Some(json!({ "graph": { "n": 2, "edges": [[0, 5]] }, "k": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&st, Method::POST, "/api/session", Some(json!({ "graphRef": "nope", "k": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn strategy_sessions_on_presets() {
    let st = state(None);
    let (status, created) =
        call(&st, Method::POST, "/api/session", Some(json!({ "graphRef": "x3c-sample", "k": 5, "mode": "strategy" }))).await;
    assert_eq!(status, StatusCode::CREATED, "{created}");
    let id = created["id"].as_str().unwrap();
    for v in [4, 10, 15, 2, 16, 7, 13] {
        let (status, out) = call(&st, Method::POST, &format!("/api/session/{id}/attack"), Some(json!({ "vertex": v }))).await;
        assert_eq!(status, StatusCode::OK);
        assert!(config(&out["config"]).contains(v));
    }
    let (status, err) =
        call(&st, Method::POST, "/api/session", Some(json!({ "graphRef": "x3c-sample", "k": 4, "mode": "strategy" }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "guard_count");

    // P5 oracle session with 3 guards.
    let (status, created) = call(&st, Method::POST, "/api/session", Some(json!({ "graphRef": "p5", "k": 3 }))).await;
    assert_eq!(status, StatusCode::CREATED);
    let id = created["id"].as_str().unwrap();
    for i in 0..50 {
        let v = (i * 7 + 3) % 5;
        let (status, out) = call(&st, Method::POST, &format!("/api/session/{id}/attack"), Some(json!({ "vertex": v }))).await;
        assert_eq!(status, StatusCode::OK);
        assert!(config(&out["config"]).contains(v));
    }
}

#[tokio::test]
async fn analyze_endpoint() {
    let st = state(None);
    let (status, v) = call(&st, Method::POST, "/api/analyze", Some(json!({ "graphRef": "p5", "params": ["gamma", "medn"] }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!((v["gamma"].as_u64(), v["medn"].as_u64()), (Some(2), Some(3)));
    let (status, v) = call(&st, Method::POST, "/api/analyze", Some(json!({ "graphRef": "c4", "method": "k13" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["message"].as_str().unwrap().contains("not a split graph"));
}

#[tokio::test]
async fn sessions_survive_a_restart_with_persist() {
    let dir = tempfile::tempdir().unwrap();
    let st = state(Some(dir.path().to_path_buf()));
    let (_, created) = call(&st, Method::POST, "/api/session", Some(json!({ "graphRef": "k14", "k": 2 }))).await;
    let id = created["id"].as_str().unwrap().to_string();
    let (_, out) = call(&st, Method::POST, &format!("/api/session/{id}/attack"), Some(json!({ "vertex": 3 }))).await;
    drop(st);

    let st = state(Some(dir.path().to_path_buf()));
    let (status, view) = call(&st, Method::GET, &format!("/api/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["config"], out["config"]);
    assert_eq!(view["history"].as_array().unwrap().len(), 1);
    let (_, created) = call(&st, Method::POST, "/api/session", Some(json!({ "graphRef": "k14", "k": 2 }))).await;
    assert_ne!(created["id"].as_str().unwrap(), id);
}
