//! Local session API: live defender sessions and analysis over HTTP JSON.
//!
//! Each session sits behind its own mutex, so attacks on one session are
//! handled one at a time while other sessions proceed. Winning-set and
//! analysis computations run on blocking threads, at most `workers` at once.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::{Mutex, RwLock, Semaphore};

use mguard::oracle::{guards_move_reachable, is_dominating, Budget, GuardConfig, OracleError};
use mguard::strategy::{AttackOutcome, DefenderSession, DefenseStrategy, SessionError, SessionMode};
use mguard::Graph;

use crate::analysis::{analyze, split_strategy, MethodChoice, Param};
use crate::presets;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub budget: u64,
    pub persist: Option<PathBuf>,
    pub workers: usize,
}

struct Entry {
    id: String,
    session: DefenderSession,
    strategy: Option<DefenseStrategy>,
}

pub struct AppState {
    config: ServiceConfig,
    sessions: RwLock<HashMap<String, Arc<Mutex<Entry>>>>,
    next_id: AtomicU64,
    workers: Semaphore,
}

/// Snapshot written under `--persist`, one file per session.
#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Snapshot {
    id: String,
    graph: Graph,
    k: usize,
    mode: SessionMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strategy: Option<DefenseStrategy>,
    config: GuardConfig,
    history: Vec<AttackOutcome>,
}

impl AppState {
    /// Fresh state; with a persistence directory, earlier snapshots are
    /// loaded back.
    pub fn new(config: ServiceConfig) -> Result<Arc<Self>, String> {
        let state = AppState {
            workers: Semaphore::new(config.workers.max(1)),
            config,
            sessions: RwLock::new(HashMap::new()),
            next_id: AtomicU64::new(1),
        };
        if let Some(dir) = &state.config.persist {
            std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            let mut sessions = HashMap::new();
            let mut max_id = 0;
            let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
                .map_err(|e| format!("{}: {e}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            for path in paths {
                let entry = restore(&path, state.config.budget).map_err(|e| format!("{}: {e}", path.display()))?;
                if let Ok(n) = entry.id.parse::<u64>() {
                    max_id = max_id.max(n);
                }
                sessions.insert(entry.id.clone(), Arc::new(Mutex::new(entry)));
            }
            state.next_id.store(max_id + 1, Ordering::Relaxed);
            state.sessions.try_write().expect("no other users yet").extend(sessions);
        }
        Ok(Arc::new(state))
    }

    fn persist(&self, e: &Entry) {
        let Some(dir) = &self.config.persist else { return };
        let snap = Snapshot {
            id: e.id.clone(),
            graph: e.session.graph().clone(),
            k: e.session.k(),
            mode: e.session.mode(),
            strategy: e.strategy.clone(),
            config: e.session.config().clone(),
            history: e.session.history().to_vec(),
        };
        if let Ok(text) = serde_json::to_string_pretty(&snap) {
            // Snapshots are best effort; the in-memory session stays
            // authoritative.
            let _ = std::fs::write(dir.join(format!("{}.json", e.id)), text);
        }
    }
}

fn restore(path: &std::path::Path, budget: u64) -> Result<Entry, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let snap: Snapshot = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let mut session = match (&snap.mode, &snap.strategy) {
        (SessionMode::Strategy, Some(s)) => DefenderSession::with_strategy(&snap.graph, s.clone()),
        (SessionMode::Strategy, None) => return Err("strategy session without a strategy".into()),
        (SessionMode::Oracle, _) => DefenderSession::oracle(&snap.graph, snap.k, &mut Budget::new(budget)),
    }
    .map_err(|e| e.to_string())?;
    session.restore(snap.config, snap.history).map_err(|e| e.to_string())?;
    Ok(Entry { id: snap.id, session, strategy: snap.strategy })
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/session", post(create_session))
        .route("/api/session/{id}", get(get_session).delete(delete_session))
        .route("/api/session/{id}/attack", post(attack))
        .route("/api/analyze", post(analyze_handler))
        .with_state(state)
}

/// JSON error body `{error, message}` with a status code.
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into() }
    }
    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }
    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", format!("no session {id}"))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.code, "message": self.message }))).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let message = e.to_string();
        match e {
            SessionError::Infeasible { .. } => Self::new(StatusCode::CONFLICT, "infeasible", message),
            SessionError::Unproven(_) => Self::new(StatusCode::CONFLICT, "unproven_strategy", message),
            SessionError::VertexOutOfRange { .. } => Self::bad_request(message),
            SessionError::Oracle(OracleError::BudgetExceeded { .. }) => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, "budget_exceeded", message)
            }
            SessionError::Oracle(OracleError::Graph(_)) => Self::bad_request(message),
            _ => Self::new(StatusCode::INTERNAL_SERVER_ERROR, "defense_failed", message),
        }
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn field<T: serde::de::DeserializeOwned>(body: &Value, name: &str) -> ApiResult<Option<T>> {
    match body.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v.clone()).map(Some).map_err(|e| ApiError::bad_request(format!("{name}: {e}"))),
    }
}

/// `graph` (inline) or `graphRef` (preset name); returns the preset name too.
fn graph_of(body: &Value) -> ApiResult<(Graph, Option<String>)> {
    if let Some(g) = field::<Graph>(body, "graph")? {
        return Ok((g, None));
    }
    let name: String = field(body, "graphRef")?.ok_or_else(|| ApiError::bad_request("graph or graphRef is required"))?;
    let g = presets::graph(&name)
        .ok_or_else(|| ApiError::bad_request(format!("unknown graphRef {name:?}; known: {}", presets::NAMES.join(", "))))?;
    Ok((g, Some(name)))
}

async fn blocking<T: Send + 'static>(state: &AppState, f: impl FnOnce() -> T + Send + 'static) -> ApiResult<T> {
    let _permit = state.workers.acquire().await.map_err(|e| ApiError::bad_request(e.to_string()))?;
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))
}

fn session_view(e: &Entry, full: bool) -> Value {
    let s = &e.session;
    let mut v = json!({
        "id": e.id,
        "k": s.k(),
        "mode": s.mode(),
        "config": s.config(),
    });
    if full {
        v["graph"] = json!(s.graph());
        v["history"] = json!(s.history());
    }
    v
}

async fn create_session(State(state): State<Arc<AppState>>, Json(body): Json<Value>) -> ApiResult<(StatusCode, Json<Value>)> {
    let (g, preset) = graph_of(&body)?;
    let k: usize = field(&body, "k")?.ok_or_else(|| ApiError::bad_request("k is required"))?;
    let mode: SessionMode = field(&body, "mode")?.unwrap_or(SessionMode::Oracle);
    let given: Option<DefenseStrategy> = field(&body, "strategy")?;
    let budget = state.config.budget;
    let (session, strategy) = blocking(&state, move || -> ApiResult<_> {
        match mode {
            SessionMode::Oracle => Ok((DefenderSession::oracle(&g, k, &mut Budget::new(budget))?, None)),
            SessionMode::Strategy => {
                let s = match given {
                    Some(s) => s,
                    None => match preset.as_deref().and_then(presets::strategy) {
                        Some(s) => s,
                        None => split_strategy(&g)
                            .map_err(|e| ApiError::new(StatusCode::CONFLICT, "no_strategy", e))?,
                    },
                };
                if s.k != k {
                    return Err(ApiError::new(
                        StatusCode::CONFLICT,
                        "guard_count",
                        format!("the strategy uses {} guards, {k} requested", s.k),
                    ));
                }
                Ok((DefenderSession::with_strategy(&g, s.clone())?, Some(s)))
            }
        }
    })
    .await??;
    let id = state.next_id.fetch_add(1, Ordering::Relaxed).to_string();
    let entry = Entry { id: id.clone(), session, strategy };
    state.persist(&entry);
    let view = session_view(&entry, false);
    state.sessions.write().await.insert(id, Arc::new(Mutex::new(entry)));
    Ok((StatusCode::CREATED, Json(view)))
}

async fn lookup(state: &AppState, id: &str) -> ApiResult<Arc<Mutex<Entry>>> {
    state.sessions.read().await.get(id).cloned().ok_or_else(|| ApiError::not_found(id))
}

async fn get_session(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let entry = lookup(&state, &id).await?;
    let e = entry.lock().await;
    Ok(Json(session_view(&e, true)))
}

async fn delete_session(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<StatusCode> {
    state.sessions.write().await.remove(&id).ok_or_else(|| ApiError::not_found(&id))?;
    if let Some(dir) = &state.config.persist {
        let _ = std::fs::remove_file(dir.join(format!("{id}.json")));
    }
    Ok(StatusCode::NO_CONTENT)
}

async fn attack(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(body): Json<Value>,
) -> ApiResult<Json<Value>> {
    let vertex: usize = field(&body, "vertex")?.ok_or_else(|| ApiError::bad_request("vertex is required"))?;
    let entry = lookup(&state, &id).await?;
    let mut e = entry.lock().await;
    let before = e.session.config().clone();
    let out = e.session.attack(vertex)?;
    // Independent re-check before replying.
    let g = e.session.graph();
    let legal = guards_move_reachable(g, &before, &out.config).unwrap_or(false);
    if !legal || !out.config.contains(vertex) || !is_dominating(g, out.config.vertices()) {
        return Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "defense_failed", "response failed the re-check"));
    }
    state.persist(&e);
    Ok(Json(json!({ "attack": vertex, "moves": out.moves, "config": out.config })))
}

async fn analyze_handler(State(state): State<Arc<AppState>>, Json(body): Json<Value>) -> ApiResult<Json<Value>> {
    let (g, _) = graph_of(&body)?;
    let params: Vec<Param> = field(&body, "params")?.unwrap_or_else(|| vec![Param::Gamma, Param::Alpha, Param::Medn]);
    let method: MethodChoice = field(&body, "method")?.unwrap_or_default();
    let budget = state.config.budget;
    let report = blocking(&state, move || analyze(&g, &params, method, budget, false))
        .await?
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(Json(json!(report)))
}
