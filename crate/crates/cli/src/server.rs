//! HTTP facade over the case base and dialectic sessions.
//!
//! Every JSON response is wrapped as `{"schema": ..., "data": ...}` or
//! `{"schema": ..., "error": ...}` and carries an `x-schema-version` header.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use caseframe::case_base::{parse_document, ParseFailure, SCHEMA};
use caseframe::engine::{export, ArgumentId, PREFERRED_CAP};
use caseframe::frame::{validate_frame, CanonClass, Issue};
use caseframe::session::{AssertionRequest, SessionError};
use caseframe::{CaseBase, CaseFrame, CaseQuery, ParseMode, ProblemFrame, Session};
use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::services::ServeDir;
use tower_http::set_header::SetResponseHeaderLayer;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub port: u16,
    pub base_file_path: PathBuf,
    pub lenient_parsing: bool,
    pub cors_origins: Vec<String>,
    pub ui_dir: Option<PathBuf>,
    pub session_ttl: Duration,
}

struct Entry {
    session: Session,
    touched: Instant,
}

pub struct AppState {
    base: RwLock<Arc<CaseBase>>,
    sessions: Mutex<HashMap<String, Arc<Mutex<Entry>>>>,
    ttl: Duration,
}

impl AppState {
    pub fn new(base: CaseBase, ttl: Duration) -> Arc<Self> {
        Arc::new(Self {
            base: RwLock::new(Arc::new(base)),
            sessions: Mutex::new(HashMap::new()),
            ttl,
        })
    }

    fn base(&self) -> Arc<CaseBase> {
        self.base.read().expect("base lock").clone()
    }

    /// Drops sessions idle for longer than the TTL. Returns how many went.
    pub fn evict_expired(&self, now: Instant) -> usize {
        let mut sessions = self.sessions.lock().expect("session table");
        let before = sessions.len();
        sessions.retain(|_, e| now.duration_since(e.lock().expect("session").touched) <= self.ttl);
        before - sessions.len()
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Entry>>, ApiError> {
        let sessions = self.sessions.lock().expect("session table");
        let entry = sessions.get(id).cloned().ok_or_else(|| ApiError::not_found(format!("unknown session {id}")))?;
        {
            let mut e = entry.lock().expect("session");
            if e.touched.elapsed() > self.ttl {
                drop(e);
                drop(sessions);
                self.sessions.lock().expect("session table").remove(id);
                return Err(ApiError::not_found(format!("session {id} expired")));
            }
            e.touched = Instant::now();
        }
        Ok(entry)
    }
}

pub struct ApiError {
    status: StatusCode,
    message: String,
    details: Option<Value>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
            details: None,
        }
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, message)
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn with(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut error = json!({ "status": self.status.as_u16(), "message": self.message });
        if let Some(d) = self.details {
            error["details"] = d;
        }
        (self.status, Json(json!({ "schema": SCHEMA, "error": error }))).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let msg = e.to_string();
        match e {
            SessionError::InvalidProblem(report) => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, msg).with(json!(report))
            }
            SessionError::UnknownArgument(_) | SessionError::UnknownAssertion(_) => Self::not_found(msg),
            SessionError::SlotFilled(_) => Self::new(StatusCode::CONFLICT, msg),
            SessionError::MissingTarget => Self::bad_request(msg),
            SessionError::Engine(_) => Self::new(StatusCode::INTERNAL_SERVER_ERROR, msg),
            _ => Self::new(StatusCode::UNPROCESSABLE_ENTITY, msg),
        }
    }
}

fn ok<T: Serialize>(status: StatusCode, data: T) -> Response {
    (status, Json(json!({ "schema": SCHEMA, "data": data }))).into_response()
}

fn parse_body<T: serde::de::DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed request body: {e}")))
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CaseSummary<'a> {
    identifier: &'a str,
    jurisdiction: &'a str,
    court: &'a str,
    date: NaiveDate,
    interpretandum: Option<&'a str>,
    canons: Option<String>,
    directive_class: Option<String>,
}

fn summary(c: &CaseFrame) -> CaseSummary<'_> {
    CaseSummary {
        identifier: c.id(),
        jurisdiction: &c.case_data.jurisdiction,
        court: &c.case_data.court,
        date: c.case_data.date,
        interpretandum: c.winning.interpretandum.as_ref().map(|i| i.expression.as_str()),
        canons: Some(c.winning.statement.canon_display()).filter(|s| !s.is_empty()),
        directive_class: c.second_order.as_ref().map(|d| d.class_token()),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CaseFilter {
    interpretandum: Option<String>,
    jurisdiction: Option<String>,
    canon: Option<String>,
    document: Option<String>,
    before: Option<NaiveDate>,
}

async fn list_cases(State(st): State<Arc<AppState>>, Query(f): Query<CaseFilter>) -> Result<Response, ApiError> {
    let canon_class = match f.canon.as_deref() {
        Some(t) => Some(CanonClass::from_term(t).ok_or_else(|| ApiError::bad_request(format!("unknown canon class {t:?}")))?),
        None => None,
    };
    let base = st.base();
    let q = CaseQuery {
        interpretandum: f.interpretandum,
        document_citation: f.document,
        jurisdiction: f.jurisdiction,
        canon_class,
        decided_before: f.before,
    };
    let hits: Vec<_> = base.query(&q).into_iter().map(summary).collect();
    Ok(ok(StatusCode::OK, hits))
}

async fn get_case(State(st): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let base = st.base();
    let c = base.get(&id).ok_or_else(|| ApiError::not_found(format!("unknown case {id}")))?;
    Ok(ok(StatusCode::OK, json!({ "frame": c, "rows": c.table_rows() })))
}

async fn add_case(State(st): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad_request("body is not UTF-8"))?;
    let frame: CaseFrame = parse_document(text, ParseMode::Strict).map_err(|e| match e {
        ParseFailure::UnknownFields(fields) => {
            ApiError::bad_request("unknown fields in case frame").with(json!(fields))
        }
        other => ApiError::bad_request(other.to_string()),
    })?;
    let report = validate_frame(&frame);
    if !report.is_ok() {
        return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid case frame").with(json!(report)));
    }
    let mut guard = st.base.write().expect("base lock");
    if guard.get(frame.id()).is_some() {
        return Err(ApiError::new(StatusCode::CONFLICT, format!("case {} already exists", frame.id())));
    }
    let next = guard.with_case(frame.clone()).map_err(|e| {
        let issues: Vec<&Issue> = e.issues().iter().map(|i| &i.issue).collect();
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()).with(json!(issues))
    })?;
    *guard = Arc::new(next);
    let base = guard.clone();
    drop(guard);
    let c = base.get(frame.id()).expect("just added");
    Ok(ok(StatusCode::CREATED, summary(c)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NewSession {
    problem: ProblemFrame,
}

async fn create_session(State(st): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let req: NewSession = parse_body(&body)?;
    let id = uuid::Uuid::new_v4().to_string();
    let session = Session::create_with_id(id.clone(), req.problem, st.base())?;
    let view = session.state();
    let entry = Entry {
        session,
        touched: Instant::now(),
    };
    st.sessions.lock().expect("session table").insert(id, Arc::new(Mutex::new(entry)));
    Ok(ok(StatusCode::CREATED, view))
}

async fn get_session(State(st): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let entry = st.session(&id)?;
    let view = entry.lock().expect("session").session.state();
    Ok(ok(StatusCode::OK, view))
}

#[derive(Debug, Default, Deserialize)]
struct FrameworkParams {
    semantics: Option<String>,
    format: Option<String>,
}

async fn get_framework(
    State(st): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(params): Query<FrameworkParams>,
) -> Result<Response, ApiError> {
    let entry = st.session(&id)?;
    let e = entry.lock().expect("session");
    let af = &e.session.analysis().framework;
    if params.format.as_deref() == Some("dot") {
        return Ok(([(header::CONTENT_TYPE, "text/vnd.graphviz")], export::to_dot(af)).into_response());
    }
    let mut v = export::to_json(af);
    match params.semantics.as_deref() {
        None | Some("grounded") => {}
        Some("preferred") => {
            let pl = af
                .preferred_labelings(PREFERRED_CAP)
                .map_err(|err| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, err.to_string()))?;
            v["preferred"] = json!(pl);
        }
        Some(other) => return Err(ApiError::bad_request(format!("unknown semantics {other:?}"))),
    }
    Ok(ok(StatusCode::OK, v))
}

async fn post_assertion(
    State(st): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: AssertionRequest = parse_body(&body)?;
    let entry = st.session(&id)?;
    let mut e = entry.lock().expect("session");
    let assertion = e.session.assert_cq(req)?.clone();
    let view = e.session.state();
    Ok(ok(StatusCode::OK, json!({ "assertion": assertion, "session": view })))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct TransferRequest {
    argument_id: ArgumentId,
}

async fn post_transfer(
    State(st): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: TransferRequest = parse_body(&body)?;
    let entry = st.session(&id)?;
    let mut e = entry.lock().expect("session");
    e.session.apply_transfer(&req.argument_id)?;
    Ok(ok(StatusCode::OK, e.session.state()))
}

async fn put_problem(
    State(st): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let problem: ProblemFrame = parse_body(&body)?;
    let entry = st.session(&id)?;
    let mut e = entry.lock().expect("session");
    e.session.edit_problem(problem)?;
    Ok(ok(StatusCode::OK, e.session.state()))
}

async fn get_log(State(st): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let entry = st.session(&id)?;
    let log = entry.lock().expect("session").session.event_log();
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], log).into_response())
}

async fn get_lines(State(st): State<Arc<AppState>>) -> Result<Response, ApiError> {
    let lines = st
        .base()
        .lines_of_opinion()
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(ok(StatusCode::OK, lines))
}

async fn fallback() -> ApiError {
    ApiError::not_found("no such endpoint")
}

fn cors(origins: &[String]) -> CorsLayer {
    let layer = CorsLayer::new()
        .allow_methods([Method::GET, Method::POST, Method::PUT, Method::OPTIONS])
        .allow_headers([header::CONTENT_TYPE]);
    let parsed: Vec<HeaderValue> = origins.iter().filter_map(|o| o.parse().ok()).collect();
    if parsed.is_empty() {
        layer.allow_origin(Any)
    } else {
        layer.allow_origin(AllowOrigin::list(parsed))
    }
}

pub fn router(state: Arc<AppState>, cors_origins: &[String], ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/cases", get(list_cases).post(add_case))
        .route("/api/cases/{id}", get(get_case))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/framework", get(get_framework))
        .route("/api/sessions/{id}/assertions", post(post_assertion))
        .route("/api/sessions/{id}/transfers", post(post_transfer))
        .route("/api/sessions/{id}/problem", axum::routing::put(put_problem))
        .route("/api/sessions/{id}/log", get(get_log))
        .route("/api/lines", get(get_lines))
        .with_state(state);
    let app = match ui_dir {
        Some(dir) => api.nest_service("/ui", ServeDir::new(dir)),
        None => api,
    };
    app.fallback(fallback)
        .layer(SetResponseHeaderLayer::overriding(
            header::HeaderName::from_static("x-schema-version"),
            HeaderValue::from_static(SCHEMA),
        ))
        .layer(cors(cors_origins))
}

/// Loads the base and serves until interrupted.
pub async fn serve(config: ServiceConfig) -> anyhow::Result<()> {
    let base = crate::commands::load_base(&config.base_file_path, config.lenient_parsing)?;
    let state = AppState::new(base, config.session_ttl);
    let app = router(state.clone(), &config.cors_origins, config.ui_dir.clone());

    let sweeper = state.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.evict_expired(Instant::now());
        }
    });

    let listener = tokio::net::TcpListener::bind(("0.0.0.0", config.port))
        .await
        .map_err(|e| anyhow::anyhow!("cannot bind port {}: {e}", config.port))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app).with_graceful_shutdown(shutdown()).await?;
    Ok(())
}

async fn shutdown() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        if let Ok(mut s) = tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            s.recv().await;
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
}
