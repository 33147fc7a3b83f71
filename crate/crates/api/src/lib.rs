//! JSON API over the published corpus snapshot.
//!
//! Every endpoint is a read. A request loads the current snapshot once and
//! answers entirely from it, so a sync swap mid-request is never observed.

use std::path::Path;
use std::sync::Arc;

use atlas_core::{FilterSpec, Snapshot, SnapshotSlot, Tag};
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

mod config;
mod error;
pub mod rate_limit;
mod server;

pub use config::{ApiConfig, ConfigError, DEFAULT_RATE_LIMIT, DEFAULT_SYNC_INTERVAL_SECS};
pub use error::ApiError;
pub use rate_limit::SlidingWindowLimiter;
pub use server::{serve, serve_on};

pub const JSON_CONTENT_TYPE: &str = "application/json; charset=utf-8";

/// Shared request state: the snapshot slot and the rate limiter.
#[derive(Debug, Clone)]
pub struct AppState {
    slot: Arc<SnapshotSlot>,
    limiter: Arc<SlidingWindowLimiter>,
}

impl AppState {
    pub fn new(slot: Arc<SnapshotSlot>, rate_limit: u32) -> Self {
        Self {
            slot,
            limiter: Arc::new(SlidingWindowLimiter::new(rate_limit, rate_limit::WINDOW)),
        }
    }

    pub fn slot(&self) -> &Arc<SnapshotSlot> {
        &self.slot
    }

    fn snapshot(&self) -> Result<Arc<Snapshot>, ApiError> {
        self.slot.load().ok_or(ApiError::SnapshotUnavailable)
    }
}

pub(crate) fn json_response<T: Serialize + ?Sized>(status: StatusCode, body: &T) -> Response {
    let bytes = serde_json::to_vec(body).expect("response bodies serialize");
    let mut response = (status, bytes).into_response();
    response.headers_mut().insert(
        header::CONTENT_TYPE,
        HeaderValue::from_static(JSON_CONTENT_TYPE),
    );
    response
}

fn ok<T: Serialize>(body: &T) -> Response {
    json_response(StatusCode::OK, body)
}

#[derive(Debug, Serialize)]
struct NetworkSummary<'a> {
    id: &'a str,
    display_name: &'a str,
    problem_count: usize,
    reduction_count: usize,
    problem_tags: Vec<&'a str>,
    reduction_tags: Vec<&'a str>,
}

async fn list_networks(State(state): State<AppState>) -> Result<Response, ApiError> {
    let snapshot = state.snapshot()?;
    let body: Vec<NetworkSummary<'_>> = snapshot
        .networks()
        .iter()
        .map(|(id, data)| NetworkSummary {
            id: id.as_str(),
            display_name: data.manifest().display_name(),
            problem_count: data.problems().len(),
            reduction_count: data.reductions().len(),
            problem_tags: data
                .manifest()
                .problem_tags()
                .iter()
                .map(Tag::as_str)
                .collect(),
            reduction_tags: data
                .manifest()
                .reduction_tags()
                .iter()
                .map(Tag::as_str)
                .collect(),
        })
        .collect();
    Ok(ok(&body))
}

#[derive(Debug, Default, Deserialize)]
struct GraphParams {
    problem_tags: Option<String>,
    reduction_tags: Option<String>,
}

fn parse_tags(raw: Option<&str>) -> Result<Vec<Tag>, ApiError> {
    raw.unwrap_or_default()
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            Tag::new(t).map_err(|_| ApiError::Query(atlas_core::QueryError::UnknownTag(t.into())))
        })
        .collect()
}

fn bad_query(rejection: QueryRejection) -> ApiError {
    ApiError::BadRequest(rejection.body_text())
}

async fn network_graph(
    State(state): State<AppState>,
    UrlPath(net): UrlPath<String>,
    params: Result<Query<GraphParams>, QueryRejection>,
) -> Result<Response, ApiError> {
    let Query(params) = params.map_err(bad_query)?;
    let snapshot = state.snapshot()?;
    let network = snapshot.network(&net)?;
    let filter = FilterSpec::new(
        parse_tags(params.problem_tags.as_deref())?,
        parse_tags(params.reduction_tags.as_deref())?,
    );
    Ok(ok(&network.graph(&filter)?))
}

async fn problem_detail(
    State(state): State<AppState>,
    UrlPath((net, slug)): UrlPath<(String, String)>,
) -> Result<Response, ApiError> {
    let snapshot = state.snapshot()?;
    Ok(ok(&snapshot.problem_detail(&net, &slug)?))
}

async fn reduction_detail(
    State(state): State<AppState>,
    UrlPath((net, slug)): UrlPath<(String, String)>,
) -> Result<Response, ApiError> {
    let snapshot = state.snapshot()?;
    Ok(ok(&snapshot.reduction_detail(&net, &slug)?))
}

#[derive(Debug, Default, Deserialize)]
struct SearchParams {
    q: Option<String>,
}

async fn search(
    State(state): State<AppState>,
    UrlPath(net): UrlPath<String>,
    params: Result<Query<SearchParams>, QueryRejection>,
) -> Result<Response, ApiError> {
    let Query(params) = params.map_err(bad_query)?;
    let snapshot = state.snapshot()?;
    let network = snapshot.network(&net)?;
    Ok(ok(&network.search(params.q.as_deref().unwrap_or_default())?))
}

#[derive(Debug, Serialize)]
struct Health {
    status: &'static str,
    snapshot_digest: Option<String>,
    ingested_at: Option<String>,
    sync_failures: u64,
}

async fn health(State(state): State<AppState>) -> Response {
    let sync_failures = state.slot.sync_failures();
    match state.slot.load() {
        Some(s) => ok(&Health {
            status: "ok",
            snapshot_digest: Some(s.corpus_digest().to_owned()),
            ingested_at: Some(s.ingested_at().to_rfc3339()),
            sync_failures,
        }),
        None => json_response(
            StatusCode::SERVICE_UNAVAILABLE,
            &Health {
                status: "unavailable",
                snapshot_digest: None,
                ingested_at: None,
                sync_failures,
            },
        ),
    }
}

async fn api_not_found() -> ApiError {
    ApiError::NotFound
}

/// The `/api` routes, rate limited per client address.
pub fn api_router(state: AppState) -> Router {
    Router::new()
        .route("/networks", get(list_networks))
        .route("/networks/{net}/graph", get(network_graph))
        .route("/networks/{net}/problems/{slug}", get(problem_detail))
        .route("/networks/{net}/reductions/{slug}", get(reduction_detail))
        .route("/networks/{net}/search", get(search))
        .route("/health", get(health))
        .fallback(api_not_found)
        .layer(axum::middleware::from_fn_with_state(
            state.clone(),
            rate_limit::limit_requests,
        ))
        .with_state(state)
}

/// Full application: `/api/*` plus, optionally, static UI assets at `/`.
pub fn app(state: AppState, static_dir: Option<&Path>) -> Router {
    let router = Router::new().nest("/api", api_router(state));
    match static_dir {
        Some(dir) => router.fallback_service(ServeDir::new(dir)),
        None => router.fallback(api_not_found),
    }
}
