use atlas_core::QueryError;
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use serde_json::json;

use crate::json_response;

/// Error responses, rendered as `{"error": {"code", "message"}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApiError {
    SnapshotUnavailable,
    Query(QueryError),
    BadRequest(String),
    RateLimited { retry_after_secs: u64 },
    NotFound,
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            Self::SnapshotUnavailable => StatusCode::SERVICE_UNAVAILABLE,
            Self::Query(QueryError::UnknownTag(_) | QueryError::EmptyQuery)
            | Self::BadRequest(_) => StatusCode::BAD_REQUEST,
            Self::Query(_) | Self::NotFound => StatusCode::NOT_FOUND,
            Self::RateLimited { .. } => StatusCode::TOO_MANY_REQUESTS,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Self::SnapshotUnavailable => "snapshot-unavailable",
            Self::Query(QueryError::UnknownNetwork(_)) => "unknown-network",
            Self::Query(QueryError::UnknownTag(_)) => "unknown-tag",
            Self::Query(QueryError::UnknownProblem(_)) => "unknown-problem",
            Self::Query(QueryError::UnknownReduction(_)) => "unknown-reduction",
            Self::Query(QueryError::EmptyQuery) => "empty-query",
            Self::BadRequest(_) => "bad-request",
            Self::RateLimited { .. } => "rate-limited",
            Self::NotFound => "not-found",
        }
    }

    pub fn message(&self) -> String {
        match self {
            Self::SnapshotUnavailable => "no corpus snapshot has been published yet".into(),
            Self::Query(e) => e.to_string(),
            Self::BadRequest(m) => m.clone(),
            Self::RateLimited { retry_after_secs } => {
                format!("too many requests; retry in {retry_after_secs} s")
            }
            Self::NotFound => "no such endpoint".into(),
        }
    }
}

impl From<QueryError> for ApiError {
    fn from(e: QueryError) -> Self {
        Self::Query(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "code": self.code(), "message": self.message() } });
        let mut response = json_response(self.status(), &body);
        if let Self::RateLimited { retry_after_secs } = self {
            response
                .headers_mut()
                .insert(header::RETRY_AFTER, HeaderValue::from(retry_after_secs));
        }
        response
    }
}
