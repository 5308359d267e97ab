use actiview_core::analytics::AnalyticsError;
use actiview_core::dataset::QueryError;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code: "invalid_parameter",
            message: message.into(),
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            code: "not_found",
            message: message.into(),
        }
    }
}

impl From<QueryError> for ApiError {
    fn from(e: QueryError) -> Self {
        let (status, code) = match &e {
            QueryError::UnknownSubject(_) => (StatusCode::NOT_FOUND, "unknown_subject"),
            QueryError::SameSubject => (StatusCode::BAD_REQUEST, "same_subject"),
            QueryError::Analytics(AnalyticsError::EmptyCohort) => {
                (StatusCode::NOT_FOUND, "empty_cohort")
            }
            QueryError::Analytics(_) => (StatusCode::BAD_REQUEST, "invalid_parameter"),
        };
        ApiError {
            status,
            code,
            message: e.to_string(),
        }
    }
}

impl From<AnalyticsError> for ApiError {
    fn from(e: AnalyticsError) -> Self {
        QueryError::from(e).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({"error": {"code": self.code, "message": self.message}});
        (self.status, Json(body)).into_response()
    }
}
