//! Read-only HTTP/JSON API over a dataset loaded once at startup.
//!
//! | route | payload |
//! |---|---|
//! | `GET /api/v1/subjects?gender=` | `[{id, gender}]` |
//! | `GET /api/v1/subjects/{id}/days?from=&to=&max_sedentary_hours=` | `[{date, weekend, hours}]` |
//! | `GET /api/v1/subjects/{id}/biometrics?kinds=&daily=` | `{kind: {measurements, daily?}}` |
//! | `GET /api/v1/subjects/{id}/breakdown?from=&to=&max_sedentary_hours=` | `{weekday, weekend}` |
//! | `GET /api/v1/subjects/{id}/recommendations?target_weight_kg=` | `[{code, message, metric}]` |
//! | `GET /api/v1/compare?a=&b=&from=&to=&max_sedentary_hours=&kinds=` | comparison report |
//! | `GET /api/v1/cohort/stats?gender=&max_sedentary_hours=&subject=` | samples and medians |
//! | `GET /api/v1/meta` | dataset counts and effective configuration |
//!
//! Errors are `{"error":{"code":…,"message":…}}` with status 400 or 404.

mod error;
mod params;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use actiview_core::analytics::sample_biometric_daily;
use actiview_core::model::CohortMetric;
use actiview_core::wire::{self, KindSeriesJson, PercentilesJson};
use actiview_core::Dataset;
use axum::extract::{Path, Query, Request, State};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use tower_http::cors::CorsLayer;

pub use error::ApiError;
use params::Params;

/// Immutable snapshot shared by all request handlers.
#[derive(Debug)]
pub struct AppState {
    pub dataset: Dataset,
    /// RFC 3339 load time, echoed by `/api/v1/meta`.
    pub loaded_at: String,
}

impl AppState {
    pub fn new(dataset: Dataset) -> Self {
        AppState {
            dataset,
            loaded_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

type Shared = State<Arc<AppState>>;
type QueryMap = Result<Query<HashMap<String, String>>, axum::extract::rejection::QueryRejection>;

pub fn router(state: Arc<AppState>) -> Router {
    let cors = state.dataset.settings().cors_allow_all;
    let api = Router::new()
        .route("/api/v1/subjects", get(subjects))
        .route("/api/v1/subjects/{id}/days", get(days))
        .route("/api/v1/subjects/{id}/biometrics", get(biometrics))
        .route("/api/v1/subjects/{id}/breakdown", get(breakdown))
        .route("/api/v1/subjects/{id}/recommendations", get(recommendations))
        .route("/api/v1/compare", get(compare))
        .route("/api/v1/cohort/stats", get(cohort))
        .route("/api/v1/meta", get(meta))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .with_state(state)
        .layer(middleware::from_fn(log_request));
    if cors {
        api.layer(CorsLayer::permissive())
    } else {
        api
    }
}

/// Serves until the future resolves or the listener fails.
pub async fn serve(
    listener: tokio::net::TcpListener,
    state: Arc<AppState>,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await
}

async fn log_request(req: Request, next: Next) -> Response {
    let method = req.method().clone();
    let path = req.uri().path().to_string();
    let started = Instant::now();
    let resp = next.run(req).await;
    log::info!(
        "{} {} {} {}ms",
        method,
        path,
        resp.status().as_u16(),
        started.elapsed().as_millis()
    );
    resp
}

fn params(q: QueryMap) -> Result<Params, ApiError> {
    q.map(|Query(map)| Params::new(map))
        .map_err(|e| ApiError::bad_request(e.body_text()))
}

async fn subjects(State(st): Shared, q: QueryMap) -> Result<Response, ApiError> {
    let p = params(q)?;
    let gender = p.gender()?;
    Ok(Json(wire::subjects(&st.dataset.subjects(gender))).into_response())
}

async fn days(State(st): Shared, Path(id): Path<String>, q: QueryMap) -> Result<Response, ApiError> {
    let p = params(q)?;
    st.dataset.record(&id)?;
    let filter = p.filter()?;
    let days = st.dataset.days(&id, &filter)?;
    Ok(Json(wire::days(&days)).into_response())
}

async fn biometrics(
    State(st): Shared,
    Path(id): Path<String>,
    q: QueryMap,
) -> Result<Response, ApiError> {
    let p = params(q)?;
    let record = st.dataset.record(&id)?;
    let kinds = p.kinds()?;
    let daily = p.flag("daily")?.unwrap_or(false);
    let mut out = BTreeMap::new();
    for kind in kinds {
        let series = record.series(kind);
        let sampled = if daily {
            // An empty series has no daily samples.
            Some(sample_biometric_daily(&series).unwrap_or_default())
        } else {
            None
        };
        out.insert(
            kind.to_string(),
            KindSeriesJson {
                measurements: wire::points(&series),
                daily: sampled.as_deref().map(wire::points),
            },
        );
    }
    Ok(Json(out).into_response())
}

async fn breakdown(
    State(st): Shared,
    Path(id): Path<String>,
    q: QueryMap,
) -> Result<Response, ApiError> {
    let p = params(q)?;
    st.dataset.record(&id)?;
    let filter = p.filter()?;
    let days = st.dataset.days(&id, &filter)?;
    let b = actiview_core::analytics::breakdown(&days);
    Ok(Json(wire::breakdown(&b)).into_response())
}

async fn compare(State(st): Shared, q: QueryMap) -> Result<Response, ApiError> {
    let p = params(q)?;
    let a = p.required("a")?;
    let b = p.required("b")?;
    let filter = p.filter()?;
    let kinds = p.kinds()?;
    let report = st.dataset.compare(a, b, &filter, &kinds)?;
    Ok(Json(wire::comparison(&report)).into_response())
}

async fn cohort(State(st): Shared, q: QueryMap) -> Result<Response, ApiError> {
    let p = params(q)?;
    let gender = p.gender()?;
    let filter = p.filter()?;
    let stats = st.dataset.cohort(gender, &filter)?;
    let mut body = wire::cohort(&stats);
    if let Some(subject) = p.optional("subject") {
        let metrics = st.dataset.metrics(subject, &filter)?;
        let ranks = CohortMetric::ALL
            .into_iter()
            .map(|m| {
                let rank = metrics.get(m).and_then(|v| {
                    actiview_core::analytics::percentile_rank(&stats, m, v).ok()
                });
                (m.to_string(), rank)
            })
            .collect();
        body.percentiles = Some(PercentilesJson {
            subject: subject.to_string(),
            ranks,
        });
    }
    Ok(Json(body).into_response())
}

async fn recommendations(
    State(st): Shared,
    Path(id): Path<String>,
    q: QueryMap,
) -> Result<Response, ApiError> {
    let p = params(q)?;
    st.dataset.record(&id)?;
    let target = p.positive("target_weight_kg")?;
    let recs = st.dataset.recommendations(&id, target)?;
    Ok(Json(wire::recommendations(&recs)).into_response())
}

async fn meta(State(st): Shared) -> Response {
    Json(wire::meta(&st.dataset, &st.loaded_at)).into_response()
}
