//! Stateless HTTP front end.
//!
//! | route              | body                                  |
//! |--------------------|---------------------------------------|
//! | `POST /api/evaluate` | layout document                     |
//! | `POST /api/optimize` | `{layout, objective, params?}`      |
//! | `GET /healthz`       | none                                |
//!
//! Every error response is an [`ApiError`] JSON body.

mod error;

use std::net::SocketAddr;

use ama_core::ingest::{EvaluationReport, LayoutDocument};
use ama_core::optimizer::{optimize, ObjectiveSpec, OptimizationReport, SearchParams};
use ama_core::{evaluate, Layout};
use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::DefaultBodyLimit;
use axum::http::{HeaderValue, StatusCode};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

pub use error::ApiError;

pub const MAX_BODY_BYTES: usize = 1 << 20;
pub const MAX_OBJECTS: usize = 500;
pub const MAX_ITERATIONS: u64 = 200_000;
pub const MAX_TRACE_POINTS: usize = 1_000;
pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Clone, Default)]
pub struct ServiceConfig {
    /// Allowed CORS origin; `None` allows any.
    pub cors_origin: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

pub fn router(config: &ServiceConfig) -> Result<Router, ApiError> {
    let cors = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    let cors = match &config.cors_origin {
        None => cors.allow_origin(Any),
        Some(origin) => {
            let value = HeaderValue::from_str(origin)
                .map_err(|_| ApiError::internal(format!("invalid CORS origin `{origin}`")))?;
            cors.allow_origin(AllowOrigin::exact(value))
        }
    };
    Ok(Router::new()
        .route("/api/evaluate", post(post_evaluate).fallback(not_found))
        .route("/api/optimize", post(post_optimize).fallback(not_found))
        .route("/healthz", get(get_health).fallback(not_found))
        .fallback(not_found)
        .layer(DefaultBodyLimit::max(MAX_BODY_BYTES))
        .layer(cors))
}

/// Serves until ctrl-c.
pub async fn serve(addr: SocketAddr, config: &ServiceConfig) -> std::io::Result<()> {
    let app = router(config).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.message))?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such route")
}

async fn get_health() -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

fn read_body(body: Result<Bytes, BytesRejection>) -> Result<Value, ApiError> {
    let bytes = body.map_err(|rejection| {
        if rejection.status() == StatusCode::PAYLOAD_TOO_LARGE {
            ApiError::new(
                StatusCode::PAYLOAD_TOO_LARGE,
                "payload_too_large",
                format!("body exceeds {MAX_BODY_BYTES} bytes"),
            )
        } else {
            ApiError::malformed(rejection.body_text())
        }
    })?;
    serde_json::from_slice(&bytes).map_err(|e| ApiError::malformed(e.to_string()))
}

fn layout_from_value(value: Value) -> Result<Layout, ApiError> {
    let doc: LayoutDocument = serde_json::from_value(value).map_err(|e| ApiError::malformed(e.to_string()))?;
    if doc.objects.len() > MAX_OBJECTS {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            "too_many_objects",
            format!("{} objects exceeds the limit of {MAX_OBJECTS}", doc.objects.len()),
        ));
    }
    Ok(doc.into_layout(false)?)
}

/// Evaluation shared with the CLI so both interfaces emit the same numbers.
pub fn evaluate_document(value: Value) -> Result<EvaluationReport, ApiError> {
    let layout = layout_from_value(value)?;
    let measures = evaluate(&layout)?;
    Ok(EvaluationReport::new(&layout, measures))
}

async fn post_evaluate(body: Result<Bytes, BytesRejection>) -> Result<Json<EvaluationReport>, ApiError> {
    evaluate_document(read_body(body)?).map(Json)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OptimizeRequest {
    layout: Value,
    objective: Value,
    #[serde(default)]
    params: Option<Value>,
}

async fn post_optimize(body: Result<Bytes, BytesRejection>) -> Result<Json<OptimizationReport>, ApiError> {
    let request: OptimizeRequest =
        serde_json::from_value(read_body(body)?).map_err(|e| ApiError::malformed(e.to_string()))?;
    let layout = layout_from_value(request.layout)?;
    let objective: ObjectiveSpec = serde_json::from_value(request.objective)
        .map_err(|e| ApiError::unprocessable("invalid_objective", e.to_string()))?;
    let params: SearchParams = match request.params {
        Some(v) => serde_json::from_value(v).map_err(|e| ApiError::unprocessable("invalid_params", e.to_string()))?,
        None => SearchParams::default(),
    };
    params
        .validate()
        .map_err(|e| ApiError::unprocessable("invalid_params", e.to_string()))?;
    if params.iterations > MAX_ITERATIONS {
        return Err(ApiError::unprocessable(
            "invalid_params",
            format!("iterations {} exceeds the limit of {MAX_ITERATIONS}", params.iterations),
        ));
    }

    let report = tokio::task::spawn_blocking(move || {
        let result = optimize(&layout, &objective, &params)?;
        OptimizationReport::new(&result, &params, Some(MAX_TRACE_POINTS))
    })
    .await
    .map_err(|e| ApiError::internal(e.to_string()))??;
    Ok(Json(report))
}
