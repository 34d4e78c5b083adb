use ama_core::ingest::LayoutDocument;
use ama_service::{router, ApiError, Health, ServiceConfig, MAX_BODY_BYTES, MAX_TRACE_POINTS};
use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(&ServiceConfig::default()).unwrap()
}

async fn send(app: Router, method: Method, uri: &str, body: impl Into<Body>) -> (StatusCode, Vec<u8>) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header(header::CONTENT_TYPE, "application/json")
        .body(body.into())
        .unwrap();
    let response = app.oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    (status, bytes.to_vec())
}

async fn post_json(uri: &str, body: &Value) -> (StatusCode, Value) {
    let (status, bytes) = send(app(), Method::POST, uri, body.to_string()).await;
    (status, serde_json::from_slice(&bytes).expect("response is JSON"))
}

fn centered() -> Value {
    json!({"schema_version": 1, "frame": {"width": 100, "height": 100},
           "objects": [{"id": "box", "x": 25, "y": 25, "w": 50, "h": 50}]})
}

#[tokio::test]
async fn centered_square_scores_one() {
    let (status, body) = post_json("/api/evaluate", &centered()).await;
    assert_eq!(status, StatusCode::OK);
    for key in ["balance", "equilibrium", "symmetry", "sequence", "rhythm", "av"] {
        assert_eq!(body[key], 1.0, "{key}");
    }
    assert_eq!(body["object_count"], 1);
    assert_eq!(body["schema_version"], 1);
}

#[tokio::test]
async fn out_of_frame_object_is_named() {
    let mut doc = centered();
    doc["objects"][0]["x"] = json!(90);
    let (status, body) = post_json("/api/evaluate", &doc).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let err: ApiError = serde_json::from_value(body).unwrap();
    assert_eq!(err.code, "validation_error");
    assert_eq!(err.object.as_deref(), Some("box"));
    assert_eq!(err.status, 422);
}

#[tokio::test]
async fn malformed_and_missing_fields_are_400() {
    let (status, bytes) = send(app(), Method::POST, "/api/evaluate", "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let err: ApiError = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(err.code, "malformed_json");

    let (status, _) = post_json("/api/evaluate", &json!({"objects": []})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn empty_layout_is_422() {
    let mut doc = centered();
    doc["objects"] = json!([]);
    let (status, body) = post_json("/api/evaluate", &doc).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["code"], "empty_layout");
}

#[tokio::test]
async fn oversize_body_is_413() {
    let padding = " ".repeat(MAX_BODY_BYTES + 1);
    let (status, bytes) = send(app(), Method::POST, "/api/evaluate", format!("{}{padding}", centered())).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
    let err: ApiError = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(err.status, 413);
}

#[tokio::test]
async fn too_many_objects_is_413() {
    let objects: Vec<Value> = (0..501)
        .map(|i| json!({"id": format!("o{i}"), "x": (i % 50) * 2, "y": (i / 50) * 2, "w": 1, "h": 1}))
        .collect();
    let doc = json!({"schema_version": 1, "frame": {"width": 100, "height": 100}, "objects": objects});
    let (status, body) = post_json("/api/evaluate", &doc).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
    assert_eq!(body["code"], "too_many_objects");
}

#[tokio::test]
async fn health_get_and_head() {
    let (status, bytes) = send(app(), Method::GET, "/healthz", Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    let health: Health = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(health.status, "ok");
    assert!(!health.version.is_empty());

    let (status, bytes) = send(app(), Method::HEAD, "/healthz", Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    assert!(bytes.is_empty());
}

#[tokio::test]
async fn unknown_path_and_wrong_method_are_json_404() {
    for (method, uri) in [
        (Method::GET, "/nope"),
        (Method::GET, "/api/evaluate"),
        (Method::POST, "/healthz"),
    ] {
        let (status, bytes) = send(app(), method, uri, Body::empty()).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
        let err: ApiError = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(err.code, "not_found");
    }
}

fn off_center() -> Value {
    json!({"schema_version": 1, "frame": {"width": 200, "height": 100},
           "objects": [{"id": "card", "x": 5, "y": 60, "w": 40, "h": 30}]})
}

#[tokio::test]
async fn single_object_maximize_reaches_optimum() {
    let request = json!({
        "layout": off_center(),
        "objective": {"mode": "maximize", "weights": [1, 1, 1, 1, 1]},
        "params": {"seed": 1, "iterations": 5000}
    });
    let (status, body) = post_json("/api/optimize", &request).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert!(body["measures"]["av"].as_f64().unwrap() >= 0.999, "{body}");
    assert_eq!(body["rng"], "chacha8/seed_from_u64");
    let trace = body["trace"].as_array().unwrap();
    assert!(trace.len() <= MAX_TRACE_POINTS);
    assert_eq!(trace.last().unwrap()["iteration"], 5000);
}

#[tokio::test]
async fn zero_iterations_echo_the_input() {
    let request = json!({
        "layout": off_center(),
        "objective": {"mode": "match_target", "target": 0.5},
        "params": {"seed": 3, "iterations": 0}
    });
    let (status, body) = post_json("/api/optimize", &request).await;
    assert_eq!(status, StatusCode::OK);
    let echoed: LayoutDocument = serde_json::from_value(body["best_layout"].clone()).unwrap();
    let input: LayoutDocument = serde_json::from_value(off_center()).unwrap();
    assert_eq!(echoed, input);
    assert_eq!(body["evaluations"], 1);
}

#[tokio::test]
async fn optimize_is_deterministic() {
    let request = json!({
        "layout": {"schema_version": 1, "frame": {"width": 300, "height": 200}, "objects": [
            {"id": "a", "x": 0, "y": 0, "w": 60, "h": 40},
            {"id": "b", "x": 100, "y": 120, "w": 90, "h": 50},
            {"id": "c", "x": 220, "y": 10, "w": 30, "h": 120}]},
        "objective": {"mode": "match_target", "target": [0.9, 0.9, 0.8, 1.0, 0.7]},
        "params": {"seed": 11, "iterations": 3000}
    });
    let first = send(app(), Method::POST, "/api/optimize", request.to_string()).await;
    let second = send(app(), Method::POST, "/api/optimize", request.to_string()).await;
    assert_eq!(first.0, StatusCode::OK);
    assert_eq!(first, second);
}

#[tokio::test]
async fn invalid_objective_and_params_are_422() {
    let cases = [
        (json!({"mode": "maximize"}), json!({}), "invalid_objective"),
        (
            json!({"mode": "match_target", "target": 1.5}),
            json!({}),
            "invalid_objective",
        ),
        (json!({"mode": "sideways"}), json!({}), "invalid_objective"),
        (
            json!({"mode": "match_target", "target": 0.5}),
            json!({"iterations": 200_001}),
            "invalid_params",
        ),
        (
            json!({"mode": "match_target", "target": 0.5}),
            json!({"cooling": 1.5}),
            "invalid_params",
        ),
        (
            json!({"mode": "match_target", "target": 0.5}),
            json!({"speed": 3}),
            "invalid_params",
        ),
    ];
    for (objective, params, code) in cases {
        let request = json!({"layout": off_center(), "objective": objective, "params": params});
        let (status, body) = post_json("/api/optimize", &request).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{request}");
        assert_eq!(body["code"], code, "{request}");
    }
}

#[tokio::test]
async fn optimize_request_shape_errors_are_400() {
    let (status, _) = post_json("/api/optimize", &json!({"layout": off_center()})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = post_json("/api/optimize", &json!([1, 2])).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn overlap_in_start_layout_with_forbid_overlap_is_422() {
    let request = json!({
        "layout": {"schema_version": 1, "frame": {"width": 100, "height": 100}, "objects": [
            {"id": "a", "x": 0, "y": 0, "w": 50, "h": 50},
            {"id": "b", "x": 25, "y": 25, "w": 50, "h": 50}]},
        "objective": {"mode": "maximize", "weights": [1, 1, 1, 1, 1]},
        "params": {"iterations": 10, "forbid_overlap": true}
    });
    let (status, body) = post_json("/api/optimize", &request).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["code"], "invalid_request");
}

#[tokio::test]
async fn cors_headers_follow_configuration() {
    let preflight = |app: Router| async move {
        let request = Request::builder()
            .method(Method::OPTIONS)
            .uri("/api/evaluate")
            .header(header::ORIGIN, "http://localhost:5173")
            .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
            .body(Body::empty())
            .unwrap();
        let response = app.oneshot(request).await.unwrap();
        response
            .headers()
            .get(header::ACCESS_CONTROL_ALLOW_ORIGIN)
            .map(|v| v.to_str().unwrap().to_owned())
    };
    assert_eq!(preflight(app()).await.as_deref(), Some("*"));

    let strict = router(&ServiceConfig {
        cors_origin: Some("http://localhost:5173".into()),
    })
    .unwrap();
    assert_eq!(preflight(strict).await.as_deref(), Some("http://localhost:5173"));
    // The configured origin is announced as-is; the browser rejects mismatches.
    let other = router(&ServiceConfig {
        cors_origin: Some("https://ui.example".into()),
    })
    .unwrap();
    assert_eq!(preflight(other).await.as_deref(), Some("https://ui.example"));
    assert!(router(&ServiceConfig {
        cors_origin: Some("bad\norigin".into()),
    })
    .is_err());
}

#[tokio::test]
async fn requests_commute() {
    let a = json!({"schema_version": 1, "frame": {"width": 100, "height": 100},
                   "objects": [{"id": "x", "x": 10, "y": 10, "w": 20, "h": 20}]});
    let b = centered();
    let app = app();
    let a1 = send(app.clone(), Method::POST, "/api/evaluate", a.to_string()).await;
    let b1 = send(app.clone(), Method::POST, "/api/evaluate", b.to_string()).await;
    let b2 = send(app.clone(), Method::POST, "/api/evaluate", b.to_string()).await;
    let a2 = send(app, Method::POST, "/api/evaluate", a.to_string()).await;
    assert_eq!((a1, b1), (a2, b2));
}
