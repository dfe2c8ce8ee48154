//! Stateless JSON endpoints over the engine.
//!
//! | route                | body              | response                |
//! |----------------------|-------------------|-------------------------|
//! | `GET  /api/health`   | none              | name and version        |
//! | `POST /api/validate` | problem document  | per-matrix SR report    |
//! | `POST /api/analyze`  | `{matrix, tolerances?}` | spectral profile  |
//! | `POST /api/multi`    | problem document  | min-max and global      |
//! | `POST /api/pareto`   | `{problem, alpha?, options?}` | Pareto points |
//! | `POST /api/classical`| problem document  | Perron pipeline         |
//!
//! Failures return `{code, message, status}` where `code` is one of
//! `schema`, `sr_violation`, `infeasible`, `numeric`, `not_found`,
//! `method_not_allowed` or `payload_too_large`.
//!
//! Routing lives in [`handle_request`], a pure function; the axum layer
//! only moves bytes. No state is shared between requests.

use std::net::SocketAddr;

use axum::body::{to_bytes, Body};
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::Router;
use maxahp_io::api::{self, Limits};
use maxahp_io::{Error, ErrorKind};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub limits: Limits,
    /// Largest accepted request body in bytes.
    pub max_body: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            limits: Limits::default(),
            max_body: 4 << 20,
        }
    }
}

/// Status and JSON body of one response.
#[derive(Debug, Clone, PartialEq)]
pub struct ApiResponse {
    pub status: u16,
    pub body: Value,
}

impl ApiResponse {
    fn ok(body: impl Serialize) -> Self {
        match serde_json::to_value(body) {
            Ok(body) => Self { status: 200, body },
            Err(e) => Self::failure(500, "numeric", e.to_string()),
        }
    }

    fn failure(status: u16, code: &str, message: String) -> Self {
        Self {
            status,
            body: json!({ "code": code, "message": message, "status": status }),
        }
    }

    fn error(e: &Error) -> Self {
        let kind = e.kind();
        Self::failure(status_of(kind), kind.as_str(), e.to_string())
    }

    pub fn is_success(&self) -> bool {
        self.status == 200
    }
}

pub fn status_of(kind: ErrorKind) -> u16 {
    match kind {
        ErrorKind::Schema => 400,
        ErrorKind::SrViolation => 422,
        ErrorKind::Infeasible => 409,
        ErrorKind::Numeric => 500,
    }
}

const ROUTES: [(&str, &str); 6] = [
    ("/api/health", "GET"),
    ("/api/validate", "POST"),
    ("/api/analyze", "POST"),
    ("/api/multi", "POST"),
    ("/api/pareto", "POST"),
    ("/api/classical", "POST"),
];

fn call<Req: DeserializeOwned, Resp: Serialize>(
    body: &[u8],
    limits: &Limits,
    f: impl FnOnce(&Req, &Limits) -> maxahp_io::Result<Resp>,
) -> ApiResponse {
    let req: Req = match serde_json::from_slice(body) {
        Ok(r) => r,
        Err(e) => return ApiResponse::error(&Error::Json(e)),
    };
    match f(&req, limits) {
        Ok(r) => ApiResponse::ok(r),
        Err(e) => ApiResponse::error(&e),
    }
}

/// Dispatches one request. Same inputs always give the same response.
pub fn handle_request(method: &str, path: &str, body: &[u8], config: &Config) -> ApiResponse {
    let path = path.trim_end_matches('/');
    let Some(&(_, expected)) = ROUTES.iter().find(|(p, _)| *p == path) else {
        return ApiResponse::failure(404, "not_found", format!("no endpoint {path}"));
    };
    if !method.eq_ignore_ascii_case(expected) {
        return ApiResponse::failure(
            405,
            "method_not_allowed",
            format!("{path} expects {expected}"),
        );
    }
    if body.len() > config.max_body {
        return ApiResponse::failure(
            413,
            "payload_too_large",
            format!("body of {} bytes exceeds {}", body.len(), config.max_body),
        );
    }
    let l = &config.limits;
    match path {
        "/api/health" => ApiResponse::ok(api::health()),
        "/api/validate" => call(body, l, api::validate),
        "/api/analyze" => call(body, l, api::analyze),
        "/api/multi" => call(body, l, api::multi),
        "/api/pareto" => call(body, l, api::pareto),
        "/api/classical" => call(body, l, api::classical),
        _ => unreachable!("route table and dispatch disagree"),
    }
}

async fn dispatch(State(config): State<Config>, method: Method, uri: Uri, body: Body) -> Response {
    let r = match to_bytes(body, config.max_body).await {
        // Engine calls are CPU bound; keep them off the reactor threads.
        Ok(body) => {
            let path = uri.path().to_string();
            tokio::task::spawn_blocking(move || {
                handle_request(method.as_str(), &path, &body, &config)
            })
            .await
            .unwrap_or_else(|e| {
                ApiResponse::failure(500, "numeric", format!("handler panicked: {e}"))
            })
        }
        Err(e) => ApiResponse::failure(
            413,
            "payload_too_large",
            format!(
                "body exceeds {} bytes or could not be read: {e}",
                config.max_body
            ),
        ),
    };
    let status = StatusCode::from_u16(r.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        r.body.to_string(),
    )
        .into_response()
}

pub fn router(config: Config) -> Router {
    Router::new()
        .fallback(dispatch)
        .layer(DefaultBodyLimit::disable())
        .with_state(config)
}

pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config)).await
}

/// Runs [`serve`] on a fresh multi-threaded runtime until it fails.
pub fn serve_blocking(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?
        .block_on(serve(addr, config))
}
