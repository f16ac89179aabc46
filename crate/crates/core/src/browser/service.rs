//! The HTTP service: SPARQL endpoint, keyword search, cards, import and
//! the assessment report.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use tower_http::services::ServeDir;

use super::{build_card, search, SearchError};
use crate::assessment::repository_report;
use crate::kmap::Ontology;
use crate::rdf::{parse_turtle, snapshot, TripleStore};
use crate::sparql::{evaluate, format_results, parse_query_with, to_json, ResultFormat};

/// Shared service state. Handlers read under the lock; `/import` is the
/// only writer.
#[derive(Clone)]
pub struct AppState {
    pub store: Arc<RwLock<TripleStore>>,
    pub ontology: Arc<Ontology>,
    /// Snapshot rewritten after each import.
    pub persist: Option<PathBuf>,
}

impl AppState {
    pub fn new(store: TripleStore, ontology: Ontology) -> Self {
        Self {
            store: Arc::new(RwLock::new(store)),
            ontology: Arc::new(ontology),
            persist: None,
        }
    }

    pub fn persisting_to(mut self, path: PathBuf) -> Self {
        self.persist = Some(path);
        self
    }
}

fn error(status: StatusCode, message: impl ToString) -> Response {
    (status, Json(json!({ "error": message.to_string() }))).into_response()
}

#[derive(Deserialize)]
struct SparqlParams {
    query: String,
    #[serde(default)]
    format: Option<String>,
}

async fn sparql(State(st): State<AppState>, Query(p): Query<SparqlParams>) -> Response {
    let store = st.store.read().expect("store lock");
    let q = match parse_query_with(&p.query, store.prefixes()) {
        Ok(q) => q,
        Err(e) => return error(StatusCode::BAD_REQUEST, e),
    };
    let table = evaluate(&store, &q);
    match p.format.as_deref() {
        Some("tsv") => format_results(&table, ResultFormat::Tsv).into_response(),
        _ => Json(to_json(&table)).into_response(),
    }
}

#[derive(Deserialize)]
struct SearchBody {
    q: String,
}

async fn search_handler(State(st): State<AppState>, Json(body): Json<SearchBody>) -> Response {
    let store = st.store.read().expect("store lock");
    match search(&store, &st.ontology, &body.q) {
        Ok(out) => Json(out).into_response(),
        Err(e @ (SearchError::Empty | SearchError::NoConceptsRecognized(_) | SearchError::NoTemplate)) => {
            error(StatusCode::BAD_REQUEST, e)
        }
    }
}

async fn kmap(State(st): State<AppState>, Path(id): Path<String>) -> Response {
    let store = st.store.read().expect("store lock");
    match build_card(&store, &id) {
        Some(card) => Json(card).into_response(),
        None => error(StatusCode::NOT_FOUND, format!("no knowledge map {id}")),
    }
}

async fn import(State(st): State<AppState>, body: String) -> Response {
    let doc = match parse_turtle(&body) {
        Ok(d) => d,
        Err(e) => return error(StatusCode::BAD_REQUEST, e),
    };
    let mut store = st.store.write().expect("store lock");
    store.prefixes_mut().extend(&doc.prefixes);
    let n = store.extend(doc.triples);
    if let Some(path) = &st.persist {
        if let Err(e) = snapshot::save(&store, path) {
            return error(StatusCode::INTERNAL_SERVER_ERROR, e);
        }
    }
    Json(json!({ "triples": n })).into_response()
}

async fn report(State(st): State<AppState>) -> Response {
    let store = st.store.read().expect("store lock");
    Json(repository_report(&store)).into_response()
}

pub fn router(state: AppState, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sparql", get(sparql))
        .route("/search", post(search_handler))
        .route("/kmap/:id", get(kmap))
        .route("/import", post(import))
        .route("/report", get(report))
        .with_state(state);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Binds `addr` and serves until the process ends. The bound address is
/// reported through `on_bound` so callers can use port 0.
pub async fn serve(
    state: AppState,
    addr: SocketAddr,
    ui_dir: Option<PathBuf>,
    on_bound: impl FnOnce(SocketAddr),
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    on_bound(listener.local_addr()?);
    axum::serve(listener, router(state, ui_dir)).await
}
