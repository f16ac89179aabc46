use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use oak_core::browser::service::{router, AppState};
use oak_core::fixtures::{classifier_010, desk_repository, CLASSIFIER_010_TTL};
use oak_core::kmap::builtin_ontology;
use oak_core::rdf::snapshot;
use oak_core::repository::{import_kr, new_repository};
use oak_core::wrapper::wrap;

fn desk_app() -> Router {
    let (o, store) = desk_repository();
    router(AppState::new(store, o), None)
}

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Vec<u8>) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let body = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, body)
}

async fn get(app: &Router, uri: &str) -> (StatusCode, Vec<u8>) {
    send(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

async fn post_json(app: &Router, uri: &str, v: Value) -> (StatusCode, Value) {
    let req = Request::post(uri)
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(v.to_string()))
        .unwrap();
    let (s, b) = send(app, req).await;
    (s, serde_json::from_slice(&b).unwrap())
}

fn encode(q: &str) -> String {
    q.bytes()
        .map(|b| match b {
            b'A'..=b'Z' | b'a'..=b'z' | b'0'..=b'9' | b'-' | b'_' | b'.' | b'~' => (b as char).to_string(),
            _ => format!("%{b:02X}"),
        })
        .collect()
}

#[tokio::test]
async fn search_returns_cards() {
    let app = desk_app();
    let (status, body) = post_json(&app, "/search", json!({ "q": "predict based on Nitrogen" })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["template"], "QF3");
    assert_eq!(body["cards"][0]["id"], "Classifier_010");
    assert_eq!(body["cards"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn bad_search_is_400() {
    let app = desk_app();
    let (status, body) = post_json(&app, "/search", json!({ "q": "zzzz qqqq" })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("zzzz"));
}

#[tokio::test]
async fn sparql_endpoint_json_and_tsv() {
    let app = desk_app();
    let q = "PREFIX AgriComO: <http://www.ucd.ie/consus/AgriComO#> SELECT ?m WHERE { ?m AgriComO:hasDataset ?d }";
    let (status, body) = get(&app, &format!("/sparql?query={}", encode(q))).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["head"]["vars"], json!(["m"]));
    assert!(!v["results"]["bindings"].as_array().unwrap().is_empty());

    let (status, body) = get(&app, &format!("/sparql?format=tsv&query={}", encode(q))).await;
    assert_eq!(status, StatusCode::OK);
    assert!(String::from_utf8(body).unwrap().starts_with("?m\n"));

    let (status, _) = get(&app, "/sparql?query=SELECT").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn kmap_cards_and_missing_items() {
    let app = desk_app();
    let (status, body) = get(&app, "/kmap/Regressor_0015").await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["id"], "Regressor_0015");
    assert_eq!(get(&app, "/kmap/Nothing_001").await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn report_counts_items() {
    let app = desk_app();
    let (status, body) = get(&app, "/report").await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["items"], 30);
}

#[tokio::test]
async fn import_persists_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("store.ttl");
    let o = builtin_ontology();
    let state = AppState::new(new_repository(&o), o).persisting_to(path.clone());
    let app = router(state, None);

    let req = Request::post("/import").body(Body::from(CLASSIFIER_010_TTL)).unwrap();
    let (status, body) = send(&app, req).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["triples"], 20);
    assert!(snapshot::load(&path).unwrap().len() > 20);

    let req = Request::post("/import").body(Body::from("@prefix broken")).unwrap();
    assert_eq!(send(&app, req).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn wrapped_item_is_searchable() {
    let o = builtin_ontology();
    let mut store = new_repository(&o);
    import_kr(&mut store, &wrap(&classifier_010(), &o).unwrap()).unwrap();
    let app = router(AppState::new(store, o), None);
    let (status, body) = post_json(&app, "/search", json!({ "q": "predict based on Nitrogen" })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["cards"][0]["id"], "Classifier_010");
}

#[tokio::test]
async fn static_ui_is_served_as_fallback() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<h1>oak</h1>").unwrap();
    let o = builtin_ontology();
    let app = router(AppState::new(new_repository(&o), o), Some(dir.path().to_path_buf()));
    let (status, body) = get(&app, "/index.html").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, b"<h1>oak</h1>");
    assert_eq!(get(&app, "/report").await.0, StatusCode::OK);
}
