//! Request helpers shared by the API test targets.
#![allow(dead_code)]

use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::Path;
use std::sync::Arc;

use atlas_api::{app, AppState};
use atlas_core::{ingest, SnapshotSlot};
use axum::body::Body;
use axum::extract::ConnectInfo;
use axum::http::{HeaderMap, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use tower::ServiceExt;

pub struct Reply {
    pub status: StatusCode,
    pub headers: HeaderMap,
    pub body: Vec<u8>,
}

impl Reply {
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_slice(&self.body).unwrap_or_else(|e| {
            panic!(
                "body is not JSON ({e}): {}",
                String::from_utf8_lossy(&self.body)
            )
        })
    }

    pub fn text(&self) -> String {
        String::from_utf8(self.body.clone()).unwrap()
    }

    pub fn error_code(&self) -> String {
        self.json()["error"]["code"].as_str().unwrap().to_string()
    }

    pub fn content_type(&self) -> &str {
        self.headers
            .get("content-type")
            .map(|v| v.to_str().unwrap())
            .unwrap_or_default()
    }
}

/// A slot holding a snapshot of the corpus at `root`.
pub fn loaded_slot(root: &Path) -> Arc<SnapshotSlot> {
    let slot = Arc::new(SnapshotSlot::new());
    slot.publish(ingest(root).expect("corpus ingests"));
    slot
}

pub fn fixture_app(root: &Path, rate_limit: u32) -> Router {
    app(AppState::new(loaded_slot(root), rate_limit), None)
}

pub async fn get_from(app: &Router, uri: &str, client: IpAddr) -> Reply {
    let mut req = Request::get(uri).body(Body::empty()).unwrap();
    req.extensions_mut()
        .insert(ConnectInfo(SocketAddr::new(client, 40000)));
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let headers = res.headers().clone();
    let body = res.into_body().collect().await.unwrap().to_bytes().to_vec();
    Reply {
        status,
        headers,
        body,
    }
}

pub async fn get(app: &Router, uri: &str) -> Reply {
    get_from(app, uri, IpAddr::V4(Ipv4Addr::new(10, 0, 0, 1))).await
}
