use std::future::Future;
use std::net::SocketAddr;
use std::sync::Arc;

use atlas_core::{SnapshotSlot, SyncWorker};
use tokio::net::TcpListener;
use tracing::info;

use crate::{app, ApiConfig, AppState};

/// Serves `state` on an already bound listener until `shutdown` resolves.
pub async fn serve_on(
    listener: TcpListener,
    state: AppState,
    static_dir: Option<&std::path::Path>,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    let router = app(state, static_dir);
    axum::serve(
        listener,
        router.into_make_service_with_connect_info::<SocketAddr>(),
    )
    .with_graceful_shutdown(shutdown)
    .await
}

/// Starts the corpus sync worker and serves the API until Ctrl-C.
pub async fn serve(config: ApiConfig) -> std::io::Result<()> {
    let slot = Arc::new(SnapshotSlot::new());
    let sync = SyncWorker::new(&config.corpus_root, slot.clone()).spawn(config.sync_interval);
    let listener = TcpListener::bind(config.listen_address).await?;
    info!(
        address = %listener.local_addr()?,
        root = %config.corpus_root.display(),
        "serving reduction atlas"
    );
    let state = AppState::new(slot, config.rate_limit);
    let result = serve_on(listener, state, config.static_dir.as_deref(), async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await;
    tokio::task::spawn_blocking(move || sync.stop())
        .await
        .map_err(std::io::Error::other)?;
    result
}
