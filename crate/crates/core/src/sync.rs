//! Periodic re-ingestion with atomic snapshot replacement.
//!
//! A single worker builds new snapshots off to the side and swaps them into a
//! [`SnapshotSlot`]. Readers take one `Arc<Snapshot>` per request and keep using
//! it even if a newer one is published meanwhile.

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc::{self, RecvTimeoutError};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;
use std::time::Duration;

use arc_swap::ArcSwapOption;
use tracing::{info, warn};

use crate::corpus::CorpusFiles;
use crate::store::{ingest_files, IngestError, Snapshot};
use crate::validator::ValidationReport;

/// The currently served snapshot plus sync bookkeeping.
#[derive(Debug, Default)]
pub struct SnapshotSlot {
    current: ArcSwapOption<Snapshot>,
    failures: AtomicU64,
}

impl SnapshotSlot {
    pub fn new() -> Self {
        Self::default()
    }

    /// `None` until the first successful ingest.
    pub fn load(&self) -> Option<Arc<Snapshot>> {
        self.current.load_full()
    }

    pub fn publish(&self, snapshot: Snapshot) {
        self.current.store(Some(Arc::new(snapshot)));
    }

    /// Number of sync attempts that did not produce a snapshot.
    pub fn sync_failures(&self) -> u64 {
        self.failures.load(Ordering::Relaxed)
    }

    fn record_failure(&self) {
        self.failures.fetch_add(1, Ordering::Relaxed);
    }
}

#[derive(Debug)]
pub enum TickOutcome {
    /// Digest matches the last attempt; nothing was done.
    Unchanged,
    Published {
        digest: String,
    },
    Rejected {
        digest: String,
        report: ValidationReport,
    },
    Failed {
        error: String,
    },
}

/// Re-ingests one corpus directory into one slot.
#[derive(Debug)]
pub struct SyncWorker {
    root: PathBuf,
    slot: Arc<SnapshotSlot>,
    // Digest of the last corpus version attempted, published or not, so that a
    // broken version is reported once rather than on every tick.
    last_attempt: Mutex<Option<String>>,
}

impl SyncWorker {
    pub fn new(root: impl Into<PathBuf>, slot: Arc<SnapshotSlot>) -> Self {
        Self {
            root: root.into(),
            slot,
            last_attempt: Mutex::new(None),
        }
    }

    pub fn slot(&self) -> &Arc<SnapshotSlot> {
        &self.slot
    }

    pub fn tick(&self) -> TickOutcome {
        let files = match CorpusFiles::read(&self.root) {
            Ok(files) => files,
            Err(e) => {
                self.slot.record_failure();
                warn!(error = %e, "corpus sync failed to read the corpus");
                return TickOutcome::Failed {
                    error: e.to_string(),
                };
            }
        };
        let digest = files.digest();
        {
            let mut last = self.last_attempt.lock().expect("sync state poisoned");
            if last.as_deref() == Some(digest.as_str()) {
                return TickOutcome::Unchanged;
            }
            *last = Some(digest.clone());
        }

        match ingest_files(&files) {
            Ok(snapshot) => {
                info!(
                    digest = %digest,
                    networks = snapshot.networks().len(),
                    "published corpus snapshot"
                );
                self.slot.publish(snapshot);
                TickOutcome::Published { digest }
            }
            Err(IngestError::ValidationFailed(report)) => {
                self.slot.record_failure();
                warn!(
                    digest = %digest,
                    errors = report.errors(),
                    "corpus failed validation; keeping the previous snapshot"
                );
                for finding in report.findings() {
                    warn!("{finding}");
                }
                TickOutcome::Rejected { digest, report }
            }
            Err(e) => {
                self.slot.record_failure();
                warn!(error = %e, "corpus ingest failed; keeping the previous snapshot");
                TickOutcome::Failed {
                    error: e.to_string(),
                }
            }
        }
    }

    /// Runs the first tick immediately and then one tick per `interval` on a
    /// background thread until the handle is stopped or dropped.
    pub fn spawn(self, interval: Duration) -> SyncHandle {
        let (stop_tx, stop_rx) = mpsc::channel::<()>();
        let thread = std::thread::Builder::new()
            .name("corpus-sync".into())
            .spawn(move || loop {
                self.tick();
                match stop_rx.recv_timeout(interval) {
                    Err(RecvTimeoutError::Timeout) => continue,
                    Ok(()) | Err(RecvTimeoutError::Disconnected) => break,
                }
            })
            .expect("spawn sync thread");
        SyncHandle {
            stop: Some(stop_tx),
            thread: Some(thread),
        }
    }
}

/// Stops the sync thread when dropped.
#[derive(Debug)]
pub struct SyncHandle {
    stop: Option<mpsc::Sender<()>>,
    thread: Option<JoinHandle<()>>,
}

impl SyncHandle {
    pub fn stop(mut self) {
        self.shutdown();
    }

    fn shutdown(&mut self) {
        if let Some(tx) = self.stop.take() {
            let _ = tx.send(());
        }
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

impl Drop for SyncHandle {
    fn drop(&mut self) {
        self.shutdown();
    }
}
