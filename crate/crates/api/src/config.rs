use std::net::SocketAddr;
use std::path::PathBuf;
use std::time::Duration;

use thiserror::Error;

pub const DEFAULT_SYNC_INTERVAL_SECS: u64 = 300;
pub const DEFAULT_RATE_LIMIT: u32 = 120;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("sync interval must be at least 1 second")]
    SyncInterval,
    #[error("rate limit must be at least 1 request per minute")]
    RateLimit,
}

/// Service settings. Build with [`ApiConfig::new`] so the bounds are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiConfig {
    pub listen_address: SocketAddr,
    pub corpus_root: PathBuf,
    pub sync_interval: Duration,
    /// Requests per minute per client address.
    pub rate_limit: u32,
    pub static_dir: Option<PathBuf>,
}

impl ApiConfig {
    pub fn new(
        listen_address: SocketAddr,
        corpus_root: PathBuf,
        sync_interval_secs: u64,
        rate_limit: u32,
        static_dir: Option<PathBuf>,
    ) -> Result<Self, ConfigError> {
        if sync_interval_secs < 1 {
            return Err(ConfigError::SyncInterval);
        }
        if rate_limit < 1 {
            return Err(ConfigError::RateLimit);
        }
        Ok(Self {
            listen_address,
            corpus_root,
            sync_interval: Duration::from_secs(sync_interval_secs),
            rate_limit,
            static_dir,
        })
    }
}
