//! `reduction-atlas serve` arguments. Flags override environment variables,
//! which override the defaults.

use std::net::SocketAddr;
use std::path::PathBuf;

use atlas_api::{ApiConfig, ConfigError, DEFAULT_RATE_LIMIT, DEFAULT_SYNC_INTERVAL_SECS};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "reduction-atlas",
    version,
    about = "Serve a compendium of problems and reductions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Serve the JSON API (and optional static UI) for a corpus directory.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    /// Corpus root directory.
    #[arg(long, env = "ATLAS_ROOT")]
    pub root: PathBuf,

    #[arg(long, env = "ATLAS_LISTEN", default_value = "127.0.0.1:8080")]
    pub listen: SocketAddr,

    /// Seconds between corpus re-reads.
    #[arg(long, env = "ATLAS_SYNC_INTERVAL", default_value_t = DEFAULT_SYNC_INTERVAL_SECS)]
    pub sync_interval: u64,

    /// Requests per minute per client address.
    #[arg(long, env = "ATLAS_RATE_LIMIT", default_value_t = DEFAULT_RATE_LIMIT)]
    pub rate_limit: u32,

    /// Directory of UI assets served at `/`.
    #[arg(long = "static", env = "ATLAS_STATIC_DIR")]
    pub static_dir: Option<PathBuf>,
}

impl ServeArgs {
    pub fn into_config(self) -> Result<ApiConfig, ConfigError> {
        ApiConfig::new(
            self.listen,
            self.root,
            self.sync_interval,
            self.rate_limit,
            self.static_dir,
        )
    }
}
