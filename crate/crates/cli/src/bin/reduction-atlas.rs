use atlas_cli::serve::{Cli, Command};
use clap::Parser;
use tracing_subscriber::EnvFilter;

#[tokio::main]
async fn main() {
    tracing_subscriber::fmt()
        .with_env_filter(
            EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")),
        )
        .init();

    let Command::Serve(args) = Cli::parse().command;
    let config = match args.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("reduction-atlas: {e}");
            std::process::exit(2);
        }
    };
    if let Err(e) = atlas_api::serve(config).await {
        eprintln!("reduction-atlas: {e}");
        std::process::exit(1);
    }
}
