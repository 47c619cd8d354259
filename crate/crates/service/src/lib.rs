//! HTTP service: scenario storage with revisioned what-if edits and
//! on-demand analysis.
//!
//! | method | path | |
//! |---|---|---|
//! | POST | `/scenarios[?format=..&label=..]` | create, 201 with `id` and revision 1 |
//! | GET | `/scenarios` | list |
//! | GET | `/scenarios/{id}` | current content, revision and digest |
//! | PATCH | `/scenarios/{id}` | edit batch, optional `If-Match: <revision>` |
//! | GET | `/scenarios/{id}/analysis` | report; `variant`, `min-dim`, `band`, `precision` |
//! | GET | `/scenarios/{id}/linegraph` | `min-dim=N` or `band=lo:hi`, `format=json\|dot` |
//! | GET | `/scenarios/{id}/compare/{other}` | diff of `other` against `id` |
//!
//! Errors carry `{"reason": .., "message": ..}` with 400 for unparseable
//! input, 404 for unknown ids, 409 for a stale `If-Match` and 422 for edits
//! that break invariants or a `NoSharedFaces` analysis.

pub mod api;
pub mod edit;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use thiserror::Error;

pub use api::{router, ApiError};
pub use edit::{apply_edits, Edit, EditBatch};
pub use store::{Record, Store, StoreError};

#[derive(Debug, Clone)]
pub struct Config {
    pub listen: SocketAddr,
    /// Without a data directory scenarios live in memory only.
    pub data_dir: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("listen on {addr}: {source}")]
    Bind {
        addr: SocketAddr,
        source: std::io::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn open_store(config: &Config) -> Result<Store, StoreError> {
    match &config.data_dir {
        Some(dir) => Store::open(dir),
        None => Ok(Store::in_memory()),
    }
}

/// Serves until interrupted.
pub async fn serve(config: Config) -> Result<(), ServeError> {
    let store = Arc::new(open_store(&config)?);
    let listener = tokio::net::TcpListener::bind(config.listen)
        .await
        .map_err(|source| ServeError::Bind {
            addr: config.listen,
            source,
        })?;
    tracing::info!(
        addr = %listener.local_addr()?,
        scenarios = store.len(),
        "listening"
    );
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
