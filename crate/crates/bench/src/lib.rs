//! Shared inputs for the benchmarks.

use std::path::PathBuf;

use dynamod_core::PortraitGraph;

/// Loads a graph from the repository's `fixtures/` directory.
pub fn fixture(name: &str) -> PortraitGraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.parse().unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
