//! Sweep configuration file (TOML).
//!
//! ```toml
//! seeds = 500          # instances per spec
//! oracle = true        # default true
//! oracle_cap = 16      # largest n solved exactly
//! node_limit = 50000000
//!
//! [[spec]]
//! family = "uniform"
//! m = 3
//! k = 2
//! n_max = 12
//! seed = 1000
//! ```

use serde::Deserialize;

use mls_core::oracle::{Oracle, DEFAULT_NODE_LIMIT, DEFAULT_SIZE_CAP};
use mls_core::workloads::GenSpec;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub seeds: u64,
    #[serde(default = "yes")]
    pub oracle: bool,
    #[serde(default = "default_cap")]
    pub oracle_cap: usize,
    #[serde(default = "default_node_limit")]
    pub node_limit: u64,
    #[serde(default)]
    pub spec: Vec<GenSpec>,
}

fn yes() -> bool {
    true
}
fn default_cap() -> usize {
    DEFAULT_SIZE_CAP
}
fn default_node_limit() -> u64 {
    DEFAULT_NODE_LIMIT
}

impl SweepFile {
    pub fn oracle(&self) -> Option<Oracle> {
        self.oracle.then_some(Oracle {
            size_cap: self.oracle_cap,
            node_limit: self.node_limit,
        })
    }
}
