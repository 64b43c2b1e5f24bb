//! Resource caps shared by the brute-force engines and the search procedures.
//!
//! Defaults are compiled in. A process may install different caps once,
//! typically from the environment (see [`Limits::from_env`]).

use std::sync::OnceLock;

/// Maximum arity of a relation.
pub const MAX_ARITY: usize = 6;

pub const ENV_MAX_VARS: &str = "ARGCLASS_MAX_VARS";
pub const ENV_MAX_INDICATORS: &str = "ARGCLASS_MAX_INDICATORS";
pub const ENV_MAX_KB: &str = "ARGCLASS_MAX_KB";
pub const ENV_SEARCH_NODES: &str = "ARGCLASS_SEARCH_NODES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Variables a truth-table engine may enumerate.
    pub max_vars: usize,
    /// Knowledge-base size for subset-enumerating deciders.
    pub max_kb: usize,
    /// Indicator variables in a weighted-satisfiability encoding.
    pub max_indicators: usize,
    /// Nodes visited by one pp-definition search before it gives up.
    pub search_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vars: 24,
            max_kb: 16,
            max_indicators: 1 << 16,
            search_nodes: 5_000_000,
        }
    }
}

static INSTALLED: OnceLock<Limits> = OnceLock::new();

impl Limits {
    /// Defaults overridden by any of the `ARGCLASS_*` variables that parse.
    pub fn from_env() -> Self {
        fn read<T: std::str::FromStr>(key: &str) -> Option<T> {
            std::env::var(key).ok()?.trim().parse().ok()
        }
        let mut limits = Limits::default();
        if let Some(v) = read(ENV_MAX_VARS) {
            limits.max_vars = v;
        }
        if let Some(v) = read(ENV_MAX_KB) {
            limits.max_kb = v;
        }
        if let Some(v) = read(ENV_MAX_INDICATORS) {
            limits.max_indicators = v;
        }
        if let Some(v) = read(ENV_SEARCH_NODES) {
            limits.search_nodes = v;
        }
        limits
    }

    /// Installs process-wide limits. Returns false if limits were already fixed.
    pub fn install(self) -> bool {
        INSTALLED.set(self).is_ok()
    }

    /// The installed limits, or the defaults.
    pub fn current() -> Limits {
        *INSTALLED.get_or_init(Limits::default)
    }
}
