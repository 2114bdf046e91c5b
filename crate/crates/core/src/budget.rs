//! Work limits shared by the exponential routines.
//!
//! A [`Budget`] carries an optional wall-clock limit and an optional node
//! limit. The wall clock is only consulted when a time limit is set, so a
//! budget without one is usable on targets that have no clock.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, ResourceExceeded};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Budget {
            time_limit: None,
            node_limit: None,
        }
    }

    pub const fn seconds(secs: u64) -> Self {
        Budget {
            time_limit: Some(Duration::from_secs(secs)),
            node_limit: None,
        }
    }

    pub const fn nodes(limit: u64) -> Self {
        Budget {
            time_limit: None,
            node_limit: Some(limit),
        }
    }

    pub fn with_nodes(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub(crate) fn start(&self, what: &'static str) -> Meter {
        Meter {
            what,
            deadline: self.time_limit.map(|d| (Instant::now() + d, d)),
            node_limit: self.node_limit,
            nodes: AtomicU64::new(0),
            tripped: AtomicBool::new(false),
        }
    }
}

/// Running counter for one guarded computation. Safe to share between
/// worker threads.
#[derive(Debug)]
pub(crate) struct Meter {
    what: &'static str,
    deadline: Option<(Instant, Duration)>,
    node_limit: Option<u64>,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

const CLOCK_STRIDE: u64 = 1 << 14;

impl Meter {
    /// Records `n` units of work. Returns `false` once any limit is hit.
    #[inline]
    pub(crate) fn tick(&self, n: u64) -> bool {
        let before = self.nodes.fetch_add(n, Ordering::Relaxed);
        let after = before + n;
        if let Some(limit) = self.node_limit {
            if after > limit {
                self.tripped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if let Some((deadline, _)) = self.deadline {
            if before / CLOCK_STRIDE != after / CLOCK_STRIDE && Instant::now() > deadline {
                self.tripped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        !self.tripped.load(Ordering::Relaxed)
    }

    pub(crate) fn progress(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn exceeded(&self) -> Error {
        let limit = match (self.deadline, self.node_limit) {
            (Some((deadline, d)), _) if Instant::now() > deadline => format!("time {}s", d.as_secs_f64()),
            (_, Some(n)) => format!("nodes {n}"),
            (Some((_, d)), None) => format!("time {}s", d.as_secs_f64()),
            (None, None) => "unknown".to_string(),
        };
        Error::Resource(ResourceExceeded {
            what: self.what.to_string(),
            limit,
            progress: self.progress(),
        })
    }
}
