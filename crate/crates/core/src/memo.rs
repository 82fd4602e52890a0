use std::cell::Cell;
use std::collections::HashMap;
use std::sync::Mutex;

use crate::canon::canonical_key;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Node counter for one top-level computation.
pub(crate) struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: Cell::new(0),
        }
    }

    pub(crate) fn tick(&self, d: &Diagram) -> Result<()> {
        let used = self.used.get() + 1;
        if used > self.limit {
            return Err(Error::Budget {
                limit: self.limit,
                crossings: d.c(),
                components: d.r(),
            });
        }
        self.used.set(used);
        Ok(())
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.get()
    }
}

/// Shared get-or-insert cache keyed by the canonical diagram encoding. The
/// first stored value for a key wins, so every reader sees the same value.
pub(crate) struct Cache<V> {
    map: Mutex<HashMap<Vec<u32>, V>>,
}

impl<V: Clone> Cache<V> {
    pub(crate) fn new() -> Self {
        Cache {
            map: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn key(d: &Diagram) -> Vec<u32> {
        canonical_key(d)
    }

    pub(crate) fn get(&self, key: &[u32]) -> Option<V> {
        self.map.lock().unwrap().get(key).cloned()
    }

    pub(crate) fn insert(&self, key: Vec<u32>, v: V) -> V {
        self.map.lock().unwrap().entry(key).or_insert(v).clone()
    }

    pub(crate) fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }
}
