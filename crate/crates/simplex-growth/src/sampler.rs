//! Dynamic weighted random index over a mutating set of items.
//!
//! A Fenwick (binary indexed) tree holds per-slot weights; sampling draws a
//! slot with probability weight/total in O(log n), and slots can be inserted
//! and removed in O(log n). Removed slots are recycled through a free list;
//! generation counters make stale handles detectable.
//!
//! Incremental float updates drift, so the tree and the running total are
//! rebuilt from the authoritative per-slot weights every `REBUILD_INTERVAL`
//! mutations.

use rand::Rng;
use thiserror::Error;

const REBUILD_INTERVAL: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq)]
pub enum SamplerError {
    #[error("weight must be positive and finite, got {0}")]
    NonPositiveWeight(f64),
    #[error("stale slot handle")]
    StaleHandle,
    #[error("cannot sample from an empty index")]
    EmptyIndex,
}

/// Stable reference to a live slot. Invalidated by `remove`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlotHandle {
    index: u32,
    generation: u32,
}

impl SlotHandle {
    pub fn index(&self) -> usize {
        self.index as usize
    }
}

#[derive(Debug, Clone, Default)]
pub struct DynamicWeightedIndex {
    /// Authoritative weights; 0.0 marks a vacant slot.
    weights: Vec<f64>,
    generations: Vec<u32>,
    /// 1-based Fenwick tree over `weights`.
    tree: Vec<f64>,
    free: Vec<u32>,
    live: usize,
    total: f64,
    mutations: u64,
}

impl DynamicWeightedIndex {
    pub fn new() -> Self {
        DynamicWeightedIndex {
            weights: Vec::new(),
            generations: Vec::new(),
            tree: vec![0.0],
            free: Vec::new(),
            live: 0,
            total: 0.0,
            mutations: 0,
        }
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut s = Self::new();
        s.weights.reserve(n);
        s.generations.reserve(n);
        s.tree.reserve(n + 1);
        s
    }

    /// Number of live slots.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Running total of live weights (the sampling normalizer).
    pub fn total(&self) -> f64 {
        self.total
    }

    /// From-scratch total, for drift audits.
    pub fn recompute_total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn weight(&self, h: SlotHandle) -> Result<f64, SamplerError> {
        self.check(h)?;
        Ok(self.weights[h.index()])
    }

    fn check(&self, h: SlotHandle) -> Result<(), SamplerError> {
        let i = h.index();
        if i >= self.weights.len()
            || self.generations[i] != h.generation
            || self.weights[i] == 0.0
        {
            return Err(SamplerError::StaleHandle);
        }
        Ok(())
    }

    pub fn insert(&mut self, w: f64) -> Result<SlotHandle, SamplerError> {
        if !(w > 0.0) || !w.is_finite() {
            return Err(SamplerError::NonPositiveWeight(w));
        }
        let index = match self.free.pop() {
            Some(i) => {
                let i = i as usize;
                self.weights[i] = w;
                self.tree_add(i, w);
                i
            }
            None => {
                let i = self.weights.len();
                self.weights.push(w);
                self.generations.push(0);
                self.tree_push(w);
                i
            }
        };
        self.live += 1;
        self.total += w;
        self.after_mutation();
        Ok(SlotHandle {
            index: index as u32,
            generation: self.generations[index],
        })
    }

    pub fn remove(&mut self, h: SlotHandle) -> Result<f64, SamplerError> {
        self.check(h)?;
        let i = h.index();
        let w = self.weights[i];
        self.tree_add(i, -w);
        self.weights[i] = 0.0;
        self.generations[i] = self.generations[i].wrapping_add(1);
        self.free.push(i as u32);
        self.live -= 1;
        self.total -= w;
        self.after_mutation();
        Ok(w)
    }

    /// Draws a live slot with probability weight/total.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SlotHandle, SamplerError> {
        if self.live == 0 {
            return Err(SamplerError::EmptyIndex);
        }
        let u = rng.gen::<f64>() * self.total;
        let idx = match self.find(u) {
            Some(i) => i,
            // Float edge (u at or past the drifted total): fall back to the
            // last live slot, resolving the boundary deterministically.
            None => self
                .weights
                .iter()
                .rposition(|&w| w > 0.0)
                .expect("live > 0"),
        };
        Ok(SlotHandle {
            index: idx as u32,
            generation: self.generations[idx],
        })
    }

    /// Largest index whose prefix sum is <= u, i.e. the slot whose cumulative
    /// interval [prefix, prefix + w) contains u. Exact boundary hits resolve
    /// to the right. Returns None if u lies at or beyond the tree total.
    fn find(&self, u: f64) -> Option<usize> {
        let n = self.weights.len();
        let mut pos = 0usize;
        let mut rem = u;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= rem {
                pos = next;
                rem -= self.tree[next];
            }
            step >>= 1;
        }
        if pos < n && self.weights[pos] > 0.0 {
            Some(pos)
        } else {
            None
        }
    }

    fn after_mutation(&mut self) {
        self.mutations += 1;
        if self.mutations.is_multiple_of(REBUILD_INTERVAL) {
            self.rebuild();
        }
    }

    /// Recomputes the tree and total exactly from the per-slot weights.
    pub fn rebuild(&mut self) {
        let n = self.weights.len();
        self.tree.clear();
        self.tree.resize(n + 1, 0.0);
        for i in 0..n {
            let w = self.weights[i];
            let mut j = i + 1;
            while j <= n {
                self.tree[j] += w;
                j += lowbit(j);
            }
        }
        self.total = self.recompute_total();
    }

    /// Adds `delta` at 0-based position `i`.
    fn tree_add(&mut self, i: usize, delta: f64) {
        let n = self.weights.len();
        let mut j = i + 1;
        while j <= n {
            self.tree[j] += delta;
            j += lowbit(j);
        }
    }

    /// Appends a new leaf with weight `w` (position = old length).
    fn tree_push(&mut self, w: f64) {
        let i = self.tree.len(); // 1-based position of the new leaf
        let mut v = w;
        let mut j = i - 1;
        let lb = lowbit(i);
        while j > i - lb {
            v += self.tree[j];
            j -= lowbit(j);
        }
        self.tree.push(v);
    }
}

#[inline]
fn lowbit(i: usize) -> usize {
    i & i.wrapping_neg()
}
