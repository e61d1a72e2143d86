//! Face types: sorted weight vectors, the coordinate-replacement maps used by
//! the subdivision dynamics, and enumeration of the canonical finite type
//! space over a set of weight atoms.

use serde::{Deserialize, Serialize};

/// The type of a face: its vertex weights listed in non-decreasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceType(Vec<f64>);

impl FaceType {
    /// Builds a type from arbitrary-order weights, sorting them.
    pub fn new(mut weights: Vec<f64>) -> Self {
        weights.sort_by(|a, b| a.partial_cmp(b).expect("face weights must not be NaN"));
        FaceType(weights)
    }

    /// Wraps a slice already in non-decreasing order. Debug-checked.
    pub fn from_sorted(weights: Vec<f64>) -> Self {
        debug_assert!(weights.windows(2).all(|w| w[0] <= w[1]));
        FaceType(weights)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replaces coordinate `i` by `w` and resorts: the type of the face
    /// obtained by swapping one vertex for a newcomer of weight `w`.
    pub fn replace_coord(&self, i: usize, w: f64) -> FaceType {
        let mut v = self.0.clone();
        v[i] = w;
        FaceType::new(v)
    }

    /// Drops coordinate `i`, keeping order.
    pub fn drop_coord(&self, i: usize) -> FaceType {
        let mut v = Vec::with_capacity(self.0.len() - 1);
        v.extend_from_slice(&self.0[..i]);
        v.extend_from_slice(&self.0[i + 1..]);
        FaceType(v)
    }

    /// Inserts `w` keeping sortedness.
    pub fn insert(&self, w: f64) -> FaceType {
        let pos = self.0.partition_point(|&x| x <= w);
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0[..pos]);
        v.push(w);
        v.extend_from_slice(&self.0[pos..]);
        FaceType(v)
    }

    /// Hashable key based on exact bit patterns. Weights produced by sampling
    /// from a finite support are bit-exact copies of the atoms, so exact
    /// matching is the right equality here.
    pub fn key(&self) -> TypeKey {
        TypeKey(self.0.iter().map(|w| w.to_bits()).collect())
    }
}

/// Exact-bits key for a face type, usable in hash maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeKey(Vec<u64>);

/// Number of multisets of size `d` over `m` atoms: C(m + d - 1, d).
pub fn multiset_count(m: usize, d: usize) -> Option<u64> {
    let mut acc: u128 = 1;
    for i in 0..d as u128 {
        acc = acc.checked_mul(m as u128 + i)?;
        acc /= i + 1;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// All multisets of size `d` over the given atoms, in lexicographic order.
/// `atoms` must be sorted ascending; the output types are then sorted weight
/// vectors and the list is lexicographically sorted as well.
pub fn enumerate_multisets(atoms: &[f64], d: usize) -> Vec<FaceType> {
    let m = atoms.len();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    // Non-decreasing index tuples of length d over 0..m.
    let mut idx = vec![0usize; d];
    loop {
        out.push(FaceType::from_sorted(
            idx.iter().map(|&i| atoms[i]).collect(),
        ));
        // Advance to the next non-decreasing tuple.
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] + 1 < m {
                let v = idx[pos] + 1;
                for slot in idx.iter_mut().skip(pos) {
                    *slot = v;
                }
                break;
            }
        }
    }
}
