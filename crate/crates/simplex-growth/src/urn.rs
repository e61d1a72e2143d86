//! Finite-colour urn reduction for finitely supported weight laws: colours
//! are the canonical face types, activities are fitnesses, and the mean
//! replacement matrix A has entries `A[x][x'] = f(x') E[balls of type x added
//! when x' is drawn]`. Its Perron eigenvalue is the partition growth rate and
//! the eigenvector gives the limiting type measure.

use std::collections::HashMap;

use rand::RngCore;
use serde::Serialize;
use thiserror::Error;

use crate::config::{Instance, Variant, MAX_TYPE_SPACE};
use crate::face::{enumerate_multisets, multiset_count, FaceType, TypeKey};
use crate::star::TypeSampler;

#[derive(Debug, Error, PartialEq)]
pub enum UrnError {
    #[error("type space too large: {got} > {cap}")]
    TypeSpaceTooLarge { got: u64, cap: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(u64),
}

/// Sparse nonnegative-off-diagonal matrix in aggregated triplet form.
#[derive(Debug, Clone, Serialize)]
pub struct SparseMatrix {
    pub n: usize,
    /// (row, col, value), one entry per nonzero, sorted by (row, col).
    pub triplets: Vec<(u32, u32, f64)>,
}

impl SparseMatrix {
    pub fn matvec(&self, v: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for &(r, c, a) in &self.triplets {
            out[r as usize] += a * v[c as usize];
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for &(r, c, a) in &self.triplets {
            if r == c {
                d[r as usize] += a;
            }
        }
        d
    }

    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.triplets
            .iter()
            .filter(|&&(tr, tc, _)| tr as usize == r && tc as usize == c)
            .map(|&(_, _, a)| a)
            .sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PerronPair {
    pub lambda: f64,
    /// Right eigenvector, normalized so that activity . v = 1.
    pub v: Vec<f64>,
    /// Residual ||A v - lambda v||_inf at termination.
    pub residual: f64,
    pub iterations: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct UrnModel {
    pub types: Vec<FaceType>,
    /// Activities a_x = f(x).
    pub activity: Vec<f64>,
    pub mean_matrix: SparseMatrix,
    pub perron: Option<PerronPair>,
}

impl UrnModel {
    /// Growth rate of the partition total (defined once `perron` ran).
    pub fn lambda(&self) -> Option<f64> {
        self.perron.as_ref().map(|p| p.lambda)
    }

    /// Limiting type measure: lambda * v per type.
    pub fn type_measure(&self) -> Option<Vec<f64>> {
        self.perron
            .as_ref()
            .map(|p| p.v.iter().map(|&x| p.lambda * x).collect())
    }

    /// Law of the chosen face type in the limit: f(x) v(x), which sums to 1
    /// by the activity normalization (renormalized against float drift).
    pub fn chosen_type_law(&self) -> Option<Vec<f64>> {
        let p = self.perron.as_ref()?;
        let mut law: Vec<f64> = self
            .activity
            .iter()
            .zip(p.v.iter())
            .map(|(a, v)| a * v)
            .collect();
        let total: f64 = law.iter().sum();
        for x in law.iter_mut() {
            *x /= total;
        }
        Some(law)
    }
}

/// Canonical type space over the weight support atoms: all multisets of size
/// d, lexicographically sorted. Guarded by `MAX_TYPE_SPACE`.
pub fn enumerate_types(support: &[f64], d: usize) -> Result<Vec<FaceType>, UrnError> {
    let count = multiset_count(support.len(), d).unwrap_or(u64::MAX);
    if count > MAX_TYPE_SPACE {
        return Err(UrnError::TypeSpaceTooLarge {
            got: count,
            cap: MAX_TYPE_SPACE,
        });
    }
    Ok(enumerate_multisets(support, d))
}

/// Builds the urn (types, activities, mean matrix) for a finitely supported
/// instance. When a ball of type x' (drawn with probability proportional to
/// f(x') times its count) is subdivided by an atom w, it spawns one ball of
/// type x'_{i <- w} per coordinate i; variant B also withdraws the drawn
/// ball, which lands on the diagonal.
pub fn mean_matrix(inst: &Instance) -> Result<UrnModel, UrnError> {
    let (atoms, probs) = inst.weights.atoms().ok_or_else(|| {
        UrnError::HypothesisViolated("urn reduction needs a finitely supported weight law".into())
    })?;
    let d = inst.d();
    let types = enumerate_types(&atoms, d)?;
    let index: HashMap<TypeKey, usize> = types
        .iter()
        .enumerate()
        .map(|(i, t)| (t.key(), i))
        .collect();
    let activity: Vec<f64> = types.iter().map(|t| inst.fitness.eval(t.weights())).collect();
    if activity.iter().any(|&a| !(a > 0.0)) {
        return Err(UrnError::HypothesisViolated(
            "fitness must be positive on every type".into(),
        ));
    }

    let mut cells: HashMap<(u32, u32), f64> = HashMap::new();
    for (xp, t) in types.iter().enumerate() {
        // Mean offspring per target type when xp is drawn.
        for i in 0..d {
            for (k, &w) in atoms.iter().enumerate() {
                let z = t.replace_coord(i, w);
                let zi = index[&z.key()];
                *cells.entry((zi as u32, xp as u32)).or_insert(0.0) += probs[k];
            }
        }
        if inst.variant() == Variant::B {
            *cells.entry((xp as u32, xp as u32)).or_insert(0.0) -= 1.0;
        }
    }
    let mut triplets: Vec<(u32, u32, f64)> = cells
        .into_iter()
        .filter(|&(_, v)| v != 0.0)
        .map(|((r, c), v)| (r, c, v * activity[c as usize]))
        .collect();
    triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));

    Ok(UrnModel {
        types,
        activity,
        mean_matrix: SparseMatrix {
            n: index.len(),
            triplets,
        },
        perron: None,
    })
}

const MAX_POWER_ITERATIONS: u64 = 1_000_000;

/// Power iteration on A + cI (c chosen to make the matrix nonnegative with a
/// positive diagonal, which keeps the iteration convergent) until the
/// residual on A drops below `tol * lambda`.
pub fn perron(urn: &mut UrnModel, tol: f64) -> Result<&PerronPair, UrnError> {
    let a = &urn.mean_matrix;
    let n = a.n;
    let diag = a.diagonal();
    let min_diag = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_abs = a
        .triplets
        .iter()
        .map(|&(_, _, v)| v.abs())
        .fold(0.0f64, f64::max);
    let shift = (-min_diag).max(0.0) + 0.1 * max_abs;

    let mut v = vec![1.0 / n as f64; n];
    let mut work = vec![0.0; n];
    let mut iterations = 0u64;
    loop {
        iterations += 1;
        a.matvec(&v, &mut work);
        let lambda = work.iter().sum::<f64>() / v.iter().sum::<f64>();
        // The residual of the activity-normalized vector v/(a.v) scales the
        // raw residual by 1/(a.v), so measure it on the vector we return.
        let av: f64 = urn.activity.iter().zip(v.iter()).map(|(a, x)| a * x).sum();
        let mut residual = 0.0f64;
        for i in 0..n {
            residual = residual.max((work[i] - lambda * v[i]).abs() / av);
        }
        if residual <= tol * lambda.abs() && iterations > 1 {
            for x in v.iter_mut() {
                *x /= av;
            }
            if v.iter().any(|&x| !(x > 0.0)) {
                return Err(UrnError::HypothesisViolated(
                    "eigenvector is not strictly positive; matrix not irreducible?".into(),
                ));
            }
            urn.perron = Some(PerronPair {
                lambda,
                v,
                residual,
                iterations,
            });
            return Ok(urn.perron.as_ref().unwrap());
        }
        if iterations >= MAX_POWER_ITERATIONS {
            return Err(UrnError::NoConvergence(iterations));
        }
        // Power step: v <- normalize((A + shift I) v).
        for i in 0..n {
            work[i] += shift * v[i];
        }
        let scale: f64 = work.iter().sum();
        for x in work.iter_mut() {
            *x /= scale;
        }
        std::mem::swap(&mut v, &mut work);
    }
}

/// Samples face types from the limiting chosen-type law.
pub struct UrnTypeSampler {
    types: Vec<FaceType>,
    cum: Vec<f64>,
}

impl UrnTypeSampler {
    pub fn new(urn: &UrnModel) -> Option<UrnTypeSampler> {
        let law = urn.chosen_type_law()?;
        let mut cum = Vec::with_capacity(law.len());
        let mut acc = 0.0;
        for p in &law {
            acc += p;
            cum.push(acc);
        }
        *cum.last_mut()? = 1.0;
        Some(UrnTypeSampler {
            types: urn.types.clone(),
            cum,
        })
    }
}

impl TypeSampler for UrnTypeSampler {
    fn sample_type(&self, rng: &mut dyn RngCore) -> FaceType {
        let u = rand::Rng::gen::<f64>(rng);
        let i = self.cum.partition_point(|&c| c <= u);
        self.types[i.min(self.types.len() - 1)].clone()
    }
}
