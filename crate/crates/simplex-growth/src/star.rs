//! Companion process for a single vertex's star: the centre keeps a multiset
//! of co-type tuples (the other d-1 weights of each face containing it), a
//! face is drawn fitness-proportionally, subdivided, and only faces through
//! the centre are kept. Monte Carlo over this chain evaluates the limiting
//! degree distribution
//!     p_k = E[ lambda/(F_k + lambda) * prod_{j<k} F_j/(F_j + lambda) ]
//! and the per-centre-weight growth rate of the star fitness.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{Instance, Variant};
use crate::face::FaceType;
use crate::profile::{DegreeProfile, Provenance};
use crate::sampler::DynamicWeightedIndex;
use crate::seed::replica_seed;

#[derive(Debug, Error, PartialEq)]
pub enum StarError {
    #[error("unsupported dimension: {0}")]
    DimensionUnsupported(String),
    #[error("star has no faces left")]
    EmptyStar,
}

/// Source of initial face types (stationary law from the urn, or an
/// empirical resampler from a growth run).
pub trait TypeSampler {
    fn sample_type(&self, rng: &mut dyn RngCore) -> FaceType;
}

/// Centre weight for the initial star.
#[derive(Debug, Clone, Copy)]
pub enum Centre {
    Random,
    Fixed(f64),
}

/// State of the star chain: centre weight plus the multiset of co-type
/// tuples, with the total fitness held by a weighted index.
pub struct StarState {
    inst: Instance,
    centre: f64,
    tuples: Vec<Option<FaceType>>,
    sampler: DynamicWeightedIndex,
    steps: u64,
}

impl StarState {
    /// Draws a face type, subdivides it by the centre, and keeps the d faces
    /// through the centre. For d = 1 (variant A) the star is a single frozen
    /// vertex.
    pub fn init<R: Rng>(
        inst: &Instance,
        types: &impl TypeSampler,
        centre: Centre,
        rng: &mut R,
    ) -> Result<StarState, StarError> {
        let d = inst.d();
        if d == 1 && inst.variant() == Variant::B {
            return Err(StarError::DimensionUnsupported(
                "the d = 1 variant B star degenerates immediately".into(),
            ));
        }
        let centre = match centre {
            Centre::Random => inst.weights.sample(rng),
            Centre::Fixed(w) => w,
        };
        let mut state = StarState {
            inst: inst.clone(),
            centre,
            tuples: Vec::new(),
            sampler: DynamicWeightedIndex::new(),
            steps: 0,
        };
        if d == 1 {
            state.push_tuple(FaceType::from_sorted(Vec::new()));
            return Ok(state);
        }
        let face = types.sample_type(rng);
        debug_assert_eq!(face.len(), d);
        for i in 0..d {
            state.push_tuple(face.drop_coord(i));
        }
        Ok(state)
    }

    fn push_tuple(&mut self, co_type: FaceType) {
        let fitness = self.inst.fitness.eval(co_type.insert(self.centre).weights());
        let h = self
            .sampler
            .insert(fitness)
            .expect("fitness positive on valid configs");
        let idx = h.index();
        if idx == self.tuples.len() {
            self.tuples.push(Some(co_type));
        } else {
            self.tuples[idx] = Some(co_type);
        }
    }

    pub fn centre(&self) -> f64 {
        self.centre
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Number of co-type tuples (faces through the centre).
    pub fn face_count(&self) -> usize {
        self.sampler.len()
    }

    /// Total fitness F(S_n) of the star.
    pub fn total_fitness(&self) -> f64 {
        self.sampler.total()
    }

    /// From-scratch total for drift audits.
    pub fn recompute_total_fitness(&self) -> f64 {
        self.tuples
            .iter()
            .flatten()
            .map(|t| self.inst.fitness.eval(t.insert(self.centre).weights()))
            .sum()
    }

    /// One subdivision within the star.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<(), StarError> {
        let d = self.inst.d();
        if d == 1 {
            // A single frozen vertex: nothing changes.
            self.steps += 1;
            return Ok(());
        }
        if self.sampler.is_empty() {
            return Err(StarError::EmptyStar);
        }
        let handle = self.sampler.sample(rng).expect("non-empty");
        let idx = handle.index();
        let chosen = self.tuples[idx].as_ref().expect("live slot").clone();
        let w = self.inst.weights.sample(rng);
        for i in 0..d - 1 {
            self.push_tuple(chosen.replace_coord(i, w));
        }
        if self.inst.variant() == Variant::B {
            self.sampler.remove(handle).expect("live handle");
            self.tuples[idx] = None;
        }
        self.steps += 1;
        Ok(())
    }
}

/// Monte Carlo estimate of p_k for k <= k_max: `replicas` independent star
/// runs of k_max steps each, with centre weight drawn from the weight law.
/// Deterministic given the seed; replicas run in parallel.
pub fn estimate_pk(
    inst: &Instance,
    types: &(impl TypeSampler + Sync),
    lambda: f64,
    k_max: usize,
    replicas: usize,
    seed: u64,
) -> Result<DegreeProfile, StarError> {
    assert!(lambda > 0.0, "lambda must be positive");
    assert!(replicas >= 1);
    let per_replica: Vec<Vec<f64>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(seed, r as u64));
            let mut star = StarState::init(inst, types, Centre::Random, &mut rng)?;
            let mut terms = Vec::with_capacity(k_max + 1);
            let mut product = 1.0;
            for k in 0..=k_max {
                let f = star.total_fitness();
                terms.push(lambda / (f + lambda) * product);
                product *= f / (f + lambda);
                if k < k_max {
                    star.step(&mut rng)?;
                }
            }
            Ok(terms)
        })
        .collect::<Result<Vec<_>, StarError>>()?;

    let r = replicas as f64;
    let entries: Vec<(u32, f64, f64)> = (0..=k_max)
        .map(|k| {
            let mean = per_replica.iter().map(|t| t[k]).sum::<f64>() / r;
            let stderr = if replicas > 1 {
                let var = per_replica
                    .iter()
                    .map(|t| (t[k] - mean).powi(2))
                    .sum::<f64>()
                    / (r - 1.0);
                (var / r).sqrt()
            } else {
                0.0
            };
            (k as u32, mean, stderr)
        })
        .collect();
    let mut profile = DegreeProfile::from_fractions(
        Provenance::StarMc,
        &entries.iter().map(|&(k, m, _)| (k, m)).collect::<Vec<_>>(),
    );
    for (e, &(_, _, s)) in profile.entries.iter_mut().zip(entries.iter()) {
        e.stderr = s;
    }
    profile.replicas = replicas as u32;
    Ok(profile)
}

/// Estimate of lim F(S_n)/n for a fixed centre weight: mean of F_n/n over
/// the last half of each run, averaged across replicas. Returns (estimate,
/// standard error).
pub fn estimate_star_rate(
    inst: &Instance,
    types: &(impl TypeSampler + Sync),
    centre_weight: f64,
    steps: u64,
    replicas: usize,
    seed: u64,
) -> Result<(f64, f64), StarError> {
    assert!(steps >= 2);
    assert!(replicas >= 1);
    let means: Vec<f64> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(seed, r as u64));
            let mut star = StarState::init(inst, types, Centre::Fixed(centre_weight), &mut rng)?;
            let half = steps / 2;
            let mut acc = 0.0;
            let mut count = 0u64;
            for n in 1..=steps {
                star.step(&mut rng)?;
                if n > half {
                    acc += star.total_fitness() / n as f64;
                    count += 1;
                }
            }
            Ok(acc / count as f64)
        })
        .collect::<Result<Vec<_>, StarError>>()?;
    let r = replicas as f64;
    let mean = means.iter().sum::<f64>() / r;
    let stderr = if replicas > 1 {
        let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (r - 1.0);
        (var / r).sqrt()
    } else {
        0.0
    };
    Ok((mean, stderr))
}

/// Type sampler with a single fixed outcome (handy for constant-type
/// instances and tests).
pub struct FixedTypeSampler(pub FaceType);

impl TypeSampler for FixedTypeSampler {
    fn sample_type(&self, _rng: &mut dyn RngCore) -> FaceType {
        self.0.clone()
    }
}

impl TypeSampler for crate::growth::EmpiricalTypeSampler {
    fn sample_type(&self, rng: &mut dyn RngCore) -> FaceType {
        self.sample(rng)
    }
}
