//! Growth dynamics of the complex: at every step an active (d-1)-face is
//! drawn with probability proportional to its fitness, a new vertex is glued
//! onto it (subdivision), and in variant B the chosen face is retired.
//!
//! The partition total (sum of active-face fitnesses) lives inside the
//! weighted index; per-step work is O(d log n).

use std::collections::HashMap;

use rand::Rng;
use thiserror::Error;

use crate::config::{Instance, Variant};
use crate::face::{FaceType, TypeKey};
use crate::profile::{DegreeProfile, Provenance};
use crate::sampler::{DynamicWeightedIndex, SlotHandle};

#[derive(Debug, Error, PartialEq)]
pub enum GrowthError {
    #[error("complex has no active faces")]
    EmptyComplex,
    #[error("partition trace too short: {got} < {need}")]
    TraceTooShort { got: usize, need: usize },
    #[error("too few recorded type samples: {got} < {need}")]
    TooFewSamples { got: usize, need: usize },
}

/// One active (d-1)-face: sorted vertex ids plus the cached type.
#[derive(Debug, Clone)]
struct ActiveFace {
    verts: Vec<u32>,
    ftype: FaceType,
}

/// What happened in one growth step.
#[derive(Debug, Clone)]
pub struct GrowthEvent {
    pub step: u64,
    pub chosen_verts: Vec<u32>,
    pub chosen_type: FaceType,
    pub new_vertex: u32,
    pub new_weight: f64,
    pub faces_added: Vec<Vec<u32>>,
    pub face_removed: bool,
}

/// The growing complex. Vertices are numbered by arrival: the initial complex
/// occupies ids 0..v0 (external labels 1-v0 ..= 0) and the vertex created at
/// step m gets id v0 + m - 1 (label m).
pub struct ComplexState {
    inst: Instance,
    vertex_weights: Vec<f64>,
    degrees: Vec<u32>,
    initial_vertices: usize,
    initial_faces: usize,
    initial_edges: usize,
    faces: Vec<Option<ActiveFace>>,
    sampler: DynamicWeightedIndex,
    handles: Vec<Option<SlotHandle>>,
    steps: u64,
}

impl ComplexState {
    /// Builds the state at n = 0 from the instance's initial complex.
    pub fn init<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> ComplexState {
        let d = inst.d();
        let (weights, active): (Vec<f64>, Vec<Vec<u32>>) = match &inst.cfg.initial {
            crate::config::InitialComplexSpec::Simplex => {
                let weights: Vec<f64> = (0..=d).map(|_| inst.weights.sample(rng)).collect();
                // All d+1 boundary faces of the simplex are active.
                let active = (0..=d)
                    .map(|skip| {
                        (0..=d)
                            .filter(|&v| v != skip)
                            .map(|v| v as u32)
                            .collect::<Vec<u32>>()
                    })
                    .collect();
                (weights, active)
            }
            crate::config::InitialComplexSpec::Explicit {
                vertex_weights,
                faces,
            } => {
                let weights = vertex_weights
                    .iter()
                    .map(|w| match w {
                        crate::config::VertexWeight::Fixed(v) => *v,
                        crate::config::VertexWeight::Named(_) => inst.weights.sample(rng),
                    })
                    .collect();
                let active = faces
                    .iter()
                    .map(|f| {
                        let mut v: Vec<u32> = f.iter().map(|&i| i as u32).collect();
                        v.sort_unstable();
                        v
                    })
                    .collect();
                (weights, active)
            }
        };

        let v0 = weights.len();
        let mut degrees = vec![0u32; v0];
        // Edge set of the initial complex: the full simplex joins every
        // vertex pair (for d = 1 the segment itself is the edge); explicit
        // complexes contribute the downward closure of their face list.
        let mut edges = std::collections::HashSet::new();
        if matches!(&inst.cfg.initial, crate::config::InitialComplexSpec::Simplex) {
            for i in 0..v0 as u32 {
                for j in i + 1..v0 as u32 {
                    edges.insert((i, j));
                }
            }
        }
        for f in &active {
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    edges.insert((f[i], f[j]));
                }
            }
        }
        for &(a, b) in &edges {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }

        let mut state = ComplexState {
            inst: inst.clone(),
            vertex_weights: weights,
            degrees,
            initial_vertices: v0,
            initial_faces: active.len(),
            initial_edges: edges.len(),
            faces: Vec::new(),
            sampler: DynamicWeightedIndex::with_capacity(active.len()),
            handles: Vec::new(),
            steps: 0,
        };
        for verts in active {
            state.add_face(verts);
        }
        state
    }

    fn add_face(&mut self, verts: Vec<u32>) {
        let ftype = FaceType::new(
            verts
                .iter()
                .map(|&v| self.vertex_weights[v as usize])
                .collect(),
        );
        let fitness = self.inst.fitness.eval(ftype.weights());
        let h = self
            .sampler
            .insert(fitness)
            .expect("fitness is positive on valid configs");
        let idx = h.index();
        if idx == self.faces.len() {
            self.faces.push(Some(ActiveFace { verts, ftype }));
            self.handles.push(Some(h));
        } else {
            self.faces[idx] = Some(ActiveFace { verts, ftype });
            self.handles[idx] = Some(h);
        }
    }

    /// Partition total Z_n: the sum of active-face fitnesses.
    pub fn partition_total(&self) -> f64 {
        self.sampler.total()
    }

    /// From-scratch partition total, for drift audits.
    pub fn recompute_partition_total(&self) -> f64 {
        self.faces
            .iter()
            .flatten()
            .map(|f| self.inst.fitness.eval(f.ftype.weights()))
            .sum()
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn active_faces(&self) -> usize {
        self.sampler.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn initial_vertices(&self) -> usize {
        self.initial_vertices
    }

    pub fn initial_faces(&self) -> usize {
        self.initial_faces
    }

    /// Edge count maintained by construction: d new edges per step.
    pub fn edge_count(&self) -> u64 {
        self.initial_edges as u64 + self.inst.d() as u64 * self.steps
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// External label of a vertex id (initial complex gets labels <= 0).
    pub fn label(&self, id: u32) -> i64 {
        id as i64 - (self.initial_vertices as i64 - 1)
    }

    /// Runs one subdivision step.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<GrowthEvent, GrowthError> {
        if self.sampler.is_empty() {
            return Err(GrowthError::EmptyComplex);
        }
        let handle = self.sampler.sample(rng).expect("non-empty");
        let idx = handle.index();
        let chosen = self.faces[idx].as_ref().expect("live slot").clone();

        let new_weight = self.inst.weights.sample(rng);
        let new_vertex = self.vertex_weights.len() as u32;
        self.vertex_weights.push(new_weight);
        self.degrees.push(self.inst.d() as u32);
        for &v in &chosen.verts {
            self.degrees[v as usize] += 1;
        }

        // d new faces: drop one vertex of the chosen face, append the
        // newcomer (whose id is the largest so far, keeping ids sorted).
        let d = self.inst.d();
        let mut faces_added = Vec::with_capacity(d);
        for skip in 0..d {
            let mut verts = Vec::with_capacity(d);
            verts.extend(chosen.verts.iter().enumerate().filter_map(|(i, &v)| {
                if i == skip {
                    None
                } else {
                    Some(v)
                }
            }));
            verts.push(new_vertex);
            faces_added.push(verts.clone());
            self.add_face(verts);
        }

        let face_removed = self.inst.variant() == Variant::B;
        if face_removed {
            self.sampler.remove(handle).expect("live handle");
            self.faces[idx] = None;
            self.handles[idx] = None;
        }

        self.steps += 1;
        Ok(GrowthEvent {
            step: self.steps,
            chosen_verts: chosen.verts,
            chosen_type: chosen.ftype,
            new_vertex,
            new_weight,
            faces_added,
            face_removed,
        })
    }

    /// Degree profile of the current state. Fractions are per vertex; the
    /// spec-facing per-step fractions differ by the O(1) initial vertices.
    pub fn degree_profile(&self) -> DegreeProfile {
        let d = self.inst.d() as u32;
        let mut counts: HashMap<u32, u64> = HashMap::new();
        for &deg in &self.degrees {
            if deg >= d {
                *counts.entry(deg - d).or_insert(0) += 1;
            }
        }
        DegreeProfile::from_counts(
            Provenance::Growth,
            self.steps,
            self.vertex_weights.len() as u64,
            &counts,
        )
    }
}

/// What to record while growing.
#[derive(Debug, Clone, Copy, Default)]
pub struct TraceFlags {
    /// Record the partition total every `stride` steps (1 = every step).
    pub partition_stride: Option<u64>,
    /// Record chosen face types after this fraction of the run.
    pub type_burn_in: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct GrowthSummary {
    pub profile: DegreeProfile,
    /// (step, partition total) pairs.
    pub partition_trace: Vec<(u64, f64)>,
    /// Chosen face types recorded after burn-in.
    pub type_samples: Vec<FaceType>,
}

/// Runs `n_steps` subdivisions, recording per the flags. Deterministic given
/// the instance and the RNG state.
pub fn grow<R: Rng + ?Sized>(
    state: &mut ComplexState,
    n_steps: u64,
    trace: TraceFlags,
    rng: &mut R,
) -> Result<GrowthSummary, GrowthError> {
    let mut partition_trace = Vec::new();
    let mut type_samples = Vec::new();
    let burn_in_step = trace
        .type_burn_in
        .map(|frac| (frac.clamp(0.0, 1.0) * n_steps as f64) as u64);
    for i in 0..n_steps {
        let event = state.step(rng)?;
        if let Some(stride) = trace.partition_stride {
            if stride > 0 && (i + 1) % stride == 0 {
                partition_trace.push((event.step, state.partition_total()));
            }
        }
        if let Some(burn) = burn_in_step {
            if event.step > burn {
                type_samples.push(event.chosen_type);
            }
        }
    }
    Ok(GrowthSummary {
        profile: state.degree_profile(),
        partition_trace,
        type_samples,
    })
}

/// Estimate of the linear growth rate of the partition total.
#[derive(Debug, Clone, Copy)]
pub struct RateEstimate {
    /// Mean of Z_j / j over the last half of the trace.
    pub rate: f64,
    /// Least-squares slope of Z_j against j over the last half (diagnostic).
    pub slope: f64,
}

/// Estimates lim Z_n / n from a partition trace (>= 100 points).
pub fn growth_rate(trace: &[(u64, f64)]) -> Result<RateEstimate, GrowthError> {
    if trace.len() < 100 {
        return Err(GrowthError::TraceTooShort {
            got: trace.len(),
            need: 100,
        });
    }
    let tail = &trace[trace.len() / 2..];
    let rate = tail.iter().map(|&(j, z)| z / j as f64).sum::<f64>() / tail.len() as f64;
    let mean_x = tail.iter().map(|&(j, _)| j as f64).sum::<f64>() / tail.len() as f64;
    let mean_y = tail.iter().map(|&(_, z)| z).sum::<f64>() / tail.len() as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for &(j, z) in tail {
        let dx = j as f64 - mean_x;
        sxy += dx * (z - mean_y);
        sxx += dx * dx;
    }
    Ok(RateEstimate {
        rate,
        slope: sxy / sxx,
    })
}

/// Resampling distribution over recorded chosen-face types.
#[derive(Debug, Clone)]
pub struct EmpiricalTypeSampler {
    types: Vec<FaceType>,
    counts: Vec<u64>,
    cum: Vec<f64>,
}

impl EmpiricalTypeSampler {
    /// Needs at least 1000 post-burn-in samples.
    pub fn from_samples(samples: &[FaceType]) -> Result<Self, GrowthError> {
        if samples.len() < 1000 {
            return Err(GrowthError::TooFewSamples {
                got: samples.len(),
                need: 1000,
            });
        }
        let mut index: HashMap<TypeKey, usize> = HashMap::new();
        let mut types = Vec::new();
        let mut counts: Vec<u64> = Vec::new();
        for t in samples {
            let slot = *index.entry(t.key()).or_insert_with(|| {
                types.push(t.clone());
                counts.push(0);
                types.len() - 1
            });
            counts[slot] += 1;
        }
        let total: u64 = counts.iter().sum();
        let mut cum = Vec::with_capacity(counts.len());
        let mut acc = 0.0;
        for &c in &counts {
            acc += c as f64 / total as f64;
            cum.push(acc);
        }
        *cum.last_mut().unwrap() = 1.0;
        Ok(EmpiricalTypeSampler { types, counts, cum })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FaceType {
        let u = rng.gen::<f64>();
        let i = self.cum.partition_point(|&c| c <= u);
        self.types[i.min(self.types.len() - 1)].clone()
    }

    /// Empirical probability per distinct type.
    pub fn distribution(&self) -> Vec<(FaceType, f64)> {
        let total: u64 = self.counts.iter().sum();
        self.types
            .iter()
            .cloned()
            .zip(self.counts.iter().map(|&c| c as f64 / total as f64))
            .collect()
    }
}

/// Invariant audit used by tests and the verification suite: steps the
/// complex while recounting everything from scratch.
pub fn grow_audited<R: Rng + ?Sized>(
    state: &mut ComplexState,
    n_steps: u64,
    check_every: u64,
    rng: &mut R,
) -> Result<(), String> {
    let d = state.inst.d();
    let variant = state.inst.variant();
    let mut edges = std::collections::HashSet::new();
    for slot in state.faces.iter().flatten() {
        for i in 0..slot.verts.len() {
            for j in i + 1..slot.verts.len() {
                edges.insert((slot.verts[i], slot.verts[j]));
            }
        }
    }
    for step in 0..n_steps {
        let before = state.active_faces();
        let ev = state.step(rng).map_err(|e| e.to_string())?;
        for &v in &ev.chosen_verts {
            edges.insert((v.min(ev.new_vertex), v.max(ev.new_vertex)));
        }
        let growth = if variant == Variant::A { d } else { d - 1 };
        if state.active_faces() != before + growth {
            return Err(format!(
                "face count {} after step {step}, expected {}",
                state.active_faces(),
                before + growth
            ));
        }
        if ev.faces_added.len() != d {
            return Err(format!("{} faces added, expected d", ev.faces_added.len()));
        }
        if ev.face_removed != (variant == Variant::B) {
            return Err("removal flag does not match the variant".into());
        }
        if step % check_every == 0 || step + 1 == n_steps {
            let expected_faces = state.initial_faces as u64 + growth as u64 * state.steps;
            if state.active_faces() as u64 != expected_faces {
                return Err(format!(
                    "active faces {} != {} at n = {}",
                    state.active_faces(),
                    expected_faces,
                    state.steps
                ));
            }
            if edges.len() as u64 != state.edge_count() {
                return Err(format!(
                    "recounted edges {} != tracked {}",
                    edges.len(),
                    state.edge_count()
                ));
            }
            let deg_sum: u64 = state.degrees.iter().map(|&x| x as u64).sum();
            if deg_sum != 2 * state.edge_count() {
                return Err(format!(
                    "degree sum {deg_sum} != twice the edge count {}",
                    2 * state.edge_count()
                ));
            }
            let exact = state.recompute_partition_total();
            let rel = (state.partition_total() - exact).abs() / exact.max(1e-300);
            if rel > 1e-9 {
                return Err(format!("partition total drift {rel} at n = {}", state.steps));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{
        FitnessSpec, InitialComplexSpec, ModelConfig, ScalarMap, Variant, WeightLaw,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn constant_instance(d: usize, variant: Variant, f0: f64) -> Instance {
        ModelConfig {
            d,
            variant,
            fitness: FitnessSpec::Constant { f0 },
            weights: WeightLaw::Uniform01,
            initial: InitialComplexSpec::Simplex,
            seed: 0,
        }
        .validate()
        .unwrap()
        .compile()
    }

    pub(crate) fn weighted_instance(d: usize, variant: Variant) -> Instance {
        ModelConfig {
            d,
            variant,
            fitness: FitnessSpec::Product {
                g: ScalarMap::Identity,
            },
            weights: WeightLaw::FiniteSupport {
                atoms: vec![(0.5, 0.5), (1.0, 0.5)],
            },
            initial: InitialComplexSpec::Simplex,
            seed: 0,
        }
        .validate()
        .unwrap()
        .compile()
    }

    #[test]
    fn triangle_init() {
        let inst = constant_instance(2, Variant::A, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let state = ComplexState::init(&inst, &mut rng);
        assert_eq!(state.active_faces(), 3);
        assert_eq!(state.partition_total(), 3.0);
        assert_eq!(state.vertex_count(), 3);
        assert!(state.degrees().iter().all(|&d| d == 2));
        assert_eq!(state.label(0), -2);
        assert_eq!(state.label(2), 0);
    }

    #[test]
    fn tetrahedron_init() {
        let inst = constant_instance(3, Variant::B, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let state = ComplexState::init(&inst, &mut rng);
        assert_eq!(state.active_faces(), 4);
        assert!(state.degrees().iter().all(|&d| d == 3));
        assert_eq!(state.edge_count(), 6);
    }

    #[test]
    fn segment_init_d1() {
        let inst = weighted_instance(1, Variant::A);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let state = ComplexState::init(&inst, &mut rng);
        assert_eq!(state.active_faces(), 2);
        let expected: f64 = state.vertex_weights.iter().copied().sum();
        assert!((state.partition_total() - expected).abs() < 1e-15);
        assert!(state.degrees().iter().all(|&d| d == 1));
    }

    #[test]
    fn one_step_triangle_degrees() {
        let inst = constant_instance(2, Variant::A, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut state = ComplexState::init(&inst, &mut rng);
        let ev = state.step(&mut rng).unwrap();
        assert_eq!(ev.faces_added.len(), 2);
        assert!(!ev.face_removed);
        assert_eq!(state.active_faces(), 5);
        // Newcomer at degree 2; the two chosen vertices at 3; the third stays at 2.
        let profile = state.degree_profile();
        let n0 = profile.entries.iter().find(|e| e.k == 0).unwrap();
        let n1 = profile.entries.iter().find(|e| e.k == 1).unwrap();
        assert_eq!(n0.count, 2.0);
        assert_eq!(n1.count, 2.0);
    }

    #[test]
    fn one_step_model_b_counts() {
        let inst = constant_instance(3, Variant::B, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut state = ComplexState::init(&inst, &mut rng);
        let ev = state.step(&mut rng).unwrap();
        assert!(ev.face_removed);
        assert_eq!(state.active_faces(), 6);
        assert_eq!(ev.faces_added.len(), 3);
        // Each added face = (chosen face minus one vertex) + newcomer.
        for f in &ev.faces_added {
            assert_eq!(f.len(), 3);
            assert!(f.contains(&ev.new_vertex));
            let old: Vec<u32> = f.iter().copied().filter(|&v| v != ev.new_vertex).collect();
            assert!(old.iter().all(|v| ev.chosen_verts.contains(v)));
        }
    }

    #[test]
    fn zero_steps_profile_is_initial() {
        let inst = constant_instance(2, Variant::A, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut state = ComplexState::init(&inst, &mut rng);
        let summary = grow(&mut state, 0, TraceFlags::default(), &mut rng).unwrap();
        assert_eq!(summary.profile.steps, 0);
        let total: f64 = summary.profile.entries.iter().map(|e| e.count).sum();
        assert_eq!(total, 3.0);
    }

    #[test]
    fn audited_invariants_model_a() {
        let inst = weighted_instance(2, Variant::A);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut state = ComplexState::init(&inst, &mut rng);
        grow_audited(&mut state, 10_000, 1_000, &mut rng).unwrap();
    }

    #[test]
    fn audited_invariants_model_b() {
        let inst = constant_instance(3, Variant::B, 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut state = ComplexState::init(&inst, &mut rng);
        grow_audited(&mut state, 10_000, 1_000, &mut rng).unwrap();
    }

    #[test]
    fn audited_invariants_weighted_b_and_energy() {
        let inst = weighted_instance(3, Variant::B);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut state = ComplexState::init(&inst, &mut rng);
        grow_audited(&mut state, 10_000, 2_500, &mut rng).unwrap();

        let cfg = ModelConfig {
            d: 2,
            variant: Variant::A,
            fitness: FitnessSpec::EnergyExp { beta: 0.3 },
            weights: WeightLaw::Uniform01,
            initial: InitialComplexSpec::Simplex,
            seed: 0,
        };
        let inst = cfg.validate().unwrap().compile();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut state = ComplexState::init(&inst, &mut rng);
        grow_audited(&mut state, 10_000, 2_500, &mut rng).unwrap();
    }

    #[test]
    fn determinism_same_seed_same_events() {
        let inst = weighted_instance(2, Variant::B);
        let run = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut state = ComplexState::init(&inst, &mut rng);
            let mut log = Vec::new();
            for _ in 0..500 {
                let ev = state.step(&mut rng).unwrap();
                log.push((ev.chosen_verts.clone(), ev.new_weight.to_bits()));
            }
            log
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }

    #[test]
    fn rate_estimate_exact_for_constant_model_a() {
        // Z_n = Z_0 + d * f0 * n exactly, so Z_n / n -> d f0 = 2.
        let inst = constant_instance(2, Variant::A, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut state = ComplexState::init(&inst, &mut rng);
        let summary = grow(
            &mut state,
            20_000,
            TraceFlags {
                partition_stride: Some(10),
                type_burn_in: None,
            },
            &mut rng,
        )
        .unwrap();
        let est = growth_rate(&summary.partition_trace).unwrap();
        assert!((est.rate - 2.0).abs() < 1e-3, "rate {}", est.rate);
        assert!((est.slope - 2.0).abs() < 1e-6, "slope {}", est.slope);
    }

    #[test]
    fn rate_estimate_model_b_constant() {
        let inst = constant_instance(3, Variant::B, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut state = ComplexState::init(&inst, &mut rng);
        let summary = grow(
            &mut state,
            20_000,
            TraceFlags {
                partition_stride: Some(10),
                type_burn_in: None,
            },
            &mut rng,
        )
        .unwrap();
        let est = growth_rate(&summary.partition_trace).unwrap();
        assert!((est.rate - 2.0).abs() < 1e-3, "rate {}", est.rate);
    }

    #[test]
    fn trace_too_short_rejected() {
        let trace: Vec<(u64, f64)> = (1..50).map(|j| (j, j as f64)).collect();
        assert!(matches!(
            growth_rate(&trace),
            Err(GrowthError::TraceTooShort { .. })
        ));
    }

    #[test]
    fn empirical_sampler_single_type() {
        let samples = vec![FaceType::new(vec![0.5, 0.5]); 1500];
        let s = EmpiricalTypeSampler::from_samples(&samples).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..50 {
            assert_eq!(s.sample(&mut rng).weights(), &[0.5, 0.5]);
        }
        assert!(EmpiricalTypeSampler::from_samples(&samples[..999]).is_err());
    }
}
