//! Growth simulation and degree-distribution analysis for fitness-driven
//! random simplicial complexes.
//!
//! A d-dimensional complex grows by repeatedly picking an active (d-1)-face
//! with probability proportional to a fitness of its vertex weights and
//! gluing a new vertex onto it; variant B retires the chosen face, variant A
//! keeps it. The crate verifies the limiting degree distribution along three
//! independent routes:
//!
//! * direct growth simulation ([`growth`]),
//! * Monte Carlo over the single-vertex star chain ([`star`]),
//! * exact finite-colour urn analysis and closed forms ([`urn`],
//!   [`closed_form`]).

// `!(x > 0.0)` is the NaN-rejecting form of the positivity guards.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod closed_form;
pub mod config;
pub mod face;
pub mod growth;
pub mod hypotheses;
pub mod io;
pub mod profile;
pub mod sampler;
pub mod seed;
pub mod star;
pub mod urn;
pub mod verify;

pub use config::{FitnessSpec, Instance, ModelConfig, Variant, WeightLaw};
pub use face::FaceType;
pub use profile::DegreeProfile;
