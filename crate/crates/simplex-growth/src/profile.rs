//! Degree profiles and cross-route statistics: aggregation over replicas,
//! log-log tail fitting, and profile comparison.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("need at least {need} positive points in the fit range, found {got}")]
    InsufficientSupport { got: usize, need: usize },
    #[error("profiles have no overlapping degree range")]
    NoOverlap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Growth,
    StarMc,
    ClosedForm,
    Imported,
}

/// One row of a degree profile: vertices of degree d + k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub k: u32,
    /// Total count across replicas (integral for growth provenance; 0 for
    /// analytic and Monte Carlo profiles).
    pub count: f64,
    pub fraction: f64,
    /// Standard error across replicas (0 for single runs and closed forms).
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub provenance: Provenance,
    pub steps: u64,
    pub replicas: u32,
    pub entries: Vec<ProfileEntry>,
}

impl DegreeProfile {
    /// Single-run profile from excess-degree counts; fractions are counts
    /// over the total vertex count.
    pub fn from_counts(
        provenance: Provenance,
        steps: u64,
        total_vertices: u64,
        counts: &HashMap<u32, u64>,
    ) -> DegreeProfile {
        let mut ks: Vec<u32> = counts.keys().copied().collect();
        ks.sort_unstable();
        let entries = ks
            .into_iter()
            .map(|k| {
                let c = counts[&k];
                ProfileEntry {
                    k,
                    count: c as f64,
                    fraction: c as f64 / total_vertices as f64,
                    stderr: 0.0,
                }
            })
            .collect();
        DegreeProfile {
            provenance,
            steps,
            replicas: 1,
            entries,
        }
    }

    /// Aggregates replicate count maps: mean fraction and its standard error.
    pub fn from_replicas(
        provenance: Provenance,
        steps: u64,
        runs: &[(u64, HashMap<u32, u64>)],
    ) -> DegreeProfile {
        let r = runs.len();
        assert!(r >= 1);
        let mut ks: Vec<u32> = runs
            .iter()
            .flat_map(|(_, m)| m.keys().copied())
            .collect();
        ks.sort_unstable();
        ks.dedup();
        let entries = ks
            .into_iter()
            .map(|k| {
                let fracs: Vec<f64> = runs
                    .iter()
                    .map(|(total, m)| m.get(&k).copied().unwrap_or(0) as f64 / *total as f64)
                    .collect();
                let count: f64 = runs
                    .iter()
                    .map(|(_, m)| m.get(&k).copied().unwrap_or(0) as f64)
                    .sum();
                let mean = fracs.iter().sum::<f64>() / r as f64;
                let stderr = if r > 1 {
                    let var = fracs.iter().map(|f| (f - mean).powi(2)).sum::<f64>()
                        / (r as f64 - 1.0);
                    (var / r as f64).sqrt()
                } else {
                    0.0
                };
                ProfileEntry {
                    k,
                    count,
                    fraction: mean,
                    stderr,
                }
            })
            .collect();
        DegreeProfile {
            provenance,
            steps,
            replicas: r as u32,
            entries,
        }
    }

    /// Analytic profile from a fraction-valued function.
    pub fn from_fractions(provenance: Provenance, fractions: &[(u32, f64)]) -> DegreeProfile {
        DegreeProfile {
            provenance,
            steps: 0,
            replicas: 0,
            entries: fractions
                .iter()
                .map(|&(k, p)| ProfileEntry {
                    k,
                    count: 0.0,
                    fraction: p,
                    stderr: 0.0,
                })
                .collect(),
        }
    }

    pub fn fraction(&self, k: u32) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.k == k)
            .map(|e| e.fraction)
    }

    /// Sum of k * fraction over the profile (mean excess degree).
    pub fn mean_excess(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.k as f64 * e.fraction)
            .sum()
    }

    pub fn total_fraction(&self) -> f64 {
        self.entries.iter().map(|e| e.fraction).sum()
    }
}

/// Result of fitting log fraction against log k (and, as a diagnostic,
/// against k itself to spot exponential rather than power decay).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// r^2 of the log-linear (exponential-decay) fit over the same points.
    pub r_squared_exponential: f64,
    /// False when the exponential fit explains the data better.
    pub power_law_preferred: bool,
    pub points: usize,
}

/// Least-squares slope of log p_k vs log k over k in [k_lo, k_hi].
pub fn fit_tail_slope(
    profile: &DegreeProfile,
    k_lo: u32,
    k_hi: u32,
) -> Result<TailFit, AnalysisError> {
    let pts: Vec<(f64, f64, f64)> = profile
        .entries
        .iter()
        .filter(|e| e.k >= k_lo.max(1) && e.k <= k_hi && e.fraction > 0.0)
        .map(|e| ((e.k as f64).ln(), e.fraction.ln(), e.k as f64))
        .collect();
    if pts.len() < 5 {
        return Err(AnalysisError::InsufficientSupport {
            got: pts.len(),
            need: 5,
        });
    }
    let (slope, intercept, r2) = least_squares(pts.iter().map(|p| (p.0, p.1)));
    let (_, _, r2_exp) = least_squares(pts.iter().map(|p| (p.2, p.1)));
    Ok(TailFit {
        slope,
        intercept,
        r_squared: r2,
        r_squared_exponential: r2_exp,
        power_law_preferred: r2 >= r2_exp,
        points: pts.len(),
    })
}

fn least_squares(points: impl Iterator<Item = (f64, f64)> + Clone) -> (f64, f64, f64) {
    let n = points.clone().count() as f64;
    let mean_x = points.clone().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.clone().map(|p| p.1).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in points {
        sxy += (x - mean_x) * (y - mean_y);
        sxx += (x - mean_x) * (x - mean_x);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, mean_y - slope * mean_x, r2)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileComparison {
    pub k_max: u32,
    pub max_abs_diff: f64,
    pub argmax_k: u32,
    /// (k, |fa - fb|, z-score) per overlapping degree offset.
    pub per_k: Vec<(u32, f64, f64)>,
}

impl ProfileComparison {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_abs_diff < tolerance
    }
}

/// Compares two profiles over k <= k_max. Missing entries on one side are
/// treated as fraction 0 inside the shared range.
pub fn compare_profiles(
    a: &DegreeProfile,
    b: &DegreeProfile,
    k_max: u32,
) -> Result<ProfileComparison, AnalysisError> {
    let hi_a = a.entries.iter().map(|e| e.k).max();
    let hi_b = b.entries.iter().map(|e| e.k).max();
    let (hi_a, hi_b) = match (hi_a, hi_b) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(AnalysisError::NoOverlap),
    };
    let hi = k_max.min(hi_a).min(hi_b);
    let lo_a = a.entries.iter().map(|e| e.k).min().unwrap();
    let lo_b = b.entries.iter().map(|e| e.k).min().unwrap();
    let lo = lo_a.max(lo_b);
    if lo > hi {
        return Err(AnalysisError::NoOverlap);
    }
    let find = |p: &DegreeProfile, k: u32| -> (f64, f64) {
        p.entries
            .iter()
            .find(|e| e.k == k)
            .map(|e| (e.fraction, e.stderr))
            .unwrap_or((0.0, 0.0))
    };
    let mut per_k = Vec::new();
    let mut max_abs_diff = 0.0;
    let mut argmax_k = lo;
    for k in lo..=hi {
        let (fa, sa) = find(a, k);
        let (fb, sb) = find(b, k);
        let diff = (fa - fb).abs();
        let denom = (sa * sa + sb * sb).sqrt();
        let z = if denom > 0.0 {
            diff / denom
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if diff > max_abs_diff {
            max_abs_diff = diff;
            argmax_k = k;
        }
        per_k.push((k, diff, z));
    }
    Ok(ProfileComparison {
        k_max: hi,
        max_abs_diff,
        argmax_k,
        per_k,
    })
}
