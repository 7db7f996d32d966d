//! Approximating entropy vectors by normalized log-indices of partition
//! stabilizers on a dilated, uniform sample space.
//!
//! A rational space is dilated by splitting point `i` into `M·p_i` points
//! (`M` the lcm of the denominators) and then amplified by a factor `K`.
//! On the resulting uniform space of `n` points, the stabilizer of a partition
//! with block sizes `b_j` has order `∏ b_j!`, so its normalized log-index is
//! `(ln n! - Σ ln b_j!) / n`. That value is computed from block sizes alone;
//! the symmetric group is never built.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{semilattice_partitions, semilattice_vectors, SemilatticeVectors};
use crate::partitions::{InfoElement, Partition, ProbabilitySpace};

/// Largest dilated sample space the module will materialize.
pub const MAX_DILATED_SIZE: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationPlan {
    /// Least common multiple of the probability denominators.
    pub lcm: u64,
    /// Number of uniform points each original point splits into (before amplification).
    pub multiplicities: Vec<usize>,
    pub base_size: usize,
    pub amplification: usize,
    pub dilated_size: usize,
}

impl DilationPlan {
    pub fn new(space: &ProbabilitySpace, amplification: usize) -> Result<Self> {
        if amplification == 0 {
            return Err(Error::Invalid(
                "amplification factor must be at least 1".into(),
            ));
        }
        let lcm = space
            .probs()
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let too_big = || Error::Capacity {
            what: "dilated sample point",
            cap: MAX_DILATED_SIZE,
        };
        let multiplicities = space
            .probs()
            .iter()
            .map(|p| {
                (p.numer() * (&lcm / p.denom()))
                    .to_usize()
                    .ok_or_else(too_big)
            })
            .collect::<Result<Vec<_>>>()?;
        let base_size: usize = multiplicities.iter().sum();
        let dilated_size = base_size
            .checked_mul(amplification)
            .filter(|&n| n <= MAX_DILATED_SIZE)
            .ok_or_else(too_big)?;
        Ok(DilationPlan {
            lcm: lcm.to_u64().ok_or_else(too_big)?,
            multiplicities,
            base_size,
            amplification,
            dilated_size,
        })
    }

    /// Expands a partition of the original space onto the dilated points.
    ///
    /// Original point `i` occupies `K·m_i` consecutive dilated indices.
    pub fn apply(&self, p: &Partition) -> Result<Partition> {
        if p.ground_size() != self.multiplicities.len() {
            return Err(Error::GroundSizeMismatch {
                left: p.ground_size(),
                right: self.multiplicities.len(),
            });
        }
        let mut labels = Vec::with_capacity(self.dilated_size);
        for (&l, &m) in p.labels().iter().zip(&self.multiplicities) {
            labels.extend(std::iter::repeat_n(l, m * self.amplification));
        }
        Ok(Partition::from_labels(&labels))
    }
}

/// Dilates `space` and every partition in `partitions` with amplification `k`.
pub fn dilate(
    space: &ProbabilitySpace,
    partitions: &[Partition],
    k: usize,
) -> Result<(DilationPlan, Vec<Partition>)> {
    let plan = DilationPlan::new(space, k)?;
    let dilated = partitions
        .iter()
        .map(|p| plan.apply(p))
        .collect::<Result<Vec<_>>>()?;
    Ok((plan, dilated))
}

/// `ln(n!)` as a plain sum of `ln k`.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `(ln n! - Σ_blocks ln |block|!) / n` for a partition of a uniform space.
pub fn log_index_of_partition(p: &Partition) -> f64 {
    let n = p.ground_size();
    let blocks: f64 = p.block_sizes().into_iter().map(ln_factorial).sum();
    ((ln_factorial(n) - blocks) / n as f64).max(0.0)
}

/// Certified bound `(J + 1)(ln n + 1) / n` on `|entropy - log_index|`.
///
/// Follows from `1 ≤ ln m! - (m ln m - m) ≤ ln m + 1` for every `m ≥ 1`.
pub fn stirling_error_bound(p: &Partition) -> f64 {
    let n = p.ground_size() as f64;
    (p.num_blocks() as f64 + 1.0) * (n.ln() + 1.0) / n
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub plan: DilationPlan,
    pub entropy_vector: SemilatticeVectors,
    pub logindex_vector: SemilatticeVectors,
    pub errors: Vec<f64>,
    pub bounds: Vec<f64>,
    pub max_norm: f64,
    pub l1_norm: f64,
    /// Largest per-entry bound; every entry of `errors` is below its own bound.
    pub stirling_bound: f64,
}

/// Compares the entropy vector of `generators` with the log-index vector of
/// their stabilizers on the space dilated with amplification `k`.
pub fn approximate(generators: &[InfoElement], k: usize) -> Result<ApproximationReport> {
    let entropy_vector = semilattice_vectors(generators)?;
    let space = generators[0].space();
    let parts: Vec<Partition> = generators.iter().map(|g| g.partition().clone()).collect();
    let (plan, dilated) = dilate(space, &parts, k)?;
    let derived = semilattice_partitions(&dilated)?;

    let entries: Vec<f64> = derived.par_iter().map(log_index_of_partition).collect();
    let bounds: Vec<f64> = derived.iter().map(stirling_error_bound).collect();
    let errors: Vec<f64> = entropy_vector
        .entries
        .iter()
        .zip(&entries)
        .map(|(h, l)| (h - l).abs())
        .collect();
    let max_norm = errors.iter().cloned().fold(0.0, f64::max);
    let l1_norm = errors.iter().sum();
    let stirling_bound = bounds.iter().cloned().fold(0.0, f64::max);
    Ok(ApproximationReport {
        plan,
        logindex_vector: SemilatticeVectors {
            slots: entropy_vector.slots.clone(),
            entries,
        },
        entropy_vector,
        errors,
        bounds,
        max_norm,
        l1_norm,
        stirling_bound,
    })
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub amplification: usize,
    pub dilated_size: usize,
    pub max_error: f64,
    pub l1_error: f64,
    pub bound: f64,
}

pub fn convergence_scan(generators: &[InfoElement], ks: &[usize]) -> Result<Vec<ScanRow>> {
    if ks.is_empty() {
        return Err(Error::Invalid("no amplification factors".into()));
    }
    if ks.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid(
            "amplification factors must be ascending".into(),
        ));
    }
    ks.par_iter()
        .map(|&k| {
            let r = approximate(generators, k)?;
            Ok(ScanRow {
                amplification: k,
                dilated_size: r.plan.dilated_size,
                max_error: r.max_norm,
                l1_error: r.l1_norm,
                bound: r.stirling_bound,
            })
        })
        .collect()
}
