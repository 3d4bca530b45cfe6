use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::exponent::{check_exponent, ell_norm, recip};

/// One block `Z_k` with `β_k = 2^{-kη}(Σ_{Z_k} |λ|^{q0})^{1/q0}` and
/// `γ_k = 2^{k(1-η)}(Σ_{Z_k} |λ|^{q1})^{1/q1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockStats {
    pub k: i32,
    pub size: usize,
    pub beta: f64,
    pub gamma: f64,
}

/// Blocks `Z_k` of a partition of the index set of `λ`, with `η` from
/// `1/r0 = (1-η)/q0 + η/q1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionResult {
    pub blocks: BTreeMap<i32, Vec<usize>>,
    pub eta: f64,
    pub stats: Vec<BlockStats>,
    #[serde(with = "crate::exponent::serde_inf")]
    pub r0: f64,
}

impl PartitionResult {
    /// `‖(β_k)‖_{ℓ^{r0}} + ‖(γ_k)‖_{ℓ^{r0}}`.
    pub fn lhs(&self) -> f64 {
        ell_norm(self.stats.iter().map(|s| s.beta), self.r0)
            + ell_norm(self.stats.iter().map(|s| s.gamma), self.r0)
    }

    /// True when the blocks are pairwise disjoint and cover `0..len`.
    pub fn is_partition_of(&self, len: usize) -> bool {
        let mut seen = vec![false; len];
        for z in self.blocks.values() {
            for &i in z {
                if i >= len || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Partitions the indices of `λ` by decreasing `|λ|`: the entry of rank
/// `m >= 1` goes to `Z_k` with `2^{k/d} <= m < 2^{(k+1)/d}`,
/// `d = 1/q0 - 1/q1`.
///
/// The thresholds make `|Z_k|^{1/q0 - 1/q1}` comparable to `2^k`, which is
/// the balance between the `ℓ^{q0}` and `ℓ^{q1}` block norms; for
/// `(q0, q1) = (1, ∞)` they are the dyadic ranks `2^k`.
pub fn ell_partition(lambda: &[f64], q0: f64, q1: f64, r0: f64) -> Result<PartitionResult> {
    let d = check_partition_exponents(q0, q1, r0)?;
    if let Some(x) = lambda.iter().find(|x| !x.is_finite()) {
        return Err(invalid(format!("sequence entries must be finite, got {x}")));
    }
    let eta = (recip(q0) - recip(r0)) / d;
    let mut order: Vec<usize> = (0..lambda.len()).collect();
    order.sort_by(|&a, &b| lambda[b].abs().total_cmp(&lambda[a].abs()));
    let threshold = |k: i32| (k as f64 / d).exp2();
    let mut blocks: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (rank0, &i) in order.iter().enumerate() {
        let m = (rank0 + 1) as f64;
        let mut k = (d * m.log2()).floor() as i32;
        while threshold(k + 1) <= m {
            k += 1;
        }
        while threshold(k) > m {
            k -= 1;
        }
        blocks.entry(k).or_default().push(i);
    }
    let stats = blocks
        .iter()
        .map(|(&k, z)| {
            let vals = z.iter().map(|&i| lambda[i].abs());
            BlockStats {
                k,
                size: z.len(),
                beta: (-(k as f64) * eta).exp2() * ell_norm(vals.clone(), q0),
                gamma: ((k as f64) * (1.0 - eta)).exp2() * ell_norm(vals, q1),
            }
        })
        .collect();
    Ok(PartitionResult {
        blocks,
        eta,
        stats,
        r0,
    })
}

/// Published constant `C` with `lhs <= C ‖λ‖_{ℓ^{r0}}`:
/// `C = (2^{1/(d q0)} + 2^{1/(d q1)}) · (1 + 2/(1 - 2^{-1/d}))^{1/r0}`.
///
/// Each block has at most `2^{(k+1)/d}` entries, all bounded by the
/// rank-`2^{k/d}` entry `λ*_k`, so `β_k` and `γ_k` are at most
/// `2^{1/(d q_i)} 2^{k/(d r0)} λ*_k`; the factor in parentheses bounds
/// `Σ_k 2^{k/d} (λ*_k)^{r0}` by `‖λ‖_{ℓ^{r0}}^{r0}` (each rank interval
/// of length `2^{k/d}(1 - 2^{-1/d})` below `λ*_k`, plus the rounding of
/// the first index of a block).
pub fn partition_constant(q0: f64, q1: f64, r0: f64) -> Result<f64> {
    let d = check_partition_exponents(q0, q1, r0)?;
    let a = (recip(q0) / d).exp2() + (recip(q1) / d).exp2();
    let b = 1.0 + 2.0 / (1.0 - (-1.0 / d).exp2());
    Ok(a * b.powf(1.0 / r0))
}

fn check_partition_exponents(q0: f64, q1: f64, r0: f64) -> Result<f64> {
    check_exponent("q0", q0)?;
    check_exponent("q1", q1)?;
    check_exponent("r0", r0)?;
    if !(q0 < r0 && r0 < q1) {
        return Err(invalid(format!(
            "partition needs q0 < r0 < q1, got q0={q0}, r0={r0}, q1={q1}"
        )));
    }
    Ok(recip(q0) - recip(q1))
}
