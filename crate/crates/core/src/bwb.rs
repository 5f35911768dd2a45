//! Borel–Weil–Bott on a Grassmannian: the cohomology of the irreducible
//! homogeneous bundle Σ_λQ̃ ⊗ Σ_μŨ, with Q-side entries first.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{weyl_dim, DominantWeight};

/// Rank of the quotient bundle Q̃ on Gr(6,10).
pub const Q_RANK: usize = 4;
/// Rank of the tautological subbundle Ũ on Gr(6,10).
pub const U_RANK: usize = 6;
/// dim Gr(6,10).
pub const GR_DIM: usize = Q_RANK * U_RANK;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BwbResult {
    Acyclic,
    Cohomology {
        degree: usize,
        weight: DominantWeight,
        #[serde(serialize_with = "crate::serde_util::biguint_as_number")]
        dim: BigUint,
    },
}

impl BwbResult {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, BwbResult::Acyclic)
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            BwbResult::Acyclic => None,
            BwbResult::Cohomology { degree, .. } => Some(*degree),
        }
    }
}

/// Cohomology of Σ_λQ̃ ⊗ Σ_μŨ on Gr(len μ, len λ + len μ). A twist by O(−d)
/// is expressed by raising μ by d.
pub fn bott(lambda: &DominantWeight, mu: &DominantWeight) -> BwbResult {
    let n = lambda.len() + mu.len();
    let w: Vec<i64> = lambda
        .entries()
        .iter()
        .chain(mu.entries())
        .enumerate()
        .map(|(i, &x)| x + (n - 1 - i) as i64)
        .collect();
    let mut sorted = w.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return BwbResult::Acyclic;
    }
    let mut degree = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if w[i] < w[j] {
                degree += 1;
            }
        }
    }
    let weight = DominantWeight::new(
        sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (n - 1 - i) as i64)
            .collect(),
    )
    .expect("sorted strictly decreasing minus ρ is dominant");
    let dim = weyl_dim(&weight);
    BwbResult::Cohomology { degree, weight, dim }
}

/// [`bott`] on Gr(6,10) with length checks.
pub fn bott_gr610(lambda: &DominantWeight, mu: &DominantWeight) -> Result<BwbResult> {
    if lambda.len() != Q_RANK {
        return Err(Error::WrongLength {
            expected: Q_RANK,
            got: lambda.len(),
        });
    }
    if mu.len() != U_RANK {
        return Err(Error::WrongLength {
            expected: U_RANK,
            got: mu.len(),
        });
    }
    Ok(bott(lambda, mu))
}
