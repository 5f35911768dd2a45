//! Irreducible decomposition of ∧^p(∧³C⁶) for p = 0..=20, i.e. the GL(6)
//! factors of the terms of the Koszul resolution of the fourfold.
//!
//! Dominant weight multiplicities come from enumerating all subsets of the
//! twenty weights of ∧³C⁶; the decomposition then peels off irreducible
//! characters, largest weight first, using Kostka numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::DominantWeight;
use crate::schur::{Decomposition, KostkaTable};

/// Rank of ∧³C⁶, the length of the Koszul complex.
pub const WEDGE3_RANK: usize = 20;
const GL6: usize = 6;

/// The 20 weights of ∧³C⁶: indicator vectors of 3-subsets of {1..6}, in
/// lexicographic order of the subsets.
pub fn wedge3_weights() -> Vec<[i64; GL6]> {
    let mut out = Vec::with_capacity(WEDGE3_RANK);
    for a in 0..GL6 {
        for b in (a + 1)..GL6 {
            for c in (b + 1)..GL6 {
                let mut v = [0; GL6];
                v[a] = 1;
                v[b] = 1;
                v[c] = 1;
                out.push(v);
            }
        }
    }
    out
}

/// Multiplicities of the dominant weights of ∧^p(∧³C⁶). Other weights are
/// Weyl-group images of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiplicityMap {
    pub p: usize,
    pub entries: BTreeMap<DominantWeight, u64>,
}

impl WeightMultiplicityMap {
    /// Σ over all weights (not just dominant ones), recovered by counting
    /// distinct permutations of each dominant representative.
    pub fn total_mass(&self) -> u64 {
        self.entries
            .iter()
            .map(|(w, &m)| m * orbit_size(w.entries()))
            .sum()
    }
}

fn orbit_size(entries: &[i64]) -> u64 {
    let mut counts: HashMap<i64, u64> = HashMap::new();
    for &e in entries {
        *counts.entry(e).or_insert(0) += 1;
    }
    let fact = |n: u64| (1..=n).product::<u64>();
    counts.values().fold(fact(entries.len() as u64), |acc, &c| acc / fact(c))
}

const LOW_BITS: usize = 12;

/// Dominant weight multiplicities for every p at once: each of the 2^20
/// subsets contributes its weight sum to the column of its size.
fn all_dominant_weight_maps() -> &'static [WeightMultiplicityMap] {
    static MAPS: OnceLock<Vec<WeightMultiplicityMap>> = OnceLock::new();
    MAPS.get_or_init(|| {
        let weights = wedge3_weights();
        // weight sums of all subsets of the low block
        let low_len = 1usize << LOW_BITS;
        let mut low = vec![[0u8; GL6]; low_len];
        for mask in 1..low_len {
            let bit = mask.trailing_zeros() as usize;
            let mut v = low[mask & (mask - 1)];
            for (x, y) in v.iter_mut().zip(&weights[bit]) {
                *x += *y as u8;
            }
            low[mask] = v;
        }
        let high_len = 1usize << (WEDGE3_RANK - LOW_BITS);

        let merged = (0..high_len)
            .into_par_iter()
            .fold(
                || vec![HashMap::<[u8; GL6], u64>::new(); WEDGE3_RANK + 1],
                |mut acc, high| {
                    let mut base = [0u8; GL6];
                    for bit in 0..(WEDGE3_RANK - LOW_BITS) {
                        if high >> bit & 1 == 1 {
                            for (x, y) in base.iter_mut().zip(&weights[LOW_BITS + bit]) {
                                *x += *y as u8;
                            }
                        }
                    }
                    let high_count = high.count_ones() as usize;
                    for (mask, lw) in low.iter().enumerate() {
                        let mut v = base;
                        for (x, y) in v.iter_mut().zip(lw) {
                            *x += *y;
                        }
                        if v.windows(2).all(|p| p[0] >= p[1]) {
                            let p = high_count + mask.count_ones() as usize;
                            *acc[p].entry(v).or_insert(0) += 1;
                        }
                    }
                    acc
                },
            )
            .reduce(
                || vec![HashMap::new(); WEDGE3_RANK + 1],
                |mut a, b| {
                    for (ma, mb) in a.iter_mut().zip(b) {
                        for (k, v) in mb {
                            *ma.entry(k).or_insert(0) += v;
                        }
                    }
                    a
                },
            );

        merged
            .into_iter()
            .enumerate()
            .map(|(p, m)| WeightMultiplicityMap {
                p,
                entries: m
                    .into_iter()
                    .map(|(k, v)| {
                        let w = DominantWeight::new(k.iter().map(|&x| x as i64).collect())
                            .expect("filtered to dominant");
                        (w, v)
                    })
                    .collect(),
            })
            .collect()
    })
}

pub fn dominant_weight_multiplicities(p: usize) -> Result<&'static WeightMultiplicityMap> {
    all_dominant_weight_maps().get(p).ok_or(Error::WedgeIndex(p))
}

/// Greedy character subtraction: repeatedly take the lexicographically
/// largest dominant weight with nonzero residual multiplicity.
pub fn decompose_from_weights(
    weights: &WeightMultiplicityMap,
    kostka: &mut KostkaTable,
) -> Decomposition {
    let mut residual: BTreeMap<DominantWeight, u64> = weights.entries.clone();
    let mut out = Decomposition::new();
    while let Some((top, &c)) = residual.iter().next_back() {
        let top = top.clone();
        out.add(top.clone(), c);
        for (mu, r) in residual.iter_mut() {
            if top.dominates(mu) {
                let k = kostka.get(top.entries(), mu.entries());
                *r = r
                    .checked_sub(c * k)
                    .expect("residual multiplicity went negative: weight data inconsistent");
            }
        }
        residual.retain(|_, r| *r > 0);
    }
    out
}

pub fn decompose_wedge_power(p: usize) -> Result<Decomposition> {
    if p > WEDGE3_RANK {
        return Err(Error::WedgeIndex(p));
    }
    Ok(koszul_factor_table().columns[p].clone())
}

/// Columns p = 0..=20 of GL(6) factors of ∧^p(∧³C⁶).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulFactorTable {
    pub columns: Vec<Decomposition>,
}

impl KoszulFactorTable {
    /// Column 10 + k obtained from column 10 − k by raising every weight by k.
    pub fn mirrored_column(&self, k: usize) -> Decomposition {
        assert!(k <= 10);
        self.columns[10 - k].shift(k as i64)
    }

    pub fn column_dimension(&self, p: usize) -> BigUint {
        self.columns[p].dimension()
    }

    /// Columns 0..=max_p as a markdown grid, one factor per cell, with
    /// multiplicities shown only when they exceed 1.
    pub fn markdown(&self, max_p: usize) -> String {
        let cols = &self.columns[..=max_p];
        let height = cols.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut s = String::new();
        let header: Vec<String> = (0..=max_p).map(|p| format!("p={p}")).collect();
        let _ = writeln!(s, "| {} |", header.join(" | "));
        let _ = writeln!(s, "|{}", "---|".repeat(max_p + 1));
        let cells: Vec<Vec<String>> = cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(w, m)| {
                        if m == 1 {
                            format!("({w})")
                        } else {
                            format!("{m}×({w})")
                        }
                    })
                    .collect()
            })
            .collect();
        for row in 0..height {
            let line: Vec<&str> = cells
                .iter()
                .map(|c| c.get(row).map(String::as_str).unwrap_or("-"))
                .collect();
            let _ = writeln!(s, "| {} |", line.join(" | "));
        }
        s
    }
}

pub fn koszul_factor_table() -> &'static KoszulFactorTable {
    static TABLE: OnceLock<KoszulFactorTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let maps = all_dominant_weight_maps();
        let columns = maps
            .par_iter()
            .map(|m| decompose_from_weights(m, &mut KostkaTable::new()))
            .collect();
        KoszulFactorTable { columns }
    })
}

/// C(n, k).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
