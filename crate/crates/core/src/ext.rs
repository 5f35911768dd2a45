//! Ext*(Σ_λQ, Σ_λQ): decompose End(Σ_λQ), chase every summand through the
//! Koszul engine and add up the results with multiplicity.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::koszul::{cohomology, dual_bundle, normalize_bundle, ChaseResult, DegreeValue, RankOverride, MAX_DEGREE};
use crate::partitions::{canonicalize, CanonicalQPartition, DominantWeight};
use crate::ring::chi_endo;
use crate::schur::{end_decomposition, EndSummand};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    pub summand: EndSummand,
    /// The complex actually chased: Σ_{q_weight}Q ⊗ O(−d) with λ₄ = 0.
    pub q_weight: DominantWeight,
    pub d: i64,
    /// True when the direct chase was indeterminate and the result was read
    /// off the dual bundle instead.
    pub via_serre_dual: bool,
    pub result: ChaseResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub lambda: CanonicalQPartition,
    pub ext: Vec<DegreeValue>,
    pub summands: Vec<SummandReport>,
    /// χ(Σ_λQ, Σ_λQ) from Hirzebruch–Riemann–Roch.
    #[serde(serialize_with = "bigint_as_number")]
    pub chi_check: BigInt,
}

fn bigint_as_number<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match v.to_i128() {
        Some(x) => s.serialize_i128(x),
        None => s.serialize_str(&v.to_string()),
    }
}

impl ExtReport {
    pub fn is_exact(&self) -> bool {
        self.ext.iter().all(DegreeValue::is_exact)
    }

    pub fn exact_values(&self) -> Option<Vec<BigUint>> {
        self.ext.iter().map(|d| d.exact().cloned()).collect()
    }

    /// Σ (−1)^n ext^n when every degree is exact.
    pub fn alternating_sum(&self) -> Option<BigInt> {
        let v = self.exact_values()?;
        Some(
            v.into_iter()
                .enumerate()
                .map(|(n, x)| {
                    let x = BigInt::from(x);
                    if n % 2 == 0 {
                        x
                    } else {
                        -x
                    }
                })
                .sum(),
        )
    }

    /// Summands whose chase left unresolved differentials.
    pub fn indeterminate_summands(&self) -> Vec<&SummandReport> {
        self.summands
            .iter()
            .filter(|s| !s.result.conflicts.is_empty())
            .collect()
    }

    pub fn conflict_count(&self) -> usize {
        self.summands.iter().map(|s| s.result.conflicts.len()).sum()
    }
}

type CacheKey = (DominantWeight, i64, u64);

fn chase_cache() -> &'static Mutex<HashMap<CacheKey, Arc<ChaseResult>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<ChaseResult>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn override_hash(q_weight: &DominantWeight, d: i64, overrides: &[RankOverride]) -> u64 {
    let mut relevant: Vec<&RankOverride> = overrides
        .iter()
        .filter(|o| o.applies_to(q_weight, d))
        .collect();
    relevant.sort_by_key(|o| (o.source, o.target, o.rank));
    let mut h = DefaultHasher::new();
    for o in relevant {
        (o.source, o.target, o.rank).hash(&mut h);
    }
    h.finish()
}

/// Cohomology of Σ_{q_weight}Q ⊗ O(−d), memoized on the normalized bundle
/// and the overrides that apply to it.
pub fn summand_cohomology(
    q_weight: &DominantWeight,
    d: i64,
    overrides: &[RankOverride],
) -> Result<Arc<ChaseResult>> {
    let (qw, d) = normalize_bundle(q_weight, d);
    let key = (qw.clone(), d, override_hash(&qw, d, overrides));
    if let Some(hit) = chase_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let (_, result) = cohomology(&qw, d, overrides)?;
    let result = Arc::new(result);
    chase_cache().lock().unwrap().insert(key, result.clone());
    Ok(result)
}

/// Cohomology of Σ_{q_weight}Q ⊗ O(−d), falling back on Serre duality
/// H^k(E) ≅ H^{4−k}(E^∨)^∨ when the direct chase has conflicts and the dual
/// chase does not. The flag reports whether the fallback was used.
pub fn resolved_cohomology(
    q_weight: &DominantWeight,
    d: i64,
    overrides: &[RankOverride],
) -> Result<(Arc<ChaseResult>, bool)> {
    let direct = summand_cohomology(q_weight, d, overrides)?;
    if direct.conflicts.is_empty() {
        return Ok((direct, false));
    }
    let (dq, dd) = dual_bundle(q_weight, d);
    let dual = summand_cohomology(&dq, dd, overrides)?;
    if !dual.conflicts.is_empty() {
        return Ok((direct, false));
    }
    let mut degrees = dual.degrees.clone();
    degrees.reverse();
    let result = ChaseResult {
        degrees,
        conflicts: Vec::new(),
        applied: dual.applied.clone(),
    };
    Ok((Arc::new(result), true))
}

fn aggregate(
    lambda: CanonicalQPartition,
    summands: Vec<EndSummand>,
    overrides: &[RankOverride],
) -> Result<ExtReport> {
    let reports: Vec<SummandReport> = summands
        .into_par_iter()
        .map(|summand| {
            let (q_weight, d) = normalize_bundle(&summand.q_weight, -summand.twist);
            let (result, via_serre_dual) = resolved_cohomology(&q_weight, d, overrides)?;
            Ok(SummandReport {
                summand,
                q_weight,
                d,
                via_serre_dual,
                result: (*result).clone(),
            })
        })
        .collect::<Result<_>>()?;
    let mut lo = vec![BigUint::zero(); MAX_DEGREE + 1];
    let mut hi = vec![BigUint::zero(); MAX_DEGREE + 1];
    for r in &reports {
        let mult = BigUint::from(r.summand.multiplicity);
        for (n, v) in r.result.degrees.iter().enumerate() {
            lo[n] += v.lo() * &mult;
            hi[n] += v.hi() * &mult;
        }
    }
    let ext = lo
        .into_iter()
        .zip(hi)
        .map(|(l, h)| DegreeValue::from_bounds(l, h))
        .collect();
    Ok(ExtReport {
        lambda,
        ext,
        summands: reports,
        chi_check: chi_endo(&lambda.weight()),
    })
}

/// Ext groups of Σ_λQ with itself; λ is canonicalized first.
pub fn ext_groups(lambda: &DominantWeight, overrides: &[RankOverride]) -> Result<ExtReport> {
    let c = canonicalize(lambda)?;
    aggregate(c, end_decomposition(&c), overrides)
}

/// Ext groups of Sym^mQ built from End(Sym^mQ) = ⊕_{k ≤ m} Σ_{2k,k,k,0}Q ⊗ O(−k).
pub fn sym_ext(m: u32, overrides: &[RankOverride]) -> Result<ExtReport> {
    let m = i64::from(m);
    let summands = (0..=m)
        .map(|k| EndSummand {
            q_weight: DominantWeight::new(vec![2 * k, k, k, 0]).expect("dominant"),
            twist: -k,
            multiplicity: 1,
        })
        .collect();
    aggregate(CanonicalQPartition::new(m, 0, 0)?, summands, overrides)
}

/// All canonical (m, t, s) with 1 ≤ m ≤ max_m, in lexicographic order.
pub fn canonical_triples(max_m: i64) -> Vec<CanonicalQPartition> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for t in 0..=m {
            for s in 0..=t {
                if t + s <= m {
                    out.push(CanonicalQPartition::new(m, t, s).expect("canonical"));
                }
            }
        }
    }
    out
}

/// Reports for the 21 canonical partitions with m < 5.
pub fn ext_table_reports(overrides: &[RankOverride]) -> Result<Vec<ExtReport>> {
    canonical_triples(4)
        .into_iter()
        .map(|c| ext_groups(&c.weight(), overrides))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::{preset_overrides, PRESET_NAME};
    use crate::partitions::w;

    fn exact(r: &ExtReport) -> Vec<u64> {
        r.exact_values()
            .expect("exact")
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn wedge_two() {
        let r = ext_groups(&w(&[1, 1, 0, 0]), &[]).unwrap();
        assert_eq!(exact(&r), vec![1, 20, 2, 20, 1]);
        assert_eq!(r.alternating_sum(), Some(r.chi_check.clone()));
    }

    #[test]
    fn forty_dimensional_ext1() {
        let preset = preset_overrides(PRESET_NAME).unwrap();
        let r = ext_groups(&w(&[3, 2, 1, 0]), &preset).unwrap();
        assert_eq!(exact(&r), vec![1, 40, 35406, 40, 1]);
        let r = ext_groups(&w(&[3, 2, 1, 0]), &[]).unwrap();
        assert!(!r.is_exact());
    }

    #[test]
    fn canonical_triple_count() {
        assert_eq!(canonical_triples(4).len(), 21);
    }

    #[test]
    fn sym_matches_general_path() {
        for m in 1..=3 {
            let a = sym_ext(m, &[]).unwrap();
            let b = ext_groups(&w(&[m as i64, 0, 0, 0]), &[]).unwrap();
            assert_eq!(a.ext, b.ext);
        }
    }
}
