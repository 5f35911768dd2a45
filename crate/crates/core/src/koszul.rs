//! Cohomology of Σ_λQ ⊗ O(−d) on the fourfold through the Koszul resolution
//! twisted by Σ_λQ̃ ⊗ O(−d), organized as a spectral sequence whose E1 page
//! is computed by Borel–Weil–Bott.
//!
//! Term p of the resolution sits in homological degree p, so the E1 entry
//! (p, q) = H^q(Gr, C_p) contributes to total degree q − p and the page-r
//! differential runs (p, q) → (p − r, q − r + 1). Differential ranks are never
//! computed; they are zero when an endpoint vanishes, otherwise they come
//! from a [`RankOverride`] or are left as an unresolved conflict.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bwb::{bott, BwbResult};
use crate::error::{Error, Result};
use crate::partitions::DominantWeight;
use crate::plethysm::{koszul_factor_table, WEDGE3_RANK};
use crate::schur::Decomposition;
use crate::serde_util::biguint_as_number;

/// Total degrees in which a bundle on the fourfold can have cohomology.
pub const MAX_DEGREE: usize = 4;

/// Σ_λQ̃ ⊗ O(−d) with λ₄ = 0, the identity used to match overrides and cache
/// chases. Twisting the Q-side by det Q̃ = O(1) shifts d accordingly.
pub fn normalize_bundle(q_weight: &DominantWeight, d: i64) -> (DominantWeight, i64) {
    let l4 = q_weight.last();
    (q_weight.shift(-l4), d - l4)
}

/// The dual bundle (Σ_λQ̃ ⊗ O(−d))^∨ = Σ_{λ^∨}Q̃ ⊗ O(d), normalized.
pub fn dual_bundle(q_weight: &DominantWeight, d: i64) -> (DominantWeight, i64) {
    normalize_bundle(&q_weight.dual(), -d)
}

/// The Koszul resolution tensored with Σ_λQ̃ ⊗ O(−d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub q_weight: DominantWeight,
    pub d: i64,
    /// Term p: U-side weights of the factors Σ_λQ̃ ⊗ Σ_μŨ, already raised by d.
    pub terms: Vec<Decomposition>,
}

pub fn build_complex(q_weight: &DominantWeight, d: i64) -> Result<TwistedComplex> {
    if q_weight.len() != 4 {
        return Err(Error::WrongLength {
            expected: 4,
            got: q_weight.len(),
        });
    }
    let table = koszul_factor_table();
    Ok(TwistedComplex {
        q_weight: q_weight.clone(),
        d,
        terms: table.columns.iter().map(|c| c.shift(d)).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPos {
    pub p: usize,
    pub q: usize,
}

impl GridPos {
    pub fn new(p: usize, q: usize) -> Self {
        GridPos { p, q }
    }

    /// Total degree q − p on the fourfold.
    pub fn total_degree(&self) -> i64 {
        self.q as i64 - self.p as i64
    }

    /// Target of the page-r differential leaving this position, if on the grid.
    pub fn target(&self, r: usize) -> Option<GridPos> {
        if r > self.p || self.q + 1 < r {
            return None;
        }
        Some(GridPos::new(self.p - r, self.q + 1 - r))
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// One Koszul factor with nonzero cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub u_weight: DominantWeight,
    pub gl10_weight: DominantWeight,
    pub mult: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Entry {
    pub pos: GridPos,
    #[serde(serialize_with = "biguint_as_number")]
    pub dim: BigUint,
    pub constituents: Vec<Constituent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Page {
    pub q_weight: DominantWeight,
    pub d: i64,
    pub entries: BTreeMap<GridPos, E1Entry>,
}

impl E1Page {
    pub fn dim(&self, pos: GridPos) -> BigUint {
        self.entries
            .get(&pos)
            .map(|e| e.dim.clone())
            .unwrap_or_default()
    }

    /// Σ (−1)^{q−p} dim E1(p, q), the Euler characteristic of the bundle.
    pub fn euler_characteristic(&self) -> BigInt {
        self.entries
            .values()
            .map(|e| {
                let v = BigInt::from(e.dim.clone());
                if e.pos.total_degree().rem_euclid(2) == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// Pairs of nonzero entries joined by some potential differential.
    pub fn potential_differentials(&self) -> Vec<(GridPos, GridPos)> {
        let mut out = Vec::new();
        for &src in self.entries.keys() {
            for r in 1..=src.p {
                if let Some(tgt) = src.target(r) {
                    if self.entries.contains_key(&tgt) {
                        out.push((src, tgt));
                    }
                }
            }
        }
        out
    }
}

pub fn e1_page(c: &TwistedComplex) -> E1Page {
    let found: Vec<(GridPos, Constituent, BigUint)> = c
        .terms
        .par_iter()
        .enumerate()
        .flat_map_iter(|(p, term)| {
            term.iter()
                .filter_map(|(mu, mult)| match bott(&c.q_weight, mu) {
                    BwbResult::Acyclic => None,
                    BwbResult::Cohomology { degree, weight, dim } => Some((
                        GridPos::new(p, degree),
                        Constituent {
                            u_weight: mu.clone(),
                            gl10_weight: weight,
                            mult,
                        },
                        dim * mult,
                    )),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut entries: BTreeMap<GridPos, E1Entry> = BTreeMap::new();
    for (pos, cons, dim) in found {
        let e = entries.entry(pos).or_insert_with(|| E1Entry {
            pos,
            dim: BigUint::zero(),
            constituents: Vec::new(),
        });
        e.dim += dim;
        e.constituents.push(cons);
    }
    E1Page {
        q_weight: c.q_weight.clone(),
        d: c.d,
        entries,
    }
}

/// An externally justified rank of one differential of one twisted complex.
/// `d` is the twist O(−d), so `q_weight = [5,5,2,0], d = 3` names
/// Σ_{5,5,2,0}Q ⊗ O(−3).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankOverride {
    pub q_weight: DominantWeight,
    #[serde(rename = "twist")]
    pub d: i64,
    pub source: GridPos,
    pub target: GridPos,
    pub rank: u64,
    #[serde(default)]
    pub note: String,
}

impl RankOverride {
    /// The differential page r joining source and target, if the positions
    /// admit one.
    pub fn page(&self) -> Option<usize> {
        let (s, t) = (self.source, self.target);
        if s.p <= t.p {
            return None;
        }
        let r = s.p - t.p;
        (s.target(r) == Some(t)).then_some(r)
    }

    pub fn validate(&self) -> Result<usize> {
        if self.q_weight.len() != 4 {
            return Err(Error::WrongLength {
                expected: 4,
                got: self.q_weight.len(),
            });
        }
        self.page().ok_or_else(|| {
            Error::IllegalOverride(format!(
                "{} → {} is not a differential (need p > p′ and q − q′ = p − p′ − 1)",
                self.source, self.target
            ))
        })
    }

    pub fn applies_to(&self, q_weight: &DominantWeight, d: i64) -> bool {
        normalize_bundle(&self.q_weight, self.d) == normalize_bundle(q_weight, d)
    }
}

/// Parses an override file: a JSON array of [`RankOverride`] records.
pub fn parse_overrides(json: &str) -> Result<Vec<RankOverride>> {
    let list: Vec<RankOverride> =
        serde_json::from_str(json).map_err(|e| Error::OverrideFile(e.to_string()))?;
    for o in &list {
        o.validate()?;
    }
    Ok(list)
}

/// Name of the built-in override set resolving three small indeterminacies.
pub const PRESET_NAME: &str = "paper-4.2";

const PRESET_JSON: &str = include_str!("../data/overrides_preset.json");

pub fn preset_overrides(name: &str) -> Result<Vec<RankOverride>> {
    if name == PRESET_NAME {
        parse_overrides(PRESET_JSON)
    } else {
        Err(Error::UnknownPreset(name.to_string()))
    }
}

/// A cohomology dimension: exact, or an interval when some differential
/// rank is unknown. Serializes as a bare number or as `{"lo": .., "hi": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DegreeValue {
    Exact(#[serde(serialize_with = "biguint_as_number")] BigUint),
    Bounded {
        #[serde(serialize_with = "biguint_as_number")]
        lo: BigUint,
        #[serde(serialize_with = "biguint_as_number")]
        hi: BigUint,
    },
}

impl DegreeValue {
    pub fn from_bounds(lo: BigUint, hi: BigUint) -> Self {
        debug_assert!(lo <= hi);
        if lo == hi {
            DegreeValue::Exact(lo)
        } else {
            DegreeValue::Bounded { lo, hi }
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            DegreeValue::Exact(v) => Some(v),
            DegreeValue::Bounded { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DegreeValue::Exact(_))
    }

    pub fn lo(&self) -> &BigUint {
        match self {
            DegreeValue::Exact(v) => v,
            DegreeValue::Bounded { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &BigUint {
        match self {
            DegreeValue::Exact(v) => v,
            DegreeValue::Bounded { hi, .. } => hi,
        }
    }
}

impl fmt::Display for DegreeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeValue::Exact(v) => write!(f, "{v}"),
            DegreeValue::Bounded { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// A differential between two nonzero entries whose rank is unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub page: usize,
    pub source: GridPos,
    pub target: GridPos,
    #[serde(serialize_with = "biguint_as_number")]
    pub max_rank: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChaseResult {
    pub degrees: Vec<DegreeValue>,
    pub conflicts: Vec<Conflict>,
    /// Overrides that were used, as (source, target, rank).
    pub applied: Vec<(GridPos, GridPos, u64)>,
}

impl ChaseResult {
    pub fn is_exact(&self) -> bool {
        self.degrees.iter().all(DegreeValue::is_exact)
    }

    pub fn exact_values(&self) -> Option<Vec<BigUint>> {
        self.degrees.iter().map(|d| d.exact().cloned()).collect()
    }
}

#[derive(Clone, Debug)]
struct Bounds {
    lo: BigUint,
    hi: BigUint,
}

/// Runs the spectral sequence page by page. Overrides for other bundles are
/// ignored; overrides for this bundle must sit on legal positions and fit
/// within the current entry dimensions.
pub fn chase(page: &E1Page, overrides: &[RankOverride]) -> Result<ChaseResult> {
    let mine: Vec<&RankOverride> = overrides
        .iter()
        .filter(|o| o.applies_to(&page.q_weight, page.d))
        .collect();
    let mut by_edge: BTreeMap<(GridPos, GridPos), &RankOverride> = BTreeMap::new();
    for o in &mine {
        o.validate()?;
        if by_edge.insert((o.source, o.target), o).is_some() {
            return Err(Error::InconsistentOverride(format!(
                "two overrides for {} → {}",
                o.source, o.target
            )));
        }
    }

    let mut state: BTreeMap<GridPos, Bounds> = page
        .entries
        .iter()
        .map(|(&pos, e)| {
            (
                pos,
                Bounds {
                    lo: e.dim.clone(),
                    hi: e.dim.clone(),
                },
            )
        })
        .collect();
    let mut conflicts = Vec::new();
    let mut applied = Vec::new();
    let mut used: HashSet<(GridPos, GridPos)> = HashSet::new();

    for r in 1..=WEDGE3_RANK {
        // (source, target, rank lower bound, rank upper bound), from the
        // state at the start of the page
        let mut moves: Vec<(GridPos, GridPos, BigUint, BigUint)> = Vec::new();
        for (&src, sb) in &state {
            let Some(tgt) = src.target(r) else { continue };
            let zero = Bounds {
                lo: BigUint::zero(),
                hi: BigUint::zero(),
            };
            let tb = state.get(&tgt).unwrap_or(&zero);
            if let Some(o) = by_edge.get(&(src, tgt)) {
                used.insert((src, tgt));
                let rank = BigUint::from(o.rank);
                let cap = sb.hi.clone().min(tb.hi.clone());
                if rank > cap {
                    return Err(Error::InconsistentOverride(format!(
                        "rank {} on page {r} for {src} → {tgt} exceeds available dimension {cap}",
                        o.rank
                    )));
                }
                applied.push((src, tgt, o.rank));
                moves.push((src, tgt, rank.clone(), rank));
                continue;
            }
            if sb.hi.is_zero() || tb.hi.is_zero() {
                continue;
            }
            let cap = sb.hi.clone().min(tb.hi.clone());
            conflicts.push(Conflict {
                page: r,
                source: src,
                target: tgt,
                max_rank: cap.clone(),
            });
            moves.push((src, tgt, BigUint::zero(), cap));
        }
        for (src, tgt, rank_lo, rank_hi) in moves {
            for pos in [src, tgt] {
                let b = state.get_mut(&pos).expect("endpoint with positive rank exists");
                if rank_lo > b.hi {
                    return Err(Error::InconsistentOverride(format!(
                        "page {r}: differentials at {pos} exceed its dimension"
                    )));
                }
                b.hi -= &rank_lo;
                b.lo = if b.lo > rank_hi {
                    &b.lo - &rank_hi
                } else {
                    BigUint::zero()
                };
            }
        }
    }

    // overrides naming positions the page never reached
    for ((src, tgt), o) in &by_edge {
        if !used.contains(&(*src, *tgt)) && o.rank > 0 {
            return Err(Error::InconsistentOverride(format!(
                "rank {} for {src} → {tgt} but the differential does not exist",
                o.rank
            )));
        }
    }

    let mut lo = vec![BigUint::zero(); MAX_DEGREE + 1];
    let mut hi = vec![BigUint::zero(); MAX_DEGREE + 1];
    for (pos, b) in &state {
        let n = pos.total_degree();
        if (0..=MAX_DEGREE as i64).contains(&n) {
            lo[n as usize] += &b.lo;
            hi[n as usize] += &b.hi;
        } else if conflicts.is_empty() && !b.hi.is_zero() {
            return Err(Error::DegreeOutOfRange { degree: n });
        }
    }
    let degrees = lo
        .into_iter()
        .zip(hi)
        .map(|(l, h)| DegreeValue::from_bounds(l, h))
        .collect();
    Ok(ChaseResult {
        degrees,
        conflicts,
        applied,
    })
}

/// build_complex → e1_page → chase.
pub fn cohomology(
    q_weight: &DominantWeight,
    d: i64,
    overrides: &[RankOverride],
) -> Result<(E1Page, ChaseResult)> {
    let page = e1_page(&build_complex(q_weight, d)?);
    let result = chase(&page, overrides)?;
    Ok((page, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{w, weyl_dim_u64};

    fn dims(page: &E1Page) -> Vec<(usize, usize, u64)> {
        page.entries
            .values()
            .map(|e| (e.pos.p, e.pos.q, u64::try_from(&e.dim).unwrap()))
            .collect()
    }

    fn exact(r: &ChaseResult) -> Vec<u64> {
        r.exact_values()
            .expect("exact")
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn complex_terms() {
        let c = build_complex(&w(&[0; 4]), 0).unwrap();
        let expected: Decomposition = [
            (w(&[3, 3, 1, 1, 1, 0]), 1),
            (w(&[3, 2, 2, 2, 0, 0]), 1),
            (w(&[2, 2, 2, 1, 1, 1]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(c.terms[3], expected);
        let c = build_complex(&w(&[2, 2, 0, 0]), 1).unwrap();
        assert_eq!(c.terms[0], Decomposition::single(w(&[1; 6])));
        assert_eq!(c.terms[20], Decomposition::single(w(&[11; 6])));
    }

    #[test]
    fn structure_sheaf_page() {
        let (page, res) = cohomology(&w(&[0; 4]), 0, &[]).unwrap();
        assert_eq!(dims(&page), vec![(0, 0, 1), (10, 12, 1), (20, 24, 1)]);
        assert_eq!(exact(&res), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn wedge2_summand_page() {
        let (page, res) = cohomology(&w(&[2, 2, 0, 0]), 1, &[]).unwrap();
        assert_eq!(
            dims(&page),
            vec![(3, 4, 10), (7, 8, 10), (10, 12, 1), (13, 16, 10), (17, 20, 10)]
        );
        // one factor in ∧⁷, not two
        assert_eq!(page.entries[&GridPos::new(7, 8)].constituents.len(), 1);
        assert_eq!(page.entries[&GridPos::new(7, 8)].constituents[0].mult, 1);
        assert_eq!(exact(&res), vec![0, 20, 1, 20, 0]);
        assert!(res.conflicts.is_empty());
    }

    #[test]
    fn acyclic_summand() {
        let (page, res) = cohomology(&w(&[2, 1, 1, 0]), 1, &[]).unwrap();
        assert!(page.entries.is_empty());
        assert_eq!(exact(&res), vec![0; 5]);
    }

    #[test]
    fn override_resolves_injective_map() {
        let (page, res) = cohomology(&w(&[5, 5, 2, 0]), 3, &[]).unwrap();
        assert!(!res.is_exact());
        let pages: Vec<usize> = res.conflicts.iter().map(|c| c.page).collect();
        assert!(pages.contains(&2));
        assert_eq!(weyl_dim_u64(&w(&[3, 0, 0, 0, 0, 0, 0, 0, 0, 0])), 220);
        assert_eq!(u64::try_from(page.dim(GridPos::new(11, 12))).unwrap(), 220);
        assert_eq!(u64::try_from(page.dim(GridPos::new(9, 11))).unwrap(), 330);
        let o = RankOverride {
            q_weight: w(&[5, 5, 2, 0]),
            d: 3,
            source: GridPos::new(11, 12),
            target: GridPos::new(9, 11),
            rank: 220,
            note: String::new(),
        };
        let res = chase(&page, std::slice::from_ref(&o)).unwrap();
        assert_eq!(exact(&res), vec![0, 0, 2730, 0, 0]);
        // twisting both sides by det leaves the bundle unchanged
        let shifted = RankOverride {
            q_weight: w(&[6, 6, 3, 1]),
            d: 4,
            ..o.clone()
        };
        assert_eq!(chase(&page, &[shifted]).unwrap(), res);
        let too_big = RankOverride { rank: 221, ..o };
        assert!(matches!(
            chase(&page, &[too_big]),
            Err(Error::InconsistentOverride(_))
        ));
    }

    #[test]
    fn illegal_positions_rejected() {
        let o = RankOverride {
            q_weight: w(&[5, 5, 2, 0]),
            d: 3,
            source: GridPos::new(11, 12),
            target: GridPos::new(9, 12),
            rank: 1,
            note: String::new(),
        };
        assert!(matches!(o.validate(), Err(Error::IllegalOverride(_))));
        let page = e1_page(&build_complex(&w(&[5, 5, 2, 0]), 3).unwrap());
        assert!(chase(&page, &[o]).is_err());
    }

    #[test]
    fn override_file_roundtrip() {
        let json = r#"[{"q_weight":[5,5,2,0],"twist":3,"source":{"p":11,"q":12},
                        "target":{"p":9,"q":11},"rank":220,"note":"x"}]"#;
        let list = parse_overrides(json).unwrap();
        assert_eq!(list[0].page(), Some(2));
        assert!(parse_overrides("[{").is_err());
        assert!(matches!(
            preset_overrides("nope"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn preset_resolves_three_bundles() {
        let preset = preset_overrides(PRESET_NAME).unwrap();
        for (q, d, h2) in [([5, 5, 2, 0], 3, 2730), ([7, 5, 4, 0], 4, 32550), ([6, 6, 4, 0], 4, 10206)] {
            let (_, res) = cohomology(&w(&q), d, &preset).unwrap();
            assert_eq!(exact(&res), vec![0, 0, h2, 0, 0], "{q:?}");
        }
    }

    #[test]
    fn large_symmetric_summand_is_indeterminate() {
        let (_, res) = cohomology(&w(&[10, 5, 5, 0]), 5, &[]).unwrap();
        assert!(!res.is_exact());
        assert!(!res.conflicts.is_empty());
    }
}
