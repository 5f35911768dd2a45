//! Dominant GL(n) weights, the duality and twist normalization of
//! quotient-bundle partitions, and the Weyl dimension formula.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing integer tuple. Entries may be negative.
///
/// Ordering is lexicographic on the entries, which is the order used when
/// picking "largest" weights during character subtraction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::WrongLength {
                expected: 1,
                got: 0,
            });
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonDominant(entries));
        }
        Ok(DominantWeight(entries))
    }

    /// Builds a weight and checks its length.
    pub fn with_len(entries: Vec<i64>, len: usize) -> Result<Self> {
        if entries.len() != len {
            return Err(Error::WrongLength {
                expected: len,
                got: entries.len(),
            });
        }
        Self::new(entries)
    }

    /// Sorts arbitrary entries into a dominant weight.
    pub fn sorted(mut entries: Vec<i64>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        DominantWeight(entries)
    }

    pub fn zero(len: usize) -> Self {
        DominantWeight(vec![0; len])
    }

    /// The weight (k, 0, ..., 0).
    pub fn row(k: i64, len: usize) -> Self {
        let mut v = vec![0; len];
        v[0] = k;
        DominantWeight(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> i64 {
        self.0[0]
    }

    pub fn last(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    /// λ + d: adds `d` to every entry.
    pub fn shift(&self, d: i64) -> Self {
        DominantWeight(self.0.iter().map(|x| x + d).collect())
    }

    /// λ* = (−λ_N, ..., −λ_1).
    pub fn dual(&self) -> Self {
        DominantWeight(self.0.iter().rev().map(|x| -x).collect())
    }

    /// The dual shifted back to a partition with last entry 0. For
    /// (m, t, s, 0) this is (m, m−s, m−t, 0).
    pub fn dual_shifted(&self) -> Self {
        self.dual().shift(self.first())
    }

    pub fn is_partition(&self) -> bool {
        self.last() >= 0
    }

    /// Concatenation, used for the Q-side/U-side pairs on Gr(6,10).
    pub fn concat(&self, other: &DominantWeight) -> Vec<i64> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v
    }

    /// Dominance order on weights of equal size: λ ≥ μ iff every partial sum
    /// of λ is at least the matching partial sum of μ.
    pub fn dominates(&self, other: &DominantWeight) -> bool {
        if self.size() != other.size() || self.len() != other.len() {
            return false;
        }
        let mut a = 0;
        let mut b = 0;
        for (x, y) in self.0.iter().zip(&other.0) {
            a += x;
            b += y;
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for DominantWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = trimmed
            .split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DominantWeight::new(entries)
    }
}

impl Serialize for DominantWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DominantWeight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(deserializer)?;
        DominantWeight::new(v).map_err(serde::de::Error::custom)
    }
}

/// A quotient-bundle partition (m, t, s, 0) normalized so that m ≥ t + s.
///
/// The input weight is recovered as `base - twist`, where `base` is
/// (m, t, s, 0) or, when `dualized` is set, its dual (0, −s, −t, −m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalQPartition {
    pub m: i64,
    pub t: i64,
    pub s: i64,
    pub twist: i64,
    pub dualized: bool,
}

impl CanonicalQPartition {
    /// The triple as a canonical input (twist 0, not dualized).
    pub fn new(m: i64, t: i64, s: i64) -> Result<Self> {
        let c = canonicalize(&DominantWeight::with_len(vec![m, t, s, 0], 4)?)?;
        if (c.m, c.t, c.s) != (m, t, s) {
            return Err(Error::Parse {
                input: format!("{m},{t},{s},0"),
                reason: "triple is not canonical (need m ≥ t + s, m ≥ t ≥ s ≥ 0)".into(),
            });
        }
        Ok(c)
    }

    pub fn weight(&self) -> DominantWeight {
        DominantWeight(vec![self.m, self.t, self.s, 0])
    }

    /// The partition (m, m−s, m−t, 0) describing the dual up to a twist.
    pub fn dual_weight(&self) -> DominantWeight {
        DominantWeight(vec![self.m, self.m - self.s, self.m - self.t, 0])
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.m, self.t, self.s)
    }
}

impl fmt::Display for CanonicalQPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},0", self.m, self.t, self.s)
    }
}

/// Normalizes a rank-4 weight to (m, t, s, 0) with m ≥ t + s by removing the
/// determinant power and, if needed, passing to the dual. Ties (m = t + s)
/// keep the input.
pub fn canonicalize(lambda: &DominantWeight) -> Result<CanonicalQPartition> {
    if lambda.len() != 4 {
        return Err(Error::WrongLength {
            expected: 4,
            got: lambda.len(),
        });
    }
    let l4 = lambda.last();
    let base = lambda.shift(-l4);
    let e = base.entries();
    let (m, t, s) = (e[0], e[1], e[2]);
    if m >= t + s {
        return Ok(CanonicalQPartition {
            m,
            t,
            s,
            twist: -l4,
            dualized: false,
        });
    }
    // input = dual(m, m−s, m−t, 0) + m + l4
    Ok(CanonicalQPartition {
        m,
        t: m - s,
        s: m - t,
        twist: -(m + l4),
        dualized: true,
    })
}

/// Weyl dimension formula for GL(n): ∏_{i<j} (λ_i − λ_j + j − i)/(j − i).
pub fn weyl_dim(lambda: &DominantWeight) -> BigUint {
    let e = lambda.entries();
    let n = e.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in (i + 1)..n {
            num *= BigInt::from(e[i] - e[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(
        r.is_zero() && q.is_positive(),
        "Weyl dimension of {lambda:?} is not a positive integer"
    );
    q.to_biguint().expect("positive")
}

/// Convenience for tests and tables.
pub fn weyl_dim_u64(lambda: &DominantWeight) -> u64 {
    u64::try_from(weyl_dim(lambda)).expect("dimension fits in u64")
}

/// Shorthand constructor that panics on non-dominant input; for literals.
pub fn w(entries: &[i64]) -> DominantWeight {
    DominantWeight::new(entries.to_vec()).expect("literal weight must be dominant")
}
