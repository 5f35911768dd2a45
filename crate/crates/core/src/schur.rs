//! Tensor-product combinatorics for GL(n): Littlewood–Richardson
//! coefficients by lattice-word fillings, the Pieri rule, Kostka numbers and
//! the irreducible decomposition of End(Σ_λQ).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::partitions::{weyl_dim, CanonicalQPartition, DominantWeight};

/// An irreducible decomposition ⊕ N_ν Σ_ν over weights of a fixed length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    terms: BTreeMap<DominantWeight, u64>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    weight: DominantWeight,
    mult: u64,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(weight: DominantWeight) -> Self {
        let mut d = Self::new();
        d.add(weight, 1);
        d
    }

    pub fn add(&mut self, weight: DominantWeight, mult: u64) {
        if mult > 0 {
            *self.terms.entry(weight).or_insert(0) += mult;
        }
    }

    pub fn mult(&self, weight: &DominantWeight) -> u64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn contains(&self, weight: &DominantWeight) -> bool {
        self.terms.contains_key(weight)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing lexicographic order of weight.
    pub fn iter(&self) -> impl Iterator<Item = (&DominantWeight, u64)> + '_ {
        self.terms.iter().rev().map(|(w, &m)| (w, m))
    }

    /// Σ N_ν · dim Σ_ν.
    pub fn dimension(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(w, &m)| weyl_dim(w) * m)
            .sum()
    }

    /// Adds `d` to every weight.
    pub fn shift(&self, d: i64) -> Self {
        Decomposition {
            terms: self.terms.iter().map(|(w, &m)| (w.shift(d), m)).collect(),
        }
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Term> = self
            .iter()
            .map(|(w, m)| Term {
                weight: w.clone(),
                mult: m,
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Term>::deserialize(d)?;
        let mut out = Decomposition::new();
        for t in v {
            out.add(t.weight, t.mult);
        }
        Ok(out)
    }
}

impl FromIterator<(DominantWeight, u64)> for Decomposition {
    fn from_iter<I: IntoIterator<Item = (DominantWeight, u64)>>(iter: I) -> Self {
        let mut d = Decomposition::new();
        for (w, m) in iter {
            d.add(w, m);
        }
        d
    }
}

type LrKey = (Vec<i64>, Vec<i64>, usize);

fn lr_cache() -> &'static Mutex<HashMap<LrKey, Decomposition>> {
    static CACHE: OnceLock<Mutex<HashMap<LrKey, Decomposition>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn pad(w: &DominantWeight, rank: usize) -> Vec<i64> {
    assert!(
        w.len() <= rank || w.entries()[rank..].iter().all(|&x| x == 0),
        "weight {w:?} has more than {rank} nonzero rows"
    );
    let mut v: Vec<i64> = w.entries().iter().copied().take(rank).collect();
    v.resize(rank, 0);
    v
}

/// Σ_λ ⊗ Σ_μ for GL(rank). Weights shorter than `rank` are padded with zeros;
/// negative weights are shifted to partitions and the result shifted back.
pub fn lr_coefficients(lambda: &DominantWeight, mu: &DominantWeight, rank: usize) -> Decomposition {
    let l = pad(lambda, rank);
    let m = pad(mu, rank);
    let key = (l.clone(), m.clone(), rank);
    if let Some(hit) = lr_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }

    let dl = l[rank - 1];
    let dm = m[rank - 1];
    let l0: Vec<i64> = l.iter().map(|x| x - dl).collect();
    let m0: Vec<i64> = m.iter().map(|x| x - dm).collect();

    let mut out = BTreeMap::new();
    let mut filler = LrFiller {
        lambda: &l0,
        mu: &m0,
        rank,
        nu: Vec::with_capacity(rank),
        rows: Vec::with_capacity(rank),
        used: vec![0; rank + 1],
        out: &mut out,
    };
    filler.row(0);

    let result: Decomposition = out
        .into_iter()
        .map(|(nu, c)| {
            let shifted: Vec<i64> = nu.iter().map(|x| x + dl + dm).collect();
            (DominantWeight::new(shifted).expect("ν is a partition"), c)
        })
        .collect();
    lr_cache().lock().unwrap().insert(key, result.clone());
    result
}

/// Row-by-row enumeration of LR tableaux of shape ν/λ and content μ.
struct LrFiller<'a> {
    lambda: &'a [i64],
    mu: &'a [i64],
    rank: usize,
    nu: Vec<i64>,
    /// letters per column for each filled row; 0 marks a cell of λ
    rows: Vec<Vec<u8>>,
    /// used[k] = number of letter k placed so far (1-based)
    used: Vec<i64>,
    out: &'a mut BTreeMap<Vec<i64>, u64>,
}

impl LrFiller<'_> {
    fn row(&mut self, i: usize) {
        if i == self.rank {
            if (1..=self.rank).all(|k| self.used[k] == self.mu[k - 1]) {
                *self.out.entry(self.nu.clone()).or_insert(0) += 1;
            }
            return;
        }
        let mut counts = vec![0i64; i + 2];
        self.letter(i, 1, &mut counts);
    }

    /// Chooses how many copies of letter `k` go in row `i`.
    fn letter(&mut self, i: usize, k: usize, counts: &mut Vec<i64>) {
        let max_letter = (i + 1).min(self.rank);
        if k > max_letter {
            self.place_row(i, counts);
            return;
        }
        let remaining = self.mu[k - 1] - self.used[k];
        let lattice_cap = if k == 1 {
            i64::MAX
        } else {
            self.used[k - 1] - self.used[k]
        };
        let width_so_far: i64 = counts[1..k].iter().sum();
        let width_cap = if i == 0 {
            i64::MAX
        } else {
            self.nu[i - 1] - self.lambda[i] - width_so_far
        };
        let cap = remaining.min(lattice_cap).min(width_cap);
        for a in 0..=cap {
            counts[k] = a;
            self.letter(i, k + 1, counts);
        }
        counts[k] = 0;
    }

    fn place_row(&mut self, i: usize, counts: &[i64]) {
        let start = self.lambda[i] as usize;
        let mut letters: Vec<u8> = vec![0; start];
        for (k, &c) in counts.iter().enumerate().skip(1) {
            letters.extend(std::iter::repeat_n(k as u8, c as usize));
        }
        // column strictness against the row above
        if i > 0 {
            let above = &self.rows[i - 1];
            for c in start..letters.len() {
                let up = above.get(c).copied().unwrap_or(u8::MAX);
                if up == u8::MAX || letters[c] <= up {
                    return;
                }
            }
        }
        for (k, &c) in counts.iter().enumerate().skip(1) {
            self.used[k] += c;
        }
        self.nu.push(letters.len() as i64);
        self.rows.push(letters);
        self.row(i + 1);
        self.rows.pop();
        self.nu.pop();
        for (k, &c) in counts.iter().enumerate().skip(1) {
            self.used[k] -= c;
        }
    }
}

/// Pieri rule: Σ_λ ⊗ Sym^m, adding m boxes with at most one per column.
pub fn pieri(lambda: &DominantWeight, m: i64, rank: usize) -> Decomposition {
    let l = pad(lambda, rank);
    let d = l[rank - 1];
    let l0: Vec<i64> = l.iter().map(|x| x - d).collect();
    let mut out = Decomposition::new();
    let mut nu = Vec::with_capacity(rank);
    pieri_rec(&l0, 0, m, &mut nu, &mut out);
    out.shift(d)
}

fn pieri_rec(l: &[i64], i: usize, left: i64, nu: &mut Vec<i64>, out: &mut Decomposition) {
    if i == l.len() {
        if left == 0 {
            out.add(DominantWeight::new(nu.clone()).expect("interlacing"), 1);
        }
        return;
    }
    let cap = if i == 0 { left } else { (l[i - 1] - l[i]).min(left) };
    for add in 0..=cap {
        nu.push(l[i] + add);
        pieri_rec(l, i + 1, left - add, nu, out);
        nu.pop();
    }
}

/// Memoized Kostka numbers K_{λ,μ}: the number of semistandard tableaux of
/// shape λ and content μ, computed by peeling off the horizontal strip
/// holding the largest letter.
#[derive(Default)]
pub struct KostkaTable {
    memo: HashMap<(Vec<i64>, Vec<i64>), u64>,
}

impl KostkaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `shape` must be a partition; `content` any nonnegative vector with the
    /// same total.
    pub fn get(&mut self, shape: &[i64], content: &[i64]) -> u64 {
        let mut shape: Vec<i64> = shape.to_vec();
        while shape.last() == Some(&0) {
            shape.pop();
        }
        // Kostka numbers are symmetric in the content
        let mut content: Vec<i64> = content.iter().copied().filter(|&x| x != 0).collect();
        content.sort_unstable_by(|a, b| b.cmp(a));
        if shape.iter().sum::<i64>() != content.iter().sum::<i64>() {
            return 0;
        }
        self.rec(shape, content)
    }

    fn rec(&mut self, shape: Vec<i64>, mut content: Vec<i64>) -> u64 {
        if content.is_empty() {
            return u64::from(shape.is_empty());
        }
        if shape.len() > content.len() {
            return 0;
        }
        let key = (shape, content);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (shape, c) = key;
        let k = *c.last().unwrap();
        content = c[..c.len() - 1].to_vec();
        let mut strips = Vec::new();
        let mut inner = Vec::with_capacity(shape.len());
        strips_rec(&shape, 0, k, &mut inner, &mut strips);
        let mut total = 0u64;
        for s in strips {
            total += self.rec(s, content.clone());
        }
        let mut c_full = content;
        c_full.push(k);
        self.memo.insert((shape, c_full), total);
        total
    }
}

/// All λ' ⊂ λ with λ/λ' a horizontal strip of `k` boxes.
fn strips_rec(shape: &[i64], i: usize, left: i64, inner: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i == shape.len() {
        if left == 0 {
            let mut v = inner.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
        }
        return;
    }
    let lower = shape.get(i + 1).copied().unwrap_or(0);
    let max_remove = (shape[i] - lower).min(left);
    for r in 0..=max_remove {
        inner.push(shape[i] - r);
        strips_rec(shape, i + 1, left - r, inner, out);
        inner.pop();
    }
}

pub fn kostka(shape: &DominantWeight, content: &[i64]) -> u64 {
    KostkaTable::new().get(shape.entries(), content)
}

/// One irreducible summand Σ_{q_weight}Q ⊗ O(twist) of End(Σ_λQ).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EndSummand {
    pub q_weight: DominantWeight,
    pub twist: i64,
    pub multiplicity: u64,
}

impl EndSummand {
    /// The same bundle written with last Q-entry 0: Σ_{μ−μ₄}Q ⊗ O(twist + μ₄).
    pub fn normalized(&self) -> (DominantWeight, i64) {
        let l4 = self.q_weight.last();
        (self.q_weight.shift(-l4), self.twist + l4)
    }

    /// True for the structure sheaf O_X.
    pub fn is_trivial(&self) -> bool {
        let (w, t) = self.normalized();
        t == 0 && w.entries().iter().all(|&x| x == 0)
    }
}

/// End(Σ_{(m,t,s,0)}Q) = Σ_{(m,t,s,0)}Q ⊗ Σ_{(m,m−s,m−t,0)}Q ⊗ O(−m),
/// decomposed by the LR rule.
pub fn end_decomposition(c: &CanonicalQPartition) -> Vec<EndSummand> {
    lr_coefficients(&c.weight(), &c.dual_weight(), 4)
        .iter()
        .map(|(w, mult)| EndSummand {
            q_weight: w.clone(),
            twist: -c.m,
            multiplicity: mult,
        })
        .collect()
}
