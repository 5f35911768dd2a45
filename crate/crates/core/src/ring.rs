//! Even rational cohomology of the very general fourfold in the basis
//! {1, h, h², ch₂, ch₃, pt}, with h = ch₁(Q), ch_k = ch_k(Q) and pt the point
//! class. Chern characters of Schur functors, Euler characteristics through
//! Hirzebruch–Riemann–Roch, and the atomicity test.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::partitions::{weyl_dim, CanonicalQPartition, DominantWeight};
use crate::schur::{end_decomposition, KostkaTable};

pub type Rational = BigRational;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    One = 0,
    H = 1,
    H2 = 2,
    Ch2 = 3,
    Ch3 = 4,
    Pt = 5,
}

impl Basis {
    pub const ALL: [Basis; 6] = [
        Basis::One,
        Basis::H,
        Basis::H2,
        Basis::Ch2,
        Basis::Ch3,
        Basis::Pt,
    ];

    /// Complex codimension.
    pub fn degree(self) -> usize {
        match self {
            Basis::One => 0,
            Basis::H => 1,
            Basis::H2 | Basis::Ch2 => 2,
            Basis::Ch3 => 3,
            Basis::Pt => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Basis::One => "1",
            Basis::H => "h",
            Basis::H2 => "h2",
            Basis::Ch2 => "ch2",
            Basis::Ch3 => "ch3",
            Basis::Pt => "pt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RingElement {
    coeffs: [Rational; 6],
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Basis::One)
    }

    pub fn basis(b: Basis) -> Self {
        Self::term(q(1), b)
    }

    pub fn term(c: Rational, b: Basis) -> Self {
        let mut e = Self::zero();
        e.coeffs[b as usize] = c;
        e
    }

    pub fn scalar(c: Rational) -> Self {
        Self::term(c, Basis::One)
    }

    pub fn coeff(&self, b: Basis) -> &Rational {
        &self.coeffs[b as usize]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut e = self.clone();
        for x in e.coeffs.iter_mut() {
            *x *= c;
        }
        e
    }

    /// Homogeneous component of complex degree k.
    pub fn degree_part(&self, k: usize) -> Self {
        let mut e = Self::zero();
        for b in Basis::ALL {
            if b.degree() == k {
                e.coeffs[b as usize] = self.coeffs[b as usize].clone();
            }
        }
        e
    }

    /// Image under the duality sign (−1)^k on degree k.
    pub fn dual(&self) -> Self {
        let mut e = self.clone();
        for b in Basis::ALL {
            if b.degree() % 2 == 1 {
                e.coeffs[b as usize] = -e.coeffs[b as usize].clone();
            }
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// x^k.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

fn basis_product(a: Basis, b: Basis) -> RingElement {
    use Basis::*;
    let (a, b) = if (a as usize) <= (b as usize) { (a, b) } else { (b, a) };
    match (a, b) {
        (One, x) => RingElement::basis(x),
        (H, H) => RingElement::basis(H2),
        (H, H2) => RingElement::term(q(-264), Ch3),
        (H, Ch2) => RingElement::term(q(-18), Ch3),
        (H, Ch3) => RingElement::term(qf(-11, 2), Pt),
        (H2, H2) => RingElement::term(q(1452), Pt),
        (H2, Ch2) => RingElement::term(q(99), Pt),
        (Ch2, Ch2) => RingElement::term(q(15), Pt),
        _ => RingElement::zero(),
    }
}

pub fn ring_mul(a: &RingElement, b: &RingElement) -> RingElement {
    let mut out = RingElement::zero();
    for x in Basis::ALL {
        let ca = a.coeff(x);
        if ca.is_zero() {
            continue;
        }
        for y in Basis::ALL {
            let cb = b.coeff(y);
            if cb.is_zero() || x.degree() + y.degree() > 4 {
                continue;
            }
            out = out + basis_product(x, y).scale(&(ca * cb));
        }
    }
    out
}

/// ∫_X: the coefficient of the point class.
pub fn integrate(a: &RingElement) -> Rational {
    a.coeff(Basis::Pt).clone()
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(mut self, rhs: RingElement) -> RingElement {
        for (x, y) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *x += y;
        }
        self
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        self + (-rhs)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(mut self) -> RingElement {
        for x in self.coeffs.iter_mut() {
            *x = -x.clone();
        }
        self
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        ring_mul(self, rhs)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = Basis::ALL
            .iter()
            .filter(|&&b| !self.coeff(b).is_zero())
            .map(|&b| match b {
                Basis::One => self.coeff(b).to_string(),
                _ => format!("({})·{}", self.coeff(b), b.label()),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(6))?;
        for b in Basis::ALL {
            m.serialize_entry(b.label(), &self.coeff(b).to_string())?;
        }
        m.end()
    }
}

/// ch_k(Q) for k = 0..=4 (ch₀ = 4, ch₄ = −pt/4).
pub fn ch_q(k: usize) -> RingElement {
    match k {
        0 => RingElement::scalar(q(4)),
        1 => RingElement::basis(Basis::H),
        2 => RingElement::basis(Basis::Ch2),
        3 => RingElement::basis(Basis::Ch3),
        4 => RingElement::term(qf(-1, 4), Basis::Pt),
        _ => RingElement::zero(),
    }
}

/// c₂(X) = h² − 8ch₂.
pub fn c2x() -> RingElement {
    RingElement::basis(Basis::H2) - RingElement::term(q(8), Basis::Ch2)
}

/// td_X = 1 + c₂(X)/12 + 3pt.
pub fn todd() -> RingElement {
    RingElement::one() + c2x().scale(&qf(1, 12)) + RingElement::term(q(3), Basis::Pt)
}

/// √td_X = 1 + c₂(X)/24 + (25/32)pt.
pub fn sqrt_todd() -> RingElement {
    RingElement::one() + c2x().scale(&qf(1, 24)) + RingElement::term(qf(25, 32), Basis::Pt)
}

/// h^∨, the class with ∫ h^∨·h = q(h) = 22; h³ = 66 h^∨.
pub fn h_dual() -> RingElement {
    RingElement::term(q(-4), Basis::Ch3)
}

/// Beauville–Bogomolov–Fujiki square of h.
pub const BBF_H_SQUARE: i64 = 22;

// ---------------------------------------------------------------------------
// splitting-principle oracle

type Monomial = [u32; 4];
type Poly = HashMap<Monomial, Rational>;

fn partitions_of(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

fn monomial_of(nu: &[u32]) -> Monomial {
    let mut m = [0; 4];
    for (i, &x) in nu.iter().enumerate() {
        m[i] = x;
    }
    m
}

fn power_sum_product(rho: &[u32]) -> Poly {
    let mut acc: Poly = HashMap::from([([0; 4], q(1))]);
    for &k in rho {
        let mut next: Poly = HashMap::new();
        for (mono, c) in &acc {
            for i in 0..4 {
                let mut m = *mono;
                m[i] += k;
                *next.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
        acc = next;
    }
    acc
}

/// Solves A x = b over ℚ for a square invertible A.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("power-sum transition matrix is invertible");
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
                let v = &b[col] * &f;
                b[r] -= v;
            }
        }
    }
    b
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Weights of Σ_λC⁴ with multiplicity (all of them, not only dominant).
fn weight_multiset(lambda: &DominantWeight) -> Vec<([i64; 4], u64)> {
    let c = lambda.last();
    let base = lambda.shift(-c);
    let n = base.size();
    let mut kostka = KostkaTable::new();
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            for d in 0..=(n - a - b) {
                let e = n - a - b - d;
                let mut sorted = [a, b, d, e];
                sorted.sort_unstable_by(|x, y| y.cmp(x));
                let k = kostka.get(base.entries(), &sorted);
                if k > 0 {
                    out.push(([a + c, b + c, d + c, e + c], k));
                }
            }
        }
    }
    out
}

fn oracle_cache() -> &'static Mutex<HashMap<DominantWeight, RingElement>> {
    static CACHE: OnceLock<Mutex<HashMap<DominantWeight, RingElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ch(Σ_λQ) by the splitting principle: Σ_w K_{λ,w} exp(w·x) truncated at
/// degree 4, rewritten in power sums p_k = k!·ch_k(Q) and evaluated in the
/// ring. λ may have negative entries.
pub fn ch_oracle(lambda: &DominantWeight) -> RingElement {
    assert_eq!(lambda.len(), 4, "Q-side weights have length 4");
    if let Some(hit) = oracle_cache().lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let weights = weight_multiset(lambda);
    let mut total = RingElement::zero();
    for k in 0..=4u32 {
        if k == 0 {
            let r: u64 = weights.iter().map(|(_, m)| m).sum();
            total = total + RingElement::scalar(q(r as i64));
            continue;
        }
        let parts = partitions_of(k);
        // coefficient of x^ν in Σ_w mult (w·x)^k / k!
        let coeff: Vec<Rational> = parts
            .iter()
            .map(|nu| {
                let mut s = BigInt::zero();
                for (w, mult) in &weights {
                    let mut prod = BigInt::from(*mult);
                    for (i, &e) in nu.iter().enumerate() {
                        prod *= BigInt::from(w[i]).pow(e);
                    }
                    s += prod;
                }
                let den: BigInt = nu.iter().map(|&e| factorial(e)).product();
                Rational::new(s, den)
            })
            .collect();
        let matrix: Vec<Vec<Rational>> = parts
            .iter()
            .map(|nu| {
                parts
                    .iter()
                    .map(|rho| {
                        power_sum_product(rho)
                            .get(&monomial_of(nu))
                            .cloned()
                            .unwrap_or_else(Rational::zero)
                    })
                    .collect()
            })
            .collect();
        let a = solve(matrix, coeff);
        for (rho, c) in parts.iter().zip(a) {
            let mut term = RingElement::scalar(c);
            for &part in rho {
                let pk = ch_q(part as usize).scale(&Rational::from_integer(factorial(part)));
                term = &term * &pk;
            }
            total = total + term;
        }
    }
    oracle_cache()
        .lock()
        .unwrap()
        .insert(lambda.clone(), total.clone());
    total
}

// ---------------------------------------------------------------------------
// closed-form polynomials

/// Closed-form Chern character polynomials in the canonical triple (m, t, s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChPolynomials {
    pub m: Rational,
    pub t: Rational,
    pub s: Rational,
}

impl ChPolynomials {
    pub fn new(m: i64, t: i64, s: i64) -> Self {
        ChPolynomials {
            m: q(m),
            t: q(t),
            s: q(s),
        }
    }

    pub fn r(&self) -> Rational {
        let (m, t, s) = (&self.m, &self.t, &self.s);
        let one = q(1);
        let two = q(2);
        let three = q(3);
        (m + &three) * (t + &two) * (s + &one) * (m - t + &one) * (m - s + &two) * (t - s + &one)
            / q(12)
    }

    pub fn ell(&self) -> Rational {
        (&self.m + &self.t + &self.s) / q(4)
    }

    pub fn delta(&self) -> Rational {
        let (m, t, s) = (&self.m, &self.t, &self.s);
        (q(3) * m * m - q(2) * m * t - q(2) * m * s + q(3) * t * t + q(3) * s * s
            - q(2) * t * s
            + q(12) * m
            + q(4) * t
            - q(4) * s)
            / q(60)
    }

    pub fn tau(&self) -> Rational {
        let l = self.ell();
        q(15) * self.delta() - q(44) * &l * &l
    }

    pub fn alpha3(&self) -> Rational {
        q(-60) * &self.t - q(60) * &self.s + q(30)
    }

    /// Degree-2-in-m coefficient of 20ξ. The printed coefficient is garbled;
    /// this one is refit against the splitting-principle oracle (see tests).
    pub fn alpha2(&self) -> Rational {
        let (t, s) = (&self.t, &self.s);
        q(-109) * t * t - q(241) * t * s - q(109) * s * s + q(ALPHA2_T) * t + q(ALPHA2_S) * s
            - q(21)
    }

    pub fn alpha1(&self) -> Rational {
        let (t, s) = (&self.t, &self.s);
        q(-60) * t * t * t - q(241) * t * t * s - q(241) * t * s * s - q(60) * s * s * s
            + q(65) * t * t
            + q(78) * t * s
            + q(4) * s * s
            - t
            + q(8) * s
            + q(6)
    }

    pub fn alpha0(&self) -> Rational {
        let (t, s) = (&self.t, &self.s);
        let t2 = t * t;
        let s2 = s * s;
        q(-10) * &t2 * &t2 - q(60) * &t2 * t * s - q(109) * &t2 * &s2 - q(60) * t * &s2 * s
            - q(10) * &s2 * &s2
            + q(10) * &t2 * t
            + q(19) * &t2 * s
            - q(19) * t * &s2
            - q(10) * &s2 * s
            + q(3) * &t2
            - q(13) * t * s
            + q(3) * &s2
            + q(14) * t
            - q(14) * s
    }

    pub fn xi(&self) -> Rational {
        let m = &self.m;
        let m2 = m * m;
        (q(-10) * &m2 * &m2
            + self.alpha3() * &m2 * m
            + self.alpha2() * &m2
            + self.alpha1() * m
            + self.alpha0())
            / q(20)
    }

    /// The bracket shared by the Ξ formulas:
    /// −m⁴ + (α₃m³ + α₂m² + α₁m + α₀)/10 + 484ℓ⁴ − 330ℓ²δ − (207/4)δ².
    fn xi_bracket(&self) -> Rational {
        let m = &self.m;
        let m2 = m * m;
        let l = self.ell();
        let l2 = &l * &l;
        let d = self.delta();
        -(&m2 * &m2)
            + (self.alpha3() * &m2 * m + self.alpha2() * &m2 + self.alpha1() * m + self.alpha0())
                / q(10)
            + q(484) * &l2 * &l2
            - q(330) * &l2 * &d
            - qf(207, 4) * &d * &d
    }

    /// ∫Ξ, with Ξ the degree-4 part of ch(End).
    pub fn xi_integral(&self) -> Rational {
        let r = self.r();
        -self.xi_bracket() * &r * &r / q(4)
    }

    /// χ(End) = 3(1 + (−276δ − 1936ℓ⁴ + 1320δℓ² + 207δ² − 8ξ)/48)r².
    pub fn chi_end(&self) -> Rational {
        let r = self.r();
        let l = self.ell();
        let l2 = &l * &l;
        let d = self.delta();
        let inner = q(-276) * &d - q(1936) * &l2 * &l2 + q(1320) * &d * &l2 + q(207) * &d * &d
            - q(8) * self.xi();
        q(3) * (q(1) + inner / q(48)) * &r * &r
    }
}

/// Linear coefficients of α₂ in t and s, refit from the oracle.
pub const ALPHA2_T: i64 = 103;
pub const ALPHA2_S: i64 = 80;

pub fn ch_closed(c: &CanonicalQPartition) -> RingElement {
    let p = ChPolynomials::new(c.m, c.t, c.s);
    let r = p.r();
    let l = p.ell();
    let d = p.delta();
    let h = RingElement::basis(Basis::H);
    RingElement::scalar(r.clone())
        + h.scale(&(&l * &r))
        + ch_q(2).scale(&(&d * &r))
        + (&h * &h).scale(&((&l * &l - &d / q(4)) * &r / q(2)))
        + ch_q(3).scale(&(p.tau() * &l * &r))
        + ch_q(4).scale(&(p.xi() * &r))
}

// ---------------------------------------------------------------------------
// discriminant, Euler characteristics

/// Δ(F) = ch₁² − 2r·ch₂ = −ch₂(End F), from ch(F).
pub fn discriminant(ch: &RingElement) -> RingElement {
    let r = ch.coeff(Basis::One).clone();
    let c1 = ch.degree_part(1);
    (&c1 * &c1) - ch.degree_part(2).scale(&(q(2) * r))
}

/// If x lies on the line through c₂(X), its coefficient.
pub fn multiple_of_c2x(x: &RingElement) -> Option<Rational> {
    let a = x.coeff(Basis::H2).clone();
    let only_deg2 = Basis::ALL
        .iter()
        .all(|&b| b.degree() == 2 || x.coeff(b).is_zero());
    (only_deg2 && *x.coeff(Basis::Ch2) == &a * q(-8)).then_some(a)
}

/// ch(End Σ_λQ) = ch(F)·ch(F^∨).
pub fn ch_end(lambda: &DominantWeight) -> RingElement {
    let ch = ch_oracle(lambda);
    &ch * &ch.dual()
}

/// χ(Σ_λQ, Σ_λQ) = Σ over End summands of ∫ ch(Σ_μQ ⊗ O(k))·td_X.
pub fn chi_endo(lambda: &DominantWeight) -> BigInt {
    let c = crate::partitions::canonicalize(lambda).expect("length-4 dominant weight");
    let td = todd();
    let mut total = Rational::zero();
    for summand in end_decomposition(&c) {
        let bundle = summand.q_weight.shift(summand.twist);
        total += integrate(&(&ch_oracle(&bundle) * &td)) * q(summand.multiplicity as i64);
    }
    assert!(total.is_integer(), "Euler characteristic {total} is not an integer");
    total.to_integer()
}

/// χ(Σ_λQ, Σ_λQ) from ch(F)·ch(F^∨)·td, the same number by a second route.
pub fn chi_endo_direct(lambda: &DominantWeight) -> Rational {
    integrate(&(&ch_end(lambda) * &todd()))
}

/// ∫Ξ(Σ_λQ) with Ξ the degree-4 part of ch(End).
pub fn xi_integral(lambda: &DominantWeight) -> Rational {
    integrate(&ch_end(lambda))
}

// ---------------------------------------------------------------------------
// Mukai vectors and atomicity

/// v(F) = ch(F)·√td_X.
pub fn mukai_vector(lambda: &DominantWeight) -> RingElement {
    &ch_oracle(lambda) * &sqrt_todd()
}

/// ṽ = (r, ℓ, s) with ℓ = a·h.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedMukaiVector {
    #[serde(serialize_with = "rational_str")]
    pub r: Rational,
    /// ℓ as a multiple of h.
    #[serde(serialize_with = "rational_str")]
    pub ell_h: Rational,
    #[serde(serialize_with = "rational_str")]
    pub s: Rational,
}

impl ExtendedMukaiVector {
    /// q̃(ṽ) = q(ℓ) − 2rs with q(h) = 22.
    pub fn q_tilde(&self) -> Rational {
        q(BBF_H_SQUARE) * &self.ell_h * &self.ell_h - q(2) * &self.r * &self.s
    }

    /// T(ṽ·ṽ) = (r, ℓ, (ℓ² − q̃/30·c₂(X))/2r, (s/r)ℓ^∨, s²/2r).
    pub fn verbitsky_projection(&self) -> RingElement {
        let h = RingElement::basis(Basis::H);
        let ell = h.scale(&self.ell_h);
        let deg2 = ((&ell * &ell) - c2x().scale(&(self.q_tilde() / q(30)))).scale(&(q(1) / (q(2) * &self.r)));
        RingElement::scalar(self.r.clone())
            + ell
            + deg2
            + h_dual().scale(&(&self.ell_h * &self.s / &self.r))
            + RingElement::term(&self.s * &self.s / (q(2) * &self.r), Basis::Pt)
    }

    /// The candidate for Sym^mQ: (r_m, (m/4)r_m h, (2m² − 3m + 5)/4·r_m).
    pub fn sym_candidate(m: i64) -> Self {
        let r = ChPolynomials::new(m, 0, 0).r();
        ExtendedMukaiVector {
            ell_h: qf(m, 4) * &r,
            s: qf(2 * m * m - 3 * m + 5, 4) * &r,
            r,
        }
    }
}

fn rational_str<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Whether a rational is the square of a rational.
pub fn is_rational_square(x: &Rational) -> bool {
    if x.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_sq(x.numer()) && is_sq(x.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymCertificate {
    pub extended: ExtendedMukaiVector,
    #[serde(serialize_with = "rational_str")]
    pub q_tilde: Rational,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomicityReport {
    pub lambda: CanonicalQPartition,
    pub rank: u64,
    pub chi: String,
    /// χ(End)/(3r²)
    pub ratio: String,
    pub necessary_test: bool,
    pub sym_certificate: Option<SymCertificate>,
    pub atomic: bool,
}

pub fn atomicity_report(lambda: &DominantWeight) -> AtomicityReport {
    let c = crate::partitions::canonicalize(lambda).expect("length-4 dominant weight");
    let rank = weyl_dim(&c.weight());
    let chi = chi_endo(&c.weight());
    let r = Rational::from_integer(BigInt::from(rank.clone()));
    let ratio = Rational::from_integer(chi.clone()) / (q(3) * &r * &r);
    let necessary_test = is_rational_square(&ratio);
    let sym_certificate = (c.t == 0 && c.s == 0).then(|| {
        let v = ExtendedMukaiVector::sym_candidate(c.m);
        let verified = v.verbitsky_projection() == mukai_vector(&c.weight());
        SymCertificate {
            q_tilde: v.q_tilde(),
            extended: v,
            verified,
        }
    });
    let atomic = necessary_test && sym_certificate.as_ref().is_some_and(|s| s.verified);
    AtomicityReport {
        lambda: c,
        rank: u64::try_from(rank).expect("rank fits in u64"),
        chi: chi.to_string(),
        ratio: ratio.to_string(),
        necessary_test,
        sym_certificate,
        atomic,
    }
}
