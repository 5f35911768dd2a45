use dvschur_core::ext::canonical_triples;
use dvschur_core::partitions::{weyl_dim, DominantWeight};
use dvschur_core::ring::{
    atomicity_report, ch_closed, ch_oracle, chi_endo, chi_endo_direct, discriminant, integrate,
    multiple_of_c2x, ring_mul, todd, xi_integral, ChPolynomials, Rational, RingElement,
};
use dvschur_core::schur::lr_coefficients;
use num_bigint::BigInt;
use proptest::prelude::*;

fn dw(v: &[i64]) -> DominantWeight {
    DominantWeight::new(v.to_vec()).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn closed_form_agrees_with_oracle_in_every_degree() {
    for c in canonical_triples(6) {
        let closed = ch_closed(&c);
        let oracle = ch_oracle(&c.weight());
        for k in 0..=4 {
            assert_eq!(closed.degree_part(k), oracle.degree_part(k), "{c} degree {k}");
        }
    }
}

#[test]
fn closed_form_euler_characteristic_and_xi() {
    for c in canonical_triples(6) {
        let (m, t, s) = c.triple();
        let p = ChPolynomials::new(m, t, s);
        let chi = chi_endo(&c.weight());
        assert_eq!(p.chi_end(), Rational::from_integer(chi.clone()), "{c}");
        assert_eq!(chi_endo_direct(&c.weight()), Rational::from_integer(chi), "{c}");
        assert_eq!(p.xi_integral(), xi_integral(&c.weight()), "{c}");
        assert_eq!(p.r(), Rational::from_integer(BigInt::from(weyl_dim(&c.weight()))));
    }
}

#[test]
fn discriminant_is_a_multiple_of_c2() {
    for c in canonical_triples(6) {
        let (m, t, s) = c.triple();
        let p = ChPolynomials::new(m, t, s);
        let delta = discriminant(&ch_oracle(&c.weight()));
        let r = p.r();
        assert_eq!(multiple_of_c2x(&delta), Some(p.delta() * &r * &r / q(4)), "{c}");
    }
}

#[test]
fn symmetric_power_identities() {
    for m in 1..=6i64 {
        let p = ChPolynomials::new(m, 0, 0);
        let r = p.r();
        assert_eq!(r, qf((m + 3) * (m + 2) * (m + 1), 6));
        assert_eq!(p.delta(), qf(m * m + 4 * m, 20));
        let delta = discriminant(&ch_oracle(&dw(&[m, 0, 0, 0])));
        assert_eq!(multiple_of_c2x(&delta), Some(qf(m * m + 4 * m, 80) * &r * &r));
        assert_eq!(
            p.xi_integral(),
            qf(3 * m * (m + 4) * (9 * m * m + 36 * m - 5), 400) * &r * &r
        );
        let f = qf(3 * m * m + 12 * m - 20, 20);
        assert_eq!(p.chi_end(), q(3) * &f * &f * &r * &r, "m={m}");
    }
}

#[test]
fn atomicity() {
    for c in canonical_triples(6) {
        let rep = atomicity_report(&c.weight());
        let (_, t, s) = c.triple();
        if t == 0 && s == 0 {
            assert!(rep.atomic && rep.necessary_test, "{c}");
            assert!(rep.sym_certificate.as_ref().unwrap().verified, "{c}");
        } else {
            assert!(!rep.atomic, "{c}");
            assert!(rep.sym_certificate.is_none());
            // (2,1,0,0) is the one case in range where the square test passes.
            assert_eq!(rep.necessary_test, c.triple() == (2, 1, 0), "{c}");
        }
    }
    let zero = atomicity_report(&dw(&[0, 0, 0, 0]));
    assert!(zero.atomic);
}

/// χ(End Σ_{2,1,0,0}Q) = 1 − 20 + 401 − 20 + 1 = 363 and r = 20, so
/// χ/3r² = (11/20)² is a rational square.
#[test]
fn two_one_partition_passes_the_square_test() {
    let rep = atomicity_report(&dw(&[2, 1, 0, 0]));
    assert_eq!(rep.chi, "363");
    assert_eq!(rep.rank, 20);
    assert_eq!(rep.ratio, "121/400");
    assert!(rep.necessary_test);
}

fn ch_of_decomposition(lambda: &DominantWeight, mu: &DominantWeight) -> RingElement {
    lr_coefficients(lambda, mu, 4)
        .iter()
        .fold(RingElement::zero(), |acc, (nu, mult)| {
            acc + ch_oracle(nu).scale(&q(mult as i64))
        })
}

fn partition() -> impl Strategy<Value = DominantWeight> {
    prop::collection::vec(0i64..=3, 4).prop_map(DominantWeight::sorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// ch is a ring homomorphism: ch(Σ_λ)·ch(Σ_μ) = Σ c^ν ch(Σ_ν).
    #[test]
    fn chern_character_is_multiplicative(l in partition(), m in partition()) {
        prop_assert_eq!(ring_mul(&ch_oracle(&l), &ch_oracle(&m)), ch_of_decomposition(&l, &m));
    }

    /// Riemann–Roch values of homogeneous bundles are integers.
    #[test]
    fn euler_characteristics_are_integers(l in partition(), k in -3i64..3) {
        let chi = integrate(&ring_mul(&ch_oracle(&l.shift(k)), &todd()));
        prop_assert!(chi.is_integer());
    }
}
