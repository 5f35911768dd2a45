use dvschur_core::ext::{canonical_triples, ext_groups, ext_table_reports, sym_ext, ExtReport};
use dvschur_core::goldens::{diff_ext_table, ext_table_golden, CellStatus, Column};
use dvschur_core::koszul::{preset_overrides, RankOverride, PRESET_NAME};
use dvschur_core::partitions::{weyl_dim, CanonicalQPartition, DominantWeight};
use dvschur_core::ring::chi_endo;
use dvschur_core::schur::end_decomposition;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

fn preset() -> Vec<RankOverride> {
    preset_overrides(PRESET_NAME).unwrap()
}

fn dw(v: &[i64]) -> DominantWeight {
    DominantWeight::new(v.to_vec()).unwrap()
}

fn exact_u64(r: &ExtReport) -> Vec<u64> {
    r.exact_values()
        .unwrap_or_else(|| panic!("{} is not exact", r.lambda))
        .iter()
        .map(|v| u64::try_from(v).unwrap())
        .collect()
}

#[test]
fn determinate_rows_reproduce_with_annotated_exceptions() {
    let reports = ext_table_reports(&preset()).unwrap();
    assert_eq!(reports.len(), 21);
    let diff = diff_ext_table(&reports);
    assert_eq!(diff.cells.len(), 63);
    assert!(diff.failures().is_empty(), "{}", diff.markdown());
    assert_eq!(diff.unannotated_mismatches(), 0);
    let annotated: Vec<(String, Column)> = diff
        .annotated()
        .iter()
        .map(|c| (c.lambda.to_string(), c.column))
        .collect();
    assert_eq!(
        annotated,
        vec![("2,0,0,0".to_string(), Column::Ext2), ("3,1,0,0".to_string(), Column::Ext2)]
    );
}

#[test]
fn symmetric_square_value_and_euler_characteristic() {
    let r = ext_groups(&dw(&[2, 0, 0, 0]), &[]).unwrap();
    assert_eq!(exact_u64(&r), vec![1, 0, 190, 0, 1]);
    assert_eq!(r.chi_check, BigInt::from(192));
    let diff = diff_ext_table(std::slice::from_ref(&r));
    let cell = diff.cell(&dw(&[2, 0, 0, 0]), Column::Ext2).unwrap();
    assert_eq!(cell.published, Some(191));
    assert!(matches!(cell.status, CellStatus::Annotated(_)));
}

#[test]
fn undetermined_rows_are_bounded_with_conflicts() {
    let preset = preset();
    for l in [
        [3, 2, 0, 0],
        [3, 3, 0, 0],
        [4, 1, 0, 0],
        [4, 2, 0, 0],
        [4, 2, 1, 0],
        [4, 3, 0, 0],
        [4, 3, 1, 0],
        [4, 4, 0, 0],
    ] {
        let r = ext_groups(&dw(&l), &preset).unwrap();
        assert!(!r.is_exact(), "{l:?}");
        assert!(r.conflict_count() > 0, "{l:?}");
        assert!(!r.indeterminate_summands().is_empty());
    }
}

#[test]
fn every_exact_report_matches_riemann_roch() {
    let preset = preset();
    for c in canonical_triples(4) {
        let r = ext_groups(&c.weight(), &preset).unwrap();
        if let Some(alt) = r.alternating_sum() {
            assert_eq!(alt, chi_endo(&c.weight()), "{c}");
        }
    }
}

#[test]
fn serre_symmetry_simplicity_and_deformation_count() {
    for r in ext_table_reports(&preset()).unwrap() {
        let Some(v) = r.exact_values() else { continue };
        assert_eq!(v[0], v[4], "{}", r.lambda);
        assert_eq!(v[1], v[3], "{}", r.lambda);
        assert_eq!(v[0], BigUint::from(1u8), "{}", r.lambda);
        let (m, _, _) = r.lambda.triple();
        let mult = end_decomposition(&r.lambda)
            .into_iter()
            .find(|e| e.q_weight == dw(&[m + 1, m + 1, m - 1, m - 1]))
            .map_or(0, |e| e.multiplicity);
        assert_eq!(v[1], BigUint::from(20 * mult), "{}", r.lambda);
        assert!([0u64, 20, 40].contains(&u64::try_from(&v[1]).unwrap()));
    }
}

/// ext² for Sym^mQ from χ = 3((3m² + 12m − 20)/20)² r_m² and ext⁰ = ext⁴ = 1.
fn sym_ext2_formula(m: i64) -> BigInt {
    let r = BigInt::from(weyl_dim(&dw(&[m, 0, 0, 0])));
    let f = BigRational::new(BigInt::from(3 * m * m + 12 * m - 20), BigInt::from(20));
    let chi = BigRational::from_integer(BigInt::from(3)) * &f * &f * BigRational::from_integer(&r * &r);
    assert!(chi.is_integer());
    chi.to_integer() - 2
}

#[test]
fn symmetric_powers() {
    let preset = preset();
    for m in 1..=4u32 {
        let r = sym_ext(m, &preset).unwrap();
        let v = exact_u64(&r);
        assert_eq!((v[0], v[1], v[3], v[4]), (1, 0, 0, 1), "m={m}");
        assert_eq!(BigInt::from(v[2]), sym_ext2_formula(i64::from(m)), "m={m}");
        assert_eq!(r.ext, ext_groups(&dw(&[i64::from(m), 0, 0, 0]), &preset).unwrap().ext);
    }
    assert_eq!(sym_ext2_formula(3), BigInt::from(5545));
    assert_eq!(sym_ext2_formula(4), BigInt::from(53065));
    for m in 5..=7 {
        let r = sym_ext(m, &preset).unwrap();
        assert!(!r.is_exact() && r.conflict_count() > 0, "m={m}");
    }
}

#[test]
fn indeterminacy_propagates_to_larger_partitions() {
    let preset = preset();
    for (m, t, s) in [(5, 0, 0), (5, 1, 0), (5, 2, 0), (4, 2, 0), (4, 3, 0), (3, 3, 0)] {
        let seed = CanonicalQPartition::new(m, t, s).unwrap();
        assert!(!ext_groups(&seed.weight(), &preset).unwrap().is_exact(), "{seed}");
        for (a, b, c) in [(m + 1, t, s), (m + 1, t + 1, s), (m + 1, t + 1, s + 1)] {
            let Ok(bigger) = CanonicalQPartition::new(a, b, c) else { continue };
            let r = ext_groups(&bigger.weight(), &preset).unwrap();
            assert!(!r.is_exact() && r.conflict_count() > 0, "{bigger} from {seed}");
        }
    }
}

#[test]
fn published_single_summands() {
    let preset = preset();
    for s in &ext_table_golden().summands {
        let (_, result) = dvschur_core::koszul::cohomology(&s.q_weight, s.d, &preset).unwrap();
        let v: Vec<u64> = result
            .exact_values()
            .unwrap()
            .iter()
            .map(|x| u64::try_from(x).unwrap())
            .collect();
        assert_eq!(v, vec![0, 0, s.h2, 0, 0], "{}|{}", s.q_weight, s.d);
    }
}

#[test]
fn canonicalization_does_not_change_the_answer() {
    let preset = preset();
    let a = ext_groups(&dw(&[3, 1, 0, 0]), &preset).unwrap();
    // (3,3,2,0) is the dual of (3,1,0,0); (4,2,1,1) is a determinant twist.
    let b = ext_groups(&dw(&[3, 3, 2, 0]), &preset).unwrap();
    let c = ext_groups(&dw(&[4, 2, 1, 1]), &preset).unwrap();
    assert_eq!(a.ext, b.ext);
    assert_eq!(a.ext, c.ext);
}
