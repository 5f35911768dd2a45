use dvschur_core::goldens::{diff_koszul_table, koszul_golden};
use dvschur_core::plethysm::{binomial, koszul_factor_table, WEDGE3_RANK};

#[test]
fn published_columns_reproduced() {
    let table = koszul_factor_table();
    let diffs = diff_koszul_table(table);
    assert_eq!(diffs.len(), 11);
    for d in &diffs {
        assert!(d.is_match(), "column {} differs: {d:?}", d.p);
    }
    for (p, published) in koszul_golden().iter().enumerate() {
        assert_eq!(table.columns[p].len(), published.len());
        assert_eq!(table.columns[p].total_multiplicity(), published.len() as u64);
    }
}

#[test]
fn column_dimensions_are_binomials() {
    let table = koszul_factor_table();
    assert_eq!(table.columns.len(), WEDGE3_RANK + 1);
    for p in 0..=WEDGE3_RANK {
        assert_eq!(
            table.column_dimension(p),
            binomial(WEDGE3_RANK as u64, p as u64).into(),
            "column {p}"
        );
    }
}

#[test]
fn upper_columns_are_shifted_lower_columns() {
    let table = koszul_factor_table();
    for k in 0..=10 {
        assert_eq!(table.mirrored_column(k), table.columns[10 + k], "k = {k}");
    }
}

#[test]
fn markdown_lists_every_published_factor() {
    let md = koszul_factor_table().markdown(10);
    for column in koszul_golden() {
        for w in column {
            assert!(md.contains(&format!("({w})")), "{w} missing");
        }
    }
    assert!(!md.contains('×'));
}
