//! Published reference values embedded from `data/`, and cell-by-cell
//! comparison of computed reports against them.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReport;
use crate::koszul::DegreeValue;
use crate::partitions::{canonicalize, DominantWeight};
use crate::plethysm::KoszulFactorTable;

const EXT_TABLE_TOML: &str = include_str!("../data/ext_table.toml");
const KOSZUL_TOML: &str = include_str!("../data/koszul_columns.toml");

#[derive(Clone, Debug, Deserialize)]
struct RawRow {
    lambda: String,
    hom: Option<u64>,
    ext1: Option<u64>,
    ext2: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawDiscrepancy {
    lambda: String,
    column: String,
    note: String,
}

#[derive(Clone, Debug, Deserialize)]
struct RawSummand {
    q_weight: String,
    d: i64,
    h2: u64,
}

#[derive(Clone, Debug, Deserialize)]
struct RawExtTable {
    row: Vec<RawRow>,
    #[serde(default)]
    known_discrepancy: Vec<RawDiscrepancy>,
    #[serde(default)]
    summand: Vec<RawSummand>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawKoszulTable {
    columns: Vec<Vec<String>>,
}

/// The three published columns of the Ext table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    Hom,
    Ext1,
    Ext2,
}

impl Column {
    pub const ALL: [Column; 3] = [Column::Hom, Column::Ext1, Column::Ext2];

    /// The Ext degree the column records.
    pub fn degree(self) -> usize {
        match self {
            Column::Hom => 0,
            Column::Ext1 => 1,
            Column::Ext2 => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Column::Hom => "hom",
            Column::Ext1 => "ext1",
            Column::Ext2 => "ext2",
        }
    }
}

impl std::str::FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Column::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected hom, ext1 or ext2".into(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedRow {
    pub lambda: DominantWeight,
    /// Published (hom, ext1, ext2); `None` where the table prints "-".
    pub values: [Option<u64>; 3],
}

impl PublishedRow {
    pub fn value(&self, column: Column) -> Option<u64> {
        self.values[column.degree()]
    }

    pub fn is_determinate(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownDiscrepancy {
    pub lambda: DominantWeight,
    pub column: Column,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedSummand {
    pub q_weight: DominantWeight,
    pub d: i64,
    pub h2: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTableGolden {
    pub rows: Vec<PublishedRow>,
    pub known_discrepancies: Vec<KnownDiscrepancy>,
    pub summands: Vec<PublishedSummand>,
}

impl ExtTableGolden {
    pub fn row(&self, lambda: &DominantWeight) -> Option<&PublishedRow> {
        self.rows.iter().find(|r| &r.lambda == lambda)
    }

    pub fn discrepancy(&self, lambda: &DominantWeight, column: Column) -> Option<&KnownDiscrepancy> {
        self.known_discrepancies
            .iter()
            .find(|k| &k.lambda == lambda && k.column == column)
    }
}

fn parse_ext_table(src: &str) -> Result<ExtTableGolden> {
    let raw: RawExtTable = toml::from_str(src).map_err(|e| Error::Parse {
        input: "ext_table.toml".into(),
        reason: e.to_string(),
    })?;
    let rows = raw
        .row
        .into_iter()
        .map(|r| {
            Ok(PublishedRow {
                lambda: r.lambda.parse()?,
                values: [r.hom, r.ext1, r.ext2],
            })
        })
        .collect::<Result<_>>()?;
    let known_discrepancies = raw
        .known_discrepancy
        .into_iter()
        .map(|k| {
            Ok(KnownDiscrepancy {
                lambda: k.lambda.parse()?,
                column: k.column.parse()?,
                note: k.note,
            })
        })
        .collect::<Result<_>>()?;
    let summands = raw
        .summand
        .into_iter()
        .map(|s| {
            Ok(PublishedSummand {
                q_weight: s.q_weight.parse()?,
                d: s.d,
                h2: s.h2,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ExtTableGolden {
        rows,
        known_discrepancies,
        summands,
    })
}

fn parse_koszul_table(src: &str) -> Result<Vec<Vec<DominantWeight>>> {
    let raw: RawKoszulTable = toml::from_str(src).map_err(|e| Error::Parse {
        input: "koszul_columns.toml".into(),
        reason: e.to_string(),
    })?;
    raw.columns
        .into_iter()
        .map(|c| c.iter().map(|s| s.parse()).collect())
        .collect()
}

/// The embedded Ext table.
pub fn ext_table_golden() -> &'static ExtTableGolden {
    static T: OnceLock<ExtTableGolden> = OnceLock::new();
    T.get_or_init(|| parse_ext_table(EXT_TABLE_TOML).expect("embedded ext_table.toml is well formed"))
}

/// The embedded Koszul factor table, columns p = 0..=10 in published order.
pub fn koszul_golden() -> &'static [Vec<DominantWeight>] {
    static T: OnceLock<Vec<Vec<DominantWeight>>> = OnceLock::new();
    T.get_or_init(|| parse_koszul_table(KOSZUL_TOML).expect("embedded koszul_columns.toml is well formed"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "note", rename_all = "snake_case")]
pub enum CellStatus {
    /// Exact and equal to the published value.
    Match,
    /// Exact, different from the published value, and not explained.
    Mismatch,
    /// Exact, different from the published value, with a recorded explanation.
    Annotated(String),
    /// Published value present but the computation is indeterminate.
    Unresolved,
    /// Published "-" and the computation is indeterminate as well.
    Undetermined,
    /// Published "-" but the computation is exact.
    Extended,
}

impl CellStatus {
    /// Whether the cell counts as a failure to reproduce the table.
    pub fn is_failure(&self) -> bool {
        matches!(self, CellStatus::Mismatch | CellStatus::Unresolved)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub lambda: DominantWeight,
    pub column: Column,
    pub published: Option<u64>,
    pub computed: DegreeValue,
    #[serde(flatten)]
    pub status: CellStatus,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let published = self
            .published
            .map_or_else(|| "-".to_string(), |v| v.to_string());
        match &self.status {
            CellStatus::Match => write!(f, "{}", self.computed),
            CellStatus::Mismatch => write!(f, "{} (published {published}, MISMATCH)", self.computed),
            CellStatus::Annotated(_) => write!(f, "{} (published {published}, annotated)", self.computed),
            CellStatus::Unresolved => write!(f, "{} (published {published}, unresolved)", self.computed),
            CellStatus::Undetermined => write!(f, "{}", self.computed),
            CellStatus::Extended => write!(f, "{} (published -)", self.computed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTableDiff {
    pub cells: Vec<CellDiff>,
}

impl ExtTableDiff {
    pub fn failures(&self) -> Vec<&CellDiff> {
        self.cells.iter().filter(|c| c.status.is_failure()).collect()
    }

    pub fn unannotated_mismatches(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.status == CellStatus::Mismatch)
            .count()
    }

    pub fn annotated(&self) -> Vec<&CellDiff> {
        self.cells
            .iter()
            .filter(|c| matches!(c.status, CellStatus::Annotated(_)))
            .collect()
    }

    pub fn cell(&self, lambda: &DominantWeight, column: Column) -> Option<&CellDiff> {
        self.cells
            .iter()
            .find(|c| &c.lambda == lambda && c.column == column)
    }

    pub fn markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "| λ | hom | ext1 | ext2 |");
        let _ = writeln!(s, "|---|---|---|---|");
        for chunk in self.cells.chunks(Column::ALL.len()) {
            let cells: Vec<String> = chunk.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "| ({}) | {} |", chunk[0].lambda, cells.join(" | "));
        }
        let notes = self.annotated();
        if !notes.is_empty() {
            let _ = writeln!(s);
            for c in notes {
                if let CellStatus::Annotated(note) = &c.status {
                    let _ = writeln!(s, "- ({}) {}: {note}", c.lambda, c.column.label());
                }
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "unannotated mismatches: {}", self.unannotated_mismatches());
        s
    }
}

fn classify(published: Option<u64>, computed: &DegreeValue, note: Option<&str>) -> CellStatus {
    match (published, computed.exact()) {
        (Some(p), Some(v)) if *v == BigUint::from(p) => CellStatus::Match,
        (Some(_), Some(_)) => match note {
            Some(n) => CellStatus::Annotated(n.to_string()),
            None => CellStatus::Mismatch,
        },
        (Some(_), None) => CellStatus::Unresolved,
        (None, None) => CellStatus::Undetermined,
        (None, Some(_)) => CellStatus::Extended,
    }
}

/// Compares each report's hom, ext1 and ext2 with the published row for the
/// same canonical λ. Reports without a published row are skipped.
pub fn diff_ext_table(reports: &[ExtReport]) -> ExtTableDiff {
    let golden = ext_table_golden();
    let mut cells = Vec::new();
    for r in reports {
        let lambda = r.lambda.weight();
        let Some(row) = golden.row(&lambda) else {
            continue;
        };
        for column in Column::ALL {
            let published = row.value(column);
            let computed = r.ext[column.degree()].clone();
            let note = golden.discrepancy(&lambda, column).map(|k| k.note.as_str());
            cells.push(CellDiff {
                lambda: lambda.clone(),
                column,
                status: classify(published, &computed, note),
                published,
                computed,
            });
        }
    }
    ExtTableDiff { cells }
}

/// Canonical form of a published λ, for callers holding raw weights.
pub fn canonical_lambda(lambda: &DominantWeight) -> Result<DominantWeight> {
    Ok(canonicalize(lambda)?.weight())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnDiff {
    pub p: usize,
    /// Published but not computed.
    pub missing: Vec<DominantWeight>,
    /// Computed but not published.
    pub extra: Vec<DominantWeight>,
    /// Computed factors whose multiplicity differs from the single listing.
    pub multiplicity_mismatch: Vec<(DominantWeight, u64)>,
}

impl ColumnDiff {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.multiplicity_mismatch.is_empty()
    }
}

/// Compares the computed Koszul factor table with the published columns.
pub fn diff_koszul_table(table: &KoszulFactorTable) -> Vec<ColumnDiff> {
    koszul_golden()
        .iter()
        .enumerate()
        .map(|(p, published)| {
            let computed = &table.columns[p];
            let published: BTreeSet<&DominantWeight> = published.iter().collect();
            let got: BTreeSet<&DominantWeight> = computed.iter().map(|(w, _)| w).collect();
            ColumnDiff {
                p,
                missing: published.difference(&got).map(|w| (*w).clone()).collect(),
                extra: got.difference(&published).map(|w| (*w).clone()).collect(),
                multiplicity_mismatch: computed
                    .iter()
                    .filter(|(_, m)| *m != 1)
                    .map(|(w, m)| (w.clone(), m))
                    .collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::w;

    #[test]
    fn embedded_tables_parse() {
        let t1 = ext_table_golden();
        assert_eq!(t1.rows.len(), 21);
        assert_eq!(t1.rows.iter().filter(|r| r.is_determinate()).count(), 13);
        assert_eq!(t1.summands.len(), 3);
        assert!(t1.discrepancy(&w(&[2, 0, 0, 0]), Column::Ext2).is_some());
        let t2 = koszul_golden();
        assert_eq!(t2.len(), 11);
        let counts: Vec<usize> = t2.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 6, 9, 11, 14, 16, 20]);
    }

    #[test]
    fn published_rows_are_canonical() {
        for r in &ext_table_golden().rows {
            assert_eq!(canonical_lambda(&r.lambda).unwrap(), r.lambda);
        }
    }

    #[test]
    fn classification() {
        let e = |v: u64| DegreeValue::Exact(BigUint::from(v));
        let b = DegreeValue::from_bounds(BigUint::from(1u8), BigUint::from(5u8));
        assert_eq!(classify(Some(3), &e(3), None), CellStatus::Match);
        assert_eq!(classify(Some(3), &e(4), None), CellStatus::Mismatch);
        assert_eq!(classify(Some(3), &e(4), Some("n")), CellStatus::Annotated("n".into()));
        assert_eq!(classify(Some(3), &b, None), CellStatus::Unresolved);
        assert_eq!(classify(None, &b, None), CellStatus::Undetermined);
        assert_eq!(classify(None, &e(1), None), CellStatus::Extended);
    }

    #[test]
    fn column_parse() {
        assert_eq!("ext1".parse::<Column>().unwrap(), Column::Ext1);
        assert!("ext3".parse::<Column>().is_err());
    }
}
