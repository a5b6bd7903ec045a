//! Published reference tables, shipped verbatim as embedded assets, with
//! data-level consistency checks run at ingest.
//!
//! Table captions share one parameter set: B = 0.2, v1 = 0.1, v2 = 0.2,
//! hbar = mu = 1, at alpha in {0.01, 0.02, 0.03, 0.04}. Table 2's printed
//! header repeats "alpha = 0.03"; the assets carry the evident intended
//! column labels.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

pub const TABLE_ALPHAS: [f64; 4] = [0.01, 0.02, 0.03, 0.04];

/// Caption parameters shared by all five tables.
pub const TABLE_B: f64 = 0.2;
pub const TABLE_V1: f64 = 0.1;
pub const TABLE_V2: f64 = 0.2;

const ASSETS: [&str; 5] = [
    include_str!("../../tables/table1.csv"),
    include_str!("../../tables/table2.csv"),
    include_str!("../../tables/table3.csv"),
    include_str!("../../tables/table4.csv"),
    include_str!("../../tables/table5.csv"),
];

/// One published value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub n: u32,
    pub l: u32,
    pub alpha: f64,
    pub value: f64,
}

/// One table, flattened to (n, l, alpha, value) rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub table_id: u8,
    pub rows: Vec<ReferenceRow>,
}

/// Key of a flagged entry: (table, n, l, alpha in centi-units).
pub type MisprintKey = (u8, u32, u32, u8);

fn alpha_key(alpha: f64) -> u8 {
    (alpha * 100.0).round() as u8
}

/// Parse one table asset. Strict: exact header, 21 (n, l) rows, finite
/// numeric cells. Malformed input is an `Asset` error, never a panic.
pub fn parse_table_csv(table_id: u8, text: &str) -> Result<ReferenceTable> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Asset(format!("table {table_id}: empty input")))?;
    let expected_header = "n,l,alpha_0.01,alpha_0.02,alpha_0.03,alpha_0.04";
    if header.trim() != expected_header {
        return Err(Error::Asset(format!(
            "table {table_id}: header '{header}' (expected '{expected_header}')"
        )));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Asset(format!(
                "table {table_id} data line {}: {} fields, expected 6",
                idx + 1,
                fields.len()
            )));
        }
        let n: u32 = fields[0].parse().map_err(|_| {
            Error::Asset(format!("table {table_id}: bad n '{}'", fields[0]))
        })?;
        let l: u32 = fields[1].parse().map_err(|_| {
            Error::Asset(format!("table {table_id}: bad l '{}'", fields[1]))
        })?;
        for (col, field) in fields[2..].iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| {
                Error::Asset(format!("table {table_id}: bad value '{field}'"))
            })?;
            if !value.is_finite() {
                return Err(Error::Asset(format!(
                    "table {table_id}: non-finite value '{field}'"
                )));
            }
            rows.push(ReferenceRow {
                n,
                l,
                alpha: TABLE_ALPHAS[col],
                value,
            });
        }
    }
    if rows.len() != 84 {
        return Err(Error::Asset(format!(
            "table {table_id}: {} entries, expected 21 (n,l) rows x 4 alpha columns",
            rows.len()
        )));
    }
    Ok(ReferenceTable { table_id, rows })
}

/// All five tables plus the set of entries the ingest checks flag as
/// suspected misprints.
pub fn ingest_reference_tables() -> Result<([ReferenceTable; 5], BTreeSet<MisprintKey>)> {
    let tables: Vec<ReferenceTable> = ASSETS
        .iter()
        .enumerate()
        .map(|(i, text)| parse_table_csv(i as u8 + 1, text))
        .collect::<Result<_>>()?;
    let mut registry = BTreeSet::new();
    flag_momentum_pairs(&tables[3], &tables[4], &mut registry);
    flag_repeated_rows(&tables[2], &mut registry);
    let tables: [ReferenceTable; 5] = tables.try_into().expect("five assets");
    Ok((tables, registry))
}

// Table 5 should be exactly twice table 4 (the defining relation between
// the kinetic and momentum moments); pairs off by more than 1e-5 are
// flagged in both tables.
fn flag_momentum_pairs(
    kinetic: &ReferenceTable,
    momentum: &ReferenceTable,
    registry: &mut BTreeSet<MisprintKey>,
) {
    for (t, p) in kinetic.rows.iter().zip(&momentum.rows) {
        debug_assert_eq!((t.n, t.l), (p.n, p.l));
        if (p.value - 2.0 * t.value).abs() > 1e-5 {
            registry.insert((4, t.n, t.l, alpha_key(t.alpha)));
            registry.insert((5, p.n, p.l, alpha_key(p.alpha)));
        }
    }
}

// Table 3's last row repeats the (0,0) entries verbatim in its first two
// columns; any exact duplicate of the (0,0) value elsewhere in the same
// column is an apparent copy error.
fn flag_repeated_rows(table: &ReferenceTable, registry: &mut BTreeSet<MisprintKey>) {
    let origin: Vec<&ReferenceRow> = table
        .rows
        .iter()
        .filter(|r| r.n == 0 && r.l == 0)
        .collect();
    for row in &table.rows {
        if row.n == 0 && row.l == 0 {
            continue;
        }
        if origin
            .iter()
            .any(|o| o.alpha == row.alpha && o.value == row.value)
        {
            registry.insert((table.table_id, row.n, row.l, alpha_key(row.alpha)));
        }
    }
}

/// Count of (table 4, table 5) pairs satisfying |T5 - 2 T4| <= 1e-5.
pub fn momentum_pair_statistics(
    kinetic: &ReferenceTable,
    momentum: &ReferenceTable,
) -> (usize, usize) {
    let good = kinetic
        .rows
        .iter()
        .zip(&momentum.rows)
        .filter(|(t, p)| (p.value - 2.0 * t.value).abs() <= 1e-5)
        .count();
    (good, kinetic.rows.len())
}
