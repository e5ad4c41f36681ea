//! Card-count tables across schemes and moduli, with row minima flagged.

use std::fmt::Write as _;

use serde::Serialize;

use crate::encodings::Scheme;
use crate::protocols::Protocol;

use super::counts::count_cards;

/// Moduli covered by the full comparison table: every non-prime-power
/// n up to 20, so the crt scheme applies everywhere.
pub const TABLE_MODULI: [u64; 7] = [6, 10, 12, 14, 15, 18, 20];

/// Scheme column order used in both tables.
pub const SCHEME_NAMES: [&str; 3] = ["direct", "binary", "crt"];

/// Protocol column order used in both tables.
pub const TABLE_PROTOCOLS: [Protocol; 3] = [Protocol::Copy, Protocol::Add, Protocol::Mult];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub protocol: Protocol,
    pub cards: u64,
    /// Lowest count for this protocol among the schemes in the row
    /// (ties all flagged).
    pub row_minimum: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeCounts {
    pub scheme: &'static str,
    pub cells: Vec<TableCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulusRow {
    pub n: u64,
    pub schemes: Vec<SchemeCounts>,
}

impl ModulusRow {
    pub fn cell(&self, scheme: &str, protocol: Protocol) -> &TableCell {
        self.schemes
            .iter()
            .find(|s| s.scheme == scheme)
            .and_then(|s| s.cells.iter().find(|c| c.protocol == protocol))
            .expect("table rows carry every scheme and protocol")
    }
}

/// Both published tables: the Z/6Z comparison and the per-modulus one.
/// Crt multiplication counts are the optimized ones throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTables {
    pub z6: ModulusRow,
    pub rows: Vec<ModulusRow>,
}

fn scheme_for(name: &str, n: u64) -> Scheme {
    match name {
        "direct" => Scheme::direct(n),
        "binary" => Scheme::binary(n),
        "crt" => Scheme::crt(n),
        _ => unreachable!("fixed scheme list"),
    }
    .expect("table moduli suit every scheme")
}

fn build_row(n: u64) -> ModulusRow {
    let counts: Vec<Vec<u64>> = SCHEME_NAMES
        .iter()
        .map(|name| {
            let scheme = scheme_for(name, n);
            TABLE_PROTOCOLS
                .iter()
                .map(|&p| count_cards(&scheme, p, true).expect("table pairs are countable"))
                .collect()
        })
        .collect();
    let minima: Vec<u64> = (0..TABLE_PROTOCOLS.len())
        .map(|col| counts.iter().map(|row| row[col]).min().unwrap())
        .collect();
    let schemes = SCHEME_NAMES
        .iter()
        .zip(&counts)
        .map(|(name, row)| SchemeCounts {
            scheme: name,
            cells: TABLE_PROTOCOLS
                .iter()
                .zip(row)
                .enumerate()
                .map(|(col, (&protocol, &cards))| TableCell {
                    protocol,
                    cards,
                    row_minimum: cards == minima[col],
                })
                .collect(),
        })
        .collect();
    ModulusRow { n, schemes }
}

/// Compute every cell of both tables from the count formulas.
pub fn emit_tables() -> CountTables {
    let rows: Vec<ModulusRow> = TABLE_MODULI.iter().map(|&n| build_row(n)).collect();
    CountTables { z6: rows[0].clone(), rows }
}

fn mark(cell: &TableCell) -> String {
    if cell.row_minimum {
        format!("*{}", cell.cards)
    } else {
        cell.cards.to_string()
    }
}

/// Aligned plain text, minima marked with `*`.
pub fn render_text(tables: &CountTables) -> String {
    let mut out = String::new();
    out.push_str("Cards required in Z/6Z per scheme (* = best in column):\n");
    writeln!(out, "{:<8} {:>6} {:>6} {:>6}", "scheme", "copy", "add", "mult").unwrap();
    for scheme in &tables.z6.schemes {
        write!(out, "{:<8}", scheme.scheme).unwrap();
        for cell in &scheme.cells {
            write!(out, " {:>6}", mark(cell)).unwrap();
        }
        out.push('\n');
    }
    out.push('\n');
    out.push_str("Cards required per modulus (crt mult optimized; * = best in row):\n");
    write!(out, "{:>4}", "n").unwrap();
    for name in SCHEME_NAMES {
        for protocol in TABLE_PROTOCOLS {
            write!(out, " {:>11}", format!("{name}/{protocol}")).unwrap();
        }
    }
    out.push('\n');
    for row in &tables.rows {
        write!(out, "{:>4}", row.n).unwrap();
        for scheme in &row.schemes {
            for cell in &scheme.cells {
                write!(out, " {:>11}", mark(cell)).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

/// One CSV line per (modulus, scheme); the flags column lists the
/// protocols where that scheme is row-minimal, separated by `;`.
pub fn render_csv(tables: &CountTables) -> String {
    let mut out = String::from("n,scheme,copy,add,mult,flags\n");
    for row in &tables.rows {
        for scheme in &row.schemes {
            let cards: Vec<String> = scheme.cells.iter().map(|c| c.cards.to_string()).collect();
            let flags: Vec<&str> = scheme
                .cells
                .iter()
                .filter(|c| c.row_minimum)
                .map(|c| c.protocol.name())
                .collect();
            writeln!(out, "{},{},{},{}", row.n, scheme.scheme, cards.join(","), flags.join(";"))
                .unwrap();
        }
    }
    out
}
