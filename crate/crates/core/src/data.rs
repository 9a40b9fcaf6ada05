//! Packaged tables and witnesses, embedded at build time.

use crate::bounds::{BoundTable, BoundsError};

pub const Z2_CSV: &str = include_str!("../../../data/z2.csv");
pub const Z3_CSV: &str = include_str!("../../../data/z3.csv");
pub const Z4_CSV: &str = include_str!("../../../data/z4.csv");
pub const Z5_CSV: &str = include_str!("../../../data/z5.csv");
pub const Z6_CSV: &str = include_str!("../../../data/z6.csv");

/// 2-coloring of `K_{16,16}`: color 1 has no `K_{2,2}`, color 2 has no `K_{5,5}`.
pub const WITNESS_B25: &str = include_str!("../../../data/witness_b25.col");
/// Color 1 of [`WITNESS_B25`] as a graph file.
pub const WITNESS_B25_COLOR1: &str = include_str!("../../../data/witness_b25_color1.txt");
/// 3-coloring of `K_{16,16}` avoiding `K_{2,2}`, `K_{2,2}`, `K_{3,3}`.
pub const WITNESS_B223: &str = include_str!("../../../data/witness_b223.col");

/// File names of the packaged assets, as shipped in the `data/` directory.
pub const FILES: &[(&str, &str)] = &[
    ("z2.csv", Z2_CSV),
    ("z3.csv", Z3_CSV),
    ("z4.csv", Z4_CSV),
    ("z5.csv", Z5_CSV),
    ("z6.csv", Z6_CSV),
    ("witness_b25.col", WITNESS_B25),
    ("witness_b25_color1.txt", WITNESS_B25_COLOR1),
    ("witness_b223.col", WITNESS_B223),
];

/// CSV text of the packaged table for `s`, if any.
pub fn table_csv(s: usize) -> Option<&'static str> {
    match s {
        2 => Some(Z2_CSV),
        3 => Some(Z3_CSV),
        4 => Some(Z4_CSV),
        5 => Some(Z5_CSV),
        6 => Some(Z6_CSV),
        _ => None,
    }
}

/// Parsed packaged table for `s` (2 through 6).
pub fn table(s: usize) -> Option<Result<BoundTable, BoundsError>> {
    table_csv(s).map(BoundTable::from_csv_str)
}

/// Contents of a packaged asset by file name.
pub fn asset(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
