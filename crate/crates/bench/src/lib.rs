//! Fixed workloads shared by the benchmarks.

use nlie::{EnumerationMode, Term};

/// `(n, d, w)` oracle slices, smallest first.
pub const ORACLE_CELLS: [(usize, u32, u32); 4] = [(2, 3, 6), (3, 3, 4), (3, 4, 3), (3, 3, 5)];

/// `(n, d, w, mode)` enumeration cells.
pub const ENUMERATION_CELLS: [(usize, u32, u32, EnumerationMode); 4] = [
    (2, 3, 8, EnumerationMode::FullRule3),
    (3, 3, 6, EnumerationMode::FullRule3),
    (3, 3, 7, EnumerationMode::LeftNormed),
    (4, 5, 4, EnumerationMode::FullRule3),
];

/// Canonical monomials of one slice, used as rewrite inputs.
pub fn rewrite_inputs(n: usize, d: u32, w: u32) -> Vec<Term> {
    nlie::oracle::graded_monomials(n, d, w)
        .map(|b| b.monomials().to_vec())
        .unwrap_or_default()
}
