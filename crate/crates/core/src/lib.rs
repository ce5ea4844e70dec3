//! Free n-Lie algebras: bracket terms, basic commutators, the collecting
//! process, counting formulas and an exact graded-dimension oracle.
//!
//! ```
//! use nlie::{collect, parse, DEFAULT_STEP_BUDGET};
//!
//! let t = parse("[x1,[x3,x2,x1],x2]", 3).unwrap();
//! let (lc, trace) = collect(&t, 3, DEFAULT_STEP_BUDGET).unwrap();
//! assert_eq!(lc.to_string(), "+1*[[x3,x2,x1],x2,x1]");
//! assert!(!trace.capped);
//! ```

pub mod basis;
pub mod counting;
pub mod lincomb;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod rewrite;
mod shape;
pub mod term;

pub use basis::{
    count_by_enumeration, count_by_enumeration_capped, enumerate_basic, enumerate_basic_capped,
    is_basic, BasicCommutator, BasisError, EnumerationMode, DEFAULT_ENUMERATION_CAP,
};
pub use counting::{CountError, LieExpansion, Method, NonbasicBreakdown};
pub use lincomb::LinearCombination;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use oracle::{
    graded_dimension, membership, OracleCell, OracleError, RelationMatrix, DEFAULT_MONOMIAL_CEILING,
};
pub use parse::{parse, ParseError};
pub use report::{Cell, CountTable, CountValue, Evaluator, ReportRow};
pub use rewrite::{
    collect, collect_lc, expand_jacobi, RewriteError, RewriteTrace, DEFAULT_STEP_BUDGET,
};
pub use term::{canonicalize, compare, Generator, Sign, SignedTerm, Term, TermError};

/// Any failure surfaced by the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
