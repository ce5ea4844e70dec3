//! Method dispatch, count grids and the CSV renderings built on them.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::basis::{
    count_by_enumeration_capped, BasisError, EnumerationMode, DEFAULT_ENUMERATION_CAP,
};
use crate::counting::{self, CountError, Method};
use crate::oracle::{self, OracleCache, OracleError, DEFAULT_MONOMIAL_CEILING};
use crate::term::length_for_weight;
use crate::Error;

/// An exact count: an integer, or a rational for methods that pass through
/// fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountValue {
    Integer(BigInt),
    Rational(BigRational),
}

impl CountValue {
    pub fn as_rational(&self) -> BigRational {
        match self {
            CountValue::Integer(i) => BigRational::from_integer(i.clone()),
            CountValue::Rational(q) => q.clone(),
        }
    }

    /// Integer rationals collapse to [`CountValue::Integer`].
    pub fn normalized(self) -> CountValue {
        match self {
            CountValue::Rational(q) if q.is_integer() => CountValue::Integer(q.to_integer()),
            v => v,
        }
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountValue::Integer(i) => write!(f, "{i}"),
            CountValue::Rational(q) => write!(f, "{q}"),
        }
    }
}

/// One grid cell. Missing values say why they are missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Value(CountValue),
    /// The method has no value at these parameters.
    NotApplicable(String),
    /// The method applies but the instance is over a resource ceiling.
    Uncomputed(String),
}

impl Cell {
    pub fn value(&self) -> Option<&CountValue> {
        match self {
            Cell::Value(v) => Some(v),
            _ => None,
        }
    }
}

/// Dispatches a [`Method`] at `(n, d, w)` with resource ceilings and an
/// optional oracle cache.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub oracle_ceiling: usize,
    pub enumeration_cap: usize,
    pub cache: Option<OracleCache>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator {
            oracle_ceiling: DEFAULT_MONOMIAL_CEILING,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            cache: None,
        }
    }
}

fn not_applicable(method: Method, n: usize, d: u32, w: u32, reason: &str) -> Error {
    Error::Count(CountError::NotApplicable {
        method,
        n,
        d,
        w,
        reason: reason.into(),
    })
}

impl Evaluator {
    pub fn evaluate(&self, method: Method, n: usize, d: u32, w: u32) -> Result<CountValue, Error> {
        if n < 2 || d < 1 || w < 1 {
            return Err(Error::Count(CountError::InvalidParameters(format!(
                "need n >= 2, d >= 1, w >= 1; got n={n}, d={d}, w={w}"
            ))));
        }
        let d64 = u64::from(d);
        let int = CountValue::Integer;
        Ok(match method {
            Method::Witt if n == 2 => int(counting::witt(d64, w)),
            Method::Witt => return Err(not_applicable(method, n, d, w, "defined for n = 2")),
            Method::NecklaceBound => int(counting::necklace_bound(n, d64, w)),
            Method::Weight2 if w == 2 => int(counting::count_weight2(n, d64)),
            Method::Weight2 => return Err(not_applicable(method, n, d, w, "defined for w = 2")),
            Method::Ladder | Method::LadderRecursive if n != d as usize => {
                return Err(not_applicable(method, n, d, w, "defined for n = d"))
            }
            Method::Ladder => int(counting::ladder(n, w)),
            Method::LadderRecursive => int(counting::ladder_recursive(n, w)),
            Method::Eq14 if w == 3 => int(counting::eq14_weight3(n, d64)?),
            Method::Eq14 => return Err(not_applicable(method, n, d, w, "defined for w = 3")),
            Method::Eq15 if w == 4 => int(counting::eq15_weight4(n, d64)?),
            Method::Eq15 => return Err(not_applicable(method, n, d, w, "defined for w = 4")),
            Method::Eq16 => int(counting::eq16_general(n, d64, w)?),
            Method::ViaLie => {
                CountValue::Rational(counting::countw_via_lie(n, d64, w)?).normalized()
            }
            Method::EnumFull | Method::EnumLeft => {
                let mode = if method == Method::EnumFull {
                    EnumerationMode::FullRule3
                } else {
                    EnumerationMode::LeftNormed
                };
                int(BigInt::from(count_by_enumeration_capped(
                    n,
                    d,
                    w,
                    mode,
                    self.enumeration_cap,
                )?))
            }
            Method::Oracle => {
                let cell = match &self.cache {
                    Some(c) => c.get_or_compute(n, d, w, self.oracle_ceiling)?,
                    None => oracle::graded_dimension_capped(n, d, w, self.oracle_ceiling)?,
                };
                int(BigInt::from(cell.dim))
            }
        })
    }

    /// [`Evaluator::evaluate`] with inapplicable and over-ceiling outcomes
    /// folded into the cell; other failures are errors.
    pub fn cell(&self, method: Method, n: usize, d: u32, w: u32) -> Result<Cell, Error> {
        match self.evaluate(method, n, d, w) {
            Ok(v) => Ok(Cell::Value(v)),
            Err(Error::Count(e @ CountError::NotApplicable { .. })) => {
                Ok(Cell::NotApplicable(e.to_string()))
            }
            Err(Error::Count(e @ CountError::MalformedBracket { .. })) => {
                Ok(Cell::NotApplicable(e.to_string()))
            }
            Err(Error::Oracle(e @ OracleError::CeilingExceeded { .. })) => {
                Ok(Cell::Uncomputed(e.to_string()))
            }
            Err(Error::Basis(e @ BasisError::CapExceeded { .. })) => {
                Ok(Cell::Uncomputed(e.to_string()))
            }
            Err(e) => Err(e),
        }
    }
}

/// Counts keyed by `(n, d, w, method)`.
#[derive(Clone, Debug, Default)]
pub struct CountTable {
    entries: BTreeMap<(usize, u32, u32, Method), Cell>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, n: usize, d: u32, w: u32, method: Method, cell: Cell) {
        self.entries.insert((n, d, w, method), cell);
    }

    pub fn get(&self, n: usize, d: u32, w: u32, method: Method) -> Option<&Cell> {
        self.entries.get(&(n, d, w, method))
    }

    pub fn value(&self, n: usize, d: u32, w: u32, method: Method) -> Option<&CountValue> {
        self.get(n, d, w, method).and_then(Cell::value)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, u32, u32, Method), &Cell)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Evaluates every `(w, method)` pair for `w` in `1..=w_max`, cells in
    /// parallel.
    pub fn fill(
        evaluator: &Evaluator,
        n: usize,
        d: u32,
        w_max: u32,
        methods: &[Method],
    ) -> Result<CountTable, Error> {
        let jobs: Vec<(u32, Method)> = (1..=w_max)
            .flat_map(|w| methods.iter().map(move |&m| (w, m)))
            .collect();
        let cells: Vec<Result<Cell, Error>> = jobs
            .par_iter()
            .map(|&(w, m)| evaluator.cell(m, n, d, w))
            .collect();
        let mut table = CountTable::new();
        for ((w, m), cell) in jobs.into_iter().zip(cells) {
            table.insert(n, d, w, m, cell?);
        }
        Ok(table)
    }
}

/// Columns of the comparison report, in order.
pub const COMPARE_METHODS: [Method; 11] = [
    Method::Witt,
    Method::Ladder,
    Method::NecklaceBound,
    Method::Weight2,
    Method::Eq14,
    Method::Eq15,
    Method::Eq16,
    Method::ViaLie,
    Method::EnumLeft,
    Method::EnumFull,
    Method::Oracle,
];

/// The method every other count is checked against: WITT at `n = 2`,
/// LADDER when `n = d`, ORACLE otherwise.
pub fn reference_method(n: usize, d: u32) -> Method {
    if n == 2 {
        Method::Witt
    } else if n == d as usize {
        Method::Ladder
    } else {
        Method::Oracle
    }
}

/// One line of the comparison report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub n: usize,
    pub d: u32,
    pub w: u32,
    pub cells: Vec<(Method, Cell)>,
    pub flags: Vec<String>,
}

impl ReportRow {
    pub fn value(&self, m: Method) -> Option<&CountValue> {
        self.cells
            .iter()
            .find(|(k, _)| *k == m)
            .and_then(|(_, c)| c.value())
    }
}

/// Disagreements with the reference method, then counts above the bound.
pub fn discrepancy_flags(n: usize, d: u32, cells: &[(Method, Cell)]) -> Vec<String> {
    let get = |m: Method| {
        cells
            .iter()
            .find(|(k, _)| *k == m)
            .and_then(|(_, c)| c.value())
    };
    let mut flags = Vec::new();
    let reference = reference_method(n, d);
    if let Some(r) = get(reference) {
        for (m, c) in cells {
            if *m == reference || *m == Method::NecklaceBound {
                continue;
            }
            if let Some(v) = c.value() {
                if v.as_rational() != r.as_rational() {
                    flags.push(format!("{m}={v} vs {reference}={r}"));
                }
            }
        }
    }
    if let Some(bound) = get(Method::NecklaceBound) {
        for (m, c) in cells {
            if *m == Method::NecklaceBound {
                continue;
            }
            if let Some(v) = c.value() {
                if v.as_rational() > bound.as_rational() {
                    flags.push(format!("{m}={v} > {}={bound}", Method::NecklaceBound));
                }
            }
        }
    }
    flags
}

/// Comparison rows for `w = 1..=w_max`.
pub fn compare_rows(
    evaluator: &Evaluator,
    n: usize,
    d: u32,
    w_max: u32,
) -> Result<Vec<ReportRow>, Error> {
    let table = CountTable::fill(evaluator, n, d, w_max, &COMPARE_METHODS)?;
    Ok((1..=w_max)
        .map(|w| {
            let cells: Vec<(Method, Cell)> = COMPARE_METHODS
                .iter()
                .map(|&m| (m, table.get(n, d, w, m).cloned().expect("filled")))
                .collect();
            let flags = discrepancy_flags(n, d, &cells);
            ReportRow {
                n,
                d,
                w,
                cells,
                flags,
            }
        })
        .collect())
}

/// RFC 4180 field quoting.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header of the comparison CSV.
pub fn compare_header() -> String {
    let mut h = String::from("n,d,w");
    for m in COMPARE_METHODS {
        h.push(',');
        h.push_str(m.tag());
    }
    h.push_str(",flags");
    h
}

/// Comparison CSV. Cells without a value are empty fields; flags are joined
/// with `"; "`.
pub fn compare_csv(rows: &[ReportRow]) -> String {
    let mut out = compare_header();
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{},{},{}", r.n, r.d, r.w);
        for (_, c) in &r.cells {
            out.push(',');
            if let Some(v) = c.value() {
                out.push_str(&v.to_string());
            }
        }
        out.push(',');
        out.push_str(&csv_field(&r.flags.join("; ")));
        out.push('\n');
    }
    out
}

/// Lengths `n + (w-2)(n-1)` for `n = 2..=8`, `w = 1..=8`.
pub fn table2_csv() -> String {
    let mut out = String::from("n");
    for w in 1..=8 {
        let _ = write!(out, ",{w}");
    }
    out.push('\n');
    for n in 2..=8 {
        let _ = write!(out, "{n}");
        for w in 1..=8 {
            let _ = write!(out, ",{}", length_for_weight(n, w));
        }
        out.push('\n');
    }
    out
}

/// Coefficients `a_i` of `l_n^n(w) = sum_i a_i C(n, i)` for `w = 4..=10`.
pub fn table3_csv() -> String {
    let mut out = String::from("w");
    for i in 1..=8 {
        let _ = write!(out, ",a_{i}");
    }
    out.push('\n');
    for (k, row) in counting::LADDER_COEFFICIENTS.iter().enumerate() {
        let _ = write!(out, "{}", k + 4);
        for i in 0..8 {
            out.push(',');
            if let Some(a) = row.get(i) {
                let _ = write!(out, "{a}");
            }
        }
        out.push('\n');
    }
    out
}

/// `l_n^n(w)` for `n = d = 2..=10` (columns) and `w = 1..=10` (rows).
pub fn table4_csv() -> String {
    let mut out = String::from("# n=d columns; WITT for n=2, LADDER for n>=3\nw");
    for n in 2..=10 {
        let _ = write!(out, ",{n}");
    }
    out.push('\n');
    for w in 1..=10 {
        let _ = write!(out, "{w}");
        for n in 2..=10usize {
            let v = if n == 2 {
                counting::witt(2, w)
            } else {
                counting::ladder(n, w)
            };
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// Coefficients `c_s` of `C(d, n) = sum_s c_s l_d(s)` for `n = 2..=10`,
/// `s = 2..=10`, in lowest terms; empty where `s > n`.
pub fn table5_csv() -> String {
    let mut out = String::from("n");
    for s in 2..=10 {
        let _ = write!(out, ",l_d({s})");
    }
    out.push('\n');
    for n in 2..=10 {
        let e = counting::lie_expansion(n);
        let _ = write!(out, "{n}");
        for s in 2..=10 {
            out.push(',');
            if s <= n {
                let _ = write!(out, "{}", e.coefficient(s));
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Cell {
        Cell::Value(CountValue::Integer(v.into()))
    }

    #[test]
    fn reference_choice() {
        assert_eq!(reference_method(2, 5), Method::Witt);
        assert_eq!(reference_method(4, 4), Method::Ladder);
        assert_eq!(reference_method(3, 4), Method::Oracle);
    }

    #[test]
    fn flags_name_both_sides() {
        let cells = vec![
            (Method::Ladder, int(4)),
            (Method::NecklaceBound, int(10)),
            (Method::Eq14, int(11)),
            (Method::Oracle, Cell::Uncomputed("big".into())),
        ];
        assert_eq!(
            discrepancy_flags(4, 4, &cells),
            vec![
                "EQ14=11 vs LADDER=4".to_string(),
                "EQ14=11 > NECKLACE_BOUND=10".to_string()
            ]
        );
    }

    #[test]
    fn dispatcher_applicability() {
        let e = Evaluator::default();
        assert_eq!(
            e.evaluate(Method::Ladder, 3, 3, 4).unwrap().to_string(),
            "6"
        );
        assert_eq!(e.evaluate(Method::Witt, 2, 2, 7).unwrap().to_string(), "18");
        assert_eq!(
            e.evaluate(Method::Weight2, 4, 3, 2).unwrap().to_string(),
            "0"
        );
        assert!(matches!(
            e.cell(Method::Ladder, 3, 4, 2).unwrap(),
            Cell::NotApplicable(_)
        ));
        assert!(matches!(
            e.cell(Method::Eq14, 3, 3, 4).unwrap(),
            Cell::NotApplicable(_)
        ));
        let tight = Evaluator {
            oracle_ceiling: 5,
            ..Evaluator::default()
        };
        assert!(matches!(
            tight.cell(Method::Oracle, 2, 3, 4).unwrap(),
            Cell::Uncomputed(_)
        ));
    }

    #[test]
    fn csv_shapes() {
        let t2 = table2_csv();
        assert!(t2.lines().any(|l| l == "5,1,5,9,13,17,21,25,29"));
        let t5 = table5_csv();
        assert!(t5.lines().any(|l| l == "3,-1,1/2,,,,,,,"));
        assert!(table4_csv().lines().nth(1).unwrap().starts_with("w,2,3"));
        assert_eq!(table3_csv().lines().nth(1).unwrap(), "4,1,1,,,,,,");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }

    #[test]
    fn small_compare_report() {
        let rows = compare_rows(&Evaluator::default(), 3, 3, 2).unwrap();
        let csv = compare_csv(&rows);
        assert_eq!(csv.lines().next().unwrap(), compare_header());
        let r2 = &rows[1];
        for m in [
            Method::Ladder,
            Method::Weight2,
            Method::EnumLeft,
            Method::EnumFull,
            Method::Oracle,
        ] {
            assert_eq!(r2.value(m).unwrap().to_string(), "1", "{m}");
        }
        assert!(r2.flags.is_empty());
    }
}
