//! Exact graded dimensions of the free n-Lie algebra.
//!
//! The weight-`w` slice is spanned by the canonical nonzero bracket monomials
//! of weight `w`; skew-symmetry is built into canonical form. The Filippov
//! identity contributes one relation for each monomial, each bracket node and
//! each bracket component of that node:
//!
//! ```text
//! M - (-1)^k sum_i M[node <- [c_1, .., [c_i, rest], .., c_n]]
//! ```
//!
//! where component `k = [c_1..c_n]` was moved to the front of the node with
//! sign `(-1)^k` and `rest` are the other components. The dimension is the
//! monomial count minus the rank of these rows, computed by fraction-free
//! elimination over arbitrary-precision integers.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lincomb::LinearCombination;
use crate::rewrite::jacobi_summands;
use crate::shape::{binomial_u128, for_each_tuple, groups, weight_partitions};
use crate::term::{canonicalize, SignedTerm, Term};

/// Largest monomial basis the oracle will build unless told otherwise.
pub const DEFAULT_MONOMIAL_CEILING: usize = 200_000;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "NLIE_ORACLE_CACHE";

const CACHE_FILE: &str = "oracle_cells.jsonl";

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("weight-{w} slice has {count} monomials, above the ceiling of {ceiling}")]
    CeilingExceeded { w: u32, count: u128, ceiling: usize },
    #[error("combination mixes weights {0} and {1}")]
    MixedWeight(u32, u32),
    #[error("term {0} is not a monomial of the slice (arity or alphabet mismatch)")]
    NotInBasis(String),
    #[error("cache I/O: {0}")]
    Cache(#[from] std::io::Error),
    #[error("cache record: {0}")]
    CacheFormat(#[from] serde_json::Error),
}

/// Sparse vector, strictly increasing column indices, no zero entries.
pub type SparseVec = Vec<(usize, BigInt)>;

fn check_params(n: usize, d: u32, w: u32) -> Result<(), OracleError> {
    if n < 2 || d < 1 || w < 1 {
        return Err(OracleError::InvalidParameters(format!(
            "need n >= 2, d >= 1, w >= 1; got n={n}, d={d}, w={w}"
        )));
    }
    Ok(())
}

/// Number of canonical nonzero monomials of each weight `1..=w`, saturating.
pub fn monomial_counts(n: usize, d: u32, w: u32) -> Vec<u128> {
    let mut counts = vec![0u128; w as usize + 1];
    if w >= 1 {
        counts[1] = u128::from(d);
    }
    for v in 2..=w {
        let mut total: u128 = 0;
        for p in weight_partitions(v + n as u32 - 2, n, v - 1) {
            let prod = groups(&p).iter().fold(1u128, |acc, &(a, k)| {
                acc.saturating_mul(binomial_u128(counts[a as usize], k as u128))
            });
            total = total.saturating_add(prod);
        }
        counts[v as usize] = total;
    }
    counts
}

/// Canonical nonzero monomials of one weight, in ascending term order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub n: usize,
    pub d: u32,
    pub w: u32,
    monomials: Vec<Term>,
    index: HashMap<Term, usize>,
}

/// [`graded_monomials_capped`] with [`DEFAULT_MONOMIAL_CEILING`].
pub fn graded_monomials(n: usize, d: u32, w: u32) -> Result<MonomialBasis, OracleError> {
    graded_monomials_capped(n, d, w, DEFAULT_MONOMIAL_CEILING)
}

/// All canonical nonzero monomials of weight `w` over `x1..xd`. The size is
/// counted first and checked against `ceiling` before anything is built.
pub fn graded_monomials_capped(
    n: usize,
    d: u32,
    w: u32,
    ceiling: usize,
) -> Result<MonomialBasis, OracleError> {
    check_params(n, d, w)?;
    let counts = monomial_counts(n, d, w);
    for (v, &c) in counts.iter().enumerate().skip(1) {
        if c > ceiling as u128 {
            return Err(OracleError::CeilingExceeded {
                w: v as u32,
                count: c,
                ceiling,
            });
        }
    }
    // levels[v] descending, for use as child pools
    let mut levels: Vec<Vec<Term>> = vec![Vec::new(), (1..=d).rev().map(Term::x).collect()];
    for v in 2..=w {
        let mut level = Vec::with_capacity(counts[v as usize] as usize);
        for p in weight_partitions(v + n as u32 - 2, n, v - 1) {
            let pools: Vec<(&[Term], usize)> = groups(&p)
                .iter()
                .map(|&(a, k)| (levels[a as usize].as_slice(), k))
                .collect();
            let _ = for_each_tuple(&pools, &mut |children| {
                level.push(Term::bracket(children.to_vec()));
                ControlFlow::Continue(())
            });
        }
        level.sort_unstable_by(|a, b| b.cmp(a));
        levels.push(level);
    }
    let mut monomials = levels.swap_remove(w as usize);
    monomials.reverse();
    let index = monomials
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(MonomialBasis {
        n,
        d,
        w,
        monomials,
        index,
    })
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Term] {
        &self.monomials
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Integer coordinates of `c` up to a positive scalar (denominators
    /// cleared).
    pub fn vector(&self, c: &LinearCombination) -> Result<SparseVec, OracleError> {
        let lcm = c
            .iter()
            .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut out = Vec::with_capacity(c.len());
        for (t, q) in c.iter() {
            let col = self
                .position(t)
                .ok_or_else(|| OracleError::NotInBasis(t.to_string()))?;
            out.push((col, q.numer() * (&lcm / q.denom())));
        }
        out.sort_unstable_by_key(|e| e.0);
        Ok(out)
    }

    pub fn combination(&self, v: &SparseVec) -> LinearCombination {
        v.iter()
            .map(|(col, x)| {
                (
                    self.monomials[*col].clone(),
                    BigRational::from_integer(x.clone()),
                )
            })
            .collect()
    }
}

/// One Filippov instance: the monomial, the bracket node (as a path) and the
/// bracket component moved to the front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOrigin {
    pub monomial: usize,
    pub path: Vec<usize>,
    pub slot: usize,
}

/// Relation rows over a [`MonomialBasis`], each with its origin.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub columns: usize,
    pub rows: Vec<SparseVec>,
    pub provenance: Vec<RowOrigin>,
}

impl RelationMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rank(&self) -> usize {
        rank(self.rows.iter().cloned())
    }
}

fn sign_of(slot: usize) -> i64 {
    if slot.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn instance_row(basis: &MonomialBasis, m: &Term, path: &[usize], slot: usize) -> SparseVec {
    let node = m.subterm(path).expect("path from bracket_paths");
    let mut children = node.children().to_vec();
    let moved = children.remove(slot);
    children.insert(0, moved);
    let front = Term::bracket(children);
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    let mut add = |t: &Term, c: i64| {
        if let SignedTerm::NonZero { sign, term } = canonicalize(t) {
            let col = basis
                .position(&term)
                .expect("canonical monomial of the slice");
            *acc.entry(col).or_insert(0) += c * i64::from(sign.to_i32());
        }
    };
    add(m, 1);
    let s = sign_of(slot);
    for summand in jacobi_summands(&front) {
        let replaced = m.replace_at(path, summand).expect("valid path");
        add(&replaced, -s);
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(k, c)| (k, BigInt::from(c)))
        .collect()
}

/// Every Filippov instance of the slice, one row per (monomial, bracket node,
/// bracket component). Rows that vanish identically are dropped.
pub fn relation_rows(basis: &MonomialBasis) -> RelationMatrix {
    let per_monomial: Vec<Vec<(RowOrigin, SparseVec)>> = basis
        .monomials
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let mut out = Vec::new();
            for path in m.bracket_paths() {
                let node = m.subterm(&path).expect("path");
                for (slot, c) in node.children().iter().enumerate() {
                    if c.is_leaf() {
                        continue;
                    }
                    let row = instance_row(basis, m, &path, slot);
                    if !row.is_empty() {
                        out.push((
                            RowOrigin {
                                monomial: i,
                                path: path.clone(),
                                slot,
                            },
                            row,
                        ));
                    }
                }
            }
            out
        })
        .collect();
    let mut rows = Vec::new();
    let mut provenance = Vec::new();
    for (origin, row) in per_monomial.into_iter().flatten() {
        provenance.push(origin);
        rows.push(row);
    }
    RelationMatrix {
        columns: basis.len(),
        rows,
        provenance,
    }
}

fn content_normalize(v: &mut SparseVec) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    let flip = v.first().is_some_and(|(_, x)| x.is_negative());
    if !g.is_one() && !g.is_zero() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
    if flip {
        for (_, x) in v.iter_mut() {
            *x = -&*x;
        }
    }
}

/// `a*v - b*p` over sparse vectors.
fn combine(v: &SparseVec, a: &BigInt, p: &SparseVec, b: &BigInt) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let x = a * &v[i].1 - b * &p[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built incrementally; pivots keyed by leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates leading entries against existing pivots until the leading
    /// column is free or the vector is zero.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        content_normalize(&mut v);
        while let Some((lead, x)) = v.first() {
            let Some(p) = self.pivots.get(lead) else {
                break;
            };
            let y = &p[0].1;
            let g = x.gcd(y);
            let (a, b) = (y / &g, x / &g);
            v = combine(&v, &a, p, &b);
            content_normalize(&mut v);
        }
        v
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((lead, _)) => {
                let lead = *lead;
                self.pivots.insert(lead, r);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a family of sparse integer vectors.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// One computed cell, as stored in the cache.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCell {
    pub n: usize,
    pub d: u32,
    pub w: u32,
    pub basis_size: u64,
    pub rank: u64,
    pub dim: u64,
}

/// Whether a candidate basis spans and is independent modulo the relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub basis_size: usize,
    pub relation_rank: usize,
    pub candidates: usize,
    pub combined_rank: usize,
    /// Candidates plus relations span the whole slice.
    pub spans: bool,
    /// Candidates stay independent modulo the relations.
    pub independent: bool,
}

/// The slice for one weight, ready for dimension and membership queries.
#[derive(Clone, Debug)]
pub struct Slice {
    pub basis: MonomialBasis,
    pub relations: RelationMatrix,
    echelon: Echelon,
}

impl Slice {
    pub fn build(n: usize, d: u32, w: u32, ceiling: usize) -> Result<Self, OracleError> {
        let basis = graded_monomials_capped(n, d, w, ceiling)?;
        let relations = relation_rows(&basis);
        let mut echelon = Echelon::new();
        for r in &relations.rows {
            echelon.insert(r.clone());
        }
        Ok(Slice {
            basis,
            relations,
            echelon,
        })
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len() - self.rank()
    }

    pub fn cell(&self) -> OracleCell {
        OracleCell {
            n: self.basis.n,
            d: self.basis.d,
            w: self.basis.w,
            basis_size: self.basis.len() as u64,
            rank: self.rank() as u64,
            dim: self.dimension() as u64,
        }
    }

    pub fn contains(&self, c: &LinearCombination) -> Result<bool, OracleError> {
        Ok(self.echelon.contains(self.basis.vector(c)?))
    }

    /// Checks `terms` (canonical, of this weight) against the quotient.
    pub fn span_report(&self, terms: &[Term]) -> Result<SpanReport, OracleError> {
        let mut e = self.echelon.clone();
        for t in terms {
            let col = self
                .basis
                .position(t)
                .ok_or_else(|| OracleError::NotInBasis(t.to_string()))?;
            e.insert(vec![(col, BigInt::one())]);
        }
        let combined = e.rank();
        Ok(SpanReport {
            basis_size: self.basis.len(),
            relation_rank: self.rank(),
            candidates: terms.len(),
            combined_rank: combined,
            spans: combined == self.basis.len(),
            independent: combined - self.rank() == terms.len(),
        })
    }
}

/// [`graded_dimension_capped`] with [`DEFAULT_MONOMIAL_CEILING`].
pub fn graded_dimension(n: usize, d: u32, w: u32) -> Result<OracleCell, OracleError> {
    graded_dimension_capped(n, d, w, DEFAULT_MONOMIAL_CEILING)
}

/// `dim F^w / F^{w+1}` on `d` generators.
pub fn graded_dimension_capped(
    n: usize,
    d: u32,
    w: u32,
    ceiling: usize,
) -> Result<OracleCell, OracleError> {
    Ok(Slice::build(n, d, w, ceiling)?.cell())
}

/// Relation-span membership of a homogeneous combination. The zero
/// combination is a member.
pub fn membership(c: &LinearCombination, n: usize, d: u32) -> Result<bool, OracleError> {
    let w = match c.homogeneous_weight() {
        Err((a, b)) => return Err(OracleError::MixedWeight(a, b)),
        Ok(None) => return Ok(true),
        Ok(Some(w)) => w,
    };
    Slice::build(n, d, w, DEFAULT_MONOMIAL_CEILING)?.contains(c)
}

/// Slices keyed by weight for fixed `(n, d)`, built on first use.
#[derive(Debug)]
pub struct Oracle {
    pub n: usize,
    pub d: u32,
    pub ceiling: usize,
    slices: HashMap<u32, Slice>,
}

impl Oracle {
    pub fn new(n: usize, d: u32) -> Self {
        Oracle {
            n,
            d,
            ceiling: DEFAULT_MONOMIAL_CEILING,
            slices: HashMap::new(),
        }
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn slice(&mut self, w: u32) -> Result<&Slice, OracleError> {
        if !self.slices.contains_key(&w) {
            let s = Slice::build(self.n, self.d, w, self.ceiling)?;
            self.slices.insert(w, s);
        }
        Ok(&self.slices[&w])
    }

    pub fn dimension(&mut self, w: u32) -> Result<usize, OracleError> {
        Ok(self.slice(w)?.dimension())
    }

    pub fn contains(&mut self, c: &LinearCombination) -> Result<bool, OracleError> {
        match c.homogeneous_weight() {
            Err((a, b)) => Err(OracleError::MixedWeight(a, b)),
            Ok(None) => Ok(true),
            Ok(Some(w)) => self.slice(w)?.contains(c),
        }
    }
}

/// Append-only JSON-lines store of computed cells.
#[derive(Clone, Debug)]
pub struct OracleCache {
    path: PathBuf,
}

impl OracleCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self, OracleError> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(OracleCache {
            path: dir.as_ref().join(CACHE_FILE),
        })
    }

    /// Cache in the directory named by [`CACHE_ENV`], if set and non-empty.
    pub fn from_env() -> Result<Option<Self>, OracleError> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Ok(Some(Self::new(PathBuf::from(dir))?)),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&self, n: usize, d: u32, w: u32) -> Result<Option<OracleCell>, OracleError> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let cell: OracleCell = serde_json::from_str(&line)?;
            if (cell.n, cell.d, cell.w) == (n, d, w) {
                return Ok(Some(cell));
            }
        }
        Ok(None)
    }

    pub fn store(&self, cell: &OracleCell) -> Result<(), OracleError> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(cell)?)?;
        Ok(())
    }

    /// Cached cell, or compute and store it.
    pub fn get_or_compute(
        &self,
        n: usize,
        d: u32,
        w: u32,
        ceiling: usize,
    ) -> Result<OracleCell, OracleError> {
        if let Some(c) = self.lookup(n, d, w)? {
            return Ok(c);
        }
        let cell = graded_dimension_capped(n, d, w, ceiling)?;
        self.store(&cell)?;
        Ok(cell)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn monomial_examples() {
        let b = graded_monomials(3, 3, 2).unwrap();
        assert_eq!(b.monomials(), &[parse("[x3,x2,x1]", 3).unwrap()]);
        assert_eq!(graded_monomials(3, 3, 3).unwrap().len(), 3);
        assert_eq!(graded_monomials(2, 2, 2).unwrap().len(), 1);
        assert_eq!(graded_monomials(3, 2, 2).unwrap().len(), 0);
        for (n, d, w) in [(2, 3, 5), (3, 3, 4), (3, 4, 4), (4, 4, 3)] {
            assert_eq!(
                graded_monomials(n, d, w).unwrap().len() as u128,
                monomial_counts(n, d, w)[w as usize]
            );
        }
    }

    #[test]
    fn ceiling_is_checked_before_building() {
        assert!(matches!(
            graded_monomials_capped(2, 3, 5, 10),
            Err(OracleError::CeilingExceeded {
                w: 4,
                count: 30,
                ceiling: 10
            })
        ));
    }

    #[test]
    fn weight2_has_no_rows() {
        let b = graded_monomials(3, 3, 2).unwrap();
        assert!(relation_rows(&b).is_empty());
    }

    #[test]
    fn free_lie_dimensions() {
        let dims: Vec<u64> = (1..=5)
            .map(|w| graded_dimension(2, 2, w).unwrap().dim)
            .collect();
        assert_eq!(dims, vec![2, 1, 2, 3, 6]);
        assert_eq!(graded_dimension(2, 3, 3).unwrap().dim, 8);
    }

    #[test]
    fn small_n_lie_dimensions() {
        assert_eq!(graded_dimension(3, 4, 2).unwrap().dim, 4);
        assert_eq!(graded_dimension(3, 3, 3).unwrap().dim, 3);
    }

    #[test]
    fn elimination_on_small_integer_rows() {
        let v = |xs: &[(usize, i64)]| {
            xs.iter()
                .map(|&(c, x)| (c, BigInt::from(x)))
                .collect::<SparseVec>()
        };
        assert_eq!(
            rank([v(&[(0, 2), (1, 4)]), v(&[(0, 3), (1, 6)]), v(&[(1, 5)])]),
            2
        );
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 6), (2, -4)])));
        assert!(e.contains(v(&[(0, -9), (2, 6)])));
        assert!(!e.contains(v(&[(2, 1)])));
    }

    #[test]
    fn membership_and_errors() {
        let r = parse("[x3,x2,x1]", 3).unwrap();
        assert!(!membership(&LinearCombination::from_term(&r), 3, 3).unwrap());
        assert!(membership(&LinearCombination::new(), 3, 3).unwrap());
        let mixed =
            LinearCombination::from_term(&r).plus(&LinearCombination::from_term(&Term::x(1)));
        assert!(matches!(
            membership(&mixed, 3, 3),
            Err(OracleError::MixedWeight(..))
        ));
        let far = LinearCombination::from_term(&parse("[x9,x2,x1]", 3).unwrap());
        assert!(matches!(
            membership(&far, 3, 3),
            Err(OracleError::NotInBasis(_))
        ));
    }

    #[test]
    fn rows_are_members() {
        let s = Slice::build(2, 3, 4, DEFAULT_MONOMIAL_CEILING).unwrap();
        for row in s.relations.rows.iter().take(20) {
            assert!(s.contains(&s.basis.combination(row)).unwrap());
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OracleCache::new(dir.path()).unwrap();
        assert_eq!(cache.lookup(2, 2, 3).unwrap(), None);
        let cell = cache.get_or_compute(2, 2, 3, 1000).unwrap();
        assert_eq!(cell.dim, 2);
        assert_eq!(cache.lookup(2, 2, 3).unwrap(), Some(cell));
        let text = fs::read_to_string(cache.path()).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.contains("\"basis_size\""));
    }
}
