//! Basic commutators: the rule predicate and exhaustive enumeration.
//!
//! A term is basic when it is a generator, a bracket of strictly descending
//! generators, or a bracket `[c_1, ..., c_n]` of basic children with
//! non-increasing weights (equal weights strictly descending) such that for
//! every weight descent `w_s > w_{s+1}` at a bracket child `c_s`, the last
//! component of `c_s` is at most the last child `c_n`.
//!
//! Two readings are provided, see [`EnumerationMode`].

use std::cmp::Ordering;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::shape::{for_each_tuple, groups, weight_partitions};
use crate::term::{length_for_weight, Term, TermError};

/// Default ceiling on the number of terms held at any one weight.
pub const DEFAULT_ENUMERATION_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnumerationMode {
    /// Rules 1-3 with the last-component condition at every weight descent.
    FullRule3,
    /// Left-normed brackets `[c, y_2, ..., y_n]` with generator tails, where
    /// the tail `(c_2, ..., c_n)` of `c` is at most `(y_2, ..., y_n)` compared
    /// as strings from right to left.
    LeftNormed,
}

impl EnumerationMode {
    pub fn tag(self) -> &'static str {
        match self {
            EnumerationMode::FullRule3 => "ENUM_FULL",
            EnumerationMode::LeftNormed => "ENUM_LEFT",
        }
    }
}

/// A basic commutator with its weight and length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicCommutator {
    pub term: Term,
    pub weight: u32,
    pub length: u32,
}

impl BasicCommutator {
    fn new(term: Term) -> Self {
        BasicCommutator {
            weight: term.weight(),
            length: term.length(),
            term,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("term {0} is not in canonical form")]
    NotCanonical(String),
    #[error(transparent)]
    Arity(#[from] TermError),
    #[error("enumeration exceeded the cap of {cap} terms at weight {weight}")]
    CapExceeded { cap: usize, weight: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Whether the canonical term `t` is basic under `mode`.
pub fn is_basic(t: &Term, n: usize, mode: EnumerationMode) -> Result<bool, BasisError> {
    t.check_arity(n)?;
    if !t.is_canonical() {
        return Err(BasisError::NotCanonical(t.to_string()));
    }
    Ok(is_basic_canonical(t, mode))
}

/// [`is_basic`] without the canonical-form check.
pub(crate) fn is_basic_canonical(t: &Term, mode: EnumerationMode) -> bool {
    if t.is_leaf() {
        return true;
    }
    t.children().iter().all(|c| is_basic_canonical(c, mode)) && node_is_basic(t.children(), mode)
}

/// The rule checks at one node, assuming the children are basic and the
/// child list is strictly descending.
pub(crate) fn node_is_basic(children: &[Term], mode: EnumerationMode) -> bool {
    if children.iter().all(Term::is_leaf) {
        return true;
    }
    match mode {
        EnumerationMode::FullRule3 => first_violation(children).is_none(),
        EnumerationMode::LeftNormed => {
            if !children[1..].iter().all(Term::is_leaf) {
                return false;
            }
            tail_cmp(children[0].children(), children) != Ordering::Greater
        }
    }
}

/// Position `s` of the first weight descent at a bracket child whose last
/// component exceeds the last child, if any. Also reports non-descending
/// weights or non-strict order, which canonical input never has.
pub(crate) fn first_violation(children: &[Term]) -> Option<usize> {
    let last = children.last()?;
    for s in 0..children.len() - 1 {
        let (a, b) = (&children[s], &children[s + 1]);
        if a.weight() < b.weight() || (a.weight() == b.weight() && a <= b) {
            return Some(s);
        }
        if a.weight() > b.weight() && !a.is_leaf() && a.children().last()? > last {
            return Some(s);
        }
    }
    None
}

/// Compares `inner[1..]` with `outer[1..]` from the right.
fn tail_cmp(inner: &[Term], outer: &[Term]) -> Ordering {
    inner[1..]
        .iter()
        .rev()
        .zip(outer[1..].iter().rev())
        .map(|(a, b)| a.cmp(b))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

fn check_params(n: usize, d: u32, w: u32) -> Result<(), BasisError> {
    if n < 2 || d < 1 || w < 1 {
        return Err(BasisError::InvalidParameters(format!(
            "need n >= 2, d >= 1, w >= 1; got n={n}, d={d}, w={w}"
        )));
    }
    Ok(())
}

/// Builds basic commutators weight by weight, keeping every level in
/// descending order so it can serve as a pool of children.
pub struct Enumerator {
    n: usize,
    d: u32,
    mode: EnumerationMode,
    cap: usize,
    levels: Vec<Vec<Term>>,
}

impl Enumerator {
    pub fn new(n: usize, d: u32, mode: EnumerationMode, cap: usize) -> Result<Self, BasisError> {
        check_params(n, d, 1)?;
        Ok(Enumerator {
            n,
            d,
            mode,
            cap,
            levels: vec![Vec::new()],
        })
    }

    /// Basic commutators of weight `w`, strictly descending.
    pub fn level(&mut self, w: u32) -> Result<&[Term], BasisError> {
        while self.levels.len() <= w as usize {
            let next = self.levels.len() as u32;
            let level = self.build(next)?;
            self.levels.push(level);
        }
        Ok(&self.levels[w as usize])
    }

    fn build(&mut self, w: u32) -> Result<Vec<Term>, BasisError> {
        if w == 1 {
            return Ok((1..=self.d).rev().map(Term::x).collect());
        }
        let mut out = Vec::new();
        let cap = self.cap;
        let mode = self.mode;
        self.visit_candidates(w, &mut |children| {
            if node_is_basic(children, mode) {
                if out.len() >= cap {
                    return ControlFlow::Break(());
                }
                out.push(Term::bracket(children.to_vec()));
            }
            ControlFlow::Continue(())
        })?;
        if out.len() >= cap && self.count_exceeds(w, cap)? {
            return Err(BasisError::CapExceeded { cap, weight: w });
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    fn count_exceeds(&mut self, w: u32, cap: usize) -> Result<bool, BasisError> {
        Ok(self.count_level(w)? > cap as u128)
    }

    /// Calls `f` with every strictly descending child tuple of total weight
    /// `w + n - 2` drawn from lower levels.
    fn visit_candidates<F>(&mut self, w: u32, f: &mut F) -> Result<(), BasisError>
    where
        F: FnMut(&[Term]) -> ControlFlow<()>,
    {
        let n = self.n;
        let total = w + n as u32 - 2;
        let partitions: Vec<Vec<u32>> = match self.mode {
            EnumerationMode::FullRule3 => weight_partitions(total, n, w - 1),
            EnumerationMode::LeftNormed if w == 2 => vec![vec![1; n]],
            EnumerationMode::LeftNormed => {
                let mut p = vec![1; n];
                p[0] = w - 1;
                vec![p]
            }
        };
        for w_child in 1..w {
            self.level(w_child)?;
        }
        for p in partitions {
            let gs = groups(&p);
            let pools: Vec<(&[Term], usize)> = gs
                .iter()
                .map(|&(a, k)| (self.levels[a as usize].as_slice(), k))
                .collect();
            if for_each_tuple(&pools, f).is_break() {
                break;
            }
        }
        Ok(())
    }

    /// Number of basic commutators of weight `w` without storing them.
    pub fn count_level(&mut self, w: u32) -> Result<u128, BasisError> {
        if let Some(level) = self.levels.get(w as usize) {
            if w >= 1 {
                return Ok(level.len() as u128);
            }
        }
        if w == 1 {
            return Ok(self.d as u128);
        }
        let mode = self.mode;
        let mut count: u128 = 0;
        self.visit_candidates(w, &mut |children| {
            if node_is_basic(children, mode) {
                count += 1;
            }
            ControlFlow::Continue(())
        })?;
        Ok(count)
    }
}

/// Basic commutators of weight `w` on `d` generators, ascending in term order.
pub fn enumerate_basic(
    n: usize,
    d: u32,
    w: u32,
    mode: EnumerationMode,
) -> Result<Vec<BasicCommutator>, BasisError> {
    enumerate_basic_capped(n, d, w, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_basic_capped(
    n: usize,
    d: u32,
    w: u32,
    mode: EnumerationMode,
    cap: usize,
) -> Result<Vec<BasicCommutator>, BasisError> {
    check_params(n, d, w)?;
    let mut e = Enumerator::new(n, d, mode, cap)?;
    Ok(e.level(w)?
        .iter()
        .rev()
        .cloned()
        .map(BasicCommutator::new)
        .collect())
}

/// Number of basic commutators of weight `w`.
///
/// Left-normed counts use a prefix-sum recursion over generator tails and
/// never build terms. Full-rule counts build the lower weights only.
pub fn count_by_enumeration(
    n: usize,
    d: u32,
    w: u32,
    mode: EnumerationMode,
) -> Result<u128, BasisError> {
    count_by_enumeration_capped(n, d, w, mode, DEFAULT_ENUMERATION_CAP)
}

/// [`count_by_enumeration`] with `cap` bounding each stored lower level.
pub fn count_by_enumeration_capped(
    n: usize,
    d: u32,
    w: u32,
    mode: EnumerationMode,
    cap: usize,
) -> Result<u128, BasisError> {
    check_params(n, d, w)?;
    match mode {
        EnumerationMode::LeftNormed => Ok(count_left_normed(n, d, w)),
        EnumerationMode::FullRule3 => Enumerator::new(n, d, mode, cap)?.count_level(w),
    }
}

/// Left-normed count by tails. A weight-`w` left-normed basic commutator is
/// determined by its weight-`w-1` first child and a descending tail `Y` of
/// `n-1` generators no smaller than the child's tail, so the number with tail
/// `Y` is the prefix sum of the previous weight's counts up to `Y`.
fn count_left_normed(n: usize, d: u32, w: u32) -> u128 {
    if w == 1 {
        return d as u128;
    }
    let k = n - 1;
    // descending k-subsets of 1..=d ordered by right-to-left comparison
    let mut tails: Vec<Vec<u32>> = Vec::new();
    fn subsets(d: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let hi = cur.last().map_or(d, |&l| l - 1);
        for v in (1..=hi).rev() {
            if (v as usize) < k - cur.len() {
                break;
            }
            cur.push(v);
            subsets(d, k, cur, out);
            cur.pop();
        }
    }
    subsets(d, k, &mut Vec::new(), &mut tails);
    tails.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    // weight 2: [b_1, tail] with b_1 > tail[0]
    let mut counts: Vec<u128> = tails.iter().map(|t| (d - t[0]) as u128).collect();
    for _ in 3..=w {
        let mut acc: u128 = 0;
        for c in counts.iter_mut() {
            acc += *c;
            *c = acc;
        }
    }
    counts.iter().sum()
}

/// Checks the per-term invariants of an enumerated list.
pub fn validate_listing(list: &[BasicCommutator], n: usize, w: u32) -> bool {
    list.iter().all(|b| {
        b.term.is_canonical() && b.weight == w && b.length as u64 == length_for_weight(n, w)
    }) && list.windows(2).all(|p| p[0].term < p[1].term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use EnumerationMode::*;

    fn strs(list: &[BasicCommutator]) -> Vec<String> {
        list.iter().map(|b| b.term.to_string()).collect()
    }

    #[test]
    fn predicate_examples() {
        assert!(is_basic(&parse("[x3,x2,x1]", 3).unwrap(), 3, FullRule3).unwrap());
        assert!(is_basic(&parse("[[x3,x2,x1],x2,x1]", 3).unwrap(), 3, FullRule3).unwrap());
        assert!(matches!(
            is_basic(&parse("[[x3,x2,x1],x1,x2]", 3).unwrap(), 3, FullRule3),
            Err(BasisError::NotCanonical(_))
        ));
    }

    #[test]
    fn last_component_condition() {
        // last component x2 of the inner bracket exceeds the last child x1
        let t = parse("[[x3,x2],x1]", 2).unwrap();
        assert!(!is_basic(&t, 2, FullRule3).unwrap());
        let t = parse("[[x3,x1],x2]", 2).unwrap();
        assert!(is_basic(&t, 2, FullRule3).unwrap());
    }

    #[test]
    fn left_normed_compares_whole_tails() {
        // n = 3, d = 3: tails (x3,x2) then (x2,x1): last components 2 > 1
        let t = parse("[[[x3,x2,x1],x3,x2],x2,x1]", 3).unwrap();
        assert!(!is_basic(&t, 3, LeftNormed).unwrap());
        // tails (x3,x1) then (x2,x1): equal last components, 3 > 2 fails the
        // string comparison but passes the last-component rule
        let t = parse("[[[x3,x2,x1],x3,x1],x2,x1]", 3).unwrap();
        assert!(!is_basic(&t, 3, LeftNormed).unwrap());
        assert!(is_basic(&t, 3, FullRule3).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let l = enumerate_basic(3, 3, 2, FullRule3).unwrap();
        assert_eq!(strs(&l), vec!["[x3,x2,x1]"]);
        let l = enumerate_basic(3, 3, 3, FullRule3).unwrap();
        assert_eq!(
            strs(&l),
            vec![
                "[[x3,x2,x1],x2,x1]",
                "[[x3,x2,x1],x3,x1]",
                "[[x3,x2,x1],x3,x2]"
            ]
        );
        assert!(enumerate_basic(3, 2, 2, FullRule3).unwrap().is_empty());
        assert!(enumerate_basic(3, 2, 5, LeftNormed).unwrap().is_empty());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_by_enumeration(4, 4, 4, LeftNormed).unwrap(), 10);
        assert_eq!(count_by_enumeration(3, 3, 5, LeftNormed).unwrap(), 10);
        assert_eq!(count_by_enumeration(2, 2, 3, FullRule3).unwrap(), 2);
    }

    #[test]
    fn counting_matches_listing() {
        for n in 2..=4 {
            for d in 1..=5u32 {
                for w in 1..=5u32 {
                    for mode in [FullRule3, LeftNormed] {
                        if n == 2 && d == 5 && w == 5 {
                            continue;
                        }
                        let list = enumerate_basic(n, d, w, mode).unwrap();
                        assert!(validate_listing(&list, n, w));
                        assert_eq!(
                            count_by_enumeration(n, d, w, mode).unwrap(),
                            list.len() as u128,
                            "n={n} d={d} w={w} {mode:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_reported() {
        // weight 3 has 8 terms, weight 4 has 18
        assert_eq!(
            enumerate_basic_capped(2, 3, 5, FullRule3, 10),
            Err(BasisError::CapExceeded { cap: 10, weight: 4 })
        );
        assert_eq!(
            enumerate_basic_capped(2, 3, 3, FullRule3, 8).unwrap().len(),
            8
        );
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            enumerate_basic(1, 3, 2, FullRule3),
            Err(BasisError::InvalidParameters(_))
        ));
        assert!(matches!(
            count_by_enumeration(3, 0, 2, FullRule3),
            Err(BasisError::InvalidParameters(_))
        ));
    }
}
