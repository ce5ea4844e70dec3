//! Bracket terms of a free n-Lie algebra.
//!
//! A [`Term`] is either a generator `x_k` or an n-ary bracket of terms. The
//! arity of a bracket is the number of its children; all brackets of one term
//! are expected to share it, which [`Term::check_arity`] enforces.
//!
//! Weights follow the lower-central-series grading: a generator has weight 1
//! and `weight([c_1, ..., c_n]) = sum(weight(c_i)) - (n - 2)`. With this rule
//! the number of generator occurrences of every term satisfies
//! `length - 1 = (weight - 1)(n - 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Generator `x_k` of the free algebra. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u32);

impl Generator {
    /// Returns `None` for index 0.
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(Generator(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("bracket has {found} components, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("arity must be at least 2, got {0}")]
    InvalidArity(usize),
    #[error("generator index must be at least 1")]
    ZeroGenerator,
}

/// Bracket node with cached weight and length. Build with [`Term::bracket`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bracket {
    weight: u32,
    length: u32,
    children: Box<[Term]>,
}

impl Bracket {
    pub fn children(&self) -> &[Term] {
        &self.children
    }
}

/// An n-ary bracket expression over indexed generators.
///
/// Cloning is cheap: bracket nodes are reference counted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf(Generator),
    Bracket(Arc<Bracket>),
}

impl Term {
    /// Leaf `x_index`. Panics on index 0; use [`Generator::new`] for checked input.
    pub fn x(index: u32) -> Term {
        Term::Leaf(Generator::new(index).expect("generator index must be >= 1"))
    }

    pub fn leaf(g: Generator) -> Term {
        Term::Leaf(g)
    }

    /// Bracket of the given children. Weight and length are cached on the node.
    ///
    /// Panics if fewer than two children are given.
    pub fn bracket(children: impl Into<Vec<Term>>) -> Term {
        let children: Vec<Term> = children.into();
        assert!(
            children.len() >= 2,
            "a bracket needs at least two components"
        );
        let k = children.len() as u32;
        let sum: u32 = children.iter().map(Term::weight).sum();
        let length = children.iter().map(Term::length).sum();
        Term::Bracket(Arc::new(Bracket {
            weight: sum - (k - 2),
            length,
            children: children.into_boxed_slice(),
        }))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Leaf(_))
    }

    pub fn generator(&self) -> Option<Generator> {
        match self {
            Term::Leaf(g) => Some(*g),
            Term::Bracket(_) => None,
        }
    }

    /// Children of a bracket; empty for a leaf.
    pub fn children(&self) -> &[Term] {
        match self {
            Term::Leaf(_) => &[],
            Term::Bracket(node) => &node.children,
        }
    }

    /// Grading weight: 1 for a generator, `sum - (n - 2)` for a bracket.
    pub fn weight(&self) -> u32 {
        match self {
            Term::Leaf(_) => 1,
            Term::Bracket(node) => node.weight,
        }
    }

    /// Number of generator occurrences, with multiplicity.
    pub fn length(&self) -> u32 {
        match self {
            Term::Leaf(_) => 1,
            Term::Bracket(node) => node.length,
        }
    }

    /// Largest generator index occurring in the term.
    pub fn max_generator(&self) -> u32 {
        match self {
            Term::Leaf(g) => g.index(),
            Term::Bracket(_) => self
                .children()
                .iter()
                .map(Term::max_generator)
                .max()
                .unwrap_or(0),
        }
    }

    /// Verifies every bracket node has exactly `n` children.
    pub fn check_arity(&self, n: usize) -> Result<(), TermError> {
        if n < 2 {
            return Err(TermError::InvalidArity(n));
        }
        match self {
            Term::Leaf(_) => Ok(()),
            Term::Bracket(_) => {
                let found = self.children().len();
                if found != n {
                    return Err(TermError::ArityMismatch { expected: n, found });
                }
                self.children().iter().try_for_each(|c| c.check_arity(n))
            }
        }
    }

    /// Subterm at a node path (sequence of child indices from the root).
    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Copy of `self` with the node at `path` replaced by `replacement`.
    pub fn replace_at(&self, path: &[usize], replacement: Term) -> Option<Term> {
        match path.split_first() {
            None => Some(replacement),
            Some((&i, rest)) => {
                let child = self.children().get(i)?;
                let new_child = child.replace_at(rest, replacement)?;
                let mut children = self.children().to_vec();
                children[i] = new_child;
                Some(Term::bracket(children))
            }
        }
    }

    /// Paths of all bracket nodes, parents before children.
    pub fn bracket_paths(&self) -> Vec<Vec<usize>> {
        fn walk(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if t.is_leaf() {
                return;
            }
            out.push(path.clone());
            for (i, c) in t.children().iter().enumerate() {
                path.push(i);
                walk(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Applies `f` to every generator index.
    pub fn map_generators(&self, f: &impl Fn(u32) -> u32) -> Term {
        match self {
            Term::Leaf(g) => Term::x(f(g.index())),
            Term::Bracket(_) => Term::bracket(
                self.children()
                    .iter()
                    .map(|c| c.map_generators(f))
                    .collect::<Vec<_>>(),
            ),
        }
    }

    /// True when every bracket has strictly descending children.
    pub fn is_canonical(&self) -> bool {
        let ch = self.children();
        ch.iter().all(Term::is_canonical) && ch.windows(2).all(|p| p[0] > p[1])
    }
}

/// Term order.
///
/// Lower weight first. Leaves compare by generator index. Brackets of equal
/// weight compare their component-weight profiles first (lexicographically,
/// from the left), then their components from right to left, recursively.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.weight().cmp(&other.weight()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match (self, other) {
            (Term::Leaf(a), Term::Leaf(b)) => a.cmp(b),
            (Term::Leaf(_), Term::Bracket(_)) => Ordering::Less,
            (Term::Bracket(_), Term::Leaf(_)) => Ordering::Greater,
            (Term::Bracket(a), Term::Bracket(b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                let (ca, cb) = (self.children(), other.children());
                let profile = ca.iter().map(Term::weight).cmp(cb.iter().map(Term::weight));
                if profile != Ordering::Equal {
                    return profile;
                }
                ca.iter()
                    .rev()
                    .zip(cb.iter().rev())
                    .map(|(x, y)| x.cmp(y))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or_else(|| ca.len().cmp(&cb.len()))
            }
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Term order as a free function, matching [`Ord for Term`](Term).
pub fn compare(a: &Term, b: &Term) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(g) => write!(f, "{g}"),
            Term::Bracket(_) => {
                f.write_str("[")?;
                for (i, c) in self.children().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sign attached to a canonical term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Result of sign canonicalization: either zero (some bracket had two equal
/// components) or a sign times a canonical term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SignedTerm {
    Zero,
    NonZero { sign: Sign, term: Term },
}

impl SignedTerm {
    /// -1, 0 or +1.
    pub fn sign(&self) -> i32 {
        match self {
            SignedTerm::Zero => 0,
            SignedTerm::NonZero { sign, .. } => sign.to_i32(),
        }
    }

    pub fn term(&self) -> Option<&Term> {
        match self {
            SignedTerm::Zero => None,
            SignedTerm::NonZero { term, .. } => Some(term),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SignedTerm::Zero)
    }
}

/// Sorts the children of every bracket into strictly descending term order,
/// tracking the parity of the permutation. A bracket with two equal
/// components annihilates the whole term.
pub fn canonicalize(t: &Term) -> SignedTerm {
    match canonical_parts(t) {
        Some((sign, term)) => SignedTerm::NonZero { sign, term },
        None => SignedTerm::Zero,
    }
}

fn canonical_parts(t: &Term) -> Option<(Sign, Term)> {
    if t.is_leaf() {
        return Some((Sign::Plus, t.clone()));
    }
    if t.is_canonical() {
        return Some((Sign::Plus, t.clone()));
    }
    let mut sign = Sign::Plus;
    let mut children = Vec::with_capacity(t.children().len());
    for c in t.children() {
        let (s, ct) = canonical_parts(c)?;
        sign = sign.times(s);
        children.push(ct);
    }
    sign = sign.times(sort_descending(&mut children)?);
    Some((sign, Term::bracket(children)))
}

/// Insertion sort into strictly descending order. Returns the permutation
/// sign, or `None` if two entries are equal.
pub(crate) fn sort_descending(items: &mut [Term]) -> Option<Sign> {
    let mut sign = Sign::Plus;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 {
            match items[j - 1].cmp(&items[j]) {
                Ordering::Equal => return None,
                Ordering::Less => {
                    items.swap(j - 1, j);
                    sign = sign.flip();
                    j -= 1;
                }
                Ordering::Greater => break,
            }
        }
    }
    if items.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some(sign)
}

/// Length of a weight-`w` term in an n-ary algebra: `n + (w - 2)(n - 1)`.
pub fn length_for_weight(n: usize, w: u32) -> u64 {
    // Written as 1 + (w - 1)(n - 1) so that w = 1 needs no signed arithmetic.
    1 + (w as u64 - 1) * (n as u64 - 1)
}

/// Weight of `t` after checking that every bracket has arity `n`.
pub fn weight(t: &Term, n: usize) -> Result<u32, TermError> {
    t.check_arity(n)?;
    Ok(t.weight())
}

/// Number of generator occurrences in `t`.
pub fn length(t: &Term) -> u32 {
    t.length()
}
