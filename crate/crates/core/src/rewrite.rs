//! The collecting process: rewrite any bracket term into a linear combination
//! of basic commutators ([`EnumerationMode::FullRule3`]).
//!
//! Two moves are used. Case A sorts the components of a bracket with a sign
//! (skew-symmetry) and drops brackets with repeated components. Case B picks
//! the first weight descent `s` whose bracket child `c_s = [c'_1, ..., c'_n]`
//! breaks the last-component rule, moves it to the front and expands with the
//! Filippov identity
//!
//! ```text
//! [[c'_1, ..., c'_n], y_2, ..., y_n] = sum_i [c'_1, ..., [c'_i, y_2, ..., y_n], ..., c'_n]
//! ```
//!
//! then collects every summand again. Termination is not known in general, so
//! the number of case B expansions is bounded by a step budget; running out
//! leaves the offending terms in place and sets [`RewriteTrace::capped`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::basis::{first_violation, is_basic_canonical, EnumerationMode};
use crate::lincomb::LinearCombination;
use crate::term::{canonicalize, Sign, SignedTerm, Term, TermError};

/// Default number of case B expansions allowed per call.
pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error(transparent)]
    Arity(#[from] TermError),
    #[error("path {0:?} does not address a node of the term")]
    InvalidPath(Vec<usize>),
    #[error("node at {0:?} is not a bracket whose first component is a bracket")]
    NotJacobiShape(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewriteRule {
    /// Components reordered with a sign.
    Skew,
    /// Filippov expansion.
    Jacobi,
    /// Repeated component; the term vanished.
    Zero,
}

/// One logged move. `position` is the node path inside the term being reduced
/// at that point; `before`/`after` count the terms going in and coming out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub position: Vec<usize>,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
    /// The step budget ran out; the output may hold non-basic terms.
    pub capped: bool,
}

impl RewriteTrace {
    pub fn count(&self, rule: RewriteRule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }
}

fn rational(sign: Sign) -> BigRational {
    BigRational::from_integer(BigInt::from(sign.to_i32()))
}

/// Filippov expansion at the node `path` of `t`, whose first component must
/// be a bracket. Each summand is canonicalized.
pub fn expand_jacobi(
    t: &Term,
    path: &[usize],
    n: usize,
) -> Result<LinearCombination, RewriteError> {
    t.check_arity(n)?;
    let node = t
        .subterm(path)
        .ok_or_else(|| RewriteError::InvalidPath(path.to_vec()))?;
    if node.is_leaf() || node.children()[0].is_leaf() {
        return Err(RewriteError::NotJacobiShape(path.to_vec()));
    }
    let mut out = LinearCombination::new();
    for summand in jacobi_summands(node) {
        let replaced = t.replace_at(path, summand).expect("path checked above");
        out.add_term(&replaced, &BigRational::one());
    }
    Ok(out)
}

/// `[[c_1..c_n], y_2..y_n]` to the n terms `[c_1, .., [c_i, y_2..y_n], .., c_n]`.
pub(crate) fn jacobi_summands(node: &Term) -> Vec<Term> {
    let (inner, ys) = node.children().split_first().expect("bracket");
    let inner = inner.children();
    (0..inner.len())
        .map(|i| {
            let mut pushed = Vec::with_capacity(ys.len() + 1);
            pushed.push(inner[i].clone());
            pushed.extend_from_slice(ys);
            let mut outer = inner.to_vec();
            outer[i] = Term::bracket(pushed);
            Term::bracket(outer)
        })
        .collect()
}

struct Collector {
    budget: usize,
    used: usize,
    trace: RewriteTrace,
    memo: HashMap<Term, LinearCombination>,
}

impl Collector {
    fn new(budget: usize) -> Self {
        Collector {
            budget,
            used: 0,
            trace: RewriteTrace::default(),
            memo: HashMap::new(),
        }
    }

    fn log(&mut self, rule: RewriteRule, position: &[usize], before: usize, after: usize) {
        self.trace.steps.push(RewriteStep {
            rule,
            position: position.to_vec(),
            before,
            after,
        });
    }

    /// Case A at the top, then reduce the canonical term.
    fn collect(&mut self, t: &Term, path: &[usize]) -> LinearCombination {
        match canonicalize(t) {
            SignedTerm::Zero => {
                self.log(RewriteRule::Zero, path, 1, 0);
                LinearCombination::new()
            }
            SignedTerm::NonZero { sign, term } => {
                if &term != t {
                    self.log(RewriteRule::Skew, path, 1, 1);
                }
                let reduced = self.collect_canonical(&term, path);
                match sign {
                    Sign::Plus => reduced,
                    Sign::Minus => reduced.scaled(&rational(sign)),
                }
            }
        }
    }

    /// Collects the children first, expands the bracket multilinearly, and
    /// reduces each resulting bracket at its root.
    fn collect_canonical(&mut self, t: &Term, path: &[usize]) -> LinearCombination {
        if t.is_leaf() || is_basic_canonical(t, EnumerationMode::FullRule3) {
            return LinearCombination::from_term(t);
        }
        if let Some(done) = self.memo.get(t) {
            return done.clone();
        }
        let mut child_sums = Vec::with_capacity(t.children().len());
        let mut sub = path.to_vec();
        for (i, c) in t.children().iter().enumerate() {
            sub.push(i);
            child_sums.push(self.collect_canonical(c, &sub));
            sub.pop();
        }
        let mut out = LinearCombination::new();
        let mut picks: Vec<(Term, BigRational)> = Vec::with_capacity(child_sums.len());
        self.expand_product(&child_sums, &mut picks, path, &mut out);
        if !self.trace.capped {
            self.memo.insert(t.clone(), out.clone());
        }
        out
    }

    fn expand_product(
        &mut self,
        sums: &[LinearCombination],
        picks: &mut Vec<(Term, BigRational)>,
        path: &[usize],
        out: &mut LinearCombination,
    ) {
        if picks.len() == sums.len() {
            let children: Vec<Term> = picks.iter().map(|(t, _)| t.clone()).collect();
            let coeff = picks.iter().fold(BigRational::one(), |acc, (_, c)| acc * c);
            let bracket = Term::bracket(children);
            match canonicalize(&bracket) {
                SignedTerm::Zero => self.log(RewriteRule::Zero, path, 1, 0),
                SignedTerm::NonZero { sign, term } => {
                    if term != bracket {
                        self.log(RewriteRule::Skew, path, 1, 1);
                    }
                    let reduced = self.reduce_root(&term, path);
                    out.add_scaled(&reduced, &(coeff * rational(sign)));
                }
            }
            return;
        }
        let k = picks.len();
        let entries: Vec<(Term, BigRational)> = sums[k]
            .iter()
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        for entry in entries {
            picks.push(entry);
            self.expand_product(sums, picks, path, out);
            picks.pop();
        }
    }

    /// `t` is canonical with basic children.
    fn reduce_root(&mut self, t: &Term, path: &[usize]) -> LinearCombination {
        let Some(s) = first_violation(t.children()) else {
            return LinearCombination::from_term(t);
        };
        if self.used >= self.budget {
            self.trace.capped = true;
            return LinearCombination::from_term(t);
        }
        self.used += 1;
        // move component s to the front: an (s+1)-cycle, sign (-1)^s
        let mut children = t.children().to_vec();
        let moved = children.remove(s);
        children.insert(0, moved);
        let sign = if s % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let front = Term::bracket(children);
        let summands = jacobi_summands(&front);
        let mut out = LinearCombination::new();
        for summand in &summands {
            let part = self.collect(summand, path);
            out.add_scaled(&part, &rational(sign));
        }
        self.log(RewriteRule::Jacobi, path, 1, out.len());
        out
    }
}

/// Rewrites `t` into basic commutators.
pub fn collect(
    t: &Term,
    n: usize,
    budget: usize,
) -> Result<(LinearCombination, RewriteTrace), RewriteError> {
    t.check_arity(n)?;
    let mut c = Collector::new(budget);
    let out = c.collect(t, &[]);
    Ok((out, c.trace))
}

/// Termwise [`collect`] with exact merging of coefficients.
pub fn collect_lc(
    lc: &LinearCombination,
    n: usize,
    budget: usize,
) -> Result<(LinearCombination, RewriteTrace), RewriteError> {
    for t in lc.terms() {
        t.check_arity(n)?;
    }
    let mut c = Collector::new(budget);
    let mut out = LinearCombination::new();
    for (t, coeff) in lc.iter() {
        let part = c.collect(t, &[]);
        out.add_scaled(&part, coeff);
    }
    Ok((out, c.trace))
}
