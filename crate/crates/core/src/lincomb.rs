//! Exact formal sums of canonical terms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::term::{canonicalize, SignedTerm, Term};

/// Rational-weighted sum of canonical terms, keyed in term order.
///
/// Zero coefficients are never stored. Terms are canonicalized on insertion,
/// so `[x1,x2]` and `-[x2,x1]` land on the same key.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LinearCombination {
    terms: BTreeMap<Term, BigRational>,
}

impl LinearCombination {
    pub fn new() -> Self {
        Self::default()
    }

    /// `1 * t`, canonicalized (possibly zero).
    pub fn from_term(t: &Term) -> Self {
        let mut lc = Self::new();
        lc.add_term(t, &BigRational::one());
        lc
    }

    /// Adds `coeff * t`. `t` need not be canonical.
    pub fn add_term(&mut self, t: &Term, coeff: &BigRational) {
        if let SignedTerm::NonZero { sign, term } = canonicalize(t) {
            let c = coeff * BigRational::from_integer(BigInt::from(sign.to_i32()));
            self.add_canonical(term, c);
        }
    }

    /// Adds `coeff * t` for a term already in canonical form.
    pub fn add_canonical(&mut self, t: Term, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinearCombination, scale: &BigRational) {
        if scale.is_zero() {
            return;
        }
        for (t, c) in &other.terms {
            self.add_canonical(t.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &BigRational) -> LinearCombination {
        let mut out = LinearCombination::new();
        out.add_scaled(self, scale);
        out
    }

    pub fn plus(&self, other: &LinearCombination) -> LinearCombination {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        out
    }

    pub fn minus(&self, other: &LinearCombination) -> LinearCombination {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &Term) -> Option<&BigRational> {
        self.terms.get(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &BigRational)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.keys()
    }

    /// Common weight of all terms, `None` when empty, `Err` listing two
    /// conflicting weights otherwise.
    pub fn homogeneous_weight(&self) -> Result<Option<u32>, (u32, u32)> {
        let mut it = self.terms.keys().map(Term::weight);
        let Some(first) = it.next() else {
            return Ok(None);
        };
        match it.find(|w| *w != first) {
            Some(other) => Err((first, other)),
            None => Ok(Some(first)),
        }
    }
}

impl FromIterator<(Term, BigRational)> for LinearCombination {
    fn from_iter<I: IntoIterator<Item = (Term, BigRational)>>(iter: I) -> Self {
        let mut lc = LinearCombination::new();
        for (t, c) in iter {
            lc.add_term(&t, &c);
        }
        lc
    }
}

/// Writes `+1*[x3,x2,x1] -1/2*[x3,x2,x1]`, or `0` for the empty sum.
impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}*{t}", c.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn canonical_keys_and_cancellation() {
        let a = Term::bracket(vec![Term::x(1), Term::x(2), Term::x(3)]);
        let b = Term::bracket(vec![Term::x(3), Term::x(2), Term::x(1)]);
        let mut lc = LinearCombination::new();
        lc.add_term(&a, &r(2));
        assert_eq!(lc.to_string(), "-2*[x3,x2,x1]");
        lc.add_term(&b, &r(2));
        assert!(lc.is_zero());
        assert_eq!(lc.to_string(), "0");
    }

    #[test]
    fn zero_terms_are_dropped() {
        let z = Term::bracket(vec![Term::x(1), Term::x(1)]);
        assert!(LinearCombination::from_term(&z).is_zero());
    }

    #[test]
    fn rational_display() {
        let b = Term::bracket(vec![Term::x(2), Term::x(1)]);
        let lc: LinearCombination = [(b, BigRational::new(1.into(), 2.into()))]
            .into_iter()
            .collect();
        assert_eq!(lc.to_string(), "+1/2*[x2,x1]");
    }

    #[test]
    fn mixed_weight_detection() {
        let mut lc = LinearCombination::from_term(&Term::x(1));
        assert_eq!(lc.homogeneous_weight(), Ok(Some(1)));
        lc.add_term(&Term::bracket(vec![Term::x(2), Term::x(1)]), &r(1));
        assert!(lc.homogeneous_weight().is_err());
    }
}
