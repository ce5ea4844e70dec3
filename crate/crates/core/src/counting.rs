//! Closed forms, recursions and bounds for the number of basic commutators
//! `l_d^n(w)`, all in exact arithmetic.
//!
//! Binomials with out-of-range arguments are 0 throughout.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A counting method, named by the tag used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    Witt,
    NecklaceBound,
    Weight2,
    Ladder,
    LadderRecursive,
    Eq14,
    Eq15,
    Eq16,
    EnumFull,
    EnumLeft,
    Oracle,
    ViaLie,
}

impl Method {
    pub const ALL: [Method; 12] = [
        Method::Witt,
        Method::NecklaceBound,
        Method::Weight2,
        Method::Ladder,
        Method::LadderRecursive,
        Method::Eq14,
        Method::Eq15,
        Method::Eq16,
        Method::EnumFull,
        Method::EnumLeft,
        Method::Oracle,
        Method::ViaLie,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Witt => "WITT",
            Method::NecklaceBound => "NECKLACE_BOUND",
            Method::Weight2 => "WEIGHT2",
            Method::Ladder => "LADDER",
            Method::LadderRecursive => "LADDER_RECURSIVE",
            Method::Eq14 => "EQ14",
            Method::Eq15 => "EQ15",
            Method::Eq16 => "EQ16",
            Method::EnumFull => "ENUM_FULL",
            Method::EnumLeft => "ENUM_LEFT",
            Method::Oracle => "ORACLE",
            Method::ViaLie => "VIA_LIE",
        }
    }

    /// Case-insensitive; accepts `-` for `_`.
    pub fn from_tag(s: &str) -> Option<Method> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Method::ALL.into_iter().find(|m| m.tag() == norm)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("{method} is not defined for n={n}, d={d}, w={w}: {reason}")]
    NotApplicable {
        method: Method,
        n: usize,
        d: u32,
        w: u32,
        reason: String,
    },
    #[error("index j={j} lies in no range C(k-1,n-1)+1 <= j <= C(k,n-1) with n-1 <= k <= d-1")]
    MalformedBracket { j: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Möbius function.
pub fn moebius(k: u64) -> i8 {
    assert!(k >= 1, "moebius is defined on positive integers");
    let mut k = k;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= k {
        if k.is_multiple_of(p) {
            k /= p;
            if k.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(m: u64) -> impl Iterator<Item = u64> {
    (1..=m).filter(move |r| m.is_multiple_of(*r))
}

/// `C(n, k)` for a big top argument; 0 when `k < 0` or `n < k` or `n < 0`.
pub fn binomial_big(n: &BigInt, k: i64) -> BigInt {
    if k < 0 || n.is_negative() || *n < BigInt::from(k) {
        return BigInt::zero();
    }
    let k = k.min((n - BigInt::from(k)).to_i64().unwrap_or(k));
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, k)`, 0 outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    binomial_big(&BigInt::from(n), k)
}

/// `(1/m) * sum_{r | m} mu(r) d^{m/r}` for a big `d`.
fn necklace_count(d: &BigInt, m: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for r in divisors(m) {
        let term = num_traits::pow(d.clone(), (m / r) as usize);
        match moebius(r) {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let (q, rem) = sum.div_rem(&BigInt::from(m));
    assert!(rem.is_zero(), "necklace sum not divisible by {m}");
    q
}

/// Witt's formula `l_d(w)`, the dimension of the degree-`w` part of the free
/// Lie algebra on `d` generators.
pub fn witt(d: u64, w: u32) -> BigInt {
    assert!(w >= 1, "weight must be positive");
    necklace_count(&BigInt::from(d), u64::from(w))
}

/// [`witt`] with a big generator count.
pub fn witt_big(d: &BigInt, w: u32) -> BigInt {
    assert!(w >= 1, "weight must be positive");
    necklace_count(d, u64::from(w))
}

/// Number of generator occurrences in a weight-`w` term: `1 + (w-1)(n-1)`.
pub fn length_of_weight(n: usize, w: u32) -> u64 {
    crate::term::length_for_weight(n, w)
}

/// The necklace-style upper bound `(1/m) sum_{r | m} mu(r) d^{m/r}` with
/// `m = n + (w-2)(n-1)`; equals [`witt`] at `n = 2`.
pub fn necklace_bound(n: usize, d: u64, w: u32) -> BigInt {
    necklace_count(&BigInt::from(d), length_of_weight(n, w))
}

/// `l_d^n(2) = C(d, n)`.
pub fn count_weight2(n: usize, d: u64) -> BigInt {
    binomial(d as i64, n as i64)
}

/// Pascal-row coefficients `a_1..a_{w-2}` of `l_n^n(w) = sum_i a_i C(n, i)`
/// for `4 <= w <= 10`.
pub const LADDER_COEFFICIENTS: [&[u64]; 7] = [
    &[1, 1],
    &[1, 2, 1],
    &[1, 3, 3, 1],
    &[1, 4, 6, 4, 1],
    &[1, 5, 10, 10, 5, 1],
    &[1, 6, 15, 20, 15, 6, 1],
    &[1, 7, 21, 35, 35, 21, 7, 1],
];

/// A widely circulated form of the `w = 10` expansion, as `(a, i)` pairs of
/// `a * C(n, i)`. It has `35 * C(n, 3)` where the Pascal row needs
/// `35 * C(n, 5)`.
pub const LADDER_W10_VARIANT: [(u64, i64); 8] = [
    (1, 8),
    (7, 7),
    (21, 6),
    (35, 3),
    (35, 4),
    (21, 3),
    (7, 2),
    (1, 1),
];

/// `l_n^n(w)` via the per-weight expansions for `w <= 10` and
/// `C(n+w-3, w-2)` beyond. `n = 2` is the free Lie algebra and goes to
/// [`witt`].
pub fn ladder(n: usize, w: u32) -> BigInt {
    assert!(n >= 2 && w >= 1);
    if n == 2 {
        return witt(2, w);
    }
    match w {
        1 => BigInt::from(n),
        2 => BigInt::one(),
        3 => BigInt::from(n),
        4..=10 => LADDER_COEFFICIENTS[(w - 4) as usize]
            .iter()
            .enumerate()
            .map(|(i, &a)| BigInt::from(a) * binomial(n as i64, i as i64 + 1))
            .sum(),
        _ => ladder_closed_form(n, w),
    }
}

/// `C(n+w-3, w-2)` for `w >= 2`, `n` at `w = 1`.
pub fn ladder_closed_form(n: usize, w: u32) -> BigInt {
    if w == 1 {
        return BigInt::from(n);
    }
    binomial(n as i64 + i64::from(w) - 3, i64::from(w) - 2)
}

/// [`LADDER_W10_VARIANT`] evaluated at `n`.
pub fn ladder_w10_variant(n: usize) -> BigInt {
    LADDER_W10_VARIANT
        .iter()
        .map(|&(a, i)| BigInt::from(a) * binomial(n as i64, i))
        .sum()
}

/// `l_n^n(w)` from the weight recursions: a step of `w-1` at `n = 3`, the
/// parity rule at `n = 4`, and `l_n^n(w) = l_n^n(w-1) + l_{n-1}^{n-1}(w)`
/// for `n >= 5`. `n = 2` goes to [`witt`].
pub fn ladder_recursive(n: usize, w: u32) -> BigInt {
    assert!(n >= 2 && w >= 1);
    if n == 2 {
        return witt(2, w);
    }
    let w = w as usize;
    // row[k] = l(k) for the current n, k = 1..=w
    let mut row = vec![BigInt::zero(); w.max(2) + 1];
    row[1] = BigInt::from(3);
    row[2] = BigInt::one();
    for k in 3..=w {
        row[k] = &row[k - 1] + BigInt::from(k - 1);
    }
    for m in 4..=n {
        let prev = row.clone();
        row[1] = BigInt::from(m);
        row[2] = BigInt::one();
        for k in 3..=w {
            row[k] = if m == 4 {
                let r = BigInt::from(k / 2);
                if k % 2 == 0 {
                    &row[k - 1] + BigInt::from(k - 1) * r
                } else {
                    &row[k - 1] + BigInt::from(k) * r
                }
            } else {
                &row[k - 1] + &prev[k]
            };
        }
    }
    row[w].clone()
}

fn require_d_ge_n(method: Method, n: usize, d: u64, w: u32) -> Result<(), CountError> {
    if n < 2 || (d as usize) < n {
        return Err(CountError::NotApplicable {
            method,
            n,
            d: d as u32,
            w,
            reason: "requires n >= 2 and d >= n".into(),
        });
    }
    Ok(())
}

/// The weight-3 double sum
/// `sum_{i=1}^{d-n+1} sum_{j=i+1}^{d-1} (d-j) [C(d-i+1, n-1) - j + i + 1]`,
/// evaluated term by term.
pub fn eq14_weight3(n: usize, d: u64) -> Result<BigInt, CountError> {
    require_d_ge_n(Method::Eq14, n, d, 3)?;
    let (n, d) = (n as i64, d as i64);
    let mut total = BigInt::zero();
    for i in 1..=(d - n + 1) {
        for j in (i + 1)..=(d - 1) {
            let bracket = binomial(d - i + 1, n - 1) - (j - i - 1);
            total += BigInt::from(d - j) * bracket;
        }
    }
    Ok(total)
}

/// `sum_{j=1}^{alpha_0} beta_{j*}` with `alpha_0 = C(d-1, n-1)`, where `j*`
/// is the start of the block `C(k-1,n-1)+1 <= j <= C(k,n-1)` containing `j`
/// and `beta_{j*} = d - n - j* + 2`. Negative `beta` values are kept.
pub fn beta_sum(n: usize, d: u64) -> Result<BigInt, CountError> {
    let (n, d) = (n as i64, d as i64);
    let alpha0 = binomial(d - 1, n - 1);
    let alpha0 = alpha0
        .to_u64()
        .ok_or_else(|| CountError::InvalidParameters("alpha_0 too large".into()))?;
    let mut total = BigInt::zero();
    for j in 1..=alpha0 {
        let jb = BigInt::from(j);
        let block =
            ((n - 1)..=(d - 1)).find(|&k| binomial(k - 1, n - 1) < jb && jb <= binomial(k, n - 1));
        let Some(k) = block else {
            return Err(CountError::MalformedBracket { j });
        };
        let jstar = binomial(k - 1, n - 1) + 1;
        total += BigInt::from(d - n + 2) - jstar;
    }
    Ok(total)
}

/// Weight-4 closed form `sum_j beta_{j*} (C(C(d,n-1), 2) + C(d, n-1))`.
pub fn eq15_weight4(n: usize, d: u64) -> Result<BigInt, CountError> {
    require_d_ge_n(Method::Eq15, n, d, 4)?;
    let dstar = binomial(d as i64, n as i64 - 1);
    Ok(beta_sum(n, d)? * (binomial_big(&dstar, 2) + dstar))
}

/// `alpha_i = C(w-3, i-2)`, the binomial row of `(a+b)^{w-3}`.
pub fn alpha(w: u32, i: u32) -> BigInt {
    binomial(i64::from(w) - 3, i64::from(i) - 2)
}

/// General-weight form
/// `sum_j beta_{j*} sum_{i=2}^{w-1} alpha_i C(C(d,n-1), w-i)`.
pub fn eq16_general(n: usize, d: u64, w: u32) -> Result<BigInt, CountError> {
    require_d_ge_n(Method::Eq16, n, d, w)?;
    if w < 3 {
        return Err(CountError::NotApplicable {
            method: Method::Eq16,
            n,
            d: d as u32,
            w,
            reason: "requires w >= 3".into(),
        });
    }
    let dstar = binomial(d as i64, n as i64 - 1);
    let inner: BigInt = (2..w)
        .map(|i| alpha(w, i) * binomial_big(&dstar, i64::from(w - i)))
        .sum();
    Ok(beta_sum(n, d)? * inner)
}

/// Exact polynomial in one variable, coefficients by ascending degree.
type Poly = Vec<BigRational>;

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// `C(d, n)` as a polynomial in `d`.
fn binomial_poly(n: usize) -> Poly {
    let mut p: Poly = vec![BigRational::one()];
    for i in 0..n {
        // multiply by (d - i)
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigRational::from_integer(BigInt::from(i));
        }
        p = next;
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    p.into_iter()
        .map(|c| c / BigRational::from_integer(fact.clone()))
        .collect()
}

/// `l_d(s)` from Witt's formula as a polynomial in `d`.
fn witt_poly(s: usize) -> Poly {
    let mut p = vec![BigRational::zero(); s + 1];
    for r in divisors(s as u64) {
        let mu = moebius(r);
        if mu != 0 {
            p[s / r as usize] += BigRational::new(BigInt::from(mu), BigInt::from(s));
        }
    }
    p
}

/// Coefficients `c_1..c_n` with `C(d, n) = sum_s c_s l_d(s)` identically in
/// `d`, where `l_d(s)` is Witt's count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieExpansion {
    pub n: usize,
    /// `coefficients[s - 1] = c_s`.
    pub coefficients: Vec<BigRational>,
}

impl LieExpansion {
    pub fn coefficient(&self, s: usize) -> BigRational {
        if s == 0 || s > self.n {
            return BigRational::zero();
        }
        self.coefficients[s - 1].clone()
    }

    /// `c_1`, zero for every `n >= 2`.
    pub fn c1(&self) -> BigRational {
        self.coefficient(1)
    }

    /// `sum_s c_s l_d(s)` expanded as a polynomial in `d` (ascending degree).
    pub fn reconstruct(&self) -> Vec<BigRational> {
        let mut acc: Poly = vec![BigRational::zero(); self.n + 1];
        for (i, c) in self.coefficients.iter().enumerate() {
            for (k, a) in witt_poly(i + 1).iter().enumerate() {
                acc[k] += c * a;
            }
        }
        poly_trim(&mut acc);
        acc
    }

    /// `C(d, n)` as a polynomial in `d` (ascending degree).
    pub fn target(&self) -> Vec<BigRational> {
        let mut p = binomial_poly(self.n);
        poly_trim(&mut p);
        p
    }

    /// Evaluates `sum_s c_s l_{d}(s)` at a (possibly big) `d`.
    pub fn evaluate(&self, d: &BigInt) -> BigRational {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * BigRational::from_integer(witt_big(d, i as u32 + 1)))
            .sum()
    }
}

/// Triangular solve of `C(d, n) = sum_{s=1}^n c_s l_d(s)`: `l_d(s)` has degree
/// `s` and leading coefficient `1/s`, so the top coefficient fixes `c_n`, and so
/// on downwards.
pub fn lie_expansion(n: usize) -> LieExpansion {
    assert!(n >= 1);
    let mut residual = binomial_poly(n);
    let mut coefficients = vec![BigRational::zero(); n];
    for s in (1..=n).rev() {
        let c = &residual[s] * BigRational::from_integer(BigInt::from(s));
        for (k, a) in witt_poly(s).iter().enumerate() {
            residual[k] -= &c * a;
        }
        coefficients[s - 1] = c;
    }
    debug_assert!(residual.iter().all(Zero::is_zero));
    LieExpansion { n, coefficients }
}

/// The general-weight form with each inner `C(d*, k)` (`d* = C(d, n-1)`)
/// replaced by its Lie expansion `sum_{s=1}^{k} c_s l_{d*}(s)`.
pub fn countw_via_lie(n: usize, d: u64, w: u32) -> Result<BigRational, CountError> {
    require_d_ge_n(Method::ViaLie, n, d, w)?;
    if w < 3 {
        return Err(CountError::NotApplicable {
            method: Method::ViaLie,
            n,
            d: d as u32,
            w,
            reason: "requires w >= 3".into(),
        });
    }
    let dstar = binomial(d as i64, n as i64 - 1);
    let mut inner = BigRational::zero();
    for i in 2..w {
        let k = (w - i) as usize;
        let expanded = lie_expansion(k).evaluate(&dstar);
        inner += BigRational::from_integer(alpha(w, i)) * expanded;
    }
    Ok(BigRational::from_integer(beta_sum(n, d)?) * inner)
}

/// Total, nonbasic and partial nonbasic counts at one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonbasicBreakdown {
    pub n: usize,
    pub d: u64,
    pub w: u32,
    /// The count of basic commutators fed into the identities.
    pub basic: BigInt,
    /// `d^{m_w}`.
    pub total: BigInt,
    /// `L = total - l(w)`.
    pub nonbasic: BigInt,
    /// `L' = L(w-1) d^{n-1}`; `None` below weight 3.
    pub l_prime: Option<BigInt>,
    /// `L'' = l(w-1) (d^{n-1} - C(d, n-1))`.
    pub l_double_prime: Option<BigInt>,
    /// `L* = l(w-1) C(d, n-1) - l(w)`, zero when `n = d`.
    pub l_star: Option<BigInt>,
    /// `total - L' - L'' - L*`.
    pub kappa: Option<BigInt>,
}

impl NonbasicBreakdown {
    /// Whether `kappa` reproduces the basic count.
    pub fn kappa_matches(&self) -> Option<bool> {
        self.kappa.as_ref().map(|k| *k == self.basic)
    }

    /// Whether `L = L' + L''`.
    pub fn split_matches(&self) -> Option<bool> {
        match (&self.l_prime, &self.l_double_prime) {
            (Some(a), Some(b)) => Some(self.nonbasic == a + b),
            _ => None,
        }
    }
}

/// Builds the breakdown from a basic-count source `l(k)` (queried at `w` and
/// `w - 1`).
pub fn nonbasic_breakdown<F>(
    n: usize,
    d: u64,
    w: u32,
    mut l: F,
) -> Result<NonbasicBreakdown, CountError>
where
    F: FnMut(u32) -> Result<BigInt, CountError>,
{
    if n < 2 || w < 1 {
        return Err(CountError::InvalidParameters(format!("n={n}, w={w}")));
    }
    let db = BigInt::from(d);
    let pow = |e: u64| num_traits::pow(db.clone(), e as usize);
    let basic = l(w)?;
    let total = pow(length_of_weight(n, w));
    let nonbasic = &total - &basic;
    let mut out = NonbasicBreakdown {
        n,
        d,
        w,
        basic,
        total,
        nonbasic,
        l_prime: None,
        l_double_prime: None,
        l_star: None,
        kappa: None,
    };
    if w >= 3 {
        let prev = l(w - 1)?;
        let outer = pow(n as u64 - 1);
        let choose = binomial(d as i64, n as i64 - 1);
        let lp = (pow(length_of_weight(n, w - 1)) - &prev) * &outer;
        let lpp = &prev * (&outer - &choose);
        let ls = if d as usize == n {
            BigInt::zero()
        } else {
            &prev * &choose - &out.basic
        };
        out.kappa = Some(&out.total - &lp - &lpp - &ls);
        out.l_prime = Some(lp);
        out.l_double_prime = Some(lpp);
        out.l_star = Some(ls);
    }
    Ok(out)
}

/// `dim F^i / F^{i+c} = sum_{k=i}^{i+c-1} l(k)`. The quotient is abelian for
/// `c <= i`; larger `c` is accepted and summed the same way.
pub fn lcs_quotient_dim<F>(i: u32, c: u32, mut l: F) -> Result<BigInt, CountError>
where
    F: FnMut(u32) -> Result<BigInt, CountError>,
{
    if i == 0 {
        return Err(CountError::InvalidParameters("i must be at least 1".into()));
    }
    (i..i + c).map(&mut l).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(7), -1);
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt(2, 3), b(2));
        assert_eq!(witt(2, 10), b(99));
        assert_eq!(witt(1, 6), b(0));
        assert_eq!(witt(1, 1), b(1));
        assert_eq!(witt(3, 5), b(48));
    }

    #[test]
    fn necklace_values() {
        assert_eq!(necklace_bound(3, 3, 3), b(48));
        assert_eq!(necklace_bound(3, 3, 2), b(8));
        for d in 1..=6 {
            for w in 1..=8 {
                assert_eq!(necklace_bound(2, d, w), witt(d, w));
            }
        }
    }

    #[test]
    fn weight2_values() {
        assert_eq!(count_weight2(3, 3), b(1));
        assert_eq!(count_weight2(3, 5), b(10));
        assert_eq!(count_weight2(4, 3), b(0));
    }

    #[test]
    fn ladder_values() {
        assert_eq!(ladder(3, 4), b(6));
        assert_eq!(ladder(4, 6), b(35));
        assert_eq!(ladder(3, 10), b(45));
        assert_eq!(ladder(2, 5), b(6));
        assert_eq!(ladder(10, 10), b(24310));
        assert_eq!(ladder(5, 12), ladder_closed_form(5, 12));
    }

    #[test]
    fn ladder_recursion_values() {
        assert_eq!(ladder_recursive(3, 5), b(10));
        assert_eq!(ladder_recursive(4, 5), b(20));
        assert_eq!(ladder_recursive(5, 3), b(5));
        assert_eq!(ladder_recursive(3, 1), b(3));
        assert_eq!(ladder_recursive(6, 2), b(1));
    }

    #[test]
    fn ladder_w10_variant_differs() {
        // 35 C(n,3) vs 35 C(n,5)
        for n in 3..=10usize {
            let diff = ladder_w10_variant(n) - ladder(n, 10);
            assert_eq!(
                diff,
                b(35) * (binomial(n as i64, 3) - binomial(n as i64, 5))
            );
        }
    }

    #[test]
    fn weight3_sum() {
        assert_eq!(eq14_weight3(3, 3).unwrap(), b(3));
        assert_eq!(eq14_weight3(4, 4).unwrap(), b(11));
        assert_eq!(eq14_weight3(2, 2).unwrap(), b(0));
        assert!(eq14_weight3(4, 3).is_err());
    }

    #[test]
    fn weight4_and_general() {
        assert_eq!(eq15_weight4(3, 3).unwrap(), b(6));
        assert_eq!(eq15_weight4(4, 4).unwrap(), b(10));
        assert_eq!(eq15_weight4(3, 4).unwrap(), b(84));
        assert_eq!(eq16_general(3, 3, 5).unwrap(), b(10));
        assert_eq!(eq16_general(3, 3, 4).unwrap(), b(6));
        assert_eq!(eq16_general(4, 4, 6).unwrap(), b(35));
        assert_eq!(eq16_general(2, 2, 5).unwrap(), b(4));
        assert!(eq16_general(3, 3, 2).is_err());
    }

    #[test]
    fn alpha_symmetry() {
        for w in 3..=12 {
            for i in 2..w {
                assert_eq!(alpha(w, i), alpha(w, w - i + 1));
            }
            assert_eq!(alpha(w, 2), b(1));
        }
    }

    #[test]
    fn lie_expansion_rows() {
        let e = lie_expansion(3);
        assert_eq!(e.coefficient(2), q(-1, 1));
        assert_eq!(e.coefficient(3), q(1, 2));
        let e = lie_expansion(4);
        assert_eq!(e.coefficients, vec![q(0, 1), q(1, 1), q(-3, 4), q(1, 6)]);
        assert_eq!(lie_expansion(2).coefficient(2), q(1, 1));
        assert_eq!(lie_expansion(7).coefficient(5), q(25, 144));
        for n in 2..=10 {
            let e = lie_expansion(n);
            assert!(e.c1().is_zero());
            assert_eq!(e.reconstruct(), e.target());
        }
    }

    #[test]
    fn via_lie_matches_general_form() {
        for (n, d, w) in [(3, 3, 4), (3, 3, 5), (4, 4, 4), (3, 5, 6), (2, 4, 5)] {
            let v = countw_via_lie(n, d, w).unwrap();
            assert_eq!(
                v,
                BigRational::from_integer(eq16_general(n, d, w).unwrap()),
                "{n} {d} {w}"
            );
        }
    }

    #[test]
    fn breakdown_examples() {
        let br = nonbasic_breakdown(3, 3, 2, |k| Ok(ladder(3, k))).unwrap();
        assert_eq!(br.nonbasic, b(26));
        assert!(br.kappa.is_none());
        let br = nonbasic_breakdown(2, 2, 2, |k| Ok(witt(2, k))).unwrap();
        assert_eq!(br.nonbasic, b(3));
        let br = nonbasic_breakdown(4, 4, 5, |k| Ok(ladder(4, k))).unwrap();
        assert_eq!(br.l_star, Some(b(0)));
        let br = nonbasic_breakdown(3, 5, 3, |k| {
            Ok(count_weight2(3, 5) * i64::from(k == 2) + b(7) * i64::from(k == 3))
        })
        .unwrap();
        assert_eq!(br.kappa_matches(), Some(true));
        let total = br.l_prime.clone().unwrap()
            + br.l_double_prime.clone().unwrap()
            + br.l_star.clone().unwrap()
            + br.kappa.clone().unwrap();
        assert_eq!(total, br.total);
    }

    #[test]
    fn lcs_dimensions() {
        assert_eq!(lcs_quotient_dim(2, 2, |k| Ok(ladder(3, k))).unwrap(), b(4));
        assert_eq!(lcs_quotient_dim(5, 0, |k| Ok(ladder(3, k))).unwrap(), b(0));
        assert_eq!(lcs_quotient_dim(2, 3, |k| Ok(witt(2, k))).unwrap(), b(6));
        assert!(lcs_quotient_dim(0, 1, |k| Ok(witt(2, k))).is_err());
    }

    #[test]
    fn method_tags_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::from_tag(m.tag()), Some(m));
        }
        assert_eq!(Method::from_tag("ladder"), Some(Method::Ladder));
        assert_eq!(Method::from_tag("enum-left"), Some(Method::EnumLeft));
        assert_eq!(Method::from_tag("nope"), None);
    }
}
