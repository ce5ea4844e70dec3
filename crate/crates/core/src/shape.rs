//! Weight compositions and child-tuple generation shared by the basic
//! commutator enumerator and the monomial basis of the oracle.

use std::ops::ControlFlow;

use crate::term::Term;

/// Non-increasing sequences of `parts` positive integers, each at most
/// `max_part`, summing to `total`. Output is in reverse lexicographic order
/// (largest first part first).
pub(crate) fn weight_partitions(total: u32, parts: usize, max_part: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, k: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rem < k as u32 {
            return;
        }
        let hi = max.min(rem - (k as u32 - 1));
        for a in (1..=hi).rev() {
            // the remaining k-1 parts are each <= a
            if (rem - a) > a * (k as u32 - 1) {
                break;
            }
            cur.push(a);
            go(rem - a, k - 1, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// Run-length groups of a non-increasing sequence: `(value, multiplicity)`.
pub(crate) fn groups(partition: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &a in partition {
        match out.last_mut() {
            Some((v, k)) if *v == a => *k += 1,
            _ => out.push((a, 1)),
        }
    }
    out
}

/// Visits every child tuple built by choosing, for each group, `k` distinct
/// entries of its pool in pool order. With pools sorted descending, every
/// visited tuple is strictly descending.
pub(crate) fn for_each_tuple<F>(pools: &[(&[Term], usize)], f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Term]) -> ControlFlow<()>,
{
    fn go<F>(pools: &[(&[Term], usize)], cur: &mut Vec<Term>, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Term]) -> ControlFlow<()>,
    {
        let Some(((pool, k), rest)) = pools.split_first() else {
            return f(cur);
        };
        choose(pool, *k, 0, cur, &mut |cur| go(rest, cur, f))
    }

    fn choose<G>(
        pool: &[Term],
        k: usize,
        start: usize,
        cur: &mut Vec<Term>,
        g: &mut G,
    ) -> ControlFlow<()>
    where
        G: FnMut(&mut Vec<Term>) -> ControlFlow<()>,
    {
        if k == 0 {
            return g(cur);
        }
        if pool.len() < start + k {
            return ControlFlow::Continue(());
        }
        for i in start..=pool.len() - k {
            cur.push(pool[i].clone());
            let flow = choose(pool, k - 1, i + 1, cur, g);
            cur.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    go(pools, &mut Vec::new(), f)
}

/// Binomial coefficient on `u128`, saturating at `u128::MAX`.
pub(crate) fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays exact because acc = C(n, i)
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_small_totals() {
        assert_eq!(weight_partitions(4, 2, 3), vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(
            weight_partitions(5, 3, 4),
            vec![vec![3, 1, 1], vec![2, 2, 1]]
        );
        assert!(weight_partitions(2, 3, 5).is_empty());
        assert_eq!(weight_partitions(3, 3, 1), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn grouping() {
        assert_eq!(groups(&[3, 2, 2, 1]), vec![(3, 1), (2, 2), (1, 1)]);
    }

    #[test]
    fn tuples_are_descending_combinations() {
        let pool: Vec<Term> = (1..=4).rev().map(Term::x).collect();
        let mut seen = Vec::new();
        let _ = for_each_tuple(&[(&pool, 2)], &mut |t| {
            seen.push(t.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 6);
        assert!(seen.iter().all(|t| t[0] > t[1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(5, 2), 10);
        assert_eq!(binomial_u128(2, 5), 0);
        assert_eq!(binomial_u128(60, 30), 118264581564861424);
    }
}
