//! Small enumeration helpers: binomials, tuples, compositions, partitions.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient `C(m, k)`, zero whenever `k < 0`, `m < 0` or `k > m`.
pub fn binomial(m: i64, k: i64) -> BigUint {
    if m < 0 || k < 0 || k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((m - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// All weakly decreasing tuples of length `len` with entries in `0..=max`,
/// in lexicographically decreasing order.
pub fn decreasing_tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, bound: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in (0..=bound).rev() {
            cur.push(v);
            rec(len, v, cur, out);
            cur.pop();
        }
    }
    rec(len, max, &mut cur, &mut out);
    out
}

/// Compositions of `total` into exactly `parts` parts, in lexicographic order.
/// With `positive` every part is at least one, otherwise parts may be zero.
pub fn compositions(total: u32, parts: usize, positive: bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(left: u32, parts: usize, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == parts {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = (parts - cur.len() - 1) as u32;
        let mut x = lo;
        while x <= left {
            if left - x >= remaining * lo {
                cur.push(x);
                rec(left - x, parts, lo, cur, out);
                cur.pop();
            }
            x += 1;
        }
    }
    rec(total, parts, u32::from(positive), &mut cur, &mut out);
    out
}

/// Integer partitions of `n` as weakly decreasing part lists, in
/// lexicographically decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=bound.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// All arrangements of a multiset given as `(symbol, multiplicity)` pairs,
/// in the lexicographic order induced by the order of `counts`.
pub fn multiset_permutations<T: Copy>(counts: &[(T, usize)]) -> Vec<Vec<T>> {
    let total: usize = counts.iter().map(|c| c.1).sum();
    let mut left: Vec<usize> = counts.iter().map(|c| c.1).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(total);
    fn rec<T: Copy>(
        counts: &[(T, usize)],
        left: &mut [usize],
        total: usize,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(counts[i].0);
                rec(counts, left, total, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(counts, &mut left, total, &mut cur, &mut out);
    out
}
