//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code under test except to convert results.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

/// Two squares share a queen line.
pub fn aligned(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 == b.0 || a.1 == b.1 || a.0 - a.1 == b.0 - b.1 || a.0 + a.1 == b.0 + b.1
}

/// Three squares on one queen line.
pub fn collinear3(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    (a.0 == b.0 && b.0 == c.0)
        || (a.1 == b.1 && b.1 == c.1)
        || (a.0 - a.1 == b.0 - b.1 && b.0 - b.1 == c.0 - c.1)
        || (a.0 + a.1 == b.0 + b.1 && b.0 + b.1 == c.0 + c.1)
}

pub fn naive_three_in_line(q: &[(i64, i64)]) -> bool {
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            for k in j + 1..q.len() {
                if collinear3(q[i], q[j], q[k]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Squares (zero-based) are the bits of `mask`, row-major.
pub fn squares_of(mask: u64, n: usize) -> Vec<(i64, i64)> {
    (0..n * n).filter(|i| mask >> i & 1 == 1).map(|i| ((i % n) as i64, (i / n) as i64)).collect()
}

/// Good = no three in a line, and every empty square would complete a triple.
pub fn naive_is_good(q: &[(i64, i64)], n: usize) -> bool {
    if naive_three_in_line(q) {
        return false;
    }
    for c in 0..n as i64 {
        for r in 0..n as i64 {
            let s = (c, r);
            if q.contains(&s) {
                continue;
            }
            let blocked = (0..q.len()).any(|i| (i + 1..q.len()).any(|j| collinear3(q[i], q[j], s)));
            if !blocked {
                return false;
            }
        }
    }
    true
}

/// Sizes `q` with a good placement of exactly `q` queens, by full subset scan.
pub fn naive_good_sizes(n: usize) -> Vec<bool> {
    let cells = n * n;
    let mut sizes = vec![false; cells + 1];
    for mask in 0u64..(1u64 << cells) {
        let q = squares_of(mask, n);
        if !sizes[q.len()] && naive_is_good(&q, n) {
            sizes[q.len()] = true;
        }
    }
    sizes
}

/// Coefficient of `x^a y^b` in `prod (cx x + cy y + c0)` by choosing one of
/// the three terms from every factor in turn.
pub fn term_enumeration_coeff(factors: &[(i64, i64, i64)], a: usize, b: usize) -> BigInt {
    fn go(f: &[(i64, i64, i64)], a: usize, b: usize, acc: &BigInt, out: &mut BigInt) {
        if a + b > f.len() || acc.is_zero() {
            return;
        }
        let Some((&(cx, cy, c0), rest)) = f.split_first() else {
            if a == 0 && b == 0 {
                *out += acc;
            }
            return;
        };
        if a > 0 {
            go(rest, a - 1, b, &(acc * cx), out);
        }
        if b > 0 {
            go(rest, a, b - 1, &(acc * cy), out);
        }
        go(rest, a, b, &(acc * c0), out);
    }
    let mut out = BigInt::zero();
    go(factors, a, b, &BigInt::one(), &mut out);
    out
}

/// Full expansion as a sparse map, for cross-checks.
pub fn expand(factors: &[(i64, i64, i64)]) -> BTreeMap<(usize, usize), BigInt> {
    let mut poly = BTreeMap::from([((0, 0), BigInt::one())]);
    for &(cx, cy, c0) in factors {
        let mut next: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for ((i, j), c) in &poly {
            for (di, dj, m) in [(1, 0, cx), (0, 1, cy), (0, 0, c0)] {
                if m != 0 {
                    *next.entry((i + di, j + dj)).or_default() += c * m;
                }
            }
        }
        poly = next;
    }
    poly
}

/// `C(n, k)` from Pascal's rule.
pub fn pascal(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

pub fn random_list(rng: &mut impl Rng, len: usize, span: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-span..=span)).collect()
}
