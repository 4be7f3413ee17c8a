//! Test-side oracles written directly from the definitions, sharing no code
//! with the library beyond the `Word` and `Rational` types.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gformal::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Letters = Vec<u32>;
pub type Combination = BTreeMap<Letters, i64>;

/// Quasi-shuffle by the first-letter recursion
/// `au * bv = a(u * bv) + b(au * v) + [a <> b](u * v)`.
pub fn quasi_shuffle(u: &[u32], v: &[u32], merge: fn(u32, u32) -> Option<u32>) -> Combination {
    let mut out = Combination::new();
    if u.is_empty() || v.is_empty() {
        out.insert(if u.is_empty() { v.to_vec() } else { u.to_vec() }, 1);
        return out;
    }
    let mut push = |head: u32, rest: Combination| {
        for (w, c) in rest {
            let mut word = vec![head];
            word.extend(w);
            *out.entry(word).or_insert(0) += c;
        }
    };
    push(u[0], quasi_shuffle(&u[1..], v, merge));
    push(v[0], quasi_shuffle(u, &v[1..], merge));
    if let Some(m) = merge(u[0], v[0]) {
        push(m, quasi_shuffle(&u[1..], &v[1..], merge));
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn no_merge(_: u32, _: u32) -> Option<u32> {
    None
}

pub fn full_merge(a: u32, b: u32) -> Option<u32> {
    Some(a + b)
}

pub fn positive_merge(a: u32, b: u32) -> Option<u32> {
    (a > 0 && b > 0).then_some(a + b)
}

/// All words over letters `0..` with the weight convention `max(l, min_weight)`.
pub fn words_of_weight(weight: u32, letters: &[u32], letter_weight: fn(u32) -> u32) -> Vec<Letters> {
    if weight == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for &l in letters {
        let lw = letter_weight(l);
        if lw <= weight {
            for rest in words_of_weight(weight - lw, letters, letter_weight) {
                let mut w = vec![l];
                w.extend(rest);
                out.push(w);
            }
        }
    }
    out
}

pub fn b_weight(l: u32) -> u32 {
    l.max(1)
}

pub fn b_words(weight: u32) -> Vec<Letters> {
    words_of_weight(weight, &(0..=weight).collect::<Vec<_>>(), b_weight)
}

/// `tau(b_{k1} b0^{m1} ... b_{kd} b0^{md}) = b_{md+1} b0^{kd-1} ... b_{m1+1} b0^{k1-1}`.
pub fn tau(w: &[u32]) -> Letters {
    assert!(w.first() != Some(&0));
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for &l in w {
        if l == 0 {
            blocks.last_mut().unwrap().1 += 1;
        } else {
            blocks.push((l, 0));
        }
    }
    let mut out = Vec::new();
    for &(k, m) in blocks.iter().rev() {
        out.push(m + 1);
        out.extend(std::iter::repeat_n(0, (k - 1) as usize));
    }
    out
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let d = &rows[r][j] * &f;
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `zeta_q^SZ(s)` to `q^order` by enumerating every index chain
/// `n_1 > ... > n_l > 0` and expanding each factor as a power series.
pub fn qzeta_brute(s: &[u32], order: usize) -> Vec<BigInt> {
    let mut total = vec![BigInt::zero(); order + 1];
    if s.is_empty() {
        total[0] = BigInt::one();
        return total;
    }
    fn factor(n: usize, s: u32, order: usize) -> Vec<BigInt> {
        // q^{ns} (1 - q^n)^{-s}
        let mut f = vec![BigInt::zero(); order + 1];
        f[0] = BigInt::one();
        for _ in 0..s {
            // multiply by q^n / (1 - q^n) = q^n + q^{2n} + ...
            let mut g = vec![BigInt::zero(); order + 1];
            for (i, a) in f.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let mut j = i + n;
                while j <= order {
                    g[j] += a;
                    j += n;
                }
            }
            f = g;
        }
        f
    }
    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().take(a.len() - i) {
                out[i + j] += x * y;
            }
        }
        out
    }
    fn go(s: &[u32], below: usize, acc: Vec<BigInt>, order: usize, total: &mut [BigInt]) {
        let Some((&first, rest)) = s.split_first() else {
            for (t, a) in total.iter_mut().zip(acc) {
                *t += a;
            }
            return;
        };
        for n in 1..below {
            let next = mul(&acc, &factor(n, first, order));
            if next.iter().all(Zero::is_zero) && first > 0 {
                continue;
            }
            go(rest, n, next, order, total);
        }
    }
    let mut unit = vec![BigInt::zero(); order + 1];
    unit[0] = BigInt::one();
    go(s, order + 1, unit, order, &mut total);
    total
}

/// `sigma_p(n)`.
pub fn divisor_sum(n: usize, p: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(p)).sum()
}

/// All partitions of `n` as weakly decreasing part lists.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in (1..=n.min(max)).rev() {
            for mut rest in go(n - p, p) {
                rest.insert(0, p);
                out.push(rest);
            }
        }
        out
    }
    go(n, n)
}

/// Distinct parts with multiplicities, largest first.
pub fn stanley(parts: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match out.last_mut() {
            Some((u, v)) if *u == p => *v += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k || n < 0 {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}
