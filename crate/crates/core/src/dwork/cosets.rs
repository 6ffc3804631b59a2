//! The tuple set `W`, its shift cosets and their permutation classes.
//!
//! `W` is the set of `d`-tuples over `0..d` with entry sum divisible by `d`.
//! Two tuples share a coset when they differ by a multiple of `(1, ..., 1)`,
//! and two cosets share a permutation class when some element of one is a
//! rearrangement of some element of the other.

use std::collections::BTreeMap;

use serde::Serialize;

/// A permutation class of cosets, named by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetRep {
    /// Sorted representative with the most zeros, lexicographically least on ties.
    pub w: Vec<u32>,
    /// Number of cosets in the class.
    pub class_size: u64,
    /// Number of tuples in each coset.
    pub coset_size: u32,
}

impl CosetRep {
    pub fn d(&self) -> u32 {
        self.w.len() as u32
    }

    pub fn zeros(&self) -> usize {
        self.w.iter().filter(|&&x| x == 0).count()
    }

    /// Number of distinct entries.
    pub fn distinct(&self) -> usize {
        distinct(&self.w)
    }

    /// Zero-free elements in each coset of the class, `d - s`.
    pub fn n_w(&self) -> u32 {
        n_w(&self.w)
    }
}

fn distinct(w: &[u32]) -> usize {
    let mut v = w.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Number of zero-free tuples in the coset of `w`: `d - s`, `s` the number
/// of distinct entries.
pub fn n_w(w: &[u32]) -> u32 {
    (w.len() - distinct(w)) as u32
}

/// `w + k(1, ..., 1)` reduced mod `d`.
pub fn shift(w: &[u32], k: u32) -> Vec<u32> {
    let d = w.len() as u32;
    w.iter().map(|&x| (x + k) % d).collect()
}

fn rank_key(w: &[u32]) -> (usize, Vec<u32>) {
    (
        usize::MAX - w.iter().filter(|&&x| x == 0).count(),
        w.to_vec(),
    )
}

/// The canonical element of the coset of `w` (as a tuple, order kept).
pub fn canonical_in_coset(w: &[u32]) -> Vec<u32> {
    let d = w.len() as u32;
    (0..d)
        .map(|k| shift(w, k))
        .min_by_key(|s| rank_key(s))
        .expect("d >= 1")
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Nondecreasing `d`-tuples over `0..d` with sum divisible by `d`.
fn multisets(d: u32) -> Vec<Vec<u32>> {
    fn rec(d: u32, start: u32, cur: &mut Vec<u32>, sum: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == d as usize {
            if sum % d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in start..d {
            cur.push(x);
            rec(d, x, cur, sum + x, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, 0, &mut Vec::with_capacity(d as usize), 0, &mut out);
    out
}

/// One [`CosetRep`] per permutation class, ordered by zero count (descending)
/// and then lexicographically.
///
/// Classes are built from multisets: the shift orbit of a multiset of size
/// `|O|` with `P` distinct arrangements accounts for `|O| · P` tuples, hence
/// `|O| · P / d` cosets.
pub fn enumerate_cosets(d: u32) -> Vec<CosetRep> {
    assert!(d >= 2, "d must be at least 2");
    let mut classes: BTreeMap<(usize, Vec<u32>), u64> = BTreeMap::new();
    for ms in multisets(d) {
        let mut orbit: Vec<Vec<u32>> = (0..d)
            .map(|k| {
                let mut s = shift(&ms, k);
                s.sort_unstable();
                s
            })
            .collect();
        orbit.sort();
        orbit.dedup();
        let rep = orbit.iter().min_by_key(|s| rank_key(s)).unwrap().clone();
        if rep != ms {
            continue;
        }
        let mut counts = BTreeMap::new();
        for &x in &ms {
            *counts.entry(x).or_insert(0usize) += 1;
        }
        let perms = counts
            .values()
            .fold(factorial(d as usize), |acc, &c| acc / factorial(c));
        let size = orbit.len() as u128 * perms / d as u128;
        classes.insert(rank_key(&rep), size as u64);
    }
    classes
        .into_iter()
        .map(|((_, w), class_size)| CosetRep {
            w,
            class_size,
            coset_size: d,
        })
        .collect()
}

/// Every coset of `W`, each given by its canonical element. `O(d^d)`.
pub fn all_cosets(d: u32) -> Vec<Vec<u32>> {
    assert!(d >= 2, "d must be at least 2");
    let mut out: Vec<Vec<u32>> = tuples_summing_to_zero(d)
        .into_iter()
        .filter(|w| w[0] == 0)
        .map(|w| canonical_in_coset(&w))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn tuples_summing_to_zero(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = vec![0u32; d as usize];
    loop {
        if w.iter().sum::<u32>() % d == 0 {
            out.push(w.clone());
        }
        let mut i = d as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < d {
                break;
            }
            w[i] = 0;
        }
    }
}

/// `W**`: the elements of `W` with no zero entry.
pub fn enumerate_wss(d: u32) -> Vec<Vec<u32>> {
    assert!(d >= 2, "d must be at least 2");
    tuples_summing_to_zero(d)
        .into_iter()
        .filter(|w| w.iter().all(|&x| x != 0))
        .collect()
}

/// `|W**| = ((d-1)^d + (-1)^d (d-1)) / d`.
pub fn wss_size(d: u32) -> u64 {
    let d = d as i128;
    let v = ((d - 1).pow(d as u32) + if d % 2 == 0 { d - 1 } else { -(d - 1) }) / d;
    v as u64
}

/// The zero-free elements of the coset of `w`, as shifts of `w`.
pub fn zero_free_shifts(w: &[u32]) -> Vec<Vec<u32>> {
    let d = w.len() as u32;
    (0..d)
        .map(|k| shift(w, k))
        .filter(|s| s.iter().all(|&x| x != 0))
        .collect()
}

/// Lists left after cancelling the multiset `w` against `{0, ..., d-1}`:
/// `a` holds the surplus entries of `w`, `b` the missing ones, both sorted.
pub fn reduce_against_full(w: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let d = w.len();
    let mut counts = vec![0i32; d];
    for &x in w {
        counts[x as usize] += 1;
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (v, &c) in counts.iter().enumerate() {
        let c = c - 1;
        if c > 0 {
            a.extend(std::iter::repeat(v as u32).take(c as usize));
        } else if c < 0 {
            b.push(v as u32);
        }
    }
    (a, b)
}
