//! One-line permutations of `{1,...,n}` and words in the adjacent
//! transpositions `s_1, ..., s_{n-1}`.
//!
//! A permutation is a `Vec<usize>` with `p[i-1]` the image of `i`. Words are
//! lists of generator indices read as function composition left to right:
//! `[i, j]` means `s_i ∘ s_j` (apply `s_j` first).

use crate::partitions::Partition;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (1..=n).collect()
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| v == i + 1)
}

/// `p ∘ q` (apply `q` first).
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    assert_eq!(p.len(), q.len());
    q.iter().map(|&v| p[v - 1]).collect()
}

/// The adjacent transposition `s_i = (i, i+1)` in `S_n`.
pub fn adjacent(i: usize, n: usize) -> Perm {
    assert!(i >= 1 && i < n);
    let mut p = identity(n);
    p.swap(i - 1, i);
    p
}

/// A word `[i_1, ..., i_m]` with `p = s_{i_1} ∘ ... ∘ s_{i_m}`.
pub fn adjacent_word(p: &[usize]) -> Vec<usize> {
    let mut q = p.to_vec();
    let mut word = Vec::new();
    // each swap peels one factor off the right: q_old = q_new ∘ s_i
    while let Some(i) = (0..q.len().saturating_sub(1)).find(|&i| q[i] > q[i + 1]) {
        q.swap(i, i + 1);
        word.push(i + 1);
    }
    word.reverse();
    word
}

/// The cycle `(a, a+1, ..., b)` sending `j -> j+1` for `a <= j < b` and
/// `b -> a`, as an element of `S_n`.
pub fn forward_cycle(a: usize, b: usize, n: usize) -> Perm {
    assert!(1 <= a && a <= b && b <= n);
    let mut p = identity(n);
    for j in a..b {
        p[j - 1] = j + 1;
    }
    p[b - 1] = a;
    p
}

/// A representative of the conjugacy class with cycle type `t`, built from
/// consecutive blocks: `(3,2)` gives `(1 2 3)(4 5)`.
pub fn class_representative(t: &Partition) -> Perm {
    let n = t.n() as usize;
    let mut p = identity(n);
    let mut offset = 0;
    for &part in t.parts() {
        let part = part as usize;
        for j in offset + 1..offset + part {
            p[j - 1] = j + 1;
        }
        p[offset + part - 1] = offset + 1;
        offset += part;
    }
    p
}

/// The elements of `{1,...,n}` not in `excluded`, ascending.
pub fn sorted_complement(excluded: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|v| !excluded.contains(v)).collect()
}
