//! The exactly computable testbed: rational cohomology of ordered
//! configuration spaces of the plane, equivalently of pure braid groups.
//!
//! Degree `k` has a monomial basis `w_{a_1 b_1} ... w_{a_k b_k}` with
//! `a_t < b_t` and strictly increasing `b_t`. The degree-one generators
//! anticommute and satisfy the three-term relation
//! `w_{ib} w_{jb} = w_{ij} w_{jb} - w_{ij} w_{ib}` for `i < j < b`, which is
//! used to rewrite arbitrary products into the basis ("straightening"). The
//! symmetric group acts by relabeling indices.

use crate::fimod::{FiModule, Level, ModuleError};
use crate::linalg::{SparseMat, SparseVec};
use crate::partitions::Partition;
use crate::perms::class_representative;
use crate::rational::{rat_i64, Rat};
use crate::truncation_cap;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfError {
    #[error(
        "truncation cap exceeded: max level {max_level} > cap {cap} (set {} to raise it)",
        crate::CAP_ENV_VAR
    )]
    CapExceeded { max_level: u32, cap: u32 },
    #[error("cohomological degree {k} exceeds max level {max_level}")]
    DegreeExceedsLevels { k: u32, max_level: u32 },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A basis monomial: pairs `(a_t, b_t)` with `a_t < b_t` and
/// `b_1 < b_2 < ... < b_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArnoldMonomial {
    pairs: Vec<(u8, u8)>,
}

impl ArnoldMonomial {
    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }
}

/// The admissible monomials of degree `k` on `{1,...,n}`, ordered
/// lexicographically by the flattened sequence `(b_1, a_1, b_2, a_2, ...)`.
pub fn conf_basis(k: u32, n: u32) -> Vec<ArnoldMonomial> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        next_b: u8,
        remaining: u32,
        n: u8,
        current: &mut Vec<(u8, u8)>,
        out: &mut Vec<ArnoldMonomial>,
    ) {
        if remaining == 0 {
            out.push(ArnoldMonomial {
                pairs: current.clone(),
            });
            return;
        }
        for b in next_b..=n {
            for a in 1..b {
                current.push((a, b));
                rec(b + 1, remaining - 1, n, current, out);
                current.pop();
            }
        }
    }
    rec(2, k, n as u8, &mut current, &mut out);
    out
}

/// Signed rewriting of an arbitrary product of generators into the
/// admissible basis. Input pairs need not be normalized or ordered.
pub fn straighten(pairs: &[(u8, u8)]) -> BTreeMap<ArnoldMonomial, i64> {
    let mut out = BTreeMap::new();
    let normalized: Vec<(u8, u8)> = pairs
        .iter()
        .map(|&(x, y)| if x < y { (x, y) } else { (y, x) })
        .collect();
    rewrite(normalized, 1, &mut out);
    out.retain(|_, c| *c != 0);
    out
}

fn rewrite(mut pairs: Vec<(u8, u8)>, sign: i64, out: &mut BTreeMap<ArnoldMonomial, i64>) {
    // sort the anticommuting factors by (b, a), tracking the sign
    let mut sign = sign;
    for i in 1..pairs.len() {
        let mut j = i;
        while j > 0 && key(pairs[j - 1]) > key(pairs[j]) {
            pairs.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    // a repeated generator kills the monomial
    if pairs.windows(2).any(|w| w[0] == w[1]) {
        return;
    }
    // first collision of top indices, if any
    match pairs.windows(2).position(|w| w[0].1 == w[1].1) {
        None => {
            *out.entry(ArnoldMonomial { pairs }).or_insert(0) += sign;
        }
        Some(t) => {
            let (i, b) = pairs[t];
            let (j, _) = pairs[t + 1];
            debug_assert!(i < j && j < b);
            // w_{ib} w_{jb} = w_{ij} w_{jb} - w_{ij} w_{ib}
            let mut first = pairs.clone();
            first[t] = (i, j);
            first[t + 1] = (j, b);
            rewrite(first, sign, out);
            let mut second = pairs;
            second[t] = (i, j);
            second[t + 1] = (i, b);
            rewrite(second, -sign, out);
        }
    }
}

fn key(p: (u8, u8)) -> (u8, u8) {
    (p.1, p.0)
}

/// Relabels a monomial by a permutation and straightens the result.
fn permute_monomial(m: &ArnoldMonomial, perm: &[usize]) -> BTreeMap<ArnoldMonomial, i64> {
    let relabeled: Vec<(u8, u8)> = m
        .pairs
        .iter()
        .map(|&(a, b)| (perm[a as usize - 1] as u8, perm[b as usize - 1] as u8))
        .collect();
    straighten(&relabeled)
}

/// Coefficient of `t^k` in `prod_{i=1}^{n-1} (1 + i t)`: the dimension of
/// the degree-`k` piece at level `n`. Independent of the basis enumeration.
pub fn dimension_oracle(k: u32, n: u32) -> u64 {
    let mut coeffs: Vec<u64> = vec![1];
    for i in 1..n as u64 {
        let mut next = vec![0u64; coeffs.len() + 1];
        for (d, &c) in coeffs.iter().enumerate() {
            next[d] += c;
            next[d + 1] += c * i;
        }
        coeffs = next;
    }
    coeffs.get(k as usize).copied().unwrap_or(0)
}

/// Trace of one explicit permutation of the given cycle type on the
/// straightened basis, computed directly from relabeling (no generator
/// matrices, no words).
pub fn character_oracle(k: u32, n: u32, cycle_type: &Partition) -> Result<i64, ConfError> {
    let cap = truncation_cap();
    if n > cap {
        return Err(ConfError::CapExceeded { max_level: n, cap });
    }
    assert_eq!(cycle_type.n(), n, "cycle type of the wrong level");
    let perm = class_representative(cycle_type);
    let mut trace = 0i64;
    for m in conf_basis(k, n) {
        let image = permute_monomial(&m, &perm);
        if let Some(&c) = image.get(&m) {
            trace += c;
        }
    }
    Ok(trace)
}

/// Builds levels `0..=max_level` of the degree-`k` cohomology as an explicit
/// FI-module: generator matrices by relabel-and-straighten, inclusions by
/// the identity embedding of bases. All module invariants are validated.
pub fn build_conf_module(k: u32, max_level: u32) -> Result<FiModule, ConfError> {
    let cap = truncation_cap();
    if max_level > cap {
        return Err(ConfError::CapExceeded { max_level, cap });
    }
    if k > max_level {
        return Err(ConfError::DegreeExceedsLevels { k, max_level });
    }
    let mut levels = Vec::with_capacity(max_level as usize + 1);
    let mut prev_basis: Vec<ArnoldMonomial> = Vec::new();
    for n in 0..=max_level {
        let basis = conf_basis(k, n);
        let index: BTreeMap<ArnoldMonomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let dim = basis.len();

        let mut gens = Vec::new();
        for i in 1..n as usize {
            let mut perm: Vec<usize> = (1..=n as usize).collect();
            perm.swap(i - 1, i);
            let cols: Vec<SparseVec> = basis
                .iter()
                .map(|m| {
                    permute_monomial(m, &perm)
                        .into_iter()
                        .map(|(mono, c)| (index[&mono], rat_i64(c)))
                        .collect::<Vec<_>>()
                })
                .map(|mut col: SparseVec| {
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            gens.push(SparseMat::from_cols(dim, cols));
        }

        let inclusion = if n == 0 {
            None
        } else {
            // a monomial on [n-1] is admissible on [n]; columns follow the
            // previous level's basis order
            let cols = prev_basis
                .iter()
                .map(|m| vec![(index[m], Rat::from_integer(1.into()))])
                .collect();
            Some(SparseMat::from_cols(dim, cols))
        };

        levels.push(Level {
            dim,
            gens,
            inclusion,
        });
        prev_basis = basis;
    }
    Ok(FiModule::new(levels)?)
}
