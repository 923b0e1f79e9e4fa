//! Truncated FI-modules as explicit rational representations.
//!
//! A module stores, for each level `n <= N`, the dimension, the action
//! matrices of the adjacent transpositions `s_1, ..., s_{n-1}`, and the
//! structure map of the standard inclusion `[n-1] -> [n]`. Everything else
//! (maps of arbitrary injections, induced modules, the natural surjection
//! from induction, shift and derivative) is composed on demand.
//!
//! Validation checks, in order: shapes, the Coxeter relations at every
//! level, equivariance of the structure maps, and the exchange relation
//! `rho(s_{n-1}) . phi_n . phi_{n-1} = phi_n . phi_{n-1}`. The exchange
//! relation is what makes the map of an injection independent of the chosen
//! permutation factorization, so it is part of the contract, not an extra.

use crate::characters::ClassFunction;
use crate::linalg::{self, Quotient, ReducedBasis, SparseMat, SparseVec};
use crate::partitions::factorial;
use crate::perms::{adjacent_word, class_representative, sorted_complement, Perm};
use crate::rational::Rat;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone)]
pub struct Level {
    pub dim: usize,
    /// Action of `s_1, ..., s_{n-1}`; empty for `n <= 1`.
    pub gens: Vec<SparseMat>,
    /// `phi_n: V_{n-1} -> V_n` (shape `dim_n x dim_{n-1}`); `None` at level 0.
    pub inclusion: Option<SparseMat>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("module must have at least level 0")]
    Empty,
    #[error("level {n}: expected {expected} generator matrices, found {found}")]
    GeneratorCount {
        n: u32,
        expected: usize,
        found: usize,
    },
    #[error("level {n}: generator s_{i} has shape {rows}x{cols}, expected {dim}x{dim}")]
    GeneratorShape {
        n: u32,
        i: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("level {n}: missing inclusion map")]
    MissingInclusion { n: u32 },
    #[error("level 0 must not carry an inclusion map")]
    UnexpectedInclusion,
    #[error("level {n}: inclusion map has shape {rows}x{cols}, expected {dim}x{prev}")]
    InclusionShape {
        n: u32,
        rows: usize,
        cols: usize,
        dim: usize,
        prev: usize,
    },
    #[error("level {n}: involution fails: s_{i}^2 != id")]
    Involution { n: u32, i: usize },
    #[error("level {n}: braid relation fails: s_{i} s_{j} s_{i} != s_{j} s_{i} s_{j}")]
    Braid { n: u32, i: usize, j: usize },
    #[error("level {n}: commutation fails: s_{i} s_{j} != s_{j} s_{i}")]
    Commutation { n: u32, i: usize, j: usize },
    #[error("level {n}: inclusion is not equivariant for s_{i}")]
    Equivariance { n: u32, i: usize },
    #[error("level {n}: exchange relation fails: s_{} does not fix the double inclusion", n - 1)]
    Exchange { n: u32 },
    #[error("operation needs max level >= {needed}, module has {actual}")]
    NotEnoughLevels { needed: u32, actual: u32 },
    #[error("derivative is not defined at level {n}: the shifted inclusion does not preserve the image of iota")]
    DerivativeNotDefined { n: u32 },
}

#[derive(Clone)]
pub struct FiModule {
    levels: Vec<Level>,
}

impl fmt::Debug for FiModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiModule(dims = {:?})", self.dims())
    }
}

impl FiModule {
    /// Validates and wraps the level data.
    pub fn new(levels: Vec<Level>) -> Result<Self, ModuleError> {
        let m = FiModule { levels };
        m.validate()?;
        Ok(m)
    }

    pub fn max_level(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn dim(&self, n: u32) -> usize {
        self.levels[n as usize].dim
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim).collect()
    }

    pub fn level(&self, n: u32) -> &Level {
        &self.levels[n as usize]
    }

    pub fn gens(&self, n: u32) -> &[SparseMat] {
        &self.levels[n as usize].gens
    }

    pub fn inclusion(&self, n: u32) -> &SparseMat {
        self.levels[n as usize]
            .inclusion
            .as_ref()
            .expect("inclusion exists for n >= 1")
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.dim == 0)
    }

    fn validate(&self) -> Result<(), ModuleError> {
        if self.levels.is_empty() {
            return Err(ModuleError::Empty);
        }
        // shapes
        for (n, level) in self.levels.iter().enumerate() {
            let expected = n.saturating_sub(1);
            if level.gens.len() != expected {
                return Err(ModuleError::GeneratorCount {
                    n: n as u32,
                    expected,
                    found: level.gens.len(),
                });
            }
            for (idx, g) in level.gens.iter().enumerate() {
                if g.nrows() != level.dim || g.ncols() != level.dim {
                    return Err(ModuleError::GeneratorShape {
                        n: n as u32,
                        i: idx + 1,
                        rows: g.nrows(),
                        cols: g.ncols(),
                        dim: level.dim,
                    });
                }
            }
            match (&level.inclusion, n) {
                (Some(_), 0) => return Err(ModuleError::UnexpectedInclusion),
                (None, 0) => {}
                (None, _) => return Err(ModuleError::MissingInclusion { n: n as u32 }),
                (Some(phi), _) => {
                    let prev = self.levels[n - 1].dim;
                    if phi.nrows() != level.dim || phi.ncols() != prev {
                        return Err(ModuleError::InclusionShape {
                            n: n as u32,
                            rows: phi.nrows(),
                            cols: phi.ncols(),
                            dim: level.dim,
                            prev,
                        });
                    }
                }
            }
        }
        // identities, per level ascending
        for n in 0..self.levels.len() {
            let gens = &self.levels[n].gens;
            let dim = self.levels[n].dim;
            let id = SparseMat::identity(dim);
            for (idx, g) in gens.iter().enumerate() {
                if g.mul(g) != id {
                    return Err(ModuleError::Involution {
                        n: n as u32,
                        i: idx + 1,
                    });
                }
            }
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    let (a, b) = (&gens[i], &gens[j]);
                    if j == i + 1 {
                        if a.mul(b).mul(a) != b.mul(a).mul(b) {
                            return Err(ModuleError::Braid {
                                n: n as u32,
                                i: i + 1,
                                j: j + 1,
                            });
                        }
                    } else if a.mul(b) != b.mul(a) {
                        return Err(ModuleError::Commutation {
                            n: n as u32,
                            i: i + 1,
                            j: j + 1,
                        });
                    }
                }
            }
            if n >= 1 {
                let phi = self.levels[n].inclusion.as_ref().unwrap();
                let prev_gens = &self.levels[n - 1].gens;
                for (idx, g_prev) in prev_gens.iter().enumerate() {
                    // s_i for i <= n-2 lives in both S_{n-1} and S_n
                    if phi.mul(g_prev) != gens[idx].mul(phi) {
                        return Err(ModuleError::Equivariance {
                            n: n as u32,
                            i: idx + 1,
                        });
                    }
                }
            }
            if n >= 2 {
                let phi_n = self.levels[n].inclusion.as_ref().unwrap();
                let phi_prev = self.levels[n - 1].inclusion.as_ref().unwrap();
                let double = phi_n.mul(phi_prev);
                let top = &gens[gens.len() - 1];
                if top.mul(&double) != double {
                    return Err(ModuleError::Exchange { n: n as u32 });
                }
            }
        }
        Ok(())
    }

    // ----- constructions -----

    /// The zero module.
    pub fn zero(max_level: u32) -> FiModule {
        let levels = (0..=max_level)
            .map(|n| Level {
                dim: 0,
                gens: vec![SparseMat::zero(0, 0); (n as usize).saturating_sub(1)],
                inclusion: (n > 0).then(|| SparseMat::zero(0, 0)),
            })
            .collect();
        FiModule { levels }
    }

    /// The free module on one generator in degree `p`: level `n` has basis
    /// the injections `[p] -> [n]`, permutations act by postcomposition and
    /// inclusions re-read a tuple in the larger set.
    pub fn free(p: u32, max_level: u32) -> FiModule {
        let mut levels = Vec::with_capacity(max_level as usize + 1);
        let mut prev: Vec<Vec<usize>> = Vec::new();
        for n in 0..=max_level {
            let injs = injections(p as usize, n as usize);
            let index: BTreeMap<Vec<usize>, usize> = injs
                .iter()
                .enumerate()
                .map(|(i, f)| (f.clone(), i))
                .collect();
            let dim = injs.len();
            let gens = (1..n as usize)
                .map(|i| {
                    let cols = injs
                        .iter()
                        .map(|f| {
                            let g: Vec<usize> = f
                                .iter()
                                .map(|&x| {
                                    if x == i {
                                        i + 1
                                    } else if x == i + 1 {
                                        i
                                    } else {
                                        x
                                    }
                                })
                                .collect();
                            vec![(index[&g], Rat::one())]
                        })
                        .collect();
                    SparseMat::from_cols(dim, cols)
                })
                .collect();
            let inclusion = (n > 0).then(|| {
                let cols = prev.iter().map(|f| vec![(index[f], Rat::one())]).collect();
                SparseMat::from_cols(dim, cols)
            });
            levels.push(Level {
                dim,
                gens,
                inclusion,
            });
            prev = injs;
        }
        FiModule { levels }
    }

    /// The module that is one-dimensional in a single level, with every map
    /// zero; its only element dies under every inclusion.
    pub fn concentrated(level: u32, max_level: u32) -> FiModule {
        assert!(level <= max_level);
        let levels = (0..=max_level)
            .map(|n| {
                let dim = usize::from(n == level);
                Level {
                    dim,
                    gens: vec![SparseMat::identity(dim); (n as usize).saturating_sub(1)],
                    inclusion: (n > 0).then(|| SparseMat::zero(dim, usize::from(n - 1 == level))),
                }
            })
            .collect();
        FiModule { levels }
    }

    pub fn direct_sum(&self, other: &FiModule) -> FiModule {
        assert_eq!(self.max_level(), other.max_level());
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| Level {
                dim: a.dim + b.dim,
                gens: a
                    .gens
                    .iter()
                    .zip(&b.gens)
                    .map(|(x, y)| SparseMat::block_diag(&[x, y]))
                    .collect(),
                inclusion: match (&a.inclusion, &b.inclusion) {
                    (Some(x), Some(y)) => Some(SparseMat::block_diag(&[x, y])),
                    (None, None) => None,
                    _ => unreachable!("levels agree"),
                },
            })
            .collect();
        FiModule { levels }
    }

    // ----- the FI structure -----

    /// Action matrix of an arbitrary permutation, as the word product over
    /// its adjacent-transposition factorization.
    pub fn rho(&self, n: u32, perm: &[usize]) -> SparseMat {
        assert_eq!(perm.len(), n as usize);
        let mut acc = SparseMat::identity(self.dim(n));
        for i in adjacent_word(perm) {
            acc = acc.mul(&self.gens(n)[i - 1]);
        }
        acc
    }

    /// The map `V_m -> V_n` of the injection sending `t` to `images[t-1]`,
    /// recovered as `rho(pi) . phi_n . ... . phi_{m+1}` for any permutation
    /// `pi` extending the injection (well defined by the exchange relation).
    pub fn injection_map(&self, images: &[usize], n: u32) -> SparseMat {
        let m = images.len();
        assert!(m <= n as usize && n <= self.max_level());
        let mut perm: Perm = images.to_vec();
        perm.extend(sorted_complement(images, n as usize));
        if m == n as usize {
            return self.rho(n, &perm);
        }
        let mut acc = self.inclusion(m as u32 + 1).clone();
        for l in (m as u32 + 2)..=n {
            acc = self.inclusion(l).mul(&acc);
        }
        self.rho(n, &perm).mul(&acc)
    }

    /// The character of `V_n`: traces of one representative per cycle type.
    pub fn character(&self, n: u32) -> ClassFunction {
        ClassFunction::from_fn(n, |t| self.rho(n, &class_representative(t)).trace())
    }

    /// The induced space `Ind(V, p, n)`: one summand of `V_{n-p}` for each
    /// injection `[p] -> [n]`, with the symmetric group permuting and
    /// twisting summands.
    pub fn induced_level(&self, p: u32, n: u32) -> InducedLevel {
        assert!(p >= 1 && p <= n && n <= self.max_level());
        let source = n - p;
        let block = self.dim(source);
        let summands = injections(p as usize, n as usize);
        let index: BTreeMap<Vec<usize>, usize> = summands
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let dim = summands.len() * block;
        let mut twist_cache: BTreeMap<Perm, SparseMat> = BTreeMap::new();
        let mut gens = Vec::new();
        for i in 1..n as usize {
            let mut cols: Vec<SparseVec> = vec![Vec::new(); dim];
            for (f_idx, f) in summands.iter().enumerate() {
                let swap = |x: usize| {
                    if x == i {
                        i + 1
                    } else if x == i + 1 {
                        i
                    } else {
                        x
                    }
                };
                let g: Vec<usize> = f.iter().map(|&x| swap(x)).collect();
                let g_idx = index[&g];
                let cf = sorted_complement(f, n as usize);
                let cg = sorted_complement(&g, n as usize);
                let twist: Perm = cf
                    .iter()
                    .map(|&x| cg.iter().position(|&y| y == swap(x)).unwrap() + 1)
                    .collect();
                let mat = twist_cache
                    .entry(twist.clone())
                    .or_insert_with(|| self.rho(source, &twist));
                for c in 0..block {
                    cols[f_idx * block + c] = mat
                        .col(c)
                        .iter()
                        .map(|(r, v)| (g_idx * block + r, v.clone()))
                        .collect();
                }
            }
            gens.push(SparseMat::from_cols(dim, cols));
        }
        InducedLevel {
            source_level: source,
            target_level: n,
            summands,
            block,
            gens,
        }
    }

    /// The natural map `Ind(V, 1, n) -> V_n`: on the summand indexed by
    /// `i`, the FI map of the inclusion of the complement of `i`.
    pub fn natural_map(&self, n: u32) -> SparseMat {
        assert!(n >= 1 && n <= self.max_level());
        let blocks: Vec<SparseMat> = (1..=n as usize)
            .map(|i| self.injection_map(&sorted_complement(&[i], n as usize), n))
            .collect();
        let mut out = blocks[0].clone();
        for b in &blocks[1..] {
            out = out.hcat(b);
        }
        out
    }

    /// The two maps `Ind(V, 2, n) -> Ind(V, 1, n)` that forget one element
    /// of the domain; their coequalizer relation detects level-`n`
    /// relations. `natural_map . d1 = natural_map . d2` always.
    pub fn two_natural_maps(&self, n: u32) -> (SparseMat, SparseMat) {
        assert!(n >= 2 && n <= self.max_level());
        let d_small = self.dim(n - 2);
        let d_big = self.dim(n - 1);
        let pairs = injections(2, n as usize);
        let total_cols = pairs.len() * d_small;
        let total_rows = n as usize * d_big;
        let mut component_cache: BTreeMap<Vec<usize>, SparseMat> = BTreeMap::new();
        let mut build = |forget_first: bool| -> SparseMat {
            let mut cols: Vec<SparseVec> = vec![Vec::new(); total_cols];
            for (f_idx, f) in pairs.iter().enumerate() {
                let (a, b) = (f[0], f[1]);
                let kept = if forget_first { b } else { a };
                let c2 = sorted_complement(&[a, b], n as usize);
                let c1 = sorted_complement(&[kept], n as usize);
                let images: Vec<usize> = c2
                    .iter()
                    .map(|&x| c1.iter().position(|&y| y == x).unwrap() + 1)
                    .collect();
                let component = component_cache
                    .entry(images.clone())
                    .or_insert_with(|| self.injection_map(&images, n - 1));
                let target = kept - 1; // summand of Ind(V, 1, n)
                for c in 0..d_small {
                    cols[f_idx * d_small + c] = component
                        .col(c)
                        .iter()
                        .map(|(r, v)| (target * d_big + r, v.clone()))
                        .collect();
                }
            }
            SparseMat::from_cols(total_rows, cols)
        };
        (build(true), build(false))
    }

    /// Dimension and character of `coker(Ind(V, 1, n) -> V_n)`, the degree
    /// `n` part of the zeroth FI-homology.
    pub fn fi_homology_zero(&self, n: u32) -> (usize, ClassFunction) {
        if n == 0 {
            let d = self.dim(0);
            return (
                d,
                ClassFunction::from_fn(0, |_| Rat::from_integer((d as i64).into())),
            );
        }
        let nat = self.natural_map(n);
        let basis = ReducedBasis::from_echelon(&linalg::image(&nat));
        let dim = self.dim(n) - basis.rank();
        let chi = ClassFunction::from_fn(n, |t| {
            let rho = self.rho(n, &class_representative(t));
            rho.trace() - basis.restricted_trace(&rho)
        });
        (dim, chi)
    }

    fn level_check(&self, n: u32, with_relations: bool) -> LevelCheck {
        let nat = self.natural_map(n);
        let nat_rank = linalg::rank(&nat);
        let ker_dim = nat.ncols() - nat_rank;
        let rel_ok = if !with_relations {
            false
        } else if n == 1 {
            ker_dim == 0
        } else {
            let (d1, d2) = self.two_natural_maps(n);
            let diff = d1.sub(&d2);
            assert!(
                nat.mul(&diff).is_zero(),
                "natural map must coequalize the two maps from two-point induction"
            );
            // the composite identity gives im(d1 - d2) inside ker, so the
            // subspaces agree exactly when the dimensions do
            linalg::rank(&diff) == ker_dim
        };
        LevelCheck {
            h0_dim: self.dim(n) - nat_rank,
            rel_ok,
        }
    }

    /// Degrees of the zeroth FI-homology observed within the truncation.
    pub fn generation_degree(&self) -> (i64, Flag) {
        let h0 = self.h0_dims();
        let t0 = h0
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(n, _)| n as i64)
            .max()
            .unwrap_or(-1);
        let flag = if *h0.last().unwrap() == 0 {
            Flag::CertifiedAtTruncation
        } else {
            Flag::InsufficientLevels
        };
        (t0, flag)
    }

    pub fn h0_dims(&self) -> Vec<usize> {
        (0..=self.max_level())
            .map(|n| {
                if n == 0 {
                    self.dim(0)
                } else {
                    self.level_check(n, false).h0_dim
                }
            })
            .collect()
    }

    /// The smallest `r >= 0` such that kernel of the natural map equals the
    /// image of `d1 - d2` at every level above `r`; `-1` for the zero
    /// module.
    pub fn relation_degree(&self) -> (i64, Flag) {
        if self.is_zero() {
            return (-1, Flag::CertifiedAtTruncation);
        }
        let n_max = self.max_level();
        let mut t1 = 0;
        let mut ok_at_top = true;
        for n in 1..=n_max {
            let check = self.level_check(n, true);
            if !check.rel_ok {
                t1 = n as i64;
                if n == n_max {
                    ok_at_top = false;
                }
            }
        }
        let flag = if ok_at_top {
            Flag::CertifiedAtTruncation
        } else {
            Flag::InsufficientLevels
        };
        (t1, flag)
    }

    /// The shift: level `n` becomes `V_{n+1}` with the symmetric group
    /// acting through the embedding fixing the added point, together with
    /// the natural maps `iota_n: V_n -> (SV)_n` given by the inclusions.
    pub fn shift(&self) -> Result<Shifted, ModuleError> {
        let n_max = self.max_level();
        if n_max < 1 {
            return Err(ModuleError::NotEnoughLevels {
                needed: 1,
                actual: n_max,
            });
        }
        let mut levels = Vec::new();
        let mut iota = Vec::new();
        for n in 0..n_max {
            let up = &self.levels[n as usize + 1];
            let gens: Vec<SparseMat> = up
                .gens
                .iter()
                .take((n as usize).saturating_sub(1))
                .cloned()
                .collect();
            let inclusion = (n > 0).then(|| {
                // the shifted structure map is the map of the injection
                // [n] -> [n+1] hitting everything but n: rho(s_n) . phi_{n+1}
                let top = &up.gens[n as usize - 1];
                top.mul(up.inclusion.as_ref().unwrap())
            });
            levels.push(Level {
                dim: up.dim,
                gens,
                inclusion,
            });
            iota.push(self.inclusion(n + 1).clone());
        }
        let module = FiModule::new(levels)?;
        Ok(Shifted { module, iota })
    }

    /// The derivative: level-wise cokernel of `iota: V -> SV` with the
    /// induced action and structure maps. Well-definedness of the induced
    /// structure maps is checked.
    pub fn derivative(&self) -> Result<FiModule, ModuleError> {
        let shifted = self.shift()?;
        let n_max = shifted.module.max_level();
        let quotients: Vec<Quotient> = shifted.iota.iter().map(Quotient::by_image_of).collect();
        let mut levels = Vec::new();
        for n in 0..=n_max {
            let q = &quotients[n as usize];
            let gens: Vec<SparseMat> = shifted
                .module
                .gens(n)
                .iter()
                .map(|g| {
                    debug_assert!(q.preserves_span(g, q));
                    q.induced_endo(g)
                })
                .collect();
            let inclusion = if n == 0 {
                None
            } else {
                let prev_q = &quotients[n as usize - 1];
                let ambient = shifted.module.inclusion(n);
                if !prev_q.preserves_span(ambient, q) {
                    return Err(ModuleError::DerivativeNotDefined { n });
                }
                Some(prev_q.induced_map(ambient, q))
            };
            levels.push(Level {
                dim: q.dim(),
                gens,
                inclusion,
            });
        }
        FiModule::new(levels)
    }

    /// Stable and local degree observed from the dimension sequence, with
    /// the derivative-chain cross-check, plus the generation and relation
    /// degrees. Needs `max level >= 3`.
    pub fn observed_degrees(&self) -> Result<DegreeReport, DegreeError> {
        let n_max = self.max_level();
        if n_max < 3 {
            return Err(DegreeError::TooFewLevels(n_max));
        }
        let dims: Vec<i64> = self.dims().iter().map(|&d| d as i64).collect();
        let h0 = self.h0_dims();
        let (t0, t0_flag) = self.generation_degree();
        let (t1, t1_flag) = self.relation_degree();

        if self.is_zero() {
            return Ok(DegreeReport {
                dims: self.dims(),
                h0_dims: h0,
                t0: -1,
                t0_flag: Flag::CertifiedAtTruncation,
                t1,
                t1_flag,
                delta: -1,
                delta_flag: Flag::CertifiedAtTruncation,
                hmax: -1,
                hmax_flag: Flag::CertifiedAtTruncation,
                window: (0, n_max),
            });
        }

        let (window_start, diffs) = stable_tail(&dims).ok_or(DegreeError::NoStableTail)?;
        let raw_degree = poly_degree(&diffs);
        // a torsion tail interpolates the zero polynomial; the observed
        // stable degree of a nonzero module is reported as at least 0
        let delta = raw_degree.max(0);
        let hmax = (0..=n_max as i64)
            .filter(|&n| dims[n as usize] != newton_eval(window_start as i64, &diffs, n))
            .max()
            .unwrap_or(-1);

        // cross-check: the derivative chain must vanish exactly past delta
        let mut chain = self.clone();
        let mut nonzero_at_delta = delta == 0 && !self.is_zero();
        for step in 1..=delta + 1 {
            if chain.max_level() < 1 {
                return Err(DegreeError::TooFewLevels(n_max));
            }
            chain = chain.derivative()?;
            if step == delta {
                nonzero_at_delta = !chain.is_zero();
            }
            if step == delta + 1 {
                let top = chain.max_level();
                for n in window_start..=top.min(n_max - step as u32) {
                    if chain.dim(n) != 0 {
                        return Err(DegreeError::CrossCheck(format!(
                            "derivative order {} is nonzero at level {n} inside the stable window",
                            delta + 1
                        )));
                    }
                }
            }
        }
        if !nonzero_at_delta {
            return Err(DegreeError::CrossCheck(format!(
                "derivative order {delta} vanishes everywhere, the observed stable degree is overestimated"
            )));
        }

        Ok(DegreeReport {
            dims: self.dims(),
            h0_dims: h0,
            t0,
            t0_flag,
            t1,
            t1_flag,
            delta,
            delta_flag: Flag::CertifiedAtTruncation,
            hmax,
            hmax_flag: Flag::CertifiedAtTruncation,
            window: (window_start, n_max),
        })
    }
}

struct LevelCheck {
    h0_dim: usize,
    rel_ok: bool,
}

/// Result of [`FiModule::shift`].
pub struct Shifted {
    pub module: FiModule,
    /// `iota_n: V_n -> (SV)_n` for `n = 0..max_level-1`.
    pub iota: Vec<SparseMat>,
}

/// An induced space with its symmetric-group action.
pub struct InducedLevel {
    pub source_level: u32,
    pub target_level: u32,
    /// Injections `[p] -> [n]` as image tuples, lexicographic.
    pub summands: Vec<Vec<usize>>,
    /// Dimension of each summand.
    pub block: usize,
    gens: Vec<SparseMat>,
}

impl InducedLevel {
    pub fn dim(&self) -> usize {
        self.summands.len() * self.block
    }

    pub fn gens(&self) -> &[SparseMat] {
        &self.gens
    }

    /// Character of the induced action, via word products of the explicit
    /// generator matrices.
    pub fn character(&self) -> ClassFunction {
        let n = self.target_level;
        ClassFunction::from_fn(n, |t| {
            let mut acc = SparseMat::identity(self.dim());
            for i in adjacent_word(&class_representative(t)) {
                acc = acc.mul(&self.gens[i - 1]);
            }
            acc.trace()
        })
    }
}

/// All injections `[p] -> [n]` as image tuples, lexicographic.
pub fn injections(p: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(p: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == p {
            out.push(current.clone());
            return;
        }
        for v in 1..=n {
            if !current.contains(&v) {
                current.push(v);
                rec(p, n, current, out);
                current.pop();
            }
        }
    }
    rec(p, n, &mut current, &mut out);
    out
}

/// Number of injections `[p] -> [n]`.
pub fn injection_count(p: u32, n: u32) -> u64 {
    if p > n {
        return 0;
    }
    factorial(n) / factorial(n - p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    CertifiedAtTruncation,
    InsufficientLevels,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::CertifiedAtTruncation => "certified-at-truncation",
            Flag::InsufficientLevels => "insufficient-levels",
        })
    }
}

/// Degrees observed within the truncation. Every value is an observation
/// about the stored levels, never a certificate about the untruncated
/// module: `delta` is the degree of the polynomial interpolating the
/// dimension tail (clamped at 0 for a nonzero module whose tail vanishes),
/// and `hmax` is the last level whose dimension deviates from that
/// polynomial, which is the operational handle on the local degree rather
/// than its definition.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub dims: Vec<usize>,
    pub h0_dims: Vec<usize>,
    pub t0: i64,
    pub t0_flag: Flag,
    pub t1: i64,
    pub t1_flag: Flag,
    pub delta: i64,
    pub delta_flag: Flag,
    pub hmax: i64,
    pub hmax_flag: Flag,
    /// Levels on which the dimension sequence is exactly polynomial.
    pub window: (u32, u32),
}

#[derive(Debug, thiserror::Error)]
pub enum DegreeError {
    #[error("degree detection needs max level >= 3, module has {0}")]
    TooFewLevels(u32),
    #[error("insufficient levels: no polynomial tail of length >= 2 within the truncation")]
    NoStableTail,
    #[error("derivative cross-check failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Longest suffix of `dims` interpolated by a polynomial of degree at most
/// `len - 2`; returns the start index and the forward-difference
/// coefficients at it.
fn stable_tail(dims: &[i64]) -> Option<(u32, Vec<i64>)> {
    for w in 0..dims.len() - 1 {
        let suffix = &dims[w..];
        if let Some(diffs) = overdetermined_diffs(suffix) {
            return Some((w as u32, diffs));
        }
    }
    None
}

/// Forward differences of a sequence that is polynomial with at least one
/// redundant sample: some difference row must vanish identically while
/// still nonempty.
fn overdetermined_diffs(seq: &[i64]) -> Option<Vec<i64>> {
    let mut diffs = Vec::new();
    let mut row = seq.to_vec();
    loop {
        if row.is_empty() {
            return None;
        }
        if row.iter().all(|&v| v == 0) {
            // pad so newton_eval sees explicit zero leading coefficients
            return Some(diffs);
        }
        diffs.push(row[0]);
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
}

fn poly_degree(diffs: &[i64]) -> i64 {
    match diffs.iter().rposition(|&v| v != 0) {
        Some(j) => j as i64,
        None => -1,
    }
}

/// Newton forward-difference evaluation at integer `x` of the polynomial
/// with differences `diffs` based at `base`.
fn newton_eval(base: i64, diffs: &[i64], x: i64) -> i64 {
    let mut total: i128 = 0;
    for (j, &c) in diffs.iter().enumerate() {
        total += c as i128 * binomial_i128(x - base, j);
    }
    i64::try_from(total).expect("polynomial value out of range")
}

fn binomial_i128(m: i64, j: usize) -> i128 {
    let mut num: i128 = 1;
    for t in 0..j as i128 {
        num *= m as i128 - t;
    }
    let mut den: i128 = 1;
    for t in 1..=j as i128 {
        den *= t;
    }
    num / den
}
