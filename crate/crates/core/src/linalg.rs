//! Sparse exact-rational linear algebra.
//!
//! Everything downstream (degree detection, subspace equality, quotients)
//! reduces to exact rank computations over the rationals: no tolerances,
//! bit-exact answers. Matrices are stored column-major and sparse since the
//! structure maps of the modules we build are close to signed permutations.

use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sorted-by-index list of nonzero entries.
pub type SparseVec = Vec<(usize, Rat)>;

/// `y + c * x` for sorted sparse vectors.
pub fn axpy(y: &SparseVec, c: &Rat, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        match (y.get(i), x.get(j)) {
            (Some((yi, yv)), Some((xi, xv))) if yi == xi => {
                let v = yv + c * xv;
                if !v.is_zero() {
                    out.push((*yi, v));
                }
                i += 1;
                j += 1;
            }
            (Some((yi, yv)), Some((xi, _))) if yi < xi => {
                out.push((*yi, yv.clone()));
                i += 1;
            }
            (Some(_), Some((xi, xv))) => {
                let v = c * xv;
                if !v.is_zero() {
                    out.push((*xi, v));
                }
                j += 1;
            }
            (Some((yi, yv)), None) => {
                out.push((*yi, yv.clone()));
                i += 1;
            }
            (None, Some((xi, xv))) => {
                let v = c * xv;
                if !v.is_zero() {
                    out.push((*xi, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn scale_vec(v: &SparseVec, c: &Rat) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|i| vec![(i, Rat::one())]).collect();
        SparseMat {
            nrows: n,
            ncols: n,
            cols,
        }
    }

    pub fn from_cols(nrows: usize, cols: Vec<SparseVec>) -> Self {
        for col in &cols {
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|(i, v)| *i < nrows && !v.is_zero()));
        }
        SparseMat {
            nrows,
            ncols: cols.len(),
            cols,
        }
    }

    pub fn from_entries(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Self {
        let mut cols: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); ncols];
        for (r, c, v) in entries {
            assert!(r < nrows && c < ncols);
            let cell = cols[c].entry(r).or_insert_with(Rat::zero);
            *cell += v;
        }
        let cols = cols
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMat { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, r: usize, c: usize) -> Rat {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(pos) => self.cols[c][pos].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// `self * v` where `v` is a coordinate vector of length `ncols`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (j, c) in v {
            acc = axpy(&acc, c, &self.cols[*j]);
        }
        acc
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch in mul");
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        SparseMat {
            nrows: self.nrows,
            ncols: rhs.ncols,
            cols,
        }
    }

    pub fn add(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let one = Rat::one();
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| axpy(a, &one, b))
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols,
        }
    }

    pub fn sub(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let minus_one = -Rat::one();
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| axpy(a, &minus_one, b))
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols,
        }
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.nrows, self.ncols);
        (0..self.ncols).map(|j| self.entry(j, j)).sum()
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hcat(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!(self.nrows, rhs.nrows);
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols + rhs.ncols,
            cols,
        }
    }

    pub fn block_diag(blocks: &[&SparseMat]) -> SparseMat {
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let ncols = blocks.iter().map(|b| b.ncols).sum();
        let mut cols = Vec::with_capacity(ncols);
        let mut row_off = 0;
        for b in blocks {
            for col in &b.cols {
                cols.push(col.iter().map(|(i, v)| (i + row_off, v.clone())).collect());
            }
            row_off += b.nrows;
        }
        SparseMat { nrows, ncols, cols }
    }

    /// Dense row-major entries, for serialization.
    pub fn to_row_major(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.nrows * self.ncols];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out[i * self.ncols + j] = v.clone();
            }
        }
        out
    }

    pub fn from_row_major(nrows: usize, ncols: usize, entries: &[Rat]) -> Self {
        assert_eq!(entries.len(), nrows * ncols);
        let mut cols: Vec<SparseVec> = vec![Vec::new(); ncols];
        for i in 0..nrows {
            for j in 0..ncols {
                let v = &entries[i * ncols + j];
                if !v.is_zero() {
                    cols[j].push((i, v.clone()));
                }
            }
        }
        SparseMat { nrows, ncols, cols }
    }
}

impl std::fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SparseMat {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows.min(12) {
            write!(f, "  ")?;
            for j in 0..self.ncols.min(12) {
                write!(f, "{} ", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Incremental column echelon form; pivot vectors are normalized to leading
/// coefficient one but not back-substituted. Enough for exact rank.
pub struct Echelon {
    dim: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Residual of `v` after eliminating every leading entry that matches a
    /// pivot. Empty iff `v` lies in the current span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        while let Some((lead, coeff)) = v.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let c = -coeff;
                    v = axpy(&v, &c, p);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns true if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.first().cloned() {
            None => false,
            Some((lead, coeff)) => {
                let inv = Rat::one() / coeff;
                self.pivots.insert(lead, scale_vec(&r, &inv));
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }
}

/// Column space of `m` as an echelon form.
pub fn image(m: &SparseMat) -> Echelon {
    let mut e = Echelon::new(m.nrows());
    for col in m.cols() {
        e.insert(col);
    }
    e
}

pub fn rank(m: &SparseMat) -> usize {
    image(m).rank()
}

/// Exact subspace equality of two column spans inside the same ambient
/// space, decided by `rank(A) = rank(B) = rank(A|B)`.
pub fn subspace_eq(a: &SparseMat, b: &SparseMat) -> bool {
    assert_eq!(a.nrows(), b.nrows());
    let ra = rank(a);
    let rb = rank(b);
    ra == rb && rank(&a.hcat(b)) == ra
}

/// Fully reduced column echelon basis: each basis vector has coefficient one
/// at its own pivot index and zero at every other pivot index, so normal
/// forms modulo the span are canonical.
pub struct ReducedBasis {
    dim: usize,
    // sorted by pivot index
    pivots: Vec<(usize, SparseVec)>,
}

impl ReducedBasis {
    pub fn from_echelon(e: &Echelon) -> Self {
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        // process descending: entries past the leading index can only hit
        // higher pivots, which are already fully reduced
        for (&p, v) in e.pivots.iter().rev() {
            let mut v = v.clone();
            loop {
                let hit = v
                    .iter()
                    .find(|(i, _)| *i != p && reduced.contains_key(i))
                    .cloned();
                match hit {
                    Some((i, c)) => {
                        let c = -c;
                        v = axpy(&v, &c, &reduced[&i]);
                    }
                    None => break,
                }
            }
            reduced.insert(p, v);
        }
        ReducedBasis {
            dim: e.dim,
            pivots: reduced.into_iter().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivot_indices(&self) -> Vec<usize> {
        self.pivots.iter().map(|(p, _)| *p).collect()
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.iter().map(|(_, v)| v)
    }

    fn coeff_at_pivot(v: &SparseVec, p: usize) -> Option<Rat> {
        v.binary_search_by_key(&p, |e| e.0)
            .ok()
            .map(|pos| v[pos].1.clone())
    }

    fn basis_vec_for(&self, p: usize) -> Option<&SparseVec> {
        self.pivots
            .binary_search_by_key(&p, |e| e.0)
            .ok()
            .map(|pos| &self.pivots[pos].1)
    }

    /// Canonical representative of `v` modulo the span: the support of the
    /// result avoids every pivot index.
    pub fn normal_form(&self, v: &SparseVec) -> SparseVec {
        // eliminating a pivot entry only introduces non-pivot entries, so the
        // pivot-indexed coefficients of `v` can be read off up front
        let hits: Vec<(usize, Rat)> = v
            .iter()
            .filter(|(i, _)| self.basis_vec_for(*i).is_some())
            .cloned()
            .collect();
        let mut out = v.clone();
        for (p, c) in hits {
            let c = -c;
            let basis_vec = self.basis_vec_for(p).unwrap().clone();
            out = axpy(&out, &c, &basis_vec);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.normal_form(v).is_empty()
    }

    /// Trace of `a` restricted to the spanned (invariant) subspace.
    pub fn restricted_trace(&self, a: &SparseMat) -> Rat {
        let mut total = Rat::zero();
        for (p, basis_vec) in &self.pivots {
            let img = a.apply(basis_vec);
            if let Some(c) = Self::coeff_at_pivot(&img, *p) {
                total += c;
            }
        }
        total
    }
}

/// A quotient `ambient / span` with canonical coordinates: the ambient
/// coordinates that are not pivots of the reduced basis.
pub struct Quotient {
    basis: ReducedBasis,
    coords: Vec<usize>,
    coord_pos: BTreeMap<usize, usize>,
}

impl Quotient {
    pub fn by_image_of(m: &SparseMat) -> Self {
        Self::from_reduced(ReducedBasis::from_echelon(&image(m)))
    }

    pub fn from_reduced(basis: ReducedBasis) -> Self {
        let pivot_set: BTreeMap<usize, ()> =
            basis.pivot_indices().into_iter().map(|p| (p, ())).collect();
        let coords: Vec<usize> = (0..basis.dim())
            .filter(|i| !pivot_set.contains_key(i))
            .collect();
        let coord_pos = coords.iter().enumerate().map(|(q, &i)| (i, q)).collect();
        Quotient {
            basis,
            coords,
            coord_pos,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.dim()
    }

    /// Ambient coordinate lifting the `q`-th quotient coordinate.
    pub fn lift_coord(&self, q: usize) -> usize {
        self.coords[q]
    }

    pub fn project_vec(&self, v: &SparseVec) -> SparseVec {
        self.basis
            .normal_form(v)
            .into_iter()
            .map(|(i, c)| (self.coord_pos[&i], c))
            .collect()
    }

    /// The matrix induced on the quotient by an ambient endomorphism.
    /// Requires the span to be invariant; see [`Quotient::preserves_span`].
    pub fn induced_endo(&self, a: &SparseMat) -> SparseMat {
        assert_eq!(a.nrows(), self.ambient_dim());
        assert_eq!(a.ncols(), self.ambient_dim());
        let cols = self
            .coords
            .iter()
            .map(|&i| self.project_vec(a.col(i)))
            .collect();
        SparseMat::from_cols(self.dim(), cols)
    }

    /// The matrix `target_quotient <- self` induced by an ambient map
    /// `a: self.ambient -> target.ambient`.
    pub fn induced_map(&self, a: &SparseMat, target: &Quotient) -> SparseMat {
        assert_eq!(a.ncols(), self.ambient_dim());
        assert_eq!(a.nrows(), target.ambient_dim());
        let cols = self
            .coords
            .iter()
            .map(|&i| target.project_vec(a.col(i)))
            .collect();
        SparseMat::from_cols(target.dim(), cols)
    }

    /// Whether `a` maps the quotient's span into `target`'s span (the
    /// well-definedness condition for `induced_map`).
    pub fn preserves_span(&self, a: &SparseMat, target: &Quotient) -> bool {
        self.basis
            .basis_vectors()
            .all(|w| target.basis.contains(&a.apply(w)))
    }
}

/// Exact solve of a small dense linear system `rows * x = rhs`.
pub enum SolveOutcome {
    Inconsistent,
    Solved { x: Vec<Rat>, unique: bool },
}

#[allow(clippy::needless_range_loop)] // the update reads one row while writing another
pub fn solve_exact(mut rows: Vec<Vec<Rat>>, mut rhs: Vec<Rat>, nvars: usize) -> SolveOutcome {
    assert_eq!(rows.len(), rhs.len());
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        rhs.swap(r, pr);
        let inv = Rat::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..nvars {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
                let t = &rhs[r] * &f;
                rhs[i] -= t;
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return SolveOutcome::Inconsistent;
    }
    let mut x = vec![Rat::zero(); nvars];
    for (row, &col) in pivot_col_of_row.iter().enumerate() {
        x[col] = rhs[row].clone();
    }
    SolveOutcome::Solved {
        x,
        unique: pivot_col_of_row.len() == nvars,
    }
}
