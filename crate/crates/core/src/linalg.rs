//! Sparse exact matrices and Gaussian elimination.
//!
//! Rows are stored as sorted `(column, value)` lists with no explicit zeros,
//! so structural equality is value equality. Elimination always pivots on the
//! first nonzero entry; results are deterministic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type SparseVec<K> = Vec<(usize, K)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<K>>,
}

/// `a + c * b` on sparse vectors.
pub fn axpy<K: Scalar>(a: &[(usize, K)], c: &K, b: &[(usize, K)]) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = c.mul_ref(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add_ref(&c.mul_ref(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_vec<K: Scalar>(c: &K, v: &[(usize, K)]) -> SparseVec<K> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, c.mul_ref(x))).collect()
}

impl<K: Scalar> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, K::one())]).collect() }
    }

    pub fn scalar(n: usize, c: K) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, c.clone())]).collect() }
    }

    pub fn from_dense(rows: usize, cols: usize, entries: Vec<Vec<K>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected {}x{} dense matrix", rows, cols)));
        }
        let data = entries
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Matrix { rows, cols, data })
    }

    /// Build from `(row, col, value)` triples; repeated positions accumulate.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, K)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, K>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let e = acc[r].entry(c).or_insert_with(K::zero);
            *e = e.add_ref(&v);
        }
        let data = acc.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec<K>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// A single column.
    pub fn column(v: &[(usize, K)], len: usize) -> Self {
        let mut m = Self::zeros(len, 1);
        for (i, x) in v {
            m.data[*i] = vec![(0, x.clone())];
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[(usize, K)] {
        &self.data[r]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.data.iter()
    }

    pub fn get(&self, r: usize, c: usize) -> K {
        match self.data[r].binary_search_by_key(&c, |(i, _)| *i) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => K::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &K)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<K>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale(&self, c: &K) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| scale_vec(c, r)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-K::one())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.add_scaled(&K::one(), other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.add_scaled(&-K::one(), other))
    }

    /// `self + c * other`; panics on shape mismatch.
    pub fn add_scaled(&self, c: &K, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, c, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&K::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-K::one(), other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(self.mul(other))
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, K> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        let t = a.mul_ref(b);
                        match acc.get_mut(c) {
                            Some(e) => *e = e.add_ref(&t),
                            None => {
                                acc.insert(*c, t);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, v: &[(usize, K)]) -> SparseVec<K> {
        let dense: BTreeMap<usize, &K> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = K::zero();
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    s = s.add_ref(&a.mul_ref(x));
                }
            }
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        out
    }

    /// Kronecker product with row-major flattening: `(i, j) -> i * other_dim + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, a) in ra {
                    for (cb, b) in rb {
                        row.push((ca * other.cols + cb, a.mul_ref(b)));
                    }
                }
                data.push(row);
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Matrix<K>>) -> Self
    where
        K: 'a,
    {
        factors.into_iter().fold(Matrix::identity(1), |acc, m| acc.kron(m))
    }

    pub fn submatrix(&self, row0: usize, nrows: usize, col0: usize, ncols: usize) -> Self {
        assert!(row0 + nrows <= self.rows && col0 + ncols <= self.cols);
        let data = self.data[row0..row0 + nrows]
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| *c >= col0 && *c < col0 + ncols)
                    .map(|(c, v)| (c - col0, v.clone()))
                    .collect()
            })
            .collect();
        Matrix { rows: nrows, cols: ncols, data }
    }

    /// Add `block` into `self` with its top-left corner at `(row0, col0)`.
    pub fn add_block(&mut self, row0: usize, col0: usize, block: &Self) {
        assert!(row0 + block.rows <= self.rows && col0 + block.cols <= self.cols);
        for (r, brow) in block.data.iter().enumerate() {
            if brow.is_empty() {
                continue;
            }
            let shifted: SparseVec<K> = brow.iter().map(|(c, v)| (c + col0, v.clone())).collect();
            let row = &mut self.data[row0 + r];
            *row = axpy(row, &K::one(), &shifted);
        }
    }

    pub fn block_diag(blocks: &[Matrix<K>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.add_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    /// Vertically stack matrices with equal column counts.
    pub fn vstack(blocks: &[Matrix<K>], cols: usize) -> Self {
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows: data.len(), cols, data }
    }

    pub fn trace(&self) -> K {
        (0..self.rows.min(self.cols)).fold(K::zero(), |acc, i| acc.add_ref(&self.get(i, i)))
    }

    /// Column `c` as a sparse vector.
    pub fn col(&self, c: usize) -> SparseVec<K> {
        self.data.iter().enumerate().filter_map(|(r, row)| {
            row.binary_search_by_key(&c, |(i, _)| *i).ok().map(|k| (r, row[k].1.clone()))
        }).collect()
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec<K>]) -> Self {
        let triples = columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())));
        Matrix::from_triples(rows, columns.len(), triples)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for row in &self.data {
            e.insert(row.clone());
        }
        e.rank()
    }

    /// Basis of the right kernel, one vector per free column, in increasing
    /// free-column order. Each vector is `1` at its free column and `0` at the
    /// other free columns.
    pub fn kernel(&self) -> Kernel<K> {
        let mut e = Echelon::new(self.cols);
        for row in &self.data {
            e.insert(row.clone());
        }
        e.kernel()
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[(usize, K)]) -> Option<SparseVec<K>> {
        let n = self.cols;
        let mut bd: BTreeMap<usize, K> = BTreeMap::new();
        for (i, v) in b {
            bd.insert(*i, v.clone());
        }
        let mut e = Echelon::new(n + 1);
        for (r, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            if let Some(v) = bd.get(&r) {
                aug.push((n, v.clone()));
            }
            e.insert(aug);
        }
        let rref = e.into_rref();
        if rref.contains_key(&n) {
            return None;
        }
        let mut x = Vec::new();
        for (p, row) in rref {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == n) {
                x.push((p, v.clone()));
            }
        }
        x.sort_by_key(|(i, _)| *i);
        Some(x)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut e = Echelon::new(2 * n);
        for (r, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            aug.push((n + r, K::one()));
            e.insert(aug);
        }
        let rref = e.into_rref();
        if (0..n).any(|c| !rref.contains_key(&c)) {
            return None;
        }
        let rows = (0..n).map(|c| rref[&c].iter().filter(|(j, _)| *j >= n).map(|(j, v)| (j - n, v.clone())).collect());
        Some(Matrix::from_rows(n, rows.collect()))
    }
}

/// Incremental row echelon form keyed by pivot column; pivots are normalized to 1.
pub struct Echelon<K> {
    cols: usize,
    pivots: BTreeMap<usize, SparseVec<K>>,
}

impl<K: Scalar> Echelon<K> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivots: BTreeMap::new() }
    }

    /// Reduce the leading entries of `row` against existing pivots; returns
    /// `true` if it contributed a new pivot.
    pub fn insert(&mut self, mut row: SparseVec<K>) -> bool {
        loop {
            let Some((lead, val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-val, p),
                None => {
                    let inv = val.inv().expect("nonzero leading entry");
                    let normalized = scale_vec(&inv, &row);
                    self.pivots.insert(lead, normalized);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Fully reduced rows, keyed by pivot column.
    pub fn into_rref(mut self) -> BTreeMap<usize, SparseVec<K>> {
        let keys: Vec<usize> = self.pivots.keys().rev().cloned().collect();
        // process from the last pivot backwards so each clearing pass sees final rows
        for (idx, &p) in keys.iter().enumerate() {
            let prow = self.pivots[&p].clone();
            for &q in &keys[idx + 1..] {
                let row = &self.pivots[&q];
                if let Ok(k) = row.binary_search_by_key(&p, |(i, _)| *i) {
                    let c = -row[k].1.clone();
                    let new = axpy(row, &c, &prow);
                    self.pivots.insert(q, new);
                }
            }
        }
        self.pivots
    }

    pub fn kernel(self) -> Kernel<K> {
        let cols = self.cols;
        let rref = self.into_rref();
        let free: Vec<usize> = (0..cols).filter(|c| !rref.contains_key(c)).collect();
        let mut basis: Vec<SparseVec<K>> = free.iter().map(|&f| vec![(f, K::one())]).collect();
        let index: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for (p, row) in &rref {
            for (c, v) in row {
                if let Some(&k) = index.get(c) {
                    basis[k].push((*p, -v.clone()));
                }
            }
        }
        for b in &mut basis {
            b.sort_by_key(|(i, _)| *i);
        }
        Kernel { dim: cols, free, basis }
    }
}

/// Kernel basis with the free-column coordinate readout.
#[derive(Clone, Debug)]
pub struct Kernel<K> {
    pub dim: usize,
    pub free: Vec<usize>,
    pub basis: Vec<SparseVec<K>>,
}

impl<K: Scalar> Kernel<K> {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of a kernel element: its values at the free columns.
    pub fn coords(&self, v: &[(usize, K)]) -> Vec<K> {
        let m: BTreeMap<usize, &K> = v.iter().map(|(i, x)| (*i, x)).collect();
        self.free.iter().map(|f| m.get(f).map(|x| (*x).clone()).unwrap_or_else(K::zero)).collect()
    }

    pub fn combine(&self, coeffs: &[K]) -> SparseVec<K> {
        let mut out = Vec::new();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = axpy(&out, c, b);
            }
        }
        out
    }
}

/// A basis of a subspace given by arbitrary independent vectors, with an exact
/// coordinate solver.
#[derive(Clone, Debug)]
pub struct ColumnBasis<K> {
    pub ambient: usize,
    pub vectors: Vec<SparseVec<K>>,
    pivot_rows: Vec<usize>,
    pivot_inverse: Matrix<K>,
}

impl<K: Scalar> ColumnBasis<K> {
    pub fn new(ambient: usize, vectors: Vec<SparseVec<K>>) -> Result<Self> {
        let k = vectors.len();
        let m = Matrix::from_columns(ambient, &vectors);
        // pivot rows: rows of m forming an invertible k x k block
        let mut e = Echelon::new(ambient);
        let mt = m.transpose();
        for row in mt.rows_iter() {
            if !e.insert(row.clone()) {
                return Err(Error::Shape("basis vectors are linearly dependent".into()));
            }
        }
        let rref = e.into_rref();
        let pivot_rows: Vec<usize> = rref.keys().cloned().collect();
        let block = Matrix::from_triples(
            k,
            k,
            pivot_rows.iter().enumerate().flat_map(|(i, &r)| m.row(r).iter().map(move |(c, v)| (i, *c, v.clone()))),
        );
        let pivot_inverse = block.inverse().ok_or_else(|| Error::Shape("singular pivot block".into()))?;
        Ok(ColumnBasis { ambient, vectors, pivot_rows, pivot_inverse })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[(usize, K)]) -> Option<Vec<K>> {
        let m: BTreeMap<usize, &K> = v.iter().map(|(i, x)| (*i, x)).collect();
        let rhs: SparseVec<K> = self
            .pivot_rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| m.get(r).map(|x| (i, (*x).clone())))
            .collect();
        let t = self.pivot_inverse.mul_vec(&rhs);
        let mut dense = vec![K::zero(); self.len()];
        for (i, x) in &t {
            dense[*i] = x.clone();
        }
        let recon = self.combine(&dense);
        if recon.as_slice() == v {
            Some(dense)
        } else {
            None
        }
    }

    pub fn combine(&self, coeffs: &[K]) -> SparseVec<K> {
        let mut out = Vec::new();
        for (c, b) in coeffs.iter().zip(&self.vectors) {
            if !c.is_zero() {
                out = axpy(&out, c, b);
            }
        }
        out
    }
}

pub fn dense_to_sparse<K: Scalar>(v: &[K]) -> SparseVec<K> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}
