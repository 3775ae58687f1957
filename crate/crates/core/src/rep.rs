//! The representation category of a ribbon Hopf algebra.
//!
//! Tensor products flatten right-nested: the basis of `x ⊗ y` is
//! `(i, j) ↦ i·dim(y) + j`, so iterated products are strictly associative.

use crate::error::{Error, Result};
use crate::hopf::{drinfeld_element, verify_hopf_ribbon, HopfAlgebraData, Tables, TensorElem};
use crate::linalg::{Kernel, Matrix, SparseVec};
use crate::scalar::Scalar;

/// A finite-dimensional module: `actions[i]` is the matrix of `e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepObject<K> {
    pub dim: usize,
    pub actions: Vec<Matrix<K>>,
}

impl<K: Scalar> RepObject<K> {
    pub fn new(dim: usize, actions: Vec<Matrix<K>>) -> Self {
        debug_assert!(actions.iter().all(|a| a.shape() == (dim, dim)));
        RepObject { dim, actions }
    }

    /// The zero module of an `n`-dimensional algebra.
    pub fn zero(algebra_dim: usize) -> Self {
        RepObject { dim: 0, actions: vec![Matrix::zeros(0, 0); algebra_dim] }
    }

    /// A plain vector space, i.e. a module over the trivial algebra.
    pub fn vector_space(dim: usize) -> Self {
        RepObject { dim, actions: vec![Matrix::identity(dim)] }
    }

    pub fn algebra_dim(&self) -> usize {
        self.actions.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepMorphism<K> {
    pub source: RepObject<K>,
    pub target: RepObject<K>,
    pub matrix: Matrix<K>,
}

impl<K: Scalar> RepMorphism<K> {
    pub fn new(source: RepObject<K>, target: RepObject<K>, matrix: Matrix<K>) -> Result<Self> {
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::Shape(format!(
                "morphism matrix {:?} between dims {} -> {}",
                matrix.shape(),
                source.dim,
                target.dim
            )));
        }
        if !is_intertwiner(&source, &target, &matrix) {
            return Err(Error::NotIntertwiner("matrix does not commute with the actions".into()));
        }
        Ok(RepMorphism { source, target, matrix })
    }
}

/// `ρ_target(e_i)·M = M·ρ_source(e_i)` for all `i`.
pub fn is_intertwiner<K: Scalar>(source: &RepObject<K>, target: &RepObject<K>, m: &Matrix<K>) -> bool {
    m.shape() == (target.dim, source.dim)
        && source.actions.len() == target.actions.len()
        && source.actions.iter().zip(&target.actions).all(|(a, b)| b.mul(m) == m.mul(a))
}

/// Permutation `x ⊗ y → y ⊗ x`.
pub fn flip<K: Scalar>(dx: usize, dy: usize) -> Matrix<K> {
    Matrix::from_triples(dy * dx, dx * dy, (0..dx).flat_map(|i| (0..dy).map(move |j| (j * dx + i, i * dy + j, K::one()))))
}

/// `rep(H)` with all structure elements precomputed.
#[derive(Clone, Debug)]
pub struct RepCategory<K> {
    pub hopf: HopfAlgebraData<K>,
    tables: Tables<K>,
    r: Vec<(usize, usize, K)>,
    r_inv: Vec<(usize, usize, K)>,
    ribbon: Vec<K>,
    ribbon_inv: Vec<K>,
    pivotal: Vec<K>,
    pivotal_inv: Vec<K>,
}

fn pairs<K: Scalar>(t: &TensorElem<K>, n: usize) -> Vec<(usize, usize, K)> {
    t.iter().map(|(idx, c)| (idx / n, idx % n, c.clone())).collect()
}

impl<K: Scalar> RepCategory<K> {
    /// Validates every ribbon Hopf axiom before accepting the data.
    pub fn new(hopf: HopfAlgebraData<K>) -> Result<Self> {
        let report = verify_hopf_ribbon(&hopf)?;
        if !report.is_empty() {
            return Err(Error::Axioms(report));
        }
        let t = hopf.tables();
        let n = hopf.dim;
        let r = hopf.rmatrix_elem();
        let r_inv = t.inverse(&r, 2).expect("verified invertible");
        let v = t.elem(&hopf.ribbon);
        let v_inv = t.inverse(&v, 1).expect("verified invertible");
        let u = drinfeld_element(&t, &r);
        let g = t.mul(&u, &v_inv, 1);
        let g_inv = t.inverse(&g, 1).expect("product of invertibles");
        Ok(RepCategory {
            r: pairs(&r, n),
            r_inv: pairs(&r_inv, n),
            ribbon: t.to_dense(&v),
            ribbon_inv: t.to_dense(&v_inv),
            pivotal: t.to_dense(&g),
            pivotal_inv: t.to_dense(&g_inv),
            tables: t,
            hopf,
        })
    }

    pub fn algebra_dim(&self) -> usize {
        self.hopf.dim
    }

    pub fn tables(&self) -> &Tables<K> {
        &self.tables
    }

    /// The pivotal element `u v^{-1}` in the basis of `H`.
    pub fn pivotal_element(&self) -> &[K] {
        &self.pivotal
    }

    pub fn unit(&self) -> RepObject<K> {
        let actions = self.hopf.counit.iter().map(|c| Matrix::scalar(1, c.clone())).collect();
        RepObject::new(1, actions)
    }

    pub fn zero_object(&self) -> RepObject<K> {
        RepObject::zero(self.hopf.dim)
    }

    /// `Σ a_i ρ(e_i)`.
    pub fn act(&self, x: &RepObject<K>, a: &[K]) -> Matrix<K> {
        let mut m = Matrix::zeros(x.dim, x.dim);
        for (c, rho) in a.iter().zip(&x.actions) {
            if !c.is_zero() {
                m = m.add_scaled(c, rho);
            }
        }
        m
    }

    /// Module axioms as exact matrix identities.
    pub fn is_module(&self, x: &RepObject<K>) -> bool {
        let n = self.hopf.dim;
        if x.actions.len() != n || x.actions.iter().any(|a| a.shape() != (x.dim, x.dim)) {
            return false;
        }
        if self.act(x, &self.hopf.unit) != Matrix::identity(x.dim) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let prod = x.actions[i].mul(&x.actions[j]);
                let mut expected = Matrix::zeros(x.dim, x.dim);
                for (k, c) in &self.tables.mult[i][j] {
                    expected = expected.add_scaled(c, &x.actions[*k]);
                }
                prod == expected
            })
        })
    }

    /// `ρ_x ⊗ ρ_y` applied to an element of `H ⊗ H` given as index pairs.
    fn act_pair(&self, x: &RepObject<K>, y: &RepObject<K>, elem: &[(usize, usize, K)]) -> Matrix<K> {
        let mut m = Matrix::zeros(x.dim * y.dim, x.dim * y.dim);
        for (i, j, c) in elem {
            m = m.add_scaled(c, &x.actions[*i].kron(&y.actions[*j]));
        }
        m
    }

    pub fn tensor(&self, x: &RepObject<K>, y: &RepObject<K>) -> RepObject<K> {
        let actions = self.tables.comult.iter().map(|terms| self.act_pair(x, y, terms)).collect();
        RepObject::new(x.dim * y.dim, actions)
    }

    /// Right-nested product of a word; the empty word gives the unit.
    pub fn tensor_all<'a>(&self, word: impl IntoIterator<Item = &'a RepObject<K>>) -> RepObject<K>
    where
        K: 'a,
    {
        let objs: Vec<&RepObject<K>> = word.into_iter().collect();
        match objs.split_last() {
            None => self.unit(),
            Some((last, init)) => init.iter().rev().fold((*last).clone(), |acc, x| self.tensor(x, &acc)),
        }
    }

    pub fn direct_sum(&self, x: &RepObject<K>, y: &RepObject<K>) -> RepObject<K> {
        let actions = x.actions.iter().zip(&y.actions).map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()])).collect();
        RepObject::new(x.dim + y.dim, actions)
    }

    /// Left dual: `ρ*(h) = ρ(S(h))ᵀ` on the dual basis.
    pub fn dual(&self, x: &RepObject<K>) -> RepObject<K> {
        let actions = (0..self.hopf.dim)
            .map(|i| {
                let mut m = Matrix::zeros(x.dim, x.dim);
                for (k, c) in &self.tables.antipode[i] {
                    m = m.add_scaled(c, &x.actions[*k]);
                }
                m.transpose()
            })
            .collect();
        RepObject::new(x.dim, actions)
    }

    /// `ev_x: x* ⊗ x → 1`, `f ⊗ v ↦ f(v)`.
    pub fn ev(&self, x: &RepObject<K>) -> Matrix<K> {
        let d = x.dim;
        Matrix::from_triples(1, d * d, (0..d).map(|i| (0, i * d + i, K::one())))
    }

    /// `coev_x: 1 → x ⊗ x*`.
    pub fn coev(&self, x: &RepObject<K>) -> Matrix<K> {
        let d = x.dim;
        Matrix::from_triples(d * d, 1, (0..d).map(|i| (i * d + i, 0, K::one())))
    }

    /// `x ⊗ x* → 1`, `v ⊗ f ↦ f(g v)` with `g` the pivotal element.
    pub fn ev_right(&self, x: &RepObject<K>) -> Matrix<K> {
        let d = x.dim;
        let g = self.act(x, &self.pivotal);
        Matrix::from_triples(1, d * d, g.entries().map(|(i, j, c)| (0, j * d + i, c.clone())))
    }

    /// `1 → x* ⊗ x`, `1 ↦ Σ f_i ⊗ g^{-1} v_i`.
    pub fn coev_right(&self, x: &RepObject<K>) -> Matrix<K> {
        let d = x.dim;
        let gi = self.act(x, &self.pivotal_inv);
        Matrix::from_triples(d * d, 1, gi.entries().map(|(j, i, c)| (i * d + j, 0, c.clone())))
    }

    /// `c_{x,y} = flip ∘ (ρ_x ⊗ ρ_y)(R)`.
    pub fn braiding(&self, x: &RepObject<K>, y: &RepObject<K>) -> Matrix<K> {
        flip(x.dim, y.dim).mul(&self.act_pair(x, y, &self.r))
    }

    /// `c_{x,y}^{-1}: y ⊗ x → x ⊗ y`.
    pub fn braiding_inv(&self, x: &RepObject<K>, y: &RepObject<K>) -> Matrix<K> {
        self.act_pair(x, y, &self.r_inv).mul(&flip(y.dim, x.dim))
    }

    /// `θ_x`, the action of the inverse ribbon element.
    pub fn twist(&self, x: &RepObject<K>) -> Matrix<K> {
        self.act(x, &self.ribbon_inv)
    }

    pub fn twist_inv(&self, x: &RepObject<K>) -> Matrix<K> {
        self.act(x, &self.ribbon)
    }

    /// The linear system whose kernel is `Hom(x, y)`, in the unknowns `M[r][c] ↦ r·dim(x) + c`.
    fn hom_system(&self, x: &RepObject<K>, y: &RepObject<K>) -> Matrix<K> {
        let (dx, dy) = (x.dim, y.dim);
        let mut rows: Vec<SparseVec<K>> = Vec::new();
        for (ax, ay) in x.actions.iter().zip(&y.actions) {
            // (ρ_y M - M ρ_x)[r][c] = Σ_k ρ_y[r][k] M[k][c] - Σ_k M[r][k] ρ_x[k][c]
            let axt = ax.transpose();
            for r in 0..dy {
                for c in 0..dx {
                    let mut terms: Vec<(usize, K)> = Vec::new();
                    for (k, v) in ay.row(r) {
                        terms.push((k * dx + c, v.clone()));
                    }
                    for (k, v) in axt.row(c) {
                        terms.push((r * dx + k, -v.clone()));
                    }
                    if terms.is_empty() {
                        continue;
                    }
                    terms.sort_by_key(|(i, _)| *i);
                    let mut merged: SparseVec<K> = Vec::with_capacity(terms.len());
                    for (i, v) in terms {
                        match merged.last_mut() {
                            Some((j, w)) if *j == i => *w = w.add_ref(&v),
                            _ => merged.push((i, v)),
                        }
                    }
                    merged.retain(|(_, v)| !v.is_zero());
                    if !merged.is_empty() {
                        rows.push(merged);
                    }
                }
            }
        }
        Matrix::from_rows(dx * dy, rows)
    }

    /// `Hom(x, y)` with coordinate readout.
    pub fn hom_space(&self, x: &RepObject<K>, y: &RepObject<K>) -> HomSpace<K> {
        let kernel = if x.dim * y.dim == 0 {
            Matrix::<K>::zeros(0, 0).kernel()
        } else {
            self.hom_system(x, y).kernel()
        };
        HomSpace { source_dim: x.dim, target_dim: y.dim, kernel }
    }

    /// Exact basis of intertwiners, ordered by free column of the reduced echelon form.
    pub fn hom_basis(&self, x: &RepObject<K>, y: &RepObject<K>) -> Vec<RepMorphism<K>> {
        let hs = self.hom_space(x, y);
        (0..hs.len())
            .map(|i| RepMorphism { source: x.clone(), target: y.clone(), matrix: hs.basis_matrix(i) })
            .collect()
    }

    /// `Ad`: `H` with `h·a = h₍₁₎ a S(h₍₂₎)`.
    pub fn adjoint(&self) -> RepObject<K> {
        let n = self.hopf.dim;
        let t = &self.tables;
        let actions = (0..n)
            .map(|k| {
                let mut triples = Vec::new();
                for (i1, i2, c) in &t.comult[k] {
                    for j in 0..n {
                        let mut a = TensorElem::new();
                        a.insert(*i1, c.clone());
                        let mut e = TensorElem::new();
                        e.insert(j, K::one());
                        let mut s = TensorElem::new();
                        s.insert(*i2, K::one());
                        let s = t.antipode_at(&s, 1, 0);
                        let prod = t.mul(&t.mul(&a, &e, 1), &s, 1);
                        for (row, v) in prod {
                            triples.push((row, j, v));
                        }
                    }
                }
                Matrix::from_triples(n, n, triples)
            })
            .collect();
        RepObject::new(n, actions)
    }

    /// Quantum trace of the identity: `ev~ ∘ coev`.
    pub fn qdim(&self, x: &RepObject<K>) -> K {
        self.ev_right(x).mul(&self.coev(x)).get(0, 0)
    }

    /// Quantum trace of an endomorphism.
    pub fn qtrace(&self, x: &RepObject<K>, f: &Matrix<K>) -> K {
        let id_dual = Matrix::identity(x.dim);
        self.ev_right(x).mul(&f.kron(&id_dual)).mul(&self.coev(x)).get(0, 0)
    }
}

/// A Hom space given as a kernel; basis matrices are `dim(y) × dim(x)`.
#[derive(Clone, Debug)]
pub struct HomSpace<K> {
    pub source_dim: usize,
    pub target_dim: usize,
    pub kernel: Kernel<K>,
}

impl<K: Scalar> HomSpace<K> {
    pub fn len(&self) -> usize {
        self.kernel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernel.is_empty()
    }

    pub fn basis_matrix(&self, i: usize) -> Matrix<K> {
        self.vec_to_matrix(&self.kernel.basis[i])
    }

    pub fn vec_to_matrix(&self, v: &[(usize, K)]) -> Matrix<K> {
        let dx = self.source_dim;
        Matrix::from_triples(self.target_dim, dx, v.iter().map(|(i, c)| (i / dx, i % dx, c.clone())))
    }

    pub fn matrix_to_vec(&self, m: &Matrix<K>) -> SparseVec<K> {
        let dx = self.source_dim;
        let mut v: SparseVec<K> = m.entries().map(|(r, c, x)| (r * dx + c, x.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Coordinates of an intertwiner in the basis.
    pub fn coords(&self, m: &Matrix<K>) -> Vec<K> {
        self.kernel.coords(&self.matrix_to_vec(m))
    }

    pub fn combine(&self, coeffs: &[K]) -> Matrix<K> {
        self.vec_to_matrix(&self.kernel.combine(coeffs))
    }
}

/// Trace of `ρ_x(g)` computed directly, used to cross-check `qdim`.
pub fn trace_of_pivotal<K: Scalar>(cat: &RepCategory<K>, x: &RepObject<K>) -> K {
    cat.act(x, cat.pivotal_element()).trace()
}

impl<K: Scalar> RepCategory<K> {
    /// `θ_{x⊗y} = c_{y,x} c_{x,y} (θ_x ⊗ θ_y)`.
    pub fn balancing_holds(&self, x: &RepObject<K>, y: &RepObject<K>) -> bool {
        let xy = self.tensor(x, y);
        let lhs = self.twist(&xy);
        let rhs = self.braiding(y, x).mul(&self.braiding(x, y)).mul(&self.twist(x).kron(&self.twist(y)));
        lhs == rhs
    }
}

impl<K: Scalar> RepCategory<K> {
    pub fn identity(&self, x: &RepObject<K>) -> Matrix<K> {
        Matrix::identity(x.dim)
    }

    pub fn scalar_one(&self) -> K {
        K::one()
    }
}
