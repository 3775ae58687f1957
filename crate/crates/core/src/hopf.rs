//! Finite-dimensional ribbon Hopf algebras given by structure constants.
//!
//! Index conventions for the sparse tensors:
//! * `mult`: `(i, j, k, c)` means `e_i e_j` has coefficient `c` at `e_k`;
//! * `comult`: `(i, j, k, c)` means `Δ(e_i)` has coefficient `c` at `e_j ⊗ e_k`;
//! * `antipode`: `(i, j, c)` means `S(e_j)` has coefficient `c` at `e_i`;
//! * `rmatrix`: `(i, j, c)` means `R` has coefficient `c` at `e_i ⊗ e_j`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebraData<K> {
    pub name: String,
    pub dim: usize,
    pub mult: Vec<(usize, usize, usize, K)>,
    pub unit: Vec<K>,
    pub comult: Vec<(usize, usize, usize, K)>,
    pub counit: Vec<K>,
    pub antipode: Vec<(usize, usize, K)>,
    pub rmatrix: Vec<(usize, usize, K)>,
    pub ribbon: Vec<K>,
}

/// Elements of `H^{⊗r}` as sparse maps from flattened multi-indices.
pub type TensorElem<K> = BTreeMap<usize, K>;

fn acc<K: Scalar>(t: &mut TensorElem<K>, idx: usize, c: K) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&idx) {
        Some(e) => {
            *e = e.add_ref(&c);
            if e.is_zero() {
                t.remove(&idx);
            }
        }
        None => {
            t.insert(idx, c);
        }
    }
}

/// Structure constants unpacked into lookup tables.
#[derive(Clone, Debug)]
pub struct Tables<K> {
    pub n: usize,
    pub mult: Vec<Vec<Vec<(usize, K)>>>,
    pub comult: Vec<Vec<(usize, usize, K)>>,
    pub antipode: Vec<Vec<(usize, K)>>,
    pub unit: Vec<K>,
    pub counit: Vec<K>,
}

impl<K: Scalar> HopfAlgebraData<K> {
    pub fn check_shapes(&self) -> Result<()> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Shape("algebra dimension must be positive".into()));
        }
        let vec_ok = |v: &Vec<K>, what: &str| {
            if v.len() == n {
                Ok(())
            } else {
                Err(Error::Shape(format!("{what} has length {} but dim is {n}", v.len())))
            }
        };
        vec_ok(&self.unit, "unit")?;
        vec_ok(&self.counit, "counit")?;
        vec_ok(&self.ribbon, "ribbon")?;
        let idx_ok = |ix: &[usize], what: &str| {
            if ix.iter().all(|&i| i < n) {
                Ok(())
            } else {
                Err(Error::Shape(format!("{what} index out of range in {ix:?}")))
            }
        };
        for (i, j, k, _) in &self.mult {
            idx_ok(&[*i, *j, *k], "mult")?;
        }
        for (i, j, k, _) in &self.comult {
            idx_ok(&[*i, *j, *k], "comult")?;
        }
        for (i, j, _) in &self.antipode {
            idx_ok(&[*i, *j], "antipode")?;
        }
        for (i, j, _) in &self.rmatrix {
            idx_ok(&[*i, *j], "rmatrix")?;
        }
        Ok(())
    }

    pub fn tables(&self) -> Tables<K> {
        let n = self.dim;
        let mut mult = vec![vec![Vec::new(); n]; n];
        for (i, j, k, c) in &self.mult {
            if !c.is_zero() {
                mult[*i][*j].push((*k, c.clone()));
            }
        }
        let mut comult = vec![Vec::new(); n];
        for (i, j, k, c) in &self.comult {
            if !c.is_zero() {
                comult[*i].push((*j, *k, c.clone()));
            }
        }
        let mut antipode = vec![Vec::new(); n];
        for (i, j, c) in &self.antipode {
            if !c.is_zero() {
                antipode[*j].push((*i, c.clone()));
            }
        }
        Tables { n, mult, comult, antipode, unit: self.unit.clone(), counit: self.counit.clone() }
    }

    pub fn rmatrix_elem(&self) -> TensorElem<K> {
        let mut t = TensorElem::new();
        for (i, j, c) in &self.rmatrix {
            acc(&mut t, i * self.dim + j, c.clone());
        }
        t
    }
}

impl<K: Scalar> Tables<K> {
    pub fn elem(&self, v: &[K]) -> TensorElem<K> {
        let mut t = TensorElem::new();
        for (i, c) in v.iter().enumerate() {
            acc(&mut t, i, c.clone());
        }
        t
    }

    pub fn to_dense(&self, t: &TensorElem<K>) -> Vec<K> {
        let mut v = vec![K::zero(); self.n];
        for (i, c) in t {
            v[*i] = c.clone();
        }
        v
    }

    fn digits(&self, mut idx: usize, r: usize) -> Vec<usize> {
        let mut d = vec![0; r];
        for slot in d.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        d
    }

    fn undigits(&self, d: &[usize]) -> usize {
        d.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    pub fn one(&self, r: usize) -> TensorElem<K> {
        let mut t = TensorElem::new();
        t.insert(0, K::one());
        for _ in 0..r {
            t = self.tensor(&t, &self.elem(&self.unit), 1);
        }
        t
    }

    /// `a ⊗ b` where `b` lives in `H^{⊗rb}`.
    pub fn tensor(&self, a: &TensorElem<K>, b: &TensorElem<K>, rb: usize) -> TensorElem<K> {
        let shift = self.n.pow(rb as u32);
        let mut t = TensorElem::new();
        for (i, x) in a {
            for (j, y) in b {
                acc(&mut t, i * shift + j, x.mul_ref(y));
            }
        }
        t
    }

    /// Product in `H^{⊗r}`.
    pub fn mul(&self, a: &TensorElem<K>, b: &TensorElem<K>, r: usize) -> TensorElem<K> {
        let mut t = TensorElem::new();
        for (ia, x) in a {
            let da = self.digits(*ia, r);
            for (ib, y) in b {
                let db = self.digits(*ib, r);
                // expand factorwise products
                let mut partial: Vec<(Vec<usize>, K)> = vec![(Vec::new(), x.mul_ref(y))];
                for s in 0..r {
                    let terms = &self.mult[da[s]][db[s]];
                    let mut next = Vec::with_capacity(partial.len() * terms.len());
                    for (prefix, c) in &partial {
                        for (k, m) in terms {
                            let mut p = prefix.clone();
                            p.push(*k);
                            next.push((p, c.mul_ref(m)));
                        }
                    }
                    partial = next;
                }
                for (d, c) in partial {
                    acc(&mut t, self.undigits(&d), c);
                }
            }
        }
        t
    }

    /// Apply a linear map `H -> H^{⊗k}` (given on basis elements) at tensor slot `slot` of `H^{⊗r}`.
    fn apply_at<F>(&self, a: &TensorElem<K>, r: usize, slot: usize, k: usize, f: F) -> TensorElem<K>
    where
        F: Fn(usize) -> Vec<(Vec<usize>, K)>,
    {
        let mut t = TensorElem::new();
        for (i, x) in a {
            let d = self.digits(*i, r);
            for (img, c) in f(d[slot]) {
                debug_assert_eq!(img.len(), k);
                let mut nd = d[..slot].to_vec();
                nd.extend(img);
                nd.extend(&d[slot + 1..]);
                acc(&mut t, self.undigits(&nd), x.mul_ref(&c));
            }
        }
        t
    }

    pub fn comult_at(&self, a: &TensorElem<K>, r: usize, slot: usize) -> TensorElem<K> {
        self.apply_at(a, r, slot, 2, |i| self.comult[i].iter().map(|(j, k, c)| (vec![*j, *k], c.clone())).collect())
    }

    pub fn counit_at(&self, a: &TensorElem<K>, r: usize, slot: usize) -> TensorElem<K> {
        self.apply_at(a, r, slot, 0, |i| vec![(vec![], self.counit[i].clone())])
    }

    pub fn antipode_at(&self, a: &TensorElem<K>, r: usize, slot: usize) -> TensorElem<K> {
        self.apply_at(a, r, slot, 1, |i| self.antipode[i].iter().map(|(k, c)| (vec![*k], c.clone())).collect())
    }

    /// Permute tensor slots: output slot `s` takes input slot `perm[s]`.
    pub fn permute(&self, a: &TensorElem<K>, r: usize, perm: &[usize]) -> TensorElem<K> {
        let mut t = TensorElem::new();
        for (i, x) in a {
            let d = self.digits(*i, r);
            let nd: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
            acc(&mut t, self.undigits(&nd), x.clone());
        }
        t
    }

    /// Multiply the slots of `H^{⊗r}` together in order.
    pub fn multiply_out(&self, a: &TensorElem<K>, r: usize) -> TensorElem<K> {
        let mut t = TensorElem::new();
        for (i, x) in a {
            let d = self.digits(*i, r);
            let mut cur = self.elem(&self.unit);
            for s in d {
                let mut e = TensorElem::new();
                e.insert(s, K::one());
                cur = self.mul(&cur, &e, 1);
            }
            for (k, c) in cur {
                acc(&mut t, k, c.mul_ref(x));
            }
        }
        t
    }

    /// Place an element of `H^{⊗2}` into slots `(p, q)` of `H^{⊗3}`, unit elsewhere.
    pub fn embed_pair(&self, a: &TensorElem<K>, p: usize, q: usize) -> TensorElem<K> {
        let other = 3 - p - q;
        let one = self.elem(&self.unit);
        let mut t = TensorElem::new();
        for (i, x) in a {
            let d = self.digits(*i, 2);
            for (u, c) in &one {
                let mut nd = [0usize; 3];
                nd[p] = d[0];
                nd[q] = d[1];
                nd[other] = *u;
                acc(&mut t, self.undigits(&nd), x.mul_ref(c));
            }
        }
        t
    }

    /// Left multiplication by `a` on `H^{⊗r}` as a matrix.
    pub fn left_mult_matrix(&self, a: &TensorElem<K>, r: usize) -> Matrix<K> {
        let size = self.n.pow(r as u32);
        let mut triples = Vec::new();
        for col in 0..size {
            let mut e = TensorElem::new();
            e.insert(col, K::one());
            for (row, c) in self.mul(a, &e, r) {
                triples.push((row, col, c));
            }
        }
        Matrix::from_triples(size, size, triples)
    }

    /// Two-sided inverse of `a` in `H^{⊗r}`, if it exists.
    pub fn inverse(&self, a: &TensorElem<K>, r: usize) -> Option<TensorElem<K>> {
        let lm = self.left_mult_matrix(a, r);
        let one: Vec<(usize, K)> = self.one(r).into_iter().collect();
        let x = lm.solve(&one)?;
        let xt: TensorElem<K> = x.into_iter().collect();
        if self.mul(&xt, a, r) == self.one(r) {
            Some(xt)
        } else {
            None
        }
    }
}

/// The list of failed axiom identifiers; empty means `H` is a ribbon Hopf algebra.
pub fn verify_hopf_ribbon<K: Scalar>(h: &HopfAlgebraData<K>) -> Result<Vec<String>> {
    h.check_shapes()?;
    let t = h.tables();
    let n = h.dim;
    let mut fails = Vec::new();
    let mut check = |ok: bool, name: &str| {
        if !ok {
            fails.push(name.to_string());
        }
    };
    let basis = |i: usize| -> TensorElem<K> {
        let mut e = TensorElem::new();
        e.insert(i, K::one());
        e
    };
    let one = t.elem(&h.unit);

    // algebra
    let mut assoc = true;
    for i in 0..n {
        for j in 0..n {
            let ij = t.mul(&basis(i), &basis(j), 1);
            for k in 0..n {
                if t.mul(&ij, &basis(k), 1) != t.mul(&basis(i), &t.mul(&basis(j), &basis(k), 1), 1) {
                    assoc = false;
                }
            }
        }
    }
    check(assoc, "associativity");
    check((0..n).all(|i| t.mul(&one, &basis(i), 1) == basis(i) && t.mul(&basis(i), &one, 1) == basis(i)), "unit");

    // coalgebra
    let delta = |i: usize| t.comult_at(&basis(i), 1, 0);
    check((0..n).all(|i| t.comult_at(&delta(i), 2, 0) == t.comult_at(&delta(i), 2, 1)), "coassociativity");
    check(
        (0..n).all(|i| t.counit_at(&delta(i), 2, 0) == basis(i) && t.counit_at(&delta(i), 2, 1) == basis(i)),
        "counit",
    );

    // bialgebra
    let mut delta_mult = t.comult_at(&one, 1, 0) == t.one(2);
    let mut eps_mult = t.counit_at(&one, 1, 0) == t.one(0);
    for i in 0..n {
        for j in 0..n {
            let ij = t.mul(&basis(i), &basis(j), 1);
            if t.comult_at(&ij, 1, 0) != t.mul(&delta(i), &delta(j), 2) {
                delta_mult = false;
            }
            let lhs = t.counit_at(&ij, 1, 0);
            let rhs = t.mul(&t.counit_at(&basis(i), 1, 0), &t.counit_at(&basis(j), 1, 0), 0);
            if lhs != rhs {
                eps_mult = false;
            }
        }
    }
    check(delta_mult, "comultiplication-multiplicative");
    check(eps_mult, "counit-multiplicative");

    // antipode
    let eps_one = |i: usize| {
        let mut e = TensorElem::new();
        for (k, c) in &one {
            acc(&mut e, *k, c.mul_ref(&h.counit[i]));
        }
        e
    };
    check(
        (0..n).all(|i| {
            let d = delta(i);
            t.multiply_out(&t.antipode_at(&d, 2, 0), 2) == eps_one(i)
                && t.multiply_out(&t.antipode_at(&d, 2, 1), 2) == eps_one(i)
        }),
        "antipode",
    );

    // quasitriangular structure
    let r = h.rmatrix_elem();
    let r_inv = t.inverse(&r, 2);
    check(r_inv.is_some(), "rmatrix-invertible");
    check(
        (0..n).all(|i| {
            let d = delta(i);
            let dop = t.permute(&d, 2, &[1, 0]);
            t.mul(&dop, &r, 2) == t.mul(&r, &d, 2)
        }),
        "quasi-cocommutativity",
    );
    let r13 = t.embed_pair(&r, 0, 2);
    let r23 = t.embed_pair(&r, 1, 2);
    let r12 = t.embed_pair(&r, 0, 1);
    check(t.comult_at(&r, 2, 0) == t.mul(&r13, &r23, 3), "hexagon-left");
    check(t.comult_at(&r, 2, 1) == t.mul(&r13, &r12, 3), "hexagon-right");

    // ribbon element
    let v = t.elem(&h.ribbon);
    let v_inv = t.inverse(&v, 1);
    check(v_inv.is_some(), "ribbon-invertible");
    check((0..n).all(|i| t.mul(&v, &basis(i), 1) == t.mul(&basis(i), &v, 1)), "ribbon-central");
    let u = drinfeld_element(&t, &r);
    let su = t.antipode_at(&u, 1, 0);
    check(t.mul(&v, &v, 1) == t.mul(&u, &su, 1), "ribbon-drinfeld");
    let r21 = t.permute(&r, 2, &[1, 0]);
    let monodromy = t.mul(&r21, &r, 2);
    check(t.mul(&monodromy, &t.comult_at(&v, 1, 0), 2) == t.tensor(&v, &v, 1), "ribbon-coproduct");
    check(t.counit_at(&v, 1, 0) == t.one(0), "ribbon-counit");
    check(t.antipode_at(&v, 1, 0) == v, "ribbon-antipode");
    Ok(fails)
}

/// `u = Σ S(r₂) r₁`.
pub fn drinfeld_element<K: Scalar>(t: &Tables<K>, r: &TensorElem<K>) -> TensorElem<K> {
    let swapped = t.permute(r, 2, &[1, 0]);
    t.multiply_out(&t.antipode_at(&swapped, 2, 0), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;
    use crate::cyclotomic::Cyclo;
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn trivial_algebra_passes() {
        let h = datasets::trivial::<BigRational>();
        assert!(verify_hopf_ribbon(&h).unwrap().is_empty());
    }

    #[test]
    fn fun_z3_passes() {
        let h = datasets::fun_zn(3).unwrap();
        assert_eq!(verify_hopf_ribbon(&h).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn corrupted_rmatrix_names_hexagon() {
        let mut h = datasets::fun_zn(3).unwrap();
        let pos = h.rmatrix.iter().position(|(i, j, _)| *i == 1 && *j == 1).unwrap();
        h.rmatrix[pos].2 = Cyclo::zero();
        let report = verify_hopf_ribbon(&h).unwrap();
        assert!(report.iter().any(|f| f.starts_with("hexagon")), "{report:?}");
    }

    #[test]
    fn shape_errors() {
        let mut h = datasets::trivial::<BigRational>();
        h.counit.push(BigRational::zero());
        assert!(matches!(verify_hopf_ribbon(&h), Err(Error::Shape(_))));
    }
}
