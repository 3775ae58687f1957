//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls the library's own algebra tables or linear
//! algebra.

#![allow(dead_code)]

use num_traits::{One, Zero};
use ribbon_cochain::{Cyclo, HopfAlgebra, Scalar};

/// Dense elements of `H^{⊗r}` indexed by base-`n` digits (first factor most
/// significant), with products and coproducts taken straight from the
/// structure constants.
pub struct Dense<'a> {
    pub h: &'a HopfAlgebra,
    mult: Vec<Vec<Vec<(usize, Cyclo)>>>,
    comult: Vec<Vec<(usize, usize, Cyclo)>>,
}

/// An element of `H^{⊗r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem {
    pub r: u32,
    pub v: Vec<Cyclo>,
}

impl Elem {
    fn nonzero(&self) -> impl Iterator<Item = (usize, &Cyclo)> {
        self.v.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn scale(&self, c: &Cyclo) -> Elem {
        Elem { r: self.r, v: self.v.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn scalar(&self) -> Cyclo {
        assert_eq!(self.r, 0);
        self.v[0].clone()
    }
}

impl<'a> Dense<'a> {
    pub fn new(h: &'a HopfAlgebra) -> Self {
        let n = h.dim;
        let mut mult = vec![vec![Vec::new(); n]; n];
        for (i, j, k, c) in &h.mult {
            mult[*i][*j].push((*k, c.clone()));
        }
        let mut comult = vec![Vec::new(); n];
        for (i, j, k, c) in &h.comult {
            comult[*i].push((*j, *k, c.clone()));
        }
        Dense { h, mult, comult }
    }

    fn n(&self) -> usize {
        self.h.dim
    }

    pub fn zero(&self, r: u32) -> Elem {
        Elem { r, v: vec![Cyclo::zero(); self.n().pow(r)] }
    }

    pub fn basis(&self, i: usize) -> Elem {
        let mut e = self.zero(1);
        e.v[i] = Cyclo::one();
        e
    }

    pub fn element(&self, v: &[Cyclo]) -> Elem {
        Elem { r: 1, v: v.to_vec() }
    }

    pub fn one(&self, r: u32) -> Elem {
        let u = self.element(&self.h.unit);
        (0..r).fold(Elem { r: 0, v: vec![Cyclo::one()] }, |acc, _| self.kron(&acc, &u))
    }

    pub fn kron(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = self.zero(a.r + b.r);
        let len = b.v.len();
        for (i, x) in a.nonzero() {
            for (j, y) in b.nonzero() {
                out.v[i * len + j] = x.clone() * y.clone();
            }
        }
        out
    }

    fn digits(&self, mut idx: usize, r: u32) -> Vec<usize> {
        let mut d = vec![0; r as usize];
        for k in (0..r as usize).rev() {
            d[k] = idx % self.n();
            idx /= self.n();
        }
        d
    }

    fn undigits(&self, d: &[usize]) -> usize {
        d.iter().fold(0, |acc, x| acc * self.n() + x)
    }

    /// Product in `H^{⊗r}`.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        assert_eq!(a.r, b.r);
        let r = a.r;
        let mut out = self.zero(r);
        for (i, x) in a.nonzero() {
            let di = self.digits(i, r);
            for (j, y) in b.nonzero() {
                let dj = self.digits(j, r);
                let mut terms: Vec<(Vec<usize>, Cyclo)> = vec![(Vec::new(), x.clone() * y.clone())];
                for s in 0..r as usize {
                    let mut next = Vec::new();
                    for (idx, c) in &terms {
                        for (k, m) in &self.mult[di[s]][dj[s]] {
                            let mut idx = idx.clone();
                            idx.push(*k);
                            next.push((idx, c.clone() * m.clone()));
                        }
                    }
                    terms = next;
                }
                for (idx, c) in terms {
                    let p = self.undigits(&idx);
                    out.v[p] = out.v[p].clone() + c;
                }
            }
        }
        out
    }

    /// Applies a map `H → H^{⊗k}` (given on basis vectors) at `slot`.
    fn at_slot(&self, a: &Elem, slot: usize, k: u32, f: impl Fn(usize) -> Vec<Cyclo>) -> Elem {
        let mut out = self.zero(a.r + k - 1);
        for (i, x) in a.nonzero() {
            let d = self.digits(i, a.r);
            for (j, y) in f(d[slot]).iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let mut nd = d[..slot].to_vec();
                nd.extend(self.digits(j, k));
                nd.extend(&d[slot + 1..]);
                let p = self.undigits(&nd);
                out.v[p] = out.v[p].clone() + x.clone() * y.clone();
            }
        }
        out
    }

    pub fn delta_at(&self, a: &Elem, slot: usize) -> Elem {
        self.at_slot(a, slot, 2, |i| {
            let mut e = vec![Cyclo::zero(); self.n() * self.n()];
            for (j, k, c) in &self.comult[i] {
                let p = j * self.n() + k;
                e[p] = e[p].clone() + c.clone();
            }
            e
        })
    }

    pub fn eps_at(&self, a: &Elem, slot: usize) -> Elem {
        self.at_slot(a, slot, 0, |i| vec![self.h.counit[i].clone()])
    }

    pub fn s_at(&self, a: &Elem, slot: usize) -> Elem {
        self.at_slot(a, slot, 1, |i| {
            let mut e = vec![Cyclo::zero(); self.n()];
            for (k, j, c) in &self.h.antipode {
                if *j == i {
                    e[*k] = e[*k].clone() + c.clone();
                }
            }
            e
        })
    }

    /// Reorders tensor factors: factor `s` of the output is factor `perm[s]`.
    pub fn permute(&self, a: &Elem, perm: &[usize]) -> Elem {
        let mut out = self.zero(a.r);
        for (i, x) in a.nonzero() {
            let d = self.digits(i, a.r);
            let nd: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
            out.v[self.undigits(&nd)] = x.clone();
        }
        out
    }

    /// Multiplies the tensor factors together.
    pub fn collapse(&self, a: &Elem) -> Elem {
        let mut out = self.zero(1);
        for (i, x) in a.nonzero() {
            let d = self.digits(i, a.r);
            let prod = d.iter().skip(1).fold(self.basis(d[0]), |acc, &k| self.mul(&acc, &self.basis(k)));
            for (k, y) in prod.v.into_iter().enumerate() {
                out.v[k] = out.v[k].clone() + x.clone() * y;
            }
        }
        out
    }

    pub fn rmatrix(&self) -> Elem {
        let mut e = self.zero(2);
        for (i, j, c) in &self.h.rmatrix {
            let p = i * self.n() + j;
            e.v[p] = e.v[p].clone() + c.clone();
        }
        e
    }

    /// `R` placed in slots `(p, q)` of `H^{⊗3}`.
    pub fn r_in(&self, p: usize, q: usize) -> Elem {
        let padded = self.kron(&self.rmatrix(), &self.one(1));
        let mut perm = [0usize; 3];
        perm[p] = 0;
        perm[q] = 1;
        perm[3 - p - q] = 2;
        self.permute(&padded, &perm)
    }

    /// A solution of `a·x = b`, by Gaussian elimination on the matrix of left
    /// multiplication.
    pub fn left_solve(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        let m = a.v.len();
        let cols: Vec<Elem> = (0..m)
            .map(|j| {
                let mut e = self.zero(a.r);
                e.v[j] = Cyclo::one();
                self.mul(a, &e)
            })
            .collect();
        let mut rows: Vec<Vec<Cyclo>> = (0..m).map(|i| (0..m).map(|j| cols[j].v[i].clone()).chain([b.v[i].clone()]).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..m).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(row, p);
            let inv = rows[row][col].inv().unwrap();
            rows[row] = rows[row].iter().map(|x| x.clone() * inv.clone()).collect();
            for i in 0..m {
                if i != row && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    rows[i] = rows[i].iter().zip(&rows[row]).map(|(x, y)| x.clone() - f.clone() * y.clone()).collect();
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| !r[m].is_zero()) {
            return None;
        }
        let mut x = self.zero(a.r);
        for (i, &c) in pivots.iter().enumerate() {
            x.v[c] = rows[i][m].clone();
        }
        Some(x)
    }
}

/// Every Hopf, quasitriangular and ribbon identity, checked on basis
/// elements. Returns the names of the failing ones.
pub fn brute_force_axioms(h: &HopfAlgebra) -> Vec<&'static str> {
    let d = Dense::new(h);
    let n = h.dim;
    let mut bad = Vec::new();
    let mut check = |name: &'static str, ok: bool| {
        if !ok && !bad.contains(&name) {
            bad.push(name);
        }
    };
    let e: Vec<Elem> = (0..n).map(|i| d.basis(i)).collect();
    let one = d.one(1);
    for i in 0..n {
        check("unit", d.mul(&one, &e[i]) == e[i] && d.mul(&e[i], &one) == e[i]);
        let de = d.delta_at(&e[i], 0);
        check("coassociativity", d.delta_at(&de, 0) == d.delta_at(&de, 1));
        check("counit", d.eps_at(&de, 0) == e[i] && d.eps_at(&de, 1) == e[i]);
        let scaled_one = one.scale(&h.counit[i]);
        check("antipode", d.collapse(&d.s_at(&de, 0)) == scaled_one && d.collapse(&d.s_at(&de, 1)) == scaled_one);
        for j in 0..n {
            let eij = d.mul(&e[i], &e[j]);
            for k in 0..n {
                check("associativity", d.mul(&eij, &e[k]) == d.mul(&e[i], &d.mul(&e[j], &e[k])));
            }
            check("comultiplicativity", d.delta_at(&eij, 0) == d.mul(&de, &d.delta_at(&e[j], 0)));
            let ep = |x: &Elem| d.eps_at(x, 0).scalar();
            check("counit-multiplicative", ep(&eij) == ep(&e[i]) * ep(&e[j]));
        }
    }
    check("unit-coalgebra", d.delta_at(&one, 0) == d.one(2) && d.eps_at(&one, 0).scalar() == Cyclo::one());

    let r = d.rmatrix();
    let rinv = d.left_solve(&r, &d.one(2));
    check("r-invertible", rinv.is_some());
    for x in &e {
        let dx = d.delta_at(x, 0);
        check("quasi-cocommutativity", d.mul(&d.permute(&dx, &[1, 0]), &r) == d.mul(&r, &dx));
    }
    check("hexagon-left", d.delta_at(&r, 0) == d.mul(&d.r_in(0, 2), &d.r_in(1, 2)));
    check("hexagon-right", d.delta_at(&r, 1) == d.mul(&d.r_in(0, 2), &d.r_in(0, 1)));

    let v = d.element(&h.ribbon);
    for x in &e {
        check("ribbon-central", d.mul(&v, x) == d.mul(x, &v));
    }
    check("ribbon-invertible", d.left_solve(&v, &one).is_some());
    check("ribbon-counit", d.eps_at(&v, 0).scalar() == Cyclo::one());
    // u = Σ S(r₂) r₁
    let u = d.collapse(&d.s_at(&d.permute(&r, &[1, 0]), 0));
    check("ribbon-drinfeld", d.mul(&v, &v) == d.mul(&u, &d.s_at(&u, 0)));
    let monodromy = d.mul(&d.permute(&r, &[1, 0]), &r);
    check("ribbon-coproduct", d.mul(&d.delta_at(&v, 0), &monodromy) == d.kron(&v, &v));
    check("ribbon-antipode", d.s_at(&v, 0) == v);
    bad
}

/// Breaks exactly one structure tensor.
pub fn mutations(h: &HopfAlgebra) -> Vec<(&'static str, HopfAlgebra)> {
    let bump = |c: &Cyclo| c.clone() + Cyclo::from_i64(1);
    let mut out = Vec::new();
    let mut m = h.clone();
    m.mult[0].3 = bump(&m.mult[0].3);
    out.push(("mult", m));
    let mut m = h.clone();
    m.unit[0] = bump(&m.unit[0]);
    out.push(("unit", m));
    let mut m = h.clone();
    m.comult[0].3 = bump(&m.comult[0].3);
    out.push(("comult", m));
    let mut m = h.clone();
    m.counit[0] = bump(&m.counit[0]);
    out.push(("counit", m));
    let mut m = h.clone();
    m.antipode[0].2 = bump(&m.antipode[0].2);
    out.push(("antipode", m));
    let mut m = h.clone();
    m.rmatrix[0].2 = Cyclo::zero();
    out.push(("rmatrix", m));
    let mut m = h.clone();
    m.ribbon = m.ribbon.iter().map(|c| c.clone() * Cyclo::from_i64(2)).collect();
    out.push(("ribbon", m));
    out
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbon_cochain::datasets;
use ribbon_cochain::rep::{RepCategory, RepObject};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub type Bundled = (&'static str, RepCategory<Cyclo>, Vec<RepObject<Cyclo>>);

/// Every bundled category with a pool of small objects, built once.
pub fn bundled() -> &'static [Bundled] {
    static ALL: std::sync::LazyLock<Vec<Bundled>> = std::sync::LazyLock::new(build_bundled);
    &ALL
}

fn build_bundled() -> Vec<Bundled> {
    let chars = |n: u32| (0..n as i64).map(|a| datasets::fun_zn_character(n, a)).collect::<Vec<_>>();
    let sweedler_pool = || vec![datasets::sweedler_character(true), datasets::sweedler_character(false), datasets::sweedler_projective()];
    let cat = |name: &str| RepCategory::new(datasets::builtin(name).unwrap()).unwrap();
    let mut out = vec![
        ("trivial", cat("trivial"), vec![RepObject::vector_space(1), RepObject::vector_space(2)]),
        ("fun_z3", cat("fun_z3"), chars(3)),
        ("fun_z5", cat("fun_z5"), chars(5)),
        ("sweedler", cat("sweedler"), sweedler_pool()),
        ("sweedler_alpha1", cat("sweedler_alpha1"), sweedler_pool()),
    ];
    for (name, c, pool) in &mut out {
        pool.retain(|x| c.is_module(x));
        assert!(!pool.is_empty(), "{name}");
    }
    out
}

/// Components of a braid closure, tracked strand by strand: `comp[s]` for
/// starting strand `s`, numbered by smallest member.
pub fn closure_components(strands: usize, word: &[(usize, bool)]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..strands).collect();
    for &(i, _) in word {
        at.swap(i, i + 1);
    }
    // strand at[j] ends where strand j starts
    let mut comp = vec![usize::MAX; strands];
    let mut next = 0;
    for s in 0..strands {
        let mut j = s;
        while comp[j] == usize::MAX {
            comp[j] = next;
            j = at[j];
        }
        if comp[s] == next {
            next += 1;
        }
    }
    comp
}

/// A braid word on at most three strands whose closure is a knot.
pub fn knot_word(rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, bool)>) {
    use rand::Rng;
    loop {
        let strands = rng.gen_range(1..=3);
        let len = rng.gen_range(0..=5);
        let word = ribbon_cochain::corpus::braid_word(strands, len, rng);
        if closure_components(strands, &word).iter().all(|c| *c == 0) {
            return (strands, word);
        }
    }
}
