//! State spaces of marked surfaces, `Hom*(1, Ad^{⊗g} ⊗ x_I)`, and the maps
//! induced by cylinders over tuples of chain maps.
//!
//! A surface of genus `g` with markings `(x_1, ±), …, (x_t, ±)` is the word
//! `Ad, …, Ad, x_1^±, …, x_t^±` where `x^-` is the dual complex. State
//! complexes are complexes of vector spaces; vector `i` of degree `n` is an
//! invariant vector in the degree-`n` part of the realized word.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cochain::{
    cohomology, dual_chain, dual_homotopy, dual_map, find_homotopy, tensor_chain, ChainHomotopy, ChainMap, ChainObject,
    Equivalence, HomComplex,
};
use crate::datasets;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::rep::RepCategory;
use crate::scalar::Scalar;
use crate::strings::{eval_string, GradedStringDiagram, Orient, StringToken};
use crate::words::{realize, tensor_graded_maps, WordLayout};

#[derive(Clone, Debug, PartialEq)]
pub struct Marking<K> {
    pub complex: ChainObject<K>,
    pub sign: Orient,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkedSurface<K> {
    pub genus: usize,
    pub markings: Vec<Marking<K>>,
}

impl<K: Scalar> MarkedSurface<K> {
    pub fn new(genus: usize, markings: Vec<(ChainObject<K>, Orient)>) -> Self {
        MarkedSurface { genus, markings: markings.into_iter().map(|(complex, sign)| Marking { complex, sign }).collect() }
    }

    pub fn unmarked(genus: usize) -> Self {
        MarkedSurface { genus, markings: Vec::new() }
    }

    /// The atoms `Ad^g, x_1^±, …`.
    pub fn word(&self, cat: &RepCategory<K>) -> Vec<ChainObject<K>> {
        let ad = ChainObject::concentrated(cat.adjoint(), 0);
        let mut w = vec![ad; self.genus];
        w.extend(self.markings.iter().map(|m| marking_atom(cat, m)));
        w
    }
}

fn marking_atom<K: Scalar>(cat: &RepCategory<K>, m: &Marking<K>) -> ChainObject<K> {
    match m.sign {
        Orient::Pos => m.complex.clone(),
        Orient::Neg => dual_chain(cat, &m.complex),
    }
}

/// Right-nested tensor of the markings, dualized at negative ones.
pub fn oriented_product<K: Scalar>(cat: &RepCategory<K>, markings: &[Marking<K>]) -> ChainObject<K> {
    let atoms: Vec<ChainObject<K>> = markings.iter().map(|m| marking_atom(cat, m)).collect();
    realize(cat, &atoms)
}

pub struct StateComplex<K> {
    /// The complex of vector spaces.
    pub complex: ChainObject<K>,
    pub word: Vec<ChainObject<K>>,
    pub layout: WordLayout,
    hom: HomComplex<K>,
}

impl<K: Scalar> StateComplex<K> {
    pub fn dim(&self, n: i64) -> usize {
        self.complex.dim(n)
    }

    pub fn poincare(&self) -> BTreeMap<i64, usize> {
        self.complex.poincare()
    }

    pub fn cohomology(&self) -> BTreeMap<i64, usize> {
        cohomology(&self.complex).into_iter().filter(|(_, r)| *r > 0).collect()
    }

    /// Basis vector `i` of degree `n`, in word-layout coordinates.
    pub fn basis_vector(&self, n: i64, i: usize) -> SparseVec<K> {
        let (_, space) = self.hom.summand(n, 0).expect("degree in range");
        space.kernel.basis[i].clone()
    }

    /// Coordinates of an invariant vector of degree `n`, or `None` if `v` is
    /// not invariant.
    pub fn coords(&self, n: i64, v: &[(usize, K)]) -> Option<Vec<K>> {
        let Some((_, space)) = self.hom.summand(n, 0) else {
            return if v.is_empty() { Some(Vec::new()) } else { None };
        };
        let c = space.kernel.coords(v);
        let back: BTreeMap<usize, K> = space.kernel.combine(&c).into_iter().collect();
        let want: BTreeMap<usize, K> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        (back == want).then_some(c)
    }

    /// Post-composition with a map of realized words, as a map of state
    /// complexes.
    pub fn post_compose(&self, f: &ChainMap<K>, target: &StateComplex<K>) -> Result<ChainMap<K>> {
        let e = f.degree;
        let comps: Vec<(i64, Matrix<K>)> = self
            .complex
            .degrees()
            .filter(|n| self.dim(*n) > 0)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&n| {
                let m = f.component(n);
                let cols = (0..self.dim(n))
                    .map(|i| {
                        let img = m.mul_vec(&self.basis_vector(n, i));
                        let c = target.coords(n + e, &img).ok_or_else(|| Error::NotIntertwiner("image is not invariant".into()))?;
                        Ok(crate::linalg::dense_to_sparse(&c))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((n, Matrix::from_columns(target.dim(n + e), &cols)))
            })
            .collect::<Result<_>>()?;
        ChainMap::new(self.complex.clone(), target.complex.clone(), e, comps.into_iter().collect())
    }
}

/// `Hom*(1, W)` for a word `W`.
pub fn word_state_complex<K: Scalar>(cat: &RepCategory<K>, word: Vec<ChainObject<K>>) -> StateComplex<K> {
    let r = realize(cat, &word);
    let hom = HomComplex::new(cat, &ChainObject::unit(cat), &r);
    StateComplex { complex: hom.complex.clone(), layout: WordLayout::new(&word), word, hom }
}

pub fn state_complex<K: Scalar>(cat: &RepCategory<K>, s: &MarkedSurface<K>) -> StateComplex<K> {
    word_state_complex(cat, s.word(cat))
}

/// Sign of moving a degree-one line emitted at atom `t` to the far left past
/// lines of degrees `degs[..t]`, read off the graded string diagram.
fn differential_sign(degs: &[i64], t: usize) -> Result<i64> {
    let source: Vec<(i64, Orient)> = degs.iter().map(|a| (*a, Orient::Pos)).collect();
    let mut slices = Vec::new();
    let mut coupon = vec![StringToken::Id; degs.len()];
    coupon[t] = StringToken::Coupon { inputs: 1, outputs: vec![(-1, Orient::Pos), (degs[t] + 1, Orient::Pos)] };
    slices.push(coupon);
    for p in (0..t).rev() {
        let mut s = vec![StringToken::Id; p];
        s.push(StringToken::Cross);
        s.extend(std::iter::repeat(StringToken::Id).take(degs.len() - p - 1));
        slices.push(s);
    }
    let mut target = vec![(-1, Orient::Pos)];
    target.extend(source.iter().enumerate().map(|(j, s)| if j == t { (s.0 + 1, Orient::Pos) } else { *s }));
    eval_string(&GradedStringDiagram { source, target, slices })
}

/// The state complex with its differential assembled marking by marking:
/// each marking contributes its own differential, at a negative marking
/// `x^-` the map `-(-1)^p (d_x^{-p-1})ᵀ`, times the sign of the graded string
/// diagram that carries the new degree to the left.
pub fn state_differential_explicit<K: Scalar>(cat: &RepCategory<K>, s: &MarkedSurface<K>) -> Result<StateComplex<K>> {
    let base = state_complex(cat, s);
    let g = s.genus;
    let atom_diff = |t: usize, a: i64| -> Option<Matrix<K>> {
        if t < g {
            return None;
        }
        let m = &s.markings[t - g];
        let d = match m.sign {
            Orient::Pos => m.complex.diff(a),
            Orient::Neg => m.complex.diff(-a - 1).transpose().scale(&-K::sign(a)),
        };
        (!d.is_zero()).then_some(d)
    };
    let lo = base.complex.lo();
    let hi = base.complex.hi();
    let diffs: Vec<Matrix<K>> = (lo..hi)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let mut sign_cache: HashMap<(Vec<i64>, usize), i64> = HashMap::new();
            let cols = (0..base.dim(n))
                .map(|i| {
                    let v = base.basis_vector(n, i);
                    let mut out: BTreeMap<usize, K> = BTreeMap::new();
                    for (idx, c) in &v {
                        let label = &base.layout.labels(n)[*idx];
                        let degs: Vec<i64> = label.iter().map(|p| p.0).collect();
                        for t in 0..label.len() {
                            let (a, k) = label[t];
                            let Some(d) = atom_diff(t, a) else { continue };
                            let sg = match sign_cache.get(&(degs.clone(), t)) {
                                Some(s) => *s,
                                None => {
                                    let s = differential_sign(&degs, t)?;
                                    sign_cache.insert((degs.clone(), t), s);
                                    s
                                }
                            };
                            let coef = c.mul_ref(&K::from_i64(sg));
                            for (r, x) in d.transpose().row(k) {
                                let mut nl = label.clone();
                                nl[t] = (a + 1, *r);
                                let pos = base.layout.position(n + 1, &nl).expect("label in layout");
                                let e = out.entry(pos).or_insert_with(K::zero);
                                *e = e.add_ref(&coef.mul_ref(x));
                            }
                        }
                    }
                    let img: SparseVec<K> = out.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    let c = base
                        .coords(n + 1, &img)
                        .ok_or_else(|| Error::NotIntertwiner(format!("explicit differential leaves the invariants in degree {n}")))?;
                    Ok(crate::linalg::dense_to_sparse(&c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(base.dim(n + 1), &cols))
        })
        .collect::<Result<_>>()?;
    let comps = (lo..=hi).map(|n| base.complex.component_or_zero(n)).collect();
    let complex = ChainObject::from_parts(lo, 1, comps, diffs);
    Ok(StateComplex { complex, ..base })
}

fn slot_maps<K: Scalar>(
    cat: &RepCategory<K>,
    s: &MarkedSurface<K>,
    s2: &MarkedSurface<K>,
    maps: &[ChainMap<K>],
) -> Result<Vec<ChainMap<K>>> {
    if s.genus != s2.genus || s.markings.len() != s2.markings.len() || maps.len() != s.markings.len() {
        return Err(Error::Shape("surfaces and map tuple do not match".into()));
    }
    let ad = ChainObject::concentrated(cat.adjoint(), 0);
    let mut out = vec![ChainMap::identity(&ad); s.genus];
    for ((m, m2), f) in s.markings.iter().zip(&s2.markings).zip(maps) {
        if m.sign != m2.sign || f.degree != 0 {
            return Err(Error::Shape("marking signs differ or map is not of degree 0".into()));
        }
        let (from, to) = match m.sign {
            Orient::Pos => (&m.complex, &m2.complex),
            Orient::Neg => (&m2.complex, &m.complex),
        };
        if f.source != *from || f.target != *to {
            return Err(Error::Shape("map direction does not match the marking sign".into()));
        }
        out.push(match m.sign {
            Orient::Pos => f.clone(),
            Orient::Neg => dual_map(cat, f),
        });
    }
    Ok(out)
}

/// The map `Z(S) → Z(S')` induced by the cylinder over `maps`. At a positive
/// marking `maps[i]: x_i → y_i`; at a negative one `maps[i]: y_i → x_i`.
pub fn bordism_map<K: Scalar>(
    cat: &RepCategory<K>,
    s: &MarkedSurface<K>,
    s2: &MarkedSurface<K>,
    maps: &[ChainMap<K>],
) -> Result<ChainMap<K>> {
    let slots = slot_maps(cat, s, s2, maps)?;
    let f = tensor_graded_maps(cat, &slots);
    state_complex(cat, s).post_compose(&f, &state_complex(cat, s2))
}

/// The tuple of the composite cylinder `S → S' → S''`.
pub fn compose_tuples<K: Scalar>(s: &MarkedSurface<K>, first: &[ChainMap<K>], second: &[ChainMap<K>]) -> Result<Vec<ChainMap<K>>> {
    s.markings
        .iter()
        .zip(first.iter().zip(second))
        .map(|(m, (f, g))| match m.sign {
            Orient::Pos => g.compose(f),
            Orient::Neg => f.compose(g),
        })
        .collect()
}

/// Witness that a cylinder over homotopy equivalences is one.
#[derive(Clone, Debug)]
pub struct StateEquivalence<K> {
    pub equivalence: Equivalence<K>,
    /// Whether both homotopies came from the tensor assembly, rather than
    /// from solving for them.
    pub assembled: bool,
}

/// `⊗A_j - id = dK + Kd` with `K = Σ_i A_1⊗…⊗A_{i-1}⊗H_i⊗1⊗…⊗1`.
fn assembled_homotopy<K: Scalar>(cat: &RepCategory<K>, slots: &[(ChainMap<K>, ChainHomotopy<K>)]) -> ChainHomotopy<K> {
    let word: Vec<ChainObject<K>> = slots.iter().map(|(a, _)| a.source.clone()).collect();
    let r = realize(cat, &word);
    let mut total = ChainMap::zero(&r, &r, -1);
    for i in 0..slots.len() {
        if slots[i].1.is_zero() {
            continue;
        }
        let parts: Vec<ChainMap<K>> = slots
            .iter()
            .enumerate()
            .map(|(j, (a, h))| match j.cmp(&i) {
                std::cmp::Ordering::Less => a.clone(),
                std::cmp::Ordering::Equal => h.clone(),
                std::cmp::Ordering::Greater => ChainMap::identity(&a.source),
            })
            .collect();
        total = total.add(&tensor_graded_maps(cat, &parts)).expect("parallel homotopies");
    }
    total
}

/// Builds the state maps of `μ_i` and of their inverses, and homotopies for
/// both composites: first by tensor assembly from the witnesses, and if that
/// does not verify, by solving.
pub fn verify_homotopy_preservation<K: Scalar>(
    cat: &RepCategory<K>,
    s: &MarkedSurface<K>,
    eqs: &[Equivalence<K>],
) -> Result<StateEquivalence<K>> {
    if eqs.len() != s.markings.len() {
        return Err(Error::Shape("one equivalence per marking expected".into()));
    }
    for (i, e) in eqs.iter().enumerate() {
        if !e.verify() {
            return Err(Error::NotEquivalence(format!("witness at marking {i} does not verify")));
        }
        if e.map.source != s.markings[i].complex {
            return Err(Error::Shape(format!("equivalence at marking {i} starts elsewhere")));
        }
    }
    let s2 = MarkedSurface {
        genus: s.genus,
        markings: s.markings.iter().zip(eqs).map(|(m, e)| Marking { complex: e.map.target.clone(), sign: m.sign }).collect(),
    };
    let pick = |forward: bool| -> Vec<ChainMap<K>> {
        s.markings
            .iter()
            .zip(eqs)
            .map(|(m, e)| if (m.sign == Orient::Pos) == forward { e.map.clone() } else { e.inverse.clone() })
            .collect()
    };
    let (z, z2) = (state_complex(cat, s), state_complex(cat, &s2));
    let fwd = slot_maps(cat, s, &s2, &pick(true))?;
    let bwd = slot_maps(cat, &s2, s, &pick(false))?;
    let f = z.post_compose(&tensor_graded_maps(cat, &fwd), &z2)?;
    let g = z2.post_compose(&tensor_graded_maps(cat, &bwd), &z)?;

    let ad = ChainObject::concentrated(cat.adjoint(), 0);
    let homotopies = |source_side: bool| -> Result<ChainHomotopy<K>> {
        let mut slots = vec![(ChainMap::identity(&ad), ChainMap::zero(&ad, &ad, -1)); s.genus];
        let marked = fwd.iter().zip(&bwd).skip(s.genus);
        for ((m, e), (a, b)) in s.markings.iter().zip(eqs).zip(marked) {
            let (comp, h) = if source_side {
                (b.compose(a)?, if m.sign == Orient::Pos { e.source_homotopy.clone() } else { dual_homotopy(cat, &e.source_homotopy) })
            } else {
                (a.compose(b)?, if m.sign == Orient::Pos { e.target_homotopy.clone() } else { dual_homotopy(cat, &e.target_homotopy) })
            };
            slots.push((comp, h));
        }
        let k = assembled_homotopy(cat, &slots);
        let zz = if source_side { &z } else { &z2 };
        zz.post_compose(&k, zz)
    };
    let mut assembled = true;
    let gf = g.compose(&f)?;
    let fg = f.compose(&g)?;
    let mut hs = homotopies(true)?;
    if !gf.is_homotopic_via(&ChainMap::identity(&z.complex), &hs) {
        assembled = false;
        hs = find_homotopy(&trivial_category(), &gf, &ChainMap::identity(&z.complex))?
            .ok_or_else(|| Error::NotEquivalence("g∘f is not homotopic to the identity".into()))?;
    }
    let mut ht = homotopies(false)?;
    if !fg.is_homotopic_via(&ChainMap::identity(&z2.complex), &ht) {
        assembled = false;
        ht = find_homotopy(&trivial_category(), &fg, &ChainMap::identity(&z2.complex))?
            .ok_or_else(|| Error::NotEquivalence("f∘g is not homotopic to the identity".into()))?;
    }
    let equivalence = Equivalence { map: f, inverse: g, source_homotopy: hs, target_homotopy: ht };
    if !equivalence.verify() {
        return Err(Error::NotEquivalence("state equivalence does not verify".into()));
    }
    Ok(StateEquivalence { equivalence, assembled })
}

/// Vector spaces as modules over the one-dimensional algebra.
pub fn trivial_category<K: Scalar>() -> RepCategory<K> {
    RepCategory::new(datasets::trivial()).expect("trivial algebra is ribbon")
}

/// Report of the comparison `Z(S₀) ⊗ Z(S₁) → Z(S₀ ⊔ S₁)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidalityReport {
    pub chain_map: bool,
    pub invertible: bool,
}

impl MonoidalityReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.invertible
    }
}

/// The disjoint union `S₀ ⊔ S₁` is the concatenated word of the two surfaces.
/// The comparison sends `φ₀ ⊗ φ₁` to the invariant vector `φ₀(1) ⊗ φ₁(1)`.
pub fn monoidality_map<K: Scalar>(cat: &RepCategory<K>, s0: &MarkedSurface<K>, s1: &MarkedSurface<K>) -> Result<ChainMap<K>> {
    let z0 = state_complex(cat, s0);
    let z1 = state_complex(cat, s1);
    let mut word = z0.word.clone();
    word.extend(z1.word.iter().cloned());
    let z = word_state_complex(cat, word);
    let triv = trivial_category::<K>();
    let src = tensor_chain(&triv, &z0.complex, &z1.complex);
    let n0 = z0.word.len();
    let mut comps = BTreeMap::new();
    for n in src.degrees() {
        let mut cols = Vec::new();
        for a in z0.complex.degrees() {
            let b = n - a;
            if z0.dim(a) == 0 || z1.dim(b) == 0 {
                continue;
            }
            for i in 0..z0.dim(a) {
                let v0 = z0.basis_vector(a, i);
                for j in 0..z1.dim(b) {
                    let v1 = z1.basis_vector(b, j);
                    let mut img: BTreeMap<usize, K> = BTreeMap::new();
                    for (p, x) in &v0 {
                        for (q, y) in &v1 {
                            let mut l = z0.layout.labels(a)[*p].clone();
                            l.extend_from_slice(&z1.layout.labels(b)[*q]);
                            debug_assert_eq!(l.len(), n0 + z1.word.len());
                            let pos = z.layout.position(n, &l).expect("label in layout");
                            let e = img.entry(pos).or_insert_with(K::zero);
                            *e = e.add_ref(&x.mul_ref(y));
                        }
                    }
                    let img: SparseVec<K> = img.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    let c = z.coords(n, &img).ok_or_else(|| Error::NotIntertwiner("product of invariants is not invariant".into()))?;
                    cols.push(crate::linalg::dense_to_sparse(&c));
                }
            }
        }
        if !cols.is_empty() {
            comps.insert(n, Matrix::from_columns(z.dim(n), &cols));
        }
    }
    ChainMap::new(src, z.complex.clone(), 0, comps)
}

pub fn monoidality_check<K: Scalar>(cat: &RepCategory<K>, s0: &MarkedSurface<K>, s1: &MarkedSurface<K>) -> Result<MonoidalityReport> {
    let f = monoidality_map(cat, s0, s1)?;
    let invertible = f
        .source
        .degrees()
        .chain(f.target.degrees())
        .all(|n| f.source.dim(n) == f.target.dim(n) && (f.source.dim(n) == 0 || f.component(n).inverse().is_some()));
    Ok(MonoidalityReport { chain_map: f.is_chain_map(), invertible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::cochain::is_homotopy_equivalence;
    use crate::cyclotomic::Cyclo;
    use crate::rep::RepObject;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn id_cone(c: &RepCategory<Q>) -> ChainObject<Q> {
        corpus::contractible(c, &RepObject::vector_space(1), 0)
    }

    #[test]
    fn small_state_spaces() {
        let t = RepCategory::new(datasets::trivial::<Q>()).unwrap();
        let z = state_complex(&t, &MarkedSurface::unmarked(5));
        assert_eq!(z.poincare(), BTreeMap::from([(0, 1)]));
        let s = MarkedSurface::new(0, vec![(id_cone(&t), Orient::Pos)]);
        assert!(state_complex(&t, &s).cohomology().is_empty());
        let f3 = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        assert_eq!(state_complex(&f3, &MarkedSurface::unmarked(1)).poincare(), BTreeMap::from([(0, 3)]));
        assert_eq!(state_complex(&f3, &MarkedSurface::unmarked(2)).poincare(), BTreeMap::from([(0, 9)]));
    }

    #[test]
    fn explicit_differential_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f3 = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        let pool: Vec<RepObject<Cyclo>> = (0..3).map(|a| datasets::fun_zn_character(3, a)).collect();
        for _ in 0..6 {
            let k = rng.gen_range(1..=3);
            let marks = (0..k)
                .map(|_| (corpus::complex(&f3, &pool, 3, &mut rng), if rng.gen_bool(0.5) { Orient::Pos } else { Orient::Neg }))
                .collect();
            let s = MarkedSurface::new(rng.gen_range(0..=1), marks);
            let a = state_complex(&f3, &s);
            let b = state_differential_explicit(&f3, &s).unwrap();
            assert!(a.complex.squares_to_zero());
            assert_eq!(a.complex, b.complex);
        }
    }

    use rand::Rng;

    #[test]
    fn cylinders_are_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f3 = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        let pool: Vec<RepObject<Cyclo>> = (0..3).map(|a| datasets::fun_zn_character(3, a)).collect();
        for _ in 0..4 {
            let signs: Vec<Orient> = (0..2).map(|_| if rng.gen_bool(0.5) { Orient::Pos } else { Orient::Neg }).collect();
            let xs: Vec<_> = (0..3).map(|_| signs.iter().map(|_| corpus::complex(&f3, &pool, 2, &mut rng)).collect::<Vec<_>>()).collect();
            let surf = |k: usize| MarkedSurface::new(1, xs[k].iter().cloned().zip(signs.iter().copied()).collect());
            let maps = |from: usize, to: usize, rng: &mut ChaCha8Rng| -> Vec<ChainMap<Cyclo>> {
                signs
                    .iter()
                    .enumerate()
                    .map(|(i, sg)| match sg {
                        Orient::Pos => corpus::chain_map(&f3, &xs[from][i], &xs[to][i], rng),
                        Orient::Neg => corpus::chain_map(&f3, &xs[to][i], &xs[from][i], rng),
                    })
                    .collect()
            };
            let (f, g) = (maps(0, 1, &mut rng), maps(1, 2, &mut rng));
            let bf = bordism_map(&f3, &surf(0), &surf(1), &f).unwrap();
            let bg = bordism_map(&f3, &surf(1), &surf(2), &g).unwrap();
            assert!(bf.is_chain_map() && bg.is_chain_map());
            let gf = compose_tuples(&surf(0), &f, &g).unwrap();
            assert_eq!(bordism_map(&f3, &surf(0), &surf(2), &gf).unwrap(), bg.compose(&bf).unwrap());
        }
    }

    #[test]
    fn equivalences_survive() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f3 = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        let pool: Vec<RepObject<Cyclo>> = (0..3).map(|a| datasets::fun_zn_character(3, a)).collect();
        for _ in 0..4 {
            let signs = [Orient::Pos, if rng.gen_bool(0.5) { Orient::Pos } else { Orient::Neg }];
            let xs: Vec<_> = signs.iter().map(|_| corpus::complex(&f3, &pool, 2, &mut rng)).collect();
            let eqs: Vec<_> = xs
                .iter()
                .map(|x| is_homotopy_equivalence(&f3, &corpus::equivalence(&f3, &pool, x, &mut rng)).unwrap().unwrap())
                .collect();
            let s = MarkedSurface::new(rng.gen_range(0..=1), xs.into_iter().zip(signs).collect());
            let w = verify_homotopy_preservation(&f3, &s, &eqs).unwrap();
            assert!(w.assembled);
        }
    }

    #[test]
    fn disjoint_unions() {
        let f3 = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        let r = monoidality_check(&f3, &MarkedSurface::unmarked(1), &MarkedSurface::unmarked(1)).unwrap();
        assert!(r.holds());
        let t = RepCategory::new(datasets::trivial::<Q>()).unwrap();
        let k = RepObject::vector_space(1);
        let a = ChainObject::new(&t, -1, vec![k.clone(), RepObject::vector_space(2)], vec![Matrix::from_triples(2, 1, [(0, 0, Q::from_i64(1))])]).unwrap();
        let b = ChainObject::new(&t, 1, vec![RepObject::vector_space(2), k], vec![Matrix::from_triples(1, 2, [(0, 1, Q::from_i64(1))])]).unwrap();
        let s0 = MarkedSurface::new(0, vec![(a, Orient::Pos)]);
        let s1 = MarkedSurface::new(0, vec![(b, Orient::Neg)]);
        assert!(monoidality_check(&t, &s0, &s1).unwrap().holds());
    }
}
