//! Strictly associative tensor words of complexes.
//!
//! A word `[x_1, …, x_k]` is realized as `x_1 ⊗ (x_2 ⊗ (… ⊗ x_k))`. Its basis in
//! degree `n` is the set of labels `((a_1, i_1), …, (a_k, i_k))` with `Σ a_j = n`,
//! ordered lexicographically, which is exactly the order produced by
//! right-nested [`tensor_chain`]. Maps between words are degree-0 chain maps
//! between the realizations; tensoring them concatenates words.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::cochain::{tensor_chain, ChainMap, ChainObject};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::RepCategory;
use crate::scalar::Scalar;

pub type Label = Vec<(i64, usize)>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct WordLayout {
    labels: BTreeMap<i64, Vec<Label>>,
    index: BTreeMap<i64, HashMap<Label, usize>>,
}

impl WordLayout {
    /// Layout from per-atom `(lo, dims)`.
    pub fn from_dims(atoms: &[(i64, Vec<usize>)]) -> Self {
        let mut labels: BTreeMap<i64, Vec<Label>> = BTreeMap::from([(0, vec![Vec::new()])]);
        for (lo, dims) in atoms.iter().rev() {
            let mut next: BTreeMap<i64, Vec<Label>> = BTreeMap::new();
            // for a fixed total degree, labels go by `a`, then `i`, then the rest
            for (k, d) in dims.iter().enumerate() {
                let a = lo + k as i64;
                for (m, rest) in &labels {
                    let out = next.entry(a + m).or_default();
                    for i in 0..*d {
                        for r in rest {
                            let mut l = Vec::with_capacity(r.len() + 1);
                            l.push((a, i));
                            l.extend_from_slice(r);
                            out.push(l);
                        }
                    }
                }
            }
            next.retain(|_, v| !v.is_empty());
            labels = next;
        }
        let index = labels
            .iter()
            .map(|(n, ls)| (*n, ls.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()))
            .collect();
        WordLayout { labels, index }
    }

    pub fn new<K: Scalar>(word: &[ChainObject<K>]) -> Self {
        let atoms: Vec<(i64, Vec<usize>)> = word.iter().map(|x| (x.lo(), x.degrees().map(|n| x.dim(n)).collect())).collect();
        Self::from_dims(&atoms)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.labels.get(&n).map_or(0, Vec::len)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.labels.keys().copied()
    }

    pub fn labels(&self, n: i64) -> &[Label] {
        self.labels.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, n: i64, label: &[(i64, usize)]) -> Option<usize> {
        self.index.get(&n)?.get(label).copied()
    }
}

/// Right-nested realization; the empty word is the unit.
pub fn realize<K: Scalar>(cat: &RepCategory<K>, word: &[ChainObject<K>]) -> ChainObject<K> {
    match word.split_last() {
        None => ChainObject::unit(cat),
        Some((last, init)) => init.iter().rev().fold(last.clone(), |acc, x| tensor_chain(cat, x, &acc)),
    }
}

/// A degree-0 map between realized words.
#[derive(Clone, Debug)]
pub struct WordMap<K> {
    pub source: Vec<ChainObject<K>>,
    pub target: Vec<ChainObject<K>>,
    comps: BTreeMap<i64, Matrix<K>>,
    source_layout: Arc<WordLayout>,
    target_layout: Arc<WordLayout>,
}

impl<K: Scalar> PartialEq for WordMap<K> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.comps == other.comps
    }
}

impl<K: Scalar> WordMap<K> {
    pub fn new(source: Vec<ChainObject<K>>, target: Vec<ChainObject<K>>, mut comps: BTreeMap<i64, Matrix<K>>) -> Result<Self> {
        let sl = WordLayout::new(&source);
        let tl = WordLayout::new(&target);
        for (n, m) in &comps {
            if m.shape() != (tl.dim(*n), sl.dim(*n)) {
                return Err(Error::Shape(format!("word map component in degree {n} has shape {:?}", m.shape())));
            }
        }
        comps.retain(|_, m| !m.is_zero());
        Ok(WordMap { source, target, comps, source_layout: Arc::new(sl), target_layout: Arc::new(tl) })
    }

    /// Reads a chain map between the realizations of `source` and `target`.
    pub fn from_chain_map(source: Vec<ChainObject<K>>, target: Vec<ChainObject<K>>, f: &ChainMap<K>) -> Result<Self> {
        if f.degree != 0 {
            return Err(Error::Shape("word maps have degree 0".into()));
        }
        Self::new(source, target, f.components().clone())
    }

    pub fn identity(word: Vec<ChainObject<K>>) -> Self {
        let layout = Arc::new(WordLayout::new(&word));
        let comps = layout.degrees().map(|n| (n, Matrix::identity(layout.dim(n)))).collect();
        WordMap { source: word.clone(), target: word, comps, source_layout: layout.clone(), target_layout: layout }
    }

    pub fn component(&self, n: i64) -> Matrix<K> {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target_layout.dim(n), self.source_layout.dim(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix<K>> {
        &self.comps
    }

    pub fn source_layout(&self) -> &WordLayout {
        &self.source_layout
    }

    pub fn target_layout(&self) -> &WordLayout {
        &self.target_layout
    }

    pub fn to_chain_map(&self, cat: &RepCategory<K>) -> ChainMap<K> {
        ChainMap::new(realize(cat, &self.source), realize(cat, &self.target), 0, self.comps.clone()).expect("layouts match realizations")
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &WordMap<K>) -> Result<Self> {
        if f.target != self.source {
            return Err(Error::Shape("word maps are not composable".into()));
        }
        let comps = f.comps.iter().filter_map(|(n, m)| self.comps.get(n).map(|g| (*n, g.mul(m)))).collect::<BTreeMap<_, _>>();
        let mut comps = comps;
        comps.retain(|_, m: &mut Matrix<K>| !m.is_zero());
        Ok(WordMap {
            source: f.source.clone(),
            target: self.target.clone(),
            comps,
            source_layout: f.source_layout.clone(),
            target_layout: self.target_layout.clone(),
        })
    }

    pub fn add_scaled(&self, c: &K, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("word maps are not parallel".into()));
        }
        let mut comps = self.comps.clone();
        for (n, m) in &other.comps {
            let e = comps.entry(*n).or_insert_with(|| Matrix::zeros(m.nrows(), m.ncols()));
            *e = e.add_scaled(c, m);
        }
        comps.retain(|_, m| !m.is_zero());
        Ok(WordMap { comps, ..self.clone() })
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut comps: BTreeMap<i64, Matrix<K>> = self.comps.iter().map(|(n, m)| (*n, m.scale(c))).collect();
        comps.retain(|_, m| !m.is_zero());
        WordMap { comps, ..self.clone() }
    }

    /// The block from source multidegree `alpha` to target multidegree `beta`,
    /// in Kronecker order of the atom components.
    pub fn block(&self, alpha: &[i64], beta: &[i64]) -> Matrix<K> {
        let n: i64 = alpha.iter().sum();
        let pick = |layout: &WordLayout, degs: &[i64]| -> Vec<usize> {
            layout
                .labels(n)
                .iter()
                .enumerate()
                .filter(|(_, l)| l.iter().map(|p| p.0).eq(degs.iter().copied()))
                .map(|(i, _)| i)
                .collect()
        };
        let cols = pick(&self.source_layout, alpha);
        let rows = pick(&self.target_layout, beta);
        let m = self.component(n);
        let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let triples = rows.iter().enumerate().flat_map(|(ri, r)| {
            let col_pos = &col_pos;
            m.row(*r).iter().filter_map(move |(c, v)| col_pos.get(c).map(|ci| (ri, *ci, v.clone())))
        });
        Matrix::from_triples(rows.len(), cols.len(), triples.collect::<Vec<_>>())
    }
}

/// Tensor product of word maps, acting on the concatenated words.
pub fn tensor_word_maps<K: Scalar>(parts: &[WordMap<K>]) -> WordMap<K> {
    let source: Vec<ChainObject<K>> = parts.iter().flat_map(|p| p.source.iter().cloned()).collect();
    let target: Vec<ChainObject<K>> = parts.iter().flat_map(|p| p.target.iter().cloned()).collect();
    let sl = Arc::new(WordLayout::new(&source));
    let tl = Arc::new(WordLayout::new(&target));
    let cuts: Vec<usize> = parts.iter().map(|p| p.source.len()).collect();
    let transposed: Vec<BTreeMap<i64, Matrix<K>>> =
        parts.iter().map(|p| p.comps.iter().map(|(n, m)| (*n, m.transpose())).collect()).collect();
    let degrees: Vec<i64> = sl.degrees().filter(|n| tl.dim(*n) > 0).collect();
    let comps: BTreeMap<i64, Matrix<K>> = degrees
        .par_iter()
        .map(|&n| {
            let mut triples = Vec::new();
            for (col, label) in sl.labels(n).iter().enumerate() {
                // partial products: (target label so far, coefficient)
                let mut acc: Vec<(Label, K)> = vec![(Vec::new(), K::one())];
                let mut start = 0;
                for (t, p) in parts.iter().enumerate() {
                    let sub = &label[start..start + cuts[t]];
                    start += cuts[t];
                    let m: i64 = sub.iter().map(|x| x.0).sum();
                    let Some(idx) = p.source_layout.position(m, sub) else {
                        acc.clear();
                        break;
                    };
                    let Some(tr) = transposed[t].get(&m) else {
                        acc.clear();
                        break;
                    };
                    let column = tr.row(idx);
                    if column.is_empty() {
                        acc.clear();
                        break;
                    }
                    let tlabels = p.target_layout.labels(m);
                    let mut next = Vec::with_capacity(acc.len() * column.len());
                    for (l, c) in &acc {
                        for (r, v) in column {
                            let mut nl = l.clone();
                            nl.extend_from_slice(&tlabels[*r]);
                            next.push((nl, c.mul_ref(v)));
                        }
                    }
                    acc = next;
                }
                for (l, c) in acc {
                    let row = tl.position(n, &l).expect("target label in layout");
                    triples.push((row, col, c));
                }
            }
            (n, Matrix::from_triples(tl.dim(n), sl.dim(n), triples))
        })
        .collect();
    let mut comps = comps;
    comps.retain(|_, m| !m.is_zero());
    WordMap { source, target, comps, source_layout: sl, target_layout: tl }
}

/// Tensor product of homogeneous maps between single atoms, as a map between
/// the realized words, with the sign `(-1)^{e_j (a_1 + … + a_{j-1})}` for the
/// map of degree `e_j` passing the source components to its left.
pub fn tensor_graded_maps<K: Scalar>(cat: &RepCategory<K>, parts: &[ChainMap<K>]) -> ChainMap<K> {
    let source: Vec<ChainObject<K>> = parts.iter().map(|p| p.source.clone()).collect();
    let target: Vec<ChainObject<K>> = parts.iter().map(|p| p.target.clone()).collect();
    let degree: i64 = parts.iter().map(|p| p.degree).sum();
    let sl = WordLayout::new(&source);
    let tl = WordLayout::new(&target);
    let transposed: Vec<BTreeMap<i64, Matrix<K>>> =
        parts.iter().map(|p| p.components().iter().map(|(n, m)| (*n, m.transpose())).collect()).collect();
    let degrees: Vec<i64> = sl.degrees().filter(|n| tl.dim(n + degree) > 0).collect();
    let comps: BTreeMap<i64, Matrix<K>> = degrees
        .par_iter()
        .map(|&n| {
            let mut triples = Vec::new();
            for (col, label) in sl.labels(n).iter().enumerate() {
                let mut acc: Vec<(Label, K)> = vec![(Vec::new(), K::one())];
                let mut left = 0;
                for (t, p) in parts.iter().enumerate() {
                    let (a, i) = label[t];
                    let column = transposed[t].get(&a).map_or(&[][..], |m| m.row(i));
                    if column.is_empty() {
                        acc.clear();
                        break;
                    }
                    let sign = K::sign(p.degree * left);
                    left += a;
                    let mut next = Vec::with_capacity(acc.len() * column.len());
                    for (l, c) in &acc {
                        for (r, v) in column {
                            let mut nl = l.clone();
                            nl.push((a + p.degree, *r));
                            next.push((nl, c.mul_ref(v).mul_ref(&sign)));
                        }
                    }
                    acc = next;
                }
                for (l, c) in acc {
                    let row = tl.position(n + degree, &l).expect("target label in layout");
                    triples.push((row, col, c));
                }
            }
            (n, Matrix::from_triples(tl.dim(n + degree), sl.dim(n), triples))
        })
        .collect();
    ChainMap::new(realize(cat, &source), realize(cat, &target), degree, comps).expect("layouts match realizations")
}
