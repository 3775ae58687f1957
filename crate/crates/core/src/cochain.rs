//! Bounded cochain complexes over `rep(H)`.
//!
//! Conventions:
//! * `(x⊗y)^n = ⊕_{a+b=n} x^a⊗y^b`, blocks ordered by `a`, with
//!   `d = d_x⊗1 + (-1)^a 1⊗d_y` on `x^a⊗y^b`.
//! * `(x[r])^m = x^{m+r}` and the shifted differential is `(-1)^r d`.
//! * `(x*)^p = (x^{-p})*` with `d_{x*}^p = -(-1)^p (d_x^{-p-1})ᵀ`, which makes the
//!   plain pairings `ev` and `coev` chain maps.
//! * `Hom^n(x, y) = ⊕_a Hom(x^a, y^{a+n})` with `d(φ) = d_y φ - (-1)^n φ d_x`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{is_intertwiner, HomSpace, RepCategory, RepObject};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ChainObject<K> {
    lo: i64,
    algebra_dim: usize,
    comps: Vec<RepObject<K>>,
    diffs: Vec<Matrix<K>>,
}

impl<K: Scalar> ChainObject<K> {
    /// Validated complex with `comps[k]` in degree `lo + k` and
    /// `diffs[k]: comps[k] → comps[k+1]`.
    pub fn new(cat: &RepCategory<K>, lo: i64, comps: Vec<RepObject<K>>, diffs: Vec<Matrix<K>>) -> Result<Self> {
        let n = cat.algebra_dim();
        if diffs.len() + 1 != comps.len() && !(comps.is_empty() && diffs.is_empty()) {
            return Err(Error::Shape(format!("{} components need {} differentials, got {}", comps.len(), comps.len().saturating_sub(1), diffs.len())));
        }
        for (k, c) in comps.iter().enumerate() {
            if !cat.is_module(c) {
                return Err(Error::Shape(format!("component in degree {} is not a module", lo + k as i64)));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (comps[k + 1].dim, comps[k].dim) {
                return Err(Error::Shape(format!("differential in degree {} has shape {:?}", lo + k as i64, d.shape())));
            }
            if !is_intertwiner(&comps[k], &comps[k + 1], d) {
                return Err(Error::NotIntertwiner(format!("differential in degree {}", lo + k as i64)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&diffs[k - 1]).is_zero() {
                return Err(Error::NotComplex(format!("d∘d ≠ 0 starting in degree {}", lo + k as i64 - 1)));
            }
        }
        Ok(ChainObject { lo, algebra_dim: n, comps, diffs })
    }

    /// Trusted constructor; shapes are assumed consistent.
    pub(crate) fn from_parts(lo: i64, algebra_dim: usize, comps: Vec<RepObject<K>>, diffs: Vec<Matrix<K>>) -> Self {
        debug_assert!(comps.is_empty() || diffs.len() + 1 == comps.len());
        ChainObject { lo, algebra_dim, comps, diffs }
    }

    pub fn zero(algebra_dim: usize) -> Self {
        ChainObject { lo: 0, algebra_dim, comps: Vec::new(), diffs: Vec::new() }
    }

    /// `k(m) ⊗ x`: a single object placed in degree `m`.
    pub fn concentrated(x: RepObject<K>, degree: i64) -> Self {
        ChainObject { lo: degree, algebra_dim: x.algebra_dim(), comps: vec![x], diffs: Vec::new() }
    }

    pub fn unit(cat: &RepCategory<K>) -> Self {
        Self::concentrated(cat.unit(), 0)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.comps.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn component(&self, n: i64) -> Option<&RepObject<K>> {
        if n < self.lo {
            return None;
        }
        self.comps.get((n - self.lo) as usize)
    }

    pub fn component_or_zero(&self, n: i64) -> RepObject<K> {
        self.component(n).cloned().unwrap_or_else(|| RepObject::zero(self.algebra_dim))
    }

    pub fn dim(&self, n: i64) -> usize {
        self.component(n).map_or(0, |c| c.dim)
    }

    /// `d^n: x^n → x^{n+1}`, zero outside the support.
    pub fn diff(&self, n: i64) -> Matrix<K> {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim(n + 1), self.dim(n))
        }
    }

    pub fn total_dim(&self) -> usize {
        self.comps.iter().map(|c| c.dim).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n) as i64).sum()
    }

    pub fn squares_to_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// Nonzero component dimensions by degree.
    pub fn poincare(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|n| (n, self.dim(n))).filter(|(_, d)| *d > 0).collect()
    }

    /// Drops zero components at both ends.
    pub fn trimmed(&self) -> Self {
        let first = self.comps.iter().position(|c| c.dim > 0);
        let Some(first) = first else {
            return Self::zero(self.algebra_dim);
        };
        let last = self.comps.iter().rposition(|c| c.dim > 0).unwrap();
        ChainObject {
            lo: self.lo + first as i64,
            algebra_dim: self.algebra_dim,
            comps: self.comps[first..=last].to_vec(),
            diffs: self.diffs[first..last].to_vec(),
        }
    }
}

/// Block offsets of `(x⊗y)^n`: `(a, offset, size)` for each `x^a⊗y^{n-a}`.
pub fn tensor_blocks<K: Scalar>(x: &ChainObject<K>, y: &ChainObject<K>, n: i64) -> Vec<(i64, usize, usize)> {
    let mut out = Vec::new();
    if x.is_empty() || y.is_empty() {
        return out;
    }
    let mut off = 0;
    for a in x.lo.max(n - y.hi())..=x.hi().min(n - y.lo) {
        let size = x.dim(a) * y.dim(n - a);
        out.push((a, off, size));
        off += size;
    }
    out
}

pub fn tensor_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>, y: &ChainObject<K>) -> ChainObject<K> {
    if x.is_empty() || y.is_empty() {
        return ChainObject::zero(cat.algebra_dim());
    }
    let lo = x.lo + y.lo;
    let hi = x.hi() + y.hi();
    let comps: Vec<RepObject<K>> = (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let parts: Vec<RepObject<K>> = tensor_blocks(x, y, n)
                .into_iter()
                .map(|(a, _, _)| cat.tensor(&x.component_or_zero(a), &y.component_or_zero(n - a)))
                .collect();
            parts.iter().skip(1).fold(parts[0].clone(), |acc, p| cat.direct_sum(&acc, p))
        })
        .collect();
    let diffs: Vec<Matrix<K>> = (lo..hi)
        .into_par_iter()
        .map(|n| {
            let src = tensor_blocks(x, y, n);
            let tgt = tensor_blocks(x, y, n + 1);
            let find = |a: i64| tgt.iter().find(|(b, _, _)| *b == a).map(|(_, o, _)| *o);
            let rows: usize = tgt.iter().map(|t| t.2).sum();
            let cols: usize = src.iter().map(|t| t.2).sum();
            let mut d = Matrix::zeros(rows, cols);
            for (a, off, _) in src {
                let b = n - a;
                if let Some(o) = find(a + 1) {
                    d.add_block(o, off, &x.diff(a).kron(&Matrix::identity(y.dim(b))));
                }
                if let Some(o) = find(a) {
                    let blk = Matrix::identity(x.dim(a)).kron(&y.diff(b));
                    d.add_block(o, off, &blk.scale(&K::sign(a)));
                }
            }
            d
        })
        .collect();
    ChainObject::from_parts(lo, cat.algebra_dim(), comps, diffs)
}

/// `x ⊕ y` with its two inclusions and two projections.
pub fn direct_sum_chain<K: Scalar>(
    cat: &RepCategory<K>,
    x: &ChainObject<K>,
    y: &ChainObject<K>,
) -> (ChainObject<K>, [ChainMap<K>; 2], [ChainMap<K>; 2]) {
    let (lo, hi) = match (x.is_empty(), y.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (y.lo, y.hi()),
        (false, true) => (x.lo, x.hi()),
        (false, false) => (x.lo.min(y.lo), x.hi().max(y.hi())),
    };
    let comps: Vec<RepObject<K>> = (lo..=hi).map(|n| cat.direct_sum(&x.component_or_zero(n), &y.component_or_zero(n))).collect();
    let diffs = (lo..hi).map(|n| Matrix::block_diag(&[x.diff(n), y.diff(n)])).collect();
    let s = ChainObject::from_parts(lo, x.algebra_dim, comps, diffs);
    let mut maps: [BTreeMap<i64, Matrix<K>>; 4] = Default::default();
    for n in lo..=hi {
        let (a, b) = (x.dim(n), y.dim(n));
        let ia = Matrix::from_triples(a + b, a, (0..a).map(|i| (i, i, K::one())));
        let ib = Matrix::from_triples(a + b, b, (0..b).map(|i| (a + i, i, K::one())));
        maps[2].insert(n, ia.transpose());
        maps[3].insert(n, ib.transpose());
        maps[0].insert(n, ia);
        maps[1].insert(n, ib);
    }
    let [i0, i1, p0, p1] = maps;
    (
        s.clone(),
        [ChainMap::from_parts(x.clone(), s.clone(), 0, i0), ChainMap::from_parts(y.clone(), s.clone(), 0, i1)],
        [ChainMap::from_parts(s.clone(), x.clone(), 0, p0), ChainMap::from_parts(s, y.clone(), 0, p1)],
    )
}

/// `x[r]`.
pub fn shift_chain<K: Scalar>(x: &ChainObject<K>, r: i64) -> ChainObject<K> {
    let s = K::sign(r);
    ChainObject::from_parts(x.lo - r, x.algebra_dim, x.comps.clone(), x.diffs.iter().map(|d| d.scale(&s)).collect())
}

pub fn dual_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>) -> ChainObject<K> {
    if x.is_empty() {
        return x.clone();
    }
    let lo = -x.hi();
    let comps = (lo..=-x.lo).map(|p| cat.dual(&x.component_or_zero(-p))).collect();
    let diffs = (lo..-x.lo).map(|p| x.diff(-p - 1).transpose().scale(&-K::sign(p))).collect();
    ChainObject::from_parts(lo, x.algebra_dim, comps, diffs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<K> {
    pub source: ChainObject<K>,
    pub target: ChainObject<K>,
    pub degree: i64,
    comps: BTreeMap<i64, Matrix<K>>,
}

/// Degree `-1` maps `H^n: x^n → y^{n-1}`.
pub type ChainHomotopy<K> = ChainMap<K>;

impl<K: Scalar> ChainMap<K> {
    /// `comps[n]: source^n → target^{n+degree}`; absent degrees are zero.
    pub fn new(source: ChainObject<K>, target: ChainObject<K>, degree: i64, comps: BTreeMap<i64, Matrix<K>>) -> Result<Self> {
        for (n, m) in &comps {
            let want = (target.dim(n + degree), source.dim(*n));
            if m.shape() != want {
                return Err(Error::Shape(format!("map component in degree {n} is {:?}, expected {want:?}", m.shape())));
            }
        }
        Ok(Self::from_parts(source, target, degree, comps))
    }

    pub(crate) fn from_parts(source: ChainObject<K>, target: ChainObject<K>, degree: i64, mut comps: BTreeMap<i64, Matrix<K>>) -> Self {
        comps.retain(|_, m| !m.is_zero());
        ChainMap { source, target, degree, comps }
    }

    pub fn zero(source: &ChainObject<K>, target: &ChainObject<K>, degree: i64) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), degree, comps: BTreeMap::new() }
    }

    pub fn identity(x: &ChainObject<K>) -> Self {
        let comps = x.degrees().map(|n| (n, Matrix::identity(x.dim(n)))).collect();
        Self::from_parts(x.clone(), x.clone(), 0, comps)
    }

    pub fn component(&self, n: i64) -> Matrix<K> {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(n + self.degree), self.source.dim(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix<K>> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap<K>) -> Result<Self> {
        if f.target != self.source {
            return Err(Error::Shape("composable maps need matching objects".into()));
        }
        let comps = f
            .comps
            .iter()
            .filter_map(|(n, m)| self.comps.get(&(n + f.degree)).map(|g| (*n, g.mul(m))))
            .collect();
        Ok(Self::from_parts(f.source.clone(), self.target.clone(), self.degree + f.degree, comps))
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Shape("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add_scaled(&self, c: &K, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        let mut comps = self.comps.clone();
        for (n, m) in &other.comps {
            let e = comps.entry(*n).or_insert_with(|| Matrix::zeros(m.nrows(), m.ncols()));
            *e = e.add_scaled(c, m);
        }
        Ok(Self::from_parts(self.source.clone(), self.target.clone(), self.degree, comps))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&K::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&-K::one(), other)
    }

    pub fn scale(&self, c: &K) -> Self {
        let comps = self.comps.iter().map(|(n, m)| (*n, m.scale(c))).collect();
        Self::from_parts(self.source.clone(), self.target.clone(), self.degree, comps)
    }

    /// Degrees where `source` or `target` can be nonzero.
    fn active_degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.source.degrees().collect();
        v.extend(self.target.degrees().map(|n| n - self.degree));
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `d_y f = (-1)^{deg f} f d_x` in every degree.
    pub fn is_chain_map(&self) -> bool {
        let s = K::sign(self.degree);
        self.active_degrees().into_iter().all(|n| {
            let lhs = self.target.diff(n + self.degree).mul(&self.component(n));
            let rhs = self.component(n + 1).mul(&self.source.diff(n)).scale(&s);
            lhs == rhs
        })
    }

    /// `self - other = H d + d H`.
    pub fn is_homotopic_via(&self, other: &Self, h: &ChainHomotopy<K>) -> bool {
        if self.check_parallel(other).is_err() || h.degree != self.degree - 1 || h.source != self.source || h.target != self.target {
            return false;
        }
        let Ok(diff) = self.sub(other) else { return false };
        diff.active_degrees().into_iter().all(|n| {
            let hd = h.component(n + 1).mul(&self.source.diff(n));
            let dh = self.target.diff(n + h.degree).mul(&h.component(n));
            diff.component(n) == hd.add(&dh)
        })
    }
}

/// Degreewise transpose `f*: y* → x*` of a degree-0 map.
pub fn dual_map<K: Scalar>(cat: &RepCategory<K>, f: &ChainMap<K>) -> ChainMap<K> {
    assert_eq!(f.degree, 0, "dual_map expects a degree-0 map");
    let comps = f.comps.iter().map(|(n, m)| (-n, m.transpose())).collect();
    ChainMap::from_parts(dual_chain(cat, &f.target), dual_chain(cat, &f.source), 0, comps)
}

/// `H*` with `H*^p = (-1)^p (H^{1-p})ᵀ`, so `f - g = dH + Hd` dualizes to
/// `f* - g* = dH* + H*d`.
pub fn dual_homotopy<K: Scalar>(cat: &RepCategory<K>, h: &ChainHomotopy<K>) -> ChainHomotopy<K> {
    assert_eq!(h.degree, -1, "dual_homotopy expects a degree -1 map");
    let comps = h.comps.iter().map(|(n, m)| (1 - n, m.transpose().scale(&K::sign(1 - n)))).collect();
    ChainMap::from_parts(dual_chain(cat, &h.target), dual_chain(cat, &h.source), -1, comps)
}

/// `c_{x,y}` on complexes: `(-1)^{ab} c` on `x^a ⊗ y^b`.
pub fn braiding_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>, y: &ChainObject<K>, inverse: bool) -> ChainMap<K> {
    let xy = tensor_chain(cat, x, y);
    let yx = tensor_chain(cat, y, x);
    let comps = xy
        .degrees()
        .map(|n| {
            let src = tensor_blocks(x, y, n);
            let tgt = tensor_blocks(y, x, n);
            let mut m = Matrix::zeros(yx.dim(n), xy.dim(n));
            for (a, off, _) in src {
                let b = n - a;
                let (xa, yb) = (x.component_or_zero(a), y.component_or_zero(b));
                let o = tgt.iter().find(|t| t.0 == b).expect("matching block").1;
                let c = if inverse {
                    // c^{-1}_{x,y}: y⊗x → x⊗y has the same block shape as c_{y,x}
                    cat.braiding_inv(&yb, &xa)
                } else {
                    cat.braiding(&xa, &yb)
                };
                m.add_block(o, off, &c.scale(&K::sign(a * b)));
            }
            (n, m)
        })
        .collect();
    ChainMap::from_parts(xy, yx, 0, comps)
}

/// Degreewise `θ` or `θ^{-1}`; no sign.
pub fn twist_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>, inverse: bool) -> ChainMap<K> {
    let comps = x
        .degrees()
        .map(|n| {
            let c = x.component_or_zero(n);
            (n, if inverse { cat.twist_inv(&c) } else { cat.twist(&c) })
        })
        .collect();
    ChainMap::from_parts(x.clone(), x.clone(), 0, comps)
}

fn pairing_chain<K: Scalar>(
    cat: &RepCategory<K>,
    left: &ChainObject<K>,
    right: &ChainObject<K>,
    block: impl Fn(i64) -> Matrix<K>,
    into_unit: bool,
) -> ChainMap<K> {
    let prod = tensor_chain(cat, left, right);
    let unit = ChainObject::unit(cat);
    let mut m = if into_unit { Matrix::zeros(1, prod.dim(0)) } else { Matrix::zeros(prod.dim(0), 1) };
    for (a, off, size) in tensor_blocks(left, right, 0) {
        if size == 0 {
            continue;
        }
        if into_unit {
            m.add_block(0, off, &block(a));
        } else {
            m.add_block(off, 0, &block(a));
        }
    }
    let comps = BTreeMap::from([(0, m)]);
    if into_unit {
        ChainMap::from_parts(prod, unit, 0, comps)
    } else {
        ChainMap::from_parts(unit, prod, 0, comps)
    }
}

/// `ev: x* ⊗ x → 1`.
pub fn ev_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>) -> ChainMap<K> {
    let xd = dual_chain(cat, x);
    pairing_chain(cat, &xd, x, |p| cat.ev(&x.component_or_zero(-p)), true)
}

/// `coev: 1 → x ⊗ x*`.
pub fn coev_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>) -> ChainMap<K> {
    let xd = dual_chain(cat, x);
    pairing_chain(cat, x, &xd, |a| cat.coev(&x.component_or_zero(a)), false)
}

/// `x ⊗ x* → 1`, equal to `ev ∘ c_{x,x*} ∘ (θ⊗1)`; carries `(-1)^a` on `x^a`.
pub fn ev_right_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>) -> ChainMap<K> {
    let xd = dual_chain(cat, x);
    pairing_chain(cat, x, &xd, |a| cat.ev_right(&x.component_or_zero(a)).scale(&K::sign(a)), true)
}

/// `1 → x* ⊗ x`, equal to `(1⊗θ) c_{x,x*} coev`.
pub fn coev_right_chain<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>) -> ChainMap<K> {
    let xd = dual_chain(cat, x);
    pairing_chain(cat, &xd, x, |p| cat.coev_right(&x.component_or_zero(-p)).scale(&K::sign(p)), false)
}

/// Ranks `dim ker d^n - rank d^{n-1}`.
pub fn cohomology<K: Scalar>(x: &ChainObject<K>) -> BTreeMap<i64, usize> {
    let ranks: BTreeMap<i64, usize> = (x.lo - 1..=x.hi()).collect::<Vec<_>>().into_par_iter().map(|n| (n, x.diff(n).rank())).collect();
    x.degrees().map(|n| (n, x.dim(n) - ranks[&n] - ranks[&(n - 1)])).collect()
}

struct HomSummand<K> {
    a: i64,
    offset: usize,
    space: HomSpace<K>,
}

/// `Hom*(x, y)` as a complex of vector spaces with coordinate bookkeeping.
pub struct HomComplex<K> {
    pub complex: ChainObject<K>,
    pub source: ChainObject<K>,
    pub target: ChainObject<K>,
    summands: BTreeMap<i64, Vec<HomSummand<K>>>,
}

impl<K: Scalar> HomComplex<K> {
    pub fn new(cat: &RepCategory<K>, x: &ChainObject<K>, y: &ChainObject<K>) -> Self {
        if x.is_empty() || y.is_empty() {
            return HomComplex {
                complex: ChainObject::zero(1),
                source: x.clone(),
                target: y.clone(),
                summands: BTreeMap::new(),
            };
        }
        let lo = y.lo - x.hi();
        let hi = y.hi() - x.lo;
        let pairs: Vec<(i64, i64)> = (lo..=hi).flat_map(|n| x.degrees().map(move |a| (n, a))).collect();
        let spaces: Vec<HomSpace<K>> = pairs
            .par_iter()
            .map(|&(n, a)| cat.hom_space(&x.component_or_zero(a), &y.component_or_zero(a + n)))
            .collect();
        let mut summands: BTreeMap<i64, Vec<HomSummand<K>>> = (lo..=hi).map(|n| (n, Vec::new())).collect();
        for ((n, a), space) in pairs.into_iter().zip(spaces) {
            let list = summands.get_mut(&n).unwrap();
            let offset = list.last().map_or(0, |s: &HomSummand<K>| s.offset + s.space.len());
            list.push(HomSummand { a, offset, space });
        }
        let mut hc = HomComplex { complex: ChainObject::zero(1), source: x.clone(), target: y.clone(), summands };
        let comps = (lo..=hi).map(|n| RepObject::vector_space(hc.dim(n))).collect();
        let diffs = (lo..hi).collect::<Vec<_>>().into_par_iter().map(|n| hc.differential(n)).collect();
        hc.complex = ChainObject::from_parts(lo, 1, comps, diffs);
        hc
    }

    pub fn dim(&self, n: i64) -> usize {
        self.summands.get(&n).map_or(0, |v| v.iter().map(|s| s.space.len()).sum())
    }

    /// The summand `Hom(x^a, y^{a+n})` with its coordinate offset in `Hom^n`.
    pub fn summand(&self, n: i64, a: i64) -> Option<(usize, &HomSpace<K>)> {
        self.summands.get(&n)?.iter().find(|s| s.a == a).map(|s| (s.offset, &s.space))
    }

    /// The `i`-th basis element of `Hom^n` as a graded map.
    pub fn basis_map(&self, n: i64, i: usize) -> ChainMap<K> {
        let mut coeffs = vec![K::zero(); self.dim(n)];
        coeffs[i] = K::one();
        self.from_coords(n, &coeffs)
    }

    pub fn from_coords(&self, n: i64, coeffs: &[K]) -> ChainMap<K> {
        let mut comps = BTreeMap::new();
        for s in self.summands.get(&n).into_iter().flatten() {
            let c = &coeffs[s.offset..s.offset + s.space.len()];
            if c.iter().any(|v| !v.is_zero()) {
                comps.insert(s.a, s.space.combine(c));
            }
        }
        ChainMap::from_parts(self.source.clone(), self.target.clone(), n, comps)
    }

    /// Coordinates of a graded map, which must be degreewise an intertwiner.
    pub fn coords(&self, f: &ChainMap<K>) -> Vec<K> {
        let mut out = vec![K::zero(); self.dim(f.degree)];
        for s in self.summands.get(&f.degree).into_iter().flatten() {
            if let Some(m) = f.comps.get(&s.a) {
                for (k, c) in s.space.coords(m).into_iter().enumerate() {
                    out[s.offset + k] = c;
                }
            }
        }
        out
    }

    /// `d(φ) = d_y φ - (-1)^n φ d_x` as a graded map.
    pub fn apply_differential(&self, phi: &ChainMap<K>) -> ChainMap<K> {
        let n = phi.degree;
        let s = -K::sign(n);
        let mut comps: BTreeMap<i64, Matrix<K>> = BTreeMap::new();
        for (a, m) in &phi.comps {
            let dy = self.target.diff(a + n).mul(m);
            let e = comps.entry(*a).or_insert_with(|| Matrix::zeros(dy.nrows(), dy.ncols()));
            *e = e.add(&dy);
            let md = m.mul(&self.source.diff(a - 1)).scale(&s);
            let e = comps.entry(a - 1).or_insert_with(|| Matrix::zeros(md.nrows(), md.ncols()));
            *e = e.add(&md);
        }
        ChainMap::from_parts(self.source.clone(), self.target.clone(), n + 1, comps)
    }

    fn differential(&self, n: i64) -> Matrix<K> {
        let cols: Vec<_> = (0..self.dim(n))
            .map(|i| {
                let img = self.apply_differential(&self.basis_map(n, i));
                crate::linalg::dense_to_sparse(&self.coords(&img))
            })
            .collect();
        Matrix::from_columns(self.dim(n + 1), &cols)
    }
}

pub fn hom_complex<K: Scalar>(cat: &RepCategory<K>, x: &ChainObject<K>, y: &ChainObject<K>) -> HomComplex<K> {
    HomComplex::new(cat, x, y)
}

/// A degree `-1` map `H` with `f - g = Hd + dH`, or `None` if none exists.
pub fn find_homotopy<K: Scalar>(cat: &RepCategory<K>, f: &ChainMap<K>, g: &ChainMap<K>) -> Result<Option<ChainHomotopy<K>>> {
    f.check_parallel(g)?;
    if f.degree != 0 {
        return Err(Error::Shape("homotopies are searched between degree-0 maps".into()));
    }
    let hom = hom_complex(cat, &f.source, &f.target);
    find_homotopy_in(&hom, f, g)
}

/// As [`find_homotopy`] with a precomputed Hom complex.
pub fn find_homotopy_in<K: Scalar>(hom: &HomComplex<K>, f: &ChainMap<K>, g: &ChainMap<K>) -> Result<Option<ChainHomotopy<K>>> {
    let target = hom.coords(&f.sub(g)?);
    let rhs = crate::linalg::dense_to_sparse(&target);
    if rhs.is_empty() {
        return Ok(Some(ChainMap::zero(&f.source, &f.target, -1)));
    }
    let d = hom.complex.diff(-1);
    Ok(d.solve(&rhs).map(|sol| {
        let mut dense = vec![K::zero(); hom.dim(-1)];
        for (i, v) in sol {
            dense[i] = v;
        }
        hom.from_coords(-1, &dense)
    }))
}

/// A witness that `map` is a homotopy equivalence:
/// `inverse∘map - 1 = d H + H d` on the source and
/// `map∘inverse - 1 = d H' + H' d` on the target.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence<K> {
    pub map: ChainMap<K>,
    pub inverse: ChainMap<K>,
    pub source_homotopy: ChainHomotopy<K>,
    pub target_homotopy: ChainHomotopy<K>,
}

impl<K: Scalar> Equivalence<K> {
    pub fn identity(x: &ChainObject<K>) -> Self {
        Equivalence {
            map: ChainMap::identity(x),
            inverse: ChainMap::identity(x),
            source_homotopy: ChainMap::zero(x, x, -1),
            target_homotopy: ChainMap::zero(x, x, -1),
        }
    }

    pub fn verify(&self) -> bool {
        let (Ok(gf), Ok(fg)) = (self.inverse.compose(&self.map), self.map.compose(&self.inverse)) else {
            return false;
        };
        self.map.degree == 0
            && self.map.is_chain_map()
            && self.inverse.is_chain_map()
            && gf.is_homotopic_via(&ChainMap::identity(&self.map.source), &self.source_homotopy)
            && fg.is_homotopic_via(&ChainMap::identity(&self.map.target), &self.target_homotopy)
    }
}

/// Solves jointly for `η`, `H`, `H'`; `None` when `f` is not an equivalence.
pub fn is_homotopy_equivalence<K: Scalar>(cat: &RepCategory<K>, f: &ChainMap<K>) -> Result<Option<Equivalence<K>>> {
    if f.degree != 0 || !f.is_chain_map() {
        return Err(Error::NotComplex("expected a degree-0 chain map".into()));
    }
    let (x, y) = (&f.source, &f.target);
    let nonzero = |c: BTreeMap<i64, usize>| c.into_iter().filter(|(_, r)| *r > 0).collect::<BTreeMap<_, _>>();
    if nonzero(cohomology(x)) != nonzero(cohomology(y)) {
        return Ok(None);
    }
    let hyx = hom_complex(cat, y, x);
    let hxx = hom_complex(cat, x, x);
    let hyy = hom_complex(cat, y, y);
    let (p, q, r) = (hyx.dim(0), hxx.dim(-1), hyy.dim(-1));
    let (r1, r2, r3) = (hyx.dim(1), hxx.dim(0), hyy.dim(0));
    let mut triples = Vec::new();
    let cols: Vec<(Vec<K>, Vec<K>, Vec<K>)> = (0..p)
        .into_par_iter()
        .map(|j| {
            let eta = hyx.basis_map(0, j);
            let d = hyx.coords(&hyx.apply_differential(&eta));
            let ef = hxx.coords(&eta.compose(f).expect("composable"));
            let fe = hyy.coords(&f.compose(&eta).expect("composable"));
            (d, ef, fe)
        })
        .collect();
    for (j, (d, ef, fe)) in cols.into_iter().enumerate() {
        for (i, v) in d.into_iter().enumerate() {
            triples.push((i, j, v));
        }
        for (i, v) in ef.into_iter().enumerate() {
            triples.push((r1 + i, j, v));
        }
        for (i, v) in fe.into_iter().enumerate() {
            triples.push((r1 + r2 + i, j, v));
        }
    }
    for (i, j, v) in hxx.complex.diff(-1).entries() {
        triples.push((r1 + i, p + j, -v.clone()));
    }
    for (i, j, v) in hyy.complex.diff(-1).entries() {
        triples.push((r1 + r2 + i, p + q + j, -v.clone()));
    }
    let system = Matrix::from_triples(r1 + r2 + r3, p + q + r, triples.into_iter().filter(|t| !t.2.is_zero()));
    let mut rhs = Vec::new();
    for (i, v) in hxx.coords(&ChainMap::identity(x)).into_iter().enumerate() {
        if !v.is_zero() {
            rhs.push((r1 + i, v));
        }
    }
    for (i, v) in hyy.coords(&ChainMap::identity(y)).into_iter().enumerate() {
        if !v.is_zero() {
            rhs.push((r1 + r2 + i, v));
        }
    }
    let Some(sol) = system.solve(&rhs) else {
        return Ok(None);
    };
    let mut dense = vec![K::zero(); p + q + r];
    for (i, v) in sol {
        dense[i] = v;
    }
    let w = Equivalence {
        map: f.clone(),
        inverse: hyx.from_coords(0, &dense[..p]),
        source_homotopy: hxx.from_coords(-1, &dense[p..p + q]),
        target_homotopy: hyy.from_coords(-1, &dense[p + q..]),
    };
    debug_assert!(w.verify());
    Ok(Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;
    use num_rational::BigRational;

    type Q = BigRational;

    fn triv() -> RepCategory<Q> {
        RepCategory::new(datasets::trivial()).unwrap()
    }

    fn k() -> RepObject<Q> {
        RepObject::vector_space(1)
    }

    fn cone(c: &RepCategory<Q>, v: i64) -> ChainObject<Q> {
        ChainObject::new(c, 0, vec![k(), k()], vec![Matrix::scalar(1, Q::from_i64(v))]).unwrap()
    }

    #[test]
    fn make_complex_checks() {
        let c = triv();
        assert!(ChainObject::new(&c, 0, vec![k()], vec![]).is_ok());
        let bad = ChainObject::new(&c, 0, vec![k(), k(), k()], vec![Matrix::identity(1), Matrix::identity(1)]);
        assert!(matches!(bad, Err(Error::NotComplex(_))));
    }

    #[test]
    fn tensor_of_cones() {
        let c = triv();
        let x = cone(&c, 1);
        let xx = tensor_chain(&c, &x, &x);
        assert_eq!(xx.poincare(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert!(xx.squares_to_zero());
        assert_eq!(tensor_chain(&c, &x, &ChainObject::unit(&c)), x);
    }

    #[test]
    fn shifts_and_duals() {
        let c = triv();
        let x = cone(&c, 1);
        assert_eq!(shift_chain(&x, 0), x);
        assert_eq!(shift_chain(&shift_chain(&x, 1), 1), shift_chain(&x, 2));
        let y = ChainObject::concentrated(k(), 1);
        assert_eq!(shift_chain(&y, 1).euler_characteristic(), -y.euler_characteristic());
        let yd = dual_chain(&c, &y);
        assert_eq!((yd.lo(), yd.hi()), (-1, -1));
        assert_eq!(dual_chain(&c, &ChainObject::unit(&c)), ChainObject::unit(&c));
        for x in [cone(&c, 1), cone(&c, 0)] {
            assert!(ev_chain(&c, &x).is_chain_map());
            assert!(coev_chain(&c, &x).is_chain_map());
            assert!(ev_right_chain(&c, &x).is_chain_map());
            assert!(coev_right_chain(&c, &x).is_chain_map());
        }
    }

    #[test]
    fn odd_braiding_is_minus_flip() {
        let c = triv();
        let y = ChainObject::concentrated(k(), 1);
        let b = braiding_chain(&c, &y, &y, false);
        assert_eq!(b.component(2), Matrix::scalar(1, -Q::from_i64(1)));
        assert!(b.is_chain_map());
    }

    #[test]
    fn cohomology_examples() {
        let c = triv();
        assert_eq!(cohomology(&cone(&c, 1)), BTreeMap::from([(0, 0), (1, 0)]));
        assert_eq!(cohomology(&cone(&c, 0)), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn homotopies() {
        let c = triv();
        let acyclic = cone(&c, 1);
        let id = ChainMap::identity(&acyclic);
        let zero = ChainMap::zero(&acyclic, &acyclic, 0);
        let h = find_homotopy(&c, &id, &zero).unwrap().unwrap();
        assert_eq!(h.component(1), Matrix::identity(1));
        assert!(id.is_homotopic_via(&zero, &h));
        let split = cone(&c, 0);
        let id = ChainMap::identity(&split);
        assert!(find_homotopy(&c, &id, &ChainMap::zero(&split, &split, 0)).unwrap().is_none());
        let z = find_homotopy(&c, &id, &id).unwrap().unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn equivalences() {
        let c = triv();
        let acyclic = cone(&c, 1);
        let w = is_homotopy_equivalence(&c, &ChainMap::identity(&acyclic)).unwrap().unwrap();
        assert!(w.verify());
        let zero = ChainObject::zero(1);
        let inc = ChainMap::zero(&zero, &acyclic, 0);
        assert!(is_homotopy_equivalence(&c, &inc).unwrap().is_some());
        let split = cone(&c, 0);
        let proj = ChainMap::zero(&split, &zero, 0);
        assert!(is_homotopy_equivalence(&c, &proj).unwrap().is_none());
    }

    #[test]
    fn hom_complex_cycles_are_chain_maps() {
        let c = triv();
        let x = cone(&c, 1);
        let h = hom_complex(&c, &x, &x);
        assert!(h.complex.squares_to_zero());
        assert!(cohomology(&h.complex).values().all(|r| *r == 0));
        let z0 = h.complex.diff(0).kernel();
        for v in &z0.basis {
            let mut dense = vec![Q::from_i64(0); h.dim(0)];
            for (i, c) in v {
                dense[*i] = c.clone();
            }
            assert!(h.from_coords(0, &dense).is_chain_map());
        }
    }

    #[test]
    fn dual_homotopy_dualizes_identity() {
        let c = triv();
        let x = cone(&c, 1);
        let id = ChainMap::identity(&x);
        let zero = ChainMap::zero(&x, &x, 0);
        let h = find_homotopy(&c, &id, &zero).unwrap().unwrap();
        let hd = dual_homotopy(&c, &h);
        let idd = dual_map(&c, &id);
        let zd = dual_map(&c, &zero);
        assert!(idd.is_homotopic_via(&zd, &hd));
    }
}
