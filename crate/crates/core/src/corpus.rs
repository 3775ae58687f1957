//! Seeded random inputs: objects, complexes, maps, equivalences and diagrams.
//!
//! Used by the property suites and by `ribbon selftest`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cochain::{direct_sum_chain, hom_complex, ChainMap, ChainObject};
use crate::diagram::{ChainDiagram, Orient, RepDiagram, RibbonDiagram, Strand, Token};
use crate::linalg::Matrix;
use crate::rep::{RepCategory, RepObject};
use crate::ribbon::{ChainCategory, RibbonCategory};
use crate::scalar::Scalar;
use crate::words::WordMap;

/// A small integer coefficient, never zero.
pub fn coeff<K: Scalar, R: Rng>(rng: &mut R) -> K {
    let v = *[-2i64, -1, 1, 2, 3].choose(rng).unwrap();
    K::from_i64(v)
}

fn coeffs<K: Scalar, R: Rng>(n: usize, rng: &mut R) -> Vec<K> {
    (0..n).map(|_| if rng.gen_bool(0.2) { K::zero() } else { coeff(rng) }).collect()
}

pub fn intertwiner<K: Scalar, R: Rng>(cat: &RepCategory<K>, x: &RepObject<K>, y: &RepObject<K>, rng: &mut R) -> Matrix<K> {
    let hs = cat.hom_space(x, y);
    hs.combine(&coeffs(hs.len(), rng))
}

/// A direct sum of one or two objects from `pool`.
pub fn object<K: Scalar, R: Rng>(cat: &RepCategory<K>, pool: &[RepObject<K>], rng: &mut R) -> RepObject<K> {
    let a = pool.choose(rng).unwrap().clone();
    if rng.gen_bool(0.3) {
        cat.direct_sum(&a, pool.choose(rng).unwrap())
    } else {
        a
    }
}

/// A complex supported in at most `width` consecutive degrees near zero,
/// with random differentials subject to `d∘d = 0`.
pub fn complex<K: Scalar, R: Rng>(cat: &RepCategory<K>, pool: &[RepObject<K>], width: usize, rng: &mut R) -> ChainObject<K> {
    let w = rng.gen_range(1..=width.max(1));
    let lo = rng.gen_range(-1..=1);
    let comps: Vec<RepObject<K>> = (0..w).map(|_| object(cat, pool, rng)).collect();
    let mut diffs: Vec<Matrix<K>> = Vec::new();
    for k in 0..w.saturating_sub(1) {
        let hs = cat.hom_space(&comps[k], &comps[k + 1]);
        let c = match diffs.last() {
            None => coeffs(hs.len(), rng),
            Some(prev) => {
                // φ with φ∘prev = 0
                let rows = comps[k + 1].dim * prev.ncols();
                let cols: Vec<_> = (0..hs.len())
                    .map(|i| {
                        let m = hs.basis_matrix(i).mul(prev);
                        m.entries().map(|(r, c, v)| (r * prev.ncols() + c, v.clone())).collect::<Vec<_>>()
                    })
                    .collect();
                let ker = Matrix::from_columns(rows, &cols).kernel();
                let v = ker.combine(&coeffs(ker.len(), rng));
                let mut dense = vec![K::zero(); hs.len()];
                for (i, x) in v {
                    dense[i] = x;
                }
                dense
            }
        };
        diffs.push(hs.combine(&c));
    }
    ChainObject::new(cat, lo, comps, diffs).expect("random complex is valid")
}

/// A random degree-0 chain map `x → y`.
pub fn chain_map<K: Scalar, R: Rng>(cat: &RepCategory<K>, x: &ChainObject<K>, y: &ChainObject<K>, rng: &mut R) -> ChainMap<K> {
    let hc = hom_complex(cat, x, y);
    let ker = hc.complex.diff(0).kernel();
    let v = ker.combine(&coeffs(ker.len(), rng));
    let mut dense = vec![K::zero(); hc.dim(0)];
    for (i, c) in v {
        dense[i] = c;
    }
    hc.from_coords(0, &dense)
}

/// `z` in degree `k` mapped by the identity onto `z` in degree `k + 1`.
pub fn contractible<K: Scalar>(cat: &RepCategory<K>, z: &RepObject<K>, k: i64) -> ChainObject<K> {
    ChainObject::new(cat, k, vec![z.clone(), z.clone()], vec![Matrix::identity(z.dim)]).expect("cone of the identity")
}

/// A homotopy equivalence out of `x`: the inclusion `x → x ⊕ c` with `c`
/// contractible, perturbed by a random chain map into `c`.
pub fn equivalence<K: Scalar, R: Rng>(cat: &RepCategory<K>, pool: &[RepObject<K>], x: &ChainObject<K>, rng: &mut R) -> ChainMap<K> {
    let k = rng.gen_range(-1..=1);
    let c = contractible(cat, &object(cat, pool, rng), k);
    let (_, [i0, i1], _) = direct_sum_chain(cat, x, &c);
    let g = chain_map(cat, x, &c, rng);
    i0.add(&i1.compose(&g).unwrap()).unwrap()
}

/// The projection `x ⊕ c → x` for a contractible `c`, a homotopy
/// equivalence into `x`.
pub fn projection_equivalence<K: Scalar, R: Rng>(cat: &RepCategory<K>, pool: &[RepObject<K>], x: &ChainObject<K>, rng: &mut R) -> ChainMap<K> {
    let k = rng.gen_range(-1..=1);
    let c = contractible(cat, &object(cat, pool, rng), k);
    let (_, _, [p0, _]) = direct_sum_chain(cat, x, &c);
    p0
}

/// Generic random slice diagram over `labels`, at most `max_width` strands
/// wide. `make_coupon` supplies a coupon morphism for a source/target pair,
/// or `None` to skip.
pub fn diagram<O: Clone, M: Clone, R: Rng>(
    labels: Vec<O>,
    slices: usize,
    max_width: usize,
    rng: &mut R,
    mut make_coupon: impl FnMut(&[Strand], &[Strand], &mut R) -> Option<M>,
) -> RibbonDiagram<O, M> {
    let n = labels.len();
    let strand = |rng: &mut R| Strand { label: rng.gen_range(0..n), orient: if rng.gen_bool(0.7) { Orient::Pos } else { Orient::Neg } };
    let w0 = rng.gen_range(1..=max_width.clamp(1, 2));
    let source: Vec<Strand> = (0..w0).map(|_| strand(rng)).collect();
    let mut d = RibbonDiagram::new(labels, source.clone());
    let mut row = source;
    for _ in 0..slices {
        let w = row.len();
        let p = if w == 0 { 0 } else { rng.gen_range(0..w) };
        let choice = rng.gen_range(0..8);
        let (tok, consumed) = match choice {
            0 | 1 if p + 1 < w => (if choice == 0 { Token::CrossPos } else { Token::CrossNeg }, 2),
            2 if w > 0 => (if rng.gen_bool(0.5) { Token::TwistPos } else { Token::TwistNeg }, 1),
            3 if p + 1 < w && row[p].label == row[p + 1].label && row[p].orient != row[p + 1].orient => (Token::Cap, 2),
            4 if w + 2 <= max_width => {
                let s = strand(rng);
                (Token::Cup { label: s.label, orient: s.orient }, 0)
            }
            5 | 6 if w > 0 => {
                let k = if p + 1 < w && rng.gen_bool(0.4) { 2 } else { 1 };
                let src = row[p..p + k].to_vec();
                let tgt: Vec<Strand> = match rng.gen_range(0..3) {
                    0 => src.clone(),
                    1 => src.iter().rev().copied().collect(),
                    _ => (0..rng.gen_range(1..=2)).map(|_| strand(rng)).collect(),
                };
                if w - k + tgt.len() > max_width {
                    continue;
                }
                let Some(m) = make_coupon(&src, &tgt, rng) else { continue };
                let idx = d.add_coupon(&format!("f{}", d.coupons.len()), src, tgt, m);
                (Token::Coupon { index: idx }, k)
            }
            _ => continue,
        };
        let mut slice = vec![Token::Id; p.min(w)];
        slice.push(tok);
        slice.extend(std::iter::repeat(Token::Id).take(w - p.min(w) - consumed));
        row = d.apply_slice(&row, &slice).expect("generated slice is valid");
        d.slices.push(slice);
    }
    d
}

fn strand_obj<K: Scalar, C: RibbonCategory<K>>(cat: &C, labels: &[C::Object], s: &Strand) -> C::Object {
    match s.orient {
        Orient::Pos => labels[s.label].clone(),
        Orient::Neg => cat.dual(&labels[s.label]),
    }
}

/// A random diagram labeled by objects of `rep(H)`.
pub fn rep_diagram<K: Scalar, R: Rng>(
    cat: &RepCategory<K>,
    labels: Vec<RepObject<K>>,
    slices: usize,
    max_width: usize,
    rng: &mut R,
) -> RepDiagram<K> {
    let l2 = labels.clone();
    diagram(labels, slices, max_width, rng, |src, tgt, rng| {
        let x = cat.tensor_all(src.iter().map(|s| strand_obj(cat, &l2, s)).collect::<Vec<_>>().iter());
        let y = cat.tensor_all(tgt.iter().map(|s| strand_obj(cat, &l2, s)).collect::<Vec<_>>().iter());
        let m = intertwiner(cat, &x, &y, rng);
        Some(m)
    })
}

/// A random diagram labeled by complexes.
pub fn chain_diagram<K: Scalar, R: Rng>(
    cat: &RepCategory<K>,
    labels: Vec<ChainObject<K>>,
    slices: usize,
    max_width: usize,
    rng: &mut R,
) -> ChainDiagram<K> {
    let ch = ChainCategory::new(cat);
    let l2 = labels.clone();
    diagram(labels, slices, max_width, rng, |src, tgt, rng| {
        let sw: Vec<ChainObject<K>> = src.iter().map(|s| strand_obj(&ch, &l2, s)).collect();
        let tw: Vec<ChainObject<K>> = tgt.iter().map(|s| strand_obj(&ch, &l2, s)).collect();
        let f = chain_map(cat, &crate::words::realize(cat, &sw), &crate::words::realize(cat, &tw), rng);
        WordMap::from_chain_map(sw, tw, &f).ok()
    })
}

/// The closure of a braid on `strands` strands given as `(position, positive)`
/// crossings, with `twists[i]` full framing twists on strand `i` before the
/// braid. Components are the cycles of the braid permutation; component `c`
/// (numbered by smallest starting strand) carries label `component_label(c)`.
pub fn braid_closure<O, M>(
    labels: Vec<O>,
    strands: usize,
    word: &[(usize, bool)],
    twists: &[i64],
    component_label: impl Fn(usize) -> usize,
) -> RibbonDiagram<O, M> {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &(i, _) in word {
        perm.swap(i, i + 1);
    }
    // perm[j] = starting strand now at position j; follow cycles
    let mut comp = vec![usize::MAX; strands];
    let mut next = 0;
    for s in 0..strands {
        if comp[s] == usize::MAX {
            let mut j = s;
            while comp[j] == usize::MAX {
                comp[j] = next;
                j = perm[j];
            }
            next += 1;
        }
    }
    let lab: Vec<usize> = (0..strands).map(|s| component_label(comp[s])).collect();
    let mut d = RibbonDiagram::new(labels, vec![]);
    for (k, l) in lab.iter().enumerate() {
        let mut slice = vec![Token::Id; k];
        slice.push(Token::Cup { label: *l, orient: Orient::Pos });
        slice.extend(std::iter::repeat(Token::Id).take(k));
        d.slices.push(slice);
    }
    let w = 2 * strands;
    let at = |p: usize, t: Token, consumed: usize| {
        let mut s = vec![Token::Id; p];
        s.push(t);
        s.extend(std::iter::repeat(Token::Id).take(w - p - consumed));
        s
    };
    for (i, t) in twists.iter().enumerate() {
        for _ in 0..t.abs() {
            d.slices.push(at(i, if *t > 0 { Token::TwistPos } else { Token::TwistNeg }, 1));
        }
    }
    for &(i, pos) in word {
        d.slices.push(at(i, if pos { Token::CrossPos } else { Token::CrossNeg }, 2));
    }
    for k in (0..strands).rev() {
        let mut slice = vec![Token::Id; k];
        slice.push(Token::Cap);
        slice.extend(std::iter::repeat(Token::Id).take(k));
        d.slices.push(slice);
    }
    d
}

/// A random braid word on `strands` strands.
pub fn braid_word<R: Rng>(strands: usize, len: usize, rng: &mut R) -> Vec<(usize, bool)> {
    if strands < 2 {
        return Vec::new();
    }
    (0..len).map(|_| (rng.gen_range(0..strands - 1), rng.gen_bool(0.5))).collect()
}
