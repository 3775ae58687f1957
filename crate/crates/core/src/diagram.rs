//! Slice-encoded ribbon diagrams and their evaluation.
//!
//! A diagram is read bottom to top. Each slice is a row of tokens tiling the
//! current strands. A strand `(ℓ, +)` carries `labels[ℓ]`, a strand `(ℓ, -)`
//! carries its dual.
//!
//! | token | consumes | produces | value |
//! |---|---|---|---|
//! | `Id` | `A` | `A` | identity |
//! | `CrossPos` | `A, B` | `B, A` | `c_{A,B}` |
//! | `CrossNeg` | `A, B` | `B, A` | `c_{B,A}^{-1}` |
//! | `TwistPos`/`TwistNeg` | `A` | `A` | `θ_A^{±1}` |
//! | `Cap` | `(ℓ,-),(ℓ,+)` or `(ℓ,+),(ℓ,-)` | nothing | `ev` or `ev~` |
//! | `Cup{ℓ,+}`/`Cup{ℓ,-}` | nothing | `(ℓ,+),(ℓ,-)` or `(ℓ,-),(ℓ,+)` | `coev` or `coev~` |
//! | `Coupon{i}` | coupon source | coupon target | its morphism |

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cochain::ChainObject;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{RepCategory, RepObject};
use crate::ribbon::{ChainCategory, RibbonCategory};
use crate::scalar::Scalar;
use crate::strings::{eval_string, GradedStringDiagram, StringToken};
use crate::words::WordMap;

pub use crate::strings::Orient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strand {
    pub label: usize,
    pub orient: Orient,
}

impl Strand {
    pub fn pos(label: usize) -> Self {
        Strand { label, orient: Orient::Pos }
    }

    pub fn neg(label: usize) -> Self {
        Strand { label, orient: Orient::Neg }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Token {
    Id,
    CrossPos,
    CrossNeg,
    TwistPos,
    TwistNeg,
    Cap,
    Cup { label: usize, orient: Orient },
    Coupon { index: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coupon<M> {
    pub name: String,
    pub source: Vec<Strand>,
    pub target: Vec<Strand>,
    pub morphism: M,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RibbonDiagram<O, M> {
    pub labels: Vec<O>,
    pub coupons: Vec<Coupon<M>>,
    pub source: Vec<Strand>,
    pub slices: Vec<Vec<Token>>,
}

pub type RepDiagram<K> = RibbonDiagram<RepObject<K>, Matrix<K>>;
pub type ChainDiagram<K> = RibbonDiagram<ChainObject<K>, WordMap<K>>;

impl<O, M> RibbonDiagram<O, M> {
    pub fn new(labels: Vec<O>, source: Vec<Strand>) -> Self {
        RibbonDiagram { labels, coupons: Vec::new(), source, slices: Vec::new() }
    }

    pub fn token_arity(&self, t: &Token) -> usize {
        match t {
            Token::Id | Token::TwistPos | Token::TwistNeg => 1,
            Token::CrossPos | Token::CrossNeg | Token::Cap => 2,
            Token::Cup { .. } => 0,
            Token::Coupon { index } => self.coupons.get(*index).map_or(0, |c| c.source.len()),
        }
    }

    /// Applies a slice to a row of strands.
    pub fn apply_slice(&self, strands: &[Strand], slice: &[Token]) -> Result<Vec<Strand>> {
        let need: usize = slice.iter().map(|t| self.token_arity(t)).sum();
        if need != strands.len() {
            return Err(Error::InvalidDiagram(format!("slice covers {need} strands, {} present", strands.len())));
        }
        let mut out = Vec::with_capacity(strands.len() + 2);
        let mut pos = 0;
        for t in slice {
            let k = self.token_arity(t);
            let inp = &strands[pos..pos + k];
            pos += k;
            match t {
                Token::Id | Token::TwistPos | Token::TwistNeg => out.push(inp[0]),
                Token::CrossPos | Token::CrossNeg => out.extend([inp[1], inp[0]]),
                Token::Cap => {
                    if inp[0].label != inp[1].label || inp[0].orient == inp[1].orient {
                        return Err(Error::InvalidDiagram(format!("cap joins {:?} and {:?}", inp[0], inp[1])));
                    }
                }
                Token::Cup { label, orient } => {
                    if *label >= self.labels.len() {
                        return Err(Error::InvalidDiagram(format!("unknown label {label}")));
                    }
                    out.extend([Strand { label: *label, orient: *orient }, Strand { label: *label, orient: orient.flip() }]);
                }
                Token::Coupon { index } => {
                    let c = self.coupons.get(*index).ok_or_else(|| Error::InvalidDiagram(format!("unknown coupon {index}")))?;
                    if c.source != inp {
                        return Err(Error::InvalidDiagram(format!("coupon '{}' expects {:?}, got {:?}", c.name, c.source, inp)));
                    }
                    out.extend(c.target.iter().copied());
                }
            }
        }
        Ok(out)
    }

    /// Strands before every slice and after the last one.
    pub fn boundaries(&self) -> Result<Vec<Vec<Strand>>> {
        if let Some(s) = self.source.iter().find(|s| s.label >= self.labels.len()) {
            return Err(Error::InvalidDiagram(format!("unknown label {}", s.label)));
        }
        let mut rows = vec![self.source.clone()];
        for slice in &self.slices {
            let next = self.apply_slice(rows.last().unwrap(), slice)?;
            rows.push(next);
        }
        Ok(rows)
    }

    pub fn target(&self) -> Result<Vec<Strand>> {
        Ok(self.boundaries()?.pop().unwrap())
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.source.is_empty() && self.target()?.is_empty())
    }

    pub fn add_coupon(&mut self, name: &str, source: Vec<Strand>, target: Vec<Strand>, morphism: M) -> usize {
        self.coupons.push(Coupon { name: name.to_string(), source, target, morphism });
        self.coupons.len() - 1
    }

    pub fn push_slice(&mut self, slice: Vec<Token>) -> &mut Self {
        self.slices.push(slice);
        self
    }
}

/// Strand objects, with duals computed once per label.
pub fn strand_objects<K: Scalar, C: RibbonCategory<K>>(cat: &C, labels: &[C::Object]) -> Vec<[C::Object; 2]> {
    labels.iter().map(|x| [x.clone(), cat.dual(x)]).collect()
}

fn strand_obj<O: Clone>(objs: &[[O; 2]], s: &Strand) -> O {
    objs[s.label][if s.orient == Orient::Pos { 0 } else { 1 }].clone()
}

/// The morphism of one slice.
pub fn slice_morphism<K: Scalar, C: RibbonCategory<K>>(
    cat: &C,
    d: &RibbonDiagram<C::Object, C::Morphism>,
    objs: &[[C::Object; 2]],
    strands: &[Strand],
    slice: &[Token],
) -> Result<C::Morphism> {
    let mut parts = Vec::with_capacity(slice.len());
    let mut pos = 0;
    for t in slice {
        let k = d.token_arity(t);
        let inp = &strands[pos..pos + k];
        pos += k;
        let o = |i: usize| strand_obj(objs, &inp[i]);
        parts.push(match t {
            Token::Id => cat.identity(&[o(0)]),
            Token::CrossPos => cat.braiding(&o(0), &o(1), false),
            Token::CrossNeg => cat.braiding(&o(0), &o(1), true),
            Token::TwistPos => cat.twist(&o(0), false),
            Token::TwistNeg => cat.twist(&o(0), true),
            Token::Cap => {
                let x = &objs[inp[0].label][0];
                if inp[0].orient == Orient::Neg {
                    cat.ev(x)
                } else {
                    cat.ev_right(x)
                }
            }
            Token::Cup { label, orient } => {
                let x = &objs[*label][0];
                if *orient == Orient::Pos {
                    cat.coev(x)
                } else {
                    cat.coev_right(x)
                }
            }
            Token::Coupon { index } => d.coupons[*index].morphism.clone(),
        });
    }
    Ok(cat.tensor(&parts))
}

/// Composes the slice morphisms from bottom to top.
pub fn evaluate<K: Scalar, C: RibbonCategory<K>>(cat: &C, d: &RibbonDiagram<C::Object, C::Morphism>) -> Result<C::Morphism> {
    let rows = d.boundaries()?;
    let objs = strand_objects(cat, &d.labels);
    let maps: Vec<C::Morphism> = d
        .slices
        .par_iter()
        .zip(rows.par_iter())
        .map(|(slice, strands)| slice_morphism(cat, d, &objs, strands, slice))
        .collect::<Result<_>>()?;
    let source: Vec<C::Object> = d.source.iter().map(|s| strand_obj(&objs, s)).collect();
    maps.iter().try_fold(cat.identity(&source), |acc, m| cat.compose(m, &acc))
}

/// A closed diagram's scalar.
pub fn evaluate_closed<K: Scalar, C: RibbonCategory<K>>(cat: &C, d: &RibbonDiagram<C::Object, C::Morphism>) -> Result<K> {
    if !d.is_closed()? {
        return Err(Error::InvalidDiagram("diagram has open boundary".into()));
    }
    cat.closed_scalar(&evaluate(cat, d)?)
}

/// The degree-0 scalar of a closed diagram labeled by complexes.
pub fn graded_link_invariant<K: Scalar>(rep: &RepCategory<K>, d: &ChainDiagram<K>) -> Result<K> {
    evaluate_closed(&ChainCategory::new(rep), d)
}

fn ch_degree(a: i64, o: Orient) -> i64 {
    a * o.sign()
}

/// Evaluation through degree states.
///
/// Every strand segment is assigned one homogeneous component of its label.
/// Each consistent assignment contributes the product of the sign of the
/// underlying diagram of graded lines and the value of the diagram labeled by
/// the components in `rep(H)`; the contributions are summed into the blocks
/// of the result.
pub fn evaluate_separated<K: Scalar>(rep: &RepCategory<K>, d: &ChainDiagram<K>) -> Result<WordMap<K>> {
    let rows = d.boundaries()?;
    let ch = ChainCategory::new(rep);
    let objs = strand_objects(&ch, &d.labels);
    let support: Vec<Vec<i64>> = d.labels.iter().map(|x| x.degrees().filter(|n| x.dim(*n) > 0).collect()).collect();

    // all degree histories, one degree vector per boundary row
    let mut histories: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut starts: Vec<Vec<i64>> = vec![Vec::new()];
    for s in &d.source {
        starts = starts
            .into_iter()
            .flat_map(|v| support[s.label].iter().map(move |a| [v.clone(), vec![*a]].concat()))
            .collect();
    }
    let mut stack: Vec<Vec<Vec<i64>>> = starts.into_iter().map(|v| vec![v]).collect();
    stack.reverse();
    while let Some(h) = stack.pop() {
        let k = h.len() - 1;
        if k == d.slices.len() {
            histories.push(h);
            continue;
        }
        let nexts = slice_states(d, &support, &rows[k], &rows[k + 1], &d.slices[k], &h[k]);
        for n in nexts.into_iter().rev() {
            let mut h2 = h.clone();
            h2.push(n);
            stack.push(h2);
        }
    }

    let src_word: Vec<ChainObject<K>> = d.source.iter().map(|s| strand_obj(&objs, s)).collect();
    let tgt_word: Vec<ChainObject<K>> = rows.last().unwrap().iter().map(|s| strand_obj(&objs, s)).collect();
    let shell = WordMap::new(src_word.clone(), tgt_word.clone(), BTreeMap::new())?;
    let contributions: Vec<(i64, Vec<(usize, usize, K)>)> = histories
        .par_iter()
        .map(|h| state_contribution(rep, d, &rows, h, &shell))
        .collect::<Result<_>>()?;
    let mut triples: BTreeMap<i64, Vec<(usize, usize, K)>> = BTreeMap::new();
    for (n, t) in contributions {
        triples.entry(n).or_default().extend(t);
    }
    let comps = triples
        .into_iter()
        .map(|(n, t)| (n, Matrix::from_triples(shell.target_layout().dim(n), shell.source_layout().dim(n), t)))
        .collect();
    WordMap::new(src_word, tgt_word, comps)
}

fn slice_states<K: Scalar>(
    d: &ChainDiagram<K>,
    support: &[Vec<i64>],
    before: &[Strand],
    after: &[Strand],
    slice: &[Token],
    degs: &[i64],
) -> Vec<Vec<i64>> {
    let mut partial: Vec<Vec<i64>> = vec![Vec::new()];
    let mut pos = 0;
    let mut out_pos = 0;
    for t in slice {
        let k = d.token_arity(t);
        let inp = &degs[pos..pos + k];
        let inp_strands = &before[pos..pos + k];
        pos += k;
        let options: Vec<Vec<i64>> = match t {
            Token::Id | Token::TwistPos | Token::TwistNeg => vec![inp.to_vec()],
            Token::CrossPos | Token::CrossNeg => vec![vec![inp[1], inp[0]]],
            Token::Cap => {
                if inp[0] == inp[1] {
                    vec![vec![]]
                } else {
                    vec![]
                }
            }
            Token::Cup { label, .. } => support[*label].iter().map(|a| vec![*a, *a]).collect(),
            Token::Coupon { index } => {
                let c = &d.coupons[*index];
                let alpha: Vec<i64> = inp.iter().zip(inp_strands).map(|(a, s)| ch_degree(*a, s.orient)).collect();
                let total: i64 = alpha.iter().sum();
                let mut outs: Vec<Vec<i64>> = vec![Vec::new()];
                for s in &c.target {
                    outs = outs.into_iter().flat_map(|v| support[s.label].iter().map(move |a| [v.clone(), vec![*a]].concat())).collect();
                }
                outs.into_iter()
                    .filter(|o| {
                        let beta: Vec<i64> = o.iter().zip(&c.target).map(|(a, s)| ch_degree(*a, s.orient)).collect();
                        beta.iter().sum::<i64>() == total && !c.morphism.block(&alpha, &beta).is_zero()
                    })
                    .collect()
            }
        };
        let produced = match t {
            Token::Id | Token::TwistPos | Token::TwistNeg => 1,
            Token::CrossPos | Token::CrossNeg | Token::Cup { .. } => 2,
            Token::Cap => 0,
            Token::Coupon { index } => d.coupons[*index].target.len(),
        };
        out_pos += produced;
        partial = partial.into_iter().flat_map(|p| options.iter().map(move |o| [p.clone(), o.clone()].concat())).collect();
        if partial.is_empty() {
            break;
        }
    }
    debug_assert!(partial.is_empty() || out_pos == after.len());
    partial
}

fn state_contribution<K: Scalar>(
    rep: &RepCategory<K>,
    d: &ChainDiagram<K>,
    rows: &[Vec<Strand>],
    h: &[Vec<i64>],
    shell: &WordMap<K>,
) -> Result<(i64, Vec<(usize, usize, K)>)> {
    // relabel every segment by its homogeneous component
    let mut index: HashMap<(usize, i64), usize> = HashMap::new();
    let mut labels: Vec<RepObject<K>> = Vec::new();
    let mut label_of = |l: usize, a: i64| -> usize {
        *index.entry((l, a)).or_insert_with(|| {
            labels.push(d.labels[l].component_or_zero(a));
            labels.len() - 1
        })
    };
    let restrand = |row: &[Strand], degs: &[i64], label_of: &mut dyn FnMut(usize, i64) -> usize| -> Vec<Strand> {
        row.iter().zip(degs).map(|(s, a)| Strand { label: label_of(s.label, *a), orient: s.orient }).collect()
    };
    let source = restrand(&rows[0], &h[0], &mut label_of);
    let mut coupons = Vec::new();
    let mut slices = Vec::new();
    let mut string_slices = Vec::new();
    for (k, slice) in d.slices.iter().enumerate() {
        let (before, after) = (&rows[k], &rows[k + 1]);
        let (db, da) = (&h[k], &h[k + 1]);
        let mut toks = Vec::new();
        let mut stoks = Vec::new();
        let (mut pos, mut opos) = (0, 0);
        for t in slice {
            let ar = d.token_arity(t);
            match t {
                Token::Id | Token::TwistPos | Token::TwistNeg => {
                    toks.push(t.clone());
                    stoks.push(StringToken::Id);
                    opos += 1;
                }
                Token::CrossPos | Token::CrossNeg => {
                    toks.push(t.clone());
                    stoks.push(StringToken::Cross);
                    opos += 2;
                }
                Token::Cap => {
                    toks.push(Token::Cap);
                    stoks.push(StringToken::Cap);
                }
                Token::Cup { label, orient } => {
                    let a = da[opos];
                    toks.push(Token::Cup { label: label_of(*label, a), orient: *orient });
                    stoks.push(StringToken::Cup { degree: a, orient: *orient });
                    opos += 2;
                }
                Token::Coupon { index } => {
                    let c = &d.coupons[*index];
                    let m = c.target.len();
                    let alpha: Vec<i64> = (pos..pos + ar).map(|i| ch_degree(db[i], before[i].orient)).collect();
                    let beta: Vec<i64> = (opos..opos + m).map(|i| ch_degree(da[i], after[i].orient)).collect();
                    let src = restrand(&before[pos..pos + ar], &db[pos..pos + ar], &mut label_of);
                    let tgt = restrand(&after[opos..opos + m], &da[opos..opos + m], &mut label_of);
                    coupons.push(Coupon { name: c.name.clone(), source: src, target: tgt, morphism: c.morphism.block(&alpha, &beta) });
                    toks.push(Token::Coupon { index: coupons.len() - 1 });
                    stoks.push(StringToken::Coupon { inputs: ar, outputs: (opos..opos + m).map(|i| (da[i], after[i].orient)).collect() });
                    opos += m;
                }
            }
            pos += ar;
        }
        slices.push(toks);
        string_slices.push(stoks);
    }
    let last = rows.len() - 1;
    let graded = GradedStringDiagram {
        source: rows[0].iter().zip(&h[0]).map(|(s, a)| (*a, s.orient)).collect(),
        target: rows[last].iter().zip(&h[last]).map(|(s, a)| (*a, s.orient)).collect(),
        slices: string_slices,
    };
    let sign = eval_string(&graded)?;
    let rd = RibbonDiagram { labels, coupons, source, slices };
    let value = evaluate(rep, &rd)?;

    // scatter the block into the word layouts
    let alpha: Vec<i64> = rows[0].iter().zip(&h[0]).map(|(s, a)| ch_degree(*a, s.orient)).collect();
    let beta: Vec<i64> = rows[last].iter().zip(&h[last]).map(|(s, a)| ch_degree(*a, s.orient)).collect();
    let n: i64 = alpha.iter().sum();
    let pick = |labels: &[crate::words::Label], degs: &[i64]| -> Vec<usize> {
        labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.iter().map(|p| p.0).eq(degs.iter().copied()))
            .map(|(i, _)| i)
            .collect()
    };
    let cols = pick(shell.source_layout().labels(n), &alpha);
    let rws = pick(shell.target_layout().labels(n), &beta);
    let s = K::sign(if sign < 0 { 1 } else { 0 });
    let triples = value.entries().map(|(r, c, v)| (rws[r], cols[c], v.mul_ref(&s))).collect();
    Ok((n, triples))
}
