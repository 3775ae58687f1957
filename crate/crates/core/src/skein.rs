//! Local rewrites of slice diagrams that leave the evaluation unchanged.
//!
//! Moves act on the elementary form of a diagram, in which every slice has
//! exactly one token that is not `Id`. A [`Location`] names a slice of that
//! form (or a gap between slices, for insertions) and the position of the
//! first strand the move touches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{evaluate, Orient, RibbonDiagram, Strand, Token};
use crate::error::{Error, Result};
use crate::ribbon::RibbonCategory;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkeinMove {
    /// Replace a coupon by its dual coupon, bent around with cups and caps.
    FlipCoupon,
    /// Compose two stacked coupons into one.
    MergeCoupons,
    /// Factor a coupon as itself followed by an identity coupon.
    SplitCoupon,
    /// Absorb an adjacent twist or crossing into a coupon.
    AbsorbIntoCoupon,
    /// Insert a crossing followed by its inverse.
    Reidemeister2,
    /// Slide a strand across a crossing.
    Reidemeister3,
    /// Trade a twist for a curl, or insert a curl cancelled by a twist.
    FramedReidemeister1,
}

impl SkeinMove {
    pub const ALL: [SkeinMove; 7] = [
        SkeinMove::FlipCoupon,
        SkeinMove::MergeCoupons,
        SkeinMove::SplitCoupon,
        SkeinMove::AbsorbIntoCoupon,
        SkeinMove::Reidemeister2,
        SkeinMove::Reidemeister3,
        SkeinMove::FramedReidemeister1,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Location {
    pub slice: usize,
    pub strand: usize,
}

fn produced<O, M>(d: &RibbonDiagram<O, M>, t: &Token) -> usize {
    match t {
        Token::Id | Token::TwistPos | Token::TwistNeg => 1,
        Token::CrossPos | Token::CrossNeg | Token::Cup { .. } => 2,
        Token::Cap => 0,
        Token::Coupon { index } => d.coupons[*index].target.len(),
    }
}

fn padded(width: usize, at: usize, consumed: usize, t: Token) -> Vec<Token> {
    let mut s = vec![Token::Id; at];
    s.push(t);
    s.extend(std::iter::repeat(Token::Id).take(width - at - consumed));
    s
}

/// The same diagram with one non-identity token per slice.
pub fn elementary<O: Clone, M: Clone>(d: &RibbonDiagram<O, M>) -> Result<RibbonDiagram<O, M>> {
    let rows = d.boundaries()?;
    let mut out = RibbonDiagram { labels: d.labels.clone(), coupons: d.coupons.clone(), source: d.source.clone(), slices: vec![] };
    for (slice, row) in d.slices.iter().zip(&rows) {
        let mut width = row.len();
        let mut pos = 0;
        for t in slice {
            let (a, b) = (d.token_arity(t), produced(d, t));
            if *t != Token::Id {
                out.slices.push(padded(width, pos, a, t.clone()));
                width = width + b - a;
            }
            pos += b;
        }
    }
    Ok(out)
}

/// The single non-identity token of an elementary slice and its position.
fn key_token(slice: &[Token]) -> Option<(usize, &Token)> {
    let mut it = slice.iter().enumerate().filter(|(_, t)| **t != Token::Id);
    let first = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some(first)
}

fn is_elementary<O, M>(d: &RibbonDiagram<O, M>) -> bool {
    d.slices.iter().all(|s| key_token(s).is_some())
}

fn not_applicable(m: SkeinMove, loc: Location, why: &str) -> Error {
    Error::MoveNotApplicable(format!("{m:?} at slice {}, strand {}: {why}", loc.slice, loc.strand))
}

/// Rewrites `d` (which must be elementary) by `mv` at `loc`.
pub fn apply_skein<K: Scalar, C: RibbonCategory<K>>(
    cat: &C,
    d: &RibbonDiagram<C::Object, C::Morphism>,
    mv: SkeinMove,
    loc: Location,
) -> Result<RibbonDiagram<C::Object, C::Morphism>> {
    if !is_elementary(d) {
        return Err(Error::MoveNotApplicable("diagram is not in elementary form".into()));
    }
    let rows = d.boundaries()?;
    let fail = |why: &str| not_applicable(mv, loc, why);
    let key = |s: usize| -> Option<(usize, Token)> { d.slices.get(s).and_then(|sl| key_token(sl)).map(|(p, t)| (p, t.clone())) };
    let mut out = d.clone();
    let s = loc.slice;
    match mv {
        SkeinMove::Reidemeister2 => {
            let row = rows.get(s).ok_or_else(|| fail("no such gap"))?;
            if loc.strand + 1 >= row.len() {
                return Err(fail("needs two strands"));
            }
            let w = row.len();
            let p = loc.strand;
            out.slices.splice(s..s, [padded(w, p, 2, Token::CrossPos), padded(w, p, 2, Token::CrossNeg)]);
        }
        SkeinMove::Reidemeister3 => {
            let toks: Vec<_> = (s..s + 3).map(key).collect::<Option<_>>().ok_or_else(|| fail("needs three slices"))?;
            let i = loc.strand;
            let sign = toks[0].1.clone();
            if !matches!(sign, Token::CrossPos | Token::CrossNeg) || toks.iter().any(|(_, t)| *t != sign) {
                return Err(fail("needs three crossings of one sign"));
            }
            let w = rows[s].len();
            let (a, b) = if toks.iter().map(|(p, _)| *p).eq([i, i + 1, i]) {
                (i + 1, i)
            } else if i >= 1 && toks.iter().map(|(p, _)| *p).eq([i, i - 1, i]) {
                (i - 1, i)
            } else {
                return Err(fail("crossings do not form a triangle"));
            };
            out.slices.splice(s..s + 3, [a, b, a].map(|p| padded(w, p, 2, sign.clone())));
        }
        SkeinMove::FramedReidemeister1 => {
            let p = loc.strand;
            match key(s) {
                Some((q, t @ (Token::TwistPos | Token::TwistNeg))) if q == p => {
                    let positive = t == Token::TwistPos;
                    out.slices.splice(s..s + 1, curl(&rows[s], p, positive));
                }
                _ => {
                    let row = rows.get(s).ok_or_else(|| fail("no such gap"))?;
                    if p >= row.len() {
                        return Err(fail("no such strand"));
                    }
                    let mut ins = vec![padded(row.len(), p, 1, Token::TwistNeg)];
                    ins.extend(curl(row, p, true));
                    out.slices.splice(s..s, ins);
                }
            }
        }
        SkeinMove::SplitCoupon => {
            let (p, t) = key(s).ok_or_else(|| fail("no such slice"))?;
            let Token::Coupon { index } = t else { return Err(fail("not a coupon")) };
            if p != loc.strand {
                return Err(fail("coupon is elsewhere"));
            }
            let c = &d.coupons[index];
            let objs: Vec<C::Object> = c.target.iter().map(|st| strand_object(cat, d, st)).collect();
            let id = out.add_coupon("id", c.target.clone(), c.target.clone(), cat.identity(&objs));
            let w = rows[s + 1].len();
            out.slices.insert(s + 1, padded(w, p, c.target.len(), Token::Coupon { index: id }));
        }
        SkeinMove::MergeCoupons => {
            let (p, t) = key(s).ok_or_else(|| fail("no such slice"))?;
            let (q, u) = key(s + 1).ok_or_else(|| fail("no slice above"))?;
            let (Token::Coupon { index: f }, Token::Coupon { index: g }) = (t, u) else {
                return Err(fail("needs two stacked coupons"));
            };
            let (cf, cg) = (&d.coupons[f], &d.coupons[g]);
            if p != loc.strand || q != p || cf.target != cg.source {
                return Err(fail("coupons are not stacked"));
            }
            let m = cat.compose(&cg.morphism, &cf.morphism)?;
            let name = format!("{}*{}", cg.name, cf.name);
            let idx = out.add_coupon(&name, cf.source.clone(), cg.target.clone(), m);
            let w = rows[s].len();
            out.slices.splice(s..s + 2, [padded(w, p, cf.source.len(), Token::Coupon { index: idx })]);
        }
        SkeinMove::AbsorbIntoCoupon => {
            let (p, t) = key(s).ok_or_else(|| fail("no such slice"))?;
            let (q, u) = key(s + 1).ok_or_else(|| fail("no slice above"))?;
            let braid = |t: &Token| matches!(t, Token::CrossPos | Token::CrossNeg | Token::TwistPos | Token::TwistNeg);
            let width = |t: &Token| if matches!(t, Token::CrossPos | Token::CrossNeg) { 2 } else { 1 };
            let (lo, n_in, n_out) = match (&t, &u) {
                (Token::Coupon { index }, b) if braid(b) => {
                    let c = &d.coupons[*index];
                    if q < p || q + width(b) > p + c.target.len() {
                        return Err(fail("braid leaves the coupon"));
                    }
                    (p, c.source.len(), c.target.len())
                }
                (b, Token::Coupon { index }) if braid(b) => {
                    let c = &d.coupons[*index];
                    if p < q || p + width(b) > q + c.source.len() {
                        return Err(fail("braid leaves the coupon"));
                    }
                    (q, c.source.len(), c.target.len())
                }
                _ => return Err(fail("needs a coupon next to a twist or crossing")),
            };
            if lo != loc.strand {
                return Err(fail("coupon is elsewhere"));
            }
            let source = rows[s][lo..lo + n_in].to_vec();
            let target = rows[s + 2][lo..lo + n_out].to_vec();
            let window = RibbonDiagram {
                labels: d.labels.clone(),
                coupons: d.coupons.clone(),
                source: source.clone(),
                slices: vec![window_tokens(d, &d.slices[s], lo, n_in), window_tokens(d, &d.slices[s + 1], lo, rows[s + 1].len() + n_in - rows[s].len())],
            };
            let m = evaluate(cat, &window)?;
            let idx = out.add_coupon("absorbed", source, target, m);
            let w = rows[s].len();
            out.slices.splice(s..s + 2, [padded(w, lo, n_in, Token::Coupon { index: idx })]);
        }
        SkeinMove::FlipCoupon => {
            let (p, t) = key(s).ok_or_else(|| fail("no such slice"))?;
            let Token::Coupon { index } = t else { return Err(fail("not a coupon")) };
            if p != loc.strand {
                return Err(fail("coupon is elsewhere"));
            }
            let c = d.coupons[index].clone();
            let flipped = dual_coupon(cat, d, index)?;
            let (n, m) = (c.source.len(), c.target.len());
            let src_dual: Vec<Strand> = c.source.iter().rev().map(|st| Strand { label: st.label, orient: st.orient.flip() }).collect();
            let tgt_dual: Vec<Strand> = c.target.iter().rev().map(|st| Strand { label: st.label, orient: st.orient.flip() }).collect();
            let idx = out.add_coupon(&format!("{}^", c.name), tgt_dual, src_dual, flipped);
            let mut w = rows[s].len();
            let mut new = Vec::new();
            for (k, st) in c.target.iter().enumerate() {
                new.push(padded(w, p + k, 0, Token::Cup { label: st.label, orient: st.orient }));
                w += 2;
            }
            new.push(padded(w, p + m, m, Token::Coupon { index: idx }));
            w = w - m + n;
            for k in (0..n).rev() {
                new.push(padded(w, p + m + k, 2, Token::Cap));
                w -= 2;
            }
            out.slices.splice(s..s + 1, new);
        }
    }
    out.boundaries()?;
    Ok(out)
}

/// The tokens of an elementary slice covering `len` strands from `lo`.
fn window_tokens<O, M>(d: &RibbonDiagram<O, M>, slice: &[Token], lo: usize, len: usize) -> Vec<Token> {
    let arity = key_token(slice).map_or(1, |(_, t)| d.token_arity(t));
    slice[lo..lo + len + 1 - arity].to_vec()
}

fn strand_object<K: Scalar, C: RibbonCategory<K>>(cat: &C, d: &RibbonDiagram<C::Object, C::Morphism>, s: &Strand) -> C::Object {
    let x = &d.labels[s.label];
    match s.orient {
        Orient::Pos => x.clone(),
        Orient::Neg => cat.dual(x),
    }
}

/// A curl on strand `p` of `row`, equal to a positive or negative twist.
fn curl(row: &[Strand], p: usize, positive: bool) -> Vec<Vec<Token>> {
    let st = row[p];
    let w = row.len();
    vec![
        padded(w, p + 1, 0, Token::Cup { label: st.label, orient: st.orient }),
        padded(w + 2, p, 2, if positive { Token::CrossPos } else { Token::CrossNeg }),
        padded(w + 2, p + 1, 2, Token::Cap),
    ]
}

/// The dual of coupon `index`, as a morphism from the reversed dual target
/// to the reversed dual source.
pub fn dual_coupon<K: Scalar, C: RibbonCategory<K>>(
    cat: &C,
    d: &RibbonDiagram<C::Object, C::Morphism>,
    index: usize,
) -> Result<C::Morphism> {
    let c = &d.coupons[index];
    let (n, m) = (c.source.len(), c.target.len());
    let tgt_dual: Vec<Strand> = c.target.iter().rev().map(|st| Strand { label: st.label, orient: st.orient.flip() }).collect();
    let mut sub = RibbonDiagram { labels: d.labels.clone(), coupons: vec![c.clone()], source: tgt_dual, slices: vec![] };
    let mut w = m;
    for (k, st) in c.source.iter().enumerate() {
        sub.slices.push(padded(w, m + k, 0, Token::Cup { label: st.label, orient: st.orient }));
        w += 2;
    }
    sub.slices.push(padded(w, m, n, Token::Coupon { index: 0 }));
    w = w - n + m;
    for k in (0..m).rev() {
        sub.slices.push(padded(w, k, 2, Token::Cap));
        w -= 2;
    }
    evaluate(cat, &sub)
}

/// Every move applicable to the elementary diagram `d`.
pub fn applicable_moves<O: Clone, M: Clone>(d: &RibbonDiagram<O, M>) -> Result<Vec<(SkeinMove, Location)>> {
    let rows = d.boundaries()?;
    let mut out = Vec::new();
    let key = |s: usize| d.slices.get(s).and_then(|sl| key_token(sl));
    for (s, row) in rows.iter().enumerate() {
        for p in 0..row.len() {
            let loc = Location { slice: s, strand: p };
            if p + 1 < row.len() {
                out.push((SkeinMove::Reidemeister2, loc));
            }
            out.push((SkeinMove::FramedReidemeister1, loc));
        }
    }
    for s in 0..d.slices.len() {
        let Some((p, t)) = key(s) else { continue };
        let loc = Location { slice: s, strand: p };
        match t {
            Token::Coupon { index } => {
                out.push((SkeinMove::SplitCoupon, loc));
                out.push((SkeinMove::FlipCoupon, loc));
                if let Some((q, Token::Coupon { index: g })) = key(s + 1) {
                    if q == p && d.coupons[*index].target == d.coupons[*g].source {
                        out.push((SkeinMove::MergeCoupons, loc));
                    }
                }
            }
            Token::CrossPos | Token::CrossNeg => {
                if let (Some((q1, t1)), Some((q2, t2))) = (key(s + 1), key(s + 2)) {
                    if t1 == t && t2 == t && q2 == p && (q1 == p + 1 || q1 + 1 == p) {
                        out.push((SkeinMove::Reidemeister3, loc));
                    }
                }
            }
            _ => {}
        }
        if let Some((q, u)) = key(s + 1) {
            let braid = |t: &Token| matches!(t, Token::CrossPos | Token::CrossNeg | Token::TwistPos | Token::TwistNeg);
            let width = |t: &Token| if matches!(t, Token::CrossPos | Token::CrossNeg) { 2 } else { 1 };
            match (t, u) {
                (Token::Coupon { index }, b) if braid(b) && q >= p && q + width(b) <= p + d.coupons[*index].target.len() => {
                    out.push((SkeinMove::AbsorbIntoCoupon, loc));
                }
                (b, Token::Coupon { index }) if braid(b) && p >= q && p + width(b) <= q + d.coupons[*index].source.len() => {
                    out.push((SkeinMove::AbsorbIntoCoupon, Location { slice: s, strand: q }));
                }
                _ => {}
            }
        }
    }
    Ok(out)
}

/// Applies a uniformly chosen applicable move, returning it with the result.
pub fn random_skein<K: Scalar, C: RibbonCategory<K>, R: Rng>(
    cat: &C,
    d: &RibbonDiagram<C::Object, C::Morphism>,
    rng: &mut R,
) -> Result<(SkeinMove, RibbonDiagram<C::Object, C::Morphism>)> {
    let moves = applicable_moves(d)?;
    let (mv, loc) = *moves.choose(rng).ok_or_else(|| Error::MoveNotApplicable("no move applies".into()))?;
    Ok((mv, apply_skein(cat, d, mv, loc)?))
}
