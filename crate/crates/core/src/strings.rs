//! String diagrams over `Z`-graded lines `k(m)` with the signed symmetry.
//!
//! Every diagram evaluates to `±1` times the tautological identification of
//! its boundary lines. Sign rules, with strands written `(m, orientation)`:
//! * crossing of `k(m)` and `k(n)`: `(-1)^{mn}`;
//! * cap on `(-, +)` and cup producing `(+, -)`: `+1`;
//! * cap on `(+, -)` and cup producing `(-, +)`: `(-1)^m`;
//! * coupon: `+1`, provided `Σ ±m_in = Σ ±n_out`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orient {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Orient {
    pub fn flip(self) -> Self {
        match self {
            Orient::Pos => Orient::Neg,
            Orient::Neg => Orient::Pos,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Orient::Pos => 1,
            Orient::Neg => -1,
        }
    }
}

pub type GradedStrand = (i64, Orient);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StringToken {
    Id,
    Cross,
    Cap,
    Cup { degree: i64, orient: Orient },
    Coupon { inputs: usize, outputs: Vec<GradedStrand> },
}

impl StringToken {
    fn arity(&self) -> usize {
        match self {
            StringToken::Id => 1,
            StringToken::Cross | StringToken::Cap => 2,
            StringToken::Cup { .. } => 0,
            StringToken::Coupon { inputs, .. } => *inputs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedStringDiagram {
    pub source: Vec<GradedStrand>,
    pub target: Vec<GradedStrand>,
    pub slices: Vec<Vec<StringToken>>,
}

pub fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Applies one slice, returning the new strands and the slice sign.
pub fn apply_string_slice(strands: &[GradedStrand], slice: &[StringToken]) -> Result<(Vec<GradedStrand>, i64)> {
    let need: usize = slice.iter().map(StringToken::arity).sum();
    if need != strands.len() {
        return Err(Error::InvalidDiagram(format!("slice covers {need} strands, {} present", strands.len())));
    }
    let mut out = Vec::new();
    let mut sign = 1;
    let mut pos = 0;
    for tok in slice {
        let inp = &strands[pos..pos + tok.arity()];
        pos += tok.arity();
        match tok {
            StringToken::Id => out.push(inp[0]),
            StringToken::Cross => {
                sign *= parity_sign(inp[0].0 * inp[1].0);
                out.extend([inp[1], inp[0]]);
            }
            StringToken::Cap => {
                let ((m, o1), (n, o2)) = (inp[0], inp[1]);
                if m != n || o1 == o2 {
                    return Err(Error::InvalidDiagram(format!("cap joins ({m},{o1:?}) and ({n},{o2:?})")));
                }
                if o1 == Orient::Pos {
                    sign *= parity_sign(m);
                }
            }
            StringToken::Cup { degree, orient } => {
                if *orient == Orient::Neg {
                    sign *= parity_sign(*degree);
                }
                out.extend([(*degree, *orient), (*degree, orient.flip())]);
            }
            StringToken::Coupon { outputs, .. } => {
                let sin: i64 = inp.iter().map(|(m, o)| m * o.sign()).sum();
                let sout: i64 = outputs.iter().map(|(m, o)| m * o.sign()).sum();
                if sin != sout {
                    return Err(Error::InvalidDiagram(format!("coupon degrees {sin} ≠ {sout}")));
                }
                out.extend(outputs.iter().copied());
            }
        }
    }
    Ok((out, sign))
}

/// The sign of `D` relative to the tautological identification.
pub fn eval_string(d: &GradedStringDiagram) -> Result<i64> {
    let mut strands = d.source.clone();
    let mut sign = 1;
    for slice in &d.slices {
        let (next, s) = apply_string_slice(&strands, slice)?;
        strands = next;
        sign *= s;
    }
    if strands != d.target {
        return Err(Error::InvalidDiagram("slices do not end at the declared target".into()));
    }
    Ok(sign)
}

/// `eval(D) = sign · eval(D')`.
pub fn check_relation(d: &GradedStringDiagram, d2: &GradedStringDiagram, sign: i64) -> Result<bool> {
    if d.source != d2.source || d.target != d2.target {
        return Err(Error::Shape("relation sides have different boundaries".into()));
    }
    Ok(eval_string(d)? == sign * eval_string(d2)?)
}

fn ids(n: usize) -> Vec<StringToken> {
    vec![StringToken::Id; n]
}

/// Closed loop on `k(m)`.
pub fn loop_diagram(m: i64, orient: Orient) -> GradedStringDiagram {
    GradedStringDiagram {
        source: vec![],
        target: vec![],
        slices: vec![vec![StringToken::Cup { degree: m, orient }], vec![StringToken::Cap]],
    }
}

/// Both sides of the uncrossing relation: one crossing of two `k(m)` lines
/// against parallel lines; the relation sign is `(-1)^{m²}`.
pub fn uncrossing_pair(m: i64) -> (GradedStringDiagram, GradedStringDiagram, i64) {
    let b = vec![(m, Orient::Pos), (m, Orient::Pos)];
    let crossed = GradedStringDiagram { source: b.clone(), target: b.clone(), slices: vec![vec![StringToken::Cross]] };
    let straight = GradedStringDiagram { source: b.clone(), target: b, slices: vec![ids(2)] };
    (crossed, straight, parity_sign(m * m))
}

/// A coupon with a leg bent down under it: the line `k(m1)` leaves the top
/// boundary with orientation `orient`, turns below the coupon and enters it
/// beside `k(n)`; the coupon emits `k(m2)`. Returned with the plain coupon
/// `k(n) → k(m1) ⊗ k(m2)` having the same boundary.
pub fn hook_below_pair(m1: i64, m2: i64, orient: Orient) -> (GradedStringDiagram, GradedStringDiagram) {
    let n = m2 + orient.sign() * m1;
    let source = vec![(n, Orient::Pos)];
    let target = vec![(m1, orient), (m2, Orient::Pos)];
    let bent = GradedStringDiagram {
        source: source.clone(),
        target: target.clone(),
        slices: vec![
            vec![StringToken::Cup { degree: m1, orient }, StringToken::Id],
            vec![StringToken::Id, StringToken::Coupon { inputs: 2, outputs: vec![(m2, Orient::Pos)] }],
        ],
    };
    let plain = GradedStringDiagram {
        source,
        target: target.clone(),
        slices: vec![vec![StringToken::Coupon { inputs: 1, outputs: target }]],
    };
    (bent, plain)
}

/// The mirror situation: `k(n1)` enters from the bottom with orientation
/// `orient`, rises past the coupon and bends into its top; the coupon eats
/// `k(n2)` and emits `k(m)`. Returned with the plain coupon
/// `k(n1) ⊗ k(n2) → k(m)`.
pub fn hook_above_pair(n1: i64, n2: i64, orient: Orient) -> (GradedStringDiagram, GradedStringDiagram) {
    let m = n2 + orient.sign() * n1;
    let source = vec![(n1, orient), (n2, Orient::Pos)];
    let target = vec![(m, Orient::Pos)];
    let bent = GradedStringDiagram {
        source: source.clone(),
        target: target.clone(),
        slices: vec![
            vec![StringToken::Id, StringToken::Coupon { inputs: 1, outputs: vec![(n1, orient.flip()), (m, Orient::Pos)] }],
            vec![StringToken::Cap, StringToken::Id],
        ],
    };
    let plain = GradedStringDiagram {
        source,
        target: target.clone(),
        slices: vec![vec![StringToken::Coupon { inputs: 2, outputs: target }]],
    };
    (bent, plain)
}

/// Two stacked coupons against their composite.
pub fn coupon_composition_pair(a: i64, b: i64, c: i64) -> (GradedStringDiagram, GradedStringDiagram) {
    let source = vec![(a, Orient::Pos), (b, Orient::Pos)];
    let mid = vec![(a + b - c, Orient::Pos), (c, Orient::Pos)];
    let target = vec![(a + b, Orient::Pos)];
    let stacked = GradedStringDiagram {
        source: source.clone(),
        target: target.clone(),
        slices: vec![
            vec![StringToken::Coupon { inputs: 2, outputs: mid }],
            vec![StringToken::Coupon { inputs: 2, outputs: target.clone() }],
        ],
    };
    let composed = GradedStringDiagram {
        source,
        target: target.clone(),
        slices: vec![vec![StringToken::Coupon { inputs: 2, outputs: target }]],
    };
    (stacked, composed)
}
