mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ribbon_cochain::cochain::{dual_chain, ChainObject};
use ribbon_cochain::diagram::{evaluate, ChainDiagram, RibbonDiagram, Strand, Token};
use ribbon_cochain::linalg::Matrix;
use ribbon_cochain::rep::RepObject;
use ribbon_cochain::ribbon::ChainCategory;
use ribbon_cochain::strings::{
    check_relation, coupon_composition_pair, eval_string, hook_above_pair, hook_below_pair, loop_diagram, parity_sign, uncrossing_pair,
    GradedStrand, GradedStringDiagram, Orient, StringToken,
};
use ribbon_cochain::tqft::trivial_category;
use ribbon_cochain::{Cyclo, Scalar};

fn orient(rng: &mut ChaCha8Rng) -> Orient {
    if rng.gen_bool(0.5) {
        Orient::Pos
    } else {
        Orient::Neg
    }
}

fn strand(rng: &mut ChaCha8Rng) -> GradedStrand {
    (rng.gen_range(-3..=3), orient(rng))
}

fn random_diagram(rng: &mut ChaCha8Rng, slices: usize) -> GradedStringDiagram {
    let source: Vec<GradedStrand> = (0..rng.gen_range(0..=3)).map(|_| strand(rng)).collect();
    let mut row = source.clone();
    let mut out = Vec::new();
    for _ in 0..slices {
        let w = row.len();
        let p = if w == 0 { 0 } else { rng.gen_range(0..w) };
        let (tok, k) = match rng.gen_range(0..4) {
            0 if p + 1 < w => (StringToken::Cross, 2),
            1 if p + 1 < w && row[p].0 == row[p + 1].0 && row[p].1 != row[p + 1].1 => (StringToken::Cap, 2),
            2 if w < 5 => {
                let (m, o) = strand(rng);
                (StringToken::Cup { degree: m, orient: o }, 0)
            }
            3 if w > 0 => {
                let k = if p + 1 < w && rng.gen_bool(0.5) { 2 } else { 1 };
                let total: i64 = row[p..p + k].iter().map(|(m, o)| m * o.sign()).sum();
                let mut outputs: Vec<GradedStrand> = (0..rng.gen_range(0..=1)).map(|_| strand(rng)).collect();
                let rest: i64 = outputs.iter().map(|(m, o)| m * o.sign()).sum();
                let o = orient(rng);
                outputs.push(((total - rest) * o.sign(), o));
                (StringToken::Coupon { inputs: k, outputs }, k)
            }
            _ => continue,
        };
        let mut slice = vec![StringToken::Id; p.min(w)];
        slice.push(tok);
        slice.extend(std::iter::repeat(StringToken::Id).take(w - p.min(w) - k));
        row = ribbon_cochain::strings::apply_string_slice(&row, &slice).unwrap().0;
        out.push(slice);
    }
    GradedStringDiagram { source, target: row, slices: out }
}

/// The same diagram over complexes of vector spaces: a line `k(m)` becomes
/// `k` concentrated in degree `m`, coupons become the tautological maps.
fn as_complexes(d: &GradedStringDiagram) -> ChainDiagram<Cyclo> {
    let t = trivial_category::<Cyclo>();
    let mut degrees: Vec<i64> = d.source.iter().chain(&d.target).map(|s| s.0).collect();
    for slice in &d.slices {
        for tok in slice {
            match tok {
                StringToken::Cup { degree, .. } => degrees.push(*degree),
                StringToken::Coupon { outputs, .. } => degrees.extend(outputs.iter().map(|s| s.0)),
                _ => {}
            }
        }
    }
    degrees.sort();
    degrees.dedup();
    let index: BTreeMap<i64, usize> = degrees.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let labels: Vec<ChainObject<Cyclo>> = degrees.iter().map(|m| ChainObject::concentrated(RepObject::vector_space(1), *m)).collect();
    let lift = |s: &GradedStrand| Strand { label: index[&s.0], orient: s.1 };
    let obj = |s: &GradedStrand| {
        let x = &labels[index[&s.0]];
        if s.1 == Orient::Pos {
            x.clone()
        } else {
            dual_chain(&t, x)
        }
    };
    let mut cd = RibbonDiagram::new(labels.clone(), d.source.iter().map(lift).collect());
    let mut row = d.source.clone();
    for slice in &d.slices {
        let mut pos = 0;
        let mut tokens = Vec::new();
        for tok in slice {
            tokens.push(match tok {
                StringToken::Id => {
                    pos += 1;
                    Token::Id
                }
                StringToken::Cross => {
                    pos += 2;
                    Token::CrossPos
                }
                StringToken::Cap => {
                    pos += 2;
                    Token::Cap
                }
                StringToken::Cup { degree, orient } => Token::Cup { label: index[degree], orient: *orient },
                StringToken::Coupon { inputs, outputs } => {
                    let src = &row[pos..pos + inputs];
                    pos += inputs;
                    let n: i64 = src.iter().map(|(m, o)| m * o.sign()).sum();
                    let map = ribbon_cochain::words::WordMap::new(
                        src.iter().map(obj).collect(),
                        outputs.iter().map(obj).collect(),
                        BTreeMap::from([(n, Matrix::identity(1))]),
                    )
                    .unwrap();
                    let i = cd.add_coupon("c", src.iter().map(lift).collect(), outputs.iter().map(lift).collect(), map);
                    Token::Coupon { index: i }
                }
            });
        }
        row = ribbon_cochain::strings::apply_string_slice(&row, slice).unwrap().0;
        cd.push_slice(tokens);
    }
    cd
}

#[test]
fn loops_and_relations_for_small_degrees() {
    for m in -3..=3 {
        for o in [Orient::Pos, Orient::Neg] {
            assert_eq!(eval_string(&loop_diagram(m, o)).unwrap(), parity_sign(m));
        }
        let (c, s, sign) = uncrossing_pair(m);
        assert_eq!(sign, parity_sign(m * m));
        assert!(check_relation(&c, &s, sign).unwrap());
        for m2 in -3..=3 {
            let (b, p) = hook_below_pair(m, m2, Orient::Neg);
            assert!(check_relation(&b, &p, parity_sign(m)).unwrap());
            let (b, p) = hook_above_pair(m, m2, Orient::Pos);
            assert!(check_relation(&b, &p, parity_sign(m)).unwrap());
            let (b, p) = hook_below_pair(m, m2, Orient::Pos);
            assert!(check_relation(&b, &p, 1).unwrap());
            let (b, p) = hook_above_pair(m, m2, Orient::Neg);
            assert!(check_relation(&b, &p, 1).unwrap());
            let (a, b) = coupon_composition_pair(m, m2, m - m2);
            assert!(check_relation(&a, &b, 1).unwrap());
        }
    }
}

#[test]
fn bad_diagrams_are_rejected() {
    let unbalanced = GradedStringDiagram {
        source: vec![(1, Orient::Pos)],
        target: vec![(2, Orient::Pos)],
        slices: vec![vec![StringToken::Coupon { inputs: 1, outputs: vec![(2, Orient::Pos)] }]],
    };
    assert!(eval_string(&unbalanced).is_err());
    let mismatched_cap = GradedStringDiagram { source: vec![(1, Orient::Pos), (2, Orient::Neg)], target: vec![], slices: vec![vec![StringToken::Cap]] };
    assert!(eval_string(&mismatched_cap).is_err());
    let wrong_target = GradedStringDiagram { source: vec![(1, Orient::Pos)], target: vec![], slices: vec![] };
    assert!(eval_string(&wrong_target).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn signs_agree_with_complexes_of_vector_spaces(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let d = random_diagram(&mut rng, 8);
        let t = trivial_category::<Cyclo>();
        let value = evaluate(&ChainCategory::new(&t), &as_complexes(&d)).unwrap();
        let comps: Vec<&Matrix<Cyclo>> = value.components().values().collect();
        prop_assert_eq!(comps.len(), 1);
        prop_assert_eq!(comps[0].shape(), (1, 1));
        prop_assert_eq!(comps[0].get(0, 0), Cyclo::from_i64(eval_string(&d).unwrap()));
    }

    #[test]
    fn side_by_side_multiplies_signs(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b) = (random_diagram(&mut rng, 6), random_diagram(&mut rng, 6));
        let mut slices: Vec<Vec<StringToken>> =
            a.slices.iter().map(|s| s.iter().cloned().chain(std::iter::repeat(StringToken::Id).take(b.source.len())).collect()).collect();
        slices.extend(b.slices.iter().map(|s| std::iter::repeat(StringToken::Id).take(a.target.len()).chain(s.iter().cloned()).collect()));
        let both = GradedStringDiagram { source: [a.source.clone(), b.source.clone()].concat(), target: [a.target.clone(), b.target.clone()].concat(), slices };
        prop_assert_eq!(eval_string(&both).unwrap(), eval_string(&a).unwrap() * eval_string(&b).unwrap());
    }
}
