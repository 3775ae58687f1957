//! Acceptance suite: one PASS/FAIL line per criterion. Fixed seeds, exact
//! arithmetic throughout. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ribbon_cochain::cochain::{find_homotopy, hom_complex, is_homotopy_equivalence, tensor_chain, ChainMap, ChainObject};
use ribbon_cochain::corpus::{self, braid_closure};
use ribbon_cochain::diagram::{evaluate, evaluate_closed, evaluate_separated, graded_link_invariant, Orient, RepDiagram, RibbonDiagram, Strand, Token};
use ribbon_cochain::hopf::verify_hopf_ribbon;
use ribbon_cochain::io::Loader;
use ribbon_cochain::rep::{RepCategory, RepObject};
use ribbon_cochain::ribbon::ChainCategory;
use ribbon_cochain::skein::{applicable_moves, apply_skein, elementary, random_skein, SkeinMove};
use ribbon_cochain::strings::{check_relation, eval_string, hook_above_pair, hook_below_pair, loop_diagram, parity_sign, uncrossing_pair};
use ribbon_cochain::tqft::{
    bordism_map, compose_tuples, monoidality_check, state_complex, state_differential_explicit, trivial_category, verify_homotopy_preservation,
    MarkedSurface,
};
use ribbon_cochain::{datasets, Cyclo, Scalar};

type Outcome = Result<String, String>;
type Cat = &'static RepCategory<Cyclo>;
type Pool = &'static [RepObject<Cyclo>];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: ribbon_cochain::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn named(name: &str) -> (Cat, Pool) {
    let (_, cat, pool) = common::bundled().iter().find(|(n, _, _)| *n == name).expect("bundled dataset");
    (cat, pool)
}

fn sign(rng: &mut ChaCha8Rng) -> Orient {
    if rng.gen_bool(0.5) {
        Orient::Pos
    } else {
        Orient::Neg
    }
}

fn surface(cat: &RepCategory<Cyclo>, pool: &[RepObject<Cyclo>], genus: usize, marks: usize, width: usize, rng: &mut ChaCha8Rng) -> MarkedSurface<Cyclo> {
    let m = (0..marks).map(|_| (corpus::complex(cat, pool, width, rng), sign(rng))).collect();
    MarkedSurface::new(genus, m)
}

fn category_axioms() -> Outcome {
    let mut mutants = 0;
    for name in ["trivial", "fun_z3", "fun_z5", "sweedler", "sweedler_alpha1"] {
        let h = datasets::builtin(name).expect("bundled");
        let report = lib(verify_hopf_ribbon(&h))?;
        ensure(report.is_empty(), || format!("{name}: {report:?}"))?;
        let oracle = common::brute_force_axioms(&h);
        ensure(oracle.is_empty(), || format!("{name}: oracle finds {oracle:?}"))?;
        for (what, bad) in common::mutations(&h) {
            let caught = lib(verify_hopf_ribbon(&bad))?;
            ensure(!caught.is_empty(), || format!("{name}: broken {what} not detected"))?;
            ensure(!common::brute_force_axioms(&bad).is_empty(), || format!("{name}: oracle misses broken {what}"))?;
            mutants += 1;
        }
    }
    Ok(format!("5 datasets clean, {mutants}/{mutants} single-tensor mutations detected"))
}

/// A diagram with the braid relation pattern, which random diagrams rarely contain.
fn braid_pattern(pool: &[RepObject<Cyclo>], rng: &mut ChaCha8Rng) -> RepDiagram<Cyclo> {
    let cross = if rng.gen_bool(0.5) { Token::CrossPos } else { Token::CrossNeg };
    let source = (0..3).map(|_| Strand { label: rng.gen_range(0..pool.len()), orient: sign(rng) }).collect();
    let mut d = RibbonDiagram::new(pool.to_vec(), source);
    for p in [0, 1, 0] {
        let mut slice = vec![Token::Id];
        slice.insert(p, cross.clone());
        d.push_slice(slice);
    }
    d
}

fn skein_invariance() -> Outcome {
    let mut rng = common::rng(2);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut total = 0;
    for (round, (name, cat, pool)) in common::bundled().iter().cycle().take(48).enumerate() {
        let mut d = if round % 4 == 0 { braid_pattern(pool, &mut rng) } else { lib(elementary(&corpus::rep_diagram(cat, pool.clone(), 6, 3, &mut rng)))? };
        let want = lib(evaluate(cat, &d))?;
        for _ in 0..6 {
            // favour the kind used least so far, so rare moves get their share
            let moves = lib(applicable_moves(&d))?;
            let Some(&(mv, loc)) = moves.iter().min_by_key(|(m, _)| counts.get(&format!("{m:?}")).copied().unwrap_or(0)) else { break };
            let next = lib(apply_skein(cat, &d, mv, loc))?;
            ensure(lib(evaluate(cat, &next))? == want, || format!("{name}: {mv:?} changed the value"))?;
            *counts.entry(format!("{mv:?}")).or_default() += 1;
            total += 1;
            d = next;
        }
    }
    for (round, (name, cat, pool)) in common::bundled().iter().cycle().take(10).enumerate() {
        let ch = ChainCategory::new(cat);
        let labels = vec![corpus::complex(cat, pool, 2, &mut rng), corpus::complex(cat, pool, 1, &mut rng)];
        let mut d = lib(elementary(&corpus::chain_diagram(cat, labels, 5, 3, &mut rng)))?;
        let want = lib(evaluate(&ch, &d))?;
        for _ in 0..4 {
            let (mv, next) = lib(random_skein(&ch, &d, &mut rng))?;
            ensure(lib(evaluate(&ch, &next))? == want, || format!("{name} (complexes, round {round}): {mv:?} changed the value"))?;
            *counts.entry(format!("{mv:?}")).or_default() += 1;
            total += 1;
            d = next;
        }
    }
    ensure(total >= 200, || format!("only {total} moves"))?;
    let missing: Vec<String> = SkeinMove::ALL.iter().map(|m| format!("{m:?}")).filter(|m| !counts.contains_key(m)).collect();
    ensure(missing.is_empty(), || format!("never exercised: {missing:?}"))?;
    Ok(format!("{total} moves, values unchanged; by kind {counts:?}"))
}

fn sign_relations() -> Outcome {
    let t = trivial_category::<Cyclo>();
    let mut checked = 0;
    for m in -3..=3 {
        let (c, s, sgn) = uncrossing_pair(m);
        ensure(sgn == parity_sign(m * m) && lib(check_relation(&c, &s, sgn))?, || format!("uncrossing at m = {m}"))?;
        for m2 in -3..=3 {
            let (b, p) = hook_below_pair(m, m2, Orient::Neg);
            ensure(lib(check_relation(&b, &p, parity_sign(m)))?, || format!("bent leg below, m = {m}, {m2}"))?;
            let (b, p) = hook_above_pair(m, m2, Orient::Pos);
            ensure(lib(check_relation(&b, &p, parity_sign(m)))?, || format!("bent leg above, m = {m}, {m2}"))?;
            checked += 2;
        }
        for o in [Orient::Pos, Orient::Neg] {
            ensure(lib(eval_string(&loop_diagram(m, o)))? == parity_sign(m), || format!("loop k({m})"))?;
        }
        // the same loop over complexes of vector spaces
        let unknot = braid_closure(vec![ChainObject::concentrated(RepObject::vector_space(1), m)], 1, &[], &[0], |_| 0);
        ensure(lib(graded_link_invariant(&t, &unknot))? == Cyclo::from_i64(parity_sign(m)), || format!("unknot on k({m})"))?;
        checked += 4;
    }
    Ok(format!("{checked} relations and loops for m in [-3, 3]"))
}

fn d_squared() -> Outcome {
    let mut n = 0;
    for (i, (name, cat, pool)) in common::bundled().iter().enumerate() {
        let mut rng = common::rng(40 + i as u64);
        for genus in 0..=2 {
            for marks in 0..=3 {
                let s = surface(cat, pool, genus, marks, 3, &mut rng);
                let z = state_complex(cat, &s);
                ensure(z.complex.squares_to_zero(), || format!("{name}: genus {genus}, {marks} markings"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} state complexes (5 categories, g <= 2, <= 3 markings, width <= 3)"))
}

fn explicit_differential() -> Outcome {
    let mut n = 0;
    for (i, (name, cat, pool)) in common::bundled().iter().enumerate() {
        let mut rng = common::rng(50 + i as u64);
        for genus in 0..=2 {
            for marks in 0..=3 {
                let s = surface(cat, pool, genus, marks, 3, &mut rng);
                let explicit = lib(state_differential_explicit(cat, &s))?;
                ensure(explicit.complex == state_complex(cat, &s).complex, || format!("{name}: genus {genus}, {marks} markings"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} surfaces, both constructions identical"))
}

fn separation() -> Outcome {
    let mut rng = common::rng(6);
    let mut n = 0;
    for (name, cat, pool) in common::bundled().iter().cycle().take(120) {
        let labels = vec![corpus::complex(cat, pool, 3, &mut rng), corpus::complex(cat, pool, 2, &mut rng)];
        let d = corpus::chain_diagram(cat, labels, 6, 3, &mut rng);
        let sep = lib(evaluate_separated(cat, &d))?;
        ensure(sep == lib(evaluate(&ChainCategory::new(cat), &d))?, || format!("{name}: diagram {n}"))?;
        n += 1;
    }
    Ok(format!("{n} diagrams"))
}

fn functoriality() -> Outcome {
    let mut rng = common::rng(7);
    let mut n = 0;
    for (name, cat, pool) in common::bundled().iter().cycle().take(20) {
        let genus = rng.gen_range(0..=1);
        let signs: Vec<Orient> = (0..rng.gen_range(1..=2)).map(|_| sign(&mut rng)).collect();
        let xs: Vec<Vec<ChainObject<Cyclo>>> = (0..3).map(|_| signs.iter().map(|_| corpus::complex(cat, pool, 2, &mut rng)).collect()).collect();
        let surf = |k: usize| MarkedSurface::new(genus, xs[k].iter().cloned().zip(signs.iter().copied()).collect());
        let mut maps = |from: usize, to: usize| -> Vec<ChainMap<Cyclo>> {
            signs
                .iter()
                .enumerate()
                .map(|(i, s)| match s {
                    Orient::Pos => corpus::chain_map(cat, &xs[from][i], &xs[to][i], &mut rng),
                    Orient::Neg => corpus::chain_map(cat, &xs[to][i], &xs[from][i], &mut rng),
                })
                .collect()
        };
        let (f, g) = (maps(0, 1), maps(1, 2));
        let bf = lib(bordism_map(cat, &surf(0), &surf(1), &f))?;
        let bg = lib(bordism_map(cat, &surf(1), &surf(2), &g))?;
        ensure(bf.is_chain_map() && bg.is_chain_map(), || format!("{name}: cylinder map is not a chain map"))?;
        let gf = lib(compose_tuples(&surf(0), &f, &g))?;
        ensure(lib(bordism_map(cat, &surf(0), &surf(2), &gf))? == lib(bg.compose(&bf))?, || format!("{name}: composition law"))?;
        n += 1;
    }
    Ok(format!("{n} composable pairs of cylinders"))
}

fn homotopy_preservation() -> Outcome {
    let mut rng = common::rng(8);
    let t = trivial_category::<Cyclo>();
    let (mut states, mut relabels, mut knots) = (0, 0, 0);
    for (name, cat, pool) in common::bundled().iter().cycle().take(15) {
        let s = surface(cat, pool, rng.gen_range(0..=1), rng.gen_range(1..=2), 2, &mut rng);
        let eqs = s
            .markings
            .iter()
            .map(|m| lib(is_homotopy_equivalence(cat, &corpus::equivalence(cat, pool, &m.complex, &mut rng)))?.ok_or("perturbed inclusion rejected".to_string()))
            .collect::<Result<Vec<_>, String>>()?;
        let w = lib(verify_homotopy_preservation(cat, &s, &eqs))?;
        let e = &w.equivalence;
        ensure(e.verify(), || format!("{name}: state witness does not verify"))?;
        let gf = lib(e.inverse.compose(&e.map))?;
        let fg = lib(e.map.compose(&e.inverse))?;
        ensure(lib(find_homotopy(&t, &gf, &ChainMap::identity(&e.map.source)))?.is_some(), || format!("{name}: g∘f"))?;
        ensure(lib(find_homotopy(&t, &fg, &ChainMap::identity(&e.map.target)))?.is_some(), || format!("{name}: f∘g"))?;
        states += 1;
    }
    for (name, cat, pool) in common::bundled().iter().cycle().take(20) {
        let x = corpus::complex(cat, pool, 2, &mut rng);
        let y = corpus::complex(cat, pool, 2, &mut rng);
        let x2 = corpus::equivalence(cat, pool, &x, &mut rng).target;
        let strands = rng.gen_range(1..=3);
        let word = corpus::braid_word(strands, rng.gen_range(0..5), &mut rng);
        let twists = vec![0; strands];
        let v = |labels: Vec<ChainObject<Cyclo>>| lib(graded_link_invariant(cat, &braid_closure(labels, strands, &word, &twists, |c| c % 2)));
        ensure(v(vec![x.clone(), y.clone()])? == v(vec![x2, y])?, || format!("{name}: relabeling changed a link value"))?;
        relabels += 1;

        let (strands, word) = common::knot_word(&mut rng);
        let twists: Vec<i64> = (0..strands).map(|_| rng.gen_range(-1..=1)).collect();
        let whole = lib(graded_link_invariant(cat, &braid_closure(vec![x.clone()], strands, &word, &twists, |_| 0)))?;
        let mut sum = Cyclo::from_i64(0);
        for n in x.degrees() {
            let d: RepDiagram<Cyclo> = braid_closure(vec![x.component_or_zero(n)], strands, &word, &twists, |_| 0);
            let v = lib(evaluate_closed(cat, &d))?;
            sum = if n.rem_euclid(2) == 0 { sum + v } else { sum - v };
        }
        ensure(whole == sum, || format!("{name}: knot value is not the alternating sum"))?;
        knots += 1;
    }
    Ok(format!("{states} state equivalences, {relabels} relabeled links, {knots} knot alternating sums"))
}

/// Invariants of `Ad^{⊗g}`, counted by stacking `a - ε(a)` over a basis.
fn invariant_count(cat: &RepCategory<Cyclo>, g: usize) -> usize {
    use ribbon_cochain::linalg::Matrix;
    let w = cat.tensor_all(vec![cat.adjoint(); g].iter());
    let unit = cat.unit();
    let blocks: Vec<Matrix<Cyclo>> = w.actions.iter().zip(&unit.actions).map(|(a, e)| a.sub(&Matrix::scalar(w.dim, e.get(0, 0)))).collect();
    w.dim - Matrix::vstack(&blocks, w.dim).rank()
}

fn dimensions() -> Outcome {
    for n in [3u32, 5] {
        let (cat, _) = named(&format!("fun_z{n}"));
        for g in 0..=3 {
            let want = (n as usize).pow(g as u32);
            let got = state_complex(cat, &MarkedSurface::unmarked(g)).dim(0);
            ensure(got == want && invariant_count(cat, g) == want, || format!("Fun(Z/{n}), genus {g}: {got} != {want}"))?;
        }
    }
    let mut rng = common::rng(9);
    let mut pairs = 0;
    for (name, cat, pool) in common::bundled() {
        for _ in 0..3 {
            let x = corpus::object(cat, pool, &mut rng);
            let y = corpus::object(cat, pool, &mut rng);
            let base = cat.hom_space(&x, &y).len();
            for m in -2..=2 {
                for n in -2..=2 {
                    let src = tensor_chain(cat, &ChainObject::concentrated(cat.unit(), m), &ChainObject::concentrated(x.clone(), 0));
                    let tgt = tensor_chain(cat, &ChainObject::concentrated(cat.unit(), n), &ChainObject::concentrated(y.clone(), 0));
                    let got = hom_complex(cat, &src, &tgt).dim(0);
                    ensure(got == if m == n { base } else { 0 }, || format!("{name}: m = {m}, n = {n}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("n^g for n in {{3, 5}}, g <= 3; {pairs} graded Hom factorizations"))
}

fn surfaces_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/surfaces")
}

fn monoidality() -> Outcome {
    let loader = Loader::default();
    let mut by_category: BTreeMap<String, (RepCategory<Cyclo>, Vec<(String, MarkedSurface<Cyclo>)>)> = BTreeMap::new();
    let mut files: Vec<PathBuf> = std::fs::read_dir(surfaces_dir()).map_err(|e| e.to_string())?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    files.sort();
    for p in files {
        let v = lib(loader.read(&p))?;
        let base = p.parent().unwrap().to_path_buf();
        let (cname, h) = lib(loader.category_for(&v, &base))?;
        let entry = by_category.entry(cname).or_insert_with(|| (RepCategory::new(h).expect("bundled category"), Vec::new()));
        let s = lib(loader.surface(&entry.0, &v, &base))?;
        entry.1.push((p.file_name().unwrap().to_string_lossy().into_owned(), s));
    }
    let mut n = 0;
    for (cat, list) in by_category.values() {
        for (a, s0) in list {
            for (b, s1) in list {
                let r = lib(monoidality_check(cat, s0, s1))?;
                ensure(r.holds(), || format!("{a} ⊔ {b}: {r:?}"))?;
                n += 1;
            }
        }
    }
    let (z3, _) = named("fun_z3");
    for g0 in 0..=2 {
        for g1 in 0..=2 {
            ensure(lib(monoidality_check(z3, &MarkedSurface::unmarked(g0), &MarkedSurface::unmarked(g1)))?.holds(), || format!("Fun(Z/3) genus {g0} ⊔ {g1}"))?;
            n += 1;
        }
    }
    let t = trivial_category::<Cyclo>();
    let mut rng = common::rng(10);
    let pool = [RepObject::vector_space(1), RepObject::vector_space(2)];
    for _ in 0..10 {
        let s0 = surface(&t, &pool, rng.gen_range(0..=1), rng.gen_range(0..=2), 3, &mut rng);
        let s1 = surface(&t, &pool, rng.gen_range(0..=1), rng.gen_range(0..=2), 3, &mut rng);
        ensure(lib(monoidality_check(&t, &s0, &s1))?.holds(), || "shifted marked spheres over vector spaces".to_string())?;
        n += 1;
    }
    Ok(format!("{n} disjoint unions are chain isomorphisms"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("category axioms and mutation detection", category_axioms),
        ("skein invariance", skein_invariance),
        ("sign relations and loops", sign_relations),
        ("d^2 = 0 on state complexes", d_squared),
        ("explicit differential equals the Hom differential", explicit_differential),
        ("separated evaluation equals direct evaluation", separation),
        ("cylinder maps are functorial chain maps", functoriality),
        ("homotopy preservation", homotopy_preservation),
        ("dimension counts", dimensions),
        ("monoidality on disjoint unions", monoidality),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
