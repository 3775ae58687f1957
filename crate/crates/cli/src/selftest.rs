//! Fast sanity checks behind `ribbon selftest`. The full suite is the
//! `acceptance` test target.

use std::collections::BTreeMap;

use ribbon_cochain::cochain::{find_homotopy, is_homotopy_equivalence, ChainMap, ChainObject};
use ribbon_cochain::corpus::braid_closure;
use ribbon_cochain::datasets;
use ribbon_cochain::diagram::{evaluate_closed, graded_link_invariant, ChainDiagram, RepDiagram};
use ribbon_cochain::hopf::verify_hopf_ribbon;
use ribbon_cochain::linalg::Matrix;
use ribbon_cochain::rep::{RepCategory, RepObject};
use ribbon_cochain::tqft::{state_complex, MarkedSurface};
use ribbon_cochain::{Cyclo, Result, Scalar};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

fn z(n: u32, k: i64) -> Cyclo {
    Cyclo::root_of_unity(n, k).expect("positive order")
}

fn trivial() -> RepCategory<Cyclo> {
    RepCategory::new(datasets::trivial()).expect("trivial algebra")
}

fn k() -> RepObject<Cyclo> {
    RepObject::vector_space(1)
}

/// `k → k` in degrees 0 and 1 with the given differential.
fn two_term(cat: &RepCategory<Cyclo>, d: i64) -> ChainObject<Cyclo> {
    ChainObject::new(cat, 0, vec![k(), k()], vec![Matrix::scalar(1, Cyclo::from_i64(d))]).expect("complex")
}

fn scalars() -> bool {
    z(4, 2) == Cyclo::from_i64(-1)
        && z(3, 0) + z(3, 1) + z(3, 2) == Cyclo::from_i64(0)
        && Cyclo::from_i64(1).inv().map(|one| one == Cyclo::from_i64(1)).unwrap_or(false)
        && z(5, 1).inv().map(|v| v == z(5, 4)).unwrap_or(false)
        && z(6, 2) == z(3, 1)
}

fn categories() -> Result<bool> {
    for name in ["trivial", "fun_z3", "fun_z5", "sweedler", "sweedler_alpha1"] {
        if !verify_hopf_ribbon(&datasets::builtin(name).expect("bundled"))?.is_empty() {
            return Ok(false);
        }
    }
    let mut h = datasets::fun_zn(3)?;
    h.rmatrix[0].2 = h.rmatrix[0].2.clone() + Cyclo::from_i64(1);
    Ok(!verify_hopf_ribbon(&h)?.is_empty())
}

fn state_spaces() -> Result<bool> {
    let t = trivial();
    let z3 = RepCategory::new(datasets::fun_zn(3)?)?;
    let g5 = state_complex(&t, &MarkedSurface::unmarked(5)).cohomology();
    let g2 = state_complex(&z3, &MarkedSurface::unmarked(2)).cohomology();
    let acyclic = MarkedSurface::new(0, vec![(two_term(&t, 1), ribbon_cochain::strings::Orient::Pos)]);
    Ok(g5 == BTreeMap::from([(0, 1)]) && g2 == BTreeMap::from([(0, 9)]) && state_complex(&t, &acyclic).cohomology().is_empty())
}

fn links() -> Result<bool> {
    let t = trivial();
    let unknot = |x: ChainObject<Cyclo>| -> ChainDiagram<Cyclo> { braid_closure(vec![x], 1, &[], &[0], |_| 0) };
    let acyclic = graded_link_invariant(&t, &unknot(two_term(&t, 1)))?;
    let gapped = ChainObject::new(&t, 0, vec![k(), RepObject::vector_space(0), k()], vec![Matrix::zeros(0, 1), Matrix::zeros(1, 0)])?;
    let two = graded_link_invariant(&t, &unknot(gapped))?;
    let z3 = RepCategory::new(datasets::fun_zn(3)?)?;
    let mut phases = true;
    for i in 0..3 {
        for j in 0..3 {
            let labels = vec![datasets::fun_zn_character(3, i), datasets::fun_zn_character(3, j)];
            let d: RepDiagram<Cyclo> = braid_closure(labels, 2, &[(0, true), (0, true)], &[0, 0], |c| c);
            phases &= evaluate_closed(&z3, &d)? == z(3, 2 * i * j);
        }
    }
    Ok(acyclic == Cyclo::from_i64(0) && two == Cyclo::from_i64(2) && phases)
}

fn homotopies() -> Result<bool> {
    let t = trivial();
    let split = two_term(&t, 1);
    let gapped = two_term(&t, 0);
    let same = find_homotopy(&t, &ChainMap::identity(&split), &ChainMap::identity(&split))?.map(|h| h.is_zero()).unwrap_or(false);
    let contract = find_homotopy(&t, &ChainMap::identity(&split), &ChainMap::zero(&split, &split, 0))?.is_some();
    let none = find_homotopy(&t, &ChainMap::identity(&gapped), &ChainMap::zero(&gapped, &gapped, 0))?.is_none();
    let zero = ChainObject::zero(1);
    let inclusion = is_homotopy_equivalence(&t, &ChainMap::zero(&zero, &split, 0))?.map(|e| e.verify()).unwrap_or(false);
    let mismatch = is_homotopy_equivalence(&t, &ChainMap::zero(&zero, &gapped, 0))?.is_none();
    Ok(same && contract && none && inclusion && mismatch)
}

pub fn run() -> Vec<Check> {
    let ok = |r: Result<bool>| r.unwrap_or(false);
    vec![
        Check { name: "cyclotomic arithmetic", passed: scalars() },
        Check { name: "bundled category axioms and a corrupted braiding", passed: ok(categories()) },
        Check { name: "state space ranks", passed: ok(state_spaces()) },
        Check { name: "unknots and Hopf link phases", passed: ok(links()) },
        Check { name: "homotopy search", passed: ok(homotopies()) },
    ]
}
