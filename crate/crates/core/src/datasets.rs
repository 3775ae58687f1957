//! Bundled ribbon Hopf algebras and some of their modules.
//!
//! Twist orientation: the twist acts by the inverse ribbon element, so on the
//! characters `x_j` of `Fun(Z/n)` (with `v = Σ ζ^{-j²} e_j`) it is `ζ^{j²}`.

use num_traits::{One, Zero};

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebraData;
use crate::linalg::Matrix;
use crate::rep::RepObject;
use crate::scalar::Scalar;

/// The ground field as a one-dimensional Hopf algebra with `R = 1⊗1`, `v = 1`.
pub fn trivial<K: Scalar>() -> HopfAlgebraData<K> {
    HopfAlgebraData {
        name: "trivial".into(),
        dim: 1,
        mult: vec![(0, 0, 0, K::one())],
        unit: vec![K::one()],
        comult: vec![(0, 0, 0, K::one())],
        counit: vec![K::one()],
        antipode: vec![(0, 0, K::one())],
        rmatrix: vec![(0, 0, K::one())],
        ribbon: vec![K::one()],
    }
}

/// Functions on `Z/n` in the idempotent basis, with `R = Σ ζ^{ij} e_i⊗e_j`
/// and ribbon element `v = Σ ζ^{-j²} e_j`. Modular for odd `n`.
pub fn fun_zn(n: u32) -> Result<HopfAlgebraData<Cyclo>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let m = n as usize;
    let z = |k: i64| Cyclo::root_of_unity(n, k).expect("positive order");
    let one = z(0);
    let mut mult = Vec::new();
    let mut comult = Vec::new();
    let mut antipode = Vec::new();
    let mut rmatrix = Vec::new();
    for i in 0..m {
        mult.push((i, i, i, one.clone()));
        antipode.push(((m - i) % m, i, one.clone()));
        for j in 0..m {
            comult.push((i, j, (i + m - j) % m, one.clone()));
            rmatrix.push((i, j, z((i * j) as i64)));
        }
    }
    let counit = (0..m).map(|j| if j == 0 { one.clone() } else { Cyclo::zero() }).collect();
    let ribbon = (0..m).map(|j| z(-((j * j) as i64))).collect();
    Ok(HopfAlgebraData {
        name: format!("fun_z{n}"),
        dim: m,
        mult,
        unit: vec![one; m],
        comult,
        counit,
        antipode,
        rmatrix,
        ribbon,
    })
}

/// Sweedler's four-dimensional algebra `⟨g, x | g² = 1, x² = 0, xg = -gx⟩`
/// in the basis `1, g, x, gx`, with the triangular R-matrix family `R_α`
/// and ribbon element `1`. Not semisimple.
pub fn sweedler<K: Scalar>(alpha: K) -> HopfAlgebraData<K> {
    let o = K::one;
    let neg = || -K::one();
    let half = K::from_i64(2).inv().expect("characteristic zero");
    let ha = half.mul_ref(&alpha);
    let mut mult = Vec::new();
    for a in 0..4 {
        mult.push((0, a, a, o()));
        if a != 0 {
            mult.push((a, 0, a, o()));
        }
    }
    mult.extend([
        (1, 1, 0, o()),
        (1, 2, 3, o()),
        (1, 3, 2, o()),
        (2, 1, 3, neg()),
        (3, 1, 2, neg()),
    ]);
    let comult = vec![
        (0, 0, 0, o()),
        (1, 1, 1, o()),
        (2, 2, 0, o()),
        (2, 1, 2, o()),
        (3, 3, 1, o()),
        (3, 0, 3, o()),
    ];
    let antipode = vec![(0, 0, o()), (1, 1, o()), (3, 2, neg()), (2, 3, o())];
    let mut rmatrix = vec![
        (0, 0, half.clone()),
        (0, 1, half.clone()),
        (1, 0, half.clone()),
        (1, 1, -half.clone()),
    ];
    if !alpha.is_zero() {
        rmatrix.extend([(2, 2, ha.clone()), (2, 3, -ha.clone()), (3, 3, ha.clone()), (3, 2, ha)]);
    }
    HopfAlgebraData {
        name: "sweedler".into(),
        dim: 4,
        mult,
        unit: vec![o(), K::zero(), K::zero(), K::zero()],
        comult,
        counit: vec![o(), o(), K::zero(), K::zero()],
        antipode,
        rmatrix,
        ribbon: vec![o(), K::zero(), K::zero(), K::zero()],
    }
}

/// The one-dimensional module `x_a` of `Fun(Z/n)`: `e_j` acts by `δ_{ja}`.
pub fn fun_zn_character(n: u32, a: i64) -> RepObject<Cyclo> {
    let m = n as usize;
    let a = a.rem_euclid(n as i64) as usize;
    let actions = (0..m)
        .map(|j| Matrix::scalar(1, if j == a { Cyclo::one() } else { Cyclo::zero() }))
        .collect();
    RepObject::new(1, actions)
}

/// One-dimensional Sweedler modules: `g ↦ ±1`, `x ↦ 0`.
pub fn sweedler_character<K: Scalar>(positive: bool) -> RepObject<K> {
    let s = if positive { K::one() } else { -K::one() };
    let actions = vec![Matrix::scalar(1, K::one()), Matrix::scalar(1, s.clone()), Matrix::zeros(1, 1), Matrix::zeros(1, 1)];
    RepObject::new(1, actions)
}

/// The two-dimensional projective Sweedler module with basis `w, x·w` and `g w = w`.
pub fn sweedler_projective<K: Scalar>() -> RepObject<K> {
    let g = Matrix::from_triples(2, 2, [(0, 0, K::one()), (1, 1, -K::one())]);
    let x = Matrix::from_triples(2, 2, [(1, 0, K::one())]);
    let gx = g.mul(&x);
    RepObject::new(2, vec![Matrix::identity(2), g, x, gx])
}

/// Bundled datasets by name, over cyclotomic scalars.
pub fn builtin(name: &str) -> Option<HopfAlgebraData<Cyclo>> {
    match name {
        "trivial" => Some(trivial()),
        "sweedler" => Some(sweedler(Cyclo::zero())),
        "sweedler_alpha1" => {
            let mut h = sweedler(Cyclo::one());
            h.name = "sweedler_alpha1".into();
            Some(h)
        }
        _ => {
            let n: u32 = name.strip_prefix("fun_z")?.parse().ok()?;
            fun_zn(n).ok()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify_hopf_ribbon;
    use num_rational::BigRational;

    #[test]
    fn sweedler_is_ribbon() {
        let h = sweedler::<BigRational>(BigRational::zero());
        assert_eq!(verify_hopf_ribbon(&h).unwrap(), Vec::<String>::new());
        let h1 = sweedler::<BigRational>(BigRational::one());
        assert_eq!(verify_hopf_ribbon(&h1).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn fun_z5_is_ribbon() {
        assert!(verify_hopf_ribbon(&fun_zn(5).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("fun_z3").unwrap().dim, 3);
        assert_eq!(builtin("sweedler").unwrap().dim, 4);
        assert!(builtin("fun_zx").is_none());
    }
}
