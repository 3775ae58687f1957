//! The strict ribbon structure used by diagram evaluation, realized by
//! `rep(H)` and by its category of bounded complexes.
//!
//! Morphisms act on words of objects; tensoring concatenates words, so
//! associators never appear.

use std::fmt::Debug;

use crate::cochain::{
    braiding_chain, coev_chain, coev_right_chain, dual_chain, ev_chain, ev_right_chain, twist_chain, ChainObject,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{RepCategory, RepObject};
use crate::scalar::Scalar;
use crate::words::{tensor_word_maps, WordMap};

pub trait RibbonCategory<K: Scalar>: Sync {
    type Object: Clone + Debug + PartialEq + Send + Sync;
    type Morphism: Clone + Debug + PartialEq + Send + Sync;

    fn dual(&self, x: &Self::Object) -> Self::Object;
    fn identity(&self, word: &[Self::Object]) -> Self::Morphism;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;
    fn tensor(&self, parts: &[Self::Morphism]) -> Self::Morphism;
    /// `c_{x,y}: x⊗y → y⊗x`, or with `inverse` set, `c_{y,x}^{-1}: x⊗y → y⊗x`.
    fn braiding(&self, x: &Self::Object, y: &Self::Object, inverse: bool) -> Self::Morphism;
    fn twist(&self, x: &Self::Object, inverse: bool) -> Self::Morphism;
    /// `x* ⊗ x → 1`.
    fn ev(&self, x: &Self::Object) -> Self::Morphism;
    /// `1 → x ⊗ x*`.
    fn coev(&self, x: &Self::Object) -> Self::Morphism;
    /// `x ⊗ x* → 1`.
    fn ev_right(&self, x: &Self::Object) -> Self::Morphism;
    /// `1 → x* ⊗ x`.
    fn coev_right(&self, x: &Self::Object) -> Self::Morphism;
    /// `f + c·g`.
    fn add_scaled(&self, f: &Self::Morphism, c: &K, g: &Self::Morphism) -> Result<Self::Morphism>;
    fn scale(&self, c: &K, f: &Self::Morphism) -> Self::Morphism;
    /// The scalar of an endomorphism of the unit.
    fn closed_scalar(&self, f: &Self::Morphism) -> Result<K>;

    /// `ev ∘ c_{x,x*} ∘ (θ⊗1)`, for cross-checking [`RibbonCategory::ev_right`].
    fn ev_right_derived(&self, x: &Self::Object) -> Result<Self::Morphism> {
        let xd = self.dual(x);
        let t = self.tensor(&[self.twist(x, false), self.identity(std::slice::from_ref(&xd))]);
        let c = self.braiding(x, &xd, false);
        self.compose(&self.ev(x), &self.compose(&c, &t)?)
    }

    /// `(1⊗θ) ∘ c_{x,x*} ∘ coev`.
    fn coev_right_derived(&self, x: &Self::Object) -> Result<Self::Morphism> {
        let xd = self.dual(x);
        let c = self.braiding(x, &xd, false);
        let t = self.tensor(&[self.identity(std::slice::from_ref(&xd)), self.twist(x, false)]);
        self.compose(&t, &self.compose(&c, &self.coev(x))?)
    }
}

impl<K: Scalar> RibbonCategory<K> for RepCategory<K> {
    type Object = RepObject<K>;
    type Morphism = Matrix<K>;

    fn dual(&self, x: &RepObject<K>) -> RepObject<K> {
        RepCategory::dual(self, x)
    }

    fn identity(&self, word: &[RepObject<K>]) -> Matrix<K> {
        Matrix::identity(word.iter().map(|x| x.dim).product())
    }

    fn compose(&self, g: &Matrix<K>, f: &Matrix<K>) -> Result<Matrix<K>> {
        g.try_mul(f)
    }

    fn tensor(&self, parts: &[Matrix<K>]) -> Matrix<K> {
        Matrix::kron_all(parts)
    }

    fn braiding(&self, x: &RepObject<K>, y: &RepObject<K>, inverse: bool) -> Matrix<K> {
        if inverse {
            self.braiding_inv(y, x)
        } else {
            RepCategory::braiding(self, x, y)
        }
    }

    fn twist(&self, x: &RepObject<K>, inverse: bool) -> Matrix<K> {
        if inverse {
            self.twist_inv(x)
        } else {
            RepCategory::twist(self, x)
        }
    }

    fn ev(&self, x: &RepObject<K>) -> Matrix<K> {
        RepCategory::ev(self, x)
    }

    fn coev(&self, x: &RepObject<K>) -> Matrix<K> {
        RepCategory::coev(self, x)
    }

    fn ev_right(&self, x: &RepObject<K>) -> Matrix<K> {
        RepCategory::ev_right(self, x)
    }

    fn coev_right(&self, x: &RepObject<K>) -> Matrix<K> {
        RepCategory::coev_right(self, x)
    }

    fn add_scaled(&self, f: &Matrix<K>, c: &K, g: &Matrix<K>) -> Result<Matrix<K>> {
        if f.shape() != g.shape() {
            return Err(Error::Shape("parallel morphisms expected".into()));
        }
        Ok(f.add_scaled(c, g))
    }

    fn scale(&self, c: &K, f: &Matrix<K>) -> Matrix<K> {
        f.scale(c)
    }

    fn closed_scalar(&self, f: &Matrix<K>) -> Result<K> {
        if f.shape() != (1, 1) {
            return Err(Error::Shape(format!("closed diagram expected, got {:?}", f.shape())));
        }
        Ok(f.get(0, 0))
    }
}

/// Bounded complexes over `rep(H)`.
#[derive(Clone, Copy, Debug)]
pub struct ChainCategory<'a, K> {
    pub rep: &'a RepCategory<K>,
}

impl<'a, K: Scalar> ChainCategory<'a, K> {
    pub fn new(rep: &'a RepCategory<K>) -> Self {
        ChainCategory { rep }
    }

    fn wrap(&self, source: Vec<ChainObject<K>>, target: Vec<ChainObject<K>>, f: &crate::cochain::ChainMap<K>) -> WordMap<K> {
        WordMap::from_chain_map(source, target, f).expect("structure maps have degree 0")
    }
}

impl<K: Scalar> RibbonCategory<K> for ChainCategory<'_, K> {
    type Object = ChainObject<K>;
    type Morphism = WordMap<K>;

    fn dual(&self, x: &ChainObject<K>) -> ChainObject<K> {
        dual_chain(self.rep, x)
    }

    fn identity(&self, word: &[ChainObject<K>]) -> WordMap<K> {
        WordMap::identity(word.to_vec())
    }

    fn compose(&self, g: &WordMap<K>, f: &WordMap<K>) -> Result<WordMap<K>> {
        g.compose(f)
    }

    fn tensor(&self, parts: &[WordMap<K>]) -> WordMap<K> {
        tensor_word_maps(parts)
    }

    fn braiding(&self, x: &ChainObject<K>, y: &ChainObject<K>, inverse: bool) -> WordMap<K> {
        self.wrap(vec![x.clone(), y.clone()], vec![y.clone(), x.clone()], &braiding_chain(self.rep, x, y, inverse))
    }

    fn twist(&self, x: &ChainObject<K>, inverse: bool) -> WordMap<K> {
        self.wrap(vec![x.clone()], vec![x.clone()], &twist_chain(self.rep, x, inverse))
    }

    fn ev(&self, x: &ChainObject<K>) -> WordMap<K> {
        self.wrap(vec![self.dual(x), x.clone()], vec![], &ev_chain(self.rep, x))
    }

    fn coev(&self, x: &ChainObject<K>) -> WordMap<K> {
        self.wrap(vec![], vec![x.clone(), self.dual(x)], &coev_chain(self.rep, x))
    }

    fn ev_right(&self, x: &ChainObject<K>) -> WordMap<K> {
        self.wrap(vec![x.clone(), self.dual(x)], vec![], &ev_right_chain(self.rep, x))
    }

    fn coev_right(&self, x: &ChainObject<K>) -> WordMap<K> {
        self.wrap(vec![], vec![self.dual(x), x.clone()], &coev_right_chain(self.rep, x))
    }

    fn add_scaled(&self, f: &WordMap<K>, c: &K, g: &WordMap<K>) -> Result<WordMap<K>> {
        f.add_scaled(c, g)
    }

    fn scale(&self, c: &K, f: &WordMap<K>) -> WordMap<K> {
        f.scale(c)
    }

    fn closed_scalar(&self, f: &WordMap<K>) -> Result<K> {
        if !f.source.is_empty() || !f.target.is_empty() {
            return Err(Error::Shape("closed diagram expected".into()));
        }
        Ok(f.component(0).get(0, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclo;
    use crate::datasets;
    use num_rational::BigRational;

    fn check_right_duality<K: Scalar, C: RibbonCategory<K>>(c: &C, x: &C::Object) {
        assert_eq!(c.ev_right(x), c.ev_right_derived(x).unwrap());
        assert_eq!(c.coev_right(x), c.coev_right_derived(x).unwrap());
    }

    #[test]
    fn right_duality_matches_derivation_in_rep() {
        let s = RepCategory::new(datasets::sweedler::<BigRational>(BigRational::from_integer(1.into()))).unwrap();
        check_right_duality(&s, &datasets::sweedler_projective());
        check_right_duality(&s, &datasets::sweedler_character(false));
        let z = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        for a in 0..3 {
            check_right_duality(&z, &datasets::fun_zn_character(3, a));
        }
        check_right_duality(&z, &z.adjoint());
    }

    #[test]
    fn right_duality_matches_derivation_in_complexes() {
        let z = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        let ch = ChainCategory::new(&z);
        let x1 = datasets::fun_zn_character(3, 1);
        let x2 = datasets::fun_zn_character(3, 2);
        let cx = ChainObject::new(&z, -1, vec![x1.clone(), z.direct_sum(&x1, &x2)], vec![Matrix::from_triples(2, 1, [(0, 0, Cyclo::from_ratio(2, 1))])]).unwrap();
        check_right_duality(&ch, &cx);
        check_right_duality(&ch, &ChainObject::concentrated(x2, 1));
    }
}
