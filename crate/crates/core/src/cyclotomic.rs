//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is a coefficient vector over the power basis `1, ζ, …, ζ^{φ(N)-1}`
//! after reduction modulo the `N`-th cyclotomic polynomial. Operands of
//! different orders are embedded into the lcm order before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

static CYCLOTOMIC_POLYS: LazyLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Coefficients (constant term first) of the monic `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n > 0);
    if let Some(p) = CYCLOTOMIC_POLYS.read().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    CYCLOTOMIC_POLYS.write().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut q = vec![BigInt::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Euler's totient, which is the degree of `Φ_n`.
pub fn totient(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// Reduce an arbitrary-length polynomial in `ζ_N` to canonical form.
fn reduce(order: u32, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_poly(order);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    let t = &c * BigRational::from_integer(pj.clone());
                    poly[i - deg + j] -= t;
                }
            }
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    /// Build from an unreduced polynomial in `ζ_order`.
    pub fn from_poly(order: u32, poly: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Cyclo { order, coeffs: reduce(order, poly) })
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyclo::from_poly(order, poly)
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclo { order: 1, coeffs: vec![q] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Cyclo::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            // ζ^0 = 1 in every order, and the power basis is reduced.
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into `Q(ζ_m)`; requires `order | m`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroOrder);
        }
        if m % self.order != 0 {
            return Err(Error::IncompatibleOrders(self.order, m));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![BigRational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Cyclo::from_poly(m, poly)
    }

    fn aligned(&self, other: &Self) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        if self.order == other.order {
            return (self.order, self.coeffs.clone(), other.coeffs.clone());
        }
        let m = self.order.lcm(&other.order);
        let a = self.embed(m).expect("lcm is a multiple");
        let b = other.embed(m).expect("lcm is a multiple");
        (m, a.coeffs, b.coeffs)
    }

    /// Strict arithmetic that refuses to embed mismatched orders.
    pub fn checked_op(&self, other: &Self, op: FieldOp, embed: bool) -> Result<Self> {
        if !embed && self.order != other.order {
            return Err(Error::IncompatibleOrders(self.order, other.order));
        }
        Ok(match op {
            FieldOp::Add => self.add_ref(other),
            FieldOp::Sub => self.sub_ref(other),
            FieldOp::Mul => self.mul_ref(other),
            FieldOp::Div => {
                let inv = other.inv().ok_or(Error::DivisionByZero)?;
                self.mul_ref(&inv)
            }
        })
    }

    fn poly_mul(order: u32, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        reduce(order, out)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyclo { order: self.order, coeffs: scalar_vec(self.order, q.recip()) });
        }
        let phi: Vec<BigRational> =
            cyclotomic_poly(self.order).iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let inv = poly_inverse_mod(&self.coeffs, &phi)?;
        Some(Cyclo { order: self.order, coeffs: reduce(self.order, inv) })
    }

    /// Complex value, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = ratio_to_f64(c);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

fn scalar_vec(order: u32, q: BigRational) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); totient(order)];
    v[0] = q;
    v
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = &r[i] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[i - db + j] -= t;
        }
        q[i - db] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(q.len() + b.len() - 1);
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m`, by the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut t0, mut t1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let t = poly_sub_mul(&t0, &q, &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(t0.into_iter().map(|x| x * &c).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.aligned(other);
        a == b
    }
}

impl Eq for Cyclo {}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo { order: 1, coeffs: vec![BigRational::zero()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo { order: 1, coeffs: vec![BigRational::one()] }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        self.add_ref(&rhs)
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        self.sub_ref(&rhs)
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        self.mul_ref(&rhs)
    }
}

impl Div for Cyclo {
    type Output = Cyclo;
    /// Panics on division by zero; use [`Cyclo::checked_op`] to get an error instead.
    fn div(self, rhs: Cyclo) -> Cyclo {
        self.checked_op(&rhs, FieldOp::Div, true).expect("division by zero")
    }
}

impl Scalar for Cyclo {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_i64(n: i64) -> Self {
        Cyclo::from_rational(BigRational::from_integer(n.into()))
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Cyclo { order: self.order, coeffs };
        }
        let (order, a, b) = self.aligned(other);
        Cyclo { order, coeffs: a.iter().zip(&b).map(|(x, y)| x + y).collect() }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
            return Cyclo { order: self.order, coeffs };
        }
        let (order, a, b) = self.aligned(other);
        Cyclo { order, coeffs: a.iter().zip(&b).map(|(x, y)| x - y).collect() }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        // rational fast paths
        if let Some(q) = rational_scalar(other) {
            return self.scale_rational(&q);
        }
        if let Some(q) = rational_scalar(self) {
            return other.scale_rational(&q);
        }
        if self.order == other.order {
            return Cyclo { order: self.order, coeffs: Cyclo::poly_mul(self.order, &self.coeffs, &other.coeffs) };
        }
        let (order, a, b) = self.aligned(other);
        Cyclo { order, coeffs: Cyclo::poly_mul(order, &a, &b) }
    }
}

fn rational_scalar(c: &Cyclo) -> Option<BigRational> {
    if c.order <= 2 {
        Some(c.coeffs[0].clone())
    } else {
        None
    }
}

impl Cyclo {
    fn scale_rational(&self, q: &BigRational) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }
}

impl fmt::Display for Cyclo {
    /// Exact form, e.g. `-1 - z3` for `ζ_3^2`, where `zN` denotes `ζ_N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, k),
            };
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n| cyclotomic_poly(n).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(15), 8);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i2 = Cyclo::root_of_unity(4, 2).unwrap();
        assert_eq!(i2, -Cyclo::one());
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = (0..3).map(|k| Cyclo::root_of_unity(3, k).unwrap()).fold(Cyclo::zero(), |a, b| a + b);
        assert!(s.is_zero());
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(Cyclo::root_of_unity(0, 1), Err(Error::ZeroOrder));
    }

    #[test]
    fn inverse_of_root() {
        let z = Cyclo::root_of_unity(5, 1).unwrap();
        let r = Cyclo::one().checked_op(&z, FieldOp::Div, false);
        assert!(r.is_err(), "order 1 vs 5 without embedding");
        let one5 = Cyclo::root_of_unity(5, 0).unwrap();
        assert_eq!(one5.checked_op(&z, FieldOp::Div, false).unwrap(), Cyclo::root_of_unity(5, 4).unwrap());
        let z3 = Cyclo::root_of_unity(3, 1).unwrap();
        assert_eq!(z3.clone() * (z3.clone() * z3), Cyclo::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = Cyclo::root_of_unity(3, 1).unwrap();
        assert_eq!(a.checked_op(&Cyclo::zero(), FieldOp::Div, true), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_order_equality() {
        // ζ_6^2 = ζ_3
        assert_eq!(Cyclo::root_of_unity(6, 2).unwrap(), Cyclo::root_of_unity(3, 1).unwrap());
        assert_eq!(Cyclo::root_of_unity(3, 0).unwrap(), Cyclo::one());
    }

    #[test]
    fn general_inverse() {
        let a = Cyclo::from_poly(7, vec![q(2), q(-1), q(0), q(3)]).unwrap();
        let b = a.inv().unwrap();
        assert_eq!(a * b, Cyclo::root_of_unity(7, 0).unwrap());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclo::root_of_unity(3, 2).unwrap().to_string(), "-1 - z3");
        assert_eq!(Cyclo::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(Cyclo::zero().to_string(), "0");
    }
}
