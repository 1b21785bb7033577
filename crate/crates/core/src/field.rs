//! Exact coefficient fields and the dense vectors built over them.
//!
//! Every linear-algebra routine in the crate is generic over [`Field`], which
//! bundles scalar arithmetic with a vector representation. The rationals and
//! odd prime fields use plain `Vec`s of scalars; the two-element field packs
//! vectors into machine words so that row operations become word-wide XORs.

use std::fmt::{self, Debug};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which coefficient field an algebra is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Rational
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::InvalidField(format!("unknown field `{t}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unknown field `{t}`")))?;
        if p > (1u64 << 31) {
            return Err(Error::InvalidField(format!("prime {p} exceeds 2^31")));
        }
        FieldSpec::prime(p as u32)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Scalar arithmetic plus a dense vector type.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;
    type Vector: Clone + Debug + PartialEq + Eq + std::hash::Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Number of elements, `None` for the rationals.
    fn size(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration of a finite field.
    fn element(&self, i: u64) -> Self::Elem;
    /// Uniform for finite fields; small integers for the rationals.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn zeros(&self, n: usize) -> Self::Vector;
    fn dim(&self, v: &Self::Vector) -> usize;
    fn get(&self, v: &Self::Vector, i: usize) -> Self::Elem;
    fn set(&self, v: &mut Self::Vector, i: usize, a: Self::Elem);
    /// `y += a * x`
    fn axpy(&self, y: &mut Self::Vector, a: &Self::Elem, x: &Self::Vector);
    fn scale(&self, v: &mut Self::Vector, a: &Self::Elem);
    fn first_nonzero(&self, v: &Self::Vector) -> Option<usize>;
    fn dot(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Elem;

    fn is_zero_vec(&self, v: &Self::Vector) -> bool {
        self.first_nonzero(v).is_none()
    }

    fn unit(&self, n: usize, i: usize) -> Self::Vector {
        let mut v = self.zeros(n);
        self.set(&mut v, i, self.one());
        v
    }

    fn from_elems(&self, xs: &[Self::Elem]) -> Self::Vector {
        let mut v = self.zeros(xs.len());
        for (i, x) in xs.iter().enumerate() {
            if !self.is_zero(x) {
                self.set(&mut v, i, x.clone());
            }
        }
        v
    }

    fn to_elems(&self, v: &Self::Vector) -> Vec<Self::Elem> {
        (0..self.dim(v)).map(|i| self.get(v, i)).collect()
    }

    /// Concatenate two vectors.
    fn concat(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Vector {
        let (na, nb) = (self.dim(a), self.dim(b));
        let mut v = self.zeros(na + nb);
        for i in 0..na {
            let x = self.get(a, i);
            if !self.is_zero(&x) {
                self.set(&mut v, i, x);
            }
        }
        for i in 0..nb {
            let x = self.get(b, i);
            if !self.is_zero(&x) {
                self.set(&mut v, na + i, x);
            }
        }
        v
    }

    /// Entries `start..start + len` as a new vector.
    fn slice(&self, v: &Self::Vector, start: usize, len: usize) -> Self::Vector {
        let mut out = self.zeros(len);
        for i in 0..len {
            let x = self.get(v, start + i);
            if !self.is_zero(&x) {
                self.set(&mut out, i, x);
            }
        }
        out
    }
}

/// The rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// `Z/p` for an odd prime `p` (or any prime; `F2` has its own packed type).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, Error> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
}

/// The field with two elements; vectors are bit-packed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gf2;

macro_rules! dense_vector_ops {
    () => {
        fn zeros(&self, n: usize) -> Self::Vector {
            vec![self.zero(); n]
        }

        fn dim(&self, v: &Self::Vector) -> usize {
            v.len()
        }

        fn get(&self, v: &Self::Vector, i: usize) -> Self::Elem {
            v[i].clone()
        }

        fn set(&self, v: &mut Self::Vector, i: usize, a: Self::Elem) {
            v[i] = a;
        }

        fn axpy(&self, y: &mut Self::Vector, a: &Self::Elem, x: &Self::Vector) {
            if self.is_zero(a) {
                return;
            }
            for (yi, xi) in y.iter_mut().zip(x.iter()) {
                if !self.is_zero(xi) {
                    *yi = self.add(yi, &self.mul(a, xi));
                }
            }
        }

        fn scale(&self, v: &mut Self::Vector, a: &Self::Elem) {
            for x in v.iter_mut() {
                if !self.is_zero(x) {
                    *x = self.mul(a, x);
                }
            }
        }

        fn first_nonzero(&self, v: &Self::Vector) -> Option<usize> {
            v.iter().position(|x| !self.is_zero(x))
        }

        fn dot(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Elem {
            let mut acc = self.zero();
            for (x, y) in a.iter().zip(b.iter()) {
                if !self.is_zero(x) && !self.is_zero(y) {
                    acc = self.add(&acc, &self.mul(x, y));
                }
            }
            acc
        }
    };
}

impl Field for Rationals {
    type Elem = BigRational;
    type Vector = Vec<BigRational>;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn element(&self, i: u64) -> BigRational {
        self.from_i64(i as i64)
    }

    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let r = (rng.next_u32() % 201) as i64 - 100;
        self.from_i64(r)
    }

    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    dense_vector_ops!();
}

impl PrimeField {
    fn reduce(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(acc as u64 * base as u64);
            }
            base = self.reduce(base as u64 * base as u64);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u32;
    type Vector = Vec<u32>;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + *b as u64)
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p as u64 - 2)
    }

    fn size(&self) -> Option<u64> {
        Some(self.p as u64)
    }

    fn element(&self, i: u64) -> u32 {
        (i % self.p as u64) as u32
    }

    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        (rng.next_u64() % self.p as u64) as u32
    }

    fn render(&self, a: &u32) -> String {
        a.to_string()
    }

    dense_vector_ops!();
}

/// A bit-packed vector over the two-element field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl Field for Gf2 {
    type Elem = u8;
    type Vector = BitVector;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(2)
    }

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        1
    }

    fn from_i64(&self, n: i64) -> u8 {
        n.rem_euclid(2) as u8
    }

    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }

    fn add(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }

    fn neg(&self, a: &u8) -> u8 {
        *a
    }

    fn sub(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }

    fn mul(&self, a: &u8, b: &u8) -> u8 {
        a & b
    }

    fn inv(&self, a: &u8) -> u8 {
        assert!(*a == 1, "inverse of zero");
        1
    }

    fn size(&self) -> Option<u64> {
        Some(2)
    }

    fn element(&self, i: u64) -> u8 {
        (i & 1) as u8
    }

    fn random(&self, rng: &mut dyn RngCore) -> u8 {
        (rng.next_u32() & 1) as u8
    }

    fn render(&self, a: &u8) -> String {
        a.to_string()
    }

    fn zeros(&self, n: usize) -> BitVector {
        BitVector {
            len: n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn dim(&self, v: &BitVector) -> usize {
        v.len
    }

    fn get(&self, v: &BitVector, i: usize) -> u8 {
        debug_assert!(i < v.len);
        ((v.words[i / 64] >> (i % 64)) & 1) as u8
    }

    fn set(&self, v: &mut BitVector, i: usize, a: u8) {
        debug_assert!(i < v.len);
        let mask = 1u64 << (i % 64);
        if a & 1 == 1 {
            v.words[i / 64] |= mask;
        } else {
            v.words[i / 64] &= !mask;
        }
    }

    fn axpy(&self, y: &mut BitVector, a: &u8, x: &BitVector) {
        if *a & 1 == 0 {
            return;
        }
        for (yw, xw) in y.words.iter_mut().zip(x.words.iter()) {
            *yw ^= *xw;
        }
    }

    fn scale(&self, v: &mut BitVector, a: &u8) {
        if *a & 1 == 0 {
            v.words.iter_mut().for_each(|w| *w = 0);
        }
    }

    fn first_nonzero(&self, v: &BitVector) -> Option<usize> {
        v.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn dot(&self, a: &BitVector, b: &BitVector) -> u8 {
        let ones: u32 = a
            .words
            .iter()
            .zip(b.words.iter())
            .map(|(x, y)| (x & y).count_ones())
            .sum();
        (ones & 1) as u8
    }

    fn is_zero_vec(&self, v: &BitVector) -> bool {
        v.words.iter().all(|w| *w == 0)
    }
}

/// Run `$body` with `$f` bound to the concrete field named by a [`FieldSpec`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {{
        match $spec {
            $crate::field::FieldSpec::Rational => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldSpec::Prime(2) => {
                let $f = $crate::field::Gf2;
                $body
            }
            $crate::field::FieldSpec::Prime(p) => {
                let $f = $crate::field::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("f7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("F9".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert!("F4294967311".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn packed_vectors_cross_word_boundary() {
        let f = Gf2;
        let mut v = f.zeros(130);
        f.set(&mut v, 0, 1);
        f.set(&mut v, 64, 1);
        f.set(&mut v, 129, 1);
        let w = f.unit(130, 64);
        assert_eq!(f.dot(&v, &w), 1);
        f.axpy(&mut v, &1, &w);
        assert_eq!(f.get(&v, 64), 0);
        assert_eq!(f.first_nonzero(&v), Some(0));
        let tail = f.slice(&v, 100, 30);
        assert_eq!(f.first_nonzero(&tail), Some(29));
    }
}
