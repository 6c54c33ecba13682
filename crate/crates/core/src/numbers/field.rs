//! The `Field` abstraction shared by matrices, polynomials and series.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicNumber;
use super::finite_field::FiniteField;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Serializable description of a ground field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rational,
    Cyclotomic { conductor: u64 },
    Finite { p: u64, modulus: String },
}

/// A field handle together with operations on its element type.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, r: &Rational) -> Result<Self::Elem>;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn spec(&self) -> FieldSpec;
    fn label(&self) -> String;

    /// Number of elements for finite fields.
    fn size(&self) -> Option<u64> {
        None
    }

    /// All elements, for finite fields only.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `y += a * x`, entrywise.
    fn axpy(&self, y: &mut [Self::Elem], a: &Self::Elem, x: &[Self::Elem]) {
        if self.is_zero(a) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(a, xi));
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
    fn from_rational(&self, r: &Rational) -> Result<Rational> {
        Ok(r.clone())
    }
    fn parse(&self, s: &str) -> Result<Rational> {
        parse_rational(s)
    }
    fn format(&self, a: &Rational) -> String {
        format_rational(a)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn label(&self) -> String {
        "Q".into()
    }
    fn axpy(&self, y: &mut [Rational], a: &Rational, x: &[Rational]) {
        if a.is_zero() {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi += a * xi;
            }
        }
    }
}

/// Q(zeta_m) with every element carried at conductor `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidField("conductor must be positive".into()));
        }
        Ok(CyclotomicField { conductor })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn zeta(&self) -> CyclotomicNumber {
        CyclotomicNumber::zeta(self.conductor)
    }

    /// Brings a value of any dividing conductor into this field.
    pub fn coerce(&self, x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        x.embed(self.conductor)
    }
}

impl Field for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber::zero(self.conductor)
    }
    fn one(&self) -> CyclotomicNumber {
        CyclotomicNumber::one(self.conductor)
    }
    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        a + b
    }
    fn sub(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        a - b
    }
    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        a * b
    }
    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        -a
    }
    fn inv(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        a.inv()
    }
    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &CyclotomicNumber) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_int(&self, n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(self.conductor, n)
    }
    fn from_rational(&self, r: &Rational) -> Result<CyclotomicNumber> {
        Ok(CyclotomicNumber::from_rational(self.conductor, r))
    }
    fn parse(&self, s: &str) -> Result<CyclotomicNumber> {
        CyclotomicNumber::parse(self.conductor, s)
    }
    fn format(&self, a: &CyclotomicNumber) -> String {
        a.to_poly_string()
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Cyclotomic { conductor: self.conductor }
    }
    fn label(&self) -> String {
        format!("Q(zeta_{})", self.conductor)
    }
}

impl Field for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::add(self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::mul(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        FiniteField::neg(self, *a)
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        FiniteField::inv(self, *a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn from_int(&self, n: i64) -> u32 {
        FiniteField::from_int(self, n)
    }
    fn from_rational(&self, r: &Rational) -> Result<u32> {
        FiniteField::from_rational(self, r)
    }
    fn parse(&self, s: &str) -> Result<u32> {
        FiniteField::parse(self, s)
    }
    fn format(&self, a: &u32) -> String {
        FiniteField::format(self, *a)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Finite { p: self.p(), modulus: self.modulus_string() }
    }
    fn label(&self) -> String {
        FiniteField::label(self)
    }
    fn size(&self) -> Option<u64> {
        Some(self.order())
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.order() as u32).collect())
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        let n = self.order() - 1;
        let e = if e == 0 { 0 } else { (e - 1) % n + 1 };
        FiniteField::pow(self, *a, e as i64)
    }
    fn axpy(&self, y: &mut [u32], a: &u32, x: &[u32]) {
        if *a == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = FiniteField::add(self, *yi, FiniteField::mul(self, *a, xi));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert!(f.is_zero(&f.add(a, &f.neg(a))));
        if !f.is_zero(a) {
            assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
        }
    }

    proptest! {
        #[test]
        fn rational_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -9i64..9) {
            let f = RationalField;
            let x = Rational::new(a.into(), b.into());
            let y = Rational::new(c.into(), d.into());
            check_axioms(&f, &x, &y, &f.from_int(e));
        }

        #[test]
        fn cyclotomic_axioms(m in prop::sample::select(vec![3u64, 4, 5, 8, 12, 15]),
                             xs in prop::collection::vec(-5i64..5, 12)) {
            let f = CyclotomicField::new(m).unwrap();
            let build = |cs: &[i64]| {
                let qs: Vec<Rational> = cs.iter().map(|&c| Rational::from_integer(c.into())).collect();
                CyclotomicNumber::from_coefficients(m, &qs)
            };
            check_axioms(&f, &build(&xs[0..4]), &build(&xs[4..8]), &build(&xs[8..12]));
        }

        #[test]
        fn finite_field_axioms(a in 0u32..729, b in 0u32..729, c in 0u32..729) {
            let f = FiniteField::with_default_modulus(3, 6).unwrap();
            check_axioms(&f, &a, &b, &c);
            let g = FiniteField::from_modulus_str(3, "g^2+1").unwrap();
            check_axioms(&g, &(a % 9), &(b % 9), &(c % 9));
        }
    }

    #[test]
    fn finite_pow_matches_repeated_multiplication() {
        let f = FiniteField::prime(7).unwrap();
        for a in 0..7u32 {
            let mut acc = 1;
            for e in 0..14u64 {
                assert_eq!(Field::pow(&f, &a, e), acc);
                acc = Field::mul(&f, &acc, &a);
            }
        }
    }
}
