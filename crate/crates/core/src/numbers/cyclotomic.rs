//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! Elements are residues modulo the cyclotomic polynomial `Phi_m` in the power
//! basis `1, z, ..., z^(phi(m)-1)`, stored as integer numerators over one common
//! positive denominator.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::parse::{format_univariate, parse_univariate};
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Default cap on the conductor reached by automatic embedding.
pub const DEFAULT_LCM_CAP: u64 = 10_000;

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
///
/// Computed by dividing `x^m - 1` by `Phi_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    assert!(m > 0, "cyclotomic polynomial of conductor 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let divisor = cyclotomic_polynomial(d);
        poly = exact_div_monic(&poly, &divisor);
    }
    let poly = Arc::new(poly);
    phi_cache().lock().unwrap().insert(m, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An exact element of Q(zeta_m).
#[derive(Clone)]
pub struct CyclotomicNumber {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub fn zero(m: u64) -> Self {
        let d = euler_phi(m) as usize;
        CyclotomicNumber { conductor: m, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn one(m: u64) -> Self {
        Self::from_integer(m, 1)
    }

    pub fn from_integer(m: u64, n: i64) -> Self {
        let mut z = Self::zero(m);
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn from_rational(m: u64, r: &Rational) -> Self {
        let mut z = Self::zero(m);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z
    }

    /// Builds an element from dense rational coefficients in `z`, reducing modulo `Phi_m`.
    pub fn from_coefficients(m: u64, coeffs: &[Rational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_raw(m, num, den)
    }

    fn from_raw(m: u64, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        reduce_mod_phi(&mut num, &phi);
        num.resize(d, BigInt::zero());
        let mut z = CyclotomicNumber { conductor: m, num, den };
        z.normalize();
        z
    }

    /// The designated primitive root `zeta_m`.
    pub fn zeta(m: u64) -> Self {
        Self::root_of_unity(m, 1)
    }

    /// `zeta_m^j` for any integer `j`.
    pub fn root_of_unity(m: u64, j: i64) -> Self {
        let e = j.rem_euclid(m as i64) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        Self::from_raw(m, num, BigInt::one())
    }

    pub fn parse(m: u64, s: &str) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidField("conductor must be positive".into()));
        }
        let coeffs = parse_univariate(s, 'z')?;
        Ok(Self::from_coefficients(m, &coeffs))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Rational coefficients in the power basis of zeta_m.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|n| n.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|n| n.is_zero()) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for n in &mut self.num {
                *n = -n.clone();
            }
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if g.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for n in &mut self.num {
                *n = &*n / &g;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
        }
    }

    /// Image under `zeta_m -> zeta_{m'}^{m'/m}`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch { from: self.conductor, to: target });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        Ok(Self::from_raw(target, num, self.den.clone()))
    }

    /// Brings two values into a common field `Q(zeta_lcm)`, refusing conductors above `cap`.
    pub fn common_field(a: &Self, b: &Self, cap: u64) -> Result<(Self, Self)> {
        if a.conductor == b.conductor {
            return Ok((a.clone(), b.clone()));
        }
        let l = lcm_u64(a.conductor, b.conductor);
        if l > cap {
            return Err(Error::ConductorTooLarge(l));
        }
        Ok((a.embed(l)?, b.embed(l)?))
    }

    fn coerce(a: &Self, b: &Self) -> (Self, Self) {
        Self::common_field(a, b, DEFAULT_LCM_CAP).expect("cyclotomic conductor cap exceeded")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.conductor != other.conductor {
            let (a, b) = Self::common_field(self, other, DEFAULT_LCM_CAP)?;
            return a.try_add(&b);
        }
        let den = &self.den * &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| x * &other.den + y * &self.den)
            .collect();
        let mut z = CyclotomicNumber { conductor: self.conductor, num, den };
        z.normalize();
        Ok(z)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.conductor != other.conductor {
            let (a, b) = Self::common_field(self, other, DEFAULT_LCM_CAP)?;
            return a.try_mul(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.conductor));
        }
        let n = self.num.len();
        if n == 1 {
            let mut z = CyclotomicNumber {
                conductor: self.conductor,
                num: vec![&self.num[0] * &other.num[0]],
                den: &self.den * &other.den,
            };
            z.normalize();
            return Ok(z);
        }
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_raw(self.conductor, prod, &self.den * &other.den))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut z = CyclotomicNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|n| n * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        z.normalize();
        z
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm against `Phi_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, &(Rational::one() / r)));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let a = trim(self.coefficients());
        let s = qpoly_inverse_mod(&a, &phi)?;
        Ok(Self::from_coefficients(self.conductor, &s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Galois automorphism `zeta -> zeta^s` with `gcd(s, m) = 1`.
    pub fn galois(&self, s: i64) -> Self {
        let m = self.conductor as i64;
        debug_assert_eq!(gcd_u64(s.rem_euclid(m) as u64, m as u64), 1);
        let mut acc = Self::zero(self.conductor);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = Self::root_of_unity(self.conductor, s * i as i64);
            term = term.scale(&Rational::from_integer(c.clone()));
            acc = &acc + &term;
        }
        acc.scale(&Rational::new(BigInt::one(), self.den.clone()))
    }

    /// Complex conjugate (the automorphism `zeta -> zeta^{-1}`).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Polynomial-in-`z` rendering, e.g. `"z^2 + 1"`.
    pub fn to_poly_string(&self) -> String {
        format_univariate(&self.coefficients(), "z", |c| c.is_zero(), format_rational)
    }

    /// Approximate complex value, for human-readable output only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coefficients().iter().enumerate() {
            let v = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn reduce_mod_phi(num: &mut Vec<BigInt>, phi: &[i64]) {
    let d = phi.len() - 1;
    if num.len() <= d {
        return;
    }
    for i in (d..num.len()).rev() {
        let c = std::mem::take(&mut num[i]);
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi[..d].iter().enumerate() {
            if pj != 0 {
                num[i - d + j] -= &c * pj;
            }
        }
    }
    num.truncate(d);
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(Rational::zero());
        }
    }
    (q, r)
}

fn qpoly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(q.len() + b.len() - 1)];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

/// Returns `s` with `s * a = 1 mod modulus`.
fn qpoly_inverse_mod(a: &[Rational], modulus: &[Rational]) -> Result<Vec<Rational>> {
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s2 = qpoly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return Err(Error::DivisionByZero);
    }
    let c = r0[0].clone();
    Ok(s0.into_iter().map(|x| x / &c).collect())
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        match Self::common_field(self, other, u64::MAX) {
            Ok((a, b)) => a == b,
            Err(_) => false,
        }
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.to_poly_string(), self.conductor)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_string())
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CyclotomicNumber::coerce(self, rhs);
            return &a + &b;
        }
        self.try_add(rhs).expect("same conductor")
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CyclotomicNumber::coerce(self, rhs);
            return &a * &b;
        }
        self.try_mul(rhs).expect("same conductor")
    }
}

/// Free-function form of [`CyclotomicNumber::embed`].
pub fn cyclotomic_embed(x: &CyclotomicNumber, target: u64) -> Result<CyclotomicNumber> {
    x.embed(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational::{rat, rat_frac};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn zeta_relations() {
        let z = CyclotomicNumber::zeta(6);
        assert!(z.pow(6).unwrap().is_one());
        assert!(!z.pow(3).unwrap().is_one());
        assert_eq!(CyclotomicNumber::zeta(2), CyclotomicNumber::from_integer(2, -1));
        let i = CyclotomicNumber::zeta(4);
        assert_eq!(&i * &i, CyclotomicNumber::from_integer(4, -1));
    }

    #[test]
    fn embedding_examples() {
        let one = CyclotomicNumber::one(2);
        assert!(one.embed(4).unwrap().is_one());
        let z2 = CyclotomicNumber::zeta(2);
        assert_eq!(z2.embed(4).unwrap(), CyclotomicNumber::root_of_unity(4, 2));
        // zeta_3 + 1 into Q(zeta_6) is zeta_6^2 + 1; its difference with 1 cubes to 1.
        let x = &CyclotomicNumber::zeta(3) + &CyclotomicNumber::one(3);
        let y = x.embed(6).unwrap();
        let expected = &CyclotomicNumber::root_of_unity(6, 2) + &CyclotomicNumber::one(6);
        assert_eq!(y, expected);
        let w = &y - &CyclotomicNumber::one(6);
        assert!(w.pow(3).unwrap().is_one());
        assert!(matches!(x.embed(4), Err(Error::ConductorMismatch { .. })));
    }

    #[test]
    fn inverse_and_parse() {
        let x = CyclotomicNumber::parse(8, "z^2+1").unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let r = CyclotomicNumber::from_rational(5, &rat_frac(3, 7));
        assert_eq!(r.inv().unwrap().as_rational().unwrap(), rat_frac(7, 3));
        assert!(CyclotomicNumber::zero(5).inv().is_err());
        // z^4 reduces modulo Phi_8 = z^4 + 1.
        assert_eq!(CyclotomicNumber::parse(8, "z^4").unwrap().as_rational(), Some(rat(-1)));
    }

    #[test]
    fn mixed_conductors_auto_embed() {
        let a = CyclotomicNumber::zeta(3);
        let b = CyclotomicNumber::zeta(4);
        let c = &a * &b;
        assert_eq!(c.conductor(), 12);
        assert_eq!(c, CyclotomicNumber::root_of_unity(12, 4 + 3));
        assert_eq!(CyclotomicNumber::one(3), CyclotomicNumber::one(5));
    }

    #[test]
    fn conjugation() {
        let z = CyclotomicNumber::zeta(7);
        assert!((&z * &z.conj()).is_one());
        let s = &z + &z.conj();
        assert_eq!(s.galois(3), &CyclotomicNumber::root_of_unity(7, 3) + &CyclotomicNumber::root_of_unity(7, -3));
    }
}
