//! Finite fields GF(p^k) as GF(p)[g]/(m(g)) with log/exp tables.
//!
//! An element is encoded as the integer `sum a_i p^i` of its residue coefficients,
//! so `0` is zero and `1` is one.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::parse::{format_univariate, parse_univariate};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest field order for which log/exp tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;
const ADD_TABLE_LIMIT: u32 = 256;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial helpers over GF(p), coefficient vectors lowest degree first.
mod fp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let inv_lead = inv(*b.last().unwrap(), p);
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = (*r.last().unwrap() as u64 * inv_lead as u64 % p as u64) as u32;
            for (j, &bj) in b.iter().enumerate() {
                let t = (c as u64 * bj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - t) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        pow(a, p - 2, p)
    }

    pub fn pow(a: u32, mut e: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut b = a as u64 % p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Irreducibility by trial division against all monic polynomials of degree <= deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut g = vec![0u32; d + 1];
                let mut c = code;
                for gi in g.iter_mut().take(d) {
                    *gi = (c % p as u64) as u32;
                    c /= p as u64;
                }
                g[d] = 1;
                if rem(&f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Shared tables of one finite field.
pub struct FiniteFieldData {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    powers: Vec<u32>,
}

/// Handle to GF(p^k); cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FiniteFieldData>);

impl FiniteField {
    /// GF(p) itself.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, vec![0, 1])
    }

    /// GF(p^k) with the given monic defining polynomial (coefficients lowest degree first).
    pub fn new(p: u64, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        let p32 = p as u32;
        let modulus: Vec<u32> = fp::trim(modulus.into_iter().map(|c| c % p32).collect());
        if modulus.len() < 2 {
            return Err(Error::InvalidField("defining polynomial must have positive degree".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("defining polynomial must be monic".into()));
        }
        if !fp::is_irreducible(&modulus, p32) {
            return Err(Error::InvalidField(format!(
                "defining polynomial {} is reducible over GF({p})",
                format_poly_fp(&modulus)
            )));
        }
        let k = (modulus.len() - 1) as u32;
        let q = p.checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::TooLarge {
            size: (p as u128).saturating_pow(k),
            cap: MAX_FIELD_ORDER as u128,
        })? as u32;
        Ok(FiniteField(Arc::new(build_tables(p32, k, q, modulus))))
    }

    /// GF(p^k) with the first monic irreducible polynomial in code order.
    pub fn with_default_modulus(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let p32 = p as u32;
        let count = p.checked_pow(k).filter(|&c| c <= MAX_FIELD_ORDER).ok_or(Error::TooLarge {
            size: (p as u128).saturating_pow(k),
            cap: MAX_FIELD_ORDER as u128,
        })?;
        for code in 0..count {
            let mut f = vec![0u32; k as usize + 1];
            let mut c = code;
            for fi in f.iter_mut().take(k as usize) {
                *fi = (c % p) as u32;
                c /= p;
            }
            f[k as usize] = 1;
            if f[0] != 0 && fp::is_irreducible(&f, p32) {
                return Self::new(p, f);
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {k} over GF({p})")))
    }

    /// Parses a defining polynomial such as `"g^2+1"`.
    pub fn from_modulus_str(p: u64, modulus: &str) -> Result<Self> {
        let coeffs = parse_univariate(modulus, 'g')?;
        let reduced = coeffs
            .iter()
            .map(|c| rational_mod_p(c, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, reduced)
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        format_poly_fp(&self.0.modulus)
    }

    /// The primitive element used for the log tables.
    pub fn primitive(&self) -> u32 {
        self.0.exp[1 % self.0.exp.len()]
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        let mut c = x;
        for _ in 0..self.0.k {
            out.push(c % self.0.p);
            c /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let reduced = if digits.len() > self.0.k as usize {
            fp::rem(digits, &self.0.modulus, self.0.p)
        } else {
            digits.to_vec()
        };
        reduced
            .iter()
            .enumerate()
            .map(|(i, &d)| (d % self.0.p) * self.0.powers[i])
            .sum()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.0.add {
            return t[(a * self.0.q + b) as usize];
        }
        let p = self.0.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &pw in &self.0.powers {
            out += ((a % p + b % p) % p) * pw;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize] + self.0.log[b as usize];
        self.0.exp[(if l >= n { l - n } else { l }) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        Ok(self.0.exp[((n - l) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.0.q - 1) as i64;
        let l = (self.0.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.0.exp[l as usize]
    }

    /// Discrete logarithm base the primitive element.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    pub fn exp(&self, e: u64) -> u32 {
        self.0.exp[(e % (self.0.q as u64 - 1)) as usize]
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    pub fn from_rational(&self, r: &Rational) -> Result<u32> {
        rational_mod_p(r, self.p())
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Result<u64> {
        let l = self.log(a).ok_or(Error::NotARootOfUnity)? as u64;
        let n = self.order() - 1;
        Ok(n / n.gcd(&l))
    }

    /// Parses a polynomial literal in `g`, e.g. `"2g+1"`.
    pub fn parse(&self, s: &str) -> Result<u32> {
        let coeffs = parse_univariate(s, 'g')?;
        let digits = coeffs
            .iter()
            .map(|c| rational_mod_p(c, self.p()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_digits(&digits))
    }

    pub fn format(&self, a: u32) -> String {
        format_univariate(&self.digits(a), "g", |d| *d == 0, |d| d.to_string())
    }

    /// Roots in this field of a polynomial over GF(p), by scanning.
    pub fn roots_of_prime_poly(&self, f: &[u32]) -> Vec<u32> {
        (0..self.0.q)
            .filter(|&x| {
                let mut acc = 0;
                for &c in f.iter().rev() {
                    acc = self.add(self.mul(acc, x), c % self.0.p);
                }
                acc == 0
            })
            .collect()
    }

    /// Extension GF(p^{k s}) with its default modulus, plus the code map embedding `self`
    /// into it (the generator `g` maps to the first root of this field's modulus).
    pub fn extension(&self, s: u32) -> Result<(FiniteField, Vec<u32>)> {
        if s == 1 {
            return Ok((self.clone(), (0..self.0.q).collect()));
        }
        let big = FiniteField::with_default_modulus(self.p(), self.0.k * s)?;
        let root = *big
            .roots_of_prime_poly(&self.0.modulus)
            .first()
            .ok_or_else(|| Error::InvalidField("extension has no root of the base modulus".into()))?;
        let mut pw = vec![1u32];
        for i in 1..self.0.k as usize {
            pw.push(big.mul(pw[i - 1], root));
        }
        let map = (0..self.0.q)
            .map(|x| {
                self.digits(x)
                    .iter()
                    .zip(&pw)
                    .fold(0, |acc, (&d, &r)| big.add(acc, big.mul(d, r)))
            })
            .collect();
        Ok((big, map))
    }

    /// Short label such as `GF(9)[g^2 + 1]`.
    pub fn label(&self) -> String {
        if self.0.k == 1 {
            format!("GF({})", self.0.p)
        } else {
            format!("GF({}^{})/({})", self.0.p, self.0.k, self.modulus_string())
        }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub fn element(&self, code: u32) -> FiniteFieldElement {
        FiniteFieldElement { field: self.clone(), code: code % self.0.q }
    }
}

fn build_tables(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> FiniteFieldData {
    let mut powers = Vec::with_capacity(k as usize);
    let mut pw = 1u32;
    for _ in 0..k {
        powers.push(pw);
        pw = pw.wrapping_mul(p);
    }
    let encode = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(i, &x)| x * powers[i]).sum() };
    let decode = |mut c: u32| -> Vec<u32> {
        let mut v = Vec::with_capacity(k as usize);
        for _ in 0..k {
            v.push(c % p);
            c /= p;
        }
        fp::trim(v)
    };
    let n = q - 1;
    let mut exp = vec![0u32; n.max(1) as usize];
    let mut log = vec![0u32; q as usize];
    let candidates: Box<dyn Iterator<Item = u32>> = if q == 2 { Box::new(1..2) } else { Box::new(2..q) };
    for cand in candidates {
        let g = decode(cand);
        let mut x = vec![1u32];
        let mut ok = true;
        for (i, slot) in exp.iter_mut().enumerate() {
            let code = encode(&x);
            if i > 0 && code == 1 {
                ok = false;
                break;
            }
            *slot = code;
            x = fp::rem(&fp::mul(&x, &g, p), &modulus, p);
        }
        if ok {
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            break;
        }
    }
    let neg = (0..q)
        .map(|c| {
            let d: Vec<u32> = decode(c).into_iter().map(|x| (p - x) % p).collect();
            encode(&d)
        })
        .collect();
    let add = (q <= ADD_TABLE_LIMIT).then(|| {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            let da = decode(a);
            for b in 0..q {
                let db = decode(b);
                let len = da.len().max(db.len());
                let s: Vec<u32> = (0..len)
                    .map(|i| (da.get(i).copied().unwrap_or(0) + db.get(i).copied().unwrap_or(0)) % p)
                    .collect();
                t[(a * q + b) as usize] = encode(&s);
            }
        }
        t
    });
    FiniteFieldData { p, k, q, modulus, exp, log, neg, add, powers }
}

fn rational_mod_p(r: &Rational, p: u64) -> Result<u32> {
    let pm = num_bigint::BigInt::from(p);
    let n = r.numer().mod_floor(&pm).to_u64().unwrap();
    let d = r.denom().mod_floor(&pm).to_u64().unwrap();
    if d == 0 {
        return Err(Error::DivisionByZero);
    }
    debug_assert!(!r.denom().is_negative());
    let dinv = fp::inv(d as u32, p as u32) as u64;
    Ok((n * dinv % p) as u32)
}

fn format_poly_fp(f: &[u32]) -> String {
    format_univariate(f, "g", |d| *d == 0, |d| d.to_string())
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteField {}

/// A finite field element bundled with its field.
#[derive(Clone)]
pub struct FiniteFieldElement {
    field: FiniteField,
    code: u32,
}

impl FiniteFieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.field.element(self.field.mul(self.code, other.code))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.field.element(self.field.add(self.code, other.code))
    }

    pub fn pow(&self, e: i64) -> Self {
        self.field.element(self.field.pow(self.code, e))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.field.element(self.field.inv(self.code)?))
    }
}

impl PartialEq for FiniteFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field.same_as(&other.field)
    }
}

impl Eq for FiniteFieldElement {}

impl Hash for FiniteFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl fmt::Debug for FiniteFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.format(self.code), self.field)
    }
}

impl fmt::Display for FiniteFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_orders() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(f.element_order(1).unwrap(), 1);
        assert_eq!(f.element_order(6).unwrap(), 2);
        assert_eq!(f.element_order(3).unwrap(), 6);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.from_int(-1), 6);
    }

    #[test]
    fn gf9_from_modulus_string() {
        let f = FiniteField::from_modulus_str(3, "g^2+1").unwrap();
        assert_eq!(f.order(), 9);
        let g = f.parse("g").unwrap();
        assert_eq!(f.mul(g, g), f.from_int(-1));
        assert_eq!(f.parse("2g+2").unwrap(), 8);
        assert_eq!(f.format(8), "2*g + 2");
        assert_eq!(f.element_order(g).unwrap(), 4);
        for x in 1..9 {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(matches!(FiniteField::from_modulus_str(3, "g^2+2"), Err(Error::InvalidField(_))));
        assert!(FiniteField::prime(9).is_err());
    }

    #[test]
    fn extension_embedding_is_a_homomorphism() {
        let f = FiniteField::from_modulus_str(3, "g^2+1").unwrap();
        let (big, map) = f.extension(3).unwrap();
        assert_eq!(big.order(), 729);
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(map[f.mul(a, b) as usize], big.mul(map[a as usize], map[b as usize]));
                assert_eq!(map[f.add(a, b) as usize], big.add(map[a as usize], map[b as usize]));
            }
        }
    }

    #[test]
    fn large_field_addition_without_table() {
        let f = FiniteField::with_default_modulus(3, 6).unwrap();
        for a in [0u32, 5, 100, 728] {
            assert_eq!(f.sub(f.add(a, 77), 77), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }
}
