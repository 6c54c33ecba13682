//! Brauer lifting of roots of unity and eigenvalue scanning for Brauer characters.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::cyclotomic::{divisors, lcm_u64, CyclotomicNumber};
use super::field::{CyclotomicField, Field, RationalField};
use super::finite_field::FiniteField;
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Multiplicative order of a finite field element.
pub fn element_order(field: &FiniteField, x: u32) -> Result<u64> {
    field.element_order(x)
}

/// Multiplicative order of a root of unity in Q(zeta_m).
pub fn cyclotomic_order(x: &CyclotomicNumber) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::NotARootOfUnity);
    }
    // Roots of unity in Q(zeta_m) have order dividing lcm(2, m).
    let bound = lcm_u64(2, x.conductor());
    for d in divisors(bound) {
        if x.pow(d as i64)?.is_one() {
            return Ok(d);
        }
    }
    Err(Error::NotARootOfUnity)
}

/// A fixed pair (xi, zeta_m) identifying `mu_m` of a finite field with `mu_m` of Q(zeta_m).
#[derive(Clone)]
pub struct BrauerLiftContext {
    base: FiniteField,
    carrier: FiniteField,
    embed: Arc<Vec<u32>>,
    m: u64,
    xi: u32,
    dlog: Arc<HashMap<u32, u64>>,
}

impl BrauerLiftContext {
    /// Context for `m`-th roots of unity over `base`, extending the field as needed.
    /// The default `xi` is `prim^((q-1)/m)` for the carrier's primitive element.
    pub fn new(base: &FiniteField, m: u64) -> Result<Self> {
        let (carrier, embed) = splitting_extension(base, m)?;
        let xi = carrier.exp((carrier.order() - 1) / m);
        Self::assemble(base, carrier, embed, m, xi)
    }

    /// Context with a caller-chosen generator `xi` from the base field; `m` is its order.
    pub fn with_xi(base: &FiniteField, xi: u32) -> Result<Self> {
        let m = base.element_order(xi)?;
        let embed: Vec<u32> = (0..base.order() as u32).collect();
        Self::assemble(base, base.clone(), embed, m, xi)
    }

    fn assemble(base: &FiniteField, carrier: FiniteField, embed: Vec<u32>, m: u64, xi: u32) -> Result<Self> {
        if carrier.element_order(xi)? != m {
            return Err(Error::NotInRootGroup(m));
        }
        let mut dlog = HashMap::with_capacity(m as usize);
        let mut x = 1u32;
        for j in 0..m {
            dlog.insert(x, j);
            x = carrier.mul(x, xi);
        }
        Ok(BrauerLiftContext {
            base: base.clone(),
            carrier,
            embed: Arc::new(embed),
            m,
            xi,
            dlog: Arc::new(dlog),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn xi(&self) -> u32 {
        self.xi
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn carrier(&self) -> &FiniteField {
        &self.carrier
    }

    pub fn embed(&self, x: u32) -> u32 {
        self.embed[x as usize]
    }

    /// Discrete logarithm base xi of a carrier element.
    pub fn exponent_of(&self, x: u32) -> Result<u64> {
        self.dlog.get(&x).copied().ok_or(Error::NotInRootGroup(self.m))
    }

    /// Lift of a carrier element `xi^j` to `zeta_m^j`.
    pub fn lift(&self, x: u32) -> Result<CyclotomicNumber> {
        Ok(CyclotomicNumber::root_of_unity(self.m, self.exponent_of(x)? as i64))
    }

    /// Lift of a base-field element.
    pub fn lift_base(&self, x: u32) -> Result<CyclotomicNumber> {
        self.lift(self.embed(x))
    }

    pub fn fingerprint(&self) -> String {
        format!(
            "{} over {}: xi = {} of order {}, lifted to zeta_{} = z",
            self.carrier.label(),
            self.base.label(),
            self.carrier.format(self.xi),
            self.m,
            self.m
        )
    }
}

impl fmt::Debug for BrauerLiftContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

/// Free-function form of [`BrauerLiftContext::lift`] on base-field elements.
pub fn brauer_lift(ctx: &BrauerLiftContext, x: u32) -> Result<CyclotomicNumber> {
    ctx.lift_base(x)
}

/// Least extension GF(q^s) of `base` containing all `m`-th roots of unity.
pub fn splitting_extension(base: &FiniteField, m: u64) -> Result<(FiniteField, Vec<u32>)> {
    if m.is_multiple_of(base.p()) {
        return Err(Error::NotPRegular { order: m, characteristic: base.p() });
    }
    let q = base.order() as u128;
    let mut qs = q;
    for s in 1..=64u32 {
        if (qs - 1).is_multiple_of(m as u128) {
            return base.extension(s);
        }
        qs = qs.saturating_mul(q);
        if qs > super::finite_field::MAX_FIELD_ORDER as u128 {
            break;
        }
    }
    Err(Error::TooLarge { size: qs, cap: super::finite_field::MAX_FIELD_ORDER as u128 })
}

/// How eigenvalues are identified with complex roots of unity.
#[derive(Clone, Debug)]
pub enum LiftContext {
    /// Characteristic zero: eigenvalues already live in Q(zeta_conductor).
    CharZero { conductor: u64 },
    Modular(BrauerLiftContext),
}

impl LiftContext {
    /// Conductor of the cyclotomic field receiving lifted values.
    pub fn conductor(&self) -> u64 {
        match self {
            LiftContext::CharZero { conductor } => *conductor,
            LiftContext::Modular(b) => b.m(),
        }
    }

    pub fn fingerprint(&self) -> String {
        match self {
            LiftContext::CharZero { conductor } => {
                format!("characteristic 0, values in Q(zeta_{conductor}) with zeta = z")
            }
            LiftContext::Modular(b) => b.fingerprint(),
        }
    }
}

/// Eigenvalue multiset as exponents `j` of `zeta_conductor^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenvalues {
    pub conductor: u64,
    pub exponents: Vec<u64>,
    pub semisimple: bool,
}

impl Eigenvalues {
    pub fn values(&self) -> Vec<CyclotomicNumber> {
        self.exponents
            .iter()
            .map(|&j| CyclotomicNumber::root_of_unity(self.conductor, j as i64))
            .collect()
    }

    pub fn sum(&self) -> CyclotomicNumber {
        self.values()
            .iter()
            .fold(CyclotomicNumber::zero(self.conductor), |acc, v| &acc + v)
    }

    /// Reverse characteristic polynomial `prod (1 - lambda t)` of the inverse eigenvalues,
    /// i.e. `det(1 - t g^{-1})`, lowest degree first.
    pub fn det_one_minus_t_inverse(&self) -> Vec<CyclotomicNumber> {
        let m = self.conductor;
        let mut poly = vec![CyclotomicNumber::one(m)];
        for &j in &self.exponents {
            let lam = CyclotomicNumber::root_of_unity(m, -(j as i64));
            let mut next = vec![CyclotomicNumber::zero(m); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d] = &next[d] + c;
                next[d + 1] = &next[d + 1] - &(c * &lam);
            }
            poly = next;
        }
        poly
    }
}

fn scan_roots<K: Field>(
    k: &K,
    charpoly: Vec<K::Elem>,
    mat: &Matrix<K>,
    zeta: &K::Elem,
    conductor: u64,
) -> Result<Eigenvalues> {
    let n = charpoly.len() - 1;
    let mut poly = charpoly;
    let mut exponents = Vec::with_capacity(n);
    let mut semisimple = true;
    let mut root = k.one();
    for j in 0..conductor {
        let mut mult = 0usize;
        loop {
            if poly.len() < 2 {
                break;
            }
            // Synthetic division by (t - root).
            let deg = poly.len() - 1;
            let mut quot = vec![k.zero(); deg];
            let mut carry = k.zero();
            for d in (0..=deg).rev() {
                let v = k.add(&poly[d], &k.mul(&carry, &root));
                if d == 0 {
                    carry = v;
                } else {
                    quot[d - 1] = v.clone();
                    carry = v;
                }
            }
            if !k.is_zero(&carry) {
                break;
            }
            poly = quot;
            mult += 1;
        }
        if mult > 0 {
            let shifted = mat.sub(&Matrix::scalar(k, mat.rows(), &root));
            let geometric = mat.rows() - shifted.rank();
            if geometric != mult {
                semisimple = false;
            }
            exponents.extend(std::iter::repeat_n(j, mult));
        }
        root = k.mul(&root, zeta);
    }
    if exponents.len() != n {
        return Err(Error::NotInRootGroup(conductor));
    }
    Ok(Eigenvalues { conductor, exponents, semisimple })
}

/// Fields whose matrices of finite order have liftable eigenvalues.
pub trait CharacterField: Field {
    /// Context able to lift all `exponent`-th roots of unity.
    fn lift_context(&self, exponent: u64) -> Result<LiftContext>;

    fn eigenvalues(&self, ctx: &LiftContext, mat: &Matrix<Self>) -> Result<Eigenvalues>;

    fn lift_root(&self, ctx: &LiftContext, x: &Self::Elem) -> Result<CyclotomicNumber>;

    /// A primitive `n`-th root of unity in this field, if one exists.
    fn primitive_root(&self, n: u64) -> Option<Self::Elem>;

    /// Brauer character value (sum of lifted eigenvalues).
    fn brauer_character(&self, ctx: &LiftContext, mat: &Matrix<Self>) -> Result<CyclotomicNumber> {
        Ok(self.eigenvalues(ctx, mat)?.sum())
    }
}

fn zero_char_context(own_conductor: u64, exponent: u64) -> LiftContext {
    LiftContext::CharZero { conductor: lcm_u64(own_conductor, exponent.max(1)) }
}

impl CharacterField for RationalField {
    fn lift_context(&self, exponent: u64) -> Result<LiftContext> {
        Ok(zero_char_context(1, exponent))
    }

    fn eigenvalues(&self, ctx: &LiftContext, mat: &Matrix<Self>) -> Result<Eigenvalues> {
        let m = ctx.conductor();
        let k = CyclotomicField::new(m)?;
        let cm = mat.map(&k, |x| CyclotomicNumber::from_rational(m, x));
        let cp = cm.charpoly();
        scan_roots(&k, cp, &cm, &k.zeta(), m)
    }

    fn lift_root(&self, ctx: &LiftContext, x: &Self::Elem) -> Result<CyclotomicNumber> {
        let v = CyclotomicNumber::from_rational(ctx.conductor(), x);
        cyclotomic_order(&v)?;
        Ok(v)
    }

    fn primitive_root(&self, n: u64) -> Option<Rational> {
        match n {
            1 => Some(Rational::from_integer(1.into())),
            2 => Some(Rational::from_integer((-1).into())),
            _ => None,
        }
    }

    fn brauer_character(&self, ctx: &LiftContext, mat: &Matrix<Self>) -> Result<CyclotomicNumber> {
        Ok(CyclotomicNumber::from_rational(ctx.conductor(), &mat.trace()))
    }
}

impl CharacterField for CyclotomicField {
    fn lift_context(&self, exponent: u64) -> Result<LiftContext> {
        Ok(zero_char_context(self.conductor(), exponent))
    }

    fn eigenvalues(&self, ctx: &LiftContext, mat: &Matrix<Self>) -> Result<Eigenvalues> {
        let m = ctx.conductor();
        let k = CyclotomicField::new(m)?;
        let cm = mat.map(&k, |x| x.embed(m).expect("context conductor is a multiple"));
        let cp = cm.charpoly();
        scan_roots(&k, cp, &cm, &k.zeta(), m)
    }

    fn lift_root(&self, ctx: &LiftContext, x: &Self::Elem) -> Result<CyclotomicNumber> {
        let v = x.embed(ctx.conductor())?;
        cyclotomic_order(&v)?;
        Ok(v)
    }

    fn primitive_root(&self, n: u64) -> Option<CyclotomicNumber> {
        let m = self.conductor();
        let big = lcm_u64(2, m);
        if n == 0 || !big.is_multiple_of(n) {
            return None;
        }
        // A primitive root of order lcm(2, m) inside Q(zeta_m).
        let generator = if big == m {
            CyclotomicNumber::zeta(m)
        } else {
            -&CyclotomicNumber::root_of_unity(m, m.div_ceil(2) as i64)
        };
        generator.pow((big / n) as i64).ok()
    }

    fn brauer_character(&self, ctx: &LiftContext, mat: &Matrix<Self>) -> Result<CyclotomicNumber> {
        mat.trace().embed(ctx.conductor())
    }
}

impl CharacterField for FiniteField {
    fn lift_context(&self, exponent: u64) -> Result<LiftContext> {
        let e = exponent.max(1);
        if e.gcd(&self.p()) != 1 {
            return Err(Error::NotPRegular { order: e, characteristic: self.p() });
        }
        Ok(LiftContext::Modular(BrauerLiftContext::new(self, e)?))
    }

    fn eigenvalues(&self, ctx: &LiftContext, mat: &Matrix<Self>) -> Result<Eigenvalues> {
        let LiftContext::Modular(b) = ctx else {
            return Err(Error::InvalidField("finite field needs a modular lift context".into()));
        };
        let big = b.carrier().clone();
        let cm = mat.map(&big, |&x| b.embed(x));
        let cp = cm.charpoly();
        scan_roots(&big, cp, &cm, &b.xi(), b.m())
    }

    fn lift_root(&self, ctx: &LiftContext, x: &u32) -> Result<CyclotomicNumber> {
        let LiftContext::Modular(b) = ctx else {
            return Err(Error::InvalidField("finite field needs a modular lift context".into()));
        };
        b.lift_base(*x)
    }

    fn primitive_root(&self, n: u64) -> Option<u32> {
        let units = self.order() - 1;
        (n > 0 && units.is_multiple_of(n)).then(|| self.exp(units / n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational::rat;
    use proptest::prelude::*;

    fn gf7_ctx() -> BrauerLiftContext {
        let f = FiniteField::prime(7).unwrap();
        BrauerLiftContext::with_xi(&f, 3).unwrap()
    }

    #[test]
    fn lift_examples() {
        let ctx = gf7_ctx();
        assert_eq!(ctx.m(), 6);
        assert!(ctx.lift_base(1).unwrap().is_one());
        assert_eq!(ctx.lift_base(3).unwrap(), CyclotomicNumber::zeta(6));
        assert_eq!(ctx.lift_base(2).unwrap(), CyclotomicNumber::zeta(3));
        assert_eq!(ctx.lift_base(6).unwrap(), CyclotomicNumber::from_integer(1, -1));
        let small = BrauerLiftContext::with_xi(&FiniteField::prime(7).unwrap(), 2).unwrap();
        assert!(matches!(small.lift_base(3), Err(Error::NotInRootGroup(3))));
    }

    #[test]
    fn default_context_and_splitting() {
        let f = FiniteField::from_modulus_str(3, "g^2+1").unwrap();
        let ctx = BrauerLiftContext::new(&f, 28).unwrap();
        assert_eq!(ctx.carrier().order(), 729);
        assert!(BrauerLiftContext::new(&f, 3).is_err());
    }

    #[test]
    fn cyclotomic_orders() {
        assert_eq!(cyclotomic_order(&CyclotomicNumber::one(5)).unwrap(), 1);
        assert_eq!(cyclotomic_order(&CyclotomicNumber::zeta(5)).unwrap(), 5);
        assert_eq!(cyclotomic_order(&(-&CyclotomicNumber::zeta(5))).unwrap(), 10);
        let two = CyclotomicNumber::from_integer(4, 2);
        assert_eq!(cyclotomic_order(&two), Err(Error::NotARootOfUnity));
    }

    #[test]
    fn eigenvalues_of_transposition() {
        let f = RationalField;
        let ctx = f.lift_context(2).unwrap();
        let t = Matrix::from_rows(&f, vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
        let ev = f.eigenvalues(&ctx, &t).unwrap();
        assert_eq!(ev.exponents, vec![0, 1]);
        assert!(ev.semisimple);
        let id = Matrix::identity(&f, 3);
        assert_eq!(f.eigenvalues(&ctx, &id).unwrap().exponents, vec![0, 0, 0]);
    }

    #[test]
    fn unipotent_flagged_in_char_3() {
        let f = FiniteField::prime(3).unwrap();
        let ctx = f.lift_context(2).unwrap();
        let u = Matrix::from_rows(&f, vec![vec![1, 1], vec![0, 1]]).unwrap();
        let ev = f.eigenvalues(&ctx, &u).unwrap();
        assert!(!ev.semisimple);
    }

    proptest! {
        #[test]
        fn lift_is_multiplicative_and_injective(a in 1u32..7, b in 1u32..7) {
            let ctx = gf7_ctx();
            let f = ctx.base().clone();
            let la = ctx.lift_base(a).unwrap();
            let lb = ctx.lift_base(b).unwrap();
            prop_assert_eq!(ctx.lift_base(f.mul(a, b)).unwrap(), &la * &lb);
            prop_assert_eq!(a == b, la == lb);
        }

        #[test]
        fn order_divides_unit_group(x in 1u32..729) {
            let f = FiniteField::with_default_modulus(3, 6).unwrap();
            let o = element_order(&f, x).unwrap();
            prop_assert_eq!(728 % o, 0);
            prop_assert_eq!(f.pow(x, o as i64), 1);
        }

        #[test]
        fn embedding_chain_is_direct(cs in prop::collection::vec(-4i64..5, 2)) {
            let x = CyclotomicNumber::from_coefficients(3, &[rat(cs[0]), rat(cs[1])]);
            let two_step = x.embed(6).unwrap().embed(24).unwrap();
            prop_assert_eq!(two_step, x.embed(24).unwrap());
        }
    }
}
