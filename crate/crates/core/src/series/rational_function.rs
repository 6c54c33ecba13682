use super::{format_ascending, TruncatedSeries};
use crate::error::{Error, Result};
use crate::numbers::{CyclotomicField, CyclotomicNumber, Field};
use crate::poly::Poly;

/// `num / den` in lowest terms. The denominator is scaled to constant term 1 when
/// `den(0) != 0` (the power-series normalization) and made monic otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

/// Rational functions with cyclotomic coefficients.
pub type RationalFunctionT = RationalFunction<CyclotomicField>;

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        let f = den.field().clone();
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Poly::one(&f) });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.exact_div(&g)?, den.exact_div(&g)?);
        let c0 = den.coeff(0);
        let scale = if f.is_zero(&c0) { den.leading().expect("nonzero").clone() } else { c0 };
        let inv = f.inv(&scale)?;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let one = Poly::one(p.field());
        RationalFunction { num: p, den: one }
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.den
    }

    pub fn field(&self) -> &F {
        self.den.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the canonical denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
            .expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("product of nonzero denominators")
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Power-series expansion through `t^truncation`.
    pub fn expand(&self, truncation: usize) -> Result<TruncatedSeries<F>> {
        let num = TruncatedSeries::from_poly(&self.num, truncation);
        let den = TruncatedSeries::from_poly(&self.den, truncation);
        num.div(&den)
    }

    /// Value at `x`; a zero of the reduced denominator is reported as `PoleAtPoint`.
    pub fn evaluate(&self, x: &F::Elem) -> Result<F::Elem> {
        let f = self.field();
        let d = self.den.eval(x);
        if f.is_zero(&d) {
            return Err(Error::PoleAtPoint);
        }
        f.div(&self.num.eval(x), &d)
    }

    /// Multiplicity of `x` as a root of the reduced denominator.
    pub fn pole_order(&self, x: &F::Elem) -> usize {
        let f = self.field();
        let lin = Poly::new(f, vec![f.neg(x), f.one()]);
        let mut d = self.den.clone();
        let mut k = 0;
        while let Ok((q, r)) = d.divrem(&lin) {
            if !r.is_zero() || d.degree() == Some(0) {
                break;
            }
            d = q;
            k += 1;
        }
        k
    }

    pub fn map<G: Field>(&self, target: &G, g: impl Fn(&F::Elem) -> G::Elem) -> RationalFunction<G> {
        RationalFunction::new(self.num.map(target, &g), self.den.map(target, &g)).expect("nonzero denominator")
    }

    /// `num / den`, both in ascending powers; a polynomial prints without a denominator.
    pub fn format(&self, var: &str) -> String {
        let f = self.field();
        let num = format_ascending(f, self.num.coeffs(), var);
        if self.is_polynomial() && f.is_one(&self.den.coeff(0)) {
            return num;
        }
        let den = format_ascending(f, self.den.coeffs(), var);
        format!("({num}) / ({den})")
    }
}

impl RationalFunction<CyclotomicField> {
    /// Re-expresses all coefficients over `Q(zeta_target)`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        let k = CyclotomicField::new(target)?;
        let conv = |p: &Poly<CyclotomicField>| -> Result<Poly<CyclotomicField>> {
            Ok(Poly::new(&k, p.coeffs().iter().map(|c| c.embed(target)).collect::<Result<Vec<_>>>()?))
        };
        Self::new(conv(&self.num)?, conv(&self.den)?)
    }

    /// Equality as functions, comparing over the compositum of the two coefficient fields.
    pub fn same_function(&self, other: &Self) -> bool {
        let m = num_integer::lcm(self.field().conductor(), other.field().conductor());
        match (self.embed(m), other.embed(m)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Applies `zeta ↦ zeta^s` to every coefficient.
    pub fn galois(&self, s: i64) -> Self {
        let k = *self.field();
        self.map(&k, |c| c.galois(s))
    }
}

/// `X_{M,R}(t) = Hilb(M, t) / Hilb(R, t)`.
pub fn quotient_x<F: Field>(m: &RationalFunction<F>, r: &RationalFunction<F>) -> Result<RationalFunction<F>> {
    m.div(r)
}

/// Evaluates at a cyclotomic point of any conductor, working in the common field.
pub fn evaluate(f: &RationalFunctionT, point: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let m = num_integer::lcm(f.field().conductor(), point.conductor());
    let g = f.embed(m)?;
    g.evaluate(&point.embed(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, RationalField};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly<RationalField> {
        Poly::new(&RationalField, cs.iter().map(|&c| rat(c)).collect())
    }

    fn cp(m: u64, cs: &[i64]) -> Poly<CyclotomicField> {
        let k = CyclotomicField::new(m).unwrap();
        Poly::new(&k, cs.iter().map(|&c| k.from_int(c)).collect())
    }

    #[test]
    fn canonical_form_and_quotient() {
        // (2t/(1-t^2)^2) / ((1+t^2)/(1-t^2)^2) = 2t/(1+t^2)
        let den = p(&[1, 0, -1]).mul(&p(&[1, 0, -1]));
        let m = RationalFunction::new(p(&[0, 2]), den.clone()).unwrap();
        let r = RationalFunction::new(p(&[1, 0, 1]), den).unwrap();
        let x = quotient_x(&m, &r).unwrap();
        assert_eq!(x.numerator(), &p(&[0, 2]));
        assert_eq!(x.denominator(), &p(&[1, 0, 1]));
        assert_eq!(x.format("t"), "(2*t) / (1 + t^2)");
        assert_eq!(x.evaluate(&rat(1)).unwrap(), rat(1));
        assert_eq!(quotient_x(&r, &r).unwrap(), RationalFunction::from_poly(p(&[1])));
        let zero = RationalFunction::from_poly(p(&[]));
        assert_eq!(quotient_x(&r, &zero).unwrap_err(), Error::DivisionByZeroSeries);
    }

    #[test]
    fn evaluation_examples() {
        let one_plus_t = RationalFunction::from_poly(cp(1, &[1, 1]));
        assert!(evaluate(&one_plus_t, &CyclotomicNumber::from_integer(2, -1)).unwrap().is_zero());
        let x = RationalFunction::from_poly(cp(1, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]))
            .mul(&RationalFunction::from_poly(cp(1, &[1])));
        let x = x.add(&RationalFunction::from_poly(Poly::monomial(&CyclotomicField::new(1).unwrap(), CyclotomicNumber::one(1), 28)));
        assert_eq!(evaluate(&x, &CyclotomicNumber::from_integer(1, -1)).unwrap(), CyclotomicNumber::from_integer(1, 3));
        let pole = RationalFunction::new(cp(1, &[1]), cp(1, &[1, -1])).unwrap();
        assert_eq!(evaluate(&pole, &CyclotomicNumber::one(1)).unwrap_err(), Error::PoleAtPoint);
        assert_eq!(pole.pole_order(&CyclotomicNumber::one(1)), 1);
        let double = RationalFunction::new(p(&[1]), p(&[1, -2, 1])).unwrap();
        assert_eq!(double.pole_order(&rat(1)), 2);
    }

    #[test]
    fn expansion() {
        let h = RationalFunction::new(p(&[1, 0, 1]), p(&[1, 0, -2, 0, 1])).unwrap();
        let s = h.expand(6).unwrap();
        let dims: Vec<_> = s.coeffs().to_vec();
        assert_eq!(dims, [1, 0, 3, 0, 5, 0, 7].map(rat).to_vec());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn cancellation_is_exact(a in prop::collection::vec(-3i64..4, 1..4), h in prop::collection::vec(-3i64..4, 1..4)) {
            let ap = p(&a);
            let mut hs = h.clone();
            hs[0] = 1;
            let hr = RationalFunction::new(p(&[1]), p(&hs)).unwrap();
            let ah = RationalFunction::from_poly(ap.clone()).mul(&hr);
            prop_assert_eq!(quotient_x(&ah, &hr).unwrap(), RationalFunction::from_poly(ap));
        }

        #[test]
        fn evaluation_commutes_with_galois(cs in prop::collection::vec(-3i64..4, 1..5), j in 0i64..8, s in prop::sample::select(vec![1i64, 3, 5, 7])) {
            let k = CyclotomicField::new(8).unwrap();
            let num = Poly::new(&k, cs.iter().enumerate().map(|(i, &c)| CyclotomicNumber::root_of_unity(8, i as i64).scale(&rat(c))).collect());
            let f = RationalFunction::new(num, cp(8, &[1, 0, 0, 1])).unwrap();
            let pt = CyclotomicNumber::root_of_unity(8, j);
            match evaluate(&f, &pt) {
                Ok(v) => prop_assert_eq!(evaluate(&f.galois(s), &pt.galois(s)).unwrap(), v.galois(s)),
                Err(e) => prop_assert_eq!(e, Error::PoleAtPoint),
            }
        }

        #[test]
        fn expansion_then_fit_recovers_numerator(cs in prop::collection::vec(0i64..4, 1..5)) {
            let degrees = [1usize, 2];
            let fit = super::super::FittedSeries { numerator: p(&cs), degrees: degrees.to_vec() };
            let s = RationalFunction::new(fit.numerator.clone(), fit.denominator()).unwrap().expand(12).unwrap();
            let back = super::super::fit_denominator(&s, &degrees).unwrap();
            prop_assert_eq!(back.numerator, p(&cs));
        }
    }
}
