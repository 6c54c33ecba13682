//! Truncated power series and rational functions in one variable `t`, with Molien's
//! formula, Hilbert-series fitting, and evaluation at roots of unity.

mod molien;
mod rational_function;

use crate::error::{Error, Result};
use crate::numbers::{Field, RationalField};
use crate::poly::Poly;

pub use molien::{molien, molien_trivial};
pub use rational_function::{evaluate, quotient_x, RationalFunction, RationalFunctionT};

/// Coefficients `c_0..c_D` of a power series known modulo `t^{D+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> TruncatedSeries<F> {
    /// Series with the given coefficients; the truncation is `coeffs.len() - 1`.
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { field: field.clone(), coeffs }
    }

    pub fn from_dims(field: &F, dims: &[usize]) -> Self {
        Self::new(field, dims.iter().map(|&d| field.from_int(d as i64)).collect())
    }

    pub fn from_poly(p: &Poly<F>, truncation: usize) -> Self {
        Self::new(p.field(), (0..=truncation).map(|k| p.coeff(k)).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &F::Elem {
        &self.coeffs[d]
    }

    pub fn truncate(&self, d: usize) -> Self {
        Self::new(&self.field, self.coeffs[..=d.min(self.truncation())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|k| self.field.add(&self.coeffs[k], &other.coeffs[k])).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|k| self.field.sub(&self.coeffs[k], &other.coeffs[k])).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if f.is_zero(a) {
                continue;
            }
            f.axpy(&mut out[i..], a, &other.coeffs[..n - i]);
        }
        Self::new(f, out)
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        self.mul(&Self::from_poly(p, self.truncation()))
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let f = &self.field;
        let c0 = &self.coeffs[0];
        if f.is_zero(c0) {
            return Err(Error::DivisionByZeroSeries);
        }
        let inv0 = f.inv(c0)?;
        let n = self.coeffs.len();
        let mut out = vec![f.zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = f.zero();
            for j in 1..=k {
                acc = f.add(&acc, &f.mul(&self.coeffs[j], &out[k - j]));
            }
            out[k] = f.neg(&f.mul(&acc, &inv0));
        }
        Ok(Self::new(f, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn map<G: Field>(&self, target: &G, g: impl Fn(&F::Elem) -> G::Elem) -> TruncatedSeries<G> {
        TruncatedSeries::new(target, self.coeffs.iter().map(g).collect())
    }

    /// `c0 + c1*t + ... + O(t^{D+1})`.
    pub fn format(&self, var: &str) -> String {
        let body = format_ascending(&self.field, &self.coeffs, var);
        format!("{body} + O({var}^{})", self.truncation() + 1)
    }
}

/// A series fitted to the form `numerator / prod (1 - t^{d_i})`.
#[derive(Clone, Debug, PartialEq)]
pub struct FittedSeries<F: Field> {
    pub numerator: Poly<F>,
    pub degrees: Vec<usize>,
}

impl<F: Field> FittedSeries<F> {
    pub fn denominator(&self) -> Poly<F> {
        let f = self.numerator.field();
        self.degrees.iter().fold(Poly::one(f), |acc, &d| acc.mul(&Poly::one_minus(f, &f.one(), d)))
    }

    pub fn rational(&self) -> RationalFunction<F> {
        RationalFunction::new(self.numerator.clone(), self.denominator()).expect("denominator is nonzero")
    }

    /// `(num) / ((1-t^a)(1-t^b)...)`, keeping the factored denominator.
    pub fn format(&self, var: &str) -> String {
        let num = format_ascending(self.numerator.field(), self.numerator.coeffs(), var);
        if self.degrees.is_empty() {
            return num;
        }
        let den: String = self
            .degrees
            .iter()
            .map(|&d| if d == 1 { format!("(1-{var})") } else { format!("(1-{var}^{d})") })
            .collect();
        format!("({num}) / ({den})")
    }
}

/// Multiplies by `prod (1 - t^{d_i})` and accepts the result as an exact numerator when
/// its coefficients vanish on the last `min d_i` degrees of the truncation window.
pub fn fit_denominator<F: Field>(series: &TruncatedSeries<F>, degrees: &[usize]) -> Result<FittedSeries<F>> {
    let f = series.field();
    let dtrunc = series.truncation();
    let den = degrees.iter().fold(Poly::one(f), |acc, &d| acc.mul(&Poly::one_minus(f, &f.one(), d)));
    let num = series.mul_poly(&den);
    let window = degrees.iter().copied().min().unwrap_or(1).max(1);
    let top = num.coeffs().iter().rposition(|c| !f.is_zero(c));
    if let Some(top) = top {
        if top + window > dtrunc {
            return Err(Error::NoStabilization(dtrunc));
        }
    }
    Ok(FittedSeries { numerator: Poly::new(f, num.coeffs().to_vec()), degrees: degrees.to_vec() })
}

/// Hilbert series data from per-degree dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertFit {
    pub series: TruncatedSeries<RationalField>,
    pub fit: Option<FittedSeries<RationalField>>,
}

pub fn hilbert_from_dims(dims: &[usize], degrees: Option<&[usize]>) -> Result<HilbertFit> {
    let series = TruncatedSeries::from_dims(&RationalField, dims);
    let fit = degrees.map(|d| fit_denominator(&series, d)).transpose()?;
    Ok(HilbertFit { series, fit })
}

/// Degrees `d_1..d_n` with `series = 1 / Π (1 - t^{d_i})` through the truncation, if the
/// series has that shape with exactly `nvars` factors of degree within the truncation.
pub fn infer_polynomial_degrees(series: &TruncatedSeries<RationalField>, nvars: usize) -> Option<Vec<usize>> {
    let f = series.field();
    let top = series.truncation();
    let mut p = series.inverse().ok()?;
    let mut degrees = Vec::new();
    while let Some(k) = (1..=top).find(|&k| !f.is_zero(p.coeff(k))) {
        if degrees.len() == nvars {
            return None;
        }
        // p = Π (1 - t^{d_i}) has coefficient -(number of d_i = k) at its first gap.
        if *p.coeff(k) >= crate::numbers::rat(0) {
            return None;
        }
        degrees.push(k);
        let geometric = TruncatedSeries::new(f, (0..=top).map(|i| if i % k == 0 { f.one() } else { f.zero() }).collect());
        p = p.mul(&geometric);
    }
    (degrees.len() == nvars && f.is_one(p.coeff(0))).then_some(degrees)
}

/// Views a rational-coefficient function over `Q(ζ_1)`.
pub fn to_cyclotomic(f: &RationalFunction<RationalField>) -> RationalFunctionT {
    let k = crate::numbers::CyclotomicField::new(1).expect("conductor 1");
    f.map(&k, |c| crate::numbers::CyclotomicNumber::from_rational(1, c))
}

/// Ascending-order polynomial text, e.g. `1 + 2*t - t^3`.
pub fn format_ascending<F: Field>(field: &F, coeffs: &[F::Elem], var: &str) -> String {
    let mut out = String::new();
    for (e, c) in coeffs.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let mut cs = field.format(c);
        let negative = cs.starts_with('-') && !cs[1..].contains(['+', '-', ' ']);
        if negative {
            cs.remove(0);
        } else if cs.contains(['+', ' ']) || cs[1..].contains('-') {
            cs = format!("({cs})");
        }
        let term = match (e, cs.as_str()) {
            (0, _) => cs,
            (1, "1") => var.to_string(),
            (_, "1") => format!("{var}^{e}"),
            (1, _) => format!("{cs}*{var}"),
            _ => format!("{cs}*{var}^{e}"),
        };
        match (out.is_empty(), negative) {
            (true, true) => out = format!("-{term}"),
            (true, false) => out = term,
            (false, true) => out = format!("{out} - {term}"),
            (false, false) => out = format!("{out} + {term}"),
        }
    }
    if out.is_empty() { "0".into() } else { out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn p(cs: &[i64]) -> Poly<RationalField> {
        Poly::new(&RationalField, cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn polynomial_degrees_are_recovered() {
        let h = TruncatedSeries::from_poly(&p(&[1]), 12)
            .div(&TruncatedSeries::from_poly(&p(&[1, -1]).mul(&p(&[1, 0, -1])).mul(&p(&[1, 0, -1])), 12))
            .unwrap();
        assert_eq!(infer_polynomial_degrees(&h, 3), Some(vec![1, 2, 2]));
        assert_eq!(infer_polynomial_degrees(&h, 2), None);
        // 1 + t^2 over (1 - t^2)^2 is not of that shape.
        let veronese = TruncatedSeries::from_poly(&p(&[1, 0, 1]), 12)
            .div(&TruncatedSeries::from_poly(&p(&[1, 0, -1]).mul(&p(&[1, 0, -1])), 12))
            .unwrap();
        assert_eq!(infer_polynomial_degrees(&veronese, 2), None);
    }

    #[test]
    fn series_arithmetic() {
        let f = RationalField;
        let one_minus_t = TruncatedSeries::from_poly(&p(&[1, -1]), 5);
        let geom = one_minus_t.inverse().unwrap();
        assert_eq!(geom, TruncatedSeries::from_dims(&f, &[1, 1, 1, 1, 1, 1]));
        assert_eq!(geom.format("t"), "1 + t + t^2 + t^3 + t^4 + t^5 + O(t^6)");
        let zero_const = TruncatedSeries::from_poly(&p(&[0, 1]), 3);
        assert_eq!(zero_const.inverse().unwrap_err(), Error::DivisionByZeroSeries);
    }

    #[test]
    fn hilbert_fits() {
        let fit = hilbert_from_dims(&[1, 0, 3, 0, 5, 0, 7, 0, 9], Some(&[2, 2])).unwrap();
        assert_eq!(fit.fit.as_ref().unwrap().numerator, p(&[1, 0, 1]));
        assert_eq!(fit.fit.unwrap().format("t"), "(1 + t^2) / ((1-t^2)(1-t^2))");
        let dims: Vec<usize> = (0..10).map(|d| d + 1).collect();
        let fit = hilbert_from_dims(&dims, Some(&[1, 1])).unwrap();
        assert_eq!(fit.fit.unwrap().numerator, p(&[1]));
        // Too short to see the numerator settle.
        let err = hilbert_from_dims(&[1, 0, 3], Some(&[2, 2])).unwrap_err();
        assert_eq!(err, Error::NoStabilization(2));
    }

    #[test]
    fn ascending_format() {
        let f = RationalField;
        assert_eq!(format_ascending(&f, &[rat(0), rat(2), rat(0), rat(-1)], "t"), "2*t - t^3");
        assert_eq!(format_ascending(&f, &[rat(-1), rat(1)], "t"), "-1 + t");
    }
}
