use serde::Serialize;

use super::{format_value, GrothElement, Theta};
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;
use crate::numbers::{CharacterField, CyclotomicField, CyclotomicNumber, Field};
use crate::poly::Poly;
use crate::polyaction::BimoduleU;
use crate::series::{molien, RationalFunction, RationalFunctionT, TruncatedSeries};

/// `Σ_d [M_d] t^d` as one series per `Θ` class, with closed forms when known.
#[derive(Clone, Debug)]
pub struct GrothSeries {
    pub labels: Vec<String>,
    pub truncation: usize,
    pub truncated: Vec<TruncatedSeries<CyclotomicField>>,
    pub closed: Option<Vec<RationalFunctionT>>,
}

/// A closed form evaluated at `t = 1`: either a value or a pole.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueAtOne {
    pub class: String,
    pub closed_form: String,
    pub value: Option<String>,
    pub pole_order: usize,
}

impl GrothSeries {
    /// Coefficient of `t^d` as a class, for `d` within the truncation.
    pub fn coefficient(&self, d: usize) -> GrothElement {
        GrothElement::new(self.truncated.iter().map(|s| s.coeff(d).clone()).collect())
    }

    /// Whether every closed form expands to the stored truncation.
    pub fn closed_forms_agree(&self) -> Result<Option<bool>> {
        let Some(closed) = &self.closed else { return Ok(None) };
        for (f, s) in closed.iter().zip(&self.truncated) {
            let e = f.expand(self.truncation)?;
            let ok = e.coeffs().iter().zip(s.coeffs()).all(|(a, b)| (a - b).is_zero());
            if !ok {
                return Ok(Some(false));
            }
        }
        Ok(Some(true))
    }

    /// Classwise values at `t = 1`; a pole is recorded, not raised.
    pub fn at_one(&self) -> Option<Vec<ValueAtOne>> {
        let closed = self.closed.as_ref()?;
        Some(closed.iter().zip(&self.labels).map(|(f, l)| value_at_one(f, l)).collect())
    }
}

pub fn value_at_one(f: &RationalFunctionT, class: &str) -> ValueAtOne {
    let one = f.field().one();
    let (value, pole_order) = match f.evaluate(&one) {
        Ok(v) => (Some(format_value(&v)), 0),
        Err(_) => (None, f.pole_order(&one)),
    };
    ValueAtOne { class: class.to_string(), closed_form: f.format("t"), value, pole_order }
}

/// `f(s t)`, over the compositum of the coefficient fields.
pub fn scale_variable(f: &RationalFunctionT, s: &CyclotomicNumber) -> Result<RationalFunctionT> {
    let m = num_integer::lcm(f.field().conductor(), s.conductor());
    let g = f.embed(m)?;
    let k = CyclotomicField::new(m)?;
    let s = s.embed(m)?;
    let scaled = |p: &Poly<CyclotomicField>| -> Result<Poly<CyclotomicField>> {
        let coeffs = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| Ok(c * &s.pow(i as i64)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(&k, coeffs))
    };
    RationalFunction::new(scaled(g.numerator())?, scaled(g.denominator())?)
}

/// `a / b` over the compositum of the coefficient fields.
pub fn quotient(a: &RationalFunctionT, b: &RationalFunctionT) -> Result<RationalFunctionT> {
    let m = num_integer::lcm(a.field().conductor(), b.field().conductor());
    a.embed(m)?.div(&b.embed(m)?)
}

/// `1 / Π (1 - t^{d_i})`.
pub fn polynomial_hilbert(degrees: &[usize]) -> RationalFunctionT {
    let k = CyclotomicField::new(1).expect("conductor 1");
    let mut den = Poly::constant(&k, k.one());
    for &d in degrees {
        let mut c = vec![k.zero(); d + 1];
        c[0] = k.one();
        c[d] = k.from_int(-1);
        den = den.mul(&Poly::new(&k, c));
    }
    RationalFunction::new(Poly::constant(&k, k.one()), den).expect("nonzero denominator")
}

/// Closed form of `[(U ⊗ k[V])^G](t)` per `Θ` class via Molien's formula: on `(γ, c^a)`
/// it is `(1/|G|) Σ_g tr(γ · g | U) / det(1 - ω̂^a t g^{-1})`. `theta.gamma()` must be
/// the second-group action recorded on `u`.
pub fn equivariant_molien<F: CharacterField>(
    u: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    theta: &Theta<F>,
    projective: bool,
) -> Result<Vec<RationalFunctionT>> {
    if theta.gamma().elements() != u.gamma().elements() {
        return Err(Error::NotThetaStable("the acting group is not the one recorded on the module".into()));
    }
    let field = group.field();
    let p = field.characteristic();
    let ctx = group.lift_context(num_integer::lcm(theta.gamma().regular_exponent(p), theta.c_order()))?;
    let g_classes = group.conjugacy_classes(p);
    let l_g = u.element_matrices(group)?;
    let mut per_gamma = Vec::new();
    for gc in &theta.gamma_classes().classes {
        if !gc.p_regular {
            per_gamma.push(None);
            continue;
        }
        let gamma = theta.gamma().element(gc.representative);
        let chi = g_classes
            .classes
            .iter()
            .map(|c| {
                if !c.p_regular {
                    return Ok(CyclotomicNumber::zero(1));
                }
                field.brauer_character(&ctx, &gamma.mul(&l_g[c.representative])?)
            })
            .collect::<Result<Vec<_>>>()?;
        per_gamma.push(Some(molien(group, &ctx, &chi, projective)?));
    }
    theta
        .classes()
        .iter()
        .map(|cl| {
            let base = per_gamma[cl.gamma_class].as_ref().expect("regular class");
            scale_variable(base, &theta.omega_power(cl.c_power))
        })
        .collect()
}

/// Closed form of a graded piece on which `Γ` acts trivially, per `Θ` class.
pub fn scalar_closed_forms<F: CharacterField>(hilbert: &RationalFunctionT, theta: &Theta<F>) -> Result<Vec<RationalFunctionT>> {
    theta.classes().iter().map(|cl| scale_variable(hilbert, &theta.omega_power(cl.c_power))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_GROUP_CAP;
    use crate::linalg::Matrix;
    use crate::numbers::{rat, RationalField};
    use crate::series::molien_trivial;

    #[test]
    fn scaling_the_variable() {
        let k = CyclotomicField::new(1).unwrap();
        let f = RationalFunction::new(Poly::constant(&k, k.one()), Poly::new(&k, vec![k.one(), k.from_int(-1)])).unwrap();
        let g = scale_variable(&f, &CyclotomicNumber::from_integer(1, -1)).unwrap();
        let e = g.expand(3).unwrap();
        let got: Vec<_> = e.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
        assert_eq!(got, vec![rat(1), rat(-1), rat(1), rat(-1)]);
    }

    #[test]
    fn sign_part_of_plus_minus_one() {
        let f = RationalField;
        let g = FiniteMatrixGroup::generate(&f, 2, vec![Matrix::scalar(&f, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap();
        let u = BimoduleU::sign(&g).unwrap();
        let theta = Theta::gamma_only(u.gamma().clone()).unwrap();
        let forms = equivariant_molien(&u, &g, &theta, false).unwrap();
        let x = quotient(&forms[0], &molien_trivial(&g).unwrap()).unwrap();
        let at = value_at_one(&x, "1");
        assert_eq!(at.value.as_deref(), Some("1"));
        assert_eq!(polynomial_hilbert(&[2]).expand(4).unwrap().coeffs().len(), 5);
    }
}
