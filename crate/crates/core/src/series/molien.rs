use super::{RationalFunction, RationalFunctionT};
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;
use crate::numbers::{CharacterField, CyclotomicField, CyclotomicNumber, Field, LiftContext, Rational};
use crate::poly::Poly;

/// Molien's formula `(1/|G|) Σ_g χ(g) / det(1 - t g^{-1})`, where `χ` is the (Brauer)
/// character of the module's left-action matrices, given per conjugacy class in the
/// order of `group.conjugacy_classes(char)`.
///
/// In positive characteristic dividing `|G|` the formula needs a projective module; the
/// caller asserts this with `projective`. Classes that are not p-regular contribute 0.
pub fn molien<F: CharacterField>(
    group: &FiniteMatrixGroup<F>,
    ctx: &LiftContext,
    character: &[CyclotomicNumber],
    projective: bool,
) -> Result<RationalFunctionT> {
    let p = group.field().characteristic();
    let order = group.order() as u64;
    if p != 0 && order.is_multiple_of(p) && !projective {
        return Err(Error::HypothesisFailure(
            "Molien's formula in modular characteristic needs a projective module".into(),
        ));
    }
    let classes = group.conjugacy_classes(p);
    if character.len() != classes.len() {
        return Err(Error::CharacterLengthMismatch { expected: classes.len(), got: character.len() });
    }
    let m = character.iter().fold(ctx.conductor(), |acc, c| num_integer::lcm(acc, c.conductor()));
    let k = CyclotomicField::new(m)?;
    let mut total = RationalFunction::from_poly(Poly::zero(&k));
    for (class, chi) in classes.classes.iter().zip(character) {
        if !class.p_regular || chi.is_zero() {
            continue;
        }
        let ev = group.eigenvalues(ctx, class.representative)?;
        let den = ev.det_one_minus_t_inverse().iter().map(|c| c.embed(m)).collect::<Result<Vec<_>>>()?;
        let weight = chi.embed(m)?.scale(&Rational::from_integer((class.size() as i64).into()));
        total = total.add(&RationalFunction::new(Poly::constant(&k, weight), Poly::new(&k, den))?);
    }
    Ok(total.scale(&k.from_rational(&Rational::new(1.into(), (order as i64).into()))?))
}

/// Molien series of the invariant ring.
pub fn molien_trivial<F: CharacterField>(group: &FiniteMatrixGroup<F>) -> Result<RationalFunctionT> {
    let ctx = group.lift_context(1)?;
    let n = group.conjugacy_classes(group.field().characteristic()).len();
    molien(group, &ctx, &vec![CyclotomicNumber::one(1); n], false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named::{cyclic_scalar, dihedral, symmetric};
    use crate::groups::DEFAULT_GROUP_CAP;
    use crate::linalg::Matrix;
    use crate::numbers::{rat, RationalField};
    use crate::polyaction::invariants_up_to;

    fn cpoly(cs: &[i64]) -> Poly<CyclotomicField> {
        let k = CyclotomicField::new(1).unwrap();
        Poly::new(&k, cs.iter().map(|&c| k.from_int(c)).collect())
    }

    fn check_against_kernel<F: CharacterField>(g: &FiniteMatrixGroup<F>, top: usize) {
        let series = molien_trivial(g).unwrap().expand(top).unwrap();
        let dims = invariants_up_to(g, top).unwrap().dims();
        let got: Vec<_> = series.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
        let expected: Vec<_> = dims.iter().map(|&d| rat(d as i64)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn molien_examples() {
        let f = RationalField;
        let trivial = FiniteMatrixGroup::generate(&f, 2, vec![], 10).unwrap();
        let h = molien_trivial(&trivial).unwrap();
        assert!(h.same_function(&RationalFunction::new(cpoly(&[1]), cpoly(&[1, -2, 1])).unwrap()));
        let pm = FiniteMatrixGroup::generate(&f, 2, vec![Matrix::scalar(&f, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap();
        let h = molien_trivial(&pm).unwrap();
        assert!(h.same_function(&RationalFunction::new(cpoly(&[1, 0, 1]), cpoly(&[1, 0, -2, 0, 1])).unwrap()));
        let s2 = symmetric(&f, 2).unwrap();
        let h = molien_trivial(&s2).unwrap();
        assert!(h.same_function(&RationalFunction::new(cpoly(&[1]), cpoly(&[1, -1]).mul(&cpoly(&[1, 0, -1]))).unwrap()));
    }

    #[test]
    fn molien_matches_kernels() {
        let f = RationalField;
        check_against_kernel(&symmetric(&f, 3).unwrap(), 8);
        check_against_kernel(&dihedral(&f, 4).unwrap(), 8);
        let k4 = CyclotomicField::new(4).unwrap();
        check_against_kernel(&cyclic_scalar(&k4, 4, 2).unwrap(), 8);
    }

    #[test]
    fn modular_needs_projectivity() {
        let f = crate::numbers::FiniteField::prime(2).unwrap();
        let s2 = symmetric(&f, 2).unwrap();
        assert!(matches!(molien_trivial(&s2), Err(Error::HypothesisFailure(_))));
        let ctx = s2.lift_context(1).unwrap();
        let n = s2.conjugacy_classes(2).len();
        assert_eq!(
            molien(&s2, &ctx, &vec![CyclotomicNumber::one(1); n + 1], true).unwrap_err(),
            Error::CharacterLengthMismatch { expected: n, got: n + 1 }
        );
    }
}
