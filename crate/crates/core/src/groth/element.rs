use serde::Serialize;

use super::Theta;
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;
use crate::linalg::Matrix;
use crate::numbers::{format_rational, CharacterField, CyclotomicNumber, LiftContext, Rational};

/// A virtual `k(Θ)`-module, stored as its Brauer character on the p-regular classes of
/// `Θ` in the order of [`Theta::classes`].
#[derive(Clone, Debug)]
pub struct GrothElement {
    values: Vec<CyclotomicNumber>,
}

impl GrothElement {
    pub fn new(values: Vec<CyclotomicNumber>) -> Self {
        GrothElement { values }
    }

    pub fn zero(classes: usize) -> Self {
        GrothElement { values: vec![CyclotomicNumber::zero(1); classes] }
    }

    /// The element `n · [trivial]`.
    pub fn constant(classes: usize, n: i64) -> Self {
        GrothElement { values: vec![CyclotomicNumber::from_integer(1, n); classes] }
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the identity class, i.e. the virtual dimension.
    pub fn degree(&self) -> Option<Rational> {
        self.values.first().and_then(CyclotomicNumber::as_rational)
    }

    pub fn add(&self, other: &Self) -> Self {
        GrothElement { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GrothElement { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        GrothElement { values: self.values.iter().map(|a| -a).collect() }
    }

    /// Classwise product, the class of the tensor product.
    pub fn mul(&self, other: &Self) -> Self {
        GrothElement { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn formatted(&self) -> Vec<String> {
        self.values.iter().map(format_value).collect()
    }
}

impl PartialEq for GrothElement {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.sub(other).is_zero()
    }
}

/// Human-readable exact value: a rational when possible, else a polynomial in
/// `z = exp(2πi/m)` tagged with `m`.
pub fn format_value(x: &CyclotomicNumber) -> String {
    match x.as_rational() {
        Some(r) => format_rational(&r),
        None => format!("{} (z = zeta_{})", x.to_poly_string(), x.conductor()),
    }
}

/// Brauer character of one element given the module's generator images, refusing
/// elements of order divisible by the characteristic.
pub fn brauer_value<F: CharacterField>(
    group: &FiniteMatrixGroup<F>,
    ctx: &LiftContext,
    images: &[Matrix<F>],
    element: usize,
) -> Result<CyclotomicNumber> {
    let p = group.field().characteristic();
    let order = group.element_order(element);
    if p != 0 && order.is_multiple_of(p) {
        return Err(Error::NotPRegular { order, characteristic: p });
    }
    let dim = images.first().map_or(0, Matrix::rows);
    let all = group.representation(group.field(), dim, images)?;
    group.field().brauer_character(ctx, &all[element])
}

/// The class of a module on which `Γ` acts through `gamma_images` (one matrix per
/// generator of `theta.gamma()`) and `c` through `c_image`.
pub fn character_of<F: CharacterField>(
    theta: &Theta<F>,
    dim: usize,
    gamma_images: &[Matrix<F>],
    c_image: Option<&Matrix<F>>,
) -> Result<GrothElement> {
    let field = theta.gamma().field();
    let rho = theta.gamma().representation(field, dim, gamma_images)?;
    let c = match c_image {
        Some(c) => {
            if c.rows() != dim || c.cols() != dim {
                return Err(Error::ActionMismatch(format!("cyclic generator is not {dim}x{dim}")));
            }
            if !c.pow(theta.c_order()).is_identity() {
                return Err(Error::ActionMismatch("cyclic generator has the wrong order".into()));
            }
            for g in gamma_images {
                if c.mul(g)? != g.mul(c)? {
                    return Err(Error::ActionMismatch("cyclic generator does not commute with the group".into()));
                }
            }
            c.clone()
        }
        None if theta.c_order() == 1 => Matrix::identity(field, dim),
        None => return Err(Error::ActionMismatch("the cyclic factor needs an action matrix".into())),
    };
    let values = theta
        .classes()
        .iter()
        .map(|cl| {
            let m = rho[cl.gamma_rep].mul(&c.pow(cl.c_power))?;
            Ok(theta.embed(&field.brauer_character(theta.ctx(), &m)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrothElement::new(values))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    Equality,
    Inequality,
}

/// Outcome of comparing two classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub mode: CompareMode,
    pub holds: bool,
    /// `a != b`, meaningful when `holds` in inequality mode.
    pub strict: bool,
    /// Multiplicities of `a - b` on the irreducible characters, for inequality mode.
    pub multiplicities: Option<Vec<String>>,
    pub difference: Vec<String>,
}

/// Linear characters of an abelian `Γ` with invertible order, as exponents of
/// `ζ_exponent` on every element.
fn linear_characters<F: CharacterField>(gamma: &FiniteMatrixGroup<F>) -> Vec<Vec<u64>> {
    let e = gamma.exponent().max(1);
    let gens = gamma.generator_indices();
    let orders: Vec<u64> = gens.iter().map(|&g| gamma.element_order(g)).collect();
    let total: u64 = orders.iter().product();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let images: Vec<u64> = orders
            .iter()
            .map(|&o| {
                let k = c % o;
                c /= o;
                k * (e / o)
            })
            .collect();
        let values = gamma.extend_along_words(0u64, &images, |a, b| (a + b) % e);
        let hom = (0..gamma.order())
            .all(|x| gens.iter().zip(&images).all(|(&g, &v)| values[gamma.mul(x, g)] == (values[x] + v) % e));
        if hom && !out.contains(&values) {
            out.push(values);
        }
    }
    out
}

/// Compares `a` and `b`. Inequality asks whether `a - b` is the class of a genuine module,
/// decided through multiplicities of the irreducible characters; this needs `Θ` abelian
/// of order invertible in the field.
pub fn compare<F: CharacterField>(
    theta: &Theta<F>,
    a: &GrothElement,
    b: &GrothElement,
    mode: CompareMode,
) -> Result<Comparison> {
    if a.len() != theta.len() || b.len() != theta.len() {
        return Err(Error::CharacterLengthMismatch { expected: theta.len(), got: a.len().min(b.len()) });
    }
    let diff = a.sub(b);
    let difference = diff.formatted();
    let equal = diff.is_zero();
    if mode == CompareMode::Equality {
        return Ok(Comparison { mode, holds: equal, strict: !equal, multiplicities: None, difference });
    }
    let gamma = theta.gamma();
    let p = gamma.field().characteristic();
    if !gamma.is_abelian() || (p != 0 && (theta.order() as u64).is_multiple_of(p)) {
        return Err(Error::UnsupportedGroupForInequality);
    }
    let e = gamma.exponent().max(1);
    let n = theta.c_order();
    let m = num_integer::lcm(num_integer::lcm(theta.conductor(), e), n);
    let classes = theta.classes();
    let mut mults = Vec::new();
    let mut holds = true;
    for lambda in linear_characters(gamma) {
        for b in 0..n {
            let mut sum = CyclotomicNumber::zero(m);
            for (cl, x) in classes.iter().zip(diff.values()) {
                // conj(λ(γ) ζ_n^{a b}) as a power of ζ_m
                let exp = (lambda[cl.gamma_rep] * (m / e) + cl.c_power * b * (m / n)) % m;
                let w = CyclotomicNumber::root_of_unity(m, -(exp as i64));
                sum = &sum + &(&x.embed(num_integer::lcm(m, x.conductor()))? * &w);
            }
            let mult = sum.scale(&Rational::new(1.into(), (theta.order() as i64).into()));
            match mult.as_rational() {
                Some(r) if r.is_integer() && r >= Rational::from_integer(0.into()) => mults.push(format_rational(&r)),
                Some(r) => {
                    holds = false;
                    mults.push(format_rational(&r));
                }
                None => {
                    holds = false;
                    mults.push(format_value(&mult));
                }
            }
        }
    }
    Ok(Comparison { mode, holds, strict: !equal, multiplicities: Some(mults), difference })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::named::{cyclic_scalar, symmetric};
    use crate::numbers::{rat, CyclotomicField, Field, FiniteField, RationalField};

    fn s2_theta() -> Theta<RationalField> {
        Theta::gamma_only(Arc::new(symmetric(&RationalField, 2).unwrap())).unwrap()
    }

    fn swap() -> Matrix<RationalField> {
        Matrix::from_rows(&RationalField, vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap()
    }

    #[test]
    fn characters_of_small_modules() {
        let f = RationalField;
        let t = s2_theta();
        let triv = character_of(&t, 1, &[Matrix::identity(&f, 1)], None).unwrap();
        assert_eq!(triv, GrothElement::new(vec![CyclotomicNumber::one(1); 2]));
        let reg = character_of(&t, 2, &[swap()], None).unwrap();
        assert_eq!(reg.formatted(), vec!["2", "0"]);
        let bad = character_of(&t, 1, &[Matrix::scalar(&f, 1, &rat(2))], None);
        assert!(matches!(bad, Err(Error::ActionMismatch(_))));
    }

    #[test]
    fn tensor_and_sum_rules() {
        let f = RationalField;
        let t = s2_theta();
        let sign = character_of(&t, 1, &[Matrix::scalar(&f, 1, &rat(-1))], None).unwrap();
        let reg = character_of(&t, 2, &[swap()], None).unwrap();
        let sum = character_of(&t, 3, &[swap().direct_sum(&Matrix::scalar(&f, 1, &rat(-1)))], None).unwrap();
        assert_eq!(sum, reg.add(&sign));
        let prod = character_of(&t, 2, &[swap().kronecker(&Matrix::scalar(&f, 1, &rat(-1)))], None).unwrap();
        assert_eq!(prod, reg.mul(&sign));
    }

    #[test]
    fn regular_dominates_trivial() {
        let f = RationalField;
        let t = s2_theta();
        let triv = character_of(&t, 1, &[Matrix::identity(&f, 1)], None).unwrap();
        let reg = character_of(&t, 2, &[swap()], None).unwrap();
        let c = compare(&t, &reg, &triv, CompareMode::Inequality).unwrap();
        assert!(c.holds && c.strict);
        assert_eq!(c.multiplicities.unwrap(), vec!["0", "1"]);
        assert!(!compare(&t, &triv, &reg, CompareMode::Inequality).unwrap().holds);
        let same = compare(&t, &reg, &reg, CompareMode::Inequality).unwrap();
        assert!(same.holds && !same.strict);
        assert!(compare(&t, &reg, &reg, CompareMode::Equality).unwrap().holds);
    }

    #[test]
    fn inequality_needs_abelian_invertible_order() {
        let f = RationalField;
        let s3 = Theta::gamma_only(Arc::new(symmetric(&f, 3).unwrap())).unwrap();
        let one = GrothElement::constant(s3.len(), 1);
        assert_eq!(compare(&s3, &one, &one, CompareMode::Inequality), Err(Error::UnsupportedGroupForInequality));
        assert!(compare(&s3, &one, &one, CompareMode::Equality).unwrap().holds);
        let gf2 = FiniteField::prime(2).unwrap();
        let s2 = Theta::gamma_only(Arc::new(symmetric(&gf2, 2).unwrap())).unwrap();
        let one = GrothElement::constant(s2.len(), 1);
        assert_eq!(compare(&s2, &one, &one, CompareMode::Inequality), Err(Error::UnsupportedGroupForInequality));
    }

    #[test]
    fn cyclic_four_multiplicities() {
        let k = CyclotomicField::new(4).unwrap();
        let g = Arc::new(cyclic_scalar(&k, 4, 1).unwrap());
        let t = Theta::gamma_only(g.clone()).unwrap();
        let reg = {
            let mut m = Matrix::zeros(&k, 4, 4);
            for i in 0..4 {
                m.set((i + 1) % 4, i, k.one());
            }
            character_of(&t, 4, &[m], None).unwrap()
        };
        let c = compare(&t, &reg, &GrothElement::zero(t.len()), CompareMode::Inequality).unwrap();
        assert_eq!(c.multiplicities.unwrap(), vec!["1"; 4]);
        let nat = character_of(&t, 1, g.generators(), None).unwrap();
        let c = compare(&t, &reg, &nat.add(&nat), CompareMode::Inequality).unwrap();
        assert!(!c.holds);
    }

    #[test]
    fn non_regular_elements_are_refused() {
        let gf2 = FiniteField::prime(2).unwrap();
        let s2 = symmetric(&gf2, 2).unwrap();
        let ctx = s2.lift_context(1).unwrap();
        let swap = (0..2).find(|&i| i != s2.identity()).unwrap();
        let images = s2.generators().to_vec();
        assert_eq!(
            brauer_value(&s2, &ctx, &images, swap),
            Err(Error::NotPRegular { order: 2, characteristic: 2 })
        );
        let one = brauer_value(&s2, &ctx, &images, s2.identity()).unwrap();
        assert_eq!(one, CyclotomicNumber::from_integer(one.conductor(), 2));
    }
}
