use serde::Serialize;

use super::FiniteMatrixGroup;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numbers::Field;

/// Largest coefficient tried by the small-integer sweep over infinite fields.
pub const DEFAULT_SWEEP_BOUND: u64 = 6;
const ENUMERATION_CAP: u64 = 1 << 20;

/// Witness that `element` has an eigenvector with trivial stabilizer.
#[derive(Debug, Clone)]
pub struct RegularElementCertificate<F: Field> {
    pub element: usize,
    pub omega: F::Elem,
    pub omega_order: u64,
    pub vector: Vec<F::Elem>,
    pub orbit_size: usize,
    /// How the vector was found: a sweep is evidence, not a proof of non-regularity on failure.
    pub method: SearchMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    IntegerSweep,
    Enumeration,
}

fn orbit_is_free<F: Field>(group: &FiniteMatrixGroup<F>, v: &[F::Elem]) -> bool {
    group.elements()[1..].iter().all(|h| h.mul_vec(v) != v)
}

fn combine<F: Field>(field: &F, basis: &[Vec<F::Elem>], coeffs: &[F::Elem]) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); basis[0].len()];
    for (c, b) in coeffs.iter().zip(basis) {
        field.axpy(&mut v, c, b);
    }
    v
}

/// Searches the `omega`-eigenspace of element `g` for a vector with trivial stabilizer.
pub fn find_regular_certificate<F: Field>(
    group: &FiniteMatrixGroup<F>,
    g: usize,
    omega: &F::Elem,
    sweep_bound: u64,
) -> Result<RegularElementCertificate<F>> {
    let field = group.field();
    let m = group.element(g);
    let shifted = m.sub(&Matrix::scalar(field, group.dim(), omega));
    let basis = shifted.kernel();
    if basis.is_empty() {
        return Err(Error::NotRegular("omega is not an eigenvalue".into()));
    }
    let omega_order = {
        let mut k = 1u64;
        let mut x = omega.clone();
        while !field.is_one(&x) {
            x = field.mul(&x, omega);
            k += 1;
            if k > group.order() as u64 * 2 {
                return Err(Error::NotARootOfUnity);
            }
        }
        k
    };
    let certificate = |v: Vec<F::Elem>, method| RegularElementCertificate {
        element: g,
        omega: omega.clone(),
        omega_order,
        vector: v,
        orbit_size: group.order(),
        method,
    };
    let k = basis.len();
    if let Some(q) = field.size() {
        let total = q.checked_pow(k as u32).filter(|&t| t <= ENUMERATION_CAP).ok_or(Error::TooLarge {
            size: (q as u128).saturating_pow(k as u32),
            cap: ENUMERATION_CAP as u128,
        })?;
        let elems = field.elements().expect("finite field");
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<F::Elem> = (0..k)
                .map(|_| {
                    let e = elems[(c % q) as usize].clone();
                    c /= q;
                    e
                })
                .collect();
            let v = combine(field, &basis, &coeffs);
            if orbit_is_free(group, &v) {
                return Ok(certificate(v, SearchMethod::Enumeration));
            }
        }
        return Err(Error::NotRegular(format!("no free vector among {} eigenvectors", total - 1)));
    }
    // Tuples with entries in 1..=b and maximum exactly b, for b = 1, 2, ...
    for b in 1..=sweep_bound {
        let mut tuple = vec![1u64; k];
        loop {
            if tuple.contains(&b) {
                let coeffs: Vec<F::Elem> = tuple.iter().map(|&t| field.from_int(t as i64)).collect();
                let v = combine(field, &basis, &coeffs);
                if orbit_is_free(group, &v) {
                    return Ok(certificate(v, SearchMethod::IntegerSweep));
                }
            }
            let Some(pos) = (0..k).rev().find(|&i| tuple[i] < b) else {
                break;
            };
            tuple[pos] += 1;
            for t in tuple.iter_mut().skip(pos + 1) {
                *t = 1;
            }
        }
    }
    Err(Error::NotRegular(format!("integer sweep up to {sweep_bound} found no free vector")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named::{cyclic_scalar, symmetric};
    use crate::numbers::{rat, RationalField};

    #[test]
    fn regular_examples() {
        let q = RationalField;
        let pm = cyclic_scalar(&q, 2, 2).unwrap();
        let cert = find_regular_certificate(&pm, 1, &rat(-1), DEFAULT_SWEEP_BOUND).unwrap();
        assert_eq!(cert.orbit_size, 2);
        assert_eq!(cert.omega_order, 2);

        let s2 = symmetric(&q, 2).unwrap();
        let t = s2.generator_indices()[0];
        let cert = find_regular_certificate(&s2, t, &rat(-1), DEFAULT_SWEEP_BOUND).unwrap();
        assert_eq!(s2.element(t).mul_vec(&cert.vector), cert.vector.iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(cert.vector[0], -cert.vector[1].clone());

        let cert = find_regular_certificate(&s2, 0, &rat(1), DEFAULT_SWEEP_BOUND).unwrap();
        assert_eq!(cert.vector, vec![rat(1), rat(2)]);
        assert!(find_regular_certificate(&s2, 0, &rat(2), DEFAULT_SWEEP_BOUND).is_err());
    }

    #[test]
    fn identity_of_nontrivial_scalar_group_is_not_regular_for_eigenvalue_minus_one() {
        let q = RationalField;
        let pm = cyclic_scalar(&q, 2, 1).unwrap();
        assert!(matches!(
            find_regular_certificate(&pm, 0, &rat(-1), DEFAULT_SWEEP_BOUND),
            Err(Error::NotRegular(_))
        ));
    }
}
