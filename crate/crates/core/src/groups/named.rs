//! Built-in group constructors.

use super::{FiniteMatrixGroup, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numbers::CharacterField;

/// Matrix sending basis vector `e_i` to `e_{perm[i]}`.
pub fn permutation_matrix<F: CharacterField>(field: &F, perm: &[usize]) -> Matrix<F> {
    let n = perm.len();
    let mut m = Matrix::zeros(field, n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(j, i, field.one());
    }
    m
}

/// The scalar group generated by a primitive `n`-th root of unity times the identity.
pub fn cyclic_scalar<F: CharacterField>(field: &F, n: u64, dim: usize) -> Result<FiniteMatrixGroup<F>> {
    let root = field
        .primitive_root(n)
        .ok_or_else(|| Error::InvalidField(format!("{} has no primitive {n}-th root of unity", field.label())))?;
    FiniteMatrixGroup::generate(field, dim, vec![Matrix::scalar(field, dim, &root)], DEFAULT_GROUP_CAP)
}

/// Permutation matrices of S_n, generated by the adjacent transpositions.
pub fn symmetric<F: CharacterField>(field: &F, n: usize) -> Result<FiniteMatrixGroup<F>> {
    let gens = (0..n.saturating_sub(1))
        .map(|i| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            permutation_matrix(field, &perm)
        })
        .collect();
    FiniteMatrixGroup::generate(field, n, gens, DEFAULT_GROUP_CAP)
}

/// Dihedral group of order `2n` in dimension 2.
///
/// Uses `diag(w, w^{-1})` and the coordinate swap when the field has a primitive `n`-th
/// root `w`; otherwise an integral rotation for `n` in {3, 4, 6}.
pub fn dihedral<F: CharacterField>(field: &F, n: u64) -> Result<FiniteMatrixGroup<F>> {
    let swap = permutation_matrix(field, &[1, 0]);
    let rotation = if let Some(w) = field.primitive_root(n) {
        let mut r = Matrix::zeros(field, 2, 2);
        r.set(0, 0, w.clone());
        r.set(1, 1, field.inv(&w)?);
        r
    } else {
        let rows: &[[i64; 2]; 2] = match n {
            3 => &[[0, -1], [1, -1]],
            4 => &[[0, -1], [1, 0]],
            6 => &[[1, -1], [1, 0]],
            _ => {
                return Err(Error::InvalidField(format!(
                    "dihedral({n}) is not realizable over {}",
                    field.label()
                )))
            }
        };
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())?
    };
    FiniteMatrixGroup::generate(field, 2, vec![rotation, swap], DEFAULT_GROUP_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{CyclotomicField, FiniteField, RationalField};

    #[test]
    fn orders() {
        let q = RationalField;
        assert_eq!(symmetric(&q, 3).unwrap().order(), 6);
        assert_eq!(symmetric(&q, 1).unwrap().order(), 1);
        assert_eq!(dihedral(&q, 4).unwrap().order(), 8);
        assert_eq!(dihedral(&q, 3).unwrap().order(), 6);
        assert_eq!(dihedral(&q, 6).unwrap().order(), 12);
        assert!(dihedral(&q, 5).is_err());
        assert_eq!(cyclic_scalar(&q, 2, 2).unwrap().order(), 2);
        assert!(cyclic_scalar(&q, 4, 2).is_err());
        let c = CyclotomicField::new(5).unwrap();
        assert_eq!(cyclic_scalar(&c, 10, 1).unwrap().order(), 10);
        assert_eq!(dihedral(&c, 5).unwrap().order(), 10);
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(cyclic_scalar(&f, 3, 1).unwrap().order(), 3);
    }
}
