//! Inputs shared by the benchmarks.

use invtool_core::groups::named::symmetric;
use invtool_core::groups::FiniteMatrixGroup;
use invtool_core::polyaction::SparsePoly;
use invtool_core::{Field, RationalField};

/// Permutation matrices of `S_n` over `Q`.
pub fn symmetric_q(n: usize) -> FiniteMatrixGroup<RationalField> {
    symmetric(&RationalField, n).expect("S_n is small")
}

/// The elementary symmetric polynomials in `n` variables.
pub fn elementary_symmetric<F: Field>(field: &F, n: usize) -> Vec<SparsePoly<F>> {
    (1..=n)
        .map(|k| {
            let terms = (0u32..(1 << n))
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| (field.one(), (0..n).map(|i| (m >> i) & 1).collect()))
                .collect();
            SparsePoly::new(field, n, terms).expect("well-formed terms")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_invariant() {
        let g = symmetric_q(3);
        assert_eq!(g.order(), 6);
        for f in elementary_symmetric(&RationalField, 3) {
            assert!(f.is_invariant(&g).unwrap());
        }
    }
}
