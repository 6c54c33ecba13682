//! Graded action of matrix groups on polynomial rings by linear substitution.
//!
//! A group element `g` acts on `k[x_1..x_n]` by `(g f)(w) = f(g^{-1} w)`, so the variable
//! `x_i` goes to the linear form given by row `i` of `g^{-1}`. Degree-`d` polynomials are
//! dense coordinate vectors over [`MonomialBasis`]; tensors `U ⊗ k[V]_d` are stored
//! block-major, with coordinate `u * N_d + m`.

mod fiber;
mod module;
mod monomials;
mod subspace;

use std::sync::Arc;

use crate::error::Result;
use crate::groups::FiniteMatrixGroup;
use crate::linalg::{EchelonBasis, Matrix};
use crate::numbers::Field;

pub use fiber::{enumerate_fiber, FiberDescriptor, FiberOrbit, SparsePoly, DEFAULT_FIBER_CAP};
pub use module::{relative_invariants_in_tower, relative_invariants_up_to, BimoduleU};
pub use monomials::{binomial, format_monomial, variable_name, MonomialBasis, MonomialTower};
pub use subspace::{tensor_fixed_space, GradedSubspace};

/// Matrices of `g` on degrees `0..=tower.max_degree()`, built degree by degree.
pub fn action_matrices<F: Field>(g: &Matrix<F>, tower: &MonomialTower) -> Result<Vec<Matrix<F>>> {
    let field = g.field();
    let n = tower.nvars();
    let h = g.inverse()?;
    let forms: Vec<Vec<F::Elem>> = (0..n).map(|i| h.row(i).to_vec()).collect();
    let mut images: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    let mut out = vec![Matrix::identity(field, 1)];
    for d in 1..=tower.max_degree() {
        let prev_basis = tower.basis(d - 1);
        let next: Vec<Vec<F::Elem>> = tower
            .basis(d)
            .exponents()
            .iter()
            .map(|e| {
                let i = e.iter().position(|&k| k > 0).expect("positive degree");
                let mut lower = e.clone();
                lower[i] -= 1;
                let j = prev_basis.index_of(&lower).expect("lower monomial exists");
                tower.mul(field, &images[j], d - 1, &forms[i], 1)
            })
            .collect();
        out.push(Matrix::from_columns(field, tower.dim(d), &next));
        images = next;
    }
    Ok(out)
}

/// Matrix of `f ↦ f ∘ g^{-1}` on the degree-`d` monomials.
pub fn action_matrix<F: Field>(g: &Matrix<F>, d: usize) -> Result<Matrix<F>> {
    let tower = MonomialTower::new(g.rows(), d);
    Ok(action_matrices(g, &tower)?.pop().expect("degree list is nonempty"))
}

/// Per-generator, per-degree action matrices: `result[gen][d]`.
pub fn generator_actions<F: Field>(group: &FiniteMatrixGroup<F>, tower: &MonomialTower) -> Result<Vec<Vec<Matrix<F>>>> {
    group.generators().iter().map(|g| action_matrices(g, tower)).collect()
}

/// Invariant polynomials through degree `max_degree`, as simultaneous fixed spaces of
/// the generators. No averaging, so this works in every characteristic.
pub fn invariants_up_to<F: Field>(group: &FiniteMatrixGroup<F>, max_degree: usize) -> Result<GradedSubspace<F>> {
    let tower = Arc::new(MonomialTower::new(group.dim(), max_degree));
    invariants_in_tower(group, &tower)
}

pub fn invariants_in_tower<F: Field>(group: &FiniteMatrixGroup<F>, tower: &Arc<MonomialTower>) -> Result<GradedSubspace<F>> {
    let field = group.field();
    let actions = generator_actions(group, tower)?;
    let one = Matrix::identity(field, 1);
    let bases = (0..=tower.max_degree())
        .map(|d| {
            let pairs: Vec<(&Matrix<F>, &Matrix<F>)> = actions.iter().map(|a| (&one, &a[d])).collect();
            tensor_fixed_space(field, tower.dim(d), &pairs)
        })
        .collect();
    Ok(GradedSubspace::new(field, tower.clone(), 1, bases))
}

/// Dimensions of the coinvariant algebra `k[V] / (k[V]^G_+)` in degrees `0..=max_degree`.
pub fn coinvariant_dims<F: Field>(invariants: &GradedSubspace<F>) -> Vec<usize> {
    let field = invariants.field();
    let tower = invariants.tower();
    let n = tower.nvars();
    let mut ideal_prev: Vec<Vec<F::Elem>> = Vec::new();
    let mut dims = vec![1];
    for d in 1..=invariants.truncation() {
        let mut span = EchelonBasis::new(field, tower.dim(d));
        for v in invariants.basis(d) {
            span.insert(v);
        }
        for j in 0..n {
            let mut x = vec![field.zero(); n];
            x[j] = field.one();
            for v in &ideal_prev {
                span.insert(&tower.mul(field, v, d - 1, &x, 1));
            }
        }
        dims.push(tower.dim(d) - span.rank());
        ideal_prev = span.rows().to_vec();
    }
    dims
}
