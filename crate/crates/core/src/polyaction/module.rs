use std::sync::Arc;

use super::{generator_actions, tensor_fixed_space, GradedSubspace, MonomialTower};
use crate::error::{Error, Result};
use crate::groups::{CosetSpace, FiniteMatrixGroup, DEFAULT_GROUP_CAP};
use crate::linalg::Matrix;
use crate::numbers::Field;

/// A finite-dimensional module `U` with a right action of `G` and a commuting left
/// action of a second group `Γ`.
///
/// The right action is stored as left-action matrices: `g_action[i]` is the matrix of
/// `u ↦ u · g_i^{-1}`. The `Γ` action is kept as the enumerated group of its matrices.
#[derive(Clone, Debug)]
pub struct BimoduleU<F: Field> {
    name: String,
    dim: usize,
    g_action: Vec<Matrix<F>>,
    gamma: Arc<FiniteMatrixGroup<F>>,
}

impl<F: Field> BimoduleU<F> {
    /// Validates that `g_action` defines a representation of `group` and that every
    /// `Γ` generator commutes with it.
    pub fn new(
        name: impl Into<String>,
        group: &FiniteMatrixGroup<F>,
        dim: usize,
        g_action: Vec<Matrix<F>>,
        gamma_gens: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let field = group.field();
        for m in g_action.iter().chain(&gamma_gens) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::ActionMismatch(format!("action matrix is not {dim}x{dim}")));
            }
        }
        group.representation(field, dim, &g_action)?;
        for (i, c) in gamma_gens.iter().enumerate() {
            for g in &g_action {
                if c.mul(g)? != g.mul(c)? {
                    return Err(Error::ActionMismatch(format!("second-group generator {i} does not commute")));
                }
            }
        }
        let gamma = FiniteMatrixGroup::generate(field, dim, gamma_gens, DEFAULT_GROUP_CAP)?;
        Ok(BimoduleU { name: name.into(), dim, g_action, gamma: Arc::new(gamma) })
    }

    pub fn trivial(group: &FiniteMatrixGroup<F>) -> Result<Self> {
        Self::scalar("trivial", group, &vec![group.field().one(); group.generators().len()])
    }

    /// Every generator acts by `-1`.
    pub fn sign(group: &FiniteMatrixGroup<F>) -> Result<Self> {
        let f = group.field();
        Self::scalar("sign", group, &vec![f.neg(&f.one()); group.generators().len()])
    }

    /// One-dimensional module with `u · g_i = values[i] u`.
    pub fn scalar(name: &str, group: &FiniteMatrixGroup<F>, values: &[F::Elem]) -> Result<Self> {
        let f = group.field();
        let mats = values
            .iter()
            .map(|v| Ok(Matrix::scalar(f, 1, &f.inv(v).map_err(|_| Error::ActionMismatch("zero scalar".into()))?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, group, 1, mats, Vec::new())
    }

    /// `V` itself, made a right module by `u · g = g^{-1} u`.
    pub fn natural(group: &FiniteMatrixGroup<F>) -> Result<Self> {
        Self::new("natural", group, group.dim(), group.generators().to_vec(), Vec::new())
    }

    /// The group algebra `k(G)` with right multiplication, and `Γ = G` acting by left
    /// multiplication.
    pub fn regular(group: &FiniteMatrixGroup<F>) -> Result<Self> {
        let n = group.order();
        let perm = |img: &dyn Fn(usize) -> usize| {
            let mut m = Matrix::zeros(group.field(), n, n);
            for h in 0..n {
                m.set(img(h), h, group.field().one());
            }
            m
        };
        let right = group
            .generator_indices()
            .iter()
            .map(|&g| perm(&|h| group.mul(h, group.inverse(g))))
            .collect();
        let left = group.generator_indices().iter().map(|&g| perm(&|h| group.mul(g, h))).collect();
        Self::new("regular", group, n, right, left)
    }

    /// The permutation module on right cosets `H\G`, with `Γ = N_G(H)` acting by
    /// `γ · Hx = Hγx`.
    pub fn induced(group: &FiniteMatrixGroup<F>, subgroup_gens: &[usize]) -> Result<(Self, CosetSpace)> {
        let space = CosetSpace::new(group, subgroup_gens, None)?;
        let n = space.len();
        let f = group.field();
        let perm = |img: &dyn Fn(usize) -> usize| {
            let mut m = Matrix::zeros(f, n, n);
            for (k, &x) in space.representatives().iter().enumerate() {
                m.set(img(x), k, f.one());
            }
            m
        };
        let right = group
            .generator_indices()
            .iter()
            .map(|&g| perm(&|x| space.coset_of(group.mul(x, group.inverse(g)))))
            .collect();
        // A small generating set of the normalizer.
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = group.subgroup_closure(&[]);
        for &x in space.normalizer() {
            if closure.binary_search(&x).is_err() {
                gens.push(x);
                closure = group.subgroup_closure(&gens);
            }
        }
        let left = gens.iter().map(|&g| perm(&|x| space.coset_of(group.mul(g, x)))).collect();
        let module = Self::new("induced", group, n, right, left)?;
        Ok((module, space))
    }

    /// Replaces the second-group action.
    pub fn with_gamma(self, group: &FiniteMatrixGroup<F>, gamma_gens: Vec<Matrix<F>>) -> Result<Self> {
        Self::new(self.name, group, self.dim, self.g_action, gamma_gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn g_action(&self) -> &[Matrix<F>] {
        &self.g_action
    }

    pub fn gamma(&self) -> &Arc<FiniteMatrixGroup<F>> {
        &self.gamma
    }

    /// Left-action matrices `u ↦ u · g^{-1}` for every element of `group`.
    pub fn element_matrices(&self, group: &FiniteMatrixGroup<F>) -> Result<Vec<Matrix<F>>> {
        group.representation(group.field(), self.dim, &self.g_action)
    }
}

/// `(U ⊗ k[V]_d)^G` for `d ≤ max_degree`, with the `Γ` action recorded on every degree.
pub fn relative_invariants_up_to<F: Field>(
    module: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    max_degree: usize,
) -> Result<GradedSubspace<F>> {
    let tower = Arc::new(MonomialTower::new(group.dim(), max_degree));
    relative_invariants_in_tower(module, group, &tower)
}

pub fn relative_invariants_in_tower<F: Field>(
    module: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    tower: &Arc<MonomialTower>,
) -> Result<GradedSubspace<F>> {
    let field = group.field();
    if module.g_action.len() != group.generators().len() {
        return Err(Error::ActionMismatch("module was built for a different group".into()));
    }
    let actions = generator_actions(group, tower)?;
    let bases = (0..=tower.max_degree())
        .map(|d| {
            let ops: Vec<(&Matrix<F>, &Matrix<F>)> =
                module.g_action.iter().zip(&actions).map(|(l, a)| (l, &a[d])).collect();
            tensor_fixed_space(field, module.dim * tower.dim(d), &ops)
        })
        .collect();
    GradedSubspace::new(field, tower.clone(), module.dim, bases).with_residual_group(module.gamma.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named::symmetric;
    use crate::numbers::rational::rat;
    use crate::numbers::RationalField;
    use crate::polyaction::{binomial, invariants_up_to};

    fn minus_identity() -> FiniteMatrixGroup<RationalField> {
        let f = RationalField;
        FiniteMatrixGroup::generate(&f, 2, vec![Matrix::scalar(&f, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn relative_invariant_dimensions() {
        let g = minus_identity();
        let triv = relative_invariants_up_to(&BimoduleU::trivial(&g).unwrap(), &g, 5).unwrap();
        assert_eq!(triv.dims(), invariants_up_to(&g, 5).unwrap().dims());
        let sign = relative_invariants_up_to(&BimoduleU::sign(&g).unwrap(), &g, 5).unwrap();
        assert_eq!(sign.dims(), vec![0, 2, 0, 4, 0, 6]);
        let reg = relative_invariants_up_to(&BimoduleU::regular(&g).unwrap(), &g, 5).unwrap();
        assert_eq!(reg.dims(), (0..=5).map(|d| d + 1).collect::<Vec<_>>());
    }

    #[test]
    fn regular_module_of_s3_matches_polynomial_dimensions() {
        let g = symmetric(&RationalField, 3).unwrap();
        let reg = relative_invariants_up_to(&BimoduleU::regular(&g).unwrap(), &g, 4).unwrap();
        let expected: Vec<usize> = (0..=4).map(|d| binomial(d + 2, 2) as usize).collect();
        assert_eq!(reg.dims(), expected);
        // The left translations act on each degree; the identity acts trivially.
        assert!(reg.residual_matrix(3, 0).unwrap().is_identity());
        assert_eq!(reg.residual_generators(2).len(), 2);
    }

    #[test]
    fn bad_action_is_rejected() {
        let g = symmetric(&RationalField, 3).unwrap();
        // Sending one transposition to 1 and the other to -1 is not a homomorphism.
        let err = BimoduleU::scalar("bad", &g, &[rat(1), rat(-1)]).unwrap_err();
        assert!(matches!(err, Error::ActionMismatch(_)));
    }

    #[test]
    fn induced_from_subgroups() {
        let g = symmetric(&RationalField, 2).unwrap();
        let (whole, _) = BimoduleU::induced(&g, &[1]).unwrap();
        assert_eq!(whole.dim(), 1);
        let (reg, space) = BimoduleU::induced(&g, &[]).unwrap();
        assert_eq!(space.len(), 2);
        let m = relative_invariants_up_to(&reg, &g, 4).unwrap();
        assert_eq!(m.dims(), vec![1, 2, 3, 4, 5]);
    }
}
