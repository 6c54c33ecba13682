use std::collections::BTreeSet;

use super::FiniteMatrixGroup;
use crate::error::{Error, Result};
use crate::numbers::Field;

/// Right cosets `H g` with the right action of a designated `c` and the left action of
/// the normalizer of `H`.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    subgroup: Vec<usize>,
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
    normalizer: Vec<usize>,
    c: Option<usize>,
}

impl CosetSpace {
    /// `subgroup` is any generating set of `H` (element indices of `group`).
    pub fn new<F: Field>(group: &FiniteMatrixGroup<F>, subgroup_gens: &[usize], c: Option<usize>) -> Result<Self> {
        let n = group.order();
        if let Some(bad) = subgroup_gens.iter().chain(c.iter()).find(|&&i| i >= n) {
            return Err(Error::DimensionMismatch(format!("element index {bad} out of range")));
        }
        let subgroup = group.subgroup_closure(subgroup_gens);
        let mut coset_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let k = representatives.len();
            representatives.push(g);
            for &h in &subgroup {
                coset_of[group.mul(h, g)] = k;
            }
        }
        let members: BTreeSet<usize> = subgroup.iter().copied().collect();
        let normalizer = (0..n)
            .filter(|&x| subgroup.iter().all(|&h| members.contains(&group.conjugate(x, h))))
            .collect();
        Ok(CosetSpace { subgroup, representatives, coset_of, normalizer, c })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn normalizer(&self) -> &[usize] {
        &self.normalizer
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn designated(&self) -> Option<usize> {
        self.c
    }

    /// Permutation `Hg -> Hgx` of coset indices.
    pub fn right_action<F: Field>(&self, group: &FiniteMatrixGroup<F>, x: usize) -> Vec<usize> {
        self.representatives.iter().map(|&g| self.coset_of[group.mul(g, x)]).collect()
    }

    /// Permutation `Hg -> H gamma g` for `gamma` in the normalizer.
    pub fn left_action<F: Field>(&self, group: &FiniteMatrixGroup<F>, gamma: usize) -> Result<Vec<usize>> {
        if self.normalizer.binary_search(&gamma).is_err() {
            return Err(Error::ActionMismatch(format!("element {gamma} does not normalize the subgroup")));
        }
        Ok(self.representatives.iter().map(|&g| self.coset_of[group.mul(gamma, g)]).collect())
    }

    /// Number of cosets fixed by right multiplication with `c^j`.
    pub fn fixed_points<F: Field>(&self, group: &FiniteMatrixGroup<F>, j: i64) -> Result<usize> {
        let c = self
            .c
            .ok_or_else(|| Error::HypothesisFailure("coset space has no designated element".into()))?;
        let cj = group.power(c, j);
        Ok(self.right_action(group, cj).iter().enumerate().filter(|(k, &img)| *k == img).count())
    }
}

/// Free-function form of [`CosetSpace::fixed_points`].
pub fn coset_fixed_points<F: Field>(space: &CosetSpace, group: &FiniteMatrixGroup<F>, j: i64) -> Result<usize> {
    space.fixed_points(group, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named::{cyclic_scalar, symmetric};
    use crate::numbers::{CyclotomicField, RationalField};

    #[test]
    fn fixed_point_examples() {
        let f = CyclotomicField::new(4).unwrap();
        let g = cyclic_scalar(&f, 4, 1).unwrap();
        let c = g.generator_indices()[0];
        let whole = CosetSpace::new(&g, &[c], Some(c)).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole.fixed_points(&g, 3).unwrap(), 1);
        let c2 = g.power(c, 2);
        let x = CosetSpace::new(&g, &[c2], Some(c)).unwrap();
        assert_eq!(x.len(), 2);
        let counts: Vec<usize> = (0..4).map(|j| x.fixed_points(&g, j).unwrap()).collect();
        assert_eq!(counts, vec![2, 0, 2, 0]);

        let s2 = symmetric(&RationalField, 2).unwrap();
        let t = s2.generator_indices()[0];
        let free = CosetSpace::new(&s2, &[], Some(t)).unwrap();
        assert_eq!(free.fixed_points(&s2, 1).unwrap(), 0);
        assert_eq!(free.fixed_points(&s2, 0).unwrap(), 2);
    }

    #[test]
    fn left_and_right_actions_commute() {
        let g = symmetric(&RationalField, 3).unwrap();
        let h = g.generator_indices()[0];
        let x = CosetSpace::new(&g, &[h], Some(g.generator_indices()[1])).unwrap();
        assert_eq!(x.len(), 3);
        for &gamma in x.normalizer() {
            let left = x.left_action(&g, gamma).unwrap();
            for c in 0..g.order() {
                let right = x.right_action(&g, c);
                let lr: Vec<usize> = right.iter().map(|&k| left[k]).collect();
                let rl: Vec<usize> = left.iter().map(|&k| right[k]).collect();
                assert_eq!(lr, rl);
            }
        }
    }
}
