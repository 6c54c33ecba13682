//! Finite matrix groups enumerated by closure, with classes, cosets and regular elements.

mod cosets;
pub mod named;
mod regular;

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numbers::{CharacterField, Eigenvalues, Field, LiftContext};

pub use cosets::{coset_fixed_points, CosetSpace};
pub use regular::{find_regular_certificate, RegularElementCertificate, SearchMethod, DEFAULT_SWEEP_BOUND};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_GROUP_CAP: usize = 10_000;
const TABLE_LIMIT: usize = 1500;

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup<F: Field> {
    field: F,
    dim: usize,
    generators: Vec<Matrix<F>>,
    gen_indices: Vec<usize>,
    elements: Vec<Matrix<F>>,
    lookup: HashMap<Vec<F::Elem>, usize>,
    /// `elements[i] = elements[parent] * generators[gen]` along the breadth-first tree.
    word: Vec<Option<(usize, usize)>>,
    table: Option<Vec<u32>>,
    inverse: Vec<usize>,
    orders: Vec<u64>,
}

impl<F: Field> FiniteMatrixGroup<F> {
    /// Closure of `gens` by breadth-first search from the identity.
    pub fn generate(field: &F, dim: usize, gens: Vec<Matrix<F>>, cap: usize) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!("generator {i} is not {dim}x{dim}")));
            }
            if field.is_zero(&g.determinant()) {
                return Err(Error::NotInvertible(i));
            }
        }
        let id = Matrix::identity(field, dim);
        let mut elements = vec![id.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(id.entries().to_vec(), 0);
        let mut word = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = elements[x].mul(g)?;
                if lookup.contains_key(y.entries()) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                lookup.insert(y.entries().to_vec(), elements.len());
                elements.push(y);
                word.push(Some((x, gi)));
                queue.push_back(elements.len() - 1);
            }
        }
        let gen_indices = gens.iter().map(|g| lookup[g.entries()]).collect();
        let mut group = FiniteMatrixGroup {
            field: field.clone(),
            dim,
            generators: gens,
            gen_indices,
            elements,
            lookup,
            word,
            table: None,
            inverse: Vec::new(),
            orders: Vec::new(),
        };
        group.finish();
        Ok(group)
    }

    fn finish(&mut self) {
        let n = self.elements.len();
        if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = self.mul_slow(i, j) as u32;
                }
            }
            self.table = Some(t);
        }
        self.inverse = (0..n)
            .map(|i| {
                let inv = self.elements[i].inverse().expect("group elements are invertible");
                self.lookup[inv.entries()]
            })
            .collect();
        self.orders = (0..n)
            .map(|i| {
                let mut k = 1;
                let mut x = i;
                while x != 0 {
                    x = self.mul(x, i);
                    k += 1;
                }
                k
            })
            .collect();
    }

    fn mul_slow(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].mul(&self.elements[j]).expect("square");
        self.lookup[p.entries()]
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[Matrix<F>] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_indices
    }

    pub fn element(&self, i: usize) -> &Matrix<F> {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Matrix<F>] {
        &self.elements
    }

    pub fn index_of(&self, m: &Matrix<F>) -> Option<usize> {
        self.lookup.get(m.entries()).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.elements.len() + j] as usize,
            None => self.mul_slow(i, j),
        }
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn conjugate(&self, h: usize, x: usize) -> usize {
        self.mul(self.mul(h, x), self.inverse[h])
    }

    pub fn power(&self, i: usize, e: i64) -> usize {
        let o = self.orders[i] as i64;
        let e = e.rem_euclid(o);
        (0..e).fold(0, |acc, _| self.mul(acc, i))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    /// Least common multiple of the orders prime to `characteristic`.
    pub fn regular_exponent(&self, characteristic: u64) -> u64 {
        self.orders
            .iter()
            .filter(|&&o| characteristic == 0 || o.gcd(&characteristic) == 1)
            .fold(1, |acc, &o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_indices;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted closure of the given elements.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Extends generator images to all elements along the breadth-first words.
    pub fn extend_along_words<T: Clone>(&self, identity: T, images: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(self.order());
        out.push(identity);
        for w in &self.word[1..] {
            let (parent, gen) = w.expect("non-identity elements have words");
            let v = mul(&out[parent], &images[gen]);
            out.push(v);
        }
        out
    }

    /// Images of every element under the representation determined by generator images,
    /// failing with `ActionMismatch` when the images do not define a homomorphism.
    pub fn representation<K: Field>(&self, target: &K, dim: usize, images: &[Matrix<K>]) -> Result<Vec<Matrix<K>>> {
        if images.len() != self.generators.len() {
            return Err(Error::ActionMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                self.generators.len()
            )));
        }
        let all = self.extend_along_words(Matrix::identity(target, dim), images, |a, b| a.mul(b).expect("square"));
        for x in 0..self.order() {
            for (gi, &g) in self.gen_indices.iter().enumerate() {
                let lhs = &all[self.mul(x, g)];
                let rhs = all[x].mul(&images[gi])?;
                if *lhs != rhs {
                    return Err(Error::ActionMismatch(format!(
                        "image of element {x} times generator {gi} is inconsistent"
                    )));
                }
            }
        }
        Ok(all)
    }

    pub fn conjugacy_classes(&self, characteristic: u64) -> ConjugacyClassTable {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[x] = id;
            let mut members = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in &self.gen_indices {
                    let z = self.conjugate(g, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        members.push(z);
                        queue.push_back(z);
                    }
                }
            }
            members.sort_unstable();
            let order = self.orders[x];
            classes.push(ConjugacyClass {
                representative: x,
                members,
                order,
                p_regular: characteristic == 0 || order.gcd(&characteristic) == 1,
            });
        }
        ConjugacyClassTable { classes, class_of }
    }

    pub fn eigenvalues(&self, ctx: &LiftContext, i: usize) -> Result<Eigenvalues>
    where
        F: CharacterField,
    {
        self.field.eigenvalues(ctx, &self.elements[i])
    }

    /// Lift context covering all element orders prime to the characteristic, plus `extra`.
    pub fn lift_context(&self, extra: u64) -> Result<LiftContext>
    where
        F: CharacterField,
    {
        let e = self.regular_exponent(self.field.characteristic()).lcm(&extra.max(1));
        self.field.lift_context(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub order: u64,
    pub p_regular: bool,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClassTable {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size()).collect()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.order).collect()
    }

    pub fn regular_classes(&self) -> impl Iterator<Item = (usize, &ConjugacyClass)> {
        self.classes.iter().enumerate().filter(|(_, c)| c.p_regular)
    }
}

/// Free-function form of [`FiniteMatrixGroup::generate`].
pub fn generate_group<F: Field>(field: &F, dim: usize, gens: Vec<Matrix<F>>, cap: usize) -> Result<FiniteMatrixGroup<F>> {
    FiniteMatrixGroup::generate(field, dim, gens, cap)
}
