use std::sync::Arc;

use super::MonomialTower;
use crate::error::Result;
use crate::groups::FiniteMatrixGroup;
use crate::linalg::Matrix;
use crate::numbers::Field;

/// Per-degree subspaces of `U ⊗ k[V]_d` (with `block = dim U`; `block = 1` for plain
/// polynomials). Each degree keeps its basis in reduced row echelon form, so the
/// coordinates of a member vector are its entries at the pivot columns.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F: Field> {
    field: F,
    tower: Arc<MonomialTower>,
    block: usize,
    bases: Vec<Vec<Vec<F::Elem>>>,
    pivots: Vec<Vec<usize>>,
    gamma: Option<Arc<FiniteMatrixGroup<F>>>,
    residual: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn new(field: &F, tower: Arc<MonomialTower>, block: usize, vectors: Vec<Vec<Vec<F::Elem>>>) -> Self {
        let mut bases = Vec::with_capacity(vectors.len());
        let mut pivots = Vec::with_capacity(vectors.len());
        for (d, vs) in vectors.into_iter().enumerate() {
            let width = block * tower.dim(d);
            let (b, p) = echelonize(field, width, vs);
            bases.push(b);
            pivots.push(p);
        }
        GradedSubspace { field: field.clone(), tower, block, bases, pivots, gamma: None, residual: Vec::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn tower(&self) -> &Arc<MonomialTower> {
        &self.tower
    }

    pub fn nvars(&self) -> usize {
        self.tower.nvars()
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn truncation(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn ambient_dim(&self, d: usize) -> usize {
        self.block * self.tower.dim(d)
    }

    pub fn basis(&self, d: usize) -> &[Vec<F::Elem>] {
        &self.bases[d]
    }

    pub fn pivots(&self, d: usize) -> &[usize] {
        &self.pivots[d]
    }

    /// Coordinates of `v` in the degree-`d` basis, or `None` when `v` lies outside.
    pub fn coordinates(&self, d: usize, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let coords: Vec<F::Elem> = self.pivots[d].iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (c, b) in coords.iter().zip(&self.bases[d]) {
            f.axpy(&mut r, &f.neg(c), b);
        }
        r.iter().all(|x| f.is_zero(x)).then_some(coords)
    }

    pub fn contains(&self, d: usize, v: &[F::Elem]) -> bool {
        self.coordinates(d, v).is_some()
    }

    /// Truncates to degrees `0..=d`.
    pub fn truncated(&self, d: usize) -> Self {
        let mut out = self.clone();
        out.bases.truncate(d + 1);
        out.pivots.truncate(d + 1);
        out.residual.truncate(d + 1);
        out
    }

    /// Attaches a group acting on the `U` factor, commuting with everything else, and
    /// records its generator matrices on every degree.
    pub fn with_residual_group(mut self, gamma: Arc<FiniteMatrixGroup<F>>) -> Result<Self> {
        assert_eq!(gamma.dim(), self.block, "residual group must act on the tensor factor");
        self.residual = (0..self.bases.len())
            .map(|d| gamma.generators().iter().map(|g| self.induced_matrix(d, g)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        self.gamma = Some(gamma);
        Ok(self)
    }

    pub fn residual_group(&self) -> Option<&Arc<FiniteMatrixGroup<F>>> {
        self.gamma.as_ref()
    }

    /// Generator matrices of the residual group on degree `d`.
    pub fn residual_generators(&self, d: usize) -> &[Matrix<F>] {
        self.residual.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Matrix of `l ⊗ id` on the degree-`d` basis, for `l` acting on the `U` factor.
    pub fn induced_matrix(&self, d: usize, l: &Matrix<F>) -> Result<Matrix<F>> {
        let n = self.tower.dim(d);
        let id = Matrix::identity(&self.field, n);
        let cols = self.bases[d]
            .iter()
            .map(|b| {
                let img = apply_tensor(&self.field, l, &id, b);
                self.coordinates(d, &img).ok_or_else(|| {
                    crate::error::Error::ActionMismatch(format!("action does not preserve degree {d}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&self.field, self.dim(d), &cols))
    }

    /// Matrix of the residual group element `gamma` on degree `d`.
    pub fn residual_matrix(&self, d: usize, gamma: usize) -> Result<Matrix<F>> {
        let group = self.gamma.as_ref().expect("no residual group attached");
        self.induced_matrix(d, group.element(gamma))
    }
}

/// Reduced row echelon basis of the span of `vs`, with its pivot columns.
pub(crate) fn echelonize<F: Field>(field: &F, width: usize, vs: Vec<Vec<F::Elem>>) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    if vs.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let rows = vs.len();
    let m = Matrix::from_rows(field, vs).expect("rows of equal width");
    debug_assert_eq!(m.cols(), width);
    let (r, pivots) = m.rref();
    let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    debug_assert!(pivots.len() <= rows);
    (basis, pivots)
}

/// `(l ⊗ a) v` for block-major `v`, computed as `l · V · aᵀ` without forming the product.
pub(crate) fn apply_tensor<F: Field>(field: &F, l: &Matrix<F>, a: &Matrix<F>, v: &[F::Elem]) -> Vec<F::Elem> {
    let (bu, n) = (l.rows(), a.rows());
    // First apply `a` to every block, then mix the blocks by `l`.
    let inner: Vec<Vec<F::Elem>> = (0..bu).map(|u| a.mul_vec(&v[u * n..(u + 1) * n])).collect();
    let mut out = vec![field.zero(); bu * n];
    for u2 in 0..bu {
        for (u, block) in inner.iter().enumerate() {
            field.axpy(&mut out[u2 * n..(u2 + 1) * n], l.get(u2, u), block);
        }
    }
    out
}

/// For a matrix with exactly one nonzero entry per column: the row and value of each.
fn monomial_columns<F: Field>(m: &Matrix<F>) -> Option<Vec<(usize, F::Elem)>> {
    let f = m.field();
    (0..m.cols())
        .map(|j| {
            let mut hit = None;
            for i in 0..m.rows() {
                let e = m.get(i, j);
                if !f.is_zero(e) {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some((i, e.clone()));
                }
            }
            hit
        })
        .collect()
}

/// Common fixed space of the operators `l ⊗ a` on block-major vectors.
///
/// Operators that permute the basis up to scalars are handled first by orbit sums; the
/// remaining ones cut the space down by successive kernel computations.
pub fn tensor_fixed_space<F: Field>(field: &F, dim: usize, ops: &[(&Matrix<F>, &Matrix<F>)]) -> Vec<Vec<F::Elem>> {
    let mut monomial = Vec::new();
    let mut general = Vec::new();
    for &(l, a) in ops {
        if l.is_identity() && a.is_identity() {
            continue;
        }
        match (monomial_columns(l), monomial_columns(a)) {
            (Some(pl), Some(pa)) => {
                let n = a.rows();
                let perm: Vec<(usize, F::Elem)> = (0..dim)
                    .map(|x| {
                        let (u, m) = (x / n, x % n);
                        let (u2, s) = &pl[u];
                        let (m2, t) = &pa[m];
                        (u2 * n + m2, field.mul(s, t))
                    })
                    .collect();
                monomial.push(perm);
            }
            _ => general.push((l, a)),
        }
    }
    let mut basis = monomial_fixed_space(field, dim, &monomial);
    for (l, a) in general {
        if basis.is_empty() {
            break;
        }
        let cols: Vec<Vec<F::Elem>> = basis
            .iter()
            .map(|b| {
                let mut img = apply_tensor(field, l, a, b);
                for (x, y) in img.iter_mut().zip(b) {
                    *x = field.sub(x, y);
                }
                img
            })
            .collect();
        let ker = Matrix::from_columns(field, dim, &cols).kernel();
        basis = ker
            .iter()
            .map(|coef| {
                let mut v = vec![field.zero(); dim];
                for (c, b) in coef.iter().zip(&basis) {
                    field.axpy(&mut v, c, b);
                }
                v
            })
            .collect();
    }
    basis
}

fn monomial_fixed_space<F: Field>(field: &F, dim: usize, perms: &[Vec<(usize, F::Elem)>]) -> Vec<Vec<F::Elem>> {
    let mut coef: Vec<Option<F::Elem>> = vec![None; dim];
    let mut out = Vec::new();
    for start in 0..dim {
        if coef[start].is_some() {
            continue;
        }
        coef[start] = Some(field.one());
        let mut orbit = vec![start];
        let mut consistent = true;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            let cx = coef[x].clone().expect("visited");
            for p in perms {
                let (y, s) = &p[x];
                let want = field.mul(s, &cx);
                match &coef[*y] {
                    None => {
                        coef[*y] = Some(want);
                        orbit.push(*y);
                    }
                    Some(c) => consistent &= *c == want,
                }
            }
        }
        if consistent {
            let mut v = vec![field.zero(); dim];
            for &x in &orbit {
                v[x] = coef[x].clone().expect("visited");
            }
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational::rat;
    use crate::numbers::RationalField;

    #[test]
    fn monomial_and_general_routes_agree() {
        let f = RationalField;
        let swap = Matrix::from_rows(&f, vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
        let sign = Matrix::from_rows(&f, vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]]).unwrap();
        let one = Matrix::identity(&f, 1);
        let fast = tensor_fixed_space(&f, 2, &[(&one, &swap)]);
        assert_eq!(fast, vec![vec![rat(1), rat(1)]]);
        // sign on the tensor factor and swap on the polynomial factor: vectors u1⊗(x+y) and u2⊗(x-y).
        let fixed = tensor_fixed_space(&f, 4, &[(&sign, &swap)]);
        assert_eq!(fixed.len(), 2);
        let general = Matrix::from_rows(&f, vec![vec![rat(1), rat(1)], vec![rat(0), rat(-1)]]).unwrap();
        let fixed = tensor_fixed_space(&f, 2, &[(&one, &general)]);
        assert_eq!(fixed.len(), 1);
        assert_eq!(general.mul_vec(&fixed[0]), fixed[0]);
    }

    #[test]
    fn coordinates_from_pivots() {
        let f = RationalField;
        let tower = Arc::new(MonomialTower::new(2, 1));
        let s = GradedSubspace::new(&f, tower, 1, vec![vec![], vec![vec![rat(2), rat(2)]]]);
        assert_eq!(s.basis(1), &[vec![rat(1), rat(1)]]);
        assert_eq!(s.coordinates(1, &[rat(3), rat(3)]), Some(vec![rat(3)]));
        assert_eq!(s.coordinates(1, &[rat(3), rat(1)]), None);
    }
}
