//! Dense matrices and echelon bases over an arbitrary [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::numbers::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let entries: Vec<String> = self.row(i).iter().map(|e| self.field.format(e)).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: &F, n: usize, c: &F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, len: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, len, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn parse(field: &F, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, parsed)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.field.format(e)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                self.field.axpy(out_row, a, other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (a, b)| {
                    if self.field.is_zero(a) || self.field.is_zero(b) {
                        acc
                    } else {
                        self.field.add(&acc, &self.field.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if self.field.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !self.field.is_zero(b) {
                            out.data[(i * other.rows + k) * c + j * other.cols + l] = self.field.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { self.field.is_one(e) } else { self.field.is_zero(e) }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn trace(&self) -> F::Elem {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    /// Reduced row echelon form with leftmost pivoting; returns pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                let cols = self.cols;
                f.axpy(&mut self.data[i * cols + c..(i + 1) * cols], &neg, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> F::Elem {
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            let pivot_row: Vec<F::Elem> = m.row(c).to_vec();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if !f.is_zero(&factor) {
                    let neg = f.neg(&factor);
                    f.axpy(m.row_mut(i), &neg, &pivot_row);
                }
            }
        }
        det
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            e >>= 1;
        }
        acc
    }

    /// Characteristic polynomial `det(tI - A)`, coefficients lowest degree first,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !f.is_zero(h.get(i, c))) else {
                continue;
            };
            if p != c + 1 {
                for j in 0..n {
                    h.data.swap(p * n + j, (c + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + c + 1);
                }
            }
            let inv = f.inv(h.get(c + 1, c)).expect("nonzero pivot");
            for i in c + 2..n {
                let u = f.mul(h.get(i, c), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                // row_i -= u * row_{c+1}; col_{c+1} += u * col_i
                let neg = f.neg(&u);
                let src: Vec<F::Elem> = h.row(c + 1).to_vec();
                f.axpy(h.row_mut(i), &neg, &src);
                for r in 0..n {
                    let v = f.add(h.get(r, c + 1), &f.mul(&u, h.get(r, i)));
                    h.set(r, c + 1, v);
                }
            }
        }
        // p_k(t) = (t - h_kk) p_{k-1} - sum_{i<k} h_{ik} (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![f.zero(); k + 2];
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] = f.add(&next[d + 1], c);
                next[d] = f.sub(&next[d], &f.mul(h.get(k, k), c));
            }
            let mut prod = f.one();
            for i in (0..k).rev() {
                prod = f.mul(&prod, h.get(i + 1, i));
                if f.is_zero(&prod) {
                    break;
                }
                let coef = f.mul(h.get(i, k), &prod);
                if f.is_zero(&coef) {
                    continue;
                }
                for (d, c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(&next[d], &f.mul(&coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// Row space in semi-echelon form, with optional tracking of coordinates in terms of
/// the independent vectors inserted so far.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    combos: Option<Vec<Vec<F::Elem>>>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        EchelonBasis { field: field.clone(), dim, rows: Vec::new(), pivots: Vec::new(), combos: None }
    }

    /// Variant that records how each echelon row combines the inserted vectors.
    pub fn with_coordinates(field: &F, dim: usize) -> Self {
        EchelonBasis { combos: Some(Vec::new()), ..Self::new(field, dim) }
    }

    pub fn from_vectors(field: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let mut e = Self::new(field, dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; returns the residual and the coefficients used.
    pub fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut r = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !f.is_zero(&c) {
                f.axpy(&mut r, &f.neg(&c), row);
            }
            coeffs.push(c);
        }
        (r, coeffs)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).0.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v`; returns `true` when it was independent of the current span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let (mut r, coeffs) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        if let Some(combos) = &mut self.combos {
            let k = combos.len();
            let mut combo = vec![f.zero(); k + 1];
            combo[k] = f.one();
            for (c, prev) in coeffs.iter().zip(combos.iter()) {
                f.axpy(&mut combo, &f.neg(c), prev);
            }
            for x in combo.iter_mut() {
                *x = f.mul(x, &inv);
            }
            for prev in combos.iter_mut() {
                prev.push(f.zero());
            }
            combos.push(combo);
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in terms of the inserted independent vectors, in insertion order.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let combos = self.combos.as_ref().expect("coordinate tracking not enabled");
        let f = &self.field;
        let (r, coeffs) = self.reduce(v);
        if r.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        let mut out = vec![f.zero(); self.rows.len()];
        for (c, combo) in coeffs.iter().zip(combos) {
            f.axpy(&mut out, c, combo);
        }
        Some(out)
    }
}

/// Basis of the intersection of the kernels of `A_g - I` over several square matrices,
/// computed by successive restriction.
pub fn common_fixed_space<F: Field>(field: &F, dim: usize, mats: &[&Matrix<F>]) -> Vec<Vec<F::Elem>> {
    let mut basis: Vec<Vec<F::Elem>> = (0..dim)
        .map(|i| {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            v
        })
        .collect();
    for m in mats {
        if basis.is_empty() {
            break;
        }
        if m.is_identity() {
            continue;
        }
        // Columns: (A - I) b_k for each current basis vector b_k.
        let cols: Vec<Vec<F::Elem>> = basis
            .iter()
            .map(|b| {
                let mut img = m.mul_vec(b);
                for (x, y) in img.iter_mut().zip(b) {
                    *x = field.sub(x, y);
                }
                img
            })
            .collect();
        let mat = Matrix::from_columns(field, dim, &cols);
        let ker = mat.kernel();
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
