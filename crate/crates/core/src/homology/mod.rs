//! Graded Tor over graded subalgebras `R ⊆ k[V]`, by two independent engines: iterated
//! syzygies (any connected `R`) and the Koszul complex (polynomial `R`). Both record the
//! induced action of `Θ = Γ × C` on `Tor_i^R(M, k)_j`.

mod euler;
mod koszul;
mod syzygy;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groth::Theta;
use crate::linalg::{EchelonBasis, Matrix};
use crate::numbers::{CharacterField, CyclotomicNumber, Field};
use crate::polyaction::{GradedSubspace, MonomialTower, SparsePoly};

pub use euler::{euler_character_series, graded_character};
pub use koszul::koszul_tor;
pub use syzygy::{minimal_generators, truncated_minimal_resolution, TruncatedResolution};

/// A connected graded subalgebra of `k[V]`, known through a truncation degree.
#[derive(Debug)]
pub struct GradedAlgebraR<F: Field> {
    span: GradedSubspace<F>,
    generators: Option<Vec<(usize, Vec<F::Elem>)>>,
    products: Mutex<HashMap<(usize, usize), Arc<Vec<Vec<F::Elem>>>>>,
}

impl<F: Field> Clone for GradedAlgebraR<F> {
    fn clone(&self) -> Self {
        GradedAlgebraR { span: self.span.clone(), generators: self.generators.clone(), products: Mutex::default() }
    }
}

impl<F: Field> GradedAlgebraR<F> {
    /// The polynomial algebra on homogeneous generators `(degree, dense vector)`, with
    /// algebraic independence checked degree by degree through the tower's top degree.
    pub fn polynomial(field: &F, tower: &Arc<MonomialTower>, generators: Vec<(usize, Vec<F::Elem>)>) -> Result<Self> {
        let top = tower.max_degree();
        for (d, v) in &generators {
            if *d == 0 || v.len() != tower.dim(*d) {
                return Err(Error::DimensionMismatch(format!("generator of degree {d} has the wrong shape")));
            }
        }
        // Products indexed by the last generator used, so each exponent vector appears once.
        let mut layers: Vec<Vec<(usize, Vec<F::Elem>)>> = vec![Vec::new(); top + 1];
        layers[0].push((0, vec![field.one()]));
        for d in 1..=top {
            let mut layer = Vec::new();
            for (s, (ds, f)) in generators.iter().enumerate() {
                if *ds > d {
                    continue;
                }
                for (last, v) in &layers[d - ds] {
                    if *last <= s {
                        layer.push((s, tower.mul(field, v, d - ds, f, *ds)));
                    }
                }
            }
            layers[d] = layer;
        }
        let vectors: Vec<Vec<Vec<F::Elem>>> =
            layers.iter().map(|l| l.iter().map(|(_, v)| v.clone()).collect()).collect();
        let counts: Vec<usize> = vectors.iter().map(Vec::len).collect();
        let span = GradedSubspace::new(field, tower.clone(), 1, vectors);
        for (d, (&c, r)) in counts.iter().zip(span.dims()).enumerate() {
            if c != r {
                return Err(Error::HypothesisFailure(format!(
                    "normalization generators are algebraically dependent in degree {d}"
                )));
            }
        }
        Ok(GradedAlgebraR { span, generators: Some(generators), products: Mutex::default() })
    }

    /// Convenience form taking sparse polynomials.
    pub fn polynomial_from_sparse(field: &F, tower: &Arc<MonomialTower>, generators: &[SparsePoly<F>]) -> Result<Self> {
        let gens = generators.iter().map(|p| p.to_vector(tower)).collect::<Result<Vec<_>>>()?;
        Self::polynomial(field, tower, gens)
    }

    /// A subalgebra given by per-degree bases (for example the whole invariant ring).
    /// Connectedness and closure under products are checked on basis elements.
    pub fn from_subspace(span: GradedSubspace<F>) -> Result<Self> {
        if span.block() != 1 || span.dim(0) != 1 {
            return Err(Error::HypothesisFailure("subalgebra must be connected with R_0 = k".into()));
        }
        let r = GradedAlgebraR { span, generators: None, products: Mutex::default() };
        let top = r.truncation();
        for a in 1..=top {
            for b in a..=top - a {
                if r.dim(a) > 0 && r.dim(b) > 0 {
                    r.product_coordinates(a, b)?;
                }
            }
        }
        Ok(r)
    }

    pub fn field(&self) -> &F {
        self.span.field()
    }

    pub fn tower(&self) -> &Arc<MonomialTower> {
        self.span.tower()
    }

    pub fn truncation(&self) -> usize {
        self.span.truncation()
    }

    pub fn dim(&self, d: usize) -> usize {
        if d > self.truncation() { 0 } else { self.span.dim(d) }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.span.dims()
    }

    pub fn basis(&self, d: usize) -> &[Vec<F::Elem>] {
        self.span.basis(d)
    }

    pub fn span(&self) -> &GradedSubspace<F> {
        &self.span
    }

    pub fn is_polynomial(&self) -> bool {
        self.generators.is_some()
    }

    pub fn generators(&self) -> Option<&[(usize, Vec<F::Elem>)]> {
        self.generators.as_deref()
    }

    /// Generator degrees of a polynomial normalization.
    pub fn degrees(&self) -> Option<Vec<usize>> {
        self.generators.as_ref().map(|g| g.iter().map(|(d, _)| *d).collect())
    }

    /// Smallest positive degree with `R_d != 0`.
    pub fn min_positive_degree(&self) -> Option<usize> {
        (1..=self.truncation()).find(|&d| self.dim(d) > 0)
    }

    /// Coordinates in the `R_{a+b}` basis of every product of basis elements, at index
    /// `i * dim R_b + j`.
    pub fn product_coordinates(&self, a: usize, b: usize) -> Result<Arc<Vec<Vec<F::Elem>>>> {
        if let Some(t) = self.products.lock().expect("product cache poisoned").get(&(a, b)) {
            return Ok(t.clone());
        }
        let f = self.field();
        let mut table = Vec::with_capacity(self.dim(a) * self.dim(b));
        for p in self.basis(a) {
            for q in self.basis(b) {
                let prod = self.tower().mul(f, p, a, q, b);
                let c = self.span.coordinates(a + b, &prod).ok_or_else(|| {
                    Error::HypothesisFailure(format!("R is not closed under products in degree {}", a + b))
                })?;
                table.push(c);
            }
        }
        let table = Arc::new(table);
        self.products.lock().expect("product cache poisoned").insert((a, b), table.clone());
        Ok(table)
    }
}

/// How far the homological dimension is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HdReport {
    /// `Tor_i = 0` for all `i > m`, with the vanishing visible inside the truncation.
    Certified(usize),
    /// `Tor_m != 0` was observed; higher terms may lie beyond the truncation.
    AtLeast(usize),
}

impl HdReport {
    pub fn format(&self) -> String {
        match self {
            HdReport::Certified(m) => format!("hd <= {m} (certified within truncation)"),
            HdReport::AtLeast(m) => format!("hd >= {m} (observed; truncated)"),
        }
    }
}

/// Graded Betti numbers `β_{i,j} = dim Tor_i^R(M,k)_j` for `j ≤ truncation`, with
/// optional `Θ` character values per class.
#[derive(Clone, Debug, PartialEq)]
pub struct TorTable {
    pub truncation: usize,
    pub dims: BTreeMap<(usize, usize), usize>,
    pub characters: Option<BTreeMap<(usize, usize), Vec<CyclotomicNumber>>>,
    pub class_labels: Vec<String>,
    pub conductor: u64,
    pub hd: HdReport,
}

impl TorTable {
    pub fn beta(&self, i: usize, j: usize) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Largest `i` with a nonzero entry.
    pub fn top_index(&self) -> Option<usize> {
        self.dims.keys().map(|&(i, _)| i).max()
    }

    /// Total Betti numbers `β_i` within the truncation.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.top_index().map_or(0, |i| i + 1)];
        for (&(i, _), &d) in &self.dims {
            out[i] += d;
        }
        out
    }

    /// Coefficients of `Σ_i (-1)^i dim Tor_i(t)` through the truncation.
    pub fn euler_dims(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.truncation + 1];
        for (&(i, j), &d) in &self.dims {
            out[j] += if i % 2 == 0 { d as i64 } else { -(d as i64) };
        }
        out
    }

    /// Per degree, per class: `Σ_i (-1)^i χ(Tor_{i,j})`.
    pub fn euler_characters(&self) -> Option<Vec<Vec<CyclotomicNumber>>> {
        let chars = self.characters.as_ref()?;
        let zero = CyclotomicNumber::zero(self.conductor);
        let mut out = vec![vec![zero; self.class_labels.len()]; self.truncation + 1];
        for (&(i, j), vals) in chars {
            for (o, v) in out[j].iter_mut().zip(vals) {
                *o = if i % 2 == 0 { &*o + v } else { &*o - v };
            }
        }
        Some(out)
    }

    /// Macaulay-style layout: columns are `i`, rows are `j - i`.
    pub fn format_betti(&self) -> String {
        let cols = self.top_index().map_or(1, |i| i + 1);
        let rows = self.dims.keys().map(|&(i, j)| j - i).max().map_or(1, |r| r + 1);
        let min_row = self.dims.keys().map(|&(i, j)| j - i).min().unwrap_or(0);
        let width = self.dims.values().map(|d| d.to_string().len()).max().unwrap_or(1).max(cols.to_string().len()) + 1;
        let mut out = format!("{:>7}", "");
        for i in 0..cols {
            out += &format!("{i:>width$}");
        }
        out += &format!("\n{:>7}", "total:");
        let totals = self.totals();
        for i in 0..cols {
            out += &format!("{:>width$}", totals.get(i).copied().unwrap_or(0));
        }
        for r in min_row..rows {
            out += &format!("\n{:>7}", format!("{r}:"));
            for i in 0..cols {
                let b = self.beta(i, i + r);
                let cell = if b == 0 { "-".to_string() } else { b.to_string() };
                out += &format!("{cell:>width$}");
            }
        }
        out
    }
}

/// Checks that `theta`'s `Γ` is the group recorded on `m`.
pub(crate) fn check_gamma<F: CharacterField>(m: &GradedSubspace<F>, theta: &Theta<F>) -> Result<()> {
    if theta.gamma().order() == 1 {
        return Ok(());
    }
    match m.residual_group() {
        Some(g) if Arc::ptr_eq(g, theta.gamma()) || g.generators() == theta.gamma().generators() => Ok(()),
        _ => Err(Error::NotThetaStable("the second group does not act on this module".into())),
    }
}

/// Matrices of `Γ` element `gamma` on `M_d`, cached by degree and element.
pub(crate) struct GammaCache<'a, F: Field> {
    m: &'a GradedSubspace<F>,
    cache: HashMap<(usize, usize), Matrix<F>>,
}

impl<'a, F: Field> GammaCache<'a, F> {
    pub fn new(m: &'a GradedSubspace<F>) -> Self {
        GammaCache { m, cache: HashMap::new() }
    }

    pub fn get(&mut self, d: usize, gamma: usize) -> Result<&Matrix<F>> {
        if !self.cache.contains_key(&(d, gamma)) {
            let mat = match self.m.residual_group() {
                Some(_) => self.m.residual_matrix(d, gamma)?,
                None => Matrix::identity(self.m.field(), self.m.dim(d)),
            };
            self.cache.insert((d, gamma), mat);
        }
        Ok(&self.cache[&(d, gamma)])
    }
}

/// Splits `span(sub) ⊆ span(whole)`: returns a basis of `sub` followed by the vectors of
/// `whole` that extend it, together with the echelon structure for coordinates.
pub(crate) fn extend_basis<F: Field>(
    field: &F,
    dim: usize,
    sub: &[Vec<F::Elem>],
    whole: &[Vec<F::Elem>],
) -> (EchelonBasis<F>, usize, Vec<Vec<F::Elem>>) {
    let mut ech = EchelonBasis::with_coordinates(field, dim);
    for v in sub {
        ech.insert(v);
    }
    let base = ech.rank();
    let mut complement = Vec::new();
    for v in whole {
        if ech.insert(v) {
            complement.push(v.clone());
        }
    }
    (ech, base, complement)
}

/// Matrix of a linear map on a subquotient: `images[k]` is the image of the `k`-th
/// complement vector; coordinates are read in the `(sub, complement)` basis.
pub(crate) fn quotient_matrix<F: Field>(
    field: &F,
    ech: &EchelonBasis<F>,
    base: usize,
    images: &[Vec<F::Elem>],
) -> Result<Matrix<F>> {
    let h = images.len();
    let cols = images
        .iter()
        .map(|img| {
            let c = ech
                .coordinates(img)
                .ok_or_else(|| Error::NotThetaStable("group action leaves the cycle space".into()))?;
            Ok(c[base..base + h].to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(field, h, &cols))
}
