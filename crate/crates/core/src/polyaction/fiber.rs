use std::collections::HashMap;

use super::{action_matrices, format_monomial, MonomialTower};
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;
use crate::linalg::Matrix;
use crate::numbers::Field;

/// Default cap on `|V|` for fiber enumeration.
pub const DEFAULT_FIBER_CAP: u128 = 1_000_000;

/// A polynomial as a list of `(coefficient, exponent vector)` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(F::Elem, Vec<u32>)>,
}

impl<F: Field> SparsePoly<F> {
    /// Combines repeated exponents and drops zero terms.
    pub fn new(field: &F, nvars: usize, terms: Vec<(F::Elem, Vec<u32>)>) -> Result<Self> {
        let mut acc: Vec<(F::Elem, Vec<u32>)> = Vec::new();
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!("exponent vector {e:?} for {nvars} variables")));
            }
            match acc.iter_mut().find(|(_, e2)| *e2 == e) {
                Some((c2, _)) => *c2 = field.add(c2, &c),
                None => acc.push((c, e)),
            }
        }
        acc.retain(|(c, _)| !field.is_zero(c));
        acc.sort_by(|a, b| b.1.iter().sum::<u32>().cmp(&a.1.iter().sum::<u32>()).then_with(|| b.1.cmp(&a.1)));
        Ok(SparsePoly { field: field.clone(), nvars, terms: acc })
    }

    /// Parses coefficient literals in the field's syntax.
    pub fn parse(field: &F, nvars: usize, terms: &[(String, Vec<u32>)]) -> Result<Self> {
        let parsed = terms.iter().map(|(c, e)| Ok((field.parse(c)?, e.clone()))).collect::<Result<Vec<_>>>()?;
        Self::new(field, nvars, parsed)
    }

    pub fn from_vector(field: &F, tower: &MonomialTower, d: usize, v: &[F::Elem]) -> Self {
        let terms = v
            .iter()
            .zip(tower.basis(d).exponents())
            .filter(|(c, _)| !field.is_zero(c))
            .map(|(c, e)| (c.clone(), e.clone()))
            .collect();
        SparsePoly { field: field.clone(), nvars: tower.nvars(), terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(F::Elem, Vec<u32>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.iter().map(|(_, e)| e.iter().sum::<u32>() as usize);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Dense coordinates in the degree basis of `tower`.
    pub fn to_vector(&self, tower: &MonomialTower) -> Result<(usize, Vec<F::Elem>)> {
        let d = self
            .homogeneous_degree()
            .ok_or_else(|| Error::DimensionMismatch("polynomial is zero or not homogeneous".into()))?;
        if d > tower.max_degree() || tower.nvars() != self.nvars {
            return Err(Error::DimensionMismatch(format!("degree {d} polynomial outside the monomial range")));
        }
        let mut v = vec![self.field.zero(); tower.dim(d)];
        for (c, e) in &self.terms {
            v[tower.basis(d).index_of(e).expect("degree checked")] = c.clone();
        }
        Ok((d, v))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (c, e)| {
            let term = e.iter().zip(point).fold(c.clone(), |t, (&k, x)| f.mul(&t, &f.pow(x, k as u64)));
            f.add(&acc, &term)
        })
    }

    /// Whether every generator of `group` fixes the polynomial.
    pub fn is_invariant(&self, group: &FiniteMatrixGroup<F>) -> Result<bool> {
        let Some(d) = self.homogeneous_degree() else {
            // Zero is invariant; inhomogeneous input is checked term-degree by term-degree.
            return self.split_by_degree().iter().try_fold(true, |ok, p| Ok(ok && p.is_invariant(group)?));
        };
        let tower = MonomialTower::new(self.nvars, d);
        let (_, v) = self.to_vector(&tower)?;
        for g in group.generators() {
            let a = action_matrices(g, &tower)?.pop().expect("nonempty");
            if a.mul_vec(&v) != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn split_by_degree(&self) -> Vec<Self> {
        let mut by: HashMap<u32, Vec<(F::Elem, Vec<u32>)>> = HashMap::new();
        for (c, e) in &self.terms {
            by.entry(e.iter().sum()).or_default().push((c.clone(), e.clone()));
        }
        by.into_values().map(|terms| SparsePoly { field: self.field.clone(), nvars: self.nvars, terms }).collect()
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, e)| {
                let m = format_monomial(e);
                match (m.as_str(), self.field.is_one(c)) {
                    ("1", _) => self.field.format(c),
                    (_, true) => m,
                    _ => format!("({})*{m}", self.field.format(c)),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberOrbit<E> {
    pub representative: Vec<E>,
    pub size: usize,
    /// Index of the orbit containing `c · representative`, when `c` was supplied.
    pub c_image: Option<usize>,
    /// Some `g` with `c · w = g · w`, when `c` maps the orbit to itself.
    pub transporter: Option<usize>,
}

/// The reduced fiber through `v` of the map given by `f_1..f_n`, split into orbits.
#[derive(Clone, Debug)]
pub struct FiberDescriptor<F: Field> {
    pub base_point: Vec<F::Elem>,
    pub values: Vec<F::Elem>,
    pub points: Vec<Vec<F::Elem>>,
    pub orbits: Vec<FiberOrbit<F::Elem>>,
    pub free: bool,
    pub group_order: usize,
    pub c: Option<Matrix<F>>,
}

impl<F: Field> FiberDescriptor<F> {
    /// For `c^power`: per orbit, a transporter `g` with `c^power · w_i = g · w_i` when the
    /// orbit is stabilized, else `None`.
    pub fn transporters_for_power(&self, group: &FiniteMatrixGroup<F>, power: u64) -> Vec<Option<usize>> {
        let Some(c) = &self.c else {
            return vec![None; self.orbits.len()];
        };
        let cp = c.pow(power);
        self.orbits
            .iter()
            .map(|o| {
                let target = cp.mul_vec(&o.representative);
                (0..group.order()).find(|&g| group.element(g).mul_vec(&o.representative) == target)
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Enumerates `{w : f_i(w) = f_i(v)}` over a finite field, decomposes it into
/// `G`-orbits and checks stability under the point map `c`.
pub fn enumerate_fiber<F: Field>(
    group: &FiniteMatrixGroup<F>,
    fs: &[SparsePoly<F>],
    v: &[F::Elem],
    c: Option<&Matrix<F>>,
    cap: u128,
) -> Result<FiberDescriptor<F>> {
    let field = group.field();
    let n = group.dim();
    let elems = field
        .elements()
        .ok_or_else(|| Error::InvalidField("fiber enumeration needs a finite field".into()))?;
    let size = (elems.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("base point has {} coordinates, expected {n}", v.len())));
    }
    for (i, f) in fs.iter().enumerate() {
        if f.nvars() != n {
            return Err(Error::DimensionMismatch(format!("polynomial {i} has the wrong number of variables")));
        }
        if !f.is_invariant(group)? {
            return Err(Error::HypothesisFailure(format!("polynomial {} is not invariant", i + 1)));
        }
    }
    let values: Vec<F::Elem> = fs.iter().map(|f| f.evaluate(v)).collect();
    let mut points = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let w: Vec<F::Elem> = digits.iter().map(|&k| elems[k].clone()).collect();
        if fs.iter().zip(&values).all(|(f, val)| f.evaluate(&w) == *val) {
            points.push(w);
        }
        let mut k = 0;
        while k < n && digits[k] + 1 == elems.len() {
            digits[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        digits[k] += 1;
    }
    let index: HashMap<Vec<F::Elem>, usize> = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut size = 0;
        for g in group.elements() {
            let img = g.mul_vec(&points[start]);
            let j = *index.get(&img).expect("fibers of invariant maps are stable");
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = id;
                size += 1;
            }
        }
        orbits.push(FiberOrbit { representative: points[start].clone(), size, c_image: None, transporter: None });
    }
    if let Some(c) = c {
        for p in &points {
            if !index.contains_key(&c.mul_vec(p)) {
                return Err(Error::FiberNotCStable);
            }
        }
        for o in orbits.iter_mut() {
            let img = c.mul_vec(&o.representative);
            let target = orbit_of[index[&img]];
            o.c_image = Some(target);
            o.transporter = (0..group.order()).find(|&g| group.element(g).mul_vec(&o.representative) == img);
        }
    }
    let free = orbits.iter().all(|o| o.size == group.order());
    Ok(FiberDescriptor {
        base_point: v.to_vec(),
        values,
        points,
        orbits,
        free,
        group_order: group.order(),
        c: c.cloned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_GROUP_CAP;
    use crate::numbers::FiniteField;

    fn gf3_sign_group() -> FiniteMatrixGroup<FiniteField> {
        let f = FiniteField::prime(3).unwrap();
        FiniteMatrixGroup::generate(&f, 1, vec![Matrix::scalar(&f, 1, &2)], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn gf3_square_fiber() {
        let g = gf3_sign_group();
        let f = g.field().clone();
        let sq = SparsePoly::new(&f, 1, vec![(1, vec![2])]).unwrap();
        let c = Matrix::scalar(&f, 1, &2);
        let fib = enumerate_fiber(&g, std::slice::from_ref(&sq), &[1], Some(&c), DEFAULT_FIBER_CAP).unwrap();
        assert_eq!(fib.points, vec![vec![1], vec![2]]);
        assert_eq!(fib.orbits.len(), 1);
        assert!(fib.free);
        let t = fib.orbits[0].transporter.unwrap();
        assert_eq!(*g.element(t), c);
        let zero = enumerate_fiber(&g, &[sq], &[0], None, DEFAULT_FIBER_CAP).unwrap();
        assert_eq!(zero.points, vec![vec![0]]);
        assert!(!zero.free);
    }

    #[test]
    fn trivial_group_coordinates() {
        let f = FiniteField::prime(5).unwrap();
        let g = FiniteMatrixGroup::generate(&f, 2, vec![], 10).unwrap();
        let x = SparsePoly::new(&f, 2, vec![(1, vec![1, 0])]).unwrap();
        let y = SparsePoly::new(&f, 2, vec![(1, vec![0, 1])]).unwrap();
        let fib = enumerate_fiber(&g, &[x, y], &[3, 4], None, DEFAULT_FIBER_CAP).unwrap();
        assert_eq!(fib.points, vec![vec![3, 4]]);
    }

    #[test]
    fn non_invariant_and_unstable_inputs() {
        let g = gf3_sign_group();
        let f = g.field().clone();
        let x = SparsePoly::new(&f, 1, vec![(1, vec![1])]).unwrap();
        assert!(matches!(
            enumerate_fiber(&g, &[x], &[1], None, DEFAULT_FIBER_CAP),
            Err(Error::HypothesisFailure(_))
        ));
        // Over GF(5) with x^2: the fiber {1, 4} is not stable under scaling by 2.
        let f5 = FiniteField::prime(5).unwrap();
        let g5 = FiniteMatrixGroup::generate(&f5, 1, vec![Matrix::scalar(&f5, 1, &4)], 10).unwrap();
        let sq = SparsePoly::new(&f5, 1, vec![(1, vec![2])]).unwrap();
        let c = Matrix::scalar(&f5, 1, &2);
        assert_eq!(enumerate_fiber(&g5, &[sq], &[1], Some(&c), 100).unwrap_err(), Error::FiberNotCStable);
        let big = FiniteField::prime(101).unwrap();
        let gb = FiniteMatrixGroup::generate(&big, 3, vec![], 10).unwrap();
        assert!(matches!(enumerate_fiber(&gb, &[], &[0, 0, 0], None, 1000), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn sparse_poly_roundtrip() {
        let f = FiniteField::prime(7).unwrap();
        let p = SparsePoly::parse(&f, 2, &[("3".into(), vec![1, 1]), ("1".into(), vec![2, 0])]).unwrap();
        let tower = MonomialTower::new(2, 3);
        let (d, v) = p.to_vector(&tower).unwrap();
        assert_eq!(d, 2);
        assert_eq!(SparsePoly::from_vector(&f, &tower, 2, &v), p);
        assert_eq!(p.evaluate(&[1, 2]), 0); // 1 + 6 = 7
        assert_eq!(p.format(), "x^2 + (3)*x*y");
    }
}
