use std::collections::{BTreeMap, HashMap};

use super::{check_gamma, extend_basis, quotient_matrix, GammaCache, GradedAlgebraR, HdReport, TorTable};
use crate::error::{Error, Result};
use crate::groth::Theta;
use crate::linalg::Matrix;
use crate::numbers::CharacterField;
use crate::polyaction::GradedSubspace;

/// `Tor^R(M, k)` as the homology of `M ⊗ Λ(e_1..e_n)`, where `R = k[f_1..f_n]` and
/// `e_s` has the degree of `f_s`. With `theta`, the `Θ` character of each nonzero
/// `Tor_{i,j}` is read from the action induced on the subquotient, which needs no
/// semisimplicity.
pub fn koszul_tor<F: CharacterField>(
    m: &GradedSubspace<F>,
    r: &GradedAlgebraR<F>,
    theta: Option<&Theta<F>>,
) -> Result<TorTable> {
    let gens = r
        .generators()
        .ok_or_else(|| Error::HypothesisFailure("the Koszul engine needs a polynomial normalization".into()))?;
    if let Some(t) = theta {
        check_gamma(m, t)?;
    }
    let field = m.field();
    let top = m.truncation().min(r.truncation());
    let tower = m.tower();
    let n = gens.len();
    let degs: Vec<usize> = gens.iter().map(|(d, _)| *d).collect();

    // Multiplication by f_s from M_e to M_{e + d_s}, in basis coordinates.
    let mut mult: HashMap<(usize, usize), Matrix<F>> = HashMap::new();
    for (s, (ds, f)) in gens.iter().enumerate() {
        for e in 0..=top.saturating_sub(*ds) {
            if *ds > top {
                break;
            }
            let cols = m
                .basis(e)
                .iter()
                .map(|b| {
                    let prod = tower.mul_blocks(field, f, *ds, b, e, m.block());
                    m.coordinates(e + ds, &prod)
                        .ok_or_else(|| Error::NotAnRModule(format!("f_{} * M_{e} leaves M", s + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            mult.insert((s, e), Matrix::from_columns(field, m.dim(e + ds), &cols));
        }
    }

    let subsets: Vec<Vec<u32>> = (0..=n)
        .map(|i| (0u32..1 << n).filter(|s| s.count_ones() as usize == i).collect())
        .collect();
    let deg_of = |s: u32| -> usize { (0..n).filter(|k| s >> k & 1 == 1).map(|k| degs[k]).sum() };
    // Components (subset, module degree, offset) of K_{i,j}, and the total dimension.
    let layout = |i: usize, j: usize| -> (Vec<(u32, usize, usize)>, usize) {
        let mut comps = Vec::new();
        let mut off = 0;
        if i > n {
            return (comps, 0);
        }
        for &s in &subsets[i] {
            let ds = deg_of(s);
            if ds <= j && m.dim(j - ds) > 0 {
                comps.push((s, j - ds, off));
                off += m.dim(j - ds);
            }
        }
        (comps, off)
    };
    let differential = |i: usize, j: usize| -> Matrix<F> {
        let (src, cols) = layout(i, j);
        let (dst, rows) = if i == 0 { (Vec::new(), 0) } else { layout(i - 1, j) };
        let mut d = Matrix::zeros(field, rows, cols);
        for &(s, e, off) in &src {
            for (k, idx) in (0..n).filter(|k| s >> k & 1 == 1).enumerate() {
                let t = s & !(1 << idx);
                let Some(&(_, _, toff)) = dst.iter().find(|c| c.0 == t) else { continue };
                let block = &mult[&(idx, e)];
                let neg = k % 2 == 1;
                for a in 0..block.rows() {
                    for b in 0..block.cols() {
                        let v = block.get(a, b);
                        if !field.is_zero(v) {
                            d.set(toff + a, off + b, if neg { field.neg(v) } else { v.clone() });
                        }
                    }
                }
            }
        }
        d
    };

    let mut dims = BTreeMap::new();
    let mut characters = theta.map(|_| BTreeMap::new());
    let mut cache = GammaCache::new(m);
    for j in 0..=top {
        let ds: Vec<Matrix<F>> = (0..=n + 1).map(|i| differential(i, j)).collect();
        let ranks: Vec<usize> = ds.iter().map(Matrix::rank).collect();
        for i in 0..=n {
            let (comps, dim) = layout(i, j);
            let beta = dim - ranks[i] - ranks[i + 1];
            if beta == 0 {
                continue;
            }
            dims.insert((i, j), beta);
            let (Some(t), Some(chars)) = (theta, characters.as_mut()) else { continue };
            let cycles = if i == 0 { Matrix::<F>::identity(field, dim).to_rows() } else { ds[i].kernel() };
            let boundaries = ds[i + 1].transpose().to_rows();
            let (ech, base, complement) = extend_basis(field, dim, &boundaries, &cycles);
            debug_assert_eq!(complement.len(), beta);
            let mut mats = HashMap::new();
            for c in t.gamma_classes().classes.iter().filter(|c| c.p_regular) {
                let g = c.representative;
                let mut images = Vec::with_capacity(beta);
                for v in &complement {
                    let mut out = vec![field.zero(); dim];
                    for &(_, e, off) in &comps {
                        let block = cache.get(e, g)?.mul_vec(&v[off..off + m.dim(e)]);
                        out[off..off + m.dim(e)].clone_from_slice(&block);
                    }
                    images.push(out);
                }
                mats.insert(g, quotient_matrix(field, &ech, base, &images)?);
            }
            let gamma_vals = t.gamma_character(beta, |g| Ok(mats[&g].clone()))?;
            chars.insert((i, j), t.twist(&gamma_vals, j));
        }
    }

    let hd = match dims.keys().map(|&(i, _)| i).max() {
        None => HdReport::Certified(0),
        Some(topi) => {
            let gen_top = dims.keys().filter(|&&(i, _)| i == 0).map(|&(_, j)| j).max().unwrap_or(0);
            if gen_top + degs.iter().sum::<usize>() <= top {
                HdReport::Certified(topi)
            } else {
                HdReport::AtLeast(topi)
            }
        }
    };
    Ok(TorTable {
        truncation: top,
        dims,
        characters,
        class_labels: theta.map(|t| t.classes().iter().map(|c| c.label()).collect()).unwrap_or_default(),
        conductor: theta.map_or(1, |t| t.conductor()),
        hd,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::named::symmetric;
    use crate::groups::{FiniteMatrixGroup, DEFAULT_GROUP_CAP};
    use crate::numbers::{rat, CyclotomicNumber, RationalField};
    use crate::polyaction::{invariants_up_to, relative_invariants_up_to, BimoduleU, MonomialTower};

    fn xy_squares(top: usize) -> GradedAlgebraR<RationalField> {
        let tower = Arc::new(MonomialTower::new(2, top));
        let gens = vec![(2, vec![rat(1), rat(0), rat(0)]), (2, vec![rat(0), rat(0), rat(1)])];
        GradedAlgebraR::polynomial(&RationalField, &tower, gens).unwrap()
    }

    #[test]
    fn polynomial_ring_over_itself() {
        let r = xy_squares(8);
        let t = koszul_tor(r.span(), &r, None).unwrap();
        assert_eq!(t.dims.len(), 1);
        assert_eq!(t.beta(0, 0), 1);
        assert_eq!(t.hd, HdReport::Certified(0));
    }

    #[test]
    fn odd_part_is_free_of_rank_two() {
        let f = RationalField;
        let g = FiniteMatrixGroup::generate(&f, 2, vec![Matrix::scalar(&f, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap();
        let minus = relative_invariants_up_to(&BimoduleU::sign(&g).unwrap(), &g, 8).unwrap();
        let t = koszul_tor(&minus, &xy_squares(8), None).unwrap();
        assert_eq!(t.dims.iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![((0, 1), 2)]);
    }

    /// The maximal ideal `(x, y)` of `R = k[x, y]`; its Tor is that of the residue field
    /// shifted by one homological step.
    pub(crate) fn maximal_ideal(top: usize) -> (GradedSubspace<RationalField>, GradedAlgebraR<RationalField>) {
        let f = RationalField;
        let tower = Arc::new(MonomialTower::new(2, top));
        let r = GradedAlgebraR::polynomial(&f, &tower, vec![(1, vec![rat(1), rat(0)]), (1, vec![rat(0), rat(1)])]).unwrap();
        let vectors = (0..=top)
            .map(|d| if d == 0 { Vec::new() } else { Matrix::<RationalField>::identity(&f, tower.dim(d)).to_rows() })
            .collect();
        (GradedSubspace::new(&f, tower, 1, vectors), r)
    }

    #[test]
    fn maximal_ideal_of_the_plane() {
        let (m, r) = maximal_ideal(6);
        let t = koszul_tor(&m, &r, None).unwrap();
        assert_eq!(t.dims.iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![((0, 1), 2), ((1, 2), 1)]);
        assert_eq!(t.hd, HdReport::Certified(1));
    }

    #[test]
    fn non_module_is_rejected() {
        // The constants alone are not closed under multiplication by x.
        let f = RationalField;
        let tower = Arc::new(MonomialTower::new(1, 5));
        let r = GradedAlgebraR::polynomial(&f, &tower, vec![(1, vec![rat(1)])]).unwrap();
        let mut vectors = vec![vec![vec![rat(1)]]];
        vectors.extend((1..=5).map(|_| Vec::new()));
        let m = GradedSubspace::new(&f, tower.clone(), 1, vectors);
        assert!(matches!(koszul_tor(&m, &r, None), Err(Error::NotAnRModule(_))));
    }

    #[test]
    fn s2_characters_with_grading_scalar() {
        let f = RationalField;
        let s2 = symmetric(&f, 2).unwrap();
        let inv = invariants_up_to(&s2, 6).unwrap();
        let tower = inv.tower().clone();
        // e1 = x + y, e2 = xy.
        let gens = vec![(1, vec![rat(1), rat(1)]), (2, vec![rat(0), rat(1), rat(0)])];
        let r = GradedAlgebraR::polynomial(&f, &tower, gens).unwrap();
        let all = GradedSubspace::new(
            &f,
            tower.clone(),
            1,
            (0..=6).map(|d| Matrix::<RationalField>::identity(&f, tower.dim(d)).to_rows()).collect(),
        );
        let theta = Theta::new(Arc::new(FiniteMatrixGroup::generate(&f, 1, vec![], 1).unwrap()), Some(rat(-1))).unwrap();
        let t = koszul_tor(&all, &r, Some(&theta)).unwrap();
        assert_eq!(t.beta(0, 0), 1);
        assert_eq!(t.beta(0, 1), 1);
        assert_eq!(t.dims.len(), 2);
        let chars = t.characters.unwrap();
        assert_eq!(chars[&(0, 1)][1], CyclotomicNumber::from_integer(theta.conductor(), -1));
    }
}
