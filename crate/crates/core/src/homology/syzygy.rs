use std::collections::BTreeMap;

use super::{check_gamma, extend_basis, quotient_matrix, GradedAlgebraR, HdReport, TorTable};
use crate::error::{Error, Result};
use crate::groth::Theta;
use crate::linalg::{EchelonBasis, Matrix};
use crate::numbers::{CharacterField, Field};
use crate::polyaction::GradedSubspace;

/// A graded `R`-module in basis coordinates, known through the truncation.
trait CoordModule<F: Field> {
    fn dim(&self, j: usize) -> usize;
    /// `r · x` for the `k`-th basis element `r` of `R_a` and `x` of degree `j`.
    fn act(&self, a: usize, k: usize, j: usize, x: &[F::Elem]) -> Result<Vec<F::Elem>>;
}

struct ModuleView<'a, F: Field> {
    m: &'a GradedSubspace<F>,
    r: &'a GradedAlgebraR<F>,
}

impl<F: Field> CoordModule<F> for ModuleView<'_, F> {
    fn dim(&self, j: usize) -> usize {
        self.m.dim(j)
    }

    fn act(&self, a: usize, k: usize, j: usize, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if a == 0 {
            return Ok(x.to_vec());
        }
        let f = self.m.field();
        let mut amb = vec![f.zero(); self.m.ambient_dim(j)];
        for (c, b) in x.iter().zip(self.m.basis(j)) {
            if !f.is_zero(c) {
                f.axpy(&mut amb, c, b);
            }
        }
        let prod = self.m.tower().mul_blocks(f, &self.r.basis(a)[k], a, &amb, j, self.m.block());
        self.m
            .coordinates(a + j, &prod)
            .ok_or_else(|| Error::NotAnRModule(format!("R_{a} * M_{j} leaves M")))
    }
}

/// `⊕_g R(-e_g)` with generators sorted by degree; coordinates are generator-major.
struct FreeModule<'a, F: Field> {
    degrees: Vec<usize>,
    r: &'a GradedAlgebraR<F>,
}

impl<F: Field> FreeModule<'_, F> {
    /// `(generator degree, offset, length)` of each generator block in degree `j`.
    fn blocks(&self, j: usize) -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for &e in &self.degrees {
            if e <= j {
                let len = self.r.dim(j - e);
                out.push((e, off, len));
                off += len;
            } else {
                out.push((e, off, 0));
            }
        }
        out
    }
}

impl<F: Field> CoordModule<F> for FreeModule<'_, F> {
    fn dim(&self, j: usize) -> usize {
        self.degrees.iter().filter(|&&e| e <= j).map(|&e| self.r.dim(j - e)).sum()
    }

    fn act(&self, a: usize, k: usize, j: usize, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if a == 0 {
            return Ok(x.to_vec());
        }
        let f = self.r.field();
        let src = self.blocks(j);
        let dst = self.blocks(j + a);
        let mut out = vec![f.zero(); self.dim(j + a)];
        for (&(e, off, len), &(_, doff, dlen)) in src.iter().zip(&dst) {
            if len == 0 {
                continue;
            }
            let table = self.r.product_coordinates(a, j - e)?;
            for (l, c) in x[off..off + len].iter().enumerate() {
                if !f.is_zero(c) {
                    f.axpy(&mut out[doff..doff + dlen], c, &table[k * len + l]);
                }
            }
        }
        Ok(out)
    }
}

/// Degreewise splitting of a submodule `K` of `A` into `(R_+ K)_j` and a complement.
struct Splitting<F: Field> {
    ech: EchelonBasis<F>,
    base: usize,
    complement: Vec<Vec<F::Elem>>,
}

fn split<F: Field>(
    field: &F,
    module: &dyn CoordModule<F>,
    r: &GradedAlgebraR<F>,
    sub: &[Vec<Vec<F::Elem>>],
    top: usize,
) -> Result<Vec<Splitting<F>>> {
    (0..=top)
        .map(|j| {
            let mut products = Vec::new();
            for a in 1..=j {
                for k in 0..r.dim(a) {
                    for v in &sub[j - a] {
                        products.push(module.act(a, k, j - a, v)?);
                    }
                }
            }
            let (ech, base, complement) = extend_basis(field, module.dim(j), &products, &sub[j]);
            Ok(Splitting { ech, base, complement })
        })
        .collect()
}

/// Minimal homogeneous generators of `M`: in each degree, vectors of `M_d` completing a
/// basis of `Σ_{e>0} R_e M_{d-e}`. Vectors are returned in the ambient coordinates of `M`.
pub fn minimal_generators<F: Field>(m: &GradedSubspace<F>, r: &GradedAlgebraR<F>) -> Result<Vec<Vec<Vec<F::Elem>>>> {
    let f = m.field();
    let top = m.truncation().min(r.truncation());
    let view = ModuleView { m, r };
    let full: Vec<Vec<Vec<F::Elem>>> = (0..=top).map(|j| Matrix::<F>::identity(f, m.dim(j)).to_rows()).collect();
    let splits = split(f, &view, r, &full, top)?;
    Ok(splits
        .into_iter()
        .enumerate()
        .map(|(j, s)| {
            s.complement
                .iter()
                .map(|c| {
                    let mut amb = vec![f.zero(); m.ambient_dim(j)];
                    for (x, b) in c.iter().zip(m.basis(j)) {
                        f.axpy(&mut amb, x, b);
                    }
                    amb
                })
                .collect()
        })
        .collect())
}

/// A minimal graded free resolution `... → F_1 → F_0 → M`, computed through degree
/// `truncation` by degreewise kernels.
#[derive(Clone, Debug)]
pub struct TruncatedResolution<F: Field> {
    pub truncation: usize,
    /// Generator degrees of each `F_i`, ascending.
    pub generator_degrees: Vec<Vec<usize>>,
    /// `differentials[i][j]`: the degree-`j` part of `F_i → F_{i-1}` (`F_0 → M` for `i = 0`).
    pub differentials: Vec<Vec<Matrix<F>>>,
    /// `Γ` generator matrices on the degree-`e` generators of each `F_i`, when equivariant.
    pub gamma_generators: Option<Vec<Vec<Vec<Matrix<F>>>>>,
    pub tor: TorTable,
    module_dims: Vec<usize>,
    r_dims: Vec<usize>,
    min_positive: Option<usize>,
}

impl<F: Field> TruncatedResolution<F> {
    /// `d_{i-1} ∘ d_i = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (1..self.differentials.len()).all(|i| {
            (0..=self.truncation).all(|j| {
                let (a, b) = (&self.differentials[i - 1][j], &self.differentials[i][j]);
                a.cols() == 0 || b.cols() == 0 || a.mul(b).map(|p| p.is_zero()).unwrap_or(false)
            })
        })
    }

    /// Surjectivity onto `M` and exactness at every `F_i`, by ranks.
    pub fn is_exact(&self) -> bool {
        (0..=self.truncation).all(|j| {
            let ranks: Vec<usize> = self.differentials.iter().map(|d| d[j].rank()).collect();
            if ranks[0] != self.module_dims[j] {
                return false;
            }
            (0..ranks.len()).all(|i| {
                let kernel = self.differentials[i][j].cols() - ranks[i];
                kernel == ranks.get(i + 1).copied().unwrap_or(0)
            })
        })
    }

    /// Every differential `d_i`, `i ≥ 1`, has entries in `R_+`: no generator maps onto
    /// a nonzero multiple of a generator of the same degree.
    pub fn is_minimal(&self) -> bool {
        (1..self.differentials.len()).all(|i| {
            let src = &self.generator_degrees[i];
            let dst = &self.generator_degrees[i - 1];
            src.iter().enumerate().all(|(g, &e)| {
                let d = &self.differentials[i][e];
                let col: usize = src[..g].iter().map(|&x| self.r_dims[e - x]).sum();
                let mut row = 0;
                dst.iter().filter(|&&x| x <= e).all(|&x| {
                    let ok = x != e || d.field().is_zero(d.get(row, col));
                    row += self.r_dims[e - x];
                    ok
                })
            })
        })
    }

    /// `mindeg(F_{i+1}) > mindeg(F_i)`.
    pub fn mindeg_increases(&self) -> bool {
        let mins: Vec<usize> = self.generator_degrees.iter().filter_map(|g| g.first().copied()).collect();
        mins.windows(2).all(|w| w[1] > w[0])
    }

    pub fn min_positive_degree(&self) -> Option<usize> {
        self.min_positive
    }
}

/// Iterates free covers and degreewise kernels. When `theta` is given and `|Γ|` is
/// invertible in `k`, generators are chosen `Γ`-stably by averaging a projection, and
/// the `Θ` character of each `Tor_{i,j}` is recorded; otherwise only dimensions are.
pub fn truncated_minimal_resolution<F: CharacterField>(
    m: &GradedSubspace<F>,
    r: &GradedAlgebraR<F>,
    theta: Option<&Theta<F>>,
) -> Result<TruncatedResolution<F>> {
    if let Some(t) = theta {
        check_gamma(m, t)?;
    }
    let field = m.field();
    let top = m.truncation().min(r.truncation());
    let p = field.characteristic();
    let equivariant = theta.filter(|t| p == 0 || !(t.gamma().order() as u64).is_multiple_of(p));
    let gamma = equivariant.map(|t| t.gamma().clone());
    let ngens = gamma.as_ref().map_or(0, |g| g.generators().len());

    let view = ModuleView { m, r };
    let mut sub: Vec<Vec<Vec<F::Elem>>> = (0..=top).map(|j| Matrix::<F>::identity(field, m.dim(j)).to_rows()).collect();
    // Γ generator matrices on the current target module, per degree.
    let mut target_gamma: Vec<Vec<Matrix<F>>> =
        (0..=top).map(|j| if gamma.is_some() { m.residual_generators(j).to_vec() } else { Vec::new() }).collect();
    let mut free_store: Vec<FreeModule<'_, F>> = Vec::new();

    let mut generator_degrees = Vec::new();
    let mut differentials = Vec::new();
    let mut gamma_generators = gamma.as_ref().map(|_| Vec::new());
    let mut dims = BTreeMap::new();
    let mut characters = equivariant.map(|_| BTreeMap::new());
    let mut hd = HdReport::Certified(0);

    for i in 0..=top + 1 {
        let target: &dyn CoordModule<F> = if i == 0 { &view } else { free_store.last().expect("previous free module") };
        let splits = split(field, target, r, &sub, top)?;
        let mut degrees = Vec::new();
        let mut images: Vec<Vec<F::Elem>> = Vec::new();
        let mut rho: Vec<Vec<Matrix<F>>> = Vec::new();
        for (j, s) in splits.iter().enumerate() {
            let h = s.complement.len();
            let mut gens = s.complement.clone();
            let mut rho_j = Vec::new();
            if let (Some(g), true) = (gamma.as_ref(), h > 0) {
                let all = g.representation(field, target.dim(j), &target_gamma[j])?;
                gens = average_complement(field, g, &all, s)?;
                rho_j = target_gamma[j]
                    .iter()
                    .map(|t| quotient_matrix(field, &s.ech, s.base, &gens.iter().map(|v| t.mul_vec(v)).collect::<Vec<_>>()))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(t) = equivariant {
                    let gamma_vals = t.gamma_character(h, |e| {
                        let imgs: Vec<_> = gens.iter().map(|v| all[e].mul_vec(v)).collect();
                        quotient_matrix(field, &s.ech, s.base, &imgs)
                    })?;
                    characters.as_mut().expect("equivariant").insert((i, j), t.twist(&gamma_vals, j));
                }
            }
            if h > 0 {
                dims.insert((i, j), h);
            }
            degrees.extend(std::iter::repeat_n(j, h));
            images.extend(gens);
            rho.push(rho_j);
        }

        // The cover F_i → target and its kernel.
        let free = FreeModule { degrees: degrees.clone(), r };
        let mut diff_i = Vec::with_capacity(top + 1);
        let mut next_sub = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let mut cols = Vec::new();
            for (g, &e) in degrees.iter().enumerate() {
                if e > j {
                    continue;
                }
                for k in 0..r.dim(j - e) {
                    cols.push(target.act(j - e, k, e, &images[g])?);
                }
            }
            let d = Matrix::from_columns(field, target.dim(j), &cols);
            next_sub.push(d.kernel());
            diff_i.push(d);
        }
        if let Some(gg) = gamma_generators.as_mut() {
            gg.push(rho.clone());
            // Γ on F_i in degree j: ⊕_e ρ_e ⊗ id_{R_{j-e}}, generator-major.
            target_gamma = (0..=top)
                .map(|j| {
                    (0..ngens)
                        .map(|x| {
                            let mut acc = Matrix::zeros(field, 0, 0);
                            for e in 0..=j {
                                if rho[e].is_empty() {
                                    continue;
                                }
                                acc = acc.direct_sum(&rho[e][x].kronecker(&Matrix::identity(field, r.dim(j - e))));
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
        }
        generator_degrees.push(degrees);
        differentials.push(diff_i);
        let done = next_sub.iter().all(Vec::is_empty);
        free_store.push(free);
        sub = next_sub;
        if done {
            let gen_top = generator_degrees[i].last().copied().unwrap_or(0);
            let certified = match r.min_positive_degree() {
                Some(mp) => gen_top + mp <= top,
                None => true,
            };
            let last = dims.keys().map(|&(i, _)| i).max().unwrap_or(0);
            hd = if certified { HdReport::Certified(last) } else { HdReport::AtLeast(last) };
            break;
        }
    }

    let tor = TorTable {
        truncation: top,
        dims,
        characters,
        class_labels: theta.map(|t| t.classes().iter().map(|c| c.label()).collect()).unwrap_or_default(),
        conductor: theta.map_or(1, |t| t.conductor()),
        hd,
    };
    Ok(TruncatedResolution {
        truncation: top,
        generator_degrees,
        differentials,
        gamma_generators,
        tor,
        module_dims: m.dims()[..=top].to_vec(),
        r_dims: r.dims()[..=top].to_vec(),
        min_positive: r.min_positive_degree(),
    })
}

/// Replaces the complement of `(R_+K)_j` in `K_j` by its image under the `Γ`-average of
/// the projection along `(R_+K)_j`, which is a `Γ`-stable complement.
fn average_complement<F: CharacterField>(
    field: &F,
    group: &crate::groups::FiniteMatrixGroup<F>,
    all: &[Matrix<F>],
    s: &Splitting<F>,
) -> Result<Vec<Vec<F::Elem>>> {
    let h = s.complement.len();
    let project = |w: &[F::Elem]| -> Result<Vec<F::Elem>> {
        let c = s
            .ech
            .coordinates(w)
            .ok_or_else(|| Error::NotThetaStable("group action leaves the syzygy module".into()))?;
        let mut out = vec![field.zero(); w.len()];
        for (x, v) in c[s.base..s.base + h].iter().zip(&s.complement) {
            field.axpy(&mut out, x, v);
        }
        Ok(out)
    };
    let scale = field.inv(&field.from_int(group.order() as i64))?;
    s.complement
        .iter()
        .map(|c| {
            let mut acc = vec![field.zero(); c.len()];
            for (g, mat) in all.iter().enumerate() {
                let pulled = all[group.inverse(g)].mul_vec(c);
                let pushed = mat.mul_vec(&project(&pulled)?);
                field.axpy(&mut acc, &field.one(), &pushed);
            }
            Ok(acc.iter().map(|x| field.mul(x, &scale)).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named::symmetric;
    use crate::groups::{FiniteMatrixGroup, DEFAULT_GROUP_CAP};
    use crate::homology::koszul_tor;
    use crate::numbers::{rat, RationalField};
    use crate::polyaction::{invariants_up_to, relative_invariants_up_to, BimoduleU};

    fn minus_identity() -> FiniteMatrixGroup<RationalField> {
        let f = RationalField;
        FiniteMatrixGroup::generate(&f, 2, vec![Matrix::scalar(&f, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap()
    }

    fn s2_invariant_ring(top: usize) -> (FiniteMatrixGroup<RationalField>, GradedAlgebraR<RationalField>) {
        let f = RationalField;
        let s2 = symmetric(&f, 2).unwrap();
        let tower = invariants_up_to(&s2, top).unwrap().tower().clone();
        let gens = vec![(1, vec![rat(1), rat(1)]), (2, vec![rat(0), rat(1), rat(0)])];
        (s2, GradedAlgebraR::polynomial(&f, &tower, gens).unwrap())
    }

    #[test]
    fn two_periodic_resolution_of_the_odd_part() {
        let g = minus_identity();
        let top = 13;
        let r = GradedAlgebraR::from_subspace(invariants_up_to(&g, top).unwrap()).unwrap();
        let minus = relative_invariants_up_to(&BimoduleU::sign(&g).unwrap(), &g, top).unwrap();
        let gens = minimal_generators(&minus, &r).unwrap();
        assert_eq!(gens.iter().map(Vec::len).collect::<Vec<_>>()[..3], [0, 2, 0]);
        let res = truncated_minimal_resolution(&minus, &r, None).unwrap();
        let expected: Vec<((usize, usize), usize)> = (0..=6).map(|i| ((i, 2 * i + 1), 2)).collect();
        assert_eq!(res.tor.dims.iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), expected);
        assert!(res.is_complex() && res.is_exact() && res.is_minimal() && res.mindeg_increases());
        assert_eq!(res.tor.hd, HdReport::AtLeast(6));

        let plus = relative_invariants_up_to(&BimoduleU::trivial(&g).unwrap(), &g, top).unwrap();
        let res = truncated_minimal_resolution(&plus, &r, None).unwrap();
        assert_eq!(res.tor.dims.iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![((0, 0), 1)]);
        assert_eq!(res.tor.hd, HdReport::Certified(0));
    }

    #[test]
    fn polynomial_ring_over_symmetric_invariants() {
        let (_, r) = s2_invariant_ring(8);
        let tower = r.tower().clone();
        let f = RationalField;
        let all = GradedSubspace::new(
            &f,
            tower.clone(),
            1,
            (0..=8).map(|d| Matrix::<RationalField>::identity(&f, tower.dim(d)).to_rows()).collect(),
        );
        let gens = minimal_generators(&all, &r).unwrap();
        assert_eq!(gens.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let res = truncated_minimal_resolution(&all, &r, None).unwrap();
        assert_eq!(res.tor.hd, HdReport::Certified(0));
    }

    #[test]
    fn engines_agree_on_the_maximal_ideal() {
        let (m, r) = crate::homology::koszul::tests::maximal_ideal(7);
        let a = truncated_minimal_resolution(&m, &r, None).unwrap();
        let b = koszul_tor(&m, &r, None).unwrap();
        assert_eq!(a.tor.dims, b.dims);
        assert!(a.is_exact() && a.is_minimal());
    }

    #[test]
    fn equivariant_engines_agree_on_the_regular_module() {
        let (s2, r) = s2_invariant_ring(6);
        let reg = BimoduleU::regular(&s2).unwrap();
        let m = relative_invariants_up_to(&reg, &s2, 6).unwrap();
        let theta = Theta::new(reg.gamma().clone(), Some(rat(-1))).unwrap();
        let a = truncated_minimal_resolution(&m, &r, Some(&theta)).unwrap();
        let b = koszul_tor(&m, &r, Some(&theta)).unwrap();
        assert_eq!(a.tor.dims, b.dims);
        assert_eq!(a.tor.characters, b.characters);
        assert!(a.tor.characters.is_some());
        assert!(a.is_complex() && a.is_exact());
    }

    #[test]
    fn modular_group_order_drops_characters() {
        let f = crate::numbers::FiniteField::prime(2).unwrap();
        let s2 = symmetric(&f, 2).unwrap();
        let reg = BimoduleU::regular(&s2).unwrap();
        let m = relative_invariants_up_to(&reg, &s2, 4).unwrap();
        let r = GradedAlgebraR::from_subspace(invariants_up_to(&s2, 4).unwrap()).unwrap();
        let theta = Theta::gamma_only(reg.gamma().clone()).unwrap();
        let res = truncated_minimal_resolution(&m, &r, Some(&theta)).unwrap();
        assert!(res.tor.characters.is_none());
        assert!(res.is_exact());
    }
}
