use std::sync::Arc;

use serde::Serialize;

use super::series::{equivariant_molien, quotient, scalar_closed_forms, value_at_one, GrothSeries, ValueAtOne};
use super::{character_of, compare, format_value, CompareMode, Comparison, GrothElement, Theta};
use crate::error::{Error, Result};
use crate::groups::{find_regular_certificate, FiniteMatrixGroup, RegularElementCertificate, DEFAULT_SWEEP_BOUND};
use crate::homology::{koszul_tor, truncated_minimal_resolution, GradedAlgebraR, HdReport, TorTable};
use crate::linalg::Matrix;
use crate::numbers::{CharacterField, CyclotomicField, CyclotomicNumber, Field};
use crate::polyaction::{
    enumerate_fiber, invariants_in_tower, relative_invariants_in_tower, BimoduleU, FiberDescriptor, MonomialTower,
    SparsePoly,
};
use crate::series::{molien_trivial, RationalFunctionT, TruncatedSeries};

/// Tri-state outcome of a hypothesis check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Failed,
    NotCheckable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl HypothesisCheck {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        HypothesisCheck { name: name.into(), status, detail: detail.into() }
    }
}

/// One nonzero `Tor_i^R(M,k)_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub character: Option<Vec<String>>,
}

pub fn betti_entries(t: &TorTable) -> Vec<BettiEntry> {
    t.dims
        .iter()
        .map(|(&(i, j), &dim)| BettiEntry {
            i,
            j,
            dim,
            character: t.characters.as_ref().map(|c| c[&(i, j)].iter().map(format_value).collect()),
        })
        .collect()
}

/// `Σ_j [Tor_{i,j}]` for every `i`, when characters were recorded.
fn ungraded_tor(t: &TorTable, classes: usize) -> Option<Vec<GrothElement>> {
    let chars = t.characters.as_ref()?;
    let top = t.top_index().map_or(0, |i| i + 1);
    let mut out = vec![GrothElement::zero(classes); top];
    for (&(i, _), v) in chars {
        out[i] = out[i].add(&GrothElement::new(v.clone()));
    }
    Some(out)
}

/// `Σ_{i,j} (-1)^i [Tor_{i,j}]`.
fn alternating_total(t: &TorTable, classes: usize) -> Option<GrothElement> {
    let per_i = ungraded_tor(t, classes)?;
    Some(per_i.iter().enumerate().fold(GrothElement::zero(classes), |acc, (i, x)| {
        if i % 2 == 0 {
            acc.add(x)
        } else {
            acc.sub(x)
        }
    }))
}

fn tor_series(t: &TorTable, classes: usize) -> Result<Option<Vec<TruncatedSeries<CyclotomicField>>>> {
    let Some(per_degree) = t.euler_characters() else { return Ok(None) };
    let k = CyclotomicField::new(t.conductor)?;
    let series = (0..classes)
        .map(|c| {
            let coeffs = per_degree.iter().map(|v| v[c].embed(t.conductor)).collect::<Result<Vec<_>>>()?;
            Ok(TruncatedSeries::new(&k, coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(series))
}

/// One alternating partial sum `Σ_{i ≤ m} (-1)^i [Tor_i]` against `[U]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialSum {
    pub m: usize,
    pub dimension: i64,
    pub values: Option<Vec<String>>,
    /// `at_least` for even `m`, `at_most` for odd `m`.
    pub relation: String,
    pub holds: bool,
    pub equality: bool,
    /// `characters` when simple multiplicities were checked, else `dimensions`.
    pub method: String,
}

/// The three parts of the omnibus check on `M = (U ⊗ k[V])^G` over `k[V]^G`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmnibusReport {
    pub module: String,
    pub group_order: usize,
    pub truncation: usize,
    pub fingerprint: String,
    pub class_labels: Vec<String>,
    pub betti: Vec<BettiEntry>,
    pub hd: HdReport,
    pub module_class: Vec<String>,
    pub generators_class: Option<Vec<String>>,
    pub generators_vs_module: Option<Comparison>,
    pub part_i_holds: bool,
    pub free: bool,
    pub consistent: bool,
    pub partial_sums: Vec<PartialSum>,
    pub series_matches_tor: Option<bool>,
    pub at_one: Option<Vec<ValueAtOne>>,
    pub at_one_holds: Option<bool>,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// `a - b ≥ 0`, by multiplicities when `Θ` allows it and
/// by dimensions otherwise. Returns `(holds, method, comparison)`.
fn dominates<F: CharacterField>(
    theta: &Theta<F>,
    a: &GrothElement,
    b: &GrothElement,
) -> Result<(bool, &'static str, Option<Comparison>)> {
    match compare(theta, a, b, CompareMode::Inequality) {
        Ok(c) => Ok((c.holds, "characters", Some(c))),
        Err(Error::UnsupportedGroupForInequality) => {
            let d = a.sub(b).degree().is_some_and(|r| r >= crate::numbers::rat(0));
            Ok((d, "dimensions", None))
        }
        Err(e) => Err(e),
    }
}

/// Checks, for `M = (U ⊗ k[V])^G` over `R = k[V]^G` through degree `d`:
/// (i) `[M ⊗_R k] ≥ [U]` with equality exactly when `M` is free, (ii) the alternating
/// partial sums of `[Tor_i]` sit alternately above and below `[U]`, and (iii)
/// `Σ (-1)^i [Tor_i](t)` is regular at `t = 1` with value `[U]`.
pub fn verify_omnibus<F: CharacterField>(u: &BimoduleU<F>, group: &FiniteMatrixGroup<F>, d: usize) -> Result<OmnibusReport> {
    let tower = Arc::new(MonomialTower::new(group.dim(), d));
    let m = relative_invariants_in_tower(u, group, &tower)?;
    let r = GradedAlgebraR::from_subspace(invariants_in_tower(group, &tower)?)?;
    let theta = Theta::gamma_only(u.gamma().clone())?;
    let res = truncated_minimal_resolution(&m, &r, Some(&theta))?;
    let tor = res.tor;
    let classes = theta.len();
    let u_class = character_of(&theta, u.dim(), u.gamma().generators(), None)?;
    let mut notes = Vec::new();

    let per_i = ungraded_tor(&tor, classes);
    if per_i.is_none() {
        notes.push("second-group order is not invertible: Tor characters unavailable, dimensions used".into());
    }
    let totals = tor.totals();
    let dims_of = |i: usize| totals.get(i).copied().unwrap_or(0) as i64;
    let sum_upto = |k: usize| -> Option<GrothElement> {
        per_i.as_ref().map(|p| {
            (0..=k).fold(GrothElement::zero(classes), |acc, i| match p.get(i) {
                None => acc,
                Some(x) if i % 2 == 0 => acc.add(x),
                Some(x) => acc.sub(x),
            })
        })
    };

    // (i)
    let (part_i_holds, generators_vs_module, equality0) = match sum_upto(0) {
        Some(gens) => {
            let (holds, _, cmp) = dominates(&theta, &gens, &u_class)?;
            let eq = gens == u_class;
            (holds, cmp, eq)
        }
        None => (dims_of(0) >= u.dim() as i64, None, dims_of(0) == u.dim() as i64),
    };
    let free = tor.top_index().is_none_or(|i| i == 0);
    let consistent = equality0 == free;

    // (ii)
    let top = tor.top_index().unwrap_or(0);
    let mut partial_sums = Vec::new();
    for k in 0..=top {
        let dimension: i64 = (0..=k).map(|i| if i % 2 == 0 { dims_of(i) } else { -dims_of(i) }).sum();
        let even = k % 2 == 0;
        let (holds, method, equality, values) = match sum_upto(k) {
            Some(s) => {
                let (holds, method, _) =
                    if even { dominates(&theta, &s, &u_class)? } else { dominates(&theta, &u_class, &s)? };
                (holds, method, s == u_class, Some(s.formatted()))
            }
            None => {
                let holds = if even { dimension >= u.dim() as i64 } else { dimension <= u.dim() as i64 };
                (holds, "dimensions", dimension == u.dim() as i64, None)
            }
        };
        partial_sums.push(PartialSum {
            m: k,
            dimension,
            values,
            relation: if even { "at_least" } else { "at_most" }.into(),
            holds,
            equality,
            method: method.into(),
        });
    }

    // (iii)
    let p = group.field().characteristic();
    let (series_matches_tor, at_one, at_one_holds) = if p != 0 && (group.order() as u64).is_multiple_of(p) {
        notes.push("Molien's formula unavailable in modular characteristic: t = 1 evaluation not checked".into());
        (None, None, None)
    } else {
        let mforms = equivariant_molien(u, group, &theta, false)?;
        let rform = molien_trivial(group)?;
        let xs = mforms.iter().map(|f| quotient(f, &rform)).collect::<Result<Vec<_>>>()?;
        let series = GrothSeries {
            labels: theta.classes().iter().map(|c| c.label()).collect(),
            truncation: tor.truncation,
            truncated: tor_series(&tor, classes)?.unwrap_or_default(),
            closed: Some(xs.clone()),
        };
        let matches = if series.truncated.is_empty() { None } else { series.closed_forms_agree()? };
        let holds = xs.iter().zip(u_class.values()).all(|(x, v)| {
            let one = x.field().one();
            x.evaluate(&one).is_ok_and(|val| (&val - v).is_zero())
        });
        (matches, series.at_one(), Some(holds))
    };

    let passed = part_i_holds
        && consistent
        && partial_sums.iter().all(|s| s.holds)
        && series_matches_tor != Some(false)
        && at_one_holds != Some(false);
    Ok(OmnibusReport {
        module: u.name().to_string(),
        group_order: group.order(),
        truncation: tor.truncation,
        fingerprint: theta.ctx().fingerprint(),
        class_labels: theta.classes().iter().map(|c| c.label()).collect(),
        betti: betti_entries(&tor),
        hd: tor.hd,
        module_class: u_class.formatted(),
        generators_class: sum_upto(0).map(|g| g.formatted()),
        generators_vs_module,
        part_i_holds,
        free,
        consistent,
        partial_sums,
        series_matches_tor,
        at_one,
        at_one_holds,
        notes,
        passed,
    })
}

/// Classwise comparison of `Σ (-1)^i [Tor_i^R(M,k)]` with an independently computed side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorIdentityReport {
    pub route: String,
    pub module: String,
    pub truncation: usize,
    pub fingerprint: String,
    pub omega: Option<String>,
    pub omega_order: u64,
    pub regular_vector: Option<Vec<String>>,
    pub class_labels: Vec<String>,
    pub betti: Vec<BettiEntry>,
    pub hd: HdReport,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub agree: Vec<bool>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub passed: bool,
}

/// Which right-hand side `verify_springer` computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpringerRoute {
    /// `R = k[V]^G` is polynomial; the right side is `[U]` as a `Γ × C` module.
    Polynomial,
    /// General polynomial `R`; the right side is read off the enumerated fiber through the
    /// regular vector, whose size is capped.
    Fiber { cap: u128 },
}

/// A regular certificate for `c`, trying `omega` if given and otherwise every primitive
/// root of unity of the order of `c` that the field contains.
pub fn regular_certificate_for<F: CharacterField>(
    group: &FiniteMatrixGroup<F>,
    c: usize,
    omega: Option<F::Elem>,
) -> Result<RegularElementCertificate<F>> {
    let field = group.field();
    let candidates = match omega {
        Some(w) => vec![w],
        None => {
            let n = group.element_order(c);
            let Some(z) = field.primitive_root(n) else {
                return Err(Error::HypothesisFailure(format!(
                    "regularity: the field has no primitive root of unity of order {n}"
                )));
            };
            let mut out = Vec::new();
            let mut w = z.clone();
            for k in 1..=n {
                if num_integer::gcd(k, n) == 1 {
                    out.push(w.clone());
                }
                w = field.mul(&w, &z);
            }
            out
        }
    };
    for w in candidates {
        match find_regular_certificate(group, c, &w, DEFAULT_SWEEP_BOUND) {
            Ok(cert) => return Ok(cert),
            Err(Error::NotRegular(_)) | Err(Error::TooLarge { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::HypothesisFailure(format!("regularity: element {c} has no eigenvector with a free orbit")))
}

/// Left side of the identity: the alternating Tor character over `R` generated by
/// `normalization`, with `Θ = Γ × ⟨c⟩` acting through `omega` on the grading.
fn tor_side<F: CharacterField>(
    u: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    r: &GradedAlgebraR<F>,
    theta: &Theta<F>,
) -> Result<(TorTable, GrothElement)> {
    let m = relative_invariants_in_tower(u, group, r.tower())?;
    let tor = koszul_tor(&m, r, Some(theta))?;
    if let HdReport::AtLeast(_) = tor.hd {
        return Err(Error::TruncationTooSmall(tor.truncation));
    }
    let total = alternating_total(&tor, theta.len()).expect("Koszul characters are always recorded");
    Ok((tor, total))
}

/// `Σ` over `c^a`-stable orbits `G w_i` of the fiber of `χ(γ · h_i)`, where
/// `c^a · w_i = h_i · w_i`. `None` for the fiber over the origin.
fn fiber_side<F: CharacterField>(
    u: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    theta: &Theta<F>,
    fiber: &FiberDescriptor<F>,
    hypotheses: &mut Vec<HypothesisCheck>,
) -> Result<Option<GrothElement>> {
    let field = group.field();
    if fiber.values.iter().all(|v| field.is_zero(v)) {
        hypotheses.push(HypothesisCheck::new("general fiber", Status::NotCheckable, "fiber over the origin is the graded fiber itself"));
        return Ok(None);
    }
    if !fiber.free {
        return Err(Error::HypothesisFailure("freeness: the group does not act freely on the fiber".into()));
    }
    hypotheses.push(HypothesisCheck::new(
        "freeness",
        Status::Verified,
        format!("{} points in {} free orbits", fiber.len(), fiber.orbits.len()),
    ));
    if theta.c_order() > 1 {
        let scaling = Matrix::scalar(field, group.dim(), theta.omega());
        if fiber.c.as_ref() != Some(&scaling) {
            return Err(Error::HypothesisFailure(
                "C-stability: the fiber was not enumerated with the scaling by omega".into(),
            ));
        }
        hypotheses.push(HypothesisCheck::new("C-stability", Status::Verified, "fiber is stable under scaling by omega"));
    }
    let l_g = u.element_matrices(group)?;
    let values = theta
        .classes()
        .iter()
        .map(|cl| {
            let transporters = if cl.c_power == 0 {
                vec![Some(group.identity()); fiber.orbits.len()]
            } else {
                fiber.transporters_for_power(group, cl.c_power)
            };
            let gamma = theta.gamma().element(cl.gamma_rep);
            let mut sum = CyclotomicNumber::zero(theta.conductor());
            for h in transporters.into_iter().flatten() {
                let v = field.brauer_character(theta.ctx(), &gamma.mul(&l_g[h])?)?;
                sum = &sum + &theta.embed(&v);
            }
            Ok(sum)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(GrothElement::new(values)))
}

fn identity_report<F: CharacterField>(
    route: &str,
    u: &BimoduleU<F>,
    theta: &Theta<F>,
    cert: Option<&RegularElementCertificate<F>>,
    tor: &TorTable,
    lhs: &GrothElement,
    rhs: &GrothElement,
    hypotheses: Vec<HypothesisCheck>,
) -> TorIdentityReport {
    let field = theta.gamma().field();
    let agree: Vec<bool> = lhs.values().iter().zip(rhs.values()).map(|(a, b)| (a - b).is_zero()).collect();
    TorIdentityReport {
        route: route.into(),
        module: u.name().into(),
        truncation: tor.truncation,
        fingerprint: theta.ctx().fingerprint(),
        omega: (theta.c_order() > 1).then(|| field.format(theta.omega())),
        omega_order: theta.c_order(),
        regular_vector: cert.map(|c| c.vector.iter().map(|x| field.format(x)).collect()),
        class_labels: theta.classes().iter().map(|c| c.label()).collect(),
        betti: betti_entries(tor),
        hd: tor.hd,
        lhs: lhs.formatted(),
        rhs: rhs.formatted(),
        passed: agree.iter().all(|&a| a),
        agree,
        hypotheses,
    }
}

/// The Tor identity at a regular element `c`: classwise over `Θ = Γ × ⟨c⟩`,
/// `Σ (-1)^i [Tor_i^R(M,k)]` equals `[U]` restricted along `c ↦ c` (polynomial route), or
/// the fiber character sum through the regular vector (fiber route).
pub fn verify_springer<F: CharacterField>(
    u: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    c: usize,
    omega: Option<F::Elem>,
    normalization: &[SparsePoly<F>],
    d: usize,
    route: SpringerRoute,
) -> Result<TorIdentityReport> {
    let field = group.field();
    let mut hypotheses = Vec::new();
    let cert = regular_certificate_for(group, c, omega)?;
    hypotheses.push(HypothesisCheck::new(
        "regularity",
        Status::Verified,
        format!("eigenvalue {} of order {} with a free eigenvector", field.format(&cert.omega), cert.omega_order),
    ));
    for (i, f) in normalization.iter().enumerate() {
        if !f.is_invariant(group)? {
            return Err(Error::HypothesisFailure(format!("normalization: f_{} is not invariant", i + 1)));
        }
    }
    let tower = Arc::new(MonomialTower::new(group.dim(), d));
    let r = GradedAlgebraR::polynomial_from_sparse(field, &tower, normalization)?;
    let theta = Theta::new(u.gamma().clone(), Some(cert.omega.clone()))?;
    match route {
        SpringerRoute::Polynomial => {
            let inv = invariants_in_tower(group, &tower)?;
            if let Some(k) = (0..=d).find(|&k| inv.dim(k) != r.dim(k)) {
                return Err(Error::HypothesisFailure(format!(
                    "polynomiality certificate: the normalization has dimension {} in degree {k}, the invariants {}",
                    r.dim(k),
                    inv.dim(k)
                )));
            }
            hypotheses.push(HypothesisCheck::new(
                "polynomiality certificate",
                Status::Verified,
                format!("normalization equals the invariant ring through degree {d}"),
            ));
            let (tor, lhs) = tor_side(u, group, &r, &theta)?;
            let l_g = u.element_matrices(group)?;
            let rhs = theta
                .classes()
                .iter()
                .map(|cl| {
                    let m = theta.gamma().element(cl.gamma_rep).mul(&l_g[group.power(c, cl.c_power as i64)])?;
                    Ok(theta.embed(&field.brauer_character(theta.ctx(), &m)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(identity_report("polynomial", u, &theta, Some(&cert), &tor, &lhs, &GrothElement::new(rhs), hypotheses))
        }
        SpringerRoute::Fiber { cap } => {
            let scaling = Matrix::scalar(field, group.dim(), &cert.omega);
            let fiber = enumerate_fiber(group, normalization, &cert.vector, Some(&scaling), cap).map_err(|e| match e {
                Error::FiberNotCStable => Error::HypothesisFailure("C-stability: the fiber is not stable under scaling".into()),
                other => other,
            })?;
            let (tor, lhs) = tor_side(u, group, &r, &theta)?;
            let rhs = fiber_side(u, group, &theta, &fiber, &mut hypotheses)?.unwrap_or_else(|| lhs.clone());
            Ok(identity_report("fiber", u, &theta, Some(&cert), &tor, &lhs, &rhs, hypotheses))
        }
    }
}

/// The special and general fiber give the same alternating Tor class: the graded side is
/// computed from `M = (U ⊗ k[V])^G` over `R = k[normalization]`, the other from the
/// enumerated fiber.
pub fn verify_fiber_euler<F: CharacterField>(
    u: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    normalization: &[SparsePoly<F>],
    fiber: &FiberDescriptor<F>,
    theta: &Theta<F>,
    d: usize,
) -> Result<TorIdentityReport> {
    let tower = Arc::new(MonomialTower::new(group.dim(), d));
    let r = GradedAlgebraR::polynomial_from_sparse(group.field(), &tower, normalization)?;
    let mut hypotheses = Vec::new();
    let (tor, lhs) = tor_side(u, group, &r, theta)?;
    let rhs = fiber_side(u, group, theta, fiber, &mut hypotheses)?.unwrap_or_else(|| lhs.clone());
    Ok(identity_report("fiber", u, theta, None, &tor, &lhs, &rhs, hypotheses))
}

/// Closed forms of `[M](t) / [R](t)` per `Θ` class with their values at `t = 1`, where
/// `M = (U ⊗ k[V])^G` and `R` has Hilbert series `r_hilbert`. A pole is a verdict.
pub fn tor_series_at_one<F: CharacterField>(
    u: &BimoduleU<F>,
    group: &FiniteMatrixGroup<F>,
    theta: &Theta<F>,
    r_hilbert: &RationalFunctionT,
) -> Result<Vec<ValueAtOne>> {
    let m = equivariant_molien(u, group, theta, false)?;
    let r = scalar_closed_forms(r_hilbert, theta)?;
    m.iter()
        .zip(&r)
        .zip(theta.classes())
        .map(|((a, b), cl)| Ok(value_at_one(&quotient(a, b)?, &cl.label())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named::{cyclic_scalar, symmetric};
    use crate::groups::DEFAULT_GROUP_CAP;
    use crate::numbers::{rat, FiniteField, RationalField};
    use crate::polyaction::DEFAULT_FIBER_CAP;

    fn plus_minus() -> FiniteMatrixGroup<RationalField> {
        let f = RationalField;
        FiniteMatrixGroup::generate(&f, 2, vec![Matrix::scalar(&f, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn example_sign_module_omnibus() {
        let g = plus_minus();
        let rep = verify_omnibus(&BimoduleU::sign(&g).unwrap(), &g, 13).unwrap();
        let dims: Vec<i64> = rep.partial_sums.iter().map(|s| s.dimension).collect();
        assert_eq!(dims, vec![2, 0, 2, 0, 2, 0, 2]);
        assert!(rep.partial_sums.iter().all(|s| s.holds && !s.equality));
        assert!(rep.part_i_holds && !rep.free && rep.consistent);
        assert_eq!(rep.series_matches_tor, Some(true));
        let at = &rep.at_one.as_ref().unwrap()[0];
        assert_eq!(at.value.as_deref(), Some("1"));
        assert_eq!(at.closed_form, "(2*t) / (1 + t^2)");
        assert!(rep.passed);
    }

    #[test]
    fn trivial_module_is_free() {
        let g = plus_minus();
        let rep = verify_omnibus(&BimoduleU::trivial(&g).unwrap(), &g, 8).unwrap();
        assert!(rep.free && rep.partial_sums[0].equality && rep.passed);
    }

    #[test]
    fn s2_omnibus_with_regular_module() {
        let f = RationalField;
        let s2 = symmetric(&f, 2).unwrap();
        for u in [BimoduleU::sign(&s2).unwrap(), BimoduleU::regular(&s2).unwrap()] {
            let rep = verify_omnibus(&u, &s2, 8).unwrap();
            assert!(rep.free && rep.passed, "{rep:?}");
            assert_eq!(rep.generators_vs_module.as_ref().map(|c| c.strict), Some(false));
        }
    }

    fn s2_normalization() -> Vec<SparsePoly<RationalField>> {
        let f = RationalField;
        vec![
            SparsePoly::new(&f, 2, vec![(rat(1), vec![1, 0]), (rat(1), vec![0, 1])]).unwrap(),
            SparsePoly::new(&f, 2, vec![(rat(1), vec![1, 1])]).unwrap(),
        ]
    }

    #[test]
    fn springer_for_s2() {
        let f = RationalField;
        let s2 = symmetric(&f, 2).unwrap();
        let c = (0..2).find(|&i| i != s2.identity()).unwrap();
        for u in [BimoduleU::trivial(&s2).unwrap(), BimoduleU::sign(&s2).unwrap(), BimoduleU::regular(&s2).unwrap()] {
            let rep = verify_springer(&u, &s2, c, None, &s2_normalization(), 8, SpringerRoute::Polynomial).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        let rep = verify_springer(&BimoduleU::sign(&s2).unwrap(), &s2, c, None, &s2_normalization(), 8, SpringerRoute::Polynomial)
            .unwrap();
        assert_eq!(rep.rhs, vec!["1", "-1"]);
    }

    #[test]
    fn springer_for_cyclic_four_simples() {
        let k = CyclotomicField::new(4).unwrap();
        let g = cyclic_scalar(&k, 4, 1).unwrap();
        let c = g.generator_indices()[0];
        let x4 = vec![SparsePoly::new(&k, 1, vec![(k.one(), vec![4])]).unwrap()];
        let i = k.primitive_root(4).unwrap();
        let mut w = k.one();
        for _ in 0..4 {
            let u = BimoduleU::scalar("chi", &g, &[w.clone()]).unwrap();
            let rep = verify_springer(&u, &g, c, None, &x4, 10, SpringerRoute::Polynomial).unwrap();
            assert!(rep.passed, "{rep:?}");
            w = k.mul(&w, &i);
        }
    }

    #[test]
    fn springer_fails_without_polynomial_invariants() {
        let f = RationalField;
        let g = plus_minus();
        let squares = vec![
            SparsePoly::new(&f, 2, vec![(rat(1), vec![2, 0])]).unwrap(),
            SparsePoly::new(&f, 2, vec![(rat(1), vec![0, 2])]).unwrap(),
        ];
        let c = g.generator_indices()[0];
        let err = verify_springer(&BimoduleU::trivial(&g).unwrap(), &g, c, None, &squares, 6, SpringerRoute::Polynomial);
        assert!(matches!(err, Err(Error::HypothesisFailure(ref s)) if s.starts_with("polynomiality")));
        // The general route only needs a free fiber.
        let rep = verify_springer(
            &BimoduleU::trivial(&g).unwrap(),
            &g,
            c,
            None,
            &squares,
            6,
            SpringerRoute::Fiber { cap: DEFAULT_FIBER_CAP },
        );
        assert!(matches!(rep, Err(Error::InvalidField(_))));
    }

    #[test]
    fn modular_fiber_route() {
        let f = FiniteField::prime(3).unwrap();
        let g = FiniteMatrixGroup::generate(&f, 1, vec![Matrix::scalar(&f, 1, &f.from_int(-1))], DEFAULT_GROUP_CAP).unwrap();
        let c = g.generator_indices()[0];
        let x2 = vec![SparsePoly::new(&f, 1, vec![(f.one(), vec![2])]).unwrap()];
        for (u, expected) in [(BimoduleU::trivial(&g).unwrap(), ["1", "1"]), (BimoduleU::sign(&g).unwrap(), ["1", "-1"])] {
            let fib = verify_springer(&u, &g, c, None, &x2, 8, SpringerRoute::Fiber { cap: DEFAULT_FIBER_CAP }).unwrap();
            assert!(fib.passed, "{fib:?}");
            assert_eq!(fib.rhs, expected);
            let poly = verify_springer(&u, &g, c, None, &x2, 8, SpringerRoute::Polynomial).unwrap();
            assert!(poly.passed);
        }
    }

    #[test]
    fn fiber_euler_over_origin_and_general_point() {
        let f = FiniteField::prime(3).unwrap();
        let g = FiniteMatrixGroup::generate(&f, 1, vec![Matrix::scalar(&f, 1, &f.from_int(-1))], DEFAULT_GROUP_CAP).unwrap();
        let x2 = vec![SparsePoly::new(&f, 1, vec![(f.one(), vec![2])]).unwrap()];
        let u = BimoduleU::sign(&g).unwrap();
        let theta = Theta::gamma_only(u.gamma().clone()).unwrap();
        let origin = enumerate_fiber(&g, &x2, &[f.zero()], None, DEFAULT_FIBER_CAP).unwrap();
        let rep = verify_fiber_euler(&u, &g, &x2, &origin, &theta, 6).unwrap();
        assert!(rep.passed && rep.hypotheses[0].status == Status::NotCheckable);
        let one = enumerate_fiber(&g, &x2, &[f.one()], None, DEFAULT_FIBER_CAP).unwrap();
        let rep = verify_fiber_euler(&u, &g, &x2, &one, &theta, 6).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.rhs, vec!["1"]);
    }

    #[test]
    fn cyclic_four_quotient_has_poles() {
        // M = k[x, y] as (k(G) ⊗ k[V])^G for G = {±1}, R = k[x², xy, y²], C = ⟨i⟩.
        let k = CyclotomicField::new(4).unwrap();
        let g = cyclic_scalar(&k, 2, 2).unwrap();
        let regular = BimoduleU::regular(&g).unwrap();
        let u = BimoduleU::new("functions on G", &g, 2, regular.g_action().to_vec(), vec![]).unwrap();
        let theta = Theta::new(u.gamma().clone(), Some(k.primitive_root(4).unwrap())).unwrap();
        let vals = tor_series_at_one(&u, &g, &theta, &molien_trivial(&g).unwrap()).unwrap();
        let poles: Vec<usize> = vals.iter().map(|v| v.pole_order).collect();
        assert_eq!(poles, vec![0, 1, 0, 1]);
        assert_eq!(vals[0].value.as_deref(), Some("2"));
        assert_eq!(vals[2].value.as_deref(), Some("0"));
        assert_eq!(vals[0].closed_form, "(1 + 2*t + t^2) / (1 + t^2)");
    }
}
