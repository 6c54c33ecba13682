//! Cyclic sieving on coset spaces, Brauer characters read off Hilbert-series quotients,
//! and the permutation module on cosets.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groth::{format_value, regular_certificate_for, HypothesisCheck, Status, Theta};
use crate::groups::{find_regular_certificate, CosetSpace, FiniteMatrixGroup, DEFAULT_GROUP_CAP, DEFAULT_SWEEP_BOUND};
use crate::linalg::Matrix;
use crate::numbers::{cyclotomic_order, format_rational, CharacterField, CyclotomicNumber, RationalField};
use crate::polyaction::{
    enumerate_fiber, invariants_up_to, relative_invariants_up_to, BimoduleU, SparsePoly, DEFAULT_FIBER_CAP,
};
use crate::series::{
    evaluate, fit_denominator, infer_polynomial_degrees, molien_trivial, to_cyclotomic, FittedSeries, RationalFunction,
    RationalFunctionT, TruncatedSeries,
};

/// One `j` of the sieving check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CspRow {
    pub j: u64,
    pub element_order: u64,
    pub root_order: u64,
    pub fixed_points: usize,
    pub value: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CspReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub cosets: usize,
    pub element: usize,
    pub element_order: u64,
    pub omega: String,
    pub truncation: usize,
    /// `molien` or `dims`.
    pub route: String,
    pub fingerprint: String,
    pub polynomiality: HypothesisCheck,
    pub invariant_degrees: Option<Vec<usize>>,
    pub x_poly: String,
    pub coefficients_ok: bool,
    pub rows: Vec<CspRow>,
    pub orbits: usize,
    pub burnside_holds: bool,
    pub passed: bool,
}

fn enumerate_subgroup<F: CharacterField>(group: &FiniteMatrixGroup<F>, gens: &[usize]) -> Result<FiniteMatrixGroup<F>> {
    let mats = gens.iter().map(|&g| group.element(g).clone()).collect();
    FiniteMatrixGroup::generate(group.field(), group.dim(), mats, DEFAULT_GROUP_CAP)
}

/// Number of `⟨x⟩`-orbits of a permutation.
fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
        }
    }
    count
}

/// Checks `|X^{c^j}| = X(ω̂^j)` on `X = H\G` with `X(t) = Hilb(k[V]^H) / Hilb(k[V]^G)`,
/// for every `j` in one period of `c`. The invariant ring of `G` must be polynomial
/// through degree `d`; otherwise the report carries an unverified hypothesis and no rows.
pub fn csp_check<F: CharacterField>(
    group: &FiniteMatrixGroup<F>,
    subgroup_gens: &[usize],
    c: usize,
    d: usize,
) -> Result<CspReport> {
    let field = group.field();
    let cert = regular_certificate_for(group, c, None)?;
    let space = CosetSpace::new(group, subgroup_gens, Some(c))?;
    let h = enumerate_subgroup(group, subgroup_gens)?;
    let p = field.characteristic();
    let modular = p != 0 && (group.order() as u64).is_multiple_of(p);
    let n = group.dim();

    let g_series = if modular {
        TruncatedSeries::from_dims(&RationalField, &invariants_up_to(group, d)?.dims())
    } else {
        let e = molien_trivial(group)?.expand(d)?;
        let coeffs = e.coeffs().iter().map(|x| x.as_rational().expect("rational Hilbert series")).collect();
        TruncatedSeries::new(&RationalField, coeffs)
    };
    let degrees = infer_polynomial_degrees(&g_series, n);
    let theta = Theta::new(Arc::new(FiniteMatrixGroup::generate(field, 1, Vec::new(), 1)?), Some(cert.omega.clone()))?;
    let element_order = group.element_order(c);
    let mut report = CspReport {
        group_order: group.order(),
        subgroup_order: h.order(),
        cosets: space.len(),
        element: c,
        element_order,
        omega: field.format(&cert.omega),
        truncation: d,
        route: if modular { "dims" } else { "molien" }.into(),
        fingerprint: theta.ctx().fingerprint(),
        polynomiality: HypothesisCheck::new("polynomial invariants", Status::Verified, ""),
        invariant_degrees: degrees.clone(),
        x_poly: String::new(),
        coefficients_ok: false,
        rows: Vec::new(),
        orbits: cycle_count(&space.right_action(group, c)),
        burnside_holds: false,
        passed: false,
    };
    let Some(degrees) = degrees else {
        report.polynomiality = HypothesisCheck::new(
            "polynomial invariants",
            Status::NotCheckable,
            format!("the invariant Hilbert series is not 1/prod(1-t^d_i) through degree {d}"),
        );
        return Ok(report);
    };
    report.polynomiality.detail = format!("invariant degrees {degrees:?} through degree {d}");

    let x: RationalFunctionT = if modular {
        let hs = TruncatedSeries::from_dims(&RationalField, &invariants_up_to(&h, d)?.dims());
        let fit: FittedSeries<RationalField> = fit_denominator(&hs, &degrees)?;
        to_cyclotomic(&RationalFunction::from_poly(fit.numerator))
    } else {
        crate::groth::quotient(&molien_trivial(&h)?, &molien_trivial(group)?)?
    };
    if !x.is_polynomial() {
        return Err(Error::NonPolynomialX);
    }
    report.x_poly = x.format("t");
    let coeffs: Vec<_> = x.numerator().coeffs().iter().map(|c| c.as_rational()).collect();
    let den = x.denominator().coeff(0).as_rational();
    report.coefficients_ok = match den {
        Some(den) => {
            let vals: Option<Vec<_>> = coeffs.iter().map(|c| c.as_ref().map(|c| c / &den)).collect();
            vals.is_some_and(|v| {
                v.iter().all(|c| c.is_integer() && *c >= crate::numbers::rat(0))
                    && v.iter().fold(crate::numbers::rat(0), |a, b| a + b) == crate::numbers::rat(space.len() as i64)
            })
        }
        None => false,
    };

    let mut total = 0;
    for j in 0..element_order {
        let fixed = space.fixed_points(group, j as i64)?;
        total += fixed;
        let point = theta.omega_power(j);
        let value = evaluate(&x, &point)?;
        let pass = (&value - &CyclotomicNumber::from_integer(1, fixed as i64)).is_zero();
        report.rows.push(CspRow {
            j,
            element_order: group.element_order(group.power(c, j as i64)),
            root_order: theta.c_order() / num_integer::gcd(theta.c_order(), j),
            fixed_points: fixed,
            value: format_value(&value),
            pass,
        });
    }
    report.burnside_holds = total == element_order as usize * report.orbits;
    report.passed = report.coefficients_ok && report.burnside_holds && report.rows.iter().all(|r| r.pass);
    Ok(report)
}

/// Inputs for reading a Brauer character value off Hilbert series.
#[derive(Clone, Debug)]
pub struct ModularCharacterQuery<F: CharacterField> {
    pub group: Arc<FiniteMatrixGroup<F>>,
    pub element: usize,
    /// Eigenvalue of `element` whose lift is the evaluation point; defaults to a
    /// primitive root of the element's order with a free eigenvector.
    pub omega: Option<F::Elem>,
    pub module: BimoduleU<F>,
    /// Degrees of a homogeneous system of parameters `R ⊆ k[V]^G`.
    pub normalization_degrees: Vec<usize>,
    /// The parameters themselves, when known, for the fiber checks.
    pub normalization: Option<Vec<SparsePoly<F>>>,
    pub fiber_cap: u128,
    /// Per-degree dimensions of `M` and of `k[V]^G` computed earlier, reused when they
    /// reach the truncation.
    pub module_dims: Option<Vec<usize>>,
    pub invariant_dims: Option<Vec<usize>>,
}

impl<F: CharacterField> ModularCharacterQuery<F> {
    pub fn new(group: Arc<FiniteMatrixGroup<F>>, element: usize, module: BimoduleU<F>, degrees: Vec<usize>) -> Self {
        ModularCharacterQuery {
            group,
            element,
            omega: None,
            module,
            normalization_degrees: degrees,
            normalization: None,
            fiber_cap: DEFAULT_FIBER_CAP,
            module_dims: None,
            invariant_dims: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularCharacterReport {
    pub element: usize,
    pub element_order: u64,
    pub omega: String,
    pub omega_hat: String,
    pub truncation: usize,
    pub fingerprint: String,
    pub normalization_degrees: Vec<usize>,
    pub hilbert_module: String,
    pub hilbert_invariants: String,
    /// `X_{M,R}`, `X_{k[V]^G,R}` and `X_{M,k[V]^G}` as closed forms.
    pub x_module: String,
    pub x_invariants: String,
    pub x_relative: String,
    pub value_module: String,
    pub value_invariants: String,
    pub value_relative: Option<String>,
    pub direct: Option<String>,
    pub agrees: Option<bool>,
    pub checklist: Vec<HypothesisCheck>,
    pub passed: bool,
}

/// `Hilb(M) / Hilb(N)` for dimension vectors fitted over the same parameter degrees.
pub fn hilbert_quotient(numerator_fit: &FittedSeries<RationalField>, denominator_fit: &FittedSeries<RationalField>) -> Result<RationalFunction<RationalField>> {
    numerator_fit.rational().div(&denominator_fit.rational())
}

/// `X_{N,R'}` for a module `N` whose Hilbert series was fitted over degrees `fit` and a
/// polynomial algebra `R'` with generator degrees `other`: `Hilb(N) · Π (1 - t^{e_i})`.
pub fn relative_to_degrees(fit: &FittedSeries<RationalField>, other: &[usize]) -> Result<RationalFunction<RationalField>> {
    let other_fit = FittedSeries { numerator: crate::poly::Poly::one(&RationalField), degrees: other.to_vec() };
    hilbert_quotient(fit, &other_fit)
}

/// `χ_U(g)` read off `X_{M,R}(ω̂)` and `X_{M,k[V]^G}(ω̂)`, with `M = (U ⊗ k[V])^G`, compared
/// with the Brauer character computed from eigenvalues, and the hypothesis checklist:
/// (i) free action on the fiber through a regular `ω`-eigenvector, (ii) all transporters on
/// that fiber have the character value of `g`, (iii) `X_{k[V]^G,R}(ω̂) != 0`.
pub fn character_from_series<F: CharacterField>(q: &ModularCharacterQuery<F>, d: usize) -> Result<ModularCharacterReport> {
    let group = &q.group;
    let field = group.field();
    let g = q.element;
    let element_order = group.element_order(g);
    let p = field.characteristic();
    if p != 0 && element_order.is_multiple_of(p) {
        return Err(Error::NotPRegular { order: element_order, characteristic: p });
    }
    let ctx = group.lift_context(1)?;
    let (omega, omega_hat) = match &q.omega {
        Some(w) => (Some(w.clone()), field.lift_root(&ctx, w)?),
        None => default_eigenvalue(group, &ctx, g, element_order)?,
    };

    let m_dims = match &q.module_dims {
        Some(v) if v.len() > d => v[..=d].to_vec(),
        _ => relative_invariants_up_to(&q.module, group, d)?.dims(),
    };
    let inv_dims = match &q.invariant_dims {
        Some(v) if v.len() > d => v[..=d].to_vec(),
        _ => invariants_up_to(group, d)?.dims(),
    };
    let m_fit = fit_denominator(&TruncatedSeries::from_dims(&RationalField, &m_dims), &q.normalization_degrees)?;
    let inv_fit = fit_denominator(&TruncatedSeries::from_dims(&RationalField, &inv_dims), &q.normalization_degrees)?;
    let x_module = to_cyclotomic(&RationalFunction::from_poly(m_fit.numerator.clone()));
    let x_invariants = to_cyclotomic(&RationalFunction::from_poly(inv_fit.numerator.clone()));
    let x_relative = to_cyclotomic(&hilbert_quotient(&m_fit, &inv_fit)?);
    let value_module = evaluate(&x_module, &omega_hat)?;
    let value_invariants = evaluate(&x_invariants, &omega_hat)?;
    let value_relative = evaluate(&x_relative, &omega_hat).ok();

    let l_g = q.module.element_matrices(group)?;
    let direct = field.brauer_character(&ctx, &l_g[g])?;
    let agrees = value_relative.as_ref().map(|v| (&direct - v).is_zero());
    // X_{M,R} = X_{M,k[V]^G} · X_{k[V]^G,R}, so the values at ω̂ must factor the same way.
    let factors = (&value_module - &(&direct * &value_invariants)).is_zero();

    let mut checklist = Vec::new();
    let (fiber_check, transporter_check) = match &omega {
        Some(w) => fiber_checks(q, w, &l_g, &direct, &ctx)?,
        None => {
            let why = "the eigenvalue lies outside the ground field";
            (
                HypothesisCheck::new("(i) free action on the fiber", Status::NotCheckable, why),
                HypothesisCheck::new("(ii) transporter classes", Status::NotCheckable, why),
            )
        }
    };
    checklist.push(fiber_check);
    checklist.push(transporter_check);
    checklist.push(HypothesisCheck::new(
        "(iii) X_{k[V]^G,R}(omega_hat) != 0",
        if value_invariants.is_zero() { Status::Failed } else { Status::Verified },
        format!("value {}", format_value(&value_invariants)),
    ));
    let passed = agrees == Some(true) && factors && checklist.iter().all(|c| c.status != Status::Failed);
    Ok(ModularCharacterReport {
        element: g,
        element_order,
        omega: omega.as_ref().map_or_else(|| "(extension)".to_string(), |w| field.format(w)),
        omega_hat: format_value(&omega_hat),
        truncation: d,
        fingerprint: ctx.fingerprint(),
        normalization_degrees: q.normalization_degrees.clone(),
        hilbert_module: m_fit.format("t"),
        hilbert_invariants: inv_fit.format("t"),
        x_module: x_module.format("t"),
        x_invariants: x_invariants.format("t"),
        x_relative: x_relative.format("t"),
        value_module: format_value(&value_module),
        value_invariants: format_value(&value_invariants),
        value_relative: value_relative.as_ref().map(format_value),
        direct: Some(format_value(&direct)),
        agrees,
        checklist,
        passed,
    })
}

/// An eigenvalue of `g` of the same order as `g`, lifted, together with its preimage in
/// the ground field when the field contains it.
fn default_eigenvalue<F: CharacterField>(
    group: &FiniteMatrixGroup<F>,
    ctx: &crate::numbers::LiftContext,
    g: usize,
    order: u64,
) -> Result<(Option<F::Elem>, CyclotomicNumber)> {
    let field = group.field();
    let hat = group
        .eigenvalues(ctx, g)?
        .values()
        .into_iter()
        .find(|v| cyclotomic_order(v).ok() == Some(order))
        .ok_or_else(|| Error::HypothesisFailure(format!("no eigenvalue of order {order}")))?;
    let base = field.primitive_root(order).and_then(|z| {
        (0..order)
            .map(|k| field.pow(&z, k))
            .find(|w| field.lift_root(ctx, w).is_ok_and(|l| (&l - &hat).is_zero()))
    });
    Ok((base, hat))
}

fn fiber_checks<F: CharacterField>(
    q: &ModularCharacterQuery<F>,
    omega: &F::Elem,
    l_g: &[Matrix<F>],
    direct: &CyclotomicNumber,
    ctx: &crate::numbers::LiftContext,
) -> Result<(HypothesisCheck, HypothesisCheck)> {
    let group = &q.group;
    let field = group.field();
    let (i_name, ii_name) = ("(i) free action on the fiber", "(ii) transporter classes");
    let not_checkable = |why: &str| {
        Ok((
            HypothesisCheck::new(i_name, Status::NotCheckable, why),
            HypothesisCheck::new(ii_name, Status::NotCheckable, why),
        ))
    };
    let Some(fs) = &q.normalization else {
        return not_checkable("normalization polynomials not supplied");
    };
    if field.size().is_none() {
        return not_checkable("fiber enumeration needs a finite field");
    }
    let cert = match find_regular_certificate(group, q.element, omega, DEFAULT_SWEEP_BOUND) {
        Ok(c) => c,
        Err(Error::TooLarge { .. }) => return not_checkable("eigenspace too large to search"),
        Err(Error::NotRegular(why)) => {
            return Ok((
                HypothesisCheck::new(i_name, Status::Failed, format!("no free eigenvector: {why}")),
                HypothesisCheck::new(ii_name, Status::NotCheckable, "no fiber to inspect"),
            ))
        }
        Err(e) => return Err(e),
    };
    let scaling = Matrix::scalar(field, group.dim(), omega);
    let fiber = match enumerate_fiber(group, fs, &cert.vector, Some(&scaling), q.fiber_cap) {
        Ok(f) => f,
        Err(Error::TooLarge { size, cap }) => {
            return not_checkable(&format!("space of {size} points exceeds the cap {cap}"));
        }
        Err(Error::FiberNotCStable) => {
            return Ok((
                HypothesisCheck::new(i_name, Status::Failed, "fiber is not stable under scaling by omega"),
                HypothesisCheck::new(ii_name, Status::NotCheckable, "no stable fiber"),
            ))
        }
        Err(e) => return Err(e),
    };
    let free = HypothesisCheck::new(
        i_name,
        if fiber.free { Status::Verified } else { Status::Failed },
        format!("{} points, {} orbits", fiber.len(), fiber.orbits.len()),
    );
    let mut mismatched = 0;
    let mut stable = 0;
    for h in fiber.transporters_for_power(group, 1).into_iter().flatten() {
        stable += 1;
        if !(&field.brauer_character(ctx, &l_g[h])? - direct).is_zero() {
            mismatched += 1;
        }
    }
    let transporters = HypothesisCheck::new(
        ii_name,
        if mismatched == 0 { Status::Verified } else { Status::Failed },
        format!("{stable} stable orbits, {mismatched} with a different character value"),
    );
    Ok((free, transporters))
}

/// The permutation module on `H\G` with the normalizer acting on the left and,
/// optionally, a designated `c`.
#[derive(Clone, Debug)]
pub struct InducedModule<F: CharacterField> {
    pub module: BimoduleU<F>,
    pub space: CosetSpace,
    /// `(d, dim (U ⊗ k[V]_d)^G, dim k[V]^H_d)` for every checked degree.
    pub dimension_check: Vec<(usize, usize, usize)>,
}

impl<F: CharacterField> InducedModule<F> {
    pub fn dimensions_match(&self) -> bool {
        self.dimension_check.iter().all(|&(_, a, b)| a == b)
    }
}

/// `k(H\G)` with the Frobenius-reciprocity check `(k(H\G) ⊗ k[V])^G ≅ k[V]^H` on
/// dimensions through degree `d`.
pub fn induced_coset_module<F: CharacterField>(
    group: &FiniteMatrixGroup<F>,
    subgroup_gens: &[usize],
    c: Option<usize>,
    d: usize,
) -> Result<InducedModule<F>> {
    let (module, _) = BimoduleU::induced(group, subgroup_gens)?;
    let space = CosetSpace::new(group, subgroup_gens, c)?;
    let rel = relative_invariants_up_to(&module, group, d)?.dims();
    let h = enumerate_subgroup(group, subgroup_gens)?;
    let inv = invariants_up_to(&h, d)?.dims();
    let dimension_check = (0..=d).map(|k| (k, rel[k], inv[k])).collect();
    Ok(InducedModule { module, space, dimension_check })
}

/// Formats the coefficients of a rational-coefficient polynomial.
pub fn format_coefficients(p: &crate::poly::Poly<RationalField>) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named::{cyclic_scalar, symmetric};
    use crate::numbers::{rat, CyclotomicField, Field, FiniteField};

    fn nonidentity<F: CharacterField>(g: &FiniteMatrixGroup<F>) -> usize {
        g.generator_indices()[0]
    }

    #[test]
    fn whole_group_gives_one_coset() {
        let k = CyclotomicField::new(4).unwrap();
        let g = cyclic_scalar(&k, 4, 1).unwrap();
        let c = nonidentity(&g);
        let rep = csp_check(&g, &[c], c, 8).unwrap();
        assert_eq!(rep.x_poly, "1");
        assert!(rep.passed && rep.rows.iter().all(|r| r.fixed_points == 1));
    }

    #[test]
    fn cyclic_four_over_its_square() {
        let k = CyclotomicField::new(4).unwrap();
        let g = cyclic_scalar(&k, 4, 1).unwrap();
        let c = nonidentity(&g);
        let rep = csp_check(&g, &[g.power(c, 2)], c, 8).unwrap();
        assert_eq!(rep.x_poly, "1 + t^2");
        let fixed: Vec<usize> = rep.rows.iter().map(|r| r.fixed_points).collect();
        assert_eq!(fixed, vec![2, 0, 2, 0]);
        let values: Vec<&str> = rep.rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(values, vec!["2", "0", "2", "0"]);
        assert!(rep.passed);
    }

    #[test]
    fn s2_over_trivial_subgroup() {
        let s2 = symmetric(&RationalField, 2).unwrap();
        let c = nonidentity(&s2);
        let rep = csp_check(&s2, &[], c, 8).unwrap();
        assert_eq!(rep.x_poly, "1 + t");
        let fixed: Vec<usize> = rep.rows.iter().map(|r| r.fixed_points).collect();
        assert_eq!(fixed, vec![2, 0]);
        assert!(rep.passed);
    }

    #[test]
    fn cyclic_groups_and_all_subgroups() {
        for n in 1..=8u64 {
            let k = CyclotomicField::new(n).unwrap();
            let g = cyclic_scalar(&k, n, 1).unwrap();
            let c = if n == 1 { g.identity() } else { nonidentity(&g) };
            for e in (1..=n).filter(|e| n % e == 0) {
                let rep = csp_check(&g, &[g.power(c, e as i64)], c, 2 * n as usize + 2).unwrap();
                assert!(rep.passed, "n={n} e={e}: {rep:?}");
            }
        }
    }

    #[test]
    fn non_polynomial_invariants_are_flagged() {
        let f = RationalField;
        let g = FiniteMatrixGroup::generate(&f, 2, vec![Matrix::scalar(&f, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap();
        let c = nonidentity(&g);
        let rep = csp_check(&g, &[], c, 8).unwrap();
        assert_eq!(rep.polynomiality.status, Status::NotCheckable);
        assert!(!rep.passed && rep.rows.is_empty());
    }

    #[test]
    fn modular_dims_route() {
        let f = FiniteField::prime(5).unwrap();
        let g = cyclic_scalar(&f, 4, 1).unwrap();
        let c = nonidentity(&g);
        let rep = csp_check(&g, &[g.power(c, 2)], c, 10).unwrap();
        assert_eq!(rep.route, "molien");
        assert!(rep.passed);

        let f3 = FiniteField::prime(3).unwrap();
        let s3 = symmetric(&f3, 3).unwrap();
        let t = (0..s3.order()).find(|&x| s3.element_order(x) == 2).unwrap();
        let rep = csp_check(&s3, &[], t, 9).unwrap();
        assert_eq!(rep.route, "dims");
        assert_eq!(rep.invariant_degrees, Some(vec![1, 2, 3]));
        assert_eq!(rep.x_poly, "1 + 2*t + 2*t^2 + t^3");
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn character_from_series_gf7() {
        let f = FiniteField::prime(7).unwrap();
        let g = Arc::new(FiniteMatrixGroup::generate(&f, 1, vec![Matrix::scalar(&f, 1, &f.from_int(-1))], DEFAULT_GROUP_CAP).unwrap());
        let minus = nonidentity(&g);
        for (u, expected) in [(BimoduleU::trivial(&g).unwrap(), "1"), (BimoduleU::sign(&g).unwrap(), "-1")] {
            let mut q = ModularCharacterQuery::new(g.clone(), minus, u, vec![2]);
            q.normalization = Some(vec![SparsePoly::new(&f, 1, vec![(f.one(), vec![2])]).unwrap()]);
            let rep = character_from_series(&q, 10).unwrap();
            assert_eq!(rep.direct.as_deref(), Some(expected));
            assert_eq!(rep.value_module, expected);
            assert!(rep.passed, "{rep:?}");
            assert!(rep.checklist.iter().all(|c| c.status == Status::Verified));
        }
    }

    #[test]
    fn character_from_series_trivial_group() {
        let f = RationalField;
        let g = Arc::new(FiniteMatrixGroup::generate(&f, 1, vec![], 1).unwrap());
        let q = ModularCharacterQuery::new(g.clone(), g.identity(), BimoduleU::trivial(&g).unwrap(), vec![1]);
        let rep = character_from_series(&q, 6).unwrap();
        assert_eq!(rep.x_module, "1");
        assert!(rep.passed);
        assert_eq!(rep.checklist[0].status, Status::NotCheckable);
    }

    #[test]
    fn induced_module_matches_subgroup_invariants() {
        let s2 = symmetric(&RationalField, 2).unwrap();
        let m = induced_coset_module(&s2, &[], None, 6).unwrap();
        assert_eq!(m.module.dim(), 2);
        assert!(m.dimensions_match());
        assert_eq!(m.dimension_check[3], (3, 4, 4));
        let whole = induced_coset_module(&s2, &[nonidentity(&s2)], None, 6).unwrap();
        assert_eq!(whole.module.dim(), 1);
        assert!(whole.dimensions_match());
        let s3 = symmetric(&RationalField, 3).unwrap();
        for gens in [vec![], vec![s3.generator_indices()[0]], vec![s3.generator_indices()[1]]] {
            assert!(induced_coset_module(&s3, &gens, None, 6).unwrap().dimensions_match());
        }
    }
}
