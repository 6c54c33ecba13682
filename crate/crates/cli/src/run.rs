//! Executes the tasks of a scenario.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use invtool_core::csp::{character_from_series, csp_check, relative_to_degrees, ModularCharacterQuery};
use invtool_core::groth::{
    betti_entries, format_value, polynomial_hilbert, tor_series_at_one, verify_omnibus, verify_springer, BettiEntry,
    HypothesisCheck, SpringerRoute, Status, Theta,
};
use invtool_core::groups::named::{cyclic_scalar, dihedral, symmetric};
use invtool_core::groups::{FiniteMatrixGroup, DEFAULT_GROUP_CAP};
use invtool_core::homology::{euler_character_series, koszul_tor, truncated_minimal_resolution, GradedAlgebraR, TorTable};
use invtool_core::polyaction::{
    invariants_in_tower, invariants_up_to, relative_invariants_up_to, BimoduleU, SparsePoly, DEFAULT_FIBER_CAP,
};
use invtool_core::series::{
    evaluate, fit_denominator, molien_trivial, to_cyclotomic, RationalFunction, RationalFunctionT, TruncatedSeries,
};
use invtool_core::{
    CharacterField, CyclotomicField, CyclotomicNumber, Error, FieldSpec, FiniteField, Matrix, RationalField,
};
use serde::Serialize;

use crate::data::{self, GroupData};
use crate::error::CliError;
use crate::report::{Report, Table, TaskReport, Verdict};
use crate::scenario::{
    AtOneExpectation, ElementSpec, Engine, GroupSpec, MatrixLit, ModuleKind, NamedGroup, Route, Scenario, TaskSpec,
};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Overrides every truncation in the scenario.
    pub truncation: Option<usize>,
    /// Record wall-clock times; makes reports nondeterministic.
    pub timing: bool,
    pub data_path: PathBuf,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { truncation: None, timing: false, data_path: data::data_path() }
    }
}

/// Runs every task in order. Errors inside a task become verdicts; only problems with
/// the scenario as a whole are returned as `Err`.
pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    let data = if s.uses_data_file() { data::load(&opts.data_path)? } else { None };
    let report = match &s.field {
        FieldSpec::Rational => Runner::new(RationalField, s, opts, data)?.run(),
        FieldSpec::Cyclotomic { conductor } => Runner::new(CyclotomicField::new(*conductor)?, s, opts, data)?.run(),
        FieldSpec::Finite { p, modulus } => {
            Runner::new(FiniteField::from_modulus_str(*p, modulus)?, s, opts, data)?.run()
        }
    };
    Ok(report)
}

struct Runner<'a, F: CharacterField> {
    field: F,
    scenario: &'a Scenario,
    opts: &'a RunOptions,
    groups: BTreeMap<String, Result<Arc<FiniteMatrixGroup<F>>, String>>,
    notes: Vec<String>,
    /// Per-degree dimensions already computed, keyed by `group:NAME` or `module:NAME`.
    dims: RefCell<BTreeMap<String, Vec<usize>>>,
}

/// Outcome of one task body.
enum Outcome {
    Done,
    Skip(String),
}

type TaskResult = Result<Outcome, CliError>;

fn parse_matrix<F: CharacterField>(field: &F, m: &MatrixLit) -> Result<Matrix<F>, CliError> {
    Ok(Matrix::parse(field, m)?)
}

fn json<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).unwrap_or(serde_json::Value::Null)
}

fn betti_table(entries: &[BettiEntry], labels: &[String]) -> Table {
    let mut cols = vec!["i", "j", "dim"];
    let chars = entries.iter().any(|e| e.character.is_some());
    if chars {
        cols.extend(labels.iter().map(String::as_str));
    }
    let mut t = Table::new("betti", &cols);
    for e in entries {
        let mut row = vec![e.i.to_string(), e.j.to_string(), e.dim.to_string()];
        if let Some(c) = &e.character {
            row.extend(c.iter().cloned());
        }
        t.push(row);
    }
    t
}

fn hypothesis_table(checks: &[HypothesisCheck]) -> Table {
    let mut t = Table::new("hypotheses", &["name", "status", "detail"]);
    for h in checks {
        let status = match h.status {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::NotCheckable => "not checkable",
        };
        t.push(vec![h.name.clone(), status.into(), h.detail.clone()]);
    }
    t
}

impl<'a, F: CharacterField> Runner<'a, F> {
    fn new(field: F, scenario: &'a Scenario, opts: &'a RunOptions, data: Option<GroupData>) -> Result<Self, CliError> {
        let mut notes = Vec::new();
        if scenario.uses_data_file() && data.is_none() {
            notes.push(format!(
                "generator data file not found at {}; tasks on its groups are skipped (set {})",
                opts.data_path.display(),
                data::DATA_ENV
            ));
        }
        if let Some(d) = &data {
            if normalized_spec(&d.field)? != field.spec() {
                return Err(CliError::Data(format!(
                    "the data file is over {:?}, the scenario over {}",
                    d.field,
                    field.label()
                )));
            }
        }
        let mut groups = BTreeMap::new();
        for (name, spec) in &scenario.groups {
            let g = match spec {
                GroupSpec::Generators { generators } => {
                    let gens = generators.iter().map(|m| parse_matrix(&field, m)).collect::<Result<Vec<_>, _>>()?;
                    let dim = gens.first().map_or(1, Matrix::rows);
                    Ok(FiniteMatrixGroup::generate(&field, dim, gens, DEFAULT_GROUP_CAP)?)
                }
                GroupSpec::Named { named, n, dim } => Ok(match named {
                    NamedGroup::Symmetric => symmetric(&field, *n as usize)?,
                    NamedGroup::Dihedral => dihedral(&field, *n)?,
                    NamedGroup::CyclicScalar => cyclic_scalar(&field, *n, *dim)?,
                }),
                GroupSpec::Data { data: key } => match &data {
                    None => Err("generator data file absent".to_string()),
                    Some(d) => {
                        let entry = d
                            .groups
                            .get(key)
                            .ok_or_else(|| CliError::Data(format!("no group '{key}' in the data file")))?;
                        let gens =
                            entry.generators.iter().map(|m| parse_matrix(&field, m)).collect::<Result<Vec<_>, _>>()?;
                        let dim = gens.first().map_or(1, Matrix::rows);
                        let g = FiniteMatrixGroup::generate(&field, dim, gens, DEFAULT_GROUP_CAP)?;
                        if g.order() != entry.order {
                            return Err(CliError::Data(format!(
                                "group '{key}' generates {} elements, the file says {}",
                                g.order(),
                                entry.order
                            )));
                        }
                        Ok(g)
                    }
                },
            };
            groups.insert(name.clone(), g.map(Arc::new));
        }
        Ok(Runner { field, scenario, opts, groups, notes, dims: RefCell::default() })
    }

    fn run(mut self) -> Report {
        let s = self.scenario;
        let top = self.opts.truncation.unwrap_or(s.truncation);
        let mut report = Report::new(&s.name, &s.description, &self.field.label(), top);
        report.notes.append(&mut self.notes);
        for (i, task) in s.tasks.iter().enumerate() {
            let d = self.opts.truncation.or(task.truncation()).unwrap_or(s.truncation);
            let mut tr = TaskReport::new(i + 1, task.kind(), &target_of(task), None);
            let start = Instant::now();
            match self.run_task(task, d, &mut tr) {
                Ok(Outcome::Done) => {}
                Ok(Outcome::Skip(why)) => {
                    tr.verdict = Verdict::Skipped;
                    tr.message = Some(why);
                }
                Err(CliError::Core(Error::HypothesisFailure(why))) => {
                    tr.verdict = Verdict::HypothesisFailure;
                    tr.message = Some(why);
                }
                Err(e) => {
                    tr.verdict = Verdict::Error;
                    tr.message = Some(e.to_string());
                }
            }
            if self.opts.timing {
                tr.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            report.tasks.push(tr);
        }
        report.finish();
        report
    }

    fn group(&self, name: &str) -> Result<Result<Arc<FiniteMatrixGroup<F>>, String>, CliError> {
        self.groups
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Precondition(format!("group '{name}' is not declared")))
    }

    fn element(&self, g: &FiniteMatrixGroup<F>, e: &ElementSpec) -> Result<usize, CliError> {
        match e {
            ElementSpec::Matrix(m) => {
                let m = parse_matrix(&self.field, m)?;
                g.index_of(&m).ok_or_else(|| CliError::Precondition(format!("matrix {m:?} is not in the group")))
            }
            ElementSpec::Generator { generator } => g
                .generator_indices()
                .get(*generator)
                .copied()
                .ok_or_else(|| CliError::Precondition(format!("the group has no generator {generator}"))),
            ElementSpec::Order { order } => g
                .conjugacy_classes(self.field.characteristic())
                .classes
                .iter()
                .find(|c| g.element_order(c.representative) == *order)
                .map(|c| c.representative)
                .ok_or_else(|| CliError::Precondition(format!("no element of order {order}"))),
        }
    }

    /// The module and its group, or a skip reason when the group is unavailable.
    fn module(&self, name: &str) -> Result<Result<(BimoduleU<F>, Arc<FiniteMatrixGroup<F>>), String>, CliError> {
        let spec = &self.scenario.modules[name];
        let g = match self.group(&spec.group)? {
            Ok(g) => g,
            Err(why) => return Ok(Err(why)),
        };
        let mut u = match &spec.kind {
            ModuleKind::Trivial => BimoduleU::trivial(&g)?,
            ModuleKind::Sign => BimoduleU::sign(&g)?,
            ModuleKind::Natural => BimoduleU::natural(&g)?,
            ModuleKind::Regular => BimoduleU::regular(&g)?,
            ModuleKind::RegularLeft => {
                let reg = BimoduleU::regular(&g)?;
                BimoduleU::new(name, &g, reg.dim(), reg.g_action().to_vec(), Vec::new())?
            }
            ModuleKind::Induced { subgroup } => {
                let gens = subgroup.iter().map(|e| self.element(&g, e)).collect::<Result<Vec<_>, _>>()?;
                BimoduleU::induced(&g, &gens)?.0
            }
            ModuleKind::Scalar { values } => {
                let vals = values.iter().map(|v| self.field.parse(v)).collect::<Result<Vec<_>, _>>()?;
                BimoduleU::scalar(name, &g, &vals)?
            }
            ModuleKind::Matrices { action } => {
                let mats = action.iter().map(|m| parse_matrix(&self.field, m)).collect::<Result<Vec<_>, _>>()?;
                let dim = mats.first().map_or(1, Matrix::rows);
                BimoduleU::new(name, &g, dim, mats, Vec::new())?
            }
        };
        if !spec.gamma.is_empty() {
            let mats = spec.gamma.iter().map(|m| parse_matrix(&self.field, m)).collect::<Result<Vec<_>, _>>()?;
            u = u.with_gamma(&g, mats)?;
        }
        Ok(Ok((u, g)))
    }

    /// Cached `dims` of whatever `key` names, recomputed when the cache is too short.
    fn cached_dims(&self, key: String, d: usize, compute: impl FnOnce() -> Result<Vec<usize>, CliError>) -> Result<Vec<usize>, CliError> {
        if let Some(v) = self.dims.borrow().get(&key).filter(|v| v.len() > d) {
            return Ok(v[..=d].to_vec());
        }
        let v = compute()?;
        self.dims.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn invariant_dims(&self, name: &str, g: &FiniteMatrixGroup<F>, d: usize) -> Result<Vec<usize>, CliError> {
        self.cached_dims(format!("group:{name}"), d, || Ok(invariants_up_to(g, d)?.dims()))
    }

    fn normalization(&self, name: &str) -> Result<Vec<SparsePoly<F>>, CliError> {
        let spec = &self.scenario.normalizations[name];
        spec.polynomials
            .iter()
            .map(|terms| {
                let nvars = terms.first().map_or(0, |(_, e)| e.len());
                Ok(SparsePoly::parse(&self.field, nvars, terms)?)
            })
            .collect()
    }

    fn theta(&self, u: &BimoduleU<F>, omega: &Option<String>) -> Result<Theta<F>, CliError> {
        Ok(match omega {
            Some(w) => Theta::new(u.gamma().clone(), Some(self.field.parse(w)?))?,
            None => Theta::gamma_only(u.gamma().clone())?,
        })
    }

    fn run_task(&self, task: &TaskSpec, d: usize, tr: &mut TaskReport) -> TaskResult {
        match task {
            TaskSpec::Classes { group, expect } => {
                let g = match self.group(group)? {
                    Ok(g) => g,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                let p = self.field.characteristic();
                let table = g.conjugacy_classes(p);
                tr.fact("order", g.order());
                tr.fact("classes", table.len());
                let mut t = Table::new("classes", &["class", "size", "order", "p_regular"]);
                for (i, c) in table.classes.iter().enumerate() {
                    t.push(vec![i.to_string(), c.size().to_string(), g.element_order(c.representative).to_string(), c.p_regular.to_string()]);
                }
                tr.tables.push(t);
                if let Some(e) = expect {
                    let mut got: Vec<(usize, u64)> = table.sizes().into_iter().zip(table.orders()).collect();
                    let mut want = e.classes.clone();
                    got.sort_unstable();
                    want.sort_unstable();
                    tr.verdict = Verdict::from_bool(g.order() == e.order && (want.is_empty() || got == want));
                }
                Ok(Outcome::Done)
            }
            TaskSpec::Invariants { group, .. } => {
                let g = match self.group(group)? {
                    Ok(g) => g,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                let dims = self.invariant_dims(group, &g, d)?;
                tr.fact("dims", format!("{dims:?}"));
                let mut t = Table::new("invariants", &["degree", "dim"]);
                for (k, n) in dims.iter().enumerate() {
                    t.push(vec![k.to_string(), n.to_string()]);
                }
                tr.tables.push(t);
                tr.details = json(&dims);
                Ok(Outcome::Done)
            }
            TaskSpec::Molien { group, .. } => {
                let g = match self.group(group)? {
                    Ok(g) => g,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                let p = self.field.characteristic();
                if p != 0 && (g.order() as u64).is_multiple_of(p) {
                    return Err(Error::HypothesisFailure(format!("Molien's formula needs |G| = {} invertible", g.order())).into());
                }
                let f = molien_trivial(&g)?;
                let e = f.expand(d)?;
                let dims = self.invariant_dims(group, &g, d)?;
                tr.fact("closed_form", f.format("t"));
                let mut t = Table::new("coefficients", &["degree", "molien", "kernel"]);
                let mut ok = true;
                for (k, n) in dims.iter().enumerate() {
                    let c = e.coeff(k);
                    ok &= c.as_rational() == Some(invtool_core::numbers::rat(*n as i64));
                    t.push(vec![k.to_string(), format_value(c), n.to_string()]);
                }
                tr.tables.push(t);
                tr.verdict = Verdict::from_bool(ok);
                Ok(Outcome::Done)
            }
            TaskSpec::Tor { module, normalization, engine, omega, expect, .. } => {
                let (u, g) = match self.module(module)? {
                    Ok(x) => x,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                self.tor_task(&u, &g, normalization.as_deref(), *engine, omega, expect.as_ref(), d, tr)
            }
            TaskSpec::Omnibus { module, .. } => {
                let (u, g) = match self.module(module)? {
                    Ok(x) => x,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                let rep = verify_omnibus(&u, &g, d)?;
                tr.fingerprint = Some(rep.fingerprint.clone());
                tr.fact("hd", rep.hd.format());
                tr.fact("module_class", rep.module_class.join(", "));
                if let Some(c) = &rep.generators_class {
                    tr.fact("generators_class", c.join(", "));
                }
                tr.fact("part_i", rep.part_i_holds);
                tr.fact("free", rep.free);
                tr.fact("consistent", rep.consistent);
                if let Some(m) = rep.series_matches_tor {
                    tr.fact("series_matches_tor", m);
                }
                if let Some(h) = rep.at_one_holds {
                    tr.fact("at_one_holds", h);
                }
                tr.tables.push(betti_table(&rep.betti, &rep.class_labels));
                let mut ps = Table::new("partial_sums", &["m", "dim", "relation", "holds", "equality", "method"]);
                for s in &rep.partial_sums {
                    ps.push(vec![
                        s.m.to_string(),
                        s.dimension.to_string(),
                        s.relation.clone(),
                        s.holds.to_string(),
                        s.equality.to_string(),
                        s.method.clone(),
                    ]);
                }
                tr.tables.push(ps);
                if let Some(at) = &rep.at_one {
                    tr.tables.push(at_one_table(at));
                }
                tr.notes.extend(rep.notes.iter().cloned());
                tr.verdict = Verdict::from_bool(rep.passed);
                tr.details = json(&rep);
                Ok(Outcome::Done)
            }
            TaskSpec::Springer { module, c, normalization, omega, route, .. } => {
                let (u, g) = match self.module(module)? {
                    Ok(x) => x,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                let c = self.element(&g, c)?;
                let omega = omega.as_deref().map(|w| self.field.parse(w)).transpose()?;
                let polys = self.normalization(normalization)?;
                let route = match route {
                    Route::Polynomial => SpringerRoute::Polynomial,
                    Route::Fiber => SpringerRoute::Fiber { cap: DEFAULT_FIBER_CAP },
                };
                let rep = verify_springer(&u, &g, c, omega, &polys, d, route)?;
                tr.fingerprint = Some(rep.fingerprint.clone());
                tr.fact("route", &rep.route);
                if let Some(w) = &rep.omega {
                    tr.fact("omega", w);
                }
                if let Some(v) = &rep.regular_vector {
                    tr.fact("regular_vector", v.join(", "));
                }
                tr.fact("hd", rep.hd.format());
                tr.tables.push(betti_table(&rep.betti, &rep.class_labels));
                let mut t = Table::new("identity", &["class", "tor_side", "other_side", "agree"]);
                for (i, l) in rep.class_labels.iter().enumerate() {
                    t.push(vec![l.clone(), rep.lhs[i].clone(), rep.rhs[i].clone(), rep.agree[i].to_string()]);
                }
                tr.tables.push(t);
                tr.tables.push(hypothesis_table(&rep.hypotheses));
                tr.verdict = Verdict::from_bool(rep.passed);
                tr.details = json(&rep);
                Ok(Outcome::Done)
            }
            TaskSpec::AtOne { module, omega, expect } => {
                let (u, g) = match self.module(module)? {
                    Ok(x) => x,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                let p = self.field.characteristic();
                if p != 0 && (g.order() as u64).is_multiple_of(p) {
                    return Err(Error::HypothesisFailure("closed forms need |G| invertible".into()).into());
                }
                let theta = self.theta(&u, omega)?;
                tr.fingerprint = Some(theta.ctx().fingerprint());
                let vals = tor_series_at_one(&u, &g, &theta, &molien_trivial(&g)?)?;
                tr.tables.push(at_one_table(&vals));
                let poles: Vec<&str> = vals.iter().filter(|v| v.value.is_none()).map(|v| v.class.as_str()).collect();
                tr.fact("classes_with_pole", if poles.is_empty() { "none".to_string() } else { poles.join(", ") });
                tr.verdict = match (expect, poles.is_empty()) {
                    (AtOneExpectation::Regular, true) => Verdict::Pass,
                    (AtOneExpectation::Regular, false) => Verdict::Fail,
                    (AtOneExpectation::Pole, false) => {
                        tr.notes.push("t = 1 is not a regular value on the listed classes, as predicted".into());
                        Verdict::ExpectedFailure
                    }
                    (AtOneExpectation::Pole, true) => Verdict::Fail,
                };
                tr.details = json(&vals);
                Ok(Outcome::Done)
            }
            TaskSpec::Csp { group, subgroup, c, .. } => {
                let g = match self.group(group)? {
                    Ok(g) => g,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                let h = subgroup.iter().map(|e| self.element(&g, e)).collect::<Result<Vec<_>, _>>()?;
                let c = self.element(&g, c)?;
                let rep = csp_check(&g, &h, c, d)?;
                tr.fingerprint = Some(rep.fingerprint.clone());
                tr.fact("cosets", rep.cosets);
                tr.fact("omega", &rep.omega);
                tr.fact("route", &rep.route);
                tr.fact("polynomiality", format!("{:?}: {}", rep.polynomiality.status, rep.polynomiality.detail));
                if rep.polynomiality.status != Status::Verified {
                    return Err(Error::HypothesisFailure(rep.polynomiality.detail).into());
                }
                tr.fact("X(t)", &rep.x_poly);
                tr.fact("coefficients_ok", rep.coefficients_ok);
                tr.fact("orbits", rep.orbits);
                tr.fact("burnside", rep.burnside_holds);
                let mut t = Table::new("csp", &["j", "ord(c^j)", "root order", "fixed points", "X(omega^j)", "verdict"]);
                for r in &rep.rows {
                    t.push(vec![
                        r.j.to_string(),
                        r.element_order.to_string(),
                        r.root_order.to_string(),
                        r.fixed_points.to_string(),
                        r.value.clone(),
                        if r.pass { "pass" } else { "fail" }.into(),
                    ]);
                }
                tr.tables.push(t);
                tr.verdict = Verdict::from_bool(rep.passed);
                tr.details = json(&rep);
                Ok(Outcome::Done)
            }
            TaskSpec::Modchar { module, element, degrees, normalization, .. } => {
                let (u, g) = match self.module(module)? {
                    Ok(x) => x,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                let e = self.element(&g, element)?;
                let mut q = ModularCharacterQuery::new(g.clone(), e, u, degrees.clone());
                if let Some(n) = normalization {
                    q.normalization = Some(self.normalization(n)?);
                }
                let group_name = &self.scenario.modules[module].group;
                q.invariant_dims = Some(self.invariant_dims(group_name, &g, d)?);
                q.module_dims = Some(self.cached_dims(format!("module:{module}"), d, || {
                    Ok(relative_invariants_up_to(&q.module, &g, d)?.dims())
                })?);
                let rep = character_from_series(&q, d)?;
                tr.fingerprint = Some(rep.fingerprint.clone());
                tr.fact("element_order", rep.element_order);
                tr.fact("omega", &rep.omega);
                tr.fact("omega_hat", &rep.omega_hat);
                tr.fact("parameter_degrees", format!("{:?}", rep.normalization_degrees));
                let mut t = Table::new("series", &["series", "closed form", "value at omega_hat"]);
                t.push(vec!["X_{M,R}".into(), rep.x_module.clone(), rep.value_module.clone()]);
                t.push(vec!["X_{k[V]^G,R}".into(), rep.x_invariants.clone(), rep.value_invariants.clone()]);
                t.push(vec![
                    "X_{M,k[V]^G}".into(),
                    rep.x_relative.clone(),
                    rep.value_relative.clone().unwrap_or_else(|| "pole".into()),
                ]);
                tr.tables.push(t);
                tr.fact("brauer_character", rep.direct.clone().unwrap_or_default());
                tr.tables.push(hypothesis_table(&rep.checklist));
                tr.verdict = if rep.agrees != Some(true) {
                    Verdict::Fail
                } else if rep.checklist.iter().any(|c| c.status == Status::Failed) {
                    Verdict::HypothesisFailure
                } else {
                    Verdict::Pass
                };
                tr.details = json(&rep);
                Ok(Outcome::Done)
            }
            TaskSpec::Hilbert { group, degrees, relative, expect, .. } => {
                let g = match self.group(group)? {
                    Ok(g) => g,
                    Err(why) => return Ok(Outcome::Skip(why)),
                };
                tr.truncation = Some(d);
                let dims = self.invariant_dims(group, &g, d)?;
                let fit = fit_denominator(&TruncatedSeries::from_dims(&RationalField, &dims), degrees)?;
                let numerator = to_cyclotomic(&RationalFunction::from_poly(fit.numerator.clone()));
                tr.fact("dims", format!("{dims:?}"));
                tr.fact("hilbert_series", fit.format("t"));
                tr.fact("numerator", numerator.format("t"));
                let mut ok = expect.as_ref().is_none_or(|e| *e == numerator.format("t"));
                let mut t = Table::new("relative", &["parameter degrees", "X(t)", "point", "value"]);
                t.push(vec![format!("{degrees:?}"), numerator.format("t"), String::new(), String::new()]);
                for r in relative {
                    let x = to_cyclotomic(&relative_to_degrees(&fit, &r.degrees)?);
                    let (point, value) = match &r.at {
                        Some(at) => {
                            let pt = CyclotomicNumber::parse(r.conductor.unwrap_or(1), at)?;
                            (at.clone(), eval_or_pole(&x, &pt))
                        }
                        None => (String::new(), String::new()),
                    };
                    ok &= x.is_polynomial();
                    t.push(vec![format!("{:?}", r.degrees), x.format("t"), point, value]);
                }
                tr.tables.push(t);
                tr.verdict = Verdict::from_bool(ok);
                Ok(Outcome::Done)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn tor_task(
        &self,
        u: &BimoduleU<F>,
        g: &FiniteMatrixGroup<F>,
        normalization: Option<&str>,
        engine: Engine,
        omega: &Option<String>,
        expect: Option<&crate::scenario::TorExpectation>,
        d: usize,
        tr: &mut TaskReport,
    ) -> TaskResult {
        let m = relative_invariants_up_to(u, g, d)?;
        let (r, r_hilbert) = match normalization {
            Some(n) => {
                let polys = self.normalization(n)?;
                let r = GradedAlgebraR::polynomial_from_sparse(&self.field, m.tower(), &polys)?;
                let degs = r.degrees().unwrap_or_default();
                (r, Some(polynomial_hilbert(&degs)))
            }
            None => {
                let r = GradedAlgebraR::from_subspace(invariants_in_tower(g, m.tower())?)?;
                let p = self.field.characteristic();
                let nonmodular = p == 0 || !(g.order() as u64).is_multiple_of(p);
                (r, if nonmodular { Some(molien_trivial(g)?) } else { None })
            }
        };
        let theta = self.theta(u, omega)?;
        tr.fingerprint = Some(theta.ctx().fingerprint());
        let syz = matches!(engine, Engine::Syzygy | Engine::Both)
            .then(|| truncated_minimal_resolution(&m, &r, Some(&theta)))
            .transpose()?;
        let kos = matches!(engine, Engine::Koszul | Engine::Both).then(|| koszul_tor(&m, &r, Some(&theta))).transpose()?;
        let mut ok = true;
        if let Some(res) = &syz {
            let exact = res.is_complex() && res.is_exact() && res.is_minimal();
            tr.fact("resolution_exact_and_minimal", exact);
            ok &= exact;
        }
        if let (Some(a), Some(b)) = (&syz, &kos) {
            let agree = a.tor.dims == b.dims && a.tor.characters == b.characters;
            tr.fact("engines_agree", agree);
            ok &= agree;
        }
        let tor: &TorTable = syz.as_ref().map(|r| &r.tor).or(kos.as_ref()).expect("an engine ran");
        tr.fact("hd", tor.hd.format());
        tr.tables.push(betti_table(&betti_entries(tor), &tor.class_labels));

        // Σ (-1)^i [Tor_i](t) against [M](t)/[R](t), classwise when characters exist.
        let series_ok = match tor.euler_characters() {
            Some(chars) => {
                let series = euler_character_series(&m, &r, &theta)?;
                series.iter().enumerate().all(|(c, s)| (0..=tor.truncation).all(|j| (s.coeff(j) - &chars[j][c]).is_zero()))
            }
            None => {
                let ms = TruncatedSeries::from_dims(&RationalField, &m.dims());
                let rs = TruncatedSeries::from_dims(&RationalField, &r.dims());
                let q = ms.div(&rs)?;
                let e = tor.euler_dims();
                (0..=tor.truncation).all(|j| q.coeff(j) == &invtool_core::numbers::rat(e[j]))
            }
        };
        tr.fact("series_identity", series_ok);
        ok &= series_ok;

        let mut euler = Table::new("euler_series", &["degree", "alternating sum"]);
        for (j, v) in tor.euler_dims().iter().enumerate() {
            euler.push(vec![j.to_string(), v.to_string()]);
        }
        tr.tables.push(euler);

        if let Some(rh) = r_hilbert {
            let vals = tor_series_at_one(u, g, &theta, &rh)?;
            // Each closed form must expand to the alternating Tor series of its class.
            if let Some(chars) = tor.euler_characters() {
                let forms = closed_forms(u, g, &theta, &rh)?;
                for (c, v) in vals.iter().enumerate() {
                    let e = forms[c].expand(tor.truncation)?;
                    let agree = (0..=tor.truncation).all(|j| (e.coeff(j) - &chars[j][c]).is_zero());
                    if !agree {
                        tr.notes.push(format!("closed form of class {} disagrees with the Tor series", v.class));
                        ok = false;
                    }
                }
            }
            tr.tables.push(at_one_table(&vals));
        }
        if let Some(e) = expect {
            let got: Vec<(usize, usize, usize)> = tor.dims.iter().map(|(&(i, j), &n)| (i, j, n)).collect();
            let mut want = e.betti.clone();
            want.sort_unstable();
            let matches = got == want;
            tr.fact("betti_as_expected", matches);
            ok &= matches;
        }
        tr.verdict = Verdict::from_bool(ok);
        tr.details = json(&betti_entries(tor));
        Ok(Outcome::Done)
    }
}

/// The field description a field reports about itself, so that equal fields compare equal however
/// their modulus was written.
fn normalized_spec(spec: &FieldSpec) -> Result<FieldSpec, CliError> {
    Ok(match spec {
        FieldSpec::Finite { p, modulus } => invtool_core::Field::spec(&FiniteField::from_modulus_str(*p, modulus)?),
        other => other.clone(),
    })
}

fn closed_forms<F: CharacterField>(
    u: &BimoduleU<F>,
    g: &FiniteMatrixGroup<F>,
    theta: &Theta<F>,
    r_hilbert: &RationalFunctionT,
) -> Result<Vec<RationalFunctionT>, CliError> {
    let m = invtool_core::groth::equivariant_molien(u, g, theta, false)?;
    let r = invtool_core::groth::scalar_closed_forms(r_hilbert, theta)?;
    Ok(m.iter().zip(&r).map(|(a, b)| invtool_core::groth::quotient(a, b)).collect::<Result<Vec<_>, _>>()?)
}

fn eval_or_pole(x: &RationalFunctionT, pt: &CyclotomicNumber) -> String {
    match evaluate(x, pt) {
        Ok(v) => format_value(&v),
        Err(_) => "pole".into(),
    }
}

fn at_one_table(vals: &[invtool_core::groth::ValueAtOne]) -> Table {
    let mut t = Table::new("at_one", &["class", "closed form", "value at 1", "pole order"]);
    for v in vals {
        t.push(vec![
            v.class.clone(),
            v.closed_form.clone(),
            v.value.clone().unwrap_or_else(|| "pole".into()),
            v.pole_order.to_string(),
        ]);
    }
    t
}

fn target_of(t: &TaskSpec) -> String {
    match t {
        TaskSpec::Classes { group, .. }
        | TaskSpec::Invariants { group, .. }
        | TaskSpec::Molien { group, .. }
        | TaskSpec::Csp { group, .. }
        | TaskSpec::Hilbert { group, .. } => group.clone(),
        TaskSpec::Tor { module, .. }
        | TaskSpec::Omnibus { module, .. }
        | TaskSpec::Springer { module, .. }
        | TaskSpec::AtOne { module, .. }
        | TaskSpec::Modchar { module, .. } => module.clone(),
    }
}

