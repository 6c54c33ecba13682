//! The scenario file format. Every mathematical literal is a string.

use std::collections::BTreeMap;

use invtool_core::FieldSpec;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCENARIO_SCHEMA: &str = "invtool-scenario/1";

/// Matrix rows of field literals.
pub type MatrixLit = Vec<Vec<String>>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub field: FieldSpec,
    pub truncation: usize,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub normalizations: BTreeMap<String, NormalizationSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Generators { generators: Vec<MatrixLit> },
    Named { named: NamedGroup, n: u64, #[serde(default = "one")] dim: usize },
    /// A group from the generator data file.
    Data { data: String },
}

fn one() -> usize {
    1
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum NamedGroup {
    Symmetric,
    Dihedral,
    CyclicScalar,
}

/// Names a group element.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Matrix(MatrixLit),
    /// The `index`-th listed generator.
    Generator { generator: usize },
    /// Representative of the first conjugacy class of this order.
    Order { order: u64 },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ModuleSpec {
    pub group: String,
    #[serde(flatten)]
    pub kind: ModuleKind,
    /// Matrices of a commuting second action, one per generator.
    #[serde(default)]
    pub gamma: Vec<MatrixLit>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleKind {
    Trivial,
    Sign,
    Natural,
    /// Left regular action with the right regular action as second action.
    Regular,
    /// Functions on the group with the right regular action dropped.
    RegularLeft,
    Induced { subgroup: Vec<ElementSpec> },
    Scalar { values: Vec<String> },
    /// One matrix per group generator.
    Matrices { action: Vec<MatrixLit> },
}

/// Terms `(coefficient, exponent vector)` per polynomial.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizationSpec {
    pub polynomials: Vec<Vec<(String, Vec<u32>)>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskSpec {
    Classes {
        group: String,
        #[serde(default)]
        expect: Option<ClassExpectation>,
    },
    Invariants {
        group: String,
        #[serde(default)]
        truncation: Option<usize>,
    },
    Molien {
        group: String,
        #[serde(default)]
        truncation: Option<usize>,
    },
    Tor {
        module: String,
        /// Defaults to the full invariant ring.
        #[serde(default)]
        normalization: Option<String>,
        #[serde(default)]
        engine: Engine,
        /// Eigenvalue by which the cyclic factor scales degree one.
        #[serde(default)]
        omega: Option<String>,
        #[serde(default)]
        truncation: Option<usize>,
        #[serde(default)]
        expect: Option<TorExpectation>,
    },
    Omnibus {
        module: String,
        #[serde(default)]
        truncation: Option<usize>,
    },
    Springer {
        module: String,
        c: ElementSpec,
        normalization: String,
        #[serde(default)]
        omega: Option<String>,
        #[serde(default)]
        route: Route,
        #[serde(default)]
        truncation: Option<usize>,
    },
    AtOne {
        module: String,
        #[serde(default)]
        omega: Option<String>,
        #[serde(default)]
        expect: AtOneExpectation,
    },
    Csp {
        group: String,
        subgroup: Vec<ElementSpec>,
        c: ElementSpec,
        #[serde(default)]
        truncation: Option<usize>,
    },
    Modchar {
        module: String,
        element: ElementSpec,
        degrees: Vec<usize>,
        #[serde(default)]
        normalization: Option<String>,
        #[serde(default)]
        truncation: Option<usize>,
    },
    Hilbert {
        group: String,
        degrees: Vec<usize>,
        /// Other parameter degrees to re-express the invariant ring over.
        #[serde(default)]
        relative: Vec<RelativeSpec>,
        #[serde(default)]
        truncation: Option<usize>,
        #[serde(default)]
        expect: Option<String>,
    },
}

impl TaskSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            TaskSpec::Classes { .. } => "classes",
            TaskSpec::Invariants { .. } => "invariants",
            TaskSpec::Molien { .. } => "molien",
            TaskSpec::Tor { .. } => "tor",
            TaskSpec::Omnibus { .. } => "omnibus",
            TaskSpec::Springer { .. } => "springer",
            TaskSpec::AtOne { .. } => "at_one",
            TaskSpec::Csp { .. } => "csp",
            TaskSpec::Modchar { .. } => "modchar",
            TaskSpec::Hilbert { .. } => "hilbert",
        }
    }

    pub fn truncation(&self) -> Option<usize> {
        match self {
            TaskSpec::Invariants { truncation, .. }
            | TaskSpec::Molien { truncation, .. }
            | TaskSpec::Tor { truncation, .. }
            | TaskSpec::Omnibus { truncation, .. }
            | TaskSpec::Springer { truncation, .. }
            | TaskSpec::Csp { truncation, .. }
            | TaskSpec::Modchar { truncation, .. }
            | TaskSpec::Hilbert { truncation, .. } => *truncation,
            TaskSpec::Classes { .. } | TaskSpec::AtOne { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ClassExpectation {
    pub order: usize,
    /// `(size, element order)` pairs in any order.
    pub classes: Vec<(usize, u64)>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TorExpectation {
    /// Expected nonzero `(i, j, dim)` entries.
    pub betti: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RelativeSpec {
    pub degrees: Vec<usize>,
    /// Evaluation point, a root of unity in `Q(zeta_m)` syntax, e.g. `"-1"`.
    #[serde(default)]
    pub at: Option<String>,
    #[serde(default)]
    pub conductor: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    #[default]
    Syzygy,
    Koszul,
    Both,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    #[default]
    Polynomial,
    Fiber,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum AtOneExpectation {
    /// Every class has a finite value.
    #[default]
    Regular,
    /// Some class has a pole; the check is an expected failure of regularity.
    Pole,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if s.schema != SCENARIO_SCHEMA {
            return Err(CliError::Schema(format!("expected schema \"{SCENARIO_SCHEMA}\", found \"{}\"", s.schema)));
        }
        s.check_references()?;
        Ok(s)
    }

    /// Every name a task or module mentions must be declared.
    fn check_references(&self) -> Result<(), CliError> {
        let need = |kind: &str, name: &str, present: bool, ctx: String| {
            if present {
                Ok(())
            } else {
                Err(CliError::Precondition(format!("{ctx}: {kind} '{name}' is not declared in the \"{kind}s\" block")))
            }
        };
        for (name, m) in &self.modules {
            need("group", &m.group, self.groups.contains_key(&m.group), format!("module '{name}'"))?;
        }
        for (i, t) in self.tasks.iter().enumerate() {
            let ctx = format!("task {} ({})", i + 1, t.kind());
            match t {
                TaskSpec::Classes { group, .. }
                | TaskSpec::Invariants { group, .. }
                | TaskSpec::Molien { group, .. }
                | TaskSpec::Csp { group, .. }
                | TaskSpec::Hilbert { group, .. } => need("group", group, self.groups.contains_key(group), ctx)?,
                TaskSpec::Tor { module, normalization, .. } | TaskSpec::Modchar { module, normalization, .. } => {
                    need("module", module, self.modules.contains_key(module), ctx.clone())?;
                    if let Some(n) = normalization {
                        need("normalization", n, self.normalizations.contains_key(n), ctx)?;
                    }
                }
                TaskSpec::Springer { module, normalization, .. } => {
                    need("module", module, self.modules.contains_key(module), ctx.clone())?;
                    need("normalization", normalization, self.normalizations.contains_key(normalization), ctx)?;
                }
                TaskSpec::Omnibus { module, .. } | TaskSpec::AtOne { module, .. } => {
                    need("module", module, self.modules.contains_key(module), ctx)?
                }
            }
        }
        Ok(())
    }

    /// Whether any group is read from the generator data file.
    pub fn uses_data_file(&self) -> bool {
        self.groups.values().any(|g| matches!(g, GroupSpec::Data { .. }))
    }
}
