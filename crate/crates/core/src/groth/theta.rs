use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{ConjugacyClassTable, FiniteMatrixGroup};
use crate::linalg::Matrix;
use crate::numbers::{CharacterField, CyclotomicNumber, LiftContext};

/// Longest root-of-unity order searched when measuring the grading scalar.
const MAX_ROOT_ORDER: u64 = 1 << 20;

/// One conjugacy class of `Θ = Γ × C`, where `C = ⟨c⟩` is cyclic and acts on degree `d`
/// by `ω^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaClass {
    pub gamma_class: usize,
    pub gamma_rep: usize,
    pub c_power: u64,
    pub size: usize,
    pub order: u64,
}

impl ThetaClass {
    pub fn label(&self) -> String {
        match (self.gamma_class, self.c_power) {
            (0, 0) => "1".into(),
            (g, 0) => format!("g{g}"),
            (0, a) => format!("c^{a}"),
            (g, a) => format!("g{g}*c^{a}"),
        }
    }
}

/// The acting group `Θ = Γ × C`, with `Γ` acting on the module factor and `C` acting by
/// scalars on the grading. Only p-regular classes are listed.
#[derive(Clone, Debug)]
pub struct Theta<F: CharacterField> {
    gamma: Arc<FiniteMatrixGroup<F>>,
    gamma_classes: ConjugacyClassTable,
    omega: F::Elem,
    c_order: u64,
    omega_hat: CyclotomicNumber,
    ctx: LiftContext,
    conductor: u64,
    classes: Vec<ThetaClass>,
}

/// Multiplicative order of a root of unity in `field`.
pub fn root_order<F: CharacterField>(field: &F, x: &F::Elem) -> Result<u64> {
    if field.is_zero(x) {
        return Err(Error::NotARootOfUnity);
    }
    let mut y = x.clone();
    for k in 1..=MAX_ROOT_ORDER {
        if field.is_one(&y) {
            return Ok(k);
        }
        y = field.mul(&y, x);
    }
    Err(Error::NotARootOfUnity)
}

impl<F: CharacterField> Theta<F> {
    /// `Θ = Γ × ⟨c⟩` with `c` scaling degree `d` by `omega^d`; `omega = None` drops `C`.
    pub fn new(gamma: Arc<FiniteMatrixGroup<F>>, omega: Option<F::Elem>) -> Result<Self> {
        let field = gamma.field().clone();
        let omega = omega.unwrap_or_else(|| field.one());
        let c_order = root_order(&field, &omega)?;
        let ctx = gamma.lift_context(c_order)?;
        let omega_hat = field.lift_root(&ctx, &omega)?;
        let conductor = num_integer::lcm(ctx.conductor(), omega_hat.conductor());
        let gamma_classes = gamma.conjugacy_classes(field.characteristic());
        let mut classes = Vec::new();
        for (gi, gc) in gamma_classes.regular_classes() {
            for a in 0..c_order {
                let c_ord = c_order / num_integer::gcd(c_order, a);
                classes.push(ThetaClass {
                    gamma_class: gi,
                    gamma_rep: gc.representative,
                    c_power: a,
                    size: gc.size(),
                    order: num_integer::lcm(gc.order, c_ord),
                });
            }
        }
        Ok(Theta { gamma, gamma_classes, omega, c_order, omega_hat, ctx, conductor, classes })
    }

    /// `Θ = Γ`.
    pub fn gamma_only(gamma: Arc<FiniteMatrixGroup<F>>) -> Result<Self> {
        Self::new(gamma, None)
    }

    /// The trivial group acting on a `dim`-dimensional module factor.
    pub fn trivial(field: &F, dim: usize) -> Result<Self> {
        Self::new(Arc::new(FiniteMatrixGroup::generate(field, dim, Vec::new(), 1)?), None)
    }

    pub fn gamma(&self) -> &Arc<FiniteMatrixGroup<F>> {
        &self.gamma
    }

    pub fn gamma_classes(&self) -> &ConjugacyClassTable {
        &self.gamma_classes
    }

    pub fn omega(&self) -> &F::Elem {
        &self.omega
    }

    pub fn c_order(&self) -> u64 {
        self.c_order
    }

    pub fn omega_hat(&self) -> &CyclotomicNumber {
        &self.omega_hat
    }

    pub fn ctx(&self) -> &LiftContext {
        &self.ctx
    }

    /// Conductor of the field holding every character value.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn classes(&self) -> &[ThetaClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> usize {
        self.gamma.order() * self.c_order as usize
    }

    /// `ω̂^k` in the common field.
    pub fn omega_power(&self, k: u64) -> CyclotomicNumber {
        let e = (k % self.c_order) as i64;
        self.omega_hat.pow(e).expect("root of unity is invertible").embed(self.conductor).expect("divides conductor")
    }

    pub fn embed(&self, x: &CyclotomicNumber) -> CyclotomicNumber {
        x.embed(num_integer::lcm(self.conductor, x.conductor())).expect("conductor divides lcm")
    }

    /// Brauer character of `Γ` per p-regular `Γ` class, indexed by `Γ` class number; the
    /// matrix for an element index comes from `matrix_of`. Non-regular classes get zero.
    pub fn gamma_character(
        &self,
        dim: usize,
        mut matrix_of: impl FnMut(usize) -> Result<Matrix<F>>,
    ) -> Result<Vec<CyclotomicNumber>> {
        let field = self.gamma.field();
        self.gamma_classes
            .classes
            .iter()
            .map(|c| {
                if dim == 0 || !c.p_regular {
                    return Ok(CyclotomicNumber::zero(self.conductor));
                }
                if c.representative == self.gamma.identity() {
                    return Ok(CyclotomicNumber::from_integer(self.conductor, dim as i64));
                }
                Ok(self.embed(&field.brauer_character(&self.ctx, &matrix_of(c.representative)?)?))
            })
            .collect()
    }

    /// Values on `Θ` classes of a degree-`d` piece whose `Γ` character is `gamma_values`.
    pub fn twist(&self, gamma_values: &[CyclotomicNumber], degree: usize) -> Vec<CyclotomicNumber> {
        self.classes
            .iter()
            .map(|c| {
                let v = self.embed(&gamma_values[c.gamma_class]);
                &v * &self.omega_power(c.c_power * degree as u64)
            })
            .collect()
    }

    /// Values of a degree-`d` piece on which `Γ` acts trivially.
    pub fn scalar_piece(&self, dim: usize, degree: usize) -> Vec<CyclotomicNumber> {
        let g = vec![CyclotomicNumber::from_integer(self.conductor, dim as i64); self.gamma_classes.len()];
        self.twist(&g, degree)
    }
}
