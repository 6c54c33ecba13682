use super::{check_gamma, GammaCache, GradedAlgebraR};
use crate::error::Result;
use crate::groth::Theta;
use crate::numbers::{CharacterField, CyclotomicField, CyclotomicNumber};
use crate::polyaction::GradedSubspace;
use crate::series::TruncatedSeries;

/// Character values of `Θ` on each `M_d`: `result[d][class]`.
pub fn graded_character<F: CharacterField>(m: &GradedSubspace<F>, theta: &Theta<F>) -> Result<Vec<Vec<CyclotomicNumber>>> {
    check_gamma(m, theta)?;
    let mut cache = GammaCache::new(m);
    (0..=m.truncation())
        .map(|d| {
            let gamma_vals = theta.gamma_character(m.dim(d), |g| Ok(cache.get(d, g)?.clone()))?;
            Ok(theta.twist(&gamma_vals, d))
        })
        .collect()
}

/// Per `Θ` class, the series `[M](t) / [R](t)`, which equals `Σ_i (-1)^i [Tor_i^R(M,k)](t)`.
/// `Γ` acts trivially on `R ⊆ k[V]`, and `C` by the grading.
pub fn euler_character_series<F: CharacterField>(
    m: &GradedSubspace<F>,
    r: &GradedAlgebraR<F>,
    theta: &Theta<F>,
) -> Result<Vec<TruncatedSeries<CyclotomicField>>> {
    let top = m.truncation().min(r.truncation());
    let k = CyclotomicField::new(theta.conductor())?;
    let mchar = graded_character(&m.truncated(top), theta)?;
    let rchar: Vec<Vec<CyclotomicNumber>> = (0..=top).map(|d| theta.scalar_piece(r.dim(d), d)).collect();
    (0..theta.len())
        .map(|c| {
            let ms = TruncatedSeries::new(&k, mchar.iter().map(|v| theta.embed(&v[c])).collect());
            let rs = TruncatedSeries::new(&k, rchar.iter().map(|v| theta.embed(&v[c])).collect());
            ms.div(&rs)
        })
        .collect()
}
