//! The Grothendieck ring of `Θ = Γ × C` through Brauer characters, series over it, and
//! the verifiers built on Tor.

mod element;
mod series;
mod theta;
mod verify;

pub use element::{brauer_value, character_of, compare, format_value, CompareMode, Comparison, GrothElement};
pub use series::{
    equivariant_molien, polynomial_hilbert, quotient, scalar_closed_forms, scale_variable, value_at_one, GrothSeries,
    ValueAtOne,
};
pub use theta::{root_order, Theta, ThetaClass};
pub use verify::{
    betti_entries, regular_certificate_for, tor_series_at_one, verify_fiber_euler, verify_omnibus, verify_springer,
    BettiEntry, HypothesisCheck, OmnibusReport, PartialSum, SpringerRoute, Status, TorIdentityReport,
};
