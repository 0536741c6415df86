//! Equivalence oracles and property suites.
//!
//! Equivalence is decided by exhaustive enumeration over the finite domain. Strong
//! equivalence is only sampled over a finite family of contexts, so an `Equal` verdict
//! means no separating context was found in that family.

mod contexts;
mod equiv;
pub mod gen;
mod shrink;
mod suites;

pub use contexts::{context_family, DEFAULT_CONTEXT_CAP};
pub use equiv::{
    equivalent, stable_equivalent, strong_equiv_sampled, EquivReport, Mode, ModelMap, Side,
    Verdict, Witness,
};
pub use shrink::shrink;
pub use suites::{
    brute_force_extremum, run_property_suite, suite_item, Counterexample, PropertyReport, Suite,
};
