//! Here-and-There semantics over partial valuations.
//!
//! An interpretation is a pair `⟨h,t⟩` of valuations with `h ⊆ t`. Implications are
//! checked at both `h` and `t`; a constraint atom holds at `⟨h,t⟩` when `h` belongs to the
//! denotation of the atom obtained by evaluating its conditional terms at `⟨h,t⟩`.

mod eval;
mod models;
mod support;
mod valuation;

pub use eval::{
    denotes, eval_atom, eval_expr, eval_linear_expr, eval_summand, eval_term, satisfies,
};
pub use models::{
    ht_models, satisfies_all, stable_models, Compiled, Solver, DEFAULT_MAX_INTERPRETATIONS,
};
pub use support::{is_supported, is_supported_htc};
pub use valuation::{
    enumerate_valuations, valuation_at, Interpretation, Signature, Valuation, Value, VarKind,
};

pub(crate) use eval::sat;
