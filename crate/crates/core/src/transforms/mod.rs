//! Program transformations: assignments as formulas, unfolding of assignment rules,
//! normal forms of linear constraints, and elimination of conditional terms.

mod assign;
mod delta;
mod normal;
mod unfold;

pub use assign::{assignment_formula, def_of, phi};
pub use delta::{delta, eliminate_conditionals, fresh_interval, DeltaResult};
pub use normal::{normalize_constraint, normalize_equality, normalize_leq};
pub use unfold::{
    unfolding_implications, unfold_rule, unfold_rule_with, unfold_theory,
    DEFAULT_MAX_HEAD_ASSIGNMENTS,
};
