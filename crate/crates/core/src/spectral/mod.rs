//! Averaging operators on finite quotients `SA(2, ℤ/nℤ)`, their norms on
//! the mean-zero subspace, and the Kazhdan bounds they give.

pub mod herz;
pub mod kazhdan;
pub mod lanczos;
pub mod operator;
pub mod quotient;

pub use herz::{herz_compare, HerzReport};
pub use kazhdan::{implied_kazhdan, l2_kazhdan_from_action, margulis_set, KazhdanReport};
pub use lanczos::{
    dense_norm, gap_table, operator_norm_est, GapEstimate, NormConfig, DENSE_CHECK_LIMIT,
    GAP_TABLE_HEADER,
};
pub use operator::{schreier_operator, ActionMode, SchreierOperator};
pub use quotient::{closure_check, reduce_mod, Closure, QuotientElement, DEFAULT_CLOSURE_LIMIT};
