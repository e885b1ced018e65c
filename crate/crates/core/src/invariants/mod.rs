//! Numeric layer: p-adic valuations, two exponential inequalities, Lie-type
//! parameters, reference records and the exceptional root systems.

pub mod bounds;
pub mod lie;
pub mod records;
pub mod roots;
pub mod valuation;

pub use bounds::{check_bound_i, check_bound_ii, grid_i, grid_ii, BoundCheck, BoundGrid};
pub use lie::{all_params, lie_params, small_rank_bound, LieFamily, LieParams, SmallRankGroup};
pub use records::{
    alternating_record, check_prop_2_5_record, shipped_records, tits_record, InvariantRecord,
    Known, Outcome, RecordReport, Verdict,
};
pub use roots::{build_root_system, verify_lemma_3_1, Root, RootFilterReport, RootSystem};
pub use valuation::{digit_sum, factorial_grid, legendre, v_p, v_p_u64, vp_factorial, FactorialGrid};
