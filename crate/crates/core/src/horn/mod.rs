//! Horn matrices, friendly and Horn pairs, the Horn map, and the reduction
//! that aggregates collinear rows.

mod check;
mod equal;
mod friendly;
mod map;
mod reduce;
mod types;

pub use check::{
    horn_pair_check, lambda_sign_condition, positive_at_ones, rows_have_constant_sign,
    sign_vector, verify_pair, HornVerdict,
};
pub use equal::{find_bijection, horn_pair_equal};
pub use friendly::{friendliness_both_ways, friendliness_check, friendliness_check_with, IdentityMethod};
pub use map::{horn_map_eval, horn_map_sum};
pub use reduce::{is_reduced, primitive_row, reduce_horn};
pub use types::{CoefficientVector, HornMatrix, HornPair, HornPairJson, PairStatus, SignVector};
