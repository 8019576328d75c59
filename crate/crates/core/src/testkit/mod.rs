//! Oracles and generators for testing the kernel and the corpus.

mod gen;
mod negative;
mod props;
mod zexpr;

pub use gen::{gen_typed_term, small_typed_terms, GenConfig, GenTy, Sample, TermGen};
pub use negative::{load_negative_dir, Expectation, NegativeCase, NegativeError};
pub use props::{
    canonical_z, conversion_congruence, normalize_idempotent, subject_reduction,
    trunc_ind_blocked, trunc_ind_fires, trunc_ind_instance, z_oracle_agreement, TruncIndInstance,
    STEP_FUEL,
};
pub use zexpr::{
    decode_nat, decode_numeral, encode, gen_z_expr, nat_numeral, small_z_exprs, z_numeral,
    z_oracle_eval, DecodeError, EncodeError, ZExpr, GEN_LITERAL_MAX, LITERAL_BOUND, MAX_GEN_SIZE,
};
