//! Exact integer and rational linear algebra together with the matrices
//! linking the three graph encodings.

pub mod hnf;
pub mod matrix;
pub mod simplex;
pub mod structure;
pub mod unimodular;

pub use hnf::{hermite_normal_form, is_identity_then_zero, rank};
pub use matrix::{index_labels, mul_vector, IntMatrix, Label, RatVector};
pub use simplex::feasible_nonneg_solution;
pub use structure::{
    b_from_factorization, build_b_u, build_matrix_a, build_matrix_b, build_matrix_b_bar, build_matrix_c,
    build_matrix_d, build_matrix_e, build_matrix_e_with_dummy, build_matrix_f, has_incidence_columns,
    matrix_e_columns, original_columns_in_e,
};
pub use unimodular::{
    is_totally_unimodular_small, is_unimodular_full_row_rank, MinorMode, MinorViolation, TuVerdict,
    UnimodularVerdict,
};
