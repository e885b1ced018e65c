//! Linear algebra over finite fields, linear and affine permutation groups,
//! and witness constructions inside them.

pub mod field;
pub mod linear;
pub mod matrix;
pub mod witnesses;

pub use field::{is_prime, Field};
pub use linear::{
    affine_group, check_fixed_space_congruence, enumerate_gl, gl_generators, gl_order,
    is_irreducible, linear_group, parse_matrix_file, sweep_fixed_space_congruence, AffineGroup,
    FixedSpaceStatus, Irreducibility, DEFAULT_MATRIX_SCAN_CAP, DEFAULT_SPIN_CAP,
};
pub use matrix::{
    decode_vector, encode_vector, mat_rank_image_kernel, AffineMap, MatrixFp, SubspaceFp,
    DEFAULT_DEGREE_CAP,
};
pub use witnesses::{
    admissible_vector, affine_derangement_from, classify_affine_maximals, isbell_witness,
    subfield_unipotent_check, AffineDerangementReport, AffineMaximal, IsbellReport,
    SubfieldReport, UnipotentType, DEFAULT_UNIPOTENT_SCAN_CAP,
};
