//! Exact-arithmetic geometric oracle, independent of the combinatorics.

pub mod flag;
pub mod gaussian;
pub mod matrix;
pub mod oracle;

pub use flag::FlagMatrix;
pub use gaussian::GaussianRational;
pub use matrix::Matrix;
pub use oracle::{
    in_base_cycle_su, in_open_orbit_su, is_isotropic_flag, is_maximally_isotropic,
    is_nondegenerate_flag, is_tau_generic, orientation_class, quaternion_iwasawa_reference,
    quaternion_j, random_cell_sample, sample_until, schubert_cell_membership, signature,
    standard_reference, su_iwasawa_reference, Conjugation, FormSpec, Orientation, Signature,
};
