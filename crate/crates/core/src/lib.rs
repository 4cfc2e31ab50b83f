//! Iwasawa–Schubert varieties meeting the base cycles of flag domains for
//! SL(n,ℝ), SL(m,ℍ) and SU(p,q), together with their intersection points,
//! counts and homology expansions. Every combinatorial answer can be checked
//! against the exact Gaussian-rational oracle in [`geometry`].

pub mod error;
pub mod geometry;
pub mod homology;
pub mod perm;
pub mod slmh;
pub mod slnr;
pub mod supq;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{DimensionSequence, Permutation};
