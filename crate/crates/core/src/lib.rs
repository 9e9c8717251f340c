//! Exact homology and cohomology of finite groups.
//!
//! Groups are permutation groups enumerated in full. Free resolutions over
//! the integral group ring are built explicitly (bar, normalized bar,
//! homogeneous and the periodic resolution of a cyclic group), a
//! coefficient functor is applied, and the resulting complexes of
//! finitely generated abelian groups are solved with exact integer
//! linear algebra.

pub mod chainmaps;
pub mod cocycles;
pub mod error;
pub mod functors;
pub mod groups;
pub mod intlinalg;
pub mod resolutions;
pub mod serial;
pub mod zgwords;

pub use error::{Error, Result};
pub use functors::{group_cohomology, group_homology, schur_multiplier, Coefficients, GModule, ResolutionChoice};
pub use groups::{FiniteGroup, GroupExpr, GroupHom};
pub use intlinalg::AbelianInvariants;
pub use resolutions::{Resolution, ResolutionKind};

/// Default integer type for all user-facing data.
pub type Int = num_bigint::BigInt;
pub type Matrix = intlinalg::IntMatrix<Int>;
pub type Word = zgwords::GroupRingWord<Int>;
