//! Exact computations for finite global quotient orbifolds `M ⋊ G`.
//!
//! * [`group`]: finite groups by multiplication table; homomorphisms from
//!   presented groups and their conjugacy classes.
//! * [`wreath`]: wreath products `G ≀ Sₙ`, cycle decompositions, types and
//!   centralizers.
//! * [`complex`]: simplicial complexes with finite group actions, good
//!   (regular) triangulations, Euler and Euler-Satake characteristics.
//! * [`sectors`]: Γ-sectors and the Γ-Euler characteristics built from them.
//! * [`series`]: truncated power series over ℚ and the wreath product
//!   generating functions.
//! * [`hodge`]: shifted Hodge polynomials of wreath products from abstract
//!   sector data.

pub mod complex;
pub mod error;
pub mod formats;
pub mod group;
pub mod hodge;
pub mod perm;
pub mod rational;
pub mod report;
pub mod sectors;
pub mod series;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom, GroupLimits, GroupView, HomClass, Presentation, Subgroup};
pub use rational::Q;

pub use complex::ComplexLimits;

/// All size limits in one place.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub group: GroupLimits,
    pub complex: ComplexLimits,
}
