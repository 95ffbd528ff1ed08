//! Explicit eigenmodes of the Laplace-de Rham operator on the unit 3-sphere.
//!
//! The crate builds the scalar harmonics of S^3 in Hopf coordinates, the
//! one-form families derived from them with the Killing fields
//! `d/dphi +- d/dtheta`, and the co-exact basis `{E, E'}` whose members are
//! eigenforms of the curl `*d` with eigenvalues `+-L`, hence of the
//! Laplace-de Rham operator with eigenvalue `-L^2`.
//!
//! Everything is evaluated analytically through truncated jets
//! ([`jet::Jet`]); [`fd_oracle`] re-derives the differential operators with
//! finite differences and [`quadrature`] integrates products of modes
//! exactly, so every eigen-relation and scalar product can be checked
//! numerically ([`verify`]).

pub mod error;
pub mod exec;
pub mod exterior;
pub mod fd_oracle;
pub mod geometry;
pub mod io;
pub mod jet;
pub mod mode_families;
pub mod quadrature;
pub mod sampling;
pub mod scalar_modes;
pub mod specialfn;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{HopfPoint, Killing};
pub use mode_families::{BasisMode, CoexactBasisIndex, FamilyTag};
pub use scalar_modes::{HalfInt, ModeIndex};
