//! Closed-form Weyl-spinor solutions with time-dependent angles, the
//! gauge-degenerate 4-potentials they solve, the electric fields that steer
//! them, and the localization dynamics that follows.
//!
//! Everything is in natural units (`ħ = c = 1`); [`observables::si_rates`]
//! is the only place SI quantities appear.
//!
//! Modules:
//!
//! - [`exprkit`]: expression parser, evaluator and analytic derivative for
//!   the free functions `θ(t)`, `φ(t)`, `h(r, t)`, `s(r, t)`.
//! - [`spinor`]: the spinors of both helicities and the finite-difference
//!   Weyl residual.
//! - [`potentials`]: base and degenerate 4-potentials, numeric and
//!   closed-form fields, control fields.
//! - [`observables`]: velocity, kinetic momentum, localization parameter,
//!   uncertainty relation.
//! - [`dynamics`]: field-driven angle evolution, RK4 trajectories and the
//!   figure scenarios.
//! - [`cli`]: scenario files, verification reports and CSV output behind the
//!   `weyl-dyn` binary.

pub mod cli;
pub mod dynamics;
mod error;
pub mod exprkit;
pub mod observables;
pub mod potentials;
pub mod spinor;
mod vector;

pub use error::{Error, Result};
pub use vector::{Event, Vec3};
