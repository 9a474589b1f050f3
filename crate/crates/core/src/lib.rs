//! Exact computation of the Frobenius-trace functions of the nearby cycles of
//! the Drinfeld-Lafforgue-Vinberg degeneration, equivalently the Bernstein
//! asymptotics of the basic function, for finite-type root data.
//!
//! * [`cartan`]: Cartan matrices, positive coroots, parabolic quotients.
//! * [`qlaurent`]: integer Laurent polynomials in `q` and shift/twist classes.
//! * [`kostant`]: Kostant partitions, by enumeration and by counting.
//! * [`asymptotics`]: the trace tables and the three routes that compute them.
//! * [`strata`]: index sets of the stratifications and their codimensions.
//! * [`cli`]: the `asymp` command-line tool.

pub mod asymptotics;
pub mod cartan;
pub mod cli;
pub mod error;
pub mod kostant;
pub mod qlaurent;
pub mod strata;

pub use error::{Error, Result};
