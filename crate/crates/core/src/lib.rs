//! Exact computer algebra for double-cover surface constructions.
//!
//! The crate is organised as a stack: exact coefficient arithmetic at the
//! bottom (`exactfield`), sparse multivariate polynomials over it
//! (`multipoly`), Buchberger-based ideal computations (`groebner`), a thin
//! scheme layer for singular loci, linear systems and image degrees
//! (`schemes`), and two purely numeric modules for double-cover invariant
//! bookkeeping (`covers`) and the classification rule table (`classify`).
//! `pipeline` wires the stack into reproducible end-to-end runs driven by the
//! `branchforge` binary.

pub mod classify;
pub mod covers;
pub mod error;
pub mod exactfield;
pub mod groebner;
pub mod multipoly;
pub mod pipeline;
pub mod schemes;

pub use error::{Error, Result};
