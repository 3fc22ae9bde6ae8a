//! Exact computations for the torus-invariant prime spectra of
//! multiparameter quantum Schubert cell algebras `U^w_{-,p}`.
//!
//! The crate is organized bottom-up:
//!
//! * [`intlin`]: integer matrices, Hermite/Smith normal forms, lattices;
//! * [`rootsys`]: Cartan data and the invariant form for finite types;
//! * [`weyl`]: Weyl group elements, reduced words, Bruhat order;
//! * [`cauchon`]: beta roots, Cauchon diagrams and the lattices `Q_{y,w}`;
//! * [`twist`]: exponent-vector scalars, bicharacters and torus characters;
//! * [`strata`]: stratum lattices, dimensions and the stratification report;
//! * [`qtorus`]: the quantum torus of the Cauchon localization;
//! * [`cli`]: the `qschubert` command line front end.
//!
//! Everything is exact: there is no floating point anywhere.

#![allow(clippy::needless_range_loop)]

pub mod cauchon;
pub mod cli;
mod error;
pub mod intlin;
pub mod qtorus;
pub mod rootsys;
pub mod strata;
pub mod twist;
pub mod weyl;

pub use error::{Error, Result};
