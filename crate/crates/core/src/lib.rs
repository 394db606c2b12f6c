//! Exact computations with graded bicommutative Hopf algebras over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactla`]: dense linear algebra over F_p,
//! - [`hopfcore`]: structure-constant presentations of graded Hopf algebras and
//!   the operations on them (primitives, Frobenius, Verschiebung, kernels, duals, filtrations),
//! - [`catalogue`]: constructors for the standard examples (symmetric, exterior,
//!   divided-power and truncated algebras, the extensions `G_n`, the self-dual algebra),
//! - [`dieudonne`]: graded Dieudonné modules, string modules and signatures,
//! - [`barhom`]: reduced bar constructions, Tor tables and closed-form predictions,
//! - [`symgrp`]: homology of symmetric groups with tensor-power coefficients,
//! - [`cli`]: the command-line front end.

pub mod exactla;
pub mod hopfcore;
pub mod catalogue;
pub mod dieudonne;
pub mod barhom;
pub mod symgrp;
pub mod cli;
