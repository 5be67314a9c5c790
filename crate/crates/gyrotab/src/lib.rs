//! Computational kernel for finite gyrogroups given by Cayley tables:
//! axiom verification, an order-doubling construction, enumeration and
//! classification of subgyrogroups and normal subgyrogroups, quotients,
//! and a small catalog of built-in examples.

pub mod catalog;
pub mod cli;
pub mod doubling;
pub mod format;
pub mod gyrogroup;
pub mod report;
pub mod subalgebra;
pub mod subset;

pub use gyrogroup::{
    verify_axioms, CayleyTable, CoreError, FiniteGyrogroup, Permutation, ValidationReport,
    Violation,
};
pub use subset::ElementSubset;
