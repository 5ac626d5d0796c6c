//! Exact enumeration of curves on the two tropical Moebius strips.
//!
//! Curves in a class a*E + b*F are encoded by floor diagrams: oriented
//! weighted graphs of floors, joints and elevators. This crate
//! enumerates the diagrams and their markings, evaluates classical and
//! refined multiplicities, assembles fixed-genus generating series,
//! and analyzes the piecewise polynomial behavior of the counts in the
//! tangency profile.
//!
//! Entry points:
//! - [`enumerate::enumerate_diagrams`] and [`marking::enumerate_marking_classes`]
//! - [`multiplicity::invariant`] for the classical and refined counts
//! - [`gen_series::generating_series`] and [`gen_series::factorized_form`]
//! - [`regularity::fit_on_ray`] and the weighting-system tools
//! - [`verify::run_all`] for the acceptance matrix
//!
//! The `tmoebius` binary exposes the same operations as subcommands;
//! the `examples/` directory shows one worked session per capability.

pub mod arith;
pub mod canonical;
pub mod diagram;
pub mod enumerate;
pub mod exact;
pub mod gen_series;
pub mod half_int;
pub mod marking;
pub mod multiplicity;
pub mod partition;
pub mod power_series;
pub mod qpoly;
pub mod regularity;
pub mod verify;
