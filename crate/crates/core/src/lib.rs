//! Exact combinatorics of box-union subsets of the 2- and 3-dimensional
//! simplex: order-type patterns and their copies, the rank of a box union,
//! piecewise-linear homeomorphisms of `[0,1]`, and constructive procedures
//! that return either a copy of a pattern in the complement of a set or a
//! rank witness for the set itself.

pub mod campaign;
pub mod copy;
pub mod dichotomy;
pub mod error;
pub mod geometry;
pub mod homeo;
pub mod pattern;
pub mod rank;
pub mod rational;

pub use rational::{q, Rational};
