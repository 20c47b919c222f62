//! Simplification and progression tables for propositional and LTL formulas,
//! variable influence weights, equivalent-variable reduction, trigger
//! expression synthesis, and a decentralized LTL monitor built on top of them.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod bench;
pub mod equiv;
pub mod error;
pub mod ltl;
pub mod monitor;
pub mod patterns;
pub mod synth;
pub mod table;

pub use error::Error;
pub use ltl::{parse, render, Assignment, Formula, Trace, Truth3};
