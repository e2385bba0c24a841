//! Computer algebra for translation-invariant commuting Pauli Hamiltonians.
//!
//! A code on the lattice Z^D with q qubits and t stabilizer generators per
//! site is a 2q x t matrix sigma over the Laurent polynomial ring
//! F_p[x_1^±1, ..., x_D^±1]. This crate provides the ring and module
//! machinery (Groebner bases, syzygies, saturations), the symplectic
//! equivalence moves, and the analyses built on them: exactness of the
//! stabilizer-excitation sequence, characteristic dimension, ground-state
//! degeneracy on finite tori, torsion and fractal string generators, the 1D
//! classification, and energy-barrier simulation of fractal excitation
//! processes.

pub mod catalog;
pub mod code;
pub mod error;
pub mod field;
pub mod groebner;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod onedim;
pub mod poly;
pub mod process;

pub use error::{Error, Result};
