//! Matrix-free branching-Toeplitz operators on rooted q-homogeneous trees.
//!
//! The crate covers the truncated tree `B_n(T_q)` ([`tree`]), finitely
//! supported Fourier symbols ([`symbol`]), the operators `Γ_a^(n)[f]` and their
//! operator-valued extension ([`btop`]), norm and spectral analysis
//! ([`spectral`]), and determinantal point processes built from positive
//! contractive symbols ([`dpp`]).

pub mod btop;
pub mod dpp;
pub mod error;
pub mod linalg;
pub mod random;
pub mod spectral;
pub mod symbol;
pub mod tree;

pub use btop::{toeplitz, BranchingOperator, OperatorTuple, ToeplitzMatrix, WeightVector};
pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
pub use symbol::{Symbol, SymbolClass};
pub use tree::{Comparability, PathWord, TreeShape, Vertex};
