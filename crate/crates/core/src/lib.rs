//! Exact combinatorics of the abelian sandpile on complete split graphs.
//!
//! The graph `S_{n,d}` is a clique on `n + 1` vertices (one of them the sink)
//! joined completely to an independent set of `d` vertices. Sorted recurrent
//! configurations on it are in bijection with Schröder words and sawtooth
//! polyominoes, and their level and weighted toppling statistics produce the
//! q,t-Schröder polynomial.
//!
//! Module map:
//! - [`asm`]: configurations, toppling, stabilization, burning test, enumeration.
//! - [`toppling`]: CTI and ITC parallel toppling, ITC sequences and their counts.
//! - [`schroder`]: Schröder words, the bijection `phi`, mirror, area and bounce.
//! - [`polyomino`]: sawtooth polyominoes and their bounce paths.
//! - [`qt_poly`]: exact q,t-polynomials and the identities between them.
//! - [`cycle_lemma`]: extended configurations, the operators `T_s, T_K, T_I, T_W`.
//! - [`verify`]: verification suites producing [`verify::VerificationReport`]s.
//! - [`render`]: SVG output.

pub mod asm;
pub mod combinat;
pub mod cycle_lemma;
pub mod error;
pub mod exec;
pub mod polyomino;
pub mod qt_poly;
pub mod render;
pub mod schroder;
pub mod toppling;
pub mod verify;

pub use asm::{Configuration, SplitGraphShape, Vertex};
pub use error::{Error, Result};
pub use exec::Execution;
pub use polyomino::SawtoothPolyomino;
pub use qt_poly::{QPolynomial, QtPolynomial};
pub use schroder::{Letter, SchroderWord, Word};
pub use toppling::{ItcSequence, Mode, ToppleTrace};
