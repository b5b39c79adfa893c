//! Betti-table obstructions for projective hypersurfaces.
//!
//! A reduced hypersurface `V(f)` in `P^n` has a Jacobian (Milnor) algebra
//! `M(f) = S/J_f` whose graded Betti numbers determine the dimension and
//! degree of the singular locus. This crate provides:
//!
//! * [`polycore`]: exact homogeneous polynomials and their partials;
//! * [`exactla`]: sparse rank and echelon computations mod p and over Q;
//! * [`oracle`]: Hilbert functions and Betti numbers computed from `f`;
//! * [`bettirules`]: the formulas and necessary conditions on a table.

pub mod bettirules;
pub mod exactla;
pub mod oracle;
pub mod polycore;
pub mod table;

pub use bettirules::{full_report, Check, Dimension, Flag, SingularReport, Status, Verdict, Witness};
pub use oracle::{cross_check, graded_betti, hilbert_fit, milnor_dimension, CrossCheck, HilbertData, OracleError};
pub use polycore::{Monomial, PolyError, Polynomial};
pub use table::{BettiTable, TableError};
