//! Exact symbolic machinery for degenerate Eisenstein series on the split group G2.
//!
//! The crate mechanizes the finite computations that sit underneath pole and
//! vanishing statements for these series:
//!
//! - [`rootsys`]: the G2 root system in fundamental-weight coordinates, Weyl
//!   words and inversion sets, under an explicit [`rootsys::Orientation`].
//! - [`charalg`]: GL1 and torus characters with a symbolic torsion part,
//!   coroot pairings and the Weyl action.
//! - [`laurent`]: truncated Laurent series over a polynomial ring in symbolic
//!   Laurent coefficients of `c(s) = ζ(s)/ζ(s+1)` and its twisted analogues,
//!   with the rewriting relations coming from `c(s)c(-s) = 1`.
//! - [`cterm`]: constant terms as Weyl sums, eigenspace grouping and the
//!   second-term identity, vanishing and pole-order certificates.
//! - [`polescan`]: rule-based bookkeeping of rank-one pole sources and the
//!   per-element pole table.
//! - [`g2matrix`]: exact 8×8 matrix computations in the split SO8 model and
//!   brute-force quadric enumeration over small prime fields.
//! - [`cli`]: the report dispatcher behind the `g2eis` binary.
//!
//! All arithmetic is exact; nothing in the symbolic core uses floating point.

pub mod charalg;
pub mod cli;
pub mod cterm;
pub mod g2matrix;
pub mod laurent;
pub mod polescan;
pub mod rational;
pub mod rootsys;

pub use charalg::{Assignment, Gl1Char, Order, TorsionClass, TorusChar};
pub use laurent::{CoeffPoly, CoeffSymbol, LaurentSeries, Relations};
pub use rational::Rat;
pub use rootsys::{Orientation, Parabolic, Root, Simple, WeylElt};
