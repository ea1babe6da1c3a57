//! Equidistant subspace codes for linear network coding built from
//! pairwise coprime homogeneous forms over finite fields.
//!
//! A normalized form `G` of degree `e` in `X_0..X_n` over `F_q` defines the
//! subspace `V_G = G * F_q[X_0..X_n]_{d-e}` of the `C(n+d, n)`-dimensional
//! space of degree-`d` forms. For a family of pairwise coprime generators
//! all such subspaces have dimension `C(n+d-e, n)` and sit at the same
//! subspace distance from each other.
//!
//! Modules, bottom-up:
//! - [`gf`]: finite field arithmetic.
//! - [`homopoly`]: homogeneous forms, normalization, divisibility, ranking.
//! - [`irreducibles`]: counting and sieving irreducible forms.
//! - [`subspace`]: canonical subspaces and the subspace distance.
//! - [`codes`]: code construction and parameters.
//! - [`channel`]: operator-channel simulation and minimum-distance decoding.
//! - [`cli`]: the `formcode` command line.

pub mod channel;
pub mod cli;
pub mod codes;
pub mod error;
pub mod gf;
pub mod homopoly;
pub mod irreducibles;
pub mod limits;
pub mod linalg;
pub mod subspace;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use homopoly::{HomogeneousPoly, Monomial, NormalizedPoly};
pub use limits::Limits;
