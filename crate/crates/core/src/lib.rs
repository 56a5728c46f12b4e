//! Exact computation and certification of invariant sequences attached to
//! tensor powers of modular representations.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: rationals, univariate, Laurent, bivariate and multivariate
//!   polynomials, plus the shared text grammar.
//! * [`lmatrix`]: matrices over the Laurent ring (powers, characteristic
//!   polynomials, Cayley–Hamilton).
//! * [`cfinite`], [`quasipoly`], [`multiseq`]: sequence algebra.
//! * [`guess`]: exact recurrence and algebraic-equation guessing.
//! * [`convolve`]: substitution of sequences into polynomial sequences.
//! * [`omega`]: tensor systems over `N[w, 1/w]` and their invariant sequences.
//! * [`modrep`]: brute-force modules over `F_p` used as ground truth.
//! * [`verify`]: the end-to-end checks behind `coreseq verify paper`.

pub mod cfinite;
pub mod convolve;
pub mod error;
pub mod guess;
pub mod linalg;
pub mod lmatrix;
pub mod modrep;
pub mod multiseq;
pub mod omega;
pub mod quasipoly;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{rat, BiPoly, LaurentPoly, MultiPoly, Rational, Ring, UniPoly};
