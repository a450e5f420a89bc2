//! Exact-arithmetic models of (twisted) rings of differential operators on a
//! family of toric varieties: the affine cone of rank-one quadrics, its
//! resolution (the total space of `O(-2)` over projective space), and the
//! weighted projective space `P(1,...,1,2)`.
//!
//! Everything is built on a sparse normal-ordered Weyl algebra over exact
//! rationals ([`weyl::WeylElement`]). On top of that sit:
//!
//! - ring membership predicates and generator sets for the three rings
//!   ([`rings`]), with a spanning oracle over exact linear algebra ([`span`]),
//! - a realization of `sp(2n)` Chevalley-Cartan generators and of the
//!   parabolic data `m + r_+ + r_-` as concrete operators ([`realization`]),
//! - the Fourier transform in the last variable, exchanging the resolution
//!   with the weighted projective space ([`fourier`]),
//! - graded monomial models of the cohomology groups together with weight
//!   decompositions, primitivity, irreducibility, generation and lifting
//!   checks ([`modules`]),
//! - a suite runner with JSON/CSV/text reports ([`report`]), exposed through
//!   the `verify` binary.
//!
//! All coefficients are `BigRational`; there is no floating point and every
//! check is an exact identity.

pub mod error;
pub mod fourier;
pub mod index;
pub mod linalg;
pub mod modules;
pub mod rat;
pub mod realization;
pub mod report;
pub mod rings;
pub mod span;
pub mod support;
pub mod weyl;

pub use error::Error;
pub use index::MultiIndex;
pub use weyl::WeylElement;
