//! Exact computer algebra for the equivariant K-theory and Borel equivariant
//! cohomology of homogeneous spaces `G/H` under the isotropy action of `H`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact_algebra`]: exact (Laurent) polynomials, monomials, Poincaré series.
//! * [`groebner`]: Buchberger bases, Hilbert series, elimination, fibers.
//! * [`lie_data`]: root data of compact connected groups and subgroup pairs.
//! * [`rep_ring`]: characters and representation rings.
//! * [`kunneth_tor`]: hypothesis classification and the `Tor⁰` assembly of `K*_H(G/H)`.
//! * [`invariant_theory`]: finite matrix groups, Molien series, reflection tests.
//! * [`formality`]: `H*(BG;ℚ)`, the normalizer action and the formality battery.
//! * [`catalog`]: the built-in worked pairs with golden checks.

pub mod catalog;
pub mod ctx;
pub mod error;
pub mod exact_algebra;
pub mod formality;
pub mod groebner;
pub mod invariant_theory;
pub mod kunneth_tor;
pub mod lie_data;
pub mod rep_ring;

pub use ctx::{Ctx, Limits};
pub use error::{Error, ErrorKind, Result};
