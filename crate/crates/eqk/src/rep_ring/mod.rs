//! Characters and representation rings.

mod character;
mod presentation;
mod restriction;

pub use character::{irreducible_character, irreducible_character_cover, is_weyl_invariant, orbit_sum, weight_monomial, Character};
pub use presentation::{
    representation_ring, representation_ring_with, GeneratorBasis, GeneratorKind, RepRingPresentation, RingGenerator,
};
pub use restriction::{is_restriction_surjective, restriction_map, RestrictionMap, SurjectivityReport};
