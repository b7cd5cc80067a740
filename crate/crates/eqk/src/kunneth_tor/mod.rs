//! `K*_H(G/H)` from the Künneth spectral sequence: which structural case a pair
//! falls in, the `Tor⁰ = RH ⊗_RG RH` presentation with its exterior factor, the
//! fixed-point maps `ι`, ordinary K-theory and the weak-formality quotient.

mod classify;
mod iota;
mod tor0;

pub use classify::{classify_pair, FiberJump, GeneralCaseCheck, HypothesisReport, PairCase, TorsionFiberJump};
pub use iota::{iota_image_comparison, iota_map, ImageComparison, IotaComponent, IotaMap, PairWitness};
pub use tor0::{
    assemble_ktheory, formality_criterion_tor, ordinary_ktheory, tor0_presentation, FreenessCertificate,
    GradedGenerator, KTheoryReport, OrdinaryKTheory, Parity, Tor0, TorFormalityReport,
};
