//! Degeneration witnesses over `S[t]`, necessary-condition screens, and the
//! exact-sequence constructions producing degenerations.

mod corollaries;
mod extension;
mod screen;
mod transfer;
mod witness;
mod zwara;

pub use corollaries::{alpha_plus_power, corollary44_pair, corollary45_family, Cor44Pair, Cor45Family};
pub use extension::{direct_sum, extension_degeneration, multiplier_maps, search_multiplier_extension, ExtensionRecord};
pub use screen::{fitting_screen, screen_necessary, FittingResult, MinorResult, ScreenReport};
pub use transfer::{lift_witness_doublesharp, quotient_transfer, regular_on_representation};
pub use witness::{family, recognize, verify_witness, verify_witness_with, DegenerationWitness, Family, WitnessReport};
pub use zwara::{
    exactness_counterexample, nilpotency_check, nilpotency_index, verify_exactness, zwara_construct, Decomposition,
    ExactnessReport, ZwaraSequence,
};
