//! Circulating orientation sources and the constructions that turn them
//! into path discovery instances with the same answer.

mod circ;
mod generate;

pub use circ::{circ_orient_brute, CirculatingOrientationInstance, MAX_BRUTE_EDGES};
pub use generate::{
    apply_variant, generate, generate_caterpillar, generate_gadget_chain, generate_zero_budget, ArtifactMetadata,
    Branch, Gadget, GeneratedArtifact, OddMode, Reduction, VariantTransform,
};
