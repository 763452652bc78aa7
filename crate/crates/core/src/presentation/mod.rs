//! Plats, braids and the upper presentation of a 2-bridge link group.

mod braid;
mod plat;
mod words;

pub use braid::{b_block, braid_slope, btilde_braid, cf_braid, plat_braid, plat_expansion, BraidWord};
pub use plat::{Crossing, PlatDiagram};
pub use words::{upper_presentation, FreeWord, Gen, GroupPresentation, Parity};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational_cf::Slope;
use crate::schubert::{epi_candidate, MeridianPair};

/// The epimorphism `G(K(rtilde)) → G(K(r))` on generators.
///
/// Both groups are presented on the upper meridian pairs of the chosen
/// representatives, and the map sends `a ↦ a`, `b ↦ b`. When a
/// representative is the inverse slope, its upper pair is the lower pair
/// of the original slope; `lower_pair` records that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorMap {
    pub rtilde: Slope,
    pub r: Slope,
    pub rtilde_rep: Slope,
    pub r_rep: Slope,
    pub source_pair: MeridianPair,
    pub target_pair: MeridianPair,
    pub image_a: FreeWord,
    pub image_b: FreeWord,
    pub lower_pair: bool,
}

pub fn epi_generator_map(rtilde: Slope, r: Slope) -> Result<GeneratorMap> {
    let report = epi_candidate(rtilde, r)?;
    match (report.rtilde_rep, report.r_rep, report.source_pair, report.target_pair) {
        (Some(rtilde_rep), Some(r_rep), Some(source_pair), Some(target_pair)) if report.orbit_candidate => {
            Ok(GeneratorMap {
                rtilde,
                r,
                rtilde_rep,
                r_rep,
                source_pair,
                target_pair,
                image_a: FreeWord::generator(Gen::A),
                image_b: FreeWord::generator(Gen::B),
                lower_pair: source_pair == MeridianPair::Lower || target_pair == MeridianPair::Lower,
            })
        }
        _ => Err(Error::NotCandidate { rtilde, r }),
    }
}
