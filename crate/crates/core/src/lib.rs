//! Epimorphisms between 2-bridge link groups.

pub mod charvar;
pub mod epi_pipeline;
pub mod error;
pub mod farey_action;
pub mod invariants;
pub mod presentation;
pub mod schubert;
pub mod rational_cf;

pub use error::{Error, Result};
pub use rational_cf::{ContFrac, Slope};
