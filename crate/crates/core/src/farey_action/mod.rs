//! Reflection groups of the Farey tessellation and the orbit criterion.

mod bfs;
mod certificate;
mod enumerate;
mod frame;
mod membership;
mod moebius;

pub use bfs::{bfs_oracle, BfsOrbit};
pub use certificate::{orbit_word_to_cf, OrbitCertificate, Target};
pub use enumerate::{orbit_enumerate, orbit_enumerate_expansion, orbit_enumerate_with, EnumLimits};
pub use frame::{
    cf_matrix, classify_gamma_inf, edge_path, fold_inf, gamma_generators, gamma_inf, EdgePath, Frame, Generators,
};
pub use membership::{is_in_orbit, orbit_membership, Membership, MembershipLimits, SpecialCase, Witness};
pub use moebius::MoebiusMap;
