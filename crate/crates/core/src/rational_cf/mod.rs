//! Extended rationals and continued fractions.

mod contfrac;
mod slope;

pub use contfrac::{cf_canonical, cf_canonical_with, cf_even, cf_expand_pattern, eval_cf, CfForm, ContFrac, LastEntry};
pub use slope::Slope;
pub(crate) use slope::gcd;
