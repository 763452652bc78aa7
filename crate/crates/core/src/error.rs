use thiserror::Error;

use crate::rational_cf::Slope;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse slope {0:?}: expected \"q/p\", an integer, or \"inf\"")]
    ParseSlope(String),

    #[error("cannot parse continued fraction {0:?}: expected \"[a1,...,am]\" or \"c:[a1,...,am]\"")]
    ParseContFrac(String),

    #[error("0/0 is not a slope")]
    ZeroOverZero,

    #[error("no finite continued fraction for inf")]
    NoFiniteCf,

    #[error("{0} is odd/odd; apply a Schubert normalization to an odd/even or even/odd representative first")]
    OddOddParity(Slope),

    #[error("continued fraction expansion must be nonempty")]
    EmptyExpansion,

    #[error("pattern needs {expected} middle entries for {blocks} sign blocks, got {got}")]
    PatternShape {
        blocks: usize,
        expected: usize,
        got: usize,
    },

    #[error("slope {slope} is a special case ({kind}); the free-product generators are undefined")]
    SpecialSlope { slope: Slope, kind: &'static str },

    #[error("expansion {0} does not evaluate to a non-integral rational")]
    BadExpansion(String),

    #[error("orbit membership of {rtilde} under the group of {r} undecided after {steps} steps: {detail}")]
    Undecided {
        rtilde: Slope,
        r: Slope,
        steps: usize,
        detail: String,
    },

    #[error("certificate is malformed: {0}")]
    BadCertificate(String),

    #[error("{rtilde} is not an orbit candidate over {r}")]
    NotCandidate { rtilde: Slope, r: Slope },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate polynomial: {0}")]
    DegeneratePolynomial(String),

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("tower step {step}: Alexander degree did not increase ({previous} -> {next})")]
    TowerNotIncreasing {
        step: usize,
        previous: usize,
        next: usize,
    },

    #[error("chain link {index} ({from} -> {to}) is not an orbit candidate")]
    ChainBroken { index: usize, from: Slope, to: Slope },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid field order {0}: expected a prime power")]
    FieldOrder(u32),
}
