use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A global query was made on a carrier with an unbounded component.
    InfiniteCarrier,
    /// An element does not belong to the carrier it was applied in.
    CarrierMismatch(String),
    /// The rule does not know how to act on this carrier.
    UnsupportedRule(String),
    /// A rule output left the carrier while building a table.
    ClosureViolation(String),
    NoIdentity,
    NoAbsorber,
    NoAbsorberInComponent(usize),
    NonResiduePair,
    BadModulus(u64),
    BadLoopParams(String),
    DegreeTooLarge { degree: usize, max: usize },
    NonSquareMul { rows: usize, cols: usize },
    UnsupportedBase(String),
    OrderTooLarge { order: u128, cap: u128 },
    ArityMismatch { expected: usize, found: usize },
    NotLatin,
    NotAProduct,
    UnknownIdentity(String),
    UnknownClaim(String),
    RangeTooLarge(String),
    BadRange(String),
    BadN(u64),
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InfiniteCarrier => f.write_str("carrier is infinite; enumeration is not defined"),
            Error::CarrierMismatch(e) => write!(f, "element {e} is not in the carrier"),
            Error::UnsupportedRule(s) => write!(f, "unsupported rule: {s}"),
            Error::ClosureViolation(s) => write!(f, "operation is not closed: {s}"),
            Error::NoIdentity => f.write_str("structure has no identity element"),
            Error::NoAbsorber => f.write_str("structure has no absorbing element"),
            Error::NoAbsorberInComponent(i) => {
                write!(f, "component {} has no absorbing element", i + 1)
            }
            Error::NonResiduePair => {
                f.write_str("groupoid coefficients (t, u) must be integer residues")
            }
            Error::BadModulus(n) => write!(f, "modulus {n} is out of range"),
            Error::BadLoopParams(s) => write!(f, "invalid loop parameters: {s}"),
            Error::DegreeTooLarge { degree, max } => {
                write!(f, "degree {degree} exceeds the enumeration guard {max}")
            }
            Error::NonSquareMul { rows, cols } => {
                write!(f, "matrix multiplication needs a square shape, got {rows}x{cols}")
            }
            Error::UnsupportedBase(s) => write!(f, "unsupported matrix base: {s}"),
            Error::OrderTooLarge { order, cap } => {
                write!(f, "structure order {order} exceeds the cap {cap}")
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} components, found {found}")
            }
            Error::NotLatin => f.write_str("operation is not a latin square; division is undefined"),
            Error::NotAProduct => f.write_str("operation needs a product structure"),
            Error::UnknownIdentity(s) => write!(f, "unknown identity '{s}'"),
            Error::UnknownClaim(s) => write!(f, "unknown claim '{s}'"),
            Error::RangeTooLarge(s) => write!(f, "range too large: {s}"),
            Error::BadRange(s) => write!(f, "bad range: {s}"),
            Error::BadN(n) => write!(f, "n = {n} must be odd and greater than 3"),
            Error::Overflow => f.write_str("arithmetic overflow"),
        }
    }
}
