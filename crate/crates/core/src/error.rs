use alloc::string::String;
use core::fmt;

/// Validation failures. Budget exhaustion is never an error; it is reported
/// as an outcome by the searches themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidGenerator { generator: usize, rank: usize },
    DuplicateGenerator(String),
    AlphabetMismatch { expected: usize, found: usize },
    ImageCountMismatch { expected: usize, found: usize },
    DegreeMismatch { expected: usize, found: usize },
    NotAPermutation,
    NotASubgroup,
    MissingMarkedSubgroup,
    RelatorNotKilled(usize),
    InvalidIndex(usize),
    DimensionMismatch { expected: usize, found: usize },
    DisconnectedGraph,
    InvalidSpanningTree,
    EmptyInput,
    /// Supplied certificate data failed its own check.
    InvalidCertificate,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGenerator { generator, rank } => {
                write!(f, "generator id {} outside alphabet of rank {}", generator, rank)
            }
            Error::DuplicateGenerator(name) => write!(f, "duplicate generator name `{}`", name),
            Error::AlphabetMismatch { expected, found } => {
                write!(f, "alphabet mismatch: expected rank {}, found {}", expected, found)
            }
            Error::ImageCountMismatch { expected, found } => {
                write!(f, "expected {} generator images, found {}", expected, found)
            }
            Error::DegreeMismatch { expected, found } => {
                write!(f, "permutation degree mismatch: expected {}, found {}", expected, found)
            }
            Error::NotAPermutation => f.write_str("image list is not a permutation"),
            Error::NotASubgroup => f.write_str("element set is not closed under composition"),
            Error::MissingMarkedSubgroup => f.write_str("finite quotient has no marked subgroup"),
            Error::RelatorNotKilled(i) => write!(f, "relator {} does not map to the identity", i),
            Error::InvalidIndex(i) => write!(f, "index {} out of range", i),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}, found {}", expected, found)
            }
            Error::DisconnectedGraph => f.write_str("graph of groups is not connected"),
            Error::InvalidSpanningTree => f.write_str("marked tree edges do not form a spanning tree"),
            Error::EmptyInput => f.write_str("at least one input is required"),
            Error::InvalidCertificate => f.write_str("supplied certificate does not verify"),
        }
    }
}
