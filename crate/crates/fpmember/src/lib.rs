//! Text formats, certificate files, the certificate checker and the query
//! runner behind the `fpmember` command.

pub mod certificate;
pub mod corpus;
pub mod query;
pub mod syntax;
pub mod verify;

pub use certificate::CertificateFile;
pub use query::{exit_code, run_query, QueryKind, QueryRecord};
pub use syntax::{parse_gog, parse_presentation, parse_word, parse_word_list, ParseError};
pub use verify::{verify_certificate, verify_self_contained, Verdict};
