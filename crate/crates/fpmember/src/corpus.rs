//! Built-in presentations and graph-of-groups descriptions.

use fpmember_core::graph::{gog_presentation, GraphOfGroups};
use fpmember_core::Presentation;

use crate::syntax::{parse_gog, parse_presentations, ParseError};

const GROUPS: &str = include_str!("../corpus/groups.fp");

/// `(name, file contents)` of the graph-of-groups files.
pub const GRAPHS: &[(&str, &str)] = &[
    ("mapping_torus", include_str!("../corpus/mapping_torus.gog")),
    ("klein_torus", include_str!("../corpus/klein_torus.gog")),
    ("modular", include_str!("../corpus/modular.gog")),
];

pub fn groups() -> Vec<Presentation> {
    parse_presentations(GROUPS).expect("built-in corpus parses")
}

pub fn graph(name: &str) -> Option<GraphOfGroups> {
    GRAPHS.iter().find(|(n, _)| *n == name).map(|(_, text)| parse_gog(text).expect("built-in graph parses"))
}

/// Corpus entry by name: a listed group, or the fundamental group of a
/// listed graph of groups.
pub fn lookup(name: &str) -> Option<Presentation> {
    if let Some(p) = groups().into_iter().find(|p| p.name() == Some(name)) {
        return Some(p);
    }
    let g = graph(name)?;
    let (p, _) = gog_presentation(&g).expect("built-in graph is valid");
    Some(p.with_name(name))
}

pub fn names() -> Vec<String> {
    let mut out: Vec<String> = groups().iter().filter_map(|p| p.name().map(str::to_string)).collect();
    out.extend(GRAPHS.iter().map(|(n, _)| n.to_string()));
    out
}

/// Resolves a group argument: inline `group ... = < ... >` text, a corpus
/// name, or a file holding one presentation.
pub fn resolve(arg: &str) -> Result<Presentation, ResolveError> {
    let arg = arg.trim();
    if arg.starts_with("group") && arg.contains('<') {
        return Ok(crate::syntax::parse_presentation(arg)?);
    }
    if let Some(p) = lookup(arg) {
        return Ok(p);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| ResolveError::Unknown(arg.to_string(), e.to_string()))?;
    Ok(crate::syntax::parse_presentation(&text)?)
}

#[derive(Debug, thiserror::Error)]
pub enum ResolveError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("`{0}` is neither a corpus group nor a readable file ({1})")]
    Unknown(String, String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use fpmember_core::abelian::abelianize;

    #[test]
    fn every_entry_resolves() {
        for n in names() {
            assert!(lookup(&n).is_some(), "{}", n);
        }
        assert!(lookup("nope").is_none());
        for n in names() {
            let p = lookup(&n).unwrap();
            assert_eq!(crate::syntax::parse_presentation(&p.to_text()).unwrap(), p, "{}", n);
        }
    }

    #[test]
    fn abelianizations() {
        let factors = |n: &str| -> Vec<i64> {
            abelianize(&lookup(n).unwrap()).invariant_factors().iter().map(|x| x.to_string().parse().unwrap()).collect()
        };
        assert_eq!(factors("mapping_torus"), vec![0, 0]);
        assert_eq!(factors("Z3"), vec![0, 0, 0]);
        assert_eq!(factors("Klein"), vec![2, 0]);
        assert_eq!(factors("klein_torus"), vec![2, 0]);
        assert_eq!(factors("trefoil"), vec![0]);
        assert_eq!(factors("Q8"), vec![2, 2]);
        assert_eq!(factors("genus2"), vec![0, 0, 0, 0]);
        assert_eq!(factors("modular"), vec![6]);
    }
}
