//! The certificate file: one JSON document per query.
//!
//! Words are stored in the textual syntax of the query's presentation.
//! Subgroup words are lists of signed 1-based indices into the relevant
//! generator list (`-2` is the inverse of the second generator), relator
//! indices are 1-based and permutations are 1-based one-line arrays.

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub query: QueryEcho,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso: Option<IsoData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<Vec<SubgroupData>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homomorphisms: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionData>,
    pub assumptions: Vec<String>,
    pub steps_used: u64,
    pub version: String,
}

/// The query as run, with every argument in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryEcho {
    pub kind: String,
    pub presentation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroup: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right_subgroup: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_index: Option<usize>,
    pub budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorData {
    pub conjugator: String,
    pub relator_index: usize,
    pub sign: i32,
}

/// `element = subgroup_word · Π closure_factors · right_subgroup_word`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessData {
    pub element: String,
    pub subgroup_word: Vec<i64>,
    pub closure_factors: Vec<FactorData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right_subgroup_word: Vec<i64>,
    /// For coset-witness queries: the element of `a⟨X⟩ ∩ ⟨Y⟩`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_element: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimData {
    NotIdentity,
    SubgroupOrbit { point: usize },
    SubgroupImage,
    DoubleCosetOrbit { point: usize },
    DoubleCosetImage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientData {
    pub degree: usize,
    pub images: Vec<Vec<usize>>,
    pub claim: ClaimData,
}

/// Relator and round-trip witnesses are closure products with their value
/// in `element`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoData {
    pub forward: Vec<String>,
    pub backward: Vec<String>,
    pub forward_relators: Vec<WitnessData>,
    pub backward_relators: Vec<WitnessData>,
    pub source_round_trip: Vec<WitnessData>,
    pub target_round_trip: Vec<WitnessData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupData {
    pub index: usize,
    /// Action on the cosets; the subgroup is the stabilizer of point 1.
    pub images: Vec<Vec<usize>>,
    pub presentation: String,
    /// Ambient word of each generator of `presentation`.
    pub generators: Vec<String>,
    /// For each relator of `presentation`, a closure product over the ambient
    /// relators equal to its embedded image.
    pub relator_witnesses: Vec<Vec<FactorData>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionData {
    pub generators: Vec<String>,
    pub edge_part: Vec<String>,
    /// Finite-index subgroup the case refers to, as in [`SubgroupData`].
    pub images: Vec<Vec<usize>>,
}

impl CertificateFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("query: {} over {}\n", self.query.kind, self.query.presentation));
        if let Some(w) = &self.query.word {
            out.push_str(&format!("word: {}\n", w));
        }
        if !self.query.subgroup.is_empty() {
            out.push_str(&format!("subgroup: {}\n", self.query.subgroup.join(", ")));
        }
        if !self.query.right_subgroup.is_empty() {
            out.push_str(&format!("right subgroup: {}\n", self.query.right_subgroup.join(", ")));
        }
        out.push_str(&format!("outcome: {}\n", self.outcome));
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "witness: subgroup word {:?}, {} closure factors",
                w.subgroup_word,
                w.closure_factors.len()
            ));
            if !w.right_subgroup_word.is_empty() {
                out.push_str(&format!(", right subgroup word {:?}", w.right_subgroup_word));
            }
            out.push('\n');
            if let Some(e) = &w.intersection_element {
                out.push_str(&format!("intersection element: {}\n", e));
            }
        }
        if let Some(q) = &self.quotient {
            out.push_str(&format!("quotient of degree {}: {:?} ({:?})\n", q.degree, q.images, q.claim));
        }
        if let Some(iso) = &self.iso {
            out.push_str(&format!("forward: {}\n", iso.forward.join(", ")));
            out.push_str(&format!("backward: {}\n", iso.backward.join(", ")));
        }
        if let Some(subs) = &self.subgroups {
            for s in subs {
                out.push_str(&format!("index {}: {}\n", s.index, s.presentation));
            }
        }
        if let Some(h) = &self.homomorphisms {
            out.push_str(&format!("homomorphisms: {}\n", h.len()));
        }
        if let Some(i) = &self.intersection {
            out.push_str(&format!("intersection: {}\n", i.generators.join(", ")));
        }
        for a in &self.assumptions {
            out.push_str(&format!("assuming: {}\n", a));
        }
        out.push_str(&format!("steps: {}\n", self.steps_used));
        out
    }
}
