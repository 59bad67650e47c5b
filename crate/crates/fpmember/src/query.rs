//! Query records and their dispatch to the decision procedures.

use fpmember_core::certify::{enum_finite_index_subgroups_up_to, find_isomorphism, SubgroupEntry};
use fpmember_core::cosets::coset_table;
use fpmember_core::decide::{coset_intersection_witness, decide_double_coset, decide_membership, decide_word};
use fpmember_core::decide::CosetIntersection;
use fpmember_core::enumerate::{Advance, Enumeration};
use fpmember_core::peripheral::{intersect_peripheral, PeripheralCase, PeripheralError};
use fpmember_core::presentation::Decoration;
use fpmember_core::quotient::{enum_sym_homs, MarkedSubgroup};
use fpmember_core::witness::ClosureFactor;
use fpmember_core::{
    Budget, Certificate, Claim, DecoratedPresentation, Error, FiniteQuotient, GeneratorMap, Outcome, Perm,
    Presentation, QuotientCertificate, WitnessedElement, Word,
};

use crate::certificate::{
    CertificateFile, ClaimData, FactorData, IntersectionData, IsoData, QueryEcho, QuotientData, SubgroupData,
    WitnessData, VERSION,
};
use crate::syntax::format_presentation;

/// Structural data for a peripheral intersection query. Words in the case
/// are over the Reidemeister–Schreier generators of the finite-index
/// subgroup given by `images` (the stabilizer of the first point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralQuery {
    pub edge: Vec<Word>,
    pub images: Vec<Perm>,
    pub case: PeripheralSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeripheralSpec {
    Fiber(Vec<i64>),
    Retraction(Vec<Word>),
    ProductCenter { retraction: Vec<Word>, center: Vec<Word> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryKind {
    Word { w: Word },
    Member { x: Vec<Word>, z: Word },
    DoubleCoset { x: Vec<Word>, y: Vec<Word>, z: Word },
    /// Is `a⟨X⟩ ∩ ⟨Y⟩` nonempty?
    CosetWitness { x: Vec<Word>, y: Vec<Word>, a: Word },
    FindIso { target: Presentation },
    Subgroups { max_index: usize },
    SymHoms { degree: usize },
    IntersectPeripheral { y: Vec<Word>, data: PeripheralQuery },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryRecord {
    pub presentation: Presentation,
    pub kind: QueryKind,
    pub budget: Budget,
}

#[derive(Debug, thiserror::Error)]
pub enum QueryError {
    #[error("{0}")]
    Invalid(Error),
}

impl From<Error> for QueryError {
    fn from(e: Error) -> Self {
        QueryError::Invalid(e)
    }
}

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;

/// Exit status for a finished query.
pub fn exit_code(c: &CertificateFile) -> i32 {
    if c.outcome == "exhausted" {
        EXIT_EXHAUSTED
    } else {
        EXIT_DECIDED
    }
}

pub(crate) fn signed(w: &Word) -> Vec<i64> {
    w.letters().iter().map(|l| (l.generator() as i64 + 1) * l.sign() as i64).collect()
}

pub(crate) fn factors(p: &Presentation, fs: &[ClosureFactor]) -> Vec<FactorData> {
    fs.iter()
        .map(|f| FactorData { conjugator: p.format_word(&f.conjugator), relator_index: f.relator + 1, sign: f.sign() })
        .collect()
}

fn witness(p: &Presentation, w: &WitnessedElement) -> WitnessData {
    WitnessData {
        element: p.format_word(&w.word),
        subgroup_word: signed(&w.subgroup_word),
        closure_factors: factors(p, &w.closure),
        right_subgroup_word: Vec::new(),
        intersection_element: None,
    }
}

fn one_line(g: &Perm) -> Vec<usize> {
    g.to_one_line()
}

fn quotient(c: &QuotientCertificate) -> QuotientData {
    let claim = match c.claim {
        Claim::NotIdentity => ClaimData::NotIdentity,
        Claim::SubgroupOrbit { point } => ClaimData::SubgroupOrbit { point: point + 1 },
        Claim::SubgroupImage => ClaimData::SubgroupImage,
        Claim::DoubleCosetOrbit { point } => ClaimData::DoubleCosetOrbit { point: point + 1 },
        Claim::DoubleCosetImage => ClaimData::DoubleCosetImage,
    };
    QuotientData { degree: c.quotient.degree(), images: c.quotient.images().iter().map(one_line).collect(), claim }
}

fn words(p: &Presentation, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| p.format_word(w)).collect()
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Member => "member",
        Outcome::NonMember => "non_member",
        Outcome::Trivial => "trivial",
        Outcome::NonTrivial => "non_trivial",
        Outcome::Exhausted => "exhausted",
    }
}

impl QueryRecord {
    pub fn new(presentation: Presentation, kind: QueryKind, budget: Budget) -> Self {
        QueryRecord { presentation, kind, budget }
    }

    /// Checks that every argument is spelled in the presentation's alphabet.
    pub fn validate(&self) -> Result<(), Error> {
        let p = &self.presentation;
        let all = |ws: &[Word]| ws.iter().try_for_each(|w| p.check_word(w));
        match &self.kind {
            QueryKind::Word { w } => p.check_word(w),
            QueryKind::Member { x, z } => all(x).and(p.check_word(z)),
            QueryKind::DoubleCoset { x, y, z } => all(x).and(all(y)).and(p.check_word(z)),
            QueryKind::CosetWitness { x, y, a } => all(x).and(all(y)).and(p.check_word(a)),
            QueryKind::FindIso { .. } | QueryKind::Subgroups { .. } | QueryKind::SymHoms { .. } => Ok(()),
            QueryKind::IntersectPeripheral { y, data } => all(y).and(all(&data.edge)),
        }
    }

    fn echo(&self) -> QueryEcho {
        let p = &self.presentation;
        let mut e = QueryEcho {
            kind: String::new(),
            presentation: format_presentation(p),
            target: None,
            subgroup: Vec::new(),
            right_subgroup: Vec::new(),
            word: None,
            max_index: None,
            budget: self.budget.max_steps,
            max_degree: self.budget.max_quotient_degree,
        };
        let kind = match &self.kind {
            QueryKind::Word { w } => {
                e.word = Some(p.format_word(w));
                "word"
            }
            QueryKind::Member { x, z } => {
                e.subgroup = words(p, x);
                e.word = Some(p.format_word(z));
                "member"
            }
            QueryKind::DoubleCoset { x, y, z } => {
                e.subgroup = words(p, x);
                e.right_subgroup = words(p, y);
                e.word = Some(p.format_word(z));
                "double-coset"
            }
            QueryKind::CosetWitness { x, y, a } => {
                e.subgroup = words(p, x);
                e.right_subgroup = words(p, y);
                e.word = Some(p.format_word(a));
                "coset-witness"
            }
            QueryKind::FindIso { target } => {
                e.target = Some(format_presentation(target));
                "find-iso"
            }
            QueryKind::Subgroups { max_index } => {
                e.max_index = Some(*max_index);
                "subgroups"
            }
            QueryKind::SymHoms { degree } => {
                e.max_degree = Some(*degree);
                "homomorphisms"
            }
            QueryKind::IntersectPeripheral { y, data } => {
                e.subgroup = words(p, &data.edge);
                e.right_subgroup = words(p, y);
                "intersect-peripheral"
            }
        };
        e.kind = kind.to_string();
        e
    }
}

fn file(echo: QueryEcho, outcome: &str, steps_used: u64) -> CertificateFile {
    CertificateFile {
        query: echo,
        outcome: outcome.to_string(),
        witness: None,
        quotient: None,
        iso: None,
        subgroups: None,
        homomorphisms: None,
        intersection: None,
        assumptions: Vec::new(),
        steps_used,
        version: VERSION.to_string(),
    }
}

fn subgroup_entry(p: &Presentation, images: &[Perm]) -> Result<SubgroupEntry, Error> {
    let q = FiniteQuotient::new(p, images.to_vec())?.with_marked(MarkedSubgroup { generators: Vec::new(), point: Some(0) });
    Ok(SubgroupEntry::from_table(coset_table(p, &q)?))
}

pub(crate) fn subgroup_data(base: &Presentation, e: &SubgroupEntry) -> SubgroupData {
    let ambient: Vec<Word> = e.embedding.images().to_vec();
    SubgroupData {
        index: e.index,
        images: e.source_quotient.images().iter().map(one_line).collect(),
        presentation: format_presentation(&e.presentation),
        generators: words(base, &ambient),
        relator_witnesses: e.relator_witnesses.iter().map(|w| factors(base, w)).collect(),
    }
}

/// Runs the query and packages the result. Errors are validation failures
/// only; running out of budget gives the outcome `exhausted`.
pub fn run_query(q: &QueryRecord) -> Result<CertificateFile, QueryError> {
    q.validate()?;
    let p = &q.presentation;
    let echo = q.echo();
    let decision_file = |d: fpmember_core::Decision| {
        let mut f = file(echo.clone(), outcome_name(d.outcome), d.steps_used);
        match &d.certificate {
            Some(Certificate::Membership(w)) => f.witness = Some(witness(p, w)),
            Some(Certificate::DoubleCoset(w)) => {
                f.witness = Some(WitnessData {
                    element: p.format_word(&w.word),
                    subgroup_word: signed(&w.left),
                    closure_factors: factors(p, &w.closure),
                    right_subgroup_word: signed(&w.right),
                    intersection_element: None,
                })
            }
            Some(Certificate::Quotient(c)) => f.quotient = Some(quotient(c)),
            None => {}
        }
        f
    };
    Ok(match &q.kind {
        QueryKind::Word { w } => decision_file(decide_word(p, w, q.budget)?),
        QueryKind::Member { x, z } => decision_file(decide_membership(p, x, z, q.budget)?),
        QueryKind::DoubleCoset { x, y, z } => decision_file(decide_double_coset(p, x, y, z, q.budget)?),
        QueryKind::CosetWitness { x, y, a } => match coset_intersection_witness(p, x, y, a, q.budget)? {
            Ok((CosetIntersection::Nonempty { element, factorization }, steps)) => {
                let mut f = file(echo, "nonempty", steps);
                f.witness = Some(WitnessData {
                    element: p.format_word(&factorization.word),
                    subgroup_word: signed(&factorization.left),
                    closure_factors: factors(p, &factorization.closure),
                    right_subgroup_word: signed(&factorization.right),
                    intersection_element: Some(p.format_word(&element)),
                });
                f
            }
            Ok((CosetIntersection::Empty(c), steps)) => {
                let mut f = file(echo, "empty", steps);
                f.quotient = Some(quotient(&c));
                f
            }
            Err(e) => file(echo, "exhausted", e.steps_used),
        },
        QueryKind::FindIso { target } => match find_isomorphism(p, target, q.budget) {
            Ok(c) => {
                let mut f = file(echo, "isomorphic", c.steps_used);
                let wl = |pres: &Presentation, ws: &[WitnessedElement]| ws.iter().map(|w| witness(pres, w)).collect();
                f.iso = Some(IsoData {
                    forward: words(target, c.forward.images()),
                    backward: words(p, c.backward.images()),
                    forward_relators: wl(target, &c.forward_relators),
                    backward_relators: wl(p, &c.backward_relators),
                    source_round_trip: wl(p, &c.source_round_trip),
                    target_round_trip: wl(target, &c.target_round_trip),
                });
                f
            }
            Err(e) => file(echo, "exhausted", e.steps_used),
        },
        QueryKind::Subgroups { max_index } => {
            let mut e = enum_finite_index_subgroups_up_to(p, *max_index);
            let mut found = Vec::new();
            let mut steps = 0;
            let mut finished = false;
            while steps < q.budget.max_steps {
                steps += 1;
                match e.advance() {
                    Advance::Yield(s) => found.push(subgroup_data(p, &s)),
                    Advance::Working => {}
                    Advance::Finished => {
                        finished = true;
                        break;
                    }
                }
            }
            let mut f = file(echo, if finished { "enumerated" } else { "exhausted" }, steps);
            f.subgroups = Some(found);
            f
        }
        QueryKind::SymHoms { degree } => {
            let homs = enum_sym_homs(p, *degree);
            let mut f = file(echo, "enumerated", 0);
            f.homomorphisms = Some(homs.iter().map(|h| h.images().iter().map(one_line).collect()).collect());
            f
        }
        QueryKind::IntersectPeripheral { y, data } => {
            let sub = subgroup_entry(p, &data.images)?;
            let edge_pres = Presentation::new(
                Some("P"),
                (1..=data.edge.len()).map(|i| format!("h{}", i)).collect(),
                Vec::new(),
            )?;
            let inclusion = GeneratorMap::new(&edge_pres, p, data.edge.clone())?;
            let d = DecoratedPresentation::new(p.clone(), vec![Decoration { presentation: edge_pres, inclusion }])?;
            let pi0 = sub.presentation.clone();
            let case = match &data.case {
                PeripheralSpec::Fiber(m) => PeripheralCase::Fiber { sub, fiber_map: m.clone() },
                PeripheralSpec::Retraction(r) => {
                    PeripheralCase::Retraction { sub, retraction: GeneratorMap::new(&pi0, &pi0, r.clone())? }
                }
                PeripheralSpec::ProductCenter { retraction, center } => PeripheralCase::ProductCenter {
                    sub,
                    retraction: GeneratorMap::new(&pi0, &pi0, retraction.clone())?,
                    center: center.clone(),
                },
            };
            match intersect_peripheral(&d, 0, y, &case, q.budget) {
                Ok(r) => {
                    let mut f = file(echo, "intersection", r.steps_used);
                    f.intersection = Some(IntersectionData {
                        generators: words(p, &r.generators),
                        edge_part: words(p, &r.edge_part),
                        images: data.images.iter().map(one_line).collect(),
                    });
                    f.assumptions = r.assumptions.iter().map(|s| s.to_string()).collect();
                    f
                }
                Err(PeripheralError::Exhausted(e)) => file(echo, "exhausted", e.steps_used),
                Err(PeripheralError::Invalid(e)) => return Err(e.into()),
            }
        }
    })
}
