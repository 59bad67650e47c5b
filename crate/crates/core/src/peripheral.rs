//! Generating sets for the intersection of an edge subgroup `P` with a
//! subgroup `Γ`, given the structural case that describes `Γ`.
//!
//! The caller supplies the case together with a finite-index subgroup `π₀`.
//! The maps in the case are checked (relators killed, retraction idempotent);
//! the group-theoretic hypotheses each case relies on cannot be checked and
//! are returned as assumptions.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::abelian::{integer_kernel, lattice_intersection_coefficients, IntMatrix};
use crate::certify::{run_single, SubgroupEntry};
use crate::decide::{commutation_test, Commutation};
use crate::enumerate::{Budget, Exhausted};
use crate::error::Error;
use crate::presentation::{DecoratedPresentation, GeneratorMap};
use crate::search::DerivationSearch;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeripheralCase {
    /// `Γ = Ker p` for `p: π₀ → Z`, given by its value on each generator of
    /// `π₀`.
    Fiber { sub: SubgroupEntry, fiber_map: Vec<i64> },
    /// `r: π₀ → π₀` is a retraction with image `Γ`.
    Retraction { sub: SubgroupEntry, retraction: GeneratorMap },
    /// As `Retraction`, with generators of the centre `Z₀` of `π₀` as words
    /// over `π₀`.
    ProductCenter { sub: SubgroupEntry, retraction: GeneratorMap, center: Vec<Word> },
}

impl PeripheralCase {
    pub fn subgroup(&self) -> &SubgroupEntry {
        match self {
            PeripheralCase::Fiber { sub, .. }
            | PeripheralCase::Retraction { sub, .. }
            | PeripheralCase::ProductCenter { sub, .. } => sub,
        }
    }
}

pub const ASSUME_ABELIAN_EDGE: &str = "edge subgroup is abelian";
pub const ASSUME_MAXIMAL_ABELIAN: &str = "edge subgroup meets the finite-index subgroup in a maximal abelian subgroup";
pub const ASSUME_ABELIAN_CENTRALIZERS: &str = "centralizers of nontrivial elements of the finite-index subgroup are abelian";
pub const ASSUME_CENTRAL_INTERSECTION: &str =
    "a non-commuting intersection lies in the centre of the finite-index subgroup (commutative transitivity)";
pub const ASSUME_CENTRE_DETECTED: &str = "the centre injects into the abelianization of the finite-index subgroup";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralIntersection {
    /// Generators of `P ∩ Γ` as words of the vertex group.
    pub generators: Vec<Word>,
    /// Generators of `P₀ = P ∩ π₀` as words of the vertex group.
    pub edge_part: Vec<Word>,
    pub assumptions: Vec<&'static str>,
    pub steps_used: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeripheralError {
    Invalid(Error),
    Exhausted(Exhausted),
}

impl From<Error> for PeripheralError {
    fn from(e: Error) -> Self {
        PeripheralError::Invalid(e)
    }
}

/// Computes generators of `⟨f_i(X_i)⟩ ∩ ⟨Y⟩` in the vertex group of `d`.
///
/// `Y` must lie in `π₀`; this is checked on the coset table.
pub fn intersect_peripheral(
    d: &DecoratedPresentation,
    i: usize,
    y: &[Word],
    case: &PeripheralCase,
    budget: Budget,
) -> Result<PeripheralIntersection, PeripheralError> {
    let p = d.vertex();
    let edge = d.edge_generators(i)?;
    let sub = case.subgroup();
    if sub.table.base() != p {
        return Err(Error::AlphabetMismatch { expected: p.rank(), found: sub.table.base().rank() }.into());
    }
    for w in y {
        p.check_word(w)?;
        if sub.table.coset_rep_of(w) != 0 {
            return Err(Error::NotASubgroup.into());
        }
    }
    // P₀ = P ∩ π₀, as ambient words and as words of π₀
    let orbit = sub.table.subgroup_orbit(edge);
    let p0: Vec<Word> = orbit.generator_words();
    let p0_local: Vec<Word> = p0.iter().map(|w| sub.table.rewrite(0, w).0).collect();
    let pi0 = &sub.presentation;
    match case {
        PeripheralCase::Fiber { fiber_map, .. } => {
            if fiber_map.len() != pi0.rank() {
                return Err(Error::DimensionMismatch { expected: pi0.rank(), found: fiber_map.len() }.into());
            }
            let value = |w: &Word| -> i64 {
                w.exponent_sums(pi0.rank()).iter().zip(fiber_map).map(|(e, v)| e * v).sum()
            };
            if let Some(k) = pi0.relators().iter().position(|r| value(r) != 0) {
                return Err(Error::RelatorNotKilled(k).into());
            }
            let row: Vec<i64> = p0_local.iter().map(value).collect();
            let m = IntMatrix::from_i64(1, row.len(), &row)?;
            let generators = integer_kernel(&m).iter().map(|k| power_product(&p0, k)).collect::<Result<_, _>>()?;
            Ok(PeripheralIntersection {
                generators,
                edge_part: p0,
                assumptions: alloc::vec![ASSUME_ABELIAN_EDGE],
                steps_used: 0,
            })
        }
        PeripheralCase::Retraction { retraction, .. } | PeripheralCase::ProductCenter { retraction, .. } => {
            if retraction.source_rank() != pi0.rank() || retraction.target_rank() != pi0.rank() {
                return Err(Error::AlphabetMismatch { expected: pi0.rank(), found: retraction.target_rank() }.into());
            }
            let mut steps = check_retraction(pi0, retraction, budget)?;
            let r_p0_local: Vec<Word> =
                p0_local.iter().map(|w| retraction.substitute(w)).collect::<Result<_, _>>()?;
            let r_p0: Vec<Word> =
                r_p0_local.iter().map(|w| sub.embedding.substitute(w)).collect::<Result<_, _>>()?;
            let remaining = Budget { max_steps: budget.max_steps.saturating_sub(steps), ..budget };
            let (c, used) = match commutation_test(p, &r_p0, &p0, remaining)? {
                Ok(x) => x,
                Err(e) => {
                    return Err(PeripheralError::Exhausted(Exhausted { steps_used: steps + e.steps_used, ..e }))
                }
            };
            steps += used;
            let commute = matches!(c, Commutation::Commute(_));
            let (generators, assumptions) = match (case, commute) {
                (_, true) => (r_p0, alloc::vec![ASSUME_MAXIMAL_ABELIAN]),
                (PeripheralCase::Retraction { .. }, false) => (Vec::new(), alloc::vec![ASSUME_ABELIAN_CENTRALIZERS]),
                (PeripheralCase::ProductCenter { center, .. }, false) => {
                    (central_part(pi0, sub, &r_p0_local, center)?, alloc::vec![ASSUME_CENTRAL_INTERSECTION, ASSUME_CENTRE_DETECTED])
                }
                (PeripheralCase::Fiber { .. }, false) => unreachable!(),
            };
            let mut assumptions = assumptions;
            assumptions.insert(0, ASSUME_ABELIAN_EDGE);
            Ok(PeripheralIntersection { generators, edge_part: p0, assumptions, steps_used: steps })
        }
    }
}

/// `r(P₀) ∩ Z₀` read off in the abelianization of `π₀`, as ambient words.
fn central_part(
    pi0: &crate::presentation::Presentation,
    sub: &SubgroupEntry,
    r_p0_local: &[Word],
    center: &[Word],
) -> Result<Vec<Word>, Error> {
    let dim = pi0.rank();
    let vec_of = |w: &Word| w.exponent_sums(dim).into_iter().map(BigInt::from).collect::<Vec<_>>();
    let l1: Vec<Vec<BigInt>> = r_p0_local.iter().map(vec_of).collect();
    let l2: Vec<Vec<BigInt>> = center.iter().map(vec_of).collect();
    let rel: Vec<Vec<BigInt>> = pi0.relators().iter().map(vec_of).collect();
    let coeffs = lattice_intersection_coefficients(&l1, &l2, &rel, dim)?;
    let mut out = Vec::new();
    for c in coeffs {
        let w = power_product(r_p0_local, &c)?;
        let w = sub.embedding.substitute(&w)?;
        if !w.is_empty() && !out.contains(&w) {
            out.push(w);
        }
    }
    Ok(out)
}

/// `Π gⱼ^{kⱼ}` in the given order.
fn power_product(gens: &[Word], k: &[BigInt]) -> Result<Word, Error> {
    let mut w = Word::empty();
    for (g, e) in gens.iter().zip(k) {
        let e = e.to_i64().ok_or(Error::DimensionMismatch { expected: 64, found: e.bits() as usize })?;
        if e != 0 {
            w = w.mul(&g.pow(e));
        }
    }
    Ok(w)
}

/// Witnesses that `r` kills the relators of `π₀` and that `r ∘ r = r`.
fn check_retraction(
    pi0: &crate::presentation::Presentation,
    r: &GeneratorMap,
    budget: Budget,
) -> Result<u64, PeripheralError> {
    let mut searches = Vec::new();
    for rel in pi0.relators() {
        searches.push(DerivationSearch::triviality(pi0.relators(), r.substitute(rel)?));
    }
    for img in r.images() {
        let twice = r.substitute(img)?;
        searches.push(DerivationSearch::triviality(pi0.relators(), twice.mul(&img.inverse())));
    }
    match run_single(searches, budget) {
        Ok((_, steps)) => Ok(steps),
        Err(e) => Err(PeripheralError::Exhausted(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{Decoration, Presentation};
    use alloc::vec;

    fn comm(a: usize, b: usize) -> Word {
        Word::from_powers(&[(a, 1), (b, 1), (a, -1), (b, -1)])
    }

    fn decorated(p: &Presentation, edge: Vec<Word>) -> DecoratedPresentation {
        let names: Vec<alloc::string::String> = (0..edge.len()).map(|i| alloc::format!("h{}", i)).collect();
        let e = Presentation::new(Some("P"), names, vec![]).unwrap();
        let inclusion = GeneratorMap::new(&e, p, edge).unwrap();
        DecoratedPresentation::new(p.clone(), vec![Decoration { presentation: e, inclusion }]).unwrap()
    }

    #[test]
    fn fiber_kernel() {
        let p = Presentation::from_names("Z2", &["a", "b"], vec![comm(0, 1)]).unwrap();
        let d = decorated(&p, vec![Word::generator(0), Word::generator(1)]);
        let sub = SubgroupEntry::whole(&p);
        let case = PeripheralCase::Fiber { sub, fiber_map: vec![1, 0] };
        let r = intersect_peripheral(&d, 0, &[Word::generator(1)], &case, Budget::steps(1_000)).unwrap();
        assert_eq!(r.generators, vec![Word::generator(1)]);
    }

    #[test]
    fn identity_retraction() {
        let p = Presentation::from_names("Z2", &["a", "b"], vec![comm(0, 1)]).unwrap();
        let d = decorated(&p, vec![Word::generator(0)]);
        let sub = SubgroupEntry::whole(&p);
        let retraction = GeneratorMap::identity(2);
        let case = PeripheralCase::Retraction { sub, retraction };
        let y = vec![Word::generator(0), Word::generator(1)];
        let r = intersect_peripheral(&d, 0, &y, &case, Budget::steps(100_000).with_max_degree(6)).unwrap();
        assert_eq!(r.generators, vec![Word::generator(0)]);
        assert!(r.assumptions.contains(&ASSUME_MAXIMAL_ABELIAN));
    }

    #[test]
    fn product_centre() {
        // ⟨a, b, t | [a,t], [b,t]⟩ = F(a,b) × ⟨t⟩, P = ⟨a, t⟩, r: a ↦ b
        let p = Presentation::from_names("FxZ", &["a", "b", "t"], vec![comm(0, 2), comm(1, 2)]).unwrap();
        let d = decorated(&p, vec![Word::generator(0), Word::generator(2)]);
        let sub = SubgroupEntry::whole(&p);
        let retraction =
            GeneratorMap::from_ranks(3, 3, vec![Word::generator(1), Word::generator(1), Word::generator(2)]).unwrap();
        let case = PeripheralCase::ProductCenter { sub, retraction, center: vec![Word::generator(2)] };
        let y = vec![Word::generator(1), Word::generator(2)];
        let r = intersect_peripheral(&d, 0, &y, &case, Budget::steps(1_000_000).with_max_degree(6)).unwrap();
        assert_eq!(r.generators, vec![Word::generator(2)]);
    }
}
