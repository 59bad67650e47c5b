//! Certification searches: isomorphisms, retractions, equal subgroups,
//! normality, quotient isomorphisms and the list of finite-index subgroups.
//!
//! Map searches enumerate candidate generator assignments by total image
//! length. A candidate is rejected outright when it is inconsistent with a
//! small permutation representation of either group, or, on a side without
//! relators, when a requirement word is not freely trivial. Surviving
//! candidates wait in a round-robin pool where each requirement
//! (`φ(r) ∈ ⟪R′⟫` and so on) is certified by its own derivation search. The
//! candidate stream and the pool share the budget step for step.

use alloc::vec::Vec;

use crate::cosets::{coset_table, CosetTable, SchreierPresentation};
use crate::enumerate::{Advance, Budget, Enumeration, Exhausted, WordTuples};
use crate::error::Error;
use crate::perm::Perm;
use crate::presentation::{GeneratorMap, Presentation};
use crate::quotient::{enum_sym_homs, ActionSearch, FiniteQuotient, MarkedSubgroup, Pool};
use crate::search::{Derivation, DerivationSearch};
use crate::witness::{ClosureFactor, WitnessedElement};
use crate::word::{Letter, Word};

/// Witnessed isomorphism `φ: P → P′`, `ψ: P′ → P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub forward: GeneratorMap,
    pub backward: GeneratorMap,
    /// `φ(r) ∈ ⟪R′⟫` for each relator of `P`.
    pub forward_relators: Vec<WitnessedElement>,
    /// `ψ(r′) ∈ ⟪R⟫` for each relator of `P′`.
    pub backward_relators: Vec<WitnessedElement>,
    /// `ψ(φ(a))·a⁻¹ ∈ ⟪R⟫` for each generator of `P`.
    pub source_round_trip: Vec<WitnessedElement>,
    /// `φ(ψ(a′))·a′⁻¹ ∈ ⟪R′⟫` for each generator of `P′`.
    pub target_round_trip: Vec<WitnessedElement>,
    pub steps_used: u64,
    pub candidates_tried: u64,
}

impl IsoCertificate {
    pub fn verify(&self, p: &Presentation, q: &Presentation) -> bool {
        let (f, g) = (&self.forward, &self.backward);
        if f.source_rank() != p.rank() || f.target_rank() != q.rank() {
            return false;
        }
        if g.source_rank() != q.rank() || g.target_rank() != p.rank() {
            return false;
        }
        relators_witnessed(f, p, q, &self.forward_relators)
            && relators_witnessed(g, q, p, &self.backward_relators)
            && round_trip_witnessed(f, g, p, &self.source_round_trip)
            && round_trip_witnessed(g, f, q, &self.target_round_trip)
    }
}

/// `f: P → P′` with left inverse `g: P′ → P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionCertificate {
    pub embedding: GeneratorMap,
    pub retraction: GeneratorMap,
    /// `f(r) ∈ ⟪R′⟫`
    pub embedding_relators: Vec<WitnessedElement>,
    /// `g(r′) ∈ ⟪R⟫`
    pub retraction_relators: Vec<WitnessedElement>,
    /// `g(f(a))·a⁻¹ ∈ ⟪R⟫`
    pub round_trip: Vec<WitnessedElement>,
    pub steps_used: u64,
    pub candidates_tried: u64,
}

impl RetractionCertificate {
    pub fn verify(&self, p: &Presentation, q: &Presentation) -> bool {
        let (f, g) = (&self.embedding, &self.retraction);
        f.source_rank() == p.rank()
            && f.target_rank() == q.rank()
            && g.source_rank() == q.rank()
            && g.target_rank() == p.rank()
            && relators_witnessed(f, p, q, &self.embedding_relators)
            && relators_witnessed(g, q, p, &self.retraction_relators)
            && round_trip_witnessed(f, g, p, &self.round_trip)
    }

    /// Closure product over the relators of `P` whose value is
    /// `g(f(w))·w⁻¹`.
    pub fn round_trip_closure(&self, w: &Word) -> Vec<ClosureFactor> {
        round_trip_closure(&self.embedding, &self.retraction, &self.round_trip, w)
    }
}

fn relators_witnessed(f: &GeneratorMap, p: &Presentation, q: &Presentation, w: &[WitnessedElement]) -> bool {
    w.len() == p.relators().len()
        && p.relators().iter().zip(w).all(|(r, e)| {
            e.subgroup_word.is_empty() && f.substitute(r).ok().as_ref() == Some(&e.word) && e.verify(q.relators(), &[])
        })
}

fn round_trip_witnessed(f: &GeneratorMap, g: &GeneratorMap, p: &Presentation, w: &[WitnessedElement]) -> bool {
    w.len() == p.rank()
        && (0..p.rank()).zip(w).all(|(a, e)| {
            let expect = f.then(g).map(|fg| fg.images()[a].mul(&Word::generator(a).inverse()));
            e.subgroup_word.is_empty() && expect.ok().as_ref() == Some(&e.word) && e.verify(p.relators(), &[])
        })
}

/// Given witnesses `dₐ = g(f(a))·a⁻¹`, a closure product `K_w` with
/// `g(f(w)) = K_w · w` in the free group.
pub fn round_trip_closure(
    f: &GeneratorMap,
    g: &GeneratorMap,
    witnesses: &[WitnessedElement],
    w: &Word,
) -> Vec<ClosureFactor> {
    let _ = (f, g);
    let mut k: Vec<ClosureFactor> = Vec::new();
    // process right to left: g f(l·v) = D_l-part · l · K_v · v
    for &l in w.letters().iter().rev() {
        let a = l.generator();
        let d = &witnesses[a].closure;
        let letter = Word::letter(l);
        let mut next: Vec<ClosureFactor>;
        if l.is_inverse() {
            // g f(a⁻¹) = a⁻¹ · D⁻¹ = (a⁻¹ D⁻¹ a) · a⁻¹
            next = crate::witness::closure_conjugate(&crate::witness::closure_inverse(d), &letter);
        } else {
            next = d.clone();
        }
        next.extend(crate::witness::closure_conjugate(&k, &letter));
        k = next;
    }
    k
}

/// Both `X ⊂ ⟨Y, ⟪R⟫⟩` and `Y ⊂ ⟨X, ⟪R⟫⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameSubgroupCertificate {
    /// Each `x`, over the letters of `Y`.
    pub left_in_right: Vec<WitnessedElement>,
    /// Each `y`, over the letters of `X`.
    pub right_in_left: Vec<WitnessedElement>,
    pub steps_used: u64,
}

impl SameSubgroupCertificate {
    pub fn verify(&self, p: &Presentation, x: &[Word], y: &[Word]) -> bool {
        self.left_in_right.len() == x.len()
            && self.right_in_left.len() == y.len()
            && x.iter().zip(&self.left_in_right).all(|(w, e)| &e.word == w && e.verify(p.relators(), y))
            && y.iter().zip(&self.right_in_left).all(|(w, e)| &e.word == w && e.verify(p.relators(), x))
    }
}

/// `a^ε · x · a^-ε ∈ ⟨X, ⟪R⟫⟩` for every generator `a`, sign `ε` and `x ∈ X`,
/// in that nesting order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityCertificate {
    pub conjugates: Vec<WitnessedElement>,
    pub steps_used: u64,
}

impl NormalityCertificate {
    pub fn verify(&self, p: &Presentation, x: &[Word]) -> bool {
        let words = normality_words(p, x);
        words.len() == self.conjugates.len()
            && words.iter().zip(&self.conjugates).all(|(w, e)| &e.word == w && e.verify(p.relators(), x))
    }
}

fn normality_words(p: &Presentation, x: &[Word]) -> Vec<Word> {
    let mut out = Vec::new();
    for a in 0..p.rank() {
        for inverse in [false, true] {
            let c = Word::letter(Letter::new(a, inverse));
            for w in x {
                out.push(w.conjugate_by(&c));
            }
        }
    }
    out
}

/// `⟨A | R ∪ X⟩ ≅ Q`: the quotient of the group by the normal closure of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientIsoCertificate {
    pub augmented: Presentation,
    pub iso: IsoCertificate,
}

impl QuotientIsoCertificate {
    pub fn verify(&self, p: &Presentation, x: &[Word], q: &Presentation) -> bool {
        match p.with_extra_relators(x) {
            Ok(aug) => aug == self.augmented && self.iso.verify(&aug, q),
            Err(_) => false,
        }
    }
}

/// A finite-index subgroup, presented by Reidemeister–Schreier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupEntry {
    pub presentation: Presentation,
    pub embedding: GeneratorMap,
    pub index: usize,
    pub source_quotient: FiniteQuotient,
    pub table: CosetTable,
    /// Closure products over the ambient relators equal to the embedded
    /// subgroup relators.
    pub relator_witnesses: Vec<Vec<ClosureFactor>>,
}

impl SubgroupEntry {
    pub fn from_table(table: CosetTable) -> Self {
        let rs: SchreierPresentation = table.reidemeister_schreier();
        let relator_witnesses = rs.relator_witnesses(&table);
        SubgroupEntry {
            presentation: rs.presentation,
            embedding: rs.embedding,
            index: table.len(),
            source_quotient: table.quotient().clone(),
            table,
            relator_witnesses,
        }
    }

    /// The subgroup of index 1: the whole group.
    pub fn whole(p: &Presentation) -> Self {
        let q = FiniteQuotient::unchecked(1, (0..p.rank()).map(|_| Perm::identity(1)).collect())
            .with_marked(MarkedSubgroup { generators: Vec::new(), point: Some(0) });
        Self::from_table(coset_table(p, &q).expect("trivial quotient"))
    }
}

/// Stream of all finite-index subgroups in increasing index, each exactly once.
pub struct FiniteIndexSubgroups {
    base: Presentation,
    tables: ActionSearch,
}

pub fn enum_finite_index_subgroups(p: &Presentation) -> FiniteIndexSubgroups {
    FiniteIndexSubgroups { base: p.clone(), tables: ActionSearch::new(p, &[], None) }
}

/// Same, stopping after index `max_index`.
pub fn enum_finite_index_subgroups_up_to(p: &Presentation, max_index: usize) -> FiniteIndexSubgroups {
    FiniteIndexSubgroups { base: p.clone(), tables: ActionSearch::new(p, &[], Some(max_index)) }
}

impl Enumeration for FiniteIndexSubgroups {
    type Item = SubgroupEntry;

    fn advance(&mut self) -> Advance<SubgroupEntry> {
        self.tables.advance().map(|action| {
            let q = action.to_quotient().with_marked(MarkedSubgroup { generators: Vec::new(), point: Some(0) });
            let table = coset_table(&self.base, &q).expect("action tables give valid quotients");
            let mut entry = SubgroupEntry::from_table(table);
            let mut gens: Vec<Perm> = Vec::new();
            for w in entry.embedding.images() {
                let g = q.image(w);
                if !g.is_identity() && !gens.contains(&g) {
                    gens.push(g);
                }
            }
            entry.source_quotient = q.with_marked(MarkedSubgroup { generators: gens, point: Some(0) });
            entry
        })
    }
}

/// Small permutation representations of a presentation, used to reject map
/// candidates cheaply. Degrees 2 and 3, skipped when brute force is too big.
fn filter_homs(p: &Presentation) -> Vec<FiniteQuotient> {
    let mut out = Vec::new();
    for (n, size) in [(2usize, 2u64), (3, 6)] {
        if size.saturating_pow(p.rank() as u32) <= 50_000 {
            out.extend(enum_sym_homs(p, n).into_iter().filter(|q| q.images().iter().any(|g| !g.is_identity())));
        }
    }
    out
}

fn compose_images(rho: &FiniteQuotient, map: &GeneratorMap) -> FiniteQuotient {
    FiniteQuotient::unchecked(rho.degree(), map.images().iter().map(|w| rho.image(w)).collect())
}

/// `ρ∘φ` kills every relator of `p`, for every `ρ` of the target.
fn consistent_hom(map: &GeneratorMap, p: &Presentation, target_homs: &[FiniteQuotient]) -> bool {
    target_homs.iter().all(|rho| compose_images(rho, map).check_relators(p.relators()).is_ok())
}

/// `ρ∘g∘f = ρ` on generators, for every `ρ` of the source.
fn consistent_round_trip(f: &GeneratorMap, g: &GeneratorMap, homs: &[FiniteQuotient]) -> bool {
    let fg = match f.then(g) {
        Ok(m) => m,
        Err(_) => return false,
    };
    homs.iter().all(|rho| fg.images().iter().enumerate().all(|(a, w)| rho.image(w) == rho.images()[a]))
}

struct Requirement {
    relators_of_source: bool,
    word: Word,
}

fn map_requirements(
    f: &GeneratorMap,
    g: &GeneratorMap,
    p: &Presentation,
    q: &Presentation,
    iso: bool,
) -> Option<Vec<Requirement>> {
    let mut reqs = Vec::new();
    // f(r) ∈ ⟪R′⟫
    for r in p.relators() {
        let w = f.substitute(r).ok()?;
        if q.relators().is_empty() && !w.is_empty() {
            return None;
        }
        reqs.push(Requirement { relators_of_source: false, word: w });
    }
    // g(r′) ∈ ⟪R⟫
    for r in q.relators() {
        let w = g.substitute(r).ok()?;
        if p.relators().is_empty() && !w.is_empty() {
            return None;
        }
        reqs.push(Requirement { relators_of_source: true, word: w });
    }
    let fg = f.then(g).ok()?;
    for a in 0..p.rank() {
        let w = fg.images()[a].mul(&Word::generator(a).inverse());
        if p.relators().is_empty() && !w.is_empty() {
            return None;
        }
        reqs.push(Requirement { relators_of_source: true, word: w });
    }
    if iso {
        let gf = g.then(f).ok()?;
        for a in 0..q.rank() {
            let w = gf.images()[a].mul(&Word::generator(a).inverse());
            if q.relators().is_empty() && !w.is_empty() {
                return None;
            }
            reqs.push(Requirement { relators_of_source: false, word: w });
        }
    }
    Some(reqs)
}

struct MapSearchResult {
    f: GeneratorMap,
    g: GeneratorMap,
    witnesses: Vec<WitnessedElement>,
    steps: u64,
    tried: u64,
}

fn map_pair_search(p: &Presentation, q: &Presentation, iso: bool, budget: Budget) -> Result<MapSearchResult, Exhausted> {
    let (m, n) = (p.rank(), q.rank());
    let mut ranks = alloc::vec![n; m];
    ranks.extend(core::iter::repeat(m).take(n));
    let mut tuples = WordTuples::new(ranks);
    let p_homs = filter_homs(p);
    let q_homs = filter_homs(q);
    let mut pool: Pool<(GeneratorMap, GeneratorMap)> = Pool::new();
    let mut tuples_done = false;
    let mut steps = 0u64;
    let mut tried = 0u64;
    while steps < budget.max_steps {
        if tuples_done && pool.is_empty() {
            break;
        }
        steps += 1;
        if !tuples_done && (steps % 2 == 1 || pool.is_empty()) {
            let t = match tuples.next_tuple() {
                Some(t) => t,
                None => {
                    tuples_done = true;
                    continue;
                }
            };
            tried += 1;
            let f = GeneratorMap::from_ranks(m, n, t[..m].to_vec()).expect("tuple over target alphabet");
            let g = GeneratorMap::from_ranks(n, m, t[m..].to_vec()).expect("tuple over source alphabet");
            if !consistent_hom(&f, p, &q_homs) || !consistent_hom(&g, q, &p_homs) {
                continue;
            }
            if !consistent_round_trip(&f, &g, &p_homs) || (iso && !consistent_round_trip(&g, &f, &q_homs)) {
                continue;
            }
            let reqs = match map_requirements(&f, &g, p, q, iso) {
                Some(r) => r,
                None => continue,
            };
            let searches = reqs
                .into_iter()
                .map(|r| {
                    let rels = if r.relators_of_source { p.relators() } else { q.relators() };
                    DerivationSearch::triviality(rels, r.word)
                })
                .collect();
            pool.push((f, g), searches);
        } else if let Some(((f, g), derivations)) = pool.step() {
            let witnesses = derivations.into_iter().map(Derivation::into_element).collect();
            return Ok(MapSearchResult { f, g, witnesses, steps, tried });
        }
    }
    Err(Exhausted { steps_used: steps, candidates_tried: tried })
}

/// Searches for an isomorphism `P → P′` with inverse, fully witnessed.
pub fn find_isomorphism(p: &Presentation, q: &Presentation, budget: Budget) -> Result<IsoCertificate, Exhausted> {
    let r = map_pair_search(p, q, true, budget)?;
    let mut w = r.witnesses.into_iter();
    let forward_relators = w.by_ref().take(p.relators().len()).collect();
    let backward_relators = w.by_ref().take(q.relators().len()).collect();
    let source_round_trip = w.by_ref().take(p.rank()).collect();
    let target_round_trip = w.collect();
    Ok(IsoCertificate {
        forward: r.f,
        backward: r.g,
        forward_relators,
        backward_relators,
        source_round_trip,
        target_round_trip,
        steps_used: r.steps,
        candidates_tried: r.tried,
    })
}

/// Searches for `f: P → P′` and `g: P′ → P` with `g ∘ f = id`.
pub fn find_retraction(p: &Presentation, q: &Presentation, budget: Budget) -> Result<RetractionCertificate, Exhausted> {
    let r = map_pair_search(p, q, false, budget)?;
    let mut w = r.witnesses.into_iter();
    let embedding_relators = w.by_ref().take(p.relators().len()).collect();
    let retraction_relators = w.by_ref().take(q.relators().len()).collect();
    let round_trip = w.collect();
    Ok(RetractionCertificate {
        embedding: r.f,
        retraction: r.g,
        embedding_relators,
        retraction_relators,
        round_trip,
        steps_used: r.steps,
        candidates_tried: r.tried,
    })
}

/// Certifies given maps as a retraction pair.
pub fn certify_retraction_pair(
    p: &Presentation,
    q: &Presentation,
    f: GeneratorMap,
    g: GeneratorMap,
    budget: Budget,
) -> Result<RetractionCertificate, Exhausted> {
    let reqs = map_requirements(&f, &g, p, q, false).ok_or(Exhausted { steps_used: 0, candidates_tried: 1 })?;
    let searches = reqs
        .into_iter()
        .map(|r| DerivationSearch::triviality(if r.relators_of_source { p.relators() } else { q.relators() }, r.word))
        .collect();
    let (derivations, steps) = run_single(searches, budget)?;
    let mut w = derivations.into_iter().map(Derivation::into_element);
    let embedding_relators = w.by_ref().take(p.relators().len()).collect();
    let retraction_relators = w.by_ref().take(q.relators().len()).collect();
    let round_trip = w.collect();
    Ok(RetractionCertificate {
        embedding: f,
        retraction: g,
        embedding_relators,
        retraction_relators,
        round_trip,
        steps_used: steps,
        candidates_tried: 1,
    })
}

/// Runs one list of searches round-robin until all succeed.
pub(crate) fn run_single(searches: Vec<DerivationSearch>, budget: Budget) -> Result<(Vec<Derivation>, u64), Exhausted> {
    let mut pool: Pool<()> = Pool::new();
    pool.push((), searches);
    let mut steps = 0;
    while steps < budget.max_steps && !pool.is_empty() {
        steps += 1;
        if let Some(((), d)) = pool.step() {
            return Ok((d, steps));
        }
    }
    Err(Exhausted { steps_used: steps, candidates_tried: 1 })
}

pub fn certify_same_subgroup(
    p: &Presentation,
    x: &[Word],
    y: &[Word],
    budget: Budget,
) -> Result<SameSubgroupCertificate, Exhausted> {
    let mut searches: Vec<DerivationSearch> =
        x.iter().map(|w| DerivationSearch::membership(p.relators(), y, w.clone())).collect();
    searches.extend(y.iter().map(|w| DerivationSearch::membership(p.relators(), x, w.clone())));
    let (d, steps) = run_single(searches, budget)?;
    let mut it = d.into_iter().map(Derivation::into_element);
    let left_in_right = it.by_ref().take(x.len()).collect();
    let right_in_left = it.collect();
    Ok(SameSubgroupCertificate { left_in_right, right_in_left, steps_used: steps })
}

/// Certifies that `⟨X⟩` is normal: every conjugate of an element of `X` by a
/// generator or its inverse lies in `⟨X, ⟪R⟫⟩`.
pub fn certify_normal(p: &Presentation, x: &[Word], budget: Budget) -> Result<NormalityCertificate, Exhausted> {
    let searches =
        normality_words(p, x).into_iter().map(|w| DerivationSearch::membership(p.relators(), x, w)).collect();
    let (d, steps) = run_single(searches, budget)?;
    Ok(NormalityCertificate { conjugates: d.into_iter().map(Derivation::into_element).collect(), steps_used: steps })
}

/// Certifies `⟨A | R ∪ X⟩ ≅ Q`.
pub fn certify_quotient_iso(
    p: &Presentation,
    x: &[Word],
    q: &Presentation,
    budget: Budget,
) -> Result<QuotientIsoCertificate, Exhausted> {
    let augmented = p.with_extra_relators(x).map_err(|_| Exhausted { steps_used: 0, candidates_tried: 0 })?;
    let iso = find_isomorphism(&augmented, q, budget)?;
    Ok(QuotientIsoCertificate { augmented, iso })
}

/// Checks a subgroup entry's presentation against its table: every relator
/// witness evaluates to the embedded relator.
pub fn check_subgroup_entry(entry: &SubgroupEntry, base: &Presentation) -> Result<(), Error> {
    for (i, (r, k)) in entry.presentation.relators().iter().zip(&entry.relator_witnesses).enumerate() {
        let img = entry.embedding.substitute(r)?;
        if img != crate::witness::closure_value(k, base.relators()) {
            return Err(Error::RelatorNotKilled(i));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn free_rank_one_iso() {
        let p = Presentation::free("A", &["a"]);
        let q = Presentation::free("B", &["b"]);
        let c = find_isomorphism(&p, &q, Budget::steps(1_000)).unwrap();
        assert_eq!(c.forward.images(), &[Word::generator(0)]);
        assert!(c.verify(&p, &q));
    }

    #[test]
    fn finite_cyclic_not_iso() {
        let p = Presentation::from_names("C2", &["a"], vec![Word::generator_power(0, 2)]).unwrap();
        let q = Presentation::from_names("C3", &["a"], vec![Word::generator_power(0, 3)]).unwrap();
        assert!(find_isomorphism(&p, &q, Budget::steps(20_000)).is_err());
    }

    #[test]
    fn free_factor_retract() {
        let p = Presentation::free("A", &["a"]);
        let q = Presentation::free("B", &["x", "y"]);
        let c = find_retraction(&p, &q, Budget::steps(10_000)).unwrap();
        assert_eq!(c.embedding.images(), &[Word::generator(0)]);
        assert_eq!(c.retraction.images(), &[Word::generator(0), Word::empty()]);
        assert!(c.verify(&p, &q));
    }

    #[test]
    fn same_subgroup() {
        let p = Presentation::free("Z", &["a"]);
        let x = vec![Word::generator_power(0, 2), Word::generator_power(0, 3)];
        let y = vec![Word::generator(0)];
        let c = certify_same_subgroup(&p, &x, &y, Budget::steps(10_000)).unwrap();
        assert!(c.verify(&p, &x, &y));
        assert!(certify_same_subgroup(&p, &x[..1], &y, Budget::steps(2_000)).is_err());
    }

    #[test]
    fn round_trip_closure_identity() {
        // f = g = identity on ⟨a | a²⟩ with dₐ = ε
        let p = Presentation::from_names("C2", &["a"], vec![Word::generator_power(0, 2)]).unwrap();
        let id = GeneratorMap::identity(1);
        let c = certify_retraction_pair(&p, &p, id.clone(), id, Budget::steps(100)).unwrap();
        let w = Word::from_powers(&[(0, 3)]);
        assert!(c.round_trip_closure(&w).is_empty());
    }
}
