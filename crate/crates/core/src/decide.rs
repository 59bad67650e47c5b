//! Composed deciders: word problem, membership, double cosets, coset
//! intersections, finite-index membership and the virtual-retract reduction.
//!
//! Each decider races positive searches (the naive enumeration of the
//! relevant product set and a [`DerivationSearch`]) against an
//! [`ActionSearch`] for a finite quotient excluding the query. Whichever
//! yields first decides; answers are sound whatever the input, and the
//! budget bounds the total number of steps across all racers.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::certify::{RetractionCertificate, SubgroupEntry};
use crate::enumerate::{Advance, Budget, ClosureEnumeration, Dovetail, Enumeration, Exhausted, ProductEnumeration};
use crate::error::Error;
use crate::perm::{orbit, perm_closure, Perm};
use crate::presentation::{GeneratorMap, Presentation};
use crate::quotient::{double_coset_image_test, find_separating_quotient, ActionSearch, FiniteQuotient};
use crate::search::DerivationSearch;
use crate::witness::{closure_conjugate, closure_inverse, DoubleCosetWitness, WitnessedElement};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Member,
    NonMember,
    Trivial,
    NonTrivial,
    Exhausted,
}

impl Outcome {
    pub fn is_decided(self) -> bool {
        self != Outcome::Exhausted
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Outcome::Member | Outcome::Trivial)
    }
}

/// The finite computation a [`QuotientCertificate`] asks the checker to
/// repeat. A query is `z ∈? ⟨X⟩ · ⟪R⟫ · ⟨Y⟩`; word and membership queries
/// have `Y` (and for words `X`) empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `f(z) ≠ 1` while every `f(x)`, `f(y)` is trivial.
    NotIdentity,
    /// Every `f(y)` is trivial and `point · f(z)` lies outside the orbit of
    /// `point` under `⟨f(X)⟩`.
    SubgroupOrbit { point: usize },
    /// Every `f(y)` is trivial and `f(z) ∉ ⟨f(X)⟩`.
    SubgroupImage,
    /// Every `f(x)` fixes `point` and `point · f(z)` lies outside the orbit of
    /// `point` under `⟨f(Y)⟩`.
    DoubleCosetOrbit { point: usize },
    /// `f(z) ∉ ⟨f(X)⟩ · ⟨f(Y)⟩`.
    DoubleCosetImage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub quotient: FiniteQuotient,
    pub claim: Claim,
}

impl QuotientCertificate {
    /// Rechecks the quotient (a homomorphism killing every relator) and the
    /// claimed exclusion of `z` from `⟨left⟩ · ⟪R⟫ · ⟨right⟩`.
    pub fn verify(&self, p: &Presentation, left: &[Word], right: &[Word], z: &Word) -> bool {
        let q = match FiniteQuotient::new(p, self.quotient.images().to_vec()) {
            Ok(q) => q,
            Err(_) => return false,
        };
        let rank = p.rank();
        if left.iter().chain(right).chain(core::iter::once(z)).any(|w| w.generator_bound() > rank) {
            return false;
        }
        let n = q.degree();
        let all_trivial = |ws: &[Word]| ws.iter().all(|w| q.image(w).is_identity());
        let images = |ws: &[Word]| ws.iter().map(|w| q.image(w)).collect::<Vec<Perm>>();
        let outside_orbit = |point: usize, gens: &[Word]| {
            let target = q.act(point, z);
            if gens.is_empty() {
                return target != point;
            }
            !orbit(point, &images(gens)).contains(&target)
        };
        match self.claim {
            Claim::NotIdentity => all_trivial(left) && all_trivial(right) && !q.image(z).is_identity(),
            Claim::SubgroupOrbit { point } => point < n && all_trivial(right) && outside_orbit(point, left),
            Claim::SubgroupImage => {
                all_trivial(right)
                    && perm_closure(n, &images(left)).map_or(false, |g| !g.contains(&q.image(z)))
            }
            Claim::DoubleCosetOrbit { point } => {
                point < n && left.iter().all(|x| q.act(point, x) == point) && outside_orbit(point, right)
            }
            Claim::DoubleCosetImage => double_coset_image_test(&q, left, right, z) == Ok(false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `z = h(X) · Π closure`.
    Membership(WitnessedElement),
    /// `z = h(X) · Π closure · k(Y)`.
    DoubleCoset(DoubleCosetWitness),
    Quotient(QuotientCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
    pub steps_used: u64,
}

impl Decision {
    pub fn exhausted(steps_used: u64) -> Self {
        Decision { outcome: Outcome::Exhausted, certificate: None, steps_used }
    }

    /// Checks the certificate against the query `z ∈? ⟨left⟩⟪R⟫⟨right⟩`.
    /// Exhausted decisions verify when they carry no certificate.
    pub fn verify(&self, p: &Presentation, left: &[Word], right: &[Word], z: &Word) -> bool {
        let positive_shape = |w: &Word| w == z && z.generator_bound() <= p.rank();
        match (&self.outcome, &self.certificate) {
            (Outcome::Exhausted, None) => true,
            (Outcome::Trivial, Some(Certificate::Membership(w))) => {
                left.is_empty() && right.is_empty() && w.subgroup_word.is_empty() && positive_shape(&w.word)
                    && w.verify(p.relators(), &[])
            }
            (Outcome::Member, Some(Certificate::Membership(w))) => {
                right.is_empty() && positive_shape(&w.word) && w.verify(p.relators(), left)
            }
            (Outcome::Member, Some(Certificate::DoubleCoset(w))) => {
                positive_shape(&w.word) && w.verify(p.relators(), left, right)
            }
            (Outcome::NonTrivial, Some(Certificate::Quotient(c))) => {
                left.is_empty() && right.is_empty() && c.verify(p, left, right, z)
            }
            (Outcome::NonMember, Some(Certificate::Quotient(c))) => c.verify(p, left, right, z),
            _ => false,
        }
    }
}

enum Verdict {
    Yes(Certificate),
    No(QuotientCertificate),
}

type Racer<'a> = Box<dyn Enumeration<Item = Verdict> + 'a>;

fn race(racers: Vec<Racer<'_>>, budget: Budget, yes: Outcome, no: Outcome) -> Decision {
    let mut d = Dovetail::new(racers, budget);
    while let Some(step) = d.step() {
        if let Advance::Yield((_, v)) = step {
            let steps_used = d.steps_used();
            return match v {
                Verdict::Yes(c) => Decision { outcome: yes, certificate: Some(c), steps_used },
                Verdict::No(c) => {
                    Decision { outcome: no, certificate: Some(Certificate::Quotient(c)), steps_used }
                }
            };
        }
    }
    Decision::exhausted(d.steps_used())
}

fn check_words(p: &Presentation, words: &[Word]) -> Result<(), Error> {
    words.iter().try_for_each(|w| p.check_word(w))
}

/// Word problem: `Trivial` with a closure witness or `NonTrivial` with a
/// permutation quotient in which `w` acts nontrivially.
pub fn decide_word(p: &Presentation, w: &Word, budget: Budget) -> Result<Decision, Error> {
    p.check_word(w)?;
    let target = w.clone();
    let naive = ClosureEnumeration::normal_closure(p.rank(), p.relators())
        .filter_map_items(move |e| (e.word == target).then(|| Verdict::Yes(Certificate::Membership(e))));
    let derived = DerivationSearch::triviality(p.relators(), w.clone())
        .filter_map_items(|d| Some(Verdict::Yes(Certificate::Membership(d.into_element()))));
    let target = w.clone();
    // a transitive action moving some point can be rebased at that point
    let quotients = ActionSearch::new(p, &[], budget.max_quotient_degree).avoiding(w).filter_map_items(move |t| {
        (t.trace(0, &target) != 0)
            .then(|| Verdict::No(QuotientCertificate { quotient: t.to_quotient(), claim: Claim::NotIdentity }))
    });
    Ok(race(alloc::vec![naive.boxed(), derived.boxed(), quotients.boxed()], budget, Outcome::Trivial, Outcome::NonTrivial))
}

/// Membership of `z` in `⟨X⟩`.
pub fn decide_membership(p: &Presentation, x: &[Word], z: &Word, budget: Budget) -> Result<Decision, Error> {
    check_words(p, x)?;
    p.check_word(z)?;
    let target = z.clone();
    let naive = ClosureEnumeration::subgroup_join(p.rank(), p.relators(), x)
        .filter_map_items(move |e| (e.word == target).then(|| Verdict::Yes(Certificate::Membership(e))));
    let derived = DerivationSearch::membership(p.relators(), x, z.clone())
        .filter_map_items(|d| Some(Verdict::Yes(Certificate::Membership(d.into_element()))));
    let target = z.clone();
    // X fixes the base point, so its orbit under ⟨f(X)⟩ is the point itself
    let quotients = ActionSearch::new(p, x, budget.max_quotient_degree).avoiding(z).filter_map_items(move |t| {
        (t.trace(0, &target) != 0).then(|| {
            Verdict::No(QuotientCertificate { quotient: t.to_quotient(), claim: Claim::SubgroupOrbit { point: 0 } })
        })
    });
    Ok(race(alloc::vec![naive.boxed(), derived.boxed(), quotients.boxed()], budget, Outcome::Member, Outcome::NonMember))
}

/// Membership of `z` in the double coset `⟨X⟩ · ⟨Y⟩`.
pub fn decide_double_coset(
    p: &Presentation,
    x: &[Word],
    y: &[Word],
    z: &Word,
    budget: Budget,
) -> Result<Decision, Error> {
    check_words(p, x)?;
    check_words(p, y)?;
    p.check_word(z)?;
    let target = z.clone();
    let naive = ProductEnumeration::new(p.rank(), p.relators(), x, y)
        .filter_map_items(move |e| (e.word == target).then(|| Verdict::Yes(Certificate::DoubleCoset(e))));
    let derived = DerivationSearch::new(p.relators(), x, y, z.clone())
        .filter_map_items(|d| Some(Verdict::Yes(Certificate::DoubleCoset(d.into_double_coset()))));
    let target = z.clone();
    let right = y.to_vec();
    let quotients = ActionSearch::new(p, x, budget.max_quotient_degree).avoiding(z).filter_map_items(move |t| {
        let q = t.to_quotient();
        let gens: Vec<Perm> = right.iter().map(|w| q.image(w)).collect();
        let reached = t.trace(0, &target);
        let excluded = if gens.is_empty() { reached != 0 } else { !orbit(0, &gens).contains(&reached) };
        excluded.then(|| Verdict::No(QuotientCertificate { quotient: q, claim: Claim::DoubleCosetOrbit { point: 0 } }))
    });
    Ok(race(alloc::vec![naive.boxed(), derived.boxed(), quotients.boxed()], budget, Outcome::Member, Outcome::NonMember))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetIntersection {
    /// `element ∈ a⟨X⟩ ∩ ⟨Y⟩`, read off from `a = y · C · x`.
    Nonempty { element: Word, factorization: DoubleCosetWitness },
    /// `a ∉ ⟨Y⟩ · ⟨X⟩`, so `a⟨X⟩ ∩ ⟨Y⟩ = ∅`.
    Empty(QuotientCertificate),
}

/// Decides whether `a⟨X⟩ ∩ ⟨Y⟩` is nonempty, which holds exactly when
/// `a ∈ ⟨Y⟩ · ⟨X⟩`, and produces an element when it is. Returns the number
/// of steps used alongside.
pub fn coset_intersection_witness(
    p: &Presentation,
    x: &[Word],
    y: &[Word],
    a: &Word,
    budget: Budget,
) -> Result<Result<(CosetIntersection, u64), Exhausted>, Error> {
    let d = decide_double_coset(p, y, x, a, budget)?;
    Ok(match (d.outcome, d.certificate) {
        (Outcome::Member, Some(Certificate::DoubleCoset(w))) => {
            // a = y · C · x, so a · x⁻¹ = y · C and y ∈ a⟨X⟩ in the group
            let element = w.left.substitute(y);
            Ok((CosetIntersection::Nonempty { element, factorization: w }, d.steps_used))
        }
        (Outcome::NonMember, Some(Certificate::Quotient(c))) => Ok((CosetIntersection::Empty(c), d.steps_used)),
        _ => Err(Exhausted { steps_used: d.steps_used, candidates_tried: 0 }),
    })
}

/// Membership in a subgroup expected to have finite index: once a finite
/// quotient whose marked subgroup pulls back exactly to `⟨X⟩` is certified,
/// both answers follow from one image computation.
pub fn decide_membership_finite_index(
    p: &Presentation,
    x: &[Word],
    z: &Word,
    budget: Budget,
) -> Result<Decision, Error> {
    check_words(p, x)?;
    p.check_word(z)?;
    let s = match find_separating_quotient(p, x, budget) {
        Ok(s) => s,
        Err(e) => return Ok(Decision::exhausted(e.steps_used)),
    };
    let steps_used = s.steps_used;
    if s.quotient.act(0, z) != 0 {
        let c = QuotientCertificate { quotient: s.quotient.clone(), claim: Claim::SubgroupOrbit { point: 0 } };
        return Ok(Decision { outcome: Outcome::NonMember, certificate: Some(Certificate::Quotient(c)), steps_used });
    }
    let (u, end) = s.table.rewrite(0, z);
    debug_assert_eq!(end, 0);
    let over_schreier = WitnessedElement { word: z.clone(), subgroup_word: u, closure: Vec::new() };
    let w = over_schreier.rebase(p.relators(), &s.generator_witnesses, x);
    Ok(Decision { outcome: Outcome::Member, certificate: Some(Certificate::Membership(w)), steps_used })
}

/// Membership in `⟨H⟩ ≤ π` through a finite-index subgroup `π₀` that embeds
/// as a retract of another group `Γ` with a membership oracle.
///
/// `sub` is `π₀` with its coset table; `retract` carries `f: π₀ → Γ` and
/// `g: Γ → π₀` with `g ∘ f = id` witnessed over the relators of `π₀`. The
/// oracle is called as `oracle(gens, target, budget)` on words of `Γ` and must
/// answer with certificates over `gens`. Positive answers are pulled back to
/// `π` through `g` and the Reidemeister–Schreier embedding; negative answers
/// are pulled back by inducing the oracle's permutation representation from
/// `π₀` up to `π`.
#[allow(clippy::too_many_arguments)]
pub fn membership_via_retract<O>(
    p: &Presentation,
    sub: &SubgroupEntry,
    retract: &RetractionCertificate,
    gamma: &Presentation,
    mut oracle: O,
    h: &[Word],
    z: &Word,
    budget: Budget,
) -> Result<Decision, Error>
where
    O: FnMut(&[Word], &Word, Budget) -> Decision,
{
    check_words(p, h)?;
    p.check_word(z)?;
    let table = &sub.table;
    let pi0 = &sub.presentation;
    if !retract.verify(pi0, gamma) {
        return Err(Error::InvalidCertificate);
    }
    let orbit = table.subgroup_orbit(h);
    let c = table.coset_rep_of(z);
    if !orbit.contains(c) {
        // z moves coset 0 outside its ⟨H⟩-orbit
        let cert = QuotientCertificate { quotient: coset_action(table), claim: Claim::SubgroupOrbit { point: 0 } };
        return Ok(Decision { outcome: Outcome::NonMember, certificate: Some(Certificate::Quotient(cert)), steps_used: 0 });
    }
    let (t, th) = orbit.transversal[c].clone().expect("orbit coset");
    let u = z.mul(&t.inverse());
    let (u0, end) = table.rewrite(0, &u);
    debug_assert_eq!(end, 0);
    let h0: Vec<Word> = orbit.generators.iter().map(|(g, _)| table.rewrite(0, g).0).collect();
    let f = &retract.embedding;
    let gens_gamma: Vec<Word> = h0.iter().map(|w| f.substitute(w)).collect::<Result<_, _>>()?;
    let target_gamma = f.substitute(&u0)?;
    let d = oracle(&gens_gamma, &target_gamma, budget);
    let steps_used = d.steps_used;
    match (d.outcome, d.certificate) {
        (Outcome::Member | Outcome::Trivial, Some(Certificate::Membership(w))) => {
            if !w.verify(gamma.relators(), &gens_gamma) || w.word != target_gamma {
                return Ok(Decision::exhausted(steps_used));
            }
            let lifted = lift_member(p, sub, retract, &orbit.generators, &h0, &w, &u0, h, (&t, &th))?;
            Ok(Decision { outcome: Outcome::Member, certificate: Some(Certificate::Membership(lifted)), steps_used })
        }
        (Outcome::NonMember | Outcome::NonTrivial, Some(Certificate::Quotient(qc))) => {
            let (rho, point) = match orbit_form(&qc, gamma, &gens_gamma, &target_gamma) {
                Some(x) => x,
                None => return Ok(Decision::exhausted(steps_used)),
            };
            let induced = induce(table, &rho, f)?;
            // the point (0, p) is numbered p
            let cert = QuotientCertificate { quotient: induced, claim: Claim::SubgroupOrbit { point } };
            Ok(Decision { outcome: Outcome::NonMember, certificate: Some(Certificate::Quotient(cert)), steps_used })
        }
        _ => Ok(Decision::exhausted(steps_used)),
    }
}

/// The permutation action of the ambient group on the cosets of a table.
fn coset_action(table: &crate::cosets::CosetTable) -> FiniteQuotient {
    let rank = table.base().rank();
    let images = (0..rank)
        .map(|g| {
            Perm::from_images((0..table.len()).map(|c| table.act(c, Letter::positive(g))).collect())
                .expect("coset tables are permutation actions")
        })
        .collect();
    FiniteQuotient::unchecked(table.len(), images)
}

#[allow(clippy::too_many_arguments)]
fn lift_member(
    p: &Presentation,
    sub: &SubgroupEntry,
    retract: &RetractionCertificate,
    h0_ambient: &[(Word, Word)],
    h0: &[Word],
    w: &WitnessedElement,
    u0: &Word,
    h: &[Word],
    (t, th): (&Word, &Word),
) -> Result<WitnessedElement, Error> {
    let pi0 = &sub.presentation;
    let g = &retract.retraction;
    // g(w): gf(u₀) over the generators g f(h₀), closure over R₀
    let pulled = w.push_forward(g, &relator_closures(&retract.retraction_relators))?;
    // g f(h) = h · (h⁻¹ K_h h) for each h₀ generator
    let gen_witnesses: Vec<WitnessedElement> = h0
        .iter()
        .enumerate()
        .map(|(i, hw)| {
            let k = retract.round_trip_closure(hw);
            WitnessedElement {
                word: g.substitute(&retract.embedding.substitute(hw).expect("π₀ word")).expect("Γ word"),
                subgroup_word: Word::generator(i),
                closure: closure_conjugate(&k, &hw.inverse()),
            }
        })
        .collect();
    let over_h0 = pulled.rebase(pi0.relators(), &gen_witnesses, h0);
    // u₀ = K⁻¹ · g f(u₀)
    let k = retract.round_trip_closure(u0);
    let correction = WitnessedElement::from_closure(closure_inverse(&k), pi0.relators());
    let in_pi0 = correction.mul(&over_h0, h0);
    debug_assert!(in_pi0.verify(pi0.relators(), h0));
    // into π, then over the letters of H
    let in_pi = in_pi0.push_forward(&sub.embedding, &sub.relator_witnesses)?;
    let schreier_over_h: Vec<WitnessedElement> = h0_ambient
        .iter()
        .map(|(gw, gh)| WitnessedElement { word: gw.clone(), subgroup_word: gh.clone(), closure: Vec::new() })
        .collect();
    let u_over_h = in_pi.rebase(p.relators(), &schreier_over_h, h);
    let tail = WitnessedElement { word: t.clone(), subgroup_word: th.clone(), closure: Vec::new() };
    Ok(u_over_h.mul(&tail, h))
}

fn relator_closures(ws: &[WitnessedElement]) -> Vec<Vec<crate::witness::ClosureFactor>> {
    ws.iter().map(|w| w.closure.clone()).collect()
}

/// Restates a negative certificate on `Γ` as an orbit claim: a permutation
/// representation `ρ` and a point whose image under `ρ(target)` lies outside
/// its orbit under `ρ(gens)`.
fn orbit_form(
    c: &QuotientCertificate,
    gamma: &Presentation,
    gens: &[Word],
    target: &Word,
) -> Option<(FiniteQuotient, usize)> {
    if !c.verify(gamma, gens, &[], target) {
        return None;
    }
    let q = &c.quotient;
    match c.claim {
        Claim::SubgroupOrbit { point } => Some((q.clone(), point)),
        Claim::NotIdentity => (0..q.degree()).find(|&pt| q.act(pt, target) != pt).map(|pt| (q.clone(), pt)),
        Claim::SubgroupImage => {
            // act on the right cosets of ⟨ρ(gens)⟩ inside the image group
            let sub = perm_closure(q.degree(), &gens.iter().map(|w| q.image(w)).collect::<Vec<_>>()).ok()?;
            let whole = perm_closure(q.degree(), q.images()).ok()?;
            let mut cosets: Vec<Vec<Perm>> = Vec::new();
            let key = |x: &Perm| -> Vec<Perm> {
                let mut v: Vec<Perm> = sub.elements().iter().map(|s| s.then(x)).collect();
                v.sort();
                v
            };
            for x in whole.elements() {
                let k = key(x);
                if !cosets.contains(&k) {
                    cosets.push(k);
                }
            }
            let images = q
                .images()
                .iter()
                .map(|a| {
                    Perm::from_images(
                        cosets.iter().map(|c| cosets.iter().position(|d| *d == key(&c[0].then(a))).unwrap()).collect(),
                    )
                    .expect("coset action")
                })
                .collect();
            let base = cosets.iter().position(|c| c.iter().any(Perm::is_identity))?;
            Some((FiniteQuotient::unchecked(cosets.len(), images), base))
        }
        _ => None,
    }
}

/// Induces `ρ ∘ f` from `π₀` to the ambient group along the coset table:
/// the point `(c, p)` is numbered `c · n + p` and generator `a` sends it to
/// `(c · a, p · ρ f(x))` where `x` is the Schreier generator of `(c, a)`.
fn induce(table: &crate::cosets::CosetTable, rho: &FiniteQuotient, f: &GeneratorMap) -> Result<FiniteQuotient, Error> {
    let n = rho.degree();
    let k = table.len();
    let rank = table.base().rank();
    let schreier_images: Vec<Perm> =
        f.images().iter().map(|w| rho.image(w)).collect();
    let mut images = Vec::with_capacity(rank);
    for a in 0..rank {
        let mut v = alloc::vec![0usize; k * n];
        for c in 0..k {
            let d = table.act(c, Letter::positive(a));
            let (x, _) = table.rewrite(c, &Word::generator(a));
            let sigma = x.letters().iter().fold(Perm::identity(n), |acc, l| {
                let s = &schreier_images[l.generator()];
                acc.then(&if l.is_inverse() { s.inverse() } else { s.clone() })
            });
            for pt in 0..n {
                v[c * n + pt] = d * n + sigma.apply(pt);
            }
        }
        images.push(Perm::from_images(v)?);
    }
    Ok(FiniteQuotient::unchecked(k * n, images))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Commutation {
    /// Every `[u, v]` is trivial, in the order `U × V`.
    Commute(Vec<WitnessedElement>),
    /// `[u, v]` survives in the quotient.
    NotCommute { u: usize, v: usize, certificate: QuotientCertificate },
}

/// Whether every element of `U` commutes with every element of `V`, by the
/// word problem on each commutator. The budget is split evenly over pairs.
pub fn commutation_test(
    p: &Presentation,
    u: &[Word],
    v: &[Word],
    budget: Budget,
) -> Result<Result<(Commutation, u64), Exhausted>, Error> {
    check_words(p, u)?;
    check_words(p, v)?;
    let pairs = (u.len() * v.len()).max(1) as u64;
    let share = Budget { max_steps: budget.max_steps / pairs, max_quotient_degree: budget.max_quotient_degree };
    let mut witnesses = Vec::new();
    let mut steps = 0;
    let mut exhausted = false;
    for (i, a) in u.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            let d = decide_word(p, &Word::commutator(a, b), share)?;
            steps += d.steps_used;
            match (d.outcome, d.certificate) {
                (Outcome::Trivial, Some(Certificate::Membership(w))) => witnesses.push(w),
                (Outcome::NonTrivial, Some(Certificate::Quotient(c))) => {
                    return Ok(Ok((Commutation::NotCommute { u: i, v: j, certificate: c }, steps)));
                }
                _ => exhausted = true,
            }
        }
    }
    if exhausted {
        return Ok(Err(Exhausted { steps_used: steps, candidates_tried: 0 }));
    }
    Ok(Ok((Commutation::Commute(witnesses), steps)))
}
