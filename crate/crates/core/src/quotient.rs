//! Homomorphisms to symmetric groups.
//!
//! Two engines live here. [`enum_sym_homs`] is the literal brute force over
//! `S_n^{|A|}`. [`ActionSearch`] enumerates transitive permutation
//! representations as standardized coset tables, one per subgroup of index
//! `n`, by a depth-first search with relator deduction; every finite quotient
//! separating an element from a subgroup shows up as such a table.

use alloc::vec::Vec;

use crate::cosets::{coset_table, CosetTable, SchreierPresentation};
use crate::enumerate::{Advance, Budget, Enumeration, Exhausted};
use crate::error::Error;
use crate::perm::{all_perms, perm_closure, Perm};
use crate::presentation::Presentation;
use crate::search::DerivationSearch;
use crate::witness::WitnessedElement;
use crate::word::{Letter, Word};

/// The subgroup `G₀` of a quotient, given by generators. When `point` is set
/// the subgroup is the stabilizer of that point in the image group, and the
/// generators are a generating set for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSubgroup {
    pub generators: Vec<Perm>,
    pub point: Option<usize>,
}

/// A generator-image assignment into `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotient {
    degree: usize,
    images: Vec<Perm>,
    marked: Option<MarkedSubgroup>,
}

impl FiniteQuotient {
    /// Checks image count, degrees and that every relator maps to the identity.
    pub fn new(p: &Presentation, images: Vec<Perm>) -> Result<Self, Error> {
        let q = Self::unchecked(images.first().map_or(1, Perm::degree), images);
        if q.images.len() != p.rank() {
            return Err(Error::ImageCountMismatch { expected: p.rank(), found: q.images.len() });
        }
        for g in &q.images {
            if g.degree() != q.degree {
                return Err(Error::DegreeMismatch { expected: q.degree, found: g.degree() });
            }
        }
        q.check_relators(p.relators())?;
        Ok(q)
    }

    /// No validation; `degree` is used only when `images` is empty.
    pub fn unchecked(degree: usize, images: Vec<Perm>) -> Self {
        let degree = images.first().map_or(degree, Perm::degree);
        FiniteQuotient { degree, images, marked: None }
    }

    pub fn with_marked(mut self, marked: MarkedSubgroup) -> Self {
        self.marked = Some(marked);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn marked(&self) -> Option<&MarkedSubgroup> {
        self.marked.as_ref()
    }

    pub fn letter_image(&self, l: Letter) -> Perm {
        let g = &self.images[l.generator()];
        if l.is_inverse() {
            g.inverse()
        } else {
            g.clone()
        }
    }

    /// `f(w)`, composed left to right.
    pub fn image(&self, w: &Word) -> Perm {
        w.letters().iter().fold(Perm::identity(self.degree), |acc, &l| acc.then(&self.letter_image(l)))
    }

    /// Image of `point` under `f(w)`, without building the permutation.
    pub fn act(&self, point: usize, w: &Word) -> usize {
        w.letters().iter().fold(point, |p, &l| {
            let g = &self.images[l.generator()];
            if l.is_inverse() {
                g.inverse().apply(p)
            } else {
                g.apply(p)
            }
        })
    }

    pub fn check_relators(&self, relators: &[Word]) -> Result<(), Error> {
        for (i, r) in relators.iter().enumerate() {
            if r.generator_bound() > self.images.len() || !self.image(r).is_identity() {
                return Err(Error::RelatorNotKilled(i));
            }
        }
        Ok(())
    }
}

/// All homomorphisms `⟨A | R⟩ → S_n`, as generator-image tuples in
/// lexicographic order (first generator most significant, each coordinate in
/// one-line order).
pub fn enum_sym_homs(p: &Presentation, n: usize) -> Vec<FiniteQuotient> {
    let perms = all_perms(n.max(1));
    let rank = p.rank();
    let mut digits = alloc::vec![0usize; rank];
    let mut out = Vec::new();
    loop {
        let q = FiniteQuotient::unchecked(n, digits.iter().map(|&d| perms[d].clone()).collect());
        if q.check_relators(p.relators()).is_ok() {
            out.push(q);
        }
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < perms.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Whether `f(z) ∈ ⟨f(X)⟩ · ⟨f(Y)⟩`, by exhaustive products.
pub fn double_coset_image_test(q: &FiniteQuotient, x: &[Word], y: &[Word], z: &Word) -> Result<bool, Error> {
    let rank = q.images.len();
    for w in x.iter().chain(y).chain(core::iter::once(z)) {
        w.check_alphabet(rank).map_err(|_| Error::AlphabetMismatch { expected: rank, found: w.generator_bound() })?;
    }
    let gx = perm_closure(q.degree, &x.iter().map(|w| q.image(w)).collect::<Vec<_>>())?;
    let gy = perm_closure(q.degree, &y.iter().map(|w| q.image(w)).collect::<Vec<_>>())?;
    let fz = q.image(z);
    // f(z) = a·b with a ∈ ⟨f(X)⟩ iff a⁻¹·f(z) ∈ ⟨f(Y)⟩
    Ok(gx.elements().iter().any(|a| gy.contains(&a.inverse().then(&fz))))
}

const UNDEF: u16 = u16::MAX;

/// A complete, standardized coset table: a transitive action of the
/// presented group on `0..degree` with `0` as base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    degree: usize,
    columns: usize,
    entries: Vec<u16>,
}

impl ActionTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn act(&self, point: usize, l: Letter) -> usize {
        self.entries[point * self.columns + l.code()] as usize
    }

    pub fn trace(&self, point: usize, w: &Word) -> usize {
        w.letters().iter().fold(point, |p, &l| self.act(p, l))
    }

    pub fn generator_perm(&self, g: usize) -> Perm {
        Perm::from_images((0..self.degree).map(|c| self.act(c, Letter::positive(g))).collect())
            .expect("coset table rows are permutations")
    }

    pub fn to_quotient(&self) -> FiniteQuotient {
        FiniteQuotient::unchecked(self.degree, (0..self.columns / 2).map(|g| self.generator_perm(g)).collect())
    }
}

#[derive(Clone)]
struct Partial {
    n: usize,
    entries: Vec<u16>,
}

enum Scan {
    Consistent,
    Deduced,
    Conflict,
}

/// Depth-first enumeration of transitive actions in which every word of
/// `fixed` fixes the base point, degree by degree. One advance is one search
/// node. Each subgroup of index `n` containing `fixed` appears exactly once,
/// because tables are built in standardized order.
pub struct ActionSearch {
    columns: usize,
    relators: Vec<Vec<u16>>,
    fixed: Vec<Vec<u16>>,
    avoid: Option<Vec<u16>>,
    degree: usize,
    max_degree: Option<usize>,
    stack: Vec<Partial>,
    done: bool,
}

impl ActionSearch {
    pub fn new(p: &Presentation, fixed: &[Word], max_degree: Option<usize>) -> Self {
        let codes = |w: &Word| w.letters().iter().map(|l| l.code() as u16).collect::<Vec<_>>();
        ActionSearch {
            columns: 2 * p.rank(),
            relators: p.relators().iter().map(codes).collect(),
            fixed: fixed.iter().filter(|w| !w.is_empty()).map(codes).collect(),
            avoid: None,
            degree: 0,
            max_degree,
            stack: Vec::new(),
            done: false,
        }
    }

    /// Prunes every partial table in which `w` already fixes the base point;
    /// no completion of such a table can move the base point by `w`.
    pub fn avoiding(mut self, w: &Word) -> Self {
        self.avoid = Some(w.letters().iter().map(|l| l.code() as u16).collect());
        self
    }

    fn fixes_avoided(&self, t: &Partial) -> bool {
        let w = match &self.avoid {
            Some(w) => w,
            None => return false,
        };
        let mut c = 0usize;
        for &x in w {
            let next = t.entries[c * self.columns + x as usize];
            if next == UNDEF {
                return false;
            }
            c = next as usize;
        }
        c == 0
    }

    /// Degree currently being enumerated.
    pub fn current_degree(&self) -> usize {
        self.degree
    }

    fn scan(&self, t: &mut Partial, start: usize, w: &[u16]) -> Scan {
        let cols = self.columns;
        let get = |t: &Partial, c: usize, x: u16| t.entries[c * cols + x as usize];
        let len = w.len();
        let mut f = start;
        let mut i = 0;
        while i < len {
            let next = get(t, f, w[i]);
            if next == UNDEF {
                break;
            }
            f = next as usize;
            i += 1;
        }
        if i == len {
            return if f == start { Scan::Consistent } else { Scan::Conflict };
        }
        let mut b = start;
        let mut j = len;
        while j > i {
            let next = get(t, b, w[j - 1] ^ 1);
            if next == UNDEF {
                break;
            }
            b = next as usize;
            j -= 1;
        }
        if j == i {
            return Scan::Conflict;
        }
        if j == i + 1 {
            if get(t, b, w[i] ^ 1) != UNDEF {
                return Scan::Conflict;
            }
            t.entries[f * cols + w[i] as usize] = b as u16;
            t.entries[b * cols + (w[i] ^ 1) as usize] = f as u16;
            return Scan::Deduced;
        }
        Scan::Consistent
    }

    fn deduce(&self, t: &mut Partial) -> bool {
        self.close(t) && !self.fixes_avoided(t)
    }

    fn close(&self, t: &mut Partial) -> bool {
        loop {
            let mut changed = false;
            for c in 0..t.n {
                for r in &self.relators {
                    match self.scan(t, c, r) {
                        Scan::Conflict => return false,
                        Scan::Deduced => changed = true,
                        Scan::Consistent => {}
                    }
                }
            }
            for x in &self.fixed {
                match self.scan(t, 0, x) {
                    Scan::Conflict => return false,
                    Scan::Deduced => changed = true,
                    Scan::Consistent => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn expand(&mut self, t: Partial) -> Option<ActionTable> {
        let cols = self.columns;
        let slot = (0..t.n * cols).find(|&s| t.entries[s] == UNDEF);
        let slot = match slot {
            Some(s) => s,
            None => {
                if t.n == self.degree {
                    return Some(ActionTable { degree: t.n, columns: cols, entries: t.entries });
                }
                return None;
            }
        };
        let (c, x) = (slot / cols, slot % cols);
        let inv = x ^ 1;
        let mut children = Vec::new();
        for target in 0..t.n {
            if t.entries[target * cols + inv] != UNDEF {
                continue;
            }
            let mut child = t.clone();
            child.entries[c * cols + x] = target as u16;
            child.entries[target * cols + inv] = c as u16;
            if self.deduce(&mut child) {
                children.push(child);
            }
        }
        if t.n < self.degree {
            let mut child = t.clone();
            let target = t.n;
            child.n += 1;
            child.entries[c * cols + x] = target as u16;
            child.entries[target * cols + inv] = c as u16;
            if self.deduce(&mut child) {
                children.push(child);
            }
        }
        self.stack.extend(children.into_iter().rev());
        None
    }
}

impl Enumeration for ActionSearch {
    type Item = ActionTable;

    fn advance(&mut self) -> Advance<ActionTable> {
        if self.done {
            return Advance::Finished;
        }
        match self.stack.pop() {
            None => {
                self.degree += 1;
                if self.max_degree.map_or(false, |m| self.degree > m) || self.degree > u16::MAX as usize - 1 {
                    self.done = true;
                    return Advance::Finished;
                }
                let mut root = Partial { n: 1, entries: alloc::vec![UNDEF; self.degree * self.columns] };
                if self.deduce(&mut root) {
                    self.stack.push(root);
                }
                Advance::Working
            }
            Some(t) => match self.expand(t) {
                Some(table) => Advance::Yield(table),
                None => Advance::Working,
            },
        }
    }
}

/// A quotient `f` with `G₀` such that `f⁻¹(G₀) = ⟨X⟩`, with the evidence.
#[derive(Clone, Debug)]
pub struct SeparatingQuotient {
    pub quotient: FiniteQuotient,
    pub table: CosetTable,
    pub schreier: SchreierPresentation,
    /// For each Schreier generator, a witness that its embedded word lies in
    /// `⟨X, ⟪R⟫⟩`. Together with the coset table (which places `X` inside
    /// `f⁻¹(G₀)`) this certifies equality of the two subgroups.
    pub generator_witnesses: Vec<WitnessedElement>,
    /// For each element of `X`, its rewriting over the Schreier generators.
    pub subgroup_rewrites: Vec<WitnessedElement>,
    pub steps_used: u64,
}

/// Searches for a finite quotient whose marked subgroup pulls back exactly to
/// `⟨X⟩`. Tables with `X` fixing the base point are produced by
/// [`ActionSearch`]; each is then confirmed by certifying every Schreier
/// generator inside `⟨X, ⟪R⟫⟩`. Confirmation searches for all pending tables
/// share the budget round-robin with the table search.
pub fn find_separating_quotient(p: &Presentation, x: &[Word], budget: Budget) -> Result<SeparatingQuotient, Exhausted> {
    let mut tables = ActionSearch::new(p, x, budget.max_quotient_degree);
    let mut pool: Pool<(ActionTable, CosetTable, SchreierPresentation)> = Pool::new();
    let mut tables_done = false;
    let mut steps = 0u64;
    let mut tried = 0u64;
    while steps < budget.max_steps {
        if tables_done && pool.is_empty() {
            break;
        }
        steps += 1;
        if !tables_done && (steps % 2 == 1 || pool.is_empty()) {
            match tables.advance() {
                Advance::Yield(action) => {
                    tried += 1;
                    let q = action.to_quotient();
                    let marked = stabilizer_generators(p, &q, &action);
                    let q = q.with_marked(marked);
                    let table = coset_table(p, &q).expect("action tables give valid quotients");
                    let rs = table.reidemeister_schreier();
                    let searches = rs
                        .embedding
                        .images()
                        .iter()
                        .map(|w| DerivationSearch::membership(p.relators(), x, w.clone()))
                        .collect();
                    pool.push((action, table, rs), searches);
                }
                Advance::Finished => tables_done = true,
                Advance::Working => {}
            }
        } else if let Some(((action, table, rs), derivations)) = pool.step() {
            let generator_witnesses = derivations.into_iter().map(|d| d.into_element()).collect();
            let subgroup_rewrites = x
                .iter()
                .map(|w| WitnessedElement {
                    word: w.clone(),
                    subgroup_word: table.rewrite(0, w).0,
                    closure: Vec::new(),
                })
                .collect();
            let _ = action;
            return Ok(SeparatingQuotient {
                quotient: table.quotient().clone(),
                table,
                schreier: rs,
                generator_witnesses,
                subgroup_rewrites,
                steps_used: steps,
            });
        }
    }
    Err(Exhausted { steps_used: steps, candidates_tried: tried })
}

/// Generators of the stabilizer of the base point in the image group: images
/// of the Schreier generators of the table.
fn stabilizer_generators(p: &Presentation, q: &FiniteQuotient, action: &ActionTable) -> MarkedSubgroup {
    let point_table = coset_table(
        p,
        &q.clone().with_marked(MarkedSubgroup { generators: Vec::new(), point: Some(0) }),
    )
    .expect("action tables give valid quotients");
    let rs = point_table.reidemeister_schreier();
    let mut generators: Vec<Perm> = Vec::new();
    for w in rs.embedding.images() {
        let g = q.image(w);
        if !g.is_identity() && !generators.contains(&g) {
            generators.push(g);
        }
    }
    debug_assert_eq!(point_table.len(), action.degree());
    MarkedSubgroup { generators, point: Some(0) }
}

/// Round-robin pool of candidates, each waiting on a list of derivation
/// searches. A candidate completes when all its searches succeed and is
/// dropped as soon as one of them is exhausted without success.
pub(crate) struct Pool<C> {
    candidates: Vec<PoolEntry<C>>,
    turn: usize,
}

struct PoolEntry<C> {
    data: C,
    searches: Vec<DerivationSearch>,
    results: Vec<Option<crate::search::Derivation>>,
    cursor: usize,
}

impl<C> Pool<C> {
    pub(crate) fn new() -> Self {
        Pool { candidates: Vec::new(), turn: 0 }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub(crate) fn push(&mut self, data: C, searches: Vec<DerivationSearch>) {
        let n = searches.len();
        self.candidates.push(PoolEntry { data, searches, results: (0..n).map(|_| None).collect(), cursor: 0 });
    }

    /// Advances one pending search of the next candidate. Returns a candidate
    /// whose requirements are now all met.
    pub(crate) fn step(&mut self) -> Option<(C, Vec<crate::search::Derivation>)> {
        if self.candidates.is_empty() {
            return None;
        }
        let idx = self.turn % self.candidates.len();
        self.turn = self.turn.wrapping_add(1);
        let entry = &mut self.candidates[idx];
        let n = entry.searches.len();
        let pending = (0..n).map(|k| (entry.cursor + k) % n).find(|&k| entry.results[k].is_none());
        let k = match pending {
            Some(k) => k,
            None => {
                let e = self.candidates.remove(idx);
                return Some((e.data, e.results.into_iter().map(|r| r.expect("complete")).collect()));
            }
        };
        entry.cursor = (k + 1) % n.max(1);
        match entry.searches[k].advance() {
            Advance::Yield(d) => {
                entry.results[k] = Some(d);
                if entry.results.iter().all(Option::is_some) {
                    let e = self.candidates.remove(idx);
                    return Some((e.data, e.results.into_iter().map(|r| r.expect("complete")).collect()));
                }
            }
            Advance::Finished => {
                self.candidates.remove(idx);
            }
            Advance::Working => {}
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn comm() -> Word {
        Word::from_powers(&[(0, 1), (1, 1), (0, -1), (1, -1)])
    }

    #[test]
    fn sym_hom_counts() {
        let p = Presentation::from_names("C2", &["a"], vec![Word::generator_power(0, 2)]).unwrap();
        assert_eq!(enum_sym_homs(&p, 2).len(), 2);
        let p = Presentation::from_names("C3", &["a"], vec![Word::generator_power(0, 3)]).unwrap();
        assert_eq!(enum_sym_homs(&p, 2).len(), 1);
        let p = Presentation::from_names("Z2", &["a", "b"], vec![comm()]).unwrap();
        assert_eq!(enum_sym_homs(&p, 2).len(), 4);
        assert_eq!(enum_sym_homs(&p, 3).len(), 18);
    }

    #[test]
    fn double_coset_test_in_s3() {
        let p = Presentation::free("F2", &["a", "b"]);
        let q = FiniteQuotient::new(
            &p,
            vec![Perm::from_one_line(&[2, 1, 3]).unwrap(), Perm::from_one_line(&[3, 2, 1]).unwrap()],
        )
        .unwrap();
        let x = [Word::generator(0)];
        let y = [Word::generator(1)];
        let ab = Word::from_powers(&[(0, 1), (1, 1)]);
        let ba = Word::from_powers(&[(1, 1), (0, 1)]);
        assert!(double_coset_image_test(&q, &x, &y, &ab).unwrap());
        assert!(!double_coset_image_test(&q, &x, &y, &ba).unwrap());
        assert!(double_coset_image_test(&q, &x, &y, &Word::empty()).unwrap());
    }

    #[test]
    fn action_search_counts_index_two_subgroups() {
        let p = Presentation::from_names("Z2", &["a", "b"], vec![comm()]).unwrap();
        let mut s = ActionSearch::new(&p, &[], Some(2));
        let mut by_degree = [0usize; 3];
        loop {
            match s.advance() {
                Advance::Yield(t) => by_degree[t.degree()] += 1,
                Advance::Working => {}
                Advance::Finished => break,
            }
        }
        assert_eq!(by_degree, [0, 1, 3]);
    }

    #[test]
    fn separating_quotient_for_finite_index() {
        let p = Presentation::from_names("Z2", &["a", "b"], vec![comm()]).unwrap();
        let x = vec![Word::generator_power(0, 2), Word::generator(1)];
        let s = find_separating_quotient(&p, &x, Budget::steps(100_000)).unwrap();
        assert_eq!(s.quotient.degree(), 2);
        assert_eq!(s.table.len(), 2);
        for w in &s.generator_witnesses {
            assert!(w.verify(p.relators(), &x));
        }

        let f = Presentation::free("F2", &["a", "b"]);
        let r = find_separating_quotient(&f, &[Word::generator(0)], Budget::steps(5_000));
        assert!(r.is_err());
    }
}
