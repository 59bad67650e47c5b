//! Deterministic, resumable enumeration and the round-robin dovetailer.
//!
//! Every search in this crate is a cursor implementing [`Enumeration`]: one
//! call to [`Enumeration::advance`] is one logical step. Budgets count these
//! steps, never wall-clock time, so every result is reproducible.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::word::{reduced_word_count, unrank_reduced_word, Letter, Word};
use crate::witness::{ClosureFactor, DoubleCosetWitness, WitnessedElement};

/// Step allowance for a search. Running out is an outcome, not an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
    /// Largest permutation degree the finite-quotient searches may use.
    /// `None` lets the degree grow without bound.
    pub max_quotient_degree: Option<usize>,
}

impl Budget {
    pub const fn steps(max_steps: u64) -> Self {
        Budget { max_steps, max_quotient_degree: None }
    }

    pub const fn with_max_degree(self, degree: usize) -> Self {
        Budget { max_steps: self.max_steps, max_quotient_degree: Some(degree) }
    }
}

/// A search ran out of budget, or refuted every candidate, without a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted {
    pub steps_used: u64,
    /// Candidates (tables or map pairs) examined; zero where not meaningful.
    pub candidates_tried: u64,
}

/// Result of advancing a cursor by one logical step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Advance<T> {
    Yield(T),
    Working,
    Finished,
}

impl<T> Advance<T> {
    pub fn map<U, F: FnOnce(T) -> U>(self, f: F) -> Advance<U> {
        match self {
            Advance::Yield(t) => Advance::Yield(f(t)),
            Advance::Working => Advance::Working,
            Advance::Finished => Advance::Finished,
        }
    }
}

pub trait Enumeration {
    type Item;

    fn advance(&mut self) -> Advance<Self::Item>;

    /// Keeps only the items for which `f` returns `Some`; discarded items
    /// still cost their step.
    fn filter_map_items<U, F>(self, f: F) -> FilterMapItems<Self, F>
    where
        Self: Sized,
        F: FnMut(Self::Item) -> Option<U>,
    {
        FilterMapItems { inner: self, f }
    }

    fn boxed<'a>(self) -> Box<dyn Enumeration<Item = Self::Item> + 'a>
    where
        Self: Sized + 'a,
    {
        Box::new(self)
    }
}

impl<E: Enumeration + ?Sized> Enumeration for Box<E> {
    type Item = E::Item;
    fn advance(&mut self) -> Advance<E::Item> {
        (**self).advance()
    }
}

pub struct FilterMapItems<E, F> {
    inner: E,
    f: F,
}

impl<E, F, U> Enumeration for FilterMapItems<E, F>
where
    E: Enumeration,
    F: FnMut(E::Item) -> Option<U>,
{
    type Item = U;
    fn advance(&mut self) -> Advance<U> {
        match self.inner.advance() {
            Advance::Yield(t) => match (self.f)(t) {
                Some(u) => Advance::Yield(u),
                None => Advance::Working,
            },
            Advance::Working => Advance::Working,
            Advance::Finished => Advance::Finished,
        }
    }
}

/// Round-robin merge of several cursors under a shared step budget.
///
/// Logical step `t` advances the `t`-th unfinished stream in cyclic order, so
/// the merged sequence is a pure function of the inputs and the budget.
pub struct Dovetail<'a, T> {
    streams: Vec<Box<dyn Enumeration<Item = T> + 'a>>,
    finished: Vec<bool>,
    turn: usize,
    steps: u64,
    max_steps: u64,
}

impl<'a, T> Dovetail<'a, T> {
    pub fn new(streams: Vec<Box<dyn Enumeration<Item = T> + 'a>>, budget: Budget) -> Self {
        let n = streams.len();
        Dovetail { streams, finished: alloc::vec![false; n], turn: 0, steps: 0, max_steps: budget.max_steps }
    }

    pub fn steps_used(&self) -> u64 {
        self.steps
    }

    pub fn budget_exhausted(&self) -> bool {
        self.steps >= self.max_steps
    }

    pub fn all_finished(&self) -> bool {
        self.finished.iter().all(|&f| f)
    }

    pub fn is_finished(&self, i: usize) -> bool {
        self.finished[i]
    }

    /// Performs one logical step. `None` means the budget is spent or every
    /// stream has finished.
    pub fn step(&mut self) -> Option<Advance<(usize, T)>> {
        if self.budget_exhausted() || self.all_finished() {
            return None;
        }
        let n = self.streams.len();
        while self.finished[self.turn % n] {
            self.turn += 1;
        }
        let i = self.turn % n;
        self.turn += 1;
        self.steps += 1;
        Some(match self.streams[i].advance() {
            Advance::Yield(t) => Advance::Yield((i, t)),
            Advance::Working => Advance::Working,
            Advance::Finished => {
                self.finished[i] = true;
                Advance::Finished
            }
        })
    }
}

impl<'a, T> Iterator for Dovetail<'a, T> {
    type Item = (usize, T);
    fn next(&mut self) -> Option<(usize, T)> {
        loop {
            match self.step()? {
                Advance::Yield(x) => return Some(x),
                _ => continue,
            }
        }
    }
}

/// Canonical enumeration of `⟨X⟩ · ⟪R⟫ · ⟨Y⟩ ≤ F(A)`.
///
/// Candidates are `h(X) · Π cᵢ rᵢ^±1 cᵢ⁻¹ · k(Y)` with `h`, `k` reduced words
/// in the letters of `X`, `Y` and each `cᵢ` a reduced word over `A`. They are
/// ordered by size `|h| + Σ(1 + |cᵢ|) + |k|`, then by factor count,
/// factor-size composition, the split between `h` and `k`, and lexicographic
/// digits. Each candidate is one step; only words not emitted before are
/// yielded.
pub struct ProductEnumeration {
    rank: usize,
    relators: Vec<Word>,
    gens: Vec<Word>,
    right_gens: Vec<Word>,
    size: usize,
    shapes: Vec<Shape>,
    shape_idx: usize,
    digits: Vec<u128>,
    radices: Vec<u128>,
    fresh_shape: bool,
    seen: BTreeSet<Word>,
    done: bool,
}

#[derive(Clone, Debug)]
struct Shape {
    subgroup_len: usize,
    factor_sizes: Vec<usize>,
    right_len: usize,
}

impl ProductEnumeration {
    pub fn new(rank: usize, relators: &[Word], left: &[Word], right: &[Word]) -> Self {
        let mut e = ProductEnumeration {
            rank,
            relators: relators.to_vec(),
            gens: left.to_vec(),
            right_gens: right.to_vec(),
            size: 0,
            shapes: Vec::new(),
            shape_idx: 0,
            digits: Vec::new(),
            radices: Vec::new(),
            fresh_shape: true,
            seen: BTreeSet::new(),
            done: false,
        };
        e.shapes = e.shapes_of_size(0);
        e
    }

    fn shapes_of_size(&self, s: usize) -> Vec<Shape> {
        let mut out = Vec::new();
        let max_k = if self.relators.is_empty() { 0 } else { s };
        for k in 0..=max_k {
            let mut comp = Vec::new();
            compositions(s, k, &mut comp, &mut |parts: &[usize]| {
                let used: usize = parts.iter().sum();
                let m = s - used;
                for right_len in 0..=m {
                    let left_len = m - right_len;
                    if (left_len > 0 && self.gens.is_empty()) || (right_len > 0 && self.right_gens.is_empty()) {
                        continue;
                    }
                    out.push(Shape { subgroup_len: left_len, factor_sizes: parts.to_vec(), right_len });
                }
            });
        }
        out
    }

    fn load_shape(&mut self) -> bool {
        let shape = &self.shapes[self.shape_idx];
        let mut radices = Vec::with_capacity(1 + 2 * shape.factor_sizes.len());
        radices.push(reduced_word_count(self.gens.len(), shape.subgroup_len));
        for &t in &shape.factor_sizes {
            radices.push(2 * self.relators.len() as u128);
            radices.push(reduced_word_count(self.rank, t - 1));
        }
        radices.push(reduced_word_count(self.right_gens.len(), shape.right_len));
        let nonempty = radices.iter().all(|&r| r > 0);
        self.digits = alloc::vec![0; radices.len()];
        self.radices = radices;
        nonempty
    }

    fn can_grow(&self) -> bool {
        !self.relators.is_empty() || !self.gens.is_empty() || !self.right_gens.is_empty()
    }

    /// Moves to the next nonempty shape. Returns false when no candidate of
    /// any larger size can exist.
    fn next_shape(&mut self) -> bool {
        loop {
            if self.shape_idx + 1 < self.shapes.len() {
                self.shape_idx += 1;
            } else {
                if !self.can_grow() {
                    return false;
                }
                self.size += 1;
                self.shapes = self.shapes_of_size(self.size);
                self.shape_idx = 0;
                if self.shapes.is_empty() {
                    continue;
                }
            }
            if self.load_shape() {
                return true;
            }
        }
    }

    fn current_candidate(&self) -> DoubleCosetWitness {
        let shape = &self.shapes[self.shape_idx];
        let subgroup_word = unrank_reduced_word(self.gens.len(), shape.subgroup_len, self.digits[0]);
        let mut closure = Vec::with_capacity(shape.factor_sizes.len());
        for (i, &t) in shape.factor_sizes.iter().enumerate() {
            let choice = self.digits[1 + 2 * i] as usize;
            let conjugator = unrank_reduced_word(self.rank, t - 1, self.digits[2 + 2 * i]);
            closure.push(ClosureFactor::new(conjugator, choice / 2, choice % 2 == 1));
        }
        let right = unrank_reduced_word(self.right_gens.len(), shape.right_len, self.digits[self.digits.len() - 1]);
        let mut w = DoubleCosetWitness { word: Word::empty(), left: subgroup_word, closure, right };
        w.word = w.evaluate(&self.relators, &self.gens, &self.right_gens);
        w
    }

    /// Advances the odometer; false when the current shape is exhausted.
    fn increment(&mut self) -> bool {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

impl Enumeration for ProductEnumeration {
    type Item = DoubleCosetWitness;

    fn advance(&mut self) -> Advance<DoubleCosetWitness> {
        if self.done {
            return Advance::Finished;
        }
        if self.fresh_shape {
            self.fresh_shape = false;
            if !self.load_shape() && !self.next_shape() {
                self.done = true;
                return Advance::Finished;
            }
        }
        let cand = self.current_candidate();
        if !self.increment() && !self.next_shape() {
            self.done = true;
        }
        if self.seen.insert(cand.word.clone()) {
            Advance::Yield(cand)
        } else {
            Advance::Working
        }
    }
}

/// Canonical enumeration of `⟨X, ⟪R⟫⟩ ≤ F(A)`: the product enumeration
/// with no right factor.
pub struct ClosureEnumeration(ProductEnumeration);

impl ClosureEnumeration {
    /// Enumerates the normal closure `⟪R⟫` of the relators.
    pub fn normal_closure(rank: usize, relators: &[Word]) -> Self {
        Self::subgroup_join(rank, relators, &[])
    }

    /// Enumerates `⟨X, ⟪R⟫⟩`.
    pub fn subgroup_join(rank: usize, relators: &[Word], gens: &[Word]) -> Self {
        ClosureEnumeration(ProductEnumeration::new(rank, relators, gens, &[]))
    }
}

impl Enumeration for ClosureEnumeration {
    type Item = WitnessedElement;

    fn advance(&mut self) -> Advance<WitnessedElement> {
        self.0.advance().map(|d| WitnessedElement { word: d.word, subgroup_word: d.left, closure: d.closure })
    }
}

/// Calls `f` with every composition of at most `total` into exactly `k`
/// positive parts, in lexicographic order.
fn compositions(total: usize, k: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if k == 0 {
        f(buf);
        return;
    }
    let used: usize = buf.iter().sum();
    // leave at least one unit for each remaining part
    let remaining_parts = k - 1;
    if used + 1 + remaining_parts > total {
        return;
    }
    for t in 1..=(total - used - remaining_parts) {
        buf.push(t);
        compositions(total, k - 1, buf, f);
        buf.pop();
    }
}

/// Enumerates tuples of reduced words (one per component, each over its own
/// alphabet) by total length, then lexicographically.
pub struct WordTuples {
    ranks: Vec<usize>,
    total: usize,
    lengths: Vec<Vec<usize>>,
    length_idx: usize,
    digits: Vec<u128>,
    radices: Vec<u128>,
    started: bool,
}

impl WordTuples {
    pub fn new(ranks: Vec<usize>) -> Self {
        WordTuples {
            ranks,
            total: 0,
            lengths: Vec::new(),
            length_idx: 0,
            digits: Vec::new(),
            radices: Vec::new(),
            started: false,
        }
    }

    fn length_vectors(&self, total: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut buf = Vec::new();
        weak_compositions(total, self.ranks.len(), &mut buf, &mut out);
        out
    }

    fn load(&mut self) -> bool {
        let lens = &self.lengths[self.length_idx];
        self.radices = lens.iter().zip(&self.ranks).map(|(&l, &r)| reduced_word_count(r, l)).collect();
        self.digits = alloc::vec![0; self.radices.len()];
        self.radices.iter().all(|&r| r > 0)
    }

    fn next_lengths(&mut self) -> bool {
        loop {
            if self.length_idx + 1 < self.lengths.len() {
                self.length_idx += 1;
            } else {
                if self.ranks.iter().all(|&r| r == 0) && self.total > 0 {
                    return false;
                }
                self.total += 1;
                if self.ranks.is_empty() {
                    return false;
                }
                self.lengths = self.length_vectors(self.total);
                self.length_idx = 0;
            }
            if self.load() {
                return true;
            }
        }
    }

    /// Next tuple; `None` only when the enumeration is finite and done.
    pub fn next_tuple(&mut self) -> Option<Vec<Word>> {
        if !self.started {
            self.started = true;
            self.lengths = self.length_vectors(0);
            self.length_idx = 0;
            if !self.load() && !self.next_lengths() {
                return None;
            }
        } else {
            let mut carried = true;
            for i in (0..self.digits.len()).rev() {
                self.digits[i] += 1;
                if self.digits[i] < self.radices[i] {
                    carried = false;
                    break;
                }
                self.digits[i] = 0;
            }
            if carried && !self.next_lengths() {
                return None;
            }
        }
        let lens = &self.lengths[self.length_idx];
        Some(
            lens.iter()
                .zip(&self.ranks)
                .zip(&self.digits)
                .map(|((&l, &r), &d)| unrank_reduced_word(r, l, d))
                .collect(),
        )
    }

    pub fn current_total(&self) -> usize {
        self.total
    }
}

/// Length vectors summing to `total`, earlier coordinates largest first.
fn weak_compositions(total: usize, k: usize, buf: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == 0 {
        if total == 0 {
            out.push(buf.clone());
        }
        return;
    }
    if k == 1 {
        buf.push(total);
        out.push(buf.clone());
        buf.pop();
        return;
    }
    for t in (0..=total).rev() {
        buf.push(t);
        weak_compositions(total - t, k - 1, buf, out);
        buf.pop();
    }
}

/// Letters `X[i]^±1` in canonical order.
pub fn subgroup_letters(count: usize) -> impl Iterator<Item = Letter> {
    (0..2 * count).map(Letter::from_code)
}
