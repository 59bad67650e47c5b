//! Derivation search: a targeted positive certifier for
//! `z ∈ ⟨X⟩ · ⟪R⟫ · ⟨Y⟩ ≤ F(A)`.
//!
//! States are reduced words `w` with `z = h(X) · w · K · h'(Y)`, where `K` is
//! a product of relator conjugates. From `w` one may strip an `X`-letter on the
//! left, a `Y`-letter on the right, or insert a cyclic conjugate of a relator
//! (or its inverse) at any position. Reaching the empty word yields a witness.
//! Relator insertions are invertible moves, so by van Kampen's lemma every
//! member is reached once the length bound is large enough; the bound is
//! raised one letter per round.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::enumerate::{Advance, Enumeration};
use crate::witness::{closure_conjugate, ClosureFactor, DoubleCosetWitness, WitnessedElement};
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
struct Rotation {
    word: Word,
    prefix: Word,
    relator: usize,
    inverse: bool,
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Left(u32),
    Right(u32),
    Insert { rotation: u32, position: u32 },
}

struct Node {
    word: Word,
    parent: u32,
    mv: Option<Move>,
}

/// The decomposition found by a [`DerivationSearch`]:
/// `target = left(X) · Π closure · right(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub target: Word,
    pub left: Word,
    pub closure: Vec<ClosureFactor>,
    pub right: Word,
}

impl Derivation {
    pub fn into_element(self) -> WitnessedElement {
        debug_assert!(self.right.is_empty());
        WitnessedElement { word: self.target, subgroup_word: self.left, closure: self.closure }
    }

    pub fn into_double_coset(self) -> DoubleCosetWitness {
        DoubleCosetWitness { word: self.target, left: self.left, closure: self.closure, right: self.right }
    }
}

pub struct DerivationSearch {
    relators: Vec<Word>,
    left: Vec<Word>,
    right: Vec<Word>,
    rotations: Vec<Rotation>,
    target: Word,
    bound: usize,
    nodes: Vec<Node>,
    heap: BinaryHeap<Reverse<(usize, u32)>>,
    visited: BTreeSet<u64>,
    pruned: bool,
    started: bool,
    done: bool,
}

impl DerivationSearch {
    /// Search for `target ∈ ⟨left⟩ · ⟪relators⟫ · ⟨right⟩`.
    pub fn new(relators: &[Word], left: &[Word], right: &[Word], target: Word) -> Self {
        let mut rotations: Vec<Rotation> = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, r) in relators.iter().enumerate() {
            for inverse in [false, true] {
                let base = if inverse { r.inverse() } else { r.clone() };
                for j in 0..base.len().max(1) {
                    let prefix = base.prefix(j.min(base.len()));
                    let word = base.conjugate_by(&prefix.inverse());
                    if word.is_empty() || !seen.insert(word.clone()) {
                        continue;
                    }
                    rotations.push(Rotation { word, prefix, relator: i, inverse });
                }
            }
        }
        DerivationSearch {
            relators: relators.to_vec(),
            left: left.to_vec(),
            right: right.to_vec(),
            rotations,
            bound: target.len(),
            target,
            nodes: Vec::new(),
            heap: BinaryHeap::new(),
            visited: BTreeSet::new(),
            pruned: false,
            started: false,
            done: false,
        }
    }

    /// Search for `target ∈ ⟨gens, ⟪relators⟫⟩`.
    pub fn membership(relators: &[Word], gens: &[Word], target: Word) -> Self {
        Self::new(relators, gens, &[], target)
    }

    /// Search for `target ∈ ⟪relators⟫`.
    pub fn triviality(relators: &[Word], target: Word) -> Self {
        Self::new(relators, &[], &[], target)
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn start_round(&mut self) {
        self.nodes.clear();
        self.heap.clear();
        self.visited.clear();
        self.pruned = false;
        self.visited.insert(word_hash(&self.target));
        self.nodes.push(Node { word: self.target.clone(), parent: u32::MAX, mv: None });
        self.heap.push(Reverse((self.target.len(), 0)));
    }

    fn apply(&self, w: &Word, mv: Move) -> Word {
        match mv {
            Move::Left(code) => {
                let l = Letter::from_code(code as usize);
                letter_value(&self.left, l).inverse().mul(w)
            }
            Move::Right(code) => {
                let l = Letter::from_code(code as usize);
                w.mul(&letter_value(&self.right, l).inverse())
            }
            Move::Insert { rotation, position } => {
                let rot = &self.rotations[rotation as usize];
                let p = position as usize;
                w.prefix(p).mul(&rot.word).mul(&w.suffix_from(p))
            }
        }
    }

    fn moves(&self, w: &Word) -> impl Iterator<Item = Move> + '_ {
        let left = (0..2 * self.left.len() as u32).map(Move::Left);
        let right = (0..2 * self.right.len() as u32).map(Move::Right);
        let positions = w.len() as u32 + 1;
        let inserts = (0..self.rotations.len() as u32)
            .flat_map(move |rotation| (0..positions).map(move |position| Move::Insert { rotation, position }));
        left.chain(right).chain(inserts)
    }

    fn reconstruct(&self, leaf: u32, last: Move) -> Derivation {
        let mut path = alloc::vec![last];
        let mut i = leaf;
        while let Some(mv) = self.nodes[i as usize].mv {
            path.push(mv);
            i = self.nodes[i as usize].parent;
        }
        path.reverse();

        let mut w = self.target.clone();
        let mut left = Word::empty();
        let mut right = Word::empty();
        let mut closure: Vec<ClosureFactor> = Vec::new();
        for mv in path {
            match mv {
                Move::Left(code) => left = left.mul_letter(Letter::from_code(code as usize)),
                Move::Right(code) => {
                    let l = Letter::from_code(code as usize);
                    closure = closure_conjugate(&closure, &letter_value(&self.right, l));
                    right = Word::letter(l).mul(&right);
                }
                Move::Insert { rotation, position } => {
                    let rot = &self.rotations[rotation as usize];
                    let v = w.suffix_from(position as usize);
                    let conjugator = v.inverse().mul(&rot.prefix.inverse());
                    closure.insert(0, ClosureFactor::new(conjugator, rot.relator, !rot.inverse));
                }
            }
            w = self.apply(&w, mv);
        }
        debug_assert!(w.is_empty());
        Derivation { target: self.target.clone(), left, closure, right }
    }
}

impl Enumeration for DerivationSearch {
    type Item = Derivation;

    fn advance(&mut self) -> Advance<Derivation> {
        if self.done {
            return Advance::Finished;
        }
        if !self.started {
            self.started = true;
            if self.target.is_empty() {
                self.done = true;
                return Advance::Yield(Derivation {
                    target: Word::empty(),
                    left: Word::empty(),
                    closure: Vec::new(),
                    right: Word::empty(),
                });
            }
            self.start_round();
        }
        let Reverse((_, idx)) = match self.heap.pop() {
            Some(x) => x,
            None => {
                if !self.pruned {
                    self.done = true;
                    return Advance::Finished;
                }
                self.bound += 1;
                self.start_round();
                self.heap.pop().expect("root queued")
            }
        };
        let w = core::mem::take(&mut self.nodes[idx as usize].word);
        let mut found = None;
        let mut children = Vec::new();
        let moves: Vec<Move> = self.moves(&w).collect();
        for mv in moves {
            let next = self.apply(&w, mv);
            if next.is_empty() {
                found = Some(mv);
                break;
            }
            if next.len() > self.bound {
                self.pruned = true;
                continue;
            }
            if self.visited.insert(word_hash(&next)) {
                children.push((next, mv));
            }
        }
        if let Some(mv) = found {
            self.done = true;
            let d = self.reconstruct(idx, mv);
            self.nodes.clear();
            self.heap.clear();
            self.visited.clear();
            return Advance::Yield(d);
        }
        for (word, mv) in children {
            let id = self.nodes.len() as u32;
            self.heap.push(Reverse((word.len(), id)));
            self.nodes.push(Node { word, parent: idx, mv: Some(mv) });
        }
        Advance::Working
    }
}

fn letter_value(gens: &[Word], l: Letter) -> Word {
    let g = &gens[l.generator()];
    if l.is_inverse() {
        g.inverse()
    } else {
        g.clone()
    }
}

// FNV-1a over letter codes. A collision can only hide a state, never produce
// an invalid witness.
fn word_hash(w: &Word) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for l in w.letters() {
        for b in (l.code() as u32).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h ^ (w.len() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs a search until it yields, finishes, or `steps` advances are spent.
/// Returns the result and the number of steps used.
pub fn run_to_completion<E: Enumeration>(e: &mut E, steps: u64) -> (Option<E::Item>, u64) {
    let mut used = 0;
    while used < steps {
        used += 1;
        match e.advance() {
            Advance::Yield(x) => return (Some(x), used),
            Advance::Working => {}
            Advance::Finished => return (None, used),
        }
    }
    (None, used)
}
