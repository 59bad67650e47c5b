//! Free-group witnesses for membership in `⟨X, ⟪R⟫⟩ ≤ F(A)`.
//!
//! A witness is checked by free reduction alone: no group theory is needed to
//! confirm that the claimed product of subgroup generators and relator
//! conjugates equals the witnessed word.

use alloc::vec::Vec;

use crate::error::Error;
use crate::presentation::GeneratorMap;
use crate::word::{Letter, Word};

/// `conjugator · relator^±1 · conjugator⁻¹`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosureFactor {
    pub conjugator: Word,
    pub relator: usize,
    pub inverse: bool,
}

impl ClosureFactor {
    pub fn new(conjugator: Word, relator: usize, inverse: bool) -> Self {
        ClosureFactor { conjugator, relator, inverse }
    }

    pub fn sign(&self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn value(&self, relators: &[Word]) -> Word {
        let r = &relators[self.relator];
        let r = if self.inverse { r.inverse() } else { r.clone() };
        r.conjugate_by(&self.conjugator)
    }

    /// Same factor conjugated by `c`.
    pub fn conjugated(&self, c: &Word) -> Self {
        ClosureFactor { conjugator: c.mul(&self.conjugator), relator: self.relator, inverse: self.inverse }
    }

    pub fn inverted(&self) -> Self {
        ClosureFactor { conjugator: self.conjugator.clone(), relator: self.relator, inverse: !self.inverse }
    }
}

/// Freely reduced value of an ordered product of closure factors.
pub fn closure_value(factors: &[ClosureFactor], relators: &[Word]) -> Word {
    factors.iter().fold(Word::empty(), |acc, f| acc.mul(&f.value(relators)))
}

/// Inverse of a closure product, as a closure product.
pub fn closure_inverse(factors: &[ClosureFactor]) -> Vec<ClosureFactor> {
    factors.iter().rev().map(ClosureFactor::inverted).collect()
}

pub fn closure_conjugate(factors: &[ClosureFactor], c: &Word) -> Vec<ClosureFactor> {
    factors.iter().map(|f| f.conjugated(c)).collect()
}

/// `word = subgroup_word(X) · Π closure` in the free group, where
/// `subgroup_word` is spelled in the letters of a generator list `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessedElement {
    pub word: Word,
    pub subgroup_word: Word,
    pub closure: Vec<ClosureFactor>,
}

impl WitnessedElement {
    pub fn identity() -> Self {
        WitnessedElement { word: Word::empty(), subgroup_word: Word::empty(), closure: Vec::new() }
    }

    /// The generator `X[i]^±1` witnessed by itself.
    pub fn subgroup_letter(l: Letter, gens: &[Word]) -> Self {
        let g = &gens[l.generator()];
        WitnessedElement {
            word: if l.is_inverse() { g.inverse() } else { g.clone() },
            subgroup_word: Word::letter(l),
            closure: Vec::new(),
        }
    }

    /// An element of `⟪R⟫` given by a closure product alone.
    pub fn from_closure(closure: Vec<ClosureFactor>, relators: &[Word]) -> Self {
        WitnessedElement { word: closure_value(&closure, relators), subgroup_word: Word::empty(), closure }
    }

    /// Recomputes the right-hand side of the witness identity.
    pub fn evaluate(&self, relators: &[Word], gens: &[Word]) -> Word {
        self.subgroup_word.substitute(gens).mul(&closure_value(&self.closure, relators))
    }

    /// Bit-exact check of the witness identity. Out-of-range indices fail.
    pub fn verify(&self, relators: &[Word], gens: &[Word]) -> bool {
        if self.closure.iter().any(|f| f.relator >= relators.len()) {
            return false;
        }
        if self.subgroup_word.generator_bound() > gens.len() {
            return false;
        }
        self.evaluate(relators, gens) == self.word
    }

    /// Witness for `self · other`.
    pub fn mul(&self, other: &WitnessedElement, gens: &[Word]) -> Self {
        // h1 C1 h2 C2 = h1 h2 · (h2⁻¹ C1 h2) · C2
        let h2 = other.subgroup_word.substitute(gens);
        let mut closure = closure_conjugate(&self.closure, &h2.inverse());
        closure.extend(other.closure.iter().cloned());
        WitnessedElement {
            word: self.word.mul(&other.word),
            subgroup_word: self.subgroup_word.mul(&other.subgroup_word),
            closure,
        }
    }

    /// Witness for `self⁻¹`.
    pub fn inverse(&self, gens: &[Word]) -> Self {
        // (h C)⁻¹ = h⁻¹ · (h C⁻¹ h⁻¹)
        let h = self.subgroup_word.substitute(gens);
        WitnessedElement {
            word: self.word.inverse(),
            subgroup_word: self.subgroup_word.inverse(),
            closure: closure_conjugate(&closure_inverse(&self.closure), &h),
        }
    }

    /// Re-expresses the witness over a different generator list `new_gens`,
    /// given a witness over `new_gens` for each of the current generators.
    pub fn rebase(&self, relators: &[Word], gen_witnesses: &[WitnessedElement], new_gens: &[Word]) -> Self {
        let mut acc = WitnessedElement::identity();
        for &l in self.subgroup_word.letters() {
            let w = &gen_witnesses[l.generator()];
            let step = if l.is_inverse() { w.inverse(new_gens) } else { w.clone() };
            acc = acc.mul(&step, new_gens);
        }
        let tail = WitnessedElement::from_closure(self.closure.clone(), relators);
        acc.mul(&tail, new_gens)
    }

    /// Pushes the witness through a generator map. `relator_images[i]` must be
    /// a closure product over the target relators whose value is the image of
    /// source relator `i`. The generator list becomes the image of the old one.
    pub fn push_forward(
        &self,
        map: &GeneratorMap,
        relator_images: &[Vec<ClosureFactor>],
    ) -> Result<Self, Error> {
        let mut closure = Vec::new();
        for f in &self.closure {
            let c = map.substitute(&f.conjugator)?;
            let img = relator_images.get(f.relator).ok_or(Error::InvalidIndex(f.relator))?;
            let img = if f.inverse { closure_inverse(img) } else { img.clone() };
            closure.extend(closure_conjugate(&img, &c));
        }
        Ok(WitnessedElement {
            word: map.substitute(&self.word)?,
            subgroup_word: self.subgroup_word.clone(),
            closure,
        })
    }
}

/// `word = left(X) · Π closure · right(Y)` in the free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetWitness {
    pub word: Word,
    pub left: Word,
    pub closure: Vec<ClosureFactor>,
    pub right: Word,
}

impl DoubleCosetWitness {
    pub fn evaluate(&self, relators: &[Word], left_gens: &[Word], right_gens: &[Word]) -> Word {
        self.left
            .substitute(left_gens)
            .mul(&closure_value(&self.closure, relators))
            .mul(&self.right.substitute(right_gens))
    }

    pub fn verify(&self, relators: &[Word], left_gens: &[Word], right_gens: &[Word]) -> bool {
        if self.closure.iter().any(|f| f.relator >= relators.len())
            || self.left.generator_bound() > left_gens.len()
            || self.right.generator_bound() > right_gens.len()
        {
            return false;
        }
        self.evaluate(relators, left_gens, right_gens) == self.word
    }
}
