//! Letters and freely reduced words over an interned generator alphabet.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;

/// A signed generator. Encoded as `2 * generator + inverse`, so the derived
/// ordering is generator-major with the positive letter first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u32) << 1) | inverse as u32)
    }

    pub const fn positive(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub const fn negative(generator: usize) -> Self {
        Self::new(generator, true)
    }

    /// Letter with raw code `code` (the column index used by coset tables).
    pub const fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    pub const fn code(self) -> usize {
        self.0 as usize
    }

    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn sign(self) -> i32 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// A freely reduced word. No adjacent pair of mutually inverse letters is
/// ever stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letter(l: Letter) -> Self {
        Word(alloc::vec![l])
    }

    pub fn generator(g: usize) -> Self {
        Self::letter(Letter::positive(g))
    }

    /// `g^n` for a single generator.
    pub fn generator_power(g: usize, n: i64) -> Self {
        let l = Letter::new(g, n < 0);
        Word(core::iter::repeat(l).take(n.unsigned_abs() as usize).collect())
    }

    /// Builds a word from `(generator, exponent)` pairs, reducing as it goes.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Self::reduce(powers.iter().flat_map(|&(g, n)| {
            core::iter::repeat(Letter::new(g, n < 0)).take(n.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Free product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let a = &self.0;
        let b = &other.0;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut v = Vec::with_capacity(a.len() + b.len() - 2 * k);
        v.extend_from_slice(&a[..a.len() - k]);
        v.extend_from_slice(&b[k..]);
        Word(v)
    }

    pub fn mul_letter(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        if v.last() == Some(&l.inverse()) {
            v.pop();
        } else {
            v.push(l);
        }
        Word(v)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `c · self · c⁻¹`
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// One past the largest generator index used, or 0 for the empty word.
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, rank: usize) -> Result<(), Error> {
        match self.0.iter().find(|l| l.generator() >= rank) {
            Some(l) => Err(Error::InvalidGenerator { generator: l.generator(), rank }),
            None => Ok(()),
        }
    }

    /// Exponent sum of each generator `0..rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; rank];
        for l in &self.0 {
            v[l.generator()] += l.sign() as i64;
        }
        v
    }

    /// Prefix of length `n` (which is itself reduced).
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    /// Shortlex comparison: shorter words first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Replace every letter by its image and reduce.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator()];
            if l.is_inverse() {
                for x in img.0.iter().rev() {
                    push_reduced(&mut out, x.inverse());
                }
            } else {
                for &x in &img.0 {
                    push_reduced(&mut out, x);
                }
            }
        }
        Word(out)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{:?}", l)?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}

/// Freely reduces `raw`, rejecting letters outside an alphabet of `rank`
/// generators.
pub fn free_reduce(raw: &[Letter], rank: usize) -> Result<Word, Error> {
    if let Some(l) = raw.iter().find(|l| l.generator() >= rank) {
        return Err(Error::InvalidGenerator { generator: l.generator(), rank });
    }
    Ok(Word::reduce(raw.iter().copied()))
}

/// Number of reduced words of length `len` over `rank` generators, saturating.
pub fn reduced_word_count(rank: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let q = 2 * rank as u128;
    if q == 0 {
        return 0;
    }
    let mut n = q;
    for _ in 1..len {
        n = n.saturating_mul(q - 1);
    }
    n
}

/// The `index`-th reduced word of length `len` in lexicographic letter order.
/// `index` must be below [`reduced_word_count`].
pub fn unrank_reduced_word(rank: usize, len: usize, mut index: u128) -> Word {
    let q = 2 * rank;
    let mut out = Vec::with_capacity(len);
    let mut prev: Option<Letter> = None;
    for pos in 0..len {
        let remaining = len - pos - 1;
        let block = if remaining == 0 {
            1
        } else {
            let mut b: u128 = 1;
            for _ in 0..remaining {
                b = b.saturating_mul((q - 1) as u128);
            }
            b
        };
        let choice = (index / block) as usize;
        index %= block;
        // skip the inverse of the previous letter
        let mut code = choice;
        if let Some(p) = prev {
            if code >= p.inverse().code() {
                code += 1;
            }
        }
        let l = Letter::from_code(code);
        out.push(l);
        prev = Some(l);
    }
    Word(out)
}

/// Every reduced word of length `len`, in lexicographic order.
pub fn reduced_words_of_length(rank: usize, len: usize) -> impl Iterator<Item = Word> {
    let count = reduced_word_count(rank, len);
    (0..count).map(move |i| unrank_reduced_word(rank, len, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Letter {
        Letter::positive(0)
    }
    fn b() -> Letter {
        Letter::positive(1)
    }

    #[test]
    fn cancellation_examples() {
        let w = free_reduce(&[a(), a().inverse(), b()], 2).unwrap();
        assert_eq!(w, Word::generator(1));
        assert!(free_reduce(&[], 2).unwrap().is_empty());
        let w = free_reduce(&[a(), b(), b().inverse(), a()], 2).unwrap();
        assert_eq!(w, Word::generator_power(0, 2));
    }

    #[test]
    fn invalid_generator_rejected() {
        assert_eq!(
            free_reduce(&[Letter::positive(3)], 2),
            Err(Error::InvalidGenerator { generator: 3, rank: 2 })
        );
    }

    #[test]
    fn mul_cancels_at_junction() {
        let u = Word::from_powers(&[(0, 1), (1, 1)]);
        let v = Word::from_powers(&[(1, -1), (0, 2)]);
        assert_eq!(u.mul(&v), Word::generator_power(0, 3));
        assert!(u.mul(&u.inverse()).is_empty());
    }

    #[test]
    fn unranking_is_lexicographic_and_complete() {
        for len in 0..5 {
            let words: Vec<Word> = reduced_words_of_length(2, len).collect();
            assert_eq!(words.len() as u128, reduced_word_count(2, len));
            for w in &words {
                assert_eq!(w.len(), len);
                assert_eq!(&Word::reduce(w.letters().iter().copied()), w);
            }
            for pair in words.windows(2) {
                assert!(pair[0] < pair[1]);
            }
        }
        assert_eq!(reduced_word_count(2, 3), 36);
        assert_eq!(reduced_word_count(1, 4), 2);
        assert_eq!(reduced_word_count(0, 1), 0);
    }
}
