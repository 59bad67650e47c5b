//! Finite presentations, generator sets, generator maps and decorated
//! presentations.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::Error;
use crate::word::Word;

/// A finite presentation `⟨A | R⟩`. Generators are interned to their
/// position; names live in a side table.
///
/// Relators are stored freely reduced and nonempty. Freely trivial relators
/// are dropped on construction; nothing else is simplified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: Option<String>,
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        name: Option<&str>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, Error> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let rank = generators.len();
        for r in &relators {
            r.check_alphabet(rank)?;
        }
        Ok(Presentation {
            name: name.map(|s| s.to_string()),
            generators,
            relators: relators.into_iter().filter(|r| !r.is_empty()).collect(),
        })
    }

    /// Convenience constructor from string names.
    pub fn from_names(name: &str, generators: &[&str], relators: Vec<Word>) -> Result<Self, Error> {
        Self::new(Some(name), generators.iter().map(|s| s.to_string()).collect(), relators)
    }

    /// The free group on the given names.
    pub fn free(name: &str, generators: &[&str]) -> Self {
        Self::from_names(name, generators, Vec::new()).expect("free presentation")
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// The same generators with extra relators appended.
    pub fn with_extra_relators(&self, extra: &[Word]) -> Result<Self, Error> {
        let mut rels = self.relators.clone();
        rels.extend(extra.iter().cloned());
        Presentation::new(self.name(), self.generators.clone(), rels)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), Error> {
        w.check_alphabet(self.rank())
    }

    /// Compact exponent notation, e.g. `a^2 b^-1`; the empty word is `1`.
    pub fn format_word(&self, w: &Word) -> String {
        format_word_with(&self.generators, w)
    }

    /// `group NAME = < g1, g2 | r1, r2 >`
    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        let pad = |s: String| if s.is_empty() { s } else { format!(" {}", s) };
        format!(
            "group {} = <{} |{} >",
            self.name.as_deref().unwrap_or("G"),
            pad(self.generators.join(", ")),
            pad(rels.join(", "))
        )
    }
}

pub fn format_word_with(names: &[String], w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let name = &names[l.generator()];
        let exp = run as i64 * l.sign() as i64;
        parts.push(if exp == 1 { name.clone() } else { format!("{}^{}", name, exp) });
        i += run;
    }
    parts.join(" ")
}

/// A finite list of words over a presentation's alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorSet(Vec<Word>);

impl GeneratorSet {
    pub fn new(base: &Presentation, elements: Vec<Word>) -> Result<Self, Error> {
        for w in &elements {
            base.check_word(w)?;
        }
        Ok(GeneratorSet(elements))
    }

    pub fn into_inner(self) -> Vec<Word> {
        self.0
    }
}

impl Deref for GeneratorSet {
    type Target = [Word];
    fn deref(&self) -> &[Word] {
        &self.0
    }
}

/// An assignment of one target word per source generator. Whether it
/// descends to a homomorphism of the presented groups is a separate,
/// witnessed fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    source_rank: usize,
    target_rank: usize,
    images: Vec<Word>,
}

impl GeneratorMap {
    pub fn new(source: &Presentation, target: &Presentation, images: Vec<Word>) -> Result<Self, Error> {
        Self::from_ranks(source.rank(), target.rank(), images)
    }

    pub fn from_ranks(source_rank: usize, target_rank: usize, images: Vec<Word>) -> Result<Self, Error> {
        if images.len() != source_rank {
            return Err(Error::ImageCountMismatch { expected: source_rank, found: images.len() });
        }
        for w in &images {
            w.check_alphabet(target_rank)?;
        }
        Ok(GeneratorMap { source_rank, target_rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        GeneratorMap {
            source_rank: rank,
            target_rank: rank,
            images: (0..rank).map(Word::generator).collect(),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `w`, freely reduced.
    pub fn substitute(&self, w: &Word) -> Result<Word, Error> {
        w.check_alphabet(self.source_rank)
            .map_err(|_| Error::AlphabetMismatch { expected: self.source_rank, found: w.generator_bound() })?;
        Ok(w.substitute(&self.images))
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &GeneratorMap) -> Result<GeneratorMap, Error> {
        if self.target_rank != other.source_rank {
            return Err(Error::AlphabetMismatch { expected: other.source_rank, found: self.target_rank });
        }
        Ok(GeneratorMap {
            source_rank: self.source_rank,
            target_rank: other.target_rank,
            images: self.images.iter().map(|w| w.substitute(&other.images)).collect(),
        })
    }
}

/// One edge of a decoration: an edge presentation and its inclusion into the
/// vertex group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    pub presentation: Presentation,
    pub inclusion: GeneratorMap,
}

/// A vertex presentation together with an indexed family of edge subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedPresentation {
    vertex: Presentation,
    edges: Vec<Decoration>,
}

impl DecoratedPresentation {
    pub fn new(vertex: Presentation, edges: Vec<Decoration>) -> Result<Self, Error> {
        for e in &edges {
            if e.inclusion.source_rank() != e.presentation.rank() {
                return Err(Error::AlphabetMismatch {
                    expected: e.presentation.rank(),
                    found: e.inclusion.source_rank(),
                });
            }
            if e.inclusion.target_rank() != vertex.rank() {
                return Err(Error::AlphabetMismatch { expected: vertex.rank(), found: e.inclusion.target_rank() });
            }
        }
        Ok(DecoratedPresentation { vertex, edges })
    }

    pub fn vertex(&self) -> &Presentation {
        &self.vertex
    }

    pub fn edges(&self) -> &[Decoration] {
        &self.edges
    }

    /// Generators of the `i`-th edge subgroup as words in the vertex group.
    pub fn edge_generators(&self, i: usize) -> Result<&[Word], Error> {
        self.edges.get(i).map(|e| e.inclusion.images()).ok_or(Error::InvalidIndex(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn substitute_examples() {
        // a ↦ x y, b ↦ y⁻¹ over ⟨x, y⟩
        let src = Presentation::free("F", &["a", "b"]);
        let tgt = Presentation::free("G", &["x", "y"]);
        let map = GeneratorMap::new(
            &src,
            &tgt,
            vec![Word::from_powers(&[(0, 1), (1, 1)]), Word::generator_power(1, -1)],
        )
        .unwrap();
        let ab = Word::from_powers(&[(0, 1), (1, 1)]);
        assert_eq!(map.substitute(&ab).unwrap(), Word::generator(0));

        let id = GeneratorMap::identity(2);
        assert_eq!(id.substitute(&ab).unwrap(), ab);

        let swap = GeneratorMap::new(&src, &src, vec![Word::generator(1), Word::generator(1)]).unwrap();
        assert_eq!(swap.substitute(&Word::generator_power(0, 3)).unwrap(), Word::generator_power(1, 3));
    }

    #[test]
    fn substitute_rejects_foreign_letters() {
        let id = GeneratorMap::identity(1);
        assert!(id.substitute(&Word::generator(1)).is_err());
    }

    #[test]
    fn duplicate_generators_rejected() {
        let r = Presentation::from_names("G", &["a", "a"], vec![]);
        assert_eq!(r, Err(Error::DuplicateGenerator("a".into())));
    }

    #[test]
    fn freely_trivial_relators_dropped() {
        let p = Presentation::from_names("G", &["a"], vec![Word::empty(), Word::generator_power(0, 2)]).unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn formatting() {
        let p = Presentation::from_names(
            "T",
            &["x", "y"],
            vec![Word::from_powers(&[(0, 2), (1, -3)])],
        )
        .unwrap();
        assert_eq!(p.to_text(), "group T = < x, y | x^2 y^-3 >");
        assert_eq!(p.format_word(&Word::empty()), "1");
    }
}
