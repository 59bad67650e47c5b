//! Coset tables of quotient preimages and Reidemeister–Schreier rewriting.
//!
//! Cosets are right cosets `Hw` of `H = f⁻¹(G₀)`, so a word lies in `H`
//! exactly when it traces coset 0 back to itself.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::perm::{perm_closure, Perm};
use crate::presentation::{GeneratorMap, Presentation};
use crate::quotient::FiniteQuotient;
use crate::witness::ClosureFactor;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    base: Presentation,
    quotient: FiniteQuotient,
    reps: Vec<Word>,
    action: Vec<usize>,
    // Schreier generator index of (coset, base generator); None on tree edges
    schreier: Vec<Option<usize>>,
    schreier_gens: Vec<(usize, usize)>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum CosetKey {
    Point(usize),
    Coset(Perm),
}

/// Builds the table of right cosets of `f⁻¹(G₀)` by breadth-first search over
/// the positive generators in order. Since the image group is finite every
/// coset is reached by a positive word; each representative is the
/// shortlex-least positive word reaching its coset, and the representatives
/// form a prefix-closed tree.
pub fn coset_table(p: &Presentation, q: &FiniteQuotient) -> Result<CosetTable, Error> {
    let marked = q.marked().ok_or(Error::MissingMarkedSubgroup)?;
    if q.images().len() != p.rank() {
        return Err(Error::ImageCountMismatch { expected: p.rank(), found: q.images().len() });
    }
    q.check_relators(p.relators())?;
    let g0 = match marked.point {
        Some(_) => None,
        None => Some(perm_closure(q.degree(), &marked.generators)?),
    };
    let key = |g: &Perm| match (marked.point, &g0) {
        (Some(pt), _) => CosetKey::Point(g.apply(pt)),
        (None, Some(h)) => CosetKey::Coset(h.elements().iter().map(|x| x.then(g)).min().expect("nonempty")),
        (None, None) => unreachable!(),
    };
    let rank = p.rank();
    let columns = 2 * rank;
    let id = Perm::identity(q.degree());
    let mut index = BTreeMap::new();
    index.insert(key(&id), 0usize);
    let mut elems = alloc::vec![id];
    let mut reps = alloc::vec![Word::empty()];
    let mut forward: Vec<usize> = Vec::new();
    let mut c = 0;
    while c < elems.len() {
        for (g, img) in q.images().iter().enumerate() {
            let h = elems[c].then(img);
            let k = key(&h);
            let target = match index.get(&k) {
                Some(&t) => t,
                None => {
                    let t = elems.len();
                    index.insert(k, t);
                    reps.push(reps[c].mul_letter(Letter::positive(g)));
                    elems.push(h);
                    t
                }
            };
            forward.push(target);
        }
        c += 1;
    }
    let mut action = alloc::vec![0usize; reps.len() * columns];
    for c in 0..reps.len() {
        for g in 0..rank {
            let t = forward[c * rank + g];
            action[c * columns + 2 * g] = t;
            action[t * columns + 2 * g + 1] = c;
        }
    }
    let k = reps.len();
    let mut schreier = alloc::vec![None; k * rank];
    let mut schreier_gens = Vec::new();
    for c in 0..k {
        for g in 0..rank {
            let t = action[c * columns + 2 * g];
            let w = reps[c].mul_letter(Letter::positive(g)).mul(&reps[t].inverse());
            if !w.is_empty() {
                schreier[c * rank + g] = Some(schreier_gens.len());
                schreier_gens.push((c, g));
            }
        }
    }
    Ok(CosetTable { base: p.clone(), quotient: q.clone(), reps, action, schreier, schreier_gens })
}

impl CosetTable {
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn quotient(&self) -> &FiniteQuotient {
        &self.quotient
    }

    /// Number of cosets, the index of the subgroup.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.action[coset * 2 * self.base.rank() + l.code()]
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The coset containing `w`; `w` lies in the subgroup iff this is 0.
    pub fn coset_rep_of(&self, w: &Word) -> usize {
        self.trace(0, w)
    }

    /// `(coset, base generator)` of each Schreier generator, in order.
    pub fn schreier_generators(&self) -> &[(usize, usize)] {
        &self.schreier_gens
    }

    /// `rep_c · a · rep_{c·a}⁻¹`
    pub fn schreier_word(&self, coset: usize, g: usize) -> Word {
        let t = self.act(coset, Letter::positive(g));
        self.reps[coset].mul_letter(Letter::positive(g)).mul(&self.reps[t].inverse())
    }

    /// Rewrites `w`, read from `start`, over the Schreier generators. Returns
    /// the rewritten word and the coset reached. When the end coset is
    /// `start`, the embedding of the result equals `rep · w · rep⁻¹`.
    pub fn rewrite(&self, start: usize, w: &Word) -> (Word, usize) {
        let rank = self.base.rank();
        let mut c = start;
        let mut out = Vec::new();
        for &l in w.letters() {
            let g = l.generator();
            if l.is_inverse() {
                let prev = self.act(c, l);
                if let Some(i) = self.schreier[prev * rank + g] {
                    out.push(Letter::negative(i));
                }
                c = prev;
            } else {
                if let Some(i) = self.schreier[c * rank + g] {
                    out.push(Letter::positive(i));
                }
                c = self.act(c, l);
            }
        }
        (Word::reduce(out), c)
    }

    /// Orbit of coset 0 under a subgroup `⟨H⟩` of the ambient group, with a
    /// transversal and Schreier generators for `⟨H⟩ ∩ K`, where `K` is the
    /// subgroup of this table.
    pub fn subgroup_orbit(&self, h: &[Word]) -> SubgroupOrbit {
        let mut transversal: Vec<Option<(Word, Word)>> = alloc::vec![None; self.len()];
        transversal[0] = Some((Word::empty(), Word::empty()));
        let mut orbit = alloc::vec![0usize];
        let mut i = 0;
        while i < orbit.len() {
            let c = orbit[i];
            for (j, w) in h.iter().enumerate() {
                for inverse in [false, true] {
                    let l = Letter::new(j, inverse);
                    let target = self.trace(c, &if inverse { w.inverse() } else { w.clone() });
                    if transversal[target].is_none() {
                        let (t, th) = transversal[c].clone().expect("orbit cosets have transversal words");
                        let step = if inverse { w.inverse() } else { w.clone() };
                        transversal[target] = Some((t.mul(&step), th.mul_letter(l)));
                        orbit.push(target);
                    }
                }
            }
            i += 1;
        }
        let mut generators: Vec<(Word, Word)> = Vec::new();
        for &c in &orbit {
            let (t, th) = transversal[c].clone().expect("orbit coset");
            for (j, w) in h.iter().enumerate() {
                let target = self.trace(c, w);
                let (u, uh) = transversal[target].clone().expect("orbit coset");
                let g = t.mul(w).mul(&u.inverse());
                if g.is_empty() || generators.iter().any(|(x, _)| *x == g) {
                    continue;
                }
                generators.push((g, th.mul_letter(Letter::positive(j)).mul(&uh.inverse())));
            }
        }
        SubgroupOrbit { orbit, transversal, generators }
    }

    /// Reidemeister–Schreier presentation of the subgroup with its embedding.
    pub fn reidemeister_schreier(&self) -> SchreierPresentation {
        let names: Vec<String> = self
            .schreier_gens
            .iter()
            .map(|&(c, g)| format!("{}_{}", self.base.generators()[g], c))
            .collect();
        let mut relators = Vec::new();
        let mut relator_origins = Vec::new();
        for c in 0..self.len() {
            for (j, r) in self.base.relators().iter().enumerate() {
                let (w, end) = self.rewrite(c, r);
                debug_assert_eq!(end, c);
                if !w.is_empty() {
                    relators.push(w);
                    relator_origins.push((c, j));
                }
            }
        }
        let name = format!("{}_index{}", self.base.name().unwrap_or("G"), self.len());
        let presentation =
            Presentation::new(Some(&name), names, relators).expect("Schreier names are distinct and letters valid");
        let images = self.schreier_gens.iter().map(|&(c, g)| self.schreier_word(c, g)).collect();
        let embedding = GeneratorMap::from_ranks(self.schreier_gens.len(), self.base.rank(), images)
            .expect("images are base words");
        SchreierPresentation { presentation, embedding, generators: self.schreier_gens.clone(), relator_origins }
    }
}

/// Output of [`CosetTable::subgroup_orbit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupOrbit {
    /// Cosets reached from coset 0, in discovery order.
    pub orbit: Vec<usize>,
    /// For each coset in the orbit, a word `t` with `0 · t = c` and the same
    /// element spelled in the letters of `H`.
    pub transversal: Vec<Option<(Word, Word)>>,
    /// Generators of `⟨H⟩ ∩ K` as ambient words, each with its spelling in
    /// the letters of `H`.
    pub generators: Vec<(Word, Word)>,
}

impl SubgroupOrbit {
    pub fn contains(&self, coset: usize) -> bool {
        self.transversal.get(coset).map_or(false, Option::is_some)
    }

    pub fn generator_words(&self) -> Vec<Word> {
        self.generators.iter().map(|(g, _)| g.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierPresentation {
    pub presentation: Presentation,
    pub embedding: GeneratorMap,
    pub generators: Vec<(usize, usize)>,
    /// `(coset, base relator)` each subgroup relator was rewritten from.
    pub relator_origins: Vec<(usize, usize)>,
}

impl SchreierPresentation {
    /// For each subgroup relator, a one-factor closure product over the base
    /// relators equal to its embedded image: `rep_c · r · rep_c⁻¹`.
    pub fn relator_witnesses(&self, table: &CosetTable) -> Vec<Vec<ClosureFactor>> {
        self.relator_origins
            .iter()
            .map(|&(c, j)| alloc::vec![ClosureFactor::new(table.representatives()[c].clone(), j, false)])
            .collect()
    }
}
