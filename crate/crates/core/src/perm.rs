//! Permutations and explicit permutation groups.
//!
//! Points are `0..n` internally; certificates use one-line notation on
//! `1..=n`. Composition is left to right: `p.then(q)` sends `i` to
//! `q[p[i]]`, so the image of a word `w₁w₂…` is `f(w₁).then(f(w₂))…`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    /// From 0-based images; rejects anything that is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u16).collect()))
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, Error> {
        if images.iter().any(|&i| i == 0) {
            return Err(Error::NotAPermutation);
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// 1-based one-line notation.
    pub fn to_one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = alloc::vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j as usize] = i as u16;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Lexicographically next permutation in one-line order, if any.
    pub fn next_lex(&self) -> Option<Perm> {
        let mut v = self.0.clone();
        let n = v.len();
        if n < 2 {
            return None;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        Some(Perm(v))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_one_line())
    }
}

/// Every permutation of degree `n` in one-line lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = alloc::vec![Perm::identity(n)];
    while let Some(p) = out.last().unwrap().next_lex() {
        out.push(p);
    }
    out
}

/// A finite permutation group stored as an explicit element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: BTreeSet<Perm>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Elements in breadth-first discovery order, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.lookup.contains(p)
    }
}

/// Breadth-first closure of `gens` inside `S_degree`.
pub fn perm_closure(degree: usize, gens: &[Perm]) -> Result<PermGroup, Error> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let id = Perm::identity(degree);
    let mut lookup = BTreeSet::new();
    lookup.insert(id.clone());
    let mut elements = alloc::vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let p = elements[i].then(g);
            if lookup.insert(p.clone()) {
                elements.push(p);
            }
        }
        i += 1;
    }
    Ok(PermGroup { degree, generators: gens.to_vec(), elements, lookup })
}

/// One representative per left coset `gH` of `h` in `g`, in first-seen order.
pub fn perm_coset_reps(g: &PermGroup, h: &PermGroup) -> Result<Vec<Perm>, Error> {
    if h.elements.iter().any(|x| !g.contains(x)) {
        return Err(Error::NotASubgroup);
    }
    for a in &h.elements {
        for b in &h.generators {
            if !h.contains(&a.then(b)) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    for x in &g.elements {
        if covered.contains(x) {
            continue;
        }
        reps.push(x.clone());
        for y in &h.elements {
            covered.insert(x.then(y));
        }
    }
    Ok(reps)
}

/// Orbit of `point` under the group generated by `gens`, in breadth-first
/// order.
pub fn orbit(point: usize, gens: &[Perm]) -> Vec<usize> {
    let n = gens.first().map_or(point + 1, Perm::degree);
    let mut seen = alloc::vec![false; n.max(point + 1)];
    seen[point] = true;
    let mut out = alloc::vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
                queue.push_back(q);
            }
        }
    }
    out
}
