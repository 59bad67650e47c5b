//! Free products, fundamental groups of graphs of groups, subdecorations and
//! the oracle bundle describing a class of decorated groups.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::decide::Decision;
use crate::enumerate::Budget;
use crate::error::Error;
use crate::presentation::{DecoratedPresentation, GeneratorMap, Presentation};
use crate::word::Word;

/// Free product of the parts: generators are concatenated (a name already
/// taken gets `_k` appended, `k` the part index) and relators shifted.
pub fn free_product(parts: &[Presentation]) -> Result<Presentation, Error> {
    Ok(free_product_with_maps(parts)?.0)
}

/// [`free_product`] together with the inclusion of each part.
pub fn free_product_with_maps(parts: &[Presentation]) -> Result<(Presentation, Vec<GeneratorMap>), Error> {
    if parts.is_empty() {
        return Err(Error::EmptyInput);
    }
    if parts.len() == 1 {
        let p = parts[0].clone();
        let id = GeneratorMap::identity(p.rank());
        return Ok((p, alloc::vec![id]));
    }
    let mut names: Vec<String> = Vec::new();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    let mut offsets = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        offsets.push(names.len());
        for g in part.generators() {
            let mut name = g.clone();
            while taken.contains(&name) {
                name = format!("{}_{}", name, k);
            }
            taken.insert(name.clone());
            names.push(name);
        }
    }
    let total = names.len();
    let mut relators = Vec::new();
    let mut maps = Vec::new();
    for (part, &off) in parts.iter().zip(&offsets) {
        let images: Vec<Word> = (0..part.rank()).map(|g| Word::generator(off + g)).collect();
        for r in part.relators() {
            relators.push(r.substitute(&images));
        }
        maps.push(GeneratorMap::from_ranks(part.rank(), total, images)?);
    }
    let name = parts.iter().map(|p| p.name().unwrap_or("G")).collect::<Vec<_>>().join("_");
    Ok((Presentation::new(Some(&name), names, relators)?, maps))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub name: String,
    pub group: Presentation,
}

/// An edge `source → target` with edge group `H_e` and monomorphisms
/// `i_e: H_e → G_source`, `t_e: H_e → G_target`. Injectivity is the caller's
/// assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub name: String,
    pub group: Presentation,
    pub source: usize,
    pub target: usize,
    pub source_map: GeneratorMap,
    pub target_map: GeneratorMap,
    pub in_tree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
}

impl GraphOfGroups {
    /// Checks the edge maps, connectivity and that the tree edges form a
    /// spanning tree.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        for e in &self.edges {
            if e.source >= n {
                return Err(Error::InvalidIndex(e.source));
            }
            if e.target >= n {
                return Err(Error::InvalidIndex(e.target));
            }
            let (s, t) = (&self.vertices[e.source].group, &self.vertices[e.target].group);
            for (m, v) in [(&e.source_map, s), (&e.target_map, t)] {
                if m.source_rank() != e.group.rank() {
                    return Err(Error::AlphabetMismatch { expected: e.group.rank(), found: m.source_rank() });
                }
                if m.target_rank() != v.rank() {
                    return Err(Error::AlphabetMismatch { expected: v.rank(), found: m.target_rank() });
                }
            }
        }
        let all: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.source, e.target)).collect();
        if components(n, &all) != 1 {
            return Err(Error::DisconnectedGraph);
        }
        let tree: Vec<(usize, usize)> = self.edges.iter().filter(|e| e.in_tree).map(|e| (e.source, e.target)).collect();
        if tree.len() != n - 1 || components(n, &tree) != 1 {
            return Err(Error::InvalidSpanningTree);
        }
        Ok(())
    }
}

fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut count = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

/// The fundamental group: vertex generators (as in [`free_product`]) followed
/// by one stable letter per non-tree edge, named after the edge. Relators are
/// the vertex relators, then per edge and edge generator `h` either
/// `i_e(h) · t_e(h)⁻¹` (tree edges) or `s_e · i_e(h) · s_e⁻¹ · t_e(h)⁻¹`.
/// Returns the inclusion of each vertex group.
pub fn gog_presentation(g: &GraphOfGroups) -> Result<(Presentation, Vec<GeneratorMap>), Error> {
    g.validate()?;
    let groups: Vec<Presentation> = g.vertices.iter().map(|v| v.group.clone()).collect();
    let (base, maps) = free_product_with_maps(&groups)?;
    let mut names: Vec<String> = base.generators().to_vec();
    let mut relators: Vec<Word> = base.relators().to_vec();
    let mut stable = Vec::new();
    for e in g.edges.iter().filter(|e| !e.in_tree) {
        let mut name = e.name.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        stable.push(names.len());
        names.push(name);
    }
    let mut next_stable = stable.into_iter();
    for e in &g.edges {
        let s = if e.in_tree { None } else { next_stable.next() };
        for h in 0..e.group.rank() {
            let i = maps[e.source].substitute(&e.source_map.images()[h])?;
            let t = maps[e.target].substitute(&e.target_map.images()[h])?;
            let lhs = match s {
                Some(s) => i.conjugate_by(&Word::generator(s)),
                None => i,
            };
            relators.push(lhs.mul(&t.inverse()));
        }
    }
    let total = names.len();
    let maps = maps
        .into_iter()
        .map(|m| GeneratorMap::from_ranks(m.source_rank(), total, m.images().to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    let name = base.name().map(|n| format!("pi1_{}", n));
    Ok((Presentation::new(name.as_deref(), names, relators)?, maps))
}

/// Restriction of a decoration to the edges listed in `j`, in that order.
pub fn subdecoration(d: &DecoratedPresentation, j: &[usize]) -> Result<DecoratedPresentation, Error> {
    let edges = j
        .iter()
        .map(|&i| d.edges().get(i).cloned().ok_or(Error::InvalidIndex(i)))
        .collect::<Result<Vec<_>, _>>()?;
    DecoratedPresentation::new(d.vertex().clone(), edges)
}

/// `(P, X, Y, z, budget)` for a double coset decider.
pub type DoubleCosetOracle = fn(&Presentation, &[Word], &[Word], &Word, Budget) -> Result<Decision, Error>;
/// `(P, X, z, budget)` for a membership decider.
pub type MembershipOracle = fn(&Presentation, &[Word], &Word, Budget) -> Result<Decision, Error>;
/// Generators of the intersection of edge `i` with `⟨Y⟩`.
pub type IntersectionOracle = fn(&DecoratedPresentation, usize, &[Word], Budget) -> Option<Vec<Word>>;
/// The `n`-th presentation of the class.
pub type ClassEnumerator = fn(usize) -> Option<DecoratedPresentation>;

/// Wiring record for the six conditions a class of decorated groups must
/// meet before graphs of such groups are treated as "based on" it. The
/// slenderness flag and the injectivity of edge maps are assumptions, not
/// checked facts.
#[derive(Clone, Copy, Default)]
pub struct ConditionBundle {
    /// I: double coset membership in vertex groups.
    pub double_coset: Option<DoubleCosetOracle>,
    /// II: subgroup membership in vertex groups.
    pub vertex_membership: Option<MembershipOracle>,
    /// III: every edge group is slender.
    pub edges_slender: Option<bool>,
    /// IV: membership in edge groups.
    pub edge_membership: Option<MembershipOracle>,
    /// V: generating sets for edge intersections.
    pub intersection: Option<IntersectionOracle>,
    /// VI: enumeration of the class.
    pub enumerator: Option<ClassEnumerator>,
}

impl ConditionBundle {
    pub fn is_complete(&self) -> bool {
        self.double_coset.is_some()
            && self.vertex_membership.is_some()
            && self.edges_slender == Some(true)
            && self.edge_membership.is_some()
            && self.intersection.is_some()
            && self.enumerator.is_some()
    }

    /// The generic deciders of this crate in slots I, II and IV, with
    /// slenderness asserted. Slots V and VI depend on the class.
    pub fn standard() -> Self {
        ConditionBundle {
            double_coset: Some(crate::decide::decide_double_coset),
            vertex_membership: Some(crate::decide::decide_membership),
            edges_slender: Some(true),
            edge_membership: Some(crate::decide::decide_membership),
            intersection: None,
            enumerator: None,
        }
    }

    /// Assumptions a certificate produced under this bundle must echo.
    pub fn assumptions(&self) -> Vec<&'static str> {
        let mut out = alloc::vec!["edge maps are injective"];
        if self.edges_slender == Some(true) {
            out.push("edge groups are slender");
        }
        out
    }
}
