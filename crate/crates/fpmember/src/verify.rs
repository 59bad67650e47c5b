//! Certificate checking with nothing but free reduction and permutation
//! arithmetic. No search is run and no decision procedure is called.

use std::collections::{BTreeSet, VecDeque};

use fpmember_core::{Presentation, Word};

use crate::certificate::{CertificateFile, ClaimData, FactorData, QuotientData, SubgroupData, WitnessData};
use crate::syntax::{format_presentation, parse_presentation, parse_word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(String),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        *self == Verdict::Accept
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn word(p: &Presentation, s: &str) -> Result<Word, String> {
    parse_word(p, s).map_err(|e| format!("bad word `{}`: {}", s, e))
}

fn word_list(p: &Presentation, ws: &[String]) -> Result<Vec<Word>, String> {
    ws.iter().map(|s| word(p, s)).collect()
}

/// Product of signed 1-based generator indices over `gens`.
fn subgroup_product(signed: &[i64], gens: &[Word]) -> Result<Word, String> {
    let mut w = Word::empty();
    for &i in signed {
        let k = i.unsigned_abs() as usize;
        if i == 0 || k > gens.len() {
            return Err(format!("subgroup letter {} out of range", i));
        }
        let g = &gens[k - 1];
        w = w.mul(&if i < 0 { g.inverse() } else { g.clone() });
    }
    Ok(w)
}

/// `Π c r^s c⁻¹` over the relators of `p`.
fn closure_product(p: &Presentation, fs: &[FactorData]) -> Result<Word, String> {
    let mut w = Word::empty();
    for f in fs {
        let r = f
            .relator_index
            .checked_sub(1)
            .and_then(|i| p.relators().get(i))
            .ok_or_else(|| format!("relator index {} out of range", f.relator_index))?;
        let r = match f.sign {
            1 => r.clone(),
            -1 => r.inverse(),
            s => return Err(format!("closure sign {} is not ±1", s)),
        };
        let c = word(p, &f.conjugator)?;
        w = w.mul(&c).mul(&r).mul(&c.inverse());
    }
    Ok(w)
}

/// `element = left(X) · closure · right(Y)` by free reduction.
fn check_witness(p: &Presentation, w: &WitnessData, left: &[Word], right: &[Word], expect: &Word) -> Check {
    let element = word(p, &w.element)?;
    ensure(&element == expect, || format!("witness is for `{}`, not `{}`", w.element, p.format_word(expect)))?;
    let rhs = subgroup_product(&w.subgroup_word, left)?
        .mul(&closure_product(p, &w.closure_factors)?)
        .mul(&subgroup_product(&w.right_subgroup_word, right)?);
    ensure(rhs == element, || format!("witness reduces to `{}`, not `{}`", p.format_word(&rhs), w.element))
}

/// 0-based images of a 1-based one-line permutation.
fn perm(line: &[usize], degree: usize) -> Result<Vec<usize>, String> {
    ensure(line.len() == degree, || format!("permutation {:?} does not have degree {}", line, degree))?;
    let mut seen = vec![false; degree];
    let mut out = Vec::with_capacity(degree);
    for &x in line {
        ensure((1..=degree).contains(&x) && !seen[x - 1], || format!("{:?} is not a permutation", line))?;
        seen[x - 1] = true;
        out.push(x - 1);
    }
    Ok(out)
}

/// Generator images acting on the right: `point · w` applies letters left to right.
struct Action {
    degree: usize,
    forward: Vec<Vec<usize>>,
    backward: Vec<Vec<usize>>,
}

impl Action {
    fn new(p: &Presentation, degree: usize, images: &[Vec<usize>]) -> Result<Self, String> {
        ensure(degree > 0, || "quotient of degree 0".to_string())?;
        ensure(images.len() == p.rank(), || format!("{} images for {} generators", images.len(), p.rank()))?;
        let forward = images.iter().map(|l| perm(l, degree)).collect::<Result<Vec<_>, _>>()?;
        let backward = forward
            .iter()
            .map(|f| {
                let mut inv = vec![0; degree];
                for (i, &j) in f.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        let a = Action { degree, forward, backward };
        for (i, r) in p.relators().iter().enumerate() {
            ensure(a.is_identity(r), || format!("relator {} is not killed", i + 1))?;
        }
        Ok(a)
    }

    fn act(&self, mut point: usize, w: &Word) -> usize {
        for l in w.letters() {
            let table = if l.is_inverse() { &self.backward } else { &self.forward };
            point = table[l.generator()][point];
        }
        point
    }

    fn image(&self, w: &Word) -> Vec<usize> {
        (0..self.degree).map(|i| self.act(i, w)).collect()
    }

    fn is_identity(&self, w: &Word) -> bool {
        (0..self.degree).all(|i| self.act(i, w) == i)
    }

    fn orbit(&self, point: usize, gens: &[Word]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([point]);
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                for y in [self.act(x, g), self.act(x, &g.inverse())] {
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

/// All elements of the group generated by `gens`.
fn closure(degree: usize, gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// The finite check behind a quotient certificate for
/// `z ∉ ⟨left⟩ · ⟪R⟫ · ⟨right⟩`.
fn check_quotient(p: &Presentation, q: &QuotientData, left: &[Word], right: &[Word], z: &Word) -> Check {
    let a = Action::new(p, q.degree, &q.images)?;
    let trivial = |ws: &[Word]| ws.iter().all(|w| a.is_identity(w));
    let point_ok = |pt: usize| ensure(pt >= 1 && pt <= q.degree, || format!("point {} out of range", pt));
    match q.claim {
        ClaimData::NotIdentity => {
            ensure(trivial(left) && trivial(right), || "subgroup generator survives".into())?;
            ensure(!a.is_identity(z), || "word maps to the identity".into())
        }
        ClaimData::SubgroupOrbit { point } => {
            point_ok(point)?;
            ensure(trivial(right), || "right subgroup generator survives".into())?;
            ensure(!a.orbit(point - 1, left).contains(&a.act(point - 1, z)), || "image lies in the orbit".into())
        }
        ClaimData::DoubleCosetOrbit { point } => {
            point_ok(point)?;
            ensure(left.iter().all(|x| a.act(point - 1, x) == point - 1), || "left generator moves the point".into())?;
            ensure(!a.orbit(point - 1, right).contains(&a.act(point - 1, z)), || "image lies in the orbit".into())
        }
        ClaimData::SubgroupImage => {
            ensure(trivial(right), || "right subgroup generator survives".into())?;
            let h = closure(q.degree, &left.iter().map(|w| a.image(w)).collect::<Vec<_>>());
            ensure(!h.contains(&a.image(z)), || "image lies in the image subgroup".into())
        }
        ClaimData::DoubleCosetImage => {
            let h = closure(q.degree, &left.iter().map(|w| a.image(w)).collect::<Vec<_>>());
            let k = closure(q.degree, &right.iter().map(|w| a.image(w)).collect::<Vec<_>>());
            let zi = a.image(z);
            ensure(!h.iter().any(|x| k.contains(&compose(&inverse(x), &zi))), || "image lies in the double coset".into())
        }
    }
}

fn absent<T>(x: &Option<T>, what: &str) -> Check {
    ensure(x.is_none(), || format!("unexpected {} section", what))
}

fn map_images(src: &Presentation, tgt: &Presentation, ws: &[String]) -> Result<Vec<Word>, String> {
    ensure(ws.len() == src.rank(), || format!("{} images for {} generators", ws.len(), src.rank()))?;
    word_list(tgt, ws)
}

/// Each `f(r)` equals its closure witness over the relators of `tgt`.
fn check_relators(src: &Presentation, tgt: &Presentation, f: &[Word], ws: &[WitnessData]) -> Check {
    ensure(ws.len() == src.relators().len(), || "relator witness count mismatch".into())?;
    for (r, w) in src.relators().iter().zip(ws) {
        ensure(w.subgroup_word.is_empty() && w.right_subgroup_word.is_empty(), || "relator witness uses a subgroup".into())?;
        check_witness(tgt, w, &[], &[], &r.substitute(f))?;
    }
    Ok(())
}

/// `g(f(a)) a⁻¹` equals its closure witness over the relators of `src`.
fn check_round_trip(src: &Presentation, f: &[Word], g: &[Word], ws: &[WitnessData]) -> Check {
    ensure(ws.len() == src.rank(), || "round-trip witness count mismatch".into())?;
    for (a, w) in ws.iter().enumerate() {
        ensure(w.subgroup_word.is_empty() && w.right_subgroup_word.is_empty(), || "round-trip witness uses a subgroup".into())?;
        let expect = f[a].substitute(g).mul(&Word::generator(a).inverse());
        check_witness(src, w, &[], &[], &expect)?;
    }
    Ok(())
}

fn check_subgroup(p: &Presentation, s: &SubgroupData) -> Check {
    let a = Action::new(p, s.index, &s.images)?;
    ensure(a.orbit(0, &(0..p.rank()).map(Word::generator).collect::<Vec<_>>()).len() == s.index, || {
        "coset action is not transitive".into()
    })?;
    let sub = parse_presentation(&s.presentation).map_err(|e| format!("bad subgroup presentation: {}", e))?;
    let gens = map_images(&sub, p, &s.generators)?;
    for (i, g) in gens.iter().enumerate() {
        ensure(a.act(0, g) == 0, || format!("subgroup generator {} leaves the stabilizer", i + 1))?;
    }
    ensure(s.relator_witnesses.len() == sub.relators().len(), || "relator witness count mismatch".into())?;
    for (r, fs) in sub.relators().iter().zip(&s.relator_witnesses) {
        ensure(closure_product(p, fs)? == r.substitute(&gens), || "subgroup relator witness mismatch".into())?;
    }
    Ok(())
}

fn check(p: &Presentation, c: &CertificateFile) -> Check {
    let q = &c.query;
    ensure(q.presentation == format_presentation(p), || "certificate is for a different presentation".into())?;
    let left = word_list(p, &q.subgroup)?;
    let right = word_list(p, &q.right_subgroup)?;
    let z = q.word.as_deref().map(|s| word(p, s)).transpose()?;
    let need_z = || z.clone().ok_or_else(|| "query has no word".to_string());
    let only_witness = || absent(&c.quotient, "quotient").and(absent(&c.iso, "iso"));
    let only_quotient = || absent(&c.witness, "witness").and(absent(&c.iso, "iso"));
    let expect_kind = |kinds: &[&str]| ensure(kinds.contains(&q.kind.as_str()), || format!("outcome `{}` for a {} query", c.outcome, q.kind));
    match c.outcome.as_str() {
        "exhausted" => {
            absent(&c.witness, "witness")?;
            absent(&c.quotient, "quotient")?;
            absent(&c.iso, "iso")?;
            absent(&c.intersection, "intersection")?;
            match &c.subgroups {
                Some(subs) => subs.iter().try_for_each(|s| check_subgroup(p, s)),
                None => Ok(()),
            }
        }
        "trivial" => {
            expect_kind(&["word"])?;
            only_witness()?;
            let w = c.witness.as_ref().ok_or("missing witness")?;
            ensure(w.subgroup_word.is_empty() && w.right_subgroup_word.is_empty(), || "word witness uses a subgroup".into())?;
            check_witness(p, w, &[], &[], &need_z()?)
        }
        "member" => {
            expect_kind(&["member", "double-coset"])?;
            only_witness()?;
            let w = c.witness.as_ref().ok_or("missing witness")?;
            check_witness(p, w, &left, &right, &need_z()?)
        }
        "non_trivial" | "non_member" => {
            expect_kind(if c.outcome == "non_trivial" { &["word"] } else { &["member", "double-coset"] })?;
            only_quotient()?;
            let qd = c.quotient.as_ref().ok_or("missing quotient")?;
            check_quotient(p, qd, &left, &right, &need_z()?)
        }
        "nonempty" => {
            // a = y · C · x with y ∈ ⟨Y⟩ the intersection element
            expect_kind(&["coset-witness"])?;
            only_witness()?;
            let w = c.witness.as_ref().ok_or("missing witness")?;
            check_witness(p, w, &right, &left, &need_z()?)?;
            let e = w.intersection_element.as_deref().ok_or("missing intersection element")?;
            let y = subgroup_product(&w.subgroup_word, &right)?;
            ensure(word(p, e)? == y, || "intersection element does not match the factorization".into())
        }
        "empty" => {
            expect_kind(&["coset-witness"])?;
            only_quotient()?;
            let qd = c.quotient.as_ref().ok_or("missing quotient")?;
            check_quotient(p, qd, &right, &left, &need_z()?)
        }
        "isomorphic" => {
            expect_kind(&["find-iso"])?;
            let t = q.target.as_deref().ok_or("missing target presentation")?;
            let t = parse_presentation(t).map_err(|e| format!("bad target presentation: {}", e))?;
            let iso = c.iso.as_ref().ok_or("missing iso section")?;
            let f = map_images(p, &t, &iso.forward)?;
            let g = map_images(&t, p, &iso.backward)?;
            check_relators(p, &t, &f, &iso.forward_relators)?;
            check_relators(&t, p, &g, &iso.backward_relators)?;
            check_round_trip(p, &f, &g, &iso.source_round_trip)?;
            check_round_trip(&t, &g, &f, &iso.target_round_trip)
        }
        "enumerated" => match (&c.subgroups, &c.homomorphisms) {
            (Some(subs), None) => {
                expect_kind(&["subgroups"])?;
                let max = q.max_index.ok_or("missing max index")?;
                ensure(subs.iter().all(|s| s.index <= max), || "subgroup index above the bound".into())?;
                let mut seen = BTreeSet::new();
                for s in subs {
                    check_subgroup(p, s)?;
                    ensure(seen.insert(&s.images), || "subgroup listed twice".into())?;
                }
                Ok(())
            }
            (None, Some(homs)) => {
                expect_kind(&["homomorphisms"])?;
                let n = q.max_degree.ok_or("missing degree")?;
                let mut seen = BTreeSet::new();
                for h in homs {
                    Action::new(p, n, h)?;
                    ensure(seen.insert(h), || "homomorphism listed twice".into())?;
                }
                Ok(())
            }
            _ => Err("enumeration without exactly one result list".into()),
        },
        "intersection" => {
            // only the structural part is checkable; the case hypotheses are
            // carried as assumptions
            expect_kind(&["intersect-peripheral"])?;
            let i = c.intersection.as_ref().ok_or("missing intersection section")?;
            let degree = i.images.first().map_or(1, Vec::len);
            let a = Action::new(p, degree, &i.images)?;
            for w in word_list(p, &i.generators)?.iter().chain(&word_list(p, &i.edge_part)?).chain(&right) {
                ensure(a.act(0, w) == 0, || format!("`{}` is outside the finite-index subgroup", p.format_word(w)))?;
            }
            Ok(())
        }
        other => Err(format!("unknown outcome `{}`", other)),
    }
}

/// Checks `c` against the presentation `p`.
pub fn verify_certificate(p: &Presentation, c: &CertificateFile) -> Verdict {
    match check(p, c) {
        Ok(()) => Verdict::Accept,
        Err(reason) => Verdict::Reject(reason),
    }
}

/// Checks `c` against the presentation recorded in its own query echo.
pub fn verify_self_contained(c: &CertificateFile) -> Verdict {
    match parse_presentation(&c.query.presentation) {
        Ok(p) => verify_certificate(&p, c),
        Err(e) => Verdict::Reject(format!("bad presentation: {}", e)),
    }
}
