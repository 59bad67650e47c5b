//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use fpmember::certificate::{CertificateFile, ClaimData};
use fpmember::query::{run_query, QueryKind, QueryRecord};
use fpmember::syntax::parse_presentation;
use fpmember::verify::verify_certificate;
use fpmember_core::abelian::{abelianize, lattice_membership, smith_normal_form, IntMatrix};
use fpmember_core::certify::{certify_normal, certify_quotient_iso, enum_finite_index_subgroups_up_to, find_isomorphism};
use fpmember_core::decide::decide_membership;
use fpmember_core::enumerate::{Advance, Enumeration};
use fpmember_core::graph::{free_product, gog_presentation};
use fpmember_core::{Budget, Claim, FiniteQuotient, Letter, Outcome, Perm, Presentation, QuotientCertificate, Word};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1_000_000;

struct Report {
    passed: bool,
    detail: String,
}

fn report(passed: bool, detail: String) -> Report {
    Report { passed, detail }
}

fn within(limit: Duration, elapsed: Duration) -> bool {
    elapsed <= limit
}

// ---------------------------------------------------------------- instances

fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if letters.last().map_or(true, |&p| p != l.inverse()) {
            letters.push(l);
        }
    }
    Word::reduce(letters)
}

fn random_instances(seed: u64, rank: usize, count: usize, gen_len: usize, query_len: usize) -> Vec<(Vec<Word>, Word)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let x = (0..k).map(|_| {
                let l = rng.gen_range(1..=gen_len);
                random_word(&mut rng, rank, l)
            });
            let x: Vec<Word> = x.collect();
            let l = rng.gen_range(0..=query_len);
            (x, random_word(&mut rng, rank, l))
        })
        .collect()
}

// ------------------------------------------------------------------ oracles

/// Subgroup membership in a free group by Stallings folding.
struct Folding {
    parent: Vec<usize>,
    edges: Vec<(usize, usize, usize)>,
}

impl Folding {
    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn new(gens: &[Word]) -> Self {
        let mut f = Folding { parent: vec![0], edges: Vec::new() };
        for g in gens {
            let mut at = 0;
            let n = g.len();
            for (i, l) in g.letters().iter().enumerate() {
                let next = if i + 1 == n {
                    0
                } else {
                    f.parent.push(f.parent.len());
                    f.parent.len() - 1
                };
                let (s, t) = if l.is_inverse() { (next, at) } else { (at, next) };
                f.edges.push((s, l.generator(), t));
                at = next;
            }
        }
        f.fold();
        f
    }

    fn fold(&mut self) {
        loop {
            let mut merged = false;
            let mut seen: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
            for i in 0..self.edges.len() {
                let (s, g, t) = self.edges[i];
                let (s, t) = (self.find(s), self.find(t));
                for (key, other) in [((s, g, false), t), ((t, g, true), s)] {
                    match seen.get(&key) {
                        Some(&w) => {
                            let w = self.find(w);
                            if w != other {
                                self.parent[w] = other;
                                merged = true;
                            }
                        }
                        None => {
                            seen.insert(key, other);
                        }
                    }
                }
            }
            if !merged {
                return;
            }
        }
    }

    fn contains(&mut self, z: &Word) -> bool {
        let mut table: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
        for i in 0..self.edges.len() {
            let (s, g, t) = self.edges[i];
            let (s, t) = (self.find(s), self.find(t));
            table.insert((s, g, false), t);
            table.insert((t, g, true), s);
        }
        let base = self.find(0);
        let mut at = base;
        for l in z.letters() {
            match table.get(&(at, l.generator(), l.is_inverse())) {
                Some(&next) => at = next,
                None => return false,
            }
        }
        at == base
    }
}

/// Membership of `v` in the integer row span of `basis`, by echelon form
/// over i128.
fn span_contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let dim = v.len();
    let mut rows: Vec<Vec<i128>> = basis.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    let mut top = 0;
    for c in 0..dim {
        loop {
            let nz: Vec<usize> = (top..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    rows.swap(top, i);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = rows[i][c] / rows[p][c];
                    let pr = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                }
            }
        }
        if top < rows.len() && rows[top][c] != 0 {
            let r = &rows[top];
            if v[c] % r[c] != 0 {
                return false;
            }
            let q = v[c] / r[c];
            for (x, y) in v.iter_mut().zip(r) {
                *x -= q * y;
            }
            top += 1;
        } else if v[c] != 0 {
            return false;
        }
    }
    true
}

/// Number of index-`n` subgroups of the free group of rank `r`.
fn free_subgroup_counts(r: u32, max: usize) -> Vec<u128> {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let mut a = vec![0u128; max + 1];
    for n in 1..=max {
        let mut s = n as u128 * fact(n).pow(r - 1);
        for k in 1..n {
            s -= fact(n - k).pow(r - 1) * a[k];
        }
        a[n] = s;
    }
    a
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // Bareiss fraction-free elimination
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * if n == 0 { BigInt::from(1) } else { a[n - 1][n - 1].clone() }
}

fn rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

// ------------------------------------------------------------- certificates

struct Corpus {
    /// (presentation, certificate) in emission order.
    certificates: Vec<(Presentation, CertificateFile)>,
}

fn query(p: &Presentation, kind: QueryKind, budget: Budget) -> CertificateFile {
    run_query(&QueryRecord::new(p.clone(), kind, budget)).expect("valid query")
}

fn write_all(dir: &Path, certs: &[(Presentation, CertificateFile)]) -> Vec<Vec<u8>> {
    certs
        .iter()
        .enumerate()
        .map(|(i, (_, c))| {
            let path = dir.join(format!("cert_{:04}.json", i));
            std::fs::write(&path, c.to_json()).unwrap();
            std::fs::read(&path).unwrap()
        })
        .collect()
}

fn f2() -> Presentation {
    parse_presentation("group F2 = < a, b | >").unwrap()
}

fn z2() -> Presentation {
    parse_presentation("group Z2 = < a, b | [a,b] >").unwrap()
}

fn z3() -> Presentation {
    parse_presentation("group Z3 = < a, b, c | [a,b], [a,c], [b,c] >").unwrap()
}

fn criterion_1(out: &mut Corpus) -> Report {
    let start = Instant::now();
    let p = f2();
    let budget = Budget { max_steps: BUDGET, max_quotient_degree: Some(8) };
    let mut decided = 0;
    let mut wrong = Vec::new();
    let instances = random_instances(1, 2, 200, 5, 6);
    for (i, (x, z)) in instances.iter().enumerate() {
        let expect = Folding::new(x).contains(z);
        let c = query(&p, QueryKind::Member { x: x.clone(), z: z.clone() }, budget);
        match c.outcome.as_str() {
            "member" | "non_member" => {
                decided += 1;
                if (c.outcome == "member") != expect {
                    wrong.push(i);
                }
            }
            _ => {}
        }
        out.certificates.push((p.clone(), c));
    }
    let elapsed = start.elapsed();
    report(
        wrong.is_empty() && decided >= 180 && within(Duration::from_secs(300), elapsed),
        format!("{}/200 decided, disagreements {:?}, {:.1}s", decided, wrong, elapsed.as_secs_f64()),
    )
}

fn criterion_2(out: &mut Corpus) -> Report {
    let start = Instant::now();
    let mut decided = 0;
    let mut wrong = 0;
    let mut oracle_mismatch = 0;
    for (seed, p) in [(2, z2()), (3, z3())] {
        let rank = p.rank();
        for (x, z) in random_instances(seed, rank, 100, 4, 6) {
            let basis: Vec<Vec<i64>> = x.iter().map(|w| w.exponent_sums(rank)).collect();
            let target = z.exponent_sums(rank);
            let expect = span_contains(&basis, &target);
            let big = |v: &[i64]| v.iter().map(|&e| BigInt::from(e)).collect::<Vec<_>>();
            let lattice = lattice_membership(&basis.iter().map(|b| big(b)).collect::<Vec<_>>(), &big(&target))
                .unwrap()
                .is_some();
            if lattice != expect {
                oracle_mismatch += 1;
            }
            let c = query(&p, QueryKind::Member { x, z }, Budget::steps(BUDGET));
            if c.outcome == "member" || c.outcome == "non_member" {
                decided += 1;
                if (c.outcome == "member") != expect {
                    wrong += 1;
                }
            }
            out.certificates.push((p.clone(), c));
        }
    }
    let elapsed = start.elapsed();
    report(
        decided == 200 && wrong == 0 && oracle_mismatch == 0 && within(Duration::from_secs(60), elapsed),
        format!(
            "{}/200 decided, {} disagreements, lattice_membership vs echelon oracle mismatches {}, {:.1}s",
            decided,
            wrong,
            oracle_mismatch,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_3(out: &mut Corpus) -> Report {
    let start = Instant::now();
    let c2 = parse_presentation("group C2 = < a | a^2 >").unwrap();
    let z = query(&z2(), QueryKind::SymHoms { degree: 3 }, Budget::steps(BUDGET));
    let c = query(&c2, QueryKind::SymHoms { degree: 2 }, Budget::steps(BUDGET));
    // oracle: commuting ordered pairs in S3, and involutions-or-identity in S2
    let s3 = fpmember_core::perm::all_perms(3);
    let commuting = s3.iter().flat_map(|x| s3.iter().map(move |y| (x, y))).filter(|(x, y)| x.then(y) == y.then(x)).count();
    let s2 = fpmember_core::perm::all_perms(2);
    let square_trivial = s2.iter().filter(|x| x.then(x).is_identity()).count();
    let nz = z.homomorphisms.as_ref().map_or(0, Vec::len);
    let nc = c.homomorphisms.as_ref().map_or(0, Vec::len);
    out.certificates.push((z2(), z));
    out.certificates.push((c2, c));
    let elapsed = start.elapsed();
    report(
        nz == 18 && commuting == 18 && nc == 2 && square_trivial == 2 && within(Duration::from_secs(1), elapsed),
        format!("Z2 -> S3: {} (oracle {}), C2 -> S2: {} (oracle {}), {:.3}s", nz, commuting, nc, square_trivial, elapsed.as_secs_f64()),
    )
}

fn criterion_4(out: &mut Corpus) -> Report {
    let start = Instant::now();
    let p = f2();
    let mut counts = vec![0u128; 7];
    let mut bad = 0;
    let mut e = enum_finite_index_subgroups_up_to(&p, 6);
    loop {
        match e.advance() {
            Advance::Yield(s) => {
                counts[s.index] += 1;
                if s.presentation.rank() != 1 + s.index || !s.presentation.relators().is_empty() {
                    bad += 1;
                }
            }
            Advance::Working => {}
            Advance::Finished => break,
        }
    }
    let expected = free_subgroup_counts(2, 6);
    let c = query(&p, QueryKind::Subgroups { max_index: 6 }, Budget::steps(BUDGET));
    let listed = c.subgroups.as_ref().map_or(0, Vec::len);
    out.certificates.push((p, c));
    let elapsed = start.elapsed();
    let total: u128 = counts.iter().sum();
    report(
        bad == 0 && counts[1..] == expected[1..] && listed as u128 == total && within(Duration::from_secs(60), elapsed),
        format!(
            "{} subgroups, counts by index {:?} (Hall {:?}), {} violate 1+k generators / 0 relators, {:.1}s",
            total,
            &counts[1..],
            &expected[1..],
            bad,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_5() -> Report {
    let start = Instant::now();
    let diag: Vec<String> = |m: &IntMatrix| -> Vec<String> {
        smith_normal_form(m).diagonal().iter().map(|d| d.to_string()).collect()
    }(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]).unwrap());
    let small = diag == ["1", "6"];
    let trefoil = parse_presentation("group T = < x, y | x^2 y^-3 >").unwrap();
    let ab = abelianize(&trefoil);
    let tdiag: Vec<String> = ab.smith.diagonal().iter().map(|d| d.to_string()).collect();
    let factors: Vec<String> = ab.invariant_factors().iter().map(|d| d.to_string()).collect();
    let tre = tdiag == ["1"] && factors == ["0"];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let entries: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
        let m = IntMatrix::from_i64(r, c, &entries).unwrap();
        let s = smith_normal_form(&m);
        let product = s.u.mul(&m).and_then(|um| um.mul(&s.v)).unwrap();
        let one = |x: BigInt| x == BigInt::from(1) || x == BigInt::from(-1);
        let d = s.diagonal();
        let diagonal = (0..r).all(|i| (0..c).all(|j| i == j || s.d[(i, j)] == BigInt::from(0)));
        let chain = d.windows(2).all(|w| {
            w[0] >= BigInt::from(0)
                && w[1] >= BigInt::from(0)
                && (w[0] == BigInt::from(0) && w[1] == BigInt::from(0)
                    || w[0] != BigInt::from(0) && &w[1] % &w[0] == BigInt::from(0))
        });
        if product != s.d || !one(det(&rows(&s.u))) || !one(det(&rows(&s.v))) || !diagonal || !chain {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        small && tre && failures == 0 && within(Duration::from_secs(30), elapsed),
        format!(
            "diag(2,3) -> {:?}, trefoil diagonal {:?} factors {:?}, {} of 500 random decompositions fail, {:.2}s",
            diag,
            tdiag,
            factors,
            failures,
            elapsed.as_secs_f64()
        ),
    )
}

/// Independent reading of a quotient section by the core checker, used to
/// tell whether a mutant still certifies a true statement.
fn core_accepts_quotient(p: &Presentation, c: &CertificateFile) -> bool {
    let q = match &c.quotient {
        Some(q) => q,
        None => return false,
    };
    let images: Option<Vec<Perm>> = q.images.iter().map(|l| Perm::from_one_line(l).ok()).collect();
    let Some(images) = images else { return false };
    let Ok(quotient) = FiniteQuotient::new(p, images) else { return false };
    let claim = match q.claim {
        ClaimData::NotIdentity => Claim::NotIdentity,
        ClaimData::SubgroupOrbit { point } => Claim::SubgroupOrbit { point: point.wrapping_sub(1) },
        ClaimData::SubgroupImage => Claim::SubgroupImage,
        ClaimData::DoubleCosetOrbit { point } => Claim::DoubleCosetOrbit { point: point.wrapping_sub(1) },
        ClaimData::DoubleCosetImage => Claim::DoubleCosetImage,
    };
    let words = |ws: &[String]| -> Vec<Word> { ws.iter().map(|s| fpmember::parse_word(p, s).unwrap()).collect() };
    let z = fpmember::parse_word(p, c.query.word.as_deref().unwrap_or("1")).unwrap();
    QuotientCertificate { quotient, claim }.verify(p, &words(&c.query.subgroup), &words(&c.query.right_subgroup), &z)
}

fn mutants(p: &Presentation, c: &CertificateFile) -> Vec<(&'static str, CertificateFile)> {
    let mut out = Vec::new();
    if let Some(w) = &c.witness {
        let k = w.closure_factors.len();
        if k > 0 {
            let mut m = c.clone();
            m.witness.as_mut().unwrap().closure_factors.remove(k / 2);
            out.push(("drop factor", m));
            let mut m = c.clone();
            m.witness.as_mut().unwrap().closure_factors[k / 2].sign *= -1;
            out.push(("flip sign", m));
        }
        let gens: Vec<Word> = c.query.subgroup.iter().map(|s| fpmember::parse_word(p, s).unwrap()).collect();
        if let Some(j) = w.subgroup_word.iter().position(|&i| !gens[i.unsigned_abs() as usize - 1].is_empty()) {
            let mut m = c.clone();
            m.witness.as_mut().unwrap().subgroup_word[j] *= -1;
            out.push(("flip subgroup letter", m));
        }
    }
    if let Some(q) = &c.quotient {
        for (g, image) in q.images.iter().enumerate() {
            if image.len() < 2 {
                continue;
            }
            let mut m = c.clone();
            m.quotient.as_mut().unwrap().images[g].swap(0, 1);
            // a mutant that still certifies a true statement is not unsound
            if !core_accepts_quotient(p, &m) {
                out.push(("permute image", m));
            }
        }
    }
    out
}

fn criterion_6(corpus: &Corpus) -> Report {
    let start = Instant::now();
    let mut rejected_valid = Vec::new();
    for (i, (p, c)) in corpus.certificates.iter().enumerate() {
        if !verify_certificate(p, c).is_accept() {
            rejected_valid.push(i);
        }
    }
    let mut by_kind: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (p, c) in &corpus.certificates {
        for (kind, m) in mutants(p, c) {
            let e = by_kind.entry(kind).or_default();
            e.0 += 1;
            if !verify_certificate(p, &m).is_accept() {
                e.1 += 1;
            }
        }
    }
    let total: usize = by_kind.values().map(|v| v.0).sum();
    let caught: usize = by_kind.values().map(|v| v.1).sum();
    let elapsed = start.elapsed();
    report(
        rejected_valid.is_empty() && total >= 50 && caught == total && within(Duration::from_secs(60), elapsed),
        format!(
            "{} certificates, {} rejected; mutants rejected {}/{} {:?}, {:.1}s",
            corpus.certificates.len(),
            rejected_valid.len(),
            caught,
            total,
            by_kind,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_7(first: &Corpus) -> Report {
    let start = Instant::now();
    let mut again = Corpus { certificates: Vec::new() };
    criterion_1(&mut again);
    criterion_2(&mut again);
    criterion_3(&mut again);
    let n = again.certificates.len();
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let a = write_all(d1.path(), &first.certificates[..n]);
    let b = write_all(d2.path(), &again.certificates);
    let differing = a.iter().zip(&b).filter(|(x, y)| x != y).count();
    report(
        differing == 0 && a.len() == b.len(),
        format!("{} certificate files rewritten, {} differ, {:.1}s", n, differing, start.elapsed().as_secs_f64()),
    )
}

fn criterion_8() -> Report {
    let start = Instant::now();
    let g = fpmember::parse_gog("vertex A = < a | >\nedge t : A -> A = < h | > via h -> a ; h -> a\n").unwrap();
    let (torus, _) = gog_presentation(&g).unwrap();
    let factors: Vec<String> = abelianize(&torus).invariant_factors().iter().map(|d| d.to_string()).collect();
    let parts = [
        parse_presentation("group A = < x | x^2 >").unwrap(),
        parse_presentation("group B = < y | y^3 >").unwrap(),
    ];
    let m = free_product(&parts).unwrap();
    let w = |s: &str| fpmember::parse_word(&m, s).unwrap();
    let x = vec![w("x y")];
    let z = w("x y x");
    let d = decide_membership(&m, &x, &z, Budget::steps(BUDGET)).unwrap();
    let c = query(&m, QueryKind::Member { x: x.clone(), z: z.clone() }, Budget::steps(BUDGET));
    let ok = factors == ["0", "0"]
        && d.outcome == Outcome::NonMember
        && d.verify(&m, &x, &[], &z)
        && c.outcome == "non_member"
        && verify_certificate(&m, &c).is_accept();
    let elapsed = start.elapsed();
    report(
        ok && within(Duration::from_secs(120), elapsed),
        format!(
            "mapping torus factors {:?}; x y x in <x y>: {:?} (certificate {}), {:.2}s",
            factors,
            d.outcome,
            if d.verify(&m, &x, &[], &z) { "verifies" } else { "does not verify" },
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_9() -> Report {
    let t = Instant::now();
    let c6 = parse_presentation("group C6 = < a | a^6 >").unwrap();
    let c23 = parse_presentation("group C2xC3 = < x, y | x^2, y^3, [x,y] >").unwrap();
    let iso = find_isomorphism(&c6, &c23, Budget::steps(BUDGET));
    let iso_ok = iso.as_ref().map_or(false, |c| c.verify(&c6, &c23));
    let iso_time = t.elapsed();
    let image = iso.as_ref().map(|c| c23.format_word(&c.forward.images()[0])).unwrap_or_default();

    let t = Instant::now();
    let f = f2();
    let z = parse_presentation("group Z = < t | >").unwrap();
    let x = vec![Word::generator(1)];
    let q = certify_quotient_iso(&f, &x, &z, Budget::steps(BUDGET));
    let q_ok = q.as_ref().map_or(false, |c| c.verify(&f, &x, &z));
    let q_time = t.elapsed();
    report(
        iso_ok && q_ok && within(Duration::from_secs(60), iso_time) && within(Duration::from_secs(60), q_time),
        format!(
            "C6 = C2xC3 via a -> {} ({}, {:.2}s); F(a,b)/<<b>> = Z ({}, {:.2}s)",
            image,
            if iso_ok { "verified" } else { "not found" },
            iso_time.as_secs_f64(),
            if q_ok { "verified" } else { "not found" },
            q_time.as_secs_f64()
        ),
    )
}

fn criterion_10() -> Report {
    let start = Instant::now();
    let p = f2();
    let x = vec![Word::generator(0)];
    let z = Word::from_powers(&[(1, 1), (0, 1), (1, -1)]);
    let oracle = Folding::new(&x).contains(&z);
    let d = decide_membership(&p, &x, &z, Budget { max_steps: BUDGET, max_quotient_degree: Some(3) }).unwrap();
    let degree = match &d.certificate {
        Some(fpmember_core::Certificate::Quotient(q)) => q.quotient.degree(),
        _ => 0,
    };
    let decided = d.outcome == Outcome::NonMember && !oracle && d.verify(&p, &x, &[], &z) && degree <= 3;
    let budgets = [0, 1, 10, 1_000, 100_000, BUDGET];
    let emitted = budgets.iter().filter(|&&b| certify_normal(&p, &x, Budget::steps(b)).is_ok()).count();
    report(
        decided && emitted == 0,
        format!(
            "b a b^-1 in <a>: {:?} with degree-{} certificate (oracle: {}); certify_normal emitted {} certificates over budgets {:?}, {:.2}s",
            d.outcome,
            degree,
            if oracle { "member" } else { "non-member" },
            emitted,
            budgets,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn main() {
    let mut corpus = Corpus { certificates: Vec::new() };
    let mut results: Vec<(usize, &str, Report)> = Vec::new();
    results.push((1, "free-group oracle equivalence", criterion_1(&mut corpus)));
    results.push((2, "abelian oracle equivalence", criterion_2(&mut corpus)));
    results.push((3, "homomorphism counts", criterion_3(&mut corpus)));
    results.push((4, "Reidemeister-Schreier rank law", criterion_4(&mut corpus)));
    results.push((5, "Smith normal form", criterion_5()));
    results.push((6, "certificate round trip and mutations", criterion_6(&corpus)));
    results.push((7, "determinism", criterion_7(&corpus)));
    results.push((8, "graph of groups", criterion_8()));
    results.push((9, "certification searches", criterion_9()));
    results.push((10, "exhaustion honesty", criterion_10()));
    let mut failed = 0;
    for (n, name, r) in &results {
        println!("criterion {:>2} {}: {} ({})", n, name, if r.passed { "PASS" } else { "FAIL" }, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
