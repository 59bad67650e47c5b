use fpmember_core::abelian::{abelianize, lattice_membership, smith_normal_form, IntMatrix};
use fpmember_core::cosets::coset_table;
use fpmember_core::decide::{decide_membership, decide_word};
use fpmember_core::quotient::MarkedSubgroup;
use fpmember_core::witness::{ClosureFactor, WitnessedElement};
use fpmember_core::{Budget, FiniteQuotient, Letter, Outcome, Perm, Presentation, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn letters(rank: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max)
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    letters(rank, max).prop_map(Word::reduce)
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn z2() -> Presentation {
    Presentation::from_names("Z2", &["a", "b"], vec![Word::from_powers(&[(0, 1), (1, 1), (0, -1), (1, -1)])]).unwrap()
}

proptest! {
    #[test]
    fn reduction_is_idempotent(raw in letters(3, 20)) {
        let w = Word::reduce(raw);
        prop_assert_eq!(Word::reduce(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn group_laws(u in word(2, 8), v in word(2, 8), t in word(2, 8)) {
        prop_assert_eq!(u.mul(&v).mul(&t), u.mul(&v.mul(&t)));
        prop_assert!(u.mul(&u.inverse()).is_empty());
        prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
    }

    #[test]
    fn substitution_is_a_homomorphism(u in word(2, 8), v in word(2, 8), a in word(3, 4), b in word(3, 4)) {
        let images = [a, b];
        prop_assert_eq!(u.mul(&v).substitute(&images), u.substitute(&images).mul(&v.substitute(&images)));
        prop_assert_eq!(u.inverse().substitute(&images), u.substitute(&images).inverse());
    }

    #[test]
    fn witnesses_are_sound(
        gens in prop::collection::vec(word(2, 4), 1..3),
        sub in letters(2, 6),
        factors in prop::collection::vec((word(2, 3), any::<bool>()), 0..4),
    ) {
        let p = z2();
        let sub: Vec<Letter> = sub.into_iter().map(|l| Letter::new(l.generator() % gens.len(), l.is_inverse())).collect();
        let subgroup_word = Word::reduce(sub);
        let closure: Vec<ClosureFactor> = factors.into_iter().map(|(c, i)| ClosureFactor::new(c, 0, i)).collect();
        let mut e = WitnessedElement { word: Word::empty(), subgroup_word, closure };
        e.word = e.evaluate(p.relators(), &gens);
        prop_assert!(e.verify(p.relators(), &gens));
        if let Some(f) = e.closure.first().cloned() {
            let mut bad = e.clone();
            bad.closure[0] = f.inverted();
            prop_assert!(!bad.verify(p.relators(), &gens));
        }
    }

    #[test]
    fn smith_decomposition(r in 1usize..5, c in 1usize..5, seed in prop::collection::vec(-20i64..=20, 16)) {
        let m = IntMatrix::from_i64(r, c, &seed[..r * c]).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        let d = s.diagonal();
        for w in d.windows(2) {
            if w[0] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            } else {
                prop_assert_eq!(&w[1], &BigInt::from(0));
            }
        }
    }

    #[test]
    fn lattice_membership_matches_combinations(coeffs in prop::collection::vec(-3i64..=3, 2), basis in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 2)) {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let target: Vec<i64> = (0..3).map(|j| coeffs[0] * basis[0][j] + coeffs[1] * basis[1][j]).collect();
        let b: Vec<Vec<BigInt>> = basis.iter().map(|v| big(v)).collect();
        let found = lattice_membership(&b, &big(&target)).unwrap();
        prop_assert!(found.is_some());
        let found = found.unwrap();
        for j in 0..3 {
            let sum: BigInt = (0..2).map(|i| &found[i] * &b[i][j]).sum();
            prop_assert_eq!(sum, BigInt::from(target[j]));
        }
    }

    #[test]
    fn schreier_rank_and_coset_invariance(a in perm(5), b in perm(5), w in word(2, 10)) {
        let f2 = Presentation::free("F2", &["a", "b"]);
        let q = FiniteQuotient::new(&f2, vec![a, b]).unwrap()
            .with_marked(MarkedSubgroup { generators: Vec::new(), point: Some(0) });
        let t = coset_table(&f2, &q).unwrap();
        let k = t.len();
        let rs = t.reidemeister_schreier();
        prop_assert_eq!(rs.presentation.rank(), 1 + k);
        prop_assert!(rs.presentation.relators().is_empty());
        for h in rs.embedding.images() {
            prop_assert_eq!(t.coset_rep_of(&h.mul(&w)), t.coset_rep_of(&w));
        }
        for (i, r) in t.representatives().iter().enumerate() {
            prop_assert_eq!(t.coset_rep_of(r), i);
        }
    }

    #[test]
    fn permutation_laws(x in perm(6), y in perm(6), z in perm(6)) {
        prop_assert_eq!(x.then(&y).then(&z), x.then(&y.then(&z)));
        prop_assert!(x.then(&x.inverse()).is_identity());
        let line = x.to_one_line();
        prop_assert_eq!(Perm::from_one_line(&line).unwrap(), x);
    }

    #[test]
    fn abelian_decisions_are_certified_and_deterministic(x in prop::collection::vec(word(2, 3), 1..3), z in word(2, 5)) {
        let p = z2();
        let budget = Budget::steps(200_000);
        let d = decide_membership(&p, &x, &z, budget).unwrap();
        prop_assert!(d.verify(&p, &x, &[], &z));
        prop_assert_eq!(decide_membership(&p, &x, &z, budget).unwrap(), d.clone());
        if d.outcome.is_decided() {
            let big = |v: Vec<i64>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
            let basis: Vec<Vec<BigInt>> = x.iter().map(|w| big(w.exponent_sums(2))).collect();
            let member = lattice_membership(&basis, &big(z.exponent_sums(2))).unwrap().is_some();
            prop_assert_eq!(d.outcome == Outcome::Member, member);
        }
    }

    #[test]
    fn word_problem_in_free_groups(w in word(2, 8)) {
        let f2 = Presentation::free("F2", &["a", "b"]);
        let d = decide_word(&f2, &w, Budget::steps(100_000)).unwrap();
        prop_assert!(d.verify(&f2, &[], &[], &w));
        prop_assert_eq!(d.outcome, if w.is_empty() { Outcome::Trivial } else { Outcome::NonTrivial });
    }
}

#[test]
fn spec_examples_for_abelianization() {
    let f = |p: &Presentation| abelianize(p).invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>();
    assert_eq!(f(&z2()), ["0", "0"]);
    let trefoil = Presentation::from_names("T", &["x", "y"], vec![Word::from_powers(&[(0, 2), (1, -3)])]).unwrap();
    assert_eq!(f(&trefoil), ["0"]);
    let c6 = Presentation::from_names("C6", &["a"], vec![Word::generator_power(0, 6)]).unwrap();
    assert_eq!(f(&c6), ["6"]);
}

#[test]
fn finite_index_membership_examples() {
    let c6 = Presentation::from_names("C6", &["a"], vec![Word::generator_power(0, 6)]).unwrap();
    let x = vec![Word::generator_power(0, 2)];
    let budget = Budget::steps(100_000);
    assert_eq!(decide_membership(&c6, &x, &Word::generator_power(0, 4), budget).unwrap().outcome, Outcome::Member);
    assert_eq!(decide_membership(&c6, &x, &Word::generator_power(0, 3), budget).unwrap().outcome, Outcome::NonMember);

    let p = z2();
    let x = vec![Word::generator_power(0, 2), Word::generator(1)];
    let yes = Word::from_powers(&[(0, 2), (1, 5)]);
    let no = Word::from_powers(&[(0, 1), (1, 1)]);
    assert_eq!(decide_membership(&p, &x, &yes, budget).unwrap().outcome, Outcome::Member);
    assert_eq!(decide_membership(&p, &x, &no, budget).unwrap().outcome, Outcome::NonMember);
}
