use fpmember::certificate::CertificateFile;
use fpmember::query::{run_query, QueryKind, QueryRecord};
use fpmember::syntax::{format_word_list, parse_presentation, parse_word, parse_word_list};
use fpmember::verify::{verify_certificate, verify_self_contained, Verdict};
use fpmember_core::{Budget, Letter, Presentation, Word};
use proptest::prelude::*;

fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max).prop_map(Word::reduce)
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..4).prop_flat_map(|rank| {
        prop::collection::vec(word(rank, 6), 0..4).prop_map(move |rels| {
            let names: Vec<String> = ["a", "b", "c"][..rank].iter().map(|s| s.to_string()).collect();
            Presentation::new(Some("G"), names, rels).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn presentations_round_trip(p in presentation()) {
        prop_assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn words_round_trip(ws in prop::collection::vec(word(3, 8), 0..4)) {
        let p = Presentation::free("F3", &["a", "b", "c"]);
        prop_assert_eq!(parse_word_list(&p, &format_word_list(&p, &ws)).unwrap(), ws);
    }

    #[test]
    fn certificates_round_trip_through_json(x in prop::collection::vec(word(2, 3), 1..3), z in word(2, 5)) {
        let p = parse_presentation("group Z2 = < a, b | [a,b] >").unwrap();
        let c = run_query(&QueryRecord::new(p.clone(), QueryKind::Member { x, z }, Budget::steps(100_000))).unwrap();
        let back = CertificateFile::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(verify_certificate(&p, &back), Verdict::Accept);
    }
}

#[test]
fn documented_query_examples() {
    let p = parse_presentation("group Z2 = < a, b | [a,b] >").unwrap();
    let q = |kind, steps| run_query(&QueryRecord::new(p.clone(), kind, Budget::steps(steps))).unwrap();
    let c = q(
        QueryKind::Member { x: parse_word_list(&p, "a^2, b").unwrap(), z: parse_word(&p, "a^4 b^-1").unwrap() },
        1_000_000,
    );
    assert_eq!(c.outcome, "member");
    assert!(verify_self_contained(&c).is_accept());

    let c = q(QueryKind::Word { w: parse_word(&p, "a").unwrap() }, 1_000_000);
    assert_eq!(c.outcome, "non_trivial");
    assert_eq!(c.quotient.as_ref().unwrap().degree, 2);
    assert!(verify_self_contained(&c).is_accept());

    let c = q(QueryKind::Word { w: parse_word(&p, "a b a^-1 b^-1").unwrap() }, 1_000);
    assert_eq!(c.outcome, "trivial");
    assert!(verify_self_contained(&c).is_accept());
}

#[test]
fn rejections_name_the_problem() {
    let p = parse_presentation("group Z2 = < a, b | [a,b] >").unwrap();
    let c = run_query(&QueryRecord::new(
        p.clone(),
        QueryKind::Word { w: parse_word(&p, "a").unwrap() },
        Budget::steps(1_000),
    ))
    .unwrap();

    let mut m = c.clone();
    m.quotient.as_mut().unwrap().images[0] = vec![1, 1];
    assert!(matches!(verify_certificate(&p, &m), Verdict::Reject(r) if r.contains("not a permutation")));

    let mut m = c.clone();
    m.quotient.as_mut().unwrap().images[0] = vec![1, 2];
    assert!(matches!(verify_certificate(&p, &m), Verdict::Reject(r) if r.contains("identity")));

    let mut m = c.clone();
    m.outcome = "trivial".into();
    assert!(!verify_certificate(&p, &m).is_accept());

    let mut m = c.clone();
    m.outcome = "exhausted".into();
    assert!(!verify_certificate(&p, &m).is_accept());

    let mut m = c;
    m.query.word = Some("1".into());
    assert!(!verify_certificate(&p, &m).is_accept());
}

#[test]
fn peripheral_fiber_query() {
    use fpmember::query::{PeripheralQuery, PeripheralSpec};
    use fpmember_core::Perm;
    // Z2 with edge subgroup <a, b>, pi_0 the whole group, fiber map a -> 0, b -> 1
    let p = parse_presentation("group Z2 = < a, b | [a,b] >").unwrap();
    let data = PeripheralQuery {
        edge: vec![Word::generator(0), Word::generator(1)],
        images: vec![Perm::identity(1), Perm::identity(1)],
        case: PeripheralSpec::Fiber(vec![0, 1]),
    };
    let c = run_query(&QueryRecord::new(
        p.clone(),
        QueryKind::IntersectPeripheral { y: vec![Word::generator(0)], data },
        Budget::steps(100_000),
    ))
    .unwrap();
    assert_eq!(c.outcome, "intersection");
    assert_eq!(c.intersection.as_ref().unwrap().generators, vec!["a".to_string()]);
    assert!(!c.assumptions.is_empty());
    assert!(verify_certificate(&p, &c).is_accept());
}
