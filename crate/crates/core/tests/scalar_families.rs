use detlab::ground::scale_set;
use detlab::scalar::parse_scalar;
use detlab::{generate, FamilyKind, FieldSpec, GroundSet, Scalar};
use proptest::prelude::*;

fn encodings(x: &GroundSet) -> Vec<Vec<u8>> {
    x.iter().map(Scalar::encode).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scaling_round_trips(vals in prop::collection::btree_set(-50i64..=50, 1..8), cn in 1i64..30, cd in 1i64..30, neg in any::<bool>()) {
        let x = GroundSet::from_ints(&vals.into_iter().collect::<Vec<_>>()).unwrap();
        let c = Scalar::ratio(if neg { -cn } else { cn }, cd).unwrap();
        let back = scale_set(&scale_set(&x, &c).unwrap(), &c.inv().unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn parsing_agrees_with_construction(n in -10_000i64..10_000, d in 1i64..500) {
        let text = format!("{n}/{d}");
        let s = parse_scalar(&text, FieldSpec::Rationals).unwrap();
        prop_assert_eq!(&s, &Scalar::ratio(n, d).unwrap());
        prop_assert_eq!(parse_scalar(&s.to_string(), FieldSpec::Rationals).unwrap(), s);
    }

    #[test]
    fn distinct_scalars_encode_distinctly(a in -300i64..300, b in 1i64..40, c in -300i64..300, d in 1i64..40) {
        let x = Scalar::ratio(a, b).unwrap();
        let y = Scalar::ratio(c, d).unwrap();
        prop_assert_eq!(x == y, x.encode() == y.encode());
    }

    #[test]
    fn random_family_is_deterministic(seed in any::<u64>(), size in 1usize..20) {
        let spec = FamilyKind::random(seed).with_size(size);
        let a = generate(&spec, FieldSpec::Rationals).unwrap();
        let b = generate(&spec, FieldSpec::Rationals).unwrap();
        prop_assert_eq!(a.len(), size);
        prop_assert_eq!(encodings(&a), encodings(&b));
        prop_assert!(a.iter().all(|v| v >= &Scalar::int(1) && v <= &Scalar::int(10 * size as i64)));
    }

    #[test]
    fn families_have_the_requested_size(size in 1usize..30, p in prop::sample::select(vec![31u64, 101, 1009])) {
        let f = FieldSpec::prime(p).unwrap();
        let kinds = [FamilyKind::Interval, FamilyKind::random(1), "ap:3:5".parse().unwrap()];
        for kind in kinds {
            prop_assert_eq!(generate(&kind.clone().with_size(size), FieldSpec::Rationals).unwrap().len(), size);
            prop_assert_eq!(generate(&kind.with_size(size), f).unwrap().len(), size);
        }
        prop_assert_eq!(generate(&FamilyKind::gp2().with_size(size), FieldSpec::Rationals).unwrap().len(), size);
    }

    #[test]
    fn scaled_interval_is_an_ap(size in 1usize..25, cn in -9i64..=9, cd in 1i64..6) {
        prop_assume!(cn != 0);
        let c = Scalar::ratio(cn, cd).unwrap();
        let interval = generate(&FamilyKind::Interval.with_size(size), FieldSpec::Rationals).unwrap();
        let ap = generate(&FamilyKind::ArithmeticProgression { start: c.clone(), step: c.clone() }.with_size(size), FieldSpec::Rationals).unwrap();
        prop_assert_eq!(interval.scale(&c).unwrap(), ap);
    }
}

#[test]
fn ground_set_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");
    std::fs::write(&path, "# comment\n3\n-1/2\n\n1/4\n").unwrap();
    let x = GroundSet::read(&path, FieldSpec::Rationals).unwrap();
    assert_eq!(
        x.elements(),
        &[
            Scalar::ratio(-1, 2).unwrap(),
            Scalar::ratio(1, 4).unwrap(),
            Scalar::int(3)
        ]
    );
    assert_eq!(GroundSet::parse(&x.to_text(), FieldSpec::Rationals).unwrap(), x);
    assert!(GroundSet::read(dir.path().join("missing"), FieldSpec::Rationals).is_err());
}

#[test]
fn prime_field_reduction() {
    let f = FieldSpec::prime(7).unwrap();
    assert_eq!(parse_scalar("10", f).unwrap(), Scalar::from_i64(3, f));
    assert_eq!(parse_scalar("1/2", f).unwrap(), Scalar::from_i64(4, f));
    assert!(FieldSpec::prime(9).is_err());
    // 8 reduces to 1, and sets deduplicate
    assert_eq!(GroundSet::from_ints_in(&[1, 8], f).unwrap().len(), 1);
}
