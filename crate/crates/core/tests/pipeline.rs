use num_bigint::BigUint;
use prime_cycles::asymptotics::{limit_ratios, yakymiv_relative_error};
use prime_cycles::counting::cache::{load_cache, save_cache};
use prime_cycles::counting::{
    count_by_cycle_types, cycle_types, factorial, inequality_scan, AdmissibleSet, CountTable, InequalityVariant,
};
use prime_cycles::primes::PrimeTable;
use prime_cycles::sampling::{cycle_type_of, sample_a_permutation, TrialStreams};
use proptest::prelude::*;

#[test]
fn cache_round_trip_preserves_counts() {
    let dir = tempfile::tempdir().unwrap();
    for set in [AdmissibleSet::Primes, AdmissibleSet::explicit(vec![2, 5, 7]).unwrap()] {
        let path = dir.path().join(format!("{}.jsonl", set.id().replace(',', "_")));
        let table = CountTable::build(&set, 250).unwrap();
        save_cache(&table, &path).unwrap();
        assert_eq!(load_cache(&path, &set).unwrap(), Some(table));
        assert!(load_cache(&path, &AdmissibleSet::Odd).is_err());
    }
    assert_eq!(load_cache(&dir.path().join("missing"), &AdmissibleSet::All).unwrap(), None);
}

#[test]
fn prime_dump_feeds_the_same_constants() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.pct");
    let built = PrimeTable::build(200_000).unwrap();
    built.save(&path).unwrap();
    let loaded = PrimeTable::load_or_build(&path, 200_000).unwrap();
    assert_eq!(loaded.primes(), built.primes());
    assert_eq!(loaded.mertens_constant().unwrap(), built.mertens_constant().unwrap());
}

#[test]
fn sampled_types_have_nonzero_counts() {
    let set = AdmissibleSet::Primes;
    let table = CountTable::build(&set, 30).unwrap();
    let streams = TrialStreams::new(5);
    for n in [2, 7, 19, 30] {
        let types = cycle_types(&set, n).unwrap();
        let total: BigUint = types.iter().map(|t| t.permutation_count()).sum();
        assert_eq!(&total, table.get(n).unwrap());
        for i in 0..50 {
            let p = sample_a_permutation(n, &table, &mut streams.stream(i)).unwrap();
            assert!(types.contains(&cycle_type_of(&p)));
        }
    }
}

#[test]
fn counterexample_and_ratio_table_agree() {
    let p = CountTable::build(&AdmissibleSet::Primes, 60).unwrap();
    let p1 = CountTable::build(&AdmissibleSet::PrimesWithOne, 61).unwrap();
    let violations = inequality_scan(&p1, &p, 60, InequalityVariant::Primes1).unwrap();
    let rows = limit_ratios(&p, &p1, 60, 10, 1.298873).unwrap();
    // rg > 1 exactly when n·P_{n,1} > P_{n+1,1}
    let from_rows: Vec<usize> = rows.iter().filter(|r| r.rg > 1.0).map(|r| r.n).collect();
    assert_eq!(violations, from_rows);
    assert_eq!(violations[0], 5);
}

#[test]
fn odd_estimator_improves_with_n() {
    let t = CountTable::build(&AdmissibleSet::Odd, 800).unwrap();
    let e: Vec<f64> = [100, 200, 400, 800].iter().map(|&n| yakymiv_relative_error(&t, n).unwrap()).collect();
    assert!(e.windows(2).all(|w| w[0] > w[1]), "{e:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn explicit_sets_match_oracle(members in prop::collection::btree_set(1u64..12, 1..5), n in 0usize..30) {
        let set = AdmissibleSet::explicit(members.into_iter().collect()).unwrap();
        let table = CountTable::build(&set, n).unwrap();
        prop_assert_eq!(table.get(n).unwrap(), &count_by_cycle_types(&set, n).unwrap());
        prop_assert!(table.get(n).unwrap() <= &factorial(n));
    }
}
