use num_bigint::BigUint;
use oddperfect_core::classify::{
    chenluo_check, dhp_decompose, dhp_scan, dhp_scan_with, odd_multiperfect_scan,
};
use oddperfect_core::Error;
use rand::{Rng, SeedableRng};

#[test]
fn no_odd_multiperfect_below_one_hundred_million() {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    assert_eq!(
        odd_multiperfect_scan(100_000_000, workers).unwrap(),
        vec![1]
    );
}

#[test]
fn chenluo_budget_on_random_large_odd_numbers() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x6f70_6e21);
    for _ in 0..2_000 {
        let n = rng.gen_range(1u64..500_000_000_000) * 2 + 1;
        chenluo_check(&BigUint::from(n)).unwrap();
    }
}

#[test]
fn dhp_holds_for_even_perfect_numbers_with_large_mersenne_primes() {
    for p in [17u32, 19, 31, 61, 89] {
        let q = (BigUint::from(1u32) << p) - 1u32;
        let n = (BigUint::from(1u32) << (p - 1)) * &q;
        let d = dhp_decompose(&n).unwrap().unwrap();
        assert_eq!(d.m * d.q.pow(d.alpha), n);
    }
}

#[test]
fn dhp_scan_resumes_to_the_same_result() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dhp.json");
    let whole = dhp_scan(1_000_000, 1).unwrap();

    let first = dhp_scan_with(1_000_000, 1, Some(&path), Some(300_000)).unwrap();
    assert!(!first.complete);
    assert!(first.cursor <= 1_000_000);
    assert!(first.hits.iter().all(|(n, _)| *n < first.cursor));

    let resumed = dhp_scan_with(1_000_000, 2, Some(&path), None).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.hits, whole);
}

#[test]
fn dhp_checkpoint_rejects_other_limits_and_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dhp.json");
    dhp_scan_with(100_000, 1, Some(&path), Some(1)).unwrap();
    assert!(matches!(
        dhp_scan_with(200_000, 1, Some(&path), None),
        Err(Error::ConfigMismatch { .. })
    ));

    std::fs::write(&path, "{\"config_hash\": 7").unwrap();
    assert!(matches!(
        dhp_scan_with(100_000, 1, Some(&path), None),
        Err(Error::CorruptCheckpoint { .. })
    ));
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "{\"config_hash\": 7"
    );
}
