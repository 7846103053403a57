use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ternary_core::goldbach_counting::{
    count_representations, dft_direct, fourier_transform, relative_density, scan_odd_range, sieve,
    w_trick_weights, CountMethod, PrimeSubsetSpec, WTrickParams,
};
use ternary_core::rational::q;

/// Plain segmented sieve with base primes found by trial division.
fn segmented_pi(limit: u64) -> u64 {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base: Vec<u64> = (2..=root)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect();
    let seg = 1u64 << 15;
    let mut count = 0;
    let mut lo = 2;
    while lo <= limit {
        let hi = (lo + seg - 1).min(limit);
        let mut mark = vec![true; (hi - lo + 1) as usize];
        for &p in &base {
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut x = start;
            while x <= hi {
                mark[(x - lo) as usize] = false;
                x += p;
            }
        }
        count += mark.iter().filter(|&&b| b).count() as u64;
        lo = hi + 1;
    }
    count
}

#[test]
fn pi_of_a_million() {
    let t = sieve(1_000_000).unwrap();
    assert_eq!(t.pi(1_000_000), 78_498);
    assert_eq!(segmented_pi(1_000_000), 78_498);
    for x in [2u64, 3, 100, 65_535, 65_536, 999_983] {
        assert_eq!(t.pi(x), segmented_pi(x), "pi({x})");
    }
}

fn random_spec(rng: &mut ChaCha8Rng, limit: u64) -> PrimeSubsetSpec {
    match rng.gen_range(0..4) {
        0 => PrimeSubsetSpec::All,
        1 => {
            let m = [3u64, 4, 5, 8, 15][rng.gen_range(0..5)];
            let units: Vec<u64> = (1..m).filter(|&c| num_integer::gcd(c, m) == 1).collect();
            let keep: Vec<u64> = units
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.6))
                .collect();
            let keep = if keep.is_empty() {
                vec![units[0]]
            } else {
                keep
            };
            PrimeSubsetSpec::residue_classes(m, keep).unwrap()
        }
        2 => PrimeSubsetSpec::Explicit((2..=limit).filter(|_| rng.gen_bool(0.3)).collect()),
        _ => PrimeSubsetSpec::truncation(q(rng.gen_range(1..=10), 10)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_matches_brute(seed in any::<u64>(), top in 50u64..300) {
        let n1 = 2 * top + 1;
        let t = sieve(1023).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let specs = [random_spec(&mut rng, n1), random_spec(&mut rng, n1), random_spec(&mut rng, n1)];
        let conv = scan_odd_range(3, n1, &specs, &t, CountMethod::Convolution).unwrap();
        let brute = scan_odd_range(3, n1, &specs, &t, CountMethod::Brute).unwrap();
        for (a, b) in conv.rows.iter().zip(&brute.rows) {
            prop_assert_eq!((a.n, a.count), (b.n, b.count));
        }
        prop_assert_eq!(conv.failures, brute.failures);
        let n = n1 - 1;
        let single = count_representations(n, &specs, &t, CountMethod::Convolution).unwrap().count;
        prop_assert_eq!(single, count_representations(n, &specs, &t, CountMethod::Brute).unwrap().count);
    }

    #[test]
    fn counts_invariant_under_spec_permutation(seed in any::<u64>()) {
        let t = sieve(1023).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = [random_spec(&mut rng, 501), random_spec(&mut rng, 501), random_spec(&mut rng, 501)];
        let base = scan_odd_range(7, 501, &s, &t, CountMethod::Convolution).unwrap();
        for perm in [[1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]] {
            let p = perm.map(|i| s[i].clone());
            let other = scan_odd_range(7, 501, &p, &t, CountMethod::Convolution).unwrap();
            prop_assert_eq!(&base.rows.iter().map(|r| r.count).collect::<Vec<_>>(),
                            &other.rows.iter().map(|r| r.count).collect::<Vec<_>>());
        }
    }
}

#[test]
fn mod_15_obstruction() {
    let t = sieve(30_000).unwrap();
    let s: PrimeSubsetSpec = "mod:15:1,4,7,11,13".parse().unwrap();
    let specs = [s.clone(), s.clone(), s];
    let rep = scan_odd_range(3, 29_999, &specs, &t, CountMethod::Convolution).unwrap();
    for row in &rep.rows {
        if row.n % 15 == 2 {
            assert_eq!(row.count, 0, "n = {}", row.n);
        }
    }
    // beyond small n every other odd class is hit
    assert!(
        rep.failures.iter().all(|&n| n % 15 == 2 || n < 100),
        "{:?}",
        rep.failures
    );
}

#[test]
fn residue_class_density() {
    let t = sieve(1_000_000).unwrap();
    let s: PrimeSubsetSpec = "mod:15:1,4,7,11,13".parse().unwrap();
    let d = relative_density(&s, &t, 1_000_000).unwrap();
    assert!((ternary_core::rational::to_f64(&d) - 0.625).abs() < 0.01);
}

#[test]
fn weights_bounded_and_monotone() {
    let n = 200_001;
    let t = sieve(n).unwrap();
    let p = WTrickParams::new(q(1, 10), q(1, 1000)).unwrap();
    let nested: [PrimeSubsetSpec; 4] = [
        "list:3,5,7,11".parse().unwrap(),
        "mod:7:1".parse().unwrap(),
        "mod:7:1,2,3".parse().unwrap(),
        PrimeSubsetSpec::All,
    ];
    let mut last = -1.0;
    for spec in nested {
        let specs = [spec.clone(), PrimeSubsetSpec::All, PrimeSubsetSpec::All];
        let prof = w_trick_weights(12, n, &specs, &p, &t).unwrap();
        for ws in &prof.weights {
            assert!(ws.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
        assert!(
            prof.means[0].sum >= last,
            "{spec}: {} < {last}",
            prof.means[0].sum
        );
        last = prof.means[0].sum;
    }
}

#[test]
fn parseval_and_zero_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2usize, 3, 101, 257, 1009, 2039] {
        let f: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let rep = fourier_transform(&f).unwrap();
        assert!(rep.parseval_rel_error < 1e-9, "N = {n}");
        assert!(rep.zero_mode_error < 1e-9 * f.iter().sum::<f64>());
        assert!(rep.direct_rel_error.unwrap() < 1e-9, "N = {n}");
        let direct = dft_direct(&f);
        assert!((direct[0].re - f.iter().sum::<f64>()).abs() < 1e-9);
    }
}
