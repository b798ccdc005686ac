use finquat::fibquat::{classify_fib, fib_quat_norm, fib_quaternion};
use finquat::fibseq::{fib_mod, lucas_mod, pisano_period};
use finquat::genfibquat::{gfl_norm, gfl_quaternion, gfl_zero_divisor_condition};
use finquat::oracle::{run_suite, Suite, VerifyScope};
use finquat::{GflParams, QuatAlgebra, Verdict};
use proptest::prelude::*;

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn fib_verdict_is_periodic(idx in 0usize..PRIMES.len(), n in 0u64..1_000_000_000_000) {
        let p = PRIMES[idx];
        let k = pisano_period(p).unwrap();
        let a = classify_fib(n, p).unwrap();
        let b = classify_fib(n % k, p).unwrap();
        prop_assert_eq!(a.element.coords(), b.element.coords());
        prop_assert_eq!(a.classification.verdict, b.classification.verdict);
    }

    #[test]
    fn fib_norm_routes_agree(idx in 0usize..PRIMES.len(), n in 0u64..1_000_000_000_000) {
        let p = PRIMES[idx];
        prop_assert_eq!(fib_quaternion(n, p).unwrap().norm(), fib_quat_norm(n, p).unwrap());
    }

    #[test]
    fn lucas_from_fibonacci(m in 2u64..10_000, n in 0u64..1_000_000_000) {
        let f0 = fib_mod(n as i64, m).unwrap();
        let f1 = fib_mod(n as i64 + 1, m).unwrap();
        let two_f1 = f1.add(f1).unwrap();
        prop_assert_eq!(lucas_mod(n, m).unwrap(), two_f1.sub(f0).unwrap());
    }

    #[test]
    fn gfl_condition_matches_norm(
        pc in -1000i64..1000,
        qc in -1000i64..1000,
        r in prop::sample::select(vec![2u64, 3, 5]),
        n in 0u64..1_000_000_000,
    ) {
        let params = GflParams::new(pc, qc);
        let formula = gfl_norm(params, n, r).unwrap();
        let element = gfl_quaternion(params, n, r).unwrap();
        prop_assert_eq!(element.norm(), formula);
        let cond = gfl_zero_divisor_condition(params, r).unwrap();
        prop_assert_eq!(cond.set.contains(n), formula.is_zero());
    }

    #[test]
    fn zero_divisors_have_nonzero_annihilator(p in prop::sample::select(vec![3u64, 5, 7, 11]), c in prop::array::uniform4(0u64..11)) {
        let h = QuatAlgebra::hamilton(p).unwrap();
        let x = h.element_canonical(c.map(|v| v % p)).unwrap();
        let conj = x.conjugate();
        let verdict = x.classify().unwrap().verdict;
        if verdict == Verdict::ZeroDivisor {
            prop_assert!(!conj.is_zero());
            prop_assert!(x.try_mul(&conj).unwrap().is_zero());
        }
        if verdict == Verdict::Unit {
            prop_assert_eq!(x.try_mul(&x.inverse().unwrap()).unwrap(), h.one());
        }
    }
}

#[test]
fn gfl_prime_coefficient_cases_on_large_indices() {
    for (pc, qc) in [(13i64, 3i64), (3, 13), (29, 7), (7, 29), (13, 17), (17, 13)] {
        let params = GflParams::new(pc, qc);
        for r in [pc as u64, qc as u64].into_iter().filter(|&r| r > 5) {
            let cond = gfl_zero_divisor_condition(params, r).unwrap();
            for n in (0..200_000u64).step_by(997).chain(1_000_000..1_000_100) {
                assert_eq!(cond.set.contains(n), gfl_norm(params, n, r).unwrap().is_zero(), "{params} r={r} n={n}");
            }
        }
    }
}

#[test]
fn verification_is_deterministic_and_clean() {
    let scope = VerifyScope::default();
    let a = run_suite(Suite::All, &scope).unwrap();
    let b = run_suite(Suite::All, &scope).unwrap();
    assert_eq!(a, b);
    for r in &a {
        assert!(r.passed, "{}: {:?}", r.check_name, r.discrepancies.first());
        assert!(r.discrepancies.iter().all(|d| d.erratum.is_some()));
    }
}
