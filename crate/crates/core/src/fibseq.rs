//! Fibonacci and Lucas sequences modulo `m`.
//!
//! Values are computed by fast doubling on the pair `(f_n, f_{n+1})`.
//! Periods and entry points are found by iterating the pair, which is
//! linear in the period but needs no knowledge of the factorisation of `m`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::modarith::{
    add_mod, check_modulus, legendre, mul_mod, pow_mod, require_prime, sub_mod, Residue,
};

/// Largest modulus accepted by [`pisano_period`] and friends.
pub const DEFAULT_PERIOD_LIMIT: u64 = 1_000_000;

/// Consecutive Fibonacci values `(f_n, f_{n+1})` modulo `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibPair {
    pub f_n: Residue,
    pub f_n_plus_1: Residue,
    pub index: i64,
}

impl FibPair {
    pub fn at(n: i64, m: u64) -> Result<Self> {
        Ok(FibPair {
            f_n: fib_mod(n, m)?,
            f_n_plus_1: fib_mod(n + 1, m)?,
            index: n,
        })
    }

    pub fn advance(self) -> Self {
        let m = self.f_n.modulus();
        let next = add_mod(self.f_n.value(), self.f_n_plus_1.value(), m);
        FibPair {
            f_n: self.f_n_plus_1,
            f_n_plus_1: Residue::from_canonical(next, m),
            index: self.index + 1,
        }
    }
}

/// `(f_n, f_{n+1}) mod m` by fast doubling.
pub(crate) fn fib_pair_raw(n: u64, m: u64) -> (u64, u64) {
    let mut a = 0u64; // f_k
    let mut b = 1 % m; // f_{k+1}
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        // f_{2k} = f_k (2 f_{k+1} - f_k), f_{2k+1} = f_k² + f_{k+1}²
        let two_b = add_mod(b, b, m);
        let c = mul_mod(a, sub_mod(two_b, a, m), m);
        let d = add_mod(mul_mod(a, a, m), mul_mod(b, b, m), m);
        if (n >> bit) & 1 == 0 {
            a = c;
            b = d;
        } else {
            a = d;
            b = add_mod(c, d, m);
        }
    }
    (a, b)
}

/// `f_n mod m`. The only negative index supported is `f_{-1} = 1`.
pub fn fib_mod(n: i64, m: u64) -> Result<Residue> {
    check_modulus(m)?;
    match n {
        -1 => Ok(Residue::from_canonical(1, m)),
        n if n < -1 => Err(Error::UnsupportedIndex(n)),
        n => Ok(Residue::from_canonical(fib_pair_raw(n as u64, m).0, m)),
    }
}

/// `l_n mod m`, using `l_n = f_{n-1} + f_{n+1} = 2 f_{n+1} - f_n`.
pub fn lucas_mod(n: u64, m: u64) -> Result<Residue> {
    check_modulus(m)?;
    let (f, g) = fib_pair_raw(n, m);
    Ok(Residue::from_canonical(sub_mod(add_mod(g, g, m), f, m), m))
}

fn check_limit(m: u64, limit: u64) -> Result<()> {
    if m > limit {
        Err(Error::ResourceLimit {
            what: "modulus",
            requested: m,
            limit,
        })
    } else {
        Ok(())
    }
}

/// Smallest `k >= 1` with `(f_k, f_{k+1}) ≡ (0, 1) (mod m)`.
pub fn pisano_period(m: u64) -> Result<u64> {
    pisano_period_bounded(m, DEFAULT_PERIOD_LIMIT)
}

pub fn pisano_period_bounded(m: u64, limit: u64) -> Result<u64> {
    check_modulus(m)?;
    check_limit(m, limit)?;
    let (mut a, mut b) = (0u64, 1u64);
    let mut k = 0u64;
    loop {
        (a, b) = (b, add_mod(a, b, m));
        k += 1;
        if a == 0 && b == 1 {
            return Ok(k);
        }
        // k(m) <= 6m for every m
        if k > 6 * m {
            return Err(Error::InvariantViolation(format!(
                "no Pisano period found for {m} within 6m steps"
            )));
        }
    }
}

/// Smallest `z >= 1` with `p | f_z`.
pub fn entry_point(p: u64) -> Result<u64> {
    entry_point_bounded(p, DEFAULT_PERIOD_LIMIT)
}

pub fn entry_point_bounded(p: u64, limit: u64) -> Result<u64> {
    require_prime(p)?;
    check_limit(p, limit)?;
    let (mut a, mut b) = (0u64, 1u64);
    let mut z = 0u64;
    loop {
        (a, b) = (b, add_mod(a, b, p));
        z += 1;
        if a == 0 {
            return Ok(z);
        }
    }
}

/// How the Pisano period relates to the entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeriodRelation {
    /// `k = z`, when `z ≡ 2 (mod 4)` (and for `p = 2`).
    Equal,
    /// `k = 2z`, when `z ≡ 0 (mod 4)`.
    Double,
    /// `k = 4z`, when `z` is odd.
    Quadruple,
    /// Composite modulus; no entry point is defined.
    CompositeUnclassified,
}

impl PeriodRelation {
    pub fn label(self) -> &'static str {
        match self {
            PeriodRelation::Equal => "k=z",
            PeriodRelation::Double => "k=2z",
            PeriodRelation::Quadruple => "k=4z",
            PeriodRelation::CompositeUnclassified => "composite-modulus-unclassified",
        }
    }

    /// The relation predicted from `z mod 4` for an odd prime.
    pub fn predicted_for_entry_point(z: u64) -> Self {
        match z % 4 {
            2 => PeriodRelation::Equal,
            0 => PeriodRelation::Double,
            _ => PeriodRelation::Quadruple,
        }
    }

    pub fn multiplier(self) -> Option<u64> {
        match self {
            PeriodRelation::Equal => Some(1),
            PeriodRelation::Double => Some(2),
            PeriodRelation::Quadruple => Some(4),
            PeriodRelation::CompositeUnclassified => None,
        }
    }
}

impl fmt::Display for PeriodRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodInfo {
    pub modulus: u64,
    /// `None` for composite moduli.
    pub entry_point: Option<u64>,
    pub pisano_period: u64,
    pub relation: PeriodRelation,
}

/// Entry point, Pisano period and their relation for a prime `p`.
pub fn period_info(p: u64) -> Result<PeriodInfo> {
    period_info_bounded(p, DEFAULT_PERIOD_LIMIT)
}

pub fn period_info_bounded(p: u64, limit: u64) -> Result<PeriodInfo> {
    let z = entry_point_bounded(p, limit)?;
    let k = pisano_period_bounded(p, limit)?;
    if k % z != 0 {
        return Err(Error::InvariantViolation(format!(
            "entry point {z} does not divide period {k} for p = {p}"
        )));
    }
    let relation = match k / z {
        1 => PeriodRelation::Equal,
        2 => PeriodRelation::Double,
        4 => PeriodRelation::Quadruple,
        r => {
            return Err(Error::InvariantViolation(format!(
                "period {k} is {r} times the entry point {z} for p = {p}"
            )))
        }
    };
    if p != 2 && relation != PeriodRelation::predicted_for_entry_point(z) {
        return Err(Error::InvariantViolation(format!(
            "relation {relation} for p = {p} does not follow from z = {z}"
        )));
    }
    Ok(PeriodInfo {
        modulus: p,
        entry_point: Some(z),
        pisano_period: k,
        relation,
    })
}

/// Like [`period_info`] but accepts composite moduli, for which only the
/// Pisano period is reported.
pub fn period_summary(m: u64, limit: u64) -> Result<PeriodInfo> {
    check_modulus(m)?;
    if crate::modarith::is_prime(m) {
        period_info_bounded(m, limit)
    } else {
        Ok(PeriodInfo {
            modulus: m,
            entry_point: None,
            pisano_period: pisano_period_bounded(m, limit)?,
            relation: PeriodRelation::CompositeUnclassified,
        })
    }
}

/// A memo table for [`period_info`], safe to share between threads.
#[derive(Debug, Default)]
pub struct PeriodCache {
    entries: RwLock<HashMap<u64, PeriodInfo>>,
}

impl PeriodCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: u64) -> Result<PeriodInfo> {
        if let Some(info) = self.entries.read().expect("poisoned").get(&p) {
            return Ok(*info);
        }
        let info = period_info(p)?;
        self.entries.write().expect("poisoned").insert(p, info);
        Ok(info)
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One full period `f_0, …, f_{k-1}` modulo `m`.
pub fn fib_cycle(m: u64) -> Result<Vec<Residue>> {
    fib_cycle_bounded(m, DEFAULT_PERIOD_LIMIT)
}

pub fn fib_cycle_bounded(m: u64, limit: u64) -> Result<Vec<Residue>> {
    let k = pisano_period_bounded(m, limit)?;
    let mut out = Vec::with_capacity(k as usize);
    let (mut a, mut b) = (0u64, 1 % m);
    for _ in 0..k {
        out.push(Residue::from_canonical(a, m));
        (a, b) = (b, add_mod(a, b, m));
    }
    Ok(out)
}

/// Both sides of the Sun congruence for `f_{(p - (p/5))/2} mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SunCheck {
    pub prime: u64,
    pub legendre_p_5: i8,
    pub index: u64,
    pub lhs: Residue,
    pub rhs: Residue,
    pub holds: bool,
}

pub fn sun_congruence(p: u64) -> Result<SunCheck> {
    if p == 2 || p == 5 {
        return Err(Error::Domain(format!("the Sun congruence excludes p = {p}")));
    }
    require_prime(p)?;
    let symbol = legendre(p as i64, 5)?;
    let index = ((p as i64 - symbol as i64) / 2) as u64;
    let lhs = fib_mod(index as i64, p)?;
    let rhs = if p % 4 == 1 {
        0
    } else {
        // 2 (-1)^⌊(p+5)/10⌋ (p/5) 5^((p-3)/4)
        let mut value = mul_mod(2, pow_mod(5, (p - 3) / 4, p), p);
        let negative = ((p + 5) / 10) % 2 == 1;
        if negative != (symbol == -1) {
            value = sub_mod(0, value, p);
        }
        value
    };
    let rhs = Residue::from_canonical(rhs, p);
    Ok(SunCheck {
        prime: p,
        legendre_p_5: symbol,
        index,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// `f_n` as an exact integer by plain iteration. Exact up to `n = 186`.
pub fn fib_exact(n: u64) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// `l_n` as an exact integer by plain iteration. Exact up to `n = 184`.
pub fn lucas_exact(n: u64) -> u128 {
    let (mut a, mut b) = (2u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_fib_mod(n: u64, m: u64) -> u64 {
        let (mut a, mut b) = (0u64, 1 % m);
        for _ in 0..n {
            (a, b) = (b, (a + b) % m);
        }
        a
    }

    fn vals(v: &[Residue]) -> Vec<u64> {
        v.iter().map(|r| r.value()).collect()
    }

    #[test]
    fn fib_mod_examples() {
        assert_eq!(fib_mod(10, 1000).unwrap().value(), 55);
        assert_eq!(fib_exact(21), 10946);
        assert_eq!(fib_mod(21, 13).unwrap().value(), 0);
        assert_eq!(fib_mod(-1, 7).unwrap().value(), 1);
        assert_eq!(fib_mod(-2, 7), Err(Error::UnsupportedIndex(-2)));
        assert_eq!(fib_mod(3, 1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn fast_doubling_matches_naive() {
        for m in [2u64, 3, 5, 7, 13, 97] {
            let (mut a, mut b) = (0u64, 1u64);
            for n in 0..=2000u64 {
                assert_eq!(fib_mod(n as i64, m).unwrap().value(), a, "n={n} m={m}");
                (a, b) = (b, (a + b) % m);
            }
        }
    }

    #[test]
    fn large_index_and_modulus() {
        // f_100 = 354224848179261915075
        let m = 1_000_000_007u64;
        assert_eq!(
            fib_mod(100, m).unwrap().value() as u128,
            354224848179261915075u128 % m as u128
        );
        assert_eq!(fib_exact(100), 354224848179261915075u128);
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_mod(0, 10).unwrap().value(), 2);
        assert_eq!(lucas_mod(4, 100).unwrap().value(), 7);
        assert_eq!(lucas_mod(3, 2).unwrap().value(), 0);
        for n in 0..80 {
            assert_eq!(lucas_mod(n, 1_000_003).unwrap().value() as u128, lucas_exact(n) % 1_000_003);
        }
    }

    #[test]
    fn fib_pair_advances_by_recurrence() {
        let mut pair = FibPair::at(-1, 11).unwrap();
        for _ in 0..50 {
            let next = pair.advance();
            assert_eq!(next, FibPair::at(pair.index + 1, 11).unwrap());
            pair = next;
        }
    }

    #[test]
    fn pisano_examples() {
        assert_eq!(pisano_period(2).unwrap(), 3);
        assert_eq!(pisano_period(3).unwrap(), 8);
        assert_eq!(pisano_period(5).unwrap(), 20);
        assert_eq!(pisano_period(7).unwrap(), 16);
        assert_eq!(pisano_period(10).unwrap(), 60);
        assert!(pisano_period_bounded(100, 50).unwrap_err().is_resource_limit());
        for m in 2..300 {
            let k = pisano_period(m).unwrap();
            assert_eq!(naive_fib_mod(k, m), 0);
            assert_eq!(naive_fib_mod(k + 1, m), 1 % m);
        }
    }

    #[test]
    fn entry_point_examples() {
        assert_eq!(entry_point(3).unwrap(), 4);
        assert_eq!(entry_point(5).unwrap(), 5);
        assert_eq!(entry_point(13).unwrap(), 7);
        assert_eq!(entry_point(2).unwrap(), 3);
        assert_eq!(entry_point(12), Err(Error::NotPrime(12)));
    }

    #[test]
    fn period_info_examples() {
        let five = period_info(5).unwrap();
        assert_eq!((five.entry_point, five.pisano_period, five.relation), (Some(5), 20, PeriodRelation::Quadruple));
        let eleven = period_info(11).unwrap();
        assert_eq!((eleven.entry_point, eleven.pisano_period, eleven.relation), (Some(10), 10, PeriodRelation::Equal));
        let seven = period_info(7).unwrap();
        assert_eq!((seven.entry_point, seven.pisano_period, seven.relation), (Some(8), 16, PeriodRelation::Double));
        let two = period_info(2).unwrap();
        assert_eq!((two.entry_point, two.pisano_period, two.relation), (Some(3), 3, PeriodRelation::Equal));
        assert!(period_info(15).is_err());
    }

    #[test]
    fn period_summary_handles_composites() {
        let info = period_summary(10, DEFAULT_PERIOD_LIMIT).unwrap();
        assert_eq!(info.entry_point, None);
        assert_eq!(info.pisano_period, 60);
        assert_eq!(info.relation, PeriodRelation::CompositeUnclassified);
    }

    #[test]
    fn cycles_mod_small_primes() {
        assert_eq!(vals(&fib_cycle(2).unwrap()), [0, 1, 1]);
        assert_eq!(vals(&fib_cycle(3).unwrap()), [0, 1, 1, 2, 0, 2, 2, 1]);
        assert_eq!(
            vals(&fib_cycle(5).unwrap()),
            [0, 1, 1, 2, 3, 0, 3, 3, 1, 4, 0, 4, 4, 3, 2, 0, 2, 2, 4, 1]
        );
    }

    #[test]
    fn sun_examples() {
        let c13 = sun_congruence(13).unwrap();
        assert!(c13.holds);
        assert_eq!((c13.index, c13.lhs.value(), c13.rhs.value()), (7, 0, 0));
        let c7 = sun_congruence(7).unwrap();
        assert_eq!((c7.index, c7.lhs.value(), c7.rhs.value(), c7.holds), (4, 3, 3, true));
        let c11 = sun_congruence(11).unwrap();
        assert_eq!((c11.index, c11.lhs.value(), c11.rhs.value(), c11.holds), (5, 5, 5, true));
        assert!(sun_congruence(5).is_err());
        assert!(sun_congruence(2).is_err());
        assert!(sun_congruence(9).is_err());
    }

    #[test]
    fn cache_is_transparent() {
        let cache = PeriodCache::new();
        let primes: Vec<u64> = (2..200).filter(|&p| crate::modarith::is_prime(p)).collect();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for &p in &primes {
                        assert_eq!(cache.get(p).unwrap(), period_info(p).unwrap());
                    }
                });
            }
        });
        assert_eq!(cache.len(), primes.len());
    }
}
