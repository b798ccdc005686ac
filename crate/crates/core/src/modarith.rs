//! Exact arithmetic in `Z_m` and the number-theoretic utilities the rest of
//! the crate is built on.
//!
//! Residues are stored as canonical representatives in `[0, m)`. Products go
//! through `u128`, so every modulus that fits in a `u64` is safe from
//! intermediate overflow.

use std::fmt;

use crate::error::{Error, Result};

/// An integer reduced modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

pub fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidModulus(m))
    } else {
        Ok(())
    }
}

/// Canonical representative of `n` modulo `m`.
pub fn normalize(n: i128, m: u64) -> Result<Residue> {
    check_modulus(m)?;
    Ok(Residue {
        value: reduce_signed(n, m),
        modulus: m,
    })
}

#[inline]
pub(crate) fn reduce_signed(n: i128, m: u64) -> u64 {
    n.rem_euclid(m as i128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[allow(clippy::should_implement_trait)]
impl Residue {
    pub fn new(n: i64, m: u64) -> Result<Self> {
        normalize(n as i128, m)
    }

    pub fn zero(m: u64) -> Result<Self> {
        normalize(0, m)
    }

    pub fn one(m: u64) -> Result<Self> {
        normalize(1, m)
    }

    /// Builds a residue from a value already known to lie in `[0, m)`.
    pub(crate) fn from_canonical(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2 && value < modulus);
        Residue { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn signed_value(self) -> i128 {
        if self.value > self.modulus / 2 {
            self.value as i128 - self.modulus as i128
        } else {
            self.value as i128
        }
    }

    fn same_modulus(self, other: Residue) -> Result<u64> {
        if self.modulus == other.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        }
    }

    pub fn op(self, other: Residue, op: RingOp) -> Result<Residue> {
        let m = self.same_modulus(other)?;
        let value = match op {
            RingOp::Add => add_mod(self.value, other.value, m),
            RingOp::Sub => sub_mod(self.value, other.value, m),
            RingOp::Mul => mul_mod(self.value, other.value, m),
        };
        Ok(Residue { value, modulus: m })
    }

    pub fn add(self, other: Residue) -> Result<Residue> {
        self.op(other, RingOp::Add)
    }

    pub fn sub(self, other: Residue) -> Result<Residue> {
        self.op(other, RingOp::Sub)
    }

    pub fn mul(self, other: Residue) -> Result<Residue> {
        self.op(other, RingOp::Mul)
    }

    pub fn neg(self) -> Residue {
        Residue {
            value: neg_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn pow(self, exp: u64) -> Residue {
        Residue {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm, so
    /// composite moduli work whenever the value is coprime to `m`.
    pub fn inverse(self) -> Result<Residue> {
        let m = self.modulus as i128;
        let (mut old_r, mut r) = (self.value as i128, m);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return Err(Error::NotInvertible {
                value: self.value,
                modulus: self.modulus,
                gcd: old_r as u64,
            });
        }
        Ok(Residue {
            value: reduce_signed(old_s, self.modulus),
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn ring_op(a: Residue, b: Residue, op: RingOp) -> Result<Residue> {
    a.op(b, op)
}

pub fn inverse(a: Residue) -> Result<Residue> {
    a.inverse()
}

/// Trial division up to `√n`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

pub fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Domain("an odd prime is required, got 2".into()));
    }
    require_prime(p)
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let a = reduce_signed(a as i128, p);
    Ok(match pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        x if x == p - 1 => -1,
        x => {
            return Err(Error::InvariantViolation(format!(
                "Euler criterion gave {x} modulo {p}"
            )))
        }
    })
}

/// The lexicographically smallest `(a, b)` with `0 <= a <= b < p` and
/// `a² + b² ≡ -1 (mod p)`.
pub fn two_square_root_of_minus_one(p: u64) -> Result<(Residue, Residue)> {
    require_odd_prime(p)?;
    // root[t] is the smallest r with r² ≡ t, if any.
    let mut root = vec![u64::MAX; p as usize];
    for r in (0..p).rev() {
        root[mul_mod(r, r, p) as usize] = r;
    }
    for a in 0..p {
        let target = sub_mod(p - 1, mul_mod(a, a, p), p);
        let r = root[target as usize];
        if r == u64::MAX {
            continue;
        }
        // The square roots of the target are r and p - r.
        let b = [r, neg_mod(r, p)]
            .into_iter()
            .filter(|&b| b >= a)
            .min();
        if let Some(b) = b {
            return Ok((Residue::from_canonical(a, p), Residue::from_canonical(b, p)));
        }
    }
    Err(Error::InvariantViolation(format!(
        "no solution to a² + b² ≡ -1 modulo {p}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, m: u64) -> Residue {
        Residue::new(n, m).unwrap()
    }

    fn primes_up_to(n: u64) -> Vec<u64> {
        (2..=n).filter(|&k| (2..k).all(|d| k % d != 0)).collect()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(7, 5).unwrap().value(), 2);
        assert_eq!(normalize(-1, 5).unwrap().value(), 4);
        assert_eq!(normalize(0, 2).unwrap().value(), 0);
        assert_eq!(normalize(3, 1), Err(Error::InvalidModulus(1)));
        assert_eq!(normalize(3, 0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn ring_op_examples() {
        assert_eq!(ring_op(r(3, 5), r(4, 5), RingOp::Add).unwrap(), r(2, 5));
        assert_eq!(ring_op(r(2, 3), r(2, 3), RingOp::Mul).unwrap(), r(1, 3));
        assert_eq!(ring_op(r(0, 7), r(1, 7), RingOp::Sub).unwrap(), r(6, 7));
        assert_eq!(
            r(1, 5).add(r(1, 7)),
            Err(Error::ModulusMismatch { left: 5, right: 7 })
        );
    }

    #[test]
    fn no_overflow_near_u64_max() {
        let m = u64::MAX - 58; // largest prime below 2^64
        let a = Residue::from_canonical(m - 1, m);
        assert_eq!(a.mul(a).unwrap().value(), 1);
        assert_eq!(a.add(a).unwrap().value(), m - 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(r(2, 7)).unwrap(), r(4, 7));
        assert_eq!(inverse(r(1, 12)).unwrap(), r(1, 12));
        assert_eq!(
            inverse(r(3, 6)),
            Err(Error::NotInvertible { value: 3, modulus: 6, gcd: 3 })
        );
        assert!(inverse(r(0, 5)).is_err());
        // composite modulus, as used for Z_{z(p)}
        assert_eq!(inverse(r(2, 9)).unwrap(), r(5, 9));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(13, 5).unwrap(), -1);
        assert_eq!(legendre(5, 5).unwrap(), 0);
        assert_eq!(legendre(11, 5).unwrap(), 1);
        assert_eq!(legendre(-1, 5).unwrap(), 1);
        assert!(legendre(3, 2).is_err());
        assert_eq!(legendre(3, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for p in primes_up_to(97).into_iter().filter(|&p| p > 2) {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre(a as i64, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    fn exhaustive_two_squares(p: u64) -> (u64, u64) {
        for a in 0..p {
            for b in a..p {
                if (a * a + b * b + 1) % p == 0 {
                    return (a, b);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn two_squares_examples() {
        let pair = |p| {
            let (a, b) = two_square_root_of_minus_one(p).unwrap();
            (a.value(), b.value())
        };
        assert_eq!(pair(3), (1, 1));
        assert_eq!(pair(5), (0, 2));
        assert_eq!(pair(7), (2, 3));
        assert!(two_square_root_of_minus_one(2).is_err());
    }

    #[test]
    fn two_squares_match_lexicographic_scan() {
        for p in primes_up_to(97).into_iter().filter(|&p| p > 2) {
            let (a, b) = two_square_root_of_minus_one(p).unwrap();
            assert_eq!((a.value(), b.value()), exhaustive_two_squares(p), "p={p}");
            assert_eq!((a.value().pow(2) + b.value().pow(2) + 1) % p, 0);
        }
    }

    #[test]
    fn primality() {
        let listed = primes_up_to(500);
        let found: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(found, listed);
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(m in 2u64..5000, a in 0u64..5000) {
            let a = Residue::from_canonical(a % m, m);
            match a.inverse() {
                Ok(b) => prop_assert_eq!(a.mul(b).unwrap().value(), 1),
                Err(Error::NotInvertible { gcd: g, .. }) => prop_assert_eq!(g, gcd(a.value(), m)),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn ops_match_integer_arithmetic(m in 2u64..1_000_000, a in -10_000_000i64..10_000_000, b in -10_000_000i64..10_000_000) {
            let (x, y) = (Residue::new(a, m).unwrap(), Residue::new(b, m).unwrap());
            let mm = m as i128;
            prop_assert_eq!(x.add(y).unwrap().value() as i128, (a as i128 + b as i128).rem_euclid(mm));
            prop_assert_eq!(x.sub(y).unwrap().value() as i128, (a as i128 - b as i128).rem_euclid(mm));
            prop_assert_eq!(x.mul(y).unwrap().value() as i128, (a as i128 * b as i128).rem_euclid(mm));
        }
    }
}
