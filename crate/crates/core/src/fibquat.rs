//! Fibonacci quaternions `F_n = f_n + f_{n+1} i + f_{n+2} j + f_{n+3} k`
//! reduced into `H_{Z_p}(-1, -1)`.
//!
//! Since `n(F_n) = 3 f_{2n+3}`, `F_n` is a zero divisor exactly when
//! `p | 3 f_{2n+3}`. For `p = 3` that is every `n`; otherwise it is
//! `z(p) | 2n + 3`, which has solutions only when the entry point `z(p)` is
//! odd.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fibseq::{self, fib_mod, PeriodInfo, DEFAULT_PERIOD_LIMIT};
use crate::modarith::{mul_mod, require_prime, Residue};
use crate::par;
use crate::quatring::{Classification, QuatAlgebra, Quaternion, Verdict};

pub fn fib_quaternion(n: u64, p: u64) -> Result<Quaternion> {
    require_prime(p)?;
    fib_quaternion_in(&QuatAlgebra::hamilton(p)?, n)
}

fn fib_quaternion_in(algebra: &QuatAlgebra, n: u64) -> Result<Quaternion> {
    let p = algebra.modulus();
    let (f0, f1) = fibseq::fib_pair_raw(n, p);
    let f2 = (f0 + f1) % p;
    let f3 = (f1 + f2) % p;
    algebra.element_canonical([f0, f1, f2, f3])
}

/// `3 f_{2n+3} mod p`.
pub fn fib_quat_norm(n: u64, p: u64) -> Result<Residue> {
    let f = fib_mod(2 * n as i64 + 3, p)?;
    Ok(Residue::from_canonical(mul_mod(3, f.value(), p), p))
}

/// Indices `n` with `z | 2n + 3`, for a prime `p > 5` with entry point `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexClasses {
    /// `z` is even, so `z` never divides the odd number `2n + 3`.
    NoSolutions { entry_point: u64 },
    /// `n ≡ residue (mod entry_point)`, i.e. `n = ((2l + 1) z - offset) / 2`.
    Class {
        residue: u64,
        entry_point: u64,
        offset: u64,
    },
}

impl IndexClasses {
    pub fn contains(&self, n: u64) -> bool {
        match *self {
            IndexClasses::NoSolutions { .. } => false,
            IndexClasses::Class {
                residue,
                entry_point,
                ..
            } => n % entry_point == residue,
        }
    }

    pub fn entry_point(&self) -> u64 {
        match *self {
            IndexClasses::NoSolutions { entry_point } | IndexClasses::Class { entry_point, .. } => {
                entry_point
            }
        }
    }

    /// The `l`-th solution, `l >= 0`.
    pub fn index(&self, l: u64) -> Option<u64> {
        match *self {
            IndexClasses::NoSolutions { .. } => None,
            IndexClasses::Class {
                entry_point,
                offset,
                ..
            } => Some(((2 * l + 1) * entry_point - offset) / 2),
        }
    }

    /// The `l` with `n = ((2l + 1) z - offset) / 2`, when `n` is a solution.
    pub fn generator_of(&self, n: u64) -> Option<u64> {
        match *self {
            IndexClasses::NoSolutions { .. } => None,
            IndexClasses::Class {
                entry_point,
                offset,
                ..
            } => {
                let target = 2 * n + offset;
                target.is_multiple_of(entry_point).then(|| (target / entry_point - 1) / 2)
            }
        }
    }
}

/// Solves `2n + 3 ≡ 0 (mod z(p))` for a prime `p > 5`.
pub fn zero_divisor_index_classes(p: u64) -> Result<IndexClasses> {
    require_prime(p)?;
    if p <= 5 {
        return Err(Error::Domain(format!("a prime greater than 5 is required, got {p}")));
    }
    Ok(odd_offset_classes(fibseq::entry_point(p)?, 3))
}

/// Solutions of `2n + offset ≡ 0 (mod z)` for odd `offset`.
pub(crate) fn odd_offset_classes(z: u64, offset: u64) -> IndexClasses {
    if z.is_multiple_of(2) {
        return IndexClasses::NoSolutions { entry_point: z };
    }
    // 2 is invertible modulo odd z
    let half = Residue::new(2, z).and_then(Residue::inverse);
    let residue = match half {
        Ok(half) => {
            let minus_offset = Residue::new(-(offset as i64), z).expect("z >= 3");
            minus_offset.mul(half).expect("same modulus").value()
        }
        Err(_) => 0, // z = 1 never occurs for a prime
    };
    IndexClasses::Class {
        residue,
        entry_point: z,
        offset,
    }
}

/// The closed-form rule that predicts which `F_n` are zero divisors mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibRule {
    /// `p = 2`: `n ≡ 0 (mod 3)`.
    Mod2,
    /// `p = 3`: every `n`.
    Mod3All,
    /// `p = 5`: `n ≡ 1 (mod 5)`.
    Mod5,
    /// `p > 5`: `z(p) | 2n + 3`.
    EntryPoint(IndexClasses),
}

impl FibRule {
    pub fn for_prime(p: u64) -> Result<Self> {
        require_prime(p)?;
        Ok(match p {
            2 => FibRule::Mod2,
            3 => FibRule::Mod3All,
            5 => FibRule::Mod5,
            _ => FibRule::EntryPoint(zero_divisor_index_classes(p)?),
        })
    }

    fn from_entry_point(p: u64, z: u64) -> Self {
        match p {
            2 => FibRule::Mod2,
            3 => FibRule::Mod3All,
            5 => FibRule::Mod5,
            _ => FibRule::EntryPoint(odd_offset_classes(z, 3)),
        }
    }

    pub fn predicts_zero_divisor(&self, n: u64) -> bool {
        match self {
            FibRule::Mod2 => n.is_multiple_of(3),
            FibRule::Mod3All => true,
            FibRule::Mod5 => n % 5 == 1,
            FibRule::EntryPoint(classes) => classes.contains(n),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            FibRule::Mod2 => "fib-mod2",
            FibRule::Mod3All => "fib-mod3-all",
            FibRule::Mod5 => "fib-mod5",
            FibRule::EntryPoint(IndexClasses::Class { .. }) => "fib-entry-point-odd",
            FibRule::EntryPoint(IndexClasses::NoSolutions { .. }) => "fib-entry-point-even",
        }
    }
}

impl fmt::Display for FibRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibRule::Mod2 => write!(f, "n ≡ 0 (mod 3)"),
            FibRule::Mod3All => write!(f, "all n"),
            FibRule::Mod5 => write!(f, "n ≡ 1 (mod 5)"),
            FibRule::EntryPoint(IndexClasses::Class {
                residue,
                entry_point,
                offset,
            }) => write!(
                f,
                "n ≡ {residue} (mod {entry_point}), n = ((2l+1)·{entry_point} - {offset})/2"
            ),
            FibRule::EntryPoint(IndexClasses::NoSolutions { entry_point }) => {
                write!(f, "none: z(p) = {entry_point} is even")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibQuatReport {
    pub index: u64,
    pub element: Quaternion,
    pub norm_via_identity: Residue,
    pub classification: Classification,
    pub period_position: u64,
    pub rule: FibRule,
    /// `l` with `2n + 3 = (2l + 1) z(p)`, when the entry-point rule applies.
    pub entry_point_l: Option<u64>,
    /// `l >= 1` with `2n + 3 = (2l + 1)(p + 1)/2`, for `p ≡ 13, 17 (mod 20)`.
    pub sun_family_l: Option<u64>,
}

fn sun_family_generator(n: u64, p: u64) -> Option<u64> {
    if !matches!(p % 20, 13 | 17) {
        return None;
    }
    let half = p.div_ceil(2);
    let target = 2 * n + 3;
    if !target.is_multiple_of(half) {
        return None;
    }
    let odd = target / half;
    (odd % 2 == 1 && odd >= 3).then_some((odd - 1) / 2)
}

fn build_report(
    algebra: &QuatAlgebra,
    n: u64,
    info: &PeriodInfo,
    rule: FibRule,
) -> Result<FibQuatReport> {
    let p = algebra.modulus();
    let element = fib_quaternion_in(algebra, n)?;
    let norm_via_identity = fib_quat_norm(n, p)?;
    let classification = element.classify()?;
    if classification.norm_value != norm_via_identity {
        return Err(Error::InvariantViolation(format!(
            "n(F_{n}) = {} but 3 f_(2n+3) = {} modulo {p}",
            classification.norm_value, norm_via_identity
        )));
    }
    let is_zero_divisor = classification.verdict != Verdict::Unit;
    if is_zero_divisor != rule.predicts_zero_divisor(n) {
        return Err(Error::InvariantViolation(format!(
            "F_{n} mod {p}: norm says {}, closed form `{rule}` disagrees",
            classification.verdict
        )));
    }
    let entry_point_l = match rule {
        FibRule::EntryPoint(classes) => classes.generator_of(n),
        _ => None,
    };
    Ok(FibQuatReport {
        index: n,
        element,
        norm_via_identity,
        classification,
        period_position: n % info.pisano_period,
        rule,
        entry_point_l,
        sun_family_l: sun_family_generator(n, p),
    })
}

/// Classifies `F_n` mod `p` and cross-checks the verdict against the
/// closed-form rule for `p`.
pub fn classify_fib(n: u64, p: u64) -> Result<FibQuatReport> {
    classify_fib_bounded(n, p, DEFAULT_PERIOD_LIMIT)
}

pub fn classify_fib_bounded(n: u64, p: u64, limit: u64) -> Result<FibQuatReport> {
    require_prime(p)?;
    let info = fibseq::period_info_bounded(p, limit)?;
    let rule = FibRule::from_entry_point(p, info.entry_point.expect("prime"));
    build_report(&QuatAlgebra::hamilton(p)?, n, &info, rule)
}

/// The index `n = (p(2l+1) + 2l - 1)/4 - 1` for `p ≡ 13, 17 (mod 20)` and
/// `l >= 1`, checked to give a zero-divisor `F_n`.
pub fn sun_family_index(p: u64, l: u64) -> Result<u64> {
    require_prime(p)?;
    if !matches!(p % 20, 13 | 17) {
        return Err(Error::Precondition(format!(
            "p ≡ 13 or 17 (mod 20) is required, got p ≡ {} (mod 20)",
            p % 20
        )));
    }
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    let numerator = p * (2 * l + 1) + 2 * l - 1;
    if !numerator.is_multiple_of(4) {
        return Err(Error::InvariantViolation(format!(
            "4 does not divide {numerator} for p = {p}, l = {l}"
        )));
    }
    let n = numerator / 4 - 1;
    let report = classify_fib(n, p)?;
    if report.classification.verdict != Verdict::ZeroDivisor {
        return Err(Error::InvariantViolation(format!(
            "F_{n} mod {p} is {}, expected a zero divisor",
            report.classification.verdict
        )));
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodEnumeration {
    pub info: PeriodInfo,
    pub rule: FibRule,
    /// One report per period position `n = 0 … k(p) - 1`.
    pub reports: Vec<FibQuatReport>,
    pub distinct_zero_divisors: usize,
    pub distinct_units: usize,
}

impl PeriodEnumeration {
    /// Whether the "4 zero divisors, k(p) - 4 units" count for `p > 5` is
    /// meaningful, i.e. `z(p)` is odd.
    pub fn four_count_applies(&self) -> bool {
        self.info.modulus <= 5 || self.info.entry_point.is_some_and(|z| z % 2 == 1)
    }

    pub fn zero_divisors(&self) -> impl Iterator<Item = &FibQuatReport> {
        self.reports
            .iter()
            .filter(|r| r.classification.verdict != Verdict::Unit)
    }

    pub fn units(&self) -> impl Iterator<Item = &FibQuatReport> {
        self.reports
            .iter()
            .filter(|r| r.classification.verdict == Verdict::Unit)
    }
}

pub fn enumerate_period(p: u64) -> Result<PeriodEnumeration> {
    enumerate_period_bounded(p, DEFAULT_PERIOD_LIMIT)
}

/// Classifies every `F_n` over one Pisano period. `max_len` caps `k(p)`.
pub fn enumerate_period_bounded(p: u64, max_len: u64) -> Result<PeriodEnumeration> {
    require_prime(p)?;
    let info = fibseq::period_info(p)?;
    if info.pisano_period > max_len {
        return Err(Error::ResourceLimit {
            what: "Pisano period",
            requested: info.pisano_period,
            limit: max_len,
        });
    }
    let algebra = QuatAlgebra::hamilton(p)?;
    let rule = FibRule::from_entry_point(p, info.entry_point.expect("prime"));
    let reports = par::map_range(0..info.pisano_period, |n| {
        build_report(&algebra, n, &info, rule)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let distinct = |unit: bool| {
        reports
            .iter()
            .filter(|r| (r.classification.verdict == Verdict::Unit) == unit)
            .map(|r| r.element.coords())
            .collect::<HashSet<_>>()
            .len()
    };
    Ok(PeriodEnumeration {
        info,
        rule,
        distinct_zero_divisors: distinct(false),
        distinct_units: distinct(true),
        reports,
    })
}
