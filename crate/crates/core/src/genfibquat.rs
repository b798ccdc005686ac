//! Generalized Fibonacci-Lucas numbers `g_n = p f_{n-1} + q l_n` and the
//! quaternions `G_n = g_n + g_{n+1} i + g_{n+2} j + g_{n+3} k` in
//! `H_{Z_r}(-1, -1)`.
//!
//! The coefficients `p`, `q` are arbitrary signed integers and are reduced
//! modulo `r` only when a value is evaluated. With `f_{-1} = 1`, `g_n` is
//! defined from `n = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fibquat::{odd_offset_classes, IndexClasses};
use crate::fibseq::{self, fib_mod, DEFAULT_PERIOD_LIMIT};
use crate::modarith::{
    add_mod, check_modulus, is_prime, mul_mod, reduce_signed, require_prime, Residue,
};
use crate::quatring::{Classification, QuatAlgebra, Quaternion, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GflParams {
    pub p_coef: i64,
    pub q_coef: i64,
}

impl GflParams {
    pub fn new(p_coef: i64, q_coef: i64) -> Self {
        GflParams { p_coef, q_coef }
    }

    fn reduced(&self, m: u64) -> (u64, u64) {
        (
            reduce_signed(self.p_coef as i128, m),
            reduce_signed(self.q_coef as i128, m),
        )
    }
}

impl fmt::Display for GflParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p_coef, self.q_coef)
    }
}

/// `(g_n, g_{n+1}) mod m`.
fn gfl_pair(params: GflParams, n: u64, m: u64) -> Result<(u64, u64)> {
    let (p, q) = params.reduced(m);
    let g = |k: u64| -> Result<u64> {
        let f = fib_mod(k as i64 - 1, m)?.value();
        let l = fibseq::lucas_mod(k, m)?.value();
        Ok(add_mod(mul_mod(p, f, m), mul_mod(q, l, m), m))
    };
    Ok((g(n)?, g(n + 1)?))
}

pub fn gfl_number(params: GflParams, n: u64, m: u64) -> Result<Residue> {
    check_modulus(m)?;
    Ok(Residue::from_canonical(gfl_pair(params, n, m)?.0, m))
}

pub fn gfl_quaternion(params: GflParams, n: u64, r: u64) -> Result<Quaternion> {
    require_prime(r)?;
    let (g0, g1) = gfl_pair(params, n, r)?;
    let g2 = add_mod(g0, g1, r);
    let g3 = add_mod(g1, g2, r);
    QuatAlgebra::hamilton(r)?.element_canonical([g0, g1, g2, g3])
}

/// `3p² f_{2n+1} + 15q² f_{2n+3} + 6pq (f_{2n+1} + f_{2n+3}) mod r`.
pub fn gfl_norm(params: GflParams, n: u64, r: u64) -> Result<Residue> {
    require_prime(r)?;
    let (p, q) = params.reduced(r);
    let f1 = fib_mod(2 * n as i64 + 1, r)?.value();
    let f3 = fib_mod(2 * n as i64 + 3, r)?.value();
    let mul = |a, b| mul_mod(a, b, r);
    let first = mul(3 % r, mul(mul(p, p), f1));
    let second = mul(15 % r, mul(mul(q, q), f3));
    let third = mul(6 % r, mul(mul(p, q), add_mod(f1, f3, r)));
    Ok(Residue::from_canonical(
        add_mod(add_mod(first, second, r), third, r),
        r,
    ))
}

/// Which closed-form rule describes the non-invertible `G_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GflRule {
    Mod2PEvenQOdd,
    Mod2POddQEven,
    Mod2BothEven,
    Mod2BothOdd,
    Mod3All,
    Mod5PZero,
    Mod5QEqualsP,
    Mod5QEqualsMinusP,
    /// `(p, q) ≡ (1,2), (3,1), (2,4), (4,3) (mod 5)`.
    Mod5QEqualsTwoP,
    /// `(p, q) ≡ (2,1), (3,4), (4,2), (1,3) (mod 5)`.
    Mod5QEqualsThreeP,
    Mod5QZero,
    /// `r = p`: `z(p) | 2n + 3`.
    ModulusIsP,
    /// `r = q`: `z(q) | 2n + 1`.
    ModulusIsQ,
}

impl GflRule {
    pub fn id(self) -> &'static str {
        match self {
            GflRule::Mod2PEvenQOdd => "gfl-mod2-p-even-q-odd",
            GflRule::Mod2POddQEven => "gfl-mod2-p-odd-q-even",
            GflRule::Mod2BothEven => "gfl-mod2-both-even",
            GflRule::Mod2BothOdd => "gfl-mod2-both-odd",
            GflRule::Mod3All => "gfl-mod3-all",
            GflRule::Mod5PZero => "gfl-mod5-p-zero",
            GflRule::Mod5QEqualsP => "gfl-mod5-q-eq-p",
            GflRule::Mod5QEqualsMinusP => "gfl-mod5-q-eq-minus-p",
            GflRule::Mod5QEqualsTwoP => "gfl-mod5-q-eq-2p",
            GflRule::Mod5QEqualsThreeP => "gfl-mod5-q-eq-3p",
            GflRule::Mod5QZero => "gfl-mod5-q-zero",
            GflRule::ModulusIsP => "gfl-r-eq-p-entry-point",
            GflRule::ModulusIsQ => "gfl-r-eq-q-entry-point",
        }
    }
}

/// A set of indices `n >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    All,
    Congruent { residue: u64, modulus: u64 },
    EntryPoint(IndexClasses),
}

impl IndexSet {
    pub fn contains(&self, n: u64) -> bool {
        match self {
            IndexSet::All => true,
            IndexSet::Congruent { residue, modulus } => n % modulus == *residue,
            IndexSet::EntryPoint(classes) => classes.contains(n),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, IndexSet::EntryPoint(IndexClasses::NoSolutions { .. }))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::All => write!(f, "all n"),
            IndexSet::Congruent { residue, modulus } => write!(f, "n ≡ {residue} (mod {modulus})"),
            IndexSet::EntryPoint(IndexClasses::Class {
                residue,
                entry_point,
                offset,
            }) => write!(
                f,
                "n ≡ {residue} (mod {entry_point}), n = ((2l+1)·{entry_point} - {offset})/2"
            ),
            IndexSet::EntryPoint(IndexClasses::NoSolutions { entry_point }) => {
                write!(f, "none: entry point {entry_point} is even")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GflCondition {
    pub rule: GflRule,
    /// Indices `n` for which `G_n` is not a unit.
    pub set: IndexSet,
}

impl fmt::Display for GflCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule.id(), self.set)
    }
}

const Q_TWICE_P: [(u64, u64); 4] = [(1, 2), (3, 1), (2, 4), (4, 3)];
const Q_THRICE_P: [(u64, u64); 4] = [(2, 1), (3, 4), (4, 2), (1, 3)];

fn congruent(rule: GflRule, residue: u64, modulus: u64) -> GflCondition {
    GflCondition {
        rule,
        set: IndexSet::Congruent { residue, modulus },
    }
}

/// The closed-form description of `{n : n(G_n) ≡ 0 (mod r)}`.
///
/// Covers `r ∈ {2, 3, 5}` for any coefficients, and `r` equal to one of two
/// distinct prime coefficients when that coefficient exceeds 5. Anything
/// else is [`Error::Unsupported`]; use [`classify_gfl`] per index instead.
pub fn gfl_zero_divisor_condition(params: GflParams, r: u64) -> Result<GflCondition> {
    gfl_zero_divisor_condition_bounded(params, r, DEFAULT_PERIOD_LIMIT)
}

pub fn gfl_zero_divisor_condition_bounded(
    params: GflParams,
    r: u64,
    limit: u64,
) -> Result<GflCondition> {
    require_prime(r)?;
    match r {
        2 => Ok(match params.reduced(2) {
            (0, 1) => congruent(GflRule::Mod2PEvenQOdd, 0, 3),
            (1, 0) => congruent(GflRule::Mod2POddQEven, 1, 3),
            (0, 0) => GflCondition {
                rule: GflRule::Mod2BothEven,
                set: IndexSet::All,
            },
            _ => congruent(GflRule::Mod2BothOdd, 2, 3),
        }),
        3 => Ok(GflCondition {
            rule: GflRule::Mod3All,
            set: IndexSet::All,
        }),
        5 => {
            let (p, q) = params.reduced(5);
            // cases in the order p ≡ 0, q ≡ p, q ≡ -p, the two listed
            // families, then q ≡ 0
            if p == 0 {
                Ok(GflCondition {
                    rule: GflRule::Mod5PZero,
                    set: IndexSet::All,
                })
            } else if p == q {
                Ok(congruent(GflRule::Mod5QEqualsP, 4, 5))
            } else if (p + q) % 5 == 0 {
                Ok(congruent(GflRule::Mod5QEqualsMinusP, 0, 5))
            } else if Q_TWICE_P.contains(&(p, q)) {
                Ok(congruent(GflRule::Mod5QEqualsTwoP, 1, 5))
            } else if Q_THRICE_P.contains(&(p, q)) {
                Ok(congruent(GflRule::Mod5QEqualsThreeP, 3, 5))
            } else if q == 0 {
                Ok(congruent(GflRule::Mod5QZero, 2, 5))
            } else {
                Err(Error::Unsupported(format!(
                    "no closed form for {params} modulo 5"
                )))
            }
        }
        _ => {
            let (pc, qc) = (params.p_coef, params.q_coef);
            let both_prime = pc > 0 && qc > 0 && is_prime(pc as u64) && is_prime(qc as u64);
            if !both_prime || pc == qc || (pc as u64 != r && qc as u64 != r) {
                return Err(Error::Unsupported(format!(
                    "no closed form for {params} modulo {r}: needs distinct prime coefficients, one equal to r"
                )));
            }
            let z = fibseq::entry_point_bounded(r, limit)?;
            let (rule, offset) = if pc as u64 == r {
                (GflRule::ModulusIsP, 3)
            } else {
                (GflRule::ModulusIsQ, 1)
            };
            Ok(GflCondition {
                rule,
                set: IndexSet::EntryPoint(odd_offset_classes(z, offset)),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GflReport {
    pub params: GflParams,
    pub index: u64,
    pub element: Quaternion,
    pub norm_via_formula: Residue,
    pub classification: Classification,
    /// `None` when no closed form covers `(params, r)`.
    pub condition: Option<GflCondition>,
}

/// Classifies `G_n` mod `r` by its norm, cross-checked against the norm
/// formula and, where one exists, the closed-form condition.
pub fn classify_gfl(params: GflParams, n: u64, r: u64) -> Result<GflReport> {
    let condition = match gfl_zero_divisor_condition(params, r) {
        Ok(c) => Some(c),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    classify_gfl_with(params, n, r, condition)
}

pub(crate) fn classify_gfl_with(
    params: GflParams,
    n: u64,
    r: u64,
    condition: Option<GflCondition>,
) -> Result<GflReport> {
    let element = gfl_quaternion(params, n, r)?;
    let norm_via_formula = gfl_norm(params, n, r)?;
    let classification = element.classify()?;
    if classification.norm_value != norm_via_formula {
        return Err(Error::InvariantViolation(format!(
            "n(G_{n}) for {params} mod {r}: componentwise {} vs formula {}",
            classification.norm_value, norm_via_formula
        )));
    }
    if let Some(cond) = condition {
        let non_unit = classification.verdict != Verdict::Unit;
        if non_unit != cond.set.contains(n) {
            return Err(Error::InvariantViolation(format!(
                "G_{n} for {params} mod {r} is {} but `{cond}` disagrees",
                classification.verdict
            )));
        }
    }
    Ok(GflReport {
        params,
        index: n,
        element,
        norm_via_formula,
        classification,
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibquat::fib_quaternion;
    use crate::fibseq::{fib_exact, lucas_exact};

    fn gp(p: i64, q: i64) -> GflParams {
        GflParams::new(p, q)
    }

    fn g_exact(params: GflParams, n: u64) -> i128 {
        let f_prev = if n == 0 { 1 } else { fib_exact(n - 1) as i128 };
        params.p_coef as i128 * f_prev + params.q_coef as i128 * lucas_exact(n) as i128
    }

    #[test]
    fn gfl_number_examples() {
        for n in 0..=20 {
            assert_eq!(gfl_number(gp(0, 1), n, 1000).unwrap().value() as u128, lucas_exact(n) % 1000);
        }
        for n in 1..=20 {
            assert_eq!(gfl_number(gp(1, 0), n, 1000).unwrap().value() as u128, fib_exact(n - 1) % 1000);
        }
        assert_eq!(gfl_number(gp(2, 1), 0, 100).unwrap().value(), 4);
        assert_eq!(gfl_number(gp(-3, 2), 5, 7).unwrap().value(), (g_exact(gp(-3, 2), 5).rem_euclid(7)) as u64);
    }

    #[test]
    fn gfl_quaternion_examples() {
        assert_eq!(gfl_quaternion(gp(2, 1), 0, 2).unwrap().coords(), [0, 1, 1, 0]);
        assert_eq!(gfl_quaternion(gp(0, 1), 0, 5).unwrap().coords(), [2, 1, 3, 4]);
        assert_eq!(gfl_quaternion(gp(1, 0), 1, 3).unwrap().coords(), [0, 1, 1, 2]);
    }

    #[test]
    fn norm_formula_spot_value() {
        let exact: i128 = (0..4).map(|k| g_exact(gp(2, 1), k).pow(2)).sum();
        assert_eq!(exact, 78);
        let formula = 3 * 4 * fib_exact(1) + 15 * fib_exact(3) + 6 * 2 * (fib_exact(1) + fib_exact(3));
        assert_eq!(formula, 78);
        assert_eq!(gfl_norm(gp(2, 1), 0, 79).unwrap().value(), 78);
        assert_eq!(gfl_quaternion(gp(2, 1), 0, 79).unwrap().norm().value(), 78);
    }

    #[test]
    fn norm_formula_matches_exact_integers() {
        for p in -2..=3 {
            for q in -2..=3 {
                for n in 0..=40u64 {
                    let exact: i128 = (n..n + 4).map(|k| g_exact(gp(p, q), k).pow(2)).sum();
                    for r in [2u64, 3, 5, 7, 11, 13] {
                        let formula = gfl_norm(gp(p, q), n, r).unwrap();
                        assert_eq!(formula.value() as i128, exact.rem_euclid(r as i128));
                        assert_eq!(gfl_quaternion(gp(p, q), n, r).unwrap().norm(), formula);
                    }
                }
            }
        }
    }

    #[test]
    fn fibonacci_specialisation() {
        for r in [2u64, 3, 5, 7, 13] {
            for n in 0..40 {
                assert_eq!(gfl_quaternion(gp(1, 0), n + 1, r).unwrap(), fib_quaternion(n, r).unwrap());
                assert_eq!(
                    gfl_norm(gp(1, 0), n + 1, r).unwrap(),
                    crate::fibquat::fib_quat_norm(n, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn everything_vanishes_mod_three() {
        for p in -4..5 {
            for q in -4..5 {
                for n in 0..30 {
                    assert!(gfl_norm(gp(p, q), n, 3).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let v = |p, q, n, r| classify_gfl(gp(p, q), n, r).unwrap().classification.verdict;
        assert_eq!(v(2, 3, 3, 2), Verdict::ZeroDivisor);
        assert_eq!(v(1, 2, 1, 5), Verdict::ZeroDivisor);
        assert_eq!(v(3, 0, 2, 5), Verdict::ZeroDivisor);
        assert_eq!(v(2, 4, 1, 2), Verdict::Zero);
        let report = classify_gfl(gp(1, 2), 1, 5).unwrap();
        assert_eq!(report.condition.unwrap().rule, GflRule::Mod5QEqualsTwoP);
        let uncovered = classify_gfl(gp(4, 6), 3, 7).unwrap();
        assert!(uncovered.condition.is_none());
    }

    #[test]
    fn condition_examples() {
        let c = |p, q, r| gfl_zero_divisor_condition(gp(p, q), r).unwrap();
        assert_eq!(c(2, 3, 2).set, IndexSet::Congruent { residue: 0, modulus: 3 });
        let seven_three = c(7, 3, 5);
        assert_eq!(seven_three.rule, GflRule::Mod5QEqualsMinusP);
        assert_eq!(seven_three.set, IndexSet::Congruent { residue: 0, modulus: 5 });

        let thirteen_three = c(13, 3, 13);
        assert_eq!(thirteen_three.rule, GflRule::ModulusIsP);
        let IndexSet::EntryPoint(classes) = thirteen_three.set else { panic!() };
        assert_eq!((0..3).map(|l| classes.index(l).unwrap()).collect::<Vec<_>>(), [2, 9, 16]);

        let three_thirteen = c(3, 13, 13);
        assert_eq!(three_thirteen.rule, GflRule::ModulusIsQ);
        let IndexSet::EntryPoint(classes) = three_thirteen.set else { panic!() };
        assert_eq!((0..3).map(|l| classes.index(l).unwrap()).collect::<Vec<_>>(), [3, 10, 17]);

        // z(7) = 8 is even
        assert!(c(7, 17, 7).set.is_empty());
        assert!(matches!(
            gfl_zero_divisor_condition(gp(4, 3), 11),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            gfl_zero_divisor_condition(gp(13, 13), 13),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn mod5_cases_cover_every_residue_pair() {
        for p in 0..5 {
            for q in 0..5 {
                assert!(gfl_zero_divisor_condition(gp(p, q), 5).is_ok(), "({p}, {q})");
            }
        }
    }

    #[test]
    fn conditions_match_direct_norms() {
        let mut cases = vec![];
        for p in -5..=5 {
            for q in -5..=5 {
                for r in [2u64, 3, 5] {
                    cases.push((gp(p, q), r));
                }
            }
        }
        for (p, q) in [(13, 3), (3, 13), (17, 7), (7, 17), (11, 2), (2, 37)] {
            cases.push((gp(p, q), p as u64));
            cases.push((gp(p, q), q as u64));
        }
        for (params, r) in cases {
            let Ok(cond) = gfl_zero_divisor_condition(params, r) else { continue };
            for n in 0..80 {
                let direct = gfl_quaternion(params, n, r).unwrap().norm().is_zero();
                assert_eq!(cond.set.contains(n), direct, "{params} r={r} n={n}");
            }
        }
    }
}
