//! `finquat`: classify Fibonacci and generalized Fibonacci-Lucas
//! quaternions over `Z_p`, query Pisano periods, and run the verification
//! suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 resource guardrail.

mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use finquat::fibquat::{classify_fib_bounded, enumerate_period_bounded, IndexClasses};
use finquat::fibseq::{self, fib_cycle_bounded, period_summary, sun_congruence};
use finquat::genfibquat::classify_gfl;
use finquat::oracle::{run_suite, Suite, VerifyScope};
use finquat::quatring::{census_formula_value, zero_divisor_census, CensusMode};
use finquat::{Error, FibRule, GflParams, KnownErratum, Quaternion, VerificationReport};
use output::{Envelope, Format};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "finquat", version, about = "Fibonacci quaternions over Z_p: units, zero divisors and periods")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Largest prime accepted by the brute-force census.
    #[arg(long, global = true, env = "FINQUAT_MAX_BRUTE_P", default_value_t = 11)]
    max_brute_p: u64,

    /// Largest horizon or period length any command will sweep.
    #[arg(long, global = true, env = "FINQUAT_MAX_HORIZON", default_value_t = 10_000)]
    max_horizon: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Pisano period k(m), entry point z(m) and their relation.
    Period { m: u64 },
    /// One full Fibonacci cycle modulo m.
    Cycle { m: u64 },
    /// Classify F_n = f_n + f_(n+1) i + f_(n+2) j + f_(n+3) k mod p.
    ClassifyFib {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Classify the generalized quaternion G_n with coefficients (pc, qc) mod r.
    ClassifyGfl {
        #[arg(long, allow_hyphen_values = true)]
        pc: i64,
        #[arg(long, allow_hyphen_values = true)]
        qc: i64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Every F_n over one period mod p.
    Enumerate {
        #[arg(long)]
        p: u64,
    },
    /// Number of non-invertible elements of H(Z_p; -1, -1).
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "brute-force")]
        mode: Mode,
    },
    /// Run verification suites against brute-force recomputation.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Largest prime swept by the selected suites.
        #[arg(long, default_value_t = 37)]
        max_p: u64,
        /// Number of indices checked per prime (default: 3 k(p)).
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Evaluate both sides of the Sun congruence for f_((p - (p/5))/2) mod p.
    SunCheck {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Formula,
    BruteForce,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Census,
    Fib,
    Gfl,
    Sequences,
    All,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Census => "census",
            SuiteArg::Fib => "fib",
            SuiteArg::Gfl => "gfl",
            SuiteArg::Sequences => "sequences",
            SuiteArg::All => "all",
        }
    }

    fn suite(self) -> Suite {
        match self {
            SuiteArg::Census => Suite::Census,
            SuiteArg::Fib => Suite::Fib,
            SuiteArg::Gfl => Suite::Gfl,
            SuiteArg::Sequences => Suite::Sequences,
            SuiteArg::All => Suite::All,
        }
    }
}

fn element_json(q: &Quaternion) -> Value {
    json!({
        "element": q.to_string(),
        "compact": q.compact(),
        "coordinates": q.coords(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn check_horizon(requested: u64, limit: u64) -> finquat::Result<()> {
    if requested > limit {
        return Err(Error::ResourceLimit {
            what: "horizon",
            requested,
            limit,
        });
    }
    Ok(())
}

fn report_json(r: &VerificationReport) -> Value {
    let discrepancies: Vec<Value> = r
        .discrepancies
        .iter()
        .map(|d| {
            json!({
                "input": d.input,
                "claimed": d.claimed,
                "computed": d.computed,
                "erratum": d.erratum.map(KnownErratum::id),
            })
        })
        .collect();
    json!({
        "name": r.check_name,
        "scope": r.scope,
        "passed": r.passed,
        "discrepancies": discrepancies,
    })
}

/// Runs one command. The flag reports a failed verification.
fn run(cli: &Cli) -> finquat::Result<(Envelope, bool)> {
    let mut failed = false;
    let env = match cli.command {
        Command::Period { m } => {
            let info = period_summary(m, fibseq::DEFAULT_PERIOD_LIMIT)?;
            let mut env = Envelope::new("period").param("m", m);
            env.result = json!({
                "modulus": info.modulus,
                "z": info.entry_point,
                "k": info.pisano_period,
                "relation": info.relation.label(),
            });
            env
        }
        Command::Cycle { m } => {
            let cycle = fib_cycle_bounded(m, fibseq::DEFAULT_PERIOD_LIMIT)?;
            let values: Vec<u64> = cycle.iter().map(|r| r.value()).collect();
            let mut env = Envelope::new("cycle").param("m", m);
            env.result = json!({ "modulus": m, "length": values.len(), "cycle": values });
            env
        }
        Command::ClassifyFib { n, p } => {
            let r = classify_fib_bounded(n, p, fibseq::DEFAULT_PERIOD_LIMIT)?;
            let mut env = Envelope::new("classify-fib").param("n", n).param("p", p);
            env.result = merge(
                element_json(&r.element),
                json!({
                    "index": r.index,
                    "prime": p,
                    "norm": r.classification.norm_value.value(),
                    "norm_via_identity": r.norm_via_identity.value(),
                    "verdict": r.classification.verdict.label(),
                    "period_position": r.period_position,
                    "rule": { "id": r.rule.id(), "condition": r.rule.to_string() },
                    "entry_point_l": r.entry_point_l,
                    "sun_family_l": r.sun_family_l,
                }),
            );
            if let FibRule::EntryPoint(IndexClasses::NoSolutions { entry_point }) = r.rule {
                env.warnings.push(format!(
                    "z(p) = {entry_point} is even: no F_n is a zero divisor mod {p}"
                ));
            }
            env
        }
        Command::ClassifyGfl { pc, qc, n, r } => {
            let params = GflParams::new(pc, qc);
            let rep = classify_gfl(params, n, r)?;
            let mut env = Envelope::new("classify-gfl")
                .param("pc", pc)
                .param("qc", qc)
                .param("n", n)
                .param("r", r);
            let rule = rep.condition.map(|c| {
                json!({
                    "id": c.rule.id(),
                    "condition": c.set.to_string(),
                    "predicts_non_unit": c.set.contains(n),
                })
            });
            env.result = merge(
                element_json(&rep.element),
                json!({
                    "index": n,
                    "modulus": r,
                    "norm": rep.classification.norm_value.value(),
                    "norm_via_formula": rep.norm_via_formula.value(),
                    "verdict": rep.classification.verdict.label(),
                    "rule": rule,
                }),
            );
            match rep.condition {
                None => env.warnings.push(format!("no closed form covers {params} at r = {r}")),
                Some(c) if c.set.is_empty() => env.warnings.push(format!(
                    "{}: {}",
                    c.set,
                    KnownErratum::EvenEntryPointFormula.description()
                )),
                Some(_) => {}
            }
            env
        }
        Command::Enumerate { p } => {
            let e = enumerate_period_bounded(p, cli.max_horizon)?;
            let mut env = Envelope::new("enumerate").param("p", p);
            let elements: Vec<Value> = e
                .reports
                .iter()
                .map(|r| {
                    json!({
                        "n": r.index,
                        "element": r.element.to_string(),
                        "verdict": r.classification.verdict.label(),
                    })
                })
                .collect();
            env.result = json!({
                "prime": p,
                "z": e.info.entry_point,
                "k": e.info.pisano_period,
                "relation": e.info.relation.label(),
                "rule": { "id": e.rule.id(), "condition": e.rule.to_string() },
                "counts": { "zero_divisors": e.distinct_zero_divisors, "units": e.distinct_units },
                "elements": elements,
            });
            if p > 5 && !e.four_count_applies() {
                env.warnings.push(format!(
                    "z(p) even: the count of 4 zero divisors and k(p) - 4 units does not apply (z({p}) = {})",
                    e.info.entry_point.unwrap_or(0)
                ));
            }
            env
        }
        Command::Census { p, mode } => {
            let (mode, name) = match mode {
                Mode::Formula => (CensusMode::Formula, "formula"),
                Mode::BruteForce => (CensusMode::BruteForce, "brute-force"),
            };
            if matches!(mode, CensusMode::BruteForce) && p > cli.max_brute_p {
                return Err(Error::ResourceLimit {
                    what: "brute-force census prime",
                    requested: p,
                    limit: cli.max_brute_p,
                });
            }
            let count = zero_divisor_census(p, mode)?;
            let mut env = Envelope::new("census").param("p", p).param("mode", name);
            env.result = json!({
                "prime": p,
                "mode": name,
                "elements": p.pow(4),
                "non_units": count,
                "formula_p3_p2_minus_p": census_formula_value(p),
            });
            if p == 2 {
                env.warnings
                    .push(format!("{}: {}", KnownErratum::ZeroDivisorCountAtTwo.id(), KnownErratum::ZeroDivisorCountAtTwo.description()));
            }
            env
        }
        Command::Verify { suite, max_p, horizon } => {
            if let Some(h) = horizon {
                check_horizon(h, cli.max_horizon)?;
            }
            let scope = VerifyScope {
                max_p,
                max_brute_p: cli.max_brute_p,
                horizon,
                max_horizon: cli.max_horizon,
            };
            let reports = run_suite(suite.suite(), &scope)?;
            let mut env = Envelope::new("verify")
                .param("suite", suite.name())
                .param("max_p", max_p)
                .param("horizon", horizon)
                .param("max_brute_p", cli.max_brute_p);
            for r in &reports {
                for d in r.errata() {
                    let e = d.erratum.expect("filtered");
                    env.warnings.push(format!("{}: {} [{}]: {}", r.check_name, e.id(), d.input, e.description()));
                }
            }
            failed = reports.iter().any(|r| !r.passed);
            let checks: Vec<Value> = reports.iter().map(report_json).collect();
            env.result = json!({ "passed": !failed, "checks": checks });
            env
        }
        Command::SunCheck { p } => {
            let s = sun_congruence(p)?;
            let mut env = Envelope::new("sun-check").param("p", p);
            env.result = json!({
                "prime": s.prime,
                "legendre_p_5": s.legendre_p_5,
                "index": s.index,
                "lhs": s.lhs.value(),
                "rhs": s.rhs.value(),
                "holds": s.holds,
            });
            env
        }
    };
    Ok((env, failed))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::InvariantViolation(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((env, failed)) => {
            println!("{}", env.render(cli.format));
            ExitCode::from(u8::from(failed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
