//! Verification suites: exhaustive desk-scale sweeps of every construction's
//! count arithmetic, with exact integer equality throughout.
//!
//! Each suite produces a [`VerificationReport`] whose text and structured
//! forms are deterministic for fixed inputs (wall time is reported
//! separately).  Every failure record carries a CLI invocation that replays
//! the failing sweep.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::classes::{spec_by_name, ClassKind, ClassSpec, Verdict};
use crate::corpus;
use crate::counting::{
    count_bruteforce, count_dpll_with, gap_value, is_mersenne, is_power_of_two, mersenne_prefix,
    non_gappy_check, CountProfile,
};
use crate::formula::CnfFormula;
use crate::gadgets::{add_const, complement, exactly_k, multiply_mersenne, pad_pow2, CountExpr};
use crate::reductions::{
    cequal_to_mns, dtt_evaluate, equal_sat_oracle, fewp_to_mnp, majority_np_mns_with,
    mnp_in_parity_check, mns_oracle, parity_np_mns_with, us_to_mns,
};
use crate::Execution;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Identifier of one verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    /// Few-solutions construction, non-gappy Mersenne prefix.
    T2,
    /// Unique-count multiplier arithmetic and construction.
    T3,
    /// Majority oracle simulation.
    T4,
    /// Parity oracle simulation.
    T5,
    /// Mersenne-promise versus parity agreement.
    T6,
    /// Half-count to Mersenne construction, including the interval property.
    T7,
    /// Mersenne to half-count dtt reduction.
    T8,
    /// Class registry: totality, disjointness, intersection, containments.
    Classes,
    /// Engine equivalence and performance.
    Engines,
    /// Gadget count audit.
    Gadgets,
}

impl SuiteId {
    pub fn all() -> [SuiteId; 10] {
        [
            SuiteId::T2,
            SuiteId::T3,
            SuiteId::T4,
            SuiteId::T5,
            SuiteId::T6,
            SuiteId::T7,
            SuiteId::T8,
            SuiteId::Classes,
            SuiteId::Engines,
            SuiteId::Gadgets,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::T2 => "T2",
            SuiteId::T3 => "T3",
            SuiteId::T4 => "T4",
            SuiteId::T5 => "T5",
            SuiteId::T6 => "T6",
            SuiteId::T7 => "T7",
            SuiteId::T8 => "T8",
            SuiteId::Classes => "classes",
            SuiteId::Engines => "engines",
            SuiteId::Gadgets => "gadgets",
        }
    }

    pub fn parse(text: &str) -> Option<SuiteId> {
        SuiteId::all()
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(text))
    }
}

/// Knobs shared by all suites.  `n_max` overrides the suite's default sweep
/// bound (for T6 it is the exponent of the count bound).
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub n_max: Option<u32>,
    pub seed: u64,
    pub exec: Execution,
}

/// One counterexample: the sweep point, what was expected, what was
/// observed, and a CLI invocation that replays the sweep containing it.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FailureRecord {
    pub params: String,
    pub expected: String,
    pub observed: String,
    pub replay: String,
}

/// Outcome of one suite run.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: &'static str,
    pub parameter_ranges: String,
    pub checks_run: u64,
    pub failures: Vec<FailureRecord>,
    /// Reported separately from the deterministic text/structured forms.
    pub wall_time: Duration,
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    suite: &'static str,
    parameter_ranges: &'a str,
    checks_run: u64,
    passed: bool,
    failures: &'a [FailureRecord],
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Deterministic human-readable report (no timing).
    pub fn text(&self) -> String {
        let mut out = format!(
            "suite {}\nranges {}\nchecks {}\nfailures {}\n",
            self.suite,
            self.parameter_ranges,
            self.checks_run,
            self.failures.len()
        );
        const SHOWN: usize = 50;
        for f in self.failures.iter().take(SHOWN) {
            out.push_str(&format!(
                "FAIL params=[{}] expected=[{}] observed=[{}] replay=[{}]\n",
                f.params, f.expected, f.observed, f.replay
            ));
        }
        if self.failures.len() > SHOWN {
            out.push_str(&format!(
                "... and {} more failures\n",
                self.failures.len() - SHOWN
            ));
        }
        out.push_str(if self.passed() {
            "result PASS\n"
        } else {
            "result FAIL\n"
        });
        out
    }

    /// Deterministic machine-readable report (no timing).
    pub fn structured(&self) -> serde_json::Value {
        serde_json::to_value(ReportDocument {
            suite: self.suite,
            parameter_ranges: &self.parameter_ranges,
            checks_run: self.checks_run,
            passed: self.passed(),
            failures: &self.failures,
        })
        .expect("reports serialize")
    }

    pub fn write_json(&self, path: &std::path::Path) -> std::io::Result<()> {
        std::fs::write(
            path,
            format!(
                "{}\n",
                serde_json::to_string_pretty(&self.structured()).unwrap()
            ),
        )
    }
}

/// Accumulates check results; failures carry their construction lazily so
/// passing sweeps build no strings.
#[derive(Default)]
struct Checker {
    checks: u64,
    failures: Vec<FailureRecord>,
}

impl Checker {
    fn new() -> Checker {
        Checker::default()
    }

    fn check(&mut self, ok: bool, record: impl FnOnce() -> FailureRecord) {
        self.checks += 1;
        if !ok {
            self.failures.push(record());
        }
    }

    fn merge(&mut self, other: Checker) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Runs `body` for every value in `range`, sharding across the rayon pool in
/// parallel mode; failure order always matches sweep order.
fn sweep_range(
    range: std::ops::Range<u64>,
    exec: Execution,
    body: &(impl Fn(u64, &mut Checker) + Sync),
) -> Checker {
    match exec {
        Execution::Sequential => {
            let mut checker = Checker::new();
            for value in range {
                body(value, &mut checker);
            }
            checker
        }
        Execution::Parallel => sweep_range_parallel(range, body),
    }
}

#[cfg(feature = "parallel")]
fn sweep_range_parallel(
    range: std::ops::Range<u64>,
    body: &(impl Fn(u64, &mut Checker) + Sync),
) -> Checker {
    let len = range.end.saturating_sub(range.start);
    if len == 0 {
        return Checker::new();
    }
    let chunk = (len / 256).max(512);
    let starts: Vec<u64> = (range.start..range.end).step_by(chunk as usize).collect();
    let parts: Vec<Checker> = starts
        .into_par_iter()
        .map(|start| {
            let mut checker = Checker::new();
            for value in start..(start + chunk).min(range.end) {
                body(value, &mut checker);
            }
            checker
        })
        .collect();
    let mut merged = Checker::new();
    for part in parts {
        merged.merge(part);
    }
    merged
}

#[cfg(not(feature = "parallel"))]
fn sweep_range_parallel(
    range: std::ops::Range<u64>,
    body: &(impl Fn(u64, &mut Checker) + Sync),
) -> Checker {
    let mut checker = Checker::new();
    for value in range {
        body(value, &mut checker);
    }
    checker
}

/// Runs `body` for every item, sharding across the rayon pool in parallel
/// mode; failure order always matches item order.
fn sweep_items<T: Sync>(
    items: &[T],
    exec: Execution,
    body: &(impl Fn(usize, &T, &mut Checker) + Sync),
) -> Checker {
    match exec {
        Execution::Sequential => {
            let mut checker = Checker::new();
            for (index, item) in items.iter().enumerate() {
                body(index, item, &mut checker);
            }
            checker
        }
        Execution::Parallel => sweep_items_parallel(items, body),
    }
}

#[cfg(feature = "parallel")]
fn sweep_items_parallel<T: Sync>(
    items: &[T],
    body: &(impl Fn(usize, &T, &mut Checker) + Sync),
) -> Checker {
    let parts: Vec<Checker> = items
        .par_iter()
        .enumerate()
        .map(|(index, item)| {
            let mut checker = Checker::new();
            body(index, item, &mut checker);
            checker
        })
        .collect();
    let mut merged = Checker::new();
    for part in parts {
        merged.merge(part);
    }
    merged
}

#[cfg(not(feature = "parallel"))]
fn sweep_items_parallel<T: Sync>(
    items: &[T],
    body: &(impl Fn(usize, &T, &mut Checker) + Sync),
) -> Checker {
    let mut checker = Checker::new();
    for (index, item) in items.iter().enumerate() {
        body(index, item, &mut checker);
    }
    checker
}

/// Exact model count of a construction output: enumeration for small
/// outputs, otherwise the DPLL engine (validated against enumeration by the
/// `engines` suite).
fn output_count(formula: &CnfFormula) -> BigUint {
    if formula.num_vars() <= 16 {
        count_bruteforce(formula)
            .expect("under the enumeration cap")
            .accepted()
            .clone()
    } else {
        count_dpll_with(formula, Execution::Sequential)
            .accepted()
            .clone()
    }
}

fn input_count_u64(formula: &CnfFormula) -> u64 {
    count_bruteforce(formula)
        .expect("corpus inputs stay under the enumeration cap")
        .accepted()
        .to_u64()
        .expect("corpus counts fit u64")
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e as usize
}

/// Runs one suite.
pub fn run_suite(id: SuiteId, config: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let (parameter_ranges, checker) = match id {
        SuiteId::T2 => suite_t2(config),
        SuiteId::T3 => suite_t3(config),
        SuiteId::T4 => suite_t4(config),
        SuiteId::T5 => suite_t5(config),
        SuiteId::T6 => suite_t6(config),
        SuiteId::T7 => suite_t7(config),
        SuiteId::T8 => suite_t8(config),
        SuiteId::Classes => suite_classes(config),
        SuiteId::Engines => suite_engines(config),
        SuiteId::Gadgets => suite_gadgets(config),
    };
    VerificationReport {
        suite: id.name(),
        parameter_ranges,
        checks_run: checker.checks,
        failures: checker.failures,
        wall_time: start.elapsed(),
    }
}

fn replay(id: SuiteId, n_max: u32, seed: u64) -> String {
    format!(
        "countlab verify {} --n-max {} --seed {}",
        id.name(),
        n_max,
        seed
    )
}

// --- T3: unique-count multiplier -----------------------------------------

fn suite_t3(config: &SuiteConfig) -> (String, Checker) {
    let n_max = config.n_max.unwrap_or(12);
    let seed = config.seed;
    let mut checker = Checker::new();

    // Count level: k * (2^n - 1) is Mersenne iff k = 1, for k within the
    // 2^n path budget.
    for n in 1..=n_max {
        let factor = pow2(n) - 1u32;
        let part = sweep_range(1..(1u64 << n) + 1, config.exec, &|k, c| {
            let product = &factor * k;
            c.check(is_mersenne(&product) == (k == 1), || FailureRecord {
                params: format!("n={n} k={k}"),
                expected: "Mersenne iff k = 1".into(),
                observed: format!("product {product}"),
                replay: replay(SuiteId::T3, n_max, seed),
            });
        });
        checker.merge(part);
    }

    // The next integer solution sits just past the budget: (2^n + 1)(2^n - 1).
    for n in 1..=32u32 {
        let product = (pow2(n) + 1u32) * (pow2(n) - 1u32);
        checker.check(product == pow2(2 * n) - 1u32, || FailureRecord {
            params: format!("n={n}"),
            expected: "(2^n + 1)(2^n - 1) = 2^{2n} - 1".into(),
            observed: format!("{product}"),
            replay: replay(SuiteId::T3, n_max, seed),
        });
    }

    // Formula level: the construction's output count and acceptance.
    let corpus = corpus::mixed_corpus(1, 4, 200, seed);
    let part = sweep_items(&corpus, config.exec, &|index, formula, c| {
        let n = formula.num_vars();
        let a = input_count_u64(formula);
        let result = us_to_mns(formula);
        let observed = output_count(&result.formula);
        let expected = result.count_expression.apply(&BigUint::from(a));
        c.check(observed == expected, || FailureRecord {
            params: format!("corpus[{index}] n={n} a={a}"),
            expected: format!("count {expected}"),
            observed: format!("count {observed}"),
            replay: replay(SuiteId::T3, n_max, seed),
        });
        c.check(is_mersenne(&observed) == (a == 1), || FailureRecord {
            params: format!("corpus[{index}] n={n} a={a}"),
            expected: "output Mersenne iff input count = 1".into(),
            observed: format!("count {observed}"),
            replay: replay(SuiteId::T3, n_max, seed),
        });
    });
    checker.merge(part);

    (
        format!("n=1..{n_max}, k=1..2^n; identity n=1..32; corpus 200 formulas n<=4 seed={seed}"),
        checker,
    )
}

// --- T7: half-count to Mersenne -------------------------------------------

fn suite_t7(config: &SuiteConfig) -> (String, Checker) {
    let n_max = config.n_max.unwrap_or(10);
    let seed = config.seed;
    let mut checker = Checker::new();

    // Count level, exhaustive.
    for n in 1..=n_max {
        let expr = CountExpr::CequalToMns { n };
        let m = 2 * n + 2;
        let half_point = 1u64 << n;
        let mersenne_target = pow2(2 * n + 1) - 1u32;
        let top_value = pow2(2 * n + 1) + pow2(2 * n) - pow2(n + 1) - 1u32;
        let lower = pow2(m - 2) - 1u32;
        let upper = pow2(m) - 1u32;
        let midpoint = pow2(m - 1) - 1u32;

        let part = sweep_range(0..(1u64 << (n + 1)) + 1, config.exec, &|a, c| {
            let value = expr.apply(&BigUint::from(a));
            c.check(is_mersenne(&value) == (a == half_point), || FailureRecord {
                params: format!("n={n} a={a}"),
                expected: "output Mersenne iff a = 2^n".into(),
                observed: format!("count {value}"),
                replay: replay(SuiteId::T7, n_max, seed),
            });
            if a == half_point {
                c.check(value == mersenne_target, || FailureRecord {
                    params: format!("n={n} a={a}"),
                    expected: format!("count {mersenne_target} at the half-point"),
                    observed: format!("count {value}"),
                    replay: replay(SuiteId::T7, n_max, seed),
                });
            }
            if a == 2 * half_point {
                c.check(value == top_value, || FailureRecord {
                    params: format!("n={n} a={a}"),
                    expected: format!("count {top_value} at the full budget"),
                    observed: format!("count {value}"),
                    replay: replay(SuiteId::T7, n_max, seed),
                });
            }
            c.check(lower < value && value < upper, || FailureRecord {
                params: format!("n={n} a={a} m={m}"),
                expected: format!("strictly between {lower} and {upper}"),
                observed: format!("count {value}"),
                replay: replay(SuiteId::T7, n_max, seed),
            });
            c.check((value == midpoint) == (a == half_point), || FailureRecord {
                params: format!("n={n} a={a} m={m}"),
                expected: "count = 2^(m-1) - 1 iff a = 2^n".into(),
                observed: format!("count {value}"),
                replay: replay(SuiteId::T7, n_max, seed),
            });
        });
        checker.merge(part);
    }

    // Formula level: brute-force/DPLL counting of the emitted CNF.
    for n in 1..=n_max.min(3) {
        let expr = CountExpr::CequalToMns { n };
        let width = n + 1;
        let part = sweep_range(0..(1u64 << width) + 1, config.exec, &|a, c| {
            let input = corpus::block_with_count(width, &BigUint::from(a));
            let result = cequal_to_mns(&input).expect("inputs have >= 2 variables");
            let observed = output_count(&result.formula);
            let expected = expr.apply(&BigUint::from(a));
            c.check(observed == expected, || FailureRecord {
                params: format!("formula-level n={n} a={a}"),
                expected: format!("count {expected}"),
                observed: format!("count {observed}"),
                replay: replay(SuiteId::T7, n_max, seed),
            });
            c.check(result.machine_vars == 2 * n + 2, || FailureRecord {
                params: format!("formula-level n={n} a={a}"),
                expected: format!("machine width {}", 2 * n + 2),
                observed: format!("machine width {}", result.machine_vars),
                replay: replay(SuiteId::T7, n_max, seed),
            });
        });
        checker.merge(part);
    }

    (
        format!("count level n=1..{n_max}, a=0..2^(n+1); formula level n<=3"),
        checker,
    )
}

// --- T8: Mersenne to half-count dtt ---------------------------------------

fn suite_t8(config: &SuiteConfig) -> (String, Checker) {
    let n_max = config.n_max.unwrap_or(10);
    let seed = config.seed;
    let mut checker = Checker::new();

    // Count level: OR_i [ (2^n - 2^i + 1) + a = 2^n ] iff a is Mersenne.
    for n in 1..=n_max {
        let part = sweep_range(0..(1u64 << n) + 1, config.exec, &|a, c| {
            let target = pow2(n);
            let decision = (1..=n).any(|i| {
                let count = pow2(n) - pow2(i) + 1u32 + a;
                count == target
            });
            c.check(decision == is_mersenne(&BigUint::from(a)), || {
                FailureRecord {
                    params: format!("n={n} a={a}"),
                    expected: "disjunction over i iff a is Mersenne".into(),
                    observed: format!("decision {decision}"),
                    replay: replay(SuiteId::T8, n_max, seed),
                }
            });
        });
        checker.merge(part);
    }

    // Formula level: the emitted queries and the half-count oracle.
    for n in 1..=n_max.min(4) {
        let part = sweep_range(0..(1u64 << n) + 1, config.exec, &|a, c| {
            let input = corpus::block_with_count(n, &BigUint::from(a));
            let reduction = crate::reductions::mns_to_cequal(&input);
            c.check(reduction.queries.len() == n as usize, || FailureRecord {
                params: format!("formula-level n={n} a={a}"),
                expected: format!("{n} queries"),
                observed: format!("{} queries", reduction.queries.len()),
                replay: replay(SuiteId::T8, n_max, seed),
            });
            for query in &reduction.queries {
                let observed = output_count(&query.formula);
                let expected = pow2(n) - pow2(query.index) + 1u32 + a;
                c.check(observed == expected, || FailureRecord {
                    params: format!("formula-level n={n} a={a} i={}", query.index),
                    expected: format!("query count {expected}"),
                    observed: format!("query count {observed}"),
                    replay: replay(SuiteId::T8, n_max, seed),
                });
            }
            let decision = dtt_evaluate(&reduction, equal_sat_oracle);
            c.check(decision == is_mersenne(&BigUint::from(a)), || {
                FailureRecord {
                    params: format!("formula-level n={n} a={a}"),
                    expected: "dtt decision iff a is Mersenne".into(),
                    observed: format!("decision {decision}"),
                    replay: replay(SuiteId::T8, n_max, seed),
                }
            });
        });
        checker.merge(part);
    }

    (
        format!("count level n=1..{n_max}, a=0..2^n; formula level n<=4"),
        checker,
    )
}

// --- T4: majority oracle simulation ---------------------------------------

fn suite_t4(config: &SuiteConfig) -> (String, Checker) {
    let n_max = config.n_max.unwrap_or(8);
    let seed = config.seed;
    let mut checker = Checker::new();

    // Reachable-Mersenne uniqueness over all (k, a).
    for n in 2..=n_max {
        let target = pow2(n + 1) - 1u32;
        let part = sweep_range(0..1u64 << (n - 1), config.exec, &|k, c| {
            for a in 1..=1u64 << n {
                let count = pow2(n) - 1u32 + k + a;
                c.check(!is_mersenne(&count) || count == target, || FailureRecord {
                    params: format!("n={n} k={k} a={a}"),
                    expected: format!("only reachable Mersenne count is {target}"),
                    observed: format!("count {count}"),
                    replay: replay(SuiteId::T4, n_max, seed),
                });
            }
        });
        checker.merge(part);
    }

    // Formula level over the corpus.
    let corpus = corpus::standard_corpus(2, n_max, seed);
    let part = sweep_items(&corpus, config.exec, &|index, formula, c| {
        let n = formula.num_vars();
        let a = input_count_u64(formula);
        let trace = majority_np_mns_with(formula, mns_oracle, Execution::Sequential);
        let majority = 2 * a > 1u64 << n;
        c.check(
            (trace.verdict == crate::reductions::TraceVerdict::Accept) == majority,
            || FailureRecord {
                params: format!("corpus[{index}] n={n} a={a}"),
                expected: format!("Accept iff count > 2^{}", n - 1),
                observed: format!("verdict {}", trace.verdict),
                replay: replay(SuiteId::T4, n_max, seed),
            },
        );
        let expected_queries = if a == 0 { 0 } else { 1usize << (n - 1) };
        c.check(trace.queries.len() == expected_queries, || FailureRecord {
            params: format!("corpus[{index}] n={n} a={a}"),
            expected: format!("{expected_queries} queries (zero on unsatisfiable input)"),
            observed: format!("{} queries", trace.queries.len()),
            replay: replay(SuiteId::T4, n_max, seed),
        });
        c.check(trace.gate_satisfiable == (a > 0), || FailureRecord {
            params: format!("corpus[{index}] n={n} a={a}"),
            expected: "gate open iff satisfiable".into(),
            observed: format!("gate {}", trace.gate_satisfiable),
            replay: replay(SuiteId::T4, n_max, seed),
        });
        let low = pow2(n) - 1u32;
        let high = pow2(n + 1) + pow2(n - 1) - 2u32;
        for query in &trace.queries {
            let expected = pow2(n) - 1u32 + query.parameter + a;
            c.check(query.count == expected, || FailureRecord {
                params: format!("corpus[{index}] n={n} a={a} k={}", query.parameter),
                expected: format!("query count {expected}"),
                observed: format!("query count {}", query.count),
                replay: replay(SuiteId::T4, n_max, seed),
            });
            c.check(query.count > low && query.count <= high, || FailureRecord {
                params: format!("corpus[{index}] n={n} a={a} k={}", query.parameter),
                expected: format!("query count in ({low}, {high}]"),
                observed: format!("query count {}", query.count),
                replay: replay(SuiteId::T4, n_max, seed),
            });
        }
    });
    checker.merge(part);

    (
        format!("uniqueness n=2..{n_max} over all (k, a); corpus n=2..{n_max} seed={seed}"),
        checker,
    )
}

// --- T5: parity oracle simulation ------------------------------------------

fn suite_t5(config: &SuiteConfig) -> (String, Checker) {
    let n_max = config.n_max.unwrap_or(8);
    let seed = config.seed;
    let corpus = corpus::standard_corpus(1, n_max, seed);
    let checker = sweep_items(&corpus, config.exec, &|index, formula, c| {
        let n = formula.num_vars();
        let a = input_count_u64(formula);
        let trace = parity_np_mns_with(formula, mns_oracle, Execution::Sequential);
        c.check(
            (trace.verdict == crate::reductions::TraceVerdict::Accept) == (a % 2 == 1),
            || FailureRecord {
                params: format!("corpus[{index}] n={n} a={a}"),
                expected: "Accept iff count odd".into(),
                observed: format!("verdict {}", trace.verdict),
                replay: replay(SuiteId::T5, n_max, seed),
            },
        );
        c.check(trace.queries.len() == 1usize << (n - 1), || FailureRecord {
            params: format!("corpus[{index}] n={n} a={a}"),
            expected: format!("{} queries (every even k below 2^n)", 1u64 << (n - 1)),
            observed: format!("{} queries", trace.queries.len()),
            replay: replay(SuiteId::T5, n_max, seed),
        });
        for query in &trace.queries {
            let expected = BigUint::from(query.parameter + a);
            c.check(query.count == expected, || FailureRecord {
                params: format!("corpus[{index}] n={n} a={a} k={}", query.parameter),
                expected: format!("query count {expected}"),
                observed: format!("query count {}", query.count),
                replay: replay(SuiteId::T5, n_max, seed),
            });
        }
    });
    (format!("corpus n=1..{n_max} seed={seed}"), checker)
}

// --- T6: Mersenne promise inside parity ------------------------------------

fn suite_t6(config: &SuiteConfig) -> (String, Checker) {
    let exponent = config.n_max.unwrap_or(20);
    let seed = config.seed;
    let bound = 1u64 << exponent;
    let checker = sweep_range(0..bound + 1, config.exec, &|a, c| {
        let value = BigUint::from(a);
        let mersenne = is_mersenne(&value);
        c.check(!mersenne || a % 2 == 1, || FailureRecord {
            params: format!("a={a}"),
            expected: "every Mersenne count is odd".into(),
            observed: format!("a={a} is Mersenne and even"),
            replay: replay(SuiteId::T6, exponent, seed),
        });
        if mersenne || a == 0 {
            let profile = CountProfile::new(a, exponent + 1);
            c.check(mnp_in_parity_check(&profile) == Ok(true), || {
                FailureRecord {
                    params: format!("a={a}"),
                    expected: "Mersenne-promise verdict agrees with parity verdict".into(),
                    observed: format!("{:?}", mnp_in_parity_check(&profile)),
                    replay: replay(SuiteId::T6, exponent, seed),
                }
            });
        }
    });
    (format!("a=0..2^{exponent}"), checker)
}

// --- T2: few-solutions construction ----------------------------------------

fn suite_t2(config: &SuiteConfig) -> (String, Checker) {
    let n_max = config.n_max.unwrap_or(6);
    let seed = config.seed;
    let mut checker = Checker::new();

    // Construction: output count = 2^a - 1 under the promise a <= q <= 5.
    let corpus = corpus::small_count_corpus(2, n_max, 5, seed);
    let part = sweep_items(&corpus, config.exec, &|index, formula, c| {
        let a = input_count_u64(formula);
        for q in a.max(1)..=5 {
            let result = fewp_to_mnp(formula, q as u32);
            let observed = output_count(&result.formula);
            let expected = pow2(a as u32) - 1u32;
            c.check(observed == expected, || FailureRecord {
                params: format!("corpus[{index}] a={a} q={q}"),
                expected: format!("count 2^{a} - 1 = {expected}"),
                observed: format!("count {observed}"),
                replay: replay(SuiteId::T2, n_max, seed),
            });
        }
    });
    checker.merge(part);

    // Non-gappy Mersenne prefix at ratio 3, for every bit bound up to 64.
    let three = Ratio::from_integer(3u64);
    for bound in 1..=64u32 {
        let prefix = mersenne_prefix(bound);
        checker.check(non_gappy_check(&prefix, three), || FailureRecord {
            params: format!("bit_bound={bound}"),
            expected: "consecutive ratio at most 3".into(),
            observed: "gap above ratio 3".into(),
            replay: replay(SuiteId::T2, n_max, seed),
        });
    }
    let prefix = mersenne_prefix(64);
    checker.check(
        prefix.len() == 63 && *prefix.last().unwrap() == pow2(63) - 1u32,
        || FailureRecord {
            params: "bit_bound=64".into(),
            expected: "63 values ending 2^63 - 1".into(),
            observed: format!("{} values", prefix.len()),
            replay: replay(SuiteId::T2, n_max, seed),
        },
    );

    // The prefix enumeration is polynomial; at bound 64 it must be far under
    // a millisecond.
    let timer = Instant::now();
    let _ = mersenne_prefix(64);
    let elapsed = timer.elapsed();
    checker.check(elapsed < Duration::from_millis(1), || FailureRecord {
        params: "bit_bound=64".into(),
        expected: "enumeration under 1 ms".into(),
        observed: format!("{} us", elapsed.as_micros()),
        replay: replay(SuiteId::T2, n_max, seed),
    });

    (
        format!("corpus n=2..{n_max} counts<=5 seed={seed}; q=a..5; prefix bounds 1..64"),
        checker,
    )
}

// --- classes: registry properties ------------------------------------------

fn aux_variants(spec: &ClassSpec) -> Vec<ClassSpec> {
    match spec.name() {
        "UPk" => vec![
            spec.clone().with_ambiguity_bound(2u32),
            spec.clone().with_ambiguity_bound(8u32),
        ],
        "FewP" => vec![
            spec.clone().with_few_bound(1u32),
            spec.clone().with_few_bound(5u32),
        ],
        "F=P" => vec![
            spec.clone().with_count_target(1u32),
            spec.clone().with_count_target(5u32),
        ],
        "WPP" => vec![
            spec.clone().with_gap_target(2),
            spec.clone().with_gap_target(-4),
        ],
        _ => vec![spec.clone()],
    }
}

fn suite_classes(config: &SuiteConfig) -> (String, Checker) {
    let p_max = config.n_max.unwrap_or(12);
    let seed = config.seed;
    let mut checker = Checker::new();

    // Syntactic totality and semantic disjointness, exhaustive.
    let variants: Vec<ClassSpec> = spec_by_catalog_variants();
    for p in 0..=p_max {
        let part = sweep_range(0..(1u64 << p) + 1, config.exec, &|a, c| {
            let profile = CountProfile::new(a, p);
            for spec in &variants {
                let accepts = spec.accepts(&profile).unwrap();
                let rejects = spec.rejects(&profile).unwrap();
                match spec.kind() {
                    ClassKind::Syntactic => {
                        c.check(accepts ^ rejects, || FailureRecord {
                            params: format!("{} a={a} p={p}", spec.name()),
                            expected: "exactly one of accept/reject".into(),
                            observed: format!("accepts={accepts} rejects={rejects}"),
                            replay: replay(SuiteId::Classes, p_max, seed),
                        });
                    }
                    ClassKind::Semantic => {
                        c.check(!(accepts && rejects), || FailureRecord {
                            params: format!("{} a={a} p={p}", spec.name()),
                            expected: "accept and reject sets disjoint".into(),
                            observed: "both hold".into(),
                            replay: replay(SuiteId::Classes, p_max, seed),
                        });
                    }
                }
            }
            // Gap identity on every profile.
            let gap = gap_value(&profile);
            let expected =
                2 * num_bigint::BigInt::from(a) - num_bigint::BigInt::from(profile.total_paths());
            c.check(gap.value() == &expected, || FailureRecord {
                params: format!("a={a} p={p}"),
                expected: format!("gap {expected}"),
                observed: format!("gap {gap}"),
                replay: replay(SuiteId::Classes, p_max, seed),
            });
        });
        checker.merge(part);
    }

    // Power-of-two and Mersenne intersect only at 1, exhaustively to 2^20;
    // at the profile level acceptance under both EP and MNP means count 1.
    let ep = spec_by_name("EP").unwrap();
    let mnp = spec_by_name("MNP").unwrap();
    let part = sweep_range(0..(1u64 << 20) + 1, config.exec, &|a, c| {
        let value = BigUint::from(a);
        c.check(
            (is_mersenne(&value) && is_power_of_two(&value)) == (a == 1),
            || FailureRecord {
                params: format!("a={a}"),
                expected: "Mersenne and power of two iff a = 1".into(),
                observed: "intersection mismatch".into(),
                replay: replay(SuiteId::Classes, p_max, seed),
            },
        );
        let profile = CountProfile::new(a, 21);
        let both = ep.classify(&profile).unwrap() == Verdict::Accept
            && mnp.classify(&profile).unwrap() == Verdict::Accept;
        c.check(both == (a == 1), || FailureRecord {
            params: format!("a={a}"),
            expected: "accepted by both EP and MNP iff a = 1".into(),
            observed: format!("both={both}"),
            replay: replay(SuiteId::Classes, p_max, seed),
        });
    });
    checker.merge(part);

    // Containment chains at the profile level.
    let up = spec_by_name("UP").unwrap();
    let upk = spec_by_name("UPk").unwrap().with_ambiguity_bound(2u32);
    let fewp = spec_by_name("FewP").unwrap().with_few_bound(2u32);
    let us = spec_by_name("US").unwrap();
    let mns = spec_by_name("MNS").unwrap();
    let np = ClassSpec::satisfiable();
    let chains: [(&ClassSpec, &ClassSpec, &str); 6] = [
        (&upk, &up, "UP within UPk(k=2)"),
        (&fewp, &upk, "UPk(k=2) within FewP(q=2)"),
        (&ep, &fewp, "FewP(q=2) within EP"),
        (&mns, &us, "US within MNS"),
        (&mns, &mnp, "MNP within MNS"),
        (&np, &mnp, "MNP within satisfiability"),
    ];
    let scan_max = p_max.min(12);
    for (outer, inner, label) in chains {
        let witnesses = crate::classes::containment_witness_scan(outer, inner, scan_max).unwrap();
        checker.check(witnesses.is_empty(), || FailureRecord {
            params: format!("{label} p<={scan_max}"),
            expected: "no witnesses".into(),
            observed: format!(
                "{} witnesses, first {}",
                witnesses.len(),
                witnesses.first().map(|w| w.to_string()).unwrap_or_default()
            ),
            replay: replay(SuiteId::Classes, p_max, seed),
        });
    }

    (
        format!("registry p<={p_max}; intersection a<=2^20; containment scans p<={scan_max}"),
        checker,
    )
}

fn spec_by_catalog_variants() -> Vec<ClassSpec> {
    crate::classes::spec_catalog()
        .iter()
        .flat_map(aux_variants)
        .collect()
}

// --- engines: equivalence and performance ----------------------------------

fn suite_engines(config: &SuiteConfig) -> (String, Checker) {
    let count = 500usize;
    let seed = config.seed;
    let mut checker = Checker::new();

    // 500 random formulas with at most 16 variables: both engines agree.
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut formulas = Vec::with_capacity(count);
    for index in 0..count {
        let n = 4 + (index as u32 % 13); // 4..=16
        let ratio = corpus::RANDOM_RATIOS[index % corpus::RANDOM_RATIOS.len()];
        let clauses = ((ratio * n as f64).round() as u32).max(1);
        formulas.push(corpus::random_3cnf(&mut rng, n, clauses));
    }
    let part = sweep_items(&formulas, config.exec, &|index, formula, c| {
        let reference = count_bruteforce(formula).unwrap();
        let sequential = count_dpll_with(formula, Execution::Sequential);
        let parallel = count_dpll_with(formula, Execution::Parallel);
        c.check(sequential == reference, || FailureRecord {
            params: format!("random[{index}] n={}", formula.num_vars()),
            expected: format!("{reference}"),
            observed: format!("{sequential}"),
            replay: replay(SuiteId::Engines, 16, seed),
        });
        c.check(parallel == reference, || FailureRecord {
            params: format!("random[{index}] n={} (parallel)", formula.num_vars()),
            expected: format!("{reference}"),
            observed: format!("{parallel}"),
            replay: replay(SuiteId::Engines, 16, seed),
        });
    });
    checker.merge(part);

    // A 24-variable instance at ratio 4.26 finishes in under five seconds.
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let hard = corpus::random_3cnf(&mut rng, 24, 102);
    let timer = Instant::now();
    let profile = crate::counting::count_dpll(&hard);
    let elapsed = timer.elapsed();
    checker.check(elapsed < Duration::from_secs(5), || FailureRecord {
        params: "random 3-CNF n=24 ratio=4.26".into(),
        expected: "DPLL count under 5 s".into(),
        observed: format!("{} ms", elapsed.as_millis()),
        replay: replay(SuiteId::Engines, 24, seed),
    });
    // Both modes agree on the same instance.
    let sequential = count_dpll_with(&hard, Execution::Sequential);
    checker.check(sequential == profile, || FailureRecord {
        params: "random 3-CNF n=24 ratio=4.26".into(),
        expected: format!("{sequential}"),
        observed: format!("{profile}"),
        replay: replay(SuiteId::Engines, 24, seed),
    });

    (
        format!("500 random formulas n=4..16 seed={seed}; timed n=24 ratio=4.26"),
        checker,
    )
}

// --- gadgets: count audit ----------------------------------------------------

fn suite_gadgets(config: &SuiteConfig) -> (String, Checker) {
    let n_max = config.n_max.unwrap_or(10);
    let seed = config.seed;
    let mut checker = Checker::new();

    let corpus = corpus::mixed_corpus(3, n_max, 200, seed);
    let part = sweep_items(&corpus, config.exec, &|index, formula, c| {
        let n = formula.num_vars();
        let a = BigUint::from(input_count_u64(formula));
        let mut audit = |label: String, result: crate::gadgets::GadgetResult| {
            let observed = output_count(&result.formula);
            let expected = result.count_expression.apply(&a);
            c.check(observed == expected, || FailureRecord {
                params: format!("corpus[{index}] n={n} a={a} {label}"),
                expected: format!("count {expected} ({})", result.count_expression),
                observed: format!("count {observed}"),
                replay: replay(SuiteId::Gadgets, n_max, seed),
            });
        };
        for t in [1u32, 3] {
            audit(
                format!("multiply_mersenne t={t}"),
                multiply_mersenne(formula, t),
            );
        }
        for (cst, width) in [(0u64, n), (3, n), (5, n + 2)] {
            audit(
                format!("add_const c={cst} width={width}"),
                add_const(formula, &BigUint::from(cst), width).unwrap(),
            );
        }
        audit("complement".to_string(), complement(formula));
        for k in [0u32, 2] {
            audit(format!("pad_pow2 k={k}"), pad_pow2(formula, k));
        }
    });
    checker.merge(part);

    // Fixed-count blocks verified exhaustively for every k at m <= 6.
    for m in 1..=6u32 {
        let part = sweep_range(0..(1u64 << m) + 1, config.exec, &|k, c| {
            let block = exactly_k(m, &BigUint::from(k));
            let observed = output_count(&block);
            c.check(observed == BigUint::from(k), || FailureRecord {
                params: format!("exactly_k m={m} k={k}"),
                expected: format!("count {k}"),
                observed: format!("count {observed}"),
                replay: replay(SuiteId::Gadgets, n_max, seed),
            });
        });
        checker.merge(part);
    }

    (
        format!("corpus 200 formulas n=3..{n_max} seed={seed}; exactly_k m<=6 all k"),
        checker,
    )
}
