//! Count-transforming constructions and oracle-machine simulations.
//!
//! The oracle machines are simulated deterministically: the nondeterministic
//! choice of a query parameter becomes an explicit loop with a full trace,
//! and the machine accepts iff some branch's query answers YES.  The oracles
//! themselves decide their languages by exact counting of the query formula.

use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classes::{spec_by_name, Verdict};
use crate::counting::{count_dpll, is_mersenne, CountProfile};
use crate::formula::{tseitin, Circuit, CnfFormula, DnfFormula, Signal};
use crate::gadgets::{add_const, multiply_mersenne, value_lt_const, CountExpr, GadgetResult};
use crate::Execution;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("the half-count construction needs at least two variables, got {num_vars}")]
    TooFewVariables { num_vars: u32 },
}

/// Truncated SHA-256 of the emitted DIMACS text.
pub fn formula_digest(formula: &CnfFormula) -> String {
    let hash = Sha256::digest(formula.to_dimacs().as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// An oracle's response to one query: the exact count it observed and its
/// YES/NO decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub count: BigUint,
    pub yes: bool,
}

/// Mersenne-count decision procedure: counts the query formula exactly and
/// answers YES iff the count is `2^t - 1` for some `t >= 1`.
pub fn mns_oracle(formula: &CnfFormula) -> OracleAnswer {
    let count = count_dpll(formula).accepted().clone();
    OracleAnswer {
        yes: is_mersenne(&count),
        count,
    }
}

/// Unique-count decision procedure: YES iff the formula has exactly one model.
pub fn us_oracle(formula: &CnfFormula) -> bool {
    count_dpll(formula).accepted().is_one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TraceVerdict {
    Accept,
    Reject,
}

impl std::fmt::Display for TraceVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TraceVerdict::Accept => write!(f, "Accept"),
            TraceVerdict::Reject => write!(f, "Reject"),
        }
    }
}

/// One oracle query: the branch parameter that produced it, the emitted
/// formula, the exact count the oracle observed, and its answer.
#[derive(Clone, Debug)]
pub struct OracleQuery {
    pub parameter: u64,
    pub formula: CnfFormula,
    pub count: BigUint,
    pub answer: bool,
}

/// Record of an oracle-machine simulation.
///
/// `gate_satisfiable` reports the pre-query satisfiability gate; a
/// simulation without a gate records `true`.  If the gate fails, no queries
/// are issued.  The verdict is Accept iff some oracle answer is YES.
#[derive(Clone, Debug)]
pub struct OracleTrace {
    pub gate_satisfiable: bool,
    pub queries: Vec<OracleQuery>,
    pub verdict: TraceVerdict,
}

#[derive(Serialize)]
struct QueryRecord {
    parameter: u64,
    formula_digest: String,
    count: String,
    answer: bool,
}

#[derive(Serialize)]
struct TraceReport {
    gate_satisfiable: bool,
    verdict: TraceVerdict,
    queries: Vec<QueryRecord>,
}

impl OracleTrace {
    fn verdict_from_queries(gate_satisfiable: bool, queries: Vec<OracleQuery>) -> OracleTrace {
        let verdict = if queries.iter().any(|q| q.answer) {
            TraceVerdict::Accept
        } else {
            TraceVerdict::Reject
        };
        OracleTrace {
            gate_satisfiable,
            queries,
            verdict,
        }
    }

    /// Line-oriented text report: one line per query plus gate and verdict.
    pub fn text_report(&self) -> String {
        let mut out = format!("gate_satisfiable={}\n", self.gate_satisfiable);
        for q in &self.queries {
            out.push_str(&format!(
                "query parameter={} digest={} count={} answer={}\n",
                q.parameter,
                formula_digest(&q.formula),
                q.count,
                if q.answer { "YES" } else { "NO" }
            ));
        }
        out.push_str(&format!("verdict={}\n", self.verdict));
        out
    }

    /// Structured report: one record per query with parameter, formula
    /// digest, count, and oracle answer.
    pub fn structured_report(&self) -> serde_json::Value {
        let report = TraceReport {
            gate_satisfiable: self.gate_satisfiable,
            verdict: self.verdict,
            queries: self
                .queries
                .iter()
                .map(|q| QueryRecord {
                    parameter: q.parameter,
                    formula_digest: formula_digest(&q.formula),
                    count: q.count.to_string(),
                    answer: q.answer,
                })
                .collect(),
        };
        serde_json::to_value(report).expect("trace reports serialize")
    }

    pub fn write_report(&self, path: &Path) -> std::io::Result<()> {
        let mut file = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut file, &self.structured_report())?;
        file.write_all(b"\n")
    }
}

/// Runs `build_query` for every parameter in `parameters` and submits each
/// query to the oracle, preserving parameter order in the trace.
fn run_queries(
    parameters: Vec<u64>,
    build_query: impl Fn(u64) -> CnfFormula + Sync,
    oracle: impl Fn(&CnfFormula) -> OracleAnswer + Sync,
    exec: Execution,
) -> Vec<OracleQuery> {
    let run_one = |k: u64| {
        let formula = build_query(k);
        let answer = oracle(&formula);
        OracleQuery {
            parameter: k,
            formula,
            count: answer.count,
            answer: answer.yes,
        }
    };
    match exec {
        Execution::Sequential => parameters.into_iter().map(run_one).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => parameters.into_par_iter().map(run_one).collect(),
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel => parameters.into_iter().map(run_one).collect(),
    }
}

/// Few-solutions to Mersenne-promise construction: the output encodes
/// "choose a nonempty subset of at most `q` models of the input, listed in
/// strictly increasing lexicographic order, with a monotone used-block
/// prefix and unused blocks forced to all-false".
///
/// The output count is `sum_{j=1..q} C(a, j)` for input count `a`, which
/// equals `2^a - 1` exactly when the few-solutions promise `a <= q` holds.
pub fn fewp_to_mnp(formula: &CnfFormula, q: u32) -> GadgetResult {
    assert!(q >= 1, "subset bound must be positive");
    let n = formula.num_vars();
    let machine = q * n + q;
    let mut circuit = Circuit::new(machine);
    let used: Vec<Signal> = (1..=q).map(|j| circuit.input(q * n + j)).collect();
    let block_var = |j: u32, i: u32| (j - 1) * n + i;

    let mut parts: Vec<Signal> = vec![used[0]];
    for j in 0..q as usize - 1 {
        let not_next = circuit.not(used[j + 1]);
        parts.push(circuit.or(not_next, used[j]));
    }
    for j in 1..=q {
        let u = used[(j - 1) as usize];
        let satisfies = circuit.embed_cnf(formula, block_var(j, 0));
        let not_u = circuit.not(u);
        parts.push(circuit.or(not_u, satisfies));

        let mut zeros = Vec::with_capacity(n as usize);
        for i in 1..=n {
            let x = circuit.input(block_var(j, i));
            zeros.push(circuit.not(x));
        }
        let all_zero = circuit.and_all(&zeros);
        parts.push(circuit.or(u, all_zero));
    }
    for j in 1..q {
        let a_bits: Vec<Signal> = (1..=n).map(|i| circuit.input(block_var(j, i))).collect();
        let b_bits: Vec<Signal> = (1..=n)
            .map(|i| circuit.input(block_var(j + 1, i)))
            .collect();
        let less = lex_less(&mut circuit, &a_bits, &b_bits);
        let not_next = circuit.not(used[j as usize]);
        parts.push(circuit.or(not_next, less));
    }
    let output = circuit.and_all(&parts);
    circuit.set_output(output);

    let mut out = tseitin(&circuit, machine);
    out.push_comment(format!("countlab: construction=fewp_to_mnp params=q={q}"));
    GadgetResult {
        formula: out,
        machine_vars: machine,
        count_expression: CountExpr::FewSubsets { q },
    }
}

/// Strict lexicographic comparison of two equal-length bit vectors (first
/// signal most significant, false < true).
fn lex_less(circuit: &mut Circuit, a: &[Signal], b: &[Signal]) -> Signal {
    assert_eq!(a.len(), b.len());
    let mut terms = Vec::with_capacity(a.len());
    let mut prefix_eq: Option<Signal> = None;
    for i in 0..a.len() {
        let not_a = circuit.not(a[i]);
        let here = circuit.and(not_a, b[i]);
        let term = match prefix_eq {
            Some(pe) => circuit.and(pe, here),
            None => here,
        };
        terms.push(term);
        if i + 1 < a.len() {
            let both = circuit.and(a[i], b[i]);
            let not_b = circuit.not(b[i]);
            let neither = circuit.and(not_a, not_b);
            let eq = circuit.or(both, neither);
            prefix_eq = Some(match prefix_eq {
                Some(pe) => circuit.and(pe, eq),
                None => eq,
            });
        }
    }
    circuit.or_all(&terms)
}

/// Unique-count to Mersenne construction: each model of the input spawns
/// `2^n - 1` models, so the output count `a * (2^n - 1)` is Mersenne iff
/// `a = 1` (for `a` within the `0..=2^n` path budget).
pub fn us_to_mns(formula: &CnfFormula) -> GadgetResult {
    let n = formula.num_vars();
    let mut result = multiply_mersenne(formula, n);
    result
        .formula
        .push_comment(format!("countlab: construction=us_to_mns params=n={n}"));
    result
}

/// Majority check through a Mersenne-count oracle.
///
/// A satisfiability gate first runs the input: unsatisfiable inputs reject
/// with zero queries.  Otherwise, for each `k` in `0..2^(n-1)` the query
/// formula counts `(2^n - 1 + k) + a` over machine width `n + 2`, and the
/// machine accepts iff some query answers YES — which happens iff
/// `a > 2^(n-1)`, the only reachable Mersenne count being `2^(n+1) - 1`.
pub fn majority_np_mns(
    formula: &CnfFormula,
    oracle: impl Fn(&CnfFormula) -> OracleAnswer + Sync,
) -> OracleTrace {
    majority_np_mns_with(formula, oracle, Execution::default())
}

/// [`majority_np_mns`] with an explicit execution strategy.
pub fn majority_np_mns_with(
    formula: &CnfFormula,
    oracle: impl Fn(&CnfFormula) -> OracleAnswer + Sync,
    exec: Execution,
) -> OracleTrace {
    let n = formula.num_vars();
    assert!(n >= 2, "majority simulation needs at least two variables");
    assert!(n <= 32, "query sweep is exponential in the variable count");

    if count_dpll(formula).accepted().is_zero() {
        return OracleTrace {
            gate_satisfiable: false,
            queries: Vec::new(),
            verdict: TraceVerdict::Reject,
        };
    }
    let base = (BigUint::one() << n as usize) - 1u32;
    let parameters: Vec<u64> = (0..1u64 << (n - 1)).collect();
    let queries = run_queries(
        parameters,
        |k| {
            let constant = &base + k;
            add_const(formula, &constant, n + 1)
                .expect("width n+1 holds every immediate block below 2^(n+1)")
                .formula
        },
        oracle,
        exec,
    );
    OracleTrace::verdict_from_queries(true, queries)
}

/// Parity check through a Mersenne-count oracle.
///
/// No gate: for each even `k` in `0..2^n` the query formula counts `k + a`
/// over machine width `n + 1`.  Even plus even is never Mersenne (Mersenne
/// numbers are odd), and for odd `a` the choice `k = 2^ceil(log) - 1 - a`
/// lands on one, so the machine accepts iff `a` is odd.
pub fn parity_np_mns(
    formula: &CnfFormula,
    oracle: impl Fn(&CnfFormula) -> OracleAnswer + Sync,
) -> OracleTrace {
    parity_np_mns_with(formula, oracle, Execution::default())
}

/// [`parity_np_mns`] with an explicit execution strategy.
pub fn parity_np_mns_with(
    formula: &CnfFormula,
    oracle: impl Fn(&CnfFormula) -> OracleAnswer + Sync,
    exec: Execution,
) -> OracleTrace {
    let n = formula.num_vars();
    assert!(n <= 32, "query sweep is exponential in the variable count");

    let parameters: Vec<u64> = (0..1u64 << n).step_by(2).collect();
    let queries = run_queries(
        parameters,
        |k| {
            add_const(formula, &BigUint::from(k), n)
                .expect("every even k below 2^n fits the width-n block")
                .formula
        },
        oracle,
        exec,
    );
    OracleTrace::verdict_from_queries(true, queries)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("count {accepted} violates the Mersenne-or-zero promise")]
pub struct MnpPromiseError {
    pub accepted: BigUint,
}

/// Agreement check between the Mersenne-promise verdict and the parity
/// verdict on one profile: true when both accept or both reject.  Profiles
/// outside the Mersenne-or-zero promise are flagged as errors.
pub fn mnp_in_parity_check(profile: &CountProfile) -> Result<bool, MnpPromiseError> {
    let mnp = spec_by_name("MNP").expect("built-in spec");
    let parity = spec_by_name("ParityP").expect("built-in spec");
    let mnp_verdict = mnp.classify(profile).expect("MNP needs no parameters");
    if mnp_verdict == Verdict::PromiseViolated {
        return Err(MnpPromiseError {
            accepted: profile.accepted().clone(),
        });
    }
    let parity_verdict = parity
        .classify(profile)
        .expect("parity needs no parameters");
    Ok(mnp_verdict == parity_verdict)
}

/// Half-count to Mersenne construction, for an input over `n + 1` variables
/// (path budget `2^(n+1)`, half-point `2^n`).
///
/// Machine width `2n + 2`: branch 0 is a fixed block of `2^2n - 1` models;
/// branch 1 runs the input over `x` (`n+1` variables) with a multiplier
/// block `y` (`n` variables) — rejecting `x` keeps `y` pinned to zero (one
/// model each), accepting `x` admits every `y` except all-ones (`2^n - 1`
/// models each).  The output count `(2^2n - 1) + (2^(n+1) - a) + a(2^n - 1)`
/// is `2^(2n+1) - 1` exactly at the half-point `a = 2^n`.
pub fn cequal_to_mns(formula: &CnfFormula) -> Result<GadgetResult, ReductionError> {
    let vars = formula.num_vars();
    if vars < 2 {
        return Err(ReductionError::TooFewVariables { num_vars: vars });
    }
    let n = vars - 1;
    let machine = 2 * n + 2;
    let mut circuit = Circuit::new(machine);
    let selector = circuit.input(machine);

    let not_selector = circuit.not(selector);
    let value_bits: Vec<Signal> = (1..=2 * n + 1).map(|v| circuit.input(v)).collect();
    let block_size = (BigUint::one() << (2 * n) as usize) - 1u32;
    let in_block = value_lt_const(&mut circuit, &value_bits, &block_size);
    let branch0 = circuit.and(not_selector, in_block);

    let accepts = circuit.embed_cnf(formula, 0);
    let rejects = circuit.not(accepts);
    let multiplier: Vec<Signal> = (n + 2..=2 * n + 1).map(|v| circuit.input(v)).collect();
    let mut zeros = Vec::with_capacity(n as usize);
    let mut ones = Vec::with_capacity(n as usize);
    for &y in &multiplier {
        ones.push(y);
        zeros.push(circuit.not(y));
    }
    let all_zero = circuit.and_all(&zeros);
    let all_ones = circuit.and_all(&ones);
    let not_all_ones = circuit.not(all_ones);
    let reject_paths = circuit.and(rejects, all_zero);
    let accept_paths = circuit.and(accepts, not_all_ones);
    let simulation = circuit.or(reject_paths, accept_paths);
    let branch1 = circuit.and(selector, simulation);

    let output = circuit.or(branch0, branch1);
    circuit.set_output(output);

    let mut out = tseitin(&circuit, machine);
    out.push_comment(format!("countlab: construction=cequal_to_mns params=n={n}"));
    Ok(GadgetResult {
        formula: out,
        machine_vars: machine,
        count_expression: CountExpr::CequalToMns { n },
    })
}

/// One query of a disjunctive truth-table reduction: the formula, the index
/// that produced it, and the machine width the oracle's half-point refers to.
#[derive(Clone, Debug)]
pub struct DttQuery {
    pub index: u32,
    pub formula: CnfFormula,
    pub machine_vars: u32,
}

/// A batch of oracle queries combined by a fixed disjunction.
#[derive(Clone, Debug)]
pub struct DttReduction {
    pub queries: Vec<DttQuery>,
}

/// Half-count decision for a dtt query: YES iff the count equals
/// `2^(machine_vars - 1)`.
pub fn equal_sat_oracle(query: &DttQuery) -> bool {
    let count = count_dpll(&query.formula).accepted().clone();
    count * 2u32 == BigUint::one() << query.machine_vars as usize
}

/// Mersenne to half-count reduction: for each `i` in `1..=n` the query
/// formula counts `(2^n - 2^i + 1) + a` over machine width `n + 1`, so the
/// half-count oracle answers YES iff `a = 2^i - 1`.  The disjunction over
/// `i` therefore decides whether `a` is Mersenne.
pub fn mns_to_cequal(formula: &CnfFormula) -> DttReduction {
    let n = formula.num_vars();
    assert!(
        n <= 32,
        "immediate blocks are exponential in the variable count"
    );
    let queries = (1..=n)
        .map(|i| {
            let constant = (BigUint::one() << n as usize) - (BigUint::one() << i as usize) + 1u32;
            let gadget = add_const(formula, &constant, n)
                .expect("2^n - 2^i + 1 fits the width-n block for i >= 1");
            DttQuery {
                index: i,
                formula: gadget.formula,
                machine_vars: gadget.machine_vars,
            }
        })
        .collect();
    DttReduction { queries }
}

/// Evaluates a dtt reduction: the OR of the oracle answers, with every
/// query evaluated (no short-circuit, so traces are complete).
pub fn dtt_evaluate(reduction: &DttReduction, oracle: impl Fn(&DttQuery) -> bool) -> bool {
    assert!(
        !reduction.queries.is_empty(),
        "dtt reduction needs at least one query"
    );
    let answers: Vec<bool> = reduction.queries.iter().map(oracle).collect();
    answers.into_iter().any(|a| a)
}

/// Decides whether a DNF has the maximum Mersenne count `2^n - 1` of models
/// by asking a unique-count oracle about its De Morgan complement.
pub fn max_mersenne_dnf(dnf: &DnfFormula, oracle: impl Fn(&CnfFormula) -> bool) -> bool {
    oracle(&dnf.complement_cnf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::block_with_count;
    use crate::counting::count_bruteforce;
    use num_traits::ToPrimitive;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn model_count(f: &CnfFormula) -> BigUint {
        match count_bruteforce(f) {
            Ok(p) => p.accepted().clone(),
            Err(_) => count_dpll(f).accepted().clone(),
        }
    }

    #[test]
    fn fewp_construction_counts_subsets() {
        // a = 0: no nonempty subsets.
        let unsat = block_with_count(2, &big(0));
        assert_eq!(model_count(&fewp_to_mnp(&unsat, 3).formula), big(0));

        // a = 3, q = 3: 2^3 - 1.
        let three = block_with_count(2, &big(3));
        assert_eq!(model_count(&fewp_to_mnp(&three, 3).formula), big(7));

        // a = 2, q = 5: C(2,1) + C(2,2).
        let two = block_with_count(2, &big(2));
        assert_eq!(model_count(&fewp_to_mnp(&two, 5).formula), big(3));
    }

    #[test]
    fn fewp_audit_holds_past_the_promise() {
        // a = 3 > q = 2: count is C(3,1) + C(3,2) = 6, and the audit
        // expression still matches.
        let three = block_with_count(2, &big(3));
        let r = fewp_to_mnp(&three, 2);
        assert_eq!(model_count(&r.formula), big(6));
        assert_eq!(r.count_expression.apply(&big(3)), big(6));
    }

    #[test]
    fn us_construction_spec_cases() {
        let one = block_with_count(3, &big(1));
        let r = us_to_mns(&one);
        let count = model_count(&r.formula);
        assert_eq!(count, big(7));
        assert!(is_mersenne(&count));

        let two = block_with_count(3, &big(2));
        let count = model_count(&us_to_mns(&two).formula);
        assert_eq!(count, big(14));
        assert!(!is_mersenne(&count));
    }

    #[test]
    fn majority_simulation_spec_cases() {
        // n = 3, a = 5: strict majority; k = 3 reaches 7 + 3 + 5 = 15.
        let f = block_with_count(3, &big(5));
        let trace = majority_np_mns(&f, mns_oracle);
        assert!(trace.gate_satisfiable);
        assert_eq!(trace.verdict, TraceVerdict::Accept);
        assert_eq!(trace.queries.len(), 4);
        let hit = trace.queries.iter().find(|q| q.answer).unwrap();
        assert_eq!(hit.parameter, 3);
        assert_eq!(hit.count, big(15));

        // n = 3, a = 4: exactly half, not a strict majority.
        let f = block_with_count(3, &big(4));
        let trace = majority_np_mns(&f, mns_oracle);
        assert_eq!(trace.verdict, TraceVerdict::Reject);
        assert!(trace.queries.iter().all(|q| !q.answer));

        // Unsatisfiable: reject outright with zero queries.
        let f = block_with_count(3, &big(0));
        let trace = majority_np_mns(&f, mns_oracle);
        assert!(!trace.gate_satisfiable);
        assert!(trace.queries.is_empty());
        assert_eq!(trace.verdict, TraceVerdict::Reject);
    }

    #[test]
    fn majority_query_counts_follow_the_construction() {
        let f = block_with_count(3, &big(6));
        let trace = majority_np_mns(&f, mns_oracle);
        for q in &trace.queries {
            assert_eq!(q.count, big(7 + q.parameter + 6));
        }
    }

    #[test]
    fn parity_simulation_spec_cases() {
        // a = 3 over 2 vars: odd; k = 0 hits the Mersenne count 3.
        let f = block_with_count(2, &big(3));
        let trace = parity_np_mns(&f, mns_oracle);
        assert!(trace.gate_satisfiable);
        assert_eq!(trace.verdict, TraceVerdict::Accept);
        assert!(trace.queries.iter().any(|q| q.parameter == 0 && q.answer));

        // a = 2: even plus even is never Mersenne.
        let f = block_with_count(2, &big(2));
        assert_eq!(parity_np_mns(&f, mns_oracle).verdict, TraceVerdict::Reject);

        // a = 0: queries are issued (no gate) and all answer NO.
        let f = block_with_count(2, &big(0));
        let trace = parity_np_mns(&f, mns_oracle);
        assert_eq!(trace.queries.len(), 2);
        assert_eq!(trace.verdict, TraceVerdict::Reject);
    }

    #[test]
    fn mnp_parity_agreement() {
        assert_eq!(mnp_in_parity_check(&CountProfile::new(7u32, 4)), Ok(true));
        assert_eq!(mnp_in_parity_check(&CountProfile::new(0u32, 4)), Ok(true));
        assert_eq!(
            mnp_in_parity_check(&CountProfile::new(6u32, 4)),
            Err(MnpPromiseError { accepted: big(6) })
        );
    }

    #[test]
    fn cequal_construction_spec_cases() {
        // n = 3: inputs over 4 variables, half-point a = 8.
        let at_half = block_with_count(4, &big(8));
        let r = cequal_to_mns(&at_half).unwrap();
        assert_eq!(r.machine_vars, 8);
        let count = model_count(&r.formula);
        assert_eq!(count, big(127));
        assert!(is_mersenne(&count));

        let below = block_with_count(4, &big(7));
        let count = model_count(&cequal_to_mns(&below).unwrap().formula);
        assert_eq!(count, big(121)); // 63 + 9 + 49, strictly between 63 and 127
        assert!(!is_mersenne(&count));

        let full = block_with_count(4, &big(16));
        let count = model_count(&cequal_to_mns(&full).unwrap().formula);
        assert_eq!(count, big(175));
        assert!(!is_mersenne(&count));
    }

    #[test]
    fn cequal_rejects_single_variable_inputs() {
        let f = block_with_count(1, &big(1));
        assert_eq!(
            cequal_to_mns(&f).err(),
            Some(ReductionError::TooFewVariables { num_vars: 1 })
        );
    }

    #[test]
    fn dtt_reduction_spec_cases() {
        // n = 3, a = 7: query i = 3 counts 1 + 7 = 8 = 2^3, half of 2^4.
        let f = block_with_count(3, &big(7));
        let r = mns_to_cequal(&f);
        assert_eq!(r.queries.len(), 3);
        assert!(dtt_evaluate(&r, equal_sat_oracle));
        let answers: Vec<bool> = r.queries.iter().map(equal_sat_oracle).collect();
        assert_eq!(answers, vec![false, false, true]);

        // a = 4 is not Mersenne: all queries answer NO.
        let f = block_with_count(3, &big(4));
        assert!(!dtt_evaluate(&mns_to_cequal(&f), equal_sat_oracle));

        // a = 0: Mersenne requires t >= 1.
        let f = block_with_count(3, &big(0));
        assert!(!dtt_evaluate(&mns_to_cequal(&f), equal_sat_oracle));
    }

    #[test]
    fn dtt_evaluate_is_a_plain_disjunction() {
        let f = block_with_count(2, &big(1));
        let r = mns_to_cequal(&f);
        assert!(dtt_evaluate(&r, |q| q.index == 2));
        assert!(!dtt_evaluate(&r, |_| false));
        assert!(dtt_evaluate(&r, |_| true));
    }

    #[test]
    fn max_mersenne_dnf_spec_cases() {
        // (x1) \/ (x2) over 2 vars: 3 models = 2^2 - 1.
        let d = DnfFormula::from_terms(2, &[&[1], &[2]]).unwrap();
        assert!(max_mersenne_dnf(&d, us_oracle));

        // Tautology: complement has 0 models, not 1.
        let mut taut = DnfFormula::new(2);
        taut.add_term_dimacs(&[]).unwrap();
        assert!(!max_mersenne_dnf(&taut, us_oracle));

        // Constant false: complement has 2^n models.
        let empty = DnfFormula::new(2);
        assert!(!max_mersenne_dnf(&empty, us_oracle));
    }

    #[test]
    fn trace_reports_are_complete() {
        let f = block_with_count(3, &big(5));
        let trace = majority_np_mns(&f, mns_oracle);
        let text = trace.text_report();
        assert!(text.starts_with("gate_satisfiable=true\n"));
        assert!(text.trim_end().ends_with("verdict=Accept"));
        assert_eq!(text.matches("query parameter=").count(), 4);

        let json = trace.structured_report();
        assert_eq!(json["verdict"], "Accept");
        assert_eq!(json["queries"].as_array().unwrap().len(), 4);
        let first = &json["queries"][0];
        assert!(first["formula_digest"].as_str().unwrap().len() == 16);
        assert_eq!(first["count"], "12"); // 7 + 0 + 5
    }

    #[test]
    fn trace_report_writes_to_disk() {
        let f = block_with_count(2, &big(3));
        let trace = parity_np_mns(&f, mns_oracle);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.json");
        trace.write_report(&path).unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(json["queries"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn parallel_and_sequential_traces_agree() {
        let f = block_with_count(4, &big(9));
        let seq = majority_np_mns_with(&f, mns_oracle, Execution::Sequential);
        let par = majority_np_mns_with(&f, mns_oracle, Execution::Parallel);
        assert_eq!(seq.verdict, par.verdict);
        let seq_params: Vec<u64> = seq.queries.iter().map(|q| q.parameter).collect();
        let par_params: Vec<u64> = par.queries.iter().map(|q| q.parameter).collect();
        assert_eq!(seq_params, par_params, "answers recorded in query order");
        assert_eq!(
            seq.queries.iter().map(|q| &q.count).collect::<Vec<_>>(),
            par.queries.iter().map(|q| &q.count).collect::<Vec<_>>()
        );
    }

    #[test]
    fn us_construction_arithmetic_exhaustive_small() {
        // a * (2^n - 1) is Mersenne only at a = 1 within the path budget.
        for n in 1..=6u32 {
            for a in 0..=1u64 << n {
                let product = big(a) * ((BigUint::one() << n as usize) - 1u32);
                assert_eq!(
                    is_mersenne(&product),
                    a == 1,
                    "n={n} a={a} product={product}"
                );
            }
        }
        // The next solution sits just past the budget.
        for n in 1..=6u32 {
            let a = (1u64 << n) + 1;
            let product = big(a) * ((BigUint::one() << n as usize) - 1u32);
            assert!(is_mersenne(&product));
            assert_eq!(product.to_u64().unwrap(), (1u64 << (2 * n)) - 1);
        }
    }
}
