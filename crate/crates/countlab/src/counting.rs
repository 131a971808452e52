//! Exact model counting and count arithmetic.
//!
//! Two engines compute the same exact count: [`count_bruteforce`] enumerates
//! assignments (capped), and [`count_dpll`] runs a counting DPLL with unit
//! propagation whose leaves contribute `2^free` for the unassigned free
//! variables.  All counts are arbitrary precision; there are no modular
//! shortcuts.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::CnfFormula;
use crate::Execution;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default variable cap for the enumeration engine.
pub const DEFAULT_ENUMERATION_CAP: u32 = 26;

/// The outcome of one machine run: how many of the `2^path_exponent`
/// computation paths accept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountProfile {
    accepted: BigUint,
    path_exponent: u32,
}

impl CountProfile {
    /// Panics unless `accepted <= 2^path_exponent`.
    pub fn new(accepted: impl Into<BigUint>, path_exponent: u32) -> CountProfile {
        let accepted = accepted.into();
        // a <= 2^p iff a has at most p bits or a is exactly 2^p.
        let bits = accepted.bits();
        let within = bits <= path_exponent as u64
            || (bits == path_exponent as u64 + 1 && accepted.count_ones() == 1);
        assert!(
            within,
            "accepted count {accepted} exceeds 2^{path_exponent} total paths"
        );
        CountProfile {
            accepted,
            path_exponent,
        }
    }

    pub fn accepted(&self) -> &BigUint {
        &self.accepted
    }

    pub fn path_exponent(&self) -> u32 {
        self.path_exponent
    }

    pub fn total_paths(&self) -> BigUint {
        BigUint::one() << self.path_exponent as usize
    }
}

impl fmt::Display for CountProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "accepted={} paths=2^{}",
            self.accepted, self.path_exponent
        )
    }
}

/// Accepting paths minus rejecting paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GapValue {
    gap: BigInt,
}

impl GapValue {
    pub fn value(&self) -> &BigInt {
        &self.gap
    }
}

impl fmt::Display for GapValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gap)
    }
}

/// `gap = accepted - (2^p - accepted) = 2 * accepted - 2^p`.
pub fn gap_value(profile: &CountProfile) -> GapValue {
    let accepted = BigInt::from(profile.accepted.clone());
    let total = BigInt::from(profile.total_paths());
    GapValue {
        gap: 2 * accepted - total,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error(
        "formula has {num_vars} variables, above the enumeration cap {cap}; use the DPLL engine"
    )]
    AboveEnumerationCap { num_vars: u32, cap: u32 },
}

/// Counts models by enumerating all assignments, refusing formulas above the
/// default cap of [`DEFAULT_ENUMERATION_CAP`] variables.
pub fn count_bruteforce(formula: &CnfFormula) -> Result<CountProfile, CountError> {
    count_bruteforce_capped(formula, DEFAULT_ENUMERATION_CAP)
}

/// [`count_bruteforce`] with an explicit enumeration cap.
pub fn count_bruteforce_capped(formula: &CnfFormula, cap: u32) -> Result<CountProfile, CountError> {
    let n = formula.num_vars();
    if n > cap {
        return Err(CountError::AboveEnumerationCap { num_vars: n, cap });
    }
    let masks = formula.clause_masks();
    let mut count = 0u64;
    for bits in 0u64..1 << n {
        if masks
            .iter()
            .all(|&(pos, neg)| bits & pos != 0 || !bits & neg != 0)
        {
            count += 1;
        }
    }
    Ok(CountProfile::new(count, n))
}

/// Counts models with the DPLL engine; no variable cap.
///
/// Contract: identical result to [`count_bruteforce`].  Branching is on the
/// lowest-index unassigned variable, leaves contribute `2^free`, and the
/// parallel mode splits the top of the search tree into independent
/// subproblems whose exact counts are summed.
pub fn count_dpll(formula: &CnfFormula) -> CountProfile {
    count_dpll_with(formula, Execution::default())
}

/// [`count_dpll`] with an explicit execution strategy.
pub fn count_dpll_with(formula: &CnfFormula, exec: Execution) -> CountProfile {
    let problem = Arc::new(Problem::build(formula));
    let models = match exec {
        Execution::Sequential => count_sequential(problem),
        Execution::Parallel => count_parallel(problem),
    };
    CountProfile::new(models, formula.num_vars())
}

const UNASSIGNED: i8 = -1;

/// Immutable per-formula data shared by all solver instances.
struct Problem {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    occ_pos: Vec<Vec<u32>>,
    occ_neg: Vec<Vec<u32>>,
}

impl Problem {
    fn build(formula: &CnfFormula) -> Problem {
        let num_vars = formula.num_vars() as usize;
        let clauses: Vec<Vec<i32>> = formula
            .clauses()
            .iter()
            .map(|clause| clause.iter().map(|l| l.to_dimacs()).collect())
            .collect();
        let mut occ_pos = vec![Vec::new(); num_vars];
        let mut occ_neg = vec![Vec::new(); num_vars];
        for (index, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                let var = lit.unsigned_abs() as usize - 1;
                if lit > 0 {
                    occ_pos[var].push(index as u32);
                } else {
                    occ_neg[var].push(index as u32);
                }
            }
        }
        Problem {
            num_vars,
            clauses,
            occ_pos,
            occ_neg,
        }
    }
}

enum TrailEvent {
    Assign(u32),
    Satisfy(u32),
    Shrink(u32),
}

struct Solver {
    problem: Arc<Problem>,
    assign: Vec<i8>,
    satisfied: Vec<bool>,
    unassigned_in: Vec<u32>,
    active_clauses: usize,
    assigned: usize,
    trail: Vec<TrailEvent>,
    units: VecDeque<u32>,
    conflict: bool,
}

impl Solver {
    fn new(problem: Arc<Problem>) -> Solver {
        let num_clauses = problem.clauses.len();
        let mut solver = Solver {
            assign: vec![UNASSIGNED; problem.num_vars],
            satisfied: vec![false; num_clauses],
            unassigned_in: problem.clauses.iter().map(|c| c.len() as u32).collect(),
            active_clauses: num_clauses,
            assigned: 0,
            trail: Vec::new(),
            units: VecDeque::new(),
            conflict: false,
            problem,
        };
        for (index, clause) in solver.problem.clauses.iter().enumerate() {
            match clause.len() {
                0 => solver.conflict = true,
                1 => solver.units.push_back(index as u32),
                _ => {}
            }
        }
        solver
    }

    fn set(&mut self, var: usize, value: bool) {
        debug_assert_eq!(self.assign[var], UNASSIGNED);
        self.assign[var] = value as i8;
        self.assigned += 1;
        self.trail.push(TrailEvent::Assign(var as u32));
        let problem = Arc::clone(&self.problem);
        let (sat_side, unsat_side) = if value {
            (&problem.occ_pos[var], &problem.occ_neg[var])
        } else {
            (&problem.occ_neg[var], &problem.occ_pos[var])
        };
        for &c in sat_side {
            let c_us = c as usize;
            if !self.satisfied[c_us] {
                self.satisfied[c_us] = true;
                self.active_clauses -= 1;
                self.trail.push(TrailEvent::Satisfy(c));
            }
        }
        for &c in unsat_side {
            let c_us = c as usize;
            if !self.satisfied[c_us] {
                self.unassigned_in[c_us] -= 1;
                self.trail.push(TrailEvent::Shrink(c));
                match self.unassigned_in[c_us] {
                    0 => self.conflict = true,
                    1 => self.units.push_back(c),
                    _ => {}
                }
            }
        }
    }

    /// Runs unit propagation to fixpoint; false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            if self.conflict {
                self.units.clear();
                return false;
            }
            let Some(c) = self.units.pop_front() else {
                return true;
            };
            let c_us = c as usize;
            if self.satisfied[c_us] {
                continue;
            }
            let lit = *self.problem.clauses[c_us]
                .iter()
                .find(|&&l| self.assign[l.unsigned_abs() as usize - 1] == UNASSIGNED)
                .expect("a queued unit clause has one unassigned literal");
            self.set(lit.unsigned_abs() as usize - 1, lit > 0);
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                TrailEvent::Assign(v) => {
                    self.assign[v as usize] = UNASSIGNED;
                    self.assigned -= 1;
                }
                TrailEvent::Satisfy(c) => {
                    self.satisfied[c as usize] = false;
                    self.active_clauses += 1;
                }
                TrailEvent::Shrink(c) => {
                    self.unassigned_in[c as usize] += 1;
                }
            }
        }
        self.units.clear();
        self.conflict = false;
    }

    fn lowest_unassigned(&self) -> usize {
        self.assign
            .iter()
            .position(|&a| a == UNASSIGNED)
            .expect("an active clause implies an unassigned variable")
    }

    fn leaf_count(&self) -> BigUint {
        BigUint::one() << (self.problem.num_vars - self.assigned)
    }

    fn count_rec(&mut self) -> BigUint {
        if self.active_clauses == 0 {
            return self.leaf_count();
        }
        let var = self.lowest_unassigned();
        let mut total = BigUint::zero();
        for value in [false, true] {
            let mark = self.trail.len();
            self.set(var, value);
            if self.propagate() {
                total += self.count_rec();
            }
            self.undo_to(mark);
        }
        total
    }

    fn count_root(&mut self) -> BigUint {
        if !self.propagate() {
            return BigUint::zero();
        }
        self.count_rec()
    }

    /// Counts under a decision prefix produced by [`Solver::split`].
    #[cfg(feature = "parallel")]
    fn count_under(&mut self, decisions: &[(u32, bool)]) -> BigUint {
        if !self.propagate() {
            return BigUint::zero();
        }
        for &(var, value) in decisions {
            self.set(var as usize, value);
            if !self.propagate() {
                // The splitter already walked this prefix without conflict.
                unreachable!("replaying a split prefix cannot conflict");
            }
        }
        self.count_rec()
    }

    /// Resolves the top `depth` decision levels, returning the directly
    /// resolved count plus the decision prefixes of the open subproblems.
    #[cfg(feature = "parallel")]
    fn split(&mut self, depth: u32) -> (BigUint, Vec<Vec<(u32, bool)>>) {
        let mut direct = BigUint::zero();
        let mut jobs = Vec::new();
        if !self.propagate() {
            return (direct, jobs);
        }
        let mut decisions = Vec::new();
        self.split_rec(depth, &mut decisions, &mut direct, &mut jobs);
        (direct, jobs)
    }

    #[cfg(feature = "parallel")]
    fn split_rec(
        &mut self,
        depth: u32,
        decisions: &mut Vec<(u32, bool)>,
        direct: &mut BigUint,
        jobs: &mut Vec<Vec<(u32, bool)>>,
    ) {
        if self.active_clauses == 0 {
            *direct += self.leaf_count();
            return;
        }
        if depth == 0 {
            jobs.push(decisions.clone());
            return;
        }
        let var = self.lowest_unassigned();
        for value in [false, true] {
            let mark = self.trail.len();
            self.set(var, value);
            if self.propagate() {
                decisions.push((var as u32, value));
                self.split_rec(depth - 1, decisions, direct, jobs);
                decisions.pop();
            }
            self.undo_to(mark);
        }
    }
}

fn count_sequential(problem: Arc<Problem>) -> BigUint {
    Solver::new(problem).count_root()
}

#[cfg(feature = "parallel")]
fn count_parallel(problem: Arc<Problem>) -> BigUint {
    const PAR_MIN_VARS: usize = 14;
    const SPLIT_DEPTH: u32 = 8;
    if problem.num_vars < PAR_MIN_VARS {
        return count_sequential(problem);
    }
    let (direct, jobs) = Solver::new(Arc::clone(&problem)).split(SPLIT_DEPTH);
    let job_sum = jobs
        .into_par_iter()
        .map(|decisions| Solver::new(Arc::clone(&problem)).count_under(&decisions))
        .reduce(BigUint::zero, |a, b| a + b);
    direct + job_sum
}

#[cfg(not(feature = "parallel"))]
fn count_parallel(problem: Arc<Problem>) -> BigUint {
    count_sequential(problem)
}

/// Binomial coefficient `C(n, k)` with arbitrary-precision `n`; zero when
/// `n < k`.
pub fn binomial(n: &BigUint, k: u32) -> BigUint {
    if *n < BigUint::from(k) {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for i in 0..k as u64 {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// True iff `v = 2^t - 1` for some `t >= 1` (all ones in binary).
pub fn is_mersenne(v: &BigUint) -> bool {
    !v.is_zero() && v.count_ones() == v.bits()
}

/// True iff `v = 2^t` for some `t >= 0`.
pub fn is_power_of_two(v: &BigUint) -> bool {
    v.count_ones() == 1
}

/// Mersenne numbers `2^t - 1` for `t = 1..=max(bit_bound - 1, 1)`, in
/// increasing order: the members of the Mersenne set printable within the
/// length bound, in time polynomial in `bit_bound`.
pub fn mersenne_prefix(bit_bound: u32) -> Vec<BigUint> {
    assert!(bit_bound >= 1, "bit bound must be positive");
    let t_max = bit_bound.saturating_sub(1).max(1);
    (1..=t_max as usize)
        .map(|t| (BigUint::one() << t) - 1u32)
        .collect()
}

/// Checks the bounded-ratio property on a finite increasing prefix: every
/// element except the last must have its successor within `ratio`.  The last
/// element is exempt from needing a successor inside the prefix.
///
/// Panics on an empty or non-increasing input.
pub fn non_gappy_check(values: &[BigUint], ratio: Ratio<u64>) -> bool {
    assert!(!values.is_empty(), "non-gappy check needs a nonempty set");
    assert!(!values[0].is_zero(), "set elements must be positive");
    assert!(
        values.windows(2).all(|w| w[0] < w[1]),
        "set must be strictly increasing"
    );
    values.windows(2).all(|w| {
        // m / n <= ratio  <=>  m * denom <= n * numer  (exact arithmetic)
        &w[1] * ratio.denom() <= &w[0] * ratio.numer()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn bruteforce_spec_cases() {
        let f = CnfFormula::from_clauses(2, &[&[1, 2]]).unwrap();
        let p = count_bruteforce(&f).unwrap();
        assert_eq!(p.accepted(), &big(3));
        assert_eq!(p.path_exponent(), 2);

        let unsat = CnfFormula::from_clauses(4, &[&[]]).unwrap();
        assert_eq!(count_bruteforce(&unsat).unwrap().accepted(), &big(0));

        let tautology = CnfFormula::new(5);
        assert_eq!(count_bruteforce(&tautology).unwrap().accepted(), &big(32));
    }

    #[test]
    fn bruteforce_refuses_above_cap() {
        let f = CnfFormula::new(27);
        assert_eq!(
            count_bruteforce(&f),
            Err(CountError::AboveEnumerationCap {
                num_vars: 27,
                cap: 26
            })
        );
        assert!(count_bruteforce_capped(&CnfFormula::new(10), 9).is_err());
    }

    #[test]
    fn dpll_spec_case() {
        // {x1}, {-x1 \/ x2} over 3 vars: x1=T forces x2=T, x3 free.
        let f = CnfFormula::from_clauses(3, &[&[1], &[-1, 2]]).unwrap();
        let p = count_dpll(&f);
        assert_eq!(p.accepted(), &big(2));
        assert_eq!(p.path_exponent(), 3);
    }

    #[test]
    fn dpll_handles_edge_formulas() {
        let unsat = CnfFormula::from_clauses(3, &[&[]]).unwrap();
        assert_eq!(count_dpll(&unsat).accepted(), &big(0));

        let tautology = CnfFormula::new(6);
        assert_eq!(count_dpll(&tautology).accepted(), &big(64));

        let conflicting_units = CnfFormula::from_clauses(2, &[&[1], &[-1]]).unwrap();
        assert_eq!(count_dpll(&conflicting_units).accepted(), &big(0));
    }

    #[test]
    fn dpll_matches_bruteforce_on_20_var_random_3cnf() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2 {
            let f = crate::corpus::random_3cnf(&mut rng, 20, 85);
            assert_eq!(count_dpll(&f), count_bruteforce(&f).unwrap());
        }
    }

    #[test]
    fn dpll_agrees_with_bruteforce_both_modes() {
        let f = CnfFormula::from_clauses(4, &[&[1, -2, 3], &[-1, 4], &[2, -3], &[-4, 1], &[3, 4]])
            .unwrap();
        let expected = count_bruteforce(&f).unwrap();
        assert_eq!(count_dpll_with(&f, Execution::Sequential), expected);
        assert_eq!(count_dpll_with(&f, Execution::Parallel), expected);
    }

    #[test]
    fn gap_spec_cases() {
        assert_eq!(
            gap_value(&CountProfile::new(4u32, 3)).value(),
            &BigInt::from(0)
        );
        assert_eq!(
            gap_value(&CountProfile::new(2u32, 1)).value(),
            &BigInt::from(2)
        );
        assert_eq!(
            gap_value(&CountProfile::new(0u32, 2)).value(),
            &BigInt::from(-4)
        );
    }

    #[test]
    #[should_panic(expected = "exceeds 2^")]
    fn profile_rejects_impossible_count() {
        CountProfile::new(5u32, 2);
    }

    #[test]
    fn mersenne_predicate() {
        assert!(is_mersenne(&big(7)));
        assert!(!is_mersenne(&big(0)));
        assert!(is_mersenne(&big(1)));
        assert!(!is_mersenne(&big(6)));
        // Structural check on the largest known Mersenne prime exponent.
        let huge = (BigUint::one() << 77_232_917usize) - 1u32;
        assert!(is_mersenne(&huge));
        assert!(!is_mersenne(&(huge + 2u32)));
    }

    #[test]
    fn power_of_two_predicate() {
        assert!(is_power_of_two(&big(1)));
        assert!(!is_power_of_two(&big(6)));
        assert!(is_power_of_two(&big(1024)));
        assert!(!is_power_of_two(&big(0)));
    }

    #[test]
    fn mersenne_prefix_spec_cases() {
        assert_eq!(mersenne_prefix(4), vec![big(1), big(3), big(7)]);
        assert_eq!(mersenne_prefix(1), vec![big(1)]);
        let prefix = mersenne_prefix(64);
        assert_eq!(prefix.len(), 63);
        assert_eq!(
            prefix.last().unwrap(),
            &((BigUint::one() << 63usize) - 1u32)
        );
    }

    #[test]
    fn non_gappy_spec_cases() {
        let three = Ratio::from_integer(3);
        assert!(non_gappy_check(&mersenne_prefix(64), three));
        assert!(!non_gappy_check(&[big(1), big(100)], three));
        assert!(non_gappy_check(&[big(5)], Ratio::from_integer(2)));
    }

    #[test]
    #[should_panic(expected = "nonempty")]
    fn non_gappy_rejects_empty_set() {
        non_gappy_check(&[], Ratio::from_integer(3));
    }
}
