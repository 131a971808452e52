//! Solution-count arithmetic as formula transformations.
//!
//! Each transformation returns a [`GadgetResult`]: the output formula, the
//! prefix of variable ids that play the role of machine path variables, and
//! a symbolic [`CountExpr`] recording the intended output count as a
//! function of the input count.  Gate variables introduced by the Tseitin
//! translation never count as machine variables; parsimony makes the total
//! model count equal the count projected to the machine prefix, so audits
//! are stated over total counts.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::counting::binomial;
use crate::formula::{tseitin, Circuit, CnfFormula, Lit, Signal};

/// Symbolic record of an intended output count as a function of the input
/// count `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountExpr {
    /// `a * (2^t - 1)`
    MultiplyMersenne { t: u32 },
    /// `a + c`
    AddConst { c: BigUint },
    /// `2^exponent - a`
    Complement { exponent: u32 },
    /// `a * 2^k`
    PadPow2 { k: u32 },
    /// `sum over j in 1..=q of C(a, j)`; equals `2^a - 1` whenever `a <= q`
    FewSubsets { q: u32 },
    /// `(2^{2n} - 1) + (2^{n+1} - a) + a * (2^n - 1)`
    CequalToMns { n: u32 },
}

impl CountExpr {
    /// Evaluates the expression at input count `a`.
    pub fn apply(&self, a: &BigUint) -> BigUint {
        match *self {
            CountExpr::MultiplyMersenne { t } => a * ((BigUint::one() << t as usize) - 1u32),
            CountExpr::AddConst { ref c } => a + c,
            CountExpr::Complement { exponent } => (BigUint::one() << exponent as usize) - a,
            CountExpr::PadPow2 { k } => a << k as usize,
            CountExpr::FewSubsets { q } => (1..=q).map(|j| binomial(a, j)).sum(),
            CountExpr::CequalToMns { n } => {
                let n = n as usize;
                ((BigUint::one() << (2 * n)) - 1u32)
                    + ((BigUint::one() << (n + 1)) - a)
                    + a * ((BigUint::one() << n) - 1u32)
            }
        }
    }
}

impl fmt::Display for CountExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CountExpr::MultiplyMersenne { t } => write!(f, "a * (2^{t} - 1)"),
            CountExpr::AddConst { ref c } => write!(f, "a + {c}"),
            CountExpr::Complement { exponent } => write!(f, "2^{exponent} - a"),
            CountExpr::PadPow2 { k } => write!(f, "a * 2^{k}"),
            CountExpr::FewSubsets { q } => write!(f, "sum_{{j=1..{q}}} C(a, j)"),
            CountExpr::CequalToMns { n } => write!(
                f,
                "(2^{} - 1) + (2^{} - a) + a * (2^{} - 1)",
                2 * n,
                n + 1,
                n
            ),
        }
    }
}

/// A transformed formula together with its machine-variable prefix and the
/// audit expression tying its count to the input count.
#[derive(Clone, Debug)]
pub struct GadgetResult {
    pub formula: CnfFormula,
    /// The machine path variables are the contiguous prefix `1..=machine_vars`.
    pub machine_vars: u32,
    pub count_expression: CountExpr,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("constant {constant} exceeds the 2^{width} block capacity")]
    ConstantTooLarge { constant: BigUint, width: u32 },
    #[error("block width {width} is below the formula's {num_vars} variables")]
    WidthTooSmall { width: u32, num_vars: u32 },
}

/// Comparator signal that is true iff the value of `bits` (first signal is
/// the most significant bit) is strictly less than `bound`.
pub(crate) fn value_lt_const(circuit: &mut Circuit, bits: &[Signal], bound: &BigUint) -> Signal {
    let m = bits.len() as u64;
    if bound.is_zero() {
        return circuit.const_false();
    }
    if *bound >= BigUint::one() << m as usize {
        return circuit.const_true();
    }
    let mut terms: Vec<Signal> = Vec::new();
    let mut prefix_eq: Option<Signal> = None;
    for (i, &x) in bits.iter().enumerate() {
        let bound_bit = bound.bit(m - 1 - i as u64);
        if bound_bit {
            let nx = circuit.not(x);
            let term = match prefix_eq {
                Some(pe) => circuit.and(pe, nx),
                None => nx,
            };
            terms.push(term);
        }
        if i + 1 < bits.len() {
            let eq = if bound_bit { x } else { circuit.not(x) };
            prefix_eq = Some(match prefix_eq {
                Some(pe) => circuit.and(pe, eq),
                None => eq,
            });
        }
    }
    circuit.or_all(&terms)
}

/// A formula over `machine_vars` variables (plus Tseitin gate variables)
/// with exactly `k` models: a lexicographic `value < k` comparator over the
/// standard binary encoding, variable 1 the most significant bit.
///
/// Panics if `k > 2^machine_vars`.
pub fn exactly_k(machine_vars: u32, k: &BigUint) -> CnfFormula {
    assert!(machine_vars >= 1, "block needs at least one variable");
    let full = BigUint::one() << machine_vars as usize;
    assert!(*k <= full, "requested count {k} exceeds 2^{machine_vars}");

    let mut formula = if k.is_zero() {
        let mut f = CnfFormula::new(machine_vars);
        f.add_clause(Vec::<Lit>::new()).unwrap();
        f
    } else if *k == full {
        CnfFormula::new(machine_vars)
    } else {
        let mut circuit = Circuit::new(machine_vars);
        let bits: Vec<Signal> = (1..=machine_vars).map(|v| circuit.input(v)).collect();
        let lt = value_lt_const(&mut circuit, &bits, k);
        circuit.set_output(lt);
        tseitin(&circuit, machine_vars)
    };
    formula.push_comment(format!(
        "countlab: gadget=exactly_k params=m={machine_vars},k={k}"
    ));
    formula
}

fn carry_comments(from: &CnfFormula, to: &mut CnfFormula) {
    for comment in from.comments() {
        to.push_comment(comment.clone());
    }
}

/// Multiplies the model count by `2^t - 1`: the input conjoined with one
/// clause over `t` fresh variables excluding their all-ones assignment.
pub fn multiply_mersenne(formula: &CnfFormula, t: u32) -> GadgetResult {
    assert!(t >= 1, "multiplier exponent must be positive");
    let n = formula.num_vars();
    let mut out = CnfFormula::new(n + t);
    carry_comments(formula, &mut out);
    for clause in formula.clauses() {
        out.add_clause(clause.iter().copied()).unwrap();
    }
    out.add_clause((n + 1..=n + t).map(Lit::negative)).unwrap();
    out.push_comment(format!("countlab: gadget=multiply_mersenne params=t={t}"));
    GadgetResult {
        formula: out,
        machine_vars: n + t,
        count_expression: CountExpr::MultiplyMersenne { t },
    }
}

/// Adds `c` to the model count via a disjoint selector branch: branch 0
/// forces the padding variables to false and asserts the input formula;
/// branch 1 asserts a `value < c` block over the full width.
pub fn add_const(
    formula: &CnfFormula,
    c: &BigUint,
    width: u32,
) -> Result<GadgetResult, GadgetError> {
    let n = formula.num_vars();
    if width < n {
        return Err(GadgetError::WidthTooSmall { width, num_vars: n });
    }
    if *c > BigUint::one() << width as usize {
        return Err(GadgetError::ConstantTooLarge {
            constant: c.clone(),
            width,
        });
    }

    let selector = width + 1;
    let mut circuit = Circuit::new(selector);
    let s = circuit.input(selector);

    let not_s = circuit.not(s);
    let formula_sig = circuit.embed_cnf(formula, 0);
    let mut branch0_parts = vec![not_s, formula_sig];
    for var in n + 1..=width {
        let x = circuit.input(var);
        let nx = circuit.not(x);
        branch0_parts.push(nx);
    }
    let branch0 = circuit.and_all(&branch0_parts);

    let bits: Vec<Signal> = (1..=width).map(|v| circuit.input(v)).collect();
    let lt = value_lt_const(&mut circuit, &bits, c);
    let branch1 = circuit.and(s, lt);

    let output = circuit.or(branch0, branch1);
    circuit.set_output(output);

    let mut out = tseitin(&circuit, selector);
    carry_comments(formula, &mut out);
    out.push_comment(format!(
        "countlab: gadget=add_const params=c={c},width={width}"
    ));
    Ok(GadgetResult {
        formula: out,
        machine_vars: selector,
        count_expression: CountExpr::AddConst { c: c.clone() },
    })
}

/// Complements the model count to `2^n - count`: the Tseitin translation of
/// the negation of the input's circuit form.
pub fn complement(formula: &CnfFormula) -> GadgetResult {
    let n = formula.num_vars();
    let mut circuit = Circuit::new(n);
    let formula_sig = circuit.embed_cnf(formula, 0);
    let negated = circuit.not(formula_sig);
    circuit.set_output(negated);

    let mut out = tseitin(&circuit, n);
    carry_comments(formula, &mut out);
    out.push_comment("countlab: gadget=complement params=none".to_string());
    GadgetResult {
        formula: out,
        machine_vars: n,
        count_expression: CountExpr::Complement { exponent: n },
    }
}

/// Multiplies the model count by `2^k` via `k` unconstrained fresh variables.
pub fn pad_pow2(formula: &CnfFormula, k: u32) -> GadgetResult {
    let n = formula.num_vars();
    let mut out = CnfFormula::new(n + k);
    carry_comments(formula, &mut out);
    for clause in formula.clauses() {
        out.add_clause(clause.iter().copied()).unwrap();
    }
    out.push_comment(format!("countlab: gadget=pad_pow2 params=k={k}"));
    GadgetResult {
        formula: out,
        machine_vars: n + k,
        count_expression: CountExpr::PadPow2 { k },
    }
}
