//! Parsimonious circuit-to-CNF translation.
//!
//! Every gate gets a fresh variable constrained to *equal* its function
//! value (both implication directions), so each assignment of the first
//! `total_vars` variables extends in exactly one way to the gate variables.
//! The model count of the output, projected to `1..=total_vars`, therefore
//! equals the number of satisfying circuit inputs times `2^f` for the `f`
//! pass-through variables, and the total model count equals the projected
//! one.

use super::{Circuit, CnfFormula, Gate, Lit, Signal};

/// Translates `circuit` into CNF over `total_vars + num_gates` variables.
///
/// Inputs occupy ids `1..=num_inputs`; ids `num_inputs+1..=total_vars` are
/// free pass-through variables left unconstrained; gate variables are
/// allocated from `total_vars + 1` in gate order.  A unit clause asserts the
/// output signal.
pub fn tseitin(circuit: &Circuit, total_vars: u32) -> CnfFormula {
    assert!(
        total_vars >= circuit.num_inputs(),
        "total_vars must cover all circuit inputs"
    );
    let gate_lit = |s: Signal| -> Lit {
        match s {
            Signal::Input(v) => Lit::positive(v),
            Signal::Gate(g) => Lit::positive(total_vars + 1 + g),
        }
    };

    let mut formula = CnfFormula::new(total_vars + circuit.num_gates());
    let mut emit = |lits: Vec<Lit>| {
        formula
            .add_clause(lits)
            .expect("gate clauses are never tautological");
    };

    for (index, gate) in circuit.gates().iter().enumerate() {
        let g = Lit::positive(total_vars + 1 + index as u32);
        match *gate {
            Gate::And(a, b) => {
                let (a, b) = (gate_lit(a), gate_lit(b));
                emit(vec![-g, a]);
                emit(vec![-g, b]);
                emit(vec![g, -a, -b]);
            }
            Gate::Or(a, b) => {
                let (a, b) = (gate_lit(a), gate_lit(b));
                emit(vec![g, -a]);
                emit(vec![g, -b]);
                emit(vec![-g, a, b]);
            }
            Gate::Not(a) => {
                let a = gate_lit(a);
                emit(vec![g, a]);
                emit(vec![-g, -a]);
            }
        }
    }
    emit(vec![gate_lit(circuit.output())]);
    formula
}
