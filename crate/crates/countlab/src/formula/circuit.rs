//! Boolean gate graphs used to assemble gadgets before CNF translation.

use std::collections::HashMap;

use super::CnfFormula;

/// A reference to an input variable or an earlier gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signal {
    /// Input variable id, `1..=num_inputs`.
    Input(u32),
    /// Index into the gate list.
    Gate(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    And(Signal, Signal),
    Or(Signal, Signal),
    Not(Signal),
}

/// A combinational circuit with a single output.
///
/// Gates are topologically ordered by construction: a new gate may only
/// reference inputs or gates that already exist, so cycles are
/// unrepresentable.
#[derive(Clone, Debug)]
pub struct Circuit {
    num_inputs: u32,
    gates: Vec<Gate>,
    output: Option<Signal>,
}

impl Circuit {
    pub fn new(num_inputs: u32) -> Circuit {
        assert!(num_inputs >= 1, "a circuit needs at least one input");
        Circuit {
            num_inputs,
            gates: Vec::new(),
            output: None,
        }
    }

    pub fn num_inputs(&self) -> u32 {
        self.num_inputs
    }

    pub fn num_gates(&self) -> u32 {
        self.gates.len() as u32
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// The signal of input variable `var` (1-based).
    pub fn input(&self, var: u32) -> Signal {
        assert!(
            var >= 1 && var <= self.num_inputs,
            "input {var} outside 1..={}",
            self.num_inputs
        );
        Signal::Input(var)
    }

    fn check(&self, signal: Signal) {
        match signal {
            Signal::Input(v) => assert!(
                v >= 1 && v <= self.num_inputs,
                "signal references input {v} outside 1..={}",
                self.num_inputs
            ),
            Signal::Gate(g) => assert!(
                (g as usize) < self.gates.len(),
                "signal references gate {g} that does not exist yet"
            ),
        }
    }

    fn push(&mut self, gate: Gate) -> Signal {
        let index = self.gates.len() as u32;
        self.gates.push(gate);
        Signal::Gate(index)
    }

    pub fn and(&mut self, a: Signal, b: Signal) -> Signal {
        self.check(a);
        self.check(b);
        self.push(Gate::And(a, b))
    }

    pub fn or(&mut self, a: Signal, b: Signal) -> Signal {
        self.check(a);
        self.check(b);
        self.push(Gate::Or(a, b))
    }

    pub fn not(&mut self, a: Signal) -> Signal {
        self.check(a);
        self.push(Gate::Not(a))
    }

    /// Conjunction of `signals`; the constant true when empty.
    pub fn and_all(&mut self, signals: &[Signal]) -> Signal {
        match signals.split_first() {
            None => self.const_true(),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &s| self.and(acc, s)),
        }
    }

    /// Disjunction of `signals`; the constant false when empty.
    pub fn or_all(&mut self, signals: &[Signal]) -> Signal {
        match signals.split_first() {
            None => self.const_false(),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &s| self.or(acc, s)),
        }
    }

    /// A signal that is always true, synthesized as `x1 \/ -x1`.
    pub fn const_true(&mut self) -> Signal {
        let x = self.input(1);
        let nx = self.not(x);
        self.or(x, nx)
    }

    /// A signal that is always false, synthesized as `x1 /\ -x1`.
    pub fn const_false(&mut self) -> Signal {
        let x = self.input(1);
        let nx = self.not(x);
        self.and(x, nx)
    }

    pub fn set_output(&mut self, signal: Signal) {
        self.check(signal);
        self.output = Some(signal);
    }

    pub fn output(&self) -> Signal {
        self.output.expect("circuit output not set")
    }

    /// Embeds a CNF formula as a gate cone over inputs
    /// `offset+1 ..= offset+f.num_vars()`, returning the signal that is true
    /// exactly when the mapped assignment satisfies the formula.
    pub fn embed_cnf(&mut self, formula: &CnfFormula, offset: u32) -> Signal {
        assert!(
            offset + formula.num_vars() <= self.num_inputs,
            "formula does not fit in the circuit inputs"
        );
        let mut negations: HashMap<u32, Signal> = HashMap::new();
        let mut clause_signals = Vec::with_capacity(formula.num_clauses());
        for clause in formula.clauses() {
            let lits: Vec<Signal> = clause
                .iter()
                .map(|&lit| {
                    let var = offset + lit.var();
                    if lit.is_positive() {
                        self.input(var)
                    } else {
                        match negations.get(&var) {
                            Some(&s) => s,
                            None => {
                                let inp = self.input(var);
                                let s = self.not(inp);
                                negations.insert(var, s);
                                s
                            }
                        }
                    }
                })
                .collect();
            let clause_signal = self.or_all(&lits);
            clause_signals.push(clause_signal);
        }
        self.and_all(&clause_signals)
    }

    /// Evaluates the output on a total input assignment (`inputs[i]` is the
    /// value of input variable `i + 1`).
    pub fn evaluate(&self, inputs: &[bool]) -> bool {
        assert_eq!(inputs.len() as u32, self.num_inputs);
        let mut values = Vec::with_capacity(self.gates.len());
        let read = |values: &Vec<bool>, s: Signal| match s {
            Signal::Input(v) => inputs[(v - 1) as usize],
            Signal::Gate(g) => values[g as usize],
        };
        for gate in &self.gates {
            let v = match *gate {
                Gate::And(a, b) => read(&values, a) && read(&values, b),
                Gate::Or(a, b) => read(&values, a) || read(&values, b),
                Gate::Not(a) => !read(&values, a),
            };
            values.push(v);
        }
        read(&values, self.output())
    }

    /// [`Circuit::evaluate`] with inputs packed as bits (input `i` is bit `i-1`).
    pub fn evaluate_bits(&self, bits: u64) -> bool {
        let inputs: Vec<bool> = (0..self.num_inputs).map(|i| bits >> i & 1 == 1).collect();
        self.evaluate(&inputs)
    }
}
