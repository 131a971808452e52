//! A laboratory for counting problems over CNF formulas.
//!
//! The central objects are CNF formulas whose exact model count stands in
//! for "the number of accepting computation paths of a machine".  On top of
//! that identification the crate provides:
//!
//! * [`formula`] — CNF/DNF/circuit data model, DIMACS input and output, and a
//!   parsimonious circuit-to-CNF translation (every projected model extends
//!   uniquely over the gate variables, so counts are preserved).
//! * [`counting`] — two exact counting engines (enumeration and DPLL) plus
//!   the arithmetic predicates (Mersenne, power of two, non-gappy prefix)
//!   that acceptance criteria are built from.
//! * [`classes`] — a registry of acceptance/rejection criteria over
//!   `(count, path exponent)` profiles, with promise-violation detection.
//! * [`gadgets`] — formula transformations that add, multiply, complement,
//!   and pin model counts, with symbolic audit expressions.
//! * [`reductions`] — count-transforming constructions and oracle-machine
//!   simulations with full query traces.
//! * [`corpus`] — seeded formula corpora for the verification suites.
//! * [`verify`] — the verification suites exposed through the CLI.

pub mod classes;
pub mod corpus;
pub mod counting;
pub mod formula;
pub mod gadgets;
pub mod reductions;
pub mod verify;

pub use formula::{Assignment, Circuit, CnfFormula, DnfFormula, Lit};

/// Execution strategy for the counting engine and the verification sweeps.
///
/// `Parallel` shards work across a rayon pool when the crate is built with
/// the `parallel` feature (the default); without the feature it silently
/// degrades to the sequential path.  Results are identical either way: all
/// reductions used are exact integer sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}
