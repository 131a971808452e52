//! CNF and circuit data model.
//!
//! Variables are dense `1..=num_vars`.  Literals are DIMACS-style signed
//! integers: positive for the variable, negative for its negation.  Clause
//! construction collapses duplicate literals and rejects tautological
//! clauses, so formula equality is structural.

mod circuit;
mod dimacs;
mod tseitin;

pub use circuit::{Circuit, Gate, Signal};
pub use dimacs::{emit_dimacs, parse_dimacs, DimacsError};
pub use tseitin::tseitin;

use std::fmt;

use thiserror::Error;

/// Errors raised while constructing formulas.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("literal must be a nonzero integer")]
    ZeroLiteral,
    #[error("literal {literal} references a variable outside 1..={num_vars}")]
    LiteralOutOfRange { literal: i32, num_vars: u32 },
    #[error("clause contains variable {var} with both polarities")]
    TautologicalClause { var: u32 },
    #[error("term contains variable {var} with both polarities")]
    ContradictoryTerm { var: u32 },
}

/// A literal: a variable id with a polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    /// The positive literal of `var`.  Panics if `var` is zero.
    pub fn positive(var: u32) -> Lit {
        assert!(var >= 1 && var <= i32::MAX as u32, "bad variable id {var}");
        Lit(var as i32)
    }

    /// The negative literal of `var`.  Panics if `var` is zero.
    pub fn negative(var: u32) -> Lit {
        assert!(var >= 1 && var <= i32::MAX as u32, "bad variable id {var}");
        Lit(-(var as i32))
    }

    /// Builds a literal from a signed DIMACS integer.
    pub fn from_dimacs(raw: i32) -> Result<Lit, FormulaError> {
        if raw == 0 {
            return Err(FormulaError::ZeroLiteral);
        }
        Ok(Lit(raw))
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }
}

impl std::ops::Neg for Lit {
    type Output = Lit;

    fn neg(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A total assignment over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    /// Assignment where variable `i` is true iff bit `i - 1` of `bits` is set.
    pub fn from_bits(num_vars: u32, bits: u64) -> Assignment {
        assert!(
            num_vars <= 64,
            "bit assignments support at most 64 variables"
        );
        Assignment {
            values: (0..num_vars).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, var: u32) -> bool {
        self.values[(var - 1) as usize]
    }

    fn satisfies(&self, lit: Lit) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }
}

/// Checks a batch of literals against a variable range: collapses duplicates
/// (first occurrence wins) and rejects opposite polarities of one variable.
fn normalize_lits<I>(lits: I, num_vars: u32, cnf: bool) -> Result<Vec<Lit>, FormulaError>
where
    I: IntoIterator<Item = Lit>,
{
    let mut out: Vec<Lit> = Vec::new();
    for lit in lits {
        if lit.var() > num_vars {
            return Err(FormulaError::LiteralOutOfRange {
                literal: lit.to_dimacs(),
                num_vars,
            });
        }
        if out.contains(&lit) {
            continue;
        }
        if out.contains(&-lit) {
            return Err(if cnf {
                FormulaError::TautologicalClause { var: lit.var() }
            } else {
                FormulaError::ContradictoryTerm { var: lit.var() }
            });
        }
        out.push(lit);
    }
    Ok(out)
}

/// A formula in conjunctive normal form.
///
/// An empty clause is permitted and denotes unsatisfiability; a formula with
/// zero clauses is the constant true.  Comments ride along as metadata
/// (emitted as `c` lines in DIMACS) and do not participate in equality.
#[derive(Clone, Debug)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    comments: Vec<String>,
}

impl PartialEq for CnfFormula {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.clauses == other.clauses
    }
}

impl Eq for CnfFormula {}

impl CnfFormula {
    /// An empty (constant-true) formula over `num_vars >= 1` variables.
    pub fn new(num_vars: u32) -> CnfFormula {
        assert!(num_vars >= 1, "a formula needs at least one variable");
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// Adds a clause, validating the clause invariants.
    pub fn add_clause<I>(&mut self, lits: I) -> Result<(), FormulaError>
    where
        I: IntoIterator<Item = Lit>,
    {
        let clause = normalize_lits(lits, self.num_vars, true)?;
        self.clauses.push(clause);
        Ok(())
    }

    /// Adds a clause given as signed DIMACS integers (no terminating zero).
    pub fn add_clause_dimacs(&mut self, raw: &[i32]) -> Result<(), FormulaError> {
        let lits = raw
            .iter()
            .map(|&l| Lit::from_dimacs(l))
            .collect::<Result<Vec<_>, _>>()?;
        self.add_clause(lits)
    }

    /// Builds a formula from DIMACS-style clause lists.
    pub fn from_clauses(num_vars: u32, clauses: &[&[i32]]) -> Result<CnfFormula, FormulaError> {
        let mut f = CnfFormula::new(num_vars);
        for clause in clauses {
            f.add_clause_dimacs(clause)?;
        }
        Ok(f)
    }

    pub fn push_comment(&mut self, comment: impl Into<String>) {
        self.comments.push(comment.into());
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    /// True iff every clause contains a literal satisfied by `assignment`.
    ///
    /// Panics if the assignment is not total over this formula's variables.
    pub fn evaluate(&self, assignment: &Assignment) -> bool {
        assert_eq!(
            assignment.num_vars(),
            self.num_vars,
            "assignment must be total over the formula's variables"
        );
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|&lit| assignment.satisfies(lit)))
    }

    /// Per-clause `(positive, negative)` variable masks for bit-parallel
    /// evaluation.  Only valid for formulas with at most 64 variables.
    pub(crate) fn clause_masks(&self) -> Vec<(u64, u64)> {
        assert!(self.num_vars <= 64);
        self.clauses
            .iter()
            .map(|clause| {
                let mut pos = 0u64;
                let mut neg = 0u64;
                for &lit in clause {
                    let bit = 1u64 << (lit.var() - 1);
                    if lit.is_positive() {
                        pos |= bit;
                    } else {
                        neg |= bit;
                    }
                }
                (pos, neg)
            })
            .collect()
    }
}

/// A formula in disjunctive normal form: a disjunction of conjunctive terms.
///
/// An empty term list is the constant false; an empty term is the constant
/// true.  Terms obey the same literal constraints as CNF clauses, with
/// internally contradictory terms rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnfFormula {
    num_vars: u32,
    terms: Vec<Vec<Lit>>,
}

impl DnfFormula {
    pub fn new(num_vars: u32) -> DnfFormula {
        assert!(num_vars >= 1, "a formula needs at least one variable");
        DnfFormula {
            num_vars,
            terms: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn terms(&self) -> &[Vec<Lit>] {
        &self.terms
    }

    pub fn add_term<I>(&mut self, lits: I) -> Result<(), FormulaError>
    where
        I: IntoIterator<Item = Lit>,
    {
        let term = normalize_lits(lits, self.num_vars, false)?;
        self.terms.push(term);
        Ok(())
    }

    pub fn add_term_dimacs(&mut self, raw: &[i32]) -> Result<(), FormulaError> {
        let lits = raw
            .iter()
            .map(|&l| Lit::from_dimacs(l))
            .collect::<Result<Vec<_>, _>>()?;
        self.add_term(lits)
    }

    pub fn from_terms(num_vars: u32, terms: &[&[i32]]) -> Result<DnfFormula, FormulaError> {
        let mut d = DnfFormula::new(num_vars);
        for term in terms {
            d.add_term_dimacs(term)?;
        }
        Ok(d)
    }

    /// True iff some term has all its literals satisfied by `assignment`.
    pub fn evaluate(&self, assignment: &Assignment) -> bool {
        assert_eq!(assignment.num_vars(), self.num_vars);
        self.terms
            .iter()
            .any(|term| term.iter().all(|&lit| assignment.satisfies(lit)))
    }

    /// The De Morgan negation as a CNF formula over the same variables.
    ///
    /// Each term becomes one clause of negated literals, so the model count
    /// of the result is `2^num_vars` minus the model count of this DNF.
    pub fn complement_cnf(&self) -> CnfFormula {
        let mut f = CnfFormula::new(self.num_vars);
        for term in &self.terms {
            f.add_clause(term.iter().map(|&lit| -lit))
                .expect("negating a contradiction-free term cannot build a tautology");
        }
        f.push_comment("countlab: dnf_complement_cnf".to_string());
        f
    }
}

/// Free-function form of [`DnfFormula::complement_cnf`].
pub fn dnf_complement_cnf(dnf: &DnfFormula) -> CnfFormula {
    dnf.complement_cnf()
}
