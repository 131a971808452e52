//! Seeded formula corpora for the verification suites.
//!
//! Corpus generation is deterministic given a seed: random families use a
//! seeded ChaCha stream, structured families are fixed.  The random family
//! is k-CNF (width 3 where the variable count allows) at clause/variable
//! ratios {1, 2, 3, 4.26}; the structured families are unsatisfiable,
//! tautological, and single-model formulas plus fixed-count blocks.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::count_bruteforce;
use crate::formula::{CnfFormula, Lit};

/// Clause/variable ratios for the random family.
pub const RANDOM_RATIOS: [f64; 4] = [1.0, 2.0, 3.0, 4.26];

/// A plain CNF (no auxiliary variables) over `num_vars` variables with
/// exactly `k` models: the clausal encoding of `value <= k - 1` over the
/// standard binary encoding, variable 1 the most significant bit.
///
/// Panics if `k > 2^num_vars`.
pub fn block_with_count(num_vars: u32, k: &BigUint) -> CnfFormula {
    assert!(num_vars >= 1);
    let full = BigUint::one() << num_vars as usize;
    assert!(*k <= full, "requested count {k} exceeds 2^{num_vars}");

    let mut f = CnfFormula::new(num_vars);
    if k.is_zero() {
        f.add_clause(Vec::<Lit>::new()).unwrap();
        return f;
    }
    if *k == full {
        return f;
    }
    let bound = k - 1u32;
    // Forbid every witness of `value > bound`: a position where the prefix
    // matches the bound and the bound bit is 0 while the variable is 1.
    for var in 1..=num_vars {
        let bit = num_vars as u64 - var as u64;
        if bound.bit(bit) {
            continue;
        }
        let mut clause: Vec<Lit> = (1..var)
            .map(|prev| {
                let prev_bit = num_vars as u64 - prev as u64;
                if bound.bit(prev_bit) {
                    Lit::negative(prev)
                } else {
                    Lit::positive(prev)
                }
            })
            .collect();
        clause.push(Lit::negative(var));
        f.add_clause(clause).unwrap();
    }
    f
}

/// The constant-true formula (zero clauses).
pub fn tautological(num_vars: u32) -> CnfFormula {
    CnfFormula::new(num_vars)
}

/// Unsatisfiable via a conflicting unit pair, exercising propagation.
pub fn unsat_pair(num_vars: u32) -> CnfFormula {
    CnfFormula::from_clauses(num_vars, &[&[1], &[-1]]).unwrap()
}

/// Exactly one model: every variable forced true.
pub fn single_model(num_vars: u32) -> CnfFormula {
    let mut f = CnfFormula::new(num_vars);
    for var in 1..=num_vars {
        f.add_clause([Lit::positive(var)]).unwrap();
    }
    f
}

/// A random CNF with `num_clauses` clauses of `width` distinct variables
/// each, random polarities.  Distinct variables per clause rule out
/// tautological clauses.
pub fn random_kcnf(rng: &mut impl Rng, num_vars: u32, width: u32, num_clauses: u32) -> CnfFormula {
    assert!(width >= 1 && width <= num_vars);
    let mut f = CnfFormula::new(num_vars);
    for _ in 0..num_clauses {
        let mut vars: Vec<u32> = Vec::with_capacity(width as usize);
        while vars.len() < width as usize {
            let v = rng.gen_range(1..=num_vars);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let clause: Vec<Lit> = vars
            .into_iter()
            .map(|v| {
                if rng.gen_bool(0.5) {
                    Lit::positive(v)
                } else {
                    Lit::negative(v)
                }
            })
            .collect();
        f.add_clause(clause).unwrap();
    }
    f
}

/// Random 3-CNF (width capped by the variable count).
pub fn random_3cnf(rng: &mut impl Rng, num_vars: u32, num_clauses: u32) -> CnfFormula {
    random_kcnf(rng, num_vars, num_vars.min(3), num_clauses)
}

fn clauses_for_ratio(num_vars: u32, ratio: f64) -> u32 {
    ((ratio * num_vars as f64).round() as u32).max(1)
}

/// Per variable count in `n_min..=n_max`: the three structured formulas plus
/// one random formula at each ratio in [`RANDOM_RATIOS`].
pub fn standard_corpus(n_min: u32, n_max: u32, seed: u64) -> Vec<CnfFormula> {
    assert!(n_min >= 1 && n_min <= n_max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.push(tautological(n));
        out.push(unsat_pair(n));
        out.push(single_model(n));
        for ratio in RANDOM_RATIOS {
            out.push(random_3cnf(&mut rng, n, clauses_for_ratio(n, ratio)));
        }
    }
    out
}

/// A corpus of `total` formulas over `n_min..=n_max` variables: structured
/// families and fixed-count blocks first, then random fill cycling the
/// variable counts and ratios.
pub fn mixed_corpus(n_min: u32, n_max: u32, total: usize, seed: u64) -> Vec<CnfFormula> {
    assert!(n_min >= 1 && n_min <= n_max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.push(tautological(n));
        out.push(unsat_pair(n));
        out.push(single_model(n));
        out.push(block_with_count(n, &BigUint::one()));
        out.push(block_with_count(n, &(BigUint::one() << (n - 1) as usize)));
    }
    let mut n = n_min;
    let mut ratio_index = 0;
    while out.len() < total {
        let ratio = RANDOM_RATIOS[ratio_index];
        out.push(random_3cnf(&mut rng, n, clauses_for_ratio(n, ratio)));
        ratio_index = (ratio_index + 1) % RANDOM_RATIOS.len();
        n = if n == n_max { n_min } else { n + 1 };
    }
    out.truncate(total);
    out
}

/// Formulas whose model count is at most `max_count`: every fixed-count
/// block up to the bound plus random formulas filtered by brute-force count.
pub fn small_count_corpus(n_min: u32, n_max: u32, max_count: u64, seed: u64) -> Vec<CnfFormula> {
    assert!(n_min >= 1 && n_min <= n_max && n_max <= 16);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in n_min..=n_max {
        let ceiling = max_count.min(1 << n);
        for a in 0..=ceiling {
            out.push(block_with_count(n, &BigUint::from(a)));
        }
        let mut found = 0;
        for _ in 0..20 {
            if found == 2 {
                break;
            }
            let candidate = random_3cnf(&mut rng, n, clauses_for_ratio(n, 4.26));
            let count = count_bruteforce(&candidate).unwrap();
            if count.accepted() <= &BigUint::from(max_count) {
                out.push(candidate);
                found += 1;
            }
        }
    }
    out
}
