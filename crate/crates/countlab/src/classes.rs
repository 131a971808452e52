//! Acceptance criteria over count profiles.
//!
//! A [`ClassSpec`] pairs an acceptance predicate with a rejection predicate
//! over `(accepted, path_exponent)` profiles.  Syntactic specs partition all
//! profiles between the two sets; semantic (promise) specs leave a gap, and
//! profiles falling in the gap classify as [`Verdict::PromiseViolated`].
//!
//! Comparisons against the half-point `2^(p-1)` are implemented in doubled
//! form (`2 * accepted` vs `2^p`) so they stay exact for every path
//! exponent, including `p = 0`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::counting::{gap_value, is_mersenne, is_power_of_two, CountProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// Accept and reject sets cover every profile.
    Syntactic,
    /// Profiles outside both sets violate the promise.
    Semantic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    PromiseViolated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Accept => write!(f, "Accept"),
            Verdict::Reject => write!(f, "Reject"),
            Verdict::PromiseViolated => write!(f, "PromiseViolated"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("class {class} needs the {param} parameter")]
    MissingAux { class: String, param: &'static str },
    #[error("class {class}: {msg}")]
    InvalidAux { class: String, msg: String },
}

/// The acceptance/rejection criterion implemented by a spec.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Criterion {
    /// accept: count = 1; reject: count = 0
    Unambiguous,
    /// accept: 1 <= count <= k; reject: count = 0
    BoundedAmbiguity,
    /// accept: 1 <= count <= q; reject: count = 0
    Few,
    /// accept: count = 2^t, t >= 0; reject: count = 0
    PowerOfTwo,
    /// accept: count = 2^(p-1); reject: count = 0
    HalfPromise,
    /// accept: count = 2^(p-1); reject: otherwise
    HalfExact,
    /// accept: count = 2^t, t >= 0; reject: otherwise
    PowerOfTwoExact,
    /// accept: count > 2^(p-1); reject: otherwise
    Majority,
    /// accept: count = 1; reject: otherwise
    UniqueExact,
    /// accept: count odd; reject: otherwise
    Parity,
    /// accept: count > 2^(p-1); reject: count = 0
    MajorityPromise,
    /// accept: count > 2^(p-1); reject: count < 2^(p-1)
    BoundedError,
    /// accept: gap = 2; reject: gap = 0
    GapTwo,
    /// accept: gap = g (g nonzero); reject: gap = 0
    GapTarget,
    /// accept: count = 2^t - 1, t >= 1; reject: otherwise
    MersenneExact,
    /// accept: count = 2^t - 1, t >= 1; reject: count = 0
    MersennePromise,
    /// accept: count = f (f positive); reject: count = 0
    CountTarget,
    /// accept: count > 0; reject: count = 0
    Satisfiable,
}

/// Optional per-instance parameters consumed by some criteria.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuxParams {
    /// Ambiguity bound `k` (constant `k > 1`).
    pub ambiguity_bound: Option<BigUint>,
    /// Solution bound `q` for the few-solutions promise.
    pub few_bound: Option<BigUint>,
    /// Exact count target `f` (positive).
    pub count_target: Option<BigUint>,
    /// Exact gap target `g` (nonzero).
    pub gap_target: Option<BigInt>,
}

/// A named acceptance/rejection criterion pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    name: &'static str,
    kind: ClassKind,
    doc: &'static str,
    criterion: Criterion,
    aux: AuxParams,
}

impl ClassSpec {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    /// Human-readable statement of the acceptance and rejection criteria.
    pub fn doc(&self) -> &'static str {
        self.doc
    }

    pub fn aux(&self) -> &AuxParams {
        &self.aux
    }

    pub fn with_ambiguity_bound(mut self, k: impl Into<BigUint>) -> ClassSpec {
        self.aux.ambiguity_bound = Some(k.into());
        self
    }

    pub fn with_few_bound(mut self, q: impl Into<BigUint>) -> ClassSpec {
        self.aux.few_bound = Some(q.into());
        self
    }

    pub fn with_count_target(mut self, f: impl Into<BigUint>) -> ClassSpec {
        self.aux.count_target = Some(f.into());
        self
    }

    pub fn with_gap_target(mut self, g: impl Into<BigInt>) -> ClassSpec {
        self.aux.gap_target = Some(g.into());
        self
    }

    /// The plain satisfiability criterion (accept: count > 0).  Not part of
    /// [`spec_catalog`]; used by containment scans as the outer bound of
    /// every nonzero-acceptance promise class.
    pub fn satisfiable() -> ClassSpec {
        ClassSpec {
            name: "NP",
            kind: ClassKind::Syntactic,
            doc: "accept: count > 0; reject: count = 0",
            criterion: Criterion::Satisfiable,
            aux: AuxParams::default(),
        }
    }

    /// True iff the profile lies in the acceptance set.
    pub fn accepts(&self, profile: &CountProfile) -> Result<bool, ClassifyError> {
        let a = profile.accepted();
        // Half-point comparisons run in doubled form (2a vs 2^p), exact for
        // every path exponent including p = 0.
        Ok(match self.criterion {
            Criterion::Unambiguous | Criterion::UniqueExact => a.is_one(),
            Criterion::BoundedAmbiguity => {
                let k = self.require_ambiguity_bound()?;
                !a.is_zero() && a <= k
            }
            Criterion::Few => {
                let q = self.require_few_bound()?;
                !a.is_zero() && a <= q
            }
            Criterion::PowerOfTwo | Criterion::PowerOfTwoExact => is_power_of_two(a),
            Criterion::HalfPromise | Criterion::HalfExact => a * 2u32 == profile.total_paths(),
            Criterion::Majority | Criterion::MajorityPromise | Criterion::BoundedError => {
                a * 2u32 > profile.total_paths()
            }
            Criterion::Parity => a.bit(0),
            Criterion::GapTwo => gap_value(profile).value() == &BigInt::from(2),
            Criterion::GapTarget => {
                let g = self.require_gap_target()?;
                gap_value(profile).value() == g
            }
            Criterion::MersenneExact | Criterion::MersennePromise => is_mersenne(a),
            Criterion::CountTarget => {
                let f = self.require_count_target()?;
                a == f
            }
            Criterion::Satisfiable => !a.is_zero(),
        })
    }

    /// True iff the profile lies in the rejection set.
    pub fn rejects(&self, profile: &CountProfile) -> Result<bool, ClassifyError> {
        let a = profile.accepted();
        Ok(match self.criterion {
            // Syntactic criteria reject exactly the complement of acceptance.
            Criterion::UniqueExact
            | Criterion::HalfExact
            | Criterion::PowerOfTwoExact
            | Criterion::Majority
            | Criterion::Parity
            | Criterion::MersenneExact
            | Criterion::Satisfiable => !self.accepts(profile)?,
            // Zero-rejection promise criteria.
            Criterion::Unambiguous
            | Criterion::BoundedAmbiguity
            | Criterion::Few
            | Criterion::PowerOfTwo
            | Criterion::HalfPromise
            | Criterion::MajorityPromise
            | Criterion::MersennePromise
            | Criterion::CountTarget => {
                self.validate_aux()?;
                a.is_zero()
            }
            Criterion::BoundedError => a * 2u32 < profile.total_paths(),
            Criterion::GapTwo => gap_value(profile).value().is_zero(),
            Criterion::GapTarget => {
                self.validate_aux()?;
                gap_value(profile).value().is_zero()
            }
        })
    }

    fn require_ambiguity_bound(&self) -> Result<&BigUint, ClassifyError> {
        let k = self
            .aux
            .ambiguity_bound
            .as_ref()
            .ok_or(ClassifyError::MissingAux {
                class: self.name.to_string(),
                param: "ambiguity bound k",
            })?;
        if *k < BigUint::from(2u32) {
            return Err(ClassifyError::InvalidAux {
                class: self.name.to_string(),
                msg: format!("ambiguity bound must be a constant k > 1, got {k}"),
            });
        }
        Ok(k)
    }

    fn require_few_bound(&self) -> Result<&BigUint, ClassifyError> {
        let q = self
            .aux
            .few_bound
            .as_ref()
            .ok_or(ClassifyError::MissingAux {
                class: self.name.to_string(),
                param: "solution bound q",
            })?;
        if q.is_zero() {
            return Err(ClassifyError::InvalidAux {
                class: self.name.to_string(),
                msg: "solution bound q must be positive".to_string(),
            });
        }
        Ok(q)
    }

    fn require_count_target(&self) -> Result<&BigUint, ClassifyError> {
        let f = self
            .aux
            .count_target
            .as_ref()
            .ok_or(ClassifyError::MissingAux {
                class: self.name.to_string(),
                param: "count target f",
            })?;
        if f.is_zero() {
            // A zero target would make the accept and reject sets overlap.
            return Err(ClassifyError::InvalidAux {
                class: self.name.to_string(),
                msg: "count target f must be positive".to_string(),
            });
        }
        Ok(f)
    }

    fn require_gap_target(&self) -> Result<&BigInt, ClassifyError> {
        let g = self
            .aux
            .gap_target
            .as_ref()
            .ok_or(ClassifyError::MissingAux {
                class: self.name.to_string(),
                param: "gap target g",
            })?;
        if g.is_zero() {
            return Err(ClassifyError::InvalidAux {
                class: self.name.to_string(),
                msg: "gap target g must be nonzero".to_string(),
            });
        }
        Ok(g)
    }

    /// Checks that every parameter this criterion needs is present and valid.
    fn validate_aux(&self) -> Result<(), ClassifyError> {
        match self.criterion {
            Criterion::BoundedAmbiguity => self.require_ambiguity_bound().map(|_| ()),
            Criterion::Few => self.require_few_bound().map(|_| ()),
            Criterion::CountTarget => self.require_count_target().map(|_| ()),
            Criterion::GapTarget => self.require_gap_target().map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Classifies a profile: `Accept` if the acceptance set holds, `Reject`
    /// if the rejection set holds, `PromiseViolated` otherwise.  Syntactic
    /// specs never return `PromiseViolated`.
    pub fn classify(&self, profile: &CountProfile) -> Result<Verdict, ClassifyError> {
        if self.accepts(profile)? {
            Ok(Verdict::Accept)
        } else if self.rejects(profile)? {
            Ok(Verdict::Reject)
        } else {
            debug_assert_eq!(self.kind, ClassKind::Semantic);
            Ok(Verdict::PromiseViolated)
        }
    }
}

/// Free-function form of [`ClassSpec::classify`].
pub fn classify(profile: &CountProfile, spec: &ClassSpec) -> Result<Verdict, ClassifyError> {
    spec.classify(profile)
}

macro_rules! spec {
    ($name:literal, $kind:ident, $criterion:ident, $doc:literal) => {
        ClassSpec {
            name: $name,
            kind: ClassKind::$kind,
            doc: $doc,
            criterion: Criterion::$criterion,
            aux: AuxParams::default(),
        }
    };
}

/// All built-in class specs.
///
/// `RP` and `BPP` use the strict-majority reading: acceptance is
/// `count > 2^(p-1)`, `BPP` rejection is `count < 2^(p-1)`, and a `BPP`
/// profile sitting exactly on the half-point violates the promise.
pub fn spec_catalog() -> Vec<ClassSpec> {
    vec![
        spec!(
            "UP",
            Semantic,
            Unambiguous,
            "accept: count = 1; reject: count = 0"
        ),
        spec!(
            "UPk",
            Semantic,
            BoundedAmbiguity,
            "accept: 1 <= count <= k (constant k > 1); reject: count = 0"
        ),
        spec!(
            "FewP",
            Semantic,
            Few,
            "accept: 1 <= count <= q; reject: count = 0"
        ),
        spec!(
            "EP",
            Semantic,
            PowerOfTwo,
            "accept: count = 2^t for some t >= 0; reject: count = 0"
        ),
        spec!(
            "Half_P",
            Semantic,
            HalfPromise,
            "accept: count = 2^(p-1); reject: count = 0"
        ),
        spec!(
            "C=P",
            Syntactic,
            HalfExact,
            "accept: count = 2^(p-1); reject: otherwise"
        ),
        spec!(
            "ES",
            Syntactic,
            PowerOfTwoExact,
            "accept: count = 2^t for some t >= 0; reject: otherwise"
        ),
        spec!(
            "PP",
            Syntactic,
            Majority,
            "accept: count > 2^(p-1); reject: otherwise"
        ),
        spec!(
            "US",
            Syntactic,
            UniqueExact,
            "accept: count = 1; reject: otherwise"
        ),
        spec!(
            "ParityP",
            Syntactic,
            Parity,
            "accept: count odd; reject: otherwise"
        ),
        spec!(
            "RP",
            Semantic,
            MajorityPromise,
            "accept: count > 2^(p-1); reject: count = 0"
        ),
        spec!(
            "BPP",
            Semantic,
            BoundedError,
            "accept: count > 2^(p-1); reject: count < 2^(p-1)"
        ),
        spec!(
            "SPP",
            Semantic,
            GapTwo,
            "accept: gap = 2; reject: gap = 0 (gap = 2*count - 2^p)"
        ),
        spec!(
            "WPP",
            Semantic,
            GapTarget,
            "accept: gap = g (nonzero); reject: gap = 0"
        ),
        spec!(
            "MNS",
            Syntactic,
            MersenneExact,
            "accept: count = 2^t - 1 for some t >= 1; reject: otherwise"
        ),
        spec!(
            "MNP",
            Semantic,
            MersennePromise,
            "accept: count = 2^t - 1 for some t >= 1; reject: count = 0"
        ),
        spec!(
            "F=P",
            Semantic,
            CountTarget,
            "accept: count = f (positive); reject: count = 0"
        ),
    ]
}

/// Looks up a built-in spec by name (case-insensitive).
pub fn spec_by_name(name: &str) -> Option<ClassSpec> {
    spec_catalog()
        .into_iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
}

/// All profiles with `path_exponent <= p_max` where `inner` accepts but
/// `outer` does not.  An empty result certifies the acceptance-set
/// containment at this scale.  `p_max` is capped at 20.
pub fn containment_witness_scan(
    outer: &ClassSpec,
    inner: &ClassSpec,
    p_max: u32,
) -> Result<Vec<CountProfile>, ClassifyError> {
    assert!(
        p_max <= 20,
        "containment scans are capped at path exponent 20"
    );
    let mut witnesses = Vec::new();
    for p in 0..=p_max {
        for a in 0..=1u64 << p {
            let profile = CountProfile::new(a, p);
            if inner.accepts(&profile)? && !outer.accepts(&profile)? {
                witnesses.push(profile);
            }
        }
    }
    Ok(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(accepted: u64, path_exponent: u32) -> CountProfile {
        CountProfile::new(accepted, path_exponent)
    }

    fn by_name(name: &str) -> ClassSpec {
        spec_by_name(name).unwrap()
    }

    #[test]
    fn catalog_has_seventeen_specs() {
        let catalog = spec_catalog();
        assert_eq!(catalog.len(), 17);
        let names: Vec<_> = catalog.iter().map(|s| s.name()).collect();
        assert_eq!(names.len(), {
            let mut unique = names.clone();
            unique.dedup();
            unique.len()
        });
    }

    #[test]
    fn catalog_kinds_match_definitions() {
        assert_eq!(by_name("MNS").kind(), ClassKind::Syntactic);
        assert_eq!(by_name("F=P").kind(), ClassKind::Semantic);
        assert_eq!(by_name("MNP").kind(), ClassKind::Semantic);
        assert_eq!(by_name("C=P").kind(), ClassKind::Syntactic);
    }

    #[test]
    fn classify_spec_cases() {
        assert_eq!(
            by_name("MNS").classify(&profile(7, 4)).unwrap(),
            Verdict::Accept
        );
        assert_eq!(
            by_name("C=P").classify(&profile(8, 4)).unwrap(),
            Verdict::Accept
        );
        assert_eq!(
            by_name("MNP").classify(&profile(5, 4)).unwrap(),
            Verdict::PromiseViolated
        );
        // Count 1 accepts under both EP and MNP.
        assert_eq!(
            by_name("EP").classify(&profile(1, 3)).unwrap(),
            Verdict::Accept
        );
        assert_eq!(
            by_name("MNP").classify(&profile(1, 3)).unwrap(),
            Verdict::Accept
        );
    }

    #[test]
    fn majority_strictness() {
        let pp = by_name("PP");
        assert_eq!(pp.classify(&profile(7, 4)).unwrap(), Verdict::Reject);
        assert_eq!(pp.classify(&profile(8, 4)).unwrap(), Verdict::Reject);
        assert_eq!(pp.classify(&profile(9, 4)).unwrap(), Verdict::Accept);
        // Exponent 0: a single path; one accepting path is a strict majority.
        assert_eq!(pp.classify(&profile(1, 0)).unwrap(), Verdict::Accept);
        assert_eq!(pp.classify(&profile(0, 0)).unwrap(), Verdict::Reject);
    }

    #[test]
    fn bpp_half_point_violates_promise() {
        let bpp = by_name("BPP");
        assert_eq!(bpp.classify(&profile(9, 4)).unwrap(), Verdict::Accept);
        assert_eq!(bpp.classify(&profile(7, 4)).unwrap(), Verdict::Reject);
        assert_eq!(
            bpp.classify(&profile(8, 4)).unwrap(),
            Verdict::PromiseViolated
        );
    }

    #[test]
    fn gap_criteria() {
        // 5 accepted of 2^3: gap = 2.
        let spp = by_name("SPP");
        assert_eq!(spp.classify(&profile(5, 3)).unwrap(), Verdict::Accept);
        assert_eq!(spp.classify(&profile(4, 3)).unwrap(), Verdict::Reject);
        assert_eq!(
            spp.classify(&profile(6, 3)).unwrap(),
            Verdict::PromiseViolated
        );

        let wpp = by_name("WPP").with_gap_target(-4);
        assert_eq!(wpp.classify(&profile(2, 3)).unwrap(), Verdict::Accept);
        assert_eq!(wpp.classify(&profile(4, 3)).unwrap(), Verdict::Reject);
    }

    #[test]
    fn aux_parameters_are_required_and_validated() {
        let fewp = by_name("FewP");
        assert!(matches!(
            fewp.classify(&profile(1, 2)),
            Err(ClassifyError::MissingAux { .. })
        ));
        let fewp = fewp.with_few_bound(3u32);
        assert_eq!(fewp.classify(&profile(3, 2)).unwrap(), Verdict::Accept);
        assert_eq!(
            fewp.classify(&profile(4, 3)).unwrap(),
            Verdict::PromiseViolated
        );

        let upk = by_name("UPk").with_ambiguity_bound(1u32);
        assert!(matches!(
            upk.classify(&profile(1, 2)),
            Err(ClassifyError::InvalidAux { .. })
        ));

        let fep = by_name("F=P").with_count_target(0u32);
        assert!(matches!(
            fep.classify(&profile(0, 2)),
            Err(ClassifyError::InvalidAux { .. })
        ));
        let fep = by_name("F=P").with_count_target(5u32);
        assert_eq!(fep.classify(&profile(5, 3)).unwrap(), Verdict::Accept);

        let wpp = by_name("WPP").with_gap_target(0);
        assert!(matches!(
            wpp.classify(&profile(0, 2)),
            Err(ClassifyError::InvalidAux { .. })
        ));
    }

    #[test]
    fn syntactic_specs_never_violate_promises() {
        for spec in spec_catalog() {
            if spec.kind() != ClassKind::Syntactic {
                continue;
            }
            for p in 0..=6 {
                for a in 0..=1u64 << p {
                    let v = spec.classify(&profile(a, p)).unwrap();
                    assert_ne!(v, Verdict::PromiseViolated, "{} a={a} p={p}", spec.name());
                }
            }
        }
    }

    #[test]
    fn containment_scan_spec_cases() {
        let ep = by_name("EP");
        let up = by_name("UP");
        assert!(containment_witness_scan(&ep, &up, 10).unwrap().is_empty());

        let mns = by_name("MNS");
        let us = by_name("US");
        assert!(containment_witness_scan(&mns, &us, 10).unwrap().is_empty());

        let mnp = by_name("MNP");
        let witnesses = containment_witness_scan(&mnp, &ep, 6).unwrap();
        assert!(!witnesses.is_empty());
        assert!(witnesses
            .iter()
            .any(|w| w.accepted() == &BigUint::from(4u32)));
    }

    #[test]
    fn satisfiable_spec_bounds_promise_classes() {
        let np = ClassSpec::satisfiable();
        let mnp = by_name("MNP");
        assert!(containment_witness_scan(&np, &mnp, 10).unwrap().is_empty());
    }
}
