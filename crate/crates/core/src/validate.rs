//! Admissibility rules for invariant tuples.
//!
//! `validate` never fails: it accepts arbitrary field values and returns
//! a report listing every violated rule, not just the first. The rules:
//!
//! * `k_bounds` — `k1 ≤ f`, `k2 ≤ t`, `k3 ≤ s`.
//! * `k_parity` — `k = k1 + k2 + k3` is even.
//! * `epsilon_k` — `o`, `n` only with `k > 0`; `o1`, `o2`, `n1`–`n4` only with `k = 0`.
//! * `genus_floor` — per-class minimum genus.
//! * `seifert_range` — `α ≥ 2` and `0 < β < α` for every pair.
//! * `seifert_coprime` — `gcd(α, β) = 1` for every pair.
//! * `singular_length` — `r` has `s − k3` entries, `q` has `k3`.
//! * `singular_even` — every `r`/`q` entry is even.
//! * `singular_min` — every `r`/`q` entry is at least 2 (strict mode; the
//!   lenient path coerces zero entries away instead, see
//!   [`InvariantTuple::validate_lenient`]).
//! * `b_regime` — the stored regime equals the one recomputed from the tuple.
//! * `b_value` — the stored value is admissible in the recomputed regime.
//!
//! A boundary-free tuple (`f + t + n + s = 0`) needs no rule of its own:
//! `k_bounds` already forces `k = 0` there.

use std::fmt;

use crate::tuple::InvariantTuple;

/// Identifiers of the admissibility rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    EpsilonK,
    GenusFloor,
    KParity,
    KBounds,
    SeifertRange,
    SeifertCoprime,
    SingularEven,
    SingularMin,
    SingularLength,
    BRegime,
    BValue,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::EpsilonK => "epsilon_k",
            Rule::GenusFloor => "genus_floor",
            Rule::KParity => "k_parity",
            Rule::KBounds => "k_bounds",
            Rule::SeifertRange => "seifert_range",
            Rule::SeifertCoprime => "seifert_coprime",
            Rule::SingularEven => "singular_even",
            Rule::SingularMin => "singular_min",
            Rule::SingularLength => "singular_length",
            Rule::BRegime => "b_regime",
            Rule::BValue => "b_value",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One violated rule with a human-readable explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.message)
    }
}

/// A zero-entry coercion performed by the lenient path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coercion {
    pub message: String,
}

/// Outcome of validation: empty `violations` means the tuple is admissible.
/// `coercions` is non-empty only on the lenient path.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub coercions: Vec<Coercion>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    /// The violated rules in report order, deduplicated.
    pub fn violated_rules(&self) -> Vec<Rule> {
        let mut rules: Vec<Rule> = Vec::new();
        for v in &self.violations {
            if !rules.contains(&v.rule) {
                rules.push(v.rule);
            }
        }
        rules
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            f.write_str("ok")
        } else {
            let mut first = true;
            for v in &self.violations {
                if !first {
                    f.write_str("; ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            Ok(())
        }
    }
}

/// Error carried by every operation whose precondition is an admissible tuple.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not admissible: {0}")]
pub struct NotAdmissible(pub ValidationReport);

impl InvariantTuple {
    /// Checks every admissibility rule and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let c = &self.census;

        if c.k1 > c.f {
            violations.push(Violation {
                rule: Rule::KBounds,
                message: format!("k1 = {} exceeds f = {}", c.k1, c.f),
            });
        }
        if c.k2 > c.t {
            violations.push(Violation {
                rule: Rule::KBounds,
                message: format!("k2 = {} exceeds t = {}", c.k2, c.t),
            });
        }
        if c.k3 > c.s {
            violations.push(Violation {
                rule: Rule::KBounds,
                message: format!("k3 = {} exceeds s = {}", c.k3, c.s),
            });
        }

        let k = c.k();
        if !k.is_multiple_of(2) {
            violations.push(Violation {
                rule: Rule::KParity,
                message: format!("k = k1 + k2 + k3 = {k} must be even"),
            });
        }

        if self.epsilon.requires_positive_k() && k == 0 {
            violations.push(Violation {
                rule: Rule::EpsilonK,
                message: format!("class {} is only legal with k > 0", self.epsilon),
            });
        }
        if !self.epsilon.requires_positive_k() && k > 0 {
            violations.push(Violation {
                rule: Rule::EpsilonK,
                message: format!(
                    "class {} is only legal with k = 0, but k = {k}",
                    self.epsilon
                ),
            });
        }

        let floor = self.epsilon.genus_floor();
        if self.genus < floor {
            violations.push(Violation {
                rule: Rule::GenusFloor,
                message: format!(
                    "class {} needs genus >= {floor}, got {}",
                    self.epsilon, self.genus
                ),
            });
        }

        for pair in &self.seifert {
            if !pair.in_range() {
                violations.push(Violation {
                    rule: Rule::SeifertRange,
                    message: format!("pair {pair} must satisfy alpha >= 2 and 0 < beta < alpha"),
                });
            }
            if !pair.coprime() {
                violations.push(Violation {
                    rule: Rule::SeifertCoprime,
                    message: format!("pair {pair} must have coprime entries"),
                });
            }
        }

        // Length checks only make sense once k3 <= s holds.
        if c.k3 <= c.s {
            let expected_r = (c.s - c.k3) as usize;
            if self.singular.r.len() != expected_r {
                violations.push(Violation {
                    rule: Rule::SingularLength,
                    message: format!(
                        "r has {} entries but s - k3 = {expected_r}",
                        self.singular.r.len()
                    ),
                });
            }
            if self.singular.q.len() != c.k3 as usize {
                violations.push(Violation {
                    rule: Rule::SingularLength,
                    message: format!(
                        "q has {} entries but k3 = {}",
                        self.singular.q.len(),
                        c.k3
                    ),
                });
            }
        }

        for (list, value) in self
            .singular
            .r
            .iter()
            .map(|&v| ("r", v))
            .chain(self.singular.q.iter().map(|&v| ("q", v)))
        {
            if !value.is_multiple_of(2) {
                violations.push(Violation {
                    rule: Rule::SingularEven,
                    message: format!("{list} entry {value} must be even"),
                });
            }
            if value < 2 {
                violations.push(Violation {
                    rule: Rule::SingularMin,
                    message: format!("{list} entry {value} must be at least 2"),
                });
            }
        }

        let recomputed = self.recomputed_regime();
        if self.b.regime != recomputed {
            violations.push(Violation {
                rule: Rule::BRegime,
                message: format!(
                    "b claims regime {} but the tuple imposes {recomputed}",
                    self.b.regime
                ),
            });
        }
        if !recomputed.admits(self.b.value) {
            violations.push(Violation {
                rule: Rule::BValue,
                message: format!(
                    "b = {} is not admissible in regime {recomputed}",
                    self.b.value
                ),
            });
        }

        let report = ValidationReport {
            violations,
            coercions: Vec::new(),
        };
        if report.ok() {
            debug_assert_eq!(self.epsilon.requires_positive_k(), k > 0);
        }
        report
    }

    /// Lenient variant: zero entries in `r`/`q` (SF-blocks carrying no
    /// singular points) degenerate to the corresponding F-blocks before
    /// validation. A zero `r`-entry becomes a simple F-block
    /// (`s -= 1, f += 1`), a zero `q`-entry a twisted one
    /// (`s -= 1, k3 -= 1, f += 1, k1 += 1`); `k` is unchanged. The
    /// obstruction regime is recomputed for the coerced census, so a
    /// nonzero `b` that the coercion forces to zero surfaces as a
    /// violation instead of being zeroed silently.
    ///
    /// Returns the coerced tuple together with a report on it; the
    /// report's `coercions` record each rewrite.
    pub fn validate_lenient(&self) -> (InvariantTuple, ValidationReport) {
        let mut tuple = self.clone();
        let mut coercions = Vec::new();

        let zero_r = tuple.singular.r.iter().filter(|&&v| v == 0).count() as u32;
        if zero_r > 0 {
            tuple.singular.r.retain(|&v| v != 0);
            tuple.census.s = tuple.census.s.saturating_sub(zero_r);
            tuple.census.f += zero_r;
            coercions.push(Coercion {
                message: format!(
                    "{zero_r} zero r-entr{} coerced to simple F-block{} (s -= {zero_r}, f += {zero_r})",
                    if zero_r == 1 { "y" } else { "ies" },
                    if zero_r == 1 { "" } else { "s" },
                ),
            });
        }

        let zero_q = tuple.singular.q.iter().filter(|&&v| v == 0).count() as u32;
        if zero_q > 0 {
            tuple.singular.q.retain(|&v| v != 0);
            tuple.census.s = tuple.census.s.saturating_sub(zero_q);
            tuple.census.k3 = tuple.census.k3.saturating_sub(zero_q);
            tuple.census.f += zero_q;
            tuple.census.k1 += zero_q;
            coercions.push(Coercion {
                message: format!(
                    "{zero_q} zero q-entr{} coerced to twisted F-block{} (s -= {zero_q}, k3 -= {zero_q}, f += {zero_q}, k1 += {zero_q})",
                    if zero_q == 1 { "y" } else { "ies" },
                    if zero_q == 1 { "" } else { "s" },
                ),
            });
        }

        tuple.b.regime = tuple.recomputed_regime();
        let mut report = tuple.validate();
        report.coercions = coercions;
        (tuple, report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::{
        BlockCensus, EpsilonClass, ObstructionTerm, Regime, SeifertPair, SingularDistribution,
    };

    fn tuple(
        b: ObstructionTerm,
        epsilon: EpsilonClass,
        genus: u32,
        census: BlockCensus,
        seifert: Vec<SeifertPair>,
        r: Vec<u32>,
        q: Vec<u32>,
    ) -> InvariantTuple {
        InvariantTuple {
            b,
            epsilon,
            genus,
            census,
            seifert,
            singular: SingularDistribution::new(r, q),
        }
    }

    #[test]
    fn empty_tuple_is_admissible() {
        assert!(InvariantTuple::empty().validate().ok());
    }

    #[test]
    fn free_b_with_fixed_points_violates_regime() {
        // b = 1 claimed free while f + t > 0 forces zero.
        let t = tuple(
            ObstructionTerm::new(1, Regime::Free),
            EpsilonClass::O1,
            0,
            BlockCensus::new(1, 0, 0, 0, 0, 0),
            vec![],
            vec![],
            vec![],
        );
        let report = t.validate();
        assert!(report.has(Rule::BRegime));
        assert!(report.has(Rule::BValue));
        assert!(!report.ok());
    }

    #[test]
    fn genus_floor_violation() {
        let t = tuple(
            ObstructionTerm::new(0, Regime::ModTwo),
            EpsilonClass::N3,
            1,
            BlockCensus::EMPTY,
            vec![],
            vec![],
            vec![],
        );
        let report = t.validate();
        assert_eq!(report.violated_rules(), vec![Rule::GenusFloor]);
    }

    #[test]
    fn odd_k_violates_parity() {
        let t = tuple(
            ObstructionTerm::new(0, Regime::ForcedZero),
            EpsilonClass::O1,
            0,
            BlockCensus::new(1, 1, 0, 0, 0, 0),
            vec![],
            vec![],
            vec![],
        );
        let report = t.validate();
        assert!(report.has(Rule::KParity));
        // o1 with k = 1 > 0 also violates the collapse rule.
        assert!(report.has(Rule::EpsilonK));
    }

    #[test]
    fn non_coprime_pair_is_rejected() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::EMPTY,
            vec![SeifertPair::new(4, 2)],
            vec![],
            vec![],
        );
        let report = t.validate();
        assert_eq!(report.violated_rules(), vec![Rule::SeifertCoprime]);
    }

    #[test]
    fn out_of_range_pair_is_rejected() {
        for pair in [SeifertPair::new(1, 1), SeifertPair::new(3, 5)] {
            let t = InvariantTuple::new(
                0,
                EpsilonClass::O1,
                0,
                BlockCensus::EMPTY,
                vec![pair],
                vec![],
                vec![],
            );
            assert!(t.validate().has(Rule::SeifertRange), "pair {pair}");
        }
    }

    #[test]
    fn singular_entry_rules() {
        let odd = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(0, 0, 0, 0, 1, 0),
            vec![],
            vec![3],
            vec![],
        );
        assert_eq!(odd.validate().violated_rules(), vec![Rule::SingularEven]);

        let zero = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(0, 0, 0, 0, 1, 0),
            vec![],
            vec![0],
            vec![],
        );
        assert_eq!(zero.validate().violated_rules(), vec![Rule::SingularMin]);

        let short = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(0, 0, 0, 0, 2, 0),
            vec![],
            vec![2],
            vec![],
        );
        assert_eq!(short.validate().violated_rules(), vec![Rule::SingularLength]);
    }

    #[test]
    fn k_bounds_guard_length_check() {
        // k3 > s: report the bound violation, skip the length rule.
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O,
            0,
            BlockCensus::new(0, 0, 0, 0, 1, 2),
            vec![],
            vec![],
            vec![2, 2],
        );
        let report = t.validate();
        assert!(report.has(Rule::KBounds));
        assert!(!report.has(Rule::SingularLength));
    }

    #[test]
    fn valid_twisted_tuple() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::N,
            1,
            BlockCensus::new(2, 1, 1, 1, 0, 0),
            vec![],
            vec![],
            vec![],
        );
        assert!(t.validate().ok());
    }

    #[test]
    fn lenient_zero_r_entry_becomes_f_block() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(0, 0, 0, 0, 2, 0),
            vec![],
            vec![0, 2],
            vec![],
        );
        assert!(!t.validate().ok());
        let (coerced, report) = t.validate_lenient();
        assert!(report.ok(), "{report}");
        assert_eq!(report.coercions.len(), 1);
        assert_eq!(coerced.census.s, 1);
        assert_eq!(coerced.census.f, 1);
        assert_eq!(coerced.singular.r, vec![2]);
        // The coerced tuple now has f + t > 0, so its regime is forced.
        assert_eq!(coerced.b.regime, Regime::ForcedZero);
    }

    #[test]
    fn lenient_zero_q_entry_becomes_twisted_f_block() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O,
            0,
            BlockCensus::new(0, 0, 1, 1, 1, 1),
            vec![],
            vec![],
            vec![0],
        );
        let (coerced, report) = t.validate_lenient();
        assert!(report.ok(), "{report}");
        assert_eq!(coerced.census, BlockCensus::new(1, 1, 1, 1, 0, 0));
        assert!(coerced.singular.q.is_empty());
    }

    #[test]
    fn lenient_surfaces_forced_nonzero_b() {
        // b = 1 is free while s carries the only blocks; the coercion
        // moves the block to f, forcing b = 0, and must not hide that.
        let t = InvariantTuple::new(
            1,
            EpsilonClass::O1,
            0,
            BlockCensus::new(0, 0, 0, 0, 1, 0),
            vec![],
            vec![0],
            vec![],
        );
        let (coerced, report) = t.validate_lenient();
        assert_eq!(coerced.b.regime, Regime::ForcedZero);
        assert_eq!(coerced.b.value, 1);
        assert!(report.has(Rule::BValue));
    }

    #[test]
    fn strict_reports_enumerate_all_rules() {
        // A tuple violating several rules at once lists each of them.
        let t = tuple(
            ObstructionTerm::new(5, Regime::Free),
            EpsilonClass::N4,
            0,
            BlockCensus::new(0, 1, 0, 0, 1, 0),
            vec![SeifertPair::new(4, 2)],
            vec![1],
            vec![],
        );
        let report = t.validate();
        for rule in [
            Rule::KBounds,
            Rule::KParity,
            Rule::GenusFloor,
            Rule::SeifertCoprime,
            Rule::SingularEven,
            Rule::SingularMin,
            Rule::BRegime,
        ] {
            assert!(report.has(rule), "missing {rule}");
        }
    }
}
