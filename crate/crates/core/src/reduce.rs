//! Reduction of an invariant tuple to its closed-manifold part.
//!
//! A space with invariants `{b; ε, g, (f,k1), (t,k2), (s,k3); pairs; r; q}`
//! splits, up to equivariant equivalence, as a connected sum of the closed
//! 3-manifold with invariants `{b; ε, g, (f+s, k1+k3), (t,k2); pairs}` and
//! one suspension of the projective plane per two topologically singular
//! points. Each SF-block trades for an F-block of the matching twistedness
//! and its singular points move into the suspension summands.

use crate::tuple::{
    BlockCensus, EpsilonClass, InvariantTuple, ObstructionTerm, Regime, SeifertPair,
};
use crate::validate::{NotAdmissible, ValidationReport};

/// Invariants of a closed 3-manifold with an effective local circle
/// action: an invariant tuple with no SF-blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ManifoldInvariants {
    pub b: ObstructionTerm,
    pub epsilon: EpsilonClass,
    pub genus: u32,
    pub f: u32,
    pub k1: u32,
    pub t: u32,
    pub k2: u32,
    pub seifert: Vec<SeifertPair>,
}

impl ManifoldInvariants {
    /// The same data as a full invariant tuple with `s = 0`.
    pub fn embed(&self) -> InvariantTuple {
        InvariantTuple {
            b: self.b,
            epsilon: self.epsilon,
            genus: self.genus,
            census: BlockCensus::new(self.f, self.k1, self.t, self.k2, 0, 0),
            seifert: self.seifert.clone(),
            singular: Default::default(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        self.embed().validate()
    }
}

/// Result of splitting off the suspension summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub manifold: ManifoldInvariants,
    /// Number of suspension-of-projective-plane connected summands,
    /// half the number of topologically singular points.
    pub summands: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error(transparent)]
    NotAdmissible(#[from] NotAdmissible),
    /// The input's obstruction is nonzero in a regime that the reduced
    /// census forces to zero (`f + t = 0`, `s > 0`, `b ≠ 0`). Reported
    /// instead of silently zeroing `b`.
    #[error("obstruction conflict: b = {value} ({old}) but the reduced census forces {new}")]
    ObstructionConflict {
        value: i64,
        old: Regime,
        new: Regime,
    },
    /// The reduced tuple failed validation; this indicates an internal
    /// rule inconsistency and must surface loudly.
    #[error("internal: reduced manifold tuple is not admissible: {0}")]
    Internal(ValidationReport),
}

impl InvariantTuple {
    /// Whether the space is a topological manifold, i.e. carries no
    /// topologically singular points (`s = 0`).
    pub fn is_manifold(&self) -> bool {
        self.census.s == 0
    }

    /// Splits the tuple into its closed-manifold part and the count of
    /// suspension summands.
    pub fn reduce_to_manifold(&self) -> Result<ReductionResult, ReduceError> {
        let canonical = self.canonicalize()?.into_tuple();
        let c = canonical.census;
        let f = c.f + c.s;
        let k1 = c.k1 + c.k3;

        let old = canonical.b.regime;
        let new = Regime::for_context(canonical.epsilon, f as u64 + c.t as u64, &canonical.seifert);
        if new != old && !new.admits(canonical.b.value) {
            return Err(ReduceError::ObstructionConflict {
                value: canonical.b.value,
                old,
                new,
            });
        }

        let manifold = ManifoldInvariants {
            b: ObstructionTerm::new(new.reduce(canonical.b.value), new),
            epsilon: canonical.epsilon,
            genus: canonical.genus,
            f,
            k1,
            t: c.t,
            k2: c.k2,
            seifert: canonical.seifert,
        };
        let report = manifold.validate();
        if !report.ok() {
            return Err(ReduceError::Internal(report));
        }
        Ok(ReductionResult {
            manifold,
            summands: canonical.singular.total() / 2,
        })
    }
}
