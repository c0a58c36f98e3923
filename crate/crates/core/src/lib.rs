//! A combinatorial calculus for the classification invariants of closed
//! three-dimensional Alexandrov spaces carrying an effective, isometric
//! local circle action.
//!
//! Such a space is determined up to equivariant equivalence by an
//! unordered tuple
//!
//! ```text
//! {b; ε, g, (f, k1), (t, k2), (s, k3); {(αᵢ, βᵢ)}; (r₁, …); (q₁, …)}
//! ```
//!
//! and splits as a connected sum of a closed 3-manifold with a local
//! circle action and one suspension of the real projective plane per two
//! topologically singular points. This crate validates such tuples,
//! computes canonical forms and decides equivalence ([`tuple`],
//! [`validate`]), performs the manifold reduction ([`reduce`]), emits and
//! inverts explicit assembly plans ([`assembly`]), translates collapse
//! decompositions into blocks ([`collapse`]), and enumerates all classes
//! under size bounds ([`enumerate`]).
//!
//! Everything is a pure function of immutable values: no I/O, no shared
//! state, safe to call from any number of threads.

pub mod assembly;
pub mod collapse;
pub mod enumerate;
pub mod reduce;
pub mod tuple;
pub mod validate;

pub use assembly::{
    read_off_invariants, AssemblyPlan, BaseSurface, BlockKind, BlockSpec, BundleClass, PlanError,
    Route,
};
pub use collapse::{
    CollapseDecomposition, CollapsePiece, Completion, IncompatibleCollapse, InteriorInvariants,
    PartialInvariantTuple, SeifertPartDescriptor, Type0Variant,
};
pub use enumerate::{
    count_classes, enumerate_valid, enumerate_valid_capped, random_valid, visit_census, Bounds,
    EnumerateError, DEFAULT_CAP,
};
pub use reduce::{ManifoldInvariants, ReduceError, ReductionResult};
pub use tuple::{
    BlockCensus, CanonicalForm, EpsilonClass, FiberSpaceSummary, InvariantTuple, ObstructionTerm,
    Regime, SeifertPair, SingularDistribution,
};
pub use validate::{Coercion, NotAdmissible, Rule, ValidationReport, Violation};
