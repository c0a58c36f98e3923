//! Assembly plans: the construction recipe behind an invariant tuple,
//! made explicit as data.
//!
//! A plan records the base surface (genus, orientability, number of
//! boundary components), the bundle class `(ε, k)` of the principal
//! stratum, the sewing obstruction, and one block per boundary component:
//! E-blocks for the exceptional fibers, simple/twisted F- and SE-blocks
//! for the fixed-point and special-exceptional components, and
//! simple/twisted SF-blocks carrying the topologically singular points.
//! When there are no F- or SE-components but SF-blocks are present, the
//! space is instead built by equivariant connected sums at F-fibers of an
//! intermediate manifold; the `route` field records which branch applies.
//! Either way the block decomposition has the same shape, so a single
//! plan schema covers both.

use crate::tuple::{
    BlockCensus, EpsilonClass, InvariantTuple, ObstructionTerm, SeifertPair,
};
use crate::validate::NotAdmissible;

/// The kind of one building block. The variant order is the fixed kind
/// order used for deterministic boundary assignment: `E < simpleF <
/// twistedF < simpleSE < twistedSE < simpleSF < twistedSF`, with
/// parameters ascending within a kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    /// Fibered solid torus around an exceptional fiber with the given
    /// Seifert invariants.
    E(SeifertPair),
    SimpleF,
    TwistedF,
    SimpleSe,
    TwistedSe,
    /// Simple SF-block carrying the given (even, positive) number of
    /// topologically singular points.
    SimpleSf { singular: u32 },
    /// Twisted SF-block carrying the given number of singular points.
    TwistedSf { singular: u32 },
}

impl BlockKind {
    pub fn is_twisted(self) -> bool {
        matches!(
            self,
            BlockKind::TwistedF | BlockKind::TwistedSe | BlockKind::TwistedSf { .. }
        )
    }
}

/// One block glued to one boundary component of the base surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    pub kind: BlockKind,
    /// 1-based index of the boundary component the block is glued to.
    pub boundary_index: u32,
}

/// The base 2-manifold of the construction. Its boundary count is
/// `f + t + n + s`: unlike the fiber space of the finished space, the
/// construction surface has a hole for every E-block as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseSurface {
    pub genus: u32,
    pub orientable: bool,
    pub boundary_count: u32,
}

/// Weak-equivalence class of the circle bundle over the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BundleClass {
    pub epsilon: EpsilonClass,
    pub k: u32,
}

/// Which construction branch produced the plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Blocks are glued along the boundary of the bundle over the base
    /// (the `f + t > 0` branch, and degenerately the closed case).
    BoundaryGluing,
    /// SF-blocks are realized by equivariant connected sums with an
    /// intermediate manifold (the `f = t = 0`, `s > 0` branch).
    ConnectedSum,
}

impl Route {
    pub fn tag(self) -> &'static str {
        match self {
            Route::BoundaryGluing => "boundary_gluing",
            Route::ConnectedSum => "connected_sum",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "boundary_gluing" => Some(Route::BoundaryGluing),
            "connected_sum" => Some(Route::ConnectedSum),
            _ => None,
        }
    }

    fn expected(census: &BlockCensus) -> Route {
        if census.f_plus_t() > 0 || census.s == 0 {
            Route::BoundaryGluing
        } else {
            Route::ConnectedSum
        }
    }
}

/// A complete, serializable assembly plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblyPlan {
    pub base: BaseSurface,
    pub bundle: BundleClass,
    pub obstruction: ObstructionTerm,
    pub blocks: Vec<BlockSpec>,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error(transparent)]
    NotAdmissible(#[from] NotAdmissible),
    #[error("inconsistent plan: {0}")]
    Inconsistent(String),
}

impl InvariantTuple {
    /// Emits the construction plan for a valid tuple.
    ///
    /// The plan is deterministic: the tuple is canonicalized first, blocks
    /// are listed in the fixed kind order with parameters ascending, and
    /// boundary indices are assigned in that order.
    pub fn build_plan(&self) -> Result<AssemblyPlan, NotAdmissible> {
        let canonical = self.canonicalize()?.into_tuple();
        let c = canonical.census;

        let mut kinds: Vec<BlockKind> = Vec::with_capacity(canonical.boundary_components() as usize);
        kinds.extend(canonical.seifert.iter().map(|&p| BlockKind::E(p)));
        kinds.extend(std::iter::repeat_n(BlockKind::SimpleF, (c.f - c.k1) as usize));
        kinds.extend(std::iter::repeat_n(BlockKind::TwistedF, c.k1 as usize));
        kinds.extend(std::iter::repeat_n(BlockKind::SimpleSe, (c.t - c.k2) as usize));
        kinds.extend(std::iter::repeat_n(BlockKind::TwistedSe, c.k2 as usize));
        kinds.extend(
            canonical
                .singular
                .r
                .iter()
                .map(|&v| BlockKind::SimpleSf { singular: v }),
        );
        kinds.extend(
            canonical
                .singular
                .q
                .iter()
                .map(|&v| BlockKind::TwistedSf { singular: v }),
        );
        kinds.sort_unstable();

        let blocks = kinds
            .into_iter()
            .enumerate()
            .map(|(i, kind)| BlockSpec {
                kind,
                boundary_index: i as u32 + 1,
            })
            .collect();

        Ok(AssemblyPlan {
            base: BaseSurface {
                genus: canonical.genus,
                orientable: canonical.epsilon.orientable(),
                boundary_count: canonical.boundary_components() as u32,
            },
            bundle: BundleClass {
                epsilon: canonical.epsilon,
                k: c.k() as u32,
            },
            obstruction: canonical.b,
            blocks,
            route: Route::expected(&c),
        })
    }
}

/// Reads the invariant tuple back off a plan.
///
/// Accepts any reordering of the blocks of a plan produced by
/// [`InvariantTuple::build_plan`]; the result is the canonical tuple.
/// Fails with the specific contradiction named when the plan's parts
/// disagree with each other or encode an inadmissible tuple.
pub fn read_off_invariants(plan: &AssemblyPlan) -> Result<InvariantTuple, PlanError> {
    let inconsistent = |msg: String| Err(PlanError::Inconsistent(msg));

    let twisted = plan.blocks.iter().filter(|b| b.kind.is_twisted()).count() as u64;
    if !twisted.is_multiple_of(2) {
        return inconsistent(format!("k odd ({twisted} twisted blocks)"));
    }
    if plan.bundle.k as u64 != twisted {
        return inconsistent(format!(
            "k mismatch: bundle says k = {} but the blocks carry {twisted} twisted blocks",
            plan.bundle.k
        ));
    }
    if plan.base.boundary_count as usize != plan.blocks.len() {
        return inconsistent(format!(
            "boundary count {} does not match {} blocks",
            plan.base.boundary_count,
            plan.blocks.len()
        ));
    }
    let mut indices: Vec<u32> = plan.blocks.iter().map(|b| b.boundary_index).collect();
    indices.sort_unstable();
    if indices
        .iter()
        .enumerate()
        .any(|(i, &idx)| idx != i as u32 + 1)
    {
        return inconsistent(format!(
            "boundary indices must cover 1..={} exactly once",
            plan.blocks.len()
        ));
    }
    if plan.base.orientable != plan.bundle.epsilon.orientable() {
        return inconsistent(format!(
            "base orientable = {} contradicts class {}",
            plan.base.orientable, plan.bundle.epsilon
        ));
    }

    let mut census = BlockCensus::EMPTY;
    let mut seifert = Vec::new();
    let mut r = Vec::new();
    let mut q = Vec::new();
    for block in &plan.blocks {
        match block.kind {
            BlockKind::E(pair) => seifert.push(pair),
            BlockKind::SimpleF => census.f += 1,
            BlockKind::TwistedF => {
                census.f += 1;
                census.k1 += 1;
            }
            BlockKind::SimpleSe => census.t += 1,
            BlockKind::TwistedSe => {
                census.t += 1;
                census.k2 += 1;
            }
            BlockKind::SimpleSf { singular } => {
                census.s += 1;
                r.push(singular);
            }
            BlockKind::TwistedSf { singular } => {
                census.s += 1;
                census.k3 += 1;
                q.push(singular);
            }
        }
    }
    seifert.sort_unstable();
    r.sort_unstable();
    q.sort_unstable();

    let expected_route = Route::expected(&census);
    if plan.route != expected_route {
        return inconsistent(format!(
            "route {} contradicts the block counts (expected {})",
            plan.route.tag(),
            expected_route.tag()
        ));
    }

    let tuple = InvariantTuple {
        b: plan.obstruction,
        epsilon: plan.bundle.epsilon,
        genus: plan.base.genus,
        census,
        seifert,
        singular: crate::tuple::SingularDistribution::new(r, q),
    };
    let report = tuple.validate();
    if !report.ok() {
        return inconsistent(format!("invariants not admissible: {report}"));
    }
    Ok(tuple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::{BlockCensus, EpsilonClass, Regime};

    #[test]
    fn single_f_block_plan() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(1, 0, 0, 0, 0, 0),
            vec![],
            vec![],
            vec![],
        );
        let plan = t.build_plan().unwrap();
        assert_eq!(plan.base.genus, 0);
        assert!(plan.base.orientable);
        assert_eq!(plan.base.boundary_count, 1);
        assert_eq!(plan.bundle, BundleClass { epsilon: EpsilonClass::O1, k: 0 });
        assert_eq!(plan.route, Route::BoundaryGluing);
        assert_eq!(
            plan.blocks,
            vec![BlockSpec {
                kind: BlockKind::SimpleF,
                boundary_index: 1
            }]
        );
    }

    #[test]
    fn mixed_plan_orders_blocks_by_kind() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(1, 0, 0, 0, 1, 0),
            vec![SeifertPair::new(3, 1)],
            vec![2],
            vec![],
        );
        let plan = t.build_plan().unwrap();
        assert_eq!(plan.base.boundary_count, 3);
        assert_eq!(
            plan.blocks,
            vec![
                BlockSpec {
                    kind: BlockKind::E(SeifertPair::new(3, 1)),
                    boundary_index: 1
                },
                BlockSpec {
                    kind: BlockKind::SimpleF,
                    boundary_index: 2
                },
                BlockSpec {
                    kind: BlockKind::SimpleSf { singular: 2 },
                    boundary_index: 3
                },
            ]
        );
        assert_eq!(plan.route, Route::BoundaryGluing);
    }

    #[test]
    fn sf_only_plan_takes_connected_sum_route() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(0, 0, 0, 0, 1, 0),
            vec![],
            vec![2],
            vec![],
        );
        let plan = t.build_plan().unwrap();
        assert_eq!(plan.route, Route::ConnectedSum);
        assert_eq!(
            plan.blocks,
            vec![BlockSpec {
                kind: BlockKind::SimpleSf { singular: 2 },
                boundary_index: 1
            }]
        );
    }

    #[test]
    fn empty_plan_round_trips_to_empty_tuple() {
        let plan = InvariantTuple::empty().build_plan().unwrap();
        assert_eq!(plan.base.boundary_count, 0);
        assert!(plan.blocks.is_empty());
        assert_eq!(plan.route, Route::BoundaryGluing);
        let tuple = read_off_invariants(&plan).unwrap();
        assert_eq!(tuple, InvariantTuple::empty());
    }

    #[test]
    fn round_trip_is_identity_on_canonical_forms() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::N,
            1,
            BlockCensus::new(2, 1, 1, 0, 2, 1),
            vec![SeifertPair::new(5, 3), SeifertPair::new(2, 1)],
            vec![4],
            vec![2],
        );
        assert!(t.validate().ok());
        let plan = t.build_plan().unwrap();
        let back = read_off_invariants(&plan).unwrap();
        assert_eq!(
            back.canonicalize().unwrap(),
            t.canonicalize().unwrap()
        );
    }

    #[test]
    fn read_off_accepts_permuted_blocks() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(1, 0, 0, 0, 1, 0),
            vec![SeifertPair::new(3, 1)],
            vec![2],
            vec![],
        );
        let mut plan = t.build_plan().unwrap();
        plan.blocks.reverse();
        let back = read_off_invariants(&plan).unwrap();
        assert_eq!(back.canonicalize().unwrap(), t.canonicalize().unwrap());
    }

    #[test]
    fn odd_twisted_count_is_named() {
        let plan = AssemblyPlan {
            base: BaseSurface {
                genus: 0,
                orientable: true,
                boundary_count: 1,
            },
            bundle: BundleClass {
                epsilon: EpsilonClass::O,
                k: 1,
            },
            obstruction: ObstructionTerm::new(0, Regime::ForcedZero),
            blocks: vec![BlockSpec {
                kind: BlockKind::TwistedF,
                boundary_index: 1,
            }],
            route: Route::BoundaryGluing,
        };
        match read_off_invariants(&plan) {
            Err(PlanError::Inconsistent(msg)) => assert!(msg.contains("k odd"), "{msg}"),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn bundle_k_mismatch_is_named() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(1, 0, 0, 0, 0, 0),
            vec![],
            vec![],
            vec![],
        );
        let mut plan = t.build_plan().unwrap();
        plan.bundle.k = 2;
        match read_off_invariants(&plan) {
            Err(PlanError::Inconsistent(msg)) => assert!(msg.contains("k mismatch"), "{msg}"),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_boundary_indices_are_rejected() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(2, 0, 0, 0, 0, 0),
            vec![],
            vec![],
            vec![],
        );
        let mut plan = t.build_plan().unwrap();
        plan.blocks[1].boundary_index = 1;
        assert!(matches!(
            read_off_invariants(&plan),
            Err(PlanError::Inconsistent(_))
        ));
    }

    #[test]
    fn wrong_route_is_rejected() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::new(0, 0, 0, 0, 1, 0),
            vec![],
            vec![2],
            vec![],
        );
        let mut plan = t.build_plan().unwrap();
        plan.route = Route::BoundaryGluing;
        match read_off_invariants(&plan) {
            Err(PlanError::Inconsistent(msg)) => assert!(msg.contains("route"), "{msg}"),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn inadmissible_invariants_are_rejected() {
        // Structurally consistent plan encoding a bad Seifert pair.
        let plan = AssemblyPlan {
            base: BaseSurface {
                genus: 0,
                orientable: true,
                boundary_count: 1,
            },
            bundle: BundleClass {
                epsilon: EpsilonClass::O1,
                k: 0,
            },
            obstruction: ObstructionTerm::new(0, Regime::Free),
            blocks: vec![BlockSpec {
                kind: BlockKind::E(SeifertPair::new(4, 2)),
                boundary_index: 1,
            }],
            route: Route::BoundaryGluing,
        };
        match read_off_invariants(&plan) {
            Err(PlanError::Inconsistent(msg)) => {
                assert!(msg.contains("seifert_coprime"), "{msg}")
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn block_counts_reproduce_census() {
        let t = InvariantTuple::new(
            0,
            EpsilonClass::N,
            2,
            BlockCensus::new(3, 2, 2, 1, 2, 1),
            vec![SeifertPair::new(3, 2)],
            vec![2],
            vec![4],
        );
        assert!(t.validate().ok());
        let plan = t.build_plan().unwrap();
        let count = |pred: &dyn Fn(&BlockKind) -> bool| {
            plan.blocks.iter().filter(|b| pred(&b.kind)).count() as u32
        };
        assert_eq!(count(&|k| matches!(k, BlockKind::E(_))), 1);
        assert_eq!(count(&|k| matches!(k, BlockKind::SimpleF)), 1);
        assert_eq!(count(&|k| matches!(k, BlockKind::TwistedF)), 2);
        assert_eq!(count(&|k| matches!(k, BlockKind::SimpleSe)), 1);
        assert_eq!(count(&|k| matches!(k, BlockKind::TwistedSe)), 1);
        assert_eq!(count(&|k| matches!(k, BlockKind::SimpleSf { .. })), 1);
        assert_eq!(count(&|k| matches!(k, BlockKind::TwistedSf { .. })), 1);
    }
}
