//! Dictionary between collapse pieces and local-action blocks.
//!
//! A closed Alexandrov 3-space collapsing to a surface with boundary
//! decomposes into pieces fibering over the boundary circles —
//! generalized solid tori and generalized solid Klein bottles — plus a
//! generalized Seifert fibered piece over the interior. A generalized
//! solid torus of type `N ≥ 1` carries `2N` topologically singular points
//! and is equivalent to a simple SF-block; its Klein-bottle counterpart to
//! a twisted SF-block. The four type-0 pieces are ordinary manifold
//! blocks. The interior piece obstructs a compatible local circle action
//! exactly when it contains a singular interval fiber, whose neighborhood
//! `B(pt)` collapses to an interior cone point instead of a boundary
//! point.

use std::num::NonZeroU32;

use crate::assembly::BlockKind;
use crate::tuple::{
    BlockCensus, EpsilonClass, InvariantTuple, ObstructionTerm, Regime, SeifertPair,
    SingularDistribution,
};

/// The four type-0 boundary pieces.
///
/// A type-0 solid torus could also be read as a plainly fibered solid
/// torus with no marked fiber; in the boundary-piece position of a
/// collapse decomposition the fixed-circle (F-block) reading is the one
/// used here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Type0Variant {
    /// `D² × S¹`, the trivially fibered solid torus.
    DiskCircle,
    /// `Mo × S¹`, the product of a Möbius band and a circle.
    MoebiusCircle,
    /// `D² ×̃ S¹`, the twisted disk bundle over the circle.
    DiskCircleTwisted,
    /// `Mo ×̃ S¹`, the twisted Möbius-band bundle over the circle.
    MoebiusCircleTwisted,
}

impl Type0Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Type0Variant::DiskCircle => "D2xS1",
            Type0Variant::MoebiusCircle => "MoxS1",
            Type0Variant::DiskCircleTwisted => "D2xtS1",
            Type0Variant::MoebiusCircleTwisted => "MoxtS1",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "D2xS1" => Some(Type0Variant::DiskCircle),
            "MoxS1" => Some(Type0Variant::MoebiusCircle),
            "D2xtS1" => Some(Type0Variant::DiskCircleTwisted),
            "MoxtS1" => Some(Type0Variant::MoebiusCircleTwisted),
            _ => None,
        }
    }
}

/// One boundary piece of a collapse decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollapsePiece {
    /// Generalized solid torus of type `N ≥ 1`; carries `2N` topologically
    /// singular points.
    GeneralizedSolidTorus { n: NonZeroU32 },
    /// Generalized solid Klein bottle of type `N ≥ 1`.
    GeneralizedSolidKleinBottle { n: NonZeroU32 },
    Type0(Type0Variant),
}

impl CollapsePiece {
    pub fn solid_torus(n: u32) -> Option<Self> {
        NonZeroU32::new(n).map(|n| CollapsePiece::GeneralizedSolidTorus { n })
    }

    pub fn solid_klein_bottle(n: u32) -> Option<Self> {
        NonZeroU32::new(n).map(|n| CollapsePiece::GeneralizedSolidKleinBottle { n })
    }

    /// The local-action block the piece is equivalent to.
    pub fn classify(self) -> BlockKind {
        match self {
            CollapsePiece::GeneralizedSolidTorus { n } => BlockKind::SimpleSf {
                singular: 2 * n.get(),
            },
            CollapsePiece::GeneralizedSolidKleinBottle { n } => BlockKind::TwistedSf {
                singular: 2 * n.get(),
            },
            CollapsePiece::Type0(Type0Variant::DiskCircle) => BlockKind::SimpleF,
            CollapsePiece::Type0(Type0Variant::DiskCircleTwisted) => BlockKind::TwistedF,
            CollapsePiece::Type0(Type0Variant::MoebiusCircle) => BlockKind::SimpleSe,
            CollapsePiece::Type0(Type0Variant::MoebiusCircleTwisted) => BlockKind::TwistedSe,
        }
    }
}

/// Invariants of the interior Seifert piece, when known: everything a
/// manifold-side tuple contributes beyond the boundary blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InteriorInvariants {
    pub b: i64,
    pub epsilon: EpsilonClass,
    pub genus: u32,
    pub seifert: Vec<SeifertPair>,
}

/// The generalized Seifert piece of a decomposition: the count of singular
/// interval fibers, plus its invariants when the caller knows them. The
/// compatibility statement only needs the count, so the invariants stay
/// optional and are never inferred.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeifertPartDescriptor {
    /// Number of singular interval fibers (neighborhoods of type `B(pt)`).
    pub bpt_count: u32,
    pub interior: Option<InteriorInvariants>,
}

/// A decomposition into boundary pieces and a generalized Seifert part.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CollapseDecomposition {
    pub boundary_pieces: Vec<CollapsePiece>,
    pub seifert_part: SeifertPartDescriptor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("incompatible collapse: {bpt_count} singular interval fiber(s) of type B(pt)")]
pub struct IncompatibleCollapse {
    pub bpt_count: u32,
}

/// An invariant tuple whose block census and singular distribution are
/// determined but whose remaining slots may be undetermined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialInvariantTuple {
    pub b: Option<i64>,
    pub epsilon: Option<EpsilonClass>,
    pub genus: Option<u32>,
    pub seifert: Option<Vec<SeifertPair>>,
    pub census: BlockCensus,
    pub singular: SingularDistribution,
}

impl PartialInvariantTuple {
    pub fn is_complete(&self) -> bool {
        self.b.is_some() && self.epsilon.is_some() && self.genus.is_some() && self.seifert.is_some()
    }

    /// The tuple itself, when every slot is determined. The obstruction
    /// regime is derived from the assembled data.
    pub fn as_tuple(&self) -> Option<InvariantTuple> {
        match (self.b, self.epsilon, self.genus, &self.seifert) {
            (Some(b), Some(epsilon), Some(genus), Some(seifert)) => Some(self.assemble(
                b,
                epsilon,
                genus,
                seifert.clone(),
            )),
            _ => None,
        }
    }

    /// Fills the undetermined slots from `fill`; determined slots keep
    /// their values.
    pub fn complete(&self, fill: Completion) -> InvariantTuple {
        self.assemble(
            self.b.unwrap_or(fill.b),
            self.epsilon.unwrap_or(fill.epsilon),
            self.genus.unwrap_or(fill.genus),
            self.seifert.clone().unwrap_or(fill.seifert),
        )
    }

    fn assemble(
        &self,
        b: i64,
        epsilon: EpsilonClass,
        genus: u32,
        seifert: Vec<SeifertPair>,
    ) -> InvariantTuple {
        let regime = Regime::for_context(epsilon, self.census.f_plus_t(), &seifert);
        InvariantTuple {
            b: ObstructionTerm::new(b, regime),
            epsilon,
            genus,
            census: self.census,
            seifert,
            singular: self.singular.clone(),
        }
    }
}

/// Values for the undetermined slots of a partial tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub b: i64,
    pub epsilon: EpsilonClass,
    pub genus: u32,
    pub seifert: Vec<SeifertPair>,
}

impl CollapseDecomposition {
    /// Whether the decomposition is compatible with an effective,
    /// isometric local circle action: no `B(pt)` fibers.
    pub fn admits_local_action(&self) -> bool {
        self.seifert_part.bpt_count == 0
    }

    /// Synthesizes the partial invariant tuple of the decomposition.
    ///
    /// The census and singular distribution are counted off the
    /// classified pieces; `b`, `ε`, `g` and the Seifert pairs come from
    /// the interior invariants when present and stay undetermined
    /// otherwise.
    pub fn to_invariants(&self) -> Result<PartialInvariantTuple, IncompatibleCollapse> {
        if !self.admits_local_action() {
            return Err(IncompatibleCollapse {
                bpt_count: self.seifert_part.bpt_count,
            });
        }

        let mut census = BlockCensus::EMPTY;
        let mut r = Vec::new();
        let mut q = Vec::new();
        for piece in &self.boundary_pieces {
            match piece.classify() {
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
                BlockKind::E(_) => unreachable!("boundary pieces never classify as E-blocks"),
            }
        }
        r.sort_unstable();
        q.sort_unstable();

        let interior = self.seifert_part.interior.as_ref();
        Ok(PartialInvariantTuple {
            b: interior.map(|i| i.b),
            epsilon: interior.map(|i| i.epsilon),
            genus: interior.map(|i| i.genus),
            seifert: interior.map(|i| i.seifert.clone()),
            census,
            singular: SingularDistribution::new(r, q),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gst(n: u32) -> CollapsePiece {
        CollapsePiece::solid_torus(n).unwrap()
    }

    fn gkb(n: u32) -> CollapsePiece {
        CollapsePiece::solid_klein_bottle(n).unwrap()
    }

    #[test]
    fn generalized_pieces_classify_as_sf_blocks() {
        assert_eq!(gst(3).classify(), BlockKind::SimpleSf { singular: 6 });
        assert_eq!(gkb(1).classify(), BlockKind::TwistedSf { singular: 2 });
        for n in 1..=5 {
            assert_eq!(gst(n).classify(), BlockKind::SimpleSf { singular: 2 * n });
            assert_eq!(gkb(n).classify(), BlockKind::TwistedSf { singular: 2 * n });
        }
    }

    #[test]
    fn type0_pieces_classify_as_manifold_blocks() {
        assert_eq!(
            CollapsePiece::Type0(Type0Variant::DiskCircle).classify(),
            BlockKind::SimpleF
        );
        assert_eq!(
            CollapsePiece::Type0(Type0Variant::MoebiusCircle).classify(),
            BlockKind::SimpleSe
        );
        assert_eq!(
            CollapsePiece::Type0(Type0Variant::DiskCircleTwisted).classify(),
            BlockKind::TwistedF
        );
        assert_eq!(
            CollapsePiece::Type0(Type0Variant::MoebiusCircleTwisted).classify(),
            BlockKind::TwistedSe
        );
    }

    #[test]
    fn compatibility_is_decided_by_bpt_count() {
        let mut decomp = CollapseDecomposition::default();
        assert!(decomp.admits_local_action());
        decomp.seifert_part.bpt_count = 2;
        assert!(!decomp.admits_local_action());
        // Adding boundary pieces never flips the answer.
        decomp.boundary_pieces.push(gst(1));
        assert!(!decomp.admits_local_action());
        decomp.seifert_part.bpt_count = 0;
        assert!(decomp.admits_local_action());
        decomp.boundary_pieces.push(gkb(2));
        assert!(decomp.admits_local_action());
    }

    #[test]
    fn single_torus_gives_partial_tuple() {
        let decomp = CollapseDecomposition {
            boundary_pieces: vec![gst(2)],
            seifert_part: SeifertPartDescriptor::default(),
        };
        let partial = decomp.to_invariants().unwrap();
        assert_eq!((partial.census.s, partial.census.k3), (1, 0));
        assert_eq!(partial.singular.r, vec![4]);
        assert!(partial.singular.q.is_empty());
        assert!(!partial.is_complete());
        assert_eq!(partial.as_tuple(), None);
        assert_eq!(partial.b, None);
        assert_eq!(partial.epsilon, None);
        assert_eq!(partial.genus, None);
        assert_eq!(partial.seifert, None);
    }

    #[test]
    fn torus_and_klein_bottle_counts() {
        let decomp = CollapseDecomposition {
            boundary_pieces: vec![gst(1), gkb(1)],
            seifert_part: SeifertPartDescriptor::default(),
        };
        let partial = decomp.to_invariants().unwrap();
        assert_eq!((partial.census.s, partial.census.k3), (2, 1));
        assert_eq!(partial.singular.r, vec![2]);
        assert_eq!(partial.singular.q, vec![2]);
    }

    #[test]
    fn bpt_fibers_are_incompatible() {
        let decomp = CollapseDecomposition {
            boundary_pieces: vec![gst(1)],
            seifert_part: SeifertPartDescriptor {
                bpt_count: 1,
                interior: None,
            },
        };
        assert_eq!(
            decomp.to_invariants(),
            Err(IncompatibleCollapse { bpt_count: 1 })
        );
    }

    #[test]
    fn interior_invariants_fill_the_slots() {
        let decomp = CollapseDecomposition {
            boundary_pieces: vec![gkb(2), gkb(3)],
            seifert_part: SeifertPartDescriptor {
                bpt_count: 0,
                interior: Some(InteriorInvariants {
                    b: 0,
                    epsilon: EpsilonClass::O,
                    genus: 0,
                    seifert: vec![SeifertPair::new(3, 1)],
                }),
            },
        };
        let partial = decomp.to_invariants().unwrap();
        assert!(partial.is_complete());
        let tuple = partial.as_tuple().unwrap();
        assert_eq!(tuple.singular.q, vec![4, 6]);
        assert_eq!(tuple.census.k3, 2);
        assert!(tuple.validate().ok(), "{}", tuple.validate());
    }

    #[test]
    fn completion_fills_only_missing_slots() {
        let decomp = CollapseDecomposition {
            boundary_pieces: vec![
                gst(1),
                gkb(1),
                CollapsePiece::Type0(Type0Variant::MoebiusCircleTwisted),
            ],
            seifert_part: SeifertPartDescriptor::default(),
        };
        let partial = decomp.to_invariants().unwrap();
        assert_eq!(partial.census, BlockCensus::new(0, 0, 1, 1, 2, 1));
        let tuple = partial.complete(Completion {
            b: 0,
            epsilon: EpsilonClass::O,
            genus: 0,
            seifert: vec![],
        });
        assert!(tuple.validate().ok(), "{}", tuple.validate());
        assert_eq!(tuple.singular_point_count(), 4);
    }

    #[test]
    fn odd_twisted_count_surfaces_as_parity_after_completion() {
        // Synthesis itself succeeds; the parity of k fixed by the pieces
        // is checked once the tuple is completed.
        let decomp = CollapseDecomposition {
            boundary_pieces: vec![gst(1), gkb(1)],
            seifert_part: SeifertPartDescriptor::default(),
        };
        let partial = decomp.to_invariants().unwrap();
        let tuple = partial.complete(Completion {
            b: 0,
            epsilon: EpsilonClass::O,
            genus: 0,
            seifert: vec![],
        });
        let report = tuple.validate();
        assert!(report.has(crate::validate::Rule::KParity));
    }

    #[test]
    fn singular_points_add_up() {
        let decomp = CollapseDecomposition {
            boundary_pieces: vec![gst(1), gst(3), gkb(2)],
            seifert_part: SeifertPartDescriptor::default(),
        };
        let partial = decomp.to_invariants().unwrap();
        let total: u64 = partial.singular.total();
        assert_eq!(total, 2 * (1 + 3 + 2));
    }
}
