//! JSON document schemas and their conversions to the core types.
//!
//! The canonical rendering of every document is compact serde_json output
//! (keys in declaration order, no insignificant whitespace, UTF-8) plus a
//! trailing newline. Tuple documents store `b` as a plain integer; its
//! regime is derived on parse and never stored, so documents cannot carry
//! stale regime data. The optional `format_version` key (currently `"1"`)
//! is accepted and checked on input and omitted from canonical output.

use serde::{Deserialize, Serialize};

use lca3_core::{
    AssemblyPlan, BaseSurface, BlockCensus, BlockKind, BlockSpec, BundleClass,
    CollapseDecomposition, CollapsePiece, EpsilonClass, InteriorInvariants, InvariantTuple,
    ManifoldInvariants, ObstructionTerm, PartialInvariantTuple, Regime, Route, SeifertPair,
    SeifertPartDescriptor, Type0Variant,
};

pub const FORMAT_VERSION: &str = "1";

/// Wire form of an invariant tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDocument {
    pub b: i64,
    pub epsilon: String,
    pub g: u32,
    pub f: u32,
    pub k1: u32,
    pub t: u32,
    pub k2: u32,
    pub s: u32,
    pub k3: u32,
    pub seifert: Vec<(u32, u32)>,
    pub r: Vec<u32>,
    pub q: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format_version: Option<String>,
}

impl TupleDocument {
    pub fn from_tuple(tuple: &InvariantTuple) -> Self {
        TupleDocument {
            b: tuple.b.value,
            epsilon: tuple.epsilon.tag().to_owned(),
            g: tuple.genus,
            f: tuple.census.f,
            k1: tuple.census.k1,
            t: tuple.census.t,
            k2: tuple.census.k2,
            s: tuple.census.s,
            k3: tuple.census.k3,
            seifert: tuple.seifert.iter().map(|p| (p.alpha, p.beta)).collect(),
            r: tuple.singular.r.clone(),
            q: tuple.singular.q.clone(),
            format_version: None,
        }
    }

    pub fn from_manifold(manifold: &ManifoldInvariants) -> Self {
        Self::from_tuple(&manifold.embed())
    }

    /// Converts to a core tuple; the obstruction regime is derived from
    /// the document's fields.
    pub fn to_tuple(&self) -> Result<InvariantTuple, String> {
        if let Some(version) = &self.format_version {
            if version != FORMAT_VERSION {
                return Err(format!(
                    "unsupported format_version {version:?} (expected {FORMAT_VERSION:?})"
                ));
            }
        }
        let epsilon = EpsilonClass::from_tag(&self.epsilon)
            .ok_or_else(|| format!("unknown epsilon tag {:?}", self.epsilon))?;
        Ok(InvariantTuple::new(
            self.b,
            epsilon,
            self.g,
            BlockCensus::new(self.f, self.k1, self.t, self.k2, self.s, self.k3),
            self.seifert
                .iter()
                .map(|&(alpha, beta)| SeifertPair::new(alpha, beta))
                .collect(),
            self.r.clone(),
            self.q.clone(),
        ))
    }
}

/// Compact canonical rendering, newline-terminated.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("documents always serialize");
    out.push('\n');
    out
}

/// Deserializes `text`, naming the offending key on failure.
pub fn parse_document<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T, String> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            inner.to_string()
        } else {
            format!("at key `{path}`: {inner}")
        }
    })
}

/// Wire form of the result of the manifold reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceDocument {
    pub manifold: TupleDocument,
    pub summands: u64,
}

// ── Assembly plans ─────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDocument {
    pub base: BaseDocument,
    pub bundle: BundleDocument,
    pub obstruction: i64,
    pub blocks: Vec<BlockDocument>,
    pub route: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDocument {
    pub g: u32,
    pub orientable: bool,
    pub boundary_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDocument {
    pub epsilon: String,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDocument {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular: Option<u32>,
    pub boundary: u32,
}

impl BlockDocument {
    fn from_spec(spec: &BlockSpec) -> Self {
        let (kind, alpha, beta, singular) = match spec.kind {
            BlockKind::E(pair) => ("E", Some(pair.alpha), Some(pair.beta), None),
            BlockKind::SimpleF => ("simpleF", None, None, None),
            BlockKind::TwistedF => ("twistedF", None, None, None),
            BlockKind::SimpleSe => ("simpleSE", None, None, None),
            BlockKind::TwistedSe => ("twistedSE", None, None, None),
            BlockKind::SimpleSf { singular } => ("simpleSF", None, None, Some(singular)),
            BlockKind::TwistedSf { singular } => ("twistedSF", None, None, Some(singular)),
        };
        BlockDocument {
            kind: kind.to_owned(),
            alpha,
            beta,
            singular,
            boundary: spec.boundary_index,
        }
    }

    fn to_spec(&self) -> Result<BlockSpec, String> {
        let reject_params = |kind: &str| -> Result<(), String> {
            if self.alpha.is_some() || self.beta.is_some() || self.singular.is_some() {
                Err(format!("block kind {kind:?} takes no parameters"))
            } else {
                Ok(())
            }
        };
        let kind = match self.kind.as_str() {
            "E" => {
                if self.singular.is_some() {
                    return Err("E-blocks take alpha and beta, not singular".into());
                }
                match (self.alpha, self.beta) {
                    (Some(alpha), Some(beta)) => BlockKind::E(SeifertPair::new(alpha, beta)),
                    _ => return Err("E-blocks need both alpha and beta".into()),
                }
            }
            "simpleF" => {
                reject_params("simpleF")?;
                BlockKind::SimpleF
            }
            "twistedF" => {
                reject_params("twistedF")?;
                BlockKind::TwistedF
            }
            "simpleSE" => {
                reject_params("simpleSE")?;
                BlockKind::SimpleSe
            }
            "twistedSE" => {
                reject_params("twistedSE")?;
                BlockKind::TwistedSe
            }
            "simpleSF" | "twistedSF" => {
                if self.alpha.is_some() || self.beta.is_some() {
                    return Err(format!("block kind {:?} takes singular, not alpha/beta", self.kind));
                }
                let singular = self
                    .singular
                    .ok_or_else(|| format!("block kind {:?} needs a singular count", self.kind))?;
                if self.kind == "simpleSF" {
                    BlockKind::SimpleSf { singular }
                } else {
                    BlockKind::TwistedSf { singular }
                }
            }
            other => return Err(format!("unknown block kind {other:?}")),
        };
        Ok(BlockSpec {
            kind,
            boundary_index: self.boundary,
        })
    }
}

impl PlanDocument {
    pub fn from_plan(plan: &AssemblyPlan) -> Self {
        PlanDocument {
            base: BaseDocument {
                g: plan.base.genus,
                orientable: plan.base.orientable,
                boundary_count: plan.base.boundary_count,
            },
            bundle: BundleDocument {
                epsilon: plan.bundle.epsilon.tag().to_owned(),
                k: plan.bundle.k,
            },
            obstruction: plan.obstruction.value,
            blocks: plan.blocks.iter().map(BlockDocument::from_spec).collect(),
            route: plan.route.tag().to_owned(),
        }
    }

    /// Converts back to a plan; the obstruction regime is derived from
    /// the plan's own data.
    pub fn to_plan(&self) -> Result<AssemblyPlan, String> {
        let epsilon = EpsilonClass::from_tag(&self.bundle.epsilon)
            .ok_or_else(|| format!("unknown epsilon tag {:?}", self.bundle.epsilon))?;
        let route = Route::from_tag(&self.route)
            .ok_or_else(|| format!("unknown route {:?}", self.route))?;
        let blocks = self
            .blocks
            .iter()
            .map(BlockDocument::to_spec)
            .collect::<Result<Vec<_>, _>>()?;
        let f_plus_t = blocks
            .iter()
            .filter(|b| {
                matches!(
                    b.kind,
                    BlockKind::SimpleF | BlockKind::TwistedF | BlockKind::SimpleSe | BlockKind::TwistedSe
                )
            })
            .count() as u64;
        let seifert: Vec<SeifertPair> = blocks
            .iter()
            .filter_map(|b| match b.kind {
                BlockKind::E(pair) => Some(pair),
                _ => None,
            })
            .collect();
        let regime = Regime::for_context(epsilon, f_plus_t, &seifert);
        Ok(AssemblyPlan {
            base: BaseSurface {
                genus: self.base.g,
                orientable: self.base.orientable,
                boundary_count: self.base.boundary_count,
            },
            bundle: BundleClass {
                epsilon,
                k: self.bundle.k,
            },
            obstruction: ObstructionTerm::new(self.obstruction, regime),
            blocks,
            route,
        })
    }
}

// ── Collapse decompositions ────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub pieces: Vec<PieceDocument>,
    pub bpt: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior: Option<InteriorDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum PieceDocument {
    #[serde(rename = "generalized_solid_torus")]
    SolidTorus {
        #[serde(rename = "type")]
        n: u32,
    },
    #[serde(rename = "generalized_solid_klein_bottle")]
    SolidKleinBottle {
        #[serde(rename = "type")]
        n: u32,
    },
    #[serde(rename = "type0")]
    Type0 { variant: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteriorDocument {
    pub b: i64,
    pub epsilon: String,
    pub g: u32,
    pub seifert: Vec<(u32, u32)>,
}

impl DecompositionDocument {
    pub fn to_decomposition(&self) -> Result<CollapseDecomposition, String> {
        let mut boundary_pieces = Vec::with_capacity(self.pieces.len());
        for piece in &self.pieces {
            boundary_pieces.push(match piece {
                PieceDocument::SolidTorus { n } => CollapsePiece::solid_torus(*n).ok_or(
                    "generalized_solid_torus needs type >= 1; spell type-0 pieces as \
                     {\"kind\": \"type0\", \"variant\": \"D2xS1\"} or \"MoxS1\"",
                )?,
                PieceDocument::SolidKleinBottle { n } => CollapsePiece::solid_klein_bottle(*n)
                    .ok_or(
                        "generalized_solid_klein_bottle needs type >= 1; spell type-0 pieces as \
                         {\"kind\": \"type0\", \"variant\": \"D2xtS1\"} or \"MoxtS1\"",
                    )?,
                PieceDocument::Type0 { variant } => Type0Variant::from_tag(variant)
                    .map(CollapsePiece::Type0)
                    .ok_or_else(|| format!("unknown type-0 variant {variant:?}"))?,
            });
        }
        let interior = match &self.interior {
            None => None,
            Some(doc) => Some(InteriorInvariants {
                b: doc.b,
                epsilon: EpsilonClass::from_tag(&doc.epsilon)
                    .ok_or_else(|| format!("unknown epsilon tag {:?}", doc.epsilon))?,
                genus: doc.g,
                seifert: doc
                    .seifert
                    .iter()
                    .map(|&(alpha, beta)| SeifertPair::new(alpha, beta))
                    .collect(),
            }),
        };
        Ok(CollapseDecomposition {
            boundary_pieces,
            seifert_part: SeifertPartDescriptor {
                bpt_count: self.bpt,
                interior,
            },
        })
    }
}

// ── Partial tuples (collapse output) ───────────────────────────────────

/// Either a determined value or the literal string `"undetermined"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Slot<T> {
    Known(T),
    Undetermined(&'static str),
}

impl<T> From<Option<T>> for Slot<T> {
    fn from(value: Option<T>) -> Self {
        match value {
            Some(v) => Slot::Known(v),
            None => Slot::Undetermined("undetermined"),
        }
    }
}

/// Wire form of a partial tuple: same keys as [`TupleDocument`], with the
/// undetermined slots marked explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialTupleDocument {
    pub b: Slot<i64>,
    pub epsilon: Slot<String>,
    pub g: Slot<u32>,
    pub f: u32,
    pub k1: u32,
    pub t: u32,
    pub k2: u32,
    pub s: u32,
    pub k3: u32,
    pub seifert: Slot<Vec<(u32, u32)>>,
    pub r: Vec<u32>,
    pub q: Vec<u32>,
}

impl PartialTupleDocument {
    pub fn from_partial(partial: &PartialInvariantTuple) -> Self {
        PartialTupleDocument {
            b: partial.b.into(),
            epsilon: partial.epsilon.map(|e| e.tag().to_owned()).into(),
            g: partial.genus.into(),
            f: partial.census.f,
            k1: partial.census.k1,
            t: partial.census.t,
            k2: partial.census.k2,
            s: partial.census.s,
            k3: partial.census.k3,
            seifert: partial
                .seifert
                .as_ref()
                .map(|pairs| pairs.iter().map(|p| (p.alpha, p.beta)).collect::<Vec<_>>())
                .into(),
            r: partial.singular.r.clone(),
            q: partial.singular.q.clone(),
        }
    }
}

/// Parses a tuple document all the way to a core tuple, marking schema
/// errors apart from admissibility: this only fails on malformed input.
pub fn tuple_from_json(text: &str) -> Result<InvariantTuple, String> {
    parse_document::<TupleDocument>(text)?.to_tuple()
}
