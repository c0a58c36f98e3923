//! Invariant data attached to a closed Alexandrov 3-space with an
//! effective, isometric local circle action.
//!
//! The complete classification datum is an [`InvariantTuple`]
//!
//! ```text
//! {b; ε, g, (f, k1), (t, k2), (s, k3); {(αᵢ, βᵢ)}; (r₁, …, r_{s−k3}); (q₁, …, q_{k3})}
//! ```
//!
//! where the fiber space is a compact 2-manifold of genus `g`, `(ε, k)` is
//! the weak-equivalence class of the principal-stratum circle bundle,
//! `f`/`t`/`s` count the F-, SE- and SF-components on the boundary of the
//! fiber space (`k1`/`k2`/`k3` of which sit in twisted blocks), the pairs
//! `(αᵢ, βᵢ)` are the Seifert invariants of the exceptional fibers, the
//! even entries `rᵢ` and `qⱼ` count the topologically singular points
//! carried by each simple and twisted SF-block, and `b` is the sewing
//! obstruction. Two actions are equivariantly equivalent exactly when
//! their tuples agree as unordered data, which [`CanonicalForm`] realizes
//! by sorting the three multisets.

use std::cmp::Ordering;
use std::fmt;

/// Weak-equivalence class of the circle bundle over the principal stratum
/// of the fiber space, with structure group O(2).
///
/// For `k = 0` the class is one of `o1`, `o2`, `n1`–`n4`; for `k > 0` the
/// orientable classes collapse to `o` and the non-orientable ones to `n`.
/// The variant order is the rank used by the census ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EpsilonClass {
    /// Orientable base, all genus generators preserve fiber orientation.
    O1,
    /// Orientable base, all genus generators reverse fiber orientation; needs `g ≥ 1`.
    O2,
    /// Non-orientable base, all cross-cap generators preserve; needs `g ≥ 1`.
    N1,
    /// Non-orientable base, all cross-cap generators reverse; needs `g ≥ 1`.
    N2,
    /// Non-orientable base, exactly one cross-cap generator preserves; needs `g ≥ 2`.
    N3,
    /// Non-orientable base, exactly two cross-cap generators preserve; needs `g ≥ 3`.
    N4,
    /// Collapsed orientable class, only legal with `k > 0`.
    O,
    /// Collapsed non-orientable class, only legal with `k > 0`; needs `g ≥ 1`.
    N,
}

impl EpsilonClass {
    /// All eight classes in census rank order.
    pub const ALL: [EpsilonClass; 8] = [
        EpsilonClass::O1,
        EpsilonClass::O2,
        EpsilonClass::N1,
        EpsilonClass::N2,
        EpsilonClass::N3,
        EpsilonClass::N4,
        EpsilonClass::O,
        EpsilonClass::N,
    ];

    /// Wire tag, also used by the CLI JSON schema.
    pub fn tag(self) -> &'static str {
        match self {
            EpsilonClass::O1 => "o1",
            EpsilonClass::O2 => "o2",
            EpsilonClass::N1 => "n1",
            EpsilonClass::N2 => "n2",
            EpsilonClass::N3 => "n3",
            EpsilonClass::N4 => "n4",
            EpsilonClass::O => "o",
            EpsilonClass::N => "n",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|class| class.tag() == tag)
    }

    /// Whether the underlying fiber space is orientable.
    pub fn orientable(self) -> bool {
        matches!(self, EpsilonClass::O1 | EpsilonClass::O2 | EpsilonClass::O)
    }

    /// The collapsed classes `o`, `n` exist only for `k > 0`; the six
    /// refined classes only for `k = 0`.
    pub fn requires_positive_k(self) -> bool {
        matches!(self, EpsilonClass::O | EpsilonClass::N)
    }

    /// Minimum admissible genus (cross-cap count for the non-orientable
    /// classes) of the fiber space.
    pub fn genus_floor(self) -> u32 {
        match self {
            EpsilonClass::O1 | EpsilonClass::O => 0,
            EpsilonClass::O2 | EpsilonClass::N1 | EpsilonClass::N2 | EpsilonClass::N => 1,
            EpsilonClass::N3 => 2,
            EpsilonClass::N4 => 3,
        }
    }

    /// Classes under which a Seifert pair with `α = 2` forces `b = 0`,
    /// and which otherwise reduce `b` mod 2 when `f + t = 0`.
    pub(crate) fn halves_obstruction(self) -> bool {
        matches!(
            self,
            EpsilonClass::O2 | EpsilonClass::N1 | EpsilonClass::N3 | EpsilonClass::N4
        )
    }
}

impl fmt::Display for EpsilonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Seifert invariants `(α, β)` of one exceptional fiber.
///
/// Normalized pairs satisfy `α ≥ 2`, `0 < β < α` and `gcd(α, β) = 1`; the
/// struct itself can hold arbitrary values so that validation can report
/// on raw input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeifertPair {
    pub alpha: u32,
    pub beta: u32,
}

impl SeifertPair {
    pub fn new(alpha: u32, beta: u32) -> Self {
        SeifertPair { alpha, beta }
    }

    /// `α ≥ 2` and `0 < β < α`.
    pub fn in_range(self) -> bool {
        self.alpha >= 2 && self.beta > 0 && self.beta < self.alpha
    }

    pub fn coprime(self) -> bool {
        gcd(self.alpha, self.beta) == 1
    }

    pub fn is_normalized(self) -> bool {
        self.in_range() && self.coprime()
    }
}

impl fmt::Display for SeifertPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Counts of boundary components of the fiber space by fiber type,
/// together with how many of them sit in twisted blocks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct BlockCensus {
    /// F-components (circles of topologically regular fixed points).
    pub f: u32,
    /// Twisted F-blocks among the `f`.
    pub k1: u32,
    /// SE-components (special exceptional fibers, ℤ₂ reflection isotropy).
    pub t: u32,
    /// Twisted SE-blocks among the `t`.
    pub k2: u32,
    /// SF-blocks (carriers of the topologically singular points).
    pub s: u32,
    /// Twisted SF-blocks among the `s`.
    pub k3: u32,
}

impl BlockCensus {
    pub const EMPTY: BlockCensus = BlockCensus {
        f: 0,
        k1: 0,
        t: 0,
        k2: 0,
        s: 0,
        k3: 0,
    };

    pub fn new(f: u32, k1: u32, t: u32, k2: u32, s: u32, k3: u32) -> Self {
        BlockCensus { f, k1, t, k2, s, k3 }
    }

    /// `k = k1 + k2 + k3`, the number of boundary generators of the
    /// principal-stratum bundle that reverse orientation along fibers.
    pub fn k(&self) -> u64 {
        self.k1 as u64 + self.k2 as u64 + self.k3 as u64
    }

    /// `f + t`, the quantity that decides whether the obstruction is forced to zero.
    pub fn f_plus_t(&self) -> u64 {
        self.f as u64 + self.t as u64
    }
}

/// The per-block counts of topologically singular points: `r` has one even
/// entry per simple SF-block, `q` one per twisted SF-block.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SingularDistribution {
    pub r: Vec<u32>,
    pub q: Vec<u32>,
}

impl SingularDistribution {
    pub fn new(r: Vec<u32>, q: Vec<u32>) -> Self {
        SingularDistribution { r, q }
    }

    pub fn empty() -> Self {
        SingularDistribution::default()
    }

    /// Total number of topologically singular points, `Σ rᵢ + Σ qⱼ`.
    pub fn total(&self) -> u64 {
        self.r.iter().map(|&v| v as u64).sum::<u64>() + self.q.iter().map(|&v| v as u64).sum::<u64>()
    }
}

/// The constraint regime of the obstruction term `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// `b = 0`: some fixed-point component is present (`f + t > 0`), or the
    /// class halves the obstruction and some `αᵢ = 2`.
    ForcedZero,
    /// `b ∈ {0, 1}`: no fixed-point components, halving class, all `αᵢ ≠ 2`.
    ModTwo,
    /// `b` an arbitrary integer.
    Free,
}

impl Regime {
    /// The regime determined by the rest of the tuple.
    pub fn for_context(epsilon: EpsilonClass, f_plus_t: u64, seifert: &[SeifertPair]) -> Regime {
        let halving = epsilon.halves_obstruction();
        if f_plus_t > 0 || (halving && seifert.iter().any(|p| p.alpha == 2)) {
            Regime::ForcedZero
        } else if halving {
            Regime::ModTwo
        } else {
            Regime::Free
        }
    }

    /// Whether `value` is an admissible representative in this regime.
    pub fn admits(self, value: i64) -> bool {
        match self {
            Regime::ForcedZero => value == 0,
            Regime::ModTwo => value == 0 || value == 1,
            Regime::Free => true,
        }
    }

    /// Canonical representative of `value` in this regime.
    pub fn reduce(self, value: i64) -> i64 {
        match self {
            Regime::ForcedZero => 0,
            Regime::ModTwo => value.rem_euclid(2),
            Regime::Free => value,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Regime::ForcedZero => "forced_zero",
            Regime::ModTwo => "mod_two",
            Regime::Free => "free",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The obstruction integer `b` together with the regime it claims to live
/// in. Validation recomputes the regime from the rest of the tuple and
/// flags any mismatch, so a stored term can never silently carry stale
/// regime data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObstructionTerm {
    pub value: i64,
    pub regime: Regime,
}

impl ObstructionTerm {
    pub fn new(value: i64, regime: Regime) -> Self {
        ObstructionTerm { value, regime }
    }
}

impl fmt::Display for ObstructionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.regime)
    }
}

/// The full classification datum of a closed Alexandrov 3-space with an
/// effective, isometric local circle action.
///
/// Fields hold raw values; admissibility is decided by
/// [`InvariantTuple::validate`]. Structural equality (`==`) compares the
/// list fields as written; equivariant equivalence is
/// [`InvariantTuple::equivalent`], which compares canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantTuple {
    pub b: ObstructionTerm,
    pub epsilon: EpsilonClass,
    /// Genus of the fiber space; cross-cap count for non-orientable classes.
    pub genus: u32,
    pub census: BlockCensus,
    /// Seifert invariants of the exceptional fibers (a multiset; order is
    /// irrelevant up to equivalence).
    pub seifert: Vec<SeifertPair>,
    pub singular: SingularDistribution,
}

impl InvariantTuple {
    /// Builds a tuple whose obstruction regime is derived from the other
    /// fields, the one consistent choice for the given data.
    pub fn new(
        b_value: i64,
        epsilon: EpsilonClass,
        genus: u32,
        census: BlockCensus,
        seifert: Vec<SeifertPair>,
        r: Vec<u32>,
        q: Vec<u32>,
    ) -> Self {
        let regime = Regime::for_context(epsilon, census.f_plus_t(), &seifert);
        InvariantTuple {
            b: ObstructionTerm::new(b_value, regime),
            epsilon,
            genus,
            census,
            seifert,
            singular: SingularDistribution::new(r, q),
        }
    }

    /// The tuple of the empty datum: `{0; o1, 0, (0,0), (0,0), (0,0); ∅; (); ()}`.
    pub fn empty() -> Self {
        InvariantTuple::new(
            0,
            EpsilonClass::O1,
            0,
            BlockCensus::EMPTY,
            Vec::new(),
            Vec::new(),
            Vec::new(),
        )
    }

    /// Number of exceptional fibers, `n`.
    pub fn exceptional_fibers(&self) -> u32 {
        self.seifert.len() as u32
    }

    /// Boundary components of the base surface in the assembly recipe,
    /// `m = f + t + n + s`.
    pub fn boundary_components(&self) -> u64 {
        self.census.f as u64
            + self.census.t as u64
            + self.seifert.len() as u64
            + self.census.s as u64
    }

    /// The regime the rest of the tuple imposes on `b`.
    pub fn recomputed_regime(&self) -> Regime {
        Regime::for_context(self.epsilon, self.census.f_plus_t(), &self.seifert)
    }

    /// Number of topologically singular points, `2r = Σ rᵢ + Σ qⱼ`.
    pub fn singular_point_count(&self) -> u64 {
        self.singular.total()
    }

    /// Topology of the fiber space read off the invariants.
    pub fn fiber_space(&self) -> FiberSpaceSummary {
        let boundary =
            self.census.f as u64 + self.census.t as u64 + self.census.s as u64;
        let orientable = self.epsilon.orientable();
        let genus_term = if orientable {
            2 * self.genus as i64
        } else {
            self.genus as i64
        };
        FiberSpaceSummary {
            genus: self.genus,
            orientable,
            boundary_circles: boundary,
            interior_exceptional: self.seifert.len() as u32,
            euler_characteristic: 2 - genus_term - boundary as i64,
        }
    }

    /// Canonical representative of the equivalence class of `self`.
    ///
    /// Fails with the validation report if the tuple is not admissible.
    pub fn canonicalize(&self) -> Result<CanonicalForm, NotAdmissible> {
        let report = self.validate();
        if !report.ok() {
            return Err(NotAdmissible(report));
        }
        let mut tuple = self.clone();
        tuple.seifert.sort_unstable();
        tuple.singular.r.sort_unstable();
        tuple.singular.q.sort_unstable();
        tuple.b.value = tuple.b.regime.reduce(tuple.b.value);
        Ok(CanonicalForm(tuple))
    }

    /// Equivariant equivalence: equality of canonical forms.
    pub fn equivalent(&self, other: &InvariantTuple) -> Result<bool, NotAdmissible> {
        Ok(self.canonicalize()? == other.canonicalize()?)
    }
}

/// Shape of the fiber space: a compact 2-manifold whose boundary carries
/// the images of the F-, SE- and SF-fibers and whose interior carries the
/// principal and exceptional fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiberSpaceSummary {
    pub genus: u32,
    pub orientable: bool,
    /// `f + t + s`; exceptional fibers project to interior points.
    pub boundary_circles: u64,
    /// `n`, the number of exceptional-fiber images in the interior.
    pub interior_exceptional: u32,
    pub euler_characteristic: i64,
}

/// A validated tuple with its multisets in sorted order and `b` reduced to
/// its regime representative. Equal classification data always produces
/// bit-identical canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm(InvariantTuple);

impl CanonicalForm {
    /// Wraps a tuple that is already valid and canonically sorted.
    /// Callers are responsible for both properties.
    pub(crate) fn new_unchecked(tuple: InvariantTuple) -> Self {
        debug_assert!(tuple.validate().ok());
        debug_assert!(tuple.seifert.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(tuple.singular.r.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(tuple.singular.q.windows(2).all(|w| w[0] <= w[1]));
        CanonicalForm(tuple)
    }

    pub fn as_tuple(&self) -> &InvariantTuple {
        &self.0
    }

    pub fn into_tuple(self) -> InvariantTuple {
        self.0
    }
}

/// Census order: field-by-field lexicographic on
/// `(g, f, k1, t, k2, s, k3, ε, seifert, r, q, b)`, where `ε` uses the
/// variant rank of [`EpsilonClass`] and `seifert` compares by length
/// first, then lexicographically; `r` and `q` lengths are already fixed
/// by `(s, k3)` at that point.
impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = &self.0;
        let b = &other.0;
        let ca = a.census;
        let cb = b.census;
        (a.genus, ca.f, ca.k1, ca.t, ca.k2, ca.s, ca.k3, a.epsilon)
            .cmp(&(b.genus, cb.f, cb.k1, cb.t, cb.k2, cb.s, cb.k3, b.epsilon))
            .then_with(|| a.seifert.len().cmp(&b.seifert.len()))
            .then_with(|| a.seifert.cmp(&b.seifert))
            .then_with(|| a.singular.r.cmp(&b.singular.r))
            .then_with(|| a.singular.q.cmp(&b.singular.q))
            .then_with(|| a.b.value.cmp(&b.b.value))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub use crate::validate::NotAdmissible;
