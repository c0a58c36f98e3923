//! Census enumeration and seeded random generation of valid tuples.
//!
//! `enumerate_valid` walks the bounded domain in the census order of
//! [`CanonicalForm`] and emits exactly one representative per equivalence
//! class, constructing every candidate directly in canonical shape
//! (triangular `(count, twisted)` pairs, even `k` only, eligible ε
//! classes, ascending multisets, obstruction values allowed by the
//! derived regime). Output is deterministic across runs.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tuple::{
    BlockCensus, CanonicalForm, EpsilonClass, InvariantTuple, Regime, SeifertPair,
};

/// Inclusive bounds on every tuple field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub max_g: u32,
    pub max_f: u32,
    pub max_t: u32,
    pub max_s: u32,
    /// Maximum number of exceptional fibers.
    pub max_n: u32,
    /// Maximum `α` of a Seifert pair; at least 2.
    pub max_alpha: u32,
    /// Maximum `r`/`q` entry; even and at least 2.
    pub max_singular_entry: u32,
    /// Maximum `|b|`.
    pub max_abs_b: u32,
}

impl Bounds {
    /// The smallest structurally valid bounds: only the empty tuple fits.
    pub fn minimal() -> Self {
        Bounds {
            max_g: 0,
            max_f: 0,
            max_t: 0,
            max_s: 0,
            max_n: 0,
            max_alpha: 2,
            max_singular_entry: 2,
            max_abs_b: 0,
        }
    }

    fn check(&self) -> Result<(), EnumerateError> {
        if self.max_alpha < 2 {
            return Err(EnumerateError::InvalidBounds(format!(
                "max_alpha must be at least 2, got {}",
                self.max_alpha
            )));
        }
        if self.max_singular_entry < 2 || !self.max_singular_entry.is_multiple_of(2) {
            return Err(EnumerateError::InvalidBounds(format!(
                "max_singular_entry must be even and at least 2, got {}",
                self.max_singular_entry
            )));
        }
        Ok(())
    }

    /// Exact size of the structural candidate domain the enumerator walks;
    /// an upper bound on the census size, used for the cap check.
    pub fn projected_count(&self) -> u128 {
        let pairs = normalized_pairs(self.max_alpha).len() as u128;
        let seifert: u128 = (0..=self.max_n as u128)
            .map(|n| multiset_count(pairs, n))
            .fold(0u128, u128::saturating_add);
        let entry_values = (self.max_singular_entry / 2) as u128;
        let mut sf = 0u128;
        for s in 0..=self.max_s as u128 {
            for k3 in 0..=s {
                sf = sf.saturating_add(
                    multiset_count(entry_values, s - k3)
                        .saturating_mul(multiset_count(entry_values, k3)),
                );
            }
        }
        let tri = |m: u128| (m + 1) * (m + 2) / 2;
        let b_values = 2 * self.max_abs_b as u128 + 1;
        [
            self.max_g as u128 + 1,
            tri(self.max_f as u128),
            tri(self.max_t as u128),
            sf,
            seifert,
            EpsilonClass::ALL.len() as u128,
            b_values,
        ]
        .into_iter()
        .fold(1u128, u128::saturating_mul)
    }
}

/// Default cap on the projected candidate count.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("bounds too large: projected {projected} candidates exceed cap {cap}")]
    TooLarge { projected: u128, cap: u64 },
    #[error("empty domain: no valid tuple fits the bounds")]
    EmptyDomain,
}

/// Multisets of size `len` over an alphabet of `values` symbols.
fn multiset_count(values: u128, len: u128) -> u128 {
    // C(values + len - 1, len)
    if len == 0 {
        return 1;
    }
    if values == 0 {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 0..len {
        result = result.saturating_mul(values + i).saturating_div(i + 1);
    }
    result
}

/// All normalized Seifert pairs with `α ≤ max_alpha`, ascending.
fn normalized_pairs(max_alpha: u32) -> Vec<SeifertPair> {
    let mut pairs = Vec::new();
    for alpha in 2..=max_alpha {
        for beta in 1..alpha {
            let pair = SeifertPair::new(alpha, beta);
            if pair.is_normalized() {
                pairs.push(pair);
            }
        }
    }
    pairs
}

/// Visits every non-decreasing index sequence of length `len` into an
/// alphabet of size `count`, lexicographically.
fn for_each_multiset_indices(
    count: usize,
    len: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    fn go(count: usize, len: usize, min: usize, prefix: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if prefix.len() == len {
            visit(prefix);
            return;
        }
        for i in min..count {
            prefix.push(i);
            go(count, len, i, prefix, visit);
            prefix.pop();
        }
    }
    if len > 0 && count == 0 {
        return;
    }
    let mut prefix = Vec::with_capacity(len);
    go(count, len, 0, &mut prefix, visit);
}

/// Walks every valid tuple within `bounds` in census order, calling
/// `visit` once per equivalence class with its canonical form.
pub fn visit_census(
    bounds: &Bounds,
    cap: u64,
    mut visit: impl FnMut(&CanonicalForm),
) -> Result<(), EnumerateError> {
    bounds.check()?;
    let projected = bounds.projected_count();
    if projected > cap as u128 {
        return Err(EnumerateError::TooLarge { projected, cap });
    }

    let pairs = normalized_pairs(bounds.max_alpha);
    let entries: Vec<u32> = (1..=bounds.max_singular_entry / 2).map(|h| 2 * h).collect();
    let max_b = bounds.max_abs_b as i64;

    for g in 0..=bounds.max_g {
        for f in 0..=bounds.max_f {
            for k1 in 0..=f {
                for t in 0..=bounds.max_t {
                    for k2 in 0..=t {
                        for s in 0..=bounds.max_s {
                            for k3 in 0..=s {
                                let census = BlockCensus::new(f, k1, t, k2, s, k3);
                                if !census.k().is_multiple_of(2) {
                                    continue;
                                }
                                let positive_k = census.k() > 0;
                                for epsilon in EpsilonClass::ALL {
                                    if epsilon.requires_positive_k() != positive_k
                                        || g < epsilon.genus_floor()
                                    {
                                        continue;
                                    }
                                    visit_seifert_level(
                                        &census, epsilon, g, &pairs, &entries, max_b,
                                        bounds.max_n, &mut visit,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn visit_seifert_level(
    census: &BlockCensus,
    epsilon: EpsilonClass,
    genus: u32,
    pairs: &[SeifertPair],
    entries: &[u32],
    max_b: i64,
    max_n: u32,
    visit: &mut impl FnMut(&CanonicalForm),
) {
    for n in 0..=max_n as usize {
        for_each_multiset_indices(pairs.len(), n, &mut |pair_idx| {
            let seifert: Vec<SeifertPair> = pair_idx.iter().map(|&i| pairs[i]).collect();
            let regime = Regime::for_context(epsilon, census.f_plus_t(), &seifert);
            let r_len = (census.s - census.k3) as usize;
            let q_len = census.k3 as usize;
            for_each_multiset_indices(entries.len(), r_len, &mut |r_idx| {
                let r: Vec<u32> = r_idx.iter().map(|&i| entries[i]).collect();
                for_each_multiset_indices(entries.len(), q_len, &mut |q_idx| {
                    let q: Vec<u32> = q_idx.iter().map(|&i| entries[i]).collect();
                    let b_values: Vec<i64> = match regime {
                        Regime::ForcedZero => vec![0],
                        Regime::ModTwo => (0..=1.min(max_b.max(0))).collect(),
                        Regime::Free => (-max_b..=max_b).collect(),
                    };
                    for b in b_values {
                        let tuple = InvariantTuple {
                            b: crate::tuple::ObstructionTerm::new(b, regime),
                            epsilon,
                            genus,
                            census: *census,
                            seifert: seifert.clone(),
                            singular: crate::tuple::SingularDistribution::new(
                                r.clone(),
                                q.clone(),
                            ),
                        };
                        visit(&CanonicalForm::new_unchecked(tuple));
                    }
                });
            });
        });
    }
}

/// One canonical representative per equivalence class within `bounds`,
/// sorted by the census order, using the default cap.
pub fn enumerate_valid(bounds: &Bounds) -> Result<Vec<CanonicalForm>, EnumerateError> {
    enumerate_valid_capped(bounds, DEFAULT_CAP)
}

pub fn enumerate_valid_capped(
    bounds: &Bounds,
    cap: u64,
) -> Result<Vec<CanonicalForm>, EnumerateError> {
    let mut out = Vec::new();
    visit_census(bounds, cap, |c| out.push(c.clone()))?;
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// Number of equivalence classes within `bounds`.
pub fn count_classes(bounds: &Bounds) -> Result<u64, EnumerateError> {
    count_classes_capped(bounds, DEFAULT_CAP)
}

pub fn count_classes_capped(bounds: &Bounds, cap: u64) -> Result<u64, EnumerateError> {
    let mut count = 0u64;
    visit_census(bounds, cap, |_| count += 1)?;
    Ok(count)
}

/// Maximum rejection-sampling attempts before giving up. With structurally
/// valid bounds the empty tuple is always admissible, so in practice the
/// limit is never reached.
const MAX_ATTEMPTS: u32 = 1_000_000;

/// A uniformly-seeded random valid tuple within `bounds`: rejection
/// sampling over the raw structural domain. The same `(seed, bounds)`
/// always produces the same tuple, and every class within the bounds has
/// nonzero probability.
pub fn random_valid(seed: u64, bounds: &Bounds) -> Result<InvariantTuple, EnumerateError> {
    bounds.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<SeifertPair> = {
        // Raw pair pool: coprimality is left to the validator.
        let mut all = Vec::new();
        for alpha in 2..=bounds.max_alpha {
            for beta in 1..alpha {
                all.push(SeifertPair::new(alpha, beta));
            }
        }
        all
    };
    let entries: Vec<u32> = (1..=bounds.max_singular_entry / 2).map(|h| 2 * h).collect();

    for _ in 0..MAX_ATTEMPTS {
        let f = rng.random_range(0..=bounds.max_f);
        let k1 = rng.random_range(0..=f);
        let t = rng.random_range(0..=bounds.max_t);
        let k2 = rng.random_range(0..=t);
        let s = rng.random_range(0..=bounds.max_s);
        let k3 = rng.random_range(0..=s);
        let census = BlockCensus::new(f, k1, t, k2, s, k3);
        let genus = rng.random_range(0..=bounds.max_g);
        let epsilon = *EpsilonClass::ALL.choose(&mut rng).expect("non-empty");
        let n = rng.random_range(0..=bounds.max_n) as usize;
        let seifert: Vec<SeifertPair> = (0..n)
            .filter_map(|_| pairs.choose(&mut rng).copied())
            .collect();
        let r: Vec<u32> = (0..(s.saturating_sub(k3)))
            .map(|_| *entries.choose(&mut rng).expect("non-empty"))
            .collect();
        let q: Vec<u32> = (0..k3)
            .map(|_| *entries.choose(&mut rng).expect("non-empty"))
            .collect();
        let regime = Regime::for_context(epsilon, census.f_plus_t(), &seifert);
        let max_b = bounds.max_abs_b as i64;
        let b = match regime {
            Regime::ForcedZero => 0,
            Regime::ModTwo => rng.random_range(0..=1.min(max_b.max(0))),
            Regime::Free => rng.random_range(-max_b..=max_b),
        };
        let tuple = InvariantTuple {
            b: crate::tuple::ObstructionTerm::new(b, regime),
            epsilon,
            genus,
            census,
            seifert,
            singular: crate::tuple::SingularDistribution::new(r, q),
        };
        if tuple.validate().ok() {
            return Ok(tuple);
        }
    }
    Err(EnumerateError::EmptyDomain)
}
