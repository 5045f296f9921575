//! The control functional κ and its certificates.
//!
//! For finite sets `A`, `B` write `k(A,B) = Σ_x (1_A ∗ 1_B)(x)³ / (|A|²|B|²)`.
//! The control of `A` is the supremum of `k(A,B)` over all nonempty `B`.
//! In a finite cyclic group the supremum is a maximum and can be computed
//! exhaustively; over Z any windowed search is only a certified lower
//! bound, and the estimate says so in its mode.  All values are exact
//! rationals, recomputable from the stored witness.

use crate::ambient::{diff_correlation_counts, Ambient, FiniteSet, Point};
use crate::error::{Error, Result};
use crate::exact::{rational_to_string, NormValue};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

/// How a [`ControlEstimate`] was obtained, and hence what it certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ControlMode {
    /// Exhaustive over all nonempty subsets of a finite cyclic group: the
    /// exact κ within that group.
    ExactFiniteGroup,
    /// Exhaustive over all nonempty subsets of a declared window in Z: a
    /// certified lower bound (the supremum over all of Z may be larger).
    ExhaustiveWindowLowerBound,
    /// Maximum over an explicit candidate list: a certified lower bound.
    CandidateLowerBound,
}

impl ControlMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ControlMode::ExactFiniteGroup => "exact-finite-group",
            ControlMode::ExhaustiveWindowLowerBound => "exhaustive-window-lower-bound",
            ControlMode::CandidateLowerBound => "candidate-lower-bound",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ControlEstimate {
    pub value: BigRational,
    pub mode: ControlMode,
    pub witness: FiniteSet,
    pub universe_description: String,
}

impl ControlEstimate {
    /// Recomputes the value from the witness; always equal by construction.
    pub fn recompute(&self, a: &FiniteSet) -> Result<BigRational> {
        control_ratio(a, &self.witness)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "value": rational_to_string(&self.value),
            "mode": self.mode.as_str(),
            "witness": self.witness.to_description(),
            "universe": self.universe_description,
        })
    }
}

/// `Σ_x (1_A ∗ 1_B)(x)³ / (|A|²|B|²)`, exact.
pub fn control_ratio(a: &FiniteSet, b: &FiniteSet) -> Result<BigRational> {
    if b.is_empty() {
        return Err(Error::EmptySet("control_ratio needs nonempty B"));
    }
    if a.is_empty() {
        return Err(Error::EmptySet("control_ratio needs nonempty A"));
    }
    a.ambient().merge(b.ambient())?;
    let cubes = crate::ambient::convolution_cube_sum(a, b);
    let denom = BigInt::from(a.len()).pow(2) * BigInt::from(b.len()).pow(2);
    Ok(BigRational::new(cubes, denom))
}

/// `Σ_x (1_A ∘ 1_A)(x)³` and the lower bound `κ ≥ that / |A|⁴` it implies
/// (it equals `k(A, −A)`).
#[derive(Clone, Debug)]
pub struct WeakControlReport {
    pub cube_autocorrelation: BigInt,
    pub implied_kappa_lower: BigRational,
}

pub fn weak_control_report(a: &FiniteSet) -> Result<WeakControlReport> {
    if a.is_empty() {
        return Err(Error::EmptySet("weak_control_report"));
    }
    let mut cubes = BigInt::zero();
    for (_, c) in diff_correlation_counts(a, a) {
        let c = BigInt::from(c);
        cubes += &c * &c * &c;
    }
    let denom = BigInt::from(a.len()).pow(4);
    Ok(WeakControlReport {
        implied_kappa_lower: BigRational::new(cubes.clone(), denom),
        cube_autocorrelation: cubes,
    })
}

/// Limits for the exhaustive search.
#[derive(Clone, Debug)]
pub struct ExhaustiveConfig {
    /// Largest universe (group order or window size) accepted by default.
    pub universe_limit: u32,
    /// Window override for Z ambients; default is the hull of `A` dilated
    /// by a factor of 2.
    pub window: Option<(i128, i128)>,
}

impl Default for ExhaustiveConfig {
    fn default() -> Self {
        ExhaustiveConfig { universe_limit: 22, window: None }
    }
}

/// Hard cap: never enumerate more than 2^24 subsets.
const HARD_LIMIT: u32 = 24;

/// Maximizes `k(A, B)` over every nonempty `B` in the search universe.
///
/// In Z_n the universe is the whole group and the result is the exact κ
/// within that group.  In Z the universe is a window and the result is a
/// lower bound.  Enumeration fixes the universe minimum inside `B` (the
/// ratio is translation invariant, and every subset has such a translate
/// in the universe), iterates the remaining elements in Gray-code order
/// with incremental convolution updates, and splits the mask space into
/// chunks reduced deterministically.
pub fn control_exhaustive(a: &FiniteSet) -> Result<ControlEstimate> {
    control_exhaustive_with(a, &ExhaustiveConfig::default())
}

pub fn control_exhaustive_with(
    a: &FiniteSet,
    config: &ExhaustiveConfig,
) -> Result<ControlEstimate> {
    if a.is_empty() {
        return Err(Error::EmptySet("control_exhaustive"));
    }
    let limit = config.universe_limit.min(HARD_LIMIT);
    let (universe, modulus, mode, description) = match a.ambient() {
        Ambient::Zn { n } => {
            if *n > limit as u64 {
                return Err(Error::UniverseTooLarge { size: *n, limit: limit as u64 });
            }
            let u: Vec<i128> = (0..*n as i128).collect();
            (
                u,
                Some(*n),
                ControlMode::ExactFiniteGroup,
                format!("all nonempty B within Z_{n} (exhaustive, up to translation)"),
            )
        }
        Ambient::Z { .. } => {
            let (lo, hi) = match config.window {
                Some(w) => w,
                None => default_window(a),
            };
            if lo > hi {
                return Err(Error::BadUniverse(format!("empty window [{lo}, {hi}]")));
            }
            let size = (hi - lo + 1) as u64;
            if size > limit as u64 {
                return Err(Error::UniverseTooLarge { size, limit: limit as u64 });
            }
            let u: Vec<i128> = (lo..=hi).collect();
            (
                u,
                None,
                ControlMode::ExhaustiveWindowLowerBound,
                format!("all nonempty B within the window [{lo}, {hi}] of Z (up to translation)"),
            )
        }
        other => {
            return Err(Error::BadUniverse(format!(
                "exhaustive search needs a cyclic or windowed ambient, got {}",
                other.describe()
            )))
        }
    };

    let a_ints = a.ints();
    debug_assert_eq!(a_ints.len(), a.len());
    let best = search_universe(&a_ints, &universe, modulus);

    let witness_elems = best.mask_elements(&universe);
    let witness_ambient = match a.ambient() {
        Ambient::Zn { n } => Ambient::zn(*n),
        Ambient::Z { bound } => {
            let need = witness_elems.iter().map(|v| v.abs()).max().unwrap_or(1).max(1);
            Ambient::Z { bound: (*bound).max(need) }
        }
        _ => unreachable!(),
    };
    let witness = FiniteSet::from_ints(witness_ambient, witness_elems)?.canonical_translate();
    let value = BigRational::new(
        BigInt::from(best.cubes),
        BigInt::from(a.len() as u64).pow(2) * BigInt::from(best.size).pow(2),
    );
    debug_assert!(value <= BigRational::one());
    debug_assert!(value >= BigRational::new(BigInt::one(), BigInt::from(a.len() as u64)));
    Ok(ControlEstimate { value, mode, witness, universe_description: description })
}

fn default_window(a: &FiniteSet) -> (i128, i128) {
    let v = a.ints();
    let min = *v.iter().min().unwrap();
    let max = *v.iter().max().unwrap();
    let span = max - min;
    // hull dilated by factor 2: same center, twice the length (at least 1)
    let pad = ((span + 1) / 2).max(1);
    (min - pad, max + pad)
}

#[derive(Clone, Debug)]
struct SearchBest {
    cubes: u64,
    size: u64,
    mask: u64,
}

impl SearchBest {
    fn beats(&self, other: &SearchBest) -> bool {
        // cubes/size² > cubes'/size'² ⟺ cubes·size'² > cubes'·size²
        (self.cubes as u128) * (other.size as u128).pow(2)
            > (other.cubes as u128) * (self.size as u128).pow(2)
    }

    fn ties(&self, other: &SearchBest) -> bool {
        (self.cubes as u128) * (other.size as u128).pow(2)
            == (other.cubes as u128) * (self.size as u128).pow(2)
    }

    /// Elements of `B`: the forced universe minimum plus the masked rest.
    fn mask_elements(&self, universe: &[i128]) -> Vec<i128> {
        let mut out = vec![universe[0]];
        for (j, &u) in universe.iter().skip(1).enumerate() {
            if self.mask >> j & 1 == 1 {
                out.push(u);
            }
        }
        out
    }
}

/// Incremental convolution state over a dense result index space.
struct ConvState {
    counts: Vec<u32>,
    cubes: u64,
    size: u64,
}

impl ConvState {
    fn toggle(&mut self, hits: &[u32], on: bool) {
        if on {
            for &i in hits {
                let c = &mut self.counts[i as usize];
                let old = *c as u64;
                *c += 1;
                self.cubes += 3 * old * old + 3 * old + 1; // (c+1)³ − c³
            }
            self.size += 1;
        } else {
            for &i in hits {
                let c = &mut self.counts[i as usize];
                let old = *c as u64;
                *c -= 1;
                self.cubes -= 3 * old * old - 3 * old + 1; // c³ − (c−1)³
            }
            self.size -= 1;
        }
    }
}

fn search_universe(a: &[i128], universe: &[i128], modulus: Option<u64>) -> SearchBest {
    // hits[j][k] = dense result index of a[k] + universe[j]
    let table_len: usize;
    let hits: Vec<Vec<u32>> = match modulus {
        Some(n) => {
            table_len = n as usize;
            universe
                .iter()
                .map(|&u| {
                    a.iter()
                        .map(|&x| (x + u).rem_euclid(n as i128) as u32)
                        .collect()
                })
                .collect()
        }
        None => {
            let lo = a.iter().min().unwrap() + universe.iter().min().unwrap();
            let hi = a.iter().max().unwrap() + universe.iter().max().unwrap();
            table_len = (hi - lo + 1) as usize;
            universe
                .iter()
                .map(|&u| a.iter().map(|&x| (x + u - lo) as u32).collect())
                .collect()
        }
    };

    let free = universe.len() - 1;
    let total: u64 = 1u64 << free;
    let chunk_count = if free >= 10 { 64u64.min(total) } else { 1 };
    let chunk_size = total / chunk_count;

    let tie_break = |cand: &SearchBest, best: &SearchBest| -> bool {
        canonical_key(&cand.mask_elements(universe), modulus)
            < canonical_key(&best.mask_elements(universe), modulus)
    };

    let run_chunk = |chunk: u64| -> SearchBest {
        let start = chunk * chunk_size;
        let end = if chunk + 1 == chunk_count { total } else { start + chunk_size };
        let gray_start = start ^ (start >> 1);
        let mut state = ConvState { counts: vec![0; table_len], cubes: 0, size: 0 };
        state.toggle(&hits[0], true); // forced minimum element of the universe
        for j in 0..free {
            if gray_start >> j & 1 == 1 {
                state.toggle(&hits[j + 1], true);
            }
        }
        let mut mask = gray_start;
        let mut best = SearchBest { cubes: state.cubes, size: state.size, mask };
        for i in start + 1..end {
            let bit = i.trailing_zeros() as usize;
            let on = mask >> bit & 1 == 0;
            state.toggle(&hits[bit + 1], on);
            mask ^= 1 << bit;
            let cand = SearchBest { cubes: state.cubes, size: state.size, mask };
            if cand.beats(&best) || (cand.ties(&best) && tie_break(&cand, &best)) {
                best = cand;
            }
        }
        best
    };

    let bests: Vec<SearchBest> = (0..chunk_count).into_par_iter().map(run_chunk).collect();
    let mut best = bests[0].clone();
    for cand in bests.into_iter().skip(1) {
        if cand.beats(&best) || (cand.ties(&best) && tie_break(&cand, &best)) {
            best = cand;
        }
    }
    best
}

/// Translation-canonical key of a subset, for deterministic tie-breaking.
fn canonical_key(elems: &[i128], modulus: Option<u64>) -> Vec<i128> {
    match modulus {
        None => {
            let min = elems.iter().min().copied().unwrap_or(0);
            elems.iter().map(|&x| x - min).collect()
        }
        Some(n) => {
            let n = n as i128;
            let mut best: Option<Vec<i128>> = None;
            for &e in elems {
                let mut rolled: Vec<i128> = elems.iter().map(|&x| (x - e).rem_euclid(n)).collect();
                rolled.sort_unstable();
                if best.as_ref().map_or(true, |b| rolled < *b) {
                    best = Some(rolled);
                }
            }
            best.unwrap_or_default()
        }
    }
}

/// Maximizes `k(A, ·)` over an explicit candidate list.
pub fn control_candidates(a: &FiniteSet, candidates: &[FiniteSet]) -> Result<ControlEstimate> {
    if a.is_empty() {
        return Err(Error::EmptySet("control_candidates"));
    }
    if candidates.is_empty() {
        return Err(Error::EmptySet("control_candidates needs candidates"));
    }
    let scored: Vec<(BigRational, &FiniteSet)> = candidates
        .par_iter()
        .filter(|c| !c.is_empty())
        .map(|c| Ok((control_ratio(a, c)?, c)))
        .collect::<Result<Vec<_>>>()?;
    if scored.is_empty() {
        return Err(Error::EmptySet("all candidates empty"));
    }
    let mut best = &scored[0];
    for s in &scored[1..] {
        if s.0 > best.0
            || (s.0 == best.0
                && s.1.canonical_translate().elements() < best.1.canonical_translate().elements())
        {
            best = s;
        }
    }
    Ok(ControlEstimate {
        value: best.0.clone(),
        mode: ControlMode::CandidateLowerBound,
        witness: best.1.clone(),
        universe_description: format!("maximum over {} explicit candidates", scored.len()),
    })
}

/// The default candidate list: `A`, `−A`, `A−A`, an interval of length
/// `|A|` centred at the median (one-dimensional ambients only), and the
/// symmetry sets at δ = 1/2 and 1/4.
pub fn default_candidates(a: &FiniteSet) -> Vec<FiniteSet> {
    let mut out = vec![a.clone(), a.negate()];
    if let Ok(diff) = crate::ambient::set_algebra(a, a, crate::ambient::SetOp::Difference) {
        out.push(diff);
    }
    if a.ambient().is_one_dimensional() && !a.is_empty() {
        let v = a.ints();
        let median = v[v.len() / 2];
        let half = (a.len() as i128) / 2;
        let lo = median - half;
        let elems: Vec<i128> = (lo..lo + a.len() as i128).collect();
        let interval = match a.ambient() {
            Ambient::Zn { n } => FiniteSet::from_ints(
                Ambient::zn(*n),
                elems.iter().map(|&x| x.rem_euclid(*n as i128)),
            ),
            Ambient::Z { bound } => {
                let need = elems.iter().map(|v| v.abs()).max().unwrap_or(1).max(1);
                FiniteSet::from_ints(Ambient::Z { bound: (*bound).max(need) }, elems)
            }
            _ => unreachable!(),
        };
        if let Ok(i) = interval {
            out.push(i);
        }
    }
    for (num, den) in [(1i64, 2i64), (1, 4)] {
        let delta = BigRational::new(BigInt::from(num), BigInt::from(den));
        if let Ok(s) = symmetry_level_set(a, &delta) {
            if !s.is_empty() {
                out.push(s);
            }
        }
    }
    out.sort_by(|x, y| x.elements().cmp(y.elements()));
    out.dedup();
    out
}

/// `{x : (1_A ∘ 1_A)(x) ≥ δ|A|}` — the set of popular differences.  The
/// decompose module re-exports this as its symmetry-set operation.
pub fn symmetry_level_set(a: &FiniteSet, delta: &BigRational) -> Result<FiniteSet> {
    if delta <= &BigRational::zero() || delta > &BigRational::one() {
        return Err(Error::Precondition(format!(
            "symmetry set needs 0 < delta <= 1, got {}",
            rational_to_string(delta)
        )));
    }
    let threshold = delta * BigRational::from_integer(BigInt::from(a.len() as u64));
    let mut elems: Vec<Point> = Vec::new();
    for (p, c) in diff_correlation_counts(a, a) {
        if BigRational::from_integer(BigInt::from(c)) >= threshold {
            elems.push(p);
        }
    }
    FiniteSet::new(a.ambient().clone(), elems)
}

/// The right-hand side of the Hölder bound `κ^{1/6}|A|^{5/6}|S|^{5/6}` as
/// an exactly comparable quantity (a sixth root of a rational).
pub fn holder_upper_bound(
    a: &FiniteSet,
    s: &FiniteSet,
    kappa: &BigRational,
) -> Result<NormValue> {
    if kappa <= &BigRational::zero() || kappa > &BigRational::one() {
        return Err(Error::KappaOutOfRange(rational_to_string(kappa)));
    }
    let na = BigRational::from_integer(BigInt::from(a.len() as u64));
    let ns = BigRational::from_integer(BigInt::from(s.len() as u64));
    let base = kappa * crate::exact::rational_pow(&na, 5) * crate::exact::rational_pow(&ns, 5);
    Ok(NormValue::rational_pow(&base, 1, 6))
}
