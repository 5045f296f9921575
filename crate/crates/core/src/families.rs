//! Generators for the example families the workbench exercises: intervals,
//! progressions, squares, convex sets built from gap sequences, random
//! subsets, sphere slices of lattices, and the multiplicative embedding
//! that turns product-set questions into additive ones.

use crate::ambient::{Ambient, FiniteSet, Point};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `{start, …, start + n − 1}`.
    Interval { n: u64, #[serde(default)] start: i64 },
    /// Arithmetic progression `{start + i·step : 0 ≤ i < n}`.
    Ap { start: i64, step: i64, n: u64 },
    /// Geometric progression `{first·ratio^i : 0 ≤ i < n}`.
    Geometric { first: i64, ratio: i64, n: u64 },
    /// `{i² : 1 ≤ i ≤ n}`.
    Squares { n: u64 },
    /// Cumulative sums of a strictly increasing gap sequence.
    ConvexFromGaps { gaps: Vec<i64>, #[serde(default)] start: i64 },
    /// Uniform `m`-subset of a finite ambient, Floyd-sampled from the seed.
    RandomSubset { universe: Ambient, m: u64, seed: u64 },
    /// `Z^d` intersected with the sphere of squared radius `r2`.
    MazurSphere { d: usize, r2: u64 },
    /// Convex set whose gaps are `2i−1` plus cumulative seeded jitter in
    /// `{0, …, magnitude}`; strict convexity is preserved by construction.
    PerturbedConvex { n: u64, magnitude: u64, seed: u64 },
}

impl FamilySpec {
    pub fn describe(&self) -> String {
        serde_json::to_string(self).unwrap_or_else(|_| format!("{self:?}"))
    }
}

pub fn generate(spec: &FamilySpec) -> Result<FiniteSet> {
    match spec {
        FamilySpec::Interval { n, start } => {
            check(*n >= 1, "interval needs n >= 1")?;
            let elems: Vec<i128> = (0..*n as i128).map(|i| *start as i128 + i).collect();
            windowed(elems)
        }
        FamilySpec::Ap { start, step, n } => {
            check(*n >= 1 && *step != 0, "ap needs n >= 1 and step != 0")?;
            let elems: Vec<i128> = (0..*n as i128)
                .map(|i| *start as i128 + i * *step as i128)
                .collect();
            windowed(elems)
        }
        FamilySpec::Geometric { first, ratio, n } => {
            check(*n >= 1 && *first >= 1 && *ratio >= 2, "geometric needs first >= 1, ratio >= 2, n >= 1")?;
            let mut elems = Vec::with_capacity(*n as usize);
            let mut cur = *first as i128;
            for _ in 0..*n {
                elems.push(cur);
                cur = cur
                    .checked_mul(*ratio as i128)
                    .ok_or_else(|| Error::InvalidFamily("geometric overflow".into()))?;
            }
            windowed(elems)
        }
        FamilySpec::Squares { n } => {
            check(*n >= 1, "squares needs n >= 1")?;
            let elems: Vec<i128> = (1..=*n as i128).map(|i| i * i).collect();
            windowed(elems)
        }
        FamilySpec::ConvexFromGaps { gaps, start } => {
            check(!gaps.is_empty(), "convex_from_gaps needs gaps")?;
            for w in gaps.windows(2) {
                if w[1] <= w[0] {
                    return Err(Error::InvalidFamily(format!(
                        "gaps must strictly increase, got {} then {}",
                        w[0], w[1]
                    )));
                }
            }
            check(gaps[0] >= 1, "gaps must be positive")?;
            let mut elems = vec![*start as i128];
            for g in gaps {
                elems.push(elems.last().unwrap() + *g as i128);
            }
            let set = windowed(elems)?;
            debug_assert!(is_convex(&set));
            Ok(set)
        }
        FamilySpec::RandomSubset { universe, m, seed } => random_subset(universe, *m, *seed),
        FamilySpec::MazurSphere { d, r2 } => mazur_sphere(*d, *r2),
        FamilySpec::PerturbedConvex { n, magnitude, seed } => {
            check(*n >= 1, "perturbed_convex needs n >= 1")?;
            let mut rng = SplitMix64::new(*seed);
            let mut elems = vec![1i128];
            let mut gap = 1i128 + rng.below(magnitude + 1) as i128;
            for i in 1..*n {
                elems.push(elems.last().unwrap() + gap);
                let _ = i;
                gap += 2 + rng.below(magnitude + 1) as i128;
            }
            let set = windowed(elems)?;
            debug_assert!(is_convex(&set));
            Ok(set)
        }
    }
}

fn check(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidFamily(msg.into()))
    }
}

fn windowed(elems: Vec<i128>) -> Result<FiniteSet> {
    let bound = elems.iter().map(|v| v.abs()).max().unwrap_or(1).max(1);
    FiniteSet::from_ints(Ambient::Z { bound }, elems)
}

/// Strictly increasing consecutive gaps.
pub fn is_convex(a: &FiniteSet) -> bool {
    let v = a.ints();
    if v.len() != a.len() {
        return false;
    }
    v.windows(3).all(|w| w[2] - w[1] > w[1] - w[0])
}

/// Uniform `m`-subset of a finite ambient, deterministic per seed.
pub fn random_subset(universe: &Ambient, m: u64, seed: u64) -> Result<FiniteSet> {
    let points = universe
        .universe()
        .ok_or_else(|| Error::InvalidFamily(format!("{} is not enumerable", universe.describe())))?;
    if m > points.len() as u64 {
        return Err(Error::InvalidFamily(format!(
            "cannot sample {m} from a universe of {}",
            points.len()
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let idx = rng.sample_indices(points.len() as u64, m);
    let elems = idx.into_iter().map(|i| points[i as usize].clone()).collect();
    FiniteSet::new(universe.clone(), elems)
}

/// Embeds a set of positive integers (or positive rationals) into the
/// prime-exponent lattice spanned by the primes dividing its elements.
/// The map is a group embedding: products become sums, so multiplicative
/// statistics of `A` equal additive statistics of the image, exactly.
pub fn mult_embed(a: &FiniteSet) -> Result<FiniteSet> {
    let pairs = mult_embed_pairs(a)?;
    let d = match pairs.first() {
        Some((_, Point::Vec(v))) => v.len(),
        _ => 1,
    };
    FiniteSet::new(Ambient::zd(d), pairs.into_iter().map(|(_, img)| img).collect())
}

/// The embedding as explicit `(element, prime-exponent vector)` pairs, in
/// the set's element order.
pub fn mult_embed_pairs(a: &FiniteSet) -> Result<Vec<(Point, Point)>> {
    let mut ratios: Vec<(i128, i128)> = Vec::with_capacity(a.len());
    for e in a.elements() {
        match e {
            Point::Int(v) if *v >= 1 => ratios.push((*v, 1)),
            Point::Ratio(n, d) => ratios.push((*n, *d)),
            other => return Err(Error::NonpositiveElement(other.render())),
        }
    }
    let mut primes: BTreeSet<i128> = BTreeSet::new();
    for (n, d) in &ratios {
        for v in [*n, *d] {
            for (p, _) in factorize(v) {
                primes.insert(p);
            }
        }
    }
    let primes: Vec<i128> = primes.into_iter().collect();
    let d = primes.len().max(1);
    let mut out = Vec::with_capacity(ratios.len());
    for (e, (n, den)) in a.elements().iter().zip(&ratios) {
        let mut v = vec![0i64; d];
        for (p, exp) in factorize(*n) {
            let i = primes.binary_search(&p).unwrap();
            v[i] += exp as i64;
        }
        for (p, exp) in factorize(*den) {
            let i = primes.binary_search(&p).unwrap();
            v[i] -= exp as i64;
        }
        out.push((e.clone(), Point::Vec(v)));
    }
    Ok(out)
}

fn factorize(mut n: i128) -> Vec<(i128, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2i128;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Mixed-operation growth statistics of a set of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderStats {
    /// `|A(A+A)|`
    pub a_times_sumset: u64,
    /// `|A(A−A) \ {0}|`
    pub a_times_diffset: u64,
    /// `min_{a∈A} |A(A+a)|`
    pub min_shifted_product: u64,
    /// `|AA|`
    pub product_set: u64,
    /// `|A/A|`
    pub ratio_set: u64,
}

pub fn expander_stats(a: &FiniteSet) -> Result<ExpanderStats> {
    let vals = a.ints();
    if vals.is_empty() || vals.len() != a.len() {
        return Err(Error::InvalidFamily("expander stats need integer elements".into()));
    }
    if vals.iter().any(|&v| v <= 0) {
        return Err(Error::NonpositiveElement(
            vals.iter().find(|&&v| v <= 0).unwrap().to_string(),
        ));
    }
    let mut sums: BTreeSet<i128> = BTreeSet::new();
    let mut diffs: BTreeSet<i128> = BTreeSet::new();
    for &x in &vals {
        for &y in &vals {
            sums.insert(x + y);
            diffs.insert(x - y);
        }
    }
    let product_with = |rhs: &BTreeSet<i128>, skip_zero: bool| -> u64 {
        let mut out: BTreeSet<i128> = BTreeSet::new();
        for &x in &vals {
            for &y in rhs {
                if skip_zero && y == 0 {
                    continue;
                }
                out.insert(x * y);
            }
        }
        out.len() as u64
    };
    let a_times_sumset = product_with(&sums, false);
    let a_times_diffset = product_with(&diffs, true);
    let min_shifted_product = vals
        .iter()
        .map(|&sh| {
            let shifted: BTreeSet<i128> = vals.iter().map(|&x| x + sh).collect();
            product_with(&shifted, false)
        })
        .min()
        .unwrap();
    let mut products: BTreeSet<i128> = BTreeSet::new();
    let mut ratios: BTreeSet<(i128, i128)> = BTreeSet::new();
    for &x in &vals {
        for &y in &vals {
            products.insert(x * y);
            let g = gcd(x, y);
            ratios.insert((x / g, y / g));
        }
    }
    Ok(ExpanderStats {
        a_times_sumset,
        a_times_diffset,
        min_shifted_product,
        product_set: products.len() as u64,
        ratio_set: ratios.len() as u64,
    })
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn mazur_sphere(d: usize, r2: u64) -> Result<FiniteSet> {
    if d < 1 || d > 8 {
        return Err(Error::InvalidFamily("sphere dimension must be in 1..=8".into()));
    }
    let mut out: Vec<Point> = Vec::new();
    let mut coords = vec![0i64; d];
    // depth-first over coordinates, pruning on the remaining norm
    fn descend(
        coords: &mut Vec<i64>,
        idx: usize,
        remaining: i128,
        out: &mut Vec<Point>,
    ) {
        if idx == coords.len() {
            if remaining == 0 {
                out.push(Point::Vec(coords.clone()));
            }
            return;
        }
        let r = crate::exact::isqrt(&num::BigUint::from(remaining as u128));
        let r: i64 = u64::try_from(&r).unwrap() as i64;
        for c in -r..=r {
            let c2 = (c as i128) * (c as i128);
            if c2 <= remaining {
                coords[idx] = c;
                descend(coords, idx + 1, remaining - c2, out);
            }
        }
        coords[idx] = 0;
    }
    descend(&mut coords, 0, r2 as i128, &mut out);
    FiniteSet::new(Ambient::zd(d), out)
}

/// Verify that a set-valued multiplicative statistic matches its additive
/// image: `E_×(A) = E_+(embed A)`.
pub fn multiplicative_energy(a: &FiniteSet) -> Result<u128> {
    let image = mult_embed(a)?;
    Ok(crate::ambient::stats(&image)?.energy)
}
