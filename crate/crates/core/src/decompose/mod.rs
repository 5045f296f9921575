//! Constructive decomposition machinery: dyadic level sets, the dominant
//! level selection ("pigeonholing"), symmetry sets, the BSG extraction
//! pipeline, the convex decomposition, and the iterated energy-refinement
//! chain.  Every threshold is an exact rational and every emitted set can
//! be re-verified by recomputing the defining inequality.

mod bsg;
mod chain;
mod convex;

pub use bsg::{
    bsg_extract, bsg_pipeline, bsg_refine, verify_bsg_certificate, BadPairs, BsgBranch,
    BsgCertificate,
};
pub use chain::{energy_chain, verify_energy_chain, EnergyChain};
pub use convex::{
    convex_decompose, ControlOracle, DecompositionCertificate, DecomposeMap, RoundLog,
};

pub use crate::control::symmetry_level_set as symmetry_set;

use crate::ambient::{DensityFunction, FiniteSet};
use crate::error::{Error, Result};
use crate::exact::rational_to_string;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// One dyadic level of a nonnegative function: the set where
/// `f ∈ (threshold_low, threshold_high]`, with `threshold_high` equal to
/// `scale / 2^index` and the thresholds in ratio 2.
#[derive(Clone, Debug)]
pub struct LevelSet {
    pub index: u32,
    pub threshold_low: BigRational,
    pub threshold_high: BigRational,
    pub set: FiniteSet,
}

/// The default floor for discarding negligible levels.
pub fn default_floor() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2u8).pow(40))
}

fn dyadic_exponent(floor: &BigRational) -> Result<u32> {
    // floor must be 2^-k so that level boundaries line up exactly
    if floor <= &BigRational::zero() || floor > &BigRational::one() {
        return Err(Error::Precondition(format!(
            "floor must lie in (0, 1], got {}",
            rational_to_string(floor)
        )));
    }
    let numer = floor.numer();
    let denom = floor.denom();
    if !numer.is_one() {
        return Err(Error::Precondition(format!(
            "floor must be a dyadic fraction 2^-k, got {}",
            rational_to_string(floor)
        )));
    }
    let (_, digits) = denom.to_u64_digits();
    let d = digits.first().copied().unwrap_or(1);
    if digits.len() > 1 || !d.is_power_of_two() {
        return Err(Error::Precondition(format!(
            "floor must be a dyadic fraction 2^-k, got {}",
            rational_to_string(floor)
        )));
    }
    Ok(d.trailing_zeros())
}

/// Dyadic level sets of a nonnegative `f` relative to `scale`:
/// `B_i = {x : f(x) ∈ (scale·2^{−i−1}, scale·2^{−i}]}` for `0 ≤ i < k`
/// where `floor = 2^{−k}`.  Requires `f ≤ scale`; the nonempty levels are
/// returned and partition `{x : f(x) > floor·scale}` exactly.
pub fn level_sets_scaled(
    f: &DensityFunction,
    scale: &BigRational,
    floor: &BigRational,
) -> Result<Vec<LevelSet>> {
    if let Some(p) = f.first_negative() {
        return Err(Error::NegativeValue(p.render()));
    }
    let k = dyadic_exponent(floor)?;
    let max = f.max_abs();
    if &max > scale {
        return Err(Error::Precondition(format!(
            "function exceeds the level scale: max {} > scale {}",
            rational_to_string(&max),
            rational_to_string(scale)
        )));
    }
    let mut out = Vec::new();
    let mut high = scale.clone();
    let two = BigRational::from_integer(BigInt::from(2));
    for i in 0..k {
        let low = &high / &two;
        let elems: Vec<_> = f
            .iter()
            .filter(|(_, v)| *v > &low && *v <= &high)
            .map(|(p, _)| p.clone())
            .collect();
        if !elems.is_empty() {
            out.push(LevelSet {
                index: i,
                threshold_low: low.clone(),
                threshold_high: high.clone(),
                set: FiniteSet::new(f.ambient().clone(), elems)?,
            });
        }
        high = low;
    }
    Ok(out)
}

/// Level sets scaled by `‖f‖_∞`, the default convention.
pub fn level_sets(f: &DensityFunction, floor: &BigRational) -> Result<Vec<LevelSet>> {
    let scale = f.max_abs();
    if scale.is_zero() {
        return Ok(Vec::new());
    }
    level_sets_scaled(f, &scale, floor)
}

/// The level maximizing `threshold_low^weight · |set|`, ties broken toward
/// the larger threshold.  This is the dyadic pigeonhole: with weight `w`,
/// the winning level carries at least a `1/(number of levels)` share of
/// the `Σ f(x)^{w+1}`-style mass.
pub fn dominant_level(
    f: &DensityFunction,
    weight: &BigRational,
    floor: &BigRational,
) -> Result<LevelSet> {
    if weight < &BigRational::zero() {
        return Err(Error::Precondition("weight exponent must be nonnegative".into()));
    }
    let levels = level_sets(f, floor)?;
    let p: i64 = weight
        .numer()
        .try_into()
        .map_err(|_| Error::Precondition("weight exponent too large".into()))?;
    let q: i64 = weight
        .denom()
        .try_into()
        .map_err(|_| Error::Precondition("weight exponent too large".into()))?;
    // score comparison: t1^(p/q)·s1 vs t2^(p/q)·s2  ⟺  t1^p·s1^q vs t2^p·s2^q
    let key = |l: &LevelSet| -> BigRational {
        crate::exact::rational_pow(&l.threshold_low, p)
            * crate::exact::rational_pow(
                &BigRational::from_integer(BigInt::from(l.set.len() as u64)),
                q,
            )
    };
    levels
        .into_iter()
        .reduce(|best, cand| if key(&cand) > key(&best) { cand } else { best })
        .ok_or_else(|| Error::AllMassBelowFloor(rational_to_string(floor)))
}

/// Builds a density from integer correlation counts.
pub(crate) fn density_from_counts(
    ambient: &crate::ambient::Ambient,
    counts: impl IntoIterator<Item = (crate::ambient::Point, u64)>,
) -> DensityFunction {
    let mut f = DensityFunction::zero(ambient.clone());
    for (p, c) in counts {
        f.set(p, BigRational::from_integer(BigInt::from(c)));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{diff_correlation_counts, Ambient, Point};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn autocorr(elems: &[i128]) -> DensityFunction {
        let a = FiniteSet::from_ints(Ambient::z(64), elems.iter().copied()).unwrap();
        density_from_counts(&a.ambient().clone(), diff_correlation_counts(&a, &a))
    }

    #[test]
    fn level_sets_of_interval_autocorrelation() {
        // f = 1_A∘1_A for A = {0,1,2,3}: values 4,3,3,2,2,1,1; scale 4
        let f = autocorr(&[0, 1, 2, 3]);
        let levels = level_sets(&f, &rat(1, 8)).unwrap();
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[0].threshold_low, rat(2, 1));
        assert_eq!(levels[0].set.ints(), vec![-1, 0, 1]);
        assert_eq!(levels[1].set.ints(), vec![-2, 2]);
        assert_eq!(levels[2].threshold_low, rat(1, 2));
        assert_eq!(levels[2].set.ints(), vec![-3, 3]);
    }

    #[test]
    fn levels_partition_and_reconstruct() {
        let f = autocorr(&[0, 1, 3, 7, 12]);
        let floor = rat(1, 1 << 10);
        let levels = level_sets(&f, &floor).unwrap();
        // disjoint, and restriction sum reconstructs f above the floor
        let mut reconstructed = DensityFunction::zero(f.ambient().clone());
        for l in &levels {
            let r = f.restrict(&l.set);
            reconstructed = reconstructed.plus(&r).unwrap();
        }
        let cutoff = &floor * f.max_abs();
        for (p, v) in f.iter() {
            if v > &cutoff {
                assert_eq!(&reconstructed.value(p), v, "at {}", p.render());
            }
        }
        let total: usize = levels.iter().map(|l| l.set.len()).sum();
        let above: usize = f.iter().filter(|(_, v)| **v > cutoff).count();
        assert_eq!(total, above);
    }

    #[test]
    fn constant_function_has_single_level() {
        let a = FiniteSet::from_ints(Ambient::z(8), [0, 2, 5]).unwrap();
        let levels = level_sets(&a.indicator(), &rat(1, 16)).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].set.len(), 3);
        assert_eq!(levels[0].index, 0);
    }

    #[test]
    fn absolute_scale_layer_cake() {
        // f ≤ 1 with absolute dyadic levels (scale 1)
        let f = DensityFunction::from_pairs(
            Ambient::z(8),
            [
                (Point::Int(0), rat(1, 1)),
                (Point::Int(1), rat(3, 8)),
                (Point::Int(2), rat(1, 4)),
                (Point::Int(3), rat(1, 16)),
            ],
        )
        .unwrap();
        let levels = level_sets_scaled(&f, &rat(1, 1), &rat(1, 32)).unwrap();
        let mut reconstructed = DensityFunction::zero(f.ambient().clone());
        for l in &levels {
            reconstructed = reconstructed.plus(&f.restrict(&l.set)).unwrap();
        }
        assert_eq!(reconstructed, f); // everything sits above 1/32
    }

    #[test]
    fn dominant_level_weights() {
        let f = autocorr(&[0, 1, 2, 3]);
        // weight 2: level (2,4] wins with score 4·3 = 12
        let l = dominant_level(&f, &rat(2, 1), &rat(1, 8)).unwrap();
        assert_eq!(l.threshold_low, rat(2, 1));
        assert_eq!(l.set.ints(), vec![-1, 0, 1]);
        // weight 0: the largest level wins (still the top one here)
        let l = dominant_level(&f, &rat(0, 1), &rat(1, 8)).unwrap();
        assert_eq!(l.set.len(), 3);
    }

    #[test]
    fn dominant_level_tie_prefers_larger_threshold() {
        // two singleton levels, equal scores at weight 0
        let f = DensityFunction::from_pairs(
            Ambient::z(8),
            [(Point::Int(0), rat(4, 1)), (Point::Int(1), rat(2, 1))],
        )
        .unwrap();
        let l = dominant_level(&f, &rat(0, 1), &rat(1, 8)).unwrap();
        assert_eq!(l.threshold_low, rat(2, 1));
    }

    #[test]
    fn floor_must_be_dyadic() {
        let f = autocorr(&[0, 1]);
        assert!(level_sets(&f, &rat(1, 3)).is_err());
        assert!(level_sets(&f, &rat(3, 8)).is_err());
        assert!(level_sets(&f, &rat(0, 1)).is_err());
    }

    #[test]
    fn negative_values_rejected() {
        let f = DensityFunction::from_pairs(Ambient::z(4), [(Point::Int(0), rat(-1, 1))]).unwrap();
        assert!(level_sets(&f, &rat(1, 8)).is_err());
    }

    #[test]
    fn all_mass_below_floor_errors() {
        let f = DensityFunction::zero(Ambient::z(4));
        assert!(matches!(
            dominant_level(&f, &rat(2, 1), &rat(1, 8)),
            Err(Error::AllMassBelowFloor(_))
        ));
    }

    #[test]
    fn symmetry_set_examples() {
        let a = FiniteSet::from_ints(Ambient::z(8), [0, 1, 2, 3]).unwrap();
        let s = symmetry_set(&a, &rat(1, 2)).unwrap();
        assert_eq!(s.ints(), vec![-2, -1, 0, 1, 2]);

        // δ = 1 on a Sidon set leaves only 0
        let sidon = FiniteSet::from_ints(Ambient::z(8), [0, 1, 3]).unwrap();
        let s = symmetry_set(&sidon, &rat(1, 1)).unwrap();
        assert_eq!(s.ints(), vec![0]);

        // tiny δ recovers A−A
        let s = symmetry_set(&sidon, &rat(1, 1 << 20)).unwrap();
        assert_eq!(s.ints(), vec![-3, -2, -1, 0, 1, 2, 3]);

        // always contains 0, symmetric under negation
        assert!(s.contains(&Point::Int(0)));
        for p in s.elements() {
            assert!(s.contains(&s.ambient().neg(p)));
        }
        assert!(symmetry_set(&a, &rat(0, 1)).is_err());
    }
}
