use super::{Ambient, FiniteSet, Point};
use crate::error::{Error, Result};
use crate::exact::{NormValue, Radical};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A finitely supported function from ambient elements to exact rationals.
/// Queries outside the support return 0 exactly; zero values are never
/// stored, so the support map is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityFunction {
    ambient: Ambient,
    support: BTreeMap<Point, BigRational>,
}

impl DensityFunction {
    pub fn zero(ambient: Ambient) -> DensityFunction {
        DensityFunction { ambient, support: BTreeMap::new() }
    }

    pub fn from_pairs(
        ambient: Ambient,
        pairs: impl IntoIterator<Item = (Point, BigRational)>,
    ) -> Result<DensityFunction> {
        let mut f = DensityFunction::zero(ambient);
        for (p, v) in pairs {
            if !f.ambient.contains(&p) {
                return Err(Error::ElementOutsideAmbient(p.render(), f.ambient.describe()));
            }
            f.add(p, v);
        }
        Ok(f)
    }

    /// The Dirac delta at the group identity.
    pub fn delta(ambient: Ambient) -> DensityFunction {
        let zero = ambient.zero();
        let mut f = DensityFunction::zero(ambient);
        f.set(zero, BigRational::one());
        f
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &BigRational)> {
        self.support.iter()
    }

    pub fn value(&self, p: &Point) -> BigRational {
        self.support.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, p: Point, v: BigRational) {
        if v.is_zero() {
            self.support.remove(&p);
        } else {
            self.support.insert(p, v);
        }
    }

    pub fn add(&mut self, p: Point, v: BigRational) {
        if v.is_zero() {
            return;
        }
        let entry = self.support.entry(p.clone()).or_insert_with(BigRational::zero);
        *entry += v;
        if entry.is_zero() {
            self.support.remove(&p);
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.support.values().all(|v| !v.is_negative())
    }

    pub fn first_negative(&self) -> Option<&Point> {
        self.support
            .iter()
            .find(|(_, v)| v.is_negative())
            .map(|(p, _)| p)
    }

    /// `Σ_x f(x)` exactly.
    pub fn mass(&self) -> BigRational {
        self.support.values().sum()
    }

    /// `max_x |f(x)|` exactly (the L^∞ norm).
    pub fn max_abs(&self) -> BigRational {
        self.support
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// The support as a set.
    pub fn support_set(&self) -> FiniteSet {
        FiniteSet::new(self.ambient.clone(), self.support.keys().cloned().collect())
            .expect("support points validated at insertion")
    }

    /// `f(-x)` pointwise.
    pub fn reflect(&self) -> DensityFunction {
        let mut out = DensityFunction::zero(self.ambient.clone());
        for (p, v) in &self.support {
            out.add(self.ambient.neg(p), v.clone());
        }
        out
    }

    /// `Σ_x f(x) g(x)` exactly.
    pub fn inner(&self, other: &DensityFunction) -> BigRational {
        let (small, big) = if self.support.len() <= other.support.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = BigRational::zero();
        for (p, v) in &small.support {
            if let Some(w) = big.support.get(p) {
                acc += v * w;
            }
        }
        acc
    }

    /// Pointwise restriction of `f` to a set.
    pub fn restrict(&self, to: &FiniteSet) -> DensityFunction {
        let mut out = DensityFunction::zero(self.ambient.clone());
        for (p, v) in &self.support {
            if to.contains(p) {
                out.set(p.clone(), v.clone());
            }
        }
        out
    }

    /// Pointwise sum.
    pub fn plus(&self, other: &DensityFunction) -> Result<DensityFunction> {
        let ambient = self.ambient.merge(&other.ambient)?;
        let mut out = DensityFunction::zero(ambient);
        for (p, v) in self.support.iter().chain(other.support.iter()) {
            out.add(p.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> DensityFunction {
        let mut out = DensityFunction::zero(self.ambient.clone());
        for (p, v) in &self.support {
            out.set(p.clone(), v * c);
        }
        out
    }

    /// Integer values and offsets for one-dimensional, integer-valued
    /// densities after clearing denominators: returns `(pairs, lcm)` with
    /// `f = pairs / lcm`.
    pub(crate) fn cleared_integer_form(&self) -> Option<(Vec<(i128, BigInt)>, BigInt)> {
        if !self.ambient.is_one_dimensional() {
            return None;
        }
        let mut lcm = BigInt::one();
        for v in self.support.values() {
            lcm = num::integer::lcm(lcm, v.denom().clone());
        }
        let mut out = Vec::with_capacity(self.support.len());
        for (p, v) in &self.support {
            let x = p.as_int()?;
            let scaled = v * BigRational::from_integer(lcm.clone());
            debug_assert!(scaled.denom().is_one());
            out.push((x, scaled.numer().clone()));
        }
        Some((out, lcm))
    }
}

/// The exponent of an Lp norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormExponent {
    Finite(BigRational),
    Infinity,
}

impl NormExponent {
    pub fn rational(num: i64, den: i64) -> NormExponent {
        NormExponent::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

/// The Lp norm of `f` as an exactly comparable quantity.
///
/// Integer `p` yields `(Σ|f|^p)^{1/p}` with a rational base; half-integer
/// `p = a/2` yields a multiquadratic base `(Σ|f|^{a/2})^2` under the root
/// `a`.  Comparisons between any two results cross-power to a common
/// integer exponent, so no rounding ever enters.
pub fn lp_norm(f: &DensityFunction, p: &NormExponent) -> Result<NormValue> {
    match p {
        NormExponent::Infinity => Ok(NormValue::from_rational(f.max_abs())),
        NormExponent::Finite(p) => {
            if p < &BigRational::one() {
                return Err(Error::InvalidNormExponent(crate::exact::rational_to_string(p)));
            }
            let a_big = p.numer();
            let b_big = p.denom();
            let a: u32 = a_big
                .try_into()
                .map_err(|_| Error::InvalidNormExponent(crate::exact::rational_to_string(p)))?;
            let b: u32 = b_big
                .try_into()
                .map_err(|_| Error::InvalidNormExponent(crate::exact::rational_to_string(p)))?;
            match b {
                1 => {
                    let mut acc = BigRational::zero();
                    for v in f.support.values() {
                        acc += crate::exact::rational_pow(&v.abs(), a as i64);
                    }
                    Ok(NormValue::new(Radical::from_rational(acc), a))
                }
                2 => {
                    // Σ |f|^{a/2} = Σ |f|^{(a-1)/2} √|f|
                    let mut w = Radical::zero();
                    for v in f.support.values() {
                        let va = v.abs();
                        let coeff = crate::exact::rational_pow(&va, ((a - 1) / 2) as i64);
                        w.add_term(coeff, &va);
                    }
                    Ok(NormValue::new(w.square(), a))
                }
                _ => Err(Error::InexactNormExponent(crate::exact::rational_to_string(p))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn f_of(pairs: &[(i128, (i64, i64))]) -> DensityFunction {
        DensityFunction::from_pairs(
            Ambient::z(64),
            pairs.iter().map(|(x, (n, d))| (Point::Int(*x), rat(*n, *d))),
        )
        .unwrap()
    }

    #[test]
    fn l3_of_indicator() {
        // ‖1_{0,1,2}‖_3^3 = 3
        let f = FiniteSet::from_ints(Ambient::z(4), [0, 1, 2]).unwrap().indicator();
        let n = lp_norm(&f, &NormExponent::rational(3, 1)).unwrap();
        let three_to_third = NormValue::rational_pow(&rat(3, 1), 1, 3);
        assert_eq!(n.cmp_exact(&three_to_third), Ordering::Equal);
    }

    #[test]
    fn linf() {
        let f = f_of(&[(0, (3, 1)), (1, (-5, 1))]);
        let n = lp_norm(&f, &NormExponent::Infinity).unwrap();
        assert_eq!(n.cmp_exact(&NormValue::from_rational(rat(5, 1))), Ordering::Equal);
    }

    #[test]
    fn p_below_one_rejected() {
        let f = f_of(&[(0, (1, 1))]);
        assert!(lp_norm(&f, &NormExponent::rational(1, 2)).is_err());
        assert!(lp_norm(&f, &NormExponent::rational(5, 3)).is_err());
    }

    #[test]
    fn three_halves_norm_of_singleton() {
        let f = f_of(&[(0, (1, 1))]);
        let n = lp_norm(&f, &NormExponent::rational(3, 2)).unwrap();
        assert_eq!(n.cmp_exact(&NormValue::one()), Ordering::Equal);
    }

    #[test]
    fn three_halves_vs_holder_product() {
        // ‖f‖_{3/2} ≤ ‖f‖_3^{1/2} ‖f‖_1^{1/2} on a hand-checked rational f
        let f = f_of(&[(0, (1, 2)), (3, (2, 1)), (5, (9, 4))]);
        let lhs = lp_norm(&f, &NormExponent::rational(3, 2)).unwrap();
        let n3 = lp_norm(&f, &NormExponent::rational(3, 1)).unwrap();
        let n1 = lp_norm(&f, &NormExponent::rational(1, 1)).unwrap();
        // rhs^6 = (Σ|f|^3)(Σ|f|)^3
        let rhs6 = n3.base().clone().mul(&n1.base().pow(3));
        let rhs = NormValue::new(rhs6, 6);
        assert!(lhs.le(&rhs));
    }

    #[test]
    fn delta_and_mass() {
        let d = DensityFunction::delta(Ambient::z(4));
        assert_eq!(d.mass(), rat(1, 1));
        assert_eq!(d.value(&Point::Int(0)), rat(1, 1));
        assert_eq!(d.value(&Point::Int(1)), rat(0, 1));
    }

    #[test]
    fn zero_values_vanish_from_support() {
        let mut f = DensityFunction::zero(Ambient::z(4));
        f.add(Point::Int(1), rat(2, 3));
        f.add(Point::Int(1), rat(-2, 3));
        assert_eq!(f.support_len(), 0);
    }
}
