//! Exact comparison machinery for quantities of the form
//! `(sum of rational multiples of square roots)^(1/k)`.
//!
//! The constant-1 inequalities this crate verifies mix rational quantities
//! (mass sums, cube sums) with fractional-power norms such as
//! `‖f‖_{3/2}`.  For rational-valued `f` the sum `Σ |f(x)|^{3/2}` lives in a
//! real multiquadratic extension of the rationals: it is a finite sum
//! `Σ a_t √t` with `a_t` rational and `t` squarefree.  Such sums have a
//! unique canonical form (square roots of distinct squarefree integers are
//! linearly independent over the rationals), so equality is a syntactic
//! check and strict comparisons can be settled by interval refinement,
//! which terminates whenever the two values differ.  No floating point is
//! involved anywhere on this path.

mod radical;

pub use radical::{NormValue, Radical};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, Integer, One, Signed, Zero};
use std::str::FromStr;

/// Floor of the integer square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // Newton iteration with an initial guess from the bit length.
    let bits = n.bits();
    let mut x = BigUint::one() << ((bits + 1) / 2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Floor of the integer cube root.
pub fn icbrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let bits = n.bits();
    let mut x = BigUint::one() << (bits / 3 + 1);
    loop {
        let x2 = &x * &x;
        let y = ((&x << 1u32) + n / &x2) / 3u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Ceiling of the integer cube root.
pub fn icbrt_ceil(n: &BigUint) -> BigUint {
    let r = icbrt(n);
    if &(&r * &r * &r) == n {
        r
    } else {
        r + BigUint::one()
    }
}

/// Writes `n = s^2 * t` with `t` squarefree; returns `(s, t)`.
///
/// Trial division; fine at the magnitudes arising from desk-scale set
/// statistics (autocorrelation values and small rational denominators).
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    let mut m = n.clone();
    let mut s = BigUint::one();
    let mut t = BigUint::one();
    if m.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut p = BigUint::from(2u32);
    while &(&p * &p) <= &m {
        if (&m % &p).is_zero() {
            let mut e = 0u64;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            if e >= 2 {
                s *= p.pow((e / 2) as u32);
            }
            if e % 2 == 1 {
                t *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if m > BigUint::one() {
        t *= &m;
    }
    (s, t)
}

/// Renders an exact rational as `"p/q"` (or `"p"` when integral).
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn rational_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p = BigInt::from_str(s).ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// Decimal rendering of a rational to 12 significant digits, for report
/// output only; exact values always travel alongside as `"p/q"`.
pub fn rational_to_decimal(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // scale such that a * 10^k has 12 integer digits
    let mut k: i64 = 0;
    let ten = BigRational::from_integer(BigInt::from(10));
    let lo = BigRational::from_integer(BigInt::from(10u64.pow(11)));
    let hi = BigRational::from_integer(BigInt::from(10u64.pow(12)));
    let mut scaled = a.clone();
    while scaled < lo {
        scaled *= &ten;
        k += 1;
    }
    while scaled >= hi {
        scaled /= &ten;
        k -= 1;
    }
    let digits = (scaled.numer() / scaled.denom()).to_string();
    let exp = 11 - k; // value ~ digits * 10^(exp-11)
    let mantissa = format!("{}.{}", &digits[..1], &digits[1..]);
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    let sign = if neg { "-" } else { "" };
    if exp == 0 {
        format!("{sign}{mantissa}")
    } else {
        format!("{sign}{mantissa}e{exp}")
    }
}

/// `r^e` for integer `e` (negative allowed; `r` must be nonzero then).
pub fn rational_pow(r: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_small() {
        for n in 0u64..2000 {
            let r = isqrt(&BigUint::from(n));
            let r: u64 = (&r).try_into().unwrap();
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n={n} r={r}");
        }
    }

    #[test]
    fn icbrt_small() {
        for n in 0u64..2000 {
            let r = icbrt(&BigUint::from(n));
            let r: u64 = (&r).try_into().unwrap();
            assert!(r * r * r <= n && (r + 1) * (r + 1) * (r + 1) > n, "n={n} r={r}");
        }
        assert_eq!(icbrt_ceil(&BigUint::from(16u32)), BigUint::from(3u32));
        assert_eq!(icbrt_ceil(&BigUint::from(27u32)), BigUint::from(3u32));
    }

    #[test]
    fn squarefree_parts() {
        for n in 1u64..500 {
            let (s, t) = squarefree_decompose(&BigUint::from(n));
            assert_eq!(&s * &s * &t, BigUint::from(n));
            // t squarefree: no p^2 divides it
            let t64: u64 = (&t).try_into().unwrap();
            for p in 2u64.. {
                if p * p > t64 {
                    break;
                }
                assert!(t64 % (p * p) != 0, "n={n} t={t64}");
            }
        }
    }

    #[test]
    fn rational_roundtrip() {
        let r = rational_from_str("-22/7").unwrap();
        assert_eq!(rational_to_string(&r), "-22/7");
        assert_eq!(rational_to_string(&rational_from_str("5").unwrap()), "5");
        assert!(rational_from_str("1/0").is_none());
    }

    #[test]
    fn decimal_rendering() {
        let r = rational_from_str("1/3").unwrap();
        assert_eq!(rational_to_decimal(&r), "3.33333333333e-1");
        let r = rational_from_str("625/8").unwrap();
        assert_eq!(rational_to_decimal(&r), "7.8125e1");
        assert_eq!(rational_to_decimal(&BigRational::zero()), "0");
    }
}
