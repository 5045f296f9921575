use super::{isqrt, squarefree_decompose};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A real number of the form `Σ_t a_t √t` with `a_t` rational and `t`
/// positive squarefree integers.  The map is the canonical form: no zero
/// coefficients, every key squarefree.  Closed under addition and
/// multiplication; comparisons are exact.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Radical {
    terms: BTreeMap<BigUint, BigRational>,
}

impl Radical {
    pub fn zero() -> Self {
        Radical { terms: BTreeMap::new() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(BigUint::one(), r);
        }
        Radical { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `√r` for a nonnegative rational `r`.  `√(p/q) = √(pq) / q`.
    pub fn sqrt_rational(r: &BigRational) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        if r.is_zero() {
            return Self::zero();
        }
        let p = r.numer().to_biguint().expect("nonnegative");
        let q = r.denom().to_biguint().expect("positive");
        let (s, t) = squarefree_decompose(&(&p * &q));
        let coeff = BigRational::new(BigInt::from(s), BigInt::from(q));
        let mut terms = BTreeMap::new();
        terms.insert(t, coeff);
        Radical { terms }
    }

    /// `c · √r` with `c` rational and `r` a nonnegative rational.
    pub fn rational_times_sqrt(c: &BigRational, r: &BigRational) -> Self {
        let mut out = Self::sqrt_rational(r);
        out.scale(c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the value lies in the rationals (at most a `√1` term).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (t, a) = self.terms.iter().next().unwrap();
                if t.is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add_assign(&mut self, other: &Radical) {
        for (t, a) in &other.terms {
            let entry = self.terms.entry(t.clone()).or_insert_with(BigRational::zero);
            *entry += a;
            if entry.is_zero() {
                self.terms.remove(t);
            }
        }
    }

    pub fn add_term(&mut self, coeff: BigRational, sqrt_of: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let term = Self::rational_times_sqrt(&coeff, sqrt_of);
        self.add_assign(&term);
    }

    pub fn scale(&mut self, c: &BigRational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for a in self.terms.values_mut() {
            *a *= c;
        }
    }

    /// Exact product.  For squarefree `t`, `u` with `g = gcd(t,u)`:
    /// `√t·√u = g·√((t/g)(u/g))` and the product of the coprime parts is
    /// again squarefree, so no refactoring is needed.
    pub fn mul(&self, other: &Radical) -> Radical {
        let mut out = Radical::zero();
        for (t, a) in &self.terms {
            for (u, b) in &other.terms {
                let g = t.gcd(u);
                let key = (t / &g) * (u / &g);
                let coeff = a * b * BigRational::from_integer(BigInt::from(g));
                let entry = out.terms.entry(key).or_insert_with(BigRational::zero);
                *entry += coeff;
            }
        }
        out.terms.retain(|_, a| !a.is_zero());
        out
    }

    pub fn square(&self) -> Radical {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> Radical {
        let mut acc = Radical::from_integer(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Encloses the value in an exact rational interval of width
    /// `≤ (Σ|a_t|) / 2^prec`.
    fn interval(&self, prec: u32) -> (BigRational, BigRational) {
        let scale = BigUint::one() << (2 * prec);
        let denom = BigInt::from(BigUint::one() << prec);
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (t, a) in &self.terms {
            let m = isqrt(&(t * &scale));
            let root_lo = BigRational::new(BigInt::from(m.clone()), denom.clone());
            let root_hi = BigRational::new(BigInt::from(m + BigUint::one()), denom.clone());
            if a.is_negative() {
                lo += a * &root_hi;
                hi += a * &root_lo;
            } else {
                lo += a * &root_lo;
                hi += a * &root_hi;
            }
        }
        (lo, hi)
    }

    /// Exact total-order comparison.  Equality is decided on the canonical
    /// form; strict orderings by interval refinement, which terminates
    /// because distinct canonical forms denote distinct reals.
    pub fn cmp_exact(&self, other: &Radical) -> Ordering {
        if self.terms == other.terms {
            return Ordering::Equal;
        }
        let mut prec = 16u32;
        loop {
            let (alo, ahi) = self.interval(prec);
            let (blo, bhi) = other.interval(prec);
            if ahi < blo {
                return Ordering::Less;
            }
            if bhi < alo {
                return Ordering::Greater;
            }
            prec *= 2;
            assert!(prec <= 1 << 20, "interval refinement exceeded 2^20 bits");
        }
    }

    /// `f64` approximation, for report rendering only.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.interval(64);
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        ratio_to_f64(&mid)
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // scale down so both fit in f64 range
    let shift = (n.bits().max(d.bits()) as i64 - 900).max(0) as u64;
    let n2 = n >> shift;
    let d2 = d >> shift;
    let nf = n2.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d2.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// An exact nonnegative quantity `base^(1/root)` with `base` a [`Radical`].
///
/// Lp norms and the paper-style bounds (`κ^{1/6}|A|^{5/6}|S|^{5/6}` and
/// relatives) all take this shape.  Two such quantities are compared by
/// raising both to the least common integer power — cross-powering — and
/// comparing the resulting radicals exactly.
#[derive(Clone, Debug)]
pub struct NormValue {
    base: Radical,
    root: u32,
}

impl NormValue {
    pub fn new(base: Radical, root: u32) -> Self {
        assert!(root >= 1);
        NormValue { base, root }
    }

    pub fn from_rational(r: BigRational) -> Self {
        assert!(!r.is_negative());
        NormValue { base: Radical::from_rational(r), root: 1 }
    }

    /// `r^(num/den)` for a nonnegative rational `r` and `num, den ≥ 1`.
    pub fn rational_pow(r: &BigRational, num: u32, den: u32) -> Self {
        assert!(!r.is_negative() && den >= 1);
        let p = Radical::from_rational(r.clone()).pow(num);
        NormValue { base: p, root: den }
    }

    pub fn one() -> Self {
        NormValue::from_rational(BigRational::one())
    }

    pub fn base(&self) -> &Radical {
        &self.base
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn mul(&self, other: &NormValue) -> NormValue {
        let l = num::integer::lcm(self.root, other.root);
        let a = self.base.pow(l / self.root);
        let b = other.base.pow(l / other.root);
        NormValue { base: a.mul(&b), root: l }
    }

    pub fn cmp_exact(&self, other: &NormValue) -> Ordering {
        let l = num::integer::lcm(self.root, other.root);
        let a = self.base.pow(l / self.root);
        let b = other.base.pow(l / other.root);
        a.cmp_exact(&b)
    }

    pub fn le(&self, other: &NormValue) -> bool {
        self.cmp_exact(other) != Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        self.base.to_f64().powf(1.0 / self.root as f64)
    }

    /// `base^(1/root)` as a string, exact when the value is rational.
    pub fn describe(&self) -> String {
        if self.root == 1 {
            if let Some(r) = self.base.as_rational() {
                return super::rational_to_string(&r);
            }
        }
        format!("({:?})^(1/{})", self.base, self.root)
    }
}
