use super::{Ambient, DensityFunction, Point};
use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// A finite subset of an ambient: sorted, deduplicated, every element
/// validated against the ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSet {
    ambient: Ambient,
    elems: Vec<Point>,
}

impl FiniteSet {
    pub fn new(ambient: Ambient, mut elems: Vec<Point>) -> Result<FiniteSet> {
        for e in &elems {
            if !ambient.contains(e) {
                return Err(Error::ElementOutsideAmbient(e.render(), ambient.describe()));
            }
        }
        elems.sort();
        elems.dedup();
        Ok(FiniteSet { ambient, elems })
    }

    pub fn from_ints(ambient: Ambient, ints: impl IntoIterator<Item = i128>) -> Result<FiniteSet> {
        let pts = match &ambient {
            Ambient::Mult => ints
                .into_iter()
                .map(|v| {
                    if v <= 0 {
                        Err(Error::NonpositiveElement(v.to_string()))
                    } else {
                        Ok(Point::ratio(v, 1))
                    }
                })
                .collect::<Result<Vec<_>>>()?,
            _ => ints.into_iter().map(Point::Int).collect(),
        };
        FiniteSet::new(ambient, pts)
    }

    pub fn empty(ambient: Ambient) -> FiniteSet {
        FiniteSet { ambient, elems: Vec::new() }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Point] {
        &self.elems
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.elems.binary_search(p).is_ok()
    }

    /// Integer values of a one-dimensional set.
    pub fn ints(&self) -> Vec<i128> {
        self.elems.iter().filter_map(|p| p.as_int()).collect()
    }

    /// Moves the set into a compatible ambient (e.g. a wider window).
    pub fn rehome(&self, ambient: &Ambient) -> Result<FiniteSet> {
        FiniteSet::new(ambient.clone(), self.elems.clone())
    }

    pub fn translate(&self, t: &Point) -> FiniteSet {
        let ambient = match (&self.ambient, t) {
            // widen the window so translates always fit
            (Ambient::Z { bound }, Point::Int(shift)) => {
                Ambient::Z { bound: bound + shift.abs() }
            }
            (a, _) => a.clone(),
        };
        let elems = self.elems.iter().map(|e| ambient.add(e, t)).collect();
        FiniteSet::new(ambient, elems).expect("translate stays in widened ambient")
    }

    pub fn negate(&self) -> FiniteSet {
        let elems = self.elems.iter().map(|e| self.ambient.neg(e)).collect();
        FiniteSet::new(self.ambient.clone(), elems).expect("negation preserves ambient")
    }

    pub fn union(&self, other: &FiniteSet) -> Result<FiniteSet> {
        let ambient = self.ambient.merge(&other.ambient)?;
        let mut elems = self.elems.clone();
        elems.extend(other.elems.iter().cloned());
        FiniteSet::new(ambient, elems)
    }

    pub fn intersect(&self, other: &FiniteSet) -> Result<FiniteSet> {
        let ambient = self.ambient.merge(&other.ambient)?;
        let elems = self
            .elems
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        FiniteSet::new(ambient, elems)
    }

    pub fn minus(&self, other: &FiniteSet) -> FiniteSet {
        let elems = self
            .elems
            .iter()
            .filter(|e| !other.contains(e))
            .cloned()
            .collect();
        FiniteSet { ambient: self.ambient.clone(), elems }
    }

    pub fn is_subset_of(&self, other: &FiniteSet) -> bool {
        self.elems.iter().all(|e| other.contains(e))
    }

    pub fn is_disjoint_from(&self, other: &FiniteSet) -> bool {
        self.elems.iter().all(|e| !other.contains(e))
    }

    /// The indicator function `1_A` as a density.
    pub fn indicator(&self) -> DensityFunction {
        let mut f = DensityFunction::zero(self.ambient.clone());
        for e in &self.elems {
            f.set(e.clone(), BigRational::one());
        }
        f
    }

    /// Lifts a set of positive integers into the multiplicative ambient.
    pub fn to_mult(&self) -> Result<FiniteSet> {
        let mut pts = Vec::with_capacity(self.elems.len());
        for e in &self.elems {
            match e {
                Point::Int(v) if *v > 0 => pts.push(Point::ratio(*v, 1)),
                Point::Ratio(..) => pts.push(e.clone()),
                other => return Err(Error::NonpositiveElement(other.render())),
            }
        }
        FiniteSet::new(Ambient::Mult, pts)
    }

    /// Canonical translate: in Z the copy with minimum 0, in Z_n the
    /// lexicographically least rotation.  Used for witness tie-breaking.
    pub fn canonical_translate(&self) -> FiniteSet {
        if self.elems.is_empty() {
            return self.clone();
        }
        match &self.ambient {
            Ambient::Z { .. } => {
                let min = self.elems.first().unwrap().clone();
                self.translate(&self.ambient.neg(&min))
            }
            Ambient::Zn { .. } => {
                let mut best: Option<Vec<Point>> = None;
                for e in &self.elems {
                    let t = self.ambient.neg(e);
                    let mut rolled: Vec<Point> =
                        self.elems.iter().map(|x| self.ambient.add(x, &t)).collect();
                    rolled.sort();
                    if best.as_ref().map_or(true, |b| rolled < *b) {
                        best = Some(rolled);
                    }
                }
                FiniteSet { ambient: self.ambient.clone(), elems: best.unwrap() }
            }
            _ => self.clone(),
        }
    }

    /// Serializes to the set-description JSON schema.  Elements whose
    /// magnitude exceeds 2^53 are emitted as decimal strings.
    pub fn to_description(&self) -> Value {
        let ambient = match &self.ambient {
            Ambient::Z { bound } => json!({"kind": "Z", "window": int_value(*bound)}),
            Ambient::Zn { n } => json!({"kind": "Zn", "n": n}),
            Ambient::Zd { d } => json!({"kind": "Zd", "d": d}),
            Ambient::Mult => json!({"kind": "mult"}),
        };
        let elements: Vec<Value> = self
            .elems
            .iter()
            .map(|e| match e {
                Point::Int(v) => int_value(*v),
                Point::Ratio(n, d) => {
                    if *d == 1 {
                        int_value(*n)
                    } else {
                        Value::String(format!("{n}/{d}"))
                    }
                }
                Point::Vec(v) => Value::Array(v.iter().map(|c| json!(c)).collect()),
            })
            .collect();
        json!({"ambient": ambient, "elements": elements})
    }

    pub fn from_description(v: &Value) -> Result<FiniteSet> {
        let amb = v
            .get("ambient")
            .ok_or_else(|| Error::Parse("missing ambient".into()))?;
        let kind = amb
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing ambient.kind".into()))?;
        let ambient = match kind {
            "Z" => {
                let w = amb
                    .get("window")
                    .map(parse_int_value)
                    .transpose()?
                    .unwrap_or(0);
                Ambient::Z { bound: w.max(1) }
            }
            "Zn" => Ambient::Zn {
                n: amb
                    .get("n")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("Zn needs n".into()))?,
            },
            "Zd" => Ambient::Zd {
                d: amb
                    .get("d")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("Zd needs d".into()))? as usize,
            },
            "mult" => Ambient::Mult,
            other => return Err(Error::Parse(format!("unknown ambient kind {other}"))),
        };
        let elems_json = v
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing elements".into()))?;
        let mut pts = Vec::with_capacity(elems_json.len());
        for e in elems_json {
            pts.push(parse_point(&ambient, e)?);
        }
        // a Z description with no window defaults to the hull of the data
        let ambient = match ambient {
            Ambient::Z { bound } => {
                let need = pts
                    .iter()
                    .filter_map(Point::as_int)
                    .map(i128::abs)
                    .max()
                    .unwrap_or(1)
                    .max(1);
                Ambient::Z { bound: bound.max(need) }
            }
            a => a,
        };
        FiniteSet::new(ambient, pts)
    }
}

fn int_value(v: i128) -> Value {
    if v.abs() <= (1i128 << 53) {
        json!(v as i64)
    } else {
        Value::String(v.to_string())
    }
}

fn parse_int_value(v: &Value) -> Result<i128> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| x as i128)
            .ok_or_else(|| Error::Parse(format!("bad integer {n}"))),
        Value::String(s) => s
            .parse::<i128>()
            .map_err(|_| Error::Parse(format!("bad integer string {s}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

fn parse_point(ambient: &Ambient, v: &Value) -> Result<Point> {
    match ambient {
        Ambient::Zd { .. } => {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Parse("lattice element must be an array".into()))?;
            let coords = arr
                .iter()
                .map(|c| {
                    c.as_i64()
                        .ok_or_else(|| Error::Parse("lattice coordinate must be i64".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Point::Vec(coords))
        }
        Ambient::Mult => match v {
            Value::String(s) if s.contains('/') => {
                let (n, d) = s
                    .split_once('/')
                    .ok_or_else(|| Error::Parse("bad ratio".into()))?;
                let n: i128 = n.parse().map_err(|_| Error::Parse("bad ratio".into()))?;
                let d: i128 = d.parse().map_err(|_| Error::Parse("bad ratio".into()))?;
                if n <= 0 || d <= 0 {
                    return Err(Error::NonpositiveElement(s.clone()));
                }
                Ok(Point::ratio(n, d))
            }
            other => {
                let n = parse_int_value(other)?;
                if n <= 0 {
                    return Err(Error::NonpositiveElement(n.to_string()));
                }
                Ok(Point::ratio(n, 1))
            }
        },
        _ => Ok(Point::Int(parse_int_value(v)?)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetOp {
    Sum,
    Difference,
    Product,
    Ratio,
}

use serde::{Deserialize, Serialize};

/// Pointwise set algebra: `A+B`, `A-B`, and (in multiplicative-capable
/// ambients) `AB` and `A/B`.
pub fn set_algebra(a: &FiniteSet, b: &FiniteSet, op: SetOp) -> Result<FiniteSet> {
    let ambient = a.ambient.merge(&b.ambient)?;
    match op {
        SetOp::Sum | SetOp::Difference => {
            let ambient = widen_for_pairs(&ambient, a, b);
            let mut out = BTreeSet::new();
            for x in &a.elems {
                for y in &b.elems {
                    let p = match op {
                        SetOp::Sum => ambient.add(x, y),
                        _ => ambient.sub(x, y),
                    };
                    out.insert(p);
                }
            }
            FiniteSet::new(ambient, out.into_iter().collect())
        }
        SetOp::Product | SetOp::Ratio => match &ambient {
            Ambient::Mult => {
                let mut out = BTreeSet::new();
                for x in &a.elems {
                    for y in &b.elems {
                        let p = match op {
                            SetOp::Product => ambient.add(x, y),
                            _ => ambient.sub(x, y),
                        };
                        out.insert(p);
                    }
                }
                FiniteSet::new(ambient, out.into_iter().collect())
            }
            Ambient::Z { .. } if op == SetOp::Product => {
                if a.elems.iter().chain(&b.elems).any(|e| e.as_int() == Some(0)) {
                    return Err(Error::UnsupportedOp {
                        op: "product with 0",
                        ambient: ambient.describe(),
                    });
                }
                let mut out: BTreeSet<i128> = BTreeSet::new();
                for x in a.ints() {
                    for y in b.ints() {
                        out.insert(x * y);
                    }
                }
                let bound = out.iter().map(|v| v.abs()).max().unwrap_or(1).max(1);
                FiniteSet::from_ints(Ambient::Z { bound }, out)
            }
            other => Err(Error::UnsupportedOp {
                op: match op {
                    SetOp::Product => "product",
                    _ => "ratio",
                },
                ambient: other.describe(),
            }),
        },
    }
}

fn widen_for_pairs(ambient: &Ambient, a: &FiniteSet, b: &FiniteSet) -> Ambient {
    if let Ambient::Z { bound } = ambient {
        let max_a = a.ints().iter().map(|v| v.abs()).max().unwrap_or(0);
        let max_b = b.ints().iter().map(|v| v.abs()).max().unwrap_or(0);
        Ambient::Z { bound: (*bound).max(max_a + max_b).max(1) }
    } else {
        ambient.clone()
    }
}

/// Basic exact statistics of a set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetStats {
    pub size: u64,
    pub sumset_size: u64,
    pub diffset_size: u64,
    /// `E(A) = Σ_x (1_A ∘ 1_A)(x)^2`, the number of additive quadruples.
    pub energy: u128,
    /// Largest number of representations of a nonzero difference.
    pub max_autocorrelation: u64,
}

pub fn stats(a: &FiniteSet) -> Result<SetStats> {
    if a.is_empty() {
        return Err(Error::EmptySet("stats"));
    }
    let sumset = set_algebra(a, a, SetOp::Sum)?;
    let diffset = set_algebra(a, a, SetOp::Difference)?;
    let auto = diff_correlation_counts(a, a);
    let zero = a.ambient.zero();
    let mut energy: u128 = 0;
    let mut max_off: u64 = 0;
    for (p, c) in &auto {
        energy += (*c as u128) * (*c as u128);
        if *p != zero {
            max_off = max_off.max(*c);
        }
    }
    Ok(SetStats {
        size: a.len() as u64,
        sumset_size: sumset.len() as u64,
        diffset_size: diffset.len() as u64,
        energy,
        max_autocorrelation: max_off,
    })
}

/// Representation counts of `x` as `a - b`, `a ∈ A`, `b ∈ B`
/// (the integer-valued function `1_A ∘ 1_B`), computed by fast counting.
pub fn diff_correlation_counts(a: &FiniteSet, b: &FiniteSet) -> Vec<(Point, u64)> {
    correlation_counts(a, b, true)
}

/// Representation counts of `x` as `a + b` (the function `1_A ∗ 1_B`).
pub fn sum_correlation_counts(a: &FiniteSet, b: &FiniteSet) -> Vec<(Point, u64)> {
    correlation_counts(a, b, false)
}

fn correlation_counts(a: &FiniteSet, b: &FiniteSet, diff: bool) -> Vec<(Point, u64)> {
    let ambient = a
        .ambient
        .merge(&b.ambient)
        .expect("correlation of sets in incompatible ambients");
    // 1-d integer sets go through the counting/NTT kernel
    if ambient.is_one_dimensional() {
        let xs = a.ints();
        let mut ys = b.ints();
        if diff {
            for y in &mut ys {
                *y = -*y;
            }
        }
        let modulus = match &ambient {
            Ambient::Zn { n } => Some(*n),
            _ => None,
        };
        let counts = super::ntt::count_convolve(&xs, &ys, modulus);
        return counts.into_iter().map(|(x, c)| (Point::Int(x), c)).collect();
    }
    let mut map: std::collections::BTreeMap<Point, u64> = std::collections::BTreeMap::new();
    for x in &a.elems {
        for y in &b.elems {
            let p = if diff { ambient.sub(x, y) } else { ambient.add(x, y) };
            *map.entry(p).or_insert(0) += 1;
        }
    }
    map.into_iter().collect()
}

/// `Σ_x (1_A ∗ 1_B)(x)^3` as an exact integer.
pub fn convolution_cube_sum(a: &FiniteSet, b: &FiniteSet) -> BigInt {
    let counts = sum_correlation_counts(a, b);
    let mut total = BigInt::zero();
    for (_, c) in counts {
        let c = BigInt::from(c);
        total += &c * &c * &c;
    }
    total
}

pub(crate) fn big_ratio(n: BigInt, d: BigInt) -> BigRational {
    assert!(!d.is_zero());
    BigRational::new(n, d)
}

#[allow(unused_imports)]
use num::Signed as _;

#[cfg(test)]
mod tests {
    use super::*;

    fn zset(bound: i128, elems: &[i128]) -> FiniteSet {
        FiniteSet::from_ints(Ambient::z(bound), elems.iter().copied()).unwrap()
    }

    #[test]
    fn sumset_and_diffset() {
        let a = zset(4, &[0, 1]);
        let s = set_algebra(&a, &a, SetOp::Sum).unwrap();
        assert_eq!(s.ints(), vec![0, 1, 2]);
        let b = zset(4, &[0, 1, 3]);
        let d = set_algebra(&b, &b, SetOp::Difference).unwrap();
        assert_eq!(d.ints(), vec![-3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn product_set() {
        let a = zset(4, &[1, 2, 4]);
        let p = set_algebra(&a, &a, SetOp::Product).unwrap();
        assert_eq!(p.ints(), vec![1, 2, 4, 8, 16]);
        assert!(set_algebra(&a, &a, SetOp::Ratio).is_err());
        let m = a.to_mult().unwrap();
        let r = set_algebra(&m, &m, SetOp::Ratio).unwrap();
        assert_eq!(r.len(), 5); // {1/4,1/2,1,2,4}
    }

    #[test]
    fn stats_examples() {
        let a = zset(4, &[0, 1, 2]);
        let st = stats(&a).unwrap();
        assert_eq!(st.energy, 19);
        assert_eq!(st.sumset_size, 5);
        assert_eq!(st.diffset_size, 5);
        assert_eq!(st.max_autocorrelation, 2);

        let b = zset(4, &[0, 1, 2, 3]);
        assert_eq!(stats(&b).unwrap().energy, 44);

        let s = zset(4, &[2]);
        let st = stats(&s).unwrap();
        assert_eq!(st.energy, 1);
        assert_eq!(st.sumset_size, 1);
        assert_eq!(st.max_autocorrelation, 0);

        assert!(stats(&FiniteSet::empty(Ambient::z(4))).is_err());
    }

    #[test]
    fn stats_bounds_hold() {
        // energy in [|A|^2, |A|^3]; sumset in [|A|, |A|^2]; diffset in [|A|, |A|^2-|A|+1]
        for elems in [vec![0i128, 3, 7], vec![1, 2, 4, 8], vec![-5, 0, 5]] {
            let a = zset(16, &elems);
            let n = a.len() as u128;
            let st = stats(&a).unwrap();
            assert!(st.energy >= n * n && st.energy <= n * n * n);
            assert!((st.sumset_size as u128) >= n && (st.sumset_size as u128) <= n * n);
            assert!((st.diffset_size as u128) >= n && (st.diffset_size as u128) <= n * n - n + 1);
        }
    }

    #[test]
    fn canonical_translate_in_zn() {
        let g = Ambient::zn(12);
        let a = FiniteSet::from_ints(g.clone(), [3, 4, 6]).unwrap();
        let c = a.canonical_translate();
        assert_eq!(c.ints(), vec![0, 1, 3]);
        // rotation-invariant
        let b = FiniteSet::from_ints(g, [9, 10, 0]).unwrap();
        assert_eq!(b.canonical_translate().ints(), vec![0, 1, 3]);
    }

    #[test]
    fn description_roundtrip() {
        let a = zset(1 << 60, &[0, 5, 1i128 << 55]);
        let v = a.to_description();
        let back = FiniteSet::from_description(&v).unwrap();
        assert_eq!(back.ints(), a.ints());
        // big element serialized as string
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"36028797018963968\""));
    }
}
