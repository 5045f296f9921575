//! Exact point–curve incidence counting.
//!
//! Curves are graphs of exactly evaluable functions (integer-coefficient
//! polynomials or pointwise tables) shifted around the plane.  Incidence is
//! decided by rational equality at the point's abscissa; there is no
//! floating intersection computation anywhere.

use crate::ambient::FiniteSet;
use crate::error::{Error, Result};
use crate::exact::{icbrt_ceil, rational_from_str, rational_to_string};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// An exactly evaluable real function on a rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionRepr {
    /// Coefficients in ascending degree order.
    Polynomial(Vec<BigInt>),
    /// Pointwise values on a finite set of abscissae.
    Table(BTreeMap<BigRational, BigRational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpec {
    pub repr: FunctionRepr,
    /// Closed domain `[lo, hi]`.
    pub domain: (BigRational, BigRational),
}

impl FunctionSpec {
    pub fn polynomial(coeffs: Vec<BigInt>, domain: (BigRational, BigRational)) -> FunctionSpec {
        FunctionSpec { repr: FunctionRepr::Polynomial(coeffs), domain }
    }

    pub fn table(values: BTreeMap<BigRational, BigRational>) -> FunctionSpec {
        let lo = values.keys().next().cloned().unwrap_or_else(BigRational::zero);
        let hi = values.keys().last().cloned().unwrap_or_else(BigRational::zero);
        FunctionSpec { repr: FunctionRepr::Table(values), domain: (lo, hi) }
    }

    pub fn in_domain(&self, x: &BigRational) -> bool {
        &self.domain.0 <= x && x <= &self.domain.1
    }

    /// `Ok(None)` when `x` is outside the domain (off-curve), an error when
    /// `x` is inside a table's domain but not tabulated (ambiguous).
    pub fn eval(&self, x: &BigRational) -> Result<Option<BigRational>> {
        if !self.in_domain(x) {
            return Ok(None);
        }
        match &self.repr {
            FunctionRepr::Polynomial(coeffs) => {
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * x + BigRational::from_integer(c.clone());
                }
                Ok(Some(acc))
            }
            FunctionRepr::Table(values) => match values.get(x) {
                Some(v) => Ok(Some(v.clone())),
                None => Err(Error::AmbiguousCurvePoint(rational_to_string(x))),
            },
        }
    }
}

fn second_derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    if coeffs.len() < 3 {
        return vec![BigInt::zero()];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(2)
        .map(|(k, c)| c * BigInt::from(k) * BigInt::from(k - 1))
        .collect()
}

/// A [`FunctionSpec`] certified strictly convex on its domain.
///
/// Tables are checked by increasing slopes of consecutive points.  For
/// polynomials the second derivative is checked to be positive: exactly
/// when it is constant, otherwise at the endpoints and every integer point
/// of the domain (a finite check; the pairwise probe check on curve
/// families backstops it on every instance).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexFunctionSpec {
    spec: FunctionSpec,
}

impl ConvexFunctionSpec {
    pub fn new(spec: FunctionSpec) -> Result<ConvexFunctionSpec> {
        match &spec.repr {
            FunctionRepr::Table(values) => {
                if values.len() >= 3 {
                    let pts: Vec<(&BigRational, &BigRational)> = values.iter().collect();
                    for w in pts.windows(3) {
                        let (x0, y0) = w[0];
                        let (x1, y1) = w[1];
                        let (x2, y2) = w[2];
                        let s1 = (y1 - y0) / (x1 - x0);
                        let s2 = (y2 - y1) / (x2 - x1);
                        if s2 <= s1 {
                            return Err(Error::NotConvex(format!(
                                "slope does not increase at {}",
                                rational_to_string(x1)
                            )));
                        }
                    }
                }
            }
            FunctionRepr::Polynomial(coeffs) => {
                let dd = second_derivative(coeffs);
                if dd.iter().all(Zero::is_zero) {
                    return Err(Error::NotConvex("second derivative vanishes".into()));
                }
                if dd.len() == 1 {
                    if dd[0] <= BigInt::zero() {
                        return Err(Error::NotConvex("constant second derivative <= 0".into()));
                    }
                } else {
                    let mut probes: Vec<BigRational> =
                        vec![spec.domain.0.clone(), spec.domain.1.clone()];
                    let lo = spec.domain.0.ceil().to_integer();
                    let hi = spec.domain.1.floor().to_integer();
                    let mut x = lo;
                    while x <= hi {
                        probes.push(BigRational::from_integer(x.clone()));
                        x += BigInt::one();
                    }
                    for x in probes {
                        let mut acc = BigRational::zero();
                        for c in dd.iter().rev() {
                            acc = acc * &x + BigRational::from_integer(c.clone());
                        }
                        if acc <= BigRational::zero() {
                            return Err(Error::NotConvex(format!(
                                "second derivative <= 0 at {}",
                                rational_to_string(&x)
                            )));
                        }
                    }
                }
            }
        }
        Ok(ConvexFunctionSpec { spec })
    }

    /// `f(x) = x²` on `[lo, hi]` — the workhorse example.
    pub fn squaring(lo: i64, hi: i64) -> ConvexFunctionSpec {
        ConvexFunctionSpec::new(FunctionSpec::polynomial(
            vec![BigInt::zero(), BigInt::zero(), BigInt::one()],
            (
                BigRational::from_integer(BigInt::from(lo)),
                BigRational::from_integer(BigInt::from(hi)),
            ),
        ))
        .expect("x^2 is strictly convex")
    }

    pub fn function(&self) -> &FunctionSpec {
        &self.spec
    }

    pub fn eval(&self, x: &BigRational) -> Result<Option<BigRational>> {
        self.spec.eval(x)
    }

    /// Strict convexity through the given integer points (increasing
    /// slopes), checked on exact values.
    pub fn check_on_points(&self, xs: &[i128]) -> Result<()> {
        let mut xs = xs.to_vec();
        xs.sort_unstable();
        let mut prev: Option<(BigRational, BigRational)> = None;
        let mut prev_slope: Option<BigRational> = None;
        for &x in &xs {
            let xr = BigRational::from_integer(BigInt::from(x));
            let y = self
                .eval(&xr)?
                .ok_or_else(|| Error::NotConvex(format!("{x} outside the function domain")))?;
            if let Some((px, py)) = &prev {
                let slope = (&y - py) / (&xr - px);
                if let Some(ps) = &prev_slope {
                    if &slope <= ps {
                        return Err(Error::NotConvex(format!(
                            "slope does not increase through x = {x}"
                        )));
                    }
                }
                prev_slope = Some(slope);
            }
            prev = Some((xr, y));
        }
        Ok(())
    }
}

/// Deduplicated exact-rational points in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(BigRational, BigRational)>,
}

impl PointSet {
    pub fn new(mut points: Vec<(BigRational, BigRational)>) -> PointSet {
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn from_ints(points: &[(i64, i64)]) -> PointSet {
        PointSet::new(
            points
                .iter()
                .map(|(x, y)| {
                    (
                        BigRational::from_integer(BigInt::from(*x)),
                        BigRational::from_integer(BigInt::from(*y)),
                    )
                })
                .collect(),
        )
    }

    /// Cartesian product of abscissa and ordinate lists.
    pub fn grid(xs: &[BigRational], ys: &[BigRational]) -> PointSet {
        let mut pts = Vec::with_capacity(xs.len() * ys.len());
        for x in xs {
            for y in ys {
                pts.push((x.clone(), y.clone()));
            }
        }
        PointSet::new(pts)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    /// Curves `(x, f(x)) + (y, b)` over shift pairs `(y, b)`.
    TranslateGraph,
    /// Curves `y ↦ (y, f(y+z) + b)` over shift pairs `(z, b)`.
    ShearedGraph,
    /// Explicitly listed curves (line fixtures and instance files);
    /// pairwise intersection bounds are validated on probe abscissae.
    Explicit,
}

/// One plane curve: `v = f(u − arg_shift) + val_shift` on the shifted
/// domain of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    pub f: FunctionSpec,
    pub arg_shift: BigRational,
    pub val_shift: BigRational,
}

impl PlaneCurve {
    pub fn passes_through(&self, u: &BigRational, v: &BigRational) -> Result<bool> {
        match self.f.eval(&(u - &self.arg_shift))? {
            None => Ok(false),
            Some(y) => Ok(&(y + &self.val_shift) == v),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub kind: CurveKind,
    curves: Vec<PlaneCurve>,
}

impl CurveFamily {
    /// The family `(x, f(x)) + (y, b)` for shift pairs `(y, b)`.
    pub fn translate_graph(
        base: &ConvexFunctionSpec,
        shifts: &[(BigRational, BigRational)],
    ) -> CurveFamily {
        let curves = shifts
            .iter()
            .map(|(y, b)| PlaneCurve {
                f: base.function().clone(),
                arg_shift: y.clone(),
                val_shift: b.clone(),
            })
            .collect();
        CurveFamily { kind: CurveKind::TranslateGraph, curves }
    }

    /// The family `y ↦ (y, f(y+z) + b)` for shift pairs `(z, b)`.
    pub fn sheared_graph(
        base: &ConvexFunctionSpec,
        shifts: &[(BigRational, BigRational)],
    ) -> CurveFamily {
        let curves = shifts
            .iter()
            .map(|(z, b)| PlaneCurve {
                f: base.function().clone(),
                arg_shift: -z.clone(),
                val_shift: b.clone(),
            })
            .collect();
        CurveFamily { kind: CurveKind::ShearedGraph, curves }
    }

    pub fn explicit(curves: Vec<PlaneCurve>) -> CurveFamily {
        CurveFamily { kind: CurveKind::Explicit, curves }
    }

    /// Lines `y = slope·x + intercept` over a common domain.
    pub fn lines(lines: &[(i64, i64)], domain: (i64, i64)) -> CurveFamily {
        let dom = (
            BigRational::from_integer(BigInt::from(domain.0)),
            BigRational::from_integer(BigInt::from(domain.1)),
        );
        CurveFamily::explicit(
            lines
                .iter()
                .map(|(s, c)| PlaneCurve {
                    f: FunctionSpec::polynomial(
                        vec![BigInt::from(*c), BigInt::from(*s)],
                        dom.clone(),
                    ),
                    arg_shift: BigRational::zero(),
                    val_shift: BigRational::zero(),
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[PlaneCurve] {
        &self.curves
    }

    /// Checks that no two distinct member curves agree at more than one of
    /// the probe abscissae — the finite stand-in for the at-most-one-
    /// intersection hypothesis.
    pub fn check_pairwise_intersections(&self, probes: &[BigRational]) -> Result<()> {
        let mut probes = probes.to_vec();
        probes.sort();
        probes.dedup();
        for i in 0..self.curves.len() {
            for j in i + 1..self.curves.len() {
                if self.curves[i] == self.curves[j] {
                    continue;
                }
                let mut agree = 0u32;
                for u in &probes {
                    let a = self.curves[i].f.eval(&(u - &self.curves[i].arg_shift))?;
                    let b = self.curves[j].f.eval(&(u - &self.curves[j].arg_shift))?;
                    if let (Some(a), Some(b)) = (a, b) {
                        if a + &self.curves[i].val_shift == b + &self.curves[j].val_shift {
                            agree += 1;
                            if agree > 1 {
                                return Err(Error::Precondition(format!(
                                    "curves {i} and {j} agree at more than one probe"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exact number of (point, curve) incidences — the plain double loop.
pub fn count_incidences(p: &PointSet, l: &CurveFamily) -> Result<u64> {
    let mut count = 0u64;
    for (u, v) in p.points() {
        for curve in l.curves() {
            if curve.passes_through(u, v)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `I(P,L) / (⌈(|P|²|L|²)^{1/3}⌉ + |P| + |L|)` — the incidence count
/// against the integer ceiling of the main Szemerédi–Trotter term, for
/// fitted-constant reporting.
pub fn st_ratio(p: &PointSet, l: &CurveFamily) -> Result<BigRational> {
    if p.is_empty() || l.is_empty() {
        return Err(Error::EmptySet("st_ratio needs nonempty P and L"));
    }
    let i = count_incidences(p, l)?;
    let np = BigUint::from(p.len());
    let nl = BigUint::from(l.len());
    let main = icbrt_ceil(&(&np * &np * &nl * &nl));
    let denom = BigInt::from(main) + BigInt::from(p.len() + l.len());
    Ok(BigRational::new(BigInt::from(i), denom))
}

/// The incidence configuration that witnesses convex control: points
/// `(X+Y) × C`, curves `(x, f(x)) + (y, b)` for `y ∈ Y`, `b ∈ B`.  Every
/// solution of `a + b = c` with `a ∈ f(X)` contributes `|Y|` incidences.
#[derive(Clone, Debug)]
pub struct ConvcontWitness {
    pub incidence_count: u64,
    pub lower_bound_from_solutions: u64,
    pub point_count: usize,
    pub curve_count: usize,
    pub solution_count: u64,
}

pub fn convcont_witness(
    x: &FiniteSet,
    f: &ConvexFunctionSpec,
    y: &FiniteSet,
    b: &FiniteSet,
    c: &FiniteSet,
) -> Result<ConvcontWitness> {
    let xs = require_ints(x, "X")?;
    let ys = require_ints(y, "Y")?;
    let bs = require_ints(b, "B")?;
    let cs = require_ints(c, "C")?;

    // A = f(X), exact; deduplicated as a set of rationals
    let mut a_vals: Vec<BigRational> = Vec::with_capacity(xs.len());
    for &xv in &xs {
        let xr = BigRational::from_integer(BigInt::from(xv));
        let v = f
            .eval(&xr)?
            .ok_or_else(|| Error::Precondition(format!("f undefined at {xv}")))?;
        a_vals.push(v);
    }
    a_vals.sort();
    a_vals.dedup();

    let b_rats: Vec<BigRational> = bs
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    let c_rats: Vec<BigRational> = cs
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();

    // pre: C ⊆ A + B
    'outer: for cv in &c_rats {
        for av in &a_vals {
            for bv in &b_rats {
                if &(av + bv) == cv {
                    continue 'outer;
                }
            }
        }
        return Err(Error::Precondition(format!(
            "C is not contained in f(X)+B: {} has no representation",
            rational_to_string(cv)
        )));
    }

    // ⟨1_A ∗ 1_B, 1_C⟩ = number of solutions to a + b = c
    let mut solutions = 0u64;
    for av in &a_vals {
        for bv in &b_rats {
            let s = av + bv;
            if c_rats.binary_search(&s).is_ok() {
                solutions += 1;
            }
        }
    }

    // P = (X+Y) × C
    let mut sum_xy: Vec<BigRational> = Vec::new();
    for &xv in &xs {
        for &yv in &ys {
            sum_xy.push(BigRational::from_integer(BigInt::from(xv + yv)));
        }
    }
    sum_xy.sort();
    sum_xy.dedup();
    let p = PointSet::grid(&sum_xy, &c_rats);

    // L: translate-graph family over (y, b) shifts
    let mut shifts = Vec::with_capacity(ys.len() * bs.len());
    for &yv in &ys {
        for &bv in &bs {
            shifts.push((
                BigRational::from_integer(BigInt::from(yv)),
                BigRational::from_integer(BigInt::from(bv)),
            ));
        }
    }
    let l = CurveFamily::translate_graph(f, &shifts);

    let incidence_count = count_incidences(&p, &l)?;
    let lower = ys.len() as u64 * solutions;
    if incidence_count < lower {
        return Err(Error::Precondition(format!(
            "incidence lower bound violated: I = {incidence_count} < {lower}"
        )));
    }
    Ok(ConvcontWitness {
        incidence_count,
        lower_bound_from_solutions: lower,
        point_count: p.len(),
        curve_count: l.len(),
        solution_count: solutions,
    })
}

fn require_ints(s: &FiniteSet, name: &str) -> Result<Vec<i128>> {
    let v = s.ints();
    if v.len() != s.len() {
        return Err(Error::Precondition(format!("{name} must be a set of integers")));
    }
    Ok(v)
}

/// Instance description for reproducibility: sizes, counts, and the
/// generating tuple.
pub fn instance_to_json(
    x: &FiniteSet,
    y: &FiniteSet,
    b: &FiniteSet,
    c: &FiniteSet,
    witness: &ConvcontWitness,
) -> Value {
    json!({
        "generator": {
            "X": x.to_description(),
            "Y": y.to_description(),
            "B": b.to_description(),
            "C": c.to_description(),
            "f": "x^2",
        },
        "points": witness.point_count,
        "curves": witness.curve_count,
        "incidences": witness.incidence_count,
        "lower_bound": witness.lower_bound_from_solutions,
    })
}

/// Parses `[[y, b], …]` shift lists with `"p/q"` strings allowed.
pub fn parse_shifts(v: &Value) -> Result<Vec<(BigRational, BigRational)>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("shifts must be an array".into()))?;
    arr.iter()
        .map(|pair| {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("shift must be a pair".into()))?;
            let parse = |x: &Value| -> Result<BigRational> {
                match x {
                    Value::Number(n) => Ok(BigRational::from_integer(BigInt::from(
                        n.as_i64().ok_or_else(|| Error::Parse("bad shift".into()))?,
                    ))),
                    Value::String(s) => {
                        rational_from_str(s).ok_or_else(|| Error::Parse(format!("bad shift {s}")))
                    }
                    _ => Err(Error::Parse("bad shift".into())),
                }
            };
            Ok((parse(&p[0])?, parse(&p[1])?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn line_examples() {
        // P = {(0,0),(1,1)}, L = {y=x, y=0} → 3 incidences
        let p = PointSet::from_ints(&[(0, 0), (1, 1)]);
        let l = CurveFamily::lines(&[(1, 0), (0, 0)], (-10, 10));
        assert_eq!(count_incidences(&p, &l).unwrap(), 3);
        // ⌈(2²·2²)^{1/3}⌉ = 3, denominator 3 + 2 + 2 → 3/7
        assert_eq!(
            st_ratio(&p, &l).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(7))
        );

        let empty = CurveFamily::explicit(vec![]);
        assert_eq!(count_incidences(&p, &empty).unwrap(), 0);
    }

    #[test]
    fn grid_and_horizontal_lines() {
        // 4×4 grid, 4 horizontal lines → 16 incidences
        let xs: Vec<BigRational> = (0..4).map(rat).collect();
        let ys: Vec<BigRational> = (0..4).map(rat).collect();
        let p = PointSet::grid(&xs, &ys);
        let l = CurveFamily::lines(&[(0, 0), (0, 1), (0, 2), (0, 3)], (0, 3));
        assert_eq!(count_incidences(&p, &l).unwrap(), 16);
        // denominator: ⌈(16²·4²)^{1/3}⌉ + 16 + 4 = 16 + 20
        assert_eq!(
            st_ratio(&p, &l).unwrap(),
            BigRational::new(BigInt::from(16), BigInt::from(36))
        );
    }

    #[test]
    fn single_point_single_curve() {
        let p = PointSet::from_ints(&[(0, 0)]);
        let l = CurveFamily::lines(&[(1, 0)], (-1, 1));
        assert_eq!(
            st_ratio(&p, &l).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(3))
        );
    }

    #[test]
    fn convexity_validation() {
        assert!(ConvexFunctionSpec::new(FunctionSpec::polynomial(
            vec![BigInt::from(0), BigInt::from(1)],
            (rat(-4), rat(4)),
        ))
        .is_err());

        let mut table = BTreeMap::new();
        for (x, y) in [(0, 0), (1, 1), (2, 3), (3, 6)] {
            table.insert(rat(x), rat(y));
        }
        assert!(ConvexFunctionSpec::new(FunctionSpec::table(table.clone())).is_ok());
        table.insert(rat(4), rat(8)); // slope drops from 3 to 2
        assert!(ConvexFunctionSpec::new(FunctionSpec::table(table)).is_err());
    }

    #[test]
    fn table_off_domain_vs_ambiguous() {
        let mut table = BTreeMap::new();
        table.insert(rat(0), rat(0));
        table.insert(rat(2), rat(4));
        let f = FunctionSpec::table(table);
        assert_eq!(f.eval(&rat(5)).unwrap(), None); // outside domain
        assert!(f.eval(&rat(1)).is_err()); // inside but not tabulated
    }

    #[test]
    fn translate_family_pairwise_intersections() {
        let f = ConvexFunctionSpec::squaring(-20, 20);
        let shifts: Vec<(BigRational, BigRational)> = vec![
            (rat(0), rat(0)),
            (rat(1), rat(0)),
            (rat(0), rat(3)),
            (rat(2), rat(-1)),
        ];
        let l = CurveFamily::translate_graph(&f, &shifts);
        let probes: Vec<BigRational> = (-10..10).map(rat).collect();
        l.check_pairwise_intersections(&probes).unwrap();
        assert_eq!(l.kind, CurveKind::TranslateGraph);
    }

    #[test]
    fn convcont_small_example() {
        // X = Y = {1,2}, f = x², B = {0}, C = f(X): lower bound 2·2 = 4
        let z = Ambient::z(16);
        let x = FiniteSet::from_ints(z.clone(), [1, 2]).unwrap();
        let y = FiniteSet::from_ints(z.clone(), [1, 2]).unwrap();
        let b = FiniteSet::from_ints(z.clone(), [0]).unwrap();
        let c = FiniteSet::from_ints(z, [1, 4]).unwrap();
        let f = ConvexFunctionSpec::squaring(-20, 20);
        let w = convcont_witness(&x, &f, &y, &b, &c).unwrap();
        assert_eq!(w.lower_bound_from_solutions, 4);
        assert!(w.incidence_count >= 4);
    }

    #[test]
    fn convcont_degenerate_y() {
        // |Y| = 1 reduces to counting a+b=c solutions
        let z = Ambient::z(128);
        let x = FiniteSet::from_ints(z.clone(), [1, 2, 3]).unwrap();
        let y = FiniteSet::from_ints(z.clone(), [0]).unwrap();
        let b = FiniteSet::from_ints(z.clone(), [0, 1]).unwrap();
        let c = FiniteSet::from_ints(z, [1, 4, 9, 2, 5, 10]).unwrap();
        let f = ConvexFunctionSpec::squaring(-20, 20);
        let w = convcont_witness(&x, &f, &y, &b, &c).unwrap();
        assert_eq!(w.lower_bound_from_solutions, w.solution_count);
        assert_eq!(w.solution_count, 6);
    }

    #[test]
    fn convcont_midsize_inequality() {
        // X = {1..8}, f = x², Y = {0..3}, B = {0,1}, C = A+B
        let z = Ambient::z(256);
        let x = FiniteSet::from_ints(z.clone(), 1..=8).unwrap();
        let y = FiniteSet::from_ints(z.clone(), 0..=3).unwrap();
        let b = FiniteSet::from_ints(z.clone(), [0, 1]).unwrap();
        let a: Vec<i128> = (1..=8).map(|v| v * v).collect();
        let mut cs: Vec<i128> = Vec::new();
        for &av in &a {
            for bv in [0i128, 1] {
                cs.push(av + bv);
            }
        }
        let c = FiniteSet::from_ints(z, cs).unwrap();
        let f = ConvexFunctionSpec::squaring(-64, 64);
        let w = convcont_witness(&x, &f, &y, &b, &c).unwrap();
        assert!(w.incidence_count >= w.lower_bound_from_solutions);
        assert_eq!(w.solution_count, 16);
    }

    #[test]
    fn precondition_c_inside_a_plus_b() {
        let z = Ambient::z(16);
        let x = FiniteSet::from_ints(z.clone(), [1, 2]).unwrap();
        let y = FiniteSet::from_ints(z.clone(), [0]).unwrap();
        let b = FiniteSet::from_ints(z.clone(), [0]).unwrap();
        let c = FiniteSet::from_ints(z, [7]).unwrap(); // 7 ∉ {1,4}
        let f = ConvexFunctionSpec::squaring(-20, 20);
        assert!(convcont_witness(&x, &f, &y, &b, &c).is_err());
    }
}
