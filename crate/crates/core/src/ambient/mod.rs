//! Abelian ambients and their elements.
//!
//! Every set and function in this workspace lives in a declared ambient:
//! a symmetric integer window `[-W, W]` inside Z, a cyclic group Z_n, an
//! integer lattice Z^d, or the multiplicative group of positive rationals.
//! The multiplicative ambient is the free abelian group on the primes; we
//! represent its elements as reduced positive fractions, which is the
//! basis-free form of a prime-exponent vector, so every additive routine
//! (convolution, energy, control) applies to it unchanged.

mod convolve;
mod density;
mod ntt;
mod set;

pub use convolve::{convolve, convolve_naive, convolve_with, diff_convolve, ConvolveOptions};
pub use density::{lp_norm, DensityFunction, NormExponent};
pub use set::{
    convolution_cube_sum, diff_correlation_counts, set_algebra, stats, sum_correlation_counts,
    FiniteSet, SetOp, SetStats,
};

use crate::error::{Error, Result};
use num::Integer;
use serde::{Deserialize, Serialize};

/// An element of an ambient.  `Int` covers Z-windows and Z_n residues,
/// `Ratio` the multiplicative ambient (reduced, positive), `Vec` lattices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Int(i128),
    Ratio(i128, i128),
    Vec(Vec<i64>),
}

impl Point {
    pub fn ratio(num: i128, den: i128) -> Point {
        assert!(num > 0 && den > 0, "multiplicative elements are positive");
        let g = num.gcd(&den);
        Point::Ratio(num / g, den / g)
    }

    pub fn as_int(&self) -> Option<i128> {
        match self {
            Point::Int(v) => Some(*v),
            Point::Ratio(n, d) if *d == 1 => Some(*n),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Point::Int(v) => v.to_string(),
            Point::Ratio(n, d) => {
                if *d == 1 {
                    n.to_string()
                } else {
                    format!("{n}/{d}")
                }
            }
            Point::Vec(v) => format!(
                "({})",
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    /// Integers restricted to the window `[-bound, bound]`.
    Z { bound: i128 },
    /// The cyclic group of residues modulo `n`.
    Zn { n: u64 },
    /// The integer lattice of dimension `d`.
    Zd { d: usize },
    /// Positive rationals under multiplication.
    Mult,
}

impl Ambient {
    pub fn z(bound: i128) -> Ambient {
        assert!(bound >= 1);
        Ambient::Z { bound }
    }

    pub fn zn(n: u64) -> Ambient {
        assert!(n >= 1);
        Ambient::Zn { n }
    }

    pub fn zd(d: usize) -> Ambient {
        assert!(d >= 1);
        Ambient::Zd { d }
    }

    pub fn describe(&self) -> String {
        match self {
            Ambient::Z { bound } => format!("Z window [-{bound}, {bound}]"),
            Ambient::Zn { n } => format!("Z_{n}"),
            Ambient::Zd { d } => format!("Z^{d}"),
            Ambient::Mult => "positive rationals under multiplication".to_string(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Ambient::Z { bound }, Point::Int(v)) => v.abs() <= *bound,
            (Ambient::Zn { n }, Point::Int(v)) => *v >= 0 && (*v as u128) < *n as u128,
            (Ambient::Zd { d }, Point::Vec(v)) => v.len() == *d,
            (Ambient::Mult, Point::Ratio(n, d)) => *n > 0 && *d > 0,
            _ => false,
        }
    }

    /// Group operation (written additively throughout).
    pub fn add(&self, a: &Point, b: &Point) -> Point {
        match (self, a, b) {
            (Ambient::Z { .. }, Point::Int(x), Point::Int(y)) => Point::Int(x + y),
            (Ambient::Zn { n }, Point::Int(x), Point::Int(y)) => {
                Point::Int((x + y).rem_euclid(*n as i128))
            }
            (Ambient::Zd { .. }, Point::Vec(x), Point::Vec(y)) => {
                Point::Vec(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (Ambient::Mult, Point::Ratio(xn, xd), Point::Ratio(yn, yd)) => {
                Point::ratio(xn * yn, xd * yd)
            }
            _ => panic!("point/ambient kind mismatch in add"),
        }
    }

    /// Group inverse.
    pub fn neg(&self, a: &Point) -> Point {
        match (self, a) {
            (Ambient::Z { .. }, Point::Int(x)) => Point::Int(-x),
            (Ambient::Zn { n }, Point::Int(x)) => Point::Int((-x).rem_euclid(*n as i128)),
            (Ambient::Zd { .. }, Point::Vec(x)) => Point::Vec(x.iter().map(|c| -c).collect()),
            (Ambient::Mult, Point::Ratio(n, d)) => Point::Ratio(*d, *n),
            _ => panic!("point/ambient kind mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Point, b: &Point) -> Point {
        self.add(a, &self.neg(b))
    }

    pub fn zero(&self) -> Point {
        match self {
            Ambient::Z { .. } | Ambient::Zn { .. } => Point::Int(0),
            Ambient::Zd { d } => Point::Vec(vec![0; *d]),
            Ambient::Mult => Point::Ratio(1, 1),
        }
    }

    /// Number of elements, when the ambient is finite (or finitely windowed).
    pub fn universe_size(&self) -> Option<u64> {
        match self {
            Ambient::Z { bound } => Some((2 * bound + 1) as u64),
            Ambient::Zn { n } => Some(*n),
            _ => None,
        }
    }

    /// Enumerates the ambient's elements, when finite.
    pub fn universe(&self) -> Option<Vec<Point>> {
        match self {
            Ambient::Z { bound } => Some((-bound..=*bound).map(Point::Int).collect()),
            Ambient::Zn { n } => Some((0..*n as i128).map(Point::Int).collect()),
            _ => None,
        }
    }

    /// The common ambient two operands live in.  Z windows merge to the
    /// larger bound; other kinds must agree exactly.
    pub fn merge(&self, other: &Ambient) -> Result<Ambient> {
        match (self, other) {
            (Ambient::Z { bound: a }, Ambient::Z { bound: b }) => {
                Ok(Ambient::Z { bound: *a.max(b) })
            }
            (a, b) if a == b => Ok(a.clone()),
            (a, b) => Err(Error::AmbientMismatch(a.describe(), b.describe())),
        }
    }

    pub fn is_one_dimensional(&self) -> bool {
        matches!(self, Ambient::Z { .. } | Ambient::Zn { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_arithmetic_wraps() {
        let g = Ambient::zn(5);
        assert_eq!(g.add(&Point::Int(3), &Point::Int(4)), Point::Int(2));
        assert_eq!(g.neg(&Point::Int(2)), Point::Int(3));
        assert_eq!(g.neg(&Point::Int(0)), Point::Int(0));
    }

    #[test]
    fn mult_is_a_group() {
        let g = Ambient::Mult;
        let a = Point::ratio(6, 1);
        let b = Point::ratio(4, 9);
        assert_eq!(g.add(&a, &b), Point::Ratio(8, 3));
        assert_eq!(g.add(&a, &g.neg(&a)), g.zero());
    }

    #[test]
    fn window_merge_widens() {
        let a = Ambient::z(4);
        let b = Ambient::z(9);
        assert_eq!(a.merge(&b).unwrap(), Ambient::z(9));
        assert!(a.merge(&Ambient::zn(4)).is_err());
    }

    #[test]
    fn containment() {
        assert!(Ambient::z(4).contains(&Point::Int(-4)));
        assert!(!Ambient::z(4).contains(&Point::Int(5)));
        assert!(Ambient::zn(4).contains(&Point::Int(3)));
        assert!(!Ambient::zn(4).contains(&Point::Int(4)));
        assert!(Ambient::zd(2).contains(&Point::Vec(vec![1, -7])));
        assert!(!Ambient::zd(2).contains(&Point::Vec(vec![1])));
    }
}
