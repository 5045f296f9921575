use super::ntt::big_int_convolve;
use super::ntt::ACCEL_SUPPORT_PRODUCT;
use super::{Ambient, DensityFunction, Point};
use crate::error::{Error, Result};
use num::rational::BigRational;

/// Policy knobs for the convolution dispatcher.  Defaults: windows widen as
/// needed, and the path (naive vs transform) is chosen by support size.
#[derive(Clone, Copy, Debug)]
pub struct ConvolveOptions {
    /// Widen a Z window so the full result support fits.  When false, a
    /// result outside the merged window is an error.
    pub widen: bool,
    /// Force the sparse double loop regardless of size.
    pub force_naive: bool,
    /// Support-size product above which the transform path is attempted.
    pub accel_threshold: usize,
}

impl Default for ConvolveOptions {
    fn default() -> Self {
        ConvolveOptions {
            widen: true,
            force_naive: false,
            accel_threshold: ACCEL_SUPPORT_PRODUCT,
        }
    }
}

/// `f ∗ g(x) = Σ_y f(x − y) g(y)`, exact.
pub fn convolve(f: &DensityFunction, g: &DensityFunction) -> Result<DensityFunction> {
    convolve_with(f, g, &ConvolveOptions::default())
}

/// `f ∘ g(x) = Σ_y f(x + y) g(y)`, exact.  Equals `f ∗ ğ` with
/// `ğ(y) = g(−y)`.
pub fn diff_convolve(f: &DensityFunction, g: &DensityFunction) -> Result<DensityFunction> {
    convolve_with(f, &g.reflect(), &ConvolveOptions::default())
}

pub fn convolve_with(
    f: &DensityFunction,
    g: &DensityFunction,
    opts: &ConvolveOptions,
) -> Result<DensityFunction> {
    let ambient = f.ambient().merge(g.ambient())?;

    let accelerable = !opts.force_naive
        && ambient.is_one_dimensional()
        && f.support_len() * g.support_len() >= opts.accel_threshold;

    let mut out = if accelerable {
        match accelerated(&ambient, f, g) {
            Some(result) => result,
            None => convolve_naive(&ambient, f, g),
        }
    } else {
        convolve_naive(&ambient, f, g)
    };

    if let Ambient::Z { bound } = &ambient {
        let needed = out
            .iter()
            .filter_map(|(p, _)| p.as_int())
            .map(|v| v.abs())
            .max()
            .unwrap_or(0);
        if needed > *bound {
            if opts.widen {
                out = rehome_density(out, Ambient::Z { bound: needed });
            } else {
                return Err(Error::WindowOverflow {
                    needed: needed.to_string(),
                    bound: bound.to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// The sparse double loop over both supports — the correctness oracle every
/// other path is pinned to.
pub fn convolve_naive(
    ambient: &Ambient,
    f: &DensityFunction,
    g: &DensityFunction,
) -> DensityFunction {
    // accumulate in an unwindowed copy; the caller enforces window policy
    let work = unwindowed(ambient);
    let mut out = DensityFunction::zero(work.clone());
    for (y, gv) in g.iter() {
        for (x, fv) in f.iter() {
            out.add(work.add(x, y), fv * gv);
        }
    }
    rehome_density(out, ambient.clone())
}

fn accelerated(
    ambient: &Ambient,
    f: &DensityFunction,
    g: &DensityFunction,
) -> Option<DensityFunction> {
    let (fi, fd) = f.cleared_integer_form()?;
    let (gi, gd) = g.cleared_integer_form()?;
    let pairs = big_int_convolve(&fi, &gi)?;
    let scale = BigRational::new(1.into(), fd * gd);
    let work = unwindowed(ambient);
    let mut out = DensityFunction::zero(work.clone());
    for (x, v) in pairs {
        let p = match ambient {
            Ambient::Zn { n } => Point::Int(x.rem_euclid(*n as i128)),
            _ => Point::Int(x),
        };
        out.add(p, BigRational::from_integer(v) * &scale);
    }
    Some(rehome_density(out, ambient.clone()))
}

// Z windows are enforced after the fact so intermediate sums may roam.
fn unwindowed(ambient: &Ambient) -> Ambient {
    match ambient {
        Ambient::Z { .. } => Ambient::Z { bound: i128::MAX / 4 },
        other => other.clone(),
    }
}

fn rehome_density(f: DensityFunction, ambient: Ambient) -> DensityFunction {
    let needed = f
        .iter()
        .filter_map(|(p, _)| p.as_int())
        .map(|v| v.abs())
        .max()
        .unwrap_or(0);
    let target = match &ambient {
        Ambient::Z { bound } => Ambient::Z { bound: (*bound).max(needed).max(1) },
        other => other.clone(),
    };
    DensityFunction::from_pairs(target, f.iter().map(|(p, v)| (p.clone(), v.clone())))
        .expect("rehomed support fits by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::FiniteSet;
    use num::bigint::BigInt;
    use num::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ind(elems: &[i128]) -> DensityFunction {
        FiniteSet::from_ints(Ambient::z(8), elems.iter().copied())
            .unwrap()
            .indicator()
    }

    #[test]
    fn basic_convolutions() {
        // 1_{0,1} ∗ 1_{0,2} = {0:1, 1:1, 2:1, 3:1}
        let c = convolve(&ind(&[0, 1]), &ind(&[0, 2])).unwrap();
        for (x, v) in [(0, 1), (1, 1), (2, 1), (3, 1)] {
            assert_eq!(c.value(&Point::Int(x)), rat(v, 1));
        }
        assert_eq!(c.support_len(), 4);

        // 1_{0,1} ∗ 1_{0,1} = {0:1, 1:2, 2:1}
        let c = convolve(&ind(&[0, 1]), &ind(&[0, 1])).unwrap();
        assert_eq!(c.value(&Point::Int(1)), rat(2, 1));
        assert_eq!(c.support_len(), 3);
    }

    #[test]
    fn delta_is_identity() {
        let f = DensityFunction::from_pairs(
            Ambient::z(8),
            [(Point::Int(-2), rat(7, 3)), (Point::Int(5), rat(-1, 2))],
        )
        .unwrap();
        let d = DensityFunction::delta(Ambient::z(8));
        assert_eq!(convolve(&f, &d).unwrap(), f);
        assert_eq!(diff_convolve(&f, &d).unwrap(), f);
    }

    #[test]
    fn diff_convolution_autocorrelation() {
        // 1_{0,1,3} ∘ 1_{0,1,3} = {0:3, ±1:1, ±2:1, ±3:1}
        let a = ind(&[0, 1, 3]);
        let c = diff_convolve(&a, &a).unwrap();
        assert_eq!(c.value(&Point::Int(0)), rat(3, 1));
        for x in [1i128, -1, 2, -2, 3, -3] {
            assert_eq!(c.value(&Point::Int(x)), rat(1, 1));
        }
        assert_eq!(c.support_len(), 7);
    }

    #[test]
    fn mass_identity() {
        let f = ind(&[0, 2, 3]);
        let g = ind(&[1, 5]);
        let c = convolve(&f, &g).unwrap();
        assert_eq!(c.mass(), rat(6, 1));
    }

    #[test]
    fn window_policy() {
        let f = ind(&[7, 8].map(|x| x - 8)); // within bound 8
        let g = ind(&[7, 8].map(|x| x - 8));
        let widened = convolve(&f, &g).unwrap();
        assert!(matches!(widened.ambient(), Ambient::Z { .. }));

        let tight = FiniteSet::from_ints(Ambient::z(2), [1, 2]).unwrap().indicator();
        let err = convolve_with(
            &tight,
            &tight,
            &ConvolveOptions { widen: false, ..Default::default() },
        );
        assert!(matches!(err, Err(Error::WindowOverflow { .. })));
    }

    #[test]
    fn cyclic_convolution_wraps() {
        let g = Ambient::zn(4);
        let a = FiniteSet::from_ints(g.clone(), [0, 1, 2]).unwrap().indicator();
        let b = FiniteSet::from_ints(g, [2, 3]).unwrap().indicator();
        let c = convolve(&a, &b).unwrap();
        // sums 2,3,4,3,4,5 fold to 2,3,0,3,0,1
        assert_eq!(c.value(&Point::Int(0)), rat(2, 1));
        assert_eq!(c.value(&Point::Int(1)), rat(1, 1));
        assert_eq!(c.value(&Point::Int(2)), rat(1, 1));
        assert_eq!(c.value(&Point::Int(3)), rat(2, 1));
    }

    #[test]
    fn accelerated_agrees_with_naive() {
        // large enough to cross the threshold, rational-valued
        let ambient = Ambient::z(4096);
        let f = DensityFunction::from_pairs(
            ambient.clone(),
            (0..80).map(|i| (Point::Int(3 * i - 100), rat(i as i64 % 7 - 3, 1 + (i as i64 % 5)))),
        )
        .unwrap();
        let g = DensityFunction::from_pairs(
            ambient.clone(),
            (0..64).map(|i| (Point::Int(5 * i), rat(2 - (i as i64 % 4), 3))),
        )
        .unwrap();
        let fast = convolve_with(
            &f,
            &g,
            &ConvolveOptions { accel_threshold: 1, ..Default::default() },
        )
        .unwrap();
        let slow = convolve_with(
            &f,
            &g,
            &ConvolveOptions { force_naive: true, ..Default::default() },
        )
        .unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn adjoint_identity() {
        // ⟨f∗g, h⟩ = ⟨f, h∘g⟩ on explicit rationals
        let f = DensityFunction::from_pairs(
            Ambient::z(16),
            [(Point::Int(0), rat(1, 2)), (Point::Int(3), rat(5, 1))],
        )
        .unwrap();
        let g = DensityFunction::from_pairs(
            Ambient::z(16),
            [(Point::Int(-1), rat(2, 3)), (Point::Int(4), rat(1, 7))],
        )
        .unwrap();
        let h = DensityFunction::from_pairs(
            Ambient::z(16),
            [(Point::Int(2), rat(-3, 1)), (Point::Int(7), rat(9, 5))],
        )
        .unwrap();
        let lhs = convolve(&f, &g).unwrap().inner(&h);
        let rhs = f.inner(&diff_convolve(&h, &g).unwrap());
        assert_eq!(lhs, rhs);
    }
}
