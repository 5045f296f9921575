//! Exact integer convolution kernels.
//!
//! The accelerated path is a number-theoretic transform modulo NTT-friendly
//! primes below 2^31, with CRT reconstruction when coefficients can exceed
//! one prime.  It is selected only when the support product crosses the
//! threshold and the dense span is manageable; everything else falls back
//! to the sparse double loop.  Both paths are exact and must agree
//! bit-for-bit — the naive loop is the correctness oracle.

use num::bigint::BigInt;
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// Support-product threshold above which the transform path is tried.
pub const ACCEL_SUPPORT_PRODUCT: usize = 1 << 12;
/// Largest dense span (hence transform length) the NTT path accepts.
pub const MAX_DENSE_SPAN: usize = 1 << 23;

const PRIMES: [(u64, u64); 3] = [(998_244_353, 3), (167_772_161, 3), (2_013_265_921, 31)];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// In-place iterative radix-2 NTT (decimation in time).
fn ntt(a: &mut [u64], p: u64, g: u64, invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(g, (p - 1) / len as u64, p);
        if invert {
            w = pow_mod(w, p - 2, p);
        }
        for start in (0..n).step_by(len) {
            let mut cur = 1u64;
            for k in 0..len / 2 {
                let u = a[start + k];
                let v = a[start + k + len / 2] * cur % p;
                a[start + k] = (u + v) % p;
                a[start + k + len / 2] = (u + p - v) % p;
                cur = cur * w % p;
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = pow_mod(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = *x * n_inv % p;
        }
    }
}

/// Linear convolution of two residue vectors modulo `p`.
fn convolve_mod(a: &[u64], b: &[u64], p: u64, g: u64) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    ntt(&mut fa, p, g, false);
    ntt(&mut fb, p, g, false);
    for i in 0..size {
        fa[i] = fa[i] * fb[i] % p;
    }
    ntt(&mut fa, p, g, true);
    fa.truncate(out_len);
    fa
}

/// Convolution counts of two integer *sets* (indicator functions): the
/// number of representations of each value as `x + y`.  With `modulus`
/// given, the result is folded into residues `0..modulus`.
pub fn count_convolve(xs: &[i128], ys: &[i128], modulus: Option<u64>) -> Vec<(i128, u64)> {
    if xs.is_empty() || ys.is_empty() {
        return Vec::new();
    }
    let use_ntt = xs.len() * ys.len() >= ACCEL_SUPPORT_PRODUCT && dense_span(xs, ys).is_some();
    let linear: Vec<(i128, u64)> = if use_ntt {
        let (min_sum, _) = dense_span(xs, ys).unwrap();
        let (p, g) = PRIMES[0];
        debug_assert!((xs.len().min(ys.len()) as u64) < p);
        let mut a = vec![0u64; span_len(xs)];
        let mut b = vec![0u64; span_len(ys)];
        let (xmin, ymin) = (min_of(xs), min_of(ys));
        for &x in xs {
            a[(x - xmin) as usize] = 1;
        }
        for &y in ys {
            b[(y - ymin) as usize] = 1;
        }
        let c = convolve_mod(&a, &b, p, g);
        c.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (min_sum + i as i128, v))
            .collect()
    } else {
        let mut map: BTreeMap<i128, u64> = BTreeMap::new();
        for &x in xs {
            for &y in ys {
                *map.entry(x + y).or_insert(0) += 1;
            }
        }
        map.into_iter().collect()
    };
    match modulus {
        None => linear,
        Some(n) => {
            let mut folded: BTreeMap<i128, u64> = BTreeMap::new();
            for (v, c) in linear {
                *folded.entry(v.rem_euclid(n as i128)).or_insert(0) += c;
            }
            folded.into_iter().collect()
        }
    }
}

fn min_of(xs: &[i128]) -> i128 {
    *xs.iter().min().unwrap()
}

fn span_len(xs: &[i128]) -> usize {
    let min = xs.iter().min().unwrap();
    let max = xs.iter().max().unwrap();
    (max - min) as usize + 1
}

fn dense_span(xs: &[i128], ys: &[i128]) -> Option<(i128, usize)> {
    let la = span_len(xs);
    let lb = span_len(ys);
    let total = la.checked_add(lb)? - 1;
    if la > MAX_DENSE_SPAN || lb > MAX_DENSE_SPAN || total > MAX_DENSE_SPAN {
        return None;
    }
    Some((min_of(xs) + min_of(ys), total))
}

/// Exact convolution of integer-valued sparse vectors via NTT + CRT.
/// Returns `None` when the span or the coefficient bound exceeds what the
/// fixed prime set supports; the caller then uses the naive path.
pub fn big_int_convolve(
    xs: &[(i128, BigInt)],
    ys: &[(i128, BigInt)],
) -> Option<Vec<(i128, BigInt)>> {
    if xs.is_empty() || ys.is_empty() {
        return Some(Vec::new());
    }
    let axs: Vec<i128> = xs.iter().map(|(x, _)| *x).collect();
    let ays: Vec<i128> = ys.iter().map(|(y, _)| *y).collect();
    let (min_sum, out_len) = dense_span(&axs, &ays)?;

    // coefficient magnitude bound: min(‖a‖₁‖b‖∞, ‖a‖∞‖b‖₁)
    let norm1 = |v: &[(i128, BigInt)]| -> BigInt { v.iter().map(|(_, c)| c.abs()).sum() };
    let norm_inf = |v: &[(i128, BigInt)]| -> BigInt {
        v.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
    };
    let bound = (norm1(xs) * norm_inf(ys)).min(norm_inf(xs) * norm1(ys));

    let mut primes: Vec<(u64, u64)> = Vec::new();
    let mut capacity = BigInt::from(1);
    for &(p, g) in &PRIMES {
        primes.push((p, g));
        capacity *= BigInt::from(p);
        if capacity > BigInt::from(2) * &bound {
            break;
        }
    }
    if capacity <= BigInt::from(2) * &bound {
        return None;
    }

    let xmin = min_of(&axs);
    let ymin = min_of(&ays);
    let la = span_len(&axs);
    let lb = span_len(&ays);

    let residues: Vec<Vec<u64>> = primes
        .iter()
        .map(|&(p, g)| {
            let mut a = vec![0u64; la];
            let mut b = vec![0u64; lb];
            let pb = BigInt::from(p);
            for (x, c) in xs {
                a[(*x - xmin) as usize] = to_residue(c, &pb, p);
            }
            for (y, c) in ys {
                b[(*y - ymin) as usize] = to_residue(c, &pb, p);
            }
            convolve_mod(&a, &b, p, g)
        })
        .collect();

    let mut out = Vec::new();
    let half = &capacity / 2;
    for i in 0..out_len {
        let value = match primes.len() {
            1 => BigInt::from(residues[0][i]),
            _ => {
                // CRT by accumulation
                let mut x = BigInt::zero();
                let mut m = BigInt::from(1);
                for (k, &(p, _)) in primes.iter().enumerate() {
                    let pk = BigInt::from(p);
                    let r = BigInt::from(residues[k][i]);
                    // t = (r - x) * m^{-1} mod p
                    let m_mod = (&m % &pk + &pk) % &pk;
                    let m_inv = BigInt::from(pow_mod(
                        big_to_u64(&m_mod),
                        p - 2,
                        p,
                    ));
                    let diff = ((&r - &x) % &pk + &pk) % &pk;
                    let t = (diff * m_inv) % &pk;
                    x += &t * &m;
                    m *= &pk;
                }
                x
            }
        };
        let value = if value > half { value - &capacity } else { value };
        if !value.is_zero() {
            out.push((min_sum + i as i128, value));
        }
    }
    Some(out)
}

fn to_residue(c: &BigInt, p_big: &BigInt, p: u64) -> u64 {
    let r = ((c % p_big) + p_big) % p_big;
    big_to_u64(&r) % p
}

fn big_to_u64(b: &BigInt) -> u64 {
    let (_, digits) = b.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ntt_roundtrip() {
        let (p, g) = PRIMES[0];
        let mut a = vec![1, 2, 3, 4, 0, 0, 0, 0];
        let orig = a.clone();
        ntt(&mut a, p, g, false);
        ntt(&mut a, p, g, true);
        assert_eq!(a, orig);
    }

    #[test]
    fn counts_match_double_loop() {
        let xs: Vec<i128> = (0..80).map(|i| (i * i * 7 + i) % 301 - 40).collect();
        let mut xs = xs;
        xs.sort();
        xs.dedup();
        let ys: Vec<i128> = (0..90).map(|i| (i * 13 + 5) % 173).collect();
        let mut ys = ys;
        ys.sort();
        ys.dedup();
        // force both paths and compare
        let naive: BTreeMap<i128, u64> = {
            let mut m = BTreeMap::new();
            for &x in &xs {
                for &y in &ys {
                    *m.entry(x + y).or_insert(0) += 1;
                }
            }
            m
        };
        let got = count_convolve(&xs, &ys, None);
        assert!(xs.len() * ys.len() >= ACCEL_SUPPORT_PRODUCT);
        assert_eq!(got, naive.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn counts_fold_cyclically() {
        let xs = vec![0i128, 1, 2];
        let ys = vec![2i128, 3];
        let got = count_convolve(&xs, &ys, Some(4));
        // sums: 2,3,4,3,4,5 -> residues 2,3,0,3,0,1
        assert_eq!(got, vec![(0, 2), (1, 1), (2, 1), (3, 2)]);
    }

    #[test]
    fn bigint_convolve_crt() {
        // values big enough to need more than one prime
        let big = BigInt::from(3_000_000_000u64);
        let xs = vec![(0i128, big.clone()), (1, BigInt::from(-7)), (5, big.clone())];
        let ys = vec![(0i128, big.clone()), (2, BigInt::from(11))];
        let got = big_int_convolve(&xs, &ys).unwrap();
        let mut expect: BTreeMap<i128, BigInt> = BTreeMap::new();
        for (x, a) in &xs {
            for (y, b) in &ys {
                *expect.entry(x + y).or_insert_with(BigInt::zero) += a * b;
            }
        }
        expect.retain(|_, v| !v.is_zero());
        assert_eq!(got, expect.into_iter().collect::<Vec<_>>());
    }
}
