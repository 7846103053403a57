//! Exact convolution of nonnegative integer vectors by number-theoretic
//! transforms modulo three NTT primes and CRT reconstruction.

use rayon::prelude::*;

use crate::error::{Error, Result};

const PRIMES: [u64; 3] = [998_244_353, 167_772_161, 469_762_049];
const ROOT: u64 = 3;
/// Largest transform length supported by all three primes.
const MAX_LEN: usize = 1 << 23;

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn ntt(a: &mut [u64], invert: bool, p: u64) {
    let n = a.len();
    let mut j = 0;
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
        let mut w = pow_mod(ROOT, (p - 1) / len as u64, p);
        if invert {
            w = pow_mod(w, p - 2, p);
        }
        for chunk in a.chunks_mut(len) {
            let mut wn = 1;
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let u = *x;
                let v = *y * wn % p;
                *x = if u + v >= p { u + v - p } else { u + v };
                *y = if u >= v { u - v } else { u + p - v };
                wn = wn * w % p;
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = *x * inv % p;
        }
    }
}

fn convolve_mod(a: &[u64], b: &[u64], size: usize, p: u64) -> Vec<u64> {
    let mut fa = vec![0; size];
    let mut fb = vec![0; size];
    for (d, s) in fa.iter_mut().zip(a) {
        *d = s % p;
    }
    for (d, s) in fb.iter_mut().zip(b) {
        *d = s % p;
    }
    ntt(&mut fa, false, p);
    ntt(&mut fb, false, p);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % p;
    }
    ntt(&mut fa, true, p);
    fa
}

/// Garner reconstruction of `x mod p0 p1 p2` from its three residues.
fn crt3(r: [u64; 3]) -> u128 {
    let [p0, p1, p2] = PRIMES.map(|p| p as u128);
    let inv_p0_mod_p1 = pow_mod(PRIMES[0], PRIMES[1] - 2, PRIMES[1]) as u128;
    let inv_p01_mod_p2 = pow_mod((p0 * p1 % p2) as u64, PRIMES[2] - 2, PRIMES[2]) as u128;
    let (r0, r1, r2) = (r[0] as u128, r[1] as u128, r[2] as u128);
    let x1 = (r1 + p1 - r0 % p1) % p1 * inv_p0_mod_p1 % p1;
    let partial = r0 + p0 * x1; // < p0 p1
    let x2 = (r2 + p2 - partial % p2) % p2 * inv_p01_mod_p2 % p2;
    partial + p0 * p1 * x2
}

/// Exact linear convolution of `a` and `b`, truncated to `out_len` terms.
///
/// Each true coefficient must be below `p0 p1 p2 ~ 7.9e25`; the caller
/// guarantees this with `bound`, the largest possible coefficient.
pub fn convolve_exact(a: &[u64], b: &[u64], out_len: usize, bound: u128) -> Result<Vec<u128>> {
    let modulus: u128 = PRIMES.iter().map(|&p| p as u128).product();
    if bound >= modulus {
        return Err(Error::Capacity(format!(
            "coefficient bound {bound} exceeds the CRT modulus"
        )));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(vec![0; out_len]);
    }
    let size = (a.len() + b.len() - 1).next_power_of_two();
    if size > MAX_LEN {
        return Err(Error::Capacity(format!(
            "convolution length {size} exceeds {MAX_LEN}"
        )));
    }
    let residues: Vec<Vec<u64>> = PRIMES
        .par_iter()
        .map(|&p| convolve_mod(a, b, size, p))
        .collect();
    Ok((0..out_len)
        .map(|i| {
            if i < size {
                crt3([residues[0][i], residues[1][i], residues[2][i]])
            } else {
                0
            }
        })
        .collect())
}
