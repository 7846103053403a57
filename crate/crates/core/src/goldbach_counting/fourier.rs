use rustfft::num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest length for which [`fourier_transform`] also runs the direct
/// transform as a cross-check.
pub const DIRECT_CHECK_MAX_N: usize = 2048;

fn check_length(n: usize) -> Result<()> {
    if !is_prime(n as u64) {
        return Err(Error::NotPrime(n as u64));
    }
    Ok(())
}

fn check_finite(name: &str, f: &[f64], nonnegative: bool) -> Result<()> {
    if let Some((x, v)) = f
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || (nonnegative && **v < 0.0))
    {
        return Err(Error::Precondition(format!(
            "{name}[{x}] = {v} is not an admissible value"
        )));
    }
    Ok(())
}

/// `f^(r) = sum_x f(x) exp(2 pi i r x / N)` by direct summation, with `r x`
/// reduced mod `N` before the exponential.
pub fn dft_direct(f: &[f64]) -> Vec<Complex64> {
    let n = f.len();
    let roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    (0..n)
        .map(|r| {
            f.iter()
                .enumerate()
                .map(|(x, &v)| roots[r * x % n] * v)
                .sum()
        })
        .collect()
}

/// Same transform as [`dft_direct`] in `O(N log N)`.
pub fn dft_fast(f: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    if buf.is_empty() {
        return buf;
    }
    // the inverse direction uses the positive exponent and is unnormalized
    FftPlanner::new()
        .plan_fft(buf.len(), FftDirection::Inverse)
        .process(&mut buf);
    buf
}

fn serialize_complex<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    #[serde(serialize_with = "serialize_complex")]
    pub values: Vec<Complex64>,
    /// `sum_r |f^(r)|^2`.
    pub spectral_energy: f64,
    /// `N sum_x |f(x)|^2`.
    pub physical_energy: f64,
    pub parseval_rel_error: f64,
    /// `|f^(0) - sum_x f(x)|`.
    pub zero_mode_error: f64,
    /// Largest `|fast - direct|` relative to `max |direct|`, when `N` is small
    /// enough to run the direct transform.
    pub direct_rel_error: Option<f64>,
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn fourier_transform(f: &[f64]) -> Result<SpectrumReport> {
    check_length(f.len())?;
    check_finite("f", f, false)?;
    let values = dft_fast(f);
    let spectral_energy: f64 = values.iter().map(|z| z.norm_sqr()).sum();
    let physical_energy = f.len() as f64 * f.iter().map(|v| v * v).sum::<f64>();
    let zero_mode_error = (values[0].re - f.iter().sum::<f64>())
        .abs()
        .max(values[0].im.abs());
    let direct_rel_error = (f.len() <= DIRECT_CHECK_MAX_N).then(|| {
        let direct = dft_direct(f);
        let scale = direct.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let diff = direct
            .iter()
            .zip(&values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    });
    Ok(SpectrumReport {
        n: f.len(),
        parseval_rel_error: rel(spectral_energy, physical_energy),
        values,
        spectral_energy,
        physical_energy,
        zero_mode_error,
        direct_rel_error,
    })
}

/// `max_r |mu^(r) - [r = 0]|`.
pub fn eta_observed(mu_hat: &[Complex64]) -> f64 {
    mu_hat
        .iter()
        .enumerate()
        .map(|(r, z)| (z - Complex64::new((r == 0) as u8 as f64, 0.0)).norm())
        .fold(0.0, f64::max)
}

/// `(sum_r |a^(r)|^q)^(1/q)`.
pub fn lq_norm(a_hat: &[Complex64], q: f64) -> f64 {
    a_hat
        .iter()
        .map(|z| z.norm().powf(q))
        .sum::<f64>()
        .powf(1.0 / q)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PseudorandomnessReport {
    pub n: usize,
    pub q: f64,
    /// Per majorant.
    pub eta_observed: [f64; 3],
    /// Per minorant.
    pub lq_norm: [f64; 3],
    /// `delta_i = sum_x a_i(x)`.
    pub deltas: [f64; 3],
    /// `min(d1, d2, d3, d1 + d2 + d3 - 1)`.
    pub mean_value: f64,
    /// `0 <= a_i <= mu_i` pointwise.
    pub majorized: bool,
}

impl PseudorandomnessReport {
    pub fn mean_condition(&self, delta: f64) -> bool {
        self.mean_value >= delta
    }
}

/// Transference diagnostics for majorants `mu_i` and minorants `a_i` on
/// `Z_N`, with `q` in `(2, 3)`.
pub fn pseudorandomness_report(
    mu: &[Vec<f64>; 3],
    a: &[Vec<f64>; 3],
    q: f64,
) -> Result<PseudorandomnessReport> {
    if !(q > 2.0 && q < 3.0) {
        return Err(Error::Precondition(format!("q = {q} must lie in (2, 3)")));
    }
    let n = mu[0].len();
    if mu.iter().chain(a).any(|v| v.len() != n) {
        return Err(Error::Precondition(
            "all vectors must share one length".into(),
        ));
    }
    check_length(n)?;
    for i in 0..3 {
        check_finite(&format!("mu{}", i + 1), &mu[i], true)?;
        check_finite(&format!("a{}", i + 1), &a[i], true)?;
    }
    let eta = [0, 1, 2].map(|i| eta_observed(&dft_fast(&mu[i])));
    let lq = [0, 1, 2].map(|i| lq_norm(&dft_fast(&a[i]), q));
    let deltas = [0, 1, 2].map(|i| a[i].iter().sum::<f64>());
    let mean_value = deltas
        .iter()
        .copied()
        .fold(deltas.iter().sum::<f64>() - 1.0, f64::min);
    let majorized = (0..3).all(|i| a[i].iter().zip(&mu[i]).all(|(x, m)| x <= m));
    Ok(PseudorandomnessReport {
        n,
        q,
        eta_observed: eta,
        lq_norm: lq,
        deltas,
        mean_value,
        majorized,
    })
}
