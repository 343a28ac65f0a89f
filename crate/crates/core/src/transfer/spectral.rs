//! Floating-point eigenvalue estimates. Approximate by nature; nothing
//! exact depends on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::TransferMatrices;
use crate::error::{Error, Result};

pub const TOLERANCE: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralEstimates {
    /// Dominant eigenvalue of `A`.
    pub lambda: f64,
    /// Largest absolute eigenvalue of `Ã`.
    pub lambda_tilde: f64,
    pub ratio: f64,
    pub lambda_residual: f64,
    pub tilde_residual: f64,
    pub iterations: [usize; 2],
}

pub fn spectral_estimates(m: &TransferMatrices, seed: u64) -> Result<SpectralEstimates> {
    let n = m.len();
    let count = |v: &[f64]| apply(m, v, |e| e.count as f64);
    let signed = |v: &[f64]| apply(m, v, |e| e.signed as f64);

    let (lambda, r0, i0) = power_iteration(vec![1.0; n], count)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (mu, r1, i1) = power_iteration(start, |v| signed(&signed(v)))?;
    let lambda_tilde = mu.max(0.0).sqrt();
    Ok(SpectralEstimates {
        lambda,
        lambda_tilde,
        ratio: lambda_tilde / lambda,
        lambda_residual: r0,
        tilde_residual: r1,
        iterations: [i0, i1],
    })
}

fn apply(m: &TransferMatrices, v: &[f64], w: impl Fn(&super::TransferEntry) -> f64 + Sync) -> Vec<f64> {
    (0..m.len())
        .into_par_iter()
        .map(|p| m.row(p).iter().map(|e| w(e) * v[e.col as usize]).sum())
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Dominant eigenvalue of a symmetric operator by power iteration with
/// Rayleigh quotients; stops when the relative residual drops below
/// [`TOLERANCE`].
fn power_iteration(mut v: Vec<f64>, op: impl Fn(&[f64]) -> Vec<f64>) -> Result<(f64, f64, usize)> {
    let nv = norm(&v);
    if nv == 0.0 {
        return Ok((0.0, 0.0, 0));
    }
    v.iter_mut().for_each(|x| *x /= nv);
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let w = op(&v);
        let mu: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let nw = norm(&w);
        if nw == 0.0 {
            return Ok((0.0, 0.0, it));
        }
        residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - mu * a).powi(2))
            .sum::<f64>()
            .sqrt()
            / mu.abs().max(f64::MIN_POSITIVE);
        if residual < TOLERANCE {
            return Ok((mu, residual, it));
        }
        v = w.into_iter().map(|x| x / nw).collect();
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual,
    })
}
