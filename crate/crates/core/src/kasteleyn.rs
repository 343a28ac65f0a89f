//! Kasteleyn signs, the twist of a tiling and the defect of a region.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::linalg::{bareiss_det, count_inversions};
use crate::region::{Cell, Color, Region, NONE};
use crate::tiling::{enumerate_tilings, Tiling};

/// Twist values are 0 or 1.
pub type TwistValue = u8;

/// Largest matrix size accepted by [`defect_by_determinant`].
pub const MAX_DET_SIZE: usize = 2048;

/// `(-1)^(x_1 + ... + x_{k-1})` for adjacent cells `v`, `w` differing along
/// axis `k`. Both ends share `x_1..x_{k-1}`, so the order does not matter.
pub fn canonical_sign(v: &Cell, w: &Cell) -> Result<i8> {
    let k = v
        .adjacency_axis(w)
        .ok_or_else(|| Error::NotAnEdge(v.to_string(), w.to_string()))?;
    Ok(sign_before_axis(v, k))
}

#[inline]
fn sign_before_axis(v: &Cell, k: usize) -> i8 {
    let s: i32 = v.coords()[..k].iter().sum();
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the edge between cell indices `a` and `b`, whichever is black.
#[inline]
pub(crate) fn edge_sign(region: &Region, a: usize, b: usize) -> i8 {
    let (ca, cb) = (region.cell(a), region.cell(b));
    let k = ca.adjacency_axis(&cb).expect("adjacent cells");
    // The two cells differ only along k, so either one gives the same sign.
    sign_before_axis(&ca, k)
}

/// Number of dominoes whose canonical sign is negative.
pub fn negative_count(t: &Tiling) -> usize {
    let r = t.region();
    r.blacks()
        .iter()
        .filter(|&&b| edge_sign(r, b as usize, t.partner_of(b as usize)) < 0)
        .count()
}

/// `Tw(t)`: parity of `inv(sigma)` plus parity of the number of negative
/// dominoes.
pub fn twist(t: &Tiling) -> TwistValue {
    let inv = count_inversions(&t.sigma());
    ((inv + negative_count(t) as u64) % 2) as TwistValue
}

/// Twist of a raw partner table over `region`.
pub(crate) fn twist_of_partner(region: &Region, partner: &[u32]) -> TwistValue {
    let sigma: Vec<u32> = region
        .blacks()
        .iter()
        .map(|&b| region.label(partner[b as usize] as usize) as u32)
        .collect();
    let neg = region
        .blacks()
        .iter()
        .filter(|&&b| edge_sign(region, b as usize, partner[b as usize] as usize) < 0)
        .count() as u64;
    ((count_inversions(&sigma) + neg) % 2) as TwistValue
}

/// `#twist-0 - #twist-1`, by enumeration.
pub fn defect_by_enumeration(region: &Region, limit: Option<u64>) -> Result<BigInt> {
    let mut e = enumerate_tilings(Arc::new(region.clone()), limit);
    let mut d = 0i64;
    for t in e.by_ref() {
        d += if twist(&t) == 0 { 1 } else { -1 };
    }
    if e.truncated() {
        return Err(Error::LimitExceeded(limit.unwrap_or(0)));
    }
    Ok(BigInt::from(d))
}

/// The canonical sign matrix, rows indexed by black labels and columns by
/// white labels. Requires a balanced region.
pub fn kasteleyn_matrix(region: &Region) -> Vec<Vec<i8>> {
    let b = region.black_count();
    let mut k = vec![vec![0i8; region.white_count()]; b];
    for (row, &bi) in region.blacks().iter().enumerate() {
        for d in 0..2 * region.dim() {
            let w = region.step_raw(bi as usize, d);
            if w != NONE {
                k[row][region.label(w as usize)] = edge_sign(region, bi as usize, w as usize);
            }
        }
    }
    k
}

/// `det K` by exact fraction-free elimination. Unbalanced regions give 0.
pub fn defect_by_determinant(region: &Region) -> Result<BigInt> {
    if !region.is_balanced() {
        return Ok(BigInt::zero());
    }
    let b = region.black_count();
    if b > MAX_DET_SIZE {
        return Err(Error::SizeLimit {
            what: "Kasteleyn matrix",
            size: b,
            limit: MAX_DET_SIZE,
        });
    }
    let m = kasteleyn_matrix(region)
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    Ok(bareiss_det(m))
}

/// A sign for every edge, keyed by `(black index, white index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSystem {
    signs: FxHashMap<(u32, u32), i8>,
}

impl SignSystem {
    pub fn canonical(region: &Region) -> SignSystem {
        let signs = region
            .edges()
            .into_iter()
            .map(|(b, w)| ((b, w), edge_sign(region, b as usize, w as usize)))
            .collect();
        SignSystem { signs }
    }

    /// The canonical system multiplied by `delta_b * delta_w` for random
    /// per-cell signs `delta`.
    pub fn random_gauge(region: &Region, seed: u64) -> SignSystem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let delta: Vec<i8> = (0..region.len())
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        Self::gauge(region, &delta)
    }

    /// The canonical system twisted by the given per-cell signs.
    pub fn gauge(region: &Region, delta: &[i8]) -> SignSystem {
        let mut s = Self::canonical(region);
        for ((b, w), v) in s.signs.iter_mut() {
            *v *= delta[*b as usize] * delta[*w as usize];
        }
        s
    }

    pub fn from_map(signs: FxHashMap<(u32, u32), i8>) -> SignSystem {
        SignSystem { signs }
    }

    pub fn get(&self, black: usize, white: usize) -> Option<i8> {
        self.signs.get(&(black as u32, white as u32)).copied()
    }

    pub fn set(&mut self, black: usize, white: usize, sign: i8) {
        self.signs.insert((black as u32, white as u32), sign);
    }

    /// True iff every unit square in `region` has sign product `-1`.
    pub fn validate(&self, region: &Region) -> Result<bool> {
        let lookup = |a: usize, b: usize| -> Result<i8> {
            let (bl, wh) = if region.color(a) == Color::Black { (a, b) } else { (b, a) };
            self.get(bl, wh).ok_or_else(|| {
                Error::MissingEdge(region.cell(bl).to_string(), region.cell(wh).to_string())
            })
        };
        for (b, w) in region.edges() {
            lookup(b as usize, w as usize)?;
        }
        let n = region.dim();
        for v in 0..region.len() {
            for k0 in 0..n {
                let Some(a) = region.step(v, 2 * k0 + 1) else { continue };
                for k1 in k0 + 1..n {
                    let Some(b) = region.step(v, 2 * k1 + 1) else { continue };
                    let Some(c) = region.step(a, 2 * k1 + 1) else { continue };
                    let p = lookup(v, a)? * lookup(a, c)? * lookup(c, b)? * lookup(b, v)?;
                    if p != -1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `det T_{t,s}`: the sign of the signed permutation matrix of `t`.
    pub fn signed_det(&self, t: &Tiling) -> Result<i8> {
        let r = t.region();
        let mut prod = 1i8;
        for &b in r.blacks() {
            let w = t.partner_of(b as usize);
            prod *= self.get(b as usize, w).ok_or_else(|| {
                Error::MissingEdge(r.cell(b as usize).to_string(), r.cell(w).to_string())
            })?;
        }
        let inv = count_inversions(&t.sigma());
        Ok(if inv % 2 == 0 { prod } else { -prod })
    }
}

/// Finds the single `eps` with `det T_{t,s} = eps * det T_{t,canonical}` for
/// every tiling, or reports a tiling that breaks it.
pub fn gauge_twist_comparison(region: &Region, s: &SignSystem, limit: Option<u64>) -> Result<i8> {
    let canonical = SignSystem::canonical(region);
    let mut eps: Option<(i8, Tiling)> = None;
    let mut e = enumerate_tilings(Arc::new(region.clone()), limit);
    for t in e.by_ref() {
        let r = s.signed_det(&t)? * canonical.signed_det(&t)?;
        match &eps {
            None => eps = Some((r, t)),
            Some((e0, first)) if *e0 != r => {
                return Err(Error::GaugeInconsistent(format!(
                    "ratio {e0} on\n{}but {r} on\n{}",
                    first.to_text(),
                    t.to_text()
                )))
            }
            _ => {}
        }
    }
    if e.truncated() {
        return Err(Error::LimitExceeded(limit.unwrap_or(0)));
    }
    Ok(eps.map(|(e, _)| e).unwrap_or(1))
}
