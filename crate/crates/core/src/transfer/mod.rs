//! Plugs, floors and the transfer matrices `A` (tiling counts) and `Ã`
//! (signed counts) of a base region, with exact powers for cylinders.

mod cache;
mod spectral;

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kasteleyn::edge_sign;
use crate::linalg::count_inversions;
use crate::plug::{full_mask, Plug};
use crate::region::{Color, Region, MAX_BASE_CELLS};
use crate::tiling::{complement_region, enumerate_tilings, Tiling};

pub use cache::{load_cache, save_cache, MatricesJson};
pub use spectral::{spectral_estimates, SpectralEstimates, TOLERANCE};

/// Largest number of plugs accepted when building matrices.
pub const MAX_PLUGS: usize = 200_000;

/// All plugs of `base`, sorted by mask; the empty plug comes first.
pub fn enumerate_plugs(base: &Region) -> Result<Vec<Plug>> {
    if base.len() > MAX_BASE_CELLS {
        return Err(Error::SizeLimit {
            what: "base region",
            size: base.len(),
            limit: MAX_BASE_CELLS,
        });
    }
    let total = plug_count(base);
    if total > MAX_PLUGS as u128 {
        return Err(Error::SizeLimit {
            what: "plug count",
            size: total.min(usize::MAX as u128) as usize,
            limit: MAX_PLUGS,
        });
    }
    let bits = |cells: &[u32]| -> Vec<u64> { cells.iter().map(|&c| 1u64 << c).collect() };
    let by_size = |cells: Vec<u64>| -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); cells.len() + 1];
        for s in 0u64..(1u64 << cells.len()) {
            let m = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .fold(0u64, |acc, (_, &b)| acc | b);
            out[s.count_ones() as usize].push(m);
        }
        out
    };
    let blacks = by_size(bits(base.blacks()));
    let whites = by_size(bits(base.whites()));
    let mut plugs = Vec::with_capacity(total as usize);
    for k in 0..blacks.len().min(whites.len()) {
        for &b in &blacks[k] {
            for &w in &whites[k] {
                plugs.push(Plug::from_mask_unchecked(b | w));
            }
        }
    }
    plugs.sort_unstable();
    Ok(plugs)
}

/// `sum_k C(b,k) C(w,k) = C(b+w, b)`.
fn plug_count(base: &Region) -> u128 {
    let (b, w) = (base.black_count() as u128, base.white_count() as u128);
    let (n, k) = (b + w, b.min(w));
    let mut c = 1u128;
    for i in 0..k {
        c = c * (n - i) / (i + 1);
        if c > u64::MAX as u128 {
            return c;
        }
    }
    c
}

/// Tilings of `base minus (p0 u p1)`; empty when the plugs overlap.
pub fn floor_tilings(base: &Region, p0: Plug, p1: Plug) -> Result<Vec<Tiling>> {
    p0.check(base)?;
    p1.check(base)?;
    if !p0.is_disjoint(p1) {
        return Ok(Vec::new());
    }
    let region = Arc::new(complement_region(base, p0.union(p1))?);
    Ok(enumerate_tilings(region, None).collect())
}

/// The four terms of a floor's twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FloorTwist {
    pub tk: u8,
    pub inv_sigma: u64,
    pub inv_bl: u64,
    pub inv_wh: u64,
}

impl FloorTwist {
    pub fn value(&self) -> u8 {
        ((self.tk as u64 + self.inv_sigma + self.inv_bl + self.inv_wh) % 2) as u8
    }
}

/// Number of label pairs `i0 < i1` with `h(i0) > h(i1)`, where
/// `h(i) = [i in p1] - [i in p0]`, over cells of one colour.
pub fn plug_inversions(base: &Region, p0: Plug, p1: Plug, color: Color) -> u64 {
    let cells = match color {
        Color::Black => base.blacks(),
        Color::White => base.whites(),
    };
    let mut seen = [0u64; 3];
    let mut inv = 0u64;
    for &c in cells {
        let h = p1.contains(c as usize) as i32 - p0.contains(c as usize) as i32;
        let slot = (h + 1) as usize;
        inv += seen[slot + 1..].iter().sum::<u64>();
        seen[slot] += 1;
    }
    inv
}

/// Twist of a floor given as base-index pairs.
pub fn floor_twist_of_pairs(base: &Region, p0: Plug, p1: Plug, pairs: &[(u32, u32)]) -> FloorTwist {
    let mut tk = 0u8;
    let mut by_black: Vec<(u32, u32)> = pairs
        .iter()
        .map(|&(a, b)| {
            let (bl, wh) = if base.color(a as usize) == Color::Black { (a, b) } else { (b, a) };
            if edge_sign(base, bl as usize, wh as usize) < 0 {
                tk ^= 1;
            }
            (base.label(bl as usize) as u32, base.label(wh as usize) as u32)
        })
        .collect();
    by_black.sort_unstable();
    let sigma: Vec<u32> = by_black.iter().map(|&(_, w)| w).collect();
    FloorTwist {
        tk,
        inv_sigma: count_inversions(&sigma),
        inv_bl: plug_inversions(base, p0, p1, Color::Black),
        inv_wh: plug_inversions(base, p0, p1, Color::White),
    }
}

/// `tw_{p0,p1}(f)` with its terms. `f` must tile `base minus (p0 u p1)`.
pub fn floor_twist(base: &Region, p0: Plug, p1: Plug, f: &Tiling) -> Result<FloorTwist> {
    p0.check(base)?;
    p1.check(base)?;
    if !p0.is_disjoint(p1) {
        return Err(Error::InvalidPlug("floor plugs overlap".into()));
    }
    let expected = complement_region(base, p0.union(p1))?;
    if **f.region() != expected {
        return Err(Error::RegionMismatch("floor tiling is not on the plug complement".into()));
    }
    let pairs: Vec<(u32, u32)> = f
        .dominoes()
        .iter()
        .map(|d| {
            (
                base.index_of(&d.black).unwrap() as u32,
                base.index_of(&d.white).unwrap() as u32,
            )
        })
        .collect();
    Ok(floor_twist_of_pairs(base, p0, p1, &pairs))
}

/// One nonzero transfer entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransferEntry {
    pub col: u32,
    pub count: u64,
    pub signed: i64,
    /// The entry is the single floor with no horizontal domino.
    pub vertical: bool,
}

/// Which matrix a power is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Count,
    Signed,
    /// `A` without vertical floors.
    Sharp,
}

impl TransferEntry {
    fn weight(&self, w: Weight) -> i64 {
        match w {
            Weight::Count => self.count as i64,
            Weight::Signed => self.signed,
            Weight::Sharp => self.count as i64 - self.vertical as i64,
        }
    }
}

/// Sparse `A` and `Ã` over the plugs of a base region.
#[derive(Clone, Debug)]
pub struct TransferMatrices {
    base: Arc<Region>,
    plugs: Vec<Plug>,
    index: FxHashMap<u64, u32>,
    rows: Vec<Vec<TransferEntry>>,
    /// Transpose of `rows`: `cols[q]` holds entries `(p, A[p][q])`.
    cols: Vec<Vec<TransferEntry>>,
}

pub fn build_transfer(base: &Region) -> Result<TransferMatrices> {
    let base = Arc::new(base.clone());
    let plugs = enumerate_plugs(&base)?;
    let index: FxHashMap<u64, u32> = plugs
        .iter()
        .enumerate()
        .map(|(i, p)| (p.mask(), i as u32))
        .collect();
    let full = full_mask(base.len());
    let up: Vec<Vec<u32>> = (0..base.len())
        .map(|i| {
            base.neighbor_indices(i)
                .into_iter()
                .filter(|&j| j > i)
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    let rows: Vec<Vec<TransferEntry>> = plugs
        .par_iter()
        .map(|&p| {
            let mut acc: FxHashMap<u64, (u64, i64)> = FxHashMap::default();
            let mut pairs = Vec::new();
            floors_from(&base, &up, p.mask(), 0, p.mask(), 0, &mut pairs, &mut |q, pairs| {
                let t = floor_twist_of_pairs(&base, p, Plug::from_mask_unchecked(q), pairs);
                let e = acc.entry(q).or_insert((0, 0));
                e.0 += 1;
                e.1 += if (t.tk as u64 + t.inv_sigma) % 2 == 0 { 1 } else { -1 };
            });
            let mut row: Vec<TransferEntry> = acc
                .into_iter()
                .filter_map(|(q, (count, signed))| {
                    let col = *index.get(&q)?;
                    let qp = Plug::from_mask_unchecked(q);
                    let plug_par = (plug_inversions(&base, p, qp, Color::Black)
                        + plug_inversions(&base, p, qp, Color::White))
                        % 2;
                    Some(TransferEntry {
                        col,
                        count,
                        signed: if plug_par == 0 { signed } else { -signed },
                        vertical: p.mask() | q == full,
                    })
                })
                .collect();
            row.sort_unstable_by_key(|e| e.col);
            row
        })
        .collect();
    Ok(TransferMatrices::from_parts(base, plugs, rows))
}

/// Depth-first search over floors above plug `p`: each free cell either
/// starts a vertical domino (joins `q`) or pairs with a free neighbour of
/// larger index.
#[allow(clippy::too_many_arguments)]
fn floors_from(
    base: &Region,
    up: &[Vec<u32>],
    covered: u64,
    from: usize,
    p: u64,
    q: u64,
    pairs: &mut Vec<(u32, u32)>,
    emit: &mut dyn FnMut(u64, &[(u32, u32)]),
) {
    let n = base.len();
    let mut c = from;
    while c < n && covered >> c & 1 == 1 {
        c += 1;
    }
    if c == n {
        emit(q, pairs);
        return;
    }
    let bit = 1u64 << c;
    floors_from(base, up, covered | bit, c + 1, p, q | bit, pairs, emit);
    for &w in &up[c] {
        let wb = 1u64 << w;
        if covered & wb == 0 {
            pairs.push((c as u32, w));
            floors_from(base, up, covered | bit | wb, c + 1, p, q, pairs, emit);
            pairs.pop();
        }
    }
}

impl TransferMatrices {
    pub fn base(&self) -> &Arc<Region> {
        &self.base
    }

    pub fn plugs(&self) -> &[Plug] {
        &self.plugs
    }

    pub fn len(&self) -> usize {
        self.plugs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plugs.is_empty()
    }

    pub fn plug_index(&self, p: Plug) -> Option<usize> {
        self.index.get(&p.mask()).map(|&i| i as usize)
    }

    pub fn row(&self, p: usize) -> &[TransferEntry] {
        &self.rows[p]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn entry(&self, p: usize, q: usize) -> Option<&TransferEntry> {
        let row = &self.rows[p];
        row.binary_search_by_key(&(q as u32), |e| e.col).ok().map(|i| &row[i])
    }

    pub fn a(&self, p: usize, q: usize) -> u64 {
        self.entry(p, q).map_or(0, |e| e.count)
    }

    pub fn a_tilde(&self, p: usize, q: usize) -> i64 {
        self.entry(p, q).map_or(0, |e| e.signed)
    }

    pub fn a_sharp(&self, p: usize, q: usize) -> u64 {
        self.entry(p, q).map_or(0, |e| e.count - e.vertical as u64)
    }

    pub(crate) fn from_parts(base: Arc<Region>, plugs: Vec<Plug>, rows: Vec<Vec<TransferEntry>>) -> Self {
        let index = plugs
            .iter()
            .enumerate()
            .map(|(i, p)| (p.mask(), i as u32))
            .collect();
        let mut cols: Vec<Vec<TransferEntry>> = vec![Vec::new(); plugs.len()];
        for (r, row) in rows.iter().enumerate() {
            for e in row {
                cols[e.col as usize].push(TransferEntry { col: r as u32, ..*e });
            }
        }
        TransferMatrices {
            base,
            plugs,
            index,
            rows,
            cols,
        }
    }

    /// True iff `A = Aᵀ`, and separately `Ã = Ãᵀ`.
    pub fn symmetry(&self) -> (bool, bool) {
        let mut a = true;
        let mut t = true;
        for (p, row) in self.rows.iter().enumerate() {
            for e in row {
                let back = self.entry(e.col as usize, p);
                a &= back.map(|b| b.count) == Some(e.count);
                t &= back.map_or(0, |b| b.signed) == e.signed;
            }
        }
        (a, t)
    }

    /// Row `start` of `M^n`, where `M` is selected by `w`.
    pub fn power_row(&self, start: usize, n: usize, w: Weight) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.len()];
        v[start] = BigInt::from(1);
        for _ in 0..n {
            v = self.step(&v, w);
        }
        v
    }

    /// `v * M`.
    fn step(&self, v: &[BigInt], w: Weight) -> Vec<BigInt> {
        self.cols
            .par_iter()
            .map(|col| {
                let mut s = BigInt::zero();
                for e in col {
                    let x = &v[e.col as usize];
                    if !x.is_zero() {
                        let k = e.weight(w);
                        if k != 0 {
                            s += x * k;
                        }
                    }
                }
                s
            })
            .collect()
    }

    /// `(A^n)_{p0,pn}`: tilings of the cork with plugs `p0`, `pn`.
    pub fn cork_count(&self, n: usize, p0: Plug, pn: Plug) -> Result<BigUint> {
        let (i, j) = self.indices(p0, pn)?;
        Ok(to_unsigned(&self.power_row(i, n, Weight::Count)[j]))
    }

    /// `(Ã^n)_{p0,pn}`. Its sign follows floor-by-floor labeling and may
    /// differ from the cork region's own canonical labeling.
    pub fn cork_defect(&self, n: usize, p0: Plug, pn: Plug) -> Result<BigInt> {
        let (i, j) = self.indices(p0, pn)?;
        Ok(self.power_row(i, n, Weight::Signed)[j].clone())
    }

    fn indices(&self, p0: Plug, pn: Plug) -> Result<(usize, usize)> {
        let f = |p: Plug| {
            self.plug_index(p)
                .ok_or_else(|| Error::InvalidPlug(format!("{p} is not a plug of the base")))
        };
        Ok((f(p0)?, f(pn)?))
    }

    pub fn cylinder_count(&self, n: usize) -> BigUint {
        to_unsigned(&self.power_row(0, n, Weight::Count)[0])
    }

    pub fn cylinder_defect(&self, n: usize) -> BigInt {
        self.power_row(0, n, Weight::Signed)[0].clone()
    }

    /// Counts of twist-0 and twist-1 tilings of the cylinder of height `n`.
    pub fn twist_split(&self, n: usize) -> Result<(BigUint, BigUint)> {
        split(&BigInt::from(self.cylinder_count(n)), &self.cylinder_defect(n))
    }

    /// Cylinder counts for every height `0..=n`.
    pub fn count_sequence(&self, n: usize, w: Weight) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.len()];
        v[0] = BigInt::from(1);
        let mut out = vec![v[0].clone()];
        for _ in 0..n {
            v = self.step(&v, w);
            out.push(v[0].clone());
        }
        out
    }

    /// Tilings of the cylinder of height `n` with fewer than `m` vertical
    /// floors.
    pub fn count_few_vertical(&self, n: usize, m: usize) -> BigUint {
        if m == 0 {
            return BigUint::zero();
        }
        // layers[k][p]: partial tilings ending at plug p with k vertical floors.
        let mut layers = vec![vec![BigInt::zero(); self.len()]; m];
        layers[0][0] = BigInt::from(1);
        for _ in 0..n {
            let mut next = vec![vec![BigInt::zero(); self.len()]; m];
            for k in 0..m {
                let sharp = self.step(&layers[k], Weight::Sharp);
                for (a, b) in next[k].iter_mut().zip(sharp) {
                    *a += b;
                }
                if k + 1 < m {
                    for (p, x) in layers[k].iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        if let Some(e) = self.rows[p].iter().find(|e| e.vertical) {
                            next[k + 1][e.col as usize] += x;
                        }
                    }
                }
            }
            layers = next;
        }
        to_unsigned(&layers.iter().map(|l| &l[0]).sum::<BigInt>())
    }
}

fn to_unsigned(x: &BigInt) -> BigUint {
    x.to_biguint().expect("counts are nonnegative")
}

fn split(count: &BigInt, defect: &BigInt) -> Result<(BigUint, BigUint)> {
    let plus = count + defect;
    let minus = count - defect;
    if plus.is_odd() || minus.is_odd() || plus.is_negative() || minus.is_negative() {
        return Err(Error::Internal(format!(
            "count {count} and defect {defect} do not split into twist classes"
        )));
    }
    Ok((to_unsigned(&(plus / 2)), to_unsigned(&(minus / 2))))
}

pub fn cylinder_count(base: &Region, n: usize) -> Result<BigUint> {
    Ok(build_transfer(base)?.cylinder_count(n))
}

pub fn cork_count(base: &Region, n: usize, p0: Plug, pn: Plug) -> Result<BigUint> {
    build_transfer(base)?.cork_count(n, p0, pn)
}

pub fn cylinder_defect(base: &Region, n: usize) -> Result<BigInt> {
    Ok(build_transfer(base)?.cylinder_defect(n))
}

pub fn twist_split(base: &Region, n: usize) -> Result<(BigUint, BigUint)> {
    build_transfer(base)?.twist_split(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kasteleyn::{defect_by_enumeration, twist};
    use crate::region::{make_box, make_cork, make_cylinder};
    use crate::tiling::{count_tilings, decompose_floors};

    fn b222() -> Region {
        make_box(&[2, 2, 2]).unwrap()
    }

    #[test]
    fn plug_counts() {
        assert_eq!(enumerate_plugs(&b222()).unwrap().len(), 70);
        assert_eq!(enumerate_plugs(&make_box(&[2, 2, 3]).unwrap()).unwrap().len(), 924);
        let two = enumerate_plugs(&make_box(&[2]).unwrap()).unwrap();
        assert_eq!(two, vec![Plug::EMPTY, Plug::from_mask_unchecked(3)]);
    }

    #[test]
    fn plugs_match_brute_force() {
        let base = b222();
        let brute: Vec<Plug> = (0u64..256)
            .map(Plug::from_mask_unchecked)
            .filter(|p| p.check(&base).is_ok())
            .collect();
        assert_eq!(enumerate_plugs(&base).unwrap(), brute);
    }

    #[test]
    fn floor_tiling_examples() {
        let base = b222();
        let full = Plug::full(&base);
        assert_eq!(floor_tilings(&base, Plug::EMPTY, Plug::EMPTY).unwrap().len(), 9);
        assert_eq!(floor_tilings(&base, Plug::EMPTY, full).unwrap().len(), 1);
        let p = enumerate_plugs(&base).unwrap()[1];
        assert!(floor_tilings(&base, p, p).unwrap().is_empty());
        let t = &floor_tilings(&base, Plug::EMPTY, full).unwrap()[0];
        let tw = floor_twist(&base, Plug::EMPTY, full, t).unwrap();
        assert_eq!((tw.tk, tw.inv_sigma), (0, 0));
    }

    #[test]
    fn inversion_identity_by_hand() {
        // One black cell in each plug, out of two: h = (-1, 1) or (1, -1).
        let base = make_box(&[2, 2]).unwrap();
        let plugs = enumerate_plugs(&base).unwrap();
        for &p in &plugs {
            for &q in &plugs {
                if !p.is_disjoint(q) {
                    continue;
                }
                let (b0, b1) = (p.black_count(&base) as u64, q.black_count(&base) as u64);
                let b = base.black_count() as u64;
                let lhs = plug_inversions(&base, p, q, Color::Black) + plug_inversions(&base, q, p, Color::Black);
                assert_eq!(lhs, b0 * b1 + (b0 + b1) * (b - b0 - b1));
            }
        }
    }

    #[test]
    fn matrix_entries_match_floor_enumeration() {
        let base = b222();
        let m = build_transfer(&base).unwrap();
        assert_eq!(m.a(0, 0), 9);
        for (i, &p) in m.plugs().iter().enumerate() {
            for (j, &q) in m.plugs().iter().enumerate() {
                let fl = floor_tilings(&base, p, q).unwrap();
                assert_eq!(m.a(i, j), fl.len() as u64);
                let s: i64 = fl
                    .iter()
                    .map(|f| if floor_twist(&base, p, q, f).unwrap().value() == 0 { 1 } else { -1 })
                    .sum();
                assert_eq!(m.a_tilde(i, j), s);
                assert!(m.a_tilde(i, j).unsigned_abs() <= m.a(i, j));
            }
        }
        assert_eq!(m.symmetry(), (true, true));
    }

    #[test]
    fn floor_twists_sum_to_global_twist() {
        let base = b222();
        for n in 1..=3 {
            let r = Arc::new(make_cylinder(&base, n).unwrap());
            for t in enumerate_tilings(r, None) {
                let dec = decompose_floors(&t).unwrap();
                let s: u32 = dec
                    .floors
                    .iter()
                    .map(|f| floor_twist_of_pairs(&base, f.lower, f.upper, &f.dominoes).value() as u32)
                    .sum();
                assert_eq!((s % 2) as u8, twist(&t));
            }
        }
    }

    #[test]
    fn counts_and_defects() {
        let base = b222();
        let m = build_transfer(&base).unwrap();
        assert_eq!(m.cylinder_count(2), BigUint::from(272u32));
        assert_eq!(m.cylinder_count(3), BigUint::from(6345u32));
        assert_eq!(m.cylinder_defect(2), BigInt::from(256));
        assert_eq!(m.cylinder_defect(3), BigInt::from(5625));
        assert_eq!(m.cylinder_count(0), BigUint::from(1u32));
        let one = make_cylinder(&base, 1).unwrap();
        assert_eq!(m.cylinder_defect(1), defect_by_enumeration(&one, None).unwrap());
        assert_eq!(m.cork_count(3, Plug::EMPTY, Plug::EMPTY).unwrap(), m.cylinder_count(3));
        let (a, b) = m.twist_split(3).unwrap();
        assert_eq!((a, b), (BigUint::from(5985u32), BigUint::from(360u32)));
    }

    #[test]
    fn cork_counts_match_enumeration() {
        let base = b222();
        let m = build_transfer(&base).unwrap();
        let plugs = m.plugs().to_vec();
        for (i, &p) in plugs.iter().enumerate().step_by(7) {
            for &q in plugs.iter().skip(i % 5).step_by(11) {
                for n in 2..=3 {
                    let r = make_cork(&base, n, p, q).unwrap();
                    assert_eq!(m.cork_count(n, p, q).unwrap(), count_tilings(&r), "{p} {q} {n}");
                    // Only |defect| is independent of the cell labeling.
                    assert_eq!(
                        m.cork_defect(n, p, q).unwrap().abs(),
                        defect_by_enumeration(&r, None).unwrap().abs(),
                        "{p} {q} {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn few_vertical_floors_match_enumeration() {
        let base = b222();
        let m = build_transfer(&base).unwrap();
        for n in 1..=4 {
            let r = Arc::new(make_cylinder(&base, n).unwrap());
            let mut hist = vec![0u64; n + 1];
            for t in enumerate_tilings(r, None) {
                hist[decompose_floors(&t).unwrap().vertical_floor_count()] += 1;
            }
            for mv in 0..=n + 1 {
                let expected: u64 = hist.iter().take(mv).sum();
                assert_eq!(m.count_few_vertical(n, mv), BigUint::from(expected), "n={n} m={mv}");
            }
        }
    }

    #[test]
    fn entry_domination() {
        let m = build_transfer(&b222()).unwrap();
        for start in 0..m.len() {
            let a = m.power_row(start, 3, Weight::Count);
            let t = m.power_row(start, 3, Weight::Signed);
            for (x, y) in a.iter().zip(&t) {
                assert!(y.abs() <= *x);
            }
        }
    }

    #[test]
    fn plug_limit() {
        let big = make_box(&[4, 4, 3]).unwrap();
        assert!(matches!(enumerate_plugs(&big), Err(Error::SizeLimit { .. })));
        let huge = make_box(&[5, 5, 3]).unwrap();
        assert!(matches!(enumerate_plugs(&huge), Err(Error::SizeLimit { .. })));
    }
}
