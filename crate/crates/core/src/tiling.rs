//! Tilings as perfect matchings, exact enumeration, concatenation, vertical
//! tilings, floor decomposition and the text/JSON formats.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::plug::Plug;
use crate::region::{cylinder_from_arc, make_cork, Cell, Color, Region, RegionKind, NONE};

/// Two adjacent cells, stored black first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Domino {
    pub black: Cell,
    pub white: Cell,
}

impl Domino {
    pub fn new(a: Cell, b: Cell) -> Result<Domino> {
        if a.adjacency_axis(&b).is_none() {
            return Err(Error::NotAnEdge(a.to_string(), b.to_string()));
        }
        Ok(match a.color() {
            Color::Black => Domino { black: a, white: b },
            Color::White => Domino { black: b, white: a },
        })
    }

    pub fn axis(&self) -> usize {
        self.black.adjacency_axis(&self.white).expect("domino cells are adjacent")
    }
}

impl fmt::Display for Domino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.black, self.white)
    }
}

/// A domino tiling of a region: an involution on cell indices pairing each
/// cell with an adjacent one.
#[derive(Clone)]
pub struct Tiling {
    region: Arc<Region>,
    partner: Vec<u32>,
}

impl PartialEq for Tiling {
    fn eq(&self, other: &Self) -> bool {
        self.partner == other.partner
            && (Arc::ptr_eq(&self.region, &other.region) || self.region == other.region)
    }
}

impl Eq for Tiling {}

impl Hash for Tiling {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.partner.hash(state);
    }
}

impl fmt::Debug for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tiling[{}](", self.region.spec())?;
        for (i, d) in self.dominoes().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl Tiling {
    pub fn from_partner(region: Arc<Region>, partner: Vec<u32>) -> Result<Tiling> {
        validate_partner(&region, &partner)?;
        Ok(Tiling { region, partner })
    }

    pub(crate) fn from_partner_unchecked(region: Arc<Region>, partner: Vec<u32>) -> Tiling {
        debug_assert!(validate_partner(&region, &partner).is_ok());
        Tiling { region, partner }
    }

    pub fn from_pairs(region: Arc<Region>, pairs: &[(Cell, Cell)]) -> Result<Tiling> {
        let mut partner = vec![NONE; region.len()];
        for (a, b) in pairs {
            let i = region
                .index_of(a)
                .ok_or_else(|| Error::CellNotInRegion(a.to_string()))?;
            let j = region
                .index_of(b)
                .ok_or_else(|| Error::CellNotInRegion(b.to_string()))?;
            if partner[i] != NONE || partner[j] != NONE {
                return Err(Error::InvalidTiling(format!("cell covered twice by {a}-{b}")));
            }
            partner[i] = j as u32;
            partner[j] = i as u32;
        }
        Tiling::from_partner(region, partner)
    }

    pub fn empty(region: Arc<Region>) -> Result<Tiling> {
        Tiling::from_partner(region, Vec::new())
    }

    pub fn region(&self) -> &Arc<Region> {
        &self.region
    }

    pub fn partner(&self) -> &[u32] {
        &self.partner
    }

    pub fn partner_of(&self, index: usize) -> usize {
        self.partner[index] as usize
    }

    /// Dominoes sorted by the label of their black cell.
    pub fn dominoes(&self) -> Vec<Domino> {
        self.region
            .blacks()
            .iter()
            .map(|&b| Domino {
                black: self.region.cell(b as usize),
                white: self.region.cell(self.partner[b as usize] as usize),
            })
            .collect()
    }

    /// The matching as a map from black labels to white labels.
    pub fn sigma(&self) -> Vec<u32> {
        self.region
            .blacks()
            .iter()
            .map(|&b| self.region.label(self.partner[b as usize] as usize) as u32)
            .collect()
    }

    pub fn key(&self) -> TilingKey {
        TilingKey::encode(&self.region, &self.partner)
    }

    pub fn from_key(region: Arc<Region>, key: &TilingKey) -> Tiling {
        let mut partner = vec![NONE; region.len()];
        key.decode_into(&region, &mut partner);
        Tiling::from_partner_unchecked(region, partner)
    }

    pub fn validate(&self) -> Result<()> {
        validate_partner(&self.region, &self.partner)
    }

    pub fn to_text(&self) -> String {
        serialize(self)
    }
}

fn validate_partner(region: &Region, partner: &[u32]) -> Result<()> {
    if partner.len() != region.len() {
        return Err(Error::InvalidTiling(format!(
            "partner table has {} entries for {} cells",
            partner.len(),
            region.len()
        )));
    }
    for (i, &p) in partner.iter().enumerate() {
        if p == NONE {
            return Err(Error::InvalidTiling(format!(
                "cell {} is not covered",
                region.cell(i)
            )));
        }
        let p = p as usize;
        if p >= region.len() || partner[p] as usize != i || p == i {
            return Err(Error::InvalidTiling(format!(
                "cell {} has an inconsistent partner",
                region.cell(i)
            )));
        }
        if region.cell(i).adjacency_axis(&region.cell(p)).is_none() {
            return Err(Error::InvalidTiling(format!(
                "cells {} and {} are not adjacent",
                region.cell(i),
                region.cell(p)
            )));
        }
    }
    Ok(())
}

/// Compact, hashable encoding of a tiling: the partner direction of every
/// black cell, packed in label order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TilingKey(SmallVec<[u64; 2]>);

pub(crate) fn dir_bits(dim: usize) -> usize {
    let dirs = 2 * dim;
    (usize::BITS - (dirs - 1).leading_zeros()) as usize
}

impl TilingKey {
    pub(crate) fn encode(region: &Region, partner: &[u32]) -> TilingKey {
        let bits = dir_bits(region.dim());
        let total = bits * region.black_count();
        let mut words: SmallVec<[u64; 2]> = SmallVec::from_elem(0, total.div_ceil(64).max(1));
        let per_word = 64 / bits;
        for (label, &b) in region.blacks().iter().enumerate() {
            let w = partner[b as usize];
            let dir = (0..2 * region.dim())
                .find(|&d| region.step_raw(b as usize, d) == w)
                .expect("partner is a neighbour");
            words[label / per_word] |= (dir as u64) << ((label % per_word) * bits);
        }
        TilingKey(words)
    }

    pub(crate) fn decode_into(&self, region: &Region, partner: &mut [u32]) {
        let bits = dir_bits(region.dim());
        let per_word = 64 / bits;
        let mask = (1u64 << bits) - 1;
        for (label, &b) in region.blacks().iter().enumerate() {
            let dir = (self.0[label / per_word] >> ((label % per_word) * bits)) & mask;
            let w = region.step_raw(b as usize, dir as usize);
            partner[b as usize] = w;
            partner[w as usize] = b;
        }
    }
}

/// Depth-first search over partial matchings that always extends the
/// uncovered cell of least canonical label, trying partners in label order.
pub(crate) struct Backtracker<'r> {
    region: &'r Region,
    up: Vec<SmallVec<[u32; 8]>>,
    partner: Vec<u32>,
    stack: Vec<(u32, u8)>,
    start: usize,
    started: bool,
    done: bool,
}

impl<'r> Backtracker<'r> {
    pub(crate) fn new(region: &'r Region) -> Self {
        Self::with_prefix(region, vec![NONE; region.len()])
    }

    /// Continues from a partial matching in which every cell below the first
    /// uncovered one is covered.
    pub(crate) fn with_prefix(region: &'r Region, partner: Vec<u32>) -> Self {
        let up = upper_neighbors(region);
        let start = partner.iter().position(|&p| p == NONE).unwrap_or(region.len());
        Backtracker {
            region,
            up,
            partner,
            stack: Vec::new(),
            start,
            started: false,
            done: !region.is_balanced(),
        }
    }

    pub(crate) fn partner(&self) -> &[u32] {
        &self.partner
    }

    /// Moves to the next complete tiling; false once the search is exhausted.
    pub(crate) fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let n = self.region.len();
        if !self.started {
            self.started = true;
            if self.start == n {
                self.done = true;
                return true;
            }
            self.stack.push((self.start as u32, 0));
        }
        loop {
            let Some(top) = self.stack.last_mut() else {
                self.done = true;
                return false;
            };
            let c = top.0 as usize;
            let current = self.partner[c];
            if current != NONE {
                self.partner[current as usize] = NONE;
                self.partner[c] = NONE;
            }
            let ups = &self.up[c];
            let mut j = top.1 as usize;
            while j < ups.len() && self.partner[ups[j] as usize] != NONE {
                j += 1;
            }
            if j == ups.len() {
                self.stack.pop();
                continue;
            }
            let w = ups[j];
            top.1 = (j + 1) as u8;
            self.partner[c] = w;
            self.partner[w as usize] = c as u32;
            let mut next = c + 1;
            while next < n && self.partner[next] != NONE {
                next += 1;
            }
            if next == n {
                return true;
            }
            self.stack.push((next as u32, 0));
        }
    }
}

pub(crate) fn upper_neighbors(region: &Region) -> Vec<SmallVec<[u32; 8]>> {
    (0..region.len())
        .map(|i| {
            let mut v: SmallVec<[u32; 8]> = (0..2 * region.dim())
                .map(|d| region.step_raw(i, d))
                .filter(|&j| j != NONE && j as usize > i)
                .collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Stream of all tilings of a region in canonical order.
pub struct TilingEnumerator {
    region: Arc<Region>,
    // Backtracker borrows the region; keep it alive through the Arc.
    inner: Backtracker<'static>,
    limit: Option<u64>,
    emitted: u64,
    truncated: bool,
}

impl TilingEnumerator {
    /// True if the stream stopped because the limit was reached while more
    /// tilings remained.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn region(&self) -> &Arc<Region> {
        &self.region
    }
}

impl Iterator for TilingEnumerator {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        if let Some(limit) = self.limit {
            if self.emitted >= limit {
                if !self.truncated && self.inner.advance() {
                    self.truncated = true;
                }
                return None;
            }
        }
        if self.inner.advance() {
            self.emitted += 1;
            Some(Tiling::from_partner_unchecked(
                self.region.clone(),
                self.inner.partner().to_vec(),
            ))
        } else {
            None
        }
    }
}

pub fn enumerate_tilings(region: Arc<Region>, limit: Option<u64>) -> TilingEnumerator {
    // SAFETY: the Arc is stored next to the borrower and never replaced, so
    // the referenced region outlives the backtracker.
    let r: &'static Region = unsafe { &*Arc::as_ptr(&region) };
    TilingEnumerator {
        region,
        inner: Backtracker::new(r),
        limit,
        emitted: 0,
        truncated: false,
    }
}

/// Number of tilings. The search tree is split into independent subtrees
/// counted in parallel; the total does not depend on the split.
pub fn count_tilings(region: &Region) -> BigUint {
    if !region.is_balanced() {
        return BigUint::from(0u32);
    }
    let prefixes = split_prefixes(region, 256);
    let total: u128 = prefixes
        .into_par_iter()
        .map(|p| {
            let mut bt = Backtracker::with_prefix(region, p);
            let mut n = 0u128;
            while bt.advance() {
                n += 1;
            }
            n
        })
        .sum();
    BigUint::from(total)
}

/// Some tiling of `region`, or `None` if it has none. Uses augmenting paths
/// on the black/white adjacency graph, so it is polynomial even when the
/// region is not tileable.
pub fn find_tiling(region: Arc<Region>) -> Option<Tiling> {
    if !region.is_balanced() {
        return None;
    }
    let n = region.len();
    let mut partner = vec![NONE; n];
    let adj: Vec<Vec<usize>> = (0..n).map(|i| region.neighbor_indices(i)).collect();
    let mut stamp = vec![0u32; n];
    for (round, &b) in region.blacks().iter().enumerate() {
        if !augment(b as usize, &adj, &mut partner, &mut stamp, round as u32 + 1) {
            return None;
        }
    }
    Some(Tiling::from_partner_unchecked(region, partner))
}

fn augment(b: usize, adj: &[Vec<usize>], partner: &mut [u32], stamp: &mut [u32], round: u32) -> bool {
    for &w in &adj[b] {
        if stamp[w] == round {
            continue;
        }
        stamp[w] = round;
        let prev = partner[w];
        if prev == NONE || augment(prev as usize, adj, partner, stamp, round) {
            partner[w] = b as u32;
            partner[b] = w as u32;
            return true;
        }
    }
    false
}

/// Expands the search breadth-first until at least `target` partial
/// matchings exist (or none can be expanded further).
fn split_prefixes(region: &Region, target: usize) -> Vec<Vec<u32>> {
    let up = upper_neighbors(region);
    let n = region.len();
    let mut frontier = vec![vec![NONE; n]];
    for _ in 0..n {
        if frontier.len() >= target {
            break;
        }
        let mut next = Vec::new();
        let mut expanded = false;
        for p in frontier {
            let Some(c) = p.iter().position(|&x| x == NONE) else {
                next.push(p);
                continue;
            };
            expanded = true;
            for &w in &up[c] {
                if p[w as usize] == NONE {
                    let mut q = p.clone();
                    q[c] = w;
                    q[w as usize] = c as u32;
                    next.push(q);
                }
            }
        }
        frontier = next;
        if !expanded {
            break;
        }
    }
    frontier
}

/// The tiling of `base x [0,m]` by vertical dominoes `s x [k,k+2]`, k even.
pub fn vertical_tiling(base: &Region, m: usize) -> Result<Tiling> {
    vertical_tiling_arc(Arc::new(base.clone()), m)
}

pub(crate) fn vertical_tiling_arc(base: Arc<Region>, m: usize) -> Result<Tiling> {
    if m % 2 != 0 {
        return Err(Error::InvalidTiling(format!(
            "vertical tiling needs an even height, got {m}"
        )));
    }
    let d = base.len();
    let region = Arc::new(cylinder_from_arc(base, m)?);
    let mut partner = vec![NONE; region.len()];
    for h in (0..m).step_by(2) {
        for s in 0..d {
            partner[h * d + s] = ((h + 1) * d + s) as u32;
            partner[(h + 1) * d + s] = (h * d + s) as u32;
        }
    }
    Ok(Tiling::from_partner_unchecked(region, partner))
}

fn plain_cylinder(t: &Tiling) -> Result<(Arc<Region>, usize)> {
    let view = t
        .region()
        .cylinder_view()
        .ok_or_else(|| Error::RegionMismatch("tiling is not on a cylinder".into()))?;
    if !view.bottom.is_empty() || !view.top.is_empty() {
        return Err(Error::RegionMismatch("concatenation needs plain cylinders".into()));
    }
    Ok((view.base, view.height))
}

/// `t0 * t1`: stacks `t1` on top of `t0`.
pub fn concat(t0: &Tiling, t1: &Tiling) -> Result<Tiling> {
    let (b0, n0) = plain_cylinder(t0)?;
    let (b1, n1) = plain_cylinder(t1)?;
    if b0 != b1 {
        return Err(Error::RegionMismatch(format!(
            "bases differ: {} vs {}",
            b0.spec(),
            b1.spec()
        )));
    }
    let d = b0.len();
    let region = Arc::new(cylinder_from_arc(b0, n0 + n1)?);
    let mut partner = Vec::with_capacity(region.len());
    partner.extend_from_slice(t0.partner());
    let off = (n0 * d) as u32;
    partner.extend(t1.partner().iter().map(|&p| p + off));
    Ok(Tiling::from_partner_unchecked(region, partner))
}

/// One floor `(lower, f, upper)`; `dominoes` are base-index pairs, black
/// cell first, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Floor {
    pub lower: Plug,
    pub upper: Plug,
    pub dominoes: Vec<(u32, u32)>,
}

impl Floor {
    pub fn is_vertical(&self) -> bool {
        self.dominoes.is_empty()
    }

    /// The floor's tiling as a tiling of `base minus (lower u upper)`.
    pub fn to_tiling(&self, base: &Region) -> Result<Tiling> {
        let region = Arc::new(complement_region(base, self.lower.union(self.upper))?);
        let pairs: Vec<(Cell, Cell)> = self
            .dominoes
            .iter()
            .map(|&(a, b)| (base.cell(a as usize), base.cell(b as usize)))
            .collect();
        Tiling::from_pairs(region, &pairs)
    }
}

pub(crate) fn complement_region(base: &Region, removed: Plug) -> Result<Region> {
    let cells = base
        .cells()
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(*i))
        .map(|(_, c)| *c)
        .collect();
    Region::from_cells(base.dim(), cells)
}

/// A cylinder tiling as the alternating sequence `p_0, f_1, p_1, ..., f_N, p_N`.
#[derive(Clone, Debug)]
pub struct FloorDecomposition {
    pub base: Arc<Region>,
    pub plugs: Vec<Plug>,
    pub floors: Vec<Floor>,
}

impl FloorDecomposition {
    pub fn height(&self) -> usize {
        self.floors.len()
    }

    pub fn vertical_floor_count(&self) -> usize {
        self.floors.iter().filter(|f| f.is_vertical()).count()
    }

    pub fn recompose(&self) -> Result<Tiling> {
        let n = self.height();
        let p0 = self.plugs[0];
        let pn = self.plugs[n];
        let region = if p0.is_empty() && pn.is_empty() {
            cylinder_from_arc(self.base.clone(), n)?
        } else {
            make_cork(&self.base, n, p0, pn)?
        };
        let mut pairs = Vec::new();
        for (k, floor) in self.floors.iter().enumerate() {
            for &(a, b) in &floor.dominoes {
                let h = k as i32;
                pairs.push((
                    self.base.cell(a as usize).lift(h),
                    self.base.cell(b as usize).lift(h),
                ));
            }
        }
        for k in 1..n {
            for s in self.plugs[k].indices() {
                let c = self.base.cell(s);
                pairs.push((c.lift(k as i32 - 1), c.lift(k as i32)));
            }
        }
        Tiling::from_pairs(Arc::new(region), &pairs)
    }
}

pub fn decompose_floors(t: &Tiling) -> Result<FloorDecomposition> {
    let region = t.region();
    let view = region
        .cylinder_view()
        .ok_or_else(|| Error::RegionMismatch("tiling is not on a cylinder or cork".into()))?;
    let base = view.base.clone();
    if base.len() > crate::region::MAX_BASE_CELLS {
        return Err(Error::SizeLimit {
            what: "base region",
            size: base.len(),
            limit: crate::region::MAX_BASE_CELLS,
        });
    }
    let n = view.height;
    let mut plugs = vec![Plug::EMPTY; n + 1];
    plugs[0] = view.bottom;
    plugs[n] = view.top;
    let mut masks = vec![0u64; n + 1];
    let mut floor_pairs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for i in 0..region.len() {
        let j = t.partner_of(i);
        if j < i {
            continue;
        }
        let (a, b) = (region.cell(i), region.cell(j));
        let (sa, sb) = (base.index_of(&a.base()).unwrap(), base.index_of(&b.base()).unwrap());
        if sa == sb {
            let h = a.last().max(b.last()) as usize;
            masks[h] |= 1u64 << sa;
        } else {
            let floor = a.last() as usize;
            let (bl, wh) = if base.color(sa) == Color::Black { (sa, sb) } else { (sb, sa) };
            floor_pairs[floor].push((bl as u32, wh as u32));
        }
    }
    for k in 1..n {
        plugs[k] = Plug::from_mask_unchecked(masks[k]);
    }
    let floors = floor_pairs
        .into_iter()
        .enumerate()
        .map(|(k, mut d)| {
            d.sort_unstable();
            Floor {
                lower: plugs[k],
                upper: plugs[k + 1],
                dominoes: d,
            }
        })
        .collect();
    Ok(FloorDecomposition { base, plugs, floors })
}

/// Canonical text form: a header line, then one domino per line sorted by
/// black label.
pub fn serialize(t: &Tiling) -> String {
    let mut s = format!(
        "tiling v1 dim={} region={}\n",
        t.region().dim(),
        t.region().spec()
    );
    for d in t.dominoes() {
        s.push_str(&format!("{}-{}\n", d.black, d.white));
    }
    s
}

pub fn parse(text: &str) -> Result<Tiling> {
    let mut lines = text.lines().enumerate();
    let perr = |line: usize, column: usize, message: String| Error::Parse {
        line: line + 1,
        column: column + 1,
        message,
    };
    let (_, header) = lines
        .next()
        .ok_or_else(|| perr(0, 0, "empty input".into()))?;
    let rest = header
        .strip_prefix("tiling v1 dim=")
        .ok_or_else(|| perr(0, 0, "expected `tiling v1 dim=`".into()))?;
    let (dim, spec) = rest
        .split_once(" region=")
        .ok_or_else(|| perr(0, 14, "expected ` region=`".into()))?;
    let dim: usize = dim
        .parse()
        .map_err(|_| perr(0, 14, format!("bad dimension `{dim}`")))?;
    let region = Region::parse_spec(spec).map_err(|e| perr(0, header.len() - spec.len(), e.to_string()))?;
    if region.dim() != dim {
        return Err(perr(0, 14, "dimension does not match region".into()));
    }
    let region = Arc::new(region);
    let mut pairs = Vec::new();
    for (ln, line) in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let (a, col_b, b) = split_domino(line).ok_or_else(|| perr(ln, 0, "expected `(..)-(..)`".into()))?;
        let ca = parse_cell(a, dim).map_err(|m| perr(ln, 0, m))?;
        let cb = parse_cell(b, dim).map_err(|m| perr(ln, col_b, m))?;
        if !region.contains(&ca) {
            return Err(perr(ln, 0, format!("cell {ca} is not in the region")));
        }
        if !region.contains(&cb) {
            return Err(perr(ln, col_b, format!("cell {cb} is not in the region")));
        }
        if ca.adjacency_axis(&cb).is_none() {
            return Err(perr(ln, 0, format!("cells {ca} and {cb} are not adjacent")));
        }
        pairs.push((ca, cb));
    }
    Tiling::from_pairs(region, &pairs)
}

fn split_domino(line: &str) -> Option<(&str, usize, &str)> {
    let idx = line.find(")-(")?;
    Some((&line[..=idx], idx + 2, &line[idx + 2..]))
}

fn parse_cell(s: &str, dim: usize) -> std::result::Result<Cell, String> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| format!("expected parenthesised cell, got `{s}`"))?;
    let coords: Vec<i32> = inner
        .split(',')
        .map(|x| x.trim().parse::<i32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| format!("bad coordinates `{inner}`"))?;
    if coords.len() != dim {
        return Err(format!("expected {dim} coordinates, got {}", coords.len()));
    }
    Cell::try_new(&coords).map_err(|e| e.to_string())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TilingJson {
    pub version: u32,
    pub region: String,
    pub dominoes: Vec<[Vec<i32>; 2]>,
}

impl TilingJson {
    pub fn from_tiling(t: &Tiling) -> Self {
        TilingJson {
            version: 1,
            region: t.region().spec(),
            dominoes: t
                .dominoes()
                .iter()
                .map(|d| [d.black.coords().to_vec(), d.white.coords().to_vec()])
                .collect(),
        }
    }

    pub fn to_tiling(&self) -> Result<Tiling> {
        if self.version != 1 {
            return Err(Error::InvalidTiling(format!("unsupported version {}", self.version)));
        }
        let region = Arc::new(Region::parse_spec(&self.region)?);
        let pairs = self
            .dominoes
            .iter()
            .map(|[a, b]| Ok((Cell::try_new(a)?, Cell::try_new(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Tiling::from_pairs(region, &pairs)
    }
}

/// Region kind check used by callers that need a cylinder over a box.
pub fn is_cylinder_like(region: &Region) -> bool {
    matches!(
        region.kind(),
        RegionKind::Cylinder { .. } | RegionKind::Cork { .. } | RegionKind::Box(_)
    ) && region.cylinder_view().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{make_box, make_cylinder};

    fn arc(r: Region) -> Arc<Region> {
        Arc::new(r)
    }

    #[test]
    fn find_tiling_by_matching() {
        let t = find_tiling(arc(make_box(&[2, 2, 3]).unwrap())).unwrap();
        t.validate().unwrap();
        let cells = [[0], [1], [2], [5]].iter().map(|c| Cell::new(c)).collect();
        assert!(find_tiling(arc(Region::from_cells(1, cells).unwrap())).is_none());
        assert!(find_tiling(arc(make_box(&[3, 3]).unwrap())).is_none());
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_tilings(arc(make_box(&[2, 2]).unwrap()), None).count(), 2);
        assert_eq!(enumerate_tilings(arc(make_box(&[2, 2, 2]).unwrap()), None).count(), 9);
        assert_eq!(enumerate_tilings(arc(make_box(&[2]).unwrap()), None).count(), 1);
        assert_eq!(count_tilings(&make_box(&[3, 3]).unwrap()), BigUint::from(0u32));
        assert_eq!(count_tilings(&make_box(&[1, 2]).unwrap()), BigUint::from(1u32));
    }

    #[test]
    fn empty_region_has_one_tiling() {
        let r = arc(Region::from_cells(2, vec![]).unwrap());
        let all: Vec<_> = enumerate_tilings(r.clone(), None).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(serialize(&all[0]), "tiling v1 dim=2 region=cells:d=2:\n");
        assert!(TilingJson::from_tiling(&all[0]).dominoes.is_empty());
    }

    #[test]
    fn limit_sets_truncation_flag() {
        let mut e = enumerate_tilings(arc(make_box(&[2, 2, 2]).unwrap()), Some(5));
        assert_eq!(e.by_ref().count(), 5);
        assert!(e.truncated());
        let mut e = enumerate_tilings(arc(make_box(&[2, 2, 2]).unwrap()), Some(9));
        assert_eq!(e.by_ref().count(), 9);
        assert!(!e.truncated());
    }

    #[test]
    fn enumeration_is_deterministic_and_distinct() {
        let r = arc(make_box(&[2, 2, 3]).unwrap());
        let a: Vec<_> = enumerate_tilings(r.clone(), None).map(|t| t.key()).collect();
        let b: Vec<_> = enumerate_tilings(r, None).map(|t| t.key()).collect();
        assert_eq!(a, b);
        let set: std::collections::HashSet<_> = a.iter().collect();
        assert_eq!(set.len(), a.len());
    }

    #[test]
    fn key_round_trip() {
        let r = arc(make_box(&[2, 2, 2, 2]).unwrap());
        for t in enumerate_tilings(r.clone(), None) {
            assert_eq!(Tiling::from_key(r.clone(), &t.key()), t);
        }
    }

    #[test]
    fn vertical_tilings() {
        let base = make_box(&[2, 2, 2]).unwrap();
        let v = vertical_tiling(&base, 2).unwrap();
        assert_eq!(v.dominoes().len(), 8);
        assert!(v.dominoes().iter().all(|d| d.axis() == 3));
        let dec = decompose_floors(&v).unwrap();
        assert_eq!(dec.plugs[1], Plug::full(&base));
        assert!(dec.floors.iter().all(|f| f.dominoes.is_empty()));
        assert!(vertical_tiling(&base, 3).is_err());
    }

    #[test]
    fn concat_with_empty_is_identity() {
        let base = make_box(&[2, 2, 2]).unwrap();
        let r = arc(make_cylinder(&base, 2).unwrap());
        let e = Tiling::empty(arc(make_cylinder(&base, 0).unwrap())).unwrap();
        for t in enumerate_tilings(r, Some(20)) {
            assert_eq!(concat(&t, &e).unwrap(), t);
            assert_eq!(concat(&e, &t).unwrap(), t);
        }
        let other = vertical_tiling(&make_box(&[2, 2, 3]).unwrap(), 2).unwrap();
        assert!(concat(&other, &e).is_err());
    }

    #[test]
    fn all_horizontal_tiling_has_empty_plugs() {
        let base = make_box(&[2, 2, 2]).unwrap();
        let r = arc(make_cylinder(&base, 3).unwrap());
        let t = enumerate_tilings(r, None)
            .find(|t| t.dominoes().iter().all(|d| d.axis() != 3))
            .unwrap();
        let dec = decompose_floors(&t).unwrap();
        assert!(dec.plugs.iter().all(|p| p.is_empty()));
    }

    #[test]
    fn decomposition_round_trip() {
        let r = arc(make_box(&[2, 2, 2, 2]).unwrap());
        for t in enumerate_tilings(r, None) {
            let dec = decompose_floors(&t).unwrap();
            assert_eq!(dec.recompose().unwrap(), t);
        }
    }

    #[test]
    fn text_round_trip_and_errors() {
        let r = arc(make_box(&[2, 2, 2, 2]).unwrap());
        for t in enumerate_tilings(r, None) {
            let text = serialize(&t);
            assert_eq!(parse(&text).unwrap(), t);
            let json = serde_json::to_string(&TilingJson::from_tiling(&t)).unwrap();
            let back: TilingJson = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_tiling().unwrap(), t);
        }
        let bad = "tiling v1 dim=2 region=box:2,2\n(0,0)-(1,0)\n(0,1)-(1,5)\n";
        match parse(bad) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(column, 7);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("tiling v2 dim=2 region=box:2,2\n").is_err());
        assert!(parse("tiling v1 dim=2 region=box:2,2\n(0,0)-(1,0)\n").is_err());
    }
}
