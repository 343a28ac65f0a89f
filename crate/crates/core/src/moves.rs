//! Flips, trits, flip components and padded connectivity.

use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::kasteleyn::{twist, twist_of_partner, TwistValue};
use crate::region::{Cell, Region, NONE};
use crate::tiling::{concat, decompose_floors, enumerate_tilings, vertical_tiling_arc, Tiling, TilingKey};
use crate::unionfind::UnionFind;

/// Default number of visited states for connectivity searches.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Flip,
    Trit,
}

/// Where a move applies. For flips `axes` has two entries; for trits three,
/// and `corner` picks one of the four antipodal corner pairs of the block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub anchor: Cell,
    pub axes: SmallVec<[usize; 3]>,
    pub corner: u8,
}

/// The unit squares and 2x2x2 blocks of a region, as cell indices.
#[derive(Clone, Debug)]
pub struct MoveTables {
    /// `[v, v+e0, v+e1, v+e0+e1]` with axes.
    squares: Vec<([u32; 4], [u8; 2])>,
    /// Cells `v + sum_{i in m} e_{k_i}` for `m` in `0..8`, with axes.
    cubes: Vec<([u32; 8], [u8; 3])>,
}

impl MoveTables {
    pub fn new(region: &Region) -> Self {
        let n = region.dim();
        let up = |i: u32, k: usize| -> u32 {
            if i == NONE {
                NONE
            } else {
                region.step_raw(i as usize, 2 * k + 1)
            }
        };
        let mut squares = Vec::new();
        let mut cubes = Vec::new();
        for v in 0..region.len() as u32 {
            for k0 in 0..n {
                for k1 in k0 + 1..n {
                    let sq = [v, up(v, k0), up(v, k1), up(up(v, k0), k1)];
                    if sq.iter().all(|&c| c != NONE) {
                        squares.push((sq, [k0 as u8, k1 as u8]));
                    }
                    for k2 in k1 + 1..n {
                        let mut cube = [NONE; 8];
                        for (m, slot) in cube.iter_mut().enumerate() {
                            let mut c = v;
                            for (bit, k) in [k0, k1, k2].into_iter().enumerate() {
                                if m >> bit & 1 == 1 {
                                    c = up(c, k);
                                }
                            }
                            *slot = c;
                        }
                        if cube.iter().all(|&c| c != NONE) {
                            cubes.push((cube, [k0 as u8, k1 as u8, k2 as u8]));
                        }
                    }
                }
            }
        }
        MoveTables { squares, cubes }
    }

    /// Calls `f` with the square index for every available flip.
    pub(crate) fn for_each_flip(&self, partner: &[u32], mut f: impl FnMut(usize)) {
        for (i, (s, _)) in self.squares.iter().enumerate() {
            let [v, a, b, c] = s.map(|x| x as usize);
            if (partner[v] as usize == a && partner[b] as usize == c)
                || (partner[v] as usize == b && partner[a] as usize == c)
            {
                f(i);
            }
        }
    }

    pub(crate) fn apply_flip(&self, partner: &mut [u32], square: usize) {
        let [v, a, b, c] = self.squares[square].0;
        let pair = |p: &mut [u32], x: u32, y: u32| {
            p[x as usize] = y;
            p[y as usize] = x;
        };
        if partner[v as usize] == a {
            pair(partner, v, b);
            pair(partner, a, c);
        } else {
            pair(partner, v, a);
            pair(partner, b, c);
        }
    }

    /// Calls `f(cube, corner)` for every available trit.
    pub(crate) fn for_each_trit(&self, partner: &[u32], mut f: impl FnMut(usize, u8)) {
        for (i, (cube, _)) in self.cubes.iter().enumerate() {
            for (ci, &c) in TRIT_CORNERS.iter().enumerate() {
                if trit_state(cube, partner, c).is_some() {
                    f(i, ci as u8);
                }
            }
        }
    }

    pub(crate) fn apply_trit(&self, partner: &mut [u32], cube: usize, corner: u8) {
        let cells = &self.cubes[cube].0;
        let c = TRIT_CORNERS[corner as usize];
        let state = trit_state(cells, partner, c).expect("trit available");
        let target = trit_pairs(c, !state);
        for (x, y) in target {
            let (x, y) = (cells[x], cells[y]);
            partner[x as usize] = y;
            partner[y as usize] = x;
        }
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn cube_count(&self) -> usize {
        self.cubes.len()
    }

    fn flip_site(&self, region: &Region, i: usize) -> MoveSite {
        let (s, k) = &self.squares[i];
        MoveSite {
            kind: MoveKind::Flip,
            anchor: region.cell(s[0] as usize),
            axes: k.iter().map(|&x| x as usize).collect(),
            corner: 0,
        }
    }

    fn trit_site(&self, region: &Region, i: usize, corner: u8) -> MoveSite {
        let (c, k) = &self.cubes[i];
        MoveSite {
            kind: MoveKind::Trit,
            anchor: region.cell(c[0] as usize),
            axes: k.iter().map(|&x| x as usize).collect(),
            corner,
        }
    }

    fn find_square(&self, region: &Region, site: &MoveSite) -> Option<usize> {
        let v = region.index_of(&site.anchor)? as u32;
        self.squares
            .iter()
            .position(|(s, k)| s[0] == v && k.iter().map(|&x| x as usize).eq(site.axes.iter().copied()))
    }

    fn find_cube(&self, region: &Region, site: &MoveSite) -> Option<usize> {
        let v = region.index_of(&site.anchor)? as u32;
        self.cubes
            .iter()
            .position(|(c, k)| c[0] == v && k.iter().map(|&x| x as usize).eq(site.axes.iter().copied()))
    }
}

/// One corner from each antipodal pair of the 2x2x2 block.
const TRIT_CORNERS: [usize; 4] = [0, 1, 2, 4];

/// The two ways of tiling the 6-cycle around the corner pair `(c, c^7)`,
/// as pairs of block positions.
fn trit_pairs(c: usize, second: bool) -> [(usize, usize); 3] {
    let f = [c ^ 1, c ^ 2, c ^ 4];
    if !second {
        [(f[0], f[0] ^ 2), (f[1], f[1] ^ 4), (f[2], f[2] ^ 1)]
    } else {
        [(f[0], f[0] ^ 4), (f[1], f[1] ^ 1), (f[2], f[2] ^ 2)]
    }
}

fn trit_state(cells: &[u32; 8], partner: &[u32], c: usize) -> Option<bool> {
    [false, true].into_iter().find(|&second| {
        trit_pairs(c, second)
            .iter()
            .all(|&(x, y)| partner[cells[x] as usize] == cells[y])
    })
}

pub fn flip_sites(t: &Tiling) -> Vec<MoveSite> {
    let tables = MoveTables::new(t.region());
    let mut out = Vec::new();
    tables.for_each_flip(t.partner(), |i| out.push(tables.flip_site(t.region(), i)));
    out
}

pub fn trit_sites(t: &Tiling) -> Vec<MoveSite> {
    let tables = MoveTables::new(t.region());
    let mut out = Vec::new();
    tables.for_each_trit(t.partner(), |i, c| out.push(tables.trit_site(t.region(), i, c)));
    out
}

/// Applies a move; errors if the site is not available in `t`.
pub fn apply_move(t: &Tiling, site: &MoveSite) -> Result<Tiling> {
    let region = t.region();
    let tables = MoveTables::new(region);
    let mut p = t.partner().to_vec();
    let unavailable = || Error::InvalidTiling(format!("move {site:?} is not available"));
    match site.kind {
        MoveKind::Flip => {
            let i = tables.find_square(region, site).ok_or_else(unavailable)?;
            let mut ok = false;
            tables.for_each_flip(&p, |j| ok |= j == i);
            if !ok {
                return Err(unavailable());
            }
            tables.apply_flip(&mut p, i);
        }
        MoveKind::Trit => {
            let i = tables.find_cube(region, site).ok_or_else(unavailable)?;
            let c = *TRIT_CORNERS.get(site.corner as usize).ok_or_else(unavailable)?;
            if trit_state(&tables.cubes[i].0, &p, c).is_none() {
                return Err(unavailable());
            }
            tables.apply_trit(&mut p, i, site.corner);
        }
    }
    Tiling::from_partner(region.clone(), p)
}

/// All tilings one flip away from `t`.
pub fn flip_neighbors(t: &Tiling) -> Vec<Tiling> {
    let tables = MoveTables::new(t.region());
    let mut out = Vec::new();
    tables.for_each_flip(t.partner(), |i| {
        let mut p = t.partner().to_vec();
        tables.apply_flip(&mut p, i);
        out.push(Tiling::from_partner_unchecked(t.region().clone(), p));
    });
    out
}

/// All tilings one trit away from `t`.
pub fn trit_neighbors(t: &Tiling) -> Vec<Tiling> {
    let tables = MoveTables::new(t.region());
    let mut out = Vec::new();
    tables.for_each_trit(t.partner(), |i, c| {
        let mut p = t.partner().to_vec();
        tables.apply_trit(&mut p, i, c);
        out.push(Tiling::from_partner_unchecked(t.region().clone(), p));
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Complete,
    /// The enumeration budget ran out; components cover only the tilings seen.
    Partial,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub size: u64,
    pub twist: TwistValue,
    pub representative: Tiling,
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    pub total: u64,
    pub flip_edges: u64,
    /// Flip edges joining tilings of different twist.
    pub twist_violations: u64,
    pub status: ReportStatus,
}

impl ComponentReport {
    /// `(size, twist)` pairs in report order.
    pub fn census(&self) -> Vec<(u64, TwistValue)> {
        self.components.iter().map(|c| (c.size, c.twist)).collect()
    }
}

/// All tilings of a region with their flip components.
pub struct FlipPartition {
    pub region: Arc<Region>,
    pub keys: Vec<TilingKey>,
    pub twists: Vec<TwistValue>,
    /// Component of each tiling, as an index into `report.components`.
    pub component: Vec<u32>,
    pub report: ComponentReport,
}

impl FlipPartition {
    pub fn tiling(&self, i: usize) -> Tiling {
        Tiling::from_key(self.region.clone(), &self.keys[i])
    }

    /// Indices of the tilings in component `c`.
    pub fn members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.component
            .iter()
            .enumerate()
            .filter(move |(_, &k)| k as usize == c)
            .map(|(i, _)| i)
    }
}

pub fn flip_components(region: &Region, budget: u64) -> Result<ComponentReport> {
    Ok(flip_partition(region, budget)?.report)
}

pub fn flip_partition(region: &Region, budget: u64) -> Result<FlipPartition> {
    let region = Arc::new(region.clone());
    let mut e = enumerate_tilings(region.clone(), Some(budget));
    let mut keys = Vec::new();
    for t in e.by_ref() {
        keys.push(t.key());
    }
    let status = if e.truncated() {
        ReportStatus::Partial
    } else {
        ReportStatus::Complete
    };
    let n = keys.len();
    if n > u32::MAX as usize {
        return Err(Error::SizeLimit {
            what: "tiling count",
            size: n,
            limit: u32::MAX as usize,
        });
    }
    let index: FxHashMap<&TilingKey, u32> = keys.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
    let tables = MoveTables::new(&region);
    let twists: Vec<TwistValue> = keys
        .par_iter()
        .map_init(
            || vec![NONE; region.len()],
            |p, k| {
                k.decode_into(&region, p);
                twist_of_partner(&region, p)
            },
        )
        .collect();

    let mut uf = UnionFind::new(n);
    let mut flip_edges = 0u64;
    let mut violations = 0u64;
    const BLOCK: usize = 1 << 18;
    for start in (0..n).step_by(BLOCK) {
        let end = (start + BLOCK).min(n);
        let edges: Vec<(u32, u32)> = (start..end)
            .into_par_iter()
            .map_init(
                || (vec![NONE; region.len()], Vec::new()),
                |(p, out), i| {
                    keys[i].decode_into(&region, p);
                    out.clear();
                    let mut q = p.clone();
                    tables.for_each_flip(p, |s| {
                        q.copy_from_slice(p);
                        tables.apply_flip(&mut q, s);
                        // Under a partial enumeration some neighbours are unseen.
                        if let Some(&j) = index.get(&TilingKey::encode(&region, &q)) {
                            if j as usize > i {
                                out.push((i as u32, j));
                            }
                        }
                    });
                    out.clone()
                },
            )
            .flatten()
            .collect();
        for (a, b) in edges {
            flip_edges += 1;
            if twists[a as usize] != twists[b as usize] {
                violations += 1;
            }
            uf.union(a, b);
        }
    }

    // Components in order of first appearance, then sorted by size.
    let mut root_to_comp: FxHashMap<u32, u32> = FxHashMap::default();
    let mut first: Vec<usize> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    let mut raw = vec![0u32; n];
    for (i, slot) in raw.iter_mut().enumerate() {
        let r = uf.find(i as u32);
        let c = *root_to_comp.entry(r).or_insert_with(|| {
            first.push(i);
            sizes.push(0);
            (first.len() - 1) as u32
        });
        sizes[c as usize] += 1;
        *slot = c;
    }
    let mut order: Vec<usize> = (0..first.len()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(sizes[c]), first[c]));
    let mut rank = vec![0u32; order.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r as u32;
    }
    let component: Vec<u32> = raw.iter().map(|&c| rank[c as usize]).collect();
    let components = order
        .iter()
        .map(|&c| Component {
            size: sizes[c],
            twist: twists[first[c]],
            representative: Tiling::from_key(region.clone(), &keys[first[c]]),
        })
        .collect();
    drop(index);
    Ok(FlipPartition {
        region,
        keys,
        twists,
        component,
        report: ComponentReport {
            components,
            total: n as u64,
            flip_edges,
            twist_violations: violations,
            status,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectStatus {
    Connected,
    Disconnected,
    /// The visited-state budget ran out before either answer was certain.
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub status: ConnectStatus,
    pub visited: u64,
    /// Length of the flip path found, when connected.
    pub distance: Option<u64>,
}

/// Bidirectional breadth-first search in the flip graph. Tilings of
/// different twist are reported disconnected without searching.
pub fn flip_connected(t0: &Tiling, t1: &Tiling, budget: u64) -> Result<SearchOutcome> {
    if t0.region() != t1.region() {
        return Err(Error::RegionMismatch("tilings live on different regions".into()));
    }
    if t0 == t1 {
        return Ok(SearchOutcome {
            status: ConnectStatus::Connected,
            visited: 1,
            distance: Some(0),
        });
    }
    if twist(t0) != twist(t1) {
        return Ok(SearchOutcome {
            status: ConnectStatus::Disconnected,
            visited: 0,
            distance: None,
        });
    }
    let region = t0.region().clone();
    let tables = MoveTables::new(&region);
    let mut sides = [Side::new(t0.key()), Side::new(t1.key())];
    loop {
        let visited = (sides[0].seen.len() + sides[1].seen.len()) as u64;
        for s in 0..2 {
            if sides[s].frontier.is_empty() {
                return Ok(SearchOutcome {
                    status: ConnectStatus::Disconnected,
                    visited,
                    distance: None,
                });
            }
        }
        if visited > budget {
            return Ok(SearchOutcome {
                status: ConnectStatus::Indeterminate,
                visited,
                distance: None,
            });
        }
        let s = if sides[0].frontier.len() <= sides[1].frontier.len() { 0 } else { 1 };
        let next = expand(&region, &tables, &sides[s].frontier);
        let (a, b) = sides.split_at_mut(1);
        let (me, other) = if s == 0 { (&mut a[0], &b[0]) } else { (&mut b[0], &a[0]) };
        me.depth += 1;
        let mut frontier = Vec::new();
        for k in next {
            if let Some(&d) = other.seen.get(&k) {
                let visited = (me.seen.len() + other.seen.len()) as u64;
                return Ok(SearchOutcome {
                    status: ConnectStatus::Connected,
                    visited,
                    distance: Some(me.depth + d as u64),
                });
            }
            if let std::collections::hash_map::Entry::Vacant(e) = me.seen.entry(k) {
                frontier.push(e.key().clone());
                e.insert(me.depth as u32);
            }
        }
        me.frontier = frontier;
    }
}

struct Side {
    seen: FxHashMap<TilingKey, u32>,
    frontier: Vec<TilingKey>,
    depth: u64,
}

impl Side {
    fn new(k: TilingKey) -> Self {
        let mut seen = FxHashMap::default();
        seen.insert(k.clone(), 0);
        Side {
            seen,
            frontier: vec![k],
            depth: 0,
        }
    }
}

/// Flip neighbours of every frontier key, in a deterministic order.
fn expand(region: &Region, tables: &MoveTables, frontier: &[TilingKey]) -> Vec<TilingKey> {
    frontier
        .par_iter()
        .map_init(
            || vec![NONE; region.len()],
            |p, k| {
                k.decode_into(region, p);
                let mut out = Vec::new();
                let mut q = p.clone();
                tables.for_each_flip(p, |s| {
                    q.copy_from_slice(p);
                    tables.apply_flip(&mut q, s);
                    out.push(TilingKey::encode(region, &q));
                });
                out
            },
        )
        .flatten()
        .collect()
}

/// `t * vert_m`: `t` with `m` vertical floors stacked on top.
pub fn pad(t: &Tiling, m: usize) -> Result<Tiling> {
    let view = t
        .region()
        .cylinder_view()
        .ok_or_else(|| Error::RegionMismatch("padding needs a cylinder".into()))?;
    concat(t, &vertical_tiling_arc(view.base, m)?)
}

/// `vert_m * t`.
pub fn pad_below(t: &Tiling, m: usize) -> Result<Tiling> {
    let view = t
        .region()
        .cylinder_view()
        .ok_or_else(|| Error::RegionMismatch("padding needs a cylinder".into()))?;
    concat(&vertical_tiling_arc(view.base, m)?, t)
}

/// Flip connectivity of `t0 * vert_m` and `t1 * vert_m`.
pub fn connected_with_padding(t0: &Tiling, t1: &Tiling, m: usize, budget: u64) -> Result<SearchOutcome> {
    if t0.region() != t1.region() {
        return Err(Error::RegionMismatch("tilings live on different regions".into()));
    }
    flip_connected(&pad(t0, m)?, &pad(t1, m)?, budget)
}

/// Outcome of [`minimal_padding`]: the status for each even `m` tried.
#[derive(Clone, Debug, Serialize)]
pub struct PaddingReport {
    pub attempts: Vec<(usize, SearchOutcome)>,
    pub minimal: Option<usize>,
}

/// Tries `m = 0, 2, ..., max_m` and stops at the first connected padding.
pub fn minimal_padding(t0: &Tiling, t1: &Tiling, max_m: usize, budget: u64) -> Result<PaddingReport> {
    let mut attempts = Vec::new();
    for m in (0..=max_m).step_by(2) {
        let o = connected_with_padding(t0, t1, m, budget)?;
        let done = o.status == ConnectStatus::Connected;
        attempts.push((m, o));
        if done {
            return Ok(PaddingReport {
                attempts,
                minimal: Some(m),
            });
        }
    }
    Ok(PaddingReport {
        attempts,
        minimal: None,
    })
}

/// Result of [`padded_reach`].
#[derive(Clone, Debug)]
pub struct ReachOutcome {
    pub status: ConnectStatus,
    pub visited: u64,
    pub distance: Option<u64>,
    /// The unpadded target `s` such that `s * vert_m` was reached.
    pub witness: Option<Tiling>,
}

/// Breadth-first search from `t * vert_m` until it meets some `s * vert_m`
/// with `s` in `targets` (keys of tilings on `t`'s region). If every target
/// is flip-connected to a tiling `u`, a hit shows `t * vert_m ~ u * vert_m`.
pub fn padded_reach(
    t: &Tiling,
    targets: &FxHashSet<TilingKey>,
    m: usize,
    budget: u64,
) -> Result<ReachOutcome> {
    let small = t.region().clone();
    let start = pad(t, m)?;
    let region = start.region().clone();
    let view = region.cylinder_view().expect("padded tiling is a cylinder");
    let d = view.base.len();
    let n = view.height - m;
    let tables = MoveTables::new(&region);
    let hit = |p: &[u32]| -> bool {
        // Every cell at heights n..n+m must be paired vertically inside that slab.
        let slab = n * d;
        let ok = (slab..region.len()).all(|i| {
            let j = p[i] as usize;
            j >= slab && (j as isize - i as isize).unsigned_abs() == d && ((i.min(j) - slab) / d) % 2 == 0
        });
        ok && targets.contains(&TilingKey::encode(&small, &p[..slab]))
    };
    let mut seen: FxHashSet<TilingKey> = FxHashSet::default();
    let k0 = start.key();
    seen.insert(k0.clone());
    let mut frontier = vec![k0];
    let mut depth = 0u64;
    if hit(start.partner()) {
        return Ok(ReachOutcome {
            status: ConnectStatus::Connected,
            visited: 1,
            distance: Some(0),
            witness: Some(t.clone()),
        });
    }
    let mut p = vec![NONE; region.len()];
    while !frontier.is_empty() {
        if seen.len() as u64 > budget {
            return Ok(ReachOutcome {
                status: ConnectStatus::Indeterminate,
                visited: seen.len() as u64,
                distance: None,
                witness: None,
            });
        }
        depth += 1;
        let next = expand(&region, &tables, &frontier);
        frontier = Vec::new();
        for k in next {
            if seen.insert(k.clone()) {
                k.decode_into(&region, &mut p);
                if hit(&p) {
                    let w = Tiling::from_partner(small.clone(), p[..n * d].to_vec())?;
                    return Ok(ReachOutcome {
                        status: ConnectStatus::Connected,
                        visited: seen.len() as u64,
                        distance: Some(depth),
                        witness: Some(w),
                    });
                }
                frontier.push(k);
            }
        }
    }
    Ok(ReachOutcome {
        status: ConnectStatus::Disconnected,
        visited: seen.len() as u64,
        distance: None,
        witness: None,
    })
}

/// Checks that a vertical slab can be flipped from the top of `t` to its
/// bottom: `t * vert_2` against `vert_2 * t`.
pub fn vertical_mobility(t: &Tiling, budget: u64) -> Result<SearchOutcome> {
    flip_connected(&pad(t, 2)?, &pad_below(t, 2)?, budget)
}

/// Number of vertical floors in a cylinder tiling.
pub fn vertical_floor_count(t: &Tiling) -> Result<usize> {
    Ok(decompose_floors(t)?.vertical_floor_count())
}
