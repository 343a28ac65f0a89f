//! Hamiltonian paths of base regions, path-respecting tilings, folding, the
//! flux of a non-respecting domino, and the cork-filler and generator
//! constructions.

use std::collections::VecDeque;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kasteleyn::{twist, TwistValue};
use crate::moves::{flip_neighbors, ConnectStatus, SearchOutcome};
use crate::plug::Plug;
use crate::region::{cylinder_from_arc, make_box, make_cork, Cell, Color, Region};
use crate::tiling::{decompose_floors, find_tiling, Domino, Tiling, TilingKey};
use crate::transfer::enumerate_plugs;

/// Largest base accepted by [`flux_set`] and [`generator_set`].
pub const MAX_FLUX_BASE: usize = 16;

/// Default cap on the half height searched by [`generator_tiling`].
pub const DEFAULT_HALF_HEIGHT_CAP: usize = 16;

/// A Hamiltonian path `s_1, ..., s_M` through the cells of a base region.
/// Positions are 0-based in the API; the flux formula uses `i = pos + 1`.
#[derive(Clone, Debug)]
pub struct HamiltonianPath {
    base: Arc<Region>,
    order: Vec<u32>,
    position: Vec<u32>,
}

impl HamiltonianPath {
    /// `order[k]` is the base cell index at position `k`.
    pub fn new(base: Arc<Region>, order: Vec<u32>) -> Result<Self> {
        let n = base.len();
        if order.len() != n {
            return Err(Error::InvalidPath(format!(
                "path has {} cells, base has {n}",
                order.len()
            )));
        }
        let mut position = vec![u32::MAX; n];
        for (k, &c) in order.iter().enumerate() {
            let slot = position
                .get_mut(c as usize)
                .ok_or_else(|| Error::InvalidPath(format!("cell index {c} out of range")))?;
            if *slot != u32::MAX {
                return Err(Error::InvalidPath(format!("cell {} visited twice", base.cell(c as usize))));
            }
            *slot = k as u32;
        }
        for k in 1..n {
            let (a, b) = (base.cell(order[k - 1] as usize), base.cell(order[k] as usize));
            if a.adjacency_axis(&b).is_none() {
                return Err(Error::InvalidPath(format!("{a} and {b} at positions {} and {} are not adjacent", k - 1, k)));
            }
        }
        Ok(HamiltonianPath { base, order, position })
    }

    pub fn from_cells(base: Arc<Region>, cells: &[Cell]) -> Result<Self> {
        let order = cells
            .iter()
            .map(|c| {
                base.index_of(c)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::CellNotInRegion(c.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, order)
    }

    pub fn base(&self) -> &Arc<Region> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Position of the base cell with index `index`.
    pub fn position(&self, index: usize) -> usize {
        self.position[index] as usize
    }

    pub fn cell(&self, k: usize) -> Cell {
        self.base.cell(self.order[k] as usize)
    }

    pub fn cells(&self) -> Vec<Cell> {
        (0..self.len()).map(|k| self.cell(k)).collect()
    }

    fn position_of_cell(&self, c: &Cell) -> Option<usize> {
        self.base.index_of(c).map(|i| self.position(i))
    }

    /// Whether the domino with (cylinder) cells `a`, `b` respects the path.
    pub fn respects(&self, a: &Cell, b: &Cell) -> bool {
        let (ba, bb) = (a.base(), b.base());
        if ba == bb {
            return true;
        }
        match (self.position_of_cell(&ba), self.position_of_cell(&bb)) {
            (Some(i), Some(j)) => i.abs_diff(j) == 1,
            _ => false,
        }
    }

    /// Adjacent base cell pairs that are not consecutive on the path, as
    /// base indices ordered by path position.
    pub fn non_respecting_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .base
            .edges()
            .into_iter()
            .map(|(b, w)| (b as usize, w as usize))
            .filter(|&(b, w)| self.position(b).abs_diff(self.position(w)) > 1)
            .map(|(b, w)| {
                if self.position(b) < self.position(w) {
                    (b, w)
                } else {
                    (w, b)
                }
            })
            .collect();
        out.sort_by_key(|&(a, b)| (self.position(a), self.position(b)));
        out
    }
}

/// The serpentine path of a box: the path of `[0,L_1] x ... x [0,L_{n-1}]`
/// is run forwards on odd layers of the last axis and backwards on even
/// ones (layers counted from 1).
pub fn box_path(dims: &[usize]) -> Result<HamiltonianPath> {
    let base = Arc::new(make_box(dims)?);
    let mut path: Vec<Vec<i32>> = (0..dims[0] as i32).map(|x| vec![x]).collect();
    for &l in &dims[1..] {
        let mut next = Vec::with_capacity(path.len() * l);
        for x in 0..l as i32 {
            let layer = path.iter().map(|c| {
                let mut c = c.clone();
                c.push(x);
                c
            });
            if x % 2 == 0 {
                next.extend(layer);
            } else {
                next.extend(layer.rev());
            }
        }
        path = next;
    }
    let cells: Vec<Cell> = path.iter().map(|c| Cell::new(c)).collect();
    HamiltonianPath::from_cells(base, &cells)
}

pub fn domino_respects_path(path: &HamiltonianPath, d: &Domino) -> bool {
    path.respects(&d.black, &d.white)
}

/// True iff every domino of `t` (a tiling of a cylinder or cork over the
/// path's base) respects the path.
pub fn respects_path(path: &HamiltonianPath, t: &Tiling) -> bool {
    non_respecting_dominoes(path, t).is_empty()
}

pub fn non_respecting_dominoes(path: &HamiltonianPath, t: &Tiling) -> Vec<Domino> {
    t.dominoes()
        .into_iter()
        .filter(|d| !domino_respects_path(path, d))
        .collect()
}

/// Whether consecutive-in-`from` adjacency implies adjacency in `to`:
/// `from.cell(k)` adjacent to `from.cell(l)` forces `to.cell(k)` adjacent to
/// `to.cell(l)`.
pub fn folding_condition(from: &HamiltonianPath, to: &HamiltonianPath) -> Result<()> {
    check_lengths(from, to)?;
    for (a, b) in from.base.edges() {
        let (k, l) = (from.position(a as usize), from.position(b as usize));
        if to.cell(k).adjacency_axis(&to.cell(l)).is_none() {
            return Err(Error::Fold(format!(
                "positions {k} and {l} are adjacent in the source but not in the target"
            )));
        }
    }
    Ok(())
}

fn check_lengths(from: &HamiltonianPath, to: &HamiltonianPath) -> Result<()> {
    if from.len() != to.len() {
        return Err(Error::Fold(format!(
            "paths have different lengths {} and {}",
            from.len(),
            to.len()
        )));
    }
    Ok(())
}

/// Moves `t` from the cylinder over `from.base` to the cylinder over
/// `to.base`, sending `from.cell(k)` at height `h` to `to.cell(k)` at
/// height `h`. Requires the folding condition, so it always succeeds.
pub fn fold(from: &HamiltonianPath, to: &HamiltonianPath, t: &Tiling) -> Result<Tiling> {
    folding_condition(from, to)?;
    transport(from, to, t)
}

/// The inverse direction of [`fold`]: moves a tiling over `to.base` back
/// over `from.base`. Fails on the first domino whose image is not a pair of
/// adjacent cells, reporting its two path positions.
pub fn unfold(from: &HamiltonianPath, to: &HamiltonianPath, t: &Tiling) -> Result<Tiling> {
    transport(to, from, t)
}

fn transport(src: &HamiltonianPath, dst: &HamiltonianPath, t: &Tiling) -> Result<Tiling> {
    check_lengths(src, dst)?;
    let map_cell = |c: &Cell| -> Result<(Cell, usize)> {
        let k = src
            .position_of_cell(&c.base())
            .ok_or_else(|| Error::CellNotInRegion(c.to_string()))?;
        Ok((dst.cell(k).lift(c.last()), k))
    };
    let region = transport_region(src, dst, t.region())?;
    let mut pairs = Vec::with_capacity(t.region().len() / 2);
    for d in t.dominoes() {
        let (a, k) = map_cell(&d.black)?;
        let (b, l) = map_cell(&d.white)?;
        if a.adjacency_axis(&b).is_none() {
            return Err(Error::Fold(format!(
                "domino {d} maps to non-adjacent cells at path positions ({k}, {l})"
            )));
        }
        pairs.push((a, b));
    }
    Tiling::from_pairs(Arc::new(region), &pairs)
}

fn transport_region(src: &HamiltonianPath, dst: &HamiltonianPath, region: &Region) -> Result<Region> {
    let map_plug = |p: Plug| {
        let mask = p
            .indices()
            .map(|i| 1u64 << dst.order[src.position(i)])
            .fold(0, |a, b| a | b);
        Plug::from_mask_unchecked(mask)
    };
    if let Some(view) = region.cylinder_view() {
        if *view.base == *src.base {
            return if view.bottom.is_empty() && view.top.is_empty() {
                cylinder_from_arc(dst.base.clone(), view.height)
            } else {
                make_cork(&dst.base, view.height, map_plug(view.bottom), map_plug(view.top))
            };
        }
    }
    let cells = region
        .cells()
        .iter()
        .map(|c| {
            src.position_of_cell(&c.base())
                .map(|k| dst.cell(k).lift(c.last()))
                .ok_or_else(|| Error::CellNotInRegion(c.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Region::from_cells(dst.base.dim() + 1, cells)
}

/// `(flux_-, flux_0, flux_+)` of a plug relative to a non-respecting domino.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FluxValue {
    pub minus: i32,
    pub zero: i32,
    pub plus: i32,
}

impl FluxValue {
    pub fn sum(&self) -> i32 {
        self.minus + self.zero + self.plus
    }
}

impl std::fmt::Display for FluxValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.minus, self.zero, self.plus)
    }
}

/// Path positions `(i_-, i_+)` of a non-respecting base edge.
fn domino_positions(path: &HamiltonianPath, d: (usize, usize)) -> Result<(usize, usize)> {
    let (a, b) = d;
    if a >= path.len() || b >= path.len() {
        return Err(Error::InvalidPath(format!("cell index out of range in ({a}, {b})")));
    }
    let (ca, cb) = (path.base.cell(a), path.base.cell(b));
    if ca.adjacency_axis(&cb).is_none() {
        return Err(Error::NotAnEdge(ca.to_string(), cb.to_string()));
    }
    let (i, j) = (path.position(a), path.position(b));
    let (lo, hi) = (i.min(j), i.max(j));
    if hi - lo == 1 {
        return Err(Error::InvalidPath(format!("domino {ca}-{cb} respects the path")));
    }
    Ok((lo, hi))
}

/// Sizes of the three intervals cut out by `d`.
pub fn flux_intervals(path: &HamiltonianPath, d: (usize, usize)) -> Result<[usize; 3]> {
    let (lo, hi) = domino_positions(path, d)?;
    Ok([lo, hi - lo - 1, path.len() - hi - 1])
}

pub fn flux(path: &HamiltonianPath, d: (usize, usize), p: Plug) -> Result<FluxValue> {
    let (lo, hi) = domino_positions(path, d)?;
    p.check(&path.base)?;
    if p.contains(d.0) || p.contains(d.1) {
        return Err(Error::InvalidPlug(format!(
            "plug {:#x} contains a cell of the domino",
            p.mask()
        )));
    }
    let mut f = FluxValue { minus: 0, zero: 0, plus: 0 };
    for s in p.indices() {
        let k = path.position(s);
        // 1-based index i = k + 1, so (-1)^i = -(-1)^k.
        let sign = if k % 2 == 0 { -1 } else { 1 };
        if k < lo {
            f.minus += sign;
        } else if k < hi {
            f.zero += sign;
        } else {
            f.plus += sign;
        }
    }
    Ok(f)
}

fn check_flux_base(path: &HamiltonianPath) -> Result<()> {
    if path.len() > MAX_FLUX_BASE {
        return Err(Error::SizeLimit {
            what: "base for flux enumeration",
            size: path.len(),
            limit: MAX_FLUX_BASE,
        });
    }
    Ok(())
}

/// Every flux value reached by a plug compatible with `d`, each with the
/// smallest such plug (fewest cells, then lowest mask).
pub fn flux_witnesses(path: &HamiltonianPath, d: (usize, usize)) -> Result<Vec<(FluxValue, Plug)>> {
    check_flux_base(path)?;
    domino_positions(path, d)?;
    let mut best: std::collections::BTreeMap<FluxValue, Plug> = Default::default();
    for p in enumerate_plugs(&path.base)? {
        if p.contains(d.0) || p.contains(d.1) {
            continue;
        }
        let f = flux(path, d, p)?;
        best.entry(f)
            .and_modify(|q| {
                if (p.len(), p.mask()) < (q.len(), q.mask()) {
                    *q = p;
                }
            })
            .or_insert(p);
    }
    Ok(best.into_iter().collect())
}

pub fn flux_set(path: &HamiltonianPath, d: (usize, usize)) -> Result<Vec<FluxValue>> {
    Ok(flux_witnesses(path, d)?.into_iter().map(|(f, _)| f).collect())
}

/// A tiling of the cork `base x [0,N]` minus `p x [N-1,N]`, with `N = |p|`.
///
/// Pairs of opposite colours are peeled off at minimal distance in the base
/// graph; each pair adds two floors, with horizontal dominoes along a
/// shortest path between them and vertical dominoes elsewhere.
pub fn cork_filler(base: &Region, p: Plug) -> Result<Tiling> {
    p.check(base)?;
    let dist = all_distances(base);
    let mut pairs_left = p;
    let mut peel = Vec::new();
    while !pairs_left.is_empty() {
        let mut best: Option<(u32, usize, usize)> = None;
        for v in pairs_left.indices().filter(|&i| base.color(i) == Color::Black) {
            for w in pairs_left.indices().filter(|&i| base.color(i) == Color::White) {
                let dv = dist[v][w];
                if dv == u32::MAX {
                    continue;
                }
                let key = (dv, base.label(v), base.label(w));
                if best.map_or(true, |(bd, bv, bw)| key < (bd, base.label(bv), base.label(bw))) {
                    best = Some((dv, v, w));
                }
            }
        }
        let (_, v, w) = best.ok_or_else(|| {
            Error::InvalidPlug("plug cells lie in different components of the base".into())
        })?;
        peel.push((v, w));
        pairs_left = pairs_left.without(v).without(w);
    }
    // The last pair peeled is the first one placed.
    peel.reverse();

    let n = p.len();
    let mut cells_pairs: Vec<(Cell, Cell)> = Vec::with_capacity(base.len() * n / 2);
    let mut placed = Plug::EMPTY;
    for (step, &(v, w)) in peel.iter().enumerate() {
        let lo = 2 * step as i32;
        let route = shortest_path(base, v, w);
        let on_route: FxHashSet<usize> = route.iter().copied().collect();
        for s in placed.indices() {
            let c = base.cell(s);
            cells_pairs.push((c.lift(lo - 1), c.lift(lo)));
        }
        for k in (0..route.len()).step_by(2) {
            cells_pairs.push((base.cell(route[k]).lift(lo), base.cell(route[k + 1]).lift(lo)));
        }
        for k in (1..route.len() - 1).step_by(2) {
            cells_pairs.push((base.cell(route[k]).lift(lo + 1), base.cell(route[k + 1]).lift(lo + 1)));
        }
        for s in 0..base.len() {
            if !placed.contains(s) && !on_route.contains(&s) {
                let c = base.cell(s);
                cells_pairs.push((c.lift(lo), c.lift(lo + 1)));
            }
        }
        placed = placed.union(Plug::from_mask_unchecked((1u64 << v) | (1u64 << w)));
    }
    let region = make_cork(base, n, Plug::EMPTY, p)?;
    Tiling::from_pairs(Arc::new(region), &cells_pairs)
}

fn bfs(base: &Region, src: usize) -> (Vec<u32>, Vec<u32>) {
    let n = base.len();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = VecDeque::from([src]);
    dist[src] = 0;
    while let Some(u) = queue.pop_front() {
        for v in base.neighbor_indices(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u as u32;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

fn all_distances(base: &Region) -> Vec<Vec<u32>> {
    (0..base.len()).map(|s| bfs(base, s).0).collect()
}

/// Cells of a shortest path from `v` to `w`, both included.
fn shortest_path(base: &Region, v: usize, w: usize) -> Vec<usize> {
    let (_, parent) = bfs(base, v);
    let mut route = vec![w];
    let mut u = w;
    while u != v {
        u = parent[u] as usize;
        route.push(u);
    }
    route.reverse();
    route
}

/// A tiling of `base x [0,2N]` whose only non-respecting domino is `d` at
/// height `N-1..N` and whose plug at height `N-1` is `p`.
#[derive(Clone, Debug)]
pub struct GeneratorTiling {
    pub tiling: Tiling,
    pub domino: Domino,
    pub plug: Plug,
    pub half_height: usize,
    pub flux: FluxValue,
    pub twist: TwistValue,
}

/// Builds the generator for `(d, p)`, trying `N = 2, 4, ..., cap`.
///
/// The tiling is found on the unfolded rectangle `[0,M] x [0,2N]` (path
/// position by height) split at height `N-1`: the lower part stops below the
/// plug cells of row `N-2`, the upper part starts at row `N-1` without the
/// plug cells and the two cells of `d`. Each part is tiled separately and
/// the result is folded back.
pub fn generator_tiling(path: &HamiltonianPath, d: (usize, usize), p: Plug, cap: usize) -> Result<GeneratorTiling> {
    for n in (2..=cap).step_by(2) {
        if let Some(g) = try_generator(path, d, p, n)? {
            return Ok(g);
        }
    }
    Err(Error::SearchCap(format!(
        "no generator for plug {:#x} with half height up to {cap}",
        p.mask()
    )))
}

/// [`generator_tiling`] at a fixed even half height `n`.
pub fn generator_tiling_at(path: &HamiltonianPath, d: (usize, usize), p: Plug, n: usize) -> Result<GeneratorTiling> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidRegion(format!("half height {n} must be even and at least 2")));
    }
    try_generator(path, d, p, n)?.ok_or_else(|| {
        Error::SearchCap(format!("no generator for plug {:#x} at half height {n}", p.mask()))
    })
}

fn try_generator(path: &HamiltonianPath, d: (usize, usize), p: Plug, n: usize) -> Result<Option<GeneratorTiling>> {
    let fl = flux(path, d, p)?;
    let (lo, hi) = domino_positions(path, d)?;
    let m = path.len();
    let top = n as i32 - 1;
    let in_p = |k: usize| p.contains(path.order[k] as usize);
    let lower: Vec<Cell> = (0..top)
        .flat_map(|h| (0..m).map(move |k| (k, h)))
        .filter(|&(k, h)| !(h == top - 1 && in_p(k)))
        .map(|(k, h)| Cell::new(&[k as i32, h]))
        .collect();
    let upper: Vec<Cell> = (top..2 * n as i32)
        .flat_map(|h| (0..m).map(move |k| (k, h)))
        .filter(|&(k, h)| !(h == top && (in_p(k) || k == lo || k == hi)))
        .map(|(k, h)| Cell::new(&[k as i32, h]))
        .collect();
    let Some(t_lo) = planar_tiling(lower)? else { return Ok(None) };
    let Some(t_hi) = planar_tiling(upper)? else { return Ok(None) };

    let fold_cell = |c: &Cell| path.cell(c.coord(0) as usize).lift(c.coord(1));
    let mut pairs: Vec<(Cell, Cell)> = Vec::with_capacity(m * n);
    for t in [&t_lo, &t_hi] {
        for dm in t.dominoes() {
            pairs.push((fold_cell(&dm.black), fold_cell(&dm.white)));
        }
    }
    for k in (0..m).filter(|&k| in_p(k)) {
        let c = path.cell(k);
        pairs.push((c.lift(top - 1), c.lift(top)));
    }
    let (a, b) = (path.cell(lo).lift(top), path.cell(hi).lift(top));
    pairs.push((a, b));
    let region = Arc::new(cylinder_from_arc(path.base.clone(), 2 * n)?);
    let tiling = Tiling::from_pairs(region, &pairs)?;
    let g = GeneratorTiling {
        twist: twist(&tiling),
        domino: Domino::new(a, b)?,
        tiling,
        plug: p,
        half_height: n,
        flux: fl,
    };
    check_generator(path, &g)?;
    Ok(Some(g))
}

fn planar_tiling(cells: Vec<Cell>) -> Result<Option<Tiling>> {
    if cells.is_empty() {
        let r = Arc::new(Region::from_cells(2, cells)?);
        return Ok(Some(Tiling::empty(r)?));
    }
    let r = Arc::new(Region::from_cells(2, cells)?);
    Ok(find_tiling(r))
}

fn check_generator(path: &HamiltonianPath, g: &GeneratorTiling) -> Result<()> {
    let bad = non_respecting_dominoes(path, &g.tiling);
    if bad != [g.domino] {
        return Err(Error::Internal(format!(
            "generator has {} non-respecting dominoes",
            bad.len()
        )));
    }
    let dec = decompose_floors(&g.tiling)?;
    if dec.plugs[g.half_height - 1] != g.plug {
        return Err(Error::Internal("generator plug at height N-1 differs from p".into()));
    }
    Ok(())
}

/// One generator per non-respecting base edge and reachable flux value.
pub fn generator_set(path: &HamiltonianPath, cap: usize) -> Result<Vec<GeneratorTiling>> {
    check_flux_base(path)?;
    let mut jobs = Vec::new();
    for d in path.non_respecting_edges() {
        for (_, p) in flux_witnesses(path, d)? {
            jobs.push((d, p));
        }
    }
    jobs.into_par_iter()
        .map(|(d, p)| generator_tiling(path, d, p, cap))
        .collect()
}

/// Breadth-first flip search from `t0` to `t1` using only flips that leave
/// the dominoes at the cell indices `fixed` in place.
pub fn flip_connected_fixing(t0: &Tiling, t1: &Tiling, fixed: &[usize], budget: u64) -> Result<SearchOutcome> {
    if **t0.region() != **t1.region() {
        return Err(Error::RegionMismatch("tilings are on different regions".into()));
    }
    for &c in fixed {
        if t0.partner_of(c) != t1.partner_of(c) {
            return Ok(SearchOutcome {
                status: ConnectStatus::Disconnected,
                visited: 0,
                distance: None,
            });
        }
    }
    let target = t1.key();
    let mut seen: FxHashSet<TilingKey> = FxHashSet::default();
    seen.insert(t0.key());
    let mut frontier = vec![t0.clone()];
    let mut depth = 0u64;
    if t0.key() == target {
        return Ok(SearchOutcome {
            status: ConnectStatus::Connected,
            visited: 1,
            distance: Some(0),
        });
    }
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for t in &frontier {
            for u in flip_neighbors(t) {
                if fixed.iter().any(|&c| u.partner_of(c) != t.partner_of(c)) {
                    continue;
                }
                let k = u.key();
                if k == target {
                    return Ok(SearchOutcome {
                        status: ConnectStatus::Connected,
                        visited: seen.len() as u64 + 1,
                        distance: Some(depth as u64),
                    });
                }
                if seen.insert(k) {
                    if seen.len() as u64 > budget {
                        return Ok(SearchOutcome {
                            status: ConnectStatus::Indeterminate,
                            visited: seen.len() as u64,
                            distance: None,
                        });
                    }
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    Ok(SearchOutcome {
        status: ConnectStatus::Disconnected,
        visited: seen.len() as u64,
        distance: None,
    })
}

/// The straight path `[0,M]` used as the unfolding target.
pub fn line_path(m: usize) -> Result<HamiltonianPath> {
    box_path(&[m])
}

/// JSON form of a path: its base spec and ordered cells.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathJson {
    pub base: String,
    pub cells: Vec<Vec<i32>>,
}

impl PathJson {
    pub fn from_path(p: &HamiltonianPath) -> Self {
        PathJson {
            base: p.base.spec(),
            cells: p.cells().iter().map(|c| c.coords().to_vec()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kasteleyn::twist;
    use crate::region::make_cylinder;
    use crate::tiling::{enumerate_tilings, vertical_tiling};

    fn arc(r: Region) -> Arc<Region> {
        Arc::new(r)
    }

    #[test]
    fn line_is_identity() {
        let p = box_path(&[5]).unwrap();
        for k in 0..5 {
            assert_eq!(p.cell(k), Cell::new(&[k as i32]));
        }
    }

    #[test]
    fn square_path() {
        let p = box_path(&[2, 2]).unwrap();
        let want = [[0, 0], [1, 0], [1, 1], [0, 1]];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(p.cell(k), Cell::new(w));
        }
    }

    #[test]
    fn box_paths_are_hamiltonian() {
        for dims in [vec![2, 2, 3], vec![3, 2, 2], vec![2, 2, 2, 2], vec![4, 3]] {
            let p = box_path(&dims).unwrap();
            assert_eq!(p.len(), dims.iter().product::<usize>());
        }
    }

    #[test]
    fn rejects_bad_paths() {
        let base = arc(make_box(&[2, 2]).unwrap());
        let skip = [[0, 0], [1, 1], [1, 0], [0, 1]].map(|c| Cell::new(&c));
        assert!(matches!(HamiltonianPath::from_cells(base.clone(), &skip), Err(Error::InvalidPath(_))));
        let dup = [[0, 0], [1, 0], [0, 0], [0, 1]].map(|c| Cell::new(&c));
        assert!(HamiltonianPath::from_cells(base, &dup).is_err());
    }

    #[test]
    fn respect_predicates() {
        let p = box_path(&[2, 2]).unwrap();
        let t = vertical_tiling(p.base(), 2).unwrap();
        assert!(respects_path(&p, &t));
        let on_path = Domino::new(Cell::new(&[0, 0, 0]), Cell::new(&[1, 0, 0])).unwrap();
        assert!(domino_respects_path(&p, &on_path));
        // (0,0) and (0,1) sit at positions 0 and 3.
        let off_path = Domino::new(Cell::new(&[0, 0, 1]), Cell::new(&[0, 1, 1])).unwrap();
        assert!(!domino_respects_path(&p, &off_path));
        assert_eq!(p.non_respecting_edges().len(), 1);
    }

    #[test]
    fn fold_vertical_is_vertical() {
        let line = box_path(&[6]).unwrap();
        let rect = box_path(&[2, 3]).unwrap();
        let t = vertical_tiling(line.base(), 4).unwrap();
        let f = fold(&line, &rect, &t).unwrap();
        assert_eq!(f, vertical_tiling(rect.base(), 4).unwrap());
        assert_eq!(unfold(&line, &rect, &f).unwrap(), t);
    }

    #[test]
    fn folding_condition_fails_backwards() {
        let line = box_path(&[4]).unwrap();
        let sq = box_path(&[2, 2]).unwrap();
        assert!(folding_condition(&line, &sq).is_ok());
        assert!(matches!(folding_condition(&sq, &line), Err(Error::Fold(_))));
    }

    #[test]
    fn unfold_reports_positions() {
        let line = box_path(&[4]).unwrap();
        let sq = box_path(&[2, 2]).unwrap();
        let region = arc(make_cylinder(sq.base(), 2).unwrap());
        let pairs: Vec<(Cell, Cell)> = [
            ([0, 0, 0], [0, 1, 0]),
            ([1, 0, 0], [1, 1, 0]),
            ([0, 0, 1], [1, 0, 1]),
            ([0, 1, 1], [1, 1, 1]),
        ]
        .iter()
        .map(|(a, b)| (Cell::new(a), Cell::new(b)))
        .collect();
        let t = Tiling::from_pairs(region, &pairs).unwrap();
        let err = unfold(&line, &sq, &t).unwrap_err();
        assert!(err.to_string().contains("(0, 3)"), "{err}");
    }

    #[test]
    fn flux_basics() {
        let p = box_path(&[2, 2, 3]).unwrap();
        for d in p.non_respecting_edges() {
            assert_eq!(flux(&p, d, Plug::EMPTY).unwrap(), FluxValue { minus: 0, zero: 0, plus: 0 });
            let [_, mid, _] = flux_intervals(&p, d).unwrap();
            assert!(mid > 0 && mid % 2 == 0);
            for f in flux_set(&p, d).unwrap() {
                assert_eq!(f.sum(), 0);
            }
        }
    }

    #[test]
    fn side_crossing_dominoes_have_small_central_flux() {
        let p = box_path(&[2, 2, 3]).unwrap();
        let same_layer: Vec<_> = p
            .non_respecting_edges()
            .into_iter()
            .filter(|&(a, b)| p.base().cell(a).coord(2) == p.base().cell(b).coord(2))
            .collect();
        assert_eq!(same_layer.len(), 3);
        for d in same_layer {
            assert_eq!(flux_intervals(&p, d).unwrap()[1], 2);
            for f in flux_set(&p, d).unwrap() {
                assert!(f.zero.abs() <= 1);
            }
        }
    }

    #[test]
    fn flux_rejects_incompatible_plug() {
        let p = box_path(&[2, 2]).unwrap();
        let d = p.non_respecting_edges()[0];
        let bad = Plug::new(p.base(), (1 << d.0) | (1 << d.1)).unwrap();
        assert!(matches!(flux(&p, d, bad), Err(Error::InvalidPlug(_))));
    }

    #[test]
    fn cork_filler_cases() {
        let base = make_box(&[2, 2, 2]).unwrap();
        let t = cork_filler(&base, Plug::EMPTY).unwrap();
        assert_eq!(t.region().len(), 0);

        let pair = Plug::new(&base, 0b11).unwrap();
        let t = cork_filler(&base, pair).unwrap();
        assert_eq!(t.region().cylinder_view().unwrap().height, 2);
        let horiz: Vec<_> = t.dominoes().into_iter().filter(|d| d.axis() != 3).collect();
        assert_eq!(horiz.len(), 1);

        let full = Plug::full(&base);
        let t = cork_filler(&base, full).unwrap();
        assert_eq!(t.region().cylinder_view().unwrap().height, 8);
        t.validate().unwrap();
    }

    #[test]
    fn cork_filler_all_plugs_small_base() {
        let base = make_box(&[2, 3]).unwrap();
        for p in enumerate_plugs(&base).unwrap() {
            let t = cork_filler(&base, p).unwrap();
            t.validate().unwrap();
            assert_eq!(t.region().len(), base.len() * p.len() - p.len());
        }
    }

    #[test]
    fn generators_on_square() {
        let p = box_path(&[2, 2]).unwrap();
        let gens = generator_set(&p, DEFAULT_HALF_HEIGHT_CAP).unwrap();
        assert!(!gens.is_empty());
        for g in &gens {
            g.tiling.validate().unwrap();
            assert_ne!(g.domino.axis(), 2);
        }
    }

    #[test]
    fn generators_on_223() {
        let p = box_path(&[2, 2, 3]).unwrap();
        let gens = generator_set(&p, DEFAULT_HALF_HEIGHT_CAP).unwrap();
        assert!(gens.iter().any(|g| g.twist == 1));
        for g in &gens {
            g.tiling.validate().unwrap();
            assert_eq!(non_respecting_dominoes(&p, &g.tiling), vec![g.domino]);
        }
    }

    #[test]
    fn equal_flux_connected_fixing_domino() {
        let p = box_path(&[2, 3]).unwrap();
        let mut checked = 0;
        for d in p.non_respecting_edges() {
            let mut by_flux: std::collections::BTreeMap<FluxValue, Vec<Plug>> = Default::default();
            for q in enumerate_plugs(p.base()).unwrap() {
                if let Ok(f) = flux(&p, d, q) {
                    by_flux.entry(f).or_default().push(q);
                }
            }
            for plugs in by_flux.values().filter(|v| v.len() > 1) {
                let g: Vec<_> = plugs.iter().map(|&q| generator_tiling(&p, d, q, 8).unwrap()).collect();
                let n = g.iter().map(|g| g.half_height).max().unwrap();
                let g: Vec<_> = plugs.iter().map(|&q| generator_tiling_at(&p, d, q, n).unwrap()).collect();
                let region = g[0].tiling.region();
                let fixed = [region.index_of(&g[0].domino.black).unwrap(), region.index_of(&g[0].domino.white).unwrap()];
                for other in &g[1..] {
                    let out = flip_connected_fixing(&g[0].tiling, &other.tiling, &fixed, 2_000_000).unwrap();
                    assert_eq!(out.status, ConnectStatus::Connected);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn path_respecting_tilings_keep_twist_when_unfolded() {
        let p = box_path(&[2, 2, 3]).unwrap();
        let line = line_path(12).unwrap();
        for n in 1..=3 {
            let region = arc(make_cylinder(p.base(), n).unwrap());
            let mut seen = 0;
            for t in enumerate_tilings(region, None) {
                if respects_path(&p, &t) {
                    let u = unfold(&line, &p, &t).unwrap();
                    assert_eq!(twist(&u), twist(&t));
                    seen += 1;
                }
            }
            assert!(seen > 0);
        }
    }

    #[test]
    fn fold_of_straight_tiling_respects_path() {
        let p = box_path(&[2, 2, 3]).unwrap();
        let line = line_path(12).unwrap();
        let region = arc(make_cylinder(line.base(), 2).unwrap());
        for t in enumerate_tilings(region, Some(500)) {
            assert!(respects_path(&p, &fold(&line, &p, &t).unwrap()));
        }
    }
}
