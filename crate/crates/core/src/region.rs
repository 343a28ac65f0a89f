//! Cells, regions and the canonical labeling.
//!
//! Cells are unit cubes identified by their minimal corner. Every region keeps
//! its cells sorted colexicographically (last coordinate most significant), and
//! the black and white cells are labeled independently in that order. The twist
//! of a tiling depends on this labeling up to a global sign, so all regions use
//! the same convention.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::plug::Plug;

pub const MAX_DIM: usize = 8;
pub const MAX_REGION_CELLS: usize = 1 << 20;
pub const MAX_BASE_CELLS: usize = 64;
pub(crate) const NONE: u32 = u32::MAX;

/// A unit cube `[x_1,x_1+1] x ... x [x_n,x_n+1]`, stored as its minimal corner.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    dim: u8,
    coords: [i32; MAX_DIM],
}

impl Cell {
    pub fn new(coords: &[i32]) -> Self {
        Self::try_new(coords).expect("cell dimension out of range")
    }

    pub fn try_new(coords: &[i32]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Error::InvalidRegion(format!(
                "cell dimension {} not in 1..={MAX_DIM}",
                coords.len()
            )));
        }
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Cell {
            dim: coords.len() as u8,
            coords: c,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.dim as usize]
    }

    pub fn coord(&self, axis: usize) -> i32 {
        self.coords()[axis]
    }

    pub fn color(&self) -> Color {
        let s: i64 = self.coords().iter().map(|&x| x as i64).sum();
        if s.rem_euclid(2) == 0 {
            Color::Black
        } else {
            Color::White
        }
    }

    pub fn shifted(&self, axis: usize, delta: i32) -> Cell {
        let mut c = *self;
        c.coords[axis] += delta;
        c
    }

    /// Appends a new last coordinate.
    pub fn lift(&self, height: i32) -> Cell {
        assert!(self.dim() < MAX_DIM);
        let mut c = *self;
        c.coords[self.dim()] = height;
        c.dim += 1;
        c
    }

    /// Drops the last coordinate.
    pub fn base(&self) -> Cell {
        assert!(self.dim() > 1);
        let mut c = *self;
        c.dim -= 1;
        c.coords[c.dim()] = 0;
        c
    }

    pub fn last(&self) -> i32 {
        self.coords[self.dim() - 1]
    }

    /// Axis along which `self` and `other` differ by one, if they are adjacent.
    pub fn adjacency_axis(&self, other: &Cell) -> Option<usize> {
        if self.dim != other.dim {
            return None;
        }
        let mut axis = None;
        for k in 0..self.dim() {
            let d = (self.coords[k] - other.coords[k]).abs();
            match d {
                0 => {}
                1 if axis.is_none() => axis = Some(k),
                _ => return None,
            }
        }
        axis
    }
}

impl Ord for Cell {
    /// Colexicographic: the last coordinate is most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| {
            for k in (0..self.dim()).rev() {
                match self.coords[k].cmp(&other.coords[k]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn sign(self) -> i32 {
        match self {
            Color::Black => 1,
            Color::White => -1,
        }
    }
}

/// How a region was built. Only used for spec strings and cylinder views;
/// equality of regions ignores it.
#[derive(Clone, Debug)]
pub enum RegionKind {
    Generic,
    Box(Vec<usize>),
    Cylinder {
        base: Arc<Region>,
        height: usize,
    },
    Cork {
        base: Arc<Region>,
        height: usize,
        bottom: Plug,
        top: Plug,
    },
}

/// A region seen as `base x [0,height]` with plug-shaped notches removed at
/// the bottom and top floors (both empty for plain cylinders).
#[derive(Clone, Debug)]
pub struct CylinderView {
    pub base: Arc<Region>,
    pub height: usize,
    pub bottom: Plug,
    pub top: Plug,
}

#[derive(Clone)]
pub struct Region {
    dim: usize,
    cells: Vec<Cell>,
    colors: Vec<Color>,
    labels: Vec<u32>,
    blacks: Vec<u32>,
    whites: Vec<u32>,
    lo: [i32; MAX_DIM],
    extent: [usize; MAX_DIM],
    grid: Vec<u32>,
    steps: Vec<u32>,
    kind: RegionKind,
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.cells == other.cells
    }
}

impl Eq for Region {}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Region({})", self.spec())
    }
}

impl Region {
    /// A region with an arbitrary cell set.
    pub fn from_cells(dim: usize, cells: Vec<Cell>) -> Result<Region> {
        Self::build(dim, cells, RegionKind::Generic)
    }

    fn build(dim: usize, mut cells: Vec<Cell>, kind: RegionKind) -> Result<Region> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidRegion(format!(
                "dimension {dim} not in 1..={MAX_DIM}"
            )));
        }
        if cells.len() > MAX_REGION_CELLS {
            return Err(Error::RegionTooLarge {
                cells: cells.len(),
                limit: MAX_REGION_CELLS,
            });
        }
        if let Some(c) = cells.iter().find(|c| c.dim() != dim) {
            return Err(Error::InvalidRegion(format!(
                "cell {c} does not have dimension {dim}"
            )));
        }
        cells.sort();
        if let Some(w) = cells.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidRegion(format!("duplicate cell {}", w[0])));
        }

        let mut lo = [0i32; MAX_DIM];
        let mut extent = [1usize; MAX_DIM];
        if !cells.is_empty() {
            for k in 0..dim {
                let min = cells.iter().map(|c| c.coord(k)).min().unwrap();
                let max = cells.iter().map(|c| c.coord(k)).max().unwrap();
                lo[k] = min;
                extent[k] = (max - min) as usize + 1;
            }
        } else {
            extent = [0; MAX_DIM];
        }
        let volume = extent[..dim].iter().product::<usize>();
        if volume > 4 * MAX_REGION_CELLS {
            return Err(Error::InvalidRegion(format!(
                "bounding box volume {volume} too large"
            )));
        }

        let mut grid = vec![NONE; volume];
        let colors: Vec<Color> = cells.iter().map(Cell::color).collect();
        let mut labels = Vec::with_capacity(cells.len());
        let mut blacks = Vec::new();
        let mut whites = Vec::new();
        for (i, c) in cells.iter().enumerate() {
            match colors[i] {
                Color::Black => {
                    labels.push(blacks.len() as u32);
                    blacks.push(i as u32);
                }
                Color::White => {
                    labels.push(whites.len() as u32);
                    whites.push(i as u32);
                }
            }
            let g = grid_offset(&lo, &extent, dim, c).expect("cell inside its bounding box");
            grid[g] = i as u32;
        }

        let mut region = Region {
            dim,
            cells,
            colors,
            labels,
            blacks,
            whites,
            lo,
            extent,
            grid,
            steps: Vec::new(),
            kind,
        };
        let mut steps = vec![NONE; region.cells.len() * 2 * dim];
        for i in 0..region.cells.len() {
            for axis in 0..dim {
                for (s, delta) in [(0usize, -1i32), (1, 1)] {
                    let nb = region.cells[i].shifted(axis, delta);
                    if let Some(j) = region.index_of(&nb) {
                        steps[i * 2 * dim + 2 * axis + s] = j as u32;
                    }
                }
            }
        }
        region.steps = steps;
        Ok(region)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, index: usize) -> Cell {
        self.cells[index]
    }

    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    pub fn color(&self, index: usize) -> Color {
        self.colors[index]
    }

    /// Label of a cell within its color class (0-based).
    pub fn label(&self, index: usize) -> usize {
        self.labels[index] as usize
    }

    /// Cell indices of the black cells, in label order.
    pub fn blacks(&self) -> &[u32] {
        &self.blacks
    }

    pub fn whites(&self) -> &[u32] {
        &self.whites
    }

    pub fn black_count(&self) -> usize {
        self.blacks.len()
    }

    pub fn white_count(&self) -> usize {
        self.whites.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.blacks.len() == self.whites.len()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.index_of(cell).is_some()
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        if cell.dim() != self.dim || self.cells.is_empty() {
            return None;
        }
        let g = grid_offset(&self.lo, &self.extent, self.dim, cell)?;
        match self.grid[g] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    /// Neighbour of `index` in direction `dir = 2 * axis + (0 for -, 1 for +)`.
    #[inline]
    pub fn step(&self, index: usize, dir: usize) -> Option<usize> {
        match self.steps[index * 2 * self.dim + dir] {
            NONE => None,
            j => Some(j as usize),
        }
    }

    #[inline]
    pub(crate) fn step_raw(&self, index: usize, dir: usize) -> u32 {
        self.steps[index * 2 * self.dim + dir]
    }

    /// Neighbour cell indices of `index` in ascending (canonical) order.
    pub fn neighbor_indices(&self, index: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..2 * self.dim)
            .filter_map(|d| self.step(index, d))
            .collect();
        v.sort_unstable();
        v
    }

    /// Cells of the region sharing a codimension-one face with `cell`.
    pub fn neighbors(&self, cell: &Cell) -> Result<Vec<Cell>> {
        let i = self
            .index_of(cell)
            .ok_or_else(|| Error::CellNotInRegion(cell.to_string()))?;
        Ok(self
            .neighbor_indices(i)
            .into_iter()
            .map(|j| self.cells[j])
            .collect())
    }

    /// Direction index from cell `a` to the adjacent cell `b`.
    pub fn direction(&self, a: usize, b: usize) -> Option<usize> {
        (0..2 * self.dim).find(|&d| self.step_raw(a, d) == b as u32)
    }

    /// All edges as `(black index, white index)` pairs, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for &b in &self.blacks {
            for d in 0..2 * self.dim {
                let w = self.step_raw(b as usize, d);
                if w != NONE {
                    out.push((b, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn cylinder_view(&self) -> Option<CylinderView> {
        match &self.kind {
            RegionKind::Cylinder { base, height } => Some(CylinderView {
                base: base.clone(),
                height: *height,
                bottom: Plug::EMPTY,
                top: Plug::EMPTY,
            }),
            RegionKind::Cork {
                base,
                height,
                bottom,
                top,
            } => Some(CylinderView {
                base: base.clone(),
                height: *height,
                bottom: *bottom,
                top: *top,
            }),
            RegionKind::Box(dims) if dims.len() >= 2 => {
                let base = make_box(&dims[..dims.len() - 1]).ok()?;
                Some(CylinderView {
                    base: Arc::new(base),
                    height: dims[dims.len() - 1],
                    bottom: Plug::EMPTY,
                    top: Plug::EMPTY,
                })
            }
            _ => None,
        }
    }

    /// Canonical spec string, accepted back by [`Region::parse_spec`].
    pub fn spec(&self) -> String {
        match &self.kind {
            RegionKind::Box(dims) => format!("box:{}", join(dims)),
            RegionKind::Cylinder { base, height } => match base.kind() {
                RegionKind::Box(dims) => format!("cyl:{}xN={}", join(dims), height),
                _ => self.cells_spec(),
            },
            RegionKind::Cork {
                base,
                height,
                bottom,
                top,
            } => match base.kind() {
                RegionKind::Box(dims) => format!(
                    "cork:{}xN={};p0={:#x};pN={:#x}",
                    join(dims),
                    height,
                    bottom.mask(),
                    top.mask()
                ),
                _ => self.cells_spec(),
            },
            RegionKind::Generic => self.cells_spec(),
        }
    }

    fn cells_spec(&self) -> String {
        let body: Vec<String> = self
            .cells
            .iter()
            .map(|c| {
                c.coords()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("cells:d={}:{}", self.dim, body.join(";"))
    }

    /// Parses `box:2,2,2,2`, `cyl:2,2,3xN=4`, `cork:2,2,2xN=8;p0=0x0;pN=0xff`
    /// or `cells:d=2:0,0;1,0`.
    pub fn parse_spec(spec: &str) -> Result<Region> {
        let spec = spec.trim();
        let bad = |m: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("bad region spec `{spec}`: {m}"),
        };
        let (head, rest) = spec.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        match head {
            "box" => make_box(&parse_dims(rest).map_err(|m| bad(&m))?),
            "cyl" => {
                let (dims, n) = rest.split_once("xN=").ok_or_else(|| bad("missing `xN=`"))?;
                let base = make_box(&parse_dims(dims).map_err(|m| bad(&m))?)?;
                let n: usize = n.parse().map_err(|_| bad("bad height"))?;
                make_cylinder(&base, n)
            }
            "cork" => {
                let mut parts = rest.split(';');
                let first = parts.next().unwrap_or("");
                let (dims, n) = first.split_once("xN=").ok_or_else(|| bad("missing `xN=`"))?;
                let base = make_box(&parse_dims(dims).map_err(|m| bad(&m))?)?;
                let n: usize = n.parse().map_err(|_| bad("bad height"))?;
                let mut p0 = Plug::EMPTY;
                let mut pn = Plug::EMPTY;
                for part in parts {
                    let (key, value) = part.split_once('=').ok_or_else(|| bad("bad plug"))?;
                    let mask = parse_mask(value).ok_or_else(|| bad("bad plug mask"))?;
                    match key {
                        "p0" => p0 = Plug::new(&base, mask)?,
                        "pN" => pn = Plug::new(&base, mask)?,
                        _ => return Err(bad("unknown cork key")),
                    }
                }
                make_cork(&base, n, p0, pn)
            }
            "cells" => {
                let rest = rest.strip_prefix("d=").ok_or_else(|| bad("missing `d=`"))?;
                let (d, body) = rest.split_once(':').ok_or_else(|| bad("missing `:`"))?;
                let dim: usize = d.parse().map_err(|_| bad("bad dimension"))?;
                let mut cells = Vec::new();
                for tuple in body.split(';').filter(|s| !s.is_empty()) {
                    let coords: Vec<i32> = tuple
                        .split(',')
                        .map(|x| x.trim().parse::<i32>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad("bad coordinate"))?;
                    if coords.len() != dim {
                        return Err(bad("coordinate count differs from dimension"));
                    }
                    cells.push(Cell::try_new(&coords)?);
                }
                Region::from_cells(dim, cells)
            }
            _ => Err(bad("unknown region kind")),
        }
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Region::parse_spec(s)
    }
}

fn grid_offset(lo: &[i32; MAX_DIM], extent: &[usize; MAX_DIM], dim: usize, c: &Cell) -> Option<usize> {
    let mut g = 0usize;
    for k in (0..dim).rev() {
        let x = c.coord(k) - lo[k];
        if x < 0 || x as usize >= extent[k] {
            return None;
        }
        g = g * extent[k] + x as usize;
    }
    Some(g)
}

fn join(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_dims(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad dimension `{x}`")))
        .collect()
}

fn parse_mask(s: &str) -> Option<u64> {
    match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

/// The box `[0,L_1] x ... x [0,L_n]`.
pub fn make_box(dims: &[usize]) -> Result<Region> {
    if dims.is_empty() {
        return Err(Error::InvalidRegion("box needs at least one dimension".into()));
    }
    if dims.iter().any(|&d| d == 0) {
        return Err(Error::InvalidRegion("box dimensions must be positive".into()));
    }
    if dims.len() > MAX_DIM {
        return Err(Error::InvalidRegion(format!("at most {MAX_DIM} dimensions")));
    }
    let total = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&t| t <= MAX_REGION_CELLS)
        .ok_or(Error::RegionTooLarge {
            cells: usize::MAX,
            limit: MAX_REGION_CELLS,
        })?;
    let mut cells = Vec::with_capacity(total);
    let mut coords = vec![0i32; dims.len()];
    for _ in 0..total {
        cells.push(Cell::new(&coords));
        for k in 0..dims.len() {
            coords[k] += 1;
            if (coords[k] as usize) < dims[k] {
                break;
            }
            coords[k] = 0;
        }
    }
    Region::build(dims.len(), cells, RegionKind::Box(dims.to_vec()))
}

/// `base x [0,height]`, with the base cells lifted to heights `0..height`.
pub fn make_cylinder(base: &Region, height: usize) -> Result<Region> {
    let base = Arc::new(base.clone());
    cylinder_from_arc(base, height)
}

pub(crate) fn cylinder_from_arc(base: Arc<Region>, height: usize) -> Result<Region> {
    if base.dim() >= MAX_DIM {
        return Err(Error::InvalidRegion("base dimension too large".into()));
    }
    let mut cells = Vec::with_capacity(base.len() * height);
    for h in 0..height {
        cells.extend(base.cells().iter().map(|c| c.lift(h as i32)));
    }
    let dim = base.dim() + 1;
    Region::build(dim, cells, RegionKind::Cylinder { base, height })
}

/// The cork: the cylinder minus `bottom x [0,1]` and `top x [height-1,height]`.
pub fn make_cork(base: &Region, height: usize, bottom: Plug, top: Plug) -> Result<Region> {
    bottom.check(base)?;
    top.check(base)?;
    if height == 0 && !(bottom.is_empty() && top.is_empty()) {
        return Err(Error::InvalidPlug("a cork of height 0 only admits empty plugs".into()));
    }
    if height == 1 && !bottom.is_disjoint(top) {
        return Err(Error::InvalidPlug(
            "plugs of a height-1 cork must be disjoint".into(),
        ));
    }
    let base = Arc::new(base.clone());
    let mut cells = Vec::with_capacity(base.len() * height);
    for h in 0..height {
        for (i, c) in base.cells().iter().enumerate() {
            let removed = (h == 0 && bottom.contains(i)) || (h + 1 == height && top.contains(i));
            if !removed {
                cells.push(c.lift(h as i32));
            }
        }
    }
    let dim = base.dim() + 1;
    Region::build(
        dim,
        cells,
        RegionKind::Cork {
            base,
            height,
            bottom,
            top,
        },
    )
}
