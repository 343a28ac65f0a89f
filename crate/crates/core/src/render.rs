//! ASCII drawings of tilings, one grid per floor.
//!
//! Floors are the slabs of the last coordinate. Inside a floor, the two
//! cells of a horizontal domino carry the same letter. A cell whose partner
//! lies in the floor above is drawn `+`, one whose partner lies below is
//! drawn `-`, and positions of the bounding box outside the region are `.`.
//! A base of dimension 3 or more is drawn as its `x_1 x x_2` slices side by
//! side, separated by `|`.

use std::fmt::Write;

use crate::region::Cell;
use crate::tiling::Tiling;

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

pub fn render(t: &Tiling) -> String {
    let region = t.region();
    let dim = region.dim();
    let mut out = String::new();
    if region.is_empty() {
        out.push_str("(empty)\n");
        return out;
    }
    if dim == 1 {
        let lo = region.cells().iter().map(|c| c.coord(0)).min().unwrap();
        let hi = region.cells().iter().map(|c| c.coord(0)).max().unwrap();
        let mut letter = 0;
        let mut glyph = vec![b'.'; (hi - lo + 1) as usize];
        for d in t.dominoes() {
            let ch = LETTERS[letter % LETTERS.len()];
            letter += 1;
            glyph[(d.black.coord(0) - lo) as usize] = ch;
            glyph[(d.white.coord(0) - lo) as usize] = ch;
        }
        out.push_str(std::str::from_utf8(&glyph).unwrap());
        out.push('\n');
        return out;
    }
    let (lo, hi) = bounds(t);
    let extent: Vec<i32> = (0..dim).map(|k| hi[k] - lo[k] + 1).collect();
    let slices: Vec<Vec<i32>> = slice_indices(&lo[2.min(dim - 1)..dim - 1], &hi[2.min(dim - 1)..dim - 1]);
    let (width, rows) = match dim {
        2 => (extent[0], 1),
        _ => (extent[0], extent[1]),
    };

    for h in lo[dim - 1]..=hi[dim - 1] {
        let _ = writeln!(out, "floor {h}:");
        let mut glyph = std::collections::HashMap::new();
        let mut letter = 0usize;
        for d in t.dominoes() {
            let (a, b) = (d.black, d.white);
            if a.last() != h && b.last() != h {
                continue;
            }
            if a.last() == b.last() {
                let ch = LETTERS[letter % LETTERS.len()] as char;
                letter += 1;
                glyph.insert(a, ch);
                glyph.insert(b, ch);
            } else {
                for (c, other) in [(a, b), (b, a)] {
                    if c.last() == h {
                        glyph.insert(c, if other.last() > h { '+' } else { '-' });
                    }
                }
            }
        }
        for r in (0..rows).rev() {
            let mut line = String::new();
            for (si, slice) in slices.iter().enumerate() {
                if si > 0 {
                    line.push_str(" | ");
                }
                for x in 0..width {
                    let mut coords = Vec::with_capacity(dim);
                    coords.push(lo[0] + x);
                    if dim > 2 {
                        coords.push(lo[1] + r);
                    }
                    coords.extend_from_slice(slice);
                    coords.push(h);
                    line.push(*glyph.get(&Cell::new(&coords)).unwrap_or(&'.'));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out
}

fn bounds(t: &Tiling) -> (Vec<i32>, Vec<i32>) {
    let dim = t.region().dim();
    let mut lo = vec![i32::MAX; dim];
    let mut hi = vec![i32::MIN; dim];
    for c in t.region().cells() {
        for k in 0..dim {
            lo[k] = lo[k].min(c.coord(k));
            hi[k] = hi[k].max(c.coord(k));
        }
    }
    (lo, hi)
}

/// All coordinate tuples of the box `lo..=hi`, first coordinate fastest.
fn slice_indices(lo: &[i32], hi: &[i32]) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    for k in 0..lo.len() {
        let mut next = Vec::new();
        for v in lo[k]..=hi[k] {
            for prefix in &out {
                let mut p: Vec<i32> = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}
