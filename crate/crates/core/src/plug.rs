use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::region::{Color, Region, MAX_BASE_CELLS};

/// A balanced subset of a base region, as a bitmask over the base's cell
/// indices (bit `i` is the cell with canonical index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Plug(u64);

impl Plug {
    pub const EMPTY: Plug = Plug(0);

    pub fn new(base: &Region, mask: u64) -> Result<Plug> {
        let p = Plug(mask);
        p.check(base)?;
        Ok(p)
    }

    pub fn from_mask_unchecked(mask: u64) -> Plug {
        Plug(mask)
    }

    pub fn full(base: &Region) -> Plug {
        assert!(base.len() <= MAX_BASE_CELLS);
        Plug(full_mask(base.len()))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 >> index & 1 == 1
    }

    pub fn is_disjoint(self, other: Plug) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Plug) -> Plug {
        Plug(self.0 | other.0)
    }

    pub fn without(self, index: usize) -> Plug {
        Plug(self.0 & !(1u64 << index))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn black_count(self, base: &Region) -> usize {
        self.indices()
            .filter(|&i| base.color(i) == Color::Black)
            .count()
    }

    /// Checks that the plug lies in `base` and is balanced.
    pub fn check(self, base: &Region) -> Result<()> {
        if base.len() > MAX_BASE_CELLS {
            return Err(Error::SizeLimit {
                what: "base region",
                size: base.len(),
                limit: MAX_BASE_CELLS,
            });
        }
        if self.0 & !full_mask(base.len()) != 0 {
            return Err(Error::InvalidPlug(format!(
                "mask {:#x} has bits outside a base of {} cells",
                self.0,
                base.len()
            )));
        }
        let b = self.black_count(base);
        if 2 * b != self.len() {
            return Err(Error::InvalidPlug(format!(
                "mask {:#x} is not balanced ({} black of {})",
                self.0,
                b,
                self.len()
            )));
        }
        Ok(())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Debug for Plug {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Plug({:#x})", self.0)
    }
}

impl fmt::Display for Plug {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}
