//! JSON export and a binary cache of transfer matrices.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{TransferEntry, TransferMatrices};
use crate::error::{Error, Result};
use crate::plug::Plug;
use crate::region::Region;

const MAGIC: &[u8; 4] = b"DTMX";
const VERSION: u32 = 1;

/// Dense export: plug masks in index order, then both matrices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatricesJson {
    pub plugs: Vec<u64>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u64>>,
    #[serde(rename = "Atilde")]
    pub a_tilde: Vec<Vec<i64>>,
}

impl MatricesJson {
    pub fn from_matrices(m: &TransferMatrices) -> Self {
        let n = m.len();
        let mut a = vec![vec![0u64; n]; n];
        let mut t = vec![vec![0i64; n]; n];
        for p in 0..n {
            for e in m.row(p) {
                a[p][e.col as usize] = e.count;
                t[p][e.col as usize] = e.signed;
            }
        }
        MatricesJson {
            plugs: m.plugs().iter().map(|p| p.mask()).collect(),
            a,
            a_tilde: t,
        }
    }
}

pub fn save_cache(m: &TransferMatrices, path: &Path) -> Result<()> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let spec = m.base().spec();
    out.extend_from_slice(&(spec.len() as u32).to_le_bytes());
    out.extend_from_slice(spec.as_bytes());
    out.extend_from_slice(&(m.len() as u32).to_le_bytes());
    for p in m.plugs() {
        out.extend_from_slice(&p.mask().to_le_bytes());
    }
    out.extend_from_slice(&(m.nnz() as u64).to_le_bytes());
    for p in 0..m.len() {
        for e in m.row(p) {
            out.extend_from_slice(&(p as u32).to_le_bytes());
            out.extend_from_slice(&e.col.to_le_bytes());
            out.extend_from_slice(&e.count.to_le_bytes());
            out.extend_from_slice(&e.signed.to_le_bytes());
            out.push(e.vertical as u8);
        }
    }
    std::fs::File::create(path)?.write_all(&out)?;
    Ok(())
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let s = self
            .data
            .get(self.pos..self.pos + n)
            .ok_or_else(|| Error::Io("cache file is truncated".into()))?;
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Loads a cache written by [`save_cache`] for the same base.
pub fn load_cache(base: &Region, path: &Path) -> Result<TransferMatrices> {
    let mut data = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut data)?;
    let mut r = Reader { data: &data, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Io("not a transfer cache".into()));
    }
    let v = r.u32()?;
    if v != VERSION {
        return Err(Error::Io(format!("cache version {v}, expected {VERSION}")));
    }
    let len = r.u32()? as usize;
    let spec = String::from_utf8(r.take(len)?.to_vec()).map_err(|e| Error::Io(e.to_string()))?;
    if spec != base.spec() {
        return Err(Error::RegionMismatch(format!("cache is for {spec}, not {}", base.spec())));
    }
    let n = r.u32()? as usize;
    let plugs = (0..n)
        .map(|_| r.u64().map(Plug::from_mask_unchecked))
        .collect::<Result<Vec<_>>>()?;
    let nnz = r.u64()? as usize;
    let mut rows = vec![Vec::new(); n];
    for _ in 0..nnz {
        let p = r.u32()? as usize;
        let col = r.u32()?;
        let count = r.u64()?;
        let signed = r.u64()? as i64;
        let vertical = r.take(1)?[0] == 1;
        if p >= n || col as usize >= n {
            return Err(Error::Io("cache entry out of range".into()));
        }
        rows[p].push(TransferEntry {
            col,
            count,
            signed,
            vertical,
        });
    }
    Ok(TransferMatrices::from_parts(Arc::new(base.clone()), plugs, rows))
}
