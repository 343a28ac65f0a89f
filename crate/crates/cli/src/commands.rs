use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use domino_core::hamiltonian::{self, box_path, HamiltonianPath, PathJson};
use domino_core::kasteleyn::{defect_by_determinant, defect_by_enumeration, twist as tiling_twist};
use domino_core::moves::{flip_components, minimal_padding, ConnectStatus, ReportStatus};
use domino_core::tiling::{count_tilings, parse, serialize, TilingJson};
use domino_core::transfer::{build_transfer, save_cache, spectral_estimates, MatricesJson};
use domino_core::{Plug, Region, RegionKind, Tiling};

pub struct Outcome {
    pub region: String,
    pub payload: Value,
    pub text: String,
    pub indeterminate: bool,
}

impl Outcome {
    fn ok(region: String, payload: Value, text: String) -> Self {
        Outcome {
            region,
            payload,
            text,
            indeterminate: false,
        }
    }
}

pub enum DefectMethod {
    Det,
    Enum,
    Transfer,
}

fn region(spec: &str) -> Result<Region> {
    Ok(Region::parse_spec(spec)?)
}

fn read_tiling(path: &str) -> Result<Tiling> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    if text.trim_start().starts_with('{') {
        let j: TilingJson = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        return Ok(j.to_tiling()?);
    }
    parse(&text).with_context(|| format!("parsing {path}"))
}

fn box_dims(spec: &str) -> Result<Vec<usize>> {
    match region(spec)?.kind() {
        RegionKind::Box(dims) => Ok(dims.clone()),
        _ => bail!("`{spec}` is not a box; paths are built for boxes only"),
    }
}

pub fn count(spec: &str, transfer: bool) -> Result<Outcome> {
    let r = region(spec)?;
    let n = if transfer {
        let view = r
            .cylinder_view()
            .ok_or_else(|| anyhow!("--method transfer needs a cylinder or cork region"))?;
        let m = build_transfer(&view.base)?;
        if view.bottom.is_empty() && view.top.is_empty() {
            m.cylinder_count(view.height)
        } else {
            m.cork_count(view.height, view.bottom, view.top)?
        }
    } else {
        count_tilings(&r)
    };
    Ok(Outcome::ok(
        r.spec(),
        json!({ "count": n.to_string() }),
        format!("{n}\n"),
    ))
}

pub fn components(spec: &str, budget: u64) -> Result<Outcome> {
    let r = region(spec)?;
    let rep = flip_components(&r, budget)?;
    let mut groups: Vec<(u64, u8, u64)> = Vec::new();
    for (size, tw) in rep.census() {
        match groups.iter_mut().find(|g| g.0 == size && g.1 == tw) {
            Some(g) => g.2 += 1,
            None => groups.push((size, tw, 1)),
        }
    }
    let partial = rep.status == ReportStatus::Partial;
    let mut text = format!(
        "{} tilings, {} components{}\n",
        rep.total,
        rep.components.len(),
        if partial { " (partial: budget reached)" } else { "" }
    );
    for &(size, tw, k) in &groups {
        let _ = writeln!(text, "  {k} x size {size}, twist {tw}");
    }
    let _ = writeln!(text, "flip edges {}, twist violations {}", rep.flip_edges, rep.twist_violations);
    let payload = json!({
        "total": rep.total,
        "components": rep.components.len(),
        "census": groups.iter().map(|&(size, twist, count)| json!({
            "size": size, "twist": twist, "count": count
        })).collect::<Vec<_>>(),
        "flip_edges": rep.flip_edges,
        "twist_violations": rep.twist_violations,
        "complete": !partial,
    });
    Ok(Outcome {
        region: r.spec(),
        payload,
        text,
        indeterminate: partial,
    })
}

pub fn twist(path: &str) -> Result<Outcome> {
    let t = read_tiling(path)?;
    let tw = tiling_twist(&t);
    Ok(Outcome::ok(t.region().spec(), json!({ "twist": tw }), format!("{tw}\n")))
}

pub fn defect(spec: &str, method: DefectMethod, limit: Option<u64>) -> Result<Outcome> {
    let r = region(spec)?;
    let (d, name) = match method {
        DefectMethod::Det => (defect_by_determinant(&r)?, "det"),
        DefectMethod::Enum => (defect_by_enumeration(&r, limit)?, "enum"),
        DefectMethod::Transfer => {
            let view = r
                .cylinder_view()
                .ok_or_else(|| anyhow!("--method transfer needs a cylinder region"))?;
            if !(view.bottom.is_empty() && view.top.is_empty()) {
                bail!("--method transfer computes defects of plain cylinders only");
            }
            (build_transfer(&view.base)?.cylinder_defect(view.height), "transfer")
        }
    };
    Ok(Outcome::ok(
        r.spec(),
        json!({ "defect": d.to_string(), "method": name }),
        format!("{d}\n"),
    ))
}

pub fn transfer_export(spec: &str, out: Option<&str>, binary: bool) -> Result<Outcome> {
    let base = region(spec)?;
    let m = build_transfer(&base)?;
    let summary = json!({ "plugs": m.len(), "nnz": m.nnz() });
    match (out, binary) {
        (None, true) => bail!("--format binary needs --out"),
        (Some(path), true) => {
            save_cache(&m, Path::new(path))?;
            Ok(Outcome::ok(base.spec(), summary, format!("wrote {path}\n")))
        }
        (Some(path), false) => {
            let s = serde_json::to_string(&MatricesJson::from_matrices(&m))?;
            std::fs::write(path, s + "\n").with_context(|| format!("writing {path}"))?;
            Ok(Outcome::ok(base.spec(), summary, format!("wrote {path}\n")))
        }
        (None, false) => {
            let j = serde_json::to_value(MatricesJson::from_matrices(&m))?;
            let text = serde_json::to_string(&j)? + "\n";
            Ok(Outcome::ok(base.spec(), j, text))
        }
    }
}

pub fn spectral(spec: &str, seed: u64) -> Result<Outcome> {
    let base = region(spec)?;
    let m = build_transfer(&base)?;
    let s = spectral_estimates(&m, seed)?;
    let text = format!(
        "lambda {:.9}\nlambda_tilde {:.9}\nratio {:.9}\n",
        s.lambda, s.lambda_tilde, s.ratio
    );
    Ok(Outcome::ok(base.spec(), serde_json::to_value(s)?, text))
}

pub fn padding(t0: &str, t1: &str, max_m: usize, budget: u64) -> Result<Outcome> {
    let (a, b) = (read_tiling(t0)?, read_tiling(t1)?);
    let rep = minimal_padding(&a, &b, max_m, budget)?;
    let mut text = String::new();
    for (m, o) in &rep.attempts {
        let _ = writeln!(text, "M={m}: {:?} (visited {})", o.status, o.visited);
    }
    match rep.minimal {
        Some(m) => {
            let _ = writeln!(text, "minimal M = {m}");
        }
        None => {
            let _ = writeln!(text, "no M <= {max_m} connects the tilings");
        }
    }
    let indeterminate = rep.minimal.is_none()
        && rep
            .attempts
            .iter()
            .any(|(_, o)| o.status == ConnectStatus::Indeterminate);
    Ok(Outcome {
        region: a.region().spec(),
        payload: serde_json::to_value(&rep)?,
        text,
        indeterminate,
    })
}

pub fn generators(spec: &str, cap: usize, out: Option<&str>) -> Result<Outcome> {
    let path = box_path(&box_dims(spec)?)?;
    let gens = hamiltonian::generator_set(&path, cap)?;
    let mut text = String::new();
    let mut bundle = String::new();
    let mut list = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let line = format!(
            "d={} plug={:#x} N={} flux={} twist={}",
            g.domino,
            g.plug.mask(),
            g.half_height,
            g.flux,
            g.twist
        );
        let _ = writeln!(text, "{line}");
        let _ = write!(bundle, "# generator {i} {line}\n{}\n", serialize(&g.tiling));
        list.push(json!({
            "domino": g.domino.to_string(),
            "plug": g.plug.mask(),
            "half_height": g.half_height,
            "flux": g.flux,
            "twist": g.twist,
        }));
    }
    let twist_one = gens.iter().filter(|g| g.twist == 1).count();
    let _ = writeln!(text, "{} generators, {} of twist 1", gens.len(), twist_one);
    if let Some(p) = out {
        std::fs::write(p, bundle).with_context(|| format!("writing {p}"))?;
    }
    Ok(Outcome::ok(
        path.base().spec(),
        json!({ "path": PathJson::from_path(&path), "generators": list }),
        text,
    ))
}

fn parse_base_domino(path: &HamiltonianPath, s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(")-(")
        .ok_or_else(|| anyhow!("expected `(..)-(..)`, got `{s}`"))?;
    let cell = |x: &str| -> Result<usize> {
        let inner = x.trim().trim_start_matches('(').trim_end_matches(')');
        let coords: Vec<i32> = inner
            .split(',')
            .map(|v| v.trim().parse::<i32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| anyhow!("bad coordinates `{inner}`"))?;
        let c = domino_core::Cell::try_new(&coords)?;
        path.base()
            .index_of(&c)
            .ok_or_else(|| anyhow!("cell {c} is not in the base"))
    };
    Ok((cell(a)?, cell(b)?))
}

fn parse_mask(s: &str) -> Result<u64> {
    let v = match s.strip_prefix("0x") {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    v.map_err(|_| anyhow!("bad plug mask `{s}`"))
}

pub fn flux(spec: &str, domino: &str, plug: Option<&str>) -> Result<Outcome> {
    let path = box_path(&box_dims(spec)?)?;
    let d = parse_base_domino(&path, domino)?;
    let intervals = hamiltonian::flux_intervals(&path, d)?;
    match plug {
        Some(p) => {
            let p = Plug::new(path.base(), parse_mask(p)?)?;
            let f = hamiltonian::flux(&path, d, p)?;
            Ok(Outcome::ok(
                path.base().spec(),
                json!({ "intervals": intervals, "flux": f }),
                format!("{f}\n"),
            ))
        }
        None => {
            let w = hamiltonian::flux_witnesses(&path, d)?;
            let mut text = String::new();
            for (f, p) in &w {
                let _ = writeln!(text, "{f} plug={:#x}", p.mask());
            }
            let list: Vec<Value> = w
                .iter()
                .map(|(f, p)| json!({ "flux": f, "plug": p.mask() }))
                .collect();
            Ok(Outcome::ok(
                path.base().spec(),
                json!({ "intervals": intervals, "fluxes": list }),
                text,
            ))
        }
    }
}

pub fn fold(from: &str, to: &str, tiling: &str, unfold: bool) -> Result<Outcome> {
    let p1 = box_path(&box_dims(from)?)?;
    let p2 = box_path(&box_dims(to)?)?;
    let t = read_tiling(tiling)?;
    let u = if unfold {
        hamiltonian::unfold(&p1, &p2, &t)?
    } else {
        hamiltonian::fold(&p1, &p2, &t)?
    };
    let text = serialize(&u);
    Ok(Outcome::ok(u.region().spec(), json!({ "tiling": text }), text))
}

pub fn render(tiling: &str) -> Result<Outcome> {
    let t = read_tiling(tiling)?;
    let text = domino_core::render::render(&t);
    Ok(Outcome::ok(t.region().spec(), json!({ "drawing": text }), text))
}
