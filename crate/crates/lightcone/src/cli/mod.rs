//! Command bodies for the `lightcone` binary. Each returns the text to
//! write so the binary only handles arguments and files.

pub mod dsl;
pub mod json;
pub mod mesh;
pub mod verify;

use crate::catalog::{self, build, CatalogKind};
use crate::classifier::{classify_with, ruling_from_frame, ClassifyOptions};
use crate::cone::HermMatrix;
use crate::error::{Error, Result};
use crate::surfaces::PlaneSpec;
use mesh::{build_mesh, to_obj, Mesh, MeshSpec};
use serde_json::json;
use std::collections::BTreeMap;

/// `name k=v ...` as accepted by `lightcone surface`.
pub fn parse_kind(name: &str, params: &[String]) -> Result<CatalogKind> {
    let mut kv = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::BadParameter(format!("expected key=value, got `{p}`")))?;
        let x: f64 = v
            .parse()
            .map_err(|_| Error::BadParameter(format!("`{k}` needs a number, got `{v}`")))?;
        kv.insert(k.to_string(), x);
    }
    let mut take = |k: &str| {
        kv.remove(k)
            .ok_or_else(|| Error::BadParameter(format!("{name} needs {k}=...")))
    };
    let kind = match name {
        "elliptic-catenoid" => CatalogKind::EllipticCatenoid(take("a")?),
        "hyperbolic-catenoid" => CatalogKind::HyperbolicCatenoid(take("b")?),
        "parabolic-catenoid" => CatalogKind::ParabolicCatenoid(take("c")?),
        "helicoid" => CatalogKind::Helicoid(take("a")?, take("b")?),
        "conformal-helicoid" => CatalogKind::ConformalHelicoid(take("a")?),
        "horosphere" => CatalogKind::Horosphere,
        "plane" => CatalogKind::Plane(PlaneSpec {
            m: HermMatrix::new(take("m0")?, take("m1")?, take("m2")?, take("m3")?),
            q: take("q")?,
        }),
        other => return Err(Error::BadParameter(format!("unknown surface `{other}`"))),
    };
    if let Some(k) = kv.keys().next() {
        return Err(Error::BadParameter(format!(
            "unused parameter `{k}` for {name}"
        )));
    }
    Ok(kind)
}

/// Mesh and OBJ text. A domain of `None` uses the catalog default.
pub fn cmd_surface(
    kind: CatalogKind,
    mut spec: MeshSpec,
    domain: Option<[f64; 4]>,
) -> Result<(Mesh, String)> {
    let s = build(kind)?;
    spec.domain = domain.unwrap_or(s.immersion.domain);
    let m = build_mesh(&s.immersion, &spec)?;
    let obj = to_obj(&m);
    Ok((m, obj))
}

/// Locus CSV over a ∈ [a0, a1] and the census JSON for radius r.
pub fn cmd_family(r: f64, a0: f64, a1: f64, n: usize) -> Result<(String, String)> {
    let csv = catalog::locus_csv(a0, a1, n);
    let members = catalog::family_members(r)?;
    let census = catalog::census(r)?;
    let report = json!({
        "radius": r,
        "census": census,
        "members": members,
        "markers": {
            "cusp": -0.25,
            "max_modulus": 0.5 / 3f64.sqrt(),
            "real_axis": [-0.25, -0.5 / 3f64.sqrt(), 0.5 / 3f64.sqrt()],
        },
    });
    Ok((csv, json::to_string(&report)))
}

/// Classification JSON for a frame spec file's text.
pub fn cmd_classify(text: &str, opt: ClassifyOptions) -> Result<String> {
    let spec = dsl::parse_frame_spec(text)?;
    let data = ruling_from_frame(&spec.frame, &spec.grid)?;
    let cl = classify_with(&data, opt)?;
    let mut report = cl.report();
    report["frame"] = json!(spec.frame.label);
    report["grid"] =
        json!({ "s0": spec.grid[0], "s1": spec.grid[spec.grid.len() - 1], "n": spec.grid.len() });
    Ok(json::to_string(&report))
}
