//! Triangle meshes of immersions as OBJ text.

use super::json::num;
use crate::cone::HermMatrix;
use crate::error::{Error, Result};
use crate::surfaces::{first_form, Immersion};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Projection {
    /// (x₁, x₂, x₃)/(1 + x₀), into the open unit ball.
    Ball,
    /// (x₁, x₂, x₃); x₀ = |(x₁, x₂, x₃)| on the cone.
    Raw,
}

impl std::str::FromStr for Projection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ball" => Ok(Projection::Ball),
            "raw" => Ok(Projection::Raw),
            _ => Err(Error::BadParameter(format!(
                "projection must be ball or raw, got `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSpec {
    pub domain: [f64; 4],
    pub nu: usize,
    pub nv: usize,
    pub projection: Projection,
    /// Cells within this parameter distance of a degenerate vertex are dropped.
    pub clip: f64,
}

impl MeshSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nu < 2 || self.nv < 2 {
            return Err(Error::BadParameter(format!(
                "grid must be at least 2x2, got {}x{}",
                self.nu, self.nv
            )));
        }
        if !(self.clip >= 0.0) {
            return Err(Error::BadParameter(format!(
                "clip width must be >= 0, got {}",
                self.clip
            )));
        }
        let [u0, u1, v0, v1] = self.domain;
        if !(u0 < u1 && v0 < v1) || !self.domain.iter().all(|x| x.is_finite()) {
            return Err(Error::BadParameter(format!("bad domain {:?}", self.domain)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Mesh {
    #[serde(skip)]
    pub points: Vec<HermMatrix>,
    #[serde(skip)]
    pub vertices: Vec<[f64; 3]>,
    #[serde(skip)]
    pub faces: Vec<[usize; 3]>,
    pub vertex_count: usize,
    pub face_count: usize,
    pub degenerate_vertices: usize,
    pub clipped_cells: usize,
    pub max_ball_norm: f64,
}

pub fn project(x: &HermMatrix, p: Projection) -> [f64; 3] {
    match p {
        Projection::Ball => {
            let d = 1.0 + x.x0;
            [x.x1 / d, x.x2 / d, x.x3 / d]
        }
        Projection::Raw => [x.x1, x.x2, x.x3],
    }
}

/// Row-major grid, index i·nv + j for u_i, v_j; two triangles per cell.
pub fn build_mesh(x: &Immersion, spec: &MeshSpec) -> Result<Mesh> {
    spec.validate()?;
    let [u0, u1, v0, v1] = spec.domain;
    let (nu, nv) = (spec.nu, spec.nv);
    let param = |k: usize| {
        let (i, j) = (k / nv, k % nv);
        (
            u0 + (u1 - u0) * i as f64 / (nu - 1) as f64,
            v0 + (v1 - v0) * j as f64 / (nv - 1) as f64,
        )
    };
    let evals: Vec<(HermMatrix, bool)> = (0..nu * nv)
        .into_par_iter()
        .map(|k| {
            let (u, v) = param(k);
            let j = x.eval(u, v);
            let [e, f, g] = first_form(&j);
            let det = e * g - f * f;
            let bad = !j.value.is_finite() || !(det > 1e-12 * (e * e + g * g));
            (j.value, bad)
        })
        .collect();
    let bad: Vec<usize> = (0..evals.len()).filter(|&k| evals[k].1).collect();
    let near_bad = |k: usize| {
        let (u, v) = param(k);
        bad.iter().any(|&b| {
            let (bu, bv) = param(b);
            (u - bu).abs().max((v - bv).abs()) <= spec.clip
        })
    };
    let mut faces = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
    let mut clipped = 0;
    for i in 0..nu - 1 {
        for j in 0..nv - 1 {
            let c = [
                i * nv + j,
                i * nv + j + 1,
                (i + 1) * nv + j + 1,
                (i + 1) * nv + j,
            ];
            if c.iter().any(|&k| near_bad(k)) {
                clipped += 1;
                continue;
            }
            faces.push([c[0], c[1], c[2]]);
            faces.push([c[0], c[2], c[3]]);
        }
    }
    let points: Vec<HermMatrix> = evals.iter().map(|(p, _)| *p).collect();
    let vertices: Vec<[f64; 3]> = points
        .iter()
        .map(|p| {
            if p.is_finite() {
                project(p, spec.projection)
            } else {
                [0.0; 3]
            }
        })
        .collect();
    let max_ball_norm = points
        .iter()
        .filter(|p| p.is_finite())
        .map(|p| {
            project(p, Projection::Ball)
                .iter()
                .map(|c| c * c)
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    Ok(Mesh {
        vertex_count: vertices.len(),
        face_count: faces.len(),
        degenerate_vertices: bad.len(),
        clipped_cells: clipped,
        max_ball_norm,
        points,
        vertices,
        faces,
    })
}

/// `v x y z` lines, then `f i j k` with 1-based indices.
pub fn to_obj(m: &Mesh) -> String {
    let mut s = String::with_capacity(64 * (m.vertices.len() + m.faces.len()));
    for v in &m.vertices {
        s.push_str(&format!("v {} {} {}\n", num(v[0]), num(v[1]), num(v[2])));
    }
    for f in &m.faces {
        s.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    s
}
