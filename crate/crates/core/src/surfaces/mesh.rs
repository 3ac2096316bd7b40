use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Immersion;
use crate::vec3::Vec3;
use crate::{Error, Result};

/// Rings of equally spaced radii crossed with equally spaced angles,
/// starting at angle 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarGrid {
    pub center: Complex64,
    pub r_min: f64,
    pub r_max: f64,
    pub rings: usize,
    pub sectors: usize,
}

impl PolarGrid {
    pub fn new(r_min: f64, r_max: f64, rings: usize, sectors: usize) -> Self {
        Self {
            center: Complex64::new(0.0, 0.0),
            r_min,
            r_max,
            rings,
            sectors,
        }
    }

    /// Parameter points, ring-major.
    pub fn points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity((self.rings + 1) * self.sectors);
        for i in 0..=self.rings {
            let r = self.r_min + (self.r_max - self.r_min) * i as f64 / self.rings as f64;
            for j in 0..self.sectors {
                out.push(self.center + Complex64::from_polar(r, TAU * j as f64 / self.sectors as f64));
            }
        }
        out
    }

    /// 0-based triangles: two per quad between consecutive rings.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.sectors;
        let mut out = Vec::with_capacity(2 * self.rings * n);
        for i in 0..self.rings {
            for j in 0..n {
                let a = i * n + j;
                let b = i * n + (j + 1) % n;
                let c = a + n;
                let d = b + n;
                out.push([a, b, d]);
                out.push([a, d, c]);
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.rings == 0 || self.sectors < 3 || !(self.r_min >= 0.0 && self.r_max > self.r_min) {
            return Err(Error::InvalidInput(format!("bad polar grid {self:?}")));
        }
        Ok(())
    }
}

/// Φ at every grid point, ring-major.
pub fn mesh_vertices<M: Immersion + ?Sized>(model: &M, grid: &PolarGrid) -> Result<Vec<Vec3>> {
    grid.validate()?;
    grid.points()
        .into_iter()
        .map(|z| model.jet(z).map(|j| j.phi))
        .collect()
}

/// Writes an ASCII OBJ file and returns `(vertices, triangles)`.
pub fn export_mesh<M: Immersion + ?Sized>(
    model: &M,
    grid: &PolarGrid,
    path: &Path,
) -> Result<(usize, usize)> {
    let vertices = mesh_vertices(model, grid)?;
    let triangles = grid.triangles();
    let mut out = String::new();
    for v in &vertices {
        let _ = writeln!(out, "v {:.12e} {:.12e} {:.12e}", v[0], v[1], v[2]);
    }
    for t in &triangles {
        let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    std::fs::write(path, out)?;
    Ok((vertices.len(), triangles.len()))
}
