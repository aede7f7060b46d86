//! Bifiltered simplicial complexes and persistence along filtering lines.

mod generators;
mod off;
mod reduce;

pub use generators::{make_sphere, make_sphere_mesh, make_torus, make_torus_mesh, TorusOrientation};
pub use off::TriangleMesh;
pub use reduce::{compute_diagram, compute_diagram_with, LineFiltration, ReductionScratch};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A simplex of dimension at most 3, stored as sorted vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    verts: [u32; 4],
    dim: u8,
}

impl Simplex {
    pub fn new(vertices: &[u32]) -> Result<Self> {
        if vertices.is_empty() || vertices.len() > 4 {
            return Err(Error::InvalidSimplex(format!(
                "dimension {} out of range",
                vertices.len() as isize - 1
            )));
        }
        let mut verts = [u32::MAX; 4];
        verts[..vertices.len()].copy_from_slice(vertices);
        verts[..vertices.len()].sort_unstable();
        for w in verts[..vertices.len()].windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSimplex(format!(
                    "repeated vertex {} in {:?}",
                    w[0], vertices
                )));
            }
        }
        Ok(Simplex {
            verts,
            dim: (vertices.len() - 1) as u8,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..=self.dim as usize]
    }

    fn facet(&self, drop: usize) -> Simplex {
        debug_assert!(self.dim > 0);
        let mut verts = [u32::MAX; 4];
        let mut k = 0;
        for (i, &v) in self.vertices().iter().enumerate() {
            if i != drop {
                verts[k] = v;
                k += 1;
            }
        }
        Simplex {
            verts,
            dim: self.dim - 1,
        }
    }
}

/// A finite simplicial complex whose vertices carry a two-component value.
///
/// The simplex value along any filtering line is the maximum of its vertices'
/// restricted values (lower-star convention), so every sublevel set is a
/// subcomplex. The simplex list is closed under faces, duplicate-free and
/// kept in canonical (dimension, vertex-lexicographic) order.
#[derive(Clone, Debug)]
pub struct BifilteredComplex {
    values: Vec<(f64, f64)>,
    simplices: Vec<Simplex>,
    /// Facet indices into `simplices`, aligned with `simplices`.
    facets: Vec<[u32; 4]>,
    dim: usize,
}

impl BifilteredComplex {
    /// Validating constructor: vertex indices in range, values finite, no
    /// duplicate simplices, and every face of a listed simplex listed.
    pub fn new(values: Vec<(f64, f64)>, simplices: Vec<Vec<u32>>) -> Result<Self> {
        let mut sx: Vec<Simplex> = Vec::with_capacity(simplices.len());
        for raw in &simplices {
            sx.push(Simplex::new(raw)?);
        }
        Self::build(values, sx, false)
    }

    /// Builds from maximal simplices, adding all missing faces.
    pub fn from_maximal(values: Vec<(f64, f64)>, maximal: Vec<Vec<u32>>) -> Result<Self> {
        let mut sx: Vec<Simplex> = Vec::with_capacity(maximal.len() * 4);
        for raw in &maximal {
            sx.push(Simplex::new(raw)?);
        }
        Self::build(values, sx, true)
    }

    fn build(values: Vec<(f64, f64)>, mut sx: Vec<Simplex>, complete: bool) -> Result<Self> {
        for (i, &(a, b)) in values.iter().enumerate() {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidSimplex(format!(
                    "vertex {i} has non-finite value ({a}, {b})"
                )));
            }
        }
        if complete {
            // include every vertex and close under faces
            let mut seen: std::collections::HashSet<Simplex> = sx.iter().copied().collect();
            for v in 0..values.len() as u32 {
                let s = Simplex::new(&[v]).unwrap();
                if seen.insert(s) {
                    sx.push(s);
                }
            }
            let mut stack: Vec<Simplex> = sx.clone();
            while let Some(s) = stack.pop() {
                if s.dim() == 0 {
                    continue;
                }
                for drop in 0..=s.dim() {
                    let f = s.facet(drop);
                    if seen.insert(f) {
                        sx.push(f);
                        stack.push(f);
                    }
                }
            }
        }

        sx.sort_unstable_by_key(|s| (s.dim, s.verts));
        for (i, w) in sx.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::DuplicateSimplex(i));
            }
        }

        let nv = values.len() as u32;
        let index: HashMap<Simplex, u32> = sx
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i as u32))
            .collect();
        let mut facets = vec![[u32::MAX; 4]; sx.len()];
        let mut dim = 0;
        for (i, s) in sx.iter().enumerate() {
            dim = dim.max(s.dim());
            if s.vertices().iter().any(|&v| v >= nv) {
                return Err(Error::InvalidSimplex(format!(
                    "simplex {:?} references a vertex out of range",
                    s.vertices()
                )));
            }
            if s.dim() > 0 {
                for (drop, slot) in facets[i].iter_mut().enumerate().take(s.dim() + 1) {
                    match index.get(&s.facet(drop)) {
                        Some(&f) => *slot = f,
                        None => return Err(Error::NotFaceClosed(i)),
                    }
                }
            }
        }

        Ok(BifilteredComplex {
            values,
            simplices: sx,
            facets,
            dim,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Per-vertex two-component values.
    pub fn values(&self) -> &[(f64, f64)] {
        &self.values
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Indices of the facets of a simplex (empty for vertices).
    pub fn facets_of(&self, simplex: usize) -> &[u32] {
        let d = self.simplices[simplex].dim();
        if d == 0 {
            &[]
        } else {
            &self.facets[simplex][..=d]
        }
    }

    /// Euler characteristic (alternating simplex counts).
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1i64 } else { -1i64 })
            .sum()
    }

    /// Largest max-norm value gap along any edge; the mesh-scale unit used
    /// by grid/diagram consistency tolerances.
    pub fn max_edge_value_gap(&self) -> f64 {
        let mut gap = 0.0f64;
        for s in &self.simplices {
            if s.dim() != 1 {
                continue;
            }
            let (a, b) = (s.vertices()[0] as usize, s.vertices()[1] as usize);
            let dx = (self.values[a].0 - self.values[b].0).abs();
            let dy = (self.values[a].1 - self.values[b].1).abs();
            gap = gap.max(dx.max(dy));
        }
        gap
    }

    /// Returns a copy with the same structure and new vertex values.
    pub fn with_values(&self, values: Vec<(f64, f64)>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::StructureMismatch(format!(
                "value table has {} entries for {} vertices",
                values.len(),
                self.values.len()
            )));
        }
        for (i, &(a, b)) in values.iter().enumerate() {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidSimplex(format!(
                    "vertex {i} has non-finite value ({a}, {b})"
                )));
            }
        }
        let mut out = self.clone();
        out.values = values;
        Ok(out)
    }
}

/// `‖φ - ψ‖∞`: the largest max-norm difference of vertex values between two
/// complexes with identical simplicial structure.
pub fn sup_norm_difference(cx1: &BifilteredComplex, cx2: &BifilteredComplex) -> Result<f64> {
    let (d1, d2) = component_sup_norms(cx1, cx2)?;
    Ok(d1.max(d2))
}

/// Per-component sup norms `(‖φ₁ - ψ₁‖∞, ‖φ₂ - ψ₂‖∞)`.
pub fn component_sup_norms(cx1: &BifilteredComplex, cx2: &BifilteredComplex) -> Result<(f64, f64)> {
    if cx1.vertex_count() != cx2.vertex_count() {
        return Err(Error::StructureMismatch(format!(
            "vertex counts differ: {} vs {}",
            cx1.vertex_count(),
            cx2.vertex_count()
        )));
    }
    if cx1.simplices != cx2.simplices {
        return Err(Error::StructureMismatch(
            "simplex lists differ".to_string(),
        ));
    }
    let mut d1 = 0.0f64;
    let mut d2 = 0.0f64;
    for (a, b) in cx1.values.iter().zip(cx2.values.iter()) {
        d1 = d1.max((a.0 - b.0).abs());
        d2 = d2.max((a.1 - b.1).abs());
    }
    Ok((d1, d2))
}
