//! Triangulated surfaces with projection values: the sphere and torus
//! running examples.
//!
//! Both generators project along the y-axis, so the filtration values of a
//! 3D point are its (x, z) coordinates. The silhouette seen from that
//! direction is then exactly the locus where the two value gradients align,
//! which keeps the matching analytic grids in closed form.

use std::f64::consts::PI;

use crate::complex::{BifilteredComplex, TriangleMesh};
use crate::error::{Error, Result};

/// Placement of the torus projection values in the plane:
/// `value = offset + scale * (x, z)`.
///
/// An affine reparametrization of the projection is the "second instance"
/// knob: it changes the filtration while keeping every contour of the value
/// plane in closed form (circles become axis-aligned ellipse arcs).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusOrientation {
    pub offset: (f64, f64),
    pub scale: (f64, f64),
}

impl Default for TorusOrientation {
    fn default() -> Self {
        TorusOrientation {
            offset: (0.0, 0.0),
            scale: (1.0, 1.0),
        }
    }
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < 8 {
        return Err(Error::DegenerateParameter(format!(
            "resolution {resolution} < 8"
        )));
    }
    Ok(())
}

/// Triangulated sphere of the given radius and center, with vertex values
/// the (x, z) coordinates of the embedding. Poles sit on the y-axis so the
/// equator ring lies exactly on the silhouette circle.
pub fn make_sphere_mesh(
    resolution: usize,
    radius: f64,
    center: (f64, f64, f64),
) -> Result<TriangleMesh> {
    check_resolution(resolution)?;
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::DegenerateParameter(format!("radius {radius}")));
    }
    let (cx, cy, cz) = center;
    let n_lat = resolution; // latitude bands, poles excluded from rings
    let n_lon = resolution;

    let mut positions: Vec<[f64; 3]> = Vec::with_capacity((n_lat - 1) * n_lon + 2);
    positions.push([cx, cy + radius, cz]); // north pole (+y)
    for i in 1..n_lat {
        let theta = PI * i as f64 / n_lat as f64;
        for j in 0..n_lon {
            let phi = 2.0 * PI * j as f64 / n_lon as f64;
            positions.push([
                cx + radius * theta.sin() * phi.cos(),
                cy + radius * theta.cos(),
                cz + radius * theta.sin() * phi.sin(),
            ]);
        }
    }
    positions.push([cx, cy - radius, cz]); // south pole
    let south = positions.len() as u32 - 1;

    let ring = |i: usize, j: usize| -> u32 { 1 + ((i - 1) * n_lon + (j % n_lon)) as u32 };
    let mut triangles: Vec<[u32; 3]> = Vec::with_capacity(2 * n_lat * n_lon);
    for j in 0..n_lon {
        triangles.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for i in 1..n_lat - 1 {
        for j in 0..n_lon {
            let (a, b2) = (ring(i, j), ring(i, j + 1));
            let (c, d) = (ring(i + 1, j), ring(i + 1, j + 1));
            triangles.push([a, c, d]);
            triangles.push([a, d, b2]);
        }
    }
    for j in 0..n_lon {
        triangles.push([ring(n_lat - 1, j), south, ring(n_lat - 1, j + 1)]);
    }

    let values = positions.iter().map(|p| (p[0], p[2])).collect();
    Ok(TriangleMesh {
        positions,
        triangles,
        values,
    })
}

/// As [`make_sphere_mesh`], returning the bifiltered complex directly.
pub fn make_sphere(
    resolution: usize,
    radius: f64,
    center: (f64, f64, f64),
) -> Result<BifilteredComplex> {
    make_sphere_mesh(resolution, radius, center)?.complex()
}

/// Triangulated torus with tube axis along y, major/minor radii `radii`
/// and vertex values `orientation.offset + orientation.scale * (x, z)`.
pub fn make_torus_mesh(
    resolution: usize,
    radii: (f64, f64),
    orientation: TorusOrientation,
) -> Result<TriangleMesh> {
    check_resolution(resolution)?;
    let (major, minor) = radii;
    if !major.is_finite() || !(major > minor && minor > 0.0) {
        return Err(Error::DegenerateParameter(format!(
            "torus radii ({major}, {minor}) must satisfy major > minor > 0"
        )));
    }
    let (s1, s2) = orientation.scale;
    if !(s1 > 0.0 && s2 > 0.0) {
        return Err(Error::DegenerateParameter(format!(
            "torus value scale ({s1}, {s2}) must be positive"
        )));
    }

    let n = resolution;
    let mut positions: Vec<[f64; 3]> = Vec::with_capacity(n * n);
    for i in 0..n {
        let u = 2.0 * PI * i as f64 / n as f64; // around the axis
        for j in 0..n {
            let v = 2.0 * PI * j as f64 / n as f64; // around the tube
            let rho = major + minor * v.cos();
            positions.push([rho * u.cos(), minor * v.sin(), rho * u.sin()]);
        }
    }
    let at = |i: usize, j: usize| -> u32 { ((i % n) * n + (j % n)) as u32 };
    let mut triangles: Vec<[u32; 3]> = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (at(i, j), at(i + 1, j));
            let (c, d) = (at(i, j + 1), at(i + 1, j + 1));
            triangles.push([a, b, d]);
            triangles.push([a, d, c]);
        }
    }

    let (o1, o2) = orientation.offset;
    let values = positions
        .iter()
        .map(|p| (o1 + s1 * p[0], o2 + s2 * p[2]))
        .collect();
    Ok(TriangleMesh {
        positions,
        triangles,
        values,
    })
}

/// As [`make_torus_mesh`], returning the bifiltered complex directly.
pub fn make_torus(
    resolution: usize,
    radii: (f64, f64),
    orientation: TorusOrientation,
) -> Result<BifilteredComplex> {
    make_torus_mesh(resolution, radii, orientation)?.complex()
}
