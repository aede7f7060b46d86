//! Closed-form extended Pareto grids for the generated surfaces.
//!
//! Projecting along the y-axis, the locus where the two value gradients
//! align is the silhouette of the surface. For the sphere that is one great
//! circle, for the y-axis torus the two equatorial circles; in the value
//! plane these become circles (ellipses after value scaling), and the arcs
//! of non-positive slope are their north-east and south-west quarters.
//! Every critical point of a component function contributes one improper
//! half-line.

use std::f64::consts::PI;

use crate::complex::TorusOrientation;
use crate::error::{Error, Result};
use crate::grid::{Contour, ExtendedParetoGrid, FunctionTag};

/// Quarter ellipse arcs `center + (rx cos θ, ry sin θ)` sampled over
/// `θ ∈ [θ0, θ0 + π/2]`.
fn quarter_arc(
    center: (f64, f64),
    rx: f64,
    ry: f64,
    theta0: f64,
    samples: usize,
) -> Vec<(f64, f64)> {
    (0..=samples)
        .map(|k| {
            let theta = theta0 + (PI / 2.0) * k as f64 / samples as f64;
            (center.0 + rx * theta.cos(), center.1 + ry * theta.sin())
        })
        .collect()
}

fn arc_samples(resolution: usize) -> usize {
    4 * resolution.max(16)
}

/// Grid of the sphere projection: north-east and south-west quarter arcs of
/// the silhouette circle, plus one vertical half-line per critical point of
/// the first value and one horizontal per critical point of the second
/// (two of each: the extrema of a coordinate on a sphere).
pub fn analytic_sphere_grid(
    resolution: usize,
    radius: f64,
    center: (f64, f64, f64),
) -> Result<ExtendedParetoGrid> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::DegenerateParameter(format!("radius {radius}")));
    }
    if resolution < 8 {
        return Err(Error::DegenerateParameter(format!(
            "resolution {resolution} < 8"
        )));
    }
    let c = (center.0, center.2);
    let tag = FunctionTag::First;
    let n = arc_samples(resolution);
    let contours = vec![
        Contour::proper(quarter_arc(c, radius, radius, 0.0, n), tag)?,
        Contour::proper(quarter_arc(c, radius, radius, PI, n), tag)?,
        Contour::improper_vertical(c.0 - radius, c.1, tag),
        Contour::improper_vertical(c.0 + radius, c.1, tag),
        Contour::improper_horizontal(c.0, c.1 - radius, tag),
        Contour::improper_horizontal(c.0, c.1 + radius, tag),
    ];
    Ok(ExtendedParetoGrid::new(contours))
}

/// Grid of the torus projection: quarter arcs of the outer and inner
/// silhouette ellipses plus four vertical and four horizontal half-lines
/// (the extrema of each value coordinate on the two equators).
pub fn analytic_torus_grid(
    resolution: usize,
    radii: (f64, f64),
    orientation: TorusOrientation,
) -> Result<ExtendedParetoGrid> {
    let (major, minor) = radii;
    if !major.is_finite() || !(major > minor && minor > 0.0) {
        return Err(Error::DegenerateParameter(format!(
            "torus radii ({major}, {minor}) must satisfy major > minor > 0"
        )));
    }
    if resolution < 8 {
        return Err(Error::DegenerateParameter(format!(
            "resolution {resolution} < 8"
        )));
    }
    let (s1, s2) = orientation.scale;
    if !(s1 > 0.0 && s2 > 0.0) {
        return Err(Error::DegenerateParameter(format!(
            "torus value scale ({s1}, {s2}) must be positive"
        )));
    }
    let c = orientation.offset;
    let tag = FunctionTag::First;
    let n = arc_samples(resolution);
    let mut contours = Vec::with_capacity(12);
    for rho in [major + minor, major - minor] {
        contours.push(Contour::proper(
            quarter_arc(c, s1 * rho, s2 * rho, 0.0, n),
            tag,
        )?);
        contours.push(Contour::proper(
            quarter_arc(c, s1 * rho, s2 * rho, PI, n),
            tag,
        )?);
        contours.push(Contour::improper_vertical(c.0 - s1 * rho, c.1, tag));
        contours.push(Contour::improper_vertical(c.0 + s1 * rho, c.1, tag));
        contours.push(Contour::improper_horizontal(c.0, c.1 - s2 * rho, tag));
        contours.push(Contour::improper_horizontal(c.0, c.1 + s2 * rho, tag));
    }
    Ok(ExtendedParetoGrid::new(contours))
}
