//! Text format for extended Pareto grids: one contour per line, either
//! `vertical <tag> <x0> <y0>`, `horizontal <tag> <x0> <y0>` or
//! `proper <tag> <n> x1 y1 ... xn yn`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{Contour, ContourKind, ExtendedParetoGrid, FunctionTag};
use crate::util;

pub fn write_grid(grid: &ExtendedParetoGrid) -> String {
    let mut out = String::new();
    out.push_str(&util::header("grid"));
    out.push('\n');
    for c in &grid.contours {
        let tag = c.tag.label();
        match &c.kind {
            ContourKind::ImproperVertical { x0, y0 } => {
                out.push_str(&format!(
                    "vertical {tag} {} {}\n",
                    util::fmt_f64(*x0),
                    util::fmt_f64(*y0)
                ));
            }
            ContourKind::ImproperHorizontal { x0, y0 } => {
                out.push_str(&format!(
                    "horizontal {tag} {} {}\n",
                    util::fmt_f64(*x0),
                    util::fmt_f64(*y0)
                ));
            }
            ContourKind::Proper { polyline } => {
                out.push_str(&format!("proper {tag} {}", polyline.len()));
                for &(x, y) in polyline {
                    out.push_str(&format!(" {} {}", util::fmt_f64(x), util::fmt_f64(y)));
                }
                out.push('\n');
            }
        }
    }
    out
}

fn parse_tag(tok: &str, path: &str, line: usize) -> Result<FunctionTag> {
    match tok {
        "1" => Ok(FunctionTag::First),
        "2" => Ok(FunctionTag::Second),
        _ => Err(Error::Parse {
            path: path.to_string(),
            line,
            msg: format!("tag must be 1 or 2, got {tok:?}"),
        }),
    }
}

pub fn parse_grid(text: &str, path: &str) -> Result<ExtendedParetoGrid> {
    util::check_header(text.lines().next(), "grid", path)?;
    let mut contours = Vec::new();
    for (lineno, line) in util::content_lines(text).skip(1) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| Error::Parse {
            path: path.to_string(),
            line: lineno,
            msg,
        };
        match fields[0] {
            "vertical" | "horizontal" => {
                if fields.len() != 4 {
                    return Err(bad("expected: <kind> <tag> <x0> <y0>".to_string()));
                }
                let tag = parse_tag(fields[1], path, lineno)?;
                let x0 = util::parse_f64(fields[2], path, lineno)?;
                let y0 = util::parse_f64(fields[3], path, lineno)?;
                contours.push(if fields[0] == "vertical" {
                    Contour::improper_vertical(x0, y0, tag)
                } else {
                    Contour::improper_horizontal(x0, y0, tag)
                });
            }
            "proper" => {
                if fields.len() < 3 {
                    return Err(bad("expected: proper <tag> <n> x1 y1 ...".to_string()));
                }
                let tag = parse_tag(fields[1], path, lineno)?;
                let n = util::parse_usize(fields[2], path, lineno)?;
                if fields.len() != 3 + 2 * n {
                    return Err(bad(format!(
                        "expected {} coordinates, got {}",
                        2 * n,
                        fields.len() - 3
                    )));
                }
                let mut points = Vec::with_capacity(n);
                for k in 0..n {
                    points.push((
                        util::parse_f64(fields[3 + 2 * k], path, lineno)?,
                        util::parse_f64(fields[4 + 2 * k], path, lineno)?,
                    ));
                }
                contours.push(Contour::proper(points, tag)?);
            }
            other => return Err(bad(format!("unknown contour kind {other:?}"))),
        }
    }
    Ok(ExtendedParetoGrid::new(contours))
}

pub fn save_grid(path: impl AsRef<Path>, grid: &ExtendedParetoGrid) -> Result<()> {
    std::fs::write(path, write_grid(grid))?;
    Ok(())
}

pub fn load_grid(path: impl AsRef<Path>) -> Result<ExtendedParetoGrid> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_grid(&text, &path.display().to_string())
}
