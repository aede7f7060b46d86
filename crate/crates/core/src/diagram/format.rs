//! Text format for persistence diagrams.
//!
//! One record per cornerpoint: `degree birth death multiplicity`, with
//! `death = inf` for essential points.

use std::collections::BTreeMap;
use std::path::Path;

use crate::diagram::{DiagramPoint, PersistenceDiagram, PointKind};
use crate::error::{Error, Result};
use crate::util;

pub fn write_diagrams(diagrams: &[PersistenceDiagram]) -> String {
    let mut out = String::new();
    out.push_str(&util::header("diagram"));
    out.push('\n');
    out.push_str("# degree birth death multiplicity\n");
    for d in diagrams {
        for p in d.points() {
            let (birth, death) = match p.kind {
                PointKind::Proper { birth, death } => (birth, util::fmt_f64(death)),
                PointKind::Essential { birth } => (birth, "inf".to_string()),
                PointKind::Delta => continue,
            };
            out.push_str(&format!(
                "{} {} {} {}\n",
                d.degree(),
                util::fmt_f64(birth),
                death,
                p.multiplicity
            ));
        }
    }
    out
}

/// Parses a diagram file. Diagrams are returned sorted by degree; degrees
/// without records are absent.
pub fn parse_diagrams(text: &str, path: &str) -> Result<Vec<PersistenceDiagram>> {
    util::check_header(text.lines().next(), "diagram", path)?;
    let mut by_degree: BTreeMap<usize, Vec<DiagramPoint>> = BTreeMap::new();
    for (lineno, line) in util::content_lines(text).skip(1) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                path: path.to_string(),
                line: lineno,
                msg: format!("expected 4 fields, got {}", fields.len()),
            });
        }
        let degree = util::parse_usize(fields[0], path, lineno)?;
        let birth = util::parse_f64(fields[1], path, lineno)?;
        let death = util::parse_f64(fields[2], path, lineno)?;
        let multiplicity = util::parse_usize(fields[3], path, lineno)? as u32;
        if multiplicity == 0 {
            return Err(Error::Parse {
                path: path.to_string(),
                line: lineno,
                msg: "multiplicity must be positive".to_string(),
            });
        }
        if !birth.is_finite() {
            return Err(Error::Parse {
                path: path.to_string(),
                line: lineno,
                msg: "birth must be finite".to_string(),
            });
        }
        let point = if death == f64::INFINITY {
            DiagramPoint::essential(birth, multiplicity)
        } else if birth < death {
            DiagramPoint::proper(birth, death, multiplicity)
        } else {
            return Err(Error::Parse {
                path: path.to_string(),
                line: lineno,
                msg: format!("birth {birth} must precede death {death}"),
            });
        };
        by_degree.entry(degree).or_default().push(point);
    }
    Ok(by_degree
        .into_iter()
        .map(|(degree, pts)| PersistenceDiagram::new(degree, pts))
        .collect())
}

pub fn save_diagrams(path: impl AsRef<Path>, diagrams: &[PersistenceDiagram]) -> Result<()> {
    std::fs::write(path, write_diagrams(diagrams))?;
    Ok(())
}

pub fn load_diagrams(path: impl AsRef<Path>) -> Result<Vec<PersistenceDiagram>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_diagrams(&text, &path.display().to_string())
}
