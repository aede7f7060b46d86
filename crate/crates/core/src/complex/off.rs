//! OFF-format triangle meshes with a sidecar table of per-vertex values.

use std::path::Path;

use crate::complex::BifilteredComplex;
use crate::error::{Error, Result};
use crate::util;

/// A triangle mesh with embedded positions plus the two-component filtration
/// values carried by the sidecar file.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleMesh {
    pub positions: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
    pub values: Vec<(f64, f64)>,
}

impl TriangleMesh {
    /// The bifiltered complex spanned by the triangles (faces completed).
    pub fn complex(&self) -> Result<BifilteredComplex> {
        BifilteredComplex::from_maximal(
            self.values.clone(),
            self.triangles.iter().map(|t| t.to_vec()).collect(),
        )
    }

    pub fn write_off(&self) -> String {
        let mut out = String::new();
        out.push_str("OFF\n");
        out.push_str(&format!("{} {} 0\n", self.positions.len(), self.triangles.len()));
        for p in &self.positions {
            out.push_str(&format!(
                "{} {} {}\n",
                util::fmt_f64(p[0]),
                util::fmt_f64(p[1]),
                util::fmt_f64(p[2])
            ));
        }
        for t in &self.triangles {
            out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
        }
        out
    }

    pub fn write_values(&self) -> String {
        let mut out = String::new();
        out.push_str(&util::header("values"));
        out.push('\n');
        for &(a, b) in &self.values {
            out.push_str(&format!("{} {}\n", util::fmt_f64(a), util::fmt_f64(b)));
        }
        out
    }

    pub fn save(&self, off_path: impl AsRef<Path>, values_path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(off_path, self.write_off())?;
        std::fs::write(values_path, self.write_values())?;
        Ok(())
    }

    pub fn parse(off_text: &str, values_text: &str, path: &str) -> Result<TriangleMesh> {
        let mut lines = util::content_lines(off_text);
        let (lineno, first) = lines.next().ok_or_else(|| Error::Parse {
            path: path.to_string(),
            line: 1,
            msg: "empty OFF file".to_string(),
        })?;
        // counts may share the OFF line or follow it
        let rest = first.strip_prefix("OFF").ok_or_else(|| Error::Parse {
            path: path.to_string(),
            line: lineno,
            msg: format!("expected OFF header, got {first:?}"),
        })?;
        let mut counts: Vec<&str> = rest.split_whitespace().collect();
        if counts.is_empty() {
            let (lineno, l) = lines.next().ok_or_else(|| Error::Parse {
                path: path.to_string(),
                line: lineno,
                msg: "missing counts line".to_string(),
            })?;
            counts = l.split_whitespace().collect();
            if counts.len() < 2 {
                return Err(Error::Parse {
                    path: path.to_string(),
                    line: lineno,
                    msg: "counts line needs at least vertex and face counts".to_string(),
                });
            }
        }
        let nv = util::parse_usize(counts[0], path, lineno)?;
        let nf = util::parse_usize(counts[1], path, lineno)?;

        let mut positions = Vec::with_capacity(nv);
        for _ in 0..nv {
            let (lineno, l) = lines.next().ok_or_else(|| Error::Parse {
                path: path.to_string(),
                line: 0,
                msg: "unexpected end of vertex list".to_string(),
            })?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() < 3 {
                return Err(Error::Parse {
                    path: path.to_string(),
                    line: lineno,
                    msg: "vertex line needs 3 coordinates".to_string(),
                });
            }
            positions.push([
                util::parse_f64(f[0], path, lineno)?,
                util::parse_f64(f[1], path, lineno)?,
                util::parse_f64(f[2], path, lineno)?,
            ]);
        }
        let mut triangles = Vec::with_capacity(nf);
        for _ in 0..nf {
            let (lineno, l) = lines.next().ok_or_else(|| Error::Parse {
                path: path.to_string(),
                line: 0,
                msg: "unexpected end of face list".to_string(),
            })?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 4 || f[0] != "3" {
                return Err(Error::Parse {
                    path: path.to_string(),
                    line: lineno,
                    msg: "only triangle faces are supported".to_string(),
                });
            }
            let t = [
                util::parse_usize(f[1], path, lineno)? as u32,
                util::parse_usize(f[2], path, lineno)? as u32,
                util::parse_usize(f[3], path, lineno)? as u32,
            ];
            if t.iter().any(|&v| v as usize >= nv) {
                return Err(Error::Parse {
                    path: path.to_string(),
                    line: lineno,
                    msg: "face references vertex out of range".to_string(),
                });
            }
            triangles.push(t);
        }

        util::check_header(values_text.lines().next(), "values", path)?;
        let mut values = Vec::with_capacity(nv);
        for (lineno, l) in util::content_lines(values_text).skip(1) {
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 2 {
                return Err(Error::Parse {
                    path: path.to_string(),
                    line: lineno,
                    msg: "value line needs exactly two numbers".to_string(),
                });
            }
            values.push((
                util::parse_f64(f[0], path, lineno)?,
                util::parse_f64(f[1], path, lineno)?,
            ));
        }
        if values.len() != nv {
            return Err(Error::Parse {
                path: path.to_string(),
                line: 0,
                msg: format!("value table has {} rows for {} vertices", values.len(), nv),
            });
        }
        Ok(TriangleMesh {
            positions,
            triangles,
            values,
        })
    }

    pub fn load(off_path: impl AsRef<Path>, values_path: impl AsRef<Path>) -> Result<TriangleMesh> {
        let off_path = off_path.as_ref();
        let off_text = std::fs::read_to_string(off_path)?;
        let values_text = std::fs::read_to_string(values_path)?;
        Self::parse(&off_text, &values_text, &off_path.display().to_string())
    }
}
