//! Text format for candidate-set samples: one record per sampled parameter,
//! `a b kind residual [contour ids]`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::LineParam;
use crate::grid::{ContourRef, FunctionTag};
use crate::special::{CandidateKind, CandidatePoint};
use crate::util;

pub fn write_candidates(points: &[CandidatePoint]) -> String {
    let mut out = String::new();
    out.push_str(&util::header("candidates"));
    out.push('\n');
    out.push_str("# a b kind residual contours...\n");
    for p in points {
        out.push_str(&format!(
            "{} {} {} {}",
            util::fmt_f64(p.param.a()),
            util::fmt_f64(p.param.b()),
            p.kind.label(),
            util::fmt_f64(p.residual)
        ));
        for c in &p.contours {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    out
}

fn parse_contour_ref(tok: &str, path: &str, line: usize) -> Result<ContourRef> {
    let bad = || Error::Parse {
        path: path.to_string(),
        line,
        msg: format!("bad contour reference {tok:?}"),
    };
    let (side, idx) = tok.split_once(':').ok_or_else(bad)?;
    let side = match side {
        "1" => FunctionTag::First,
        "2" => FunctionTag::Second,
        _ => return Err(bad()),
    };
    Ok(ContourRef {
        side,
        index: idx.parse().map_err(|_| bad())?,
    })
}

pub fn parse_candidates(text: &str, path: &str) -> Result<Vec<CandidatePoint>> {
    util::check_header(text.lines().next(), "candidates", path)?;
    let mut out = Vec::new();
    for (lineno, line) in util::content_lines(text).skip(1) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(Error::Parse {
                path: path.to_string(),
                line: lineno,
                msg: "expected: a b kind residual [contours...]".to_string(),
            });
        }
        let a = util::parse_f64(fields[0], path, lineno)?;
        let b = util::parse_f64(fields[1], path, lineno)?;
        let kind = CandidateKind::from_label(fields[2]).ok_or_else(|| Error::Parse {
            path: path.to_string(),
            line: lineno,
            msg: format!("unknown candidate kind {:?}", fields[2]),
        })?;
        let residual = util::parse_f64(fields[3], path, lineno)?;
        let contours = fields[4..]
            .iter()
            .map(|tok| parse_contour_ref(tok, path, lineno))
            .collect::<Result<Vec<_>>>()?;
        out.push(CandidatePoint {
            param: LineParam::new(a, b).map_err(|e| Error::Parse {
                path: path.to_string(),
                line: lineno,
                msg: e.to_string(),
            })?,
            kind,
            residual,
            contours,
        });
    }
    Ok(out)
}

pub fn save_candidates(path: impl AsRef<Path>, points: &[CandidatePoint]) -> Result<()> {
    std::fs::write(path, write_candidates(points))?;
    Ok(())
}

pub fn load_candidates(path: impl AsRef<Path>) -> Result<Vec<CandidatePoint>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_candidates(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_round_trip() {
        let points = vec![
            CandidatePoint {
                param: LineParam::new(0.25, -0.5).unwrap(),
                kind: CandidateKind::Special,
                residual: 1e-12,
                contours: vec![
                    ContourRef {
                        side: FunctionTag::First,
                        index: 0,
                    },
                    ContourRef {
                        side: FunctionTag::Second,
                        index: 3,
                    },
                ],
            },
            CandidatePoint {
                param: LineParam::new(0.5, 0.0).unwrap(),
                kind: CandidateKind::EndpointFamily,
                residual: 0.0,
                contours: vec![],
            },
        ];
        let text = write_candidates(&points);
        let back = parse_candidates(&text, "mem").unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].param, points[0].param);
        assert_eq!(back[0].kind, points[0].kind);
        assert_eq!(back[0].contours, points[0].contours);
        assert_eq!(write_candidates(&back), text);
    }
}
