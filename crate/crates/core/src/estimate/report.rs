//! Text format for estimator reports: a summary block followed by
//! machine-readable per-line records `line a b cost [degree cost]...`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::estimate::{EstimateMethod, EstimateReport, LineCost};
use crate::geometry::{ExtendedReal, LineParam};
use crate::util;

pub fn write_report(report: &EstimateReport) -> String {
    let mut out = String::new();
    out.push_str(&util::header("report"));
    out.push('\n');
    out.push_str(&format!("method {}\n", report.method.label()));
    out.push_str(&format!("value {}\n", util::fmt_f64(report.value.to_f64())));
    out.push_str(&format!(
        "realizer {} {}\n",
        util::fmt_f64(report.realizer.a()),
        util::fmt_f64(report.realizer.b())
    ));
    if let Some(w) = report.infinite_witness {
        out.push_str(&format!(
            "infinite-witness {} {}\n",
            util::fmt_f64(w.a()),
            util::fmt_f64(w.b())
        ));
    }
    out.push_str("# line a b cost [degree cost]...\n");
    for lc in &report.per_line {
        out.push_str(&format!(
            "line {} {} {}",
            util::fmt_f64(lc.line.a()),
            util::fmt_f64(lc.line.b()),
            util::fmt_f64(lc.cost.to_f64())
        ));
        for (k, c) in &lc.per_degree {
            out.push_str(&format!(" {} {}", k, util::fmt_f64(c.to_f64())));
        }
        out.push('\n');
    }
    out
}

pub fn parse_report(text: &str, path: &str) -> Result<EstimateReport> {
    util::check_header(text.lines().next(), "report", path)?;
    let mut method = None;
    let mut realizer = None;
    let mut infinite_witness = None;
    let mut per_line: Vec<LineCost> = Vec::new();
    let mut value = None;
    for (lineno, line) in util::content_lines(text).skip(1) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| Error::Parse {
            path: path.to_string(),
            line: lineno,
            msg,
        };
        match fields[0] {
            "method" => {
                method = Some(match fields.get(1) {
                    Some(&"naive") => EstimateMethod::Naive,
                    Some(&"reduced") => EstimateMethod::Reduced,
                    other => return Err(bad(format!("unknown method {other:?}"))),
                });
            }
            "value" => {
                value = Some(ExtendedReal::from(util::parse_f64(
                    fields.get(1).copied().unwrap_or(""),
                    path,
                    lineno,
                )?));
            }
            "realizer" | "infinite-witness" => {
                if fields.len() != 3 {
                    return Err(bad("expected two parameters".to_string()));
                }
                let a = util::parse_f64(fields[1], path, lineno)?;
                let b = util::parse_f64(fields[2], path, lineno)?;
                let lp = LineParam::new(a, b).map_err(|e| bad(e.to_string()))?;
                if fields[0] == "realizer" {
                    realizer = Some(lp);
                } else {
                    infinite_witness = Some(lp);
                }
            }
            "line" => {
                if fields.len() < 4 || !fields.len().is_multiple_of(2) {
                    return Err(bad("expected: line a b cost [degree cost]...".to_string()));
                }
                let a = util::parse_f64(fields[1], path, lineno)?;
                let b = util::parse_f64(fields[2], path, lineno)?;
                let cost = ExtendedReal::from(util::parse_f64(fields[3], path, lineno)?);
                let mut per_degree = Vec::new();
                for chunk in fields[4..].chunks(2) {
                    per_degree.push((
                        util::parse_usize(chunk[0], path, lineno)?,
                        ExtendedReal::from(util::parse_f64(chunk[1], path, lineno)?),
                    ));
                }
                per_line.push(LineCost {
                    line: LineParam::new(a, b).map_err(|e| bad(e.to_string()))?,
                    per_degree,
                    cost,
                });
            }
            other => return Err(bad(format!("unknown record {other:?}"))),
        }
    }
    let method = method.ok_or_else(|| Error::Parse {
        path: path.to_string(),
        line: 0,
        msg: "missing method record".to_string(),
    })?;
    let realizer = realizer.ok_or_else(|| Error::Parse {
        path: path.to_string(),
        line: 0,
        msg: "missing realizer record".to_string(),
    })?;
    let value = value.ok_or_else(|| Error::Parse {
        path: path.to_string(),
        line: 0,
        msg: "missing value record".to_string(),
    })?;
    Ok(EstimateReport {
        value,
        realizer,
        per_line,
        method,
        infinite_witness,
    })
}

pub fn save_report(path: impl AsRef<Path>, report: &EstimateReport) -> Result<()> {
    std::fs::write(path, write_report(report))?;
    Ok(())
}

pub fn load_report(path: impl AsRef<Path>) -> Result<EstimateReport> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_report(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trip() {
        let report = EstimateReport {
            value: ExtendedReal::finite(0.3),
            realizer: LineParam::new(0.5, -1.3).unwrap(),
            per_line: vec![
                LineCost {
                    line: LineParam::new(0.5, -1.3).unwrap(),
                    per_degree: vec![(0, ExtendedReal::finite(0.3)), (1, ExtendedReal::finite(0.1))],
                    cost: ExtendedReal::finite(0.3),
                },
                LineCost {
                    line: LineParam::new(0.5, 0.0).unwrap(),
                    per_degree: vec![(0, ExtendedReal::Infinite)],
                    cost: ExtendedReal::Infinite,
                },
            ],
            method: EstimateMethod::Reduced,
            infinite_witness: Some(LineParam::new(0.5, 0.0).unwrap()),
        };
        let text = write_report(&report);
        let back = parse_report(&text, "mem").unwrap();
        assert_eq!(back.value, report.value);
        assert_eq!(back.realizer, report.realizer);
        assert_eq!(back.per_line.len(), 2);
        assert_eq!(back.per_line[1].cost, ExtendedReal::Infinite);
        assert_eq!(write_report(&back), text);
    }
}
