//! Shared text-format helpers.
//!
//! All file formats in this crate are line-oriented with an explicit
//! `paretomatch <kind> <version>` header. Numbers are serialized with 17
//! significant digits, enough for an exact `f64` value round-trip.

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Formats with 17 significant digits; "inf" for the infinite marker.
pub fn fmt_f64(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Parses a number, accepting "inf" for infinity.
pub fn parse_f64(tok: &str, path: &str, line: usize) -> Result<f64> {
    if tok == "inf" {
        return Ok(f64::INFINITY);
    }
    tok.parse::<f64>().map_err(|e| Error::Parse {
        path: path.to_string(),
        line,
        msg: format!("bad number {tok:?}: {e}"),
    })
}

pub fn parse_usize(tok: &str, path: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|e| Error::Parse {
        path: path.to_string(),
        line,
        msg: format!("bad integer {tok:?}: {e}"),
    })
}

/// Checks a `paretomatch <kind> <version>` header line.
pub fn check_header(first_line: Option<&str>, kind: &str, path: &str) -> Result<()> {
    let header = first_line.ok_or_else(|| Error::Parse {
        path: path.to_string(),
        line: 1,
        msg: "empty file".to_string(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "paretomatch" || fields[1] != kind {
        return Err(Error::Parse {
            path: path.to_string(),
            line: 1,
            msg: format!("expected header \"paretomatch {kind} <version>\", got {header:?}"),
        });
    }
    let version = parse_usize(fields[2], path, 1)?;
    if version as u32 > FORMAT_VERSION {
        return Err(Error::Parse {
            path: path.to_string(),
            line: 1,
            msg: format!("unsupported {kind} format version {version}"),
        });
    }
    Ok(())
}

pub fn header(kind: &str) -> String {
    format!("paretomatch {kind} {FORMAT_VERSION}")
}

/// Strips comments and blank lines, keeping 1-based line numbers.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            None
        } else {
            Some((i + 1, s))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip_is_exact() {
        for x in [0.5, 1.0 / 3.0, -std::f64::consts::E, 1e-300, 6.02e23] {
            let s = fmt_f64(x);
            assert_eq!(parse_f64(&s, "t", 1).unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(parse_f64("inf", "t", 1).unwrap(), f64::INFINITY);
    }

    #[test]
    fn header_check() {
        let text = header("diagram");
        assert!(check_header(Some(&text), "diagram", "t").is_ok());
        assert!(check_header(Some(&text), "grid", "t").is_err());
        assert!(check_header(Some("bogus"), "diagram", "t").is_err());
        assert!(check_header(None, "diagram", "t").is_err());
    }
}
