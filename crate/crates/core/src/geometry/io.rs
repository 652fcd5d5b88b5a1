//! Plain-text polytope format: a `d N` header, then `N` rows of `d` reals.
//! `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DVector;

use super::Point;
use crate::error::{Error, Result};

pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = rows.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let head: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse { line, msg: e.to_string() })?;
    let [d, n] = head[..] else {
        return Err(Error::Parse {
            line,
            msg: "header must be `d N`".into(),
        });
    };
    let mut points = Vec::with_capacity(n);
    for (line, row) in rows {
        let coords: Vec<f64> = row
            .split_whitespace()
            .map(str::parse::<f64>)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        if coords.len() != d {
            return Err(Error::Parse {
                line,
                msg: format!("expected {d} coordinates, found {}", coords.len()),
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse {
                line,
                msg: "non-finite coordinate".into(),
            });
        }
        points.push(DVector::from_vec(coords));
    }
    if points.len() != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header announces {n} points, found {}", points.len()),
        });
    }
    Ok(points)
}

pub fn format_points(points: &[Point]) -> String {
    let d = points.first().map_or(0, |p| p.len());
    let mut out = format!("{d} {}\n", points.len());
    for p in points {
        let row: Vec<String> = p.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn read_points(path: &Path) -> Result<Vec<Point>> {
    parse_points(&std::fs::read_to_string(path)?)
}

pub fn write_points(path: &Path, points: &[Point]) -> Result<()> {
    std::fs::write(path, format_points(points))?;
    Ok(())
}
