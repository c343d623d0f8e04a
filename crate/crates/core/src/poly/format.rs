//! The shared polytope file format.
//!
//! One JSON object per file:
//!
//! ```json
//! {"dim": 2, "rep": "V", "points": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}
//! {"dim": 2, "rep": "H", "normals": [[1, 0], [-1, 0]], "offsets": [1, 0]}
//! ```
//!
//! With `"exact": true` every number is instead a string `"p/q"` (or `"p"`)
//! and the parsed polytope keeps the rational coordinates alongside the
//! rounded `f64` geometry, so the exact LP mode can use them losslessly.

use super::{Body, ExactPoint, HPolytope, Halfspace, PolyError, VPolytope};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid polytope file: {0}")]
    Invalid(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Num(f64),
    Frac(String),
}

#[derive(Serialize, Deserialize)]
struct PolytopeFile {
    dim: usize,
    rep: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Vec<Coord>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normals: Option<Vec<Vec<Coord>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    offsets: Option<Vec<Coord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact: Option<bool>,
}

fn parse_coord(c: &Coord) -> Result<BigRational, FormatError> {
    match c {
        Coord::Num(x) => BigRational::from_float(*x)
            .ok_or_else(|| FormatError::Invalid(format!("non-finite number {x}"))),
        Coord::Frac(s) => {
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s.trim(), "1"),
            };
            let n: BigInt = num
                .parse()
                .map_err(|_| FormatError::Invalid(format!("bad numerator in {s:?}")))?;
            let d: BigInt = den
                .parse()
                .map_err(|_| FormatError::Invalid(format!("bad denominator in {s:?}")))?;
            if d == BigInt::from(0) {
                return Err(FormatError::Invalid(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn parse_vector(v: &[Coord], dim: usize) -> Result<ExactPoint, FormatError> {
    if v.len() != dim {
        return Err(FormatError::Invalid(format!(
            "vector of length {} in dimension {dim}",
            v.len()
        )));
    }
    v.iter().map(parse_coord).collect()
}

/// Parses a polytope from its JSON text.
pub fn parse(text: &str) -> Result<Body, FormatError> {
    let file: PolytopeFile = serde_json::from_str(text)?;
    if file.dim == 0 {
        return Err(FormatError::Invalid("dimension must be positive".into()));
    }
    let keep_exact = file.exact.unwrap_or(false);
    match file.rep.as_str() {
        "V" => {
            let coords = file
                .points
                .ok_or_else(|| FormatError::Invalid("rep \"V\" requires points".into()))?;
            if coords.is_empty() {
                return Err(FormatError::Invalid("empty point list".into()));
            }
            let exact: Vec<ExactPoint> = coords
                .iter()
                .map(|p| parse_vector(p, file.dim))
                .collect::<Result<_, _>>()?;
            let mut v = VPolytope::with_exact(file.dim, exact);
            if !keep_exact {
                v.exact = None;
            }
            Ok(Body::from_v(v))
        }
        "H" => {
            let normals = file
                .normals
                .ok_or_else(|| FormatError::Invalid("rep \"H\" requires normals".into()))?;
            let offsets = file
                .offsets
                .ok_or_else(|| FormatError::Invalid("rep \"H\" requires offsets".into()))?;
            if normals.len() != offsets.len() {
                return Err(FormatError::Invalid(format!(
                    "{} normals vs {} offsets",
                    normals.len(),
                    offsets.len()
                )));
            }
            if normals.is_empty() {
                return Err(FormatError::Invalid("empty halfspace list".into()));
            }
            let mut rows = Vec::with_capacity(normals.len());
            let mut exact = Vec::with_capacity(normals.len());
            for (n, b) in normals.iter().zip(&offsets) {
                let nq = parse_vector(n, file.dim)?;
                let bq = parse_coord(b)?;
                rows.push(Halfspace {
                    normal: nq.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect(),
                    offset: bq.to_f64().unwrap_or(f64::NAN),
                });
                exact.push((nq, bq));
            }
            let mut h = HPolytope { dim: file.dim, rows, exact: Some(exact) };
            if !keep_exact {
                h.exact = None;
            }
            h.validate()?;
            Ok(Body::from_h(h))
        }
        other => Err(FormatError::Invalid(format!("unknown rep {other:?}"))),
    }
}

/// Reads a polytope file from disk.
pub fn read_body(path: &Path) -> Result<Body, FormatError> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}

fn rational_string(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders a body in the file format, preferring the cached V presentation.
/// With `exact`, coordinates are written as `"p/q"` strings (lifting the
/// float geometry when no rational mirror is present).
pub fn render(body: &Body, exact: bool) -> Result<String, FormatError> {
    let value = if let Some(v) = body.try_v() {
        render_v(v, exact)
    } else if let Some(h) = body.try_h() {
        render_h(h, exact)
    } else {
        return Err(FormatError::Invalid("body has no presentation".into()));
    };
    Ok(serde_json::to_string(&value)?)
}

fn lift(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

fn render_v(v: &VPolytope, exact: bool) -> PolytopeFile {
    let points = if exact {
        let rows: Vec<Vec<BigRational>> = match &v.exact {
            Some(e) => e.clone(),
            None => v
                .points
                .iter()
                .map(|p| p.iter().map(|&x| lift(x)).collect())
                .collect(),
        };
        rows.iter()
            .map(|p| p.iter().map(|q| Coord::Frac(rational_string(q))).collect())
            .collect()
    } else {
        v.points
            .iter()
            .map(|p| p.iter().map(|&x| Coord::Num(x)).collect())
            .collect()
    };
    PolytopeFile {
        dim: v.dim,
        rep: "V".into(),
        points: Some(points),
        normals: None,
        offsets: None,
        exact: exact.then_some(true),
    }
}

fn render_h(h: &HPolytope, exact: bool) -> PolytopeFile {
    let (normals, offsets) = if exact {
        let rows: Vec<(ExactPoint, BigRational)> = match &h.exact {
            Some(e) => e.clone(),
            None => h
                .rows
                .iter()
                .map(|r| (r.normal.iter().map(|&x| lift(x)).collect(), lift(r.offset)))
                .collect(),
        };
        (
            rows.iter()
                .map(|(n, _)| n.iter().map(|q| Coord::Frac(rational_string(q))).collect())
                .collect(),
            rows.iter()
                .map(|(_, b)| Coord::Frac(rational_string(b)))
                .collect(),
        )
    } else {
        (
            h.rows
                .iter()
                .map(|r| r.normal.iter().map(|&x| Coord::Num(x)).collect())
                .collect(),
            h.rows.iter().map(|r| Coord::Num(r.offset)).collect(),
        )
    };
    PolytopeFile {
        dim: h.dim,
        rep: "H".into(),
        points: None,
        normals: Some(normals),
        offsets: Some(offsets),
        exact: exact.then_some(true),
    }
}

/// Writes a body to disk in the file format.
pub fn write_body(path: &Path, body: &Body, exact: bool) -> Result<(), FormatError> {
    let text = render(body, exact)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_v_polytope() {
        let body = parse(r#"{"dim":2,"rep":"V","points":[[0,0],[1,0],[0,1]]}"#).unwrap();
        let v = body.try_v().unwrap();
        assert_eq!(v.points.len(), 3);
        assert!(v.exact.is_none());
    }

    #[test]
    fn parses_exact_h_polytope() {
        let text = r#"{"dim":1,"rep":"H","exact":true,"normals":[["1"],["-1"]],"offsets":["1/3","2/3"]}"#;
        let body = parse(text).unwrap();
        let h = body.try_h().unwrap();
        assert!((h.rows[0].offset - 1.0 / 3.0).abs() < 1e-15);
        let exact = h.exact.as_ref().unwrap();
        assert_eq!(exact[0].1, BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(parse(r#"{"dim":2,"rep":"V"}"#).is_err());
        assert!(parse(r#"{"dim":2,"rep":"X","points":[[0,0]]}"#).is_err());
        assert!(parse(r#"{"dim":2,"rep":"V","points":[[0]]}"#).is_err());
        assert!(parse(r#"{"dim":2,"rep":"H","normals":[[1,0]],"offsets":["1/0"]}"#).is_err());
        assert!(parse(r#"{"dim":2,"rep":"H","normals":[[0,0]],"offsets":[1]}"#).is_err());
    }

    #[test]
    fn round_trips_through_render() {
        let src = r#"{"dim":2,"rep":"V","points":[[0.5,0.25],[1,0],[0,1]]}"#;
        let body = parse(src).unwrap();
        let text = render(&body, false).unwrap();
        let again = parse(&text).unwrap();
        assert_eq!(body.try_v().unwrap().points, again.try_v().unwrap().points);

        let text = render(&body, true).unwrap();
        assert!(text.contains("1/2"));
        let exact = parse(&text).unwrap();
        assert_eq!(
            exact.try_v().unwrap().exact.as_ref().unwrap()[0][0],
            BigRational::new(1.into(), 2.into())
        );
    }
}
