//! File formats: complex "a+bi" tokens, dense matrix CSV, Matrix Market
//! array input, and the FDE problem JSON schema.

use crate::error::{MlError, Result};
use crate::fde::{Forcing, LinearFdeSystem, MultitermFde, ScalarForcing};
use crate::linalg::CMat;
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// 17-significant-digit lowercase scientific form; round-trips f64 exactly.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Complex token "a+bi" with both parts in scientific notation.
pub fn format_complex(z: Complex64) -> String {
    if z.im >= 0.0 || z.im.is_nan() {
        format!("{}+{}i", format_f64(z.re), format_f64(z.im))
    } else {
        format!("{}-{}i", format_f64(z.re), format_f64(-z.im))
    }
}

/// Parse "a+bi", "a-bi", "a", "bi" or "i" forms (whitespace tolerated).
pub fn parse_complex(tok: &str) -> Result<Complex64> {
    let s = tok.trim();
    if s.is_empty() {
        return Err(MlError::ParseError("empty complex token".into()));
    }
    let bad = |_| MlError::ParseError(format!("invalid complex token {s:?}"));
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // find the split sign: last '+'/'-' not at position 0 and not part
        // of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].trim().parse().map_err(bad)?;
                let imtok = body[idx..].trim();
                let im: f64 = match imtok {
                    "+" => 1.0,
                    "-" => -1.0,
                    other => other.parse().map_err(bad)?,
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = match body.trim() {
                    "" => 1.0,
                    other => other.parse().map_err(bad)?,
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(bad)?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Dense CSV with complex tokens and a column-name header row.
pub fn write_matrix_csv(a: &CMat) -> String {
    let mut out = String::new();
    let n = a.ncols();
    let header: Vec<String> = (0..n).map(|j| format!("c{j}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..a.nrows() {
        let row: Vec<String> = (0..n).map(|j| format_complex(a[[i, j]])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Read a matrix from dense CSV (header row optional) or Matrix Market
/// array format, chosen by the leading banner.
pub fn read_matrix(text: &str) -> Result<CMat> {
    if text.trim_start().starts_with("%%MatrixMarket") {
        return read_matrix_market(text);
    }
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split(',').collect();
        if rows.is_empty() && lineno == 0 {
            // header row tolerated: skip when the first token fails to parse
            if parse_complex(toks[0]).is_err() {
                continue;
            }
        }
        let mut row = Vec::with_capacity(toks.len());
        for t in toks {
            row.push(parse_complex(t).map_err(|e| {
                MlError::ParseError(format!("line {}: {e}", lineno + 1))
            })?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MlError::ParseError("no matrix rows found".into()));
    }
    let n = rows.len();
    let m = rows[0].len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != m {
            return Err(MlError::ParseError(format!(
                "row {} has {} entries, expected {m}",
                i + 1,
                r.len()
            )));
        }
    }
    Ok(Array2::from_shape_fn((n, m), |(i, j)| rows[i][j]))
}

fn read_matrix_market(text: &str) -> Result<CMat> {
    let mut lines = text.lines();
    let banner = lines.next().ok_or_else(|| MlError::ParseError("empty file".into()))?;
    let banner_l = banner.to_lowercase();
    if !banner_l.contains("matrix") || !banner_l.contains("array") {
        return Err(MlError::ParseError(format!(
            "unsupported MatrixMarket banner {banner:?}; only dense array format is accepted"
        )));
    }
    let complex = banner_l.contains("complex");
    let mut body = lines.filter(|l| !l.trim_start().starts_with('%') && !l.trim().is_empty());
    let dims = body.next().ok_or_else(|| MlError::ParseError("missing dimension line".into()))?;
    let mut it = dims.split_whitespace();
    let parse_dim = |s: Option<&str>| -> Result<usize> {
        s.ok_or_else(|| MlError::ParseError("missing dimension".into()))?
            .parse()
            .map_err(|_| MlError::ParseError(format!("bad dimension line {dims:?}")))
    };
    let nr = parse_dim(it.next())?;
    let nc = parse_dim(it.next())?;
    let mut vals = Vec::with_capacity(nr * nc);
    for line in body {
        let nums: Vec<&str> = line.split_whitespace().collect();
        let v = if complex {
            if nums.len() != 2 {
                return Err(MlError::ParseError(format!("expected 're im' pair, got {line:?}")));
            }
            Complex64::new(
                nums[0].parse().map_err(|_| MlError::ParseError(format!("bad number {line:?}")))?,
                nums[1].parse().map_err(|_| MlError::ParseError(format!("bad number {line:?}")))?,
            )
        } else {
            if nums.len() != 1 {
                return Err(MlError::ParseError(format!("expected one value, got {line:?}")));
            }
            Complex64::new(
                nums[0].parse().map_err(|_| MlError::ParseError(format!("bad number {line:?}")))?,
                0.0,
            )
        };
        vals.push(v);
    }
    if vals.len() != nr * nc {
        return Err(MlError::ParseError(format!(
            "expected {} entries, found {}",
            nr * nc,
            vals.len()
        )));
    }
    // array format is column-major
    Ok(Array2::from_shape_fn((nr, nc), |(i, j)| vals[j * nr + i]))
}

/// Parsed FDE problem: either a multiterm scalar equation or a linear system.
#[derive(Debug, Clone)]
pub enum FdeProblem {
    Multiterm(MultitermFde),
    System(LinearFdeSystem),
}

/// JSON schema:
/// {"type": "multiterm"|"system", "a": [...], "alpha": {"p":..,"q":..}|number,
///  "b": [...], "forcing": {"poly": [...], "direction": [...]?}|{"none": true}}
pub fn parse_fde_problem(text: &str) -> Result<FdeProblem> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| MlError::ParseError(format!("problem file: {e}")))?;
    let obj = v.as_object().ok_or_else(|| MlError::ParseError("problem file: expected a JSON object".into()))?;
    let typ = obj
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| MlError::ParseError("field 'type' must be \"multiterm\" or \"system\"".into()))?;

    let field = |name: &str| -> Result<&serde_json::Value> {
        obj.get(name).ok_or_else(|| MlError::ParseError(format!("missing field '{name}'")))
    };
    let floats = |name: &str, val: &serde_json::Value| -> Result<Vec<f64>> {
        val.as_array()
            .ok_or_else(|| MlError::ParseError(format!("field '{name}' must be an array of numbers")))?
            .iter()
            .map(|x| {
                x.as_f64().ok_or_else(|| MlError::ParseError(format!("field '{name}': non-numeric entry {x}")))
            })
            .collect()
    };

    match typ {
        "multiterm" => {
            let a = floats("a", field("a")?)?;
            let alpha = field("alpha")?;
            let (p, q) = match alpha {
                serde_json::Value::Object(m) => {
                    let p = m.get("p").and_then(|x| x.as_u64()).ok_or_else(|| {
                        MlError::ParseError("field 'alpha.p' must be a positive integer".into())
                    })?;
                    let q = m.get("q").and_then(|x| x.as_u64()).ok_or_else(|| {
                        MlError::ParseError("field 'alpha.q' must be a positive integer".into())
                    })?;
                    (p as u32, q as u32)
                }
                other => {
                    let x = other.as_f64().ok_or_else(|| {
                        MlError::ParseError("field 'alpha' must be a number or {p, q}".into())
                    })?;
                    rationalize(x).ok_or(MlError::IrrationalOrder(x))?
                }
            };
            let b = floats("b", field("b")?)?;
            let forcing = parse_scalar_forcing(obj.get("forcing"))?;
            Ok(FdeProblem::Multiterm(MultitermFde::new(a, p, q, b, forcing)?))
        }
        "system" => {
            let amat = field("a")?
                .as_array()
                .ok_or_else(|| MlError::ParseError("field 'a' must be a nested array matrix".into()))?;
            let rows: Vec<Vec<f64>> = amat
                .iter()
                .enumerate()
                .map(|(i, r)| floats(&format!("a[{i}]"), r))
                .collect::<Result<_>>()?;
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(MlError::ParseError("field 'a' must be square".into()));
            }
            let a = Array2::from_shape_fn((n, n), |(i, j)| rows[i][j]);
            let alpha = field("alpha")?
                .as_f64()
                .ok_or_else(|| MlError::ParseError("field 'alpha' must be a number".into()))?;
            let bval = field("b")?;
            let y0: Vec<Array1<f64>> = match bval {
                serde_json::Value::Array(list) if list.iter().all(|x| x.is_array()) => list
                    .iter()
                    .enumerate()
                    .map(|(i, r)| Ok(Array1::from_vec(floats(&format!("b[{i}]"), r)?)))
                    .collect::<Result<_>>()?,
                other => vec![Array1::from_vec(floats("b", other)?)],
            };
            let forcing = parse_vector_forcing(obj.get("forcing"), n)?;
            Ok(FdeProblem::System(LinearFdeSystem::new(a, alpha, y0, forcing)?))
        }
        other => Err(MlError::ParseError(format!("unknown problem type {other:?}"))),
    }
}

fn parse_scalar_forcing(v: Option<&serde_json::Value>) -> Result<ScalarForcing> {
    match v {
        None => Ok(ScalarForcing::None),
        Some(serde_json::Value::Object(m)) => {
            if m.contains_key("none") {
                return Ok(ScalarForcing::None);
            }
            match m.get("poly") {
                Some(serde_json::Value::Array(list)) => {
                    let coeffs: Result<Vec<f64>> = list
                        .iter()
                        .map(|x| {
                            x.as_f64().ok_or_else(|| {
                                MlError::ParseError("field 'forcing.poly': non-numeric entry".into())
                            })
                        })
                        .collect();
                    Ok(ScalarForcing::Polynomial(coeffs?))
                }
                _ => Err(MlError::ParseError("field 'forcing' must be {poly: [...]} or {none: true}".into())),
            }
        }
        Some(_) => Err(MlError::ParseError("field 'forcing' must be an object".into())),
    }
}

fn parse_vector_forcing(v: Option<&serde_json::Value>, n: usize) -> Result<Forcing> {
    match v {
        None => Ok(Forcing::None),
        Some(serde_json::Value::Object(m)) => {
            if m.contains_key("none") {
                return Ok(Forcing::None);
            }
            let coeffs = match m.get("poly") {
                Some(serde_json::Value::Array(list)) => list
                    .iter()
                    .map(|x| {
                        x.as_f64().ok_or_else(|| {
                            MlError::ParseError("field 'forcing.poly': non-numeric entry".into())
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?,
                _ => {
                    return Err(MlError::ParseError(
                        "field 'forcing' must be {poly: [...], direction: [...]} or {none: true}".into(),
                    ))
                }
            };
            let direction = match m.get("direction") {
                Some(serde_json::Value::Array(list)) => {
                    let d: Result<Vec<f64>> = list
                        .iter()
                        .map(|x| {
                            x.as_f64().ok_or_else(|| {
                                MlError::ParseError("field 'forcing.direction': non-numeric entry".into())
                            })
                        })
                        .collect();
                    Array1::from_vec(d?)
                }
                None => Array1::from_elem(n, 1.0),
                Some(_) => return Err(MlError::ParseError("field 'forcing.direction' must be an array".into())),
            };
            if direction.len() != n {
                return Err(MlError::ParseError(format!(
                    "forcing direction has length {}, system dimension is {n}",
                    direction.len()
                )));
            }
            Ok(Forcing::Polynomial { coeffs, direction })
        }
        Some(_) => Err(MlError::ParseError("field 'forcing' must be an object".into())),
    }
}

/// Best rational p/q with q ≤ 64 reproducing x exactly enough for the
/// commensurate-order reduction.
fn rationalize(x: f64) -> Option<(u32, u32)> {
    for q in 1..=64u32 {
        let p = (x * q as f64).round();
        if p >= 1.0 && (p / q as f64 - x).abs() < 1e-12 {
            let p = p as u32;
            let g = {
                fn gcd(a: u32, b: u32) -> u32 {
                    if b == 0 {
                        a
                    } else {
                        gcd(b, a % b)
                    }
                }
                gcd(p, q)
            };
            return Some((p / g, q / g));
        }
    }
    None
}
