//! Parsing of command-line values and input files.

use std::path::Path;

use serde::Deserialize;

use picardcm_core::exact::{parse_q, Q, Z};
use picardcm_core::picard::PicardCurve;
use picardcm_core::{Error, Result};

/// `"c0,c1,c2"` as three rationals.
pub fn parse_q_list<const N: usize>(s: &str) -> Result<[Q; N]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(Error::Parse(format!("expected {N} comma-separated rationals, got {s:?}")));
    }
    let v: Vec<Q> = parts.iter().map(|p| parse_q(p)).collect::<Result<_>>()?;
    Ok(v.try_into().expect("length checked"))
}

pub fn parse_ids(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad example id {p:?}"))))
        .collect()
}

pub fn parse_z(s: &str) -> Result<Z> {
    s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_json<'de, T: Deserialize<'de>>(s: &'de str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// `{"a": "...", "b": "...", "c": "..."}`, validated as a smooth curve.
pub fn curve_from_json(s: &str) -> Result<PicardCurve> {
    #[derive(Deserialize)]
    struct Raw {
        a: String,
        b: String,
        c: String,
    }
    let r: Raw = parse_json(s)?;
    PicardCurve::new(parse_q(&r.a)?, parse_q(&r.b)?, parse_q(&r.c)?)
}

/// A list of `{"j1": "...", "j2": "..."}`.
pub fn points_from_json(s: &str) -> Result<Vec<(Q, Q)>> {
    #[derive(Deserialize)]
    struct Raw {
        j1: String,
        j2: String,
    }
    let r: Vec<Raw> = parse_json(s)?;
    r.iter().map(|p| Ok((parse_q(&p.j1)?, parse_q(&p.j2)?))).collect()
}

/// `{"order_basis": [[6 rationals] x 6]}`.
pub fn order_basis_from_json(s: &str) -> Result<Vec<Vec<Q>>> {
    #[derive(Deserialize)]
    struct Raw {
        order_basis: Vec<Vec<String>>,
    }
    let r: Raw = parse_json(s)?;
    r.order_basis
        .iter()
        .map(|row| row.iter().map(|x| parse_q(x)).collect())
        .collect()
}

pub fn read_curve(path: &Path) -> Result<PicardCurve> {
    curve_from_json(&read(path)?)
}

pub fn read_points(path: &Path) -> Result<Vec<(Q, Q)>> {
    points_from_json(&read(path)?)
}

pub fn read_order_basis(path: &Path) -> Result<Vec<Vec<Q>>> {
    order_basis_from_json(&read(path)?)
}
