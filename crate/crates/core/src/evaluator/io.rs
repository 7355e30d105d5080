//! Particle configuration and coefficient files.
//!
//! Configuration: a `# group=<T|SO2|O3|O3F>` header, then one particle per
//! line with whitespace-separated coordinates (`theta`; `r theta`;
//! `r theta phi`; `r theta phi mu`). Other `#` lines are comments.
//!
//! Coefficients: `<tuple> <re> <im>` per line, the tuple in the flat
//! comma-separated form of the graph file.

use std::fmt::Write as _;

use num_complex::Complex;

use super::{CoefficientVector, Particle, ParticleConfig};
use crate::error::{Error, Result};
use crate::indexsets::{BasisTuple, Group};
use crate::scalar::Scalar;

fn malformed(offset: usize, message: impl Into<String>) -> Error {
    Error::Malformed { offset, message: message.into() }
}

/// Non-blank, non-comment lines with the byte offset of each token.
fn data_lines(input: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    let mut offset = 0;
    input.split_inclusive('\n').filter_map(move |raw| {
        let base = offset;
        offset += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            return None;
        }
        let toks = line
            .split_whitespace()
            .map(|t| (base + (t.as_ptr() as usize - line.as_ptr() as usize), t))
            .collect();
        Some((base, toks))
    })
}

fn parse_scalar<T: Scalar>(offset: usize, tok: &str) -> Result<T> {
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .and_then(T::from_f64)
        .ok_or_else(|| malformed(offset, format!("bad number {tok:?}")))
}

pub fn parse_config<T: Scalar>(input: &str) -> Result<ParticleConfig<T>> {
    let mut group = None;
    let mut offset = 0;
    for raw in input.split_inclusive('\n') {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(g) = rest.trim().strip_prefix("group=") {
                let at = offset + raw.find("group=").unwrap_or(0) + "group=".len();
                group = Some(g.trim().parse::<Group>().map_err(|e| malformed(at, e.to_string()))?);
                break;
            }
        } else if !line.is_empty() {
            break;
        }
        offset += raw.len();
    }
    let group = group.ok_or_else(|| malformed(0, "missing `# group=<...>` header"))?;
    let mut particles = Vec::new();
    for (base, toks) in data_lines(input) {
        if toks.len() != group.arity() {
            return Err(malformed(
                base,
                format!("{group} particles need {} coordinates, got {}", group.arity(), toks.len()),
            ));
        }
        let coords = toks
            .iter()
            .map(|&(o, t)| parse_scalar::<T>(o, t))
            .collect::<Result<Vec<_>>>()?;
        particles.push(Particle::from_coordinates(group, &coords).map_err(|e| malformed(base, e.to_string()))?);
    }
    ParticleConfig::new(group, particles)
}

pub fn write_config<T: Scalar>(config: &ParticleConfig<T>) -> String {
    let mut out = format!("# group={}\n", config.group());
    for p in config.particles() {
        let line: Vec<String> = p.coordinates().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_coefficients<T: Scalar>(group: Group, input: &str) -> Result<CoefficientVector<T>> {
    let mut out = CoefficientVector::new();
    for (base, toks) in data_lines(input) {
        if toks.len() != 3 {
            return Err(malformed(base, "expected `<tuple> <re> <im>`"));
        }
        let tuple = BasisTuple::parse_flat(group, toks[0].1).map_err(|e| malformed(toks[0].0, e.to_string()))?;
        let re = parse_scalar::<T>(toks[1].0, toks[1].1)?;
        let im = parse_scalar::<T>(toks[2].0, toks[2].1)?;
        out.insert(tuple, Complex::new(re, im));
    }
    Ok(out)
}
