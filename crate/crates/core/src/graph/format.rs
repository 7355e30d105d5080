//! Line-oriented text format for evaluation graphs.
//!
//! ```text
//! ACEDAG v1 group=T p=1 D=6 numax=3 alg=orig n=1
//! 0 0 -6 -
//! ...
//! 17 1 1,1 9 9
//! ```
//!
//! Each node line is `<id> <aux> <tuple> <parent> <parent>` or
//! `<id> <aux> <tuple> -` for order-1 nodes. The tuple is the flat
//! comma-separated list of element components in canonical order.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Algorithm, EvalGraph, GraphMeta, GraphNode};
use crate::error::{Error, Result};
use crate::indexsets::{BasisTuple, DegreeSpec, Group, Norm};

pub const FORMAT_VERSION: &str = "v1";
const MAGIC: &str = "ACEDAG";

pub fn serialize(graph: &EvalGraph) -> String {
    let m = graph.meta();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{MAGIC} {FORMAT_VERSION} group={} p={} D={} numax={} alg={} n={}",
        m.group,
        m.degree.norm,
        m.degree.max_degree,
        m.nu_max,
        m.algorithm.tag(),
        m.algorithm.n()
    );
    for node in graph.nodes() {
        let _ = write!(out, "{} {} {}", node.id, u8::from(node.auxiliary), node.tuple.to_flat_string());
        match node.parents {
            Some((a, b)) => {
                let _ = writeln!(out, " {a} {b}");
            }
            None => out.push_str(" -\n"),
        }
    }
    out
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(line: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((base + s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((base + s, &line[s..]));
    }
    out
}

fn malformed(offset: usize, message: impl Into<String>) -> Error {
    Error::Malformed { offset, message: message.into() }
}

fn parse_header(line: &str) -> Result<GraphMeta> {
    let toks = tokens(line, 0);
    if toks.first().map(|t| t.1) != Some(MAGIC) {
        return Err(malformed(0, format!("expected {MAGIC} header")));
    }
    match toks.get(1) {
        Some(&(_, v)) if v == FORMAT_VERSION => {}
        Some(&(_, v)) => return Err(Error::UnsupportedVersion(v.to_string())),
        None => return Err(malformed(line.len(), "missing format version")),
    }
    let keys = ["group", "p", "D", "numax", "alg", "n"];
    let mut values = Vec::with_capacity(keys.len());
    for (i, key) in keys.iter().enumerate() {
        let Some(&(off, tok)) = toks.get(i + 2) else {
            return Err(malformed(line.len(), format!("missing header field {key}")));
        };
        match tok.split_once('=') {
            Some((k, v)) if k == *key => values.push((off + k.len() + 1, v)),
            _ => return Err(malformed(off, format!("expected {key}=<value>, got {tok:?}"))),
        }
    }
    if let Some(&(off, tok)) = toks.get(keys.len() + 2) {
        return Err(malformed(off, format!("unexpected header token {tok:?}")));
    }
    let group: Group = values[0].1.parse().map_err(|e: Error| malformed(values[0].0, e.to_string()))?;
    let norm: Norm = values[1].1.parse().map_err(|e: Error| malformed(values[1].0, e.to_string()))?;
    let num = |i: usize| -> Result<usize> {
        values[i].1.parse().map_err(|_| malformed(values[i].0, format!("bad integer {:?}", values[i].1)))
    };
    let max_degree = u32::try_from(num(2)?).map_err(|_| malformed(values[2].0, "D out of range"))?;
    let nu_max = num(3)?;
    let n = num(5)?;
    let algorithm = match values[4].1 {
        "orig" if n == 1 => Algorithm::Original,
        "orig" => return Err(malformed(values[5].0, "alg=orig requires n=1")),
        "gen" if n >= 1 => Algorithm::Generalized { n },
        "gen" => return Err(malformed(values[5].0, "alg=gen requires n >= 1")),
        other => return Err(malformed(values[4].0, format!("unknown algorithm {other:?}"))),
    };
    if nu_max == 0 {
        return Err(malformed(values[3].0, "numax must be at least 1"));
    }
    Ok(GraphMeta { group, degree: DegreeSpec::new(norm, max_degree), nu_max, algorithm })
}

/// Parses a graph, checking every structural invariant. Errors carry the
/// byte offset of the offending token.
pub fn deserialize(input: &str) -> Result<EvalGraph> {
    let mut lines = input.split_inclusive('\n');
    let header = lines.next().ok_or_else(|| malformed(0, "empty input"))?;
    let meta = parse_header(header.trim_end_matches(['\n', '\r']))?;
    let mut graph = EvalGraph { meta, nodes: Vec::new(), index: HashMap::new() };
    let mut offset = header.len();
    for raw in lines {
        let base = offset;
        offset += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            continue;
        }
        let toks = tokens(line, base);
        let id = graph.nodes.len();
        let field = |i: usize| -> Result<(usize, &str)> {
            toks.get(i).copied().ok_or_else(|| malformed(base + line.len(), "truncated node line"))
        };
        let (off, tok) = field(0)?;
        if tok.parse::<usize>().ok() != Some(id) {
            return Err(malformed(off, format!("expected node id {id}, got {tok:?}")));
        }
        let (aux_off, tok) = field(1)?;
        let auxiliary = match tok {
            "0" => false,
            "1" => true,
            _ => return Err(malformed(aux_off, format!("aux flag must be 0 or 1, got {tok:?}"))),
        };
        let (off, tok) = field(2)?;
        let tuple = BasisTuple::parse_flat(meta.group, tok).map_err(|e| malformed(off, e.to_string()))?;
        if tok != tuple.to_flat_string() {
            return Err(malformed(off, "tuple is not in canonical order"));
        }
        if graph.index.contains_key(&tuple) {
            return Err(malformed(off, format!("duplicate tuple {tuple}")));
        }
        let (poff, tok) = field(3)?;
        let parents = if tok == "-" {
            if tuple.order() != 1 {
                return Err(malformed(poff, "nodes of order >= 2 need two parents"));
            }
            if toks.len() > 4 {
                return Err(malformed(toks[4].0, "trailing tokens"));
            }
            None
        } else {
            let parse = |o: usize, t: &str| -> Result<usize> {
                let p: usize = t.parse().map_err(|_| malformed(o, format!("bad parent id {t:?}")))?;
                if p >= id {
                    return Err(malformed(o, format!("parent {p} does not precede node {id}")));
                }
                Ok(p)
            };
            let a = parse(poff, tok)?;
            let (qoff, qtok) = field(4)?;
            let b = parse(qoff, qtok)?;
            if toks.len() > 5 {
                return Err(malformed(toks[5].0, "trailing tokens"));
            }
            if tuple.order() < 2 {
                return Err(malformed(poff, "order-1 nodes have no parents"));
            }
            if graph.nodes[a].tuple.union(&graph.nodes[b].tuple) != tuple {
                return Err(malformed(poff, "parent tuples do not multiply to the node"));
            }
            Some((a, b))
        };
        let expected_aux = tuple.order() >= 2 && !graph.is_target(&tuple);
        if auxiliary != expected_aux {
            return Err(malformed(aux_off, "auxiliary flag disagrees with the target basis"));
        }
        graph.index.insert(tuple.clone(), id);
        graph.nodes.push(GraphNode { id, tuple, parents, auxiliary });
    }
    if graph.nodes.is_empty() {
        return Err(malformed(offset, "graph has no nodes"));
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;

    fn small() -> EvalGraph {
        build(Group::T, DegreeSpec::total(6), 3, Algorithm::Original).unwrap()
    }

    #[test]
    fn round_trip() {
        let g = small();
        let text = serialize(&g);
        assert!(text.starts_with("ACEDAG v1 group=T p=1 D=6 numax=3 alg=orig n=1\n0 0 -6 -\n"));
        assert_eq!(deserialize(&text).unwrap(), g);
    }

    #[test]
    fn header_only_is_rejected() {
        let header = "ACEDAG v1 group=T p=1 D=2 numax=2 alg=orig n=1\n";
        let err = deserialize(header).unwrap_err();
        assert_eq!(err, Error::Malformed { offset: header.len(), message: "graph has no nodes".into() });
    }

    #[test]
    fn version_mismatch() {
        let text = serialize(&small()).replacen("v1", "v2", 1);
        assert_eq!(deserialize(&text).unwrap_err(), Error::UnsupportedVersion("v2".into()));
    }

    #[test]
    fn offsets_point_at_bad_token() {
        let text = serialize(&small());
        let bad = text.replacen("\n3 0 -3 -\n", "\n3 0 -3 x\n", 1);
        let pos = bad.find("-3 x").unwrap() + 3;
        match deserialize(&bad).unwrap_err() {
            Error::Malformed { offset, .. } => assert_eq!(offset, pos),
            e => panic!("unexpected {e:?}"),
        }
        let bad = text.replacen("\n3 0 -3 -\n", "\n3 1 -3 -\n", 1);
        let pos = bad.find("\n3 1").unwrap() + 3;
        match deserialize(&bad).unwrap_err() {
            Error::Malformed { offset, .. } => assert_eq!(offset, pos),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn rejects_wrong_parents() {
        let text = serialize(&small());
        let last = text.lines().last().unwrap().to_string();
        let mut parts: Vec<&str> = last.split(' ').collect();
        parts[3] = "0";
        let bad = text.replace(&last, &parts.join(" "));
        assert!(matches!(deserialize(&bad), Err(Error::Malformed { .. })));
        assert!(matches!(deserialize(""), Err(Error::Malformed { offset: 0, .. })));
    }
}
