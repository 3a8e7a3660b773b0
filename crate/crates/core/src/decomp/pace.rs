//! PACE-2017 `.td` files. Vertex numbers are external ids supplied by the caller.

use std::fmt::Write as _;

use super::TreeDecomp;
use crate::error::{Error, Result};

/// Parses a `.td` file, rooting it at bag 1. `vertex` maps a file vertex
/// number to an internal vertex id.
pub fn read_td(text: &str, vertex: impl Fn(usize) -> Option<usize>) -> Result<TreeDecomp> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            continue;
        }
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad number `{t}`")))
        };
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(Error::parse(
                        line,
                        "header must be `s td <bags> <max bag> <vertices>`",
                    ));
                }
                let nb = num(toks[2])?;
                header = Some((nb, num(toks[3])?));
                bags = vec![None; nb];
            }
            "b" => {
                let (nb, _) = header.ok_or_else(|| Error::parse(line, "bag before header"))?;
                let id = num(toks
                    .get(1)
                    .ok_or_else(|| Error::parse(line, "missing bag id"))?)?;
                if id == 0 || id > nb {
                    return Err(Error::parse(line, format!("bag id {id} out of range")));
                }
                if bags[id - 1].is_some() {
                    return Err(Error::parse(line, format!("bag {id} listed twice")));
                }
                let vs = toks[2..]
                    .iter()
                    .map(|t| {
                        let x = num(t)?;
                        vertex(x).ok_or_else(|| Error::parse(line, format!("unknown vertex {x}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                bags[id - 1] = Some(vs);
            }
            _ => {
                if header.is_none() {
                    return Err(Error::parse(line, "edge before header"));
                }
                if toks.len() != 2 {
                    return Err(Error::parse(line, "edge lines have two bag ids"));
                }
                let (a, b) = (num(toks[0])?, num(toks[1])?);
                if a == 0 || b == 0 {
                    return Err(Error::parse(line, "bag ids start at 1"));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, maxbag) = header.ok_or_else(|| Error::parse(0, "missing `s td` header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} is missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    if bags.iter().any(|b| b.len() > maxbag) {
        return Err(Error::parse(0, "a bag exceeds the declared maximum size"));
    }
    TreeDecomp::from_edges(bags, &edges, 0).map_err(|e| match e {
        Error::Input(m) => Error::parse(0, m),
        other => other,
    })
}

/// Writes bags as `b <i+1> ...` with vertices mapped through `vertex`.
pub fn write_td(td: &TreeDecomp, num_vertices: usize, vertex: impl Fn(usize) -> usize) -> String {
    let mut s = String::new();
    let maxbag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(s, "s td {} {} {}", td.len(), maxbag, num_vertices);
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for &v in bag {
            let _ = write!(s, " {}", vertex(v));
        }
        s.push('\n');
    }
    for b in 0..td.len() {
        if let Some(p) = td.parent(b) {
            let _ = writeln!(s, "{} {}", p + 1, b + 1);
        }
    }
    s
}
