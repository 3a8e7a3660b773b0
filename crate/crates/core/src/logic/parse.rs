//! Text formats: the line-per-gate circuit format and DIMACS-style monotone CNF/DNF.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Circuit, ClauseForm, ClauseKind, Gate, GateKind};
use crate::error::{Error, Result};

fn gate_ref(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('g')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| {
            Error::parse(
                line,
                format!("expected a gate reference g<id>, got `{tok}`"),
            )
        })
}

/// Parses `g<id> VAR|NOT|AND|OR ...` lines and a final `OUTPUT g<id>`.
/// Gates may be referenced before their definition line.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut defs: Vec<(usize, GateKind, Vec<usize>, usize)> = Vec::new();
    let mut output = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks[0] == "OUTPUT" {
            if toks.len() != 2 {
                return Err(Error::parse(line, "OUTPUT takes exactly one gate"));
            }
            if output.is_some() {
                return Err(Error::parse(line, "duplicate OUTPUT line"));
            }
            output = Some((gate_ref(toks[1], line)?, line));
            continue;
        }
        if toks.len() < 2 {
            return Err(Error::parse(line, "missing gate kind"));
        }
        let id = gate_ref(toks[0], line)?;
        let kind = match toks[1] {
            "VAR" => GateKind::Var(id),
            "NOT" => GateKind::Not,
            "AND" => GateKind::And,
            "OR" => GateKind::Or,
            other => return Err(Error::parse(line, format!("unknown gate kind `{other}`"))),
        };
        let inputs = toks[2..]
            .iter()
            .map(|t| gate_ref(t, line))
            .collect::<Result<Vec<_>>>()?;
        match kind {
            GateKind::Var(_) if !inputs.is_empty() => {
                return Err(Error::parse(line, "VAR takes no inputs"));
            }
            GateKind::Not if inputs.len() != 1 => {
                return Err(Error::parse(line, "NOT takes exactly one input"));
            }
            _ => {}
        }
        defs.push((id, kind, inputs, line));
    }
    let (out_ext, out_line) = output.ok_or_else(|| Error::parse(0, "missing OUTPUT line"))?;
    let mut dense = HashMap::new();
    for (i, (id, _, _, line)) in defs.iter().enumerate() {
        if dense.insert(*id, i).is_some() {
            return Err(Error::parse(*line, format!("gate g{id} defined twice")));
        }
    }
    let mut gates = Vec::with_capacity(defs.len());
    let mut ext_ids = Vec::with_capacity(defs.len());
    for (id, kind, inputs, line) in defs {
        let inputs = inputs
            .iter()
            .map(|e| {
                dense
                    .get(e)
                    .copied()
                    .ok_or_else(|| Error::parse(line, format!("undefined gate g{e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        gates.push(Gate { kind, inputs });
        ext_ids.push(id);
    }
    let out = *dense
        .get(&out_ext)
        .ok_or_else(|| Error::parse(out_line, format!("undefined output gate g{out_ext}")))?;
    Circuit::new(gates, out, Some(ext_ids)).map_err(|e| match e {
        Error::Input(msg) => Error::parse(0, msg),
        other => other,
    })
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    for &g in c.topological() {
        let gate = c.gate(g);
        let _ = write!(s, "g{} {}", c.ext_id(g), gate.kind.keyword());
        for &i in &gate.inputs {
            let _ = write!(s, " g{}", c.ext_id(i));
        }
        s.push('\n');
    }
    let _ = writeln!(s, "OUTPUT g{}", c.ext_id(c.output()));
    s
}

/// Parses `p cnf n m` / `p dnf n m` files with positive literals only.
/// Variables are `1..=n`; the result is minimized.
pub fn parse_dimacs(text: &str) -> Result<ClauseForm> {
    let mut header: Option<(ClauseKind, usize, usize)> = None;
    let mut clauses: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut last_line = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') || content.starts_with('%') {
            continue;
        }
        if content.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line, "duplicate header"));
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(Error::parse(
                    line,
                    "header must be `p cnf|dnf <vars> <clauses>`",
                ));
            }
            let kind = match toks[1] {
                "cnf" => ClauseKind::Cnf,
                "dnf" => ClauseKind::Dnf,
                other => return Err(Error::parse(line, format!("unknown format `{other}`"))),
            };
            let n = toks[2]
                .parse()
                .map_err(|_| Error::parse(line, "bad variable count"))?;
            let m = toks[3]
                .parse()
                .map_err(|_| Error::parse(line, "bad clause count"))?;
            header = Some((kind, n, m));
            continue;
        }
        let (_, n, _) = header.ok_or_else(|| Error::parse(line, "clause before header"))?;
        for tok in content.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad literal `{tok}`")))?;
            if lit < 0 {
                return Err(Error::parse(
                    line,
                    format!("negative literal {lit} in a monotone form"),
                ));
            }
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::parse(line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                let v = lit as usize;
                if v > n {
                    return Err(Error::parse(
                        line,
                        format!("variable {v} exceeds declared {n}"),
                    ));
                }
                current.push(v);
            }
        }
    }
    let (kind, n, m) = header.ok_or_else(|| Error::parse(last_line, "missing header"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    ClauseForm::new(kind, (1..=n).collect(), clauses).map_err(|e| match e {
        Error::Input(msg) => Error::parse(last_line, msg),
        other => other,
    })
}

/// Writes DIMACS with variables renumbered `1..=n` in ascending order.
pub fn write_dimacs(f: &ClauseForm, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "c {c}");
    }
    let kind = match f.kind() {
        ClauseKind::Cnf => "cnf",
        ClauseKind::Dnf => "dnf",
    };
    let _ = writeln!(s, "p {kind} {} {}", f.variables().len(), f.clauses().len());
    for c in f.clauses() {
        for v in c {
            let _ = write!(s, "{} ", f.variables().binary_search(v).unwrap() + 1);
        }
        s.push_str("0\n");
    }
    s
}
