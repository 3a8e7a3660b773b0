//! Text formats: c2d-style `.nnf` with `.vtree` and `.rho` sidecars, a
//! line-oriented `.bdd` format, and Graphviz renderings of both.

use std::fmt::Write;

use super::reduce::compact;
use super::{BddNode, Nbdd, NnfCircuit, NnfGate, NnfKind, Structure, VTree};
use crate::error::{Error, Result};
use crate::logic::Var;

/// c2d-style text. Literals use 1-based positions in the sorted variable list,
/// recorded by a leading `c labels` line; the output is the last node.
pub fn write_nnf(d: &NnfCircuit) -> String {
    let rho: Vec<Option<usize>> = (0..d.len()).map(|g| d.rho(g)).collect();
    let (gates, _, _) = compact(d.gates().to_vec(), rho, d.output());
    let edges: usize = gates
        .iter()
        .filter(|g| matches!(g.kind, NnfKind::And | NnfKind::Or))
        .map(|g| g.inputs.len())
        .sum();
    let mut s = String::new();
    let labels: Vec<String> = d.variables().iter().map(|v| v.to_string()).collect();
    writeln!(s, "c labels {}", labels.join(" ")).unwrap();
    writeln!(s, "nnf {} {} {}", gates.len(), edges, d.variables().len()).unwrap();
    let lit = |v: Var| d.var_position(v).unwrap() + 1;
    for g in &gates {
        let ins: Vec<String> = g.inputs.iter().map(|i| i.to_string()).collect();
        match g.kind {
            NnfKind::Var(v) => writeln!(s, "L {}", lit(v)),
            NnfKind::Not => match gates[g.inputs[0]].kind {
                NnfKind::Var(v) => writeln!(s, "L -{}", lit(v)),
                _ => unreachable!(),
            },
            NnfKind::And => writeln!(s, "A {} {}", g.inputs.len(), ins.join(" ")),
            NnfKind::Or => writeln!(s, "O 0 {} {}", g.inputs.len(), ins.join(" ")),
        }
        .unwrap();
    }
    s
}

/// `<gate id> <v-tree node id>` lines for the gates written by [`write_nnf`].
pub fn write_rho(d: &NnfCircuit) -> Option<String> {
    d.structure()?;
    let rho: Vec<Option<usize>> = (0..d.len()).map(|g| d.rho(g)).collect();
    let (_, rho, _) = compact(d.gates().to_vec(), rho, d.output());
    let mut s = String::new();
    for (g, r) in rho.iter().enumerate() {
        if let Some(n) = r {
            writeln!(s, "{g} {n}").unwrap();
        }
    }
    Some(s)
}

fn tokens(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn num<T: std::str::FromStr>(tok: Option<&&str>, line: usize) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(line, "expected a number"))
}

/// Reads [`write_nnf`] output, optionally with the `.vtree` and `.rho` sidecars.
pub fn read_nnf(text: &str, vtree: Option<&str>, rho: Option<&str>) -> Result<NnfCircuit> {
    let mut labels: Option<Vec<Var>> = None;
    let mut header: Option<(usize, usize, usize)> = None;
    let mut gates: Vec<NnfGate> = Vec::new();
    let mut not_of: Vec<Option<usize>> = Vec::new();
    let mut extra: Vec<NnfGate> = Vec::new();
    let mut pending: Vec<(usize, Var)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let t = tokens(raw);
        match t.first().copied() {
            None => continue,
            Some("c") => {
                if t.get(1) == Some(&"labels") {
                    labels = Some(
                        t[2..]
                            .iter()
                            .map(|x| x.parse())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| Error::parse(ln, "bad variable label"))?,
                    );
                }
            }
            Some("nnf") => {
                header = Some((num(t.get(1), ln)?, num(t.get(2), ln)?, num(t.get(3), ln)?))
            }
            Some("L") => {
                let l: i64 = num(t.get(1), ln)?;
                if l == 0 {
                    return Err(Error::parse(ln, "literal 0"));
                }
                pending.push((gates.len(), l.unsigned_abs() as usize));
                gates.push(NnfGate {
                    kind: if l > 0 { NnfKind::Var(0) } else { NnfKind::Not },
                    inputs: Vec::new(),
                });
                not_of.push(None);
            }
            Some(k @ ("A" | "O")) => {
                let skip = if k == "A" { 1 } else { 2 };
                let c: usize = num(t.get(skip), ln)?;
                let ins: Vec<usize> = t[skip + 1..]
                    .iter()
                    .map(|x| x.parse().map_err(|_| Error::parse(ln, "bad input id")))
                    .collect::<Result<_>>()?;
                if ins.len() != c || ins.iter().any(|&x| x >= gates.len()) {
                    return Err(Error::parse(ln, "input count or id mismatch"));
                }
                let kind = if k == "A" { NnfKind::And } else { NnfKind::Or };
                gates.push(NnfGate { kind, inputs: ins });
                not_of.push(None);
            }
            Some(_) => return Err(Error::parse(ln, format!("unknown line: {raw}"))),
        }
    }
    let (nodes, _, nvars) = header.ok_or_else(|| Error::parse(0, "missing nnf header"))?;
    if nodes != gates.len() {
        return Err(Error::parse(0, "node count does not match the header"));
    }
    let labels = labels.unwrap_or_else(|| (1..=nvars).collect());
    if labels.len() != nvars {
        return Err(Error::parse(
            0,
            "label list does not match the variable count",
        ));
    }
    // Positive literals become var gates; negative ones need a var gate to negate.
    let mut var_gate: std::collections::HashMap<Var, usize> = Default::default();
    for &(g, p) in &pending {
        let v = *labels
            .get(p - 1)
            .ok_or_else(|| Error::parse(0, "literal out of range"))?;
        if gates[g].kind != NnfKind::Not {
            gates[g].kind = NnfKind::Var(v);
            var_gate.entry(v).or_insert(g);
        }
    }
    // Negations of variables without a positive literal get a fresh var gate
    // appended; ids are then reordered so inputs come first.
    let base = gates.len();
    for &(g, p) in &pending {
        let v = labels[p - 1];
        if gates[g].kind == NnfKind::Not {
            let x = match var_gate.get(&v) {
                Some(&x) if x < g => x,
                _ => {
                    extra.push(NnfGate {
                        kind: NnfKind::Var(v),
                        inputs: Vec::new(),
                    });
                    base + extra.len() - 1
                }
            };
            not_of[g] = Some(x);
        }
    }
    let output = gates
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::parse(0, "empty circuit"))?;
    // Final ids: extra var gates first, then the original gates shifted.
    let shift = extra.len();
    let remap = |i: usize| if i >= base { i - base } else { i + shift };
    let mut all: Vec<NnfGate> = extra;
    for (g, mut gate) in gates.into_iter().enumerate() {
        if let Some(x) = not_of[g] {
            gate.inputs = vec![x];
        }
        gate.inputs = gate.inputs.iter().map(|&i| remap(i)).collect();
        all.push(gate);
    }
    let structure = match (vtree, rho) {
        (Some(vt), Some(r)) => {
            let vtree = VTree::from_text(vt)?;
            let mut map = vec![None; all.len()];
            for (i, raw) in r.lines().enumerate() {
                let t = tokens(raw);
                if t.is_empty() {
                    continue;
                }
                let g: usize = num(t.first(), i + 1)?;
                let n: usize = num(t.get(1), i + 1)?;
                if g >= base {
                    return Err(Error::parse(i + 1, "gate id out of range"));
                }
                map[remap(g)] = Some(n);
            }
            for g in 0..shift {
                if let NnfKind::Var(v) = all[g].kind {
                    map[g] = vtree.leaf_map().get(&v).copied();
                }
            }
            Some(Structure { vtree, rho: map })
        }
        (None, None) => None,
        _ => {
            return Err(Error::input(
                "a v-tree needs its structuring map and vice versa",
            ))
        }
    };
    NnfCircuit::new(all, remap(output), labels, structure)
}

/// Line format: `bdd <nodes> <root>`, `vars ...`, optional `order ...`, then
/// `<id> T <var> <lo> <hi>` and `<id> O <children...>` for ids from 2 on.
pub fn write_bdd(o: &Nbdd) -> String {
    let mut s = String::new();
    writeln!(s, "bdd {} {}", o.len(), o.root()).unwrap();
    let join = |v: &[Var]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(s, "vars {}", join(o.variables())).unwrap();
    if let Some(ord) = o.order() {
        writeln!(s, "order {}", join(ord)).unwrap();
    }
    for (i, n) in o.nodes().iter().enumerate().skip(2) {
        match n {
            BddNode::Test { var, lo, hi } => writeln!(s, "{i} T {var} {lo} {hi}"),
            BddNode::Or(ch) => writeln!(s, "{i} O {}", join(ch)),
            BddNode::Sink(_) => unreachable!(),
        }
        .unwrap();
    }
    s
}

pub fn read_bdd(text: &str) -> Result<Nbdd> {
    let mut header: Option<(usize, usize)> = None;
    let mut vars: Vec<Var> = Vec::new();
    let mut order: Option<Vec<Var>> = None;
    let mut nodes = vec![BddNode::Sink(false), BddNode::Sink(true)];
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let t = tokens(raw.split('#').next().unwrap_or(""));
        let list = |from: usize| -> Result<Vec<usize>> {
            t[from..]
                .iter()
                .map(|x| x.parse().map_err(|_| Error::parse(ln, "expected a number")))
                .collect()
        };
        match t.first().copied() {
            None => {}
            Some("bdd") => header = Some((num(t.get(1), ln)?, num(t.get(2), ln)?)),
            Some("vars") => vars = list(1)?,
            Some("order") => order = Some(list(1)?),
            Some(_) => {
                let id: usize = num(t.first(), ln)?;
                if id != nodes.len() {
                    return Err(Error::parse(ln, "node ids must be consecutive from 2"));
                }
                match t.get(1).copied() {
                    Some("T") => nodes.push(BddNode::Test {
                        var: num(t.get(2), ln)?,
                        lo: num(t.get(3), ln)?,
                        hi: num(t.get(4), ln)?,
                    }),
                    Some("O") => nodes.push(BddNode::Or(list(2)?)),
                    _ => return Err(Error::parse(ln, format!("unknown node line: {raw}"))),
                }
            }
        }
    }
    let (count, root) = header.ok_or_else(|| Error::parse(0, "missing bdd header"))?;
    if count != nodes.len() {
        return Err(Error::parse(0, "node count does not match the header"));
    }
    Nbdd::new(nodes, root, vars, order)
}

/// Graphviz rendering; dashed edges are 0-edges.
pub fn bdd_to_dot(o: &Nbdd) -> String {
    let mut s = String::from("digraph bdd {\n");
    let live = o.reachable();
    for (i, n) in o.nodes().iter().enumerate() {
        if !live[i] {
            continue;
        }
        match n {
            BddNode::Sink(v) => writeln!(s, "  n{i} [shape=box,label=\"{}\"];", u8::from(*v)),
            BddNode::Test { var, lo, hi } => writeln!(
                s,
                "  n{i} [label=\"x{var}\"];\n  n{i} -> n{lo} [style=dashed];\n  n{i} -> n{hi};"
            ),
            BddNode::Or(ch) => {
                let mut t = format!("  n{i} [label=\"∨\"];");
                for c in ch {
                    t += &format!("\n  n{i} -> n{c};");
                }
                writeln!(s, "{t}")
            }
        }
        .unwrap();
    }
    s.push_str("}\n");
    s
}

/// Graphviz rendering of an NNF; gates are labeled with their v-tree node.
pub fn nnf_to_dot(d: &NnfCircuit) -> String {
    let mut s = String::from("digraph nnf {\n  rankdir=BT;\n");
    let live = d.reachable();
    for (g, gate) in d.gates().iter().enumerate() {
        if !live[g] {
            continue;
        }
        let name = match gate.kind {
            NnfKind::Var(v) => format!("x{v}"),
            NnfKind::Not => "¬".into(),
            NnfKind::And => "∧".into(),
            NnfKind::Or => "∨".into(),
        };
        let at = d.rho(g).map(|n| format!(" @{n}")).unwrap_or_default();
        writeln!(s, "  g{g} [label=\"{name}{at}\"];").unwrap();
        for i in &gate.inputs {
            writeln!(s, "  g{i} -> g{g};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}
