use std::collections::HashMap;

use super::{compile_treewidth, CompileOptions, CompileStats};
use crate::decomp::FriendlyDecomp;
use crate::error::{Error, Result};
use crate::logic::{Circuit, MaybeConst, Var};
use crate::targets::{reduce_unchecked, Nbdd, NbddBuilder, NnfCircuit, NnfKind, FALSE, TRUE};

/// A complete uOBDD for `c` from a right-linear friendly path decomposition.
///
/// The tree construction runs first, its output is reduced, and each ∨-gate
/// of the reduced circuit becomes a test of the right leaf at its node.
pub fn compile_pathwidth(
    c: &Circuit,
    pd: &FriendlyDecomp,
    opts: &CompileOptions,
) -> Result<(MaybeConst<Nbdd>, CompileStats)> {
    if !pd.is_right_linear() {
        return Err(Error::input(
            "path compilation needs a right-linear friendly decomposition",
        ));
    }
    let compiled = compile_treewidth(c, pd, opts)?;
    let d = &compiled.circuit;
    let reduced = reduce_unchecked(d, &vec![None; d.len()], &Default::default());
    let out = match reduced {
        MaybeConst::Const(v) => MaybeConst::Const(v),
        MaybeConst::Value(r) => MaybeConst::Value(reduced_to_uobdd(&r)?),
    };
    Ok((out, compiled.stats))
}

/// Reads a complete uOBDD off a complete d-SDNNF on a right-linear v-tree.
pub fn reduced_to_uobdd(d: &NnfCircuit) -> Result<Nbdd> {
    let s = d
        .structure()
        .ok_or_else(|| Error::contract("needs a structured circuit"))?;
    let t = &s.vtree;
    if !t.is_right_linear() || t.is_extended() {
        return Err(Error::contract("needs a non-extended right-linear v-tree"));
    }
    // Spine from the root down to the leftmost leaf.
    let mut spine = vec![t.root()];
    while let Some([l, _]) = t.children(*spine.last().unwrap()) {
        spine.push(l);
    }
    let leftmost = *spine.last().unwrap();
    let mut order: Vec<Var> = spine[..spine.len() - 1]
        .iter()
        .map(|&n| t.label(t.children(n).unwrap()[1]).unwrap())
        .collect();
    order.push(t.label(leftmost).unwrap());

    let mut by_node: HashMap<usize, Vec<usize>> = HashMap::new();
    for (g, gate) in d.gates().iter().enumerate() {
        if gate.kind == NnfKind::Or {
            by_node.entry(d.rho(g).unwrap()).or_default().push(g);
        }
    }
    // Literal polarity of an ∨-gate at a leaf: (has ¬x, has x).
    let polarity = |g: usize| -> (bool, bool) {
        let mut p = (false, false);
        for &i in &d.gate(g).inputs {
            match d.gate(i).kind {
                NnfKind::Var(_) => p.1 = true,
                NnfKind::Not => p.0 = true,
                _ => {}
            }
        }
        p
    };

    let mut b = NbddBuilder::new();
    let mut node_of: HashMap<usize, usize> = HashMap::new();
    // FALSE chain testing every variable of the spine from `depth` down.
    let mut falses: HashMap<usize, usize> = HashMap::new();
    let x0 = order[order.len() - 1];
    for &g in by_node.get(&leftmost).into_iter().flatten() {
        let (neg, pos) = polarity(g);
        let lo = if neg { TRUE } else { FALSE };
        let hi = if pos { TRUE } else { FALSE };
        node_of.insert(g, b.test(x0, lo, hi));
    }
    let f0 = b.test(x0, FALSE, FALSE);
    falses.insert(spine.len() - 1, f0);
    for depth in (0..spine.len() - 1).rev() {
        let n = spine[depth];
        let [below, leaf] = t.children(n).unwrap();
        let x = t.label(leaf).unwrap();
        let fbelow = falses[&(depth + 1)];
        for &g in by_node.get(&n).into_iter().flatten() {
            let (mut a0, mut a1) = (Vec::new(), Vec::new());
            for &a in &d.gate(g).inputs {
                let ins = &d.gate(a).inputs;
                let (Some(&gl), Some(&gr)) = (
                    ins.iter().find(|&&i| d.rho(i) == Some(below)),
                    ins.iter().find(|&&i| d.rho(i) == Some(leaf)),
                ) else {
                    return Err(Error::contract(
                        "∧-gate does not join the spine and its leaf",
                    ));
                };
                let (neg, pos) = polarity(gr);
                if neg {
                    a0.push(node_of[&gl]);
                }
                if pos {
                    a1.push(node_of[&gl]);
                }
            }
            let mut side = |set: Vec<usize>| if set.is_empty() { fbelow } else { b.or(set) };
            let lo = side(a0);
            let hi = side(a1);
            node_of.insert(g, b.test(x, lo, hi));
        }
        let f = b.test(x, fbelow, fbelow);
        falses.insert(depth, f);
    }
    let root = node_of[&d.output()];
    let mut vars = order.clone();
    vars.sort_unstable();
    b.finish(root, vars, Some(order))
}
