use std::collections::HashSet;

use crate::logic::{Hypergraph, Var};
use crate::targets::VTree;

/// Smallest 1-based `i` with `X ⊆ order[..i-1]` and `Y ⊆ order[i-1..]`.
pub fn find_cut_order(order: &[Var], x: &[Var], y: &[Var]) -> Option<usize> {
    let pos = |v: &Var| order.iter().position(|w| w == v);
    let mut last_x = 0;
    for v in x {
        last_x = last_x.max(pos(v)? + 1);
    }
    let mut first_y = order.len();
    for v in y {
        first_y = first_y.min(pos(v)?);
    }
    (last_x <= first_y && last_x < order.len().max(1)).then_some(last_x + 1)
}

/// First node in postorder whose leaves contain `X` and avoid `Y`.
pub fn find_cut_vtree(vt: &VTree, x: &[Var], y: &[Var]) -> Option<usize> {
    let all: HashSet<Var> = vt.variables().into_iter().collect();
    if !x.iter().chain(y).all(|v| all.contains(v)) {
        return None;
    }
    let under = vt.labels_under();
    vt.postorder().into_iter().find(|&n| {
        let u = &under[n];
        x.iter().all(|v| u.binary_search(v).is_ok())
            && y.iter().all(|v| u.binary_search(v).is_err())
    })
}

/// Indices of the edges meeting both `X` and `Y`.
pub fn split_edges(h: &Hypergraph, x: &[Var], y: &[Var]) -> Vec<usize> {
    let xs: HashSet<Var> = x.iter().copied().collect();
    let ys: HashSet<Var> = y.iter().copied().collect();
    h.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.iter().any(|v| xs.contains(v)) && e.iter().any(|v| ys.contains(v)))
        .map(|(i, _)| i)
        .collect()
}
