use std::collections::{BTreeSet, HashSet};

use super::TreeDecomp;
use crate::logic::Hypergraph;

fn fill_in(adj: &[HashSet<usize>], v: usize) -> usize {
    let nb = &adj[v];
    let d = nb.len();
    let mut present = 0usize;
    for &u in nb {
        let nu = &adj[u];
        if nu.len() < d {
            present += nu.iter().filter(|w| nb.contains(w)).count();
        } else {
            present += nb.iter().filter(|w| nu.contains(w)).count();
        }
    }
    d * d.saturating_sub(1) / 2 - present / 2
}

/// Min-fill elimination order over dense vertex indices, with the neighbor set
/// of each vertex at elimination time.
fn min_fill(h: &Hypergraph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = h.num_vertices();
    let mut adj: Vec<HashSet<usize>> = h
        .primal_adjacency()
        .into_iter()
        .map(|a| a.into_iter().collect())
        .collect();
    let mut fill: Vec<usize> = (0..n).map(|v| fill_in(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (fill[v], v)).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut higher = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        gone[v] = true;
        let mut nb: Vec<usize> = adj[v].iter().copied().collect();
        nb.sort_unstable();
        let mut touched: BTreeSet<usize> = nb.iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if adj[a].insert(b) {
                    adj[b].insert(a);
                    touched.extend(adj[a].iter().copied());
                    touched.extend(adj[b].iter().copied());
                }
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        adj[v].clear();
        for u in touched {
            if gone[u] {
                continue;
            }
            let f = fill_in(&adj, u);
            if f != fill[u] {
                queue.remove(&(fill[u], u));
                fill[u] = f;
                queue.insert((f, u));
            }
        }
        order.push(v);
        higher.push(nb);
    }
    (order, higher)
}

/// Min-fill heuristic with ties broken by the smallest vertex id. Bag `i` is
/// the `i`-th eliminated vertex with its neighbors at elimination time; the
/// last eliminated vertex's bag is the root.
pub fn heuristic_tree_decomposition(h: &Hypergraph) -> TreeDecomp {
    let (order, higher) = min_fill(h);
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let verts = h.vertices();
    let bags: Vec<Vec<usize>> = order
        .iter()
        .zip(&higher)
        .map(|(&v, nb)| {
            std::iter::once(v)
                .chain(nb.iter().copied())
                .map(|x| verts[x])
                .collect()
        })
        .collect();
    let mut children = vec![Vec::new(); n];
    for (i, nb) in higher.iter().enumerate() {
        if i + 1 == n {
            break;
        }
        let p = nb.iter().map(|&u| pos[u]).min().unwrap_or(n - 1);
        children[p].push(i);
    }
    let td = TreeDecomp::from_children(bags, children, n - 1).expect("elimination tree is a tree");
    td.validate(h)
        .expect("min-fill produced an invalid decomposition");
    td
}

/// Last position each vertex (dense index) must stay in its bags.
fn layout_spans(adj: &[Vec<usize>], layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = layout.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in layout.iter().enumerate() {
        pos[v] = i;
    }
    let last = (0..n)
        .map(|v| {
            adj[v]
                .iter()
                .map(|&u| pos[u])
                .max()
                .unwrap_or(0)
                .max(pos[v])
        })
        .collect();
    (pos, last)
}

/// Width of [`path_from_layout`] without building the bags.
fn layout_width(adj: &[Vec<usize>], layout: &[usize]) -> usize {
    let n = layout.len();
    let (pos, last) = layout_spans(adj, layout);
    let mut delta = vec![0isize; n + 1];
    for v in 0..n {
        delta[pos[v]] += 1;
        delta[last[v] + 1] -= 1;
    }
    let mut open = 0isize;
    let mut best = 0isize;
    for d in &delta[..n] {
        open += d;
        best = best.max(open);
    }
    (best as usize).saturating_sub(1)
}

/// Path decomposition of a vertex layout (dense indices): bag `i` holds the
/// `i`-th vertex and every earlier vertex with a neighbor at position `≥ i`.
pub fn path_from_layout(h: &Hypergraph, layout: &[usize]) -> TreeDecomp {
    let n = layout.len();
    let (pos, last) = layout_spans(&h.primal_adjacency(), layout);
    let mut bags: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for bag in &mut bags[pos[v]..=last[v]] {
            bag.push(h.vertices()[v]);
        }
    }
    TreeDecomp::path(bags).expect("layout bags form a path")
}

/// Greedy vertex separation: repeatedly place the frontier vertex that leaves
/// the fewest placed vertices with unplaced neighbors. Frontier ties go to the
/// smallest index; an empty frontier restarts at the smallest unplaced vertex.
fn greedy_layout(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let n = adj.len();
    let mut rem: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut placed = vec![false; n];
    let mut frontier: BTreeSet<usize> = BTreeSet::new();
    let mut layout = Vec::with_capacity(n);
    let mut next_free = 0;
    let mut pick = Some(start);
    while layout.len() < n {
        let v = match pick.take() {
            Some(v) => v,
            None => match frontier
                .iter()
                .map(|&v| {
                    let closes = adj[v].iter().filter(|&&u| placed[u] && rem[u] == 1).count();
                    let opens = usize::from(rem[v] > 0);
                    (opens as isize - closes as isize, v)
                })
                .min()
            {
                Some((_, v)) => v,
                None => {
                    while placed[next_free] {
                        next_free += 1;
                    }
                    next_free
                }
            },
        };
        placed[v] = true;
        frontier.remove(&v);
        layout.push(v);
        for &u in &adj[v] {
            rem[u] -= 1;
            if !placed[u] {
                frontier.insert(u);
            }
        }
    }
    layout
}

/// The narrowest of a few layouts: vertex-id order, its reverse, the min-fill
/// elimination order and its reverse, and greedy vertex separation from the
/// first vertex and from a minimum-degree vertex. Ties go to the earlier layout.
pub fn heuristic_path_decomposition(h: &Hypergraph) -> TreeDecomp {
    let n = h.num_vertices();
    let natural: Vec<usize> = (0..n).collect();
    let (elim, _) = min_fill(h);
    let adj = h.primal_adjacency();
    let min_deg = (0..n).min_by_key(|&v| (adj[v].len(), v)).unwrap_or(0);
    let mut layouts = vec![
        natural.clone(),
        natural.into_iter().rev().collect(),
        elim.clone(),
        elim.into_iter().rev().collect::<Vec<_>>(),
    ];
    if n > 0 {
        layouts.push(greedy_layout(&adj, 0));
        layouts.push(greedy_layout(&adj, min_deg));
    }
    let mut best = 0;
    let mut best_width = usize::MAX;
    for (i, l) in layouts.iter().enumerate() {
        let w = layout_width(&adj, l);
        if w < best_width {
            best = i;
            best_width = w;
        }
    }
    let pd = path_from_layout(h, &layouts[best]);
    pd.validate(h)
        .expect("layout produced an invalid path decomposition");
    pd
}
