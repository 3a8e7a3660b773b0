use crate::error::{check_cap, Result};
use crate::logic::Hypergraph;

/// Vertex limit for the exact subset dynamic programs.
pub const EXACT_WIDTH_CAP: usize = 20;

fn adjacency_masks(h: &Hypergraph) -> Vec<u32> {
    h.primal_adjacency()
        .iter()
        .map(|nb| nb.iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect()
}

/// Exact pathwidth as the vertex separation number of the primal graph.
pub fn exact_pathwidth(h: &Hypergraph) -> Result<usize> {
    let n = h.num_vertices();
    check_cap("vertex count for exact pathwidth", n, EXACT_WIDTH_CAP)?;
    let adj = adjacency_masks(h);
    let full = (1u32 << n) - 1;
    let mut best = vec![u8::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        // Vertices of the prefix with a neighbor outside it.
        let boundary = (0..n)
            .filter(|&v| s >> v & 1 == 1 && adj[v] & !s & full != 0)
            .count() as u8;
        let mut inner = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            inner = inner.min(best[(s & !(1 << v)) as usize]);
        }
        best[s as usize] = inner.max(boundary);
    }
    Ok(best[full as usize] as usize)
}

/// Exact treewidth via the elimination-set recurrence
/// `TW(S) = min_{v∈S} max(TW(S∖v), |Q(S∖v, v)|)`.
pub fn exact_treewidth(h: &Hypergraph) -> Result<usize> {
    let n = h.num_vertices();
    check_cap("vertex count for exact treewidth", n, EXACT_WIDTH_CAP)?;
    if n <= 1 {
        return Ok(0);
    }
    let adj = adjacency_masks(h);
    let full = (1u32 << n) - 1;
    // Vertices outside S ∪ {v} reachable from v through S.
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[u];
            }
            next &= !seen;
            seen |= next;
            out |= next & !s;
            frontier = next & s;
        }
        out & full
    };
    let mut tw = vec![u8::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let sv = s & !(1 << v);
            let prev = tw[sv as usize];
            if prev >= best {
                continue;
            }
            let val = prev.max(q(sv, v).count_ones() as u8);
            best = best.min(val);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize] as usize)
}
