use super::TreeDecomp;
use crate::error::{check_cap, Error, Result};
use crate::logic::Hypergraph;
use crate::targets::VTree;

/// Vertex limit for exact split widths.
pub const SPLITWIDTH_CAP: usize = 12;

/// Split edges (indices into `h.edges()`) per order position or v-tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitProfile {
    pub splits: Vec<Vec<usize>>,
    pub width: usize,
}

impl SplitProfile {
    fn from_splits(splits: Vec<Vec<usize>>) -> Self {
        let width = splits.iter().map(Vec::len).max().unwrap_or(0);
        SplitProfile { splits, width }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitMode {
    Path,
    Tree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitWitness {
    Order(Vec<usize>),
    VTree(VTree),
}

fn positions(order: &[usize], h: &Hypergraph) -> Result<Vec<usize>> {
    let n = h.num_vertices();
    if order.len() != n {
        return Err(Error::input("order is not a permutation of the vertices"));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, v) in order.iter().enumerate() {
        let d = h
            .index_of(*v)
            .ok_or_else(|| Error::input(format!("{v} is not a vertex")))?;
        if pos[d] != usize::MAX {
            return Err(Error::input(format!("{v} appears twice in the order")));
        }
        pos[d] = i;
    }
    Ok(pos)
}

/// `splits[i]` holds the edges with a vertex at position `≤ i` and one at
/// position `> i` (0-based), so the last entry is always empty.
pub fn split_profile_order(order: &[usize], h: &Hypergraph) -> Result<SplitProfile> {
    let pos = positions(order, h)?;
    let mut splits = vec![Vec::new(); order.len()];
    for (ei, e) in h.dense_edges().iter().enumerate() {
        let lo = e.iter().map(|&v| pos[v]).min().unwrap();
        let hi = e.iter().map(|&v| pos[v]).max().unwrap();
        for s in &mut splits[lo..hi] {
            s.push(ei);
        }
    }
    Ok(SplitProfile::from_splits(splits))
}

/// `splits[n]` holds the edges with vertices both inside and outside the
/// subtree of node `n`.
pub fn split_profile_vtree(vt: &VTree, h: &Hypergraph) -> Result<SplitProfile> {
    if vt.variables() != h.vertices() || vt.is_extended() {
        return Err(Error::input("v-tree leaves must be exactly the vertices"));
    }
    let leaf = vt.leaf_map();
    let mut splits = vec![Vec::new(); vt.len()];
    for (ei, e) in h.edges().iter().enumerate() {
        let mut hits = vec![0usize; vt.len()];
        for v in e {
            let mut x = leaf[v];
            loop {
                hits[x] += 1;
                match vt.parent(x) {
                    Some(p) => x = p,
                    None => break,
                }
            }
        }
        for (n, &c) in hits.iter().enumerate() {
            if c > 0 && c < e.len() {
                splits[n].push(ei);
            }
        }
    }
    Ok(SplitProfile::from_splits(splits))
}

fn cut_sizes(h: &Hypergraph) -> Vec<u8> {
    let n = h.num_vertices();
    let masks: Vec<u32> = h
        .dense_edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    (0..1u32 << n)
        .map(|s| masks.iter().filter(|&&e| e & s != 0 && e & !s != 0).count() as u8)
        .collect()
}

/// Exact pathsplitwidth or treesplitwidth with an optimal witness.
pub fn exact_splitwidth(h: &Hypergraph, mode: SplitMode) -> Result<(usize, SplitWitness)> {
    let n = h.num_vertices();
    check_cap("vertex count for exact split width", n, SPLITWIDTH_CAP)?;
    let cut = cut_sizes(h);
    let full = (1u32 << n) - 1;
    let verts = h.vertices();
    match mode {
        SplitMode::Path => {
            // best[S]: smallest max cut over orders whose prefixes end with S.
            let mut best = vec![u8::MAX; 1 << n];
            let mut last = vec![0u8; 1 << n];
            best[0] = 0;
            for s in 1..=full {
                let mut rest = s;
                while rest != 0 {
                    let v = rest.trailing_zeros();
                    rest &= rest - 1;
                    let b = best[(s & !(1 << v)) as usize];
                    if b < best[s as usize] {
                        best[s as usize] = b;
                        last[s as usize] = v as u8;
                    }
                }
                best[s as usize] = best[s as usize].max(cut[s as usize]);
            }
            let mut order = Vec::with_capacity(n);
            let mut s = full;
            while s != 0 {
                let v = last[s as usize];
                order.push(verts[v as usize]);
                s &= !(1 << v);
            }
            order.reverse();
            Ok((best[full as usize] as usize, SplitWitness::Order(order)))
        }
        SplitMode::Tree => {
            let mut best = vec![u8::MAX; 1 << n];
            let mut split = vec![0u32; 1 << n];
            for s in 1..=full {
                if s.count_ones() == 1 {
                    best[s as usize] = cut[s as usize];
                    continue;
                }
                let low = s & s.wrapping_neg();
                let others = s & !low;
                // Subsets A containing the lowest element, proper.
                let mut sub = others;
                loop {
                    let a = sub | low;
                    if a != s {
                        let val = best[a as usize].max(best[(s & !a) as usize]);
                        if val < best[s as usize] {
                            best[s as usize] = val;
                            split[s as usize] = a;
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & others;
                }
                best[s as usize] = best[s as usize].max(cut[s as usize]);
            }
            fn build(s: u32, split: &[u32], verts: &[usize]) -> VTree {
                if s.count_ones() == 1 {
                    return VTree::leaf(Some(verts[s.trailing_zeros() as usize]));
                }
                let a = split[s as usize];
                VTree::join(&build(a, split, verts), &build(s & !a, split, verts))
                    .expect("disjoint halves")
            }
            Ok((
                best[full as usize] as usize,
                SplitWitness::VTree(build(full, &split, verts)),
            ))
        }
    }
}

/// Bags `{v_i} ∪ ⋃ spl_i` along the order.
pub fn path_decomp_from_order(order: &[usize], h: &Hypergraph) -> Result<TreeDecomp> {
    let prof = split_profile_order(order, h)?;
    let edges = h.edges();
    let bags: Vec<Vec<usize>> = order
        .iter()
        .zip(&prof.splits)
        .map(|(&v, spl)| {
            let mut b = vec![v];
            for &e in spl {
                b.extend_from_slice(&edges[e]);
            }
            b
        })
        .collect();
    let td = TreeDecomp::path(bags)?;
    td.validate(h)?;
    Ok(td)
}

/// Same skeleton as the v-tree: leaf bags `{v}`, internal bags the union of
/// the split edges at the node and at both children.
pub fn tree_decomp_from_vtree(vt: &VTree, h: &Hypergraph) -> Result<TreeDecomp> {
    let prof = split_profile_vtree(vt, h)?;
    let edges = h.edges();
    let union = |spl: &[usize], out: &mut Vec<usize>| {
        for &e in spl {
            out.extend_from_slice(&edges[e]);
        }
    };
    let mut bags = Vec::with_capacity(vt.len());
    let mut children = Vec::with_capacity(vt.len());
    for n in 0..vt.len() {
        let mut b = Vec::new();
        match vt.children(n) {
            Some([l, r]) => {
                union(&prof.splits[n], &mut b);
                union(&prof.splits[l], &mut b);
                union(&prof.splits[r], &mut b);
                children.push(vec![l, r]);
            }
            None => {
                b.push(vt.label(n).unwrap());
                children.push(Vec::new());
            }
        }
        bags.push(b);
    }
    let td = TreeDecomp::from_children(bags, children, vt.root())?;
    td.validate(h)?;
    Ok(td)
}
