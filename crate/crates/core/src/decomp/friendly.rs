use std::collections::{BTreeMap, VecDeque};

use super::TreeDecomp;
use crate::error::{Error, Result};

/// A tree decomposition that is friendly for `root_vertex`: a full binary tree
/// whose root bag is `{root_vertex}`, whose leaves hold at most one vertex and
/// whose internal bags are covered by their two children. Every vertex has a
/// *responsible* leaf `{x}` (the one with the smallest bag id).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendlyDecomp {
    td: TreeDecomp,
    root_vertex: usize,
    responsible: BTreeMap<usize, usize>,
}

impl FriendlyDecomp {
    /// Wraps an existing decomposition after checking the friendliness conditions.
    pub fn new(td: TreeDecomp, root_vertex: usize) -> Result<Self> {
        let responsible = responsible_leaves(&td);
        let fd = FriendlyDecomp {
            td,
            root_vertex,
            responsible,
        };
        fd.check().map_err(Error::Input)?;
        Ok(fd)
    }

    pub fn td(&self) -> &TreeDecomp {
        &self.td
    }

    pub fn root_vertex(&self) -> usize {
        self.root_vertex
    }

    pub fn width(&self) -> usize {
        self.td.width()
    }

    /// Vertex to its responsible leaf bag.
    pub fn responsible(&self) -> &BTreeMap<usize, usize> {
        &self.responsible
    }

    /// `(left, right)` children of an internal bag.
    pub fn split(&self, b: usize) -> Option<(usize, usize)> {
        match self.td.children(b) {
            [l, r] => Some((*l, *r)),
            _ => None,
        }
    }

    /// Every right child is a leaf.
    pub fn is_right_linear(&self) -> bool {
        (0..self.td.len()).all(|b| self.split(b).is_none_or(|(_, r)| self.td.is_leaf(r)))
    }

    /// The four friendliness conditions and the responsible-leaf map.
    pub fn check(&self) -> std::result::Result<(), String> {
        let td = &self.td;
        if td.bag(td.root()) != [self.root_vertex] {
            return Err(format!(
                "root bag is {:?}, expected [{}]",
                td.bag(td.root()),
                self.root_vertex
            ));
        }
        for b in 0..td.len() {
            match td.children(b) {
                [] => {
                    if td.bag(b).len() > 1 {
                        return Err(format!("leaf bag {b} has {} vertices", td.bag(b).len()));
                    }
                }
                [l, r] => {
                    if let Some(v) = td.bag(b).iter().find(|v| {
                        td.bag(*l).binary_search(v).is_err() && td.bag(*r).binary_search(v).is_err()
                    }) {
                        return Err(format!("vertex {v} of bag {b} is in neither child"));
                    }
                }
                cs => return Err(format!("bag {b} has {} children", cs.len())),
            }
        }
        let mut used = std::collections::HashSet::new();
        for (&x, &b) in &self.responsible {
            if !td.is_leaf(b) || td.bag(b) != [x] || !used.insert(b) {
                return Err(format!("bad responsible leaf {b} for {x}"));
            }
        }
        Ok(())
    }
}

fn responsible_leaves(td: &TreeDecomp) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for b in 0..td.len() {
        if td.is_leaf(b) && td.bag(b).len() == 1 {
            out.entry(td.bag(b)[0]).or_insert(b);
        }
    }
    out
}

#[derive(Default)]
struct Arena {
    bags: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl Arena {
    fn node(&mut self, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.children.push(children);
        self.bags.len() - 1
    }

    fn leaf(&mut self, bag: Vec<usize>) -> usize {
        self.node(bag, Vec::new())
    }

    /// A leaf for bags of size ≤ 1, otherwise vertices introduced one by one
    /// above singleton leaves.
    fn leaf_chain(&mut self, bag: &[usize]) -> usize {
        if bag.len() <= 1 {
            return self.leaf(bag.to_vec());
        }
        let mut cur = self.leaf(vec![bag[0]]);
        let mut acc = vec![bag[0]];
        for &x in &bag[1..] {
            acc.push(x);
            let l = self.leaf(vec![x]);
            cur = self.node(acc.clone(), vec![cur, l]);
        }
        cur
    }

    /// Makes `node` (labeled `bag`) covered by its children: vertices missing
    /// from the children are introduced by a chain above it, and a unary node
    /// gets an empty leaf sibling. Returns the top of the chain.
    fn fix(&mut self, node: usize, bag: &[usize]) -> usize {
        let mut below: Vec<usize> = Vec::new();
        for &c in &self.children[node] {
            below.extend_from_slice(&self.bags[c]);
        }
        below.sort_unstable();
        let (kept, missing): (Vec<usize>, Vec<usize>) =
            bag.iter().partition(|v| below.binary_search(v).is_ok());
        self.bags[node] = kept.clone();
        if self.children[node].len() == 1 {
            let e = self.leaf(Vec::new());
            self.children[node].push(e);
        }
        let mut cur = node;
        let mut acc = kept;
        for m in missing {
            acc.push(m);
            acc.sort_unstable();
            let l = self.leaf(vec![m]);
            cur = self.node(acc.clone(), vec![cur, l]);
        }
        cur
    }

    /// Binary structure with label `bag` over the child handles.
    fn internal(&mut self, bag: &[usize], handles: &[usize]) -> usize {
        match handles {
            [] => self.leaf_chain(bag),
            [h] => {
                let n = self.node(bag.to_vec(), vec![*h]);
                self.fix(n, bag)
            }
            _ => {
                let m = handles.len();
                let n = self.node(bag.to_vec(), vec![handles[m - 2], handles[m - 1]]);
                let mut cur = self.fix(n, bag);
                for &h in handles[..m - 2].iter().rev() {
                    let n = self.node(bag.to_vec(), vec![h, cur]);
                    cur = self.fix(n, bag);
                }
                cur
            }
        }
    }

    /// Renumbers in preorder so that the root is bag 0.
    fn finish(self, root: usize) -> TreeDecomp {
        let mut order = Vec::with_capacity(self.bags.len());
        let mut stack = vec![root];
        while let Some(b) = stack.pop() {
            order.push(b);
            for &c in self.children[b].iter().rev() {
                stack.push(c);
            }
        }
        let mut new_id = vec![usize::MAX; self.bags.len()];
        for (i, &b) in order.iter().enumerate() {
            new_id[b] = i;
        }
        let bags = order.iter().map(|&b| self.bags[b].clone()).collect();
        let children = order
            .iter()
            .map(|&b| self.children[b].iter().map(|&c| new_id[c]).collect())
            .collect();
        TreeDecomp::from_children(bags, children, 0).expect("arena is a tree")
    }
}

/// Normalizes a tree decomposition into a `v`-friendly one of the same width.
/// The new root `{v}` is attached to the lowest-id bag containing `v` (bag 0
/// if none does).
pub fn make_friendly(t: &TreeDecomp, v: usize) -> FriendlyDecomp {
    let n = t.len();
    let anchor = (0..n)
        .find(|&b| t.bag(b).binary_search(&v).is_ok())
        .unwrap_or(0);
    let mut adj = vec![Vec::new(); n];
    for b in 0..n {
        if let Some(p) = t.parent(b) {
            adj[b].push(p);
            adj[p].push(b);
        }
    }
    let mut kids = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[anchor] = true;
    let mut queue = VecDeque::from([anchor]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let mut nb = adj[x].clone();
        nb.sort_unstable();
        for y in nb {
            if !seen[y] {
                seen[y] = true;
                kids[x].push(y);
                queue.push_back(y);
            }
        }
    }
    let mut arena = Arena::default();
    let mut handle = vec![usize::MAX; n];
    for &b in order.iter().rev() {
        let hs: Vec<usize> = kids[b].iter().map(|&c| handle[c]).collect();
        handle[b] = arena.internal(t.bag(b), &hs);
    }
    let root = arena.node(vec![v], vec![handle[anchor]]);
    let root = arena.fix(root, &[v]);
    FriendlyDecomp::new(arena.finish(root), v).expect("construction is friendly")
}

/// Right-linear friendly decomposition from a path decomposition: the spine
/// follows the path from the end containing `v`, dropping vertices one at a
/// time into right leaves. If `v` is in neither end bag, it is added to the
/// bags before its first occurrence, which can raise the width by one.
pub fn make_friendly_path(p: &TreeDecomp, v: usize) -> Result<FriendlyDecomp> {
    let seq = p
        .path_sequence()
        .ok_or_else(|| Error::input("make_friendly_path needs a path decomposition"))?;
    let mut bags: Vec<Vec<usize>> = seq.iter().map(|&b| p.bag(b).to_vec()).collect();
    let has = |b: &Vec<usize>| b.binary_search(&v).is_ok();
    if !has(&bags[0]) {
        if has(bags.last().unwrap()) {
            bags.reverse();
        } else if let Some(first) = bags.iter().position(has) {
            for b in &mut bags[..first] {
                b.push(v);
                b.sort_unstable();
            }
        } else {
            bags[0].push(v);
            bags[0].sort_unstable();
        }
    }
    let mut arena = Arena::default();
    let last = bags.last().unwrap();
    let mut cur = if last.len() <= 1 {
        arena.leaf(last.clone())
    } else {
        let mut cur = arena.leaf(vec![last[0]]);
        let mut acc = vec![last[0]];
        for &x in &last[1..] {
            acc.push(x);
            let l = arena.leaf(vec![x]);
            cur = arena.node(acc.clone(), vec![cur, l]);
        }
        cur
    };
    for i in (0..bags.len() - 1).rev() {
        let here = &bags[i];
        let next = &bags[i + 1];
        let drop: Vec<usize> = here
            .iter()
            .copied()
            .filter(|x| next.binary_search(x).is_err())
            .collect();
        if drop.is_empty() {
            let e = arena.leaf(Vec::new());
            cur = arena.node(here.clone(), vec![cur, e]);
            continue;
        }
        let m = drop.len();
        for j in (0..m).rev() {
            let label: Vec<usize> = here
                .iter()
                .copied()
                .filter(|x| !drop[..j].contains(x))
                .collect();
            let l = arena.leaf(vec![drop[j]]);
            cur = arena.node(label, vec![cur, l]);
        }
    }
    let e = arena.leaf(Vec::new());
    let root = arena.node(vec![v], vec![cur, e]);
    FriendlyDecomp::new(arena.finish(root), v)
}
