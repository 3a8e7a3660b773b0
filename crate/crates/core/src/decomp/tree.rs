use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::Hypergraph;

/// A rooted tree of bags. Bags are sorted vertex lists; children keep their
/// order, which friendly decompositions use as (left, right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomp {
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

/// Why a decomposition is invalid for a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownVertex { bag: usize, vertex: usize },
    MissingVertex { vertex: usize },
    Occurrence { edge: Vec<usize> },
    Connectedness { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex { bag, vertex } => {
                write!(f, "bag {bag} contains {vertex}, which is not a vertex")
            }
            Violation::MissingVertex { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::Occurrence { edge } => write!(f, "no bag contains the edge {edge:?}"),
            Violation::Connectedness { vertex } => {
                write!(f, "the bags containing {vertex} are not connected")
            }
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Input(format!("invalid decomposition: {v}"))
    }
}

fn normalize(mut bag: Vec<usize>) -> Vec<usize> {
    bag.sort_unstable();
    bag.dedup();
    bag
}

impl TreeDecomp {
    /// Children are listed in the given order of `children`.
    pub fn from_children(
        bags: Vec<Vec<usize>>,
        children: Vec<Vec<usize>>,
        root: usize,
    ) -> Result<Self> {
        let n = bags.len();
        if n == 0 || root >= n || children.len() != n {
            return Err(Error::input("malformed decomposition tree"));
        }
        let mut parent = vec![None; n];
        for (p, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n || c == root || parent[c].is_some() {
                    return Err(Error::input(format!("bag {c} has several parents")));
                }
                parent[c] = Some(p);
            }
        }
        let t = TreeDecomp {
            bags: bags.into_iter().map(normalize).collect(),
            parent,
            children,
            root,
        };
        if t.preorder().len() != n {
            return Err(Error::input("decomposition tree is not connected"));
        }
        Ok(t)
    }

    /// Roots an undirected tree given by `edges` at `root`; children ascend by id.
    pub fn from_edges(
        bags: Vec<Vec<usize>>,
        edges: &[(usize, usize)],
        root: usize,
    ) -> Result<Self> {
        let n = bags.len();
        if n == 0 || root >= n {
            return Err(Error::input("malformed decomposition tree"));
        }
        if edges.len() + 1 != n {
            return Err(Error::input(format!(
                "a tree on {n} bags needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::input(format!("bad decomposition edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let mut nb = adj[x].clone();
            nb.sort_unstable();
            for y in nb {
                if !seen[y] {
                    seen[y] = true;
                    children[x].push(y);
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::input("decomposition tree is not connected"));
        }
        TreeDecomp::from_children(bags, children, root)
    }

    /// A path rooted at its first bag.
    pub fn path(bags: Vec<Vec<usize>>) -> Result<Self> {
        let n = bags.len();
        let children = (0..n)
            .map(|i| if i + 1 < n { vec![i + 1] } else { Vec::new() })
            .collect();
        TreeDecomp::from_children(bags, children, 0)
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, b: usize) -> &[usize] {
        &self.bags[b]
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, b: usize) -> Option<usize> {
        self.parent[b]
    }

    pub fn children(&self, b: usize) -> &[usize] {
        &self.children[b]
    }

    pub fn is_leaf(&self, b: usize) -> bool {
        self.children[b].is_empty()
    }

    /// Largest bag size minus one (0 when all bags are empty).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Every node has at most one child.
    pub fn is_path(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 1)
    }

    /// If the underlying unrooted tree is a path, its bags from the endpoint
    /// with the lower id to the other endpoint.
    pub fn path_sequence(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut adj = vec![Vec::new(); n];
        for b in 0..n {
            if let Some(p) = self.parent[b] {
                adj[b].push(p);
                adj[p].push(b);
            }
        }
        if adj.iter().any(|a| a.len() > 2) {
            return None;
        }
        let start = (0..n).find(|&b| adj[b].len() <= 1)?;
        let mut seq = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
            seq.push(next);
            prev = cur;
            cur = next;
        }
        Some(seq)
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(b) = stack.pop() {
            if out.len() > self.len() {
                break;
            }
            out.push(b);
            for &c in self.children[b].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = self.preorder();
        out.reverse();
        out
    }

    /// Width if this is a tree decomposition of `h`, otherwise the first violation.
    pub fn validate(&self, h: &Hypergraph) -> std::result::Result<usize, Violation> {
        let nv = h.num_vertices();
        let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (b, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                let i = h
                    .index_of(v)
                    .ok_or(Violation::UnknownVertex { bag: b, vertex: v })?;
                bags_of[i].push(b);
            }
        }
        for (i, bs) in bags_of.iter().enumerate() {
            let v = h.vertices()[i];
            if bs.is_empty() {
                return Err(Violation::MissingVertex { vertex: v });
            }
            let tops = bs
                .iter()
                .filter(|&&b| {
                    self.parent[b].is_none_or(|p| self.bags[p].binary_search(&v).is_err())
                })
                .count();
            if tops != 1 {
                return Err(Violation::Connectedness { vertex: v });
            }
        }
        for e in h.edges() {
            let first = h.index_of(e[0]).unwrap();
            let covered = bags_of[first]
                .iter()
                .any(|&b| e.iter().all(|v| self.bags[b].binary_search(v).is_ok()));
            if !covered {
                return Err(Violation::Occurrence { edge: e.clone() });
            }
        }
        Ok(self.width())
    }
}
