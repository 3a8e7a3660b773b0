use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::logic::Var;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VNode {
    pub label: Option<Var>,
    pub children: Option<[usize; 2]>,
    pub parent: Option<usize>,
}

/// A rooted full binary tree whose leaves carry distinct variables. Leaves
/// without a label make the tree *extended*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VTree {
    nodes: Vec<VNode>,
    root: usize,
}

impl VTree {
    /// Builds from `(label, children)` pairs; labels are only allowed on leaves.
    pub fn from_nodes(spec: Vec<(Option<Var>, Option<[usize; 2]>)>, root: usize) -> Result<Self> {
        let n = spec.len();
        if root >= n {
            return Err(Error::input("v-tree root out of range"));
        }
        let mut parent = vec![None; n];
        let mut labels = HashSet::new();
        for (i, (label, ch)) in spec.iter().enumerate() {
            if let Some([l, r]) = ch {
                if label.is_some() {
                    return Err(Error::input(format!(
                        "internal v-tree node {i} has a label"
                    )));
                }
                for &c in &[*l, *r] {
                    if c >= n || c == root || parent[c].is_some() || l == r {
                        return Err(Error::input(format!(
                            "v-tree node {i} has an invalid child {c}"
                        )));
                    }
                    parent[c] = Some(i);
                }
            }
            if let Some(v) = label {
                if !labels.insert(*v) {
                    return Err(Error::input(format!("variable {v} labels two leaves")));
                }
            }
        }
        let nodes: Vec<VNode> = spec
            .into_iter()
            .zip(parent)
            .map(|((label, children), parent)| VNode {
                label,
                children,
                parent,
            })
            .collect();
        let t = VTree { nodes, root };
        if t.preorder().len() != n {
            return Err(Error::input("v-tree is not connected"));
        }
        Ok(t)
    }

    pub fn leaf(label: Option<Var>) -> Self {
        VTree {
            nodes: vec![VNode {
                label,
                children: None,
                parent: None,
            }],
            root: 0,
        }
    }

    /// A new root over `left` and `right`. Errors if they share a label.
    pub fn join(left: &VTree, right: &VTree) -> Result<Self> {
        let off = left.nodes.len();
        let mut spec: Vec<(Option<Var>, Option<[usize; 2]>)> =
            left.nodes.iter().map(|n| (n.label, n.children)).collect();
        spec.extend(
            right
                .nodes
                .iter()
                .map(|n| (n.label, n.children.map(|[a, b]| [a + off, b + off]))),
        );
        spec.push((None, Some([left.root, right.root + off])));
        let root = spec.len() - 1;
        VTree::from_nodes(spec, root)
    }

    /// Internal node `r_i` has the leaf `order[i]` as right child and `r_{i+1}`
    /// as left child; the last internal node's left child is the last leaf.
    pub fn right_linear(order: &[Var]) -> Result<Self> {
        let Some((&last, rest)) = order.split_last() else {
            return Err(Error::input("a v-tree needs at least one variable"));
        };
        let mut t = VTree::leaf(Some(last));
        for &v in rest.iter().rev() {
            t = VTree::join(&t, &VTree::leaf(Some(v)))?;
        }
        Ok(t)
    }

    /// Splits the variable list in halves recursively.
    pub fn balanced(vars: &[Var]) -> Result<Self> {
        match vars.len() {
            0 => Err(Error::input("a v-tree needs at least one variable")),
            1 => Ok(VTree::leaf(Some(vars[0]))),
            n => VTree::join(
                &VTree::balanced(&vars[..n / 2])?,
                &VTree::balanced(&vars[n / 2..])?,
            ),
        }
    }

    /// Uniformly shuffled leaves under random splits.
    pub fn random<R: Rng>(rng: &mut R, vars: &[Var]) -> Result<Self> {
        let mut vs = vars.to_vec();
        vs.shuffle(rng);
        fn build<R: Rng>(rng: &mut R, vs: &[Var]) -> Result<VTree> {
            if vs.len() == 1 {
                return Ok(VTree::leaf(Some(vs[0])));
            }
            let k = rng.gen_range(1..vs.len());
            VTree::join(&build(rng, &vs[..k])?, &build(rng, &vs[k..])?)
        }
        if vs.is_empty() {
            return Err(Error::input("a v-tree needs at least one variable"));
        }
        build(rng, &vs)
    }

    pub fn nodes(&self) -> &[VNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &VNode {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, i: usize) -> Option<[usize; 2]> {
        self.nodes[i].children
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.nodes[i].parent
    }

    pub fn label(&self, i: usize) -> Option<Var> {
        self.nodes[i].label
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.nodes[i].children.is_none()
    }

    /// Labels in ascending order.
    pub fn variables(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.nodes.iter().filter_map(|n| n.label).collect();
        v.sort_unstable();
        v
    }

    pub fn leaf_map(&self) -> HashMap<Var, usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.label.map(|v| (v, i)))
            .collect()
    }

    pub fn is_extended(&self) -> bool {
        self.nodes
            .iter()
            .any(|n| n.children.is_none() && n.label.is_none())
    }

    /// Every right child is a leaf.
    pub fn is_right_linear(&self) -> bool {
        self.nodes
            .iter()
            .all(|n| n.children.is_none_or(|[_, r]| self.is_leaf(r)))
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(i) = stack.pop() {
            if out.len() > self.nodes.len() {
                break;
            }
            out.push(i);
            if let Some([l, r]) = self.nodes[i].children {
                stack.push(r);
                stack.push(l);
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

    /// Sorted labels below each node.
    pub fn labels_under(&self) -> Vec<Vec<Var>> {
        let mut under: Vec<Vec<Var>> = vec![Vec::new(); self.nodes.len()];
        for i in self.postorder() {
            under[i] = match (self.nodes[i].children, self.nodes[i].label) {
                (Some([l, r]), _) => {
                    let mut v = under[l].clone();
                    v.extend_from_slice(&under[r]);
                    v.sort_unstable();
                    v
                }
                (None, Some(x)) => vec![x],
                (None, None) => Vec::new(),
            };
        }
        under
    }

    /// Number of labels below each node.
    pub fn label_counts(&self) -> Vec<usize> {
        let mut c = vec![0usize; self.nodes.len()];
        for i in self.postorder() {
            c[i] = match self.nodes[i].children {
                Some([l, r]) => c[l] + c[r],
                None => usize::from(self.nodes[i].label.is_some()),
            };
        }
        c
    }

    /// Whether `anc` is `node` or one of its ancestors.
    pub fn is_ancestor(&self, anc: usize, mut node: usize) -> bool {
        loop {
            if node == anc {
                return true;
            }
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => return false,
            }
        }
    }

    /// Whether `self` is a reduction of `t1`: every internal node of `t1` whose
    /// subtree holds a label of `self` has a node of `self` carrying exactly
    /// those labels of `self`.
    pub fn is_reduction_of(&self, t1: &VTree) -> bool {
        let mine: HashSet<Var> = self.variables().into_iter().collect();
        if t1.variables().len() < mine.len() || !mine.iter().all(|v| t1.leaf_map().contains_key(v))
        {
            return false;
        }
        let sets: HashSet<Vec<Var>> = self.labels_under().into_iter().collect();
        let under1 = t1.labels_under();
        (0..t1.len()).filter(|&n| !t1.is_leaf(n)).all(|n| {
            let a: Vec<Var> = under1[n]
                .iter()
                .copied()
                .filter(|v| mine.contains(v))
                .collect();
            a.is_empty() || sets.contains(&a)
        })
    }

    /// Renders `<id> <var>` for labeled leaves, `<id> -` for unlabeled ones and
    /// `<id> <left> <right>` for internal nodes, children first, root last.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in self.postorder() {
            match (self.nodes[i].children, self.nodes[i].label) {
                (Some([l, r]), _) => s.push_str(&format!("{i} {l} {r}\n")),
                (None, Some(v)) => s.push_str(&format!("{i} {v}\n")),
                (None, None) => s.push_str(&format!("{i} -\n")),
            }
        }
        s
    }

    /// Inverse of [`VTree::to_text`]; the last line names the root.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, Option<Var>, Option<[usize; 2]>)> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(ln + 1, format!("bad number `{t}`")))
            };
            let id = num(toks[0])?;
            match toks.len() {
                2 if toks[1] == "-" => entries.push((id, None, None)),
                2 => entries.push((id, Some(num(toks[1])?), None)),
                3 => entries.push((id, None, Some([num(toks[1])?, num(toks[2])?]))),
                _ => return Err(Error::parse(ln + 1, "expected 2 or 3 fields")),
            }
        }
        let n = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let mut spec = vec![(None, None); n];
        let mut seen = vec![false; n];
        for (id, l, c) in &entries {
            if seen[*id] {
                return Err(Error::parse(0, format!("v-tree node {id} listed twice")));
            }
            seen[*id] = true;
            spec[*id] = (*l, *c);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::parse(0, "v-tree node ids are not contiguous"));
        }
        let root = entries
            .last()
            .ok_or_else(|| Error::parse(0, "empty v-tree"))?
            .0;
        VTree::from_nodes(spec, root)
    }
}
