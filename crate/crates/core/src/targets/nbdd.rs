use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{check_cap, Error, Result, BRUTE_FORCE_CAP};
use crate::logic::{block_valid, block_word, BoolFn, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BddNode {
    Sink(bool),
    /// Var-node: `lo` is the 0-edge, `hi` the 1-edge.
    Test {
        var: Var,
        lo: usize,
        hi: usize,
    },
    /// ∨-node; accepts when some child accepts.
    Or(Vec<usize>),
}

/// A non-deterministic BDD. Node 0 is the 0-sink and node 1 the 1-sink;
/// children always have smaller ids than their parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nbdd {
    nodes: Vec<BddNode>,
    root: usize,
    variables: Vec<Var>,
    order: Option<Vec<Var>>,
}

pub const FALSE: usize = 0;
pub const TRUE: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BddReport {
    pub free: bool,
    /// Ordered with respect to the attached order (false if none).
    pub ordered: bool,
    pub complete: bool,
    pub has_or_nodes: bool,
    /// `None` when the semantic check was not requested.
    pub unambiguous: Option<bool>,
    /// Max x-width; only reported for complete diagrams.
    pub width: Option<usize>,
}

impl Nbdd {
    pub fn new(
        nodes: Vec<BddNode>,
        root: usize,
        mut variables: Vec<Var>,
        order: Option<Vec<Var>>,
    ) -> Result<Self> {
        variables.sort_unstable();
        variables.dedup();
        if nodes.len() < 2
            || nodes[FALSE] != BddNode::Sink(false)
            || nodes[TRUE] != BddNode::Sink(true)
        {
            return Err(Error::input(
                "diagram must start with the 0-sink and the 1-sink",
            ));
        }
        if root >= nodes.len() {
            return Err(Error::input("diagram root does not exist"));
        }
        for (i, n) in nodes.iter().enumerate().skip(2) {
            match n {
                BddNode::Sink(_) => return Err(Error::input(format!("extra sink at node {i}"))),
                BddNode::Test { var, lo, hi } => {
                    if *lo >= i || *hi >= i {
                        return Err(Error::input(format!(
                            "node {i} has a child that is not earlier"
                        )));
                    }
                    if variables.binary_search(var).is_err() {
                        return Err(Error::input(format!(
                            "node {i} tests undeclared variable {var}"
                        )));
                    }
                }
                BddNode::Or(ch) => {
                    if ch.iter().any(|&c| c >= i) {
                        return Err(Error::input(format!(
                            "node {i} has a child that is not earlier"
                        )));
                    }
                }
            }
        }
        if let Some(o) = &order {
            let mut s = o.clone();
            s.sort_unstable();
            if s != variables {
                return Err(Error::input(
                    "variable order is not a permutation of the variables",
                ));
            }
        }
        Ok(Nbdd {
            nodes,
            root,
            variables,
            order,
        })
    }

    /// The constant diagram over `variables` (no tests).
    pub fn constant(value: bool, variables: Vec<Var>, order: Option<Vec<Var>>) -> Result<Self> {
        Nbdd::new(
            vec![BddNode::Sink(false), BddNode::Sink(true)],
            if value { TRUE } else { FALSE },
            variables,
            order,
        )
    }

    pub fn nodes(&self) -> &[BddNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &BddNode {
        &self.nodes[i]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn variables(&self) -> &[Var] {
        &self.variables
    }

    pub fn order(&self) -> Option<&[Var]> {
        self.order.as_deref()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn var_position(&self, v: Var) -> Option<usize> {
        self.variables.binary_search(&v).ok()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut r = vec![false; self.nodes.len()];
        r[self.root] = true;
        for i in (0..self.nodes.len()).rev() {
            if !r[i] {
                continue;
            }
            match &self.nodes[i] {
                BddNode::Sink(_) => {}
                BddNode::Test { lo, hi, .. } => {
                    r[*lo] = true;
                    r[*hi] = true;
                }
                BddNode::Or(ch) => ch.iter().for_each(|&c| r[c] = true),
            }
        }
        r
    }

    /// Edge count of the part reachable from the root.
    pub fn size(&self) -> usize {
        let r = self.reachable();
        self.nodes
            .iter()
            .zip(&r)
            .filter(|(_, &live)| live)
            .map(|(n, _)| match n {
                BddNode::Sink(_) => 0,
                BddNode::Test { .. } => 2,
                BddNode::Or(ch) => ch.len(),
            })
            .sum()
    }

    /// Reachable non-sink nodes.
    pub fn node_count(&self) -> usize {
        self.reachable().iter().skip(2).filter(|&&b| b).count()
    }

    /// Reachable var-nodes testing `x`.
    pub fn x_width(&self, x: Var) -> usize {
        let r = self.reachable();
        self.nodes
            .iter()
            .zip(&r)
            .filter(|(n, &live)| live && matches!(n, BddNode::Test { var, .. } if *var == x))
            .count()
    }

    /// Max x-width over all variables (0 for constant diagrams).
    pub fn raw_width(&self) -> usize {
        let r = self.reachable();
        let mut c: HashMap<Var, usize> = HashMap::new();
        for (n, &live) in self.nodes.iter().zip(&r) {
            if let (BddNode::Test { var, .. }, true) = (n, live) {
                *c.entry(*var).or_default() += 1;
            }
        }
        c.into_values().max().unwrap_or(0)
    }

    pub fn has_or_nodes(&self) -> bool {
        let r = self.reachable();
        self.nodes
            .iter()
            .zip(&r)
            .any(|(n, &l)| l && matches!(n, BddNode::Or(_)))
    }

    /// Bit-parallel acceptance of every node.
    pub fn eval_all_words(&self, var_words: &[u64]) -> Vec<u64> {
        let mut val = vec![0u64; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            val[i] = match n {
                BddNode::Sink(b) => {
                    if *b {
                        !0
                    } else {
                        0
                    }
                }
                BddNode::Test { var, lo, hi } => {
                    let w = var_words[self.var_position(*var).unwrap()];
                    (!w & val[*lo]) | (w & val[*hi])
                }
                BddNode::Or(ch) => ch.iter().fold(0, |a, &c| a | val[c]),
            };
        }
        val
    }

    /// Variables that may be tested on some path from each node.
    fn may_sets(&self) -> Vec<FixedBitSet> {
        let n = self.variables.len();
        let mut out: Vec<FixedBitSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut s = FixedBitSet::with_capacity(n);
            match node {
                BddNode::Sink(_) => {}
                BddNode::Test { var, lo, hi } => {
                    s.insert(self.var_position(*var).unwrap());
                    s.union_with(&out[*lo]);
                    s.union_with(&out[*hi]);
                }
                BddNode::Or(ch) => ch.iter().for_each(|&c| s.union_with(&out[c])),
            }
            out.push(s);
        }
        out
    }

    /// Variables tested on every path from each node.
    fn must_sets(&self) -> Vec<FixedBitSet> {
        let n = self.variables.len();
        let mut out: Vec<FixedBitSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut s = FixedBitSet::with_capacity(n);
            match node {
                BddNode::Sink(_) => {}
                BddNode::Test { var, lo, hi } => {
                    s.union_with(&out[*lo]);
                    s.intersect_with(&out[*hi]);
                    s.insert(self.var_position(*var).unwrap());
                }
                BddNode::Or(ch) => {
                    s.insert_range(..);
                    ch.iter().for_each(|&c| s.intersect_with(&out[c]));
                }
            }
            out.push(s);
        }
        out
    }

    pub fn is_free(&self) -> bool {
        let may = self.may_sets();
        let r = self.reachable();
        self.nodes.iter().enumerate().all(|(i, n)| match n {
            BddNode::Test { var, lo, hi } if r[i] => {
                let p = self.var_position(*var).unwrap();
                !may[*lo].contains(p) && !may[*hi].contains(p)
            }
            _ => true,
        })
    }

    pub fn is_ordered_by(&self, order: &[Var]) -> bool {
        let pos: HashMap<Var, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if self.variables.iter().any(|v| !pos.contains_key(v)) {
            return false;
        }
        // Smallest order position tested at or below each node.
        let mut first = vec![usize::MAX; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            first[i] = match n {
                BddNode::Sink(_) => usize::MAX,
                BddNode::Test { var, lo, hi } => {
                    let p = pos[var];
                    if first[*lo] <= p || first[*hi] <= p {
                        return false;
                    }
                    p
                }
                BddNode::Or(ch) => ch.iter().map(|&c| first[c]).min().unwrap_or(usize::MAX),
            };
        }
        true
    }

    pub fn is_complete(&self) -> bool {
        self.must_sets()[self.root].count_ones(..) == self.variables.len()
    }

    /// Exhaustive: at most one accepting path per valuation.
    pub fn check_unambiguous(&self) -> Result<bool> {
        let n = self.variables.len();
        check_cap("variable count", n, BRUTE_FORCE_CAP)?;
        let valid = block_valid(n);
        let mut one = vec![0u64; self.nodes.len()];
        let mut two = vec![0u64; self.nodes.len()];
        for block in 0..(1u64 << n).div_ceil(64) {
            let words: Vec<u64> = (0..n).map(|i| block_word(i, block * 64)).collect();
            for (i, node) in self.nodes.iter().enumerate() {
                let (a, b) = match node {
                    BddNode::Sink(v) => (if *v { !0 } else { 0 }, 0),
                    BddNode::Test { var, lo, hi } => {
                        let w = words[self.var_position(*var).unwrap()];
                        (
                            (!w & one[*lo]) | (w & one[*hi]),
                            (!w & two[*lo]) | (w & two[*hi]),
                        )
                    }
                    BddNode::Or(ch) => {
                        let (mut a, mut b) = (0u64, 0u64);
                        for &c in ch {
                            b |= two[c] | (a & one[c]);
                            a |= one[c];
                        }
                        (a, b)
                    }
                };
                one[i] = a;
                two[i] = b;
            }
            if two[self.root] & valid != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn check_class(&self, semantic: bool) -> Result<BddReport> {
        let mut r = BddReport {
            free: self.is_free(),
            ordered: self.order.as_ref().is_some_and(|o| self.is_ordered_by(o)),
            complete: self.is_complete(),
            has_or_nodes: self.has_or_nodes(),
            ..Default::default()
        };
        if r.complete {
            r.width = Some(self.raw_width());
        }
        if semantic {
            r.unambiguous = Some(self.check_unambiguous()?);
        }
        Ok(r)
    }

    /// Same diagram with a different attached order (checked to be a permutation).
    pub fn with_order(self, order: Option<Vec<Var>>) -> Result<Self> {
        Nbdd::new(self.nodes, self.root, self.variables, order)
    }
}

impl BoolFn for Nbdd {
    fn variables(&self) -> Vec<Var> {
        self.variables.clone()
    }

    fn eval_mask(&self, mask: u64) -> bool {
        let words: Vec<u64> = (0..self.variables.len())
            .map(|i| if (mask >> i) & 1 == 1 { !0 } else { 0 })
            .collect();
        self.eval_all_words(&words)[self.root] & 1 == 1
    }

    fn eval_block(&self, base: u64) -> u64 {
        let words: Vec<u64> = (0..self.variables.len())
            .map(|i| block_word(i, base))
            .collect();
        self.eval_all_words(&words)[self.root]
    }
}

/// Hash-consing builder: structurally equal nodes are shared and ∨-children
/// are sorted and deduplicated.
#[derive(Clone, Debug)]
pub struct NbddBuilder {
    nodes: Vec<BddNode>,
    memo: HashMap<BddNode, usize>,
}

impl Default for NbddBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl NbddBuilder {
    pub fn new() -> Self {
        let nodes = vec![BddNode::Sink(false), BddNode::Sink(true)];
        let memo = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, n)| (n, i))
            .collect();
        NbddBuilder { nodes, memo }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn intern(&mut self, n: BddNode) -> usize {
        if let Some(&i) = self.memo.get(&n) {
            return i;
        }
        self.nodes.push(n.clone());
        self.memo.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn test(&mut self, var: Var, lo: usize, hi: usize) -> usize {
        self.intern(BddNode::Test { var, lo, hi })
    }

    /// ∨ of `children`; a single child is returned as is.
    pub fn or(&mut self, mut children: Vec<usize>) -> usize {
        children.sort_unstable();
        children.dedup();
        if children.len() == 1 {
            return children[0];
        }
        self.intern(BddNode::Or(children))
    }

    pub fn finish(self, root: usize, variables: Vec<Var>, order: Option<Vec<Var>>) -> Result<Nbdd> {
        Nbdd::new(self.nodes, root, variables, order)
    }
}
