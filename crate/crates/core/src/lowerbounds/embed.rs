use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{ClauseForm, ClauseKind, Hypergraph, MaybeConst, Valuation, Var};

/// Graph on the edges of a hypergraph: two distinct edges are adjacent when
/// some edge meets both of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionGraph {
    pub adj: Vec<Vec<usize>>,
}

impl ExclusionGraph {
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Panics if the degree exceeds `(arity × degree)² − 1`, which cannot happen.
pub fn exclusion_graph(h: &Hypergraph) -> ExclusionGraph {
    let inc = h.incidence();
    let edges = h.dense_edges();
    let touching: Vec<BTreeSet<usize>> = edges
        .iter()
        .map(|e| e.iter().flat_map(|&v| inc[v].iter().copied()).collect())
        .collect();
    let adj: Vec<Vec<usize>> = (0..edges.len())
        .map(|e| {
            let mut s = BTreeSet::new();
            for &mid in &touching[e] {
                s.extend(touching[mid].iter().copied());
            }
            s.remove(&e);
            s.into_iter().collect()
        })
        .collect();
    let g = ExclusionGraph { adj };
    let (a, d) = h.arity_degree();
    assert!(
        g.max_degree() < (a * d) * (a * d),
        "exclusion graph degree {} exceeds ({a}·{d})² − 1",
        g.max_degree()
    );
    g
}

/// Picks the smallest remaining vertex of `subset` and discards its
/// neighbors, until `subset` is exhausted.
pub fn greedy_independent_set(adj: &[Vec<usize>], subset: &[usize]) -> Vec<usize> {
    let mut left: BTreeSet<usize> = subset.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(v) = left.pop_first() {
        out.push(v);
        for u in &adj[v] {
            left.remove(u);
        }
    }
    out
}

/// A restriction of a monotone form to a perfect matching between `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub n: usize,
    /// Chosen clause indices, ascending.
    pub clauses: Vec<usize>,
    /// `x[i]` and `y[i]` come from `clauses[i]`.
    pub x: Vec<Var>,
    pub y: Vec<Var>,
    /// Valuation of every other variable.
    pub nu: Valuation,
    /// `nu` applied to the form.
    pub result: ClauseForm,
}

/// `⌊|K′| / (a²·d²)⌋`.
pub fn embedding_size(split: usize, arity: usize, degree: usize) -> usize {
    split / (arity * arity * degree * degree).max(1)
}

/// Finds `X ⊆ X′`, `Y ⊆ Y′` of size `n = ⌊|K′|/(a²d²)⌋` and a valuation of
/// the other variables turning `f` into `SCOV_n(X, Y)` (CNF) or `SINT_n(X, Y)`
/// (DNF). `k_split` indexes `f.clauses()` and must be split by `(X′, Y′)`.
pub fn extract_embedding(
    f: &ClauseForm,
    x_side: &[Var],
    y_side: &[Var],
    k_split: &[usize],
) -> Result<Embedding> {
    if !f.is_minimized() {
        return Err(Error::input("the clause form must be minimized"));
    }
    let xs: BTreeSet<Var> = x_side.iter().copied().collect();
    let ys: BTreeSet<Var> = y_side.iter().copied().collect();
    if !xs.is_disjoint(&ys) {
        return Err(Error::input("X′ and Y′ must be disjoint"));
    }
    let clauses = f.clauses();
    for &k in k_split {
        let c = clauses
            .get(k)
            .ok_or_else(|| Error::input(format!("clause index {k} out of range")))?;
        if !c.iter().any(|v| xs.contains(v)) || !c.iter().any(|v| ys.contains(v)) {
            return Err(Error::input(format!("clause {k} is not split by (X′, Y′)")));
        }
    }
    let h = f.hypergraph();
    let (a, d) = h.arity_degree();
    let n = embedding_size(k_split.len(), a, d);
    if n == 0 {
        return Err(Error::EmptyEmbedding(k_split.len()));
    }
    let g = exclusion_graph(&h);
    let mut chosen = greedy_independent_set(&g.adj, k_split);
    chosen.truncate(n);

    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for &k in &chosen {
        let c = &clauses[k];
        x.push(*c.iter().find(|v| xs.contains(v)).unwrap());
        y.push(*c.iter().find(|v| ys.contains(v)).unwrap());
    }
    let z: BTreeSet<Var> = chosen
        .iter()
        .flat_map(|&k| clauses[k].iter().copied())
        .collect();
    let keep: BTreeSet<Var> = x.iter().chain(&y).copied().collect();
    // Outside Z: satisfy CNF clauses (falsify DNF terms). Inside Z: drop the
    // extra literals, i.e. the opposite value.
    let outside = f.kind() == ClauseKind::Cnf;
    let nu = Valuation::from_pairs(
        f.variables()
            .iter()
            .filter(|v| !keep.contains(v))
            .map(|&v| (v, if z.contains(&v) { !outside } else { outside })),
    )?;
    let result = match f.partial_assign(&nu)? {
        MaybeConst::Value(r) => r,
        MaybeConst::Const(b) => {
            return Err(Error::contract(format!(
                "embedding collapsed to the constant {b}"
            )));
        }
    };
    if !is_matching_shape(&result, f.kind(), &x, &y) {
        return Err(Error::contract(
            "restricted form is not a perfect matching between X and Y",
        ));
    }
    Ok(Embedding {
        n,
        clauses: chosen,
        x,
        y,
        nu,
        result,
    })
}

/// Whether `f` has kind `kind`, variables exactly `X ∪ Y`, and clauses exactly
/// `{x_i, y_i}`.
pub fn is_matching_shape(f: &ClauseForm, kind: ClauseKind, x: &[Var], y: &[Var]) -> bool {
    if f.kind() != kind || x.len() != y.len() {
        return false;
    }
    let mut vars: Vec<Var> = x.iter().chain(y).copied().collect();
    vars.sort_unstable();
    let distinct = vars.windows(2).all(|w| w[0] != w[1]);
    let mut want: Vec<Vec<Var>> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| if a < b { vec![a, b] } else { vec![b, a] })
        .collect();
    want.sort();
    distinct && f.variables() == vars.as_slice() && f.clauses() == want.as_slice()
}
