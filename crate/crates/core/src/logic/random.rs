//! Seeded generators for circuits, clause forms and hypergraphs.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Circuit, CircuitBuilder, ClauseForm, ClauseKind, Hypergraph, Var};

/// Shape of a random circuit. Inputs of each gate are drawn from the `window`
/// most recent gates, which keeps the treewidth small.
#[derive(Clone, Copy, Debug)]
pub struct CircuitShape {
    pub vars: usize,
    pub internal: usize,
    pub window: usize,
    pub max_fanin: usize,
}

impl Default for CircuitShape {
    fn default() -> Self {
        CircuitShape {
            vars: 8,
            internal: 16,
            window: 5,
            max_fanin: 3,
        }
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, shape: CircuitShape) -> Circuit {
    let mut b = CircuitBuilder::new();
    let mut ids: Vec<usize> = (1..=shape.vars).map(|v| b.var(v)).collect();
    ids.shuffle(rng);
    // Interleave variables with internal gates so windows see fresh inputs.
    let mut pending = ids.into_iter();
    let mut pool: Vec<usize> = pending.by_ref().take(2.min(shape.vars)).collect();
    for _ in 0..shape.internal {
        if rng.gen_bool(0.5) {
            if let Some(v) = pending.next() {
                pool.push(v);
            }
        }
        let lo = pool.len().saturating_sub(shape.window);
        let recent = &pool[lo..];
        let roll = rng.gen_range(0..10);
        let g = if roll < 2 && !recent.is_empty() {
            let i = *recent.choose(rng).unwrap();
            b.not(i)
        } else {
            let fanin = if rng.gen_bool(0.04) {
                0
            } else {
                rng.gen_range(1..=shape.max_fanin.min(recent.len()).max(1))
            };
            let ins: Vec<usize> = recent
                .choose_multiple(rng, fanin.min(recent.len()))
                .copied()
                .collect();
            if roll < 6 {
                b.and(ins)
            } else {
                b.or(ins)
            }
        };
        pool.push(g);
    }
    for v in pending {
        let prev = *pool.last().unwrap();
        let g = if rng.gen_bool(0.5) {
            b.and([prev, v])
        } else {
            b.or([prev, v])
        };
        pool.push(g);
    }
    let out = *pool.last().expect("at least one gate");
    b.build(out).expect("generated circuits are acyclic")
}

/// Random monotone clause form on variables `1..=vars` whose arity is at most
/// `max_arity` and degree at most `max_degree`. `None` if no clause fits.
pub fn random_monotone<R: Rng>(
    rng: &mut R,
    kind: ClauseKind,
    vars: usize,
    clauses: usize,
    max_arity: usize,
    max_degree: usize,
) -> Option<ClauseForm> {
    let mut occ = vec![0usize; vars + 1];
    let mut out: Vec<Vec<Var>> = Vec::new();
    for _ in 0..clauses {
        let size = rng.gen_range(1..=max_arity.max(1));
        let free: Vec<Var> = (1..=vars).filter(|&v| occ[v] < max_degree).collect();
        if free.len() < size {
            continue;
        }
        let c: Vec<Var> = free.choose_multiple(rng, size).copied().collect();
        for &v in &c {
            occ[v] += 1;
        }
        out.push(c);
    }
    if out.is_empty() {
        return None;
    }
    ClauseForm::new(kind, (1..=vars).collect(), out).ok()
}

/// Random hypergraph on vertices `0..vertices` with edges of size `1..=max_arity`.
pub fn random_hypergraph<R: Rng>(
    rng: &mut R,
    vertices: usize,
    edges: usize,
    max_arity: usize,
) -> Hypergraph {
    let all: Vec<usize> = (0..vertices).collect();
    let es: Vec<Vec<usize>> = (0..edges.max(1))
        .map(|_| {
            let k = rng.gen_range(1..=max_arity.min(vertices).max(1));
            all.choose_multiple(rng, k).copied().collect()
        })
        .collect();
    Hypergraph::new(all, es).expect("random edges are valid")
}
