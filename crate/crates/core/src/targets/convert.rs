use std::collections::HashMap;

use super::{BddNode, Nbdd, NnfBuilder, NnfCircuit, VTree};
use crate::error::{Error, Result};
use crate::logic::Var;

#[derive(Clone, Copy)]
enum Part {
    Const(bool),
    Gate(usize),
}

/// Rewrites each var-node into `(x ∧ D1) ∨ (¬x ∧ D0)`, dropping constant
/// conjuncts. `place` chooses the v-tree node of each ∧-gate.
fn bdd_to_nnf(o: &Nbdd, b: &mut NnfBuilder, place: &dyn Fn(Var) -> Option<usize>) -> Part {
    let mut part: Vec<Part> = Vec::with_capacity(o.len());
    for node in o.nodes() {
        let p = match node {
            BddNode::Sink(v) => Part::Const(*v),
            BddNode::Test { var, lo, hi } => {
                let mut ins = Vec::new();
                for (positive, child) in [(true, *hi), (false, *lo)] {
                    match part[child] {
                        Part::Const(false) => {}
                        Part::Const(true) => ins.push(b.literal(*var, positive, None)),
                        Part::Gate(g) => {
                            let lit = b.literal(*var, positive, None);
                            ins.push(b.and(vec![lit, g], place(*var)));
                        }
                    }
                }
                match ins.len() {
                    0 => Part::Const(false),
                    _ => Part::Gate(b.or(ins, None)),
                }
            }
            BddNode::Or(ch) => {
                let mut ins = Vec::new();
                let mut any_true = false;
                for &c in ch {
                    match part[c] {
                        Part::Const(true) => any_true = true,
                        Part::Const(false) => {}
                        Part::Gate(g) => ins.push(g),
                    }
                }
                match (any_true, ins.len()) {
                    (true, _) => Part::Const(true),
                    (false, 0) => Part::Const(false),
                    (false, 1) => Part::Gate(ins[0]),
                    _ => Part::Gate(b.or(ins, None)),
                }
            }
        };
        part.push(p);
    }
    part[o.root()]
}

fn finish(
    b: NnfBuilder,
    top: Part,
    o: &Nbdd,
    vtree: Option<VTree>,
    root: Option<usize>,
) -> Result<NnfCircuit> {
    let mut b = b;
    let out = match top {
        Part::Gate(g) => g,
        Part::Const(v) => b.constant(v, root),
    };
    let claim = !o.has_or_nodes();
    Ok(b.finish(out, o.variables().to_vec(), vtree)?
        .with_deterministic_claim(claim))
}

/// Free BDD to DNNF of linear size. Inputs without ∨-nodes give decision
/// DNNFs, which are deterministic.
pub fn nfbdd_to_dnnf(o: &Nbdd) -> Result<NnfCircuit> {
    if !o.is_free() {
        return Err(Error::contract("conversion needs a free diagram"));
    }
    let mut b = NnfBuilder::new();
    let top = bdd_to_nnf(o, &mut b, &|_| None);
    finish(b, top, o, None, None)
}

/// Ordered BDD to an SDNNF structured by the right-linear v-tree of its order.
pub fn nobdd_to_sdnnf(o: &Nbdd) -> Result<NnfCircuit> {
    let order = match o.order() {
        Some(ord) if o.is_ordered_by(ord) => ord.to_vec(),
        _ => {
            return Err(Error::contract(
                "conversion needs an ordered diagram with its order",
            ))
        }
    };
    let vtree = if order.is_empty() {
        VTree::leaf(None)
    } else {
        VTree::right_linear(&order)?
    };
    let leaf = vtree.leaf_map();
    let parent: HashMap<Var, usize> = order
        .iter()
        .filter_map(|v| vtree.parent(leaf[v]).map(|p| (*v, p)))
        .collect();
    let mut b = NnfBuilder::new();
    let top = bdd_to_nnf(o, &mut b, &|v| parent.get(&v).copied());
    let root = vtree.root();
    finish(b, top, o, Some(vtree), Some(root))
}
