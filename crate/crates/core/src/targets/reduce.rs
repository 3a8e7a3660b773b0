use std::collections::{BTreeSet, HashMap};

use super::{NnfCircuit, NnfGate, NnfKind, Structure, VTree};
use crate::error::{Error, Result};
use crate::logic::{MaybeConst, Var};

/// Compresses an extended complete SDNNF into a complete one on a non-extended
/// v-tree that is a reduction of the input v-tree.
///
/// Equivalent ∧-gates are merged, constants are propagated, subtrees without
/// labeled leaves disappear and a node left with one meaningful child is
/// contracted into it. Constant functions come back as `MaybeConst::Const`.
pub fn reduce_extended(d: &NnfCircuit) -> Result<MaybeConst<NnfCircuit>> {
    let report = d.check_class(false)?;
    if !report.complete {
        return Err(Error::contract(format!(
            "reduction needs an (extended) complete SDNNF: {}",
            report.problems.join("; ")
        )));
    }
    Ok(reduce_unchecked(d, &vec![None; d.len()], &BTreeSet::new()))
}

/// Same as [`reduce_extended`] on an input trusted to be complete, with some
/// gates forced to constants and some variables removed from the v-tree.
pub(crate) fn reduce_unchecked(
    d: &NnfCircuit,
    fixed: &[Option<bool>],
    dropped: &BTreeSet<Var>,
) -> MaybeConst<NnfCircuit> {
    let s = d.structure().expect("complete circuits carry a structure");
    let t = &s.vtree;
    let rho = |g: usize| s.rho[g].expect("complete circuits map every gate");

    // Constant propagation over the original gates.
    let mut val: Vec<Option<bool>> = Vec::with_capacity(d.len());
    for (g, gate) in d.gates().iter().enumerate() {
        let v = match gate.kind {
            NnfKind::Var(_) => fixed[g],
            NnfKind::Not => fixed[g].or(val[gate.inputs[0]].map(|b| !b)),
            NnfKind::And => {
                if gate.inputs.iter().any(|&i| val[i] == Some(false)) {
                    Some(false)
                } else if gate.inputs.iter().all(|&i| val[i] == Some(true)) {
                    Some(true)
                } else {
                    None
                }
            }
            NnfKind::Or => {
                if gate.inputs.iter().any(|&i| val[i] == Some(true)) {
                    Some(true)
                } else if gate.inputs.iter().all(|&i| val[i] == Some(false)) {
                    Some(false)
                } else {
                    None
                }
            }
        };
        val.push(v);
    }
    let variables: Vec<Var> = d
        .variables()
        .iter()
        .copied()
        .filter(|v| !dropped.contains(v))
        .collect();
    if let Some(b) = val[d.output()] {
        return MaybeConst::Const(b);
    }

    // Live nodes hold a kept label; `rep` sends each live node to the node it
    // contracts into; `kept` numbers the nodes of the new v-tree.
    let label = |n: usize| t.label(n).filter(|v| !dropped.contains(v));
    let mut live = vec![false; t.len()];
    let mut rep = vec![usize::MAX; t.len()];
    let mut kept: HashMap<usize, usize> = HashMap::new();
    let mut spec: Vec<(Option<Var>, Option<[usize; 2]>)> = Vec::new();
    for n in t.postorder() {
        match t.children(n) {
            None => {
                live[n] = label(n).is_some();
                if live[n] {
                    rep[n] = n;
                    kept.insert(n, spec.len());
                    spec.push((label(n), None));
                }
            }
            Some([l, r]) => {
                live[n] = live[l] || live[r];
                if live[l] && live[r] {
                    rep[n] = n;
                    kept.insert(n, spec.len());
                    spec.push((None, Some([kept[&rep[l]], kept[&rep[r]]])));
                } else if live[l] {
                    rep[n] = rep[l];
                } else if live[r] {
                    rep[n] = rep[r];
                }
            }
        }
    }
    let root = kept[&rep[t.root()]];
    let vtree = VTree::from_nodes(spec, root).expect("contracted v-tree is well formed");

    let mut b = Rebuild::default();
    let mut new: Vec<Option<usize>> = vec![None; d.len()];
    for (g, gate) in d.gates().iter().enumerate() {
        if val[g].is_some() {
            continue;
        }
        let n = rho(g);
        debug_assert!(live[n], "non-constant gate below a node without labels");
        let at = kept.get(&rep[n]).copied();
        new[g] = match gate.kind {
            NnfKind::Var(_) => Some(b.intern(gate.kind, Vec::new(), at.unwrap())),
            NnfKind::Not => Some(b.intern(
                NnfKind::Not,
                vec![new[gate.inputs[0]].unwrap()],
                at.unwrap(),
            )),
            NnfKind::Or => {
                let contracted = t.children(n).is_some() && rep[n] != n;
                let mut ins = Vec::new();
                for &a in &gate.inputs {
                    if val[a].is_some() {
                        continue;
                    }
                    if contracted {
                        // The ∧-input has a single non-constant input: an ∨-gate
                        // at the live child, whose own inputs are taken over.
                        let h = d
                            .gate(a)
                            .inputs
                            .iter()
                            .copied()
                            .find(|&h| val[h].is_none())
                            .unwrap();
                        ins.extend_from_slice(&b.gates[new[h].unwrap()].inputs);
                    } else {
                        ins.push(new[a].unwrap());
                    }
                }
                Some(b.intern(NnfKind::Or, ins, at.unwrap()))
            }
            NnfKind::And => {
                if rep[n] != n {
                    None
                } else {
                    let [l, r] = t.children(n).unwrap();
                    let mut ins = Vec::new();
                    for &i in &gate.inputs {
                        ins.push(match (val[i], new[i]) {
                            (None, Some(x)) => x,
                            // A live child whose ∨-input folded to 1.
                            _ => {
                                let c = if t.is_ancestor(l, rho(i)) { l } else { r };
                                b.taut(t, &rep, &kept, rep[c])
                            }
                        });
                    }
                    Some(b.intern(NnfKind::And, ins, at.unwrap()))
                }
            }
        };
    }
    let out = new[d.output()].unwrap();
    let (gates, rho, output) = compact(b.gates, b.rho, out);
    let c = NnfCircuit::new(gates, output, variables, Some(Structure { vtree, rho }))
        .expect("reduced circuit is well formed")
        .with_deterministic_claim(d.deterministic_claim());
    MaybeConst::Value(c)
}

#[derive(Default)]
struct Rebuild {
    gates: Vec<NnfGate>,
    rho: Vec<Option<usize>>,
    memo: HashMap<(NnfKind, usize, Vec<usize>), usize>,
    taut: HashMap<usize, usize>,
}

impl Rebuild {
    fn intern(&mut self, kind: NnfKind, mut inputs: Vec<usize>, node: usize) -> usize {
        inputs.sort_unstable();
        inputs.dedup();
        let key = (kind, node, inputs);
        if let Some(&g) = self.memo.get(&key) {
            return g;
        }
        self.gates.push(NnfGate {
            kind,
            inputs: key.2.clone(),
        });
        self.rho.push(Some(node));
        self.memo.insert(key, self.gates.len() - 1);
        self.gates.len() - 1
    }

    /// A valid ∨-gate computing 1 at the kept node `old` (an old node id).
    fn taut(
        &mut self,
        t: &VTree,
        rep: &[usize],
        kept: &HashMap<usize, usize>,
        old: usize,
    ) -> usize {
        if let Some(&g) = self.taut.get(&old) {
            return g;
        }
        let at = kept[&old];
        let g = match t.children(old) {
            None => {
                let x = self.intern(NnfKind::Var(t.label(old).unwrap()), Vec::new(), at);
                let nx = self.intern(NnfKind::Not, vec![x], at);
                self.intern(NnfKind::Or, vec![x, nx], at)
            }
            Some([l, r]) => {
                let a = self.taut(t, rep, kept, rep[l]);
                let b = self.taut(t, rep, kept, rep[r]);
                let and = self.intern(NnfKind::And, vec![a, b], at);
                self.intern(NnfKind::Or, vec![and], at)
            }
        };
        self.taut.insert(old, g);
        g
    }
}

/// Keeps the gates reachable from `output`, renumbered in their original order.
pub(crate) fn compact(
    gates: Vec<NnfGate>,
    rho: Vec<Option<usize>>,
    output: usize,
) -> (Vec<NnfGate>, Vec<Option<usize>>, usize) {
    let mut reach = vec![false; gates.len()];
    reach[output] = true;
    for g in (0..gates.len()).rev() {
        if reach[g] {
            for &i in &gates[g].inputs {
                reach[i] = true;
            }
        }
    }
    let mut id = vec![usize::MAX; gates.len()];
    let mut out_gates = Vec::new();
    let mut out_rho = Vec::new();
    for (g, (mut gate, r)) in gates.into_iter().zip(rho).enumerate() {
        if !reach[g] {
            continue;
        }
        id[g] = out_gates.len();
        for i in gate.inputs.iter_mut() {
            *i = id[*i];
        }
        gate.inputs.sort_unstable();
        out_gates.push(gate);
        out_rho.push(r);
    }
    (out_gates, out_rho, id[output])
}
