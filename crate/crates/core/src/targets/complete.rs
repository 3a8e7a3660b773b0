use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::reduce::compact;
use super::{BddNode, Nbdd, NbddBuilder, NnfCircuit, NnfGate, NnfKind, Structure, VTree};
use crate::error::{Error, Result};
use crate::logic::Var;

/// An equivalent diagram in which every root-to-sink path tests every variable.
///
/// Ordered inputs are layered by (node, level) and stay ordered; other free
/// inputs get chains of dummy tests on each edge. Unambiguity is preserved.
pub fn complete_nbdd(o: &Nbdd) -> Result<Nbdd> {
    match o.order() {
        Some(order) if o.is_ordered_by(order) => Ok(complete_ordered(o, order)),
        _ => {
            if !o.is_free() {
                return Err(Error::contract("completion needs a free diagram"));
            }
            Ok(complete_free(o))
        }
    }
}

fn complete_ordered(o: &Nbdd, order: &[Var]) -> Nbdd {
    let n = order.len();
    let pos: HashMap<Var, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut b = NbddBuilder::new();
    let mut memo: HashMap<(usize, usize), usize> = HashMap::new();
    // Explicit stack: (node, level, children done).
    let mut stack = vec![(o.root(), 0usize, false)];
    while let Some((u, l, done)) = stack.pop() {
        if memo.contains_key(&(u, l)) {
            continue;
        }
        let deps: Vec<(usize, usize)> = match o.node(u) {
            BddNode::Sink(_) if l == n => Vec::new(),
            BddNode::Test { var, lo, hi } if pos[var] == l => vec![(*lo, l + 1), (*hi, l + 1)],
            BddNode::Or(ch) => ch.iter().map(|&c| (c, l)).collect(),
            _ => vec![(u, l + 1)],
        };
        if !done {
            stack.push((u, l, true));
            stack.extend(
                deps.iter()
                    .filter(|k| !memo.contains_key(k))
                    .map(|&(c, m)| (c, m, false)),
            );
            continue;
        }
        let id = match o.node(u) {
            BddNode::Sink(v) if l == n => usize::from(*v),
            BddNode::Test { var, .. } if pos[var] == l => {
                b.test(*var, memo[&deps[0]], memo[&deps[1]])
            }
            BddNode::Or(_) => {
                let kids = deps.iter().map(|k| memo[k]).collect();
                b.or(kids)
            }
            _ => {
                let next = memo[&deps[0]];
                b.test(order[l], next, next)
            }
        };
        memo.insert((u, l), id);
    }
    b.finish(
        memo[&(o.root(), 0)],
        o.variables().to_vec(),
        Some(order.to_vec()),
    )
    .expect("layered completion is well formed")
}

fn complete_free(o: &Nbdd) -> Nbdd {
    let vars = o.variables();
    let n = vars.len();
    let mut may: Vec<FixedBitSet> = Vec::with_capacity(o.len());
    for node in o.nodes() {
        let mut s = FixedBitSet::with_capacity(n);
        match node {
            BddNode::Sink(_) => {}
            BddNode::Test { var, lo, hi } => {
                s.insert(o.var_position(*var).unwrap());
                s.union_with(&may[*lo]);
                s.union_with(&may[*hi]);
            }
            BddNode::Or(ch) => ch.iter().for_each(|&c| s.union_with(&may[c])),
        }
        may.push(s);
    }
    let mut b = NbddBuilder::new();
    let pad = |b: &mut NbddBuilder, target: usize, missing: Vec<usize>| -> usize {
        missing
            .iter()
            .rev()
            .fold(target, |next, &p| b.test(vars[p], next, next))
    };
    let mut new = vec![0usize; o.len()];
    for (i, node) in o.nodes().iter().enumerate() {
        new[i] = match node {
            BddNode::Sink(v) => usize::from(*v),
            BddNode::Test { var, lo, hi } => {
                let me = o.var_position(*var).unwrap();
                let gap = |c: usize| {
                    may[i]
                        .difference(&may[c])
                        .filter(|&p| p != me)
                        .collect::<Vec<_>>()
                };
                let l = pad(&mut b, new[*lo], gap(*lo));
                let h = pad(&mut b, new[*hi], gap(*hi));
                b.test(*var, l, h)
            }
            BddNode::Or(ch) => {
                let kids = ch
                    .iter()
                    .map(|&c| pad(&mut b, new[c], may[i].difference(&may[c]).collect()))
                    .collect();
                b.or(kids)
            }
        };
    }
    let r = o.root();
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let root = pad(&mut b, new[r], full.difference(&may[r]).collect());
    b.finish(root, vars.to_vec(), o.order().map(|s| s.to_vec()))
        .expect("padded completion is well formed")
}

/// An equivalent NNF in which every trace mentions every variable.
///
/// Structured inputs become complete SDNNFs over the same v-tree (gates in
/// the alternating form, tautologies filling missing sides); unstructured
/// DNNFs are smoothed with shared `x ∨ ¬x` gates. Determinism is preserved.
pub fn complete_nnf(d: &NnfCircuit) -> Result<NnfCircuit> {
    match d.structure() {
        Some(s) => complete_structured(d, s),
        None => Ok(smooth(d)),
    }
}

fn smooth(d: &NnfCircuit) -> NnfCircuit {
    let vars = d.gate_vars();
    let names = d.variables();
    let mut sm = Smoother::default();
    let mut new = vec![0usize; d.len()];
    for (g, gate) in d.gates().iter().enumerate() {
        new[g] = match gate.kind {
            NnfKind::Var(v) => sm.var(v),
            NnfKind::Or => {
                let ins = gate
                    .inputs
                    .iter()
                    .map(|&i| {
                        let missing: Vec<Var> =
                            vars[g].difference(&vars[i]).map(|p| names[p]).collect();
                        sm.widen(new[i], &missing)
                    })
                    .collect();
                sm.push(NnfKind::Or, ins)
            }
            _ => {
                let ins = gate.inputs.iter().map(|&i| new[i]).collect();
                sm.push(gate.kind, ins)
            }
        };
    }
    let mut all = FixedBitSet::with_capacity(names.len());
    all.insert_range(..);
    let missing: Vec<Var> = all
        .difference(&vars[d.output()])
        .map(|p| names[p])
        .collect();
    let out = sm.widen(new[d.output()], &missing);
    let rho = vec![None; sm.gates.len()];
    let (gates, _, output) = compact(sm.gates, rho, out);
    NnfCircuit::new(gates, output, names.to_vec(), None)
        .expect("smoothed circuit is well formed")
        .with_deterministic_claim(d.deterministic_claim())
}

#[derive(Default)]
struct Smoother {
    gates: Vec<NnfGate>,
    var_gate: HashMap<Var, usize>,
    taut: HashMap<Var, usize>,
}

impl Smoother {
    fn push(&mut self, kind: NnfKind, inputs: Vec<usize>) -> usize {
        self.gates.push(NnfGate { kind, inputs });
        self.gates.len() - 1
    }

    fn var(&mut self, v: Var) -> usize {
        if let Some(&g) = self.var_gate.get(&v) {
            return g;
        }
        let g = self.push(NnfKind::Var(v), Vec::new());
        self.var_gate.insert(v, g);
        g
    }

    /// `g ∧ (x ∨ ¬x) ∧ ...` for each `x` in `missing`, as a chain of binary ∧-gates.
    fn widen(&mut self, g: usize, missing: &[Var]) -> usize {
        let mut acc = g;
        for &x in missing {
            let t = match self.taut.get(&x) {
                Some(&t) => t,
                None => {
                    let v = self.var(x);
                    let nv = self.push(NnfKind::Not, vec![v]);
                    let t = self.push(NnfKind::Or, vec![v, nv]);
                    self.taut.insert(x, t);
                    t
                }
            };
            acc = self.push(NnfKind::And, vec![acc, t]);
        }
        acc
    }
}

struct Completer<'a> {
    d: &'a NnfCircuit,
    t: &'a VTree,
    vars: Vec<FixedBitSet>,
    node_vars: Vec<FixedBitSet>,
    constant: Vec<Option<bool>>,
    gates: Vec<NnfGate>,
    rho: Vec<Option<usize>>,
    memo: HashMap<(usize, usize), usize>,
    taut: HashMap<usize, usize>,
    lits: HashMap<(Var, bool), usize>,
}

impl Completer<'_> {
    fn push(&mut self, kind: NnfKind, inputs: Vec<usize>, node: usize) -> usize {
        self.gates.push(NnfGate { kind, inputs });
        self.rho.push(Some(node));
        self.gates.len() - 1
    }

    fn literal(&mut self, x: Var, positive: bool, leaf: usize) -> usize {
        if let Some(&g) = self.lits.get(&(x, positive)) {
            return g;
        }
        let v = match self.lits.get(&(x, true)) {
            Some(&v) => v,
            None => {
                let v = self.push(NnfKind::Var(x), Vec::new(), leaf);
                self.lits.insert((x, true), v);
                v
            }
        };
        let g = if positive {
            v
        } else {
            self.push(NnfKind::Not, vec![v], leaf)
        };
        self.lits.insert((x, positive), g);
        g
    }

    fn taut(&mut self, n: usize) -> usize {
        if let Some(&g) = self.taut.get(&n) {
            return g;
        }
        let g = match (self.t.children(n), self.t.label(n)) {
            (Some([l, r]), _) => {
                let a = self.taut(l);
                let b = self.taut(r);
                let and = self.push(NnfKind::And, vec![a, b], n);
                self.push(NnfKind::Or, vec![and], n)
            }
            (None, Some(x)) => {
                let p = self.literal(x, true, n);
                let q = self.literal(x, false, n);
                self.push(NnfKind::Or, vec![p, q], n)
            }
            (None, None) => {
                let one = self.push(NnfKind::And, Vec::new(), n);
                self.push(NnfKind::Or, vec![one], n)
            }
        };
        self.taut.insert(n, g);
        g
    }

    fn child_with(&self, n: usize, vars: &FixedBitSet) -> usize {
        let [l, _r] = self.t.children(n).unwrap();
        if vars.is_subset(&self.node_vars[l]) {
            l
        } else {
            self.t.children(n).unwrap()[1]
        }
    }

    /// ∨-gate at node `n` equivalent to `g` padded with tautologies up to L(n).
    fn or_at(&mut self, g: usize, n: usize) -> usize {
        if let Some(&h) = self.memo.get(&(g, n)) {
            return h;
        }
        let h = match self.constant[g] {
            Some(true) => self.taut(n),
            Some(false) => self.push(NnfKind::Or, Vec::new(), n),
            None => self.or_at_live(g, n),
        };
        self.memo.insert((g, n), h);
        h
    }

    /// Descends from `n` towards the child holding `vars`, padding the other side.
    fn lift(&mut self, g: usize, n: usize) -> usize {
        let c = self.child_with(n, &self.vars[g].clone());
        let [l, r] = self.t.children(n).unwrap();
        let other = if c == l { r } else { l };
        let below = self.or_at(g, c);
        let side = self.taut(other);
        let and = self.push(NnfKind::And, vec![below, side], n);
        self.push(NnfKind::Or, vec![and], n)
    }

    fn or_at_live(&mut self, g: usize, n: usize) -> usize {
        let gate = self.d.gate(g).clone();
        match gate.kind {
            NnfKind::Var(_) | NnfKind::Not if self.t.is_leaf(n) => {
                let x = match gate.kind {
                    NnfKind::Var(x) => x,
                    _ => match self.d.gate(gate.inputs[0]).kind {
                        NnfKind::Var(x) => x,
                        _ => unreachable!(),
                    },
                };
                let lit = self.literal(x, gate.kind != NnfKind::Not, n);
                self.push(NnfKind::Or, vec![lit], n)
            }
            NnfKind::Var(_) | NnfKind::Not => self.lift(g, n),
            NnfKind::Or => {
                let mut ins = Vec::new();
                for &i in &gate.inputs {
                    if self.constant[i] == Some(false) {
                        continue;
                    }
                    let h = self.or_at(i, n);
                    ins.extend_from_slice(&self.gates[h].inputs.clone());
                }
                ins.sort_unstable();
                ins.dedup();
                self.push(NnfKind::Or, ins, n)
            }
            NnfKind::And => {
                let live: Vec<usize> = gate
                    .inputs
                    .iter()
                    .copied()
                    .filter(|&i| self.constant[i].is_none())
                    .collect();
                if gate.inputs.iter().any(|&i| self.constant[i] == Some(false)) {
                    return self.push(NnfKind::Or, Vec::new(), n);
                }
                match live[..] {
                    [] => self.taut(n),
                    [a] => self.or_at(a, n),
                    [a, b] => {
                        let [l, r] = self
                            .t
                            .children(n)
                            .expect("two variable-disjoint inputs fit an internal node");
                        let fits =
                            |s: &Self, i: usize, c: usize| s.vars[i].is_subset(&s.node_vars[c]);
                        if fits(self, a, l) && fits(self, b, r) {
                            let x = self.or_at(a, l);
                            let y = self.or_at(b, r);
                            let and = self.push(NnfKind::And, vec![x, y], n);
                            self.push(NnfKind::Or, vec![and], n)
                        } else if fits(self, a, r) && fits(self, b, l) {
                            let x = self.or_at(b, l);
                            let y = self.or_at(a, r);
                            let and = self.push(NnfKind::And, vec![x, y], n);
                            self.push(NnfKind::Or, vec![and], n)
                        } else {
                            self.lift(g, n)
                        }
                    }
                    _ => unreachable!("decomposable ∧-gates have at most two inputs"),
                }
            }
        }
    }
}

fn complete_structured(d: &NnfCircuit, s: &Structure) -> Result<NnfCircuit> {
    let report = d.check_class(false)?;
    if !report.structured {
        return Err(Error::contract(format!(
            "not a structured DNNF: {}",
            report.problems.join("; ")
        )));
    }
    let t = &s.vtree;
    if t.variables() != d.variables() {
        return Err(Error::input("v-tree labels differ from the variable set"));
    }
    let vars = d.gate_vars();
    let node_vars: Vec<FixedBitSet> = t
        .labels_under()
        .iter()
        .map(|ls| {
            let mut b = FixedBitSet::with_capacity(d.variables().len());
            ls.iter()
                .for_each(|v| b.insert(d.var_position(*v).unwrap()));
            b
        })
        .collect();
    // Variable-free gates are constants.
    let mut constant: Vec<Option<bool>> = Vec::with_capacity(d.len());
    for (g, gate) in d.gates().iter().enumerate() {
        let c = if vars[g].count_ones(..) > 0 {
            None
        } else {
            match gate.kind {
                NnfKind::And => Some(gate.inputs.iter().all(|&i| constant[i] == Some(true))),
                NnfKind::Or => Some(gate.inputs.iter().any(|&i| constant[i] == Some(true))),
                _ => unreachable!("literals mention a variable"),
            }
        };
        constant.push(c);
    }
    let mut c = Completer {
        d,
        t,
        vars,
        node_vars,
        constant,
        gates: Vec::new(),
        rho: Vec::new(),
        memo: HashMap::new(),
        taut: HashMap::new(),
        lits: HashMap::new(),
    };
    let out = c.or_at(d.output(), t.root());
    let (gates, rho, output) = compact(c.gates, c.rho, out);
    Ok(NnfCircuit::new(
        gates,
        output,
        d.variables().to_vec(),
        Some(Structure {
            vtree: t.clone(),
            rho,
        }),
    )?
    .with_deterministic_claim(d.deterministic_claim()))
}
