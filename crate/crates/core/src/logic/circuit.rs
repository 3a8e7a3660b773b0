use std::collections::HashMap;

use super::{block_word, BoolFn, Hypergraph, Valuation, Var};
use crate::error::{Error, Result};

/// Dense gate identifier, assigned in construction order.
pub type GateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// A variable gate carrying its variable label.
    Var(Var),
    Not,
    And,
    Or,
}

impl GateKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            GateKind::Var(_) => "VAR",
            GateKind::Not => "NOT",
            GateKind::And => "AND",
            GateKind::Or => "OR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    /// Sorted, duplicate-free.
    pub inputs: Vec<GateId>,
}

/// A Boolean circuit: a DAG of var/not/and/or gates with one output.
///
/// Gates keep an external numeric id used for I/O (`g<id>` in the text format,
/// vertex numbers in PACE files). A var gate's variable label is its external id.
#[derive(Clone, Debug)]
pub struct Circuit {
    gates: Vec<Gate>,
    output: GateId,
    var_order: Vec<GateId>,
    ext_ids: Vec<usize>,
    topo: Vec<GateId>,
    var_pos: HashMap<Var, usize>,
    by_ext: HashMap<usize, GateId>,
}

impl Circuit {
    /// Builds and validates a circuit. `ext_ids` defaults to labels for var gates
    /// and fresh ids above the largest label for the others.
    pub fn new(mut gates: Vec<Gate>, output: GateId, ext_ids: Option<Vec<usize>>) -> Result<Self> {
        let n = gates.len();
        if output >= n {
            return Err(Error::input(format!("output gate {output} does not exist")));
        }
        for (id, g) in gates.iter_mut().enumerate() {
            g.inputs.sort_unstable();
            g.inputs.dedup();
            if let Some(&bad) = g.inputs.iter().find(|&&i| i >= n || i == id) {
                return Err(Error::input(format!("gate {id} has invalid input {bad}")));
            }
            match g.kind {
                GateKind::Var(_) if !g.inputs.is_empty() => {
                    return Err(Error::input(format!("var gate {id} has inputs")));
                }
                GateKind::Not if g.inputs.len() != 1 => {
                    return Err(Error::input(format!(
                        "not gate {id} needs exactly one input"
                    )));
                }
                _ => {}
            }
        }
        let var_order: Vec<GateId> = (0..n)
            .filter(|&g| matches!(gates[g].kind, GateKind::Var(_)))
            .collect();
        let mut var_pos = HashMap::new();
        for (i, &g) in var_order.iter().enumerate() {
            let GateKind::Var(label) = gates[g].kind else {
                unreachable!()
            };
            if var_pos.insert(label, i).is_some() {
                return Err(Error::input(format!("variable {label} declared twice")));
            }
        }
        let ext_ids = match ext_ids {
            Some(ids) => {
                if ids.len() != n {
                    return Err(Error::input("external id list has the wrong length"));
                }
                ids
            }
            None => {
                let mut next = var_pos.keys().max().map_or(1, |m| m + 1);
                gates
                    .iter()
                    .map(|g| match g.kind {
                        GateKind::Var(l) => l,
                        _ => {
                            next += 1;
                            next - 1
                        }
                    })
                    .collect()
            }
        };
        let mut by_ext = HashMap::new();
        for (g, &e) in ext_ids.iter().enumerate() {
            if by_ext.insert(e, g).is_some() {
                return Err(Error::input(format!("external gate id {e} used twice")));
            }
        }
        let topo = topological_order(&gates)
            .ok_or_else(|| Error::input("the wire relation has a cycle"))?;
        Ok(Circuit {
            gates,
            output,
            var_order,
            ext_ids,
            topo,
            var_pos,
            by_ext,
        })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, g: GateId) -> &Gate {
        &self.gates[g]
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    /// Var gates in declaration order.
    pub fn var_order(&self) -> &[GateId] {
        &self.var_order
    }

    pub fn num_vars(&self) -> usize {
        self.var_order.len()
    }

    /// Variable labels in declaration order.
    pub fn variables(&self) -> Vec<Var> {
        self.var_order
            .iter()
            .map(|&g| self.label(g).unwrap())
            .collect()
    }

    pub fn label(&self, g: GateId) -> Option<Var> {
        match self.gates[g].kind {
            GateKind::Var(l) => Some(l),
            _ => None,
        }
    }

    pub fn var_gate(&self, v: Var) -> Option<GateId> {
        self.var_pos.get(&v).map(|&i| self.var_order[i])
    }

    pub fn var_position(&self, v: Var) -> Option<usize> {
        self.var_pos.get(&v).copied()
    }

    pub fn ext_id(&self, g: GateId) -> usize {
        self.ext_ids[g]
    }

    pub fn gate_by_ext(&self, ext: usize) -> Option<GateId> {
        self.by_ext.get(&ext).copied()
    }

    /// Gates with inputs before users.
    pub fn topological(&self) -> &[GateId] {
        &self.topo
    }

    /// Number of wires.
    pub fn num_wires(&self) -> usize {
        self.gates.iter().map(|g| g.inputs.len()).sum()
    }

    pub fn evaluate(&self, v: &Valuation) -> Result<bool> {
        if v.len() != self.num_vars() {
            return Err(Error::input(format!(
                "valuation covers {} variables, circuit has {}",
                v.len(),
                self.num_vars()
            )));
        }
        let mut words = vec![0u64; self.num_vars()];
        for (var, b) in v.iter() {
            let pos = self
                .var_position(var)
                .ok_or_else(|| Error::input(format!("{var} is not a circuit variable")))?;
            words[pos] = if b { !0 } else { 0 };
        }
        Ok(self.eval_words(&words) & 1 == 1)
    }

    /// Bit-parallel evaluation of every gate; `var_words[i]` is the word of `var_order[i]`.
    pub fn eval_all_words(&self, var_words: &[u64]) -> Vec<u64> {
        let mut val = vec![0u64; self.gates.len()];
        for (i, &g) in self.var_order.iter().enumerate() {
            val[g] = var_words[i];
        }
        for &g in &self.topo {
            let gate = &self.gates[g];
            val[g] = match gate.kind {
                GateKind::Var(_) => val[g],
                GateKind::Not => !val[gate.inputs[0]],
                GateKind::And => gate.inputs.iter().fold(!0, |acc, &i| acc & val[i]),
                GateKind::Or => gate.inputs.iter().fold(0, |acc, &i| acc | val[i]),
            };
        }
        val
    }

    pub fn eval_words(&self, var_words: &[u64]) -> u64 {
        self.eval_all_words(var_words)[self.output]
    }

    /// Primal graph: one 2-element edge per wire. A circuit without wires gets
    /// a singleton edge per gate so that the hypergraph has at least one edge.
    pub fn primal_graph(&self) -> Hypergraph {
        let vertices: Vec<usize> = (0..self.gates.len()).collect();
        let mut edges: Vec<Vec<usize>> = Vec::with_capacity(self.num_wires());
        for (g, gate) in self.gates.iter().enumerate() {
            for &i in &gate.inputs {
                edges.push(vec![i.min(g), i.max(g)]);
            }
        }
        if edges.is_empty() {
            edges = vertices.iter().map(|&v| vec![v]).collect();
        }
        Hypergraph::new(vertices, edges).expect("primal graph is well formed")
    }
}

impl BoolFn for Circuit {
    fn variables(&self) -> Vec<Var> {
        Circuit::variables(self)
    }

    fn eval_mask(&self, mask: u64) -> bool {
        let words: Vec<u64> = (0..self.num_vars())
            .map(|i| if (mask >> i) & 1 == 1 { !0 } else { 0 })
            .collect();
        self.eval_words(&words) & 1 == 1
    }

    fn eval_block(&self, base: u64) -> u64 {
        let words: Vec<u64> = (0..self.num_vars()).map(|i| block_word(i, base)).collect();
        self.eval_words(&words)
    }
}

fn topological_order(gates: &[Gate]) -> Option<Vec<GateId>> {
    let n = gates.len();
    let mut indeg: Vec<usize> = gates.iter().map(|g| g.inputs.len()).collect();
    let mut users: Vec<Vec<GateId>> = vec![Vec::new(); n];
    for (g, gate) in gates.iter().enumerate() {
        for &i in &gate.inputs {
            users[i].push(g);
        }
    }
    let mut stack: Vec<GateId> = (0..n).rev().filter(|&g| indeg[g] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(g) = stack.pop() {
        order.push(g);
        for &u in users[g].iter().rev() {
            indeg[u] -= 1;
            if indeg[u] == 0 {
                stack.push(u);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Incremental construction of a [`Circuit`].
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gate(&mut self, kind: GateKind, inputs: impl IntoIterator<Item = GateId>) -> GateId {
        self.gates.push(Gate {
            kind,
            inputs: inputs.into_iter().collect(),
        });
        self.gates.len() - 1
    }

    pub fn var(&mut self, label: Var) -> GateId {
        self.gate(GateKind::Var(label), [])
    }

    pub fn not(&mut self, input: GateId) -> GateId {
        self.gate(GateKind::Not, [input])
    }

    pub fn and(&mut self, inputs: impl IntoIterator<Item = GateId>) -> GateId {
        self.gate(GateKind::And, inputs)
    }

    pub fn or(&mut self, inputs: impl IntoIterator<Item = GateId>) -> GateId {
        self.gate(GateKind::Or, inputs)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn build(self, output: GateId) -> Result<Circuit> {
        Circuit::new(self.gates, output, None)
    }
}
