use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::VTree;
use crate::error::{check_cap, Error, Result, BRUTE_FORCE_CAP};
use crate::logic::{block_valid, block_word, BoolFn, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NnfKind {
    Var(Var),
    /// Negation of its single input, which is a var gate.
    Not,
    And,
    Or,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NnfGate {
    pub kind: NnfKind,
    pub inputs: Vec<usize>,
}

/// A v-tree with a structuring map from gates to v-tree nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub vtree: VTree,
    pub rho: Vec<Option<usize>>,
}

/// An NNF circuit with gates in topological order (inputs have smaller ids).
///
/// `deterministic_claim` records that the producer guarantees determinism, so
/// consumers above the exhaustive-check cap can rely on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NnfCircuit {
    gates: Vec<NnfGate>,
    output: usize,
    variables: Vec<Var>,
    structure: Option<Structure>,
    deterministic_claim: bool,
}

/// Findings of [`NnfCircuit::check_class`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NnfReport {
    pub decomposable: bool,
    /// `None` when the semantic check was not requested.
    pub deterministic: Option<bool>,
    pub structured: bool,
    /// The seven completeness conditions (on a possibly extended v-tree).
    pub complete: bool,
    pub extended: bool,
    /// Every trace from the output mentions every variable.
    pub trace_complete: bool,
    /// Reported only for complete circuits.
    pub width: Option<usize>,
    pub problems: Vec<String>,
}

impl NnfCircuit {
    pub fn new(
        gates: Vec<NnfGate>,
        output: usize,
        mut variables: Vec<Var>,
        structure: Option<Structure>,
    ) -> Result<Self> {
        variables.sort_unstable();
        variables.dedup();
        if output >= gates.len() {
            return Err(Error::input("NNF output gate does not exist"));
        }
        for (i, g) in gates.iter().enumerate() {
            if let Some(&bad) = g.inputs.iter().find(|&&x| x >= i) {
                return Err(Error::input(format!(
                    "NNF gate {i} has input {bad} that is not earlier"
                )));
            }
            match g.kind {
                NnfKind::Var(v) => {
                    if !g.inputs.is_empty() {
                        return Err(Error::input(format!("NNF var gate {i} has inputs")));
                    }
                    if variables.binary_search(&v).is_err() {
                        return Err(Error::input(format!("NNF variable {v} is not declared")));
                    }
                }
                NnfKind::Not
                    if (g.inputs.len() != 1
                        || !matches!(gates[g.inputs[0]].kind, NnfKind::Var(_))) =>
                {
                    return Err(Error::input(format!(
                        "NNF not gate {i} must negate a var gate"
                    )));
                }
                _ => {}
            }
        }
        if let Some(s) = &structure {
            if s.rho.len() != gates.len() {
                return Err(Error::input("structuring map has the wrong length"));
            }
            if s.rho.iter().flatten().any(|&n| n >= s.vtree.len()) {
                return Err(Error::input("structuring map names a missing v-tree node"));
            }
        }
        Ok(NnfCircuit {
            gates,
            output,
            variables,
            structure,
            deterministic_claim: false,
        })
    }

    pub fn with_deterministic_claim(mut self, claim: bool) -> Self {
        self.deterministic_claim = claim;
        self
    }

    pub fn deterministic_claim(&self) -> bool {
        self.deterministic_claim
    }

    pub fn gates(&self) -> &[NnfGate] {
        &self.gates
    }

    pub fn gate(&self, g: usize) -> &NnfGate {
        &self.gates[g]
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Sorted variable set of the represented function.
    pub fn variables(&self) -> &[Var] {
        &self.variables
    }

    pub fn structure(&self) -> Option<&Structure> {
        self.structure.as_ref()
    }

    pub fn vtree(&self) -> Option<&VTree> {
        self.structure.as_ref().map(|s| &s.vtree)
    }

    pub fn rho(&self, g: usize) -> Option<usize> {
        self.structure.as_ref().and_then(|s| s.rho[g])
    }

    /// Number of wires.
    pub fn size(&self) -> usize {
        self.gates.iter().map(|g| g.inputs.len()).sum()
    }

    pub fn var_position(&self, v: Var) -> Option<usize> {
        self.variables.binary_search(&v).ok()
    }

    /// Gates from which the output can be reached.
    pub fn reachable(&self) -> Vec<bool> {
        let mut r = vec![false; self.gates.len()];
        r[self.output] = true;
        for g in (0..self.gates.len()).rev() {
            if r[g] {
                for &i in &self.gates[g].inputs {
                    r[i] = true;
                }
            }
        }
        r
    }

    /// Bit-parallel values of all gates; `var_words[i]` is the word of `variables()[i]`.
    pub fn eval_all_words(&self, var_words: &[u64]) -> Vec<u64> {
        let mut val = vec![0u64; self.gates.len()];
        for (g, gate) in self.gates.iter().enumerate() {
            val[g] = match gate.kind {
                NnfKind::Var(v) => var_words[self.var_position(v).unwrap()],
                NnfKind::Not => !val[gate.inputs[0]],
                NnfKind::And => gate.inputs.iter().fold(!0, |a, &i| a & val[i]),
                NnfKind::Or => gate.inputs.iter().fold(0, |a, &i| a | val[i]),
            };
        }
        val
    }

    /// Variables occurring below each gate, as positions in `variables()`.
    pub fn gate_vars(&self) -> Vec<FixedBitSet> {
        let n = self.variables.len();
        let mut out: Vec<FixedBitSet> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let mut s = FixedBitSet::with_capacity(n);
            match gate.kind {
                NnfKind::Var(v) => s.insert(self.var_position(v).unwrap()),
                _ => {
                    for &i in &gate.inputs {
                        s.union_with(&out[i]);
                    }
                }
            }
            out.push(s);
        }
        out
    }

    /// Number of ∨-gates structured by each v-tree node.
    pub fn or_counts(&self) -> Option<Vec<usize>> {
        let s = self.structure.as_ref()?;
        let mut c = vec![0usize; s.vtree.len()];
        for (g, gate) in self.gates.iter().enumerate() {
            if gate.kind == NnfKind::Or {
                if let Some(n) = s.rho[g] {
                    c[n] += 1;
                }
            }
        }
        Some(c)
    }

    /// Maximum number of ∨-gates structured by one node. Only meaningful for
    /// complete circuits; see [`NnfReport::width`].
    pub fn raw_width(&self) -> Option<usize> {
        self.or_counts().map(|c| c.into_iter().max().unwrap_or(0))
    }

    fn check_decomposable(&self, vars: &[FixedBitSet], problems: &mut Vec<String>) -> bool {
        for (g, gate) in self.gates.iter().enumerate() {
            if gate.kind != NnfKind::And {
                continue;
            }
            if gate.inputs.len() > 2 {
                problems.push(format!("∧-gate {g} has {} inputs", gate.inputs.len()));
                return false;
            }
            if let [a, b] = gate.inputs[..] {
                if !vars[a].is_disjoint(&vars[b]) {
                    problems.push(format!("∧-gate {g} has inputs sharing a variable"));
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive: no valuation makes two inputs of one ∨-gate true.
    pub fn check_deterministic(&self) -> Result<bool> {
        let n = self.variables.len();
        check_cap("variable count", n, BRUTE_FORCE_CAP)?;
        let valid = block_valid(n);
        for block in 0..(1u64 << n).div_ceil(64) {
            let words: Vec<u64> = (0..n).map(|i| block_word(i, block * 64)).collect();
            let val = self.eval_all_words(&words);
            for gate in &self.gates {
                if gate.kind != NnfKind::Or {
                    continue;
                }
                let (mut seen, mut dup) = (0u64, 0u64);
                for &i in &gate.inputs {
                    dup |= seen & val[i];
                    seen |= val[i];
                }
                if dup & valid != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_structured(
        &self,
        vars: &[FixedBitSet],
        node_vars: &[FixedBitSet],
        problems: &mut Vec<String>,
    ) -> bool {
        let Some(s) = &self.structure else {
            problems.push("no v-tree".into());
            return false;
        };
        for (g, gate) in self.gates.iter().enumerate() {
            if gate.kind != NnfKind::And {
                continue;
            }
            let Some(n) = s.rho[g] else {
                problems.push(format!("∧-gate {g} is not mapped to a v-tree node"));
                return false;
            };
            let fits = |i: usize, c: usize| vars[i].is_subset(&node_vars[c]);
            let ok = match (&gate.inputs[..], s.vtree.children(n)) {
                ([], _) => true,
                ([a], Some([l, r])) => fits(*a, l) || fits(*a, r),
                ([a, b], Some([l, r])) => {
                    (fits(*a, l) && fits(*b, r)) || (fits(*a, r) && fits(*b, l))
                }
                _ => false,
            };
            if !ok {
                problems.push(format!("∧-gate {g} is not structured by node {n}"));
                return false;
            }
        }
        true
    }

    fn check_complete(&self, problems: &mut Vec<String>) -> bool {
        let Some(s) = &self.structure else {
            return false;
        };
        let t = &s.vtree;
        if t.variables() != self.variables {
            problems.push("v-tree labels differ from the variable set".into());
            return false;
        }
        let leaf = t.leaf_map();
        let rho = |g: usize| s.rho[g];
        if self.gates[self.output].kind != NnfKind::Or {
            problems.push("output is not an ∨-gate".into());
            return false;
        }
        for (g, gate) in self.gates.iter().enumerate() {
            let Some(n) = rho(g) else {
                problems.push(format!("gate {g} has no v-tree node"));
                return false;
            };
            let fail = |problems: &mut Vec<String>, why: &str| {
                problems.push(format!("gate {g}: {why}"));
                false
            };
            match gate.kind {
                NnfKind::Var(v) => {
                    if leaf.get(&v) != Some(&n) {
                        return fail(problems, "var gate not mapped to its leaf");
                    }
                }
                NnfKind::Not => {
                    if rho(gate.inputs[0]) != Some(n) {
                        return fail(problems, "¬-gate not mapped to its variable's leaf");
                    }
                }
                NnfKind::Or => {
                    for &i in &gate.inputs {
                        if self.gates[i].kind == NnfKind::Or || rho(i) != Some(n) {
                            return fail(problems, "∨-input is an ∨-gate or sits at another node");
                        }
                    }
                }
                NnfKind::And => {
                    let kids = t.children(n);
                    let mut used = Vec::new();
                    for &i in &gate.inputs {
                        let Some(m) = rho(i) else {
                            return fail(problems, "∧-input has no v-tree node");
                        };
                        if self.gates[i].kind != NnfKind::Or || t.parent(m) != Some(n) {
                            return fail(problems, "∧-input is not an ∨-gate at a child node");
                        }
                        if used.contains(&m) {
                            return fail(problems, "two ∧-inputs at the same child");
                        }
                        used.push(m);
                    }
                    if kids.is_some() && gate.inputs.len() != 2 {
                        return fail(problems, "∧-gate at an internal node without two inputs");
                    }
                }
            }
        }
        true
    }

    /// Variables mentioned by every trace from the output.
    fn trace_complete(&self) -> bool {
        let n = self.variables.len();
        let mut must: Vec<FixedBitSet> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let s = match gate.kind {
                NnfKind::Var(v) => {
                    let mut s = FixedBitSet::with_capacity(n);
                    s.insert(self.var_position(v).unwrap());
                    s
                }
                NnfKind::Not => must[gate.inputs[0]].clone(),
                NnfKind::And => {
                    let mut s = FixedBitSet::with_capacity(n);
                    for &i in &gate.inputs {
                        s.union_with(&must[i]);
                    }
                    s
                }
                NnfKind::Or => {
                    let mut s = FixedBitSet::with_capacity(n);
                    s.insert_range(..);
                    for &i in &gate.inputs {
                        s.intersect_with(&must[i]);
                    }
                    s
                }
            };
            must.push(s);
        }
        must[self.output].count_ones(..) == n
    }

    /// Structural flags always; determinism only when `semantic` is set.
    pub fn check_class(&self, semantic: bool) -> Result<NnfReport> {
        let mut r = NnfReport::default();
        let vars = self.gate_vars();
        r.decomposable = self.check_decomposable(&vars, &mut r.problems);
        if let Some(s) = &self.structure {
            let node_vars: Vec<FixedBitSet> = s
                .vtree
                .labels_under()
                .iter()
                .map(|ls| {
                    let mut b = FixedBitSet::with_capacity(self.variables.len());
                    for v in ls {
                        if let Some(p) = self.var_position(*v) {
                            b.insert(p);
                        }
                    }
                    b
                })
                .collect();
            r.structured =
                r.decomposable && self.check_structured(&vars, &node_vars, &mut r.problems);
            r.extended = s.vtree.is_extended();
            r.complete = r.structured && self.check_complete(&mut r.problems);
            if r.complete {
                r.width = self.raw_width();
            }
        }
        r.trace_complete = self.trace_complete();
        if semantic {
            r.deterministic = Some(self.check_deterministic()?);
        }
        Ok(r)
    }

    /// Ok if decomposable and, unless claimed by the producer, deterministic.
    pub(crate) fn require_d_dnnf(&self) -> Result<()> {
        let vars = self.gate_vars();
        let mut problems = Vec::new();
        if !self.check_decomposable(&vars, &mut problems) {
            return Err(Error::contract(format!(
                "not decomposable: {}",
                problems.join("; ")
            )));
        }
        if !self.deterministic_claim {
            if self.variables.len() > BRUTE_FORCE_CAP {
                return Err(Error::contract(
                    "determinism is neither claimed nor checkable at this size",
                ));
            }
            if !self.check_deterministic()? {
                return Err(Error::contract("not deterministic"));
            }
        }
        Ok(())
    }
}

impl BoolFn for NnfCircuit {
    fn variables(&self) -> Vec<Var> {
        self.variables.clone()
    }

    fn eval_mask(&self, mask: u64) -> bool {
        let words: Vec<u64> = (0..self.variables.len())
            .map(|i| if (mask >> i) & 1 == 1 { !0 } else { 0 })
            .collect();
        self.eval_all_words(&words)[self.output] & 1 == 1
    }

    fn eval_block(&self, base: u64) -> u64 {
        let words: Vec<u64> = (0..self.variables.len())
            .map(|i| block_word(i, base))
            .collect();
        self.eval_all_words(&words)[self.output]
    }
}

/// Incremental construction of an [`NnfCircuit`], with optional structuring.
#[derive(Clone, Debug, Default)]
pub struct NnfBuilder {
    gates: Vec<NnfGate>,
    rho: Vec<Option<usize>>,
    var_gate: HashMap<Var, usize>,
    not_gate: HashMap<usize, usize>,
}

impl NnfBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, kind: NnfKind, inputs: Vec<usize>, rho: Option<usize>) -> usize {
        self.gates.push(NnfGate { kind, inputs });
        self.rho.push(rho);
        self.gates.len() - 1
    }

    /// The var gate of `v`, shared across calls.
    pub fn var(&mut self, v: Var, rho: Option<usize>) -> usize {
        if let Some(&g) = self.var_gate.get(&v) {
            return g;
        }
        let g = self.push(NnfKind::Var(v), Vec::new(), rho);
        self.var_gate.insert(v, g);
        g
    }

    /// The negation of the var gate of `v`, shared across calls.
    pub fn not_var(&mut self, v: Var, rho: Option<usize>) -> usize {
        let x = self.var(v, rho);
        if let Some(&g) = self.not_gate.get(&x) {
            return g;
        }
        let g = self.push(NnfKind::Not, vec![x], rho);
        self.not_gate.insert(x, g);
        g
    }

    pub fn literal(&mut self, v: Var, positive: bool, rho: Option<usize>) -> usize {
        if positive {
            self.var(v, rho)
        } else {
            self.not_var(v, rho)
        }
    }

    pub fn and(&mut self, inputs: Vec<usize>, rho: Option<usize>) -> usize {
        self.push(NnfKind::And, inputs, rho)
    }

    pub fn or(&mut self, inputs: Vec<usize>, rho: Option<usize>) -> usize {
        self.push(NnfKind::Or, inputs, rho)
    }

    /// `∧()` for true, `∨()` for false.
    pub fn constant(&mut self, value: bool, rho: Option<usize>) -> usize {
        if value {
            self.and(Vec::new(), rho)
        } else {
            self.or(Vec::new(), rho)
        }
    }

    pub fn gate(&self, g: usize) -> &NnfGate {
        &self.gates[g]
    }

    pub fn set_inputs(&mut self, g: usize, inputs: Vec<usize>) {
        self.gates[g].inputs = inputs;
    }

    pub fn finish(
        self,
        output: usize,
        variables: Vec<Var>,
        vtree: Option<VTree>,
    ) -> Result<NnfCircuit> {
        let structure = vtree.map(|vtree| Structure {
            vtree,
            rho: self.rho,
        });
        NnfCircuit::new(self.gates, output, variables, structure)
    }
}
