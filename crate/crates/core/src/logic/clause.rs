use std::collections::HashMap;

use super::{block_word, BoolFn, Circuit, CircuitBuilder, Hypergraph, MaybeConst, Valuation, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    Cnf,
    Dnf,
}

/// A monotone CNF or DNF. Clauses are sorted variable lists, and the clause
/// list is sorted. Forms built with [`ClauseForm::new`] are minimized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseForm {
    kind: ClauseKind,
    variables: Vec<Var>,
    clauses: Vec<Vec<Var>>,
}

impl ClauseForm {
    /// Validates and minimizes.
    pub fn new(kind: ClauseKind, variables: Vec<Var>, clauses: Vec<Vec<Var>>) -> Result<Self> {
        Self::unminimized(kind, variables, clauses)?.minimize()
    }

    /// Validates without removing subsumed clauses. Empty clauses are kept so
    /// that [`ClauseForm::minimize`] can reject them.
    pub fn unminimized(
        kind: ClauseKind,
        mut variables: Vec<Var>,
        clauses: Vec<Vec<Var>>,
    ) -> Result<Self> {
        variables.sort_unstable();
        variables.dedup();
        if clauses.is_empty() {
            return Err(Error::input("a clause form needs at least one clause"));
        }
        let mut norm = Vec::with_capacity(clauses.len());
        for mut c in clauses {
            c.sort_unstable();
            c.dedup();
            if let Some(v) = c.iter().find(|v| variables.binary_search(v).is_err()) {
                return Err(Error::input(format!("clause variable {v} is not declared")));
            }
            norm.push(c);
        }
        norm.sort();
        Ok(ClauseForm {
            kind,
            variables,
            clauses: norm,
        })
    }

    /// Keeps the inclusion-minimal clauses.
    pub fn minimize(&self) -> Result<ClauseForm> {
        if self.clauses.iter().any(Vec::is_empty) {
            return Err(Error::input("empty clause"));
        }
        let mut order: Vec<&Vec<Var>> = self.clauses.iter().collect();
        order.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        order.dedup();
        let mut kept: Vec<&Vec<Var>> = Vec::new();
        let mut by_var: HashMap<Var, Vec<usize>> = HashMap::new();
        for c in order {
            let subsumed = c.iter().any(|v| {
                by_var.get(v).is_some_and(|ks| {
                    ks.iter()
                        .any(|&k| kept[k].iter().all(|x| c.binary_search(x).is_ok()))
                })
            });
            if !subsumed {
                for v in c {
                    by_var.entry(*v).or_default().push(kept.len());
                }
                kept.push(c);
            }
        }
        let mut clauses: Vec<Vec<Var>> = kept.into_iter().cloned().collect();
        clauses.sort();
        Ok(ClauseForm {
            kind: self.kind,
            variables: self.variables.clone(),
            clauses,
        })
    }

    pub fn is_minimized(&self) -> bool {
        self.minimize()
            .is_ok_and(|m| m.clauses.len() == self.clauses.len())
    }

    pub fn kind(&self) -> ClauseKind {
        self.kind
    }

    pub fn variables(&self) -> &[Var] {
        &self.variables
    }

    pub fn clauses(&self) -> &[Vec<Var>] {
        &self.clauses
    }

    pub fn arity(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        let mut occ: HashMap<Var, usize> = HashMap::new();
        for c in &self.clauses {
            for v in c {
                *occ.entry(*v).or_default() += 1;
            }
        }
        occ.into_values().max().unwrap_or(0)
    }

    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.variables.clone(), self.clauses.clone())
            .expect("clause forms are valid hypergraphs")
    }

    pub fn evaluate(&self, v: &Valuation) -> Result<bool> {
        let mask = v
            .to_mask(&self.variables)
            .ok_or_else(|| Error::input("valuation does not cover every variable"))?;
        if v.len() != self.variables.len() {
            return Err(Error::input("valuation has extra variables"));
        }
        Ok(self.eval_mask(mask))
    }

    /// The minimized form of the function after fixing the variables of `v`.
    pub fn partial_assign(&self, v: &Valuation) -> Result<MaybeConst<ClauseForm>> {
        for d in v.domain() {
            if self.variables.binary_search(d).is_err() {
                return Err(Error::input(format!("{d} is not a variable of the form")));
            }
        }
        // The value that satisfies a CNF literal (resp. falsifies a DNF term).
        let killer = self.kind == ClauseKind::Cnf;
        let mut clauses = Vec::new();
        for c in &self.clauses {
            if c.iter().any(|x| v.get(*x) == Some(killer)) {
                continue;
            }
            let rest: Vec<Var> = c.iter().copied().filter(|x| v.get(*x).is_none()).collect();
            if rest.is_empty() {
                // An emptied clause falsifies a CNF and satisfies a DNF.
                return Ok(MaybeConst::Const(!killer));
            }
            clauses.push(rest);
        }
        if clauses.is_empty() {
            return Ok(MaybeConst::Const(killer));
        }
        let variables = self
            .variables
            .iter()
            .copied()
            .filter(|x| v.get(*x).is_none())
            .collect();
        Ok(MaybeConst::Value(ClauseForm::new(
            self.kind, variables, clauses,
        )?))
    }

    /// CNF: an ∨-gate per clause under an ∧ output (dual for DNF). Var gates are
    /// declared first in ascending variable order.
    pub fn to_circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new();
        let gate_of: HashMap<Var, usize> = self.variables.iter().map(|&v| (v, b.var(v))).collect();
        let clause_gates: Vec<usize> = self
            .clauses
            .iter()
            .map(|c| {
                let ins = c.iter().map(|v| gate_of[v]);
                match self.kind {
                    ClauseKind::Cnf => b.or(ins),
                    ClauseKind::Dnf => b.and(ins),
                }
            })
            .collect();
        let out = match self.kind {
            ClauseKind::Cnf => b.and(clause_gates),
            ClauseKind::Dnf => b.or(clause_gates),
        };
        b.build(out).expect("clause circuits are well formed")
    }

    fn clause_masks(&self) -> Vec<u64> {
        self.clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| 1u64 << self.variables.binary_search(v).unwrap())
                    .fold(0, |a, b| a | b)
            })
            .collect()
    }
}

impl BoolFn for ClauseForm {
    fn variables(&self) -> Vec<Var> {
        self.variables.clone()
    }

    fn eval_mask(&self, mask: u64) -> bool {
        let masks = self.clause_masks();
        match self.kind {
            ClauseKind::Cnf => masks.iter().all(|c| c & mask != 0),
            ClauseKind::Dnf => masks.iter().any(|c| c & mask == *c),
        }
    }

    fn eval_block(&self, base: u64) -> u64 {
        let words: Vec<u64> = (0..self.variables.len())
            .map(|i| block_word(i, base))
            .collect();
        let pos = |v: &Var| self.variables.binary_search(v).unwrap();
        match self.kind {
            ClauseKind::Cnf => self.clauses.iter().fold(!0, |acc, c| {
                acc & c.iter().fold(0, |a, v| a | words[pos(v)])
            }),
            ClauseKind::Dnf => self.clauses.iter().fold(0, |acc, c| {
                acc | c.iter().fold(!0, |a, v| a & words[pos(v)])
            }),
        }
    }
}
