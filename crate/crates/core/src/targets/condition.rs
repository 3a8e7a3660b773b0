use std::collections::BTreeSet;

use super::reduce::reduce_unchecked;
use super::{BddNode, Nbdd, NbddBuilder, NnfCircuit, NnfKind};
use crate::error::{Error, Result};
use crate::logic::{MaybeConst, Valuation, Var};

fn check_domain(vars: &[Var], nu: &Valuation) -> Result<()> {
    match nu.domain().iter().find(|v| vars.binary_search(v).is_err()) {
        Some(v) => Err(Error::input(format!(
            "valuation assigns unknown variable {v}"
        ))),
        None => Ok(()),
    }
}

/// ν(φ) for a complete SDNNF: assigned leaves lose their label, their literals
/// become constants, and the result is reduced. The output v-tree is a
/// reduction of the input one.
pub fn condition_sdnnf(d: &NnfCircuit, nu: &Valuation) -> Result<MaybeConst<NnfCircuit>> {
    check_domain(d.variables(), nu)?;
    let report = d.check_class(false)?;
    if !report.complete {
        return Err(Error::contract(format!(
            "conditioning needs a complete SDNNF: {}",
            report.problems.join("; ")
        )));
    }
    let fixed: Vec<Option<bool>> = d
        .gates()
        .iter()
        .map(|g| match g.kind {
            NnfKind::Var(v) => nu.get(v),
            NnfKind::Not => match d.gate(g.inputs[0]).kind {
                NnfKind::Var(v) => nu.get(v).map(|b| !b),
                _ => None,
            },
            _ => None,
        })
        .collect();
    let dropped: BTreeSet<Var> = nu.domain().iter().copied().collect();
    Ok(reduce_unchecked(d, &fixed, &dropped))
}

/// ν(φ) for a decision diagram: tests of assigned variables are bypassed.
/// Width never grows and completeness, order and unambiguity carry over.
pub fn condition_nobdd(o: &Nbdd, nu: &Valuation) -> Result<Nbdd> {
    check_domain(o.variables(), nu)?;
    let mut b = NbddBuilder::new();
    let mut new = vec![0usize; o.len()];
    for (i, node) in o.nodes().iter().enumerate() {
        new[i] = match node {
            BddNode::Sink(v) => usize::from(*v),
            BddNode::Test { var, lo, hi } => match nu.get(*var) {
                Some(false) => new[*lo],
                Some(true) => new[*hi],
                None => b.test(*var, new[*lo], new[*hi]),
            },
            BddNode::Or(ch) => b.or(ch.iter().map(|&c| new[c]).collect()),
        };
    }
    let keep = |v: &Var| nu.get(*v).is_none();
    let vars: Vec<Var> = o.variables().iter().copied().filter(keep).collect();
    let order = o
        .order()
        .map(|ord| ord.iter().copied().filter(keep).collect());
    b.finish(new[o.root()], vars, order)
}
