use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{BddNode, Nbdd, NnfCircuit, NnfKind};
use crate::error::{Error, Result};
use crate::logic::{Probabilities, Var};

/// Exact model count of a d-DNNF over its declared variables.
///
/// Gates that do not mention every variable of their parent are smoothed by
/// powers of two, so completeness is not required.
pub fn count_models(d: &NnfCircuit) -> Result<BigUint> {
    d.require_d_dnnf()?;
    Ok(count_unchecked(d))
}

pub(crate) fn count_unchecked(d: &NnfCircuit) -> BigUint {
    let vars = d.gate_vars();
    let mut count: Vec<BigUint> = Vec::with_capacity(d.len());
    for (g, gate) in d.gates().iter().enumerate() {
        let c = match gate.kind {
            NnfKind::Var(_) | NnfKind::Not => BigUint::one(),
            NnfKind::And => gate
                .inputs
                .iter()
                .fold(BigUint::one(), |a, &i| a * &count[i]),
            NnfKind::Or => {
                let total = vars[g].count_ones(..);
                gate.inputs.iter().fold(BigUint::zero(), |a, &i| {
                    a + (&count[i] << (total - vars[i].count_ones(..)))
                })
            }
        };
        count.push(c);
    }
    let out = d.output();
    let missing = d.variables().len() - vars[out].count_ones(..);
    &count[out] << missing
}

/// Probability that a random valuation drawn from `pi` satisfies `d`.
pub fn wmc(d: &NnfCircuit, pi: &Probabilities) -> Result<f64> {
    d.require_d_dnnf()?;
    pi.require(d.variables())?;
    let mut p = vec![0f64; d.len()];
    for (g, gate) in d.gates().iter().enumerate() {
        p[g] = match gate.kind {
            NnfKind::Var(v) => pi.get(v).unwrap(),
            NnfKind::Not => 1.0 - p[gate.inputs[0]],
            NnfKind::And => gate.inputs.iter().fold(1.0, |a, &i| a * p[i]),
            NnfKind::Or => gate.inputs.iter().fold(0.0, |a, &i| a + p[i]),
        };
    }
    Ok(p[d.output()])
}

/// Exact model count of an unambiguous free BDD.
pub fn count_nbdd(o: &Nbdd) -> Result<BigUint> {
    require_unambiguous_free(o)?;
    let n = o.variables().len();
    // Count over the variables tested below each node, smoothed at ∨/test nodes.
    let mut vars: Vec<FixedBitSet> = Vec::with_capacity(o.len());
    let mut count: Vec<BigUint> = Vec::with_capacity(o.len());
    for node in o.nodes() {
        let mut s = FixedBitSet::with_capacity(n);
        let c = match node {
            BddNode::Sink(b) => BigUint::from(*b as u8),
            BddNode::Test { var, lo, hi } => {
                s.insert(o.var_position(*var).unwrap());
                s.union_with(&vars[*lo]);
                s.union_with(&vars[*hi]);
                let k = s.count_ones(..) - 1;
                (&count[*lo] << (k - vars[*lo].count_ones(..)))
                    + (&count[*hi] << (k - vars[*hi].count_ones(..)))
            }
            BddNode::Or(ch) => {
                ch.iter().for_each(|&c| s.union_with(&vars[c]));
                let k = s.count_ones(..);
                ch.iter().fold(BigUint::zero(), |a, &c| {
                    a + (&count[c] << (k - vars[c].count_ones(..)))
                })
            }
        };
        vars.push(s);
        count.push(c);
    }
    let r = o.root();
    Ok(&count[r] << (n - vars[r].count_ones(..)))
}

fn require_unambiguous_free(o: &Nbdd) -> Result<()> {
    if !o.is_free() {
        return Err(Error::contract("diagram is not free"));
    }
    if o.has_or_nodes() && !o.check_unambiguous()? {
        return Err(Error::contract("diagram is not unambiguous"));
    }
    Ok(())
}

type Partial = Vec<Var>;
type Stream<'a> = Box<dyn Iterator<Item = Partial> + 'a>;

/// Satisfying valuations of a d-DNNF as sorted lists of true variables.
///
/// Order: depth-first, 0-branch before 1-branch for variables left free by a
/// trace, inputs of ∨-gates in id order.
pub fn enumerate_models(d: &NnfCircuit) -> Result<impl Iterator<Item = Vec<Var>> + '_> {
    d.require_d_dnnf()?;
    let vars = d.gate_vars();
    let all: Vec<Var> = d.variables().to_vec();
    let root = d.output();
    let free: Vec<Var> = all
        .iter()
        .enumerate()
        .filter(|(p, _)| !vars[root].contains(*p))
        .map(|(_, &v)| v)
        .collect();
    let ctx = std::rc::Rc::new(Ctx { d, vars });
    let base = traces(ctx, root);
    Ok(expand(base, free))
}

struct Ctx<'a> {
    d: &'a NnfCircuit,
    vars: Vec<FixedBitSet>,
}

fn traces<'a>(ctx: std::rc::Rc<Ctx<'a>>, g: usize) -> Stream<'a> {
    let gate = ctx.d.gate(g);
    match gate.kind {
        NnfKind::Var(v) => Box::new(std::iter::once(vec![v])),
        NnfKind::Not => Box::new(std::iter::once(Vec::new())),
        NnfKind::Or => {
            let inputs = gate.inputs.clone();
            Box::new(inputs.into_iter().flat_map(move |i| {
                let missing: Vec<Var> = ctx.vars[g]
                    .difference(&ctx.vars[i])
                    .map(|p| ctx.d.variables()[p])
                    .collect();
                expand(traces(ctx.clone(), i), missing)
            }))
        }
        NnfKind::And => {
            let inputs = gate.inputs.clone();
            inputs.into_iter().fold(
                Box::new(std::iter::once(Vec::new())) as Stream<'a>,
                |acc, i| {
                    let ctx = ctx.clone();
                    Box::new(acc.flat_map(move |left| {
                        traces(ctx.clone(), i).map(move |mut right| {
                            right.extend_from_slice(&left);
                            right
                        })
                    }))
                },
            )
        }
    }
}

/// Each partial model extended by all valuations of `free`, sorted on output.
fn expand<'a>(base: Stream<'a>, free: Vec<Var>) -> Stream<'a> {
    if free.is_empty() {
        return Box::new(base.map(|mut m| {
            m.sort_unstable();
            m
        }));
    }
    Box::new(base.flat_map(move |m| {
        let free = free.clone();
        (0u64..1 << free.len()).map(move |mask| {
            let mut out = m.clone();
            // Most significant bit on the first free variable: 0-branch first.
            for (j, &v) in free.iter().enumerate() {
                if (mask >> (free.len() - 1 - j)) & 1 == 1 {
                    out.push(v);
                }
            }
            out.sort_unstable();
            out
        })
    }))
}

/// Satisfying valuations of an unambiguous free BDD, 0-edge before 1-edge.
pub fn enumerate_nbdd(o: &Nbdd) -> Result<impl Iterator<Item = Vec<Var>> + '_> {
    require_unambiguous_free(o)?;
    let n = o.variables().len();
    let mut vars: Vec<FixedBitSet> = Vec::with_capacity(o.len());
    for node in o.nodes() {
        let mut s = FixedBitSet::with_capacity(n);
        match node {
            BddNode::Sink(_) => {}
            BddNode::Test { var, lo, hi } => {
                s.insert(o.var_position(*var).unwrap());
                s.union_with(&vars[*lo]);
                s.union_with(&vars[*hi]);
            }
            BddNode::Or(ch) => ch.iter().for_each(|&c| s.union_with(&vars[c])),
        }
        vars.push(s);
    }
    let ctx = std::rc::Rc::new(BddCtx { o, vars });
    let r = o.root();
    let free: Vec<Var> = (0..n)
        .filter(|&p| !ctx.vars[r].contains(p))
        .map(|p| o.variables()[p])
        .collect();
    Ok(expand(paths(ctx, r), free))
}

struct BddCtx<'a> {
    o: &'a Nbdd,
    vars: Vec<FixedBitSet>,
}

fn paths<'a>(ctx: std::rc::Rc<BddCtx<'a>>, i: usize) -> Stream<'a> {
    let missing = |ctx: &BddCtx<'a>, from: usize, to: usize, skip: Option<usize>| -> Vec<Var> {
        ctx.vars[from]
            .difference(&ctx.vars[to])
            .filter(|&p| Some(p) != skip)
            .map(|p| ctx.o.variables()[p])
            .collect()
    };
    match ctx.o.node(i).clone() {
        BddNode::Sink(true) => Box::new(std::iter::once(Vec::new())),
        BddNode::Sink(false) => Box::new(std::iter::empty()),
        BddNode::Test { var, lo, hi } => {
            let p = ctx.o.var_position(var);
            let lo_free = missing(&ctx, i, lo, p);
            let hi_free = missing(&ctx, i, hi, p);
            let low = expand(paths(ctx.clone(), lo), lo_free);
            let high = expand(paths(ctx.clone(), hi), hi_free).map(move |mut m| {
                m.push(var);
                m
            });
            Box::new(low.chain(high))
        }
        BddNode::Or(ch) => Box::new(ch.into_iter().flat_map(move |c| {
            let free = missing(&ctx, i, c, None);
            expand(paths(ctx.clone(), c), free)
        })),
    }
}
