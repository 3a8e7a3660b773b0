use std::collections::HashMap;

use super::bag::{compress, BagTable};
use super::{CompileOptions, CompileStats, Compiled, OrLabel};
use crate::decomp::FriendlyDecomp;
use crate::error::{Error, Result};
use crate::logic::{Circuit, GateKind};
use crate::targets::{NnfBuilder, NnfKind, VTree};

/// Per-bag state kept until the parent bag is processed.
struct Done {
    table: BagTable,
    offsets: Vec<u32>,
    /// Output gate of each `(ν, S)` slot, `None` when pruned.
    slots: Vec<Option<usize>>,
}

impl Done {
    fn gate(&self, nu: u32, s: u32) -> Option<usize> {
        let unf = self.table.unf[nu as usize]?;
        self.slots[(self.offsets[nu as usize] + compress(s, unf)) as usize]
    }
}

/// One connectible child pair projected onto the parent bag.
#[derive(Clone, Copy)]
struct Entry {
    gate: usize,
    key: u32,
    nu: u32,
    innocent: u32,
}

fn entries(child: &Done, parent: &BagTable, shared: &[usize]) -> Vec<Entry> {
    let cg = &child.table.gates;
    let ppos: Vec<Option<usize>> = cg
        .iter()
        .map(|g| parent.gates.binary_search(g).ok())
        .collect();
    let in_parent: u32 = ppos
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_some())
        .fold(0, |m, (i, _)| m | 1 << i);
    let spos: Vec<usize> = shared
        .iter()
        .map(|g| cg.binary_search(g).unwrap())
        .collect();
    let full = (1u32 << cg.len()) - 1;
    let mut out = Vec::new();
    for (nu, s) in child.table.pairs() {
        if s & !in_parent != 0 {
            continue;
        }
        let Some(gate) = child.gate(nu, s) else {
            continue;
        };
        let (mut pnu, mut inn) = (0u32, 0u32);
        let innocent_here = full & !s;
        for (i, p) in ppos.iter().enumerate() {
            if let Some(p) = p {
                pnu |= ((nu >> i) & 1) << p;
                inn |= ((innocent_here >> i) & 1) << p;
            }
        }
        let key = spos
            .iter()
            .enumerate()
            .fold(0u32, |k, (j, &p)| k | ((nu >> p) & 1) << j);
        out.push(Entry {
            gate,
            key,
            nu: pnu,
            innocent: inn,
        });
    }
    out
}

/// Compiles `c` along a friendly decomposition (friendly for the output gate)
/// into an extended complete d-SDNNF whose v-tree mirrors the decomposition.
pub fn compile_treewidth(
    c: &Circuit,
    fd: &FriendlyDecomp,
    opts: &CompileOptions,
) -> Result<Compiled> {
    let td = fd.td();
    if fd.root_vertex() != c.output() {
        return Err(Error::input(
            "decomposition is not friendly for the output gate",
        ));
    }
    td.validate(&c.primal_graph()).map_err(Error::from)?;
    let k = td.width();
    if k > opts.kcap {
        return Err(Error::Capacity {
            what: "decomposition width",
            got: k,
            limit: opts.kcap,
        });
    }
    let responsible: HashMap<usize, usize> = fd
        .responsible()
        .iter()
        .filter(|(&g, _)| matches!(c.gate(g).kind, GateKind::Var(_)))
        .map(|(&g, &b)| (b, g))
        .collect();

    let mut b = NnfBuilder::new();
    let mut labels: Vec<Option<OrLabel>> = Vec::new();
    let mut stats = CompileStats {
        width: k,
        ..Default::default()
    };
    let mut done: Vec<Option<Done>> = (0..td.len()).map(|_| None).collect();
    let root = td.root();

    for bag in td.postorder() {
        let table = BagTable::new(c, td.bag(bag));
        let offsets = table.offsets();
        let nslots = table.slot_count();
        let mut inputs: Vec<Vec<usize>> = vec![Vec::new(); nslots];
        let mut ands = 0usize;
        let is_leaf = fd.split(bag).is_none();
        match fd.split(bag) {
            None => {
                let lit = match responsible.get(&bag) {
                    Some(&x) => {
                        let v = c.label(x).unwrap();
                        Some((b.var(v, Some(bag)), b.not_var(v, Some(bag))))
                    }
                    None => None,
                };
                for (slot, (nu, s)) in table.pairs().enumerate() {
                    if Some(s) != table.unf[nu as usize] {
                        continue;
                    }
                    let g = match lit {
                        Some((pos, neg)) => {
                            if nu & 1 == 1 {
                                pos
                            } else {
                                neg
                            }
                        }
                        None => {
                            ands += 1;
                            b.and(Vec::new(), Some(bag))
                        }
                    };
                    inputs[slot].push(g);
                }
            }
            Some((l, r)) => {
                let left = done[l].take().expect("children come first");
                let right = done[r].take().expect("children come first");
                let shared: Vec<usize> = left
                    .table
                    .gates
                    .iter()
                    .copied()
                    .filter(|g| right.table.gates.binary_search(g).is_ok())
                    .collect();
                let le = entries(&left, &table, &shared);
                let re = entries(&right, &table, &shared);
                let mut by_key: HashMap<u32, Vec<Entry>> = HashMap::new();
                for e in re {
                    by_key.entry(e.key).or_default().push(e);
                }
                let keep = SlotFilter::new(c, fd, bag, &table, opts);
                for el in &le {
                    let Some(rs) = by_key.get(&el.key) else {
                        continue;
                    };
                    for er in rs {
                        let nu = el.nu | er.nu;
                        let Some(unf) = table.unf[nu as usize] else {
                            continue;
                        };
                        let s = unf & !(el.innocent | er.innocent);
                        if !keep.keep(nu, s) {
                            continue;
                        }
                        let slot = (offsets[nu as usize] + compress(s, unf)) as usize;
                        let g = b.and(vec![el.gate, er.gate], Some(bag));
                        ands += 1;
                        inputs[slot].push(g);
                    }
                }
            }
        }
        let keep = SlotFilter::new(c, fd, bag, &table, opts);
        let mut slots = Vec::with_capacity(nslots);
        let mut ors = 0usize;
        for (slot, (nu, s)) in table.pairs().enumerate() {
            if !keep.keep(nu, s) || (is_leaf && Some(s) != table.unf[nu as usize]) {
                slots.push(None);
                continue;
            }
            let g = b.or(std::mem::take(&mut inputs[slot]), Some(bag));
            labels.resize(g, None);
            labels.push(Some(OrLabel {
                bag,
                nu,
                suspicious: s,
            }));
            slots.push(Some(g));
            ors += 1;
        }
        stats.max_or_per_bag = stats.max_or_per_bag.max(ors);
        stats.max_and_per_bag = stats.max_and_per_bag.max(ands);
        done[bag] = Some(Done {
            table,
            offsets,
            slots,
        });
    }

    let top = done[root].take().unwrap();
    let out_mask = top.table.mask_of(&[c.output()]);
    let out = match top.gate(out_mask, 0) {
        Some(g) => g,
        None => b.constant(false, Some(root)),
    };
    labels.resize(b.len(), None);

    let spec = (0..td.len())
        .map(|bag| match fd.split(bag) {
            Some((l, r)) => (None, Some([l, r])),
            None => (responsible.get(&bag).map(|&x| c.label(x).unwrap()), None),
        })
        .collect();
    let vtree = VTree::from_nodes(spec, root)?;
    let circuit = b
        .finish(out, c.variables(), Some(vtree))?
        .with_deterministic_claim(true);
    stats.gates = circuit.len();
    stats.wires = circuit.size();
    stats.compiled_width = circuit.raw_width().unwrap_or(0);
    debug_assert!(circuit
        .gates()
        .iter()
        .all(|g| g.kind != NnfKind::Not || g.inputs.len() == 1));
    Ok(Compiled {
        circuit,
        labels,
        stats,
    })
}

/// With pruning on, keeps only pairs that can still reach the output: those
/// connectible to the parent bag, or the accepting pair at the root.
#[derive(Clone, Copy)]
struct SlotFilter {
    prune: bool,
    parent_mask: u32,
    root_nu: Option<u32>,
}

impl SlotFilter {
    fn new(
        c: &Circuit,
        fd: &FriendlyDecomp,
        bag: usize,
        table: &BagTable,
        opts: &CompileOptions,
    ) -> Self {
        let td = fd.td();
        let (parent_mask, root_nu) = match td.parent(bag) {
            Some(p) => (table.mask_of(td.bag(p)), None),
            None => (0, Some(table.mask_of(&[c.output()]))),
        };
        SlotFilter {
            prune: opts.prune_useless,
            parent_mask,
            root_nu,
        }
    }

    fn keep(&self, nu: u32, s: u32) -> bool {
        if !self.prune {
            return true;
        }
        match self.root_nu {
            Some(want) => nu == want && s == 0,
            None => s & !self.parent_mask == 0,
        }
    }
}
