use std::collections::BTreeSet;

use crate::error::{check_cap, Error, Result, BRUTE_FORCE_CAP};
use crate::logic::{block_valid, block_word, BoolFn, Var};
use crate::targets::{BddNode, Nbdd, NnfCircuit, NnfKind};

/// `R_X ∧ R_Y` over the partition `(x, y)`. Bit `i` of a member of `rx`
/// (resp. `ry`) is the value of `x[i]` (resp. `y[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub x: Vec<Var>,
    pub y: Vec<Var>,
    pub rx: BTreeSet<u64>,
    pub ry: BTreeSet<u64>,
    /// Node or gate the rectangle was read from.
    pub source: Option<usize>,
}

impl Rectangle {
    /// Number of valuations of `x ∪ y` it accepts.
    pub fn count(&self) -> u128 {
        self.rx.len() as u128 * self.ry.len() as u128
    }

    pub fn is_empty(&self) -> bool {
        self.rx.is_empty() || self.ry.is_empty()
    }

    /// Membership of the valuation `value`.
    pub fn contains(&self, value: impl Fn(Var) -> bool) -> bool {
        let pack = |vs: &[Var]| {
            vs.iter()
                .enumerate()
                .fold(0u64, |m, (i, &v)| m | (u64::from(value(v)) << i))
        };
        self.rx.contains(&pack(&self.x)) && self.ry.contains(&pack(&self.y))
    }

    /// Acceptance words over masks of `vars`, which must list `x ∪ y`.
    pub fn table(&self, vars: &[Var]) -> Result<Vec<u64>> {
        let xp = positions(vars, &self.x)?;
        let yp = positions(vars, &self.y)?;
        if xp.len() + yp.len() != vars.len() {
            return Err(Error::input(
                "rectangle partition does not cover the variables",
            ));
        }
        let lx = lookup(&self.rx, self.x.len());
        let ly = lookup(&self.ry, self.y.len());
        let total = 1u64 << vars.len();
        let mut words = vec![0u64; total.div_ceil(64) as usize];
        for m in 0..total {
            if lx[gather(m, &xp) as usize] && ly[gather(m, &yp) as usize] {
                words[(m >> 6) as usize] |= 1 << (m & 63);
            }
        }
        Ok(words)
    }
}

fn positions(vars: &[Var], sub: &[Var]) -> Result<Vec<usize>> {
    sub.iter()
        .map(|v| {
            vars.iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::input(format!("variable {v} is not in the cover")))
        })
        .collect()
}

fn lookup(set: &BTreeSet<u64>, bits: usize) -> Vec<bool> {
    let mut t = vec![false; 1 << bits];
    for &m in set {
        t[m as usize] = true;
    }
    t
}

/// Bits of `m` at `pos`, packed in order.
fn gather(m: u64, pos: &[usize]) -> u64 {
    pos.iter()
        .enumerate()
        .fold(0, |a, (i, &p)| a | (((m >> p) & 1) << i))
}

/// Rectangles over a common variable list. `disjoint` is a claim that
/// [`RectangleCover::check`] verifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleCover {
    pub vars: Vec<Var>,
    pub rects: Vec<Rectangle>,
    pub disjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub size: usize,
    /// The union equals the function.
    pub covers: bool,
    /// Every rectangle implies the function.
    pub sound: bool,
    /// Pairwise disjoint, whatever the claim.
    pub disjoint: bool,
    pub problems: Vec<String>,
}

impl CoverReport {
    /// Covers, and is disjoint if that was claimed.
    pub fn ok(&self, claimed_disjoint: bool) -> bool {
        self.covers && (!claimed_disjoint || self.disjoint)
    }
}

impl RectangleCover {
    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Exhaustive comparison with `f`, whose variables must be `vars`.
    pub fn check(&self, f: &dyn BoolFn) -> Result<CoverReport> {
        let n = self.vars.len();
        check_cap("variable count", n, BRUTE_FORCE_CAP)?;
        let mut fv = f.variables();
        fv.sort_unstable();
        let mut mine = self.vars.clone();
        mine.sort_unstable();
        if fv != mine {
            return Err(Error::input("cover and function have different variables"));
        }
        let perm = positions(&f.variables(), &self.vars)?;
        let total = 1u64 << n;
        let nw = total.div_ceil(64) as usize;
        let mut target = vec![0u64; nw];
        for m in 0..total {
            let fm = perm
                .iter()
                .enumerate()
                .fold(0u64, |a, (i, &p)| a | (((m >> i) & 1) << p));
            if f.eval_mask(fm) {
                target[(m >> 6) as usize] |= 1 << (m & 63);
            }
        }
        let mut union = vec![0u64; nw];
        let mut problems = Vec::new();
        let mut sound = true;
        let mut disjoint = true;
        for (i, r) in self.rects.iter().enumerate() {
            let t = r.table(&self.vars)?;
            let overlap = t.iter().zip(&union).any(|(a, b)| a & b != 0);
            if overlap && disjoint {
                disjoint = false;
                problems.push(format!("rectangle {i} overlaps an earlier one"));
            }
            if t.iter().zip(&target).any(|(a, b)| a & !b != 0) {
                sound = false;
                problems.push(format!("rectangle {i} accepts a non-model"));
            }
            for (u, w) in union.iter_mut().zip(&t) {
                *u |= w;
            }
        }
        let covers = union == target;
        if !covers {
            problems.push("union of the rectangles differs from the function".into());
        }
        if self.disjoint && !disjoint {
            problems.push("cover claimed disjoint but is not".into());
        }
        Ok(CoverReport {
            size: self.rects.len(),
            covers,
            sound,
            disjoint,
            problems,
        })
    }
}

/// Valuation words of a block: `words[i]` is variable `i` over masks `base..base+64`.
fn var_words(n: usize, base: u64) -> Vec<u64> {
    (0..n).map(|i| block_word(i, base)).collect()
}

/// Acceptance by some path (diagram) or trace (circuit) through a node.
trait Through {
    fn vars(&self) -> &[Var];
    fn eval(&self, words: &[u64]) -> Vec<u64>;
    fn through(&self, val: &[u64], words: &[u64], g: usize) -> u64;
}

impl Through for Nbdd {
    fn vars(&self) -> &[Var] {
        self.variables()
    }
    fn eval(&self, words: &[u64]) -> Vec<u64> {
        self.eval_all_words(words)
    }
    fn through(&self, val: &[u64], words: &[u64], g: usize) -> u64 {
        let mut thr = vec![0u64; self.root() + 1];
        for h in g..=self.root() {
            thr[h] = if h == g {
                val[g]
            } else {
                match self.node(h) {
                    BddNode::Sink(_) => 0,
                    BddNode::Test { var, lo, hi } => {
                        let w = words[self.var_position(*var).unwrap()];
                        (!w & thr[*lo]) | (w & thr[*hi])
                    }
                    BddNode::Or(ch) => ch.iter().fold(0, |a, &c| a | thr[c]),
                }
            };
        }
        thr[self.root()]
    }
}

impl Through for NnfCircuit {
    fn vars(&self) -> &[Var] {
        self.variables()
    }
    fn eval(&self, words: &[u64]) -> Vec<u64> {
        self.eval_all_words(words)
    }
    fn through(&self, val: &[u64], _words: &[u64], g: usize) -> u64 {
        let out = self.output();
        let mut thr = vec![0u64; out + 1];
        for h in g..=out {
            let gate = self.gate(h);
            thr[h] = if h == g {
                val[g]
            } else {
                match gate.kind {
                    NnfKind::Var(_) | NnfKind::Not => 0,
                    NnfKind::Or => gate.inputs.iter().fold(0, |a, &i| a | thr[i]),
                    NnfKind::And => gate.inputs.iter().enumerate().fold(0, |a, (k, &i)| {
                        let rest = gate
                            .inputs
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != k)
                            .fold(!0u64, |b, (_, &o)| b & val[o]);
                        a | (thr[i] & rest)
                    }),
                }
            };
        }
        thr[out]
    }
}

/// X side, Y side, and their positions in the variable list.
type Sides = (Vec<Var>, Vec<Var>, Vec<usize>, Vec<usize>);

/// `R_g` for each `(g, x-side)` request, read off exhaustively. Empty
/// rectangles are dropped; a set that is not a product is a contract error.
fn rectangles_through<D: Through>(d: &D, requests: &[(usize, Vec<Var>)]) -> Result<Vec<Rectangle>> {
    let vars = d.vars().to_vec();
    let n = vars.len();
    check_cap("variable count", n, BRUTE_FORCE_CAP)?;
    let total = 1u64 << n;
    let valid = block_valid(n);
    let sides: Vec<Sides> = requests
        .iter()
        .map(|(_, xs)| {
            let x: Vec<Var> = vars.iter().copied().filter(|v| xs.contains(v)).collect();
            let y: Vec<Var> = vars.iter().copied().filter(|v| !xs.contains(v)).collect();
            let xp = positions(&vars, &x).unwrap();
            let yp = positions(&vars, &y).unwrap();
            (x, y, xp, yp)
        })
        .collect();
    let mut acc: Vec<(BTreeSet<u64>, BTreeSet<u64>, u128)> =
        vec![(BTreeSet::new(), BTreeSet::new(), 0); requests.len()];
    for b in 0..total.div_ceil(64) {
        let base = b * 64;
        let words = var_words(n, base);
        let val = d.eval(&words);
        for (k, (g, _)) in requests.iter().enumerate() {
            let mut w = d.through(&val, &words, *g) & valid;
            acc[k].2 += u128::from(w.count_ones());
            while w != 0 {
                let m = base + u64::from(w.trailing_zeros());
                w &= w - 1;
                acc[k].0.insert(gather(m, &sides[k].2));
                acc[k].1.insert(gather(m, &sides[k].3));
            }
        }
    }
    let mut out = Vec::new();
    for (k, (rx, ry, count)) in acc.into_iter().enumerate() {
        if count == 0 {
            continue;
        }
        if rx.len() as u128 * ry.len() as u128 != count {
            return Err(Error::contract(format!(
                "accepting set through node {} is not a rectangle",
                requests[k].0
            )));
        }
        let (x, y, _, _) = sides[k].clone();
        out.push(Rectangle {
            x,
            y,
            rx,
            ry,
            source: Some(requests[k].0),
        });
    }
    Ok(out)
}

/// One rectangle per node testing `order[i-1]` (1-based `i`), over
/// `(order[..i-1], order[i-1..])`. Disjoint when the diagram is unambiguous.
pub fn rectangles_from_nobdd(o: &Nbdd, i: usize) -> Result<RectangleCover> {
    check_cap("variable count", o.variables().len(), BRUTE_FORCE_CAP)?;
    let order = o
        .order()
        .ok_or_else(|| Error::input("the diagram has no variable order"))?
        .to_vec();
    if i == 0 || i > order.len() {
        return Err(Error::input(format!(
            "cut index {i} outside 1..={}",
            order.len()
        )));
    }
    if !o.is_ordered_by(&order) || !o.is_complete() {
        return Err(Error::contract(
            "rectangle extraction needs a complete ordered diagram",
        ));
    }
    let v = order[i - 1];
    let x: Vec<Var> = order[..i - 1].to_vec();
    let live = o.reachable();
    let requests: Vec<(usize, Vec<Var>)> = (0..o.len())
        .filter(|&g| live[g] && matches!(o.node(g), BddNode::Test { var, .. } if *var == v))
        .map(|g| (g, x.clone()))
        .collect();
    let rects = rectangles_through(o, &requests)?;
    Ok(RectangleCover {
        vars: o.variables().to_vec(),
        rects,
        disjoint: o.check_unambiguous()?,
    })
}

/// One rectangle per ∨-gate structured by v-tree node `n`, over the labels
/// below `n` and the others. Disjoint when the circuit is deterministic.
pub fn rectangles_from_sdnnf(d: &NnfCircuit, n: usize) -> Result<RectangleCover> {
    check_cap("variable count", d.variables().len(), BRUTE_FORCE_CAP)?;
    let vt = d
        .vtree()
        .ok_or_else(|| Error::input("the circuit has no v-tree"))?;
    if n >= vt.len() {
        return Err(Error::input(format!("v-tree node {n} does not exist")));
    }
    let report = d.check_class(false)?;
    if !report.structured || !report.complete {
        return Err(Error::contract(
            "rectangle extraction needs a complete structured circuit",
        ));
    }
    let x = vt.labels_under()[n].clone();
    let live = d.reachable();
    let requests: Vec<(usize, Vec<Var>)> = (0..d.len())
        .filter(|&g| live[g] && d.gate(g).kind == NnfKind::Or && d.rho(g) == Some(n))
        .map(|g| (g, x.clone()))
        .collect();
    let rects = rectangles_through(d, &requests)?;
    let disjoint = d.deterministic_claim() || d.check_deterministic()?;
    Ok(RectangleCover {
        vars: d.variables().to_vec(),
        rects,
        disjoint,
    })
}

/// A gate on the accepting path or trace of one valuation, with the variables
/// on the first side of its rectangle: those tested before it (diagrams) or
/// those below it (circuits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub gate: usize,
    pub side: Vec<Var>,
}

/// A complete free diagram or a complete DNNF.
#[derive(Clone, Copy, Debug)]
pub enum Unstructured<'a> {
    Diagram(&'a Nbdd),
    Circuit(&'a NnfCircuit),
}

/// For every model, walks one accepting path (lowest-id ∨ choices) or trace,
/// lets `select` pick a candidate, and returns the rectangles `R_g` of the
/// distinct picks, each over its own partition.
pub fn rectangles_at_gates_unstructured(
    src: Unstructured<'_>,
    select: &mut dyn FnMut(&[Candidate]) -> usize,
) -> Result<RectangleCover> {
    let vars = match src {
        Unstructured::Diagram(o) => o.variables().to_vec(),
        Unstructured::Circuit(d) => d.variables().to_vec(),
    };
    let n = vars.len();
    check_cap("variable count", n, BRUTE_FORCE_CAP)?;
    let below = match src {
        Unstructured::Circuit(d) => {
            let r = d.check_class(false)?;
            if !r.decomposable || !r.trace_complete {
                return Err(Error::contract(
                    "rectangle extraction needs a complete DNNF",
                ));
            }
            Some(d.gate_vars())
        }
        Unstructured::Diagram(o) => {
            if !o.is_free() || !o.is_complete() {
                return Err(Error::contract(
                    "rectangle extraction needs a complete free diagram",
                ));
            }
            None
        }
    };
    let valid = block_valid(n);
    let mut picks: BTreeSet<(usize, Vec<Var>)> = BTreeSet::new();
    for b in 0..(1u64 << n).div_ceil(64) {
        let base = b * 64;
        let words = var_words(n, base);
        let (val, top) = match src {
            Unstructured::Diagram(o) => (o.eval_all_words(&words), o.root()),
            Unstructured::Circuit(d) => (d.eval_all_words(&words), d.output()),
        };
        let mut sat = val[top] & valid;
        while sat != 0 {
            let j = sat.trailing_zeros();
            sat &= sat - 1;
            let m = base + u64::from(j);
            let on = |g: usize| (val[g] >> j) & 1 == 1;
            let cands = match src {
                Unstructured::Diagram(o) => path_candidates(o, m, on),
                Unstructured::Circuit(d) => trace_candidates(d, below.as_ref().unwrap(), on),
            };
            if cands.is_empty() {
                return Err(Error::contract(
                    "accepting path or trace has no candidate gate",
                ));
            }
            let k = select(&cands);
            let c = cands
                .get(k)
                .ok_or_else(|| Error::input("selector returned an invalid index"))?;
            picks.insert((c.gate, c.side.clone()));
        }
    }
    let requests: Vec<(usize, Vec<Var>)> = picks.into_iter().collect();
    let rects = match src {
        Unstructured::Diagram(o) => rectangles_through(o, &requests)?,
        Unstructured::Circuit(d) => rectangles_through(d, &requests)?,
    };
    Ok(RectangleCover {
        vars,
        rects,
        disjoint: false,
    })
}

fn path_candidates(o: &Nbdd, m: u64, on: impl Fn(usize) -> bool) -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut seen: Vec<Var> = Vec::new();
    let mut cur = o.root();
    loop {
        match o.node(cur) {
            BddNode::Sink(_) => break,
            BddNode::Test { var, lo, hi } => {
                out.push(Candidate {
                    gate: cur,
                    side: seen.clone(),
                });
                seen.push(*var);
                let bit = (m >> o.var_position(*var).unwrap()) & 1 == 1;
                cur = if bit { *hi } else { *lo };
            }
            BddNode::Or(ch) => cur = *ch.iter().find(|&&c| on(c)).expect("accepting child exists"),
        }
    }
    out
}

fn trace_candidates(
    d: &NnfCircuit,
    below: &[fixedbitset::FixedBitSet],
    on: impl Fn(usize) -> bool,
) -> Vec<Candidate> {
    let vars = d.variables();
    let mut stack = vec![d.output()];
    let mut seen = BTreeSet::new();
    while let Some(g) = stack.pop() {
        if !seen.insert(g) {
            continue;
        }
        let gate = d.gate(g);
        match gate.kind {
            NnfKind::And => stack.extend(gate.inputs.iter().copied()),
            NnfKind::Or => stack.push(
                *gate
                    .inputs
                    .iter()
                    .find(|&&i| on(i))
                    .expect("accepting input exists"),
            ),
            NnfKind::Var(_) | NnfKind::Not => {}
        }
    }
    seen.into_iter()
        .map(|g| Candidate {
            gate: g,
            side: below[g].ones().map(|p| vars[p]).collect(),
        })
        .collect()
}

/// Picks the candidate splitting the most clauses of `edges` (first on ties).
pub fn max_split_selector(edges: Vec<Vec<Var>>) -> impl FnMut(&[Candidate]) -> usize {
    move |cands| {
        let score = |c: &Candidate| {
            edges
                .iter()
                .filter(|e| {
                    e.iter().any(|v| c.side.contains(v)) && e.iter().any(|v| !c.side.contains(v))
                })
                .count()
        };
        (0..cands.len())
            .max_by_key(|&k| (score(&cands[k]), std::cmp::Reverse(k)))
            .unwrap_or(0)
    }
}
