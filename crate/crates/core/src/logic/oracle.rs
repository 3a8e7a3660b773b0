use std::collections::BTreeMap;

use super::{block_valid, Var};
use crate::error::{check_cap, Error, Result, BRUTE_FORCE_CAP};

/// A Boolean function over an ordered variable list. Bit `i` of a mask is the
/// value of `variables()[i]`.
pub trait BoolFn {
    fn variables(&self) -> Vec<Var>;

    fn eval_mask(&self, mask: u64) -> bool;

    /// Values on the 64 masks `base..base + 64`, bit `j` for mask `base + j`.
    /// `base` is a multiple of 64.
    fn eval_block(&self, base: u64) -> u64 {
        let mut w = 0u64;
        for j in 0..64 {
            if self.eval_mask(base + j) {
                w |= 1 << j;
            }
        }
        w
    }
}

impl<T: BoolFn + ?Sized> BoolFn for &T {
    fn variables(&self) -> Vec<Var> {
        (**self).variables()
    }
    fn eval_mask(&self, mask: u64) -> bool {
        (**self).eval_mask(mask)
    }
    fn eval_block(&self, base: u64) -> u64 {
        (**self).eval_block(base)
    }
}

/// Full truth table, bit `mask` set iff the function holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    pub vars: Vec<Var>,
    pub words: Vec<u64>,
}

impl TruthTable {
    pub fn get(&self, mask: u64) -> bool {
        (self.words[(mask >> 6) as usize] >> (mask & 63)) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }
}

pub fn truth_table(f: &dyn BoolFn) -> Result<TruthTable> {
    let vars = f.variables();
    check_cap("variable count", vars.len(), BRUTE_FORCE_CAP)?;
    let n = vars.len();
    let total = 1u64 << n;
    let valid = block_valid(n);
    let words = (0..total.div_ceil(64))
        .map(|b| f.eval_block(b * 64) & valid)
        .collect();
    Ok(TruthTable { vars, words })
}

/// Truth table of `f` indexed by masks over `vars`, which must contain f's variables.
pub fn truth_table_over(f: &dyn BoolFn, vars: &[Var]) -> Result<TruthTable> {
    let fv = f.variables();
    if fv == vars {
        return truth_table(f);
    }
    check_cap("variable count", vars.len(), BRUTE_FORCE_CAP)?;
    let pos: Vec<usize> = fv
        .iter()
        .map(|v| {
            vars.iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::input(format!("variable {v} missing from the target list")))
        })
        .collect::<Result<_>>()?;
    let inner = truth_table(f)?;
    let total = 1u64 << vars.len();
    let mut words = vec![0u64; total.div_ceil(64) as usize];
    for m in 0..total {
        let mut fm = 0u64;
        for (j, &p) in pos.iter().enumerate() {
            fm |= ((m >> p) & 1) << j;
        }
        if inner.get(fm) {
            words[(m >> 6) as usize] |= 1 << (m & 63);
        }
    }
    Ok(TruthTable {
        vars: vars.to_vec(),
        words,
    })
}

/// Equivalence over the union of both variable sets.
pub fn equivalent(f: &dyn BoolFn, g: &dyn BoolFn) -> Result<bool> {
    let mut vars = f.variables();
    for v in g.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    Ok(truth_table_over(f, &vars)? == truth_table_over(g, &vars)?)
}

/// Exhaustive model count plus, optionally, the models as true-variable lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Models {
    pub count: u64,
    pub models: Option<Vec<Vec<Var>>>,
}

/// Models are listed lexicographically with the first variable most significant.
pub fn brute_force_models(f: &dyn BoolFn, list: bool) -> Result<Models> {
    let tt = truth_table(f)?;
    let count = tt.count();
    let models = list.then(|| {
        let n = tt.vars.len();
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..(1u64 << n) {
            let mask = reverse_low(idx, n);
            if tt.get(mask) {
                out.push(
                    (0..n)
                        .filter(|&i| (mask >> i) & 1 == 1)
                        .map(|i| tt.vars[i])
                        .collect(),
                );
            }
        }
        out
    });
    Ok(Models { count, models })
}

fn reverse_low(x: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - n)
    }
}

/// A probability per variable.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Probabilities {
    map: BTreeMap<Var, f64>,
}

impl Probabilities {
    pub fn new(map: BTreeMap<Var, f64>) -> Result<Self> {
        if let Some((v, p)) = map.iter().find(|(_, p)| !(0.0..=1.0).contains(*p)) {
            return Err(Error::input(format!(
                "probability {p} of {v} is outside [0,1]"
            )));
        }
        Ok(Probabilities { map })
    }

    pub fn uniform(vars: &[Var], p: f64) -> Result<Self> {
        Self::new(vars.iter().map(|&v| (v, p)).collect())
    }

    pub fn get(&self, v: Var) -> Option<f64> {
        self.map.get(&v).copied()
    }

    pub fn set(&mut self, v: Var, p: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::input(format!("probability {p} is outside [0,1]")));
        }
        self.map.insert(v, p);
        Ok(())
    }

    /// Errors unless every variable of `vars` has an entry.
    pub fn require(&self, vars: &[Var]) -> Result<()> {
        match vars.iter().find(|v| !self.map.contains_key(v)) {
            Some(v) => Err(Error::input(format!("no probability for variable {v}"))),
            None => Ok(()),
        }
    }
}

/// Sum of the probabilities of the satisfying valuations.
pub fn brute_force_wmc(f: &dyn BoolFn, pi: &Probabilities) -> Result<f64> {
    let tt = truth_table(f)?;
    pi.require(&tt.vars)?;
    let ps: Vec<f64> = tt.vars.iter().map(|v| pi.get(*v).unwrap()).collect();
    let mut total = 0.0;
    for mask in 0..(1u64 << ps.len()) {
        if tt.get(mask) {
            total += ps
                .iter()
                .enumerate()
                .map(|(i, p)| if (mask >> i) & 1 == 1 { *p } else { 1.0 - p })
                .product::<f64>();
        }
    }
    Ok(total)
}
