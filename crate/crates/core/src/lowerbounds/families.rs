use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{check_cap, Error, Result, BRUTE_FORCE_CAP};
use crate::logic::{truth_table, BoolFn, ClauseForm, ClauseKind, Var};
use crate::targets::{Nbdd, NbddBuilder};

/// `x_i` is variable `i` and `y_i` is variable `n + i`.
pub fn scov_pairs(n: usize) -> Vec<(Var, Var)> {
    (1..=n).map(|i| (i, n + i)).collect()
}

fn matching_form(kind: ClauseKind, n: usize) -> Result<ClauseForm> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let clauses = scov_pairs(n).into_iter().map(|(x, y)| vec![x, y]).collect();
    ClauseForm::new(kind, (1..=2 * n).collect(), clauses)
}

/// ⋀ (x_i ∨ y_i).
pub fn gen_scov(n: usize) -> Result<ClauseForm> {
    matching_form(ClauseKind::Cnf, n)
}

/// ⋁ (x_i ∧ y_i).
pub fn gen_sint(n: usize) -> Result<ClauseForm> {
    matching_form(ClauseKind::Dnf, n)
}

/// The X-block then the Y-block, so the order cuts `(X, Y)` at `n + 1`.
pub fn x_first_order(n: usize) -> Vec<Var> {
    (1..=2 * n).collect()
}

/// `x_1 y_1 x_2 y_2 …`, which cuts nothing.
pub fn interleaved_order(n: usize) -> Vec<Var> {
    scov_pairs(n)
        .into_iter()
        .flat_map(|(x, y)| [x, y])
        .collect()
}

/// A random complete free BDD for `f` by Shannon expansion on a random
/// remaining variable at each node. With probability `or_prob` a node is an
/// ∨ of two expansions on different variables, which makes the diagram
/// ambiguous. Cofactors are shared per remaining-variable set.
pub fn random_complete_nfbdd<R: Rng>(rng: &mut R, f: &dyn BoolFn, or_prob: f64) -> Result<Nbdd> {
    let vars = f.variables();
    check_cap("variable count", vars.len(), BRUTE_FORCE_CAP)?;
    let tt = truth_table(f)?;
    let n = vars.len();
    let table: Vec<bool> = (0..1u64 << n).map(|m| tt.get(m)).collect();
    let mut st = Expander {
        rng,
        vars: &vars,
        b: NbddBuilder::new(),
        memo: HashMap::new(),
        or_prob,
    };
    let root = st.build((1u32 << n) - 1, table);
    let Expander { b, .. } = st;
    b.finish(root, vars.clone(), None)
}

struct Expander<'a, R> {
    rng: &'a mut R,
    vars: &'a [Var],
    b: NbddBuilder,
    memo: HashMap<(u32, Vec<bool>), usize>,
    or_prob: f64,
}

impl<R: Rng> Expander<'_, R> {
    /// `table[m]` is the cofactor's value where bit `j` of `m` is the `j`-th
    /// remaining variable in ascending position order.
    fn build(&mut self, rem: u32, table: Vec<bool>) -> usize {
        if rem == 0 {
            return usize::from(table[0]);
        }
        let key = (rem, table);
        if let Some(&g) = self.memo.get(&key) {
            return g;
        }
        let (rem, table) = key;
        let positions: Vec<u32> = (0..32).filter(|p| rem >> p & 1 == 1).collect();
        let picks: Vec<usize> = if positions.len() >= 2 && self.rng.gen_bool(self.or_prob) {
            (0..positions.len())
                .collect::<Vec<_>>()
                .choose_multiple(self.rng, 2)
                .copied()
                .collect()
        } else {
            vec![self.rng.gen_range(0..positions.len())]
        };
        let mut alts = Vec::new();
        for j in picks {
            let [lo_t, hi_t] = [false, true].map(|v| cofactor(&table, positions.len(), j, v));
            let sub = rem & !(1 << positions[j]);
            let lo = self.build(sub, lo_t);
            let hi = self.build(sub, hi_t);
            alts.push(self.b.test(self.vars[positions[j] as usize], lo, hi));
        }
        let g = if alts.len() == 1 {
            alts[0]
        } else {
            self.b.or(alts)
        };
        self.memo.insert((rem, table), g);
        g
    }
}

/// Fixes bit `j` of an `r`-variable table to `v`.
fn cofactor(table: &[bool], r: usize, j: usize, v: bool) -> Vec<bool> {
    let low = (1usize << j) - 1;
    (0..1usize << (r - 1))
        .map(|m| {
            let full = (m & low) | ((m & !low) << 1) | (usize::from(v) << j);
            table[full]
        })
        .collect()
}
