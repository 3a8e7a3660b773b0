use std::collections::HashMap;

use super::{Nbdd, NbddBuilder};
use crate::error::{check_cap, Error, Result, BRUTE_FORCE_CAP};
use crate::logic::{truth_table_over, BoolFn, Var};

/// A cofactor: `len` truth-table bits starting at bit `start`.
fn cofactor_key(words: &[u64], start: u64, len: u64) -> Vec<u64> {
    if len >= 64 {
        words[(start / 64) as usize..((start + len) / 64) as usize].to_vec()
    } else {
        let w = words[(start / 64) as usize] >> (start % 64);
        vec![w & ((1u64 << len) - 1)]
    }
}

/// The complete OBDD of `f` along `order`: one node per distinct cofactor
/// at each level, no node elimination.
pub fn build_canonical_obdd(f: &dyn BoolFn, order: &[Var]) -> Result<Nbdd> {
    let n = order.len();
    check_cap("variable count", n, BRUTE_FORCE_CAP)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n {
        return Err(Error::input("variable order repeats a variable"));
    }
    // Index bit n-1-i holds order[i], so each cofactor is a contiguous block.
    let rev: Vec<Var> = order.iter().rev().copied().collect();
    let table = truth_table_over(f, &rev)?;
    let words = table.words;

    // Distinct cofactors per level, top-down.
    let mut levels: Vec<Vec<u64>> = vec![vec![0]];
    let mut links: Vec<Vec<(usize, usize)>> = Vec::new();
    for l in 0..n {
        let len = 1u64 << (n - l - 1);
        let mut next: Vec<u64> = Vec::new();
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut link = Vec::new();
        for &start in &levels[l] {
            let mut ids = [0usize; 2];
            for (half, id) in ids.iter_mut().enumerate() {
                let s = start + half as u64 * len;
                let k = cofactor_key(&words, s, len);
                *id = *seen.entry(k).or_insert_with(|| {
                    next.push(s);
                    next.len() - 1
                });
            }
            link.push((ids[0], ids[1]));
        }
        levels.push(next);
        links.push(link);
    }

    // Bottom-up node creation.
    let mut b = NbddBuilder::new();
    let mut below: Vec<usize> = levels[n]
        .iter()
        .map(|&s| usize::from((words[(s / 64) as usize] >> (s % 64)) & 1 == 1))
        .collect();
    for l in (0..n).rev() {
        below = links[l]
            .iter()
            .map(|&(lo, hi)| b.test(order[l], below[lo], below[hi]))
            .collect();
    }
    let mut vars = order.to_vec();
    vars.sort_unstable();
    b.finish(below[0], vars, Some(order.to_vec()))
}
