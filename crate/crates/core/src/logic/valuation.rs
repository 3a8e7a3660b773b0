use std::collections::HashSet;

use super::Var;
use crate::error::{Error, Result};

/// A Boolean assignment to an ordered list of distinct variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Valuation {
    domain: Vec<Var>,
    bits: Vec<bool>,
}

impl Valuation {
    pub fn new(domain: Vec<Var>, bits: Vec<bool>) -> Result<Self> {
        if domain.len() != bits.len() {
            return Err(Error::input(format!(
                "valuation has {} variables but {} bits",
                domain.len(),
                bits.len()
            )));
        }
        let mut seen = HashSet::new();
        for v in &domain {
            if !seen.insert(*v) {
                return Err(Error::input(format!("variable {v} assigned twice")));
            }
        }
        Ok(Valuation { domain, bits })
    }

    pub fn empty() -> Self {
        Valuation::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, bool)>) -> Result<Self> {
        let (domain, bits) = pairs.into_iter().unzip();
        Valuation::new(domain, bits)
    }

    /// Bit `i` of `mask` is the value of `domain[i]`.
    pub fn from_mask(domain: &[Var], mask: u64) -> Self {
        let bits = (0..domain.len()).map(|i| (mask >> i) & 1 == 1).collect();
        Valuation {
            domain: domain.to_vec(),
            bits,
        }
    }

    /// Inverse of [`Valuation::from_mask`]; `None` if some variable is unassigned.
    pub fn to_mask(&self, domain: &[Var]) -> Option<u64> {
        let mut mask = 0u64;
        for (i, v) in domain.iter().enumerate() {
            if self.get(*v)? {
                mask |= 1 << i;
            }
        }
        Some(mask)
    }

    pub fn domain(&self) -> &[Var] {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.domain
            .iter()
            .position(|d| *d == v)
            .map(|i| self.bits[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.domain.iter().copied().zip(self.bits.iter().copied())
    }

    /// Restriction to the variables of `vars` that are in the domain.
    pub fn restrict(&self, vars: &[Var]) -> Valuation {
        let keep: HashSet<Var> = vars.iter().copied().collect();
        let (domain, bits) = self.iter().filter(|(v, _)| keep.contains(v)).unzip();
        Valuation { domain, bits }
    }

    /// Union of two valuations over disjoint domains.
    pub fn union(&self, other: &Valuation) -> Result<Valuation> {
        Valuation::from_pairs(self.iter().chain(other.iter()))
    }

    /// The valuation with every bit flipped.
    pub fn complement(&self) -> Valuation {
        Valuation {
            domain: self.domain.clone(),
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn true_vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self.iter().filter(|(_, b)| *b).map(|(v, _)| v).collect();
        out.sort_unstable();
        out
    }
}
