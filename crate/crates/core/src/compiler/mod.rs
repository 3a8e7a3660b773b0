//! The bag-assignment construction: circuits with a friendly tree
//! decomposition become extended complete d-SDNNFs, and right-linear path
//! decompositions give complete uOBDDs.

mod bag;
mod path;
mod pipeline;
mod tree;

pub use bag::{compress, is_strong, submasks, BagTable};
pub use path::{compile_pathwidth, reduced_to_uobdd};
pub use pipeline::{compile_auto, verify_nbdd, verify_nnf, Mode, Pipeline, Target, Verification};
pub use tree::compile_treewidth;

use crate::targets::NnfCircuit;

pub const DEFAULT_KCAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    /// Refuse decompositions wider than this.
    pub kcap: usize,
    /// Skip ∨-gates whose pair is not connectible to the parent bag.
    pub prune_useless: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            kcap: DEFAULT_KCAP,
            prune_useless: false,
        }
    }
}

/// Identity of a compiled ∨-gate `G_b^{ν,S}`; masks range over the bag's
/// gates in ascending id order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrLabel {
    pub bag: usize,
    pub nu: u32,
    pub suspicious: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileStats {
    /// Width k of the friendly decomposition.
    pub width: usize,
    pub max_or_per_bag: usize,
    pub max_and_per_bag: usize,
    pub gates: usize,
    pub wires: usize,
    pub compiled_width: usize,
}

impl CompileStats {
    /// The width ceiling 2^{2(k+1)}.
    pub fn ceiling(&self) -> u128 {
        width_ceiling(self.width)
    }
}

/// 2^{2(k+1)}, saturating.
pub fn width_ceiling(k: usize) -> u128 {
    1u128.checked_shl(2 * (k as u32 + 1)).unwrap_or(u128::MAX)
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub circuit: NnfCircuit,
    /// `labels[g]` for each ∨-gate created for a bag.
    pub labels: Vec<Option<OrLabel>>,
    pub stats: CompileStats,
}
