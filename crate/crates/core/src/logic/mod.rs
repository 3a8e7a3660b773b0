//! Boolean circuits, valuations, monotone clause forms and hypergraphs, plus
//! the exhaustive oracles every other module is tested against.

mod circuit;
mod clause;
mod hypergraph;
mod oracle;
pub mod parse;
pub mod random;
mod valuation;

pub use circuit::{Circuit, CircuitBuilder, Gate, GateId, GateKind};
pub use clause::{ClauseForm, ClauseKind};
pub use hypergraph::Hypergraph;
pub use oracle::{
    brute_force_models, brute_force_wmc, equivalent, truth_table, truth_table_over, BoolFn, Models,
    Probabilities, TruthTable,
};
pub use valuation::Valuation;

/// Variable identifier. For circuits this is the external id of the var gate.
pub type Var = usize;

/// Result of an operation that may collapse to a constant function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaybeConst<T> {
    Const(bool),
    Value(T),
}

impl<T> MaybeConst<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            MaybeConst::Value(v) => Some(v),
            MaybeConst::Const(_) => None,
        }
    }

    pub fn into_value(self) -> Option<T> {
        match self {
            MaybeConst::Value(v) => Some(v),
            MaybeConst::Const(_) => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> MaybeConst<U> {
        match self {
            MaybeConst::Value(v) => MaybeConst::Value(f(v)),
            MaybeConst::Const(b) => MaybeConst::Const(b),
        }
    }
}

/// Word patterns for the low six valuation bits of a 64-valuation block.
pub(crate) const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Value word of variable position `i` over the block of 64 valuations starting at `base`.
#[inline]
pub(crate) fn block_word(i: usize, base: u64) -> u64 {
    if i < 6 {
        LOW_PATTERNS[i]
    } else if (base >> i) & 1 == 1 {
        !0
    } else {
        0
    }
}

/// Mask of the valid valuation bits in a block when there are `n` variables.
#[inline]
pub(crate) fn block_valid(n: usize) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1 << n)) - 1
    }
}
