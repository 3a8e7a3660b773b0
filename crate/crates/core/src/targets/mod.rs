//! Compilation targets: v-trees, NNF circuits and non-deterministic BDDs,
//! with class checkers, reasoning, conditioning, completion and conversions.

mod canonical;
mod complete;
mod condition;
mod convert;
pub mod io;
mod nbdd;
mod nnf;
mod reason;
mod reduce;
mod vtree;

pub use canonical::build_canonical_obdd;
pub use complete::{complete_nbdd, complete_nnf};
pub use condition::{condition_nobdd, condition_sdnnf};
pub use convert::{nfbdd_to_dnnf, nobdd_to_sdnnf};
pub use nbdd::{BddNode, BddReport, Nbdd, NbddBuilder, FALSE, TRUE};
pub use nnf::{NnfBuilder, NnfCircuit, NnfGate, NnfKind, NnfReport, Structure};
pub use reason::{count_models, count_nbdd, enumerate_models, enumerate_nbdd, wmc};
pub use reduce::reduce_extended;
pub use vtree::{VNode, VTree};

pub(crate) use reduce::reduce_unchecked;
