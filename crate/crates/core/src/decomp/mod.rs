//! Tree and path decompositions, friendliness normalization and split widths.

mod exact;
mod friendly;
mod heuristic;
pub mod pace;
mod split;
mod tree;

pub use exact::{exact_pathwidth, exact_treewidth, EXACT_WIDTH_CAP};
pub use friendly::{make_friendly, make_friendly_path, FriendlyDecomp};
pub use heuristic::{heuristic_path_decomposition, heuristic_tree_decomposition, path_from_layout};
pub use split::{
    exact_splitwidth, path_decomp_from_order, split_profile_order, split_profile_vtree,
    tree_decomp_from_vtree, SplitMode, SplitProfile, SplitWitness, SPLITWIDTH_CAP,
};
pub use tree::{TreeDecomp, Violation};
