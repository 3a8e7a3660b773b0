//! Lower-bound machinery: the set-covering and set-intersection families,
//! cuts and split clause sets, exclusion graphs and embeddings, rectangle
//! covers read off complete representations, fooling-set and small-fraction
//! checks, and width certification.
//!
//! Rectangles are explicit valuation sets, so everything here is exhaustive
//! and capped at [`crate::BRUTE_FORCE_CAP`] variables.

mod certify;
mod cut;
mod embed;
mod families;
mod fooling;
mod rect;

pub use certify::{
    certify_width, width_floor, Certification, Verdict, WidthEvidence, WidthKind, CSV_HEADER,
};
pub use cut::{find_cut_order, find_cut_vtree, split_edges};
pub use embed::{
    embedding_size, exclusion_graph, extract_embedding, greedy_independent_set, is_matching_shape,
    Embedding, ExclusionGraph,
};
pub use families::{
    gen_scov, gen_sint, interleaved_order, random_complete_nfbdd, scov_pairs, x_first_order,
};
pub use fooling::{
    disjoint_check_sint, fooling_check_scov, small_fraction_check, FoolingReport, FractionReport,
};
pub use rect::{
    max_split_selector, rectangles_at_gates_unstructured, rectangles_from_nobdd,
    rectangles_from_sdnnf, Candidate, CoverReport, Rectangle, RectangleCover, Unstructured,
};
