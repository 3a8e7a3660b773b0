//! Tree and path decompositions of a hypergraph: heuristics, exact widths,
//! split widths, friendly decompositions and the PACE format.
//!
//! cargo run --example decompositions

use widthkc::decomp::{
    exact_pathwidth, exact_splitwidth, exact_treewidth, heuristic_path_decomposition,
    heuristic_tree_decomposition, make_friendly, pace, path_decomp_from_order, SplitMode,
    SplitWitness,
};
use widthkc::logic::Hypergraph;

fn main() -> widthkc::Result<()> {
    // A 3×3 grid.
    let id = |r: usize, c: usize| 3 * r + c + 1;
    let mut edges = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            if c < 2 {
                edges.push(vec![id(r, c), id(r, c + 1)]);
            }
            if r < 2 {
                edges.push(vec![id(r, c), id(r + 1, c)]);
            }
        }
    }
    let h = Hypergraph::new((1..=9).collect(), edges)?;

    let td = heuristic_tree_decomposition(&h);
    let pd = heuristic_path_decomposition(&h);
    println!(
        "min-fill tree decomposition: width {}, {} bags",
        td.width(),
        td.len()
    );
    println!(
        "heuristic path decomposition: width {}, {} bags",
        pd.width(),
        pd.len()
    );
    println!(
        "exact treewidth {}, pathwidth {}",
        exact_treewidth(&h)?,
        exact_pathwidth(&h)?
    );

    let (psw, w) = exact_splitwidth(&h, SplitMode::Path)?;
    let (tsw, _) = exact_splitwidth(&h, SplitMode::Tree)?;
    println!("path split width {psw}, tree split width {tsw}");
    if let SplitWitness::Order(order) = w {
        let from = path_decomp_from_order(&order, &h)?;
        println!(
            "order {order:?} gives a path decomposition of width {}",
            from.width()
        );
    }

    let fd = make_friendly(&td, 5);
    println!(
        "friendly for vertex 5: width {}, {} bags, friendly check {:?}",
        fd.width(),
        fd.td().len(),
        fd.check()
    );

    let text = pace::write_td(&td, h.num_vertices(), |v| v);
    println!("\n{text}");
    let back = pace::read_td(&text, Some)?;
    println!("round trip valid: {:?}", back.validate(&h).is_ok());
    Ok(())
}
