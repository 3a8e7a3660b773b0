//! Finds a set-covering instance inside a bounded CNF: split clauses of a
//! bipartition, the exclusion graph, an independent set, and the valuation
//! that restricts the form to SCOV_n.
//!
//! cargo run --example embedding -- [seed]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use widthkc::logic::random::random_monotone;
use widthkc::logic::ClauseKind;
use widthkc::lowerbounds::{embedding_size, exclusion_graph, extract_embedding, split_edges};

fn main() -> widthkc::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Redraw until the bipartition splits enough clauses for n ≥ 2.
    let (f, xs, ys, split) = loop {
        let Some(f) = random_monotone(&mut rng, ClauseKind::Cnf, 120, 120, 2, 2) else {
            continue;
        };
        let (xs, ys): (Vec<usize>, Vec<usize>) =
            f.variables().iter().partition(|_| rng.gen_bool(0.5));
        let h = f.hypergraph();
        let split = split_edges(&h, &xs, &ys);
        let (a, d) = h.arity_degree();
        if embedding_size(split.len(), a, d) >= 2 {
            break (f, xs, ys, split);
        }
    };
    let h = f.hypergraph();
    let (a, d) = h.arity_degree();
    let g = exclusion_graph(&h);
    println!("{} clauses, arity {a}, degree {d}", f.clauses().len());
    println!(
        "{} split clauses, exclusion graph max degree {}",
        split.len(),
        g.max_degree()
    );
    println!(
        "embedding size ⌊|K'|/(a²d²)⌋ = {}",
        embedding_size(split.len(), a, d)
    );

    let e = extract_embedding(&f, &xs, &ys, &split)?;
    println!("chosen clauses {:?}", e.clauses);
    for (x, y) in e.x.iter().zip(&e.y) {
        println!("  x = {x:>3}  y = {y:>3}");
    }
    println!("valuation fixes {} variables", e.nu.len());
    println!("restricted form: {:?}", e.result.clauses());
    Ok(())
}
