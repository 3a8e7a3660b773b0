//! Rectangles read off a random complete nFBDD of SCOV_6, each checked against the exact small-fraction inequality.
//!
//! cargo run --example small_fraction -- [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthkc::lowerbounds::{
    gen_scov, max_split_selector, random_complete_nfbdd, rectangles_at_gates_unstructured,
    small_fraction_check, Unstructured,
};

fn main() -> widthkc::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = gen_scov(6)?;
    println!("CNF {:?}", f.clauses());
    let o = random_complete_nfbdd(&mut rng, &f, 0.25)?;
    println!(
        "complete nFBDD: {} nodes, width {}",
        o.node_count(),
        o.raw_width()
    );

    let mut pick = max_split_selector(f.clauses().to_vec());
    let cov = rectangles_at_gates_unstructured(Unstructured::Diagram(&o), &mut pick)?;
    let rep = cov.check(&f)?;
    println!(
        "{} rectangles, sound {}, covers {}\n",
        cov.rects.len(),
        rep.sound,
        rep.covers
    );
    println!("  |X|  split  n  alpha      #R  bound      holds");
    for r in &cov.rects {
        let fr = small_fraction_check(&f, r, None)?;
        println!(
            "  {:>3}  {:>5}  {}  {:<6} {:>5}  {:<9.3}  {:?}",
            r.x.len(),
            fr.split,
            fr.n,
            fr.alpha.to_string(),
            fr.rect_count,
            fr.bound_f64(),
            fr.holds.unwrap_or(false)
        );
    }
    Ok(())
}
