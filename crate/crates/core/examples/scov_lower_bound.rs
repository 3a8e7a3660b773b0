//! The set-covering lower bound: canonical OBDDs of SCOV_n under the
//! X-before-Y order, their rectangle covers, and the fooling-set check.
//! SINT_n gets the disjoint-cover variant.
//!
//! cargo run --example scov_lower_bound -- [max_n]

use widthkc::lowerbounds::{
    disjoint_check_sint, fooling_check_scov, gen_scov, gen_sint, interleaved_order,
    rectangles_from_nobdd, x_first_order,
};
use widthkc::targets::build_canonical_obdd;

fn main() -> widthkc::Result<()> {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(6);
    println!(" n  x-first  interleaved  2^n-1  rects  fooling  sint-disjoint");
    for n in 1..=max_n {
        let f = gen_scov(n)?;
        let o = build_canonical_obdd(&f, &x_first_order(n))?;
        let flat = build_canonical_obdd(&f, &interleaved_order(n))?;
        let cov = rectangles_from_nobdd(&o, n + 1)?;
        let fool = fooling_check_scov(&cov, n)?;

        let g = gen_sint(n)?;
        let u = build_canonical_obdd(&g, &x_first_order(n))?;
        let dis = disjoint_check_sint(&rectangles_from_nobdd(&u, n + 1)?, n)?;
        println!(
            "{n:>2}  {:>7}  {:>11}  {:>5}  {:>5}  {:>7}  {:>13}",
            o.raw_width(),
            flat.raw_width(),
            (1u64 << n) - 1,
            cov.rects.len(),
            fool.passes(),
            dis.passes()
        );
    }
    Ok(())
}
