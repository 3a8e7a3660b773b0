//! Places the observed width of compiled representations between the
//! lower-bound floor and the compiler's ceiling, printed as CSV.
//!
//! cargo run --example certify

use widthkc::compiler::{compile_auto, CompileOptions, Mode};
use widthkc::decomp::{exact_pathwidth, exact_treewidth};
use widthkc::lowerbounds::{
    certify_width, gen_scov, gen_sint, x_first_order, WidthEvidence, WidthKind, CSV_HEADER,
};
use widthkc::targets::build_canonical_obdd;

fn main() -> widthkc::Result<()> {
    println!("{CSV_HEADER}");
    for n in [2, 4, 6] {
        for (name, f) in [("scov", gen_scov(n)?), ("sint", gen_sint(n)?)] {
            let h = f.hypergraph();
            let c = f.to_circuit();

            let p = compile_auto(&c, Mode::Path, None, &CompileOptions::default())?;
            let o = build_canonical_obdd(&f, &x_first_order(n))?;
            let ev = WidthEvidence {
                kind: WidthKind::Path,
                k: exact_pathwidth(&h)?,
                k_exact: true,
                observed: o.raw_width(),
                compiled_k: Some(p.friendly.width()),
            };
            println!(
                "{}",
                certify_width(&format!("{name}{n}-xfirst"), &f, ev).to_csv_row()
            );

            let p = compile_auto(&c, Mode::Tree, None, &CompileOptions::default())?;
            let ev = WidthEvidence {
                kind: WidthKind::Tree,
                k: exact_treewidth(&h)?,
                k_exact: true,
                observed: p.target_width(),
                compiled_k: Some(p.friendly.width()),
            };
            println!(
                "{}",
                certify_width(&format!("{name}{n}-tree"), &f, ev).to_csv_row()
            );
        }
    }
    Ok(())
}
