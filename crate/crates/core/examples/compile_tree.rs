//! Compiles a circuit or DIMACS file into a complete d-SDNNF and checks it
//! against the source truth table.
//!
//! cargo run --example compile_tree -- [file]

use widthkc::cli::parse_source;
use widthkc::compiler::{compile_auto, verify_nnf, CompileOptions, Mode, Target};
use widthkc::targets::io::write_nnf;

fn main() -> widthkc::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sint4.dnf").into());
    let src = parse_source(&std::fs::read_to_string(&path)?)?;
    let c = src.circuit();

    let p = compile_auto(&c, Mode::Tree, None, &CompileOptions::default())?;
    println!("gates {}, vars {}", c.len(), c.num_vars());
    println!("decomposition width {}", p.decomposition_width());
    println!(
        "friendly width {}, ceiling {}",
        p.stats.width,
        p.stats.ceiling()
    );
    println!(
        "extended circuit: {} gates, width {}",
        p.stats.gates, p.stats.compiled_width
    );

    let Target::Sdnnf(d) = &p.target else {
        unreachable!()
    };
    let v = verify_nnf(src.as_fn(), d)?;
    println!(
        "reduced: size {}, width {}",
        p.target_size(),
        p.target_width()
    );
    println!(
        "equivalent {}, deterministic {}, complete {}",
        v.equivalent, v.deterministic, v.complete
    );
    if let Some(d) = d.value() {
        let text = write_nnf(d);
        println!("\n{}", text.lines().take(8).collect::<Vec<_>>().join("\n"));
        println!("... ({} lines)", text.lines().count());
    }
    Ok(())
}
