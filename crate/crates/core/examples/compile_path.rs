//! Compiles a circuit along a path decomposition into a complete unambiguous
//! OBDD and prints it in text and Graphviz form.
//!
//! cargo run --example compile_path -- [file]

use widthkc::cli::parse_source;
use widthkc::compiler::{compile_auto, verify_nbdd, CompileOptions, Mode, Target};
use widthkc::logic::MaybeConst;
use widthkc::targets::io::{bdd_to_dot, write_bdd};

fn main() -> widthkc::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/chain.circ").into());
    let src = parse_source(&std::fs::read_to_string(&path)?)?;
    let c = src.circuit();

    let p = compile_auto(&c, Mode::Path, None, &CompileOptions::default())?;
    let Target::Obdd(o) = &p.target else {
        unreachable!()
    };
    let v = verify_nbdd(src.as_fn(), o)?;
    println!("path decomposition width {}", p.decomposition_width());
    println!(
        "friendly width {}, ceiling {}",
        p.stats.width,
        p.stats.ceiling()
    );
    println!(
        "diagram width {}, {} edges",
        p.target_width(),
        p.target_size()
    );
    println!(
        "equivalent {}, unambiguous {}, complete {}",
        v.equivalent, v.deterministic, v.complete
    );
    match o {
        MaybeConst::Const(b) => println!("constant {b}"),
        MaybeConst::Value(o) => {
            println!("order {:?}\n", o.order().unwrap_or_default());
            print!("{}", write_bdd(o));
            println!();
            print!("{}", bdd_to_dot(o));
        }
    }
    Ok(())
}
