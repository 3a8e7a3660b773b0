//! Writes and reads back every text format: circuits, DIMACS, NNF with its
//! v-tree and structuring map, BDDs and PACE tree decompositions.
//!
//! cargo run --example formats

use widthkc::compiler::{compile_auto, CompileOptions, Mode, Target};
use widthkc::decomp::pace;
use widthkc::logic::parse::{parse_circuit, parse_dimacs};
use widthkc::logic::{equivalent, MaybeConst};
use widthkc::targets::io::{read_bdd, read_nnf, write_bdd, write_nnf, write_rho};

const CIRCUIT: &str = "\
# (x1 ∧ x2) ∨ ¬x3
g1 VAR
g2 VAR
g3 VAR
g4 AND g1 g2
g5 NOT g3
g6 OR g4 g5
OUTPUT g6
";

const DIMACS: &str = "\
c SCOV_2
p cnf 4 2
1 3 0
2 4 0
";

fn main() -> widthkc::Result<()> {
    let c = parse_circuit(CIRCUIT)?;
    let f = parse_dimacs(DIMACS)?;
    println!("circuit: {} gates, vars {:?}", c.len(), c.variables());
    println!("dimacs: {:?} clauses {:?}\n", f.kind(), f.clauses());

    let opts = CompileOptions::default();
    let p = compile_auto(&c, Mode::Tree, None, &opts)?;
    let Target::Sdnnf(MaybeConst::Value(d)) = &p.target else {
        unreachable!()
    };
    let (nnf, vt, rho) = (
        write_nnf(d),
        d.vtree().unwrap().to_text(),
        write_rho(d).unwrap(),
    );
    println!("--- .nnf\n{nnf}--- .vtree\n{vt}--- .rho\n{rho}");
    let back = read_nnf(&nnf, Some(&vt), Some(&rho))?;
    println!("nnf round trip equivalent: {}\n", equivalent(&back, d)?);

    let p = compile_auto(&f.to_circuit(), Mode::Path, None, &opts)?;
    let Target::Obdd(MaybeConst::Value(o)) = &p.target else {
        unreachable!()
    };
    let bdd = write_bdd(o);
    println!("--- .bdd\n{bdd}");
    println!(
        "bdd round trip equivalent: {}\n",
        equivalent(&read_bdd(&bdd)?, o)?
    );

    // The decomposition is over circuit gates, numbered from 0; PACE counts from 1.
    let h = f.to_circuit().primal_graph();
    let td = p.decomposition;
    let text = pace::write_td(&td, h.num_vertices(), |g| g + 1);
    println!("--- .td\n{text}");
    let back = pace::read_td(&text, |v| v.checked_sub(1))?;
    println!("td round trip valid: {}", back.validate(&h).is_ok());
    Ok(())
}
