//! Model counting, weighted counting and enumeration on compiled targets,
//! next to the brute-force answers.
//!
//! cargo run --example reasoning

use widthkc::compiler::{compile_auto, CompileOptions, Mode, Target};
use widthkc::logic::{brute_force_models, brute_force_wmc, MaybeConst, Probabilities};
use widthkc::lowerbounds::{gen_scov, gen_sint};
use widthkc::targets::{count_models, count_nbdd, enumerate_models, enumerate_nbdd, wmc};

fn main() -> widthkc::Result<()> {
    let opts = CompileOptions::default();

    let scov = gen_scov(3)?;
    let p = compile_auto(&scov.to_circuit(), Mode::Tree, None, &opts)?;
    let Target::Sdnnf(MaybeConst::Value(d)) = &p.target else {
        unreachable!()
    };
    println!(
        "SCOV_3 models: {} (brute force {})",
        count_models(d)?,
        brute_force_models(&scov, false)?.count
    );

    let mut pi = Probabilities::uniform(d.variables(), 0.5)?;
    pi.set(1, 0.9)?;
    pi.set(4, 0.2)?;
    println!(
        "SCOV_3 probability: {:.12} (brute force {:.12})",
        wmc(d, &pi)?,
        brute_force_wmc(&scov, &pi)?
    );

    let sint = gen_sint(2)?;
    let p = compile_auto(&sint.to_circuit(), Mode::Path, None, &opts)?;
    let Target::Obdd(MaybeConst::Value(o)) = &p.target else {
        unreachable!()
    };
    println!("\nSINT_2 models: {}", count_nbdd(o)?);
    for m in enumerate_nbdd(o)? {
        println!("  {m:?}");
    }

    let one = gen_scov(1)?;
    let p = compile_auto(&one.to_circuit(), Mode::Tree, None, &opts)?;
    let Target::Sdnnf(MaybeConst::Value(d)) = &p.target else {
        unreachable!()
    };
    println!("\nSCOV_1 models:");
    for m in enumerate_models(d)? {
        println!("  {m:?}");
    }
    Ok(())
}
