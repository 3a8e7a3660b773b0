//! Conditioning, completion, reduction and class conversions on small
//! representations.
//!
//! cargo run --example conditioning

use widthkc::compiler::{compile_auto, CompileOptions, Mode, Target};
use widthkc::logic::{equivalent, MaybeConst, Valuation};
use widthkc::lowerbounds::gen_scov;
use widthkc::targets::{
    complete_nbdd, condition_nobdd, condition_sdnnf, count_models, nobdd_to_sdnnf, reduce_extended,
    NbddBuilder, FALSE, TRUE,
};

fn main() -> widthkc::Result<()> {
    let f = gen_scov(3)?;
    let c = f.to_circuit();
    let opts = CompileOptions::default();

    let p = compile_auto(&c, Mode::Tree, None, &opts)?;
    let ext = p.extended.as_ref().unwrap();
    let MaybeConst::Value(d) = reduce_extended(ext)? else {
        unreachable!()
    };
    println!(
        "extended: {} gates, width {:?}; reduced: {} gates, width {:?}",
        ext.len(),
        ext.raw_width(),
        d.len(),
        d.raw_width()
    );
    println!(
        "reduced v-tree is a reduction: {}",
        d.vtree().unwrap().is_reduction_of(ext.vtree().unwrap())
    );

    // x1 = 0 forces y1 = 1.
    let nu = Valuation::from_pairs([(1, false)])?;
    match condition_sdnnf(&d, &nu)? {
        MaybeConst::Value(g) => println!(
            "SDNNF with x1=0: {} models over {:?}, width {:?}",
            count_models(&g)?,
            g.variables(),
            g.raw_width()
        ),
        MaybeConst::Const(b) => println!("SDNNF with x1=0 is constant {b}"),
    }

    let p = compile_auto(&c, Mode::Path, None, &opts)?;
    let Target::Obdd(MaybeConst::Value(o)) = &p.target else {
        unreachable!()
    };
    let nu = Valuation::from_pairs([(1, true), (2, false)])?;
    let g = condition_nobdd(o, &nu)?;
    println!(
        "OBDD width {}, after x1=1, x2=0: width {}",
        o.raw_width(),
        g.raw_width()
    );

    // x1 ∧ x3 over {x1, x2, x3}: x2 is skipped.
    let mut b = NbddBuilder::new();
    let t3 = b.test(3, FALSE, TRUE);
    let root = b.test(1, FALSE, t3);
    let skip = b.finish(root, vec![1, 2, 3], Some(vec![1, 2, 3]))?;
    let full = complete_nbdd(&skip)?;
    println!(
        "\ncompletion: complete {} -> {}, {} -> {} nodes, equivalent {}",
        skip.is_complete(),
        full.is_complete(),
        skip.node_count(),
        full.node_count(),
        equivalent(&skip, &full)?
    );

    let s = nobdd_to_sdnnf(&full)?;
    let r = s.check_class(true)?;
    println!(
        "as SDNNF: structured {}, deterministic {:?}, right-linear v-tree {}",
        r.structured,
        r.deterministic,
        s.vtree().unwrap().is_right_linear()
    );
    Ok(())
}
