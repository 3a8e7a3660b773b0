use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthkc::compiler::{compile_auto, verify_nbdd, verify_nnf, CompileOptions, Mode, Target};
use widthkc::compiler::{compile_pathwidth, compile_treewidth, width_ceiling, BagTable};
use widthkc::decomp::{
    heuristic_path_decomposition, heuristic_tree_decomposition, make_friendly, make_friendly_path,
};
use widthkc::logic::random::{random_circuit, CircuitShape};
use widthkc::logic::{equivalent, CircuitBuilder, MaybeConst};
use widthkc::lowerbounds::gen_scov;
use widthkc::targets::io::write_nnf;
use widthkc::Error;

#[test]
fn tree_mode_random_circuits_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..40 {
        let c = random_circuit(
            &mut rng,
            CircuitShape {
                vars: 6,
                internal: 12,
                window: 4,
                max_fanin: 3,
            },
        );
        let p = compile_auto(&c, Mode::Tree, None, &CompileOptions::default()).unwrap();
        let Target::Sdnnf(d) = &p.target else {
            panic!()
        };
        let v = verify_nnf(&c, d).unwrap();
        assert!(v.passed(), "instance {i}: {v:?}");
        let ext = p.extended.as_ref().unwrap();
        assert!(
            verify_nnf(&c, &widthkc::logic::MaybeConst::Value(ext.clone()))
                .unwrap()
                .equivalent
        );
    }
}

#[test]
fn path_mode_random_circuits_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let c = random_circuit(
            &mut rng,
            CircuitShape {
                vars: 6,
                internal: 12,
                window: 3,
                max_fanin: 2,
            },
        );
        let p = compile_auto(&c, Mode::Path, None, &CompileOptions::default()).unwrap();
        let Target::Obdd(o) = &p.target else { panic!() };
        let v = verify_nbdd(&c, o).unwrap();
        assert!(v.passed(), "instance {i}: {v:?}");
    }
}

#[test]
fn bag_tables_follow_strong_values() {
    let mut b = CircuitBuilder::new();
    let x = b.var(1);
    let y = b.var(2);
    let g = b.and([x, y]);
    let c = b.build(g).unwrap();

    let t = BagTable::new(&c, &[g]);
    assert_eq!(t.pairs().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 0)]);
    assert_eq!(t.unf, vec![Some(1), Some(0)]);

    let t = BagTable::new(&c, &[x]);
    assert_eq!(t.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 0)]);

    let mut b = CircuitBuilder::new();
    let x = b.var(1);
    let n = b.not(x);
    let c = b.build(n).unwrap();
    let t = BagTable::new(&c, &[x, n]);
    // bit 0 is x, bit 1 is ¬x: ν(x)=1, ν(¬x)=1 breaks the strong value
    assert_eq!(t.unf[0b11], None);
    assert_eq!(t.unf[0b00], None);
    assert_eq!(t.unf[0b01], Some(0));
    assert_eq!(t.unf[0b10], Some(0));
}

#[test]
fn single_variable_compiles_in_both_modes() {
    let mut b = CircuitBuilder::new();
    let x = b.var(1);
    let c = b.build(x).unwrap();
    let p = compile_auto(&c, Mode::Tree, None, &CompileOptions::default()).unwrap();
    let Target::Sdnnf(d) = &p.target else {
        panic!()
    };
    assert!(verify_nnf(&c, d).unwrap().passed());
    let p = compile_auto(&c, Mode::Path, None, &CompileOptions::default()).unwrap();
    let Target::Obdd(o) = &p.target else { panic!() };
    assert!(verify_nbdd(&c, o).unwrap().passed());
}

#[test]
fn scov2_tree_compilation_stays_under_the_ceiling() {
    let c = gen_scov(2).unwrap().to_circuit();
    let fd = make_friendly(&heuristic_tree_decomposition(&c.primal_graph()), c.output());
    let k = fd.width();
    let out = compile_treewidth(&c, &fd, &CompileOptions::default()).unwrap();
    assert!(equivalent(&out.circuit, &c).unwrap());
    let r = out.circuit.check_class(true).unwrap();
    assert!(r.extended && r.complete && r.deterministic == Some(true));
    assert!(out.circuit.raw_width().unwrap() as u128 <= width_ceiling(k));
    assert!(out.stats.max_or_per_bag as u128 <= width_ceiling(k));
    assert!(out.stats.max_and_per_bag as u128 <= width_ceiling(k) * width_ceiling(k));
}

#[test]
fn chain_of_negations_compiles_to_a_narrow_uobdd() {
    let mut b = CircuitBuilder::new();
    let x = b.var(1);
    let n1 = b.not(x);
    let n2 = b.not(n1);
    let n3 = b.not(n2);
    let c = b.build(n3).unwrap();
    let pd =
        make_friendly_path(&heuristic_path_decomposition(&c.primal_graph()), c.output()).unwrap();
    let (o, stats) = compile_pathwidth(&c, &pd, &CompileOptions::default()).unwrap();
    assert!(verify_nbdd(&c, &o).unwrap().passed());
    let MaybeConst::Value(o) = o else {
        panic!("constant")
    };
    assert!(o.raw_width() as u128 <= width_ceiling(stats.width));
    assert!(o.raw_width() <= 16);
}

#[test]
fn scov3_path_compilation_is_equivalent() {
    let c = gen_scov(3).unwrap().to_circuit();
    let p = compile_auto(&c, Mode::Path, None, &CompileOptions::default()).unwrap();
    let Target::Obdd(o) = &p.target else { panic!() };
    let v = verify_nbdd(&c, o).unwrap();
    assert!(v.passed(), "{v:?}");
}

#[test]
fn contradictions_compile_to_constants() {
    let mut b = CircuitBuilder::new();
    let x = b.var(1);
    let n = b.not(x);
    let g = b.and([x, n]);
    let c = b.build(g).unwrap();
    let p = compile_auto(&c, Mode::Path, None, &CompileOptions::default()).unwrap();
    assert!(matches!(p.target, Target::Obdd(MaybeConst::Const(false))));
    let p = compile_auto(&c, Mode::Tree, None, &CompileOptions::default()).unwrap();
    assert!(matches!(p.target, Target::Sdnnf(MaybeConst::Const(false))));
}

#[test]
fn width_cap_and_unfriendly_roots_are_rejected() {
    let c = gen_scov(2).unwrap().to_circuit();
    let opts = CompileOptions {
        kcap: 0,
        ..CompileOptions::default()
    };
    assert!(matches!(
        compile_auto(&c, Mode::Tree, None, &opts),
        Err(Error::Capacity { .. })
    ));

    let td = heuristic_tree_decomposition(&c.primal_graph());
    let wrong = c.var_gate(1).unwrap();
    let fd = make_friendly(&td, wrong);
    assert!(matches!(
        compile_treewidth(&c, &fd, &CompileOptions::default()),
        Err(Error::Input(_))
    ));
}

#[test]
fn reruns_are_byte_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = random_circuit(
        &mut rng,
        CircuitShape {
            vars: 8,
            internal: 16,
            window: 4,
            max_fanin: 3,
        },
    );
    let text = || {
        let p = compile_auto(&c, Mode::Tree, None, &CompileOptions::default()).unwrap();
        match p.target {
            Target::Sdnnf(MaybeConst::Value(d)) => (write_nnf(&d), d.vtree().unwrap().to_text()),
            _ => (String::new(), String::new()),
        }
    };
    assert_eq!(text(), text());
}

#[test]
fn scov_reduced_size_is_linear_in_variables() {
    for n in 1..=8 {
        let c = gen_scov(n).unwrap().to_circuit();
        let p = compile_auto(&c, Mode::Tree, None, &CompileOptions::default()).unwrap();
        let Target::Sdnnf(MaybeConst::Value(d)) = &p.target else {
            panic!()
        };
        let w = d.raw_width().unwrap().max(1);
        assert!(w as u128 <= p.stats.ceiling());
        assert!(
            d.size() <= 4 * 2 * n * w * w,
            "n={n} size={} w={w}",
            d.size()
        );
    }
}

#[test]
fn random_twelve_variable_circuit_is_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let c = random_circuit(
        &mut rng,
        CircuitShape {
            vars: 12,
            internal: 24,
            window: 4,
            max_fanin: 3,
        },
    );
    let p = compile_auto(&c, Mode::Auto, None, &CompileOptions::default()).unwrap();
    let v = match &p.target {
        Target::Sdnnf(d) => verify_nnf(&c, d).unwrap(),
        Target::Obdd(o) => verify_nbdd(&c, o).unwrap(),
    };
    assert!(v.passed(), "{v:?}");
}
