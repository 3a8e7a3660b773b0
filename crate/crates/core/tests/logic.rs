use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthkc::logic::parse::{parse_circuit, parse_dimacs, write_circuit, write_dimacs};
use widthkc::logic::random::{random_circuit, random_monotone, CircuitShape};
use widthkc::logic::*;
use widthkc::lowerbounds::{gen_scov, gen_sint};
use widthkc::Error;

fn cnf(clauses: &[&[usize]]) -> ClauseForm {
    let cs: Vec<Vec<usize>> = clauses.iter().map(|c| c.to_vec()).collect();
    let mut vars: Vec<usize> = cs.concat();
    vars.sort_unstable();
    vars.dedup();
    ClauseForm::new(ClauseKind::Cnf, vars, cs).unwrap()
}

fn val(pairs: &[(usize, bool)]) -> Valuation {
    Valuation::from_pairs(pairs.iter().copied()).unwrap()
}

/// Recursive evaluation straight from the gate list.
fn eval_rec(c: &Circuit, g: GateId, v: &Valuation) -> bool {
    let gate = c.gate(g);
    match gate.kind {
        GateKind::Var(_) => v.get(c.label(g).unwrap()).unwrap(),
        GateKind::Not => !eval_rec(c, gate.inputs[0], v),
        GateKind::And => gate.inputs.iter().all(|&i| eval_rec(c, i, v)),
        GateKind::Or => gate.inputs.iter().any(|&i| eval_rec(c, i, v)),
    }
}

#[test]
fn evaluate_examples() {
    let c = parse_circuit("g1 VAR\nOUTPUT g1\n").unwrap();
    assert!(c.evaluate(&val(&[(1, true)])).unwrap());
    let c = parse_circuit("g1 VAR\ng2 OR\nOUTPUT g2\n").unwrap();
    assert!(!c.evaluate(&val(&[(1, true)])).unwrap());
    let c =
        parse_circuit("g1 VAR\ng2 VAR\ng3 VAR\ng4 AND g1 g2\ng5 NOT g3\ng6 OR g4 g5\nOUTPUT g6\n")
            .unwrap();
    assert!(c
        .evaluate(&val(&[(1, false), (2, true), (3, false)]))
        .unwrap());
    assert!(matches!(
        c.evaluate(&val(&[(1, false)])),
        Err(Error::Input(_))
    ));
}

#[test]
fn circuit_format_errors() {
    assert!(matches!(
        parse_circuit("g1 VAR\ng2 NOT g1 g1\nOUTPUT g2"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_circuit("g1 VAR\n"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_circuit("g1 AND g2\ng2 AND g1\nOUTPUT g1"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_circuit("g1 VAR\nOUTPUT g9"),
        Err(Error::Parse { .. })
    ));
    let c = parse_circuit("# comment\ng2 AND g1\ng1 VAR # trailing\nOUTPUT g2\n").unwrap();
    assert_eq!(c.len(), 2);
}

#[test]
fn dimacs_format() {
    let f = parse_dimacs("c x\np cnf 3 2\n1 2 0\n2 3 0\n").unwrap();
    assert_eq!(f.kind(), ClauseKind::Cnf);
    assert_eq!(f.clauses(), &[vec![1, 2], vec![2, 3]]);
    let g = parse_dimacs("p dnf 2 1\n1 2 0\n").unwrap();
    assert_eq!(g.kind(), ClauseKind::Dnf);
    assert!(matches!(
        parse_dimacs("p cnf 2 1\n1 -2 0\n"),
        Err(Error::Parse { .. })
    ));
    let back = parse_dimacs(&write_dimacs(&f, &["seed 0".into()])).unwrap();
    assert_eq!(back, f);
}

#[test]
fn primal_graph_examples() {
    let one = parse_circuit("g1 VAR\nOUTPUT g1\n").unwrap().primal_graph();
    assert_eq!(one.edges(), &[vec![0]]);
    let not = parse_circuit("g1 VAR\ng2 NOT g1\nOUTPUT g2\n")
        .unwrap()
        .primal_graph();
    assert_eq!(not.edges(), &[vec![0, 1]]);
    let and = parse_circuit("g1 VAR\ng2 VAR\ng3 AND g1 g2\nOUTPUT g3\n")
        .unwrap()
        .primal_graph();
    let mut e = and.edges().to_vec();
    e.sort();
    assert_eq!(e, vec![vec![0, 2], vec![1, 2]]);
}

#[test]
fn minimize_examples() {
    let k = ClauseKind::Cnf;
    let f = ClauseForm::unminimized(k, vec![1, 2], vec![vec![1], vec![1, 2]]).unwrap();
    assert_eq!(f.minimize().unwrap().clauses(), &[vec![1]]);
    let f = ClauseForm::unminimized(k, vec![1, 2, 3], vec![vec![1, 2], vec![2, 3]]).unwrap();
    assert_eq!(f.minimize().unwrap().clauses(), f.clauses());
    let d = ClauseForm::unminimized(
        ClauseKind::Dnf,
        vec![1, 2, 3],
        vec![vec![1, 2], vec![1, 2, 3], vec![3]],
    )
    .unwrap();
    assert_eq!(d.minimize().unwrap().clauses(), &[vec![1, 2], vec![3]]);
    let bad = ClauseForm::unminimized(k, vec![1], vec![vec![], vec![1]]).unwrap();
    assert!(matches!(bad.minimize(), Err(Error::Input(_))));
}

#[test]
fn partial_assign_examples() {
    // SCOV_2: x1 = 1, x2 = 2, y1 = 3, y2 = 4.
    let s = gen_scov(2).unwrap();
    let r = s
        .partial_assign(&val(&[(1, true)]))
        .unwrap()
        .into_value()
        .unwrap();
    assert_eq!(r.clauses(), &[vec![2, 4]]);
    let t = gen_sint(2).unwrap();
    assert_eq!(
        t.partial_assign(&val(&[(1, false), (2, false)])).unwrap(),
        MaybeConst::Const(false)
    );
    let f = cnf(&[&[1, 2], &[2, 3]]);
    let r = f
        .partial_assign(&val(&[(2, false)]))
        .unwrap()
        .into_value()
        .unwrap();
    assert_eq!(r.clauses(), &[vec![1], vec![3]]);
    assert_eq!(r.variables(), &[1, 3]);
}

#[test]
fn to_circuit_examples() {
    let c = gen_scov(1).unwrap().to_circuit();
    assert_eq!(c.len(), 4);
    assert_eq!(brute_force_models(&c, false).unwrap().count, 3);
    let d = gen_sint(1).unwrap().to_circuit();
    assert_eq!(d.len(), 4);
    assert_eq!(d.gate(d.output()).kind, GateKind::Or);
    assert_eq!(brute_force_models(&d, false).unwrap().count, 1);
    let x = cnf(&[&[1]]).to_circuit();
    assert_eq!(
        brute_force_models(&x, true).unwrap().models,
        Some(vec![vec![1]])
    );
}

#[test]
fn brute_force_examples() {
    assert_eq!(
        brute_force_models(&gen_scov(2).unwrap(), false)
            .unwrap()
            .count,
        9
    );
    assert_eq!(
        brute_force_models(&gen_sint(2).unwrap(), false)
            .unwrap()
            .count,
        7
    );
    let one = parse_circuit("g1 AND\nOUTPUT g1\n").unwrap();
    assert_eq!(brute_force_models(&one, false).unwrap().count, 1);
    let big = gen_scov(13).unwrap();
    assert!(matches!(
        brute_force_models(&big, false),
        Err(Error::Capacity { .. })
    ));
    let m = brute_force_models(&gen_scov(1).unwrap(), true)
        .unwrap()
        .models
        .unwrap();
    // Lexicographic over (x1, y1) bit vectors: 01, 10, 11.
    assert_eq!(m, vec![vec![2], vec![1], vec![1, 2]]);
}

#[test]
fn arity_degree_examples() {
    assert_eq!(gen_scov(3).unwrap().hypergraph().arity_degree(), (2, 1));
    let h = Hypergraph::new(vec![1, 2, 3], vec![vec![1, 2], vec![2, 3], vec![1, 2, 3]]).unwrap();
    assert_eq!(h.arity_degree(), (3, 3));
    assert_eq!(
        Hypergraph::new(vec![1], vec![vec![1]])
            .unwrap()
            .arity_degree(),
        (1, 1)
    );
}

#[test]
fn wmc_oracle() {
    let f = gen_sint(2).unwrap();
    let pi = Probabilities::uniform(f.variables(), 0.5).unwrap();
    assert!((brute_force_wmc(&f, &pi).unwrap() - 0.4375).abs() < 1e-15);
    assert!(Probabilities::uniform(&[1], 1.5).is_err());
}

fn circuit_strategy() -> impl Strategy<Value = Circuit> {
    (any::<u64>(), 1usize..10, 1usize..24, 1usize..6, 1usize..5).prop_map(
        |(seed, vars, internal, window, fanin)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_circuit(
                &mut rng,
                CircuitShape {
                    vars,
                    internal,
                    window,
                    max_fanin: fanin,
                },
            )
        },
    )
}

fn form_strategy() -> impl Strategy<Value = ClauseForm> {
    (
        any::<u64>(),
        any::<bool>(),
        2usize..=12,
        1usize..10,
        1usize..4,
        1usize..4,
    )
        .prop_filter_map("no clause fits", |(seed, cnf, vars, m, a, d)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let kind = if cnf {
                ClauseKind::Cnf
            } else {
                ClauseKind::Dnf
            };
            random_monotone(&mut rng, kind, vars, m, a, d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn evaluate_matches_recursion(c in circuit_strategy()) {
        let vars = c.variables();
        for mask in 0..1u64 << vars.len() {
            let v = Valuation::from_mask(&vars, mask);
            prop_assert_eq!(c.evaluate(&v).unwrap(), eval_rec(&c, c.output(), &v));
        }
    }

    #[test]
    fn circuit_text_round_trip(c in circuit_strategy()) {
        let back = parse_circuit(&write_circuit(&c)).unwrap();
        prop_assert!(equivalent(&c, &back).unwrap());
        prop_assert_eq!(back.len(), c.len());
    }

    #[test]
    fn partial_assign_counts_extensions(f in form_strategy(), mask in any::<u64>(), pick in any::<u64>()) {
        let vars = f.variables().to_vec();
        let fixed: Vec<Var> = vars.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &v)| v).collect();
        let nu = Valuation::from_mask(&fixed, mask);
        let rest: Vec<Var> = vars.iter().copied().filter(|v| !fixed.contains(v)).collect();
        // Models of f extending ν, counted over the free variables.
        let tt = truth_table(&f).unwrap();
        let want = (0..1u64 << vars.len())
            .filter(|&m| tt.get(m) && fixed.iter().all(|x| (m >> vars.binary_search(x).unwrap() & 1 == 1) == nu.get(*x).unwrap()))
            .count() as u64;
        let got = match f.partial_assign(&nu).unwrap() {
            MaybeConst::Const(true) => 1u64 << rest.len(),
            MaybeConst::Const(false) => 0,
            MaybeConst::Value(g) => {
                prop_assert!(g.is_minimized());
                let n = brute_force_models(&g, false).unwrap().count;
                n << (rest.len() - g.variables().len())
            }
        };
        prop_assert_eq!(got, want);
    }

    #[test]
    fn to_circuit_preserves_truth_table(f in form_strategy()) {
        prop_assert!(equivalent(&f, &f.to_circuit()).unwrap());
    }

    #[test]
    fn minimize_idempotent_and_sound(f in form_strategy(), extra in prop::collection::vec(prop::collection::vec(1usize..=12, 1..4), 0..4)) {
        let vars = f.variables().to_vec();
        let mut clauses = f.clauses().to_vec();
        clauses.extend(extra.into_iter().map(|c| c.into_iter().filter(|v| vars.contains(v)).collect::<Vec<_>>()).filter(|c: &Vec<usize>| !c.is_empty()));
        let raw = ClauseForm::unminimized(f.kind(), vars, clauses).unwrap();
        let m = raw.minimize().unwrap();
        prop_assert!(m.is_minimized());
        prop_assert_eq!(&m.minimize().unwrap(), &m);
        prop_assert!(equivalent(&raw, &m).unwrap());
    }
}
