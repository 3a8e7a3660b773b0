use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthkc::decomp::pace::{read_td, write_td};
use widthkc::decomp::*;
use widthkc::logic::random::random_hypergraph;
use widthkc::logic::Hypergraph;
use widthkc::lowerbounds::{gen_scov, interleaved_order, x_first_order};
use widthkc::targets::VTree;

fn scov2() -> Hypergraph {
    // x1 = 1, x2 = 2, y1 = 3, y2 = 4
    gen_scov(2).unwrap().hypergraph()
}

fn triangle() -> Hypergraph {
    Hypergraph::new(vec![1, 2, 3], vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap()
}

fn single() -> Hypergraph {
    Hypergraph::new(vec![7], vec![vec![7]]).unwrap()
}

#[test]
fn validate_examples() {
    let h = scov2();
    let ok = TreeDecomp::path(vec![vec![1, 3], vec![2, 4]]).unwrap();
    assert_eq!(ok.validate(&h), Ok(1));
    let split = TreeDecomp::path(vec![vec![1], vec![3], vec![2, 4]]).unwrap();
    assert_eq!(
        split.validate(&h),
        Err(Violation::Occurrence { edge: vec![1, 3] })
    );
    let apart = TreeDecomp::path(vec![vec![1, 3], vec![2, 4], vec![1]]).unwrap();
    assert_eq!(
        apart.validate(&h),
        Err(Violation::Connectedness { vertex: 1 })
    );
    let stray = TreeDecomp::path(vec![vec![1, 3], vec![2, 4, 9]]).unwrap();
    assert!(matches!(
        stray.validate(&h),
        Err(Violation::UnknownVertex { vertex: 9, .. })
    ));
}

#[test]
fn heuristic_examples() {
    for n in 1..=6 {
        assert_eq!(
            heuristic_tree_decomposition(&gen_scov(n).unwrap().hypergraph()).width(),
            1
        );
        assert_eq!(
            heuristic_path_decomposition(&gen_scov(n).unwrap().hypergraph()).width(),
            1
        );
    }
    assert_eq!(heuristic_tree_decomposition(&triangle()).width(), 2);
    assert_eq!(heuristic_tree_decomposition(&single()).width(), 0);
}

#[test]
fn exact_widths() {
    assert_eq!(exact_treewidth(&triangle()).unwrap(), 2);
    assert_eq!(exact_pathwidth(&scov2()).unwrap(), 1);
    // A 4-cycle: treewidth 2, pathwidth 2.
    let c4 = Hypergraph::new(
        vec![1, 2, 3, 4],
        vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
    )
    .unwrap();
    assert_eq!(exact_treewidth(&c4).unwrap(), 2);
    assert_eq!(exact_pathwidth(&c4).unwrap(), 2);
    // A star with three subdivided arms has treewidth 1 and pathwidth 2.
    let spider = Hypergraph::new(
        (0..7).collect(),
        vec![
            vec![0, 1],
            vec![1, 2],
            vec![0, 3],
            vec![3, 4],
            vec![0, 5],
            vec![5, 6],
        ],
    )
    .unwrap();
    assert_eq!(exact_treewidth(&spider).unwrap(), 1);
    assert_eq!(exact_pathwidth(&spider).unwrap(), 2);
}

#[test]
fn friendly_examples() {
    let h = triangle();
    let t = heuristic_tree_decomposition(&h);
    let f = make_friendly(&t, 2);
    assert!(f.check().is_ok());
    assert_eq!(f.width(), t.width());
    assert_eq!(f.td().validate(&h), Ok(2));
    let again = make_friendly(f.td(), 2);
    assert!(again.check().is_ok());
    assert_eq!(again.width(), f.width());
    // Width 3: K4.
    let k4 = Hypergraph::new(
        vec![1, 2, 3, 4],
        (1..=4)
            .flat_map(|a| (a + 1..=4).map(move |b| vec![a, b]))
            .collect(),
    )
    .unwrap();
    let f = make_friendly(&heuristic_tree_decomposition(&k4), 4);
    assert_eq!(f.width(), 3);
    assert!(f.responsible().len() == 4);
}

#[test]
fn friendly_path_is_right_linear() {
    let h = gen_scov(3).unwrap().hypergraph();
    let p = heuristic_path_decomposition(&h);
    let f = make_friendly_path(&p, 1).unwrap();
    assert!(f.is_right_linear());
    assert!(f.check().is_ok());
    assert!(f.width() <= p.width() + 1);
    assert!(f.td().validate(&h).is_ok());
    assert!(make_friendly_path(&heuristic_tree_decomposition(&triangle()), 1).is_ok());
}

#[test]
fn split_profile_examples() {
    let h = scov2();
    assert_eq!(
        split_profile_order(&interleaved_order(2), &h)
            .unwrap()
            .width,
        1
    );
    let p = split_profile_order(&x_first_order(2), &h).unwrap();
    assert_eq!(p.width, 2);
    assert!(p.splits.last().unwrap().is_empty());
    assert_eq!(split_profile_order(&[7], &single()).unwrap().width, 0);
    assert!(split_profile_order(&[1, 2, 3], &h).is_err());

    let rl = VTree::right_linear(&interleaved_order(2)).unwrap();
    assert_eq!(split_profile_vtree(&rl, &h).unwrap().width, 1);
    let bal = VTree::balanced(&[1, 2, 3, 4]).unwrap();
    assert_eq!(split_profile_vtree(&bal, &h).unwrap().width, 2);
    let e = Hypergraph::new(vec![1, 2], vec![vec![1, 2]]).unwrap();
    assert_eq!(
        split_profile_vtree(&VTree::balanced(&[1, 2]).unwrap(), &e)
            .unwrap()
            .width,
        1
    );
}

#[test]
fn exact_splitwidth_examples() {
    let (w, _) = exact_splitwidth(&gen_scov(3).unwrap().hypergraph(), SplitMode::Path).unwrap();
    assert_eq!(w, 1);
    assert_eq!(exact_splitwidth(&triangle(), SplitMode::Path).unwrap().0, 2);
    assert_eq!(exact_splitwidth(&single(), SplitMode::Path).unwrap().0, 0);
    assert_eq!(exact_splitwidth(&single(), SplitMode::Tree).unwrap().0, 0);
    let big = Hypergraph::new((0..13).collect(), vec![vec![0, 1]]).unwrap();
    assert!(matches!(
        exact_splitwidth(&big, SplitMode::Path),
        Err(widthkc::Error::Capacity { .. })
    ));
}

#[test]
fn decompositions_from_witnesses() {
    let h = scov2();
    let pd = path_decomp_from_order(&interleaved_order(2), &h).unwrap();
    assert_eq!(pd.width(), 1);
    let t = path_decomp_from_order(&[1, 2, 3], &triangle()).unwrap();
    assert!(t.width() <= 4);
    let bal = VTree::balanced(&[1, 2, 3, 4]).unwrap();
    let td = tree_decomp_from_vtree(&bal, &h).unwrap();
    assert!(td.width() <= 12);
    assert!(td.validate(&h).is_ok());
    let e = Hypergraph::new(vec![1, 2], vec![vec![1, 2]]).unwrap();
    assert!(
        tree_decomp_from_vtree(&VTree::balanced(&[1, 2]).unwrap(), &e)
            .unwrap()
            .width()
            <= 3 * 2
    );
}

#[test]
fn pace_round_trip() {
    let h = triangle();
    let t = heuristic_tree_decomposition(&h);
    let text = write_td(&t, 3, |v| v);
    assert!(text.starts_with("s td "));
    let back = read_td(&text, Some).unwrap();
    assert_eq!(back.validate(&h), Ok(2));
    let unrooted = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
    let p = read_td(unrooted, Some).unwrap();
    assert_eq!(p.root(), 0);
    assert!(read_td("s td 2 2 3\nb 1 1 2\n", Some).is_err());
}

fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (any::<u64>(), 1usize..=10, 1usize..=12).prop_map(|(seed, n, m)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_hypergraph(&mut rng, n, m, 3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_bound_for_random_orders(h in hypergraph_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = h.arity_degree().0;
        for _ in 0..10 {
            let mut order = h.vertices().to_vec();
            rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
            let psw = split_profile_order(&order, &h).unwrap().width;
            let pd = path_decomp_from_order(&order, &h).unwrap();
            prop_assert!(pd.validate(&h).is_ok());
            prop_assert!(pd.width() <= a * psw, "{} > {a}·{psw}", pd.width());
        }
    }

    #[test]
    fn vtree_bound_for_random_vtrees(h in hypergraph_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = h.arity_degree().0;
        for _ in 0..5 {
            let vt = VTree::random(&mut rng, h.vertices()).unwrap();
            let tsw = split_profile_vtree(&vt, &h).unwrap().width;
            let td = tree_decomp_from_vtree(&vt, &h).unwrap();
            prop_assert!(td.validate(&h).is_ok());
            prop_assert!(td.width() <= 3 * a * tsw);
        }
    }

    #[test]
    fn friendly_keeps_width(h in hypergraph_strategy(), pick in any::<prop::sample::Index>()) {
        let v = h.vertices()[pick.index(h.num_vertices())];
        let t = heuristic_tree_decomposition(&h);
        let f = make_friendly(&t, v);
        prop_assert!(f.check().is_ok());
        prop_assert_eq!(f.td().validate(&h), Ok(t.width()));
        prop_assert_eq!(f.root_vertex(), v);
        let p = heuristic_path_decomposition(&h);
        prop_assert!(p.validate(&h).is_ok());
        let fp = make_friendly_path(&p, v).unwrap();
        prop_assert!(fp.check().is_ok() && fp.is_right_linear());
        prop_assert!(fp.td().validate(&h).unwrap() <= p.width() + 1);
    }

    #[test]
    fn heuristics_bound_exact(h in hypergraph_strategy()) {
        let tw = exact_treewidth(&h).unwrap();
        let pw = exact_pathwidth(&h).unwrap();
        prop_assert!(tw <= pw);
        prop_assert!(heuristic_tree_decomposition(&h).width() >= tw);
        prop_assert!(heuristic_path_decomposition(&h).width() >= pw);
    }

    /// Every order is a right-linear v-tree whose internal nodes see the order's
    /// splits; its leaves add the edges at each vertex, so the tree measure is
    /// bounded by the path measure or the largest leaf split.
    #[test]
    fn splitwidth_path_vs_tree(h in hypergraph_strategy()) {
        let (psw, w) = exact_splitwidth(&h, SplitMode::Path).unwrap();
        let (tsw, vt) = exact_splitwidth(&h, SplitMode::Tree).unwrap();
        let SplitWitness::Order(order) = w else { panic!() };
        let SplitWitness::VTree(vt) = vt else { panic!() };
        prop_assert_eq!(split_profile_order(&order, &h).unwrap().width, psw);
        prop_assert_eq!(split_profile_vtree(&vt, &h).unwrap().width, tsw);
        let leaf_split = h.vertices().iter().map(|v| h.edges().iter().filter(|e| e.len() > 1 && e.contains(v)).count()).max().unwrap();
        prop_assert!(tsw <= psw.max(leaf_split));
        let rl = VTree::right_linear(&order).unwrap();
        prop_assert!(split_profile_vtree(&rl, &h).unwrap().width <= psw.max(leaf_split));
    }
}

#[test]
fn psw_below_tsw_happens() {
    // A star: an order can keep the center in the middle and split two edges,
    // but the center's leaf in every v-tree splits all three.
    let star = Hypergraph::new(vec![0, 1, 2, 3], vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
    let psw = exact_splitwidth(&star, SplitMode::Path).unwrap().0;
    let tsw = exact_splitwidth(&star, SplitMode::Tree).unwrap().0;
    assert_eq!((psw, tsw), (2, 3));
}
