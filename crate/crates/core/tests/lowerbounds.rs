use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use widthkc::logic::random::random_monotone;
use widthkc::logic::{brute_force_models, ClauseForm, ClauseKind, Hypergraph};
use widthkc::lowerbounds::*;
use widthkc::targets::{build_canonical_obdd, VTree};

#[test]
fn families_have_expected_shape() {
    let s1 = gen_scov(1).unwrap();
    assert_eq!(s1.kind(), ClauseKind::Cnf);
    assert_eq!(s1.clauses(), &[vec![1, 2]]);
    let s2 = gen_sint(2).unwrap();
    assert_eq!(brute_force_models(&s2, false).unwrap().count, 7);
    let s5 = gen_scov(5).unwrap();
    assert_eq!((s5.arity(), s5.degree()), (2, 1));
    assert!(gen_scov(0).is_err());
}

#[test]
fn cuts_of_orders_and_vtrees() {
    // x1 = 1, x2 = 2, y1 = 3, y2 = 4
    assert_eq!(find_cut_order(&[1, 2, 3, 4], &[1, 2], &[3, 4]), Some(3));
    assert_eq!(find_cut_order(&[1, 3, 2, 4], &[1, 2], &[3, 4]), None);
    let vt = VTree::balanced(&[1, 2, 3, 4]).unwrap();
    let n = find_cut_vtree(&vt, &[1, 2], &[3, 4]).unwrap();
    assert_eq!(Some(n), vt.children(vt.root()).map(|c| c[0]));
}

#[test]
fn exclusion_graph_examples() {
    let scov = gen_scov(4).unwrap().hypergraph();
    assert_eq!(exclusion_graph(&scov).edge_count(), 0);
    let two = Hypergraph::new(vec![1, 2, 3], vec![vec![1, 2], vec![2, 3]]).unwrap();
    let g = exclusion_graph(&two);
    assert_eq!(g.edge_count(), 1);
    let path = Hypergraph::new(
        vec![1, 2, 3, 4, 5],
        vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]],
    )
    .unwrap();
    let g = exclusion_graph(&path);
    assert!(g.max_degree() <= 15);
    assert_eq!(g.max_degree(), 3);
}

#[test]
fn greedy_independent_set_bounds() {
    let k5: Vec<Vec<usize>> = (0..5)
        .map(|v| (0..5).filter(|&u| u != v).collect())
        .collect();
    assert_eq!(greedy_independent_set(&k5, &[0, 1, 2, 3, 4]), vec![0]);
    let empty: Vec<Vec<usize>> = vec![Vec::new(); 4];
    assert_eq!(greedy_independent_set(&empty, &[3, 1]), vec![1, 3]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(1..20);
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.3) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        let sub: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        let s = greedy_independent_set(&adj, &sub);
        let deg = adj.iter().map(Vec::len).max().unwrap();
        assert!(s.len() >= sub.len() / (deg + 1));
        for &a in &s {
            assert!(sub.contains(&a));
            assert!(s.iter().all(|b| !adj[a].contains(b)));
        }
    }
}

#[test]
fn embedding_of_scov4_and_sint4() {
    let f = gen_scov(4).unwrap();
    let e = extract_embedding(&f, &[1, 2, 3, 4], &[5, 6, 7, 8], &[0, 1, 2, 3]).unwrap();
    assert_eq!(e.n, 1);
    assert_eq!((e.x.clone(), e.y.clone()), (vec![1], vec![5]));
    assert_eq!(e.result.clauses(), &[vec![1, 5]]);
    let g = gen_sint(4).unwrap();
    let e = extract_embedding(&g, &[1, 2, 3, 4], &[5, 6, 7, 8], &[0, 1, 2, 3]).unwrap();
    assert_eq!(e.result.kind(), ClauseKind::Dnf);
    assert_eq!(e.result.clauses(), &[vec![1, 5]]);
    assert!(matches!(
        extract_embedding(&f, &[1, 2, 3, 4], &[5, 6, 7, 8], &[0, 1, 2]),
        Err(widthkc::Error::EmptyEmbedding(3))
    ));
}

#[test]
fn embedding_drops_extra_literals() {
    // Clauses {1,2,3} and {4,5,6}: a = 3, d = 1, so 9 split clauses give n = 1.
    let clauses: Vec<Vec<usize>> = (0..9)
        .map(|i| vec![3 * i + 1, 3 * i + 2, 3 * i + 3])
        .collect();
    let f = ClauseForm::new(ClauseKind::Cnf, (1..=27).collect(), clauses).unwrap();
    let xs: Vec<usize> = (0..9).map(|i| 3 * i + 1).collect();
    let ys: Vec<usize> = (0..9).map(|i| 3 * i + 2).collect();
    let e = extract_embedding(&f, &xs, &ys, &(0..9).collect::<Vec<_>>()).unwrap();
    assert_eq!(e.n, 1);
    assert_eq!(e.nu.get(3), Some(false));
    assert_eq!(e.nu.get(4), Some(true));
    assert!(is_matching_shape(&e.result, ClauseKind::Cnf, &e.x, &e.y));
}

#[test]
fn canonical_scov2_cover_after_x_block() {
    let f = gen_scov(2).unwrap();
    let o = build_canonical_obdd(&f, &x_first_order(2)).unwrap();
    let cov = rectangles_from_nobdd(&o, 3).unwrap();
    assert_eq!(cov.len(), 4);
    let total: u128 = cov.rects.iter().map(|r| r.count()).sum();
    assert_eq!(total, 9);
    let rep = cov.check(&f).unwrap();
    assert!(rep.covers && rep.disjoint && cov.disjoint);
    assert!(fooling_check_scov(&cov, 2).unwrap().passes());
}

#[test]
fn fabricated_single_rectangle_fails() {
    let f = gen_scov(2).unwrap();
    let o = build_canonical_obdd(&f, &x_first_order(2)).unwrap();
    let mut cov = rectangles_from_nobdd(&o, 3).unwrap();
    let mut all = cov.rects[0].clone();
    all.rx = (0..4).collect();
    all.ry = (0..4).collect();
    cov.rects = vec![all];
    let rep = fooling_check_scov(&cov, 2).unwrap();
    assert!(!rep.passes());
    assert!(!rep.violations.is_empty());
}

#[test]
fn scov_and_sint_bounds_small_n() {
    for n in 1..=5 {
        let f = gen_scov(n).unwrap();
        let o = build_canonical_obdd(&f, &x_first_order(n)).unwrap();
        assert_eq!(o.raw_width(), 1 << n);
        let cov = rectangles_from_nobdd(&o, n + 1).unwrap();
        let rep = fooling_check_scov(&cov, n).unwrap();
        assert!(rep.passes(), "{rep:?}");
        let g = gen_sint(n).unwrap();
        let o = build_canonical_obdd(&g, &x_first_order(n)).unwrap();
        let cov = rectangles_from_nobdd(&o, n + 1).unwrap();
        let rep = disjoint_check_sint(&cov, n).unwrap();
        assert!(rep.passes(), "{rep:?}");
    }
}

#[test]
fn small_fraction_constants() {
    let f = gen_scov(2).unwrap();
    let o = build_canonical_obdd(&f, &x_first_order(2)).unwrap();
    let cov = rectangles_from_nobdd(&o, 3).unwrap();
    let rep = small_fraction_check(&f, &cov.rects[0], Some(&[0, 1, 0, 1])).unwrap();
    assert_eq!(rep.n, 1);
    assert_eq!(
        rep.alpha,
        num_rational::BigRational::new(1.into(), 16.into())
    );
    assert!(rep.implies);
    assert_eq!(rep.holds, Some(true));
    assert_eq!(width_floor(WidthKind::Path, 0, 2, 2), 0.0);
    // a = 2, d = 2: a path 1-2-3 of binary clauses.
    let g = ClauseForm::new(ClauseKind::Cnf, vec![1, 2, 3], vec![vec![1, 2], vec![2, 3]]).unwrap();
    let o = build_canonical_obdd(&g, &[1, 2, 3]).unwrap();
    let cov = rectangles_from_nobdd(&o, 2).unwrap();
    let rep = small_fraction_check(&g, &cov.rects[0], None).unwrap();
    assert_eq!((rep.arity, rep.degree), (2, 2));
    assert_eq!(
        rep.alpha,
        num_rational::BigRational::new(1.into(), 256.into())
    );
}

#[test]
fn random_nfbdd_covers_imply_and_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let Some(f) = random_monotone(&mut rng, ClauseKind::Cnf, 8, 6, 3, 2) else {
            continue;
        };
        let o = random_complete_nfbdd(&mut rng, &f, 0.3).unwrap();
        assert!(o.is_free() && o.is_complete());
        let mut sel = max_split_selector(f.clauses().to_vec());
        let cov = rectangles_at_gates_unstructured(Unstructured::Diagram(&o), &mut sel).unwrap();
        let rep = cov.check(&f).unwrap();
        assert!(rep.covers && rep.sound, "{rep:?}");
        for r in &cov.rects {
            let fr = small_fraction_check(&f, r, None).unwrap();
            assert_eq!(fr.holds, Some(true));
        }
    }
}

#[test]
fn certification_examples() {
    let f = gen_scov(1).unwrap();
    let c = certify_width(
        "scov1",
        &f,
        WidthEvidence {
            kind: WidthKind::Path,
            k: 1,
            k_exact: true,
            observed: 2,
            compiled_k: Some(2),
        },
    );
    assert!(c.floor <= 1.0);
    assert_eq!(c.verdict, Verdict::Consistent);
    assert_eq!(
        c.to_csv_row().split(',').count(),
        CSV_HEADER.split(',').count()
    );
    let c = certify_width(
        "scov1",
        &f,
        WidthEvidence {
            kind: WidthKind::Tree,
            k: 9,
            k_exact: false,
            observed: 1,
            compiled_k: None,
        },
    );
    assert_eq!(c.verdict, Verdict::FloorUncertified);
}
