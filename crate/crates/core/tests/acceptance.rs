//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line; the process fails if any criterion fails.

use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use widthkc::compiler::{
    compile_auto, verify_nbdd, verify_nnf, width_ceiling, CompileOptions, Mode, Pipeline, Target,
};
use widthkc::decomp::{
    exact_splitwidth, heuristic_path_decomposition, path_decomp_from_order, tree_decomp_from_vtree,
    SplitMode, SplitWitness,
};
use widthkc::logic::random::{random_circuit, random_hypergraph, random_monotone, CircuitShape};
use widthkc::logic::{
    brute_force_models, brute_force_wmc, equivalent, Circuit, ClauseForm, ClauseKind, MaybeConst,
    Probabilities,
};
use widthkc::lowerbounds::{
    disjoint_check_sint, extract_embedding, fooling_check_scov, gen_scov, gen_sint,
    is_matching_shape, max_split_selector, random_complete_nfbdd, rectangles_at_gates_unstructured,
    rectangles_from_nobdd, rectangles_from_sdnnf, small_fraction_check, x_first_order,
    Unstructured,
};
use widthkc::targets::{
    build_canonical_obdd, count_models, count_nbdd, reduce_extended, wmc, NnfCircuit,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nnf_target(p: &Pipeline) -> &MaybeConst<NnfCircuit> {
    match &p.target {
        Target::Sdnnf(d) => d,
        Target::Obdd(_) => panic!("tree mode produced a diagram"),
    }
}

/// The criterion 1 suite: 200 random circuits plus SCOV/SINT circuits, n ≤ 7.
struct Suite {
    circuits: Vec<(String, Circuit)>,
    compiled: Vec<Pipeline>,
}

fn build_suite() -> Result<Suite, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut circuits = Vec::new();
    for i in 0..200 {
        let vars = rng.gen_range(2..=14);
        let internal = rng.gen_range(1..=40 - vars);
        let shape = CircuitShape {
            vars,
            internal,
            window: rng.gen_range(2..=5),
            max_fanin: rng.gen_range(1..=4),
        };
        circuits.push((format!("random#{i}"), random_circuit(&mut rng, shape)));
    }
    for n in 1..=7 {
        circuits.push((format!("scov{n}"), gen_scov(n).unwrap().to_circuit()));
        circuits.push((format!("sint{n}"), gen_sint(n).unwrap().to_circuit()));
    }
    let opts = CompileOptions::default();
    let mut compiled = Vec::new();
    for (name, c) in &circuits {
        compiled
            .push(compile_auto(c, Mode::Tree, None, &opts).map_err(|e| format!("{name}: {e}"))?);
    }
    Ok(Suite { circuits, compiled })
}

fn equivalence(s: &Suite) -> Outcome {
    for ((name, c), p) in s.circuits.iter().zip(&s.compiled) {
        let ext = p.extended.as_ref().unwrap();
        ensure(equivalent(c, ext).map_err(|e| e.to_string())?, || {
            format!("{name}: extended circuit differs")
        })?;
        let v = verify_nnf(c, nnf_target(p)).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("{name}: {v:?}"))?;
    }
    Ok(format!(
        "{} circuits match their truth tables",
        s.circuits.len()
    ))
}

fn width_ceiling_check(s: &Suite) -> Outcome {
    let mut tightest = 0f64;
    for ((name, _), p) in s.circuits.iter().zip(&s.compiled) {
        let k = p.friendly.width();
        let w = p.extended.as_ref().unwrap().raw_width().unwrap_or(0);
        ensure(w as u128 <= width_ceiling(k), || {
            format!("{name}: width {w} > 2^(2({k}+1))")
        })?;
        tightest = tightest.max(w as f64 / width_ceiling(k) as f64);
    }
    Ok(format!("max width/ceiling ratio {tightest:.4}"))
}

fn upath_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let opts = CompileOptions::default();
    let (mut done, mut tries) = (0, 0);
    while done < 100 {
        tries += 1;
        if tries > 10_000 {
            return Err(format!(
                "only {done} circuits with a width ≤ 3 path decomposition"
            ));
        }
        let vars = rng.gen_range(2..=12);
        let shape = CircuitShape {
            vars,
            internal: rng.gen_range(1..=28),
            window: rng.gen_range(2..=3),
            max_fanin: rng.gen_range(1..=3),
        };
        let c = random_circuit(&mut rng, shape);
        let pd = heuristic_path_decomposition(&c.primal_graph());
        if pd.width() > 3 {
            continue;
        }
        let p = compile_auto(&c, Mode::Path, Some(pd), &opts).map_err(|e| e.to_string())?;
        let Target::Obdd(o) = &p.target else {
            return Err("path mode produced a circuit".into());
        };
        let v = verify_nbdd(&c, o).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("circuit {done}: {v:?}"))?;
        let k = p.friendly.width();
        ensure(v.width as u128 <= width_ceiling(k), || {
            format!("circuit {done}: width {} over 2^(2({k}+1))", v.width)
        })?;
        if let MaybeConst::Value(o) = o {
            let n = count_nbdd(o).map_err(|e| e.to_string())?;
            ensure(
                n == brute_force_models(&c, false).unwrap().count.into(),
                || format!("circuit {done}: count"),
            )?;
        }
        done += 1;
    }
    Ok(format!(
        "100 complete unambiguous equivalent uOBDDs ({tries} circuits drawn)"
    ))
}

fn counting(s: &Suite) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut worst = 0f64;
    for ((name, c), p) in s.circuits.iter().zip(&s.compiled) {
        let want = brute_force_models(c, false).unwrap().count;
        let got = match nnf_target(p) {
            MaybeConst::Value(d) => count_models(d)
                .map_err(|e| e.to_string())?
                .to_u64()
                .unwrap(),
            MaybeConst::Const(true) => 1u64 << c.num_vars(),
            MaybeConst::Const(false) => 0,
        };
        ensure(got == want, || {
            format!("{name}: count {got}, expected {want}")
        })?;
    }
    let with_circuit: Vec<_> = s
        .circuits
        .iter()
        .zip(&s.compiled)
        .filter_map(|((_, c), p)| nnf_target(p).value().map(|d| (c, d)))
        .collect();
    for i in 0..100 {
        let (c, d) = with_circuit[i % with_circuit.len()];
        let pi = Probabilities::new(
            c.variables()
                .into_iter()
                .map(|v| (v, rng.gen::<f64>()))
                .collect(),
        )
        .unwrap();
        let got = wmc(d, &pi).map_err(|e| e.to_string())?;
        let want = brute_force_wmc(c, &pi).unwrap();
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-9, || {
            format!("wmc #{i}: {got} vs {want}")
        })?;
    }
    Ok(format!(
        "{} exact counts, 100 WMC values within {worst:.2e}",
        s.circuits.len()
    ))
}

fn reduction(s: &Suite) -> Outcome {
    let mut c_max = 0f64;
    for ((name, c), p) in s.circuits.iter().zip(&s.compiled) {
        let ext = p.extended.as_ref().unwrap();
        let red = reduce_extended(ext).map_err(|e| format!("{name}: {e}"))?;
        let v = verify_nnf(c, &red).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("{name}: reduced {v:?}"))?;
        if let MaybeConst::Value(d) = &red {
            let (w, we) = (d.raw_width().unwrap_or(0), ext.raw_width().unwrap_or(0));
            ensure(w <= we, || format!("{name}: width grew {we} -> {w}"))?;
            let vt = d.vtree().unwrap();
            ensure(vt.is_reduction_of(ext.vtree().unwrap()), || {
                format!("{name}: v-tree is not a reduction")
            })?;
            let n = c.num_vars().max(1) as f64;
            let cc = d.size() as f64 / (n * (w.max(1) * w.max(1)) as f64);
            if std::env::var_os("ACCEPTANCE_TRACE").is_some() && cc > 3.0 {
                eprintln!("{name}: size {} vars {n} width {w} C {cc:.3}", d.size());
            }
            c_max = c_max.max(cc);
        }
    }
    ensure(c_max <= 4.0, || format!("measured C = {c_max:.3} > 4"))?;
    Ok(format!(
        "equivalent, width kept, reductions of the v-tree; C = {c_max:.3}"
    ))
}

fn obdd_lower_bound() -> Outcome {
    for n in 2..=8 {
        let f = gen_scov(n).unwrap();
        let o = build_canonical_obdd(&f, &x_first_order(n)).map_err(|e| e.to_string())?;
        ensure(o.raw_width() == 1 << n, || {
            format!("SCOV_{n}: width {}", o.raw_width())
        })?;
        let cov = rectangles_from_nobdd(&o, n + 1).map_err(|e| e.to_string())?;
        let rep = fooling_check_scov(&cov, n).map_err(|e| e.to_string())?;
        ensure(rep.passes(), || format!("SCOV_{n}: {rep:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut covers = 0;
    for n in 1..=6 {
        let g = gen_sint(n).unwrap();
        for t in 0..4 {
            let mut xs: Vec<usize> = (1..=n).collect();
            let mut ys: Vec<usize> = (n + 1..=2 * n).collect();
            if t > 0 {
                xs.shuffle(&mut rng);
                ys.shuffle(&mut rng);
            }
            let order: Vec<usize> = xs.into_iter().chain(ys).collect();
            let o = build_canonical_obdd(&g, &order).map_err(|e| e.to_string())?;
            let cov = rectangles_from_nobdd(&o, n + 1).map_err(|e| e.to_string())?;
            ensure(cov.disjoint, || format!("SINT_{n}: cover is not disjoint"))?;
            let rep = disjoint_check_sint(&cov, n).map_err(|e| e.to_string())?;
            ensure(rep.passes(), || format!("SINT_{n}: {rep:?}"))?;
            covers += 1;
        }
    }
    Ok(format!(
        "SCOV_2..8 widths exactly 2^n with fooling sets; {covers} SINT disjoint covers ≥ 2^n − 1"
    ))
}

fn split_width_lemmas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for i in 0..200 {
        let nv = rng.gen_range(1..=10);
        let ne = rng.gen_range(1..=12);
        let h = random_hypergraph(&mut rng, nv, ne, 3);
        let a = h.arity_degree().0;
        let (psw, w) = exact_splitwidth(&h, SplitMode::Path).map_err(|e| e.to_string())?;
        let SplitWitness::Order(order) = w else {
            return Err("path witness is not an order".into());
        };
        let pd = path_decomp_from_order(&order, &h).map_err(|e| format!("#{i}: {e}"))?;
        ensure(pd.validate(&h).is_ok(), || {
            format!("#{i}: invalid path decomposition")
        })?;
        ensure(pd.width() <= a * psw, || {
            format!("#{i}: pw {} > {a}·{psw}", pd.width())
        })?;
        let (tsw, w) = exact_splitwidth(&h, SplitMode::Tree).map_err(|e| e.to_string())?;
        let SplitWitness::VTree(vt) = w else {
            return Err("tree witness is not a v-tree".into());
        };
        let td = tree_decomp_from_vtree(&vt, &h).map_err(|e| format!("#{i}: {e}"))?;
        ensure(td.validate(&h).is_ok(), || {
            format!("#{i}: invalid tree decomposition")
        })?;
        ensure(td.width() <= 3 * a * tsw, || {
            format!("#{i}: tw {} > 3·{a}·{tsw}", td.width())
        })?;
    }
    Ok("200 hypergraphs, zero violations".into())
}

fn embedding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let (mut done, mut tries) = (0, 0);
    while done < 100 {
        tries += 1;
        if tries > 5_000 {
            return Err(format!("only {done} forms with a nonempty embedding"));
        }
        let kind = if done % 2 == 0 {
            ClauseKind::Cnf
        } else {
            ClauseKind::Dnf
        };
        let (a, d) = (rng.gen_range(2..=3), rng.gen_range(1..=3));
        let vars = rng.gen_range(20..=120);
        let Some(f) = random_monotone(&mut rng, kind, vars, vars, a, d) else {
            continue;
        };
        let (a, d) = (f.arity(), f.degree());
        // Plant a random bipartition; the split clauses are those it cuts.
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for &v in f.variables() {
            if rng.gen_bool(0.5) {
                xs.push(v)
            } else {
                ys.push(v)
            }
        }
        let split: Vec<usize> = (0..f.clauses().len())
            .filter(|&i| {
                let c = &f.clauses()[i];
                c.iter().any(|v| xs.binary_search(v).is_ok())
                    && c.iter().any(|v| ys.binary_search(v).is_ok())
            })
            .collect();
        let want_n = split.len() / (a * a * d * d);
        if want_n == 0 {
            continue;
        }
        let e = extract_embedding(&f, &xs, &ys, &split).map_err(|e| format!("form {done}: {e}"))?;
        ensure(e.n == want_n, || {
            format!("form {done}: n = {}, expected {want_n}", e.n)
        })?;
        ensure(
            e.result.clauses().len() == want_n && is_matching_shape(&e.result, kind, &e.x, &e.y),
            || format!("form {done}: result is not SCOV/SINT_{want_n}"),
        )?;
        let direct = f.partial_assign(&e.nu).map_err(|e| e.to_string())?;
        let MaybeConst::Value(direct) = direct else {
            return Err(format!("form {done}: ν makes the form constant"));
        };
        ensure(
            direct.minimize().map_err(|e| e.to_string())?.clauses() == e.result.clauses(),
            || format!("form {done}: ν(φ) does not minimize to the reported result"),
        )?;
        done += 1;
    }
    Ok(format!(
        "100 embeddings with n = ⌊|K′|/(a²d²)⌋ ({tries} forms drawn)"
    ))
}

fn counting_inequality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let opts = CompileOptions::default();
    let (mut forms, mut rects, mut nontrivial) = (0, 0, 0);
    while forms < 100 {
        let vars = rng.gen_range(4..=14);
        let m = rng.gen_range(2..=vars);
        // Every other form is a matching, where a²d² = 4 lets n reach 1 or more.
        let (a, d) = if forms % 2 == 0 { (3, 3) } else { (2, 1) };
        let Some(f) = random_monotone(&mut rng, ClauseKind::Cnf, vars, m, a, d) else {
            continue;
        };
        let mut covers = Vec::new();
        let o = random_complete_nfbdd(&mut rng, &f, 0.25).map_err(|e| e.to_string())?;
        let mut sel = max_split_selector(f.clauses().to_vec());
        covers.push(
            rectangles_at_gates_unstructured(Unstructured::Diagram(&o), &mut sel)
                .map_err(|e| e.to_string())?,
        );
        let p =
            compile_auto(&f.to_circuit(), Mode::Tree, None, &opts).map_err(|e| e.to_string())?;
        if let MaybeConst::Value(d) = nnf_target(&p) {
            let mut sel = max_split_selector(f.clauses().to_vec());
            covers.push(
                rectangles_at_gates_unstructured(Unstructured::Circuit(d), &mut sel)
                    .map_err(|e| e.to_string())?,
            );
            let vt = d.vtree().unwrap();
            for node in 0..vt.len() {
                if node != vt.root() {
                    covers.push(rectangles_from_sdnnf(d, node).map_err(|e| e.to_string())?);
                }
            }
        }
        for cov in &covers {
            let rep = cov.check(&f).map_err(|e| e.to_string())?;
            ensure(rep.sound, || {
                format!("form {forms}: unsound rectangle {:?}", rep.problems)
            })?;
            for r in &cov.rects {
                let fr = small_fraction_check(&f, r, None).map_err(|e| e.to_string())?;
                ensure(fr.holds == Some(true), || format!("form {forms}: {fr:?}"))?;
                rects += 1;
                nontrivial += usize::from(fr.n > 0);
            }
        }
        forms += 1;
    }
    Ok(format!(
        "{rects} rectangles from 100 CNFs, {nontrivial} with n ≥ 1"
    ))
}

fn peak_rss_mb() -> Option<f64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: f64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb / 1024.0)
}

fn performance() -> Outcome {
    let f: ClauseForm = gen_scov(3334).unwrap();
    let c = f.to_circuit();
    ensure(c.len() >= 10_000, || format!("only {} gates", c.len()))?;
    let start = Instant::now();
    let p = compile_auto(&c, Mode::Auto, None, &CompileOptions::default())
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let k = p.decomposition_width();
    ensure(k <= 8, || format!("heuristic width {k} > 8"))?;
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    let mem = peak_rss_mb();
    ensure(mem.is_none_or(|m| m < 2048.0), || {
        format!("peak memory {mem:?} MB")
    })?;
    let mem = mem.map_or("n/a".to_string(), |m| format!("{m:.0} MB"));
    Ok(format!(
        "{} gates, width {k}, {:?} mode, {took:.2?}, peak memory {mem}",
        c.len(),
        p.mode
    ))
}

fn main() {
    let started = Instant::now();
    let suite = build_suite();
    let on_suite = |f: fn(&Suite) -> Outcome| -> Outcome {
        match &suite {
            Ok(s) => f(s),
            Err(e) => Err(format!("suite failed to compile: {e}")),
        }
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("1 equivalence", on_suite(equivalence)),
        ("2 width ceiling", on_suite(width_ceiling_check)),
        ("3 uOBDD pipeline", upath_pipeline()),
        ("4 counting and WMC", on_suite(counting)),
        ("5 reduction", on_suite(reduction)),
        ("6 OBDD lower bound", obdd_lower_bound()),
        ("7 split-width lemmas", split_width_lemmas()),
        ("8 embedding", embedding()),
        ("9 counting inequality", counting_inequality()),
        ("10 performance smoke", performance()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("criterion {name}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg})");
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1?}",
        results.len() - failed,
        results.len(),
        started.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
