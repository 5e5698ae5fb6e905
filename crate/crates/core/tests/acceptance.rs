//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dpframe_core::ackermann::DEFAULT_BUDGET;
use dpframe_core::analysis::enumeration_signature;
use dpframe_core::dp::depgraph::estimate_dependency_graph;
use dpframe_core::dp::interp::apply_reduction_pair;
use dpframe_core::dp::rpfun::validate_rp_function;
use dpframe_core::dp::tree::{ProcStep, TreeNode};
use dpframe_core::enumerate::terms_up_to;
use dpframe_core::lpo::check_sim;
use dpframe_core::norm::{render_path, verify_lemmas};
use dpframe_core::*;

type Outcome = std::result::Result<String, String>;

fn run(n: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t0 = Instant::now();
    let res = f();
    let took = t0.elapsed();
    let res = match res {
        Ok(d) if took > limit => Err(format!("{d}; took {took:?}, limit {limit:?}")),
        r => r,
    };
    match &res {
        Ok(d) => println!("criterion {n}: PASS ({d}; {took:.2?})"),
        Err(e) => println!("criterion {n}: FAIL ({e})"),
    }
    res.is_ok()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn system(name: &str) -> CorpusEntry {
    builtin(name, None).unwrap()
}

fn tree_of(entry: &CorpusEntry) -> ProofTree {
    search_proof(&entry.trs, &entry.search_config()).expect("proof search failed")
}

fn ground(entry: &CorpusEntry, max: usize) -> Vec<Term> {
    terms_up_to(&enumeration_signature(&entry.trs), max)
}

fn pair_strings(entry: &CorpusEntry) -> Vec<String> {
    compute_dps(&entry.trs).iter().map(|p| p.to_string()).collect()
}

fn dps() -> Outcome {
    let expected: [(&str, &[&str]); 3] = [
        (
            "rsack",
            &[
                "1: Ack#(s(x),0) -> Ack#(x,s(0))",
                "2: Ack#(s(x),s(y)) -> Ack#(x,Ack(s(x),y))",
                "3: Ack#(s(x),s(y)) -> Ack#(s(x),y)",
            ],
        ),
        (
            "rsup",
            &[
                "1: d#(s(x)) -> d#(x)",
                "2: e#(s(x),y) -> d#(y)",
                "3: e#(s(x),y) -> e#(x,d(y))",
                "4: sup#(s(x),e(0,y)) -> e#(y,s(0))",
                "5: sup#(s(x),e(0,y)) -> sup#(x,e(y,s(0)))",
            ],
        ),
        (
            "rsdieter",
            &[
                "1: o#(i(x),o(y,z)) -> o#(x,o(i(i(y)),z))",
                "2: o#(i(x),o(y,z)) -> o#(i(i(y)),z)",
                "3: o#(i(x),o(y,o(z,w))) -> o#(x,o(z,o(y,w)))",
                "4: o#(i(x),o(y,o(z,w))) -> o#(z,o(y,w))",
                "5: o#(i(x),o(y,o(z,w))) -> o#(y,w)",
            ],
        ),
    ];
    let norm = |s: &str| s.replace(' ', "");
    for (name, want) in expected {
        let got: Vec<String> = pair_strings(&system(name)).iter().map(|s| norm(s)).collect();
        let want: Vec<String> = want.iter().map(|s| norm(s)).collect();
        check(got == want, || format!("{name}: got {got:?}"))?;
    }
    Ok("3 systems, 11 pairs".into())
}

fn graph() -> Outcome {
    let e = system("rsup");
    let g = estimate_dependency_graph(&DpProblem::initial(std::sync::Arc::new(e.trs.clone())));
    let set = |trivial: bool| -> BTreeSet<Vec<usize>> {
        g.sccs.iter().filter(|s| s.trivial == trivial).map(|s| s.pairs.clone()).collect()
    };
    let nontrivial: BTreeSet<Vec<usize>> = [vec![1], vec![3], vec![5]].into();
    let trivial: BTreeSet<Vec<usize>> = [vec![2], vec![4]].into();
    check(set(false) == nontrivial, || format!("nontrivial {:?}", set(false)))?;
    check(set(true) == trivial, || format!("trivial {:?}", set(true)))?;
    Ok("nontrivial {1},{3},{5}; trivial {2},{4}".into())
}

/// Projection entries and removed pairs of a subterm step.
type SubtermStep = (Vec<(String, usize)>, Vec<usize>);

fn subterm_proj(node: &TreeNode) -> Option<SubtermStep> {
    match &node.step {
        Some(ProcStep::Subterm { proj, removed }) => Some((
            proj.entries().map(|(s, i)| (s.to_string(), i)).collect(),
            removed.clone(),
        )),
        _ => None,
    }
}

fn proofs() -> Outcome {
    // Ackermann: two subterm steps, projecting on the first then the second argument.
    let ack = tree_of(&system("rsack"));
    let (p1, r1) = subterm_proj(&ack.root).ok_or("rsack root is not a subterm step")?;
    check(p1 == vec![("Ack#".to_string(), 1)] && r1 == vec![1, 2], || {
        format!("rsack root {p1:?} removes {r1:?}")
    })?;
    check(ack.root.children.len() == 1, || "rsack root should have one child".into())?;
    let c = &ack.root.children[0];
    let (p2, r2) = subterm_proj(c).ok_or("rsack child is not a subterm step")?;
    check(p2 == vec![("Ack#".to_string(), 2)] && r2 == vec![3], || {
        format!("rsack child {p2:?} removes {r2:?}")
    })?;
    check(c.children.len() == 1 && c.children[0].problem.is_empty(), || {
        "rsack proof should end in the empty problem".into()
    })?;

    // sup: graph root whose nontrivial SCCs each close with one reduction pair.
    let sup = tree_of(&system("rsup"));
    check(matches!(sup.root.step, Some(ProcStep::DepGraph(_))), || "rsup root is not a graph step".into())?;
    let kids: Vec<Vec<usize>> = sup.root.children.iter().map(|c| c.problem.indices()).collect();
    check(kids == vec![vec![5], vec![4], vec![3], vec![2], vec![1]], || format!("rsup children {kids:?}"))?;
    let mut rp_leaves = 0;
    for c in &sup.root.children {
        match &c.step {
            Some(ProcStep::ReductionPair { removed, .. }) => {
                check(
                    !c.trivial_scc && c.children.len() == 1 && c.children[0].problem.is_empty() && removed == &c.problem.indices(),
                    || format!("rsup child {:?} not closed by one reduction pair", c.problem.indices()),
                )?;
                rp_leaves += 1;
            }
            None => check(c.trivial_scc && c.is_leaf(), || "unexpected open child".into())?,
            _ => return Err(format!("rsup child {:?} uses another processor", c.problem.indices())),
        }
    }
    check(rp_leaves == 3, || format!("{rp_leaves} reduction-pair children"))?;

    // dieter: the two stored algebras remove everything between them.
    let d = system("rsdieter");
    let p = DpProblem::initial(std::sync::Arc::new(d.trs.clone()));
    let ra = apply_reduction_pair(&p, &d.interpretations[0]).map_err(|e| e.to_string())?.ok_or("A removes nothing")?;
    check(ra.removed_indices() == vec![2, 4, 5], || format!("A removes {:?}", ra.removed_indices()))?;
    let rb = apply_reduction_pair(&ra.kept, &d.interpretations[1]).map_err(|e| e.to_string())?.ok_or("B removes nothing")?;
    check(rb.removed_indices() == vec![1, 3], || format!("B removes {:?}", rb.removed_indices()))?;
    check(rb.kept.is_empty(), || "B leaves pairs".into())?;
    Ok("rsack, rsup and rsdieter reference proofs".into())
}

fn current_paths(e: &CorpusEntry, tree: &ProofTree) -> Outcome {
    let ctx = NormContext::new(tree, Fuel::default());
    for (t, want) in [
        ("sup(s(0), e(0,s(0)))", "(ε, 1)"),
        ("sup(0, e(s(0),s(0)))", "()"),
        ("e(s(0),s(0))", "(ε, 3)"),
    ] {
        let term = parse_term(t, &e.trs, &[]).map_err(|e| e.to_string())?;
        let got = render_path(&ctx.current_path(&term).map_err(|e| e.to_string())?);
        check(got == want, || format!("{t}: {got}"))?;
    }
    Ok("three example terms".into())
}

fn lemmas() -> Outcome {
    let mut summary = Vec::new();
    for (name, max) in [("rsup", 6), ("rsack", 5)] {
        let e = system(name);
        let tree = tree_of(&e);
        let ctx = NormContext::new(&tree, Fuel::default());
        let starts = ground(&e, max);
        let rep = verify_lemmas(&ctx, &starts, false);
        check(rep.violations.is_empty(), || format!("{name}: {:?}", &rep.violations[..rep.violations.len().min(3)]))?;
        check(rep.indeterminate.is_empty(), || format!("{name}: {} indeterminate", rep.indeterminate.len()))?;
        summary.push(format!(
            "{name}: {} terms, {} below-root, {} root steps",
            rep.terms, rep.below_root_steps, rep.root_steps
        ));
    }
    Ok(summary.join("; "))
}

fn sup_sim() -> (CorpusEntry, ProofTree, SimSystem) {
    let e = system("rsup");
    let tree = tree_of(&e);
    let sys = generate_rsim(&e.trs, &tree, &RpFunction::new(vec![5, 1])).unwrap();
    (e, tree, sys)
}

fn simulation() -> Outcome {
    let (e, tree, sys) = sup_sim();
    let ctx = NormContext::new(&tree, Fuel::default());
    let tr = Translator::new(&ctx, &sys);
    let err = |x: dpframe_core::Error| x.to_string();
    let (mut steps, mut starts, mut sizes) = (0, 0, 0);
    for s in ground(&e, 5) {
        let ts = tr.translate(&s).map_err(err)?;
        for step in rewrite_successors(&s, e.trs.rules(), Scope::Anywhere) {
            let t = &step.result;
            let d = simulate_step(&tr, &s, t).map_err(|x| format!("{s} -> {t}: {x}"))?;
            d.validate(&sys).map_err(|x| format!("{s} -> {t}: {x}"))?;
            check(d.start == ts && d.end() == &tr.translate(t).map_err(err)?, || {
                format!("{s} -> {t}: wrong endpoints")
            })?;
            steps += 1;
        }
        if s.size() <= 4 {
            let d = simulate_start(&tr, &s).map_err(|x| format!("start {s}: {x}"))?;
            d.validate(&sys).map_err(|x| format!("start {s}: {x}"))?;
            check(d.end() == &ts, || format!("start {s}: ends at {}", d.end()))?;
            starts += 1;
        }
        let (d, n) = simulate_size(&tr, &ts).map_err(|x| format!("size {s}: {x}"))?;
        d.validate(&sys).map_err(|x| format!("size {s}: {x}"))?;
        let sy = &sys.symbols;
        check(d.start == sy.un(&sy.size, ts.clone()) && d.end() == &sy.num(n as usize), || {
            format!("size {s}: wrong endpoints")
        })?;
        check(n >= s.size() as u64, || format!("size {s}: {n} < {}", s.size()))?;
        sizes += 1;
    }
    Ok(format!("{steps} steps, {starts} starts, {sizes} sizes"))
}

fn lpo() -> Outcome {
    let mut out = Vec::new();
    for name in ["rsup", "rsack"] {
        let e = system(name);
        let tree = tree_of(&e);
        let sys = generate_rsim(&e.trs, &tree, &RpFunction::new(vec![5, 1])).map_err(|e| e.to_string())?;
        let t0 = Instant::now();
        let rep = check_sim(&sys, &rsim_precedence(&sys));
        let took = t0.elapsed();
        let bad: Vec<&String> = rep.verdicts.iter().filter(|v| !v.2).map(|v| &v.0).collect();
        check(rep.ok(), || format!("{name}: not oriented {bad:?}"))?;
        check(took < Duration::from_secs(1), || format!("{name}: check took {took:?}"))?;
        out.push(format!("{name}: {} rules", rep.verdicts.len()));
    }
    Ok(out.join(", "))
}

fn chaining() -> Outcome {
    let (e, tree, sys) = sup_sim();
    let ctx = NormContext::new(&tree, Fuel::default());
    let tr = Translator::new(&ctx, &sys);
    let pool = ground(&e, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sample: Vec<&Term> = pool.choose_multiple(&mut rng, 50).collect();
    check(sample.len() == 50, || "pool too small".into())?;
    let mut worst = (0u64, 0usize);
    for t in sample {
        let h = dheight(t, e.trs.rules(), Fuel::default()).map_err(|x| x.to_string())?;
        let path = longest_derivation(t, e.trs.rules(), Fuel::default()).map_err(|x| x.to_string())?;
        check(path.len() as u64 == h + 1, || format!("{t}: derivation of {} terms, height {h}", path.len()))?;
        let mut total = SimDerivation { start: tr.translate(t).map_err(|x| x.to_string())?, steps: Vec::new() };
        for w in path.windows(2) {
            let d = simulate_step(&tr, &w[0], &w[1]).map_err(|x| format!("{} -> {}: {x}", w[0], w[1]))?;
            total.chain(d).map_err(|x| x.to_string())?;
        }
        total.validate(&sys).map_err(|x| format!("{t}: {x}"))?;
        check(total.len() as u64 >= h, || format!("{t}: simulated {} < height {h}", total.len()))?;
        if h > worst.0 {
            worst = (h, total.len());
        }
    }
    Ok(format!("50 terms, largest height {} simulated in {} steps", worst.0, worst.1))
}

/// Plain two-argument Ackermann by direct recursion.
fn ack_oracle(m: u64, n: u64) -> u64 {
    match (m, n) {
        (0, n) => n + 1,
        (m, 0) => ack_oracle(m - 1, 1),
        (m, n) => ack_oracle(m - 1, ack_oracle(m, n - 1)),
    }
}

/// Longest derivation by memoized exhaustive recursion.
fn height_oracle(t: &Term, rules: &[Rule], memo: &mut HashMap<Term, u64>) -> u64 {
    if let Some(&h) = memo.get(t) {
        return h;
    }
    let h = rewrite_successors(t, rules, Scope::Anywhere)
        .iter()
        .map(|s| 1 + height_oracle(&s.result, rules, memo))
        .max()
        .unwrap_or(0);
    memo.insert(t.clone(), h);
    h
}

fn numeral(n: u64) -> String {
    let mut s = "0".to_string();
    for _ in 0..n {
        s = format!("s({s})");
    }
    s
}

fn ackermann() -> Outcome {
    let mut checked = 0;
    for e in [system("rsack"), builtin("rspeter", Some(2)).unwrap()] {
        let rules = e.trs.rules();
        let mut memo = HashMap::new();
        for m in 0..=2u64 {
            for n in 0..=2u64 {
                let a = ackermann_k(2, &[BigUint::from(m), BigUint::from(n)], DEFAULT_BUDGET)
                    .map_err(|x| x.to_string())?;
                check(a == BigUint::from(ack_oracle(m, n)), || format!("A({m},{n}) = {a}"))?;
                let start = parse_term(&format!("Ack({},{})", numeral(m), numeral(n)), &e.trs, &[])
                    .map_err(|x| x.to_string())?;
                let mut nf = start.clone();
                while let Some(s) = rewrite_successors(&nf, rules, Scope::Anywhere).into_iter().next() {
                    nf = s.result;
                }
                let want = parse_term(&numeral(ack_oracle(m, n)), &e.trs, &[]).unwrap();
                check(nf == want, || format!("{}: Ack({m},{n}) normalizes to {nf}", e.name))?;
                let h = dheight(&start, rules, Fuel::default()).map_err(|x| x.to_string())?;
                let o = height_oracle(&start, rules, &mut memo);
                check(h == o, || format!("{}: dheight Ack({m},{n}) = {h}, oracle {o}", e.name))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} starts"))
}

fn rp_function() -> Outcome {
    let e = system("rsdieter");
    let tree = tree_of(&e);
    let g = RpFunction::new(vec![2, 1]);
    let rep = validate_rp_function(&tree, &g, 5, Fuel::default());
    check(rep.ok(), || rep.render(&g))?;
    Ok("g(n) = n + 2 up to size 5".into())
}

fn main() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let s = Duration::from_secs;
    let sup = system("rsup");
    let sup_tree = tree_of(&sup);
    let results = [
        run(1, s(1), dps),
        run(2, s(1), graph),
        run(3, s(10), proofs),
        run(4, s(1), || current_paths(&sup, &sup_tree)),
        run(5, min(5), lemmas),
        run(6, min(10), simulation),
        run(7, s(10), lpo),
        run(8, min(10), chaining),
        run(9, min(1), ackermann),
        run(10, min(5), rp_function),
    ];
    let failed: Vec<usize> = (1..=10).filter(|i| !results[i - 1]).collect();
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
