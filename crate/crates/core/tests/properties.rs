//! Randomized invariants for matching, unification, rewriting, heights and LPO.

use proptest::prelude::*;

use dpframe_core::analysis::Fuel;
use dpframe_core::rewrite::has_redex;
use dpframe_core::*;

/// Terms over `syms`, with leaves drawn from the constants and `vars`.
fn terms(syms: Vec<Symbol>, vars: &'static [&'static str], depth: u32) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = syms
        .iter()
        .filter(|s| s.arity() == 0)
        .map(|s| Just(Term::constant(s.clone())).boxed())
        .collect();
    leaves.extend(vars.iter().map(|v| Just(Term::var(v)).boxed()));
    let leaf = proptest::strategy::Union::new(leaves).boxed();
    let funs: Vec<Symbol> = syms.into_iter().filter(|s| s.arity() > 0).collect();
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        let branches: Vec<BoxedStrategy<Term>> = funs
            .iter()
            .map(|f| {
                let f = f.clone();
                proptest::collection::vec(inner.clone(), f.arity())
                    .prop_map(move |args| Term::app(f.clone(), args))
                    .boxed()
            })
            .collect();
        proptest::strategy::Union::new(branches)
    })
    .boxed()
}

fn small_sig() -> Vec<Symbol> {
    vec![
        Symbol::new("f", 2),
        Symbol::new("g", 1),
        Symbol::new("a", 0),
        Symbol::new("b", 0),
    ]
}

fn small_trs() -> Trs {
    parse_trs("(VAR x y z)\n(RULES\n  f(x,y) -> g(x)\n  g(a) -> b\n)\n").unwrap()
}

fn open_terms() -> BoxedStrategy<Term> {
    terms(small_sig(), &["x", "y", "z"], 4)
}

fn ground_terms() -> BoxedStrategy<Term> {
    terms(small_sig(), &[], 4)
}

fn sup_trs() -> Trs {
    builtin("rsup", None).unwrap().trs
}

fn sup_terms(depth: u32) -> BoxedStrategy<Term> {
    terms(sup_trs().symbols(), &[], depth)
}

/// Ground substitution for the variables of the small signature.
fn ground_subst() -> impl Strategy<Value = Substitution> {
    (ground_terms(), ground_terms(), ground_terms()).prop_map(|(a, b, c)| {
        let mut s = Substitution::new();
        s.insert("x", a);
        s.insert("y", b);
        s.insert("z", c);
        s
    })
}

fn prec() -> Precedence {
    Precedence::from_pairs([("f", "g"), ("g", "a"), ("a", "b")]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_round_trips(t in open_terms()) {
        let back = parse_term(&t.to_string(), &small_trs(), &["x", "y", "z"]).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn instances_are_matched(p in open_terms(), s in ground_subst()) {
        let inst = s.apply(&p);
        let m = match_term(&p, &inst).expect("instance must match");
        prop_assert_eq!(m.apply(&p), inst);
    }

    #[test]
    fn matches_are_sound(p in open_terms(), t in ground_terms()) {
        if let Some(m) = match_term(&p, &t) {
            prop_assert_eq!(m.apply(&p), t);
        }
    }

    #[test]
    fn unifiers_unify(s in open_terms(), t in open_terms()) {
        let t = t.rename_vars("'");
        match unify_terms(&s, &t) {
            Some(u) => prop_assert_eq!(u.apply(&s), u.apply(&t)),
            None => prop_assert!(unify_terms(&t, &s).is_none()),
        }
    }

    #[test]
    fn common_instances_unify(p in open_terms(), q in open_terms(), s in ground_subst()) {
        // q renamed apart, then instantiated to the same ground term as p
        let q = q.rename_vars("'");
        let target = s.apply(&p);
        if let Some(m) = match_term(&q, &target) {
            prop_assert_eq!(m.apply(&q), target.clone());
            prop_assert!(unify_terms(&p, &q).is_some());
        }
    }

    #[test]
    fn successors_follow_positions_then_rules(t in sup_terms(4)) {
        let trs = sup_trs();
        let steps = rewrite_successors(&t, trs.rules(), Scope::Anywhere);
        let order = t.positions_innermost();
        let key = |st: &Step| (order.iter().position(|p| *p == st.pos).unwrap(), st.rule);
        for w in steps.windows(2) {
            prop_assert!(key(&w[0]) < key(&w[1]));
        }
        for st in &steps {
            let again = rewrite_at(&t, &trs.rules()[st.rule], &st.pos);
            prop_assert_eq!(again.as_ref(), Some(&st.result));
        }
        prop_assert_eq!(steps.is_empty(), !has_redex(&t, trs.rules()));
    }

    #[test]
    fn scopes_partition_steps(t in sup_terms(4)) {
        let rules = sup_trs();
        let all = rewrite_successors(&t, rules.rules(), Scope::Anywhere).len();
        let root = rewrite_successors(&t, rules.rules(), Scope::RootOnly);
        let below = rewrite_successors(&t, rules.rules(), Scope::BelowRoot);
        prop_assert!(root.iter().all(|s| s.pos.is_root()));
        prop_assert!(below.iter().all(|s| !s.pos.is_root()));
        prop_assert_eq!(root.len() + below.len(), all);
    }

    #[test]
    fn height_satisfies_its_recurrence(t in sup_terms(3)) {
        let trs = sup_trs();
        let h = dheight(&t, trs.rules(), Fuel::default()).unwrap();
        let best = rewrite_successors(&t, trs.rules(), Scope::Anywhere)
            .iter()
            .map(|s| 1 + dheight(&s.result, trs.rules(), Fuel::default()).unwrap())
            .max()
            .unwrap_or(0);
        prop_assert_eq!(h, best);
        for u in t.subterms() {
            prop_assert!(dheight(u, trs.rules(), Fuel::default()).unwrap() <= h);
        }
    }

    #[test]
    fn lpo_is_irreflexive_and_has_subterm_property(t in open_terms()) {
        let p = prec();
        prop_assert!(!lpo_greater(&t, &t, &p));
        for u in t.subterms().into_iter().filter(|u| *u != &t) {
            prop_assert!(lpo_greater(&t, u, &p));
            prop_assert!(!lpo_greater(u, &t, &p));
        }
    }

    #[test]
    fn lpo_is_transitive(a in open_terms(), b in open_terms(), c in open_terms()) {
        let p = prec();
        if lpo_greater(&a, &b, &p) && lpo_greater(&b, &c, &p) {
            prop_assert!(lpo_greater(&a, &c, &p));
        }
        prop_assert!(!(lpo_greater(&a, &b, &p) && lpo_greater(&b, &a, &p)));
    }

    #[test]
    fn lpo_is_closed_under_substitution_and_context(
        a in open_terms(),
        b in open_terms(),
        s in ground_subst(),
        other in ground_terms(),
    ) {
        let p = prec();
        if lpo_greater(&a, &b, &p) {
            prop_assert!(lpo_greater(&s.apply(&a), &s.apply(&b), &p));
            let f = Symbol::new("f", 2);
            let ctx = |t: &Term| Term::app(f.clone(), vec![other.clone(), t.clone()]);
            prop_assert!(lpo_greater(&ctx(&a), &ctx(&b), &p));
            let g = Symbol::new("g", 1);
            prop_assert!(lpo_greater(&Term::app(g.clone(), vec![a.clone()]), &Term::app(g, vec![b.clone()]), &p));
        }
    }
}
