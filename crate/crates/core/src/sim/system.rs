//! Construction of the simulating rewrite system.

use std::collections::HashMap;
use std::fmt;

use crate::dp::rpfun::RpFunction;
use crate::dp::tree::ProofTree;
use crate::error::Result;
use crate::term::{Rule, Symbol, Term, Trs};

/// Shape parameters: norm length `d`, argument slots `a`, rhs depth `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConstants {
    pub d: usize,
    pub a: usize,
    pub c: usize,
}

impl fmt::Display for SimConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}, A={}, C={}", self.d, self.a, self.c)
    }
}

pub fn sim_constants(trs: &Trs, tree: &ProofTree) -> SimConstants {
    SimConstants {
        d: tree.depth() + 1,
        a: trs.max_arity().max(1),
        c: trs.rules().iter().map(|r| r.rhs.depth()).max().unwrap_or(0),
    }
}

/// Symbol table of the simulating signature.
#[derive(Clone, Debug)]
pub struct SimSymbols {
    pub f: Symbol,
    pub c: Symbol,
    pub h: Symbol,
    pub z: Symbol,
    pub size: Symbol,
    pub times: Symbol,
    pub choice: Symbol,
    pub s: Symbol,
    pub zero: Symbol,
    pub bot: Symbol,
    pub g: Symbol,
    pub plus: Symbol,
    pub mult: Symbol,
}

impl SimSymbols {
    pub fn new(k: SimConstants) -> SimSymbols {
        SimSymbols {
            f: Symbol::new("f", k.d + k.a),
            c: Symbol::new("c", 0),
            h: Symbol::new("h", 1),
            z: Symbol::new("z", 0),
            size: Symbol::new("size", 1),
            times: Symbol::new("times", 1),
            choice: Symbol::new("choice", 1),
            s: Symbol::new("s", 1),
            zero: Symbol::new("0", 0),
            bot: Symbol::new("bot", 0),
            g: Symbol::new("g", 1),
            plus: Symbol::new("plus", 2),
            mult: Symbol::new("mult", 2),
        }
    }

    pub fn cst(&self) -> Term {
        Term::constant(self.c.clone())
    }

    pub fn bot_term(&self) -> Term {
        Term::constant(self.bot.clone())
    }

    pub fn zero_term(&self) -> Term {
        Term::constant(self.zero.clone())
    }

    pub fn num(&self, n: usize) -> Term {
        Term::numeral(&self.s, &self.zero, n)
    }

    pub fn un(&self, sym: &Symbol, t: Term) -> Term {
        Term::app(sym.clone(), vec![t])
    }

    pub fn f_of(&self, comps: Vec<Term>, slots: Vec<Term>) -> Term {
        let mut args = comps;
        args.extend(slots);
        Term::app(self.f.clone(), args)
    }
}

/// The generated system with named rules.
#[derive(Clone, Debug)]
pub struct SimSystem {
    pub constants: SimConstants,
    pub symbols: SimSymbols,
    pub g: RpFunction,
    pub names: Vec<String>,
    pub trs: Trs,
    by_name: HashMap<String, usize>,
}

fn vars(prefix: &str, n: usize) -> Vec<Term> {
    (1..=n).map(|i| Term::var(&format!("{prefix}{i}"))).collect()
}

/// `M^k_i(prefix, xs)` where `prefix` has length `i`.
fn m_term(sy: &SimSymbols, k: SimConstants, level: usize, prefix: &[Term], xs: &[Term]) -> Term {
    let slots: Vec<Term> = if level == 0 {
        xs.to_vec()
    } else {
        let inner = m_term(sy, k, level - 1, prefix, xs);
        vec![inner; k.a]
    };
    let n = n_prime(sy, k, prefix, &slots);
    let mut comps = prefix.to_vec();
    comps.extend(std::iter::repeat_n(n, k.d - prefix.len()));
    sy.f_of(comps, slots)
}

/// `choice(f(prefix, 0, …, 0, slots))`.
fn n_prime(sy: &SimSymbols, k: SimConstants, prefix: &[Term], slots: &[Term]) -> Term {
    let mut comps = prefix.to_vec();
    comps.extend(std::iter::repeat_n(sy.zero_term(), k.d - prefix.len()));
    sy.un(&sy.choice, sy.f_of(comps, slots.to_vec()))
}

impl SimSystem {
    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.by_name.get(name).map(|&i| &self.trs.rules()[i])
    }

    pub fn rules_named(&self) -> impl Iterator<Item = (&str, &Rule)> {
        self.names.iter().map(String::as_str).zip(self.trs.rules())
    }

    /// Names of the rules evaluating `g`.
    pub fn g_rule_names(&self) -> Vec<&str> {
        self.names
            .iter()
            .map(String::as_str)
            .filter(|n| n.starts_with("g") || n.starts_with("plus") || n.starts_with("mult"))
            .collect()
    }

    /// Rule file text with rule names as comments-free listing order.
    pub fn render(&self) -> String {
        self.trs.render()
    }

    /// Listing with one `name: rule` line per rule.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for (n, r) in self.rules_named() {
            out.push_str(&format!("{n}: {r}\n"));
        }
        out
    }
}

pub fn generate_rsim(trs: &Trs, tree: &ProofTree, g: &RpFunction) -> Result<SimSystem> {
    generate_with(sim_constants(trs, tree), g)
}

/// Builds the system for explicit constants.
pub fn generate_with(k: SimConstants, g: &RpFunction) -> Result<SimSystem> {
    let sy = SimSymbols::new(k);
    let (d, a) = (k.d, k.a);
    let u = vars("u", d);
    let v = vars("v", d);
    let x = vars("x", a);
    let y = vars("y", a);
    let xv = Term::var("x");
    let yv = Term::var("y");
    let mut named: Vec<(String, Term, Term)> = Vec::new();
    let f_u_x = |comps: Vec<Term>| sy.f_of(comps, x.clone());

    for i in 1..=d {
        let mut lhs = u.clone();
        lhs[i - 1] = sy.un(&sy.s, u[i - 1].clone());
        named.push((format!("1_{i}"), f_u_x(lhs), m_term(&sy, k, k.c, &u[..i], &x)));
    }
    let inner_f = sy.f_of(v.clone(), y.clone());
    for i in 1..=d {
        for j in 1..=a {
            let mut lhs = u.clone();
            lhs[i - 1] = inner_f.clone();
            let mut pre = u[..i - 1].to_vec();
            pre.push(y[j - 1].clone());
            named.push((format!("2_{i}_{j}"), f_u_x(lhs), m_term(&sy, k, k.c, &pre, &x)));
        }
    }
    for (tag, from, to) in [
        ("3", inner_f.clone(), sy.zero_term()),
        ("4", sy.zero_term(), sy.bot_term()),
    ] {
        for i in 1..=d {
            let mut lhs = u.clone();
            lhs[i - 1] = from.clone();
            let mut pre = u[..i - 1].to_vec();
            pre.push(to.clone());
            named.push((format!("{tag}_{i}"), f_u_x(lhs), m_term(&sy, k, k.c, &pre, &x)));
        }
    }
    let f_all = sy.f_of(u.clone(), x.clone());
    for j in 1..=a {
        named.push((
            format!("5_{j}"),
            sy.un(&sy.size, f_all.clone()),
            sy.un(&sy.times, sy.un(&sy.size, x[j - 1].clone())),
        ));
    }
    named.push(("6".into(), sy.un(&sy.size, sy.cst()), sy.num(1)));
    let mut sa = sy.un(&sy.times, xv.clone());
    for _ in 0..a {
        sa = sy.un(&sy.s, sa);
    }
    named.push(("7".into(), sy.un(&sy.times, sy.un(&sy.s, xv.clone())), sa));
    named.push(("8".into(), sy.un(&sy.times, sy.zero_term()), sy.zero_term()));
    named.push(("9".into(), f_all.clone(), sy.cst()));
    for j in 1..=a {
        named.push((format!("10_{j}"), f_all.clone(), x[j - 1].clone()));
    }
    let literal_n = |slot: &Term| n_prime(&sy, k, &[], &vec![slot.clone(); a]);
    named.push((
        "11".into(),
        sy.un(&sy.h, xv.clone()),
        sy.f_of(vec![literal_n(&xv); d], vec![xv.clone(); a]),
    ));
    named.push((
        "12".into(),
        Term::constant(sy.z.clone()),
        sy.f_of(vec![literal_n(&sy.cst()); d], vec![sy.cst(); a]),
    ));
    for j in 1..=a {
        named.push((format!("13_{j}"), sy.un(&sy.choice, f_all.clone()), x[j - 1].clone()));
    }
    named.push((
        "14".into(),
        sy.un(&sy.choice, xv.clone()),
        sy.un(&sy.g, sy.un(&sy.size, xv.clone())),
    ));
    named.push(("15".into(), sy.un(&sy.choice, xv.clone()), sy.bot_term()));

    // arithmetic evaluator for g
    let plus = |l: Term, r: Term| Term::app(sy.plus.clone(), vec![l, r]);
    let mult = |l: Term, r: Term| Term::app(sy.mult.clone(), vec![l, r]);
    named.push(("plus_0".into(), plus(sy.zero_term(), yv.clone()), yv.clone()));
    named.push((
        "plus_s".into(),
        plus(sy.un(&sy.s, xv.clone()), yv.clone()),
        sy.un(&sy.s, plus(xv.clone(), yv.clone())),
    ));
    named.push(("mult_0".into(), mult(sy.zero_term(), yv.clone()), sy.zero_term()));
    named.push((
        "mult_s".into(),
        mult(sy.un(&sy.s, xv.clone()), yv.clone()),
        plus(mult(xv.clone(), yv.clone()), yv.clone()),
    ));
    let coeffs = g.trimmed();
    let mut horner = sy.num(*coeffs.last().unwrap() as usize);
    for c in coeffs.iter().rev().skip(1) {
        horner = plus(sy.num(*c as usize), mult(xv.clone(), horner));
    }
    named.push(("g".into(), sy.un(&sy.g, xv.clone()), horner));

    let mut names = Vec::new();
    let mut rules = Vec::new();
    for (n, l, r) in named {
        names.push(n);
        rules.push(Rule::new(l, r)?);
    }
    let extra = [sy.bot.clone(), sy.c.clone()];
    let trs = Trs::new(rules, extra)?;
    let by_name = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    Ok(SimSystem {
        constants: k,
        symbols: sy,
        g: g.clone(),
        names,
        trs,
        by_name,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::dp::search::{search_proof, ProcKind, SearchConfig};
    use crate::parse::{parse_term, parse_trs};
    use crate::rewrite::{rewrite_successors, Scope};

    fn sup() -> (Trs, ProofTree) {
        let r = builtin("rsup", None).unwrap();
        let cfg = SearchConfig {
            order: vec![ProcKind::Graph, ProcKind::AutoRp, ProcKind::Subterm],
            ..SearchConfig::default()
        };
        let t = search_proof(&r.trs, &cfg).unwrap();
        (r.trs, t)
    }

    fn lin() -> RpFunction {
        RpFunction::new(vec![5, 1])
    }

    #[test]
    fn constants_for_corpus() {
        let (trs, tree) = sup();
        assert_eq!(sim_constants(&trs, &tree), SimConstants { d: 3, a: 2, c: 3 });
        let one = parse_trs("(RULES a -> b)").unwrap();
        let tree = search_proof(&one, &SearchConfig::default()).unwrap();
        assert_eq!(sim_constants(&one, &tree).c, 0);
    }

    #[test]
    fn schema_rules() {
        let (trs, tree) = sup();
        let sys = generate_rsim(&trs, &tree, &lin()).unwrap();
        assert_eq!(sys.rule("6").unwrap().to_string(), "size(c) -> s(0)");
        assert_eq!(sys.rule("7").unwrap().to_string(), "times(s(x)) -> s(s(times(x)))");
        assert_eq!(sys.rule("15").unwrap().to_string(), "choice(x) -> bot");
        let schema = sys.names.iter().filter(|n| n.chars().next().unwrap().is_ascii_digit()).count();
        let (d, a) = (3, 2);
        assert_eq!(schema, d + d * a + d + d + a + 4 + a + 2 + a + 2);
        assert_eq!(schema, 29);
    }

    #[test]
    fn small_m_terms() {
        let k = SimConstants { d: 2, a: 1, c: 1 };
        let sys = generate_with(k, &lin()).unwrap();
        assert_eq!(
            sys.rule("1_1").unwrap().to_string(),
            "f(s(u1),u2,x1) -> f(u1,choice(f(u1,0,f(u1,choice(f(u1,0,x1)),x1))),f(u1,choice(f(u1,0,x1)),x1))"
        );
        assert_eq!(sys.rule("11").unwrap().to_string(), "h(x) -> f(choice(f(0,0,x)),choice(f(0,0,x)),x)");
    }

    #[test]
    fn renders_parseable_text() {
        let (trs, tree) = sup();
        let sys = generate_rsim(&trs, &tree, &lin()).unwrap();
        let back = parse_trs(&sys.render()).unwrap();
        assert_eq!(back.rules(), sys.trs.rules());
    }

    fn normal_form(trs: &Trs, mut t: Term) -> Term {
        while let Some(st) = rewrite_successors(&t, trs.rules(), Scope::Anywhere).into_iter().next() {
            t = st.result;
        }
        t
    }

    #[test]
    fn g_evaluator_computes_polynomial() {
        for coeffs in [vec![5, 1], vec![0, 0, 1], vec![3], vec![1, 2, 1]] {
            let g = RpFunction::new(coeffs);
            let sys = generate_with(SimConstants { d: 1, a: 1, c: 0 }, &g).unwrap();
            for n in 0..=8u64 {
                let start = parse_term(&format!("g({})", "s(".repeat(n as usize) + "0" + &")".repeat(n as usize)), &sys.trs, &[]).unwrap();
                let nf = normal_form(&sys.trs, start);
                assert_eq!(nf.as_numeral("s", "0"), Some(g.eval(n) as usize), "{g} at {n}");
            }
        }
    }
}
