//! Constructive replays of simulating derivations.
//!
//! Every step is a named rule applied at an explicit position and is checked
//! by matching when it is recorded, so a returned derivation is a witness.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::system::SimSystem;
use super::translate::Translator;
use crate::error::{Error, Result};
use crate::norm::{NormContext, NormOrd, NormValue};
use crate::rewrite::{rewrite_at, rewrite_successors, Scope};
use crate::term::{proper_subterm, Position, Term};

/// One recorded step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimStep {
    pub rule: String,
    pub pos: Position,
    pub term: Term,
}

#[derive(Clone, Debug)]
pub struct SimDerivation {
    pub start: Term,
    pub steps: Vec<SimStep>,
}

impl SimDerivation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> &Term {
        self.steps.last().map(|s| &s.term).unwrap_or(&self.start)
    }

    /// Re-checks every step against the one-step successors of its predecessor.
    pub fn validate(&self, sys: &SimSystem) -> Result<()> {
        let mut cur = &self.start;
        for (n, st) in self.steps.iter().enumerate() {
            let rule = sys
                .rule(&st.rule)
                .ok_or_else(|| Error::Simulation(format!("unknown rule {}", st.rule)))?;
            let ok = rewrite_at(cur, rule, &st.pos).as_ref() == Some(&st.term);
            if !ok {
                return Err(Error::Simulation(format!(
                    "step {} ({} @ {}) does not follow from its predecessor",
                    n + 1,
                    st.rule,
                    st.pos
                )));
            }
            cur = &st.term;
        }
        Ok(())
    }

    /// Appends another derivation that starts where this one ends.
    pub fn chain(&mut self, other: SimDerivation) -> Result<()> {
        if self.end() != &other.start {
            return Err(Error::Simulation("derivations do not chain".into()));
        }
        self.steps.extend(other.steps);
        Ok(())
    }
}

impl fmt::Display for SimDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start : {}", self.start)?;
        for s in &self.steps {
            writeln!(f, "{} @ {} : {}", s.rule, s.pos, s.term)?;
        }
        Ok(())
    }
}

/// How an argument slot becomes its target.
#[derive(Clone, Debug)]
enum Plan {
    /// Already the translation of the target.
    Ready,
    /// Must collapse to `c`.
    Erase,
    /// Holds `M^k`; unfold to level 0 and project along `path` into the redex.
    Project { k: usize, path: Vec<usize> },
    /// Holds `M^k`; build the translation of `target`.
    Created { target: Term, children: Vec<Plan> },
    /// Holds `h^depth(z)`.
    Start { depth: usize, target: Term },
}

/// A step of a `(→R ∪ ⊳)+` chain between norm terms.
#[derive(Clone, Debug)]
enum ChainStep {
    Sub(usize),
    Rewrite { from: Term, to: Term, pos: Position },
}

/// Replays simulation lemmas by explicit rule applications.
pub struct Replayer<'a> {
    ctx: &'a NormContext<'a>,
    sys: &'a SimSystem,
    start: Term,
    cur: Term,
    steps: Vec<SimStep>,
    limit: usize,
}

const STEP_LIMIT: usize = 2_000_000;

impl<'a> Replayer<'a> {
    pub fn new(tr: &'a Translator<'a>, start: Term) -> Replayer<'a> {
        Replayer {
            ctx: tr.ctx,
            sys: tr.sys,
            start: start.clone(),
            cur: start,
            steps: Vec::new(),
            limit: STEP_LIMIT,
        }
    }

    pub fn current(&self) -> &Term {
        &self.cur
    }

    pub fn finish(self) -> SimDerivation {
        SimDerivation {
            start: self.start,
            steps: self.steps,
        }
    }

    fn d(&self) -> usize {
        self.sys.constants.d
    }

    fn a(&self) -> usize {
        self.sys.constants.a
    }

    fn at(&self, pos: &Position) -> Result<&Term> {
        self.cur
            .at(pos)
            .ok_or_else(|| Error::Simulation(format!("no subterm at {pos}")))
    }

    fn apply(&mut self, name: &str, pos: &Position) -> Result<()> {
        if self.steps.len() >= self.limit {
            return Err(Error::Budget(format!("replay exceeded {} steps", self.limit)));
        }
        let rule = self
            .sys
            .rule(name)
            .ok_or_else(|| Error::Simulation(format!("unknown rule {name}")))?;
        let next = rewrite_at(&self.cur, rule, pos).ok_or_else(|| {
            Error::Simulation(format!(
                "rule {name} does not apply at {pos} of {}",
                self.cur.at(pos).map(|t| t.to_string()).unwrap_or_default()
            ))
        })?;
        self.cur = next.clone();
        self.steps.push(SimStep {
            rule: name.to_string(),
            pos: pos.clone(),
            term: next,
        });
        Ok(())
    }

    /// Leftmost-innermost normalization of the subterm at `pos` using `names`.
    fn normalize(&mut self, pos: &Position, names: &[&str]) -> Result<()> {
        let rules: Vec<(String, _)> = names
            .iter()
            .filter_map(|n| self.sys.rule(n).map(|r| (n.to_string(), r.clone())))
            .collect();
        'outer: loop {
            let sub = self.at(pos)?.clone();
            for p in sub.positions_innermost() {
                for (n, r) in &rules {
                    if rewrite_at(&sub, r, &p).is_some() {
                        self.apply(n, &pos.concat(&p))?;
                        continue 'outer;
                    }
                }
            }
            return Ok(());
        }
    }

    /// A rule at `pos` followed by unfolding `M^C` back to level 0.
    fn bump(&mut self, name: &str, pos: &Position) -> Result<()> {
        self.apply(name, pos)?;
        for _ in 0..self.sys.constants.c {
            self.apply("10_1", pos)?;
        }
        Ok(())
    }

    fn is(&self, t: &Term, name: &str) -> bool {
        t.root().map(|s| s.name() == name).unwrap_or(false)
    }
}

/// Sizes reachable from `size(t)` as numerals.
fn achievable(sys: &SimSystem, t: &Term) -> BTreeSet<u64> {
    let sy = &sys.symbols;
    let (d, a) = (sys.constants.d, sys.constants.a as u64);
    let mut out = BTreeSet::new();
    match t.root() {
        Some(r) if *r == sy.c => {
            out.insert(1);
        }
        Some(r) if *r == sy.f => {
            out.insert(1);
            for x in &t.args()[d..] {
                for n in achievable(sys, x) {
                    out.insert(n.saturating_mul(a));
                }
            }
        }
        _ => {}
    }
    out
}

impl<'a> Replayer<'a> {
    fn execute(&mut self, pos: &Position, plan: &Plan, prefix: &[NormValue]) -> Result<()> {
        match plan {
            Plan::Ready => Ok(()),
            Plan::Erase => {
                let t = self.at(pos)?.clone();
                if self.is(&t, "c") {
                    return Ok(());
                }
                if self.is(&t, "h") {
                    self.apply("11", pos)?;
                } else if self.is(&t, "z") {
                    self.apply("12", pos)?;
                }
                self.apply("9", pos)
            }
            Plan::Project { k, path } => {
                for _ in 0..*k {
                    self.apply("10_1", pos)?;
                }
                for q in path {
                    self.apply(&format!("10_{q}"), pos)?;
                }
                Ok(())
            }
            Plan::Created { target, children, .. } => self.realize(pos, target, prefix, children),
            Plan::Start { depth, target } => {
                let mut depth = *depth;
                while depth > target.depth() {
                    self.apply("11", pos)?;
                    self.apply("10_1", pos)?;
                    depth -= 1;
                }
                let n = target.args().len();
                let children: Vec<Plan> = (0..self.a())
                    .map(|j| {
                        if j < n {
                            Plan::Start {
                                depth: depth - 1,
                                target: target.args()[j].clone(),
                            }
                        } else {
                            Plan::Erase
                        }
                    })
                    .collect();
                self.apply(if depth == 0 { "12" } else { "11" }, pos)?;
                self.realize(pos, target, &[], &children)
            }
        }
    }

    /// The subterm at `pos` is `f(prefix, choice terms, slots)`; turn it into `tr(target)`.
    fn realize(&mut self, pos: &Position, target: &Term, prefix: &[NormValue], plans: &[Plan]) -> Result<()> {
        let d = self.d();
        for (j, p) in plans.iter().enumerate() {
            self.execute(&pos.child(d + j + 1), p, prefix)?;
        }
        let tgt = self.ctx.norm(target)?;
        let mut vals = prefix.to_vec();
        for j in prefix.len()..d {
            let v = self.eval_choice(&pos.child(j + 1), &tgt.0[j], target, plans, prefix)?;
            vals.push(v);
        }
        self.lower(pos, vals, &tgt.0, target)
    }

    fn ready_plans(&self, target: &Term) -> Vec<Plan> {
        (0..self.a())
            .map(|j| if j < target.args().len() { Plan::Ready } else { Plan::Erase })
            .collect()
    }

    /// Evaluates `choice(f(…, slots))` at `pos` to a value at least `want`.
    fn eval_choice(
        &mut self,
        pos: &Position,
        want: &NormValue,
        target: &Term,
        plans: &[Plan],
        prefix: &[NormValue],
    ) -> Result<NormValue> {
        let d = self.d();
        match want {
            NormValue::Bot => {
                self.apply("15", pos)?;
                Ok(NormValue::Bot)
            }
            NormValue::Trm(b) => {
                let j = target.args().iter().position(|x| x == b).ok_or_else(|| {
                    Error::Simulation(format!("norm term {b} is not an argument of {target}"))
                })?;
                self.apply(&format!("13_{}", j + 1), pos)?;
                self.execute(pos, &plans[j], prefix)?;
                Ok(want.clone())
            }
            NormValue::Nat(m) => {
                let inner = pos.child(1);
                for (j, p) in plans.iter().enumerate() {
                    self.execute(&inner.child(d + j + 1), p, prefix)?;
                }
                self.apply("14", pos)?;
                let size_pos = pos.child(1);
                let options = achievable(self.sys, self.at(&size_pos.child(1))?);
                let g = &self.sys.g;
                let n = options
                    .iter()
                    .copied()
                    .find(|&n| g.eval(n) >= *m as u128)
                    .ok_or_else(|| {
                        Error::Simulation(format!("g does not reach {m} on the sizes available for {target}"))
                    })?;
                self.size_to(&size_pos, n)?;
                let names: Vec<String> = self.sys.g_rule_names().iter().map(|s| s.to_string()).collect();
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                self.normalize(pos, &names)?;
                let got = self
                    .at(pos)?
                    .as_numeral("s", "0")
                    .ok_or_else(|| Error::Simulation("g did not evaluate to a numeral".into()))?;
                Ok(NormValue::Nat(got as u64))
            }
        }
    }

    /// Drives `size(x)` at `pos` to exactly `s^n(0)`.
    fn size_to(&mut self, pos: &Position, n: u64) -> Result<()> {
        let x = self.at(&pos.child(1))?.clone();
        if self.is(&x, "c") {
            return self.apply("6", pos);
        }
        if n == 1 {
            self.apply("9", &pos.child(1))?;
            return self.apply("6", pos);
        }
        let (d, a) = (self.d(), self.a() as u64);
        let j = x.args()[d..]
            .iter()
            .position(|y| n.is_multiple_of(a) && achievable(self.sys, y).contains(&(n / a)))
            .ok_or_else(|| Error::Simulation(format!("size {n} unreachable")))?;
        self.apply(&format!("5_{}", j + 1), pos)?;
        self.size_to(&pos.child(1), n / a)?;
        self.normalize(pos, &["7", "8"])
    }

    /// Largest-size strategy for `size(x)` at `pos`.
    fn size_max(&mut self, pos: &Position) -> Result<()> {
        let x = self.at(&pos.child(1))?.clone();
        if self.is(&x, "c") {
            return self.apply("6", pos);
        }
        let d = self.d();
        let best = x.args()[d..]
            .iter()
            .enumerate()
            .map(|(j, y)| (achievable(self.sys, y).last().copied().unwrap_or(0), j))
            .max_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)))
            .ok_or_else(|| Error::Simulation("size of a non-f term".into()))?;
        self.apply(&format!("5_{}", best.1 + 1), pos)?;
        self.size_max(&pos.child(1))?;
        self.normalize(pos, &["7", "8"])
    }

    /// Lexicographic lowering of the norm components at `pos` from `vals` to `tgt`.
    fn lower(&mut self, pos: &Position, mut vals: Vec<NormValue>, tgt: &[NormValue], target: &Term) -> Result<()> {
        let d = self.d();
        let ready = self.ready_plans(target);
        while let Some(i) = (0..d).find(|&i| vals[i] != tgt[i]) {
            let reset = self.decrease(pos, i, &vals[i], &tgt[i])?;
            vals[i] = tgt[i].clone();
            if reset {
                for j in i + 1..d {
                    vals[j] = self.eval_choice(&pos.child(j + 1), &tgt[j], target, &ready, &[])?;
                }
            }
        }
        Ok(())
    }

    /// Moves component `i` from `from` to `to`. Returns whether later components were reset.
    fn decrease(&mut self, pos: &Position, i: usize, from: &NormValue, to: &NormValue) -> Result<bool> {
        use NormValue::*;
        let k = i + 1;
        match (from, to) {
            (Nat(n), Nat(m)) if n > m => {
                for _ in *m..*n {
                    self.bump(&format!("1_{k}"), pos)?;
                }
            }
            (Nat(n), Bot) => {
                for _ in 0..*n {
                    self.bump(&format!("1_{k}"), pos)?;
                }
                self.bump(&format!("4_{k}"), pos)?;
            }
            (Trm(_), Nat(0)) => self.bump(&format!("3_{k}"), pos)?,
            (Trm(_), Bot) => {
                self.bump(&format!("3_{k}"), pos)?;
                self.bump(&format!("4_{k}"), pos)?;
            }
            (Trm(a), Trm(b)) => {
                let mut reset = false;
                for step in self.chain(a, b)? {
                    match step {
                        ChainStep::Sub(j) => {
                            self.bump(&format!("2_{k}_{j}"), pos)?;
                            reset = true;
                        }
                        ChainStep::Rewrite { from, to, pos: q } => {
                            self.replay_step(&pos.child(k), &from, &to, &q)?;
                        }
                    }
                }
                return Ok(reset);
            }
            _ => {
                return Err(Error::Simulation(format!(
                    "component {k} cannot decrease from {from} to {to}"
                )))
            }
        }
        Ok(true)
    }

    /// Shortest `(→R ∪ ⊳)+` chain from `a` to `b`.
    fn chain(&self, a: &Term, b: &Term) -> Result<Vec<ChainStep>> {
        let rules = self.ctx.trs().rules();
        let mut prev: HashMap<Term, (Term, ChainStep)> = HashMap::new();
        let mut queue = VecDeque::from([a.clone()]);
        let budget = self.ctx.fuel().max_nodes;
        while let Some(u) = queue.pop_front() {
            if prev.len() > budget {
                return Err(Error::Indeterminate(format!("chain from {a} to {b}")));
            }
            let mut next: Vec<(Term, ChainStep)> = u
                .args()
                .iter()
                .enumerate()
                .map(|(j, x)| (x.clone(), ChainStep::Sub(j + 1)))
                .collect();
            for st in rewrite_successors(&u, rules, Scope::Anywhere) {
                let step = ChainStep::Rewrite {
                    from: u.clone(),
                    to: st.result.clone(),
                    pos: st.pos,
                };
                next.push((st.result, step));
            }
            for (v, step) in next {
                if v == *a || prev.contains_key(&v) {
                    continue;
                }
                prev.insert(v.clone(), (u.clone(), step));
                if v == *b {
                    let mut out = Vec::new();
                    let mut cur = v;
                    while cur != *a {
                        let (p, s) = prev[&cur].clone();
                        out.push(s);
                        cur = p;
                    }
                    out.reverse();
                    return Ok(out);
                }
                queue.push_back(v);
            }
        }
        Err(Error::Simulation(format!("{b} is not below {a}")))
    }
}

impl<'a> Replayer<'a> {
    /// Replays `s → t` (redex at `q`) on `tr(s)` sitting at `pos`.
    pub fn replay_step(&mut self, pos: &Position, s: &Term, t: &Term, q: &Position) -> Result<()> {
        if q.is_root() {
            return self.root_step(pos, s, t);
        }
        let j = q.0[0];
        let rest = Position(q.0[1..].to_vec());
        self.replay_step(&pos.child(self.d() + j), &s.args()[j - 1], &t.args()[j - 1], &rest)?;
        let from = self.ctx.norm(s)?.0;
        let to = self.ctx.norm(t)?.0;
        self.lower(pos, from, &to, t)
    }

    fn root_step(&mut self, pos: &Position, s: &Term, t: &Term) -> Result<()> {
        if let Some(p) = s.find_proper(t) {
            for q in p.0 {
                self.apply(&format!("10_{q}"), pos)?;
            }
            return Ok(());
        }
        let root = Position::root();
        let rule = self
            .ctx
            .trs()
            .rules()
            .iter()
            .find(|r| rewrite_at(s, r, &root).as_ref() == Some(t))
            .ok_or_else(|| Error::Simulation(format!("{s} -> {t} is not a root step")))?
            .clone();

        let ns = self.ctx.norm(s)?.0;
        let mut firsts = Vec::new();
        for p in t.positions() {
            let u = t.at(&p).expect("own position");
            if proper_subterm(u, s) {
                continue;
            }
            let nu = self.ctx.norm(u)?.0;
            let i = (0..ns.len())
                .find(|&i| ns[i] != nu[i])
                .ok_or_else(|| Error::Simulation(format!("{u} has the same norm as {s}")))?;
            firsts.push((i, nu[i].clone(), u.clone()));
        }
        // Subterms that differ earlier are lowered afterwards at their own node.
        let i = firsts.iter().map(|f| f.0).max().expect("root position is eligible");
        let wants: Vec<&NormValue> = firsts.iter().filter(|f| f.0 == i).map(|f| &f.1).collect();
        let (value, rules) = self.pick_decrement(i, &ns[i], &wants)?;
        let (last, init) = rules.split_last().expect("nonempty decrement");
        for r in init {
            self.bump(r, pos)?;
        }
        self.apply(last, pos)?;

        let mut prefix = ns[..i].to_vec();
        prefix.push(value);
        let c = self.sys.constants.c;
        let plans = self.child_plans(c.saturating_sub(1), t, &rule.rhs, s)?;
        self.realize(pos, t, &prefix, &plans)
    }

    /// The smallest-step decrement of component `i` from `v` that stays above every wanted value.
    fn pick_decrement(&self, i: usize, v: &NormValue, wants: &[&NormValue]) -> Result<(NormValue, Vec<String>)> {
        use NormValue::*;
        let k = i + 1;
        let mut cands: Vec<(NormValue, Vec<String>)> = Vec::new();
        match v {
            Nat(n) => {
                for m in (0..*n).rev() {
                    cands.push((Nat(m), vec![format!("1_{k}"); (n - m) as usize]));
                }
                let mut r = vec![format!("1_{k}"); *n as usize];
                r.push(format!("4_{k}"));
                cands.push((Bot, r));
            }
            Trm(a) => {
                for (j, x) in a.args().iter().enumerate() {
                    cands.push((Trm(x.clone()), vec![format!("2_{k}_{}", j + 1)]));
                }
                cands.push((Nat(0), vec![format!("3_{k}")]));
                cands.push((Bot, vec![format!("3_{k}"), format!("4_{k}")]));
            }
            Bot => {}
        }
        for (c, r) in cands {
            let mut ok = true;
            for w in wants {
                if !matches!(self.ctx.compare_norm(&c, w)?, NormOrd::Greater | NormOrd::Equal) {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok((c, r));
            }
        }
        Err(Error::Simulation(format!("no decrement of component {k} from {v} covers the created terms")))
    }

    /// Plans for the argument slots of a created node `t = uσ` built from `M^k`.
    fn child_plans(&self, k: usize, t: &Term, u: &Term, src: &Term) -> Result<Vec<Plan>> {
        let n = t.args().len();
        let mut out = Vec::with_capacity(self.a());
        for j in 0..self.a() {
            if j >= n {
                out.push(Plan::Erase);
                continue;
            }
            let tj = &t.args()[j];
            if let Some(p) = src.find_proper(tj) {
                out.push(Plan::Project { k, path: p.0 });
                continue;
            }
            if tj == src {
                return Err(Error::Simulation(format!("{src} reappears in its own contractum")));
            }
            let uj = u
                .args()
                .get(j)
                .ok_or_else(|| Error::Simulation(format!("pattern {u} does not cover {t}")))?;
            if k == 0 {
                return Err(Error::Simulation(format!("rhs depth bound too small for {tj}")));
            }
            out.push(Plan::Created {
                target: tj.clone(),
                children: self.child_plans(k - 1, tj, uj, src)?,
            });
        }
        Ok(out)
    }
}

/// `tr(s) →+ tr(t)` for a single step `s →R t`.
pub fn simulate_step(tr: &Translator<'_>, s: &Term, t: &Term) -> Result<SimDerivation> {
    let step = rewrite_successors(s, tr.ctx.trs().rules(), Scope::Anywhere)
        .into_iter()
        .find(|st| &st.result == t)
        .ok_or_else(|| Error::Invalid(format!("{t} is not a successor of {s}")))?;
    let mut r = Replayer::new(tr, tr.translate(s)?);
    r.replay_step(&Position::root(), s, t, &step.pos)?;
    finish_at(r, tr.translate(t)?)
}

/// `h^depth(t)(z) →+ tr(t)`.
pub fn simulate_start(tr: &Translator<'_>, t: &Term) -> Result<SimDerivation> {
    if !t.is_ground() {
        return Err(Error::NonGround(t.to_string()));
    }
    let sy = &tr.sys.symbols;
    let mut start = Term::constant(sy.z.clone());
    for _ in 0..t.depth() {
        start = sy.un(&sy.h, start);
    }
    let mut r = Replayer::new(tr, start);
    let plan = Plan::Start {
        depth: t.depth(),
        target: t.clone(),
    };
    r.execute(&Position::root(), &plan, &[])?;
    finish_at(r, tr.translate(t)?)
}

/// `size(a) →+ s^n(0)` by the largest-size strategy; returns the derivation and `n`.
pub fn simulate_size(tr: &Translator<'_>, a: &Term) -> Result<(SimDerivation, u64)> {
    let sy = &tr.sys.symbols;
    let mut r = Replayer::new(tr, sy.un(&sy.size, a.clone()));
    r.size_max(&Position::root())?;
    let n = r
        .current()
        .as_numeral("s", "0")
        .ok_or_else(|| Error::Simulation("size did not reach a numeral".into()))?;
    Ok((r.finish(), n as u64))
}

fn finish_at(r: Replayer<'_>, expected: Term) -> Result<SimDerivation> {
    if r.current() != &expected {
        return Err(Error::Simulation(format!(
            "replay ended at {} instead of {expected}",
            r.current()
        )));
    }
    let d = r.finish();
    if d.is_empty() {
        return Err(Error::Simulation("empty replay".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Fuel;
    use crate::corpus::builtin;
    use crate::dp::rpfun::RpFunction;
    use crate::dp::search::{search_proof, ProcKind, SearchConfig};
    use crate::dp::tree::ProofTree;
    use crate::parse::parse_term;
    use crate::sim::generate_rsim;
    use crate::term::Trs;

    fn setup() -> (Trs, ProofTree) {
        let r = builtin("rsup", None).unwrap();
        let cfg = SearchConfig {
            order: vec![ProcKind::Graph, ProcKind::AutoRp, ProcKind::Subterm],
            ..SearchConfig::default()
        };
        let tree = search_proof(&r.trs, &cfg).unwrap();
        (r.trs, tree)
    }

    #[test]
    fn step_replays() {
        let (trs, tree) = setup();
        let ctx = NormContext::new(&tree, Fuel::default());
        let sys = generate_rsim(&trs, &tree, &RpFunction::new(vec![5, 1])).unwrap();
        let tr = Translator::new(&ctx, &sys);
        let p = |s: &str| parse_term(s, &trs, &[]).unwrap();

        let d = simulate_step(&tr, &p("d(0)"), &p("0")).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.steps[0].rule, "10_1");

        for (s, t) in [("d(s(0))", "s(s(d(0)))"), ("e(s(0), d(0))", "e(s(0), 0)")] {
            let d = simulate_step(&tr, &p(s), &p(t)).unwrap();
            d.validate(&sys).unwrap();
            assert_eq!(d.start, tr.translate(&p(s)).unwrap());
            assert_eq!(d.end(), &tr.translate(&p(t)).unwrap());
        }
        assert!(simulate_step(&tr, &p("d(0)"), &p("d(0)")).is_err());
    }

    #[test]
    fn start_and_size() {
        let (trs, tree) = setup();
        let ctx = NormContext::new(&tree, Fuel::default());
        let sys = generate_rsim(&trs, &tree, &RpFunction::new(vec![5, 1])).unwrap();
        let tr = Translator::new(&ctx, &sys);
        let p = |s: &str| parse_term(s, &trs, &[]).unwrap();

        let z = simulate_start(&tr, &p("0")).unwrap();
        assert_eq!(z.start.to_string(), "z");
        assert_eq!(z.steps[0].rule, "12");
        z.validate(&sys).unwrap();
        let h = simulate_start(&tr, &p("d(0)")).unwrap();
        assert_eq!(h.start.to_string(), "h(z)");
        assert_eq!(h.end(), &tr.translate(&p("d(0)")).unwrap());
        h.validate(&sys).unwrap();

        for (s, min) in [("0", 1), ("d(0)", 2), ("e(0,0)", 3)] {
            let (der, n) = simulate_size(&tr, &tr.translate(&p(s)).unwrap()).unwrap();
            der.validate(&sys).unwrap();
            assert!(n >= min, "{s}: {n}");
        }
    }

    #[test]
    fn tampered_derivation_is_rejected() {
        let (trs, tree) = setup();
        let ctx = NormContext::new(&tree, Fuel::default());
        let sys = generate_rsim(&trs, &tree, &RpFunction::new(vec![5, 1])).unwrap();
        let tr = Translator::new(&ctx, &sys);
        let p = |s: &str| parse_term(s, &trs, &[]).unwrap();
        let mut d = simulate_step(&tr, &p("d(s(0))"), &p("s(s(d(0)))")).unwrap();
        let i = d.steps.iter().position(|s| s.rule != "9").unwrap();
        d.steps[i].rule = "9".into();
        assert!(d.validate(&sys).is_err());
    }
}
