//! Current paths, norm vectors and the decrease checks built on them.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::analysis::{dheight_relative, explore, Fuel};
use crate::dp::depgraph::DepGraph;
use crate::dp::tree::{tree_position, ProcStep, ProofTree};
use crate::error::{Error, Result};
use crate::rewrite::{rewrite_successors, Scope};
use crate::term::{proper_subterm, Position, Rule, Term, Trs};
use crate::unify::match_term;

/// A norm component: a natural, a term, or ⊥.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormValue {
    Nat(u64),
    Trm(Term),
    Bot,
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Nat(n) => write!(f, "{n}"),
            NormValue::Trm(t) => write!(f, "{t}"),
            NormValue::Bot => f.write_str("⊥"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormVector(pub Vec<NormValue>);

impl fmt::Display for NormVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

/// Comparison outcome under ⊐.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormOrd {
    Greater,
    Equal,
    Less,
    Incomparable,
}

/// Lexicographic comparison outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LexOrd {
    Greater,
    Equal,
    NotGreater,
}

/// A current path: node positions starting at the root.
pub type PtPath = Vec<Position>;

/// Evaluation context for norms over a fixed proof tree, with caches.
pub struct NormContext<'a> {
    tree: &'a ProofTree,
    trs: Arc<Trs>,
    fuel: Fuel,
    d: usize,
    pair_rules: Vec<(usize, Rule)>,
    applicable: RefCell<HashMap<Term, Vec<usize>>>,
    norms: RefCell<HashMap<Term, NormVector>>,
    descendants: RefCell<HashMap<Term, HashSet<Term>>>,
}

impl<'a> NormContext<'a> {
    pub fn new(tree: &'a ProofTree, fuel: Fuel) -> NormContext<'a> {
        let pair_rules = tree
            .root
            .problem
            .pairs
            .iter()
            .map(|p| (p.index, p.rule.clone()))
            .collect();
        NormContext {
            tree,
            trs: tree.trs.clone(),
            fuel,
            d: tree.depth() + 1,
            pair_rules,
            applicable: RefCell::new(HashMap::new()),
            norms: RefCell::new(HashMap::new()),
            descendants: RefCell::new(HashMap::new()),
        }
    }

    /// Length of norm vectors: depth of the tree plus one.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn tree(&self) -> &ProofTree {
        self.tree
    }

    pub fn trs(&self) -> &Trs {
        &self.trs
    }

    pub fn fuel(&self) -> Fuel {
        self.fuel
    }

    fn sharp(&self, t: &Term) -> Option<Term> {
        if self.trs.root_defined(t) {
            Some(t.sharp())
        } else {
            None
        }
    }

    /// Pairs `l -> r` with `t# ∉ NF({l -> r}/R)`, i.e. `t# →*_R lσ`.
    pub fn applicable_pairs(&self, t: &Term) -> Result<Vec<usize>> {
        if let Some(v) = self.applicable.borrow().get(t) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        if let Some(ts) = self.sharp(t) {
            let g = explore(&ts, self.trs.rules(), &[], self.fuel);
            let mut pending: Vec<&(usize, Rule)> = self.pair_rules.iter().collect();
            for u in g.nodes() {
                pending.retain(|(i, r)| {
                    if match_term(&r.lhs, u).is_some() {
                        out.push(*i);
                        false
                    } else {
                        true
                    }
                });
                if pending.is_empty() {
                    break;
                }
            }
            if !pending.is_empty() && !g.exhausted() {
                return Err(Error::Indeterminate(format!("pairs applicable to {t}")));
            }
            out.sort_unstable();
        }
        self.applicable.borrow_mut().insert(t.clone(), out.clone());
        Ok(out)
    }

    /// The current path: from the root, repeatedly descend into the leftmost
    /// child that still contains an applicable pair.
    pub fn current_path(&self, t: &Term) -> Result<PtPath> {
        let app = self.applicable_pairs(t)?;
        let mut path = Vec::new();
        if app.is_empty() {
            return Ok(path);
        }
        let mut node = &self.tree.root;
        let mut pos = Position::root();
        loop {
            path.push(pos.clone());
            let next = node
                .children
                .iter()
                .enumerate()
                .find(|(_, c)| c.problem.pairs.iter().any(|p| app.contains(&p.index)));
            match next {
                Some((i, c)) => {
                    node = c;
                    pos = pos.child(i + 1);
                }
                None => return Ok(path),
            }
        }
    }

    /// `norm_i(t)` for `1 ≤ i ≤ d`.
    pub fn norm_component(&self, t: &Term, i: usize) -> Result<NormValue> {
        Ok(self.norm(t)?.0[i - 1].clone())
    }

    pub fn norm(&self, t: &Term) -> Result<NormVector> {
        if let Some(v) = self.norms.borrow().get(t) {
            return Ok(v.clone());
        }
        let path = self.current_path(t)?;
        let app = self.applicable_pairs(t)?;
        let defined = self.trs.root_defined(t);
        let mut out = Vec::with_capacity(self.d);
        for i in 0..self.d {
            let Some(pos) = path.get(i) else {
                out.push(if defined { NormValue::Nat(0) } else { NormValue::Bot });
                continue;
            };
            let node = self.tree.node(pos).expect("path positions exist");
            let ts = t.sharp();
            let value = match &node.step {
                None => NormValue::Nat(dheight_relative(
                    &ts,
                    &node.problem.pair_rules(),
                    self.trs.rules(),
                    self.fuel,
                )?),
                Some(ProcStep::ReductionPair { removed, .. }) => {
                    let (strict, mut weak): (Vec<_>, Vec<_>) = node
                        .problem
                        .pairs
                        .iter()
                        .partition(|p| removed.contains(&p.index));
                    let strict: Vec<Rule> = strict.iter().map(|p| p.rule.clone()).collect();
                    let mut weak_rules: Vec<Rule> = weak.drain(..).map(|p| p.rule.clone()).collect();
                    weak_rules.extend(self.trs.rules().iter().cloned());
                    NormValue::Nat(dheight_relative(&ts, &strict, &weak_rules, self.fuel)?)
                }
                Some(ProcStep::DepGraph(g)) => NormValue::Nat(
                    rank_among(g, &app).ok_or_else(|| {
                        Error::Invalid(format!("no ranked pair applies to {t} at {}", tree_position(pos)))
                    })? as u64,
                ),
                Some(ProcStep::Subterm { proj, .. }) => NormValue::Trm(proj.apply(&ts)?),
            };
            out.push(value);
        }
        let v = NormVector(out);
        self.norms.borrow_mut().insert(t.clone(), v.clone());
        Ok(v)
    }

    /// All terms `b` with `a (→R ∪ ⊳)+ b`.
    fn descendants(&self, a: &Term) -> Result<HashSet<Term>> {
        if let Some(s) = self.descendants.borrow().get(a) {
            return Ok(s.clone());
        }
        let mut seen: HashSet<Term> = HashSet::new();
        let mut queue: VecDeque<Term> = VecDeque::from([a.clone()]);
        let mut expanded = 0usize;
        while let Some(u) = queue.pop_front() {
            expanded += 1;
            if expanded > self.fuel.max_nodes {
                return Err(Error::Indeterminate(format!("descendants of {a}")));
            }
            let mut next: Vec<Term> = u.args().to_vec();
            next.extend(
                rewrite_successors(&u, self.trs.rules(), Scope::Anywhere)
                    .into_iter()
                    .map(|s| s.result),
            );
            for v in next {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        self.descendants.borrow_mut().insert(a.clone(), seen.clone());
        Ok(seen)
    }

    /// Whether `a (→R ∪ ⊳)+ b`.
    pub fn term_greater(&self, a: &Term, b: &Term) -> Result<bool> {
        Ok(self.descendants(a)?.contains(b))
    }

    /// Compares two norm components under ⊐.
    pub fn compare_norm(&self, a: &NormValue, b: &NormValue) -> Result<NormOrd> {
        if a == b {
            return Ok(NormOrd::Equal);
        }
        if self.gt(a, b)? {
            return Ok(NormOrd::Greater);
        }
        if self.gt(b, a)? {
            return Ok(NormOrd::Less);
        }
        Ok(NormOrd::Incomparable)
    }

    fn gt(&self, a: &NormValue, b: &NormValue) -> Result<bool> {
        use NormValue::*;
        Ok(match (a, b) {
            (Nat(x), Nat(y)) => x > y,
            (Trm(x), Trm(y)) => self.term_greater(x, y)?,
            (Trm(_), Nat(0)) => true,
            (Trm(_) | Nat(_), Bot) => true,
            _ => false,
        })
    }

    /// Lexicographic extension of ⊐.
    pub fn compare_norm_lex(&self, a: &NormVector, b: &NormVector) -> Result<LexOrd> {
        for (x, y) in a.0.iter().zip(&b.0) {
            match self.compare_norm(x, y)? {
                NormOrd::Equal => continue,
                NormOrd::Greater => return Ok(LexOrd::Greater),
                _ => return Ok(LexOrd::NotGreater),
            }
        }
        Ok(LexOrd::Equal)
    }

    /// Largest rank of a graph pair applicable to `t`.
    pub fn rank_of_term(&self, g: &DepGraph, t: &Term) -> Result<Option<usize>> {
        Ok(rank_among(g, &self.applicable_pairs(t)?))
    }

    fn check_step(&self, s: &Term, t: &Term, scope: Scope) -> Result<()> {
        let ok = rewrite_successors(s, self.trs.rules(), scope)
            .iter()
            .any(|st| &st.result == t);
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "{t} is not a {} successor of {s}",
                if scope == Scope::RootOnly { "root" } else { "below-root" }
            )))
        }
    }

    /// Weak decrease for a below-root step `s → t`.
    pub fn verify_weak_decrease(&self, s: &Term, t: &Term) -> Result<bool> {
        self.check_step(s, t, Scope::BelowRoot)?;
        Ok(matches!(
            self.compare_norm_lex(&self.norm(s)?, &self.norm(t)?)?,
            LexOrd::Greater | LexOrd::Equal
        ))
    }

    /// Strict decrease for a root step `s → t` at every eligible position.
    pub fn verify_strict_decrease(&self, s: &Term, t: &Term) -> Result<StrictReport> {
        self.check_step(s, t, Scope::RootOnly)?;
        let ns = self.norm(s)?;
        let mut checks = Vec::new();
        for p in t.positions() {
            let u = t.at(&p).expect("own position");
            if proper_subterm(u, s) {
                continue;
            }
            let nu = self.norm(u)?;
            let ok = self.compare_norm_lex(&ns, &nu)? == LexOrd::Greater;
            checks.push(PositionCheck {
                position: p,
                norm: nu,
                greater: ok,
            });
        }
        Ok(StrictReport { source: ns, checks })
    }

    /// Lemma on equal path prefixes for a below-root step.
    pub fn verify_equal_positions(&self, s: &Term, t: &Term) -> Result<bool> {
        let (ps, pt) = (self.current_path(s)?, self.current_path(t)?);
        let (ns, nt) = (self.norm(s)?, self.norm(t)?);
        for i in 0..self.d.saturating_sub(1) {
            if ps.get(i) == pt.get(i) && ns.0[i] == nt.0[i] {
                let next_t = pt.get(i + 1);
                if next_t.is_some() && next_t != ps.get(i + 1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn rank_among(g: &DepGraph, applicable: &[usize]) -> Option<usize> {
    applicable
        .iter()
        .filter_map(|&i| g.rank_of_pair(i))
        .max()
}

/// Per-position verdict of a strict-decrease check.
#[derive(Clone, Debug)]
pub struct PositionCheck {
    pub position: Position,
    pub norm: NormVector,
    pub greater: bool,
}

#[derive(Clone, Debug)]
pub struct StrictReport {
    pub source: NormVector,
    pub checks: Vec<PositionCheck>,
}

impl StrictReport {
    pub fn all_greater(&self) -> bool {
        self.checks.iter().all(|c| c.greater)
    }
}

/// Renders a current path as `(ε, 1)`.
pub fn render_path(p: &PtPath) -> String {
    let v: Vec<String> = p.iter().map(tree_position).collect();
    format!("({})", v.join(", "))
}

/// Totals of an exhaustive lemma run.
#[derive(Clone, Debug, Default)]
pub struct LemmaReport {
    pub terms: usize,
    pub below_root_steps: usize,
    pub root_steps: usize,
    pub positions_checked: usize,
    pub violations: Vec<String>,
    pub indeterminate: Vec<String>,
    pub lines: Vec<String>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.indeterminate.is_empty()
    }
}

/// Checks the decrease lemmas on every step from every start term.
pub fn verify_lemmas(ctx: &NormContext<'_>, starts: &[Term], verbose: bool) -> LemmaReport {
    let mut rep = LemmaReport {
        terms: starts.len(),
        ..LemmaReport::default()
    };
    let note = |rep: &mut LemmaReport, e: Error, what: String| {
        if e.is_indeterminate() {
            rep.indeterminate.push(format!("{what}: {e}"));
        } else {
            rep.violations.push(format!("{what}: {e}"));
        }
    };
    for s in starts {
        for step in rewrite_successors(s, ctx.trs().rules(), Scope::Anywhere) {
            let t = &step.result;
            let what = format!("{s} -> {t} at {}", step.pos);
            if step.pos.is_root() {
                rep.root_steps += 1;
                match ctx.verify_strict_decrease(s, t) {
                    Ok(r) => {
                        rep.positions_checked += r.checks.len();
                        for c in &r.checks {
                            if verbose || !c.greater {
                                rep.lines.push(format!(
                                    "root {what}: {} vs {} at {} {}",
                                    r.source,
                                    c.norm,
                                    c.position,
                                    if c.greater { "greater" } else { "NOT greater" }
                                ));
                            }
                            if !c.greater {
                                rep.violations
                                    .push(format!("strict decrease fails for {what} at {}", c.position));
                            }
                        }
                    }
                    Err(e) => note(&mut rep, e, what),
                }
            } else {
                rep.below_root_steps += 1;
                let weak = ctx.verify_weak_decrease(s, t);
                let eq = ctx.verify_equal_positions(s, t);
                match (weak, eq) {
                    (Ok(w), Ok(e)) => {
                        if verbose || !w {
                            let (ns, nt) = (ctx.norm(s), ctx.norm(t));
                            if let (Ok(ns), Ok(nt)) = (ns, nt) {
                                rep.lines.push(format!(
                                    "below {what}: {ns} vs {nt} {}",
                                    if w { "weakly greater" } else { "NOT weakly greater" }
                                ));
                            }
                        }
                        if !w {
                            rep.violations.push(format!("weak decrease fails for {what}"));
                        }
                        if !e {
                            rep.violations.push(format!("path prefix property fails for {what}"));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => note(&mut rep, e, what),
                }
            }
        }
    }
    rep
}

/// Orders candidate paths like [`NormContext::current_path`]: at the first
/// difference the smaller child index wins, and an extension beats its prefix.
pub fn path_order(a: &PtPath, b: &PtPath) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    b.len().cmp(&a.len())
}
