//! Reachability, relative normal forms, derivation heights and Dc.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::enumerate::terms_up_to;
use crate::error::{Error, Result};
use crate::rewrite::{rewrite_successors, Scope};
use crate::term::{Rule, Symbol, Term, Trs};
use crate::unify::match_term;

/// Exploration budget for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Fuel {
    pub fn new(max_nodes: usize, max_depth: usize) -> Fuel {
        assert!(max_nodes > 0 && max_depth > 0, "fuel limits must be positive");
        Fuel {
            max_nodes,
            max_depth,
        }
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(200_000, 100_000)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Strict,
    Weak,
}

/// The part of the rewrite graph reachable from a root term.
#[derive(Clone, Debug)]
pub struct ReachGraph {
    nodes: Vec<Term>,
    index: HashMap<Term, usize>,
    edges: Vec<(usize, StepKind, usize)>,
    exhausted: bool,
}

impl ReachGraph {
    pub fn root(&self) -> &Term {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[Term] {
        &self.nodes
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.index.contains_key(t)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Term, StepKind, &Term)> {
        self.edges
            .iter()
            .map(|&(a, k, b)| (&self.nodes[a], k, &self.nodes[b]))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True when the node set is closed under the explored relation.
    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    fn require_exhausted(&self) -> Result<()> {
        if self.exhausted {
            Ok(())
        } else {
            Err(Error::Indeterminate(format!(
                "reachability from {} not closed after {} nodes",
                self.root(),
                self.nodes.len()
            )))
        }
    }

    /// Longest path counting strict edges only; weak cycles are collapsed.
    pub fn longest_strict_path(&self) -> Result<u64> {
        self.require_exhausted()?;
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.nodes.len(), self.edges.len());
        for _ in &self.nodes {
            g.add_node(());
        }
        for &(a, _, b) in &self.edges {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
        // Components come out sinks first.
        let comps = tarjan_scc(&g);
        let mut comp_of = vec![0usize; self.nodes.len()];
        for (c, members) in comps.iter().enumerate() {
            for n in members {
                comp_of[n.index()] = c;
            }
        }
        let mut out_edges: Vec<Vec<(StepKind, usize)>> = vec![Vec::new(); comps.len()];
        for &(a, k, b) in &self.edges {
            let (ca, cb) = (comp_of[a], comp_of[b]);
            if ca == cb {
                if k == StepKind::Strict {
                    return Err(Error::Nontermination(format!(
                        "strict cycle through {}",
                        self.nodes[a]
                    )));
                }
            } else {
                out_edges[ca].push((k, cb));
            }
        }
        let mut height = vec![0u64; comps.len()];
        for c in 0..comps.len() {
            let mut best = 0;
            for &(k, d) in &out_edges[c] {
                let w = u64::from(k == StepKind::Strict);
                best = best.max(height[d] + w);
            }
            height[c] = best;
        }
        Ok(height[comp_of[0]])
    }
}

/// Breadth-first closure of `{t}` under `strict ∪ weak` steps.
pub fn explore(t: &Term, strict: &[Rule], weak: &[Rule], fuel: Fuel) -> ReachGraph {
    let mut g = ReachGraph {
        nodes: vec![t.clone()],
        index: HashMap::from([(t.clone(), 0)]),
        edges: Vec::new(),
        exhausted: true,
    };
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((n, depth)) = queue.pop_front() {
        let term = g.nodes[n].clone();
        let mut succ = Vec::new();
        for s in rewrite_successors(&term, strict, Scope::Anywhere) {
            succ.push((StepKind::Strict, s.result));
        }
        for s in rewrite_successors(&term, weak, Scope::Anywhere) {
            succ.push((StepKind::Weak, s.result));
        }
        if succ.is_empty() {
            continue;
        }
        if depth >= fuel.max_depth {
            g.exhausted = false;
            continue;
        }
        for (kind, u) in succ {
            let m = match g.index.get(&u) {
                Some(&m) => m,
                None => {
                    if g.nodes.len() >= fuel.max_nodes {
                        g.exhausted = false;
                        continue;
                    }
                    let m = g.nodes.len();
                    g.index.insert(u.clone(), m);
                    g.nodes.push(u);
                    queue.push_back((m, depth + 1));
                    m
                }
            };
            g.edges.push((n, kind, m));
        }
    }
    g.edges.sort_unstable();
    g.edges.dedup();
    g
}

/// Breadth-first closure of `{t}` under plain rewriting.
pub fn reachable_set(t: &Term, rules: &[Rule], fuel: Fuel) -> ReachGraph {
    explore(t, rules, &[], fuel)
}

/// Whether `t ∈ NF(strict/weak)`: no weak-reachable term has a strict redex.
pub fn is_nf_relative(t: &Term, strict: &[Rule], weak: &[Rule], fuel: Fuel) -> Result<bool> {
    let has_strict = |u: &Term| {
        u.subterms()
            .into_iter()
            .any(|s| !s.is_var() && strict.iter().any(|r| match_term(&r.lhs, s).is_some()))
    };
    if has_strict(t) {
        return Ok(false);
    }
    let g = explore(t, weak, &[], fuel);
    if g.nodes().iter().any(has_strict) {
        return Ok(false);
    }
    g.require_exhausted()?;
    Ok(true)
}

/// Length of the longest derivation starting at `t`.
pub fn dheight(t: &Term, rules: &[Rule], fuel: Fuel) -> Result<u64> {
    dheight_relative(t, rules, &[], fuel)
}

/// Maximal number of strict steps along any `strict ∪ weak` derivation from `t`.
pub fn dheight_relative(t: &Term, strict: &[Rule], weak: &[Rule], fuel: Fuel) -> Result<u64> {
    if strict.is_empty() {
        return Ok(0);
    }
    explore(t, strict, weak, fuel).longest_strict_path()
}

/// One derivation from `t` of maximal length, as the list of visited terms.
pub fn longest_derivation(t: &Term, rules: &[Rule], fuel: Fuel) -> Result<Vec<Term>> {
    let g = explore(t, rules, &[], fuel);
    g.longest_strict_path()?;
    let n = g.nodes.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, _, b) in &g.edges {
        succ[a].push(b);
    }
    // Acyclic by the check above; settle heights in reverse discovery order of a DFS.
    let mut height: Vec<Option<u64>> = vec![None; n];
    let mut stack = vec![(0usize, false)];
    while let Some((v, done)) = stack.pop() {
        if height[v].is_some() {
            continue;
        }
        if done {
            height[v] = Some(succ[v].iter().map(|&w| height[w].unwrap_or(0) + 1).max().unwrap_or(0));
        } else {
            stack.push((v, true));
            stack.extend(succ[v].iter().filter(|&&w| height[w].is_none()).map(|&w| (w, false)));
        }
    }
    let mut path = vec![g.nodes[0].clone()];
    let mut v = 0;
    while let Some(&w) = succ[v].iter().find(|&&w| height[w].map(|h| h + 1) == height[v]) {
        path.push(g.nodes[w].clone());
        v = w;
    }
    Ok(path)
}

/// Function symbols of `trs` plus one fresh constant standing in for variables.
pub fn enumeration_signature(trs: &Trs) -> Vec<Symbol> {
    let mut sig: Vec<Symbol> = trs
        .symbols()
        .into_iter()
        .filter(|s| !s.is_marked())
        .collect();
    sig.push(trs.fresh_constant());
    sig
}

/// Derivational complexity at `n`: the maximal derivation height over terms
/// of size at most `n`, with open terms represented by a fresh constant.
pub fn dc(trs: &Trs, n: usize, fuel: Fuel) -> Result<u64> {
    Ok(dc_witness(trs, n, fuel)?.map(|(h, _)| h).unwrap_or(0))
}

/// Like [`dc`], also returning the first term attaining the maximum.
pub fn dc_witness(trs: &Trs, n: usize, fuel: Fuel) -> Result<Option<(u64, Term)>> {
    let mut best: Option<(u64, Term)> = None;
    for t in terms_up_to(&enumeration_signature(trs), n) {
        let h = dheight(&t, trs.rules(), fuel)?;
        if best.as_ref().is_none_or(|(b, _)| h > *b) {
            best = Some((h, t));
        }
    }
    Ok(best)
}
