//! Estimated dependency graphs, their SCCs and ranks.

use std::collections::BTreeSet;
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{DependencyPair, DpProblem};
use crate::term::{Term, Trs};
use crate::unify::unify_terms;

/// A strongly connected component with its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scc {
    /// Pair indices, ascending.
    pub pairs: Vec<usize>,
    pub rank: usize,
    pub trivial: bool,
}

/// Dependency graph over the pairs of a problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepGraph {
    pub nodes: Vec<DependencyPair>,
    /// Edges between pair indices.
    pub edges: BTreeSet<(usize, usize)>,
    /// Components ordered by decreasing rank.
    pub sccs: Vec<Scc>,
}

impl DepGraph {
    pub fn scc_of(&self, pair: usize) -> Option<&Scc> {
        self.sccs.iter().find(|s| s.pairs.contains(&pair))
    }

    pub fn rank_of_pair(&self, pair: usize) -> Option<usize> {
        self.scc_of(pair).map(|s| s.rank)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }
}

/// Replaces every subterm with a defined root by a fresh variable and
/// renames all variable occurrences apart.
pub fn cap_ren(t: &Term, trs: &Trs, counter: &mut usize) -> Term {
    match t {
        Term::Var(_) => fresh(counter),
        Term::App(f, args) => {
            if !f.is_marked() && trs.is_defined(f) {
                fresh(counter)
            } else {
                Term::App(
                    f.clone(),
                    args.iter().map(|a| cap_ren(a, trs, counter)).collect(),
                )
            }
        }
    }
}

fn fresh(counter: &mut usize) -> Term {
    *counter += 1;
    Term::var(&format!("_v{counter}"))
}

/// Whether an edge from pair `a` to pair `b` is possible.
pub fn may_follow(a: &DependencyPair, b: &DependencyPair, trs: &Trs) -> bool {
    let mut counter = 0;
    let capped = cap_ren(a.rhs(), trs, &mut counter);
    let target = b.lhs().rename_vars("'");
    unify_terms(&capped, &target).is_some()
}

/// Estimates the dependency graph of `p` and ranks its SCCs.
pub fn estimate_dependency_graph(p: &DpProblem) -> DepGraph {
    let trs: &Arc<Trs> = &p.trs;
    let n = p.pairs.len();
    let mut g: DiGraph<usize, ()> = DiGraph::new();
    for pair in &p.pairs {
        g.add_node(pair.index);
    }
    let mut edges = BTreeSet::new();
    for (i, a) in p.pairs.iter().enumerate() {
        for (j, b) in p.pairs.iter().enumerate() {
            if may_follow(a, b, trs) {
                edges.insert((a.index, b.index));
                g.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
            }
        }
    }
    let comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| g[x]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let k = comps.len();
    let comp_of = |pair: usize| comps.iter().position(|c| c.contains(&pair)).unwrap();
    let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for &(a, b) in &edges {
        let (ca, cb) = (comp_of(a), comp_of(b));
        if ca != cb {
            preds[cb].insert(ca);
        }
    }
    // Repeatedly take a source of the remaining condensation; the source
    // holding the smallest pair index receives the largest free rank.
    let mut rank = vec![0usize; k];
    let mut done = vec![false; k];
    for r in (1..=k).rev() {
        let next = (0..k)
            .filter(|&c| !done[c] && preds[c].iter().all(|&q| done[q]))
            .min_by_key(|&c| comps[c][0])
            .expect("condensation is acyclic");
        done[next] = true;
        rank[next] = r;
    }
    let mut sccs: Vec<Scc> = comps
        .iter()
        .enumerate()
        .map(|(c, members)| Scc {
            trivial: members.len() == 1 && !edges.contains(&(members[0], members[0])),
            pairs: members.clone(),
            rank: rank[c],
        })
        .collect();
    sccs.sort_by_key(|s| std::cmp::Reverse(s.rank));
    debug_assert_eq!(sccs.iter().map(|s| s.pairs.len()).sum::<usize>(), n);
    DepGraph {
        nodes: p.pairs.clone(),
        edges,
        sccs,
    }
}

/// Dependency graph processor: one child per SCC in decreasing rank order,
/// flagged when the SCC is trivial. `None` signals no progress.
pub fn apply_dependency_graph(p: &DpProblem) -> Option<(DepGraph, Vec<(DpProblem, bool)>)> {
    let g = estimate_dependency_graph(p);
    if g.sccs.len() == 1 && !g.sccs[0].trivial {
        return None;
    }
    let children = g
        .sccs
        .iter()
        .map(|s| (p.restrict(&s.pairs), s.trivial))
        .collect();
    Some((g, children))
}
