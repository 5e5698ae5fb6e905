//! Depth-first proof search over the three processors.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::depgraph::apply_dependency_graph;
use super::interp::{apply_reduction_pair, LinearInterpretation, Orientation};
use super::projection::{all_projections, apply_subterm_criterion, SimpleProjection};
use super::tree::{ProcStep, ProofTree, TreeNode};
use super::{DpProblem, Removal};
use crate::error::Error;
use crate::term::{Rule, Symbol, Term, Trs};

/// Processors available to the search, tried in the configured order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProcKind {
    Graph,
    Subterm,
    AutoRp,
    UserRp,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub order: Vec<ProcKind>,
    /// Largest coefficient tried by the interpretation search.
    pub coeff_bound: u64,
    pub interpretations: Vec<LinearInterpretation>,
    pub projections: Vec<SimpleProjection>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            order: vec![
                ProcKind::Graph,
                ProcKind::Subterm,
                ProcKind::AutoRp,
                ProcKind::UserRp,
            ],
            coeff_bound: 2,
            interpretations: Vec::new(),
            projections: Vec::new(),
        }
    }
}

/// Search failure with the problems no processor could simplify.
#[derive(Clone, Debug)]
pub struct SearchFailure {
    pub frontier: Vec<DpProblem>,
    pub partial: Box<ProofTree>,
}

/// Builds a proof tree for `trs`, or reports the unresolved frontier.
pub fn search_proof(trs: &Trs, config: &SearchConfig) -> Result<ProofTree, SearchFailure> {
    let trs = Arc::new(trs.clone());
    let mut frontier = Vec::new();
    let root = build(DpProblem::initial(trs.clone()), config, &mut frontier);
    let tree = ProofTree { trs, root };
    if frontier.is_empty() {
        Ok(tree)
    } else {
        Err(SearchFailure {
            frontier,
            partial: Box::new(tree),
        })
    }
}

fn build(p: DpProblem, cfg: &SearchConfig, frontier: &mut Vec<DpProblem>) -> TreeNode {
    if p.is_empty() {
        return TreeNode::leaf(p, false);
    }
    for kind in &cfg.order {
        match kind {
            ProcKind::Graph => {
                if let Some((g, kids)) = apply_dependency_graph(&p) {
                    let children = kids
                        .into_iter()
                        .map(|(q, trivial)| {
                            if trivial {
                                TreeNode::leaf(q, true)
                            } else {
                                build(q, cfg, frontier)
                            }
                        })
                        .collect();
                    return TreeNode {
                        problem: p,
                        step: Some(ProcStep::DepGraph(g)),
                        children,
                        trivial_scc: false,
                    };
                }
            }
            ProcKind::Subterm => {
                let candidates = cfg.projections.iter().cloned().chain(all_projections(&p));
                for proj in candidates {
                    if let Ok(Some(r)) = apply_subterm_criterion(&p, &proj) {
                        let removed = r.removed_indices();
                        return single(p, ProcStep::Subterm { proj, removed }, r, cfg, frontier);
                    }
                }
            }
            ProcKind::AutoRp => {
                if let Some((interp, r)) = find_interpretation(&p, cfg.coeff_bound) {
                    let removed = r.removed_indices();
                    return single(
                        p,
                        ProcStep::ReductionPair { interp, removed },
                        r,
                        cfg,
                        frontier,
                    );
                }
            }
            ProcKind::UserRp => {
                for interp in &cfg.interpretations {
                    if let Ok(Some(r)) = apply_reduction_pair(&p, interp) {
                        let removed = r.removed_indices();
                        let step = ProcStep::ReductionPair {
                            interp: interp.clone(),
                            removed,
                        };
                        return single(p, step, r, cfg, frontier);
                    }
                }
            }
        }
    }
    frontier.push(p.clone());
    TreeNode::leaf(p, false)
}

fn single(
    p: DpProblem,
    step: ProcStep,
    r: Removal,
    cfg: &SearchConfig,
    frontier: &mut Vec<DpProblem>,
) -> TreeNode {
    TreeNode {
        problem: p,
        step: Some(step),
        children: vec![build(r.kept, cfg, frontier)],
        trivial_scc: false,
    }
}

struct Constraint {
    rule: Rule,
    is_pair: bool,
    /// Index into the symbol order after which all symbols are assigned.
    ready_at: usize,
}

/// Searches linear interpretations with coefficients in `0..=bound` that
/// weakly orient every rule and pair and strictly orient at least one pair.
/// Candidates are visited in a fixed order, so the result is deterministic.
pub fn find_interpretation(p: &DpProblem, bound: u64) -> Option<(LinearInterpretation, Removal)> {
    if p.is_empty() {
        return None;
    }
    let mut rules: Vec<(Rule, bool)> = p.trs.rules().iter().map(|r| (r.clone(), false)).collect();
    rules.extend(p.pairs.iter().map(|q| (q.rule.clone(), true)));
    let syms_of = |r: &Rule| -> Vec<Symbol> {
        let mut v: Vec<Symbol> = Vec::new();
        for t in r.lhs.subterms().into_iter().chain(r.rhs.subterms()) {
            if let Term::App(f, _) = t {
                if !v.contains(f) {
                    v.push(f.clone());
                }
            }
        }
        v
    };
    let rule_syms: Vec<Vec<Symbol>> = rules.iter().map(|(r, _)| syms_of(r)).collect();
    // Greedy order: next symbol completes the most constraints.
    let mut all: Vec<Symbol> = rule_syms.iter().flatten().cloned().collect();
    all.sort();
    all.dedup();
    let mut order: Vec<Symbol> = Vec::new();
    while order.len() < all.len() {
        let best = all
            .iter()
            .filter(|s| !order.contains(s))
            .max_by_key(|s| {
                let completes = rule_syms
                    .iter()
                    .filter(|rs| rs.contains(s) && rs.iter().all(|x| x == *s || order.contains(x)))
                    .count();
                let touches = rule_syms.iter().filter(|rs| rs.contains(s)).count();
                (completes, touches, s.is_marked(), std::cmp::Reverse((*s).clone()))
            })
            .expect("remaining symbol")
            .clone();
        order.push(best);
    }
    let constraints: Vec<Constraint> = rules
        .iter()
        .zip(&rule_syms)
        .map(|((rule, is_pair), syms)| Constraint {
            rule: rule.clone(),
            is_pair: *is_pair,
            ready_at: syms
                .iter()
                .map(|s| order.iter().position(|o| o == s).unwrap())
                .max()
                .unwrap_or(0),
        })
        .collect();
    let candidates: BTreeMap<usize, Vec<Vec<u64>>> = order
        .iter()
        .map(|s| (s.arity(), coefficient_vectors(s.arity() + 1, bound)))
        .collect();
    let mut interp = LinearInterpretation::new();
    if assign(0, &order, &constraints, &candidates, &mut interp) {
        let r = apply_reduction_pair(p, &interp).ok().flatten()?;
        return Some((interp, r));
    }
    None
}

fn assign(
    level: usize,
    order: &[Symbol],
    constraints: &[Constraint],
    candidates: &BTreeMap<usize, Vec<Vec<u64>>>,
    interp: &mut LinearInterpretation,
) -> bool {
    if level == order.len() {
        return constraints.iter().any(|c| {
            c.is_pair && interp.orient(&c.rule).ok() == Some(Orientation::Strict)
        });
    }
    let f = &order[level];
    for v in &candidates[&f.arity()] {
        interp.set(f, v[..f.arity()].to_vec(), v[f.arity()]);
        let ok = constraints
            .iter()
            .filter(|c| c.ready_at == level)
            .all(|c| !matches!(interp.orient(&c.rule), Ok(Orientation::None) | Err(Error::MissingInterpretation(_))));
        if ok && assign(level + 1, order, constraints, candidates, interp) {
            return true;
        }
    }
    false
}

/// All vectors of length `n` over `0..=bound`, by coordinate sum then lexicographically.
fn coefficient_vectors(n: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().sum::<u64>(), v.clone()));
    out
}
