//! Proof trees: DP problems connected by processor applications.

use std::fmt::Write as _;
use std::sync::Arc;

use super::depgraph::{apply_dependency_graph, DepGraph};
use super::interp::{apply_reduction_pair, describe, LinearInterpretation};
use super::projection::{apply_subterm_criterion, SimpleProjection};
use super::DpProblem;
use crate::term::{Position, Trs};

/// The processor applied at an inner node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProcStep {
    ReductionPair {
        interp: LinearInterpretation,
        removed: Vec<usize>,
    },
    DepGraph(DepGraph),
    Subterm {
        proj: SimpleProjection,
        removed: Vec<usize>,
    },
}

impl ProcStep {
    pub fn tag(&self) -> &'static str {
        match self {
            ProcStep::ReductionPair { .. } => "RP",
            ProcStep::DepGraph(_) => "DG",
            ProcStep::Subterm { .. } => "SC",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub problem: DpProblem,
    pub step: Option<ProcStep>,
    pub children: Vec<TreeNode>,
    /// Set on leaves that are trivial SCCs of the parent's graph.
    pub trivial_scc: bool,
}

impl TreeNode {
    pub fn leaf(problem: DpProblem, trivial_scc: bool) -> TreeNode {
        TreeNode {
            problem,
            step: None,
            children: Vec::new(),
            trivial_scc,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty() && self.step.is_none()
    }
}

/// A proof tree rooted at `(DP(R), R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub trs: Arc<Trs>,
    pub root: TreeNode,
}

/// Renders tree positions as concatenated digits (`ε`, `1`, `11`), falling
/// back to dotted notation when some child index exceeds 9.
pub fn tree_position(p: &Position) -> String {
    if p.is_root() {
        "ε".to_string()
    } else if p.0.iter().all(|&i| i < 10) {
        p.0.iter().map(|i| i.to_string()).collect()
    } else {
        p.to_string()
    }
}

impl ProofTree {
    /// All nodes with their positions, in pre-order.
    pub fn nodes(&self) -> Vec<(Position, &TreeNode)> {
        let mut out = Vec::new();
        let mut stack = vec![(Position::root(), &self.root)];
        while let Some((p, n)) = stack.pop() {
            for (i, c) in n.children.iter().enumerate().rev() {
                stack.push((p.child(i + 1), c));
            }
            out.push((p, n));
        }
        out
    }

    pub fn node(&self, pos: &Position) -> Option<&TreeNode> {
        let mut cur = &self.root;
        for &i in &pos.0 {
            cur = cur.children.get(i.checked_sub(1)?)?;
        }
        Some(cur)
    }

    /// Length of the longest root-to-leaf path, in edges.
    pub fn depth(&self) -> usize {
        self.nodes().iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    /// Maximal number of SCCs in any graph processor application.
    pub fn max_scc_count(&self) -> usize {
        self.nodes()
            .iter()
            .filter_map(|(_, n)| match &n.step {
                Some(ProcStep::DepGraph(g)) => Some(g.sccs.len()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn has_reduction_pair(&self) -> bool {
        self.nodes()
            .iter()
            .any(|(_, n)| matches!(n.step, Some(ProcStep::ReductionPair { .. })))
    }

    /// Positions of the nodes whose problem contains pair `index`.
    pub fn path_of_pair(&self, index: usize) -> Vec<Position> {
        self.nodes()
            .into_iter()
            .filter(|(_, n)| n.problem.contains(index))
            .map(|(p, _)| p)
            .collect()
    }

    /// One line per node: `position | pairs | processor | detail`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (p, n) in self.nodes() {
            let (tag, detail) = match &n.step {
                None if n.problem.is_empty() => ("leaf", "(∅, R)".to_string()),
                None if n.trivial_scc => ("leaf", "trivial SCC".to_string()),
                None => ("open", "no processor applies".to_string()),
                Some(ProcStep::DepGraph(g)) => {
                    let parts: Vec<String> = g
                        .sccs
                        .iter()
                        .map(|s| {
                            let v: Vec<String> = s.pairs.iter().map(|i| i.to_string()).collect();
                            format!(
                                "{{{}}} rank {}{}",
                                v.join(","),
                                s.rank,
                                if s.trivial { " trivial" } else { "" }
                            )
                        })
                        .collect();
                    ("DG", parts.join("; "))
                }
                Some(ProcStep::ReductionPair { interp, removed }) => (
                    "RP",
                    format!("removes {} with {}", index_set(removed), describe(interp)),
                ),
                Some(ProcStep::Subterm { proj, removed }) => {
                    ("SC", format!("removes {} with {}", index_set(removed), proj))
                }
            };
            let _ = writeln!(
                out,
                "{} | {} | {} | {}",
                tree_position(&p),
                n.problem.label(),
                tag,
                detail
            );
        }
        out
    }

    /// Re-checks every processor application and the shape conditions of a
    /// proof tree. Returns the list of violations (empty when valid).
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let init = DpProblem::initial(self.trs.clone());
        if self.root.problem != init {
            errs.push("root is not (DP(R), R)".to_string());
        }
        for (p, n) in self.nodes() {
            let at = tree_position(&p);
            match &n.step {
                None => {
                    if !n.problem.is_empty() && !n.trivial_scc {
                        errs.push(format!("{at}: open leaf {}", n.problem.label()));
                    }
                }
                Some(ProcStep::DepGraph(g)) => match apply_dependency_graph(&n.problem) {
                    None => errs.push(format!("{at}: graph processor makes no progress")),
                    Some((g2, kids)) => {
                        if &g2 != g {
                            errs.push(format!("{at}: recorded graph differs from estimate"));
                        }
                        let got: Vec<(DpProblem, bool)> = n
                            .children
                            .iter()
                            .map(|c| (c.problem.clone(), c.trivial_scc))
                            .collect();
                        if got != kids {
                            errs.push(format!("{at}: children do not match the SCCs"));
                        }
                        for c in &n.children {
                            if c.trivial_scc && !c.is_leaf() {
                                errs.push(format!("{at}: trivial SCC is not a leaf"));
                            }
                        }
                    }
                },
                Some(ProcStep::ReductionPair { interp, removed }) => {
                    match apply_reduction_pair(&n.problem, interp) {
                        Ok(Some(r)) => {
                            check_single(&mut errs, &at, n, &r.kept, &r.removed_indices(), removed)
                        }
                        _ => errs.push(format!("{at}: reduction pair does not apply")),
                    }
                }
                Some(ProcStep::Subterm { proj, removed }) => {
                    match apply_subterm_criterion(&n.problem, proj) {
                        Ok(Some(r)) => {
                            check_single(&mut errs, &at, n, &r.kept, &r.removed_indices(), removed)
                        }
                        _ => errs.push(format!("{at}: subterm criterion does not apply")),
                    }
                }
            }
        }
        errs
    }
}

fn check_single(
    errs: &mut Vec<String>,
    at: &str,
    n: &TreeNode,
    kept: &DpProblem,
    removed: &[usize],
    recorded: &[usize],
) {
    if removed != recorded {
        errs.push(format!("{at}: recorded removal differs"));
    }
    if n.children.len() != 1 || &n.children[0].problem != kept {
        errs.push(format!("{at}: child is not the remaining problem"));
    }
}

pub fn index_set(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", s.join(","))
}
