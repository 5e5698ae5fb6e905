//! Dependency pairs, DP problems and the processors acting on them.

pub mod depgraph;
pub mod interp;
pub mod projection;
pub mod rpfun;
pub mod search;
pub mod tree;

use std::fmt;
use std::sync::Arc;

use crate::term::{proper_subterm, Rule, Term, Trs};

/// A dependency pair `l# -> u#` with a stable 1-based index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DependencyPair {
    pub index: usize,
    /// 0-based index of the rule it was extracted from.
    pub origin: usize,
    pub rule: Rule,
}

impl DependencyPair {
    pub fn lhs(&self) -> &Term {
        &self.rule.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rule.rhs
    }
}

impl fmt::Display for DependencyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.index, self.rule)
    }
}

/// All dependency pairs of `trs` under the Dershowitz condition.
///
/// Pairs are numbered by origin rule, then by the position of the rhs
/// subterm's root in the defined-symbol order (first appearance as an lhs
/// root), then by pre-order position in the rhs.
pub fn compute_dps(trs: &Trs) -> Vec<DependencyPair> {
    let order = trs.defined_order();
    let mut keyed = Vec::new();
    for (ri, rule) in trs.rules().iter().enumerate() {
        for (pi, pos) in rule.rhs.positions().into_iter().enumerate() {
            let u = rule.rhs.at(&pos).expect("own position");
            let Some(f) = u.root() else { continue };
            let Some(rank) = order.iter().position(|g| g == f) else {
                continue;
            };
            if proper_subterm(u, &rule.lhs) {
                continue;
            }
            let pair = Rule {
                lhs: rule.lhs.sharp(),
                rhs: u.sharp(),
            };
            keyed.push(((ri, rank, pi), pair));
        }
    }
    keyed.sort_by_key(|a| a.0);
    let mut out: Vec<DependencyPair> = Vec::new();
    for ((ri, _, _), rule) in keyed {
        if out.iter().any(|p| p.rule == rule) {
            continue;
        }
        out.push(DependencyPair {
            index: out.len() + 1,
            origin: ri,
            rule,
        });
    }
    out
}

/// A DP problem `(P, R)`. Pairs are kept sorted by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpProblem {
    pub pairs: Vec<DependencyPair>,
    pub trs: Arc<Trs>,
}

impl DpProblem {
    pub fn new(mut pairs: Vec<DependencyPair>, trs: Arc<Trs>) -> DpProblem {
        pairs.sort_by_key(|p| p.index);
        pairs.dedup_by_key(|p| p.index);
        DpProblem { pairs, trs }
    }

    /// The initial problem `(DP(R), R)`.
    pub fn initial(trs: Arc<Trs>) -> DpProblem {
        let pairs = compute_dps(&trs);
        DpProblem::new(pairs, trs)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.index).collect()
    }

    pub fn pair_rules(&self) -> Vec<Rule> {
        self.pairs.iter().map(|p| p.rule.clone()).collect()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.pairs.iter().any(|p| p.index == index)
    }

    /// The subproblem with exactly the given pair indices.
    pub fn restrict(&self, keep: &[usize]) -> DpProblem {
        DpProblem::new(
            self.pairs
                .iter()
                .filter(|p| keep.contains(&p.index))
                .cloned()
                .collect(),
            self.trs.clone(),
        )
    }

    /// Pair set rendered as `{1,3}` or `∅`.
    pub fn label(&self) -> String {
        if self.pairs.is_empty() {
            "∅".to_string()
        } else {
            let v: Vec<String> = self.pairs.iter().map(|p| p.index.to_string()).collect();
            format!("{{{}}}", v.join(","))
        }
    }
}

/// Successful removal of pairs by a processor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    pub kept: DpProblem,
    pub removed: Vec<DependencyPair>,
}

impl Removal {
    pub fn removed_indices(&self) -> Vec<usize> {
        self.removed.iter().map(|p| p.index).collect()
    }
}
