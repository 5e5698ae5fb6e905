//! One-step rewriting.

use crate::term::{Position, Rule, Term};
use crate::unify::match_term;

/// Where redexes may be contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Anywhere,
    RootOnly,
    BelowRoot,
}

/// A single rewrite step: rule index (0-based), redex position, result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: usize,
    pub pos: Position,
    pub result: Term,
}

/// Contracts the redex of `rule` at `pos`, if `t|pos` is an instance of its lhs.
pub fn rewrite_at(t: &Term, rule: &Rule, pos: &Position) -> Option<Term> {
    let sub = t.at(pos)?;
    let sigma = match_term(&rule.lhs, sub)?;
    Some(t.replace_at(&pos.0, sigma.apply(&rule.rhs)))
}

/// All one-step successors, ordered leftmost-innermost by position and then
/// by rule index.
pub fn rewrite_successors(t: &Term, rules: &[Rule], scope: Scope) -> Vec<Step> {
    let mut out = Vec::new();
    for pos in t.positions_innermost() {
        let allowed = match scope {
            Scope::Anywhere => true,
            Scope::RootOnly => pos.is_root(),
            Scope::BelowRoot => !pos.is_root(),
        };
        if !allowed {
            continue;
        }
        let sub = t.at(&pos).expect("position from the term itself");
        if sub.is_var() {
            continue;
        }
        for (i, rule) in rules.iter().enumerate() {
            if let Some(sigma) = match_term(&rule.lhs, sub) {
                out.push(Step {
                    rule: i,
                    result: t.replace_at(&pos.0, sigma.apply(&rule.rhs)),
                    pos: pos.clone(),
                });
            }
        }
    }
    out
}

/// True iff some rule applies at some position of `t`.
pub fn has_redex(t: &Term, rules: &[Rule]) -> bool {
    t.subterms()
        .into_iter()
        .any(|s| !s.is_var() && rules.iter().any(|r| match_term(&r.lhs, s).is_some()))
}
