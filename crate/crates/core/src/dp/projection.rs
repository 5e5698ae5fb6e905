//! Simple projections and the subterm criterion.

use std::collections::BTreeMap;
use std::fmt;

use super::{DpProblem, Removal};
use crate::error::{Error, Result};
use crate::term::{proper_subterm, Symbol, Term};

/// Maps each marked symbol `f#` to one of its argument positions (1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleProjection {
    map: BTreeMap<String, usize>,
}

impl SimpleProjection {
    pub fn new() -> SimpleProjection {
        SimpleProjection::default()
    }

    pub fn set(&mut self, sym: &Symbol, i: usize) {
        assert!(sym.is_marked(), "projections act on marked symbols");
        assert!(i >= 1 && i <= sym.arity(), "projection index out of range");
        self.map.insert(sym.display_name(), i);
    }

    pub fn get(&self, sym: &Symbol) -> Option<usize> {
        self.map.get(&sym.display_name()).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, usize)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// `π(t)` for a marked-rooted term.
    pub fn apply(&self, t: &Term) -> Result<Term> {
        let f = t
            .root()
            .filter(|f| f.is_marked())
            .ok_or_else(|| Error::Invalid(format!("projection applied to unmarked term {t}")))?;
        let i = self
            .get(f)
            .ok_or_else(|| Error::MissingInterpretation(f.display_name()))?;
        Ok(t.args()[i - 1].clone())
    }

    /// Reads `(PROJ f# i)` lines.
    pub fn parse(text: &str) -> Result<SimpleProjection> {
        let mut out = SimpleProjection::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Syntax {
                line: ln + 1,
                col: 1,
                msg: msg.to_string(),
            };
            let inner = line
                .strip_prefix('(')
                .and_then(|l| l.strip_suffix(')'))
                .ok_or_else(|| bad("expected a parenthesised PROJ entry"))?;
            let words: Vec<&str> = inner.split_whitespace().collect();
            if words.len() != 3 || words[0] != "PROJ" || !words[1].ends_with('#') {
                return Err(bad("expected (PROJ f# i)"));
            }
            let i: usize = words[2]
                .parse()
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| bad("expected a positive index"))?;
            out.map.insert(words[1].to_string(), i);
        }
        Ok(out)
    }
}

impl fmt::Display for SimpleProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(k, v)| format!("π({k})={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Subterm criterion processor. `Ok(None)` signals no progress.
pub fn apply_subterm_criterion(p: &DpProblem, proj: &SimpleProjection) -> Result<Option<Removal>> {
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for pair in &p.pairs {
        let l = proj.apply(pair.lhs())?;
        let r = proj.apply(pair.rhs())?;
        if l == r {
            kept.push(pair.clone());
        } else if proper_subterm(&r, &l) {
            removed.push(pair.clone());
        } else {
            return Ok(None);
        }
    }
    if removed.is_empty() {
        return Ok(None);
    }
    Ok(Some(Removal {
        kept: DpProblem::new(kept, p.trs.clone()),
        removed,
    }))
}

/// All simple projections for the marked symbols of `p`, in lexicographic
/// order of (symbol name, index).
pub fn all_projections(p: &DpProblem) -> Vec<SimpleProjection> {
    let mut syms: Vec<Symbol> = Vec::new();
    for pair in &p.pairs {
        for t in [pair.lhs(), pair.rhs()] {
            if let Some(f) = t.root() {
                if f.is_marked() && f.arity() > 0 && !syms.contains(f) {
                    syms.push(f.clone());
                }
            }
        }
    }
    syms.sort();
    let mut out = vec![SimpleProjection::new()];
    for f in &syms {
        let mut next = Vec::new();
        for base in &out {
            for i in 1..=f.arity() {
                let mut q = base.clone();
                q.set(f, i);
                next.push(q);
            }
        }
        out = next;
    }
    if syms.is_empty() {
        Vec::new()
    } else {
        out
    }
}
