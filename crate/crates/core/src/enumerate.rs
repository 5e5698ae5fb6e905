//! Exhaustive enumeration of ground terms by size.

use std::collections::BTreeMap;

use crate::term::{Symbol, Term};

/// All ground terms over `symbols` with size exactly `n`, in a fixed order.
pub fn terms_of_size(symbols: &[Symbol], n: usize) -> Vec<Term> {
    let mut memo = BTreeMap::new();
    sized(symbols, n, &mut memo)
}

/// All ground terms over `symbols` with size at most `max`, smallest first.
pub fn terms_up_to(symbols: &[Symbol], max: usize) -> Vec<Term> {
    let mut memo = BTreeMap::new();
    (1..=max).flat_map(|n| sized(symbols, n, &mut memo)).collect()
}

fn sized(symbols: &[Symbol], n: usize, memo: &mut BTreeMap<usize, Vec<Term>>) -> Vec<Term> {
    if n == 0 {
        return Vec::new();
    }
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    for f in symbols {
        let k = f.arity();
        if k == 0 {
            if n == 1 {
                out.push(Term::constant(f.clone()));
            }
            continue;
        }
        if n < k + 1 {
            continue;
        }
        for split in compositions(n - 1, k) {
            let mut partial: Vec<Vec<Term>> = vec![Vec::new()];
            for part in split {
                let choices = sized(symbols, part, memo);
                let mut next = Vec::with_capacity(partial.len() * choices.len());
                for p in &partial {
                    for c in &choices {
                        let mut q = p.clone();
                        q.push(c.clone());
                        next.push(q);
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            out.extend(partial.into_iter().map(|args| Term::app(f.clone(), args)));
        }
    }
    memo.insert(n, out.clone());
    out
}

/// Ordered ways to write `n` as a sum of `k` positive parts.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if k == 1 {
        return if n >= 1 { vec![vec![n]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
