//! Reduction pair functions and their bounded empirical validation.

use std::fmt;

use super::tree::{tree_position, ProcStep, ProofTree};
use crate::analysis::{dheight_relative, enumeration_signature, Fuel};
use crate::enumerate::terms_of_size;
use crate::error::{Error, Result};
use crate::term::{Rule, Term, Trs};

/// `g(n) = Σ c_j · n^j` with natural coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RpFunction {
    pub coeffs: Vec<u64>,
}

impl RpFunction {
    pub fn new(coeffs: Vec<u64>) -> RpFunction {
        RpFunction { coeffs }
    }

    /// Parses `c0,c1,...`.
    pub fn parse(text: &str) -> Result<RpFunction> {
        let coeffs = text
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("bad polynomial coefficient '{w}'")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(RpFunction { coeffs })
    }

    pub fn eval(&self, n: u64) -> u128 {
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            acc = acc.saturating_mul(n as u128).saturating_add(*c as u128);
        }
        acc
    }

    /// Degree ignoring trailing zero coefficients.
    pub fn trimmed(&self) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        if v.is_empty() {
            v.push(0);
        }
        v
    }
}

impl fmt::Display for RpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.trimmed().iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            parts.push(match j {
                0 => c.to_string(),
                1 if *c == 1 => "n".to_string(),
                1 => format!("{c}n"),
                _ if *c == 1 => format!("n^{j}"),
                _ => format!("{c}n^{j}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "g(n) = {}", parts.join(" + "))
    }
}

/// A reduction pair edge: strict pairs `P \ Q` and weak rules `Q ∪ R`.
#[derive(Clone, Debug)]
pub struct RpEdge {
    pub position: String,
    pub strict: Vec<Rule>,
    pub weak: Vec<Rule>,
}

pub fn rp_edges(tree: &ProofTree) -> Vec<RpEdge> {
    let mut out = Vec::new();
    for (p, n) in tree.nodes() {
        if let Some(ProcStep::ReductionPair { removed, .. }) = &n.step {
            let strict = n
                .problem
                .pairs
                .iter()
                .filter(|q| removed.contains(&q.index))
                .map(|q| q.rule.clone())
                .collect();
            let mut weak: Vec<Rule> = n
                .problem
                .pairs
                .iter()
                .filter(|q| !removed.contains(&q.index))
                .map(|q| q.rule.clone())
                .collect();
            weak.extend(tree.trs.rules().iter().cloned());
            out.push(RpEdge {
                position: tree_position(&p),
                strict,
                weak,
            });
        }
    }
    out
}

/// `t#` when the root of `t` is defined, `t` otherwise.
pub fn sharp_if_defined(t: &Term, trs: &Trs) -> Term {
    if trs.root_defined(t) {
        t.sharp()
    } else {
        t.clone()
    }
}

/// Result of a bounded check of `g` against a proof tree.
#[derive(Clone, Debug)]
pub struct RpReport {
    pub k: usize,
    /// Per edge, the maximal relative height among terms of each size `1..=n_max`.
    pub heights: Vec<(String, Vec<u64>)>,
    pub violation: Option<String>,
    pub indeterminate: Vec<String>,
    pub n_max: usize,
}

impl RpReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none() && self.indeterminate.is_empty()
    }

    pub fn render(&self, g: &RpFunction) -> String {
        let mut s = format!("{g}\nk = {}\n", self.k);
        for (pos, hs) in &self.heights {
            let v: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
            s.push_str(&format!("edge at {pos}: max heights by size [{}]\n", v.join(", ")));
        }
        for i in &self.indeterminate {
            s.push_str(&format!("indeterminate: {i}\n"));
        }
        match &self.violation {
            Some(v) => s.push_str(&format!("violation: {v}\n")),
            None if self.indeterminate.is_empty() => {
                s.push_str(&format!("validated up to n_max = {}\n", self.n_max))
            }
            None => {}
        }
        s
    }
}

/// Maximal relative heights per RP edge for term sizes `1..=n_max`.
pub fn rp_heights(
    tree: &ProofTree,
    n_max: usize,
    fuel: Fuel,
) -> (Vec<(String, Vec<u64>)>, Vec<String>) {
    let sig = enumeration_signature(&tree.trs);
    let by_size: Vec<Vec<Term>> = (1..=n_max).map(|n| terms_of_size(&sig, n)).collect();
    let mut heights = Vec::new();
    let mut indeterminate = Vec::new();
    for e in rp_edges(tree) {
        let mut per = Vec::new();
        for terms in &by_size {
            let mut best = 0;
            for t in terms {
                let ts = sharp_if_defined(t, &tree.trs);
                match dheight_relative(&ts, &e.strict, &e.weak, fuel) {
                    Ok(h) => best = best.max(h),
                    Err(err) => indeterminate.push(format!("{} at edge {}: {err}", t, e.position)),
                }
            }
            per.push(best);
        }
        heights.push((e.position, per));
    }
    (heights, indeterminate)
}

/// Checks `g(n) ≥ k` and `g(|t|) ≥` every relative height at a reduction
/// pair edge, for all terms up to size `n_max`.
pub fn validate_rp_function(tree: &ProofTree, g: &RpFunction, n_max: usize, fuel: Fuel) -> RpReport {
    let k = tree.max_scc_count();
    let mut violation = None;
    for n in 0..=n_max as u64 {
        if g.eval(n) < k as u128 {
            violation = Some(format!("g({n}) = {} < k = {k}", g.eval(n)));
            break;
        }
    }
    let (heights, indeterminate) = if violation.is_none() {
        rp_heights(tree, n_max, fuel)
    } else {
        (Vec::new(), Vec::new())
    };
    if violation.is_none() {
        'outer: for (pos, hs) in &heights {
            for (i, h) in hs.iter().enumerate() {
                let n = i as u64 + 1;
                if g.eval(n) < *h as u128 {
                    violation = Some(format!(
                        "edge at {pos}: a term of size {n} has relative height {h} > g({n}) = {}",
                        g.eval(n)
                    ));
                    break 'outer;
                }
            }
        }
    }
    RpReport {
        k,
        heights,
        violation,
        indeterminate,
        n_max,
    }
}

/// A linear candidate `g(n) = k + c·n` where `c` is the smallest slope
/// covering every observed height up to `n_max`.
pub fn suggest_rp_function(tree: &ProofTree, n_max: usize, fuel: Fuel) -> Result<RpFunction> {
    let (heights, indeterminate) = rp_heights(tree, n_max, fuel);
    if let Some(first) = indeterminate.first() {
        return Err(Error::Indeterminate(first.clone()));
    }
    let mut slope = 0u64;
    for (_, hs) in &heights {
        for (i, h) in hs.iter().enumerate() {
            let n = i as u64 + 1;
            slope = slope.max(h.div_ceil(n));
        }
    }
    Ok(RpFunction::new(vec![tree.max_scc_count() as u64, slope]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_and_display() {
        let g = RpFunction::parse("5,1").unwrap();
        assert_eq!(g.eval(3), 8);
        assert_eq!(g.to_string(), "g(n) = n + 5");
        assert_eq!(RpFunction::parse("0").unwrap().to_string(), "g(n) = 0");
        assert_eq!(RpFunction::parse("1,0,2").unwrap().eval(2), 9);
        assert!(RpFunction::parse("1,x").is_err());
    }
}
