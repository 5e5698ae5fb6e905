//! Linear polynomial interpretations over the naturals.

use std::collections::BTreeMap;
use std::fmt;

use super::{DpProblem, Removal};
use crate::error::{Error, Result};
use crate::term::{Rule, Symbol, Term};

/// `f(x1..xn) ↦ a1·x1 + … + an·xn + b`, keyed by printed symbol name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearInterpretation {
    map: BTreeMap<String, (Vec<u64>, u64)>,
}

/// A linear polynomial `Σ c_x·x + c`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearPoly {
    pub coeffs: BTreeMap<String, i128>,
    pub constant: i128,
}

impl LinearPoly {
    fn scale_add(&mut self, other: &LinearPoly, k: i128) {
        for (x, c) in &other.coeffs {
            *self.coeffs.entry(x.clone()).or_insert(0) += k * c;
        }
        self.constant += k * other.constant;
    }

    fn minus(&self, other: &LinearPoly) -> LinearPoly {
        let mut out = self.clone();
        out.scale_add(other, -1);
        out
    }
}

/// Outcome of orienting a single rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Strict,
    Weak,
    None,
}

impl LinearInterpretation {
    pub fn new() -> LinearInterpretation {
        LinearInterpretation::default()
    }

    pub fn set(&mut self, sym: &Symbol, coeffs: Vec<u64>, constant: u64) {
        assert_eq!(coeffs.len(), sym.arity(), "one coefficient per argument");
        self.map.insert(sym.display_name(), (coeffs, constant));
    }

    pub fn get(&self, sym: &Symbol) -> Option<&(Vec<u64>, u64)> {
        self.map.get(&sym.display_name())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    /// Reads `(INTERP f n a1 … an b)` lines.
    pub fn parse(text: &str) -> Result<LinearInterpretation> {
        let mut out = LinearInterpretation::new();
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
                .ok_or_else(|| bad("expected a parenthesised INTERP entry"))?;
            let words: Vec<&str> = inner.split_whitespace().collect();
            if words.first() != Some(&"INTERP") || words.len() < 4 {
                return Err(bad("expected (INTERP f n a1 .. an b)"));
            }
            let nums: Vec<u64> = words[2..]
                .iter()
                .map(|w| w.parse::<u64>().map_err(|_| bad("expected a natural number")))
                .collect::<Result<_>>()?;
            let arity = nums[0] as usize;
            if nums.len() != arity + 2 {
                return Err(bad("coefficient count does not match arity"));
            }
            out.map
                .insert(words[1].to_string(), (nums[1..=arity].to_vec(), nums[arity + 1]));
        }
        Ok(out)
    }

    /// Evaluates a term to a linear polynomial over its variables.
    pub fn eval(&self, t: &Term) -> Result<LinearPoly> {
        match t {
            Term::Var(x) => Ok(LinearPoly {
                coeffs: BTreeMap::from([(x.to_string(), 1)]),
                constant: 0,
            }),
            Term::App(f, args) => {
                let (coeffs, b) = self
                    .get(f)
                    .ok_or_else(|| Error::MissingInterpretation(f.display_name()))?;
                if coeffs.len() != args.len() {
                    return Err(Error::Invalid(format!(
                        "interpretation of {} has arity {}",
                        f.display_name(),
                        coeffs.len()
                    )));
                }
                let mut out = LinearPoly {
                    coeffs: BTreeMap::new(),
                    constant: *b as i128,
                };
                for (a, arg) in coeffs.iter().zip(args.iter()) {
                    if *a != 0 {
                        out.scale_add(&self.eval(arg)?, *a as i128);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Orients a rule by absolute positiveness of `[l] - [r]`.
    pub fn orient(&self, rule: &Rule) -> Result<Orientation> {
        let diff = self.eval(&rule.lhs)?.minus(&self.eval(&rule.rhs)?);
        if diff.coeffs.values().any(|&c| c < 0) || diff.constant < 0 {
            Ok(Orientation::None)
        } else if diff.constant >= 1 {
            Ok(Orientation::Strict)
        } else {
            Ok(Orientation::Weak)
        }
    }
}

impl fmt::Display for LinearInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, (coeffs, b)) in &self.map {
            write!(f, "(INTERP {name} {}", coeffs.len())?;
            for c in coeffs {
                write!(f, " {c}")?;
            }
            writeln!(f, " {b})")?;
        }
        Ok(())
    }
}

/// Compact one-line rendering such as `d(x1)=2x1; s(x1)=x1+1`.
pub fn describe(interp: &LinearInterpretation) -> String {
    let mut parts = Vec::new();
    for (name, (coeffs, b)) in &interp.map {
        let vars: Vec<String> = (1..=coeffs.len()).map(|i| format!("x{i}")).collect();
        let mut terms = Vec::new();
        for (c, v) in coeffs.iter().zip(&vars) {
            match c {
                0 => {}
                1 => terms.push(v.clone()),
                _ => terms.push(format!("{c}{v}")),
            }
        }
        if *b != 0 || terms.is_empty() {
            terms.push(b.to_string());
        }
        let head = if vars.is_empty() {
            name.clone()
        } else {
            format!("{name}({})", vars.join(","))
        };
        parts.push(format!("{head}={}", terms.join("+")));
    }
    parts.join("; ")
}

/// `orient_check` on a single rule.
pub fn orient_check(interp: &LinearInterpretation, rule: &Rule) -> Result<Orientation> {
    interp.orient(rule)
}

/// Reduction pair processor. `Ok(None)` signals no progress.
pub fn apply_reduction_pair(p: &DpProblem, interp: &LinearInterpretation) -> Result<Option<Removal>> {
    for r in p.trs.rules() {
        if interp.orient(r)? == Orientation::None {
            return Ok(None);
        }
    }
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for pair in &p.pairs {
        match interp.orient(&pair.rule)? {
            Orientation::None => return Ok(None),
            Orientation::Weak => kept.push(pair.clone()),
            Orientation::Strict => removed.push(pair.clone()),
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{builtin, RSDIETER_A, RSSUP_A};
    use crate::parse::parse_trs;
    use std::sync::Arc;

    #[test]
    fn parse_and_print() {
        let i = LinearInterpretation::parse("(INTERP f 2 1 0 3)\n(INTERP a 0 1)").unwrap();
        assert_eq!(i.get(&Symbol::new("f", 2)), Some(&(vec![1, 0], 3)));
        assert_eq!(LinearInterpretation::parse(&i.to_string()).unwrap(), i);
        assert!(LinearInterpretation::parse("(INTERP f 2 1 0)").is_err());
    }

    #[test]
    fn strict_on_rsup_pair() {
        let a = LinearInterpretation::parse(RSSUP_A).unwrap();
        let r = parse_trs("(VAR x)(RULES d#(s(x)) -> d#(x))").unwrap();
        assert_eq!(orient_check(&a, &r.rules()[0]).unwrap(), Orientation::Strict);
    }

    #[test]
    fn identity_is_weak() {
        let z = LinearInterpretation::new();
        let r = Rule {
            lhs: Term::var("x"),
            rhs: Term::var("x"),
        };
        assert_eq!(orient_check(&z, &r).unwrap(), Orientation::Weak);
    }

    #[test]
    fn missing_symbol() {
        let r = parse_trs("(VAR x)(RULES f(x) -> x)").unwrap();
        assert!(matches!(
            orient_check(&LinearInterpretation::new(), &r.rules()[0]),
            Err(Error::MissingInterpretation(_))
        ));
    }

    #[test]
    fn zero_interpretation_makes_no_progress() {
        let e = builtin("rsdieter", None).unwrap();
        let p = DpProblem::initial(Arc::new(e.trs));
        let mut z = LinearInterpretation::new();
        z.set(&Symbol::new("o", 2), vec![0, 0], 0);
        z.set(&Symbol::new("o", 2).marked(), vec![0, 0], 0);
        z.set(&Symbol::new("i", 1), vec![0], 0);
        assert_eq!(apply_reduction_pair(&p, &z).unwrap(), None);
        let a = LinearInterpretation::parse(RSDIETER_A).unwrap();
        let rem = apply_reduction_pair(&p, &a).unwrap().unwrap();
        assert_eq!(rem.removed_indices(), [2, 4, 5]);
    }
}
