//! Lexicographic path order and precedence handling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::sim::SimSystem;
use crate::term::{Rule, Term, Trs};

/// A strict precedence on symbol names, kept transitively closed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Precedence {
    above: BTreeMap<String, BTreeSet<String>>,
}

impl Precedence {
    pub fn new() -> Precedence {
        Precedence::default()
    }

    /// Builds the closure of `pairs`, rejecting cycles.
    pub fn from_pairs<I, A, B>(pairs: I) -> Result<Precedence>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut p = Precedence::new();
        for (a, b) in pairs {
            p.add(&a.into(), &b.into())?;
        }
        Ok(p)
    }

    /// Adds `a ≻ b` and closes transitively.
    pub fn add(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b || self.greater(b, a) {
            return Err(Error::Invalid(format!("precedence {a} > {b} creates a cycle")));
        }
        let mut below: BTreeSet<String> = self.above.get(b).cloned().unwrap_or_default();
        below.insert(b.to_string());
        let mut uppers: Vec<String> = self
            .above
            .iter()
            .filter(|(_, s)| s.contains(a))
            .map(|(k, _)| k.clone())
            .collect();
        uppers.push(a.to_string());
        for u in uppers {
            self.above.entry(u).or_default().extend(below.iter().cloned());
        }
        Ok(())
    }

    pub fn greater(&self, a: &str, b: &str) -> bool {
        self.above.get(a).map(|s| s.contains(b)).unwrap_or(false)
    }

    /// All `(greater, smaller)` pairs.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.above
            .iter()
            .flat_map(|(a, s)| s.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    /// Parses `(PREC a > b > c)` blocks.
    pub fn parse(text: &str) -> Result<Precedence> {
        let mut p = Precedence::new();
        let mut rest = text;
        while let Some(start) = rest.find("(PREC") {
            let body = &rest[start + 5..];
            let end = body
                .find(')')
                .ok_or_else(|| Error::Invalid("unterminated PREC block".into()))?;
            let chain: Vec<&str> = body[..end].split('>').map(str::trim).collect();
            if chain.len() < 2 || chain.iter().any(|s| s.is_empty() || s.contains(char::is_whitespace)) {
                return Err(Error::Invalid(format!("bad PREC block '{}'", body[..end].trim())));
            }
            for w in chain.windows(2) {
                p.add(w[0], w[1])?;
            }
            rest = &body[end + 1..];
        }
        Ok(p)
    }
}

impl fmt::Display for Precedence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            writeln!(f, "(PREC {a} > {b})")?;
        }
        Ok(())
    }
}

/// `s ≻lpo t` with left-to-right lexicographic status.
pub fn lpo_greater(s: &Term, t: &Term, prec: &Precedence) -> bool {
    let Term::App(f, ss) = s else {
        return false;
    };
    if ss.iter().any(|si| si == t || lpo_greater(si, t, prec)) {
        return true;
    }
    let Term::App(g, ts) = t else {
        return false;
    };
    let dominates = || ts.iter().all(|tj| lpo_greater(s, tj, prec));
    if prec.greater(&f.display_name(), &g.display_name()) {
        return dominates();
    }
    if f == g {
        if let Some(i) = (0..ss.len()).find(|&i| ss[i] != ts[i]) {
            return lpo_greater(&ss[i], &ts[i], prec) && dominates();
        }
    }
    false
}

/// Per-rule orientation verdicts.
#[derive(Clone, Debug)]
pub struct LpoReport {
    pub verdicts: Vec<(String, Rule, bool)>,
}

impl LpoReport {
    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.2)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (n, r, ok) in &self.verdicts {
            out.push_str(&format!("{n}: {r} : {}\n", if *ok { "oriented" } else { "NOT oriented" }));
        }
        out.push_str(if self.ok() {
            "all rules oriented\n"
        } else {
            "some rules are not oriented\n"
        });
        out
    }
}

pub fn check_compatible(trs: &Trs, prec: &Precedence) -> LpoReport {
    let names = (1..=trs.rules().len()).map(|i| i.to_string());
    check_named(names.zip(trs.rules().iter().cloned()), prec)
}

fn check_named(rules: impl Iterator<Item = (String, Rule)>, prec: &Precedence) -> LpoReport {
    LpoReport {
        verdicts: rules
            .map(|(n, r)| {
                let ok = lpo_greater(&r.lhs, &r.rhs, prec);
                (n, r, ok)
            })
            .collect(),
    }
}

/// Checks a generated system rule by rule, reporting rule names.
pub fn check_sim(sys: &SimSystem, prec: &Precedence) -> LpoReport {
    check_named(sys.rules_named().map(|(n, r)| (n.to_string(), r.clone())), prec)
}

/// `h, z ≻ f ≻ choice ≻ g, size ≻ times ≻ s ≻ 0 ≻ c, bot` and `g ≻ mult ≻ plus ≻ s`.
pub fn rsim_precedence(sys: &SimSystem) -> Precedence {
    let sy = &sys.symbols;
    let n = |s: &crate::term::Symbol| s.name().to_string();
    let chain = [
        (n(&sy.h), n(&sy.f)),
        (n(&sy.z), n(&sy.f)),
        (n(&sy.f), n(&sy.choice)),
        (n(&sy.choice), n(&sy.g)),
        (n(&sy.choice), n(&sy.size)),
        (n(&sy.size), n(&sy.times)),
        (n(&sy.g), n(&sy.times)),
        (n(&sy.times), n(&sy.s)),
        (n(&sy.s), n(&sy.zero)),
        (n(&sy.zero), n(&sy.c)),
        (n(&sy.zero), n(&sy.bot)),
        (n(&sy.g), n(&sy.mult)),
        (n(&sy.mult), n(&sy.plus)),
        (n(&sy.plus), n(&sy.s)),
    ];
    Precedence::from_pairs(chain).expect("fixed chain is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::rpfun::RpFunction;
    use crate::parse::parse_trs;
    use crate::sim::{generate_with, SimConstants};

    fn t(s: &str, trs: &Trs) -> Term {
        crate::parse::parse_term(s, trs, &["x", "y"]).unwrap()
    }

    #[test]
    fn basic_cases() {
        let trs = parse_trs("(VAR x)(RULES times(s(x)) -> s(s(times(x))) times(0) -> 0)").unwrap();
        let none = Precedence::new();
        assert!(lpo_greater(&t("s(x)", &trs), &t("x", &trs), &none));
        assert!(!lpo_greater(&t("x", &trs), &t("y", &trs), &none));
        let p = Precedence::parse("(PREC times > s)").unwrap();
        assert!(lpo_greater(&t("times(s(x))", &trs), &t("s(s(times(x)))", &trs), &p));
        assert!(!lpo_greater(&t("times(s(x))", &trs), &t("s(s(times(x)))", &trs), &none));
        let r = check_compatible(&trs, &p);
        assert!(r.ok());
        let loopy = parse_trs("(VAR x)(RULES f(x) -> f(x))").unwrap();
        assert!(!check_compatible(&loopy, &p).ok());
    }

    #[test]
    fn precedence_closure_and_cycles() {
        let p = Precedence::parse("(PREC a > b > c)\n(PREC d > a)").unwrap();
        assert!(p.greater("d", "c") && p.greater("a", "c"));
        assert!(!p.greater("c", "a"));
        assert!(Precedence::parse("(PREC a > b)(PREC b > a)").is_err());
        assert!(Precedence::parse("(PREC a >)").is_err());
        assert_eq!(Precedence::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn simulating_precedence() {
        let sys = generate_with(SimConstants { d: 3, a: 2, c: 2 }, &RpFunction::new(vec![5, 1])).unwrap();
        let p = rsim_precedence(&sys);
        assert!(p.greater("f", "choice"));
        assert!(p.greater("times", "s"));
        assert!(p.greater("h", "bot"));
        assert!(!p.pairs().iter().any(|(a, _)| a == "c"));
        assert!(check_sim(&sys, &p).ok());
    }

    #[test]
    fn arithmetic_rules_are_oriented() {
        let trs = parse_trs(
            "(VAR x y)(RULES plus(0,y) -> y plus(s(x),y) -> s(plus(x,y)) \
             mult(0,y) -> 0 mult(s(x),y) -> plus(mult(x,y),y) g(x) -> plus(s(0), mult(x, s(0))))",
        )
        .unwrap();
        let p = Precedence::parse("(PREC g > mult > plus > s > 0)").unwrap();
        assert!(check_compatible(&trs, &p).ok());
    }
}
