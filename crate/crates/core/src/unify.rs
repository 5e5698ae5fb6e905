//! Substitutions, matching and syntactic unification.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::term::Term;

/// A finite map from variable names to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<Arc<str>, Term>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn get(&self, x: &str) -> Option<&Term> {
        self.0.get(x)
    }

    pub fn insert(&mut self, x: &str, t: Term) {
        self.0.insert(Arc::from(x), t);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.0.iter().map(|(k, v)| (&**k, v))
    }

    /// `t·σ`. Variables outside the domain are left unchanged.
    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(x) => self.0.get(x).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => {
                if args.is_empty() {
                    return t.clone();
                }
                Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} ↦ {v}")?;
        }
        f.write_str("}")
    }
}

/// Most general matcher: `σ` with `pattern·σ = subject`.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    if match_into(pattern, subject, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

/// Extends `sigma` to match `pattern` against `subject`.
pub fn match_into(pattern: &Term, subject: &Term, sigma: &mut Substitution) -> bool {
    let mut stack = vec![(pattern, subject)];
    while let Some((p, s)) = stack.pop() {
        match p {
            Term::Var(x) => match sigma.0.get(x) {
                Some(bound) if bound != s => return false,
                Some(_) => {}
                None => {
                    sigma.0.insert(x.clone(), s.clone());
                }
            },
            Term::App(f, pargs) => match s {
                Term::App(g, sargs) if f == g => {
                    stack.extend(pargs.iter().zip(sargs.iter()));
                }
                _ => return false,
            },
        }
    }
    true
}

/// Most general unifier with occurs check, in triangular-free (idempotent) form.
pub fn unify_terms(s: &Term, t: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    let mut eqs = vec![(s.clone(), t.clone())];
    while let Some((a, b)) = eqs.pop() {
        let a = sigma.apply(&a);
        let b = sigma.apply(&b);
        match (&a, &b) {
            _ if a == b => {}
            (Term::Var(x), other) | (other, Term::Var(x)) => {
                if other.has_var(x) {
                    return None;
                }
                let mut single = Substitution::new();
                single.0.insert(x.clone(), other.clone());
                for v in sigma.0.values_mut() {
                    *v = single.apply(v);
                }
                sigma.0.insert(x.clone(), other.clone());
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g {
                    return None;
                }
                eqs.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
        }
    }
    Some(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Symbol;

    fn c(name: &str) -> Term {
        Term::constant(Symbol::new(name, 0))
    }
    fn f2(a: Term, b: Term) -> Term {
        Term::app(Symbol::new("f", 2), vec![a, b])
    }

    #[test]
    fn nonlinear_clash() {
        let p = f2(Term::var("x"), Term::var("x"));
        assert!(match_term(&p, &f2(c("a"), c("b"))).is_none());
        let s = match_term(&p, &f2(c("a"), c("a"))).unwrap();
        assert_eq!(s.get("x"), Some(&c("a")));
    }

    #[test]
    fn variable_pattern() {
        let t = Term::app(Symbol::new("g", 1), vec![c("a")]);
        let s = match_term(&Term::var("x"), &t).unwrap();
        assert_eq!(s.apply(&Term::var("x")), t);
    }

    #[test]
    fn unify_basic() {
        let s = unify_terms(&f2(Term::var("x"), c("b")), &f2(c("a"), Term::var("y"))).unwrap();
        assert_eq!(s.get("x"), Some(&c("a")));
        assert_eq!(s.get("y"), Some(&c("b")));
    }

    #[test]
    fn occurs_check() {
        let x = Term::var("x");
        let fx = Term::app(Symbol::new("g", 1), vec![x.clone()]);
        assert!(unify_terms(&x, &fx).is_none());
    }

    #[test]
    fn unifier_is_idempotent() {
        let g = Symbol::new("g", 1);
        let s = f2(Term::var("x"), Term::app(g.clone(), vec![Term::var("y")]));
        let t = f2(Term::app(g, vec![Term::var("z")]), Term::var("x"));
        let u = unify_terms(&s, &t).unwrap();
        assert_eq!(u.apply(&s), u.apply(&t));
        assert_eq!(u.apply(&u.apply(&s)), u.apply(&s));
    }
}
