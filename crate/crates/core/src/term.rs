//! First-order terms, rules and rewrite systems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Role of a function symbol within a rewrite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Constructor,
    Defined,
    Marked,
}

/// A function symbol. Marked symbols (`f#`) share name and arity with their
/// unmarked origin and differ only in the `marked` flag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
    marked: bool,
}

impl Symbol {
    pub fn new(name: &str, arity: usize) -> Symbol {
        assert!(!name.is_empty(), "symbol names are nonempty");
        Symbol {
            name: Arc::from(name),
            arity,
            marked: false,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_marked(&self) -> bool {
        self.marked
    }

    /// The dependency pair symbol `f#`.
    pub fn marked(&self) -> Symbol {
        Symbol {
            marked: true,
            ..self.clone()
        }
    }

    pub fn unmarked(&self) -> Symbol {
        Symbol {
            marked: false,
            ..self.clone()
        }
    }

    /// Printed name, with a trailing `#` for marked symbols.
    pub fn display_name(&self) -> String {
        if self.marked {
            format!("{}#", self.name)
        } else {
            self.name.to_string()
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.marked {
            f.write_str("#")?;
        }
        Ok(())
    }
}

/// A position in a term: a sequence of 1-based argument indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Position {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    pub fn concat(&self, other: &Position) -> Position {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Position(v)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Self {
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// A first-order term. Argument lists are shared, so cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Arc<str>),
    App(Symbol, Arc<[Term]>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn app(sym: Symbol, args: Vec<Term>) -> Term {
        assert_eq!(
            sym.arity(),
            args.len(),
            "arity mismatch for symbol {}",
            sym.display_name()
        );
        Term::App(sym, Arc::from(args))
    }

    pub fn constant(sym: Symbol) -> Term {
        Term::app(sym, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn root(&self) -> Option<&Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// Height of the term tree; constants and variables have depth 0.
    pub fn depth(&self) -> usize {
        self.args()
            .iter()
            .map(|a| a.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Variables in left-to-right order of first occurrence.
    pub fn vars(&self) -> Vec<Arc<str>> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Term::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn has_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => &**y == x,
            Term::App(_, args) => args.iter().any(|a| a.has_var(x)),
        }
    }

    pub fn at(&self, pos: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in &pos.0 {
            cur = cur.args().get(i.checked_sub(1)?)?;
        }
        Some(cur)
    }

    /// Replace the subterm at `pos`. Panics on an invalid position.
    pub fn replace_at(&self, pos: &[usize], new: Term) -> Term {
        match pos.split_first() {
            None => new,
            Some((&i, rest)) => match self {
                Term::App(f, args) => {
                    let mut v: Vec<Term> = args.to_vec();
                    v[i - 1] = v[i - 1].replace_at(rest, new);
                    Term::App(f.clone(), Arc::from(v))
                }
                Term::Var(_) => panic!("invalid position below a variable"),
            },
        }
    }

    /// All positions in pre-order (root first, then arguments left to right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        self.pre_order(&mut Vec::new(), &mut out);
        out
    }

    fn pre_order(&self, cur: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position(cur.clone()));
        for (i, a) in self.args().iter().enumerate() {
            cur.push(i + 1);
            a.pre_order(cur, out);
            cur.pop();
        }
    }

    /// All positions in post-order: leftmost-innermost first, root last.
    pub fn positions_innermost(&self) -> Vec<Position> {
        let mut out = Vec::new();
        self.post_order(&mut Vec::new(), &mut out);
        out
    }

    fn post_order(&self, cur: &mut Vec<usize>, out: &mut Vec<Position>) {
        for (i, a) in self.args().iter().enumerate() {
            cur.push(i + 1);
            a.post_order(cur, out);
            cur.pop();
        }
        out.push(Position(cur.clone()));
    }

    /// Iterate over all subterms (including `self`) in pre-order.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            for a in t.args().iter().rev() {
                stack.push(a);
            }
        }
        out
    }

    /// `self ⊴ t`.
    pub fn is_subterm_of(&self, t: &Term) -> bool {
        self == t || t.args().iter().any(|a| self.is_subterm_of(a))
    }

    /// First non-root position at which `u` occurs in `self`, if any.
    pub fn find_proper(&self, u: &Term) -> Option<Position> {
        for (i, a) in self.args().iter().enumerate() {
            if a == u {
                return Some(Position(vec![i + 1]));
            }
            if let Some(p) = a.find_proper(u) {
                let mut v = vec![i + 1];
                v.extend(p.0);
                return Some(Position(v));
            }
        }
        None
    }

    /// `t#`: mark the root symbol. Variables are left unchanged.
    pub fn sharp(&self) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.marked(), args.clone()),
        }
    }

    pub fn unsharp(&self) -> Term {
        match self {
            Term::App(f, args) if f.is_marked() => Term::App(f.unmarked(), args.clone()),
            _ => self.clone(),
        }
    }

    /// Numeral `s^n(0)` over the given successor and zero symbols.
    pub fn numeral(succ: &Symbol, zero: &Symbol, n: usize) -> Term {
        let mut t = Term::constant(zero.clone());
        for _ in 0..n {
            t = Term::app(succ.clone(), vec![t]);
        }
        t
    }

    /// Inverse of [`Term::numeral`].
    pub fn as_numeral(&self, succ: &str, zero: &str) -> Option<usize> {
        let mut n = 0;
        let mut cur = self;
        loop {
            match cur {
                Term::App(f, args) if f.name() == zero && args.is_empty() && !f.is_marked() => {
                    return Some(n)
                }
                Term::App(f, args) if f.name() == succ && args.len() == 1 && !f.is_marked() => {
                    n += 1;
                    cur = &args[0];
                }
                _ => return None,
            }
        }
    }

    pub fn rename_vars(&self, suffix: &str) -> Term {
        match self {
            Term::Var(x) => Term::var(&format!("{x}{suffix}")),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.rename_vars(suffix)).collect(),
            ),
        }
    }
}

/// `u ⊲ t`: `u` occurs in `t` at a non-root position.
pub fn proper_subterm(u: &Term, t: &Term) -> bool {
    t.args().iter().any(|a| u.is_subterm_of(a))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::App(sym, args) => {
                write!(f, "{sym}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    /// Builds a rule, rejecting variable left-hand sides and extra variables.
    pub fn new(lhs: Term, rhs: Term) -> Result<Rule> {
        if lhs.is_var() {
            return Err(Error::VariableLhs(lhs.to_string()));
        }
        for x in rhs.vars() {
            if !lhs.has_var(&x) {
                return Err(Error::ExtraVariable {
                    var: x.to_string(),
                    rule: format!("{lhs} -> {rhs}"),
                });
            }
        }
        Ok(Rule { lhs, rhs })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// A finite term rewrite system with its signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trs {
    rules: Vec<Rule>,
    signature: BTreeMap<Symbol, SymbolKind>,
    /// Variables declared in the source file (kept for rendering).
    declared_vars: BTreeSet<String>,
}

impl Trs {
    /// Builds a TRS from rules plus any extra signature symbols. Kinds are
    /// inferred: a symbol is defined iff it roots some left-hand side.
    pub fn new(rules: Vec<Rule>, extra: impl IntoIterator<Item = Symbol>) -> Result<Trs> {
        let mut signature: BTreeMap<Symbol, SymbolKind> = BTreeMap::new();
        let mut by_name: BTreeMap<String, usize> = BTreeMap::new();
        let mut add = |s: &Symbol, sig: &mut BTreeMap<Symbol, SymbolKind>| -> Result<()> {
            let key = s.display_name();
            match by_name.get(&key) {
                Some(&a) if a != s.arity() => Err(Error::ArityMismatch {
                    symbol: key,
                    expected: a,
                    found: s.arity(),
                }),
                _ => {
                    by_name.insert(key, s.arity());
                    let kind = if s.is_marked() {
                        SymbolKind::Marked
                    } else {
                        SymbolKind::Constructor
                    };
                    sig.entry(s.clone()).or_insert(kind);
                    Ok(())
                }
            }
        };
        for s in extra {
            add(&s, &mut signature)?;
        }
        let mut vars = BTreeSet::new();
        for r in &rules {
            for side in [&r.lhs, &r.rhs] {
                for t in side.subterms() {
                    match t {
                        Term::App(f, _) => add(f, &mut signature)?,
                        Term::Var(x) => {
                            vars.insert(x.to_string());
                        }
                    }
                }
            }
        }
        for r in &rules {
            if let Some(f) = r.lhs.root() {
                if !f.is_marked() {
                    signature.insert(f.clone(), SymbolKind::Defined);
                }
            }
        }
        Ok(Trs {
            rules,
            signature,
            declared_vars: vars,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Variable names declared for or used by this system.
    pub fn variables(&self) -> &BTreeSet<String> {
        &self.declared_vars
    }

    pub fn declare_variables(mut self, vars: impl IntoIterator<Item = String>) -> Trs {
        self.declared_vars.extend(vars);
        self
    }

    pub fn signature(&self) -> impl Iterator<Item = (&Symbol, SymbolKind)> {
        self.signature.iter().map(|(s, k)| (s, *k))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.signature.keys().cloned().collect()
    }

    pub fn kind(&self, f: &Symbol) -> Option<SymbolKind> {
        self.signature.get(f).copied()
    }

    pub fn is_defined(&self, f: &Symbol) -> bool {
        self.kind(f) == Some(SymbolKind::Defined)
    }

    pub fn root_defined(&self, t: &Term) -> bool {
        t.root().is_some_and(|f| self.is_defined(f))
    }

    /// Defined symbols in order of first appearance as a left-hand side root.
    pub fn defined_order(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        for r in &self.rules {
            if let Some(f) = r.lhs.root() {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    pub fn max_arity(&self) -> usize {
        self.signature.keys().map(Symbol::arity).max().unwrap_or(0)
    }

    pub fn constants(&self) -> Vec<Symbol> {
        self.signature
            .keys()
            .filter(|s| s.arity() == 0 && !s.is_marked())
            .cloned()
            .collect()
    }

    /// A constant name not used by this system, for grounding open terms.
    pub fn fresh_constant(&self) -> Symbol {
        let names: BTreeSet<String> = self.signature.keys().map(|s| s.display_name()).collect();
        let mut n = 0usize;
        loop {
            let name = if n == 0 {
                "c_fresh".to_string()
            } else {
                format!("c_fresh{n}")
            };
            if !names.contains(&name) {
                return Symbol::new(&name, 0);
            }
            n += 1;
        }
    }

    /// Renders in the TPDB rule-file grammar accepted by `parse_trs`.
    pub fn render(&self) -> String {
        let mut vars: BTreeSet<String> = self.declared_vars.clone();
        for r in &self.rules {
            vars.extend(r.lhs.vars().iter().map(|v| v.to_string()));
        }
        let mut out = String::new();
        out.push_str("(VAR");
        for v in &vars {
            out.push(' ');
            out.push_str(v);
        }
        out.push_str(")\n(RULES\n");
        for r in &self.rules {
            out.push_str("  ");
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(")\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Term {
        Term::constant(Symbol::new("a", 0))
    }

    #[test]
    fn size_and_depth() {
        let t = Term::app(Symbol::new("f", 2), vec![a(), Term::var("x")]);
        assert_eq!(t.size(), 3);
        assert_eq!(t.depth(), 1);
        assert_eq!(a().depth(), 0);
    }

    #[test]
    fn positions_orders() {
        let g = Symbol::new("g", 1);
        let t = Term::app(
            Symbol::new("f", 2),
            vec![Term::app(g, vec![a()]), Term::var("x")],
        );
        let pre: Vec<String> = t.positions().iter().map(|p| p.to_string()).collect();
        assert_eq!(pre, ["ε", "1", "1.1", "2"]);
        let post: Vec<String> = t
            .positions_innermost()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(post, ["1.1", "1", "2", "ε"]);
        assert!(t.at(&Position(vec![3])).is_none());
        assert_eq!(t.at(&Position::root()), Some(&t));
    }

    #[test]
    fn proper_subterm_cases() {
        let d = Symbol::new("d", 1);
        let zero = Term::constant(Symbol::new("0", 0));
        let d0 = Term::app(d, vec![zero.clone()]);
        assert!(proper_subterm(&zero, &d0));
        assert!(!proper_subterm(&d0, &d0));
        let s = Symbol::new("s", 1);
        let ack = Term::app(
            Symbol::new("Ack", 2),
            vec![Term::app(s, vec![Term::var("x")]), Term::var("y")],
        );
        assert!(proper_subterm(&Term::var("x"), &ack));
    }

    #[test]
    fn rule_conditions() {
        assert!(matches!(
            Rule::new(Term::var("x"), a()),
            Err(Error::VariableLhs(_))
        ));
        let f = Symbol::new("f", 1);
        assert!(matches!(
            Rule::new(Term::app(f.clone(), vec![Term::var("x")]), Term::var("y")),
            Err(Error::ExtraVariable { .. })
        ));
        assert!(Rule::new(Term::app(f, vec![Term::var("x")]), Term::var("x")).is_ok());
    }

    #[test]
    fn marking() {
        let f = Symbol::new("f", 1);
        let t = Term::app(f.clone(), vec![a()]);
        let m = t.sharp();
        assert!(m.root().unwrap().is_marked());
        assert_eq!(m.root().unwrap().arity(), 1);
        assert_eq!(m.to_string(), "f#(a)");
        assert_eq!(m.unsharp(), t);
    }

    #[test]
    fn numerals() {
        let s = Symbol::new("s", 1);
        let z = Symbol::new("0", 0);
        let n = Term::numeral(&s, &z, 3);
        assert_eq!(n.to_string(), "s(s(s(0)))");
        assert_eq!(n.as_numeral("s", "0"), Some(3));
    }
}
