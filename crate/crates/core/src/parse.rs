//! Reader for the TPDB old-style rule format.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::term::{Rule, Symbol, Term, Trs};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    Ident(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "_#'+*^-".contains(c)
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let single = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line, col });
            i += 1;
            col += 1;
        } else if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Spanned {
                tok: Tok::Arrow,
                line,
                col,
            });
            i += 2;
            col += 2;
        } else if is_ident_char(c) {
            let start = i;
            while i < chars.len()
                && is_ident_char(chars[i])
                && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
            {
                i += 1;
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
        } else {
            return Err(Error::Syntax {
                line,
                col,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    vars: BTreeSet<String>,
    arities: BTreeMap<String, usize>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end);
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let at = self.pos;
        let name = self.ident()?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::Open) {
            self.pos += 1;
            args.push(self.term()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(Tok::Close, "')' closing argument list")?;
        }
        if self.vars.contains(&name) {
            if !args.is_empty() {
                self.pos = at;
                return Err(self.err(format!("variable {name} applied to arguments")));
            }
            return Ok(Term::var(&name));
        }
        match self.arities.get(&name) {
            Some(&a) if a != args.len() => {
                return Err(Error::ArityMismatch {
                    symbol: name,
                    expected: a,
                    found: args.len(),
                })
            }
            _ => {
                self.arities.insert(name.clone(), args.len());
            }
        }
        let sym = match name.strip_suffix('#') {
            Some(base) if !base.is_empty() => Symbol::new(base, args.len()).marked(),
            _ => Symbol::new(&name, args.len()),
        };
        Ok(Term::app(sym, args))
    }
}

/// Parses a rule file in the TPDB old-style grammar.
pub fn parse_trs(text: &str) -> Result<Trs> {
    let toks = lex(text)?;
    let end = toks.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars: BTreeSet::new(),
        arities: BTreeMap::new(),
        end,
    };
    let mut rules = Vec::new();
    while p.peek().is_some() {
        p.expect(Tok::Open, "'('")?;
        let kw = p.ident()?;
        match kw.as_str() {
            "VAR" => {
                while let Some(Tok::Ident(_)) = p.peek() {
                    let v = p.ident()?;
                    p.vars.insert(v);
                }
            }
            "RULES" => {
                while let Some(Tok::Ident(_)) = p.peek() {
                    let lhs = p.term()?;
                    p.expect(Tok::Arrow, "'->'")?;
                    let rhs = p.term()?;
                    rules.push(Rule::new(lhs, rhs)?);
                }
            }
            other => {
                p.pos -= 1;
                return Err(p.err(format!("unknown declaration {other}")));
            }
        }
        p.expect(Tok::Close, "')'")?;
    }
    Ok(Trs::new(rules, std::iter::empty())?.declare_variables(p.vars))
}

/// Parses a single term. Identifiers declared as variables of `trs` (or
/// listed in `extra_vars`) become variables; symbol arities must agree with
/// the signature of `trs`.
pub fn parse_term(text: &str, trs: &Trs, extra_vars: &[&str]) -> Result<Term> {
    let toks = lex(text)?;
    let end = toks.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
    let mut arities = BTreeMap::new();
    for s in trs.symbols() {
        arities.insert(s.display_name(), s.arity());
    }
    let mut vars: BTreeSet<String> = trs.variables().clone();
    vars.extend(extra_vars.iter().map(|s| s.to_string()));
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars,
        arities,
        end,
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}
