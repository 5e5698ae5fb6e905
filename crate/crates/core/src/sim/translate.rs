//! The translation into simulating terms and the ≈ equivalence.

use std::cell::RefCell;
use std::collections::HashMap;

use super::system::SimSystem;
use crate::error::{Error, Result};
use crate::norm::{NormContext, NormValue};
use crate::term::Term;

/// Memoizing translator bound to a norm context and a generated system.
pub struct Translator<'a> {
    pub ctx: &'a NormContext<'a>,
    pub sys: &'a SimSystem,
    cache: RefCell<HashMap<Term, Term>>,
}

impl<'a> Translator<'a> {
    pub fn new(ctx: &'a NormContext<'a>, sys: &'a SimSystem) -> Translator<'a> {
        Translator {
            ctx,
            sys,
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// `tr(t)`: norm components followed by translated arguments, padded with `c`.
    pub fn translate(&self, t: &Term) -> Result<Term> {
        if !t.is_ground() {
            return Err(Error::NonGround(t.to_string()));
        }
        if let Some(v) = self.cache.borrow().get(t) {
            return Ok(v.clone());
        }
        let norm = self.ctx.norm(t)?;
        let comps = norm
            .0
            .iter()
            .map(|v| self.star(v))
            .collect::<Result<Vec<Term>>>()?;
        let sy = &self.sys.symbols;
        let mut slots = t
            .args()
            .iter()
            .map(|a| self.translate(a))
            .collect::<Result<Vec<Term>>>()?;
        if slots.len() > self.sys.constants.a {
            return Err(Error::Simulation(format!("arity of {t} exceeds the slot count")));
        }
        slots.resize(self.sys.constants.a, sy.cst());
        let out = sy.f_of(comps, slots);
        self.cache.borrow_mut().insert(t.clone(), out.clone());
        Ok(out)
    }

    /// The `(·)*` encoding of a norm component.
    pub fn star(&self, v: &NormValue) -> Result<Term> {
        let sy = &self.sys.symbols;
        Ok(match v {
            NormValue::Bot => sy.bot_term(),
            NormValue::Nat(n) => sy.num(*n as usize),
            NormValue::Trm(u) => self.translate(u)?,
        })
    }
}

/// `a ≈ b`: both `c`, or both `f`-rooted with pairwise equivalent argument slots.
pub fn approx_equiv(sys: &SimSystem, a: &Term, b: &Term) -> bool {
    let sy = &sys.symbols;
    let d = sys.constants.d;
    match (a.root(), b.root()) {
        (Some(x), Some(y)) if *x == sy.c && *y == sy.c => true,
        (Some(x), Some(y)) if *x == sy.f && *y == sy.f => a.args()[d..]
            .iter()
            .zip(&b.args()[d..])
            .all(|(p, q)| approx_equiv(sys, p, q)),
        _ => false,
    }
}
