//! Dependency pair termination analysis and derivational complexity tooling
//! for first-order term rewrite systems.

pub mod ackermann;
pub mod analysis;
pub mod corpus;
pub mod dp;
pub mod enumerate;
pub mod error;
pub mod lpo;
pub mod norm;
pub mod parse;
pub mod rewrite;
pub mod sim;
pub mod term;
pub mod unify;

pub use analysis::{dc, dheight, dheight_relative, explore, is_nf_relative, longest_derivation, reachable_set, Fuel, ReachGraph, StepKind};
pub use ackermann::ackermann_k;
pub use error::{Error, Result};
pub use parse::{parse_term, parse_trs};
pub use rewrite::{rewrite_at, rewrite_successors, Scope, Step};
pub use term::{proper_subterm, Position, Rule, Symbol, SymbolKind, Term, Trs};
pub use corpus::{builtin, CorpusEntry};
pub use dp::rpfun::RpFunction;
pub use dp::search::{search_proof, ProcKind, SearchConfig};
pub use dp::tree::ProofTree;
pub use dp::{compute_dps, DependencyPair, DpProblem};
pub use lpo::{check_compatible, lpo_greater, rsim_precedence, Precedence};
pub use norm::{NormContext, NormValue, NormVector};
pub use sim::{generate_rsim, simulate_size, simulate_start, simulate_step, SimDerivation, SimSystem, Translator};
pub use unify::{match_term, unify_terms, Substitution};
