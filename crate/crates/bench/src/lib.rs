//! Shared inputs for the benchmarks.

use dpframe_core::analysis::enumeration_signature;
use dpframe_core::enumerate::terms_up_to;
use dpframe_core::{builtin, parse_term, search_proof, CorpusEntry, ProofTree, Term};

/// A built-in system with its reference proof.
pub struct Fixture {
    pub entry: CorpusEntry,
    pub tree: ProofTree,
}

impl Fixture {
    pub fn new(name: &str) -> Fixture {
        let entry = builtin(name, None).expect("known builtin");
        let tree = search_proof(&entry.trs, &entry.search_config()).expect("builtin has a proof");
        Fixture { entry, tree }
    }

    pub fn term(&self, text: &str) -> Term {
        parse_term(text, &self.entry.trs, &[]).expect("valid term")
    }

    /// Ground terms up to `max` symbols over the signature and `c_fresh`.
    pub fn ground(&self, max: usize) -> Vec<Term> {
        terms_up_to(&enumeration_signature(&self.entry.trs), max)
    }
}

/// `Ack(s^m(0), s^n(0))` in the two-argument system.
pub fn ack_start(f: &Fixture, m: usize, n: usize) -> Term {
    let num = |k: usize| format!("{}0{}", "s(".repeat(k), ")".repeat(k));
    f.term(&format!("Ack({},{})", num(m), num(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ack_start_builds_numerals() {
        let f = Fixture::new("rsack");
        assert_eq!(ack_start(&f, 2, 0).to_string(), "Ack(s(s(0)),0)");
        let names: Vec<String> = f.ground(1).iter().map(|t| t.to_string()).collect();
        assert_eq!(names, ["0", "c_fresh"]);
    }
}
