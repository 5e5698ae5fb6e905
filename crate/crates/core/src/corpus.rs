//! Built-in example systems with their known proof artifacts.

use crate::dp::interp::LinearInterpretation;
use crate::dp::search::{ProcKind, SearchConfig};
use crate::error::{Error, Result};
use crate::parse::parse_trs;
use crate::term::Trs;

pub const RSACK: &str = "(VAR x y)
(RULES
  Ack(0,y) -> s(y)
  Ack(s(x),0) -> Ack(x,s(0))
  Ack(s(x),s(y)) -> Ack(x,Ack(s(x),y))
)
";

pub const RSSUP: &str = "(VAR x y)
(RULES
  d(0) -> 0
  d(s(x)) -> s(s(d(x)))
  e(s(x),y) -> e(x,d(y))
  sup(s(x),e(0,y)) -> sup(x,e(y,s(0)))
)
";

pub const RSDIETER: &str = "(VAR x y z w)
(RULES
  o(i(x),o(y,z)) -> o(x,o(i(i(y)),z))
  o(i(x),o(y,o(z,w))) -> o(x,o(z,o(y,w)))
)
";

/// Algebra removing pairs 2, 4 and 5 of the `rsdieter` problem.
pub const RSDIETER_A: &str = "(INTERP o# 2 0 1 0)
(INTERP o 2 0 1 1)
(INTERP i 1 0 0)
";

/// Algebra removing the remaining pairs 1 and 3.
pub const RSDIETER_B: &str = "(INTERP o# 2 1 0 0)
(INTERP o 2 0 0 0)
(INTERP i 1 1 1)
";

/// Algebra orienting each nontrivial SCC of the `rsup` graph.
pub const RSSUP_A: &str = "(INTERP d 1 2 0)
(INTERP e 2 0 0 0)
(INTERP sup 2 0 0 0)
(INTERP s 1 1 1)
(INTERP 0 0 0)
(INTERP d# 1 1 0)
(INTERP e# 2 1 0 0)
(INTERP sup# 2 1 0 0)
";

/// A corpus system together with the interpretations its known proof uses.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub k: Option<usize>,
    pub trs: Trs,
    pub interpretations: Vec<LinearInterpretation>,
}

impl CorpusEntry {
    /// Search settings that yield the reference proof for this system.
    pub fn search_config(&self) -> SearchConfig {
        match self.name.as_str() {
            "rsup" => SearchConfig {
                order: vec![ProcKind::Graph, ProcKind::AutoRp, ProcKind::Subterm],
                ..SearchConfig::default()
            },
            "rsdieter" => SearchConfig {
                order: vec![ProcKind::Graph, ProcKind::UserRp],
                interpretations: self.interpretations.clone(),
                ..SearchConfig::default()
            },
            _ => SearchConfig::default(),
        }
    }
}

/// Rule text of the k-ary Ackermann system.
pub fn rspeter_text(k: usize) -> Result<String> {
    if k < 2 {
        return Err(Error::Invalid(format!("rspeter needs k >= 2, got {k}")));
    }
    let ls: Vec<String> = (1..=k.saturating_sub(2)).map(|i| format!("l{i}")).collect();
    let app = |args: Vec<String>| format!("Ack({})", args.join(","));
    let with = |tail: &[&str]| {
        let mut v = ls.clone();
        v.extend(tail.iter().map(|s| s.to_string()));
        v
    };
    let mut rules = vec![
        format!("{} -> s(n)", app({
            let mut v = vec!["0".to_string(); k - 1];
            v.push("n".into());
            v
        })),
        format!("{} -> {}", app(with(&["s(m)", "0"])), app(with(&["m", "s(0)"]))),
        format!(
            "{} -> {}",
            app(with(&["s(m)", "s(n)"])),
            app(with(&["m", &app(with(&["s(m)", "n"]))]))
        ),
    ];
    for i in 1..=k.saturating_sub(2) {
        let mut lhs: Vec<String> = ls[..i - 1].to_vec();
        lhs.push(format!("s(l{i})"));
        lhs.extend(std::iter::repeat_n("0".to_string(), k - 1 - i));
        lhs.push("n".into());
        let mut rhs: Vec<String> = ls[..i].to_vec();
        rhs.push("n".into());
        rhs.extend(std::iter::repeat_n("0".to_string(), k - 2 - i));
        rhs.push("n".into());
        rules.push(format!("{} -> {}", app(lhs), app(rhs)));
    }
    let mut vars = ls.clone();
    vars.extend(["m".to_string(), "n".to_string()]);
    let mut out = format!("(VAR {})\n(RULES\n", vars.join(" "));
    for r in rules {
        out.push_str("  ");
        out.push_str(&r);
        out.push('\n');
    }
    out.push_str(")\n");
    Ok(out)
}

/// Looks up a built-in system by name. `rsup` and `rssup` are synonyms.
pub fn builtin(name: &str, k: Option<usize>) -> Result<CorpusEntry> {
    let parse_interps = |texts: &[&str]| -> Result<Vec<LinearInterpretation>> {
        texts.iter().map(|t| LinearInterpretation::parse(t)).collect()
    };
    let (text, interps, key) = match name.to_ascii_lowercase().as_str() {
        "rsack" => (RSACK.to_string(), Vec::new(), "rsack"),
        "rsup" | "rssup" => (RSSUP.to_string(), parse_interps(&[RSSUP_A])?, "rsup"),
        "rsdieter" => (
            RSDIETER.to_string(),
            parse_interps(&[RSDIETER_A, RSDIETER_B])?,
            "rsdieter",
        ),
        "rspeter" => {
            let k = k.ok_or_else(|| Error::Invalid("rspeter requires a parameter k".into()))?;
            (rspeter_text(k)?, Vec::new(), "rspeter")
        }
        other => return Err(Error::Invalid(format!("unknown builtin system {other}"))),
    };
    if key != "rspeter" && k.is_some() {
        return Err(Error::Invalid(format!("{key} takes no parameter")));
    }
    Ok(CorpusEntry {
        name: key.to_string(),
        k: if key == "rspeter" { k } else { None },
        trs: parse_trs(&text)?,
        interpretations: interps,
    })
}
