//! Subcommand implementations. Each returns the report text and an exit code.

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dpframe_core::analysis::enumeration_signature;
use dpframe_core::dp::depgraph::estimate_dependency_graph;
use dpframe_core::dp::interp::LinearInterpretation;
use dpframe_core::dp::tree::{tree_position, ProcStep};
use dpframe_core::enumerate::terms_up_to;
use dpframe_core::norm::{render_path, verify_lemmas};
use dpframe_core::*;

use crate::{Cli, Command};

type Outcome<T> = std::result::Result<T, Failure>;

pub const OK: u8 = 0;
pub const ANALYSIS_FAILURE: u8 = 1;
pub const USAGE: u8 = 2;
pub const INDETERMINATE: u8 = 3;

pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Indeterminate(_) | Error::Budget(_) => INDETERMINATE,
            Error::Syntax { .. }
            | Error::ArityMismatch { .. }
            | Error::VariableLhs(_)
            | Error::ExtraVariable { .. }
            | Error::MissingInterpretation(_)
            | Error::Invalid(_) => USAGE,
            Error::Nontermination(_) | Error::NonGround(_) | Error::Simulation(_) => ANALYSIS_FAILURE,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

fn usage(message: String) -> Failure {
    Failure { message, code: USAGE }
}

fn done(text: String) -> Outcome<Output> {
    Ok(Output { text, code: OK })
}

/// Reports an indeterminate result on stdout so it is never mistaken for a refutation.
fn indeterminate(e: Error) -> Outcome<Output> {
    Ok(Output {
        text: format!("INDETERMINATE: {e}\n"),
        code: INDETERMINATE,
    })
}

struct Loaded {
    trs: Trs,
    config: SearchConfig,
}

fn load(cli: &Cli, file: &str) -> Outcome<Loaded> {
    let (trs, mut config) = match file.strip_prefix("builtin:") {
        Some(rest) => {
            let mut parts = rest.splitn(2, ':');
            let name = parts.next().unwrap_or_default();
            let k = parts
                .next()
                .map(|k| k.parse::<usize>().map_err(|_| usage(format!("bad parameter in {file}"))))
                .transpose()?;
            let entry = builtin(name, k)?;
            let config = entry.search_config();
            (entry.trs, config)
        }
        None => {
            let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{file}: {e}")))?;
            (parse_trs(&text)?, SearchConfig::default())
        }
    };
    if !cli.order.is_empty() {
        config.order = cli.order.iter().map(|&p| p.into()).collect();
    }
    if let Some(b) = cli.coeff_bound {
        config.coeff_bound = b;
    }
    for path in &cli.interp {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        config.interpretations.push(LinearInterpretation::parse(&text)?);
    }
    Ok(Loaded { trs, config })
}

fn fuel(cli: &Cli) -> Fuel {
    Fuel::new(cli.fuel_nodes, cli.fuel_depth)
}

fn prove(l: &Loaded) -> Outcome<ProofTree> {
    search_proof(&l.trs, &l.config).map_err(|f| {
        let open: Vec<String> = f.frontier.iter().map(|p| p.label()).collect();
        Failure {
            message: format!("no proof found; open problems: {}", open.join(", ")),
            code: ANALYSIS_FAILURE,
        }
    })
}

fn term(trs: &Trs, text: &str) -> Outcome<Term> {
    let vars: Vec<&str> = trs.variables().iter().map(String::as_str).collect();
    Ok(parse_term(text, trs, &vars)?)
}

/// Replaces every variable by a constant outside the signature.
fn grounded(trs: &Trs, t: &Term) -> Term {
    let c = Term::constant(trs.fresh_constant());
    let mut sigma = Substitution::new();
    for x in t.vars() {
        sigma.insert(&x, c.clone());
    }
    sigma.apply(t)
}

fn rp_function(cli: &Cli) -> RpFunction {
    RpFunction::new(cli.g_poly.clone())
}

pub fn run(cli: &Cli) -> Outcome<Output> {
    match &cli.command {
        Command::Builtin { name, k } => done(builtin(name, *k)?.trs.render()),
        Command::Dps { file } => {
            let l = load(cli, file)?;
            let mut out = String::new();
            for p in compute_dps(&l.trs) {
                let _ = writeln!(out, "{p}");
            }
            done(out)
        }
        Command::Graph { file } => graph(&load(cli, file)?),
        Command::Prove { file } => {
            let l = load(cli, file)?;
            let tree = prove(&l)?;
            let errs = tree.validate();
            let mut out = String::new();
            if errs.is_empty() {
                out.push_str("termination proved\n");
            } else {
                out.push_str("proof tree failed re-validation\n");
            }
            out.push_str(&tree.render());
            for e in &errs {
                let _ = writeln!(out, "invalid: {e}");
            }
            let code = if errs.is_empty() { OK } else { ANALYSIS_FAILURE };
            Ok(Output { text: out, code })
        }
        Command::Tree { file } => tree(&prove(&load(cli, file)?)?),
        Command::Norm { file, term: text } => {
            let l = load(cli, file)?;
            let tree = prove(&l)?;
            let ctx = NormContext::new(&tree, fuel(cli));
            let t = grounded(&l.trs, &term(&l.trs, text)?);
            let (path, norm) = match (ctx.current_path(&t), ctx.norm(&t)) {
                (Ok(p), Ok(n)) => (p, n),
                (Err(e), _) | (_, Err(e)) if e.is_indeterminate() => return indeterminate(e),
                (Err(e), _) | (_, Err(e)) => return Err(e.into()),
            };
            done(format!("term: {t}\npath: {}\nnorm: {norm}\n", render_path(&path)))
        }
        Command::VerifyLemmas {
            file,
            max_size,
            sample,
            verbose,
        } => {
            let l = load(cli, file)?;
            let tree = prove(&l)?;
            let ctx = NormContext::new(&tree, fuel(cli));
            let mut starts = terms_up_to(&enumeration_signature(&l.trs), *max_size);
            if let Some(n) = sample {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                starts = starts.choose_multiple(&mut rng, *n).cloned().collect();
            }
            let rep = verify_lemmas(&ctx, &starts, *verbose);
            let mut out = String::new();
            let _ = writeln!(out, "start terms: {}", rep.terms);
            let _ = writeln!(out, "below-root steps: {}", rep.below_root_steps);
            let _ = writeln!(out, "root steps: {}", rep.root_steps);
            let _ = writeln!(out, "positions checked: {}", rep.positions_checked);
            for line in &rep.lines {
                let _ = writeln!(out, "{line}");
            }
            for v in &rep.violations {
                let _ = writeln!(out, "VIOLATION: {v}");
            }
            for i in &rep.indeterminate {
                let _ = writeln!(out, "INDETERMINATE: {i}");
            }
            let _ = writeln!(
                out,
                "violations: {}, indeterminate: {}",
                rep.violations.len(),
                rep.indeterminate.len()
            );
            let code = if !rep.violations.is_empty() {
                ANALYSIS_FAILURE
            } else if !rep.indeterminate.is_empty() {
                INDETERMINATE
            } else {
                OK
            };
            Ok(Output { text: out, code })
        }
        Command::GenRsim { file } => {
            let l = load(cli, file)?;
            let tree = prove(&l)?;
            done(generate_rsim(&l.trs, &tree, &rp_function(cli))?.render())
        }
        Command::Simulate { file, term: text } => simulate(cli, &load(cli, file)?, text),
        Command::LpoCheck { file, precfile } => {
            let l = load(cli, file)?;
            let text = std::fs::read_to_string(precfile)
                .map_err(|e| usage(format!("{}: {e}", precfile.display())))?;
            let rep = check_compatible(&l.trs, &Precedence::parse(&text)?);
            let code = if rep.ok() { OK } else { ANALYSIS_FAILURE };
            Ok(Output {
                text: rep.render(),
                code,
            })
        }
        Command::Dheight { file, term: text } => {
            let l = load(cli, file)?;
            let t = term(&l.trs, text)?;
            match dheight(&t, l.trs.rules(), fuel(cli)) {
                Ok(h) => done(format!("{h}\n")),
                Err(e) if e.is_indeterminate() => indeterminate(e),
                Err(e) => Err(e.into()),
            }
        }
        Command::Dc { file, n } => {
            let l = load(cli, file)?;
            match dc(&l.trs, *n, fuel(cli)) {
                Ok(v) => done(format!("{v}\n")),
                Err(e) if e.is_indeterminate() => indeterminate(e),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn graph(l: &Loaded) -> Outcome<Output> {
    let g = estimate_dependency_graph(&DpProblem::initial(std::sync::Arc::new(l.trs.clone())));
    let mut out = String::from("pairs:\n");
    for p in &g.nodes {
        let _ = writeln!(out, "  {p}");
    }
    out.push_str("edges:\n");
    for (a, b) in &g.edges {
        let _ = writeln!(out, "  {a} -> {b}");
    }
    out.push_str("sccs:\n");
    for s in &g.sccs {
        let members: Vec<String> = s.pairs.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "  {{{}}} rank {}{}",
            members.join(","),
            s.rank,
            if s.trivial { " trivial" } else { "" }
        );
    }
    done(out)
}

fn tree(tree: &ProofTree) -> Outcome<Output> {
    let mut out = String::new();
    for (pos, node) in tree.nodes() {
        let what = match &node.step {
            Some(step) => step.tag().to_string(),
            None if node.problem.is_empty() => "leaf (∅, R)".into(),
            None if node.trivial_scc => "leaf trivial SCC".into(),
            None => "open".into(),
        };
        let _ = writeln!(out, "{}: {what}", tree_position(&pos));
        match &node.step {
            Some(ProcStep::ReductionPair { interp, .. }) => {
                for line in interp.to_string().lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
            Some(ProcStep::Subterm { proj, .. }) => {
                let _ = writeln!(out, "    {proj}");
            }
            _ => {}
        }
        for p in &node.problem.pairs {
            let _ = writeln!(out, "  {p}");
        }
    }
    done(out)
}

fn simulate(cli: &Cli, l: &Loaded, text: &str) -> Outcome<Output> {
    let tree = prove(l)?;
    let ctx = NormContext::new(&tree, fuel(cli));
    let sys = generate_rsim(&l.trs, &tree, &rp_function(cli))?;
    let tr = Translator::new(&ctx, &sys);
    let t = grounded(&l.trs, &term(&l.trs, text)?);
    let path = match longest_derivation(&t, l.trs.rules(), fuel(cli)) {
        Ok(p) => p,
        Err(e) if e.is_indeterminate() => return indeterminate(e),
        Err(e) => return Err(e.into()),
    };
    let mut der = simulate_start(&tr, &t)?;
    for w in path.windows(2) {
        der.chain(simulate_step(&tr, &w[0], &w[1])?)?;
    }
    der.validate(&sys)?;
    let mut out = String::new();
    let _ = writeln!(out, "system: {}, {}", sys.constants, rp_function(cli));
    let _ = writeln!(out, "derivation height: {}", path.len() - 1);
    for (i, u) in path.iter().enumerate() {
        let _ = writeln!(out, "  {i}: {u}");
    }
    let _ = writeln!(out, "simulated steps: {}", der.len());
    let _ = write!(out, "{der}");
    done(out)
}
