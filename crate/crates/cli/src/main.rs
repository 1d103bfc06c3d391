use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use petri_bound::bounding::{bound_net, check_comonad_laws, initial_antimarking};
use petri_bound::category::Philosophy;
use petri_bound::dot::{diagram_to_dot, net_to_dot, reachability_to_dot};
use petri_bound::equivalence::{
    check_pullback, verify_theorem_comm, verify_theorem_indiv, IsoWitness,
};
use petri_bound::exec_comm::{CommCategory, CommMorphism, FiringSequence};
use petri_bound::exec_symm::{Diagram, SymCategory};
use petri_bound::multiset::{Multiset, Sym};
use petri_bound::net::{parse_net, parse_net_unchecked, write_net, Marking, PetriNet};
use petri_bound::span_semantics::{
    check_lax_coherence, external_comm, external_indiv, LaxSpanFunctor, SampleBounds,
};

/// Caps the number of markings `explore` and `export-dot --reachability` visit.
const MAX_STATES_VAR: &str = "PETRI_BOUND_MAX_STATES";
const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "petri-bound",
    version,
    about = "Bounded Petri nets and their execution semantics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Phil {
    Comm,
    Indiv,
}

impl From<Phil> for Philosophy {
    fn from(p: Phil) -> Self {
        match p {
            Phil::Comm => Philosophy::Comm,
            Phil::Indiv => Philosophy::Free,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Add an anti-place per place and write the bounded net with its initial marking.
    Bound {
        net: PathBuf,
        /// Capacity of a place, `p=k`; unlisted places are capped at their initial count.
        #[arg(long = "capacity", value_parser = parse_capacity)]
        capacities: Vec<(Sym, u64)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fire transitions in order and print the marking after each step.
    Simulate {
        net: PathBuf,
        #[arg(long = "fire")]
        fire: Vec<String>,
        /// Start marking, `{p:k,...}`; defaults to the net file's marking.
        #[arg(long)]
        marking: Option<String>,
    },
    /// Explore the reachability graph.
    Explore {
        net: PathBuf,
        #[arg(long)]
        marking: Option<String>,
        /// Stop expanding markings holding more tokens than this.
        #[arg(long, default_value_t = 64)]
        max_tokens: u64,
        /// Also decide whether every place stays at or below this count.
        #[arg(long)]
        k_bound: Option<u64>,
    },
    /// Generator count, layers and boundary of a morphism `dom | u1 ; u2 ; ...`.
    Chi {
        net: PathBuf,
        morphism: String,
        #[arg(long, value_enum, default_value = "comm")]
        philosophy: Phil,
    },
    /// Tip elements and legs of the external bound semantics of a morphism.
    Semantics {
        net: PathBuf,
        morphism: String,
        #[arg(long, value_enum, default_value = "comm")]
        philosophy: Phil,
        /// Largest left leg to enumerate.
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Check the counit and coassociativity laws of the bounding comonad.
    CheckComonad {
        net: PathBuf,
        #[arg(long, value_enum)]
        philosophy: Option<Phil>,
    },
    /// Compare bounded executions with the total category of the external semantics.
    Verify {
        net: PathBuf,
        #[arg(long, value_enum)]
        philosophy: Phil,
        #[arg(long, default_value_t = 3)]
        token_bound: usize,
        #[arg(long, default_value_t = 2)]
        firing_bound: usize,
        /// Also check the pullback characterization (individual tokens only).
        #[arg(long)]
        pullback: bool,
        /// Sampled laxator coherence checks.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write Graphviz DOT for the net, its bounded net, its reachability graph or a morphism.
    ExportDot {
        net: PathBuf,
        #[arg(long)]
        bounded: bool,
        #[arg(long = "capacity", value_parser = parse_capacity)]
        capacities: Vec<(Sym, u64)>,
        #[arg(long, conflicts_with = "morphism")]
        reachability: bool,
        #[arg(long, default_value_t = 64)]
        max_tokens: u64,
        /// An individual-token morphism `a b | u1 ; u2` to draw instead of the net.
        #[arg(long)]
        morphism: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_capacity(s: &str) -> Result<(Sym, u64), String> {
    let (p, k) = s
        .split_once('=')
        .ok_or_else(|| format!("expected `place=k`, got `{s}`"))?;
    let k = k
        .trim()
        .parse()
        .map_err(|_| format!("invalid capacity in `{s}`"))?;
    Ok((Sym::new(p.trim()), k))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = run(cli.command, &mut out);
    print!("{out}");
    match status {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<(PetriNet, Option<Marking>)> {
    parse_net(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Loads nets that may carry signed place names, such as the output of `bound`.
fn load_any(path: &Path) -> Result<(PetriNet, Option<Marking>)> {
    parse_net_unchecked(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn start_marking(net: &PetriNet, given: Option<&str>, file: Option<Marking>) -> Result<Marking> {
    let m = match given {
        Some(s) => s.parse::<Multiset>().context("in --marking")?,
        None => file.ok_or_else(|| anyhow!("the net has no marking; pass --marking"))?,
    };
    net.check_marking(&m)?;
    Ok(m)
}

fn max_states() -> Result<usize> {
    match std::env::var(MAX_STATES_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{MAX_STATES_VAR}={v}")),
        Err(_) => Ok(DEFAULT_MAX_STATES),
    }
}

fn emit(output: Option<&Path>, text: &str, out: &mut String) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn split_morphism(s: &str) -> (&str, Vec<Sym>) {
    let (dom, steps) = s.split_once('|').unwrap_or((s, ""));
    let steps = steps
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(Sym::new)
        .collect();
    (dom.trim(), steps)
}

fn parse_comm(net: &Arc<PetriNet>, s: &str) -> Result<CommMorphism> {
    let (dom, steps) = split_morphism(s);
    let start: Multiset = dom.parse().context("in the morphism's domain")?;
    net.check_marking(&start)?;
    Ok(CommCategory::new(net.clone()).of_sequence(&FiringSequence { start, steps })?)
}

fn parse_word(s: &str) -> Vec<Sym> {
    s.trim_start_matches('[')
        .trim_end_matches(']')
        .split([' ', ','])
        .filter(|x| !x.is_empty())
        .map(Sym::new)
        .collect()
}

fn parse_sym(net: &Arc<PetriNet>, s: &str) -> Result<Diagram> {
    let (dom, steps) = split_morphism(s);
    let dom = parse_word(dom);
    if let Some(p) = dom.iter().find(|p| !net.has_place(p)) {
        bail!("unknown place `{p}`");
    }
    Ok(SymCategory::new(net.clone()).of_sequence(&dom, &steps)?)
}

fn word(w: &[Sym]) -> String {
    format!(
        "[{}]",
        w.iter().map(Sym::as_str).collect::<Vec<_>>().join(" ")
    )
}

fn run(cmd: Command, out: &mut String) -> Result<bool> {
    match cmd {
        Command::Bound {
            net,
            capacities,
            output,
        } => {
            let (n, m) = load(&net)?;
            let m = m.unwrap_or_default();
            let caps: BTreeMap<Sym, u64> = capacities.into_iter().collect();
            let m0 = initial_antimarking(&n, &m, &caps)?;
            let b = bound_net(&n);
            emit(output.as_deref(), &(write_net(&b, Some(&m0)) + "\n"), out)?;
            Ok(true)
        }
        Command::Simulate { net, fire, marking } => {
            let (n, m) = load_any(&net)?;
            let m0 = start_marking(&n, marking.as_deref(), m)?;
            let steps: Vec<Sym> = fire.iter().map(Sym::new).collect();
            for m in n.run(&m0, &steps)? {
                writeln!(out, "{m}")?;
            }
            Ok(true)
        }
        Command::Explore {
            net,
            marking,
            max_tokens,
            k_bound,
        } => {
            let (n, m) = load_any(&net)?;
            let m0 = start_marking(&n, marking.as_deref(), m)?;
            let limit = max_states()?;
            let g = n.explore_limited(&m0, max_tokens, limit);
            writeln!(out, "states: {}", g.nodes.len())?;
            writeln!(out, "edges: {}", g.edges.len())?;
            match g.truncated {
                None => writeln!(out, "complete: yes")?,
                Some(t) => writeln!(out, "complete: no ({t:?})")?,
            }
            for (p, k) in g.place_maxima() {
                writeln!(out, "max {p}: {k}")?;
            }
            if let Some(k) = k_bound {
                match n.is_k_bounded_limited(&m0, k, limit) {
                    Some(true) => writeln!(out, "{k}-bounded: yes")?,
                    Some(false) => writeln!(out, "{k}-bounded: no")?,
                    None => {
                        writeln!(out, "{k}-bounded: unknown (state limit {limit})")?;
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Command::Chi {
            net,
            morphism,
            philosophy,
        } => {
            let (n, _) = load_any(&net)?;
            let n = Arc::new(n);
            match philosophy {
                Phil::Comm => {
                    let f = parse_comm(&n, &morphism)?;
                    writeln!(out, "chi: {}", f.chi())?;
                    writeln!(out, "dom: {}", f.dom())?;
                    writeln!(out, "cod: {}", f.cod())?;
                    for (i, l) in f.layers().iter().enumerate() {
                        writeln!(out, "layer {i}: {l}")?;
                    }
                }
                Phil::Indiv => {
                    let d = parse_sym(&n, &morphism)?;
                    writeln!(out, "chi: {}", d.chi())?;
                    writeln!(out, "dom: {}", word(d.inputs()))?;
                    writeln!(out, "cod: {}", word(d.outputs()))?;
                    writeln!(out, "diagram: {}", d.canonical())?;
                }
            }
            Ok(true)
        }
        Command::Semantics {
            net,
            morphism,
            philosophy,
            bound,
        } => {
            let (n, _) = load(&net)?;
            let n = Arc::new(n);
            match philosophy {
                Phil::Comm => {
                    let f = parse_comm(&n, &morphism)?;
                    let sem = external_comm(CommCategory::new(n));
                    let mut count = 0;
                    for x in sem.object_elems(f.dom(), bound) {
                        for s in sem.tips_over(&f, &x) {
                            writeln!(out, "{} <- {} -> {}", sem.left(&s), s, sem.right(&s))?;
                            count += 1;
                        }
                    }
                    writeln!(out, "tip elements: {count}")?;
                }
                Phil::Indiv => {
                    let f = parse_sym(&n, &morphism)?;
                    let sem = external_indiv(n)?;
                    let dom = f.inputs().to_vec();
                    let mut count = 0;
                    for x in sem.object_elems(&dom, bound) {
                        for s in sem.tips_over(&f, &x) {
                            writeln!(
                                out,
                                "{} <- {} -> {}",
                                word(&sem.left(&s)),
                                s.canonical(),
                                word(&sem.right(&s))
                            )?;
                            count += 1;
                        }
                    }
                    writeln!(out, "tip elements: {count}")?;
                }
            }
            Ok(true)
        }
        Command::CheckComonad { net, philosophy } => {
            let (n, _) = load(&net)?;
            let phils = match philosophy {
                Some(p) => vec![p],
                None => vec![Phil::Comm, Phil::Indiv],
            };
            let mut ok = true;
            for p in phils {
                let name = if matches!(p, Phil::Comm) {
                    "comm"
                } else {
                    "indiv"
                };
                let r = check_comonad_laws(&n, p.into())?;
                let line = |label: &str, failures: &[String], out: &mut String| -> Result<()> {
                    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
                    writeln!(out, "{name} {label}: {verdict}")?;
                    for f in failures {
                        writeln!(out, "  {f}")?;
                    }
                    Ok(())
                };
                line("left counit", &r.left_counit, out)?;
                line("right counit", &r.right_counit, out)?;
                line("coassociativity", &r.coassociativity, out)?;
                line(
                    "coassociativity after projections",
                    &r.coassociativity_projected,
                    out,
                )?;
                ok &= r.holds();
            }
            Ok(ok)
        }
        Command::Verify {
            net,
            philosophy,
            token_bound,
            firing_bound,
            pullback,
            samples,
            seed,
        } => {
            let (n, _) = load(&net)?;
            if pullback && matches!(philosophy, Phil::Comm) {
                bail!("--pullback applies to --philosophy indiv");
            }
            let arc = Arc::new(n.clone());
            let bounds = SampleBounds {
                object: token_bound,
                elem: token_bound,
                generators: firing_bound,
            };
            let (w, coherence) = match philosophy {
                Phil::Comm => (
                    verify_theorem_comm(&n, token_bound, firing_bound),
                    check_lax_coherence(
                        &external_comm(CommCategory::new(arc)),
                        samples,
                        seed,
                        bounds,
                    ),
                ),
                Phil::Indiv => (
                    verify_theorem_indiv(&n, token_bound, firing_bound),
                    check_lax_coherence(&external_indiv(arc)?, samples, seed, bounds),
                ),
            };
            let mut ok = report_iso(&w, out)?;
            let verdict = if coherence.holds() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "coherence: {verdict} ({} samples, seed {seed})",
                coherence.samples
            )?;
            for c in &coherence.counterexamples {
                writeln!(out, "  {c}")?;
            }
            ok &= coherence.holds();
            if pullback {
                let r = check_pullback(&n, token_bound, firing_bound)?;
                let flag = |b: bool| if b { "yes" } else { "no" };
                writeln!(out, "pullback: {}", if r.holds() { "PASS" } else { "FAIL" })?;
                writeln!(out, "  square commutes: {}", flag(r.square_commutes))?;
                writeln!(out, "  jointly monic: {}", flag(r.jointly_monic))?;
                writeln!(
                    out,
                    "  comultiplication factors: {}",
                    flag(r.delta_factors && r.factorization_unique)
                )?;
                writeln!(out, "  unit cone: {}", flag(r.degenerate_cone))?;
                writeln!(out, "  projected equations: {}", flag(r.equation_chain))?;
                for f in &r.failures {
                    writeln!(out, "  {f}")?;
                }
                ok &= r.holds();
            }
            Ok(ok)
        }
        Command::ExportDot {
            net,
            bounded,
            capacities,
            reachability,
            max_tokens,
            morphism,
            output,
        } => {
            let (n, m) = load_any(&net)?;
            let (n, m) = if bounded {
                let m = m.unwrap_or_default();
                let caps: BTreeMap<Sym, u64> = capacities.into_iter().collect();
                (bound_net(&n), Some(initial_antimarking(&n, &m, &caps)?))
            } else {
                (n, m)
            };
            let text = if let Some(s) = morphism {
                diagram_to_dot(&parse_sym(&Arc::new(n), &s)?)
            } else if reachability {
                let m0 = m.ok_or_else(|| anyhow!("the net has no marking to explore from"))?;
                reachability_to_dot(&n.explore_limited(&m0, max_tokens, max_states()?))
            } else {
                net_to_dot(&n, m.as_ref())
            };
            emit(output.as_deref(), &text, out)?;
            Ok(true)
        }
    }
}

fn report_iso(w: &IsoWitness, out: &mut String) -> Result<bool> {
    let r = &w.report;
    writeln!(out, "objects: {} / {}", r.objects.0, r.objects.1)?;
    writeln!(out, "morphisms: {} / {}", r.morphisms.0, r.morphisms.1)?;
    writeln!(out, "hom-sets: {}", r.hom_sets)?;
    writeln!(out, "composites: {}", r.composites_checked)?;
    writeln!(out, "iso: {}", if w.complete() { "PASS" } else { "FAIL" })?;
    for f in r.failures.iter().take(20) {
        writeln!(out, "  {f}")?;
    }
    if r.failures.len() > 20 {
        writeln!(out, "  ... {} more", r.failures.len() - 20)?;
    }
    Ok(w.complete())
}
