//! The `rlkit` command line. [`run`] parses arguments, dispatches to the
//! library and renders a text or JSON report; the binary only prints it.
//!
//! Exit codes: 0 when the command succeeds or the property holds, 1 when
//! the property is refuted, 2 for usage, format and precondition errors,
//! 3 for internal consistency errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    check_equation, classify, direct_product, generated_subalgebra, validate_algebra, Conucleus, Elem,
    EquationCheck, FiniteResiduatedLattice, RawAlgebra,
};
use crate::error::{Error, Result};
use crate::filters::{enumerate_filters, generated_filter, is_deductive_filter, quotient, si_analysis, values};
use crate::limits::Limits;
use crate::poset_product::{
    box_map, box_on_direct_product, build_poset_product, dual_poset_product, enumerate_ac_labelings, is_ac_labeling,
    AcLabeling, Frame,
};
use crate::posets::{FinitePoset, PosetSpec};
use crate::semantics::{
    check_kripke_agreement, countermodel_search, enumerate_frames, frame_valid, kripke_forces,
    kripke_inverse, soundness_instance_suite, standard_axioms, temporal_crosscheck, temporal_crosscheck_exhaustive,
    temporal_eval, CountermodelOutcome, FrameFamily, FrameVerdict, SearchOptions, TemporalAssignment, TemporalFlow,
    UpsetValuation, Valuation,
};
use crate::structure::{conuclear_preservation_check, represent_finite_gbl, value_frame, StructureReport};
use crate::syntax::{
    classify_hierarchy, evaluate_term, is_conuclear_equation, parse_formula_file, parse_statement,
    sequent_consequence, Connective, Equation, Relation, Statement, Term,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable overriding the default carrier cap.
pub const CAP_ENV: &str = "RLKIT_CAP";

#[derive(Debug, Parser)]
#[command(name = "rlkit", version, about = "Finite residuated lattices, poset products and their relational semantics")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest carrier any computation may build (overrides RLKIT_CAP).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Largest poset generated by frame searches.
    #[arg(long = "max-poset", global = true, default_value_t = 3)]
    pub max_poset: usize,
    /// Node algebras for generated frames, comma separated.
    #[arg(long, global = true, value_delimiter = ',', default_value = "L2,L3")]
    pub values: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that tables form a bounded commutative integral residuated lattice.
    ValidateAlgebra { algebra: String },
    /// Report the varieties an algebra belongs to.
    Classify {
        algebra: String,
        /// Fail unless these hold: gbl, bl, mv, heyting, godel, boolean, chain.
        #[arg(long, value_delimiter = ',')]
        require: Vec<String>,
    },
    /// Print the k-element Łukasiewicz chain.
    Chain {
        k: usize,
        /// Print the Gödel chain instead.
        #[arg(long)]
        godel: bool,
    },
    /// Direct product of the given algebras.
    Product {
        #[arg(required = true)]
        algebras: Vec<String>,
    },
    /// Subalgebra generated by the given elements.
    Subalgebra { algebra: String, generators: Vec<Elem> },
    /// Deductive filters: all of them, or a check of one set.
    Filters {
        algebra: String,
        /// Decide whether this comma-separated set is a filter.
        #[arg(long, value_delimiter = ',')]
        check: Option<Vec<Elem>>,
        /// Print the filter generated by this comma-separated set.
        #[arg(long, value_delimiter = ',', conflicts_with = "check")]
        generate: Option<Vec<Elem>>,
    },
    /// Values (filters maximal omitting some element) ordered by inclusion.
    Values { algebra: String },
    /// Quotient by the filter generated by the given elements.
    Quotient { algebra: String, generators: Vec<Elem> },
    /// Subdirect irreducibility.
    Si { algebra: String },
    /// Apply the box map to a choice function.
    Box {
        frame: PathBuf,
        #[arg(value_delimiter = ',')]
        choice: Vec<Elem>,
    },
    /// Ac-labelings of a frame, or a check of one choice function.
    Labelings {
        frame: PathBuf,
        #[arg(long, value_delimiter = ',')]
        check: Option<Vec<Elem>>,
    },
    /// The poset product of a frame.
    PosetProduct {
        frame: PathBuf,
        /// Use the dual poset.
        #[arg(long)]
        dual: bool,
    },
    /// The frame of values of a finite GBL-algebra.
    ValueFrame { algebra: String },
    /// The embedding a -> ε_a into the poset product over the value frame.
    Embed { algebra: String },
    /// An isomorphism from a finite GBL-algebra onto the poset product over its value frame.
    Represent { algebra: String },
    /// Parse and render a formula, equation or sequent.
    Parse { statement: String },
    /// Evaluate a formula under an assignment, or decide an equation.
    Eval {
        algebra: String,
        statement: String,
        /// Assignments `p=1`.
        assignment: Vec<String>,
    },
    /// P_n / N_n levels of a formula, or of both sides of an equation.
    Hierarchy { statement: String },
    /// Whether an equation is conuclear, optionally checking preservation.
    Conuclear {
        equation: String,
        /// Check preservation from this algebra to itself (identity conucleus).
        #[arg(long)]
        algebra: Option<String>,
        /// Check preservation from the direct product of this frame to its poset product.
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Sequent consequence in one algebra, directly and by local deduction.
    Sequent {
        algebra: String,
        sequent: String,
        #[arg(long = "k-max", default_value_t = 8)]
        k_max: u32,
    },
    /// Frame validity of a formula.
    Valid { frame: PathBuf, formula: String },
    /// Search generated frames for a countermodel.
    Countermodel {
        formula: String,
        /// Valuations sampled per frame when a frame is too large to search.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Compare forcing with intuitionistic Kripke forcing on a two-valued frame.
    Kripke {
        frame: PathBuf,
        formula: String,
        /// Up-sets `p=a,b` by node name; all up-set valuations when omitted.
        upsets: Vec<String>,
    },
    /// Evaluate a {*, ->, 0} formula on a temporal flow.
    TemporalEval {
        /// Flow file: {"poset": {...}, "labels": {"a": 3, ...}}.
        flow: PathBuf,
        formula: String,
        /// Values `p=1/2,1` in node order.
        assignment: Vec<String>,
    },
    /// Compare the temporal semantics with forcing on a Łukasiewicz-valued frame.
    TemporalCrosscheck {
        frame: PathBuf,
        formula: String,
        /// Valuation `p=0,2,1` in node order; every valuation when omitted.
        valuation: Vec<String>,
    },
    /// Check the standard axioms on generated frames in their hypothesis classes.
    SoundnessSuite {
        /// The potency bound for the k-potency axiom.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

/// What [`run`] produced: the exit code and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    holds: bool,
    json: Value,
    text: String,
}

impl Report {
    fn new(holds: bool, json: impl Serialize, text: String) -> Result<Self> {
        Ok(Report {
            holds,
            json: serde_json::to_value(json)?,
            text,
        })
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_INTERNAL,
        Error::Violation(_) => EXIT_REFUTED,
        _ => EXIT_USAGE,
    }
}

/// Runs one command line, `args[0]` being the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let json = cli.json;
    match limits(&cli).and_then(|l| dispatch(&cli, &l)) {
        Ok(r) => Outcome {
            code: if r.holds { EXIT_OK } else { EXIT_REFUTED },
            stdout: if json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                r.text
            },
            stderr: String::new(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if json {
                let kind = match code {
                    EXIT_INTERNAL => "internal",
                    EXIT_REFUTED => "refuted",
                    _ => "error",
                };
                format!("{}\n", json!({ "verdict": kind, "error": e.to_string() }))
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("rlkit: {e}\n") }
        }
    }
}

fn limits(cli: &Cli) -> Result<Limits> {
    let cap = match cli.cap {
        Some(c) => Some(c),
        None => match std::env::var(CAP_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse()
                    .map_err(|_| Error::format(format!("{CAP_ENV} must be a positive integer, got `{s}`")))?,
            ),
            Err(_) => None,
        },
    };
    Ok(match cap {
        Some(c) => Limits::default().with_max_carrier(c),
        None => Limits::default(),
    })
}

fn load_algebra(name: &str) -> Result<FiniteResiduatedLattice> {
    FiniteResiduatedLattice::load(name, None)
}

fn load_raw(name: &str) -> Result<RawAlgebra> {
    if let Some(a) = FiniteResiduatedLattice::builtin(name) {
        return Ok(a?.to_raw());
    }
    let text = std::fs::read_to_string(name).map_err(|e| Error::format(format!("cannot read algebra `{name}`: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::format(format!("algebra file `{name}`: {e}")))
}

/// A statement given inline, or the statements of a formula file.
fn load_statements(arg: &str) -> Result<Vec<Statement>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let out = parse_formula_file(&text)?;
        if out.is_empty() {
            return Err(Error::format(format!("`{arg}` contains no statements")));
        }
        Ok(out)
    } else {
        Ok(vec![parse_statement(arg)?])
    }
}

fn load_one(arg: &str) -> Result<Statement> {
    let mut all = load_statements(arg)?;
    if all.len() != 1 {
        return Err(Error::format(format!("expected one statement in `{arg}`, found {}", all.len())));
    }
    Ok(all.remove(0))
}

/// Formulas, with equations read as `lhs <-> rhs` (or `lhs -> rhs` for `<=`).
fn load_formulas(arg: &str) -> Result<Vec<Term>> {
    load_statements(arg)?
        .into_iter()
        .map(|s| match s {
            Statement::Formula(t) => Ok(t),
            Statement::Equation(e) => Ok(e.as_formula()),
            Statement::Sequent(s) => Err(Error::format(format!("expected a formula, found the sequent `{s}`"))),
        })
        .collect()
}

fn load_frame(path: &Path) -> Result<Frame> {
    Frame::load(path)
}

fn generated_family(cli: &Cli) -> Result<FrameFamily> {
    let values = cli
        .values
        .iter()
        .map(|n| Ok((n.clone(), load_algebra(n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FrameFamily { max_nodes: cli.max_poset, values })
}

fn split_assignment(s: &str) -> Result<(&str, &str)> {
    s.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::format(format!("expected `name=value`, got `{s}`")))
}

fn parse_elems(s: &str) -> Result<Vec<Elem>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::format(format!("`{x}` is not an element index"))))
        .collect()
}

fn parse_valuation(frame: &Frame, args: &[String]) -> Result<Valuation> {
    args.iter()
        .map(|a| {
            let (k, v) = split_assignment(a)?;
            let f = parse_elems(v)?;
            if f.len() != frame.len() {
                return Err(Error::format(format!("`{k}` needs {} values, one per node", frame.len())));
            }
            Ok((k.to_string(), AcLabeling(f)))
        })
        .collect()
}

fn tables_text(a: &FiniteResiduatedLattice) -> String {
    let mut s = format!("size {}, bottom {}, top {}\n", a.size(), a.bottom(), a.top());
    for c in Connective::ALL {
        let _ = writeln!(s, "{}:", c.symbol());
        for x in a.elements() {
            let row: Vec<String> = a.elements().map(|y| a.op(c, x, y).to_string()).collect();
            let _ = writeln!(s, "  {}", row.join(" "));
        }
    }
    s
}

fn elems_text(v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(Elem::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn valuation_text(h: &Valuation) -> String {
    let parts: Vec<String> = h.iter().map(|(k, f)| format!("{k}={}", elems_text(f))).collect();
    parts.join(" ")
}

fn poset_text(p: &FinitePoset) -> String {
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(x, y)| format!("{} < {}", p.name(x), p.name(y)))
        .collect();
    format!("nodes {}; covers {}", p.names().join(", "), if covers.is_empty() { "none".into() } else { covers.join(", ") })
}

fn dispatch(cli: &Cli, limits: &Limits) -> Result<Report> {
    match &cli.command {
        Command::ValidateAlgebra { algebra } => {
            let raw = load_raw(algebra)?;
            match validate_algebra(&raw) {
                Ok(()) => Report::new(
                    true,
                    json!({ "algebra": algebra, "verdict": "valid" }),
                    format!("{algebra}: valid residuated lattice with {} elements\n", raw.size),
                ),
                Err(Error::Violation(v)) => Report::new(
                    false,
                    json!({ "algebra": algebra, "verdict": "violation", "violation": v }),
                    format!("{algebra}: {v}\n"),
                ),
                Err(e) => Err(e),
            }
        }
        Command::Classify { algebra, require } => {
            let a = load_algebra(algebra)?;
            let c = classify(&a);
            let flags = [
                ("gbl", c.is_gbl),
                ("bl", c.is_bl),
                ("mv", c.is_mv),
                ("heyting", c.is_heyting),
                ("godel", c.is_godel),
                ("boolean", c.is_boolean),
                ("chain", c.is_chain),
            ];
            let mut missing = Vec::new();
            for r in require {
                let r = r.trim().to_ascii_lowercase();
                match flags.iter().find(|(n, _)| *n == r) {
                    Some((_, true)) => {}
                    Some((n, false)) => missing.push(n.to_string()),
                    None => return Err(Error::format(format!("unknown class `{r}`"))),
                }
            }
            let mut text = format!("{algebra}:");
            for (n, v) in flags {
                let _ = write!(text, " {n}={v}");
            }
            let _ = writeln!(text, " potency={}", c.potency.map_or("none".into(), |p| p.to_string()));
            if !missing.is_empty() {
                let _ = writeln!(text, "missing required: {}", missing.join(", "));
            }
            Report::new(
                missing.is_empty(),
                json!({ "algebra": algebra, "classification": c, "missing": missing }),
                text,
            )
        }
        Command::Chain { k, godel } => {
            let a = if *godel { crate::algebra::godel_chain(*k)? } else { crate::algebra::lukasiewicz_chain(*k)? };
            Report::new(true, a.to_raw(), tables_text(&a))
        }
        Command::Product { algebras } => {
            let parts = algebras.iter().map(|n| load_algebra(n)).collect::<Result<Vec<_>>>()?;
            let p = direct_product(&parts, limits)?;
            Report::new(true, p.to_raw(), tables_text(&p))
        }
        Command::Subalgebra { algebra, generators } => {
            let a = load_algebra(algebra)?;
            let s = generated_subalgebra(&a, generators)?;
            Report::new(
                true,
                json!({ "elements": s.elements, "algebra": s.algebra.to_raw() }),
                format!("elements {}\n{}", elems_text(&s.elements), tables_text(&s.algebra)),
            )
        }
        Command::Filters { algebra, check, generate } => {
            let a = load_algebra(algebra)?;
            if let Some(set) = check {
                if let Some(&bad) = set.iter().find(|&&e| e >= a.size()) {
                    return Err(Error::format(format!("element {bad} out of range")));
                }
                return match is_deductive_filter(&a, set) {
                    Ok(()) => Report::new(
                        true,
                        json!({ "set": set, "is_filter": true }),
                        format!("{} is a deductive filter\n", elems_text(set)),
                    ),
                    Err(v) => Report::new(
                        false,
                        json!({ "set": set, "is_filter": false, "violation": v }),
                        format!("{} is not a deductive filter: {v}\n", elems_text(set)),
                    ),
                };
            }
            if let Some(set) = generate {
                let f = generated_filter(&a, set)?;
                let least = f.least(&a);
                return Report::new(
                    true,
                    json!({ "generators": set, "filter": f, "least": least }),
                    format!("generated filter {} with least element {least}\n", f.label()),
                );
            }
            let all = enumerate_filters(&a, limits)?;
            let text: String = all.iter().map(|f| format!("{}\n", f.label())).collect();
            Report::new(true, json!({ "filters": all }), text)
        }
        Command::Values { algebra } => {
            let a = load_algebra(algebra)?;
            let v = values(&a, limits)?;
            let mut text: String = v.filters.iter().map(|f| format!("{}\n", f.label())).collect();
            let _ = writeln!(text, "{}", poset_text(&v.poset));
            Report::new(true, json!({ "values": v.filters, "poset": v.poset.to_spec() }), text)
        }
        Command::Quotient { algebra, generators } => {
            let a = load_algebra(algebra)?;
            let f = generated_filter(&a, generators)?;
            let q = quotient(&a, &f)?;
            let mut text = format!("filter {}\n", f.label());
            for (i, c) in q.classes.iter().enumerate() {
                let _ = writeln!(text, "class {i}: {}", elems_text(c));
            }
            text.push_str(&tables_text(&q.algebra));
            Report::new(
                true,
                json!({ "filter": f, "classes": q.classes, "projection": q.projection, "algebra": q.algebra.to_raw() }),
                text,
            )
        }
        Command::Si { algebra } => {
            let a = load_algebra(algebra)?;
            let r = si_analysis(&a, limits)?;
            let text = match (&r.min_nontrivial_filter, r.coatom) {
                (Some(f), Some(c)) => format!("{algebra} is subdirectly irreducible: least nontrivial filter {}, coatom {c}\n", f.label()),
                _ => format!("{algebra} is not subdirectly irreducible\n"),
            };
            Report::new(r.is_si, &r, text)
        }
        Command::Box { frame, choice } => {
            let f = load_frame(frame)?;
            let g = f.choice(choice)?;
            let boxed = box_map(&f, &g);
            let ac = is_ac_labeling(&f, &g)?;
            Report::new(
                true,
                json!({ "choice": g, "box": boxed, "is_ac_labeling": ac }),
                format!("box {} = {}{}\n", elems_text(&g), elems_text(&boxed), if ac { " (fixed)" } else { "" }),
            )
        }
        Command::Labelings { frame, check } => {
            let f = load_frame(frame)?;
            if let Some(c) = check {
                let g = f.choice(c)?;
                let ac = is_ac_labeling(&f, &g)?;
                return Report::new(
                    ac,
                    json!({ "choice": g, "is_ac_labeling": ac }),
                    format!("{} is {}an ac-labeling\n", elems_text(&g), if ac { "" } else { "not " }),
                );
            }
            let all = enumerate_ac_labelings(&f, limits)?;
            let mut text = format!("{} ac-labelings over {}\n", all.len(), f.poset().names().join(", "));
            for l in &all {
                let _ = writeln!(text, "{}", elems_text(l));
            }
            Report::new(true, json!({ "nodes": f.poset().names(), "labelings": all }), text)
        }
        Command::PosetProduct { frame, dual } => {
            let f = load_frame(frame)?;
            let pp = if *dual { dual_poset_product(&f, limits)? } else { build_poset_product(&f, limits)? };
            let c = classify(&pp.algebra);
            let mut text = String::new();
            for (i, l) in pp.labelings.iter().enumerate() {
                let _ = writeln!(text, "{i}: {}", elems_text(l));
            }
            text.push_str(&tables_text(&pp.algebra));
            Report::new(
                true,
                json!({ "labelings": pp.labelings, "algebra": pp.algebra.to_raw(), "classification": c }),
                text,
            )
        }
        Command::ValueFrame { algebra } => {
            let a = load_algebra(algebra)?;
            let vf = value_frame(&a, limits)?;
            let factors: Vec<Value> = vf
                .factors
                .iter()
                .map(|x| json!({ "value": x.value, "filter_elements": x.filter_elements, "chain_length": x.chain_length }))
                .collect();
            let mut text = format!("potency {}\n{}\n", vf.potency, poset_text(vf.frame.poset()));
            for x in &vf.factors {
                let _ = writeln!(text, "{}: Ł{}", x.value.label(), x.chain_length);
            }
            Report::new(
                true,
                json!({ "potency": vf.potency, "frame": vf.frame.to_spec(), "factors": factors }),
                text,
            )
        }
        Command::Embed { algebra } => {
            let a = load_algebra(algebra)?;
            let vf = value_frame(&a, limits)?;
            let e = crate::structure::epsilon_embedding(&a, &vf, limits)?;
            let mut text = format!("nodes {}\n", vf.frame.poset().names().join(", "));
            for (x, l) in e.labelings.iter().enumerate() {
                let _ = writeln!(text, "ε({x}) = {}", elems_text(l));
            }
            let _ = writeln!(text, "injective homomorphism into {} elements", e.product.algebra.size());
            Report::new(
                true,
                json!({ "nodes": vf.frame.poset().names(), "epsilon": e.labelings, "map": e.map, "product_size": e.product.algebra.size() }),
                text,
            )
        }
        Command::Represent { algebra } => {
            let a = load_algebra(algebra)?;
            let r = represent_finite_gbl(&a, limits)?;
            let report = StructureReport::new(algebra, &r);
            let text = format!(
                "{algebra} ≅ P(F) over {} values ({}), iso {}{}\n",
                report.delta_size,
                report.factors.join(", "),
                elems_text(&r.iso),
                if r.via_epsilon { " (ε)" } else { "" }
            );
            Report::new(
                true,
                json!({ "report": report, "iso": r.iso, "via_epsilon": r.via_epsilon, "frame": r.value_frame.frame.to_spec() }),
                text,
            )
        }
        Command::Parse { statement } => {
            let stmts = load_statements(statement)?;
            let text: String = stmts.iter().map(|s| format!("{s}\n")).collect();
            let rendered: Vec<Value> = stmts
                .iter()
                .map(|s| {
                    let kind = match s {
                        Statement::Formula(_) => "formula",
                        Statement::Equation(_) => "equation",
                        Statement::Sequent(_) => "sequent",
                    };
                    json!({ "kind": kind, "rendered": s })
                })
                .collect();
            Report::new(true, json!({ "statements": rendered }), text)
        }
        Command::Eval { algebra, statement, assignment } => {
            let a = load_algebra(algebra)?;
            match load_one(statement)? {
                Statement::Formula(t) => {
                    let asg = assignment
                        .iter()
                        .map(|s| {
                            let (k, v) = split_assignment(s)?;
                            let e = v.parse().map_err(|_| Error::format(format!("`{v}` is not an element index")))?;
                            Ok((k.to_string(), e))
                        })
                        .collect::<Result<BTreeMap<String, Elem>>>()?;
                    let v = evaluate_term(&a, &asg, &t)?;
                    Report::new(true, json!({ "formula": t, "value": v }), format!("{v}\n"))
                }
                Statement::Equation(eq) => {
                    let r = check_equation(&a, &eq, limits)?;
                    let text = match &r {
                        EquationCheck::Valid { assignments } => format!("`{eq}` holds ({assignments} assignments)\n"),
                        EquationCheck::Counter { assignment, lhs, rhs } => {
                            let parts: Vec<String> = assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                            format!("`{eq}` fails at {}: lhs {lhs}, rhs {rhs}\n", parts.join(" "))
                        }
                    };
                    Report::new(r.is_valid(), json!({ "equation": eq, "result": r }), text)
                }
                Statement::Sequent(s) => Err(Error::format(format!("use `sequent` for `{s}`"))),
            }
        }
        Command::Hierarchy { statement } => {
            let mut rows = Vec::new();
            let mut text = String::new();
            for s in load_statements(statement)? {
                let terms: Vec<(&str, Term)> = match s {
                    Statement::Formula(t) => vec![("formula", t)],
                    Statement::Equation(e) => vec![("lhs", e.lhs), ("rhs", e.rhs)],
                    Statement::Sequent(s) => return Err(Error::format(format!("expected a formula, found `{s}`"))),
                };
                for (role, t) in terms {
                    let c = classify_hierarchy(&t);
                    let lvl = |l: Option<u32>| l.map_or("none".to_string(), |n| n.to_string());
                    let _ = writeln!(
                        text,
                        "{t}: P{} N{} P2*={} N2*={}",
                        lvl(c.p_level),
                        lvl(c.n_level),
                        c.in_p2_star,
                        c.in_n2_star
                    );
                    rows.push(json!({ "role": role, "term": t, "class": c }));
                }
            }
            Report::new(true, json!({ "terms": rows }), text)
        }
        Command::Conuclear { equation, algebra, frame } => {
            let eq = match load_one(equation)? {
                Statement::Equation(e) => e,
                Statement::Formula(t) => Equation::is_top(t),
                Statement::Sequent(s) => return Err(Error::format(format!("expected an equation, found `{s}`"))),
            };
            let trace = is_conuclear_equation(&eq);
            let mut text = format!("`{eq}` is {}conuclear: {}\n", if trace.conuclear { "" } else { "not " }, trace.reason);
            let ineq = match &eq {
                Equation { relation: Relation::LessEq, .. } => Some(eq.clone()),
                _ => match (&trace.conuclear, &eq.lhs, &eq.rhs) {
                    (true, Term::Bin(Connective::Impl, t, u), Term::One)
                    | (true, Term::One, Term::Bin(Connective::Impl, t, u)) => {
                        Some(Equation::less_eq((**t).clone(), (**u).clone()))
                    }
                    _ => None,
                },
            };
            let mut checks = Vec::new();
            if algebra.is_some() || frame.is_some() {
                let ineq = ineq.ok_or_else(|| Error::precondition("preservation needs a conuclear equation or t <= u"))?;
                if let Some(name) = algebra {
                    let a = load_algebra(name)?;
                    let r = conuclear_preservation_check(&Conucleus::identity(&a), &ineq, limits)?;
                    let _ = writeln!(text, "identity on {name}: base {}, image {}", r.holds_in_base, r.holds_in_image);
                    checks.push(json!({ "conucleus": "identity", "algebra": name, "report": r }));
                }
                if let Some(path) = frame {
                    let f = load_frame(path)?;
                    let product = f.direct_product(limits)?;
                    let sigma = Conucleus::new(&product, box_on_direct_product(&f, &product))?;
                    let r = conuclear_preservation_check(&sigma, &ineq, limits)?;
                    let _ = writeln!(text, "box on {}: base {}, image {}", path.display(), r.holds_in_base, r.holds_in_image);
                    checks.push(json!({ "conucleus": "box", "frame": path, "report": r }));
                }
            }
            let holds = if checks.is_empty() { trace.conuclear } else { true };
            Report::new(holds, json!({ "equation": eq, "trace": trace, "preservation": checks }), text)
        }
        Command::Sequent { algebra, sequent, k_max } => {
            let a = load_algebra(algebra)?;
            let s = match load_one(sequent)? {
                Statement::Sequent(s) => s,
                Statement::Formula(t) => crate::syntax::Sequent { premises: Vec::new(), conclusion: t },
                Statement::Equation(e) => return Err(Error::format(format!("expected a sequent, found `{e}`"))),
            };
            let r = sequent_consequence(&a, &s, *k_max, limits)?;
            let text = format!(
                "`{s}`: direct {}, local deduction k {}\n",
                r.direct,
                r.local_deduction_k.map_or("none".into(), |k| k.to_string())
            );
            Report::new(r.direct, json!({ "sequent": s, "report": r }), text)
        }
        Command::Valid { frame, formula } => {
            let f = load_frame(frame)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut holds = true;
            for t in load_formulas(formula)? {
                let v = frame_valid(&f, &t, limits)?;
                rows.push(verdict_json(&t, frame, &f, &v));
                match &v {
                    FrameVerdict::Valid { valuations } => {
                        let _ = writeln!(text, "`{t}` is valid ({valuations} valuations)");
                    }
                    FrameVerdict::Countermodel { valuation, node } => {
                        holds = false;
                        let _ = writeln!(text, "`{t}` fails at node {node} under {}", valuation_text(valuation));
                    }
                }
            }
            Report::new(holds, single_or_list(rows), text)
        }
        Command::Countermodel { formula, samples } => {
            let family = generated_family(cli)?;
            let options = SearchOptions { seed: cli.seed, samples: *samples };
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut holds = true;
            for t in load_formulas(formula)? {
                let r = countermodel_search(&t, &family, limits, &options)?;
                match &r {
                    CountermodelOutcome::Found { frame, valuation, node, .. } => {
                        holds = false;
                        let f = Frame::from_spec(frame, None)?;
                        let _ = writeln!(
                            text,
                            "`{t}` fails at node {node} of {} valued {} under {}",
                            poset_text(f.poset()),
                            f.labels().join(", "),
                            valuation_text(valuation)
                        );
                    }
                    CountermodelOutcome::Exhausted { frames_checked, valuations_checked, exhaustive } => {
                        let _ = writeln!(
                            text,
                            "no countermodel to `{t}` in {frames_checked} frames ({valuations_checked} valuations, {})",
                            if *exhaustive { "exhaustive" } else { "sampled" }
                        );
                    }
                }
                rows.push(json!({ "formula": t, "result": r }));
            }
            Report::new(holds, single_or_list(rows), text)
        }
        Command::Kripke { frame, formula, upsets } => {
            let f = load_frame(frame)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut holds = true;
            for t in load_formulas(formula)? {
                if upsets.is_empty() {
                    let n = kripke_all(&f, &t, limits)?;
                    let _ = writeln!(text, "`{t}`: forcing agrees with Kripke forcing on {n} up-set valuations");
                    rows.push(json!({ "formula": t, "valuations_checked": n, "agree": true }));
                } else {
                    let up = parse_upsets(&f, upsets)?;
                    check_kripke_agreement(&f, &up, &t)?;
                    let forced: Vec<String> = f
                        .poset()
                        .nodes()
                        .filter_map(|x| match kripke_forces(f.poset(), &up, x, &t) {
                            Ok(true) => Some(Ok(f.poset().name(x).to_string())),
                            Ok(false) => None,
                            Err(e) => Some(Err(e)),
                        })
                        .collect::<Result<_>>()?;
                    holds &= forced.len() == f.len();
                    let _ = writeln!(text, "`{t}` is forced at {{{}}}", forced.join(", "));
                    rows.push(json!({ "formula": t, "forced_at": forced, "agree": true }));
                }
            }
            Report::new(holds, single_or_list(rows), text)
        }
        Command::TemporalEval { flow, formula, assignment } => {
            let (flow, names) = load_flow(flow)?;
            let v = parse_temporal_assignment(&flow, assignment)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for t in load_formulas(formula)? {
                let vals = flow
                    .poset()
                    .nodes()
                    .map(|x| Ok((names[x].clone(), temporal_eval(&flow, &v, x, &t)?.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                let parts: Vec<String> = vals.iter().map(|(n, q)| format!("{n}={q}")).collect();
                let _ = writeln!(text, "`{t}`: {}", parts.join(" "));
                rows.push(json!({ "formula": t, "values": vals }));
            }
            Report::new(true, single_or_list(rows), text)
        }
        Command::TemporalCrosscheck { frame, formula, valuation } => {
            let f = load_frame(frame)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for t in load_formulas(formula)? {
                if valuation.is_empty() {
                    let n = temporal_crosscheck_exhaustive(&f, &t, limits)?;
                    let _ = writeln!(text, "`{t}`: temporal values agree with forcing on {n} valuations");
                    rows.push(json!({ "formula": t, "valuations_checked": n, "agree": true }));
                } else {
                    let h = parse_valuation(&f, valuation)?;
                    let r = temporal_crosscheck(&f, &h, &t, limits)?;
                    let parts: Vec<String> = r.values.iter().map(|(n, q)| format!("{n}={q}")).collect();
                    let _ = writeln!(text, "`{t}`: {} (agree)", parts.join(" "));
                    rows.push(json!({ "formula": t, "values": r.values, "agree": true }));
                }
            }
            Report::new(true, single_or_list(rows), text)
        }
        Command::SoundnessSuite { k } => {
            let family = generated_family(cli)?;
            let frames = enumerate_frames(&family)?;
            let report = soundness_instance_suite(&frames, &standard_axioms(*k), limits)?;
            let mut text = format!(
                "{} frames, {} instances checked, {} skipped\n",
                frames.len(),
                report.checked,
                report.skipped
            );
            for ax in standard_axioms(*k) {
                let n = report
                    .entries
                    .iter()
                    .filter(|e| e.axiom == ax.name && matches!(e.status, crate::semantics::SuiteStatus::Valid { .. }))
                    .count();
                let _ = writeln!(text, "{}: `{}` valid on {n} frames", ax.name, ax.equation);
            }
            Report::new(true, json!({ "frames": frames.len(), "axioms": standard_axioms(*k), "report": report }), text)
        }
    }
}

fn single_or_list(mut rows: Vec<Value>) -> Value {
    if rows.len() == 1 {
        rows.remove(0)
    } else {
        Value::Array(rows)
    }
}

fn verdict_json(t: &Term, path: &Path, f: &Frame, v: &FrameVerdict) -> Value {
    let (verdict, valuation, node) = match v {
        FrameVerdict::Valid { .. } => ("valid", None, None),
        FrameVerdict::Countermodel { valuation, node } => ("countermodel", Some(valuation), Some(node)),
    };
    json!({
        "formula": t,
        "frame": path,
        "verdict": verdict,
        "witness_valuation": valuation,
        "witness_node": node,
        "labels": f.labels(),
    })
}

fn parse_upsets(f: &Frame, args: &[String]) -> Result<UpsetValuation> {
    args.iter()
        .map(|a| {
            let (k, v) = split_assignment(a)?;
            let nodes = v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|n| f.poset().index_of(n).ok_or_else(|| Error::format(format!("unknown node `{n}`"))))
                .collect::<Result<Vec<_>>>()?;
            Ok((k.to_string(), nodes))
        })
        .collect()
}

/// Agreement with Kripke forcing under every valuation; returns how many
/// valuations were checked.
fn kripke_all(f: &Frame, t: &Term, limits: &Limits) -> Result<u128> {
    let labelings = enumerate_ac_labelings(f, limits)?;
    let vars: Vec<String> = t.variables().into_iter().collect();
    let count = crate::limits::checked_power(labelings.len(), vars.len());
    limits.check_evaluations("kripke valuations", count)?;
    let mut odo = crate::syntax::Odometer::new(vars.len(), labelings.len());
    while let Some(d) = odo.next() {
        let h: Valuation = vars.iter().cloned().zip(d.iter().map(|&i| labelings[i].clone())).collect();
        let up = kripke_inverse(f, &h)?;
        check_kripke_agreement(f, &up, t)?;
    }
    Ok(count)
}

#[derive(serde::Deserialize)]
struct FlowSpec {
    poset: PosetSpec,
    labels: BTreeMap<String, usize>,
}

fn load_flow(path: &Path) -> Result<(TemporalFlow, Vec<String>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::format(format!("cannot read flow `{}`: {e}", path.display())))?;
    let spec: FlowSpec =
        serde_json::from_str(&text).map_err(|e| Error::format(format!("flow file `{}`: {e}", path.display())))?;
    let poset = FinitePoset::from_spec(&spec.poset)?;
    let lengths = poset
        .names()
        .iter()
        .map(|n| spec.labels.get(n).copied().ok_or_else(|| Error::format(format!("no label for node `{n}`"))))
        .collect::<Result<Vec<_>>>()?;
    let names = poset.names().to_vec();
    Ok((TemporalFlow::new(poset, lengths)?, names))
}

fn parse_temporal_assignment(flow: &TemporalFlow, args: &[String]) -> Result<TemporalAssignment> {
    args.iter()
        .map(|a| {
            let (k, v) = split_assignment(a)?;
            let vals = v
                .split(',')
                .map(|q| q.trim().parse::<Ratio<i64>>().map_err(|_| Error::format(format!("`{q}` is not a rational"))))
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != flow.poset().len() {
                return Err(Error::format(format!("`{k}` needs {} values, one per node", flow.poset().len())));
            }
            Ok((k.to_string(), vals))
        })
        .collect()
}
