//! The `peirce-lab` command line.
//!
//! Exit codes: 0 computed, 1 a checked property failed or a witness was found,
//! 2 usage or input error, 3 size guard or search budget exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::construct_catalog_ring;
use crate::conditions::{
    check_conditions, witness_revalidate, ConditionId, ConditionReport, ConditionSet, Mode,
};
use crate::error::{Error, Result};
use crate::maps::{
    catalog_map_expr, MapClassification, MapSource, MapTable, PsiIdentities, Status,
    StructureReport,
};
use crate::peirce::{find_idempotents, DecompositionReport, Idempotent, PeirceDecomposition};
use crate::report::{to_json, Check};
use crate::ring::{AxiomReport, Element, Limits, Ring, RingSpec};
use crate::search::{
    empirical_theorem_report, enumerate_reverse_derivable_maps, find_nonadditive_reverse_derivable,
    SearchConfig, SearchMode, SearchReport, SearchStats, TheoremReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "peirce-lab",
    version,
    about = "Finite-ring laboratory for reverse derivable maps"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring validation and inspection.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Classify a map or inspect its Peirce structure.
    Map {
        #[command(subcommand)]
        action: MapAction,
    },
    /// Check a hypothesis set on (ring, idempotent).
    Conditions {
        #[command(subcommand)]
        action: ConditionsAction,
    },
    /// Exhaustive search over reverse derivable maps.
    Search {
        #[command(subcommand)]
        action: SearchAction,
    },
    /// Reproduce the worked examples.
    Demo {
        #[arg(value_enum)]
        which: DemoWhich,
        /// Coefficient modulus for eg1 and eg3.
        #[arg(long, default_value_t = 5)]
        modulus: u64,
    },
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Catalog ring: an id followed by integer parameters, e.g. `--catalog matrix 2 2`.
    #[arg(long, num_args = 1.., value_name = "ID [PARAM]...", required_unless_present = "ring_file", conflicts_with = "ring_file")]
    pub catalog: Option<Vec<String>>,

    /// Ring file in the JSON ring format.
    #[arg(long, value_name = "PATH")]
    pub ring_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IdempotentArg {
    /// Idempotent as comma-separated residues; defaults to the lowest-index nontrivial one.
    #[arg(long, short = 'e', value_name = "COORDS")]
    pub idempotent: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct MapArgs {
    /// Catalog map name.
    #[arg(long)]
    pub map: Option<String>,
    /// Map file in the JSON map format.
    #[arg(long, value_name = "PATH")]
    pub map_file: Option<PathBuf>,
    /// Map expression, e.g. `vars a,b : (0, b)`.
    #[arg(long)]
    pub expr: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Csp)]
    pub mode: ModeArg,
    /// Largest ring to search (default 16 for csp, 8 for oracle).
    #[arg(long)]
    pub max_ring_size: Option<usize>,
    #[arg(long)]
    pub max_solutions: Option<usize>,
    /// Seconds.
    #[arg(long)]
    pub time_budget: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Csp,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SetArg {
    Thm1,
    Thm2,
    Ei,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoWhich {
    Eg1,
    Eg2,
    Eg3,
    All,
}

#[derive(Debug, Subcommand)]
pub enum RingAction {
    /// Full-element scan of the ring axioms.
    Verify(RingArgs),
    /// All idempotents, flagged nontrivial or not.
    Idempotents(RingArgs),
    /// Two-sided Peirce decomposition relative to an idempotent.
    Peirce {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        e: IdempotentArg,
    },
    /// The center Z(R).
    Center(RingArgs),
}

#[derive(Debug, Subcommand)]
pub enum MapAction {
    /// Decide every map law by exhaustive scan.
    Classify {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        map: MapArgs,
        /// Also check the 3-multiplicative derivation law.
        #[arg(long)]
        triple: bool,
        /// Also check F(ab) = F(a)b + a d(b) with this catalog map as d.
        #[arg(long, value_name = "MAP")]
        associated: Option<String>,
    },
    /// Component behaviour of a reverse derivable map.
    Structure {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        e: IdempotentArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConditionsAction {
    Check {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        e: IdempotentArg,
        #[arg(long, value_enum)]
        set: SetArg,
        /// Quantify only over m with m Z(R) = 0.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchAction {
    /// Enumerate every reverse derivable map.
    Maps {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// First non-additive reverse derivable map, if any.
    Nonadditive {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Hypotheses, full solution set and verdicts for (ring, idempotent).
    Theorem {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        e: IdempotentArg,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// Result of one invocation: exit code plus what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let text = err.render().to_string();
            if err.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => return error_outcome(&e),
    };
    match execute(cli, limits) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => error_outcome(&e),
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = match e {
        Error::GuardExceeded { .. } | Error::SearchCap(_) => EXIT_GUARD,
        _ => EXIT_USAGE,
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn load_ring(args: &RingArgs, limits: Limits) -> Result<Arc<Ring>> {
    let ring = match (&args.catalog, &args.ring_file) {
        (Some(parts), None) => {
            let (id, params) = parts
                .split_first()
                .ok_or_else(|| Error::Malformed("--catalog needs an id".into()))?;
            let params = params
                .iter()
                .map(|p| {
                    p.parse::<u64>().map_err(|_| {
                        Error::Malformed(format!("catalog parameter `{p}` is not an integer"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            construct_catalog_ring(id, &params, limits)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            Ring::build(RingSpec::from_json(&text)?, limits)?
        }
        _ => {
            return Err(Error::Malformed(
                "exactly one ring source is required".into(),
            ))
        }
    };
    Ok(Arc::new(ring))
}

fn load_map(ring: &Arc<Ring>, args: &MapArgs) -> Result<MapTable> {
    let source = match (&args.map, &args.map_file, &args.expr) {
        (Some(name), None, None) => MapSource::Catalog { name: name.clone() },
        (None, Some(path), None) => MapSource::from_json(&std::fs::read_to_string(path)?)?,
        (None, None, Some(expr)) => MapSource::Expr {
            vars: Vec::new(),
            expr: expr.clone(),
        },
        _ => {
            return Err(Error::Malformed(
                "exactly one map source is required".into(),
            ))
        }
    };
    MapTable::build(ring.clone(), &source)
}

fn resolve_idempotent(ring: &Ring, arg: &IdempotentArg) -> Result<usize> {
    match &arg.idempotent {
        Some(text) => ring.parse_element(text),
        None => find_idempotents(ring)?
            .into_iter()
            .find(|i| i.nontrivial)
            .map(|i| i.index)
            .ok_or_else(|| {
                Error::Precondition(format!("{} has no nontrivial idempotent", ring.name()))
            }),
    }
}

fn search_config(args: &SearchArgs) -> SearchConfig {
    let mode = match args.mode {
        ModeArg::Csp => SearchMode::Csp,
        ModeArg::Oracle => SearchMode::Oracle,
    };
    let mut cfg = SearchConfig::for_mode(mode);
    if let Some(n) = args.max_ring_size {
        cfg.max_ring_size = n;
    }
    cfg.max_solutions = args.max_solutions;
    cfg.time_budget = args.time_budget;
    cfg
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = to_json(report);
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn execute(cli: &Cli, limits: Limits) -> Result<(i32, String)> {
    let f = cli.format;
    match &cli.command {
        Command::Ring { action } => match action {
            RingAction::Verify(args) => {
                let ring = load_ring(args, limits)?;
                let report = ring.verify_axioms()?;
                let code = if report.pass {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                };
                Ok((code, emit(f, &report, text_axioms)))
            }
            RingAction::Idempotents(args) => {
                let ring = load_ring(args, limits)?;
                let report = IdempotentsReport {
                    ring: ring.name().to_string(),
                    unital: ring.is_unital(),
                    idempotents: find_idempotents(&ring)?,
                };
                Ok((EXIT_OK, emit(f, &report, text_idempotents)))
            }
            RingAction::Peirce { ring, e } => {
                let ring = load_ring(ring, limits)?;
                let e = resolve_idempotent(&ring, e)?;
                let report = PeirceDecomposition::new(ring.clone(), e)?.report();
                let code = if report.direct && report.multiplication_rule.pass {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                };
                Ok((code, emit(f, &report, |r| text_peirce(&ring, r))))
            }
            RingAction::Center(args) => {
                let ring = load_ring(args, limits)?;
                let center: Vec<Element> = ring
                    .center()?
                    .into_iter()
                    .map(|z| ring.element(z))
                    .collect();
                let report = CenterReport {
                    ring: ring.name().to_string(),
                    size: center.len(),
                    center,
                };
                Ok((EXIT_OK, emit(f, &report, text_center)))
            }
        },
        Command::Map { action } => match action {
            MapAction::Classify {
                ring,
                map,
                triple,
                associated,
            } => {
                let ring = load_ring(ring, limits)?;
                let map = load_map(&ring, map)?;
                let generalized = match associated {
                    Some(name) => {
                        let d = MapTable::build(
                            ring.clone(),
                            &MapSource::Catalog { name: name.clone() },
                        )?;
                        Some(map.check_generalized_derivation(&d)?)
                    }
                    None => None,
                };
                let report = ClassifyReport {
                    classification: map.classify()?,
                    triple_derivation: if *triple {
                        Some(map.check_n_multiplicative(3)?)
                    } else {
                        None
                    },
                    generalized_derivation: generalized,
                };
                Ok((EXIT_OK, emit(f, &report, text_classify)))
            }
            MapAction::Structure { ring, map, e } => {
                let ring = load_ring(ring, limits)?;
                let map = load_map(&ring, map)?;
                let e = resolve_idempotent(&ring, e)?;
                let d = PeirceDecomposition::new(ring.clone(), e)?;
                let report = map.verify_structure(&d)?;
                let code = if report.all_pass() {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                };
                Ok((code, emit(f, &report, text_structure)))
            }
        },
        Command::Conditions {
            action:
                ConditionsAction::Check {
                    ring,
                    e,
                    set,
                    strict,
                },
        } => {
            let ring = load_ring(ring, limits)?;
            let e = resolve_idempotent(&ring, e)?;
            let set = match set {
                SetArg::Thm1 => ConditionSet::Thm1,
                SetArg::Thm2 => ConditionSet::Thm2,
                SetArg::Ei => ConditionSet::Ei,
            };
            let mode = if *strict {
                Mode::AnnihilatesCenter
            } else {
                Mode::All
            };
            let report = check_conditions(&ring, e, set, mode)?;
            let code = if report.overall {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            };
            Ok((code, emit(f, &report, text_conditions)))
        }
        Command::Search { action } => match action {
            SearchAction::Maps { ring, search } => {
                let ring = load_ring(ring, limits)?;
                let cfg = search_config(search);
                let result = enumerate_reverse_derivable_maps(&ring, &cfg)?;
                let report = result.report(&ring, &cfg);
                let code = if report.complete { EXIT_OK } else { EXIT_GUARD };
                Ok((code, emit(f, &report, |r| text_search(r, &result.stats))))
            }
            SearchAction::Nonadditive { ring, search } => {
                let ring = load_ring(ring, limits)?;
                let cfg = search_config(search);
                let found = find_nonadditive_reverse_derivable(&ring, &cfg)?;
                let report = NonadditiveReport {
                    ring: ring.name().to_string(),
                    config: cfg,
                    complete: found.complete,
                    stats: found.stats.clone(),
                    witness: match &found.map {
                        Some(m) => Some(NonadditiveWitness {
                            map: m.to_source(),
                            classification: m.classify()?,
                        }),
                        None => None,
                    },
                };
                let code = if !report.complete {
                    EXIT_GUARD
                } else if report.witness.is_some() {
                    EXIT_CHECK_FAILED
                } else {
                    EXIT_OK
                };
                Ok((
                    code,
                    emit(f, &report, |r| text_nonadditive(r, &found.stats)),
                ))
            }
            SearchAction::Theorem { ring, e, search } => {
                let ring = load_ring(ring, limits)?;
                let e = resolve_idempotent(&ring, e)?;
                let cfg = search_config(search);
                let report = empirical_theorem_report(&ring, e, &cfg)?;
                let code = if report.complete { EXIT_OK } else { EXIT_GUARD };
                Ok((code, emit(f, &report, text_theorem)))
            }
        },
        Command::Demo { which, modulus } => {
            let report = demo(*which, *modulus, limits)?;
            Ok((EXIT_OK, emit(f, &report, text_demo)))
        }
    }
}

#[derive(Debug, Serialize)]
pub struct IdempotentsReport {
    pub ring: String,
    pub unital: bool,
    pub idempotents: Vec<Idempotent>,
}

#[derive(Debug, Serialize)]
pub struct CenterReport {
    pub ring: String,
    pub size: usize,
    pub center: Vec<Element>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub classification: MapClassification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple_derivation: Option<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generalized_derivation: Option<Check>,
}

#[derive(Debug, Serialize)]
pub struct NonadditiveWitness {
    pub map: MapSource,
    pub classification: MapClassification,
}

#[derive(Debug, Serialize)]
pub struct NonadditiveReport {
    pub ring: String,
    pub config: SearchConfig,
    pub complete: bool,
    pub stats: SearchStats,
    pub witness: Option<NonadditiveWitness>,
}

#[derive(Debug, Serialize)]
pub struct Eg1Demo {
    pub ring: String,
    pub expression: String,
    pub expression_matches_catalog: bool,
    pub nontrivial_idempotents: usize,
    pub classification: MapClassification,
    pub psi_at: [Element; 2],
    pub psi_value: Element,
    pub psi_identities: PsiIdentities,
}

#[derive(Debug, Serialize)]
pub struct Eg2Demo {
    pub ring: String,
    pub commutative: bool,
    pub idempotent: Element,
    pub idempotent_nontrivial: bool,
    pub peirce: DecompositionReport,
    pub thm1: ConditionReport,
    pub stated_witness: Element,
    pub stated_witness_valid: bool,
    pub classification: MapClassification,
    pub additive_reverse_derivable: bool,
    pub hypotheses_not_necessary: bool,
}

#[derive(Debug, Serialize)]
pub struct Eg3Demo {
    pub ring: String,
    pub lambda: MapClassification,
    pub phi: MapClassification,
    pub lambda_reverse_not_derivation: bool,
    pub phi_derivation_not_reverse: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct DemoReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eg1: Option<Eg1Demo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eg2: Option<Eg2Demo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eg3: Option<Eg3Demo>,
}

fn catalog_map(ring: &Arc<Ring>, name: &str) -> Result<MapTable> {
    MapTable::build(ring.clone(), &MapSource::Catalog { name: name.into() })
}

pub fn demo(which: DemoWhich, modulus: u64, limits: Limits) -> Result<DemoReport> {
    let mut report = DemoReport::default();
    let all = which == DemoWhich::All;
    if all || which == DemoWhich::Eg1 {
        let ring = Arc::new(construct_catalog_ring("eg1", &[modulus], limits)?);
        let map = catalog_map(&ring, "eg1_map")?;
        let expression = catalog_map_expr("eg1_map")
            .expect("catalog expression")
            .to_string();
        let from_expr = MapTable::build(
            ring.clone(),
            &MapSource::Expr {
                vars: Vec::new(),
                expr: expression.clone(),
            },
        )?;
        let x = ring.reduce(&Element::new(vec![0, 1, 1]))?;
        report.eg1 = Some(Eg1Demo {
            ring: ring.name().to_string(),
            expression_matches_catalog: from_expr == map,
            expression,
            nontrivial_idempotents: find_idempotents(&ring)?
                .iter()
                .filter(|i| i.nontrivial)
                .count(),
            classification: map.classify()?,
            psi_value: map.psi_defect(&x, &x)?,
            psi_at: [x.clone(), x],
            psi_identities: map.check_psi_identities()?,
        });
    }
    if all || which == DemoWhich::Eg2 {
        let ring = Arc::new(construct_catalog_ring("eg2", &[], limits)?);
        let e = ring.index_of(&Element::new(vec![3, 0]))?;
        let nontrivial = find_idempotents(&ring)?
            .iter()
            .any(|i| i.index == e && i.nontrivial);
        let thm1 = check_conditions(&ring, e, ConditionSet::Thm1, Mode::All)?;
        let stated = Element::new(vec![2, 4]);
        let stated_valid =
            witness_revalidate(&ring, e, ConditionId::Thm1I, ring.index_of(&stated)?)?;
        let map = catalog_map(&ring, "eg2_map")?;
        let classification = map.classify()?;
        let additive_reverse = classification.is_additive_reverse_derivation();
        report.eg2 = Some(Eg2Demo {
            ring: ring.name().to_string(),
            commutative: ring.is_commutative()?,
            idempotent: ring.element(e),
            idempotent_nontrivial: nontrivial,
            peirce: PeirceDecomposition::new(ring.clone(), e)?.report(),
            hypotheses_not_necessary: !thm1.overall && additive_reverse,
            thm1,
            stated_witness: stated,
            stated_witness_valid: stated_valid,
            classification,
            additive_reverse_derivable: additive_reverse,
        });
    }
    if all || which == DemoWhich::Eg3 {
        let ring = Arc::new(construct_catalog_ring("eg3", &[modulus], limits)?);
        let lambda = catalog_map(&ring, "lambda")?.classify()?;
        let phi = catalog_map(&ring, "phi")?.classify()?;
        report.eg3 = Some(Eg3Demo {
            ring: ring.name().to_string(),
            lambda_reverse_not_derivation: lambda.is_additive_reverse_derivation()
                && !lambda.derivation.pass,
            phi_derivation_not_reverse: phi.is_additive_derivation()
                && !phi.reverse_derivation.pass,
            lambda,
            phi,
        });
    }
    Ok(report)
}

fn verdict(c: &Check) -> String {
    match &c.witness {
        None => "PASS".to_string(),
        Some(w) => format!("FAIL (witness {})", elements(w)),
    }
}

fn elements(xs: &[Element]) -> String {
    xs.iter()
        .map(|x| format!("({x})"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn text_axioms(r: &AxiomReport) -> String {
    let mut s = format!("ring {} (order {})\n", r.ring, r.order);
    let _ = writeln!(s, "  associativity:        {}", verdict(&r.associativity));
    let _ = writeln!(
        s,
        "  left distributivity:  {}",
        verdict(&r.left_distributivity)
    );
    let _ = writeln!(
        s,
        "  right distributivity: {}",
        verdict(&r.right_distributivity)
    );
    if let Some(u) = &r.unit {
        let _ = writeln!(s, "  unit:                 {}", verdict(u));
    }
    let _ = writeln!(s, "  overall: {}", if r.pass { "PASS" } else { "FAIL" });
    s
}

fn text_idempotents(r: &IdempotentsReport) -> String {
    let list = |only_nontrivial: bool| {
        r.idempotents
            .iter()
            .filter(|i| !only_nontrivial || i.nontrivial)
            .map(|i| format!("({})", i.element))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "ring {}\n  idempotents: {{{}}}\n  nontrivial:  {{{}}}\n",
        r.ring,
        list(false),
        list(true)
    )
}

fn text_peirce(ring: &Ring, r: &DecompositionReport) -> String {
    let mut s = format!(
        "ring {} (order {}), e = ({})\n",
        r.ring, r.order, r.idempotent
    );
    for c in &r.components {
        let members = c
            .members
            .iter()
            .map(|&i| format!("({})", ring.element(i)))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(s, "  {} [{}]: {}", c.component, c.size, members);
    }
    let _ = writeln!(s, "  direct: {}", if r.direct { "PASS" } else { "FAIL" });
    let _ = writeln!(
        s,
        "  multiplication rule: {}",
        verdict(&r.multiplication_rule)
    );
    s
}

fn text_center(r: &CenterReport) -> String {
    format!(
        "ring {}\n  center [{}]: {{{}}}\n",
        r.ring,
        r.size,
        elements(&r.center)
    )
}

fn text_classification(s: &mut String, c: &MapClassification) {
    let _ = writeln!(s, "map {} on {}", c.map, c.ring);
    for (name, check) in [
        ("additive", &c.additive),
        ("derivation", &c.derivation),
        ("reverse_derivation", &c.reverse_derivation),
        ("jordan_derivation", &c.jordan_derivation),
        ("left_centralizer", &c.left_centralizer),
        ("right_centralizer", &c.right_centralizer),
    ] {
        let _ = writeln!(s, "  {name:<20} {}", verdict(check));
    }
}

fn text_classify(r: &ClassifyReport) -> String {
    let mut s = String::new();
    text_classification(&mut s, &r.classification);
    if let Some(c) = &r.triple_derivation {
        let _ = writeln!(s, "  {:<20} {}", "triple_derivation", verdict(c));
    }
    if let Some(c) = &r.generalized_derivation {
        let _ = writeln!(s, "  {:<20} {}", "generalized", verdict(c));
    }
    s
}

fn text_structure(r: &StructureReport) -> String {
    let mut s = format!("map {} relative to e = ({})\n", r.map, r.idempotent);
    for item in &r.items {
        let status = match item.status {
            Status::Pass => "PASS".to_string(),
            Status::Skipped => "SKIPPED".to_string(),
            Status::Fail => format!(
                "FAIL (witness {})",
                elements(item.witness.as_deref().unwrap_or(&[]))
            ),
        };
        let _ = writeln!(s, "  {:<32} {}", item.id, status);
    }
    s
}

fn text_condition_report(s: &mut String, r: &ConditionReport) {
    let mode = match r.mode {
        Mode::All => "",
        Mode::AnnihilatesCenter => " [m Z(R) = 0 only]",
    };
    let _ = writeln!(
        s,
        "conditions {} on {}, e = ({}){}",
        r.set, r.ring, r.idempotent, mode
    );
    for item in &r.items {
        let status = match &item.witness {
            None => "PASS".to_string(),
            Some(w) => format!("FAIL (witness ({w}))"),
        };
        let _ = writeln!(s, "  {}({}) {}", r.set, item.id, status);
    }
    let _ = writeln!(s, "  overall: {}", if r.overall { "PASS" } else { "FAIL" });
}

fn text_conditions(r: &ConditionReport) -> String {
    let mut s = String::new();
    text_condition_report(&mut s, r);
    s
}

fn text_stats(s: &mut String, complete: bool, stats: &SearchStats) {
    let _ = writeln!(
        s,
        "  search {}: {} nodes, {} propagations, {} solutions, {:.3}s",
        if complete {
            "complete"
        } else {
            "INCOMPLETE (budget)"
        },
        stats.nodes,
        stats.propagations,
        stats.solutions,
        stats.wall_time.as_secs_f64()
    );
}

fn text_search(r: &SearchReport, stats: &SearchStats) -> String {
    let mut s = format!("reverse derivable maps on {}\n", r.ring);
    text_stats(&mut s, r.complete, stats);
    let v = &r.verdict;
    let _ = writeln!(
        s,
        "  solutions: {} ({} additive, {} non-additive, {} nonzero additive)",
        v.solutions, v.additive, v.nonadditive, v.nonzero_additive
    );
    s
}

fn text_nonadditive(r: &NonadditiveReport, stats: &SearchStats) -> String {
    let mut s = format!("non-additive reverse derivable map on {}\n", r.ring);
    text_stats(&mut s, r.complete, stats);
    match &r.witness {
        Some(w) => {
            if let MapSource::Table { entries } = &w.map {
                for (x, y) in entries {
                    let _ = writeln!(s, "  ({x}) -> ({y})");
                }
            }
            let _ = writeln!(s, "  additive: {}", verdict(&w.classification.additive));
        }
        None => {
            let _ = writeln!(s, "  none found");
        }
    }
    s
}

fn text_theorem(r: &TheoremReport) -> String {
    let mut s = format!(
        "ring {} (order {}, {}, {}), e = ({})\n",
        r.ring,
        r.order,
        if r.unital { "unital" } else { "non-unital" },
        if r.commutative {
            "commutative"
        } else {
            "noncommutative"
        },
        r.idempotent
    );
    for c in &r.conditions {
        text_condition_report(&mut s, c);
    }
    text_stats(&mut s, r.complete, &r.stats);
    let additive = r
        .maps
        .iter()
        .filter(|m| m.classification.additive.pass)
        .count();
    let _ = writeln!(s, "  solutions: {} ({} additive)", r.maps.len(), additive);
    let structure_failures = r.maps.iter().filter(|m| !m.structure.all_pass()).count();
    let _ = writeln!(
        s,
        "  maps with a failing structure item: {structure_failures}"
    );
    let v = &r.verdicts;
    let _ = writeln!(s, "  non-additive map exists: {}", v.nonadditive_exists);
    let _ = writeln!(
        s,
        "  only the zero map is additive: {}",
        v.only_zero_is_additive
    );
    let _ = writeln!(
        s,
        "  hypotheses not necessary for additivity: {}",
        v.hypotheses_not_necessary
    );
    for t in &v.theorems {
        let _ = writeln!(
            s,
            "  {}: hypotheses {}, implication {:?}",
            t.theorem,
            if t.hypotheses_hold { "hold" } else { "fail" },
            t.implication
        );
    }
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn text_demo(r: &DemoReport) -> String {
    let mut s = String::new();
    if let Some(d) = &r.eg1 {
        let _ = writeln!(s, "== eg1: {} with map {}", d.ring, d.expression);
        let _ = writeln!(
            s,
            "  expression equals catalog table: {}",
            yes(d.expression_matches_catalog)
        );
        let _ = writeln!(s, "  nontrivial idempotents: {}", d.nontrivial_idempotents);
        text_classification(&mut s, &d.classification);
        let _ = writeln!(
            s,
            "  psi(({}), ({})) = ({})",
            d.psi_at[0], d.psi_at[1], d.psi_value
        );
        let _ = writeln!(
            s,
            "  psi identities: left {}, right {}",
            verdict(&d.psi_identities.left),
            verdict(&d.psi_identities.right)
        );
    }
    if let Some(d) = &r.eg2 {
        let _ = writeln!(
            s,
            "== eg2: {} (commutative: {})",
            d.ring,
            yes(d.commutative)
        );
        let _ = writeln!(
            s,
            "  idempotent ({}) nontrivial: {}",
            d.idempotent,
            yes(d.idempotent_nontrivial)
        );
        let sizes = d
            .peirce
            .components
            .iter()
            .map(|c| format!("|{}|={}", c.component, c.size))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(s, "  Peirce components: {sizes}");
        text_condition_report(&mut s, &d.thm1);
        let _ = writeln!(
            s,
            "  ({}) is a witness for thm1(i): {}",
            d.stated_witness,
            yes(d.stated_witness_valid)
        );
        text_classification(&mut s, &d.classification);
        let _ = writeln!(
            s,
            "  additive reverse derivable: {}",
            yes(d.additive_reverse_derivable)
        );
        let _ = writeln!(
            s,
            "  hypotheses not necessary for additivity: {}",
            yes(d.hypotheses_not_necessary)
        );
    }
    if let Some(d) = &r.eg3 {
        let _ = writeln!(s, "== eg3: {}", d.ring);
        text_classification(&mut s, &d.lambda);
        text_classification(&mut s, &d.phi);
        let _ = writeln!(
            s,
            "  lambda is a reverse derivation but not a derivation: {}",
            yes(d.lambda_reverse_not_derivation)
        );
        let _ = writeln!(
            s,
            "  phi is a derivation but not a reverse derivation: {}",
            yes(d.phi_derivation_not_reverse)
        );
    }
    s
}
