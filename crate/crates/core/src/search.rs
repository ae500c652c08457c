//! Exhaustive enumeration of reverse derivable maps, `f(ab) = f(b)a + bf(a)`.
//!
//! Two independent engines:
//!
//! * `Csp`: backtracking over `f(x)` in element-index order. The seeds
//!   `f(0) = 0` (and `f(1) = 0` when unital) are forced; whenever `f(a)` and
//!   `f(b)` are both known, `f(ab)` is forced to `f(b)a + bf(a)`, assigned if
//!   free and pruned if it disagrees. Values are tried in index order.
//! * `Oracle`: every one of the `|R|^|R|` tables, filtered by the definition.
//!
//! Both emit solutions in lexicographic table order.

use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::conditions::{check_conditions, ConditionReport, ConditionSet, Mode};
use crate::error::{Error, Result};
use crate::maps::{MapClassification, MapSource, MapTable, StructureReport};
use crate::peirce::{require_nontrivial_idempotent, PeirceDecomposition};
use crate::ring::{Element, Ring};

pub const DEFAULT_CSP_MAX_RING_SIZE: usize = 16;
pub const DEFAULT_ORACLE_MAX_RING_SIZE: usize = 8;
/// Upper bound on `|R|^|R|` for oracle mode.
pub const ORACLE_TABLE_CAP: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Csp,
    Oracle,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csp" => Ok(SearchMode::Csp),
            "oracle" => Ok(SearchMode::Oracle),
            other => Err(Error::Malformed(format!("unknown search mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub max_ring_size: usize,
    /// `None` means unlimited.
    pub max_solutions: Option<usize>,
    /// Seconds; `None` means unlimited.
    pub time_budget: Option<f64>,
}

impl SearchConfig {
    pub fn csp() -> Self {
        SearchConfig {
            mode: SearchMode::Csp,
            max_ring_size: DEFAULT_CSP_MAX_RING_SIZE,
            max_solutions: None,
            time_budget: None,
        }
    }

    pub fn oracle() -> Self {
        SearchConfig {
            mode: SearchMode::Oracle,
            max_ring_size: DEFAULT_ORACLE_MAX_RING_SIZE,
            max_solutions: None,
            time_budget: None,
        }
    }

    pub fn for_mode(mode: SearchMode) -> Self {
        match mode {
            SearchMode::Csp => SearchConfig::csp(),
            SearchMode::Oracle => SearchConfig::oracle(),
        }
    }

    fn validate(&self, ring: &Ring) -> Result<()> {
        if self.max_ring_size == 0 || self.max_solutions == Some(0) {
            return Err(Error::Malformed("search budgets must be positive".into()));
        }
        if let Some(t) = self.time_budget {
            if t.is_nan() || t <= 0.0 {
                return Err(Error::Malformed("time budget must be positive".into()));
            }
        }
        let n = ring.order();
        if n > self.max_ring_size {
            return Err(Error::SearchCap(format!(
                "ring order {n} exceeds max_ring_size {}",
                self.max_ring_size
            )));
        }
        if self.mode == SearchMode::Oracle {
            let tables = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if tables > ORACLE_TABLE_CAP {
                return Err(Error::SearchCap(format!(
                    "oracle would scan {n}^{n} tables, above the cap of {ORACLE_TABLE_CAP}"
                )));
            }
        }
        ring.ensure_scan()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    /// Search-tree nodes (CSP) or candidate tables (oracle).
    pub nodes: u64,
    /// Values forced by propagation (CSP only).
    pub propagations: u64,
    pub solutions: u64,
    /// Not serialized, so reports stay byte-identical between runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub maps: Vec<MapTable>,
    /// False only when a budget cut the search short.
    pub complete: bool,
    pub stats: SearchStats,
}

struct Budget {
    start: Instant,
    limit: Option<Duration>,
    exhausted: bool,
}

impl Budget {
    fn new(cfg: &SearchConfig) -> Self {
        Budget {
            start: Instant::now(),
            limit: cfg.time_budget.map(Duration::from_secs_f64),
            exhausted: false,
        }
    }

    fn tick(&mut self, counter: u64) -> bool {
        if counter.is_multiple_of(4096) {
            if let Some(limit) = self.limit {
                if self.start.elapsed() > limit {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }
}

const UNSET: u32 = u32::MAX;

struct Csp<'a> {
    ring: &'a Ring,
    values: Vec<u32>,
    trail: Vec<usize>,
    stats: SearchStats,
}

impl<'a> Csp<'a> {
    fn new(ring: &'a Ring) -> Self {
        Csp {
            ring,
            values: vec![UNSET; ring.order()],
            trail: Vec::with_capacity(ring.order()),
            stats: SearchStats::default(),
        }
    }

    fn assign(&mut self, var: usize, value: usize) {
        self.values[var] = value as u32;
        self.trail.push(var);
    }

    fn undo_to(&mut self, mark: usize) {
        for var in self.trail.drain(mark..) {
            self.values[var] = UNSET;
        }
    }

    /// Closes the assignment under the product rule, starting from the
    /// variables assigned since `mark`. False on contradiction.
    fn propagate(&mut self, mark: usize) -> bool {
        let ring = self.ring;
        let mut head = mark;
        while head < self.trail.len() {
            let v = self.trail[head];
            head += 1;
            let mut i = 0;
            while i < self.trail.len() {
                let u = self.trail[i];
                i += 1;
                for (a, b) in [(v, u), (u, v)] {
                    let fa = self.values[a] as usize;
                    let fb = self.values[b] as usize;
                    let forced = ring.add(ring.mul(fb, a), ring.mul(b, fa));
                    let target = ring.mul(a, b);
                    match self.values[target] {
                        UNSET => {
                            self.assign(target, forced);
                            self.stats.propagations += 1;
                        }
                        current if current as usize != forced => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn seed(&mut self) -> bool {
        self.assign(self.ring.zero(), self.ring.zero());
        if let Some(one) = self.ring.unit_index() {
            if self.values[one] == UNSET {
                self.assign(one, self.ring.zero());
            }
        }
        self.propagate(0)
    }

    fn run(
        &mut self,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.stats.nodes += 1;
        if budget.tick(self.stats.nodes) {
            return ControlFlow::Break(());
        }
        let Some(var) = self.values.iter().position(|&v| v == UNSET) else {
            self.stats.solutions += 1;
            return visit(&self.values);
        };
        for value in 0..self.ring.order() {
            let mark = self.trail.len();
            self.assign(var, value);
            if self.propagate(mark) {
                let flow = self.run(budget, visit);
                if flow.is_break() {
                    self.undo_to(mark);
                    return flow;
                }
            }
            self.undo_to(mark);
        }
        ControlFlow::Continue(())
    }
}

fn oracle_run(
    ring: &Ring,
    budget: &mut Budget,
    stats: &mut SearchStats,
    visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = ring.order();
    let mut table = vec![0u32; n];
    let satisfies = |t: &[u32]| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                let fa = t[a] as usize;
                let fb = t[b] as usize;
                t[ring.mul(a, b)] as usize == ring.add(ring.mul(fb, a), ring.mul(b, fa))
            })
        })
    };
    loop {
        stats.nodes += 1;
        if budget.tick(stats.nodes) {
            return ControlFlow::Break(());
        }
        if satisfies(&table) {
            stats.solutions += 1;
            visit(&table)?;
        }
        // odometer, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return ControlFlow::Continue(());
            }
            pos -= 1;
            table[pos] += 1;
            if (table[pos] as usize) < n {
                break;
            }
            table[pos] = 0;
        }
    }
}

/// Streams solutions to `visit`. Returns whether the space was exhausted (as
/// opposed to cut by the time budget or by `visit` breaking) and the stats.
pub fn for_each_reverse_derivable_map(
    ring: &Ring,
    cfg: &SearchConfig,
    visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
) -> Result<(bool, SearchStats)> {
    cfg.validate(ring)?;
    let mut budget = Budget::new(cfg);
    let (flow, mut stats) = match cfg.mode {
        SearchMode::Csp => {
            let mut csp = Csp::new(ring);
            let flow = if csp.seed() {
                csp.run(&mut budget, visit)
            } else {
                ControlFlow::Continue(())
            };
            (flow, csp.stats)
        }
        SearchMode::Oracle => {
            let mut stats = SearchStats::default();
            let flow = oracle_run(ring, &mut budget, &mut stats, visit);
            (flow, stats)
        }
    };
    stats.wall_time = budget.start.elapsed();
    Ok((flow.is_continue(), stats))
}

pub fn enumerate_reverse_derivable_maps(
    ring: &Arc<Ring>,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    let mut tables: Vec<Vec<u32>> = Vec::new();
    let mut hit_cap = false;
    let (exhausted, stats) = for_each_reverse_derivable_map(ring, cfg, &mut |t| {
        tables.push(t.to_vec());
        if cfg.max_solutions.is_some_and(|cap| tables.len() >= cap) {
            hit_cap = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let maps = tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| MapTable::from_indices(ring.clone(), format!("solution_{i}"), t))
        .collect::<Result<Vec<_>>>()?;
    for m in &maps {
        if !m.check_reverse_law().pass {
            return Err(Error::Internal(format!(
                "{} was emitted but violates the reverse law",
                m.label()
            )));
        }
    }
    Ok(SearchResult {
        maps,
        complete: exhausted && !hit_cap,
        stats,
    })
}

#[derive(Clone, Debug)]
pub struct NonadditiveSearch {
    pub map: Option<MapTable>,
    /// True when a map was found or the space was exhausted.
    pub complete: bool,
    pub stats: SearchStats,
}

pub fn find_nonadditive_reverse_derivable(
    ring: &Arc<Ring>,
    cfg: &SearchConfig,
) -> Result<NonadditiveSearch> {
    let mut found = None;
    let (exhausted, stats) = for_each_reverse_derivable_map(ring, cfg, &mut |t| {
        let candidate = MapTable::from_indices(ring.clone(), "nonadditive", t.to_vec())
            .expect("search tables are in range");
        if candidate.check_additive().pass {
            ControlFlow::Continue(())
        } else {
            found = Some(candidate);
            ControlFlow::Break(())
        }
    })?;
    if let Some(m) = &found {
        if !m.check_reverse_law().pass {
            return Err(Error::Internal(
                "emitted map violates the reverse law".into(),
            ));
        }
    }
    Ok(NonadditiveSearch {
        complete: found.is_some() || exhausted,
        map: found,
        stats,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionEntry {
    pub map: MapSource,
    pub additive: bool,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchVerdict {
    pub solutions: usize,
    pub additive: usize,
    pub nonadditive: usize,
    pub nonzero_additive: usize,
    pub nonadditive_exists: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub ring: String,
    pub config: SearchConfig,
    pub complete: bool,
    pub stats: SearchStats,
    pub maps: Vec<SolutionEntry>,
    pub verdict: SearchVerdict,
}

impl SearchResult {
    pub fn report(&self, ring: &Ring, cfg: &SearchConfig) -> SearchReport {
        let maps: Vec<SolutionEntry> = self
            .maps
            .iter()
            .map(|m| SolutionEntry {
                map: m.to_source(),
                additive: m.check_additive().pass,
                zero: m.is_zero(),
            })
            .collect();
        let additive = maps.iter().filter(|m| m.additive).count();
        SearchReport {
            ring: ring.name().to_string(),
            config: cfg.clone(),
            complete: self.complete,
            stats: self.stats.clone(),
            verdict: SearchVerdict {
                solutions: maps.len(),
                additive,
                nonadditive: maps.len() - additive,
                nonzero_additive: maps.iter().filter(|m| m.additive && !m.zero).count(),
                nonadditive_exists: additive < maps.len(),
            },
            maps,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Implication {
    /// Hypotheses fail on this (ring, e), so the statement says nothing.
    Vacuous,
    /// Hypotheses hold and every reverse derivable map is additive.
    Confirmed,
    /// Hypotheses hold yet a non-additive reverse derivable map exists.
    Counterexample,
    /// The statement needs a unit and the ring has none.
    NotApplicable,
    /// The search did not finish.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: &'static str,
    pub hypotheses_hold: bool,
    pub implication: Implication,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapAnalysis {
    pub map: MapSource,
    pub classification: MapClassification,
    pub structure: StructureReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdicts {
    pub nonadditive_exists: bool,
    /// Every additive solution is the zero map.
    pub only_zero_is_additive: bool,
    /// Some hypothesis set fails while a nonzero additive solution exists.
    pub hypotheses_not_necessary: bool,
    pub theorems: Vec<TheoremVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub ring: String,
    pub order: usize,
    pub unital: bool,
    pub commutative: bool,
    pub idempotent: Element,
    pub conditions: Vec<ConditionReport>,
    pub config: SearchConfig,
    pub complete: bool,
    pub stats: SearchStats,
    pub maps: Vec<MapAnalysis>,
    pub verdicts: Verdicts,
}

/// Hypothesis checks, the full solution set with per-map analysis, and the
/// resulting status of both additivity statements on this instance.
pub fn empirical_theorem_report(
    ring: &Arc<Ring>,
    e: usize,
    cfg: &SearchConfig,
) -> Result<TheoremReport> {
    require_nontrivial_idempotent(ring, e)?;
    let decomposition = PeirceDecomposition::new(ring.clone(), e)?;
    let mut conditions = Vec::new();
    for set in ConditionSet::ALL {
        conditions.push(check_conditions(ring, e, set, Mode::All)?);
    }
    conditions.push(check_conditions(
        ring,
        e,
        ConditionSet::Ei,
        Mode::AnnihilatesCenter,
    )?);

    let result = enumerate_reverse_derivable_maps(ring, cfg)?;
    let mut maps = Vec::with_capacity(result.maps.len());
    for m in &result.maps {
        maps.push(MapAnalysis {
            map: m.to_source(),
            classification: m.classify()?,
            structure: m.verify_structure(&decomposition)?,
        });
    }
    let nonadditive_exists = maps.iter().any(|m| !m.classification.additive.pass);
    let only_zero_is_additive = result
        .maps
        .iter()
        .all(|m| m.is_zero() || !m.check_additive().pass);

    let holds = |set: ConditionSet| {
        conditions
            .iter()
            .any(|c| c.set == set && c.mode == Mode::All && c.overall)
    };
    let verdict = |theorem: &'static str, set: ConditionSet, needs_unit: bool| {
        let hypotheses_hold = holds(set);
        let implication = if needs_unit && !ring.is_unital() {
            Implication::NotApplicable
        } else if !hypotheses_hold {
            Implication::Vacuous
        } else if nonadditive_exists {
            Implication::Counterexample
        } else if result.complete {
            Implication::Confirmed
        } else {
            Implication::Undecided
        };
        TheoremVerdict {
            theorem,
            hypotheses_hold,
            implication,
        }
    };
    let theorems = vec![
        verdict("thm1", ConditionSet::Thm1, true),
        verdict("thm2", ConditionSet::Thm2, false),
    ];
    let hypotheses_not_necessary = theorems.iter().any(|t| !t.hypotheses_hold)
        && result
            .maps
            .iter()
            .any(|m| !m.is_zero() && m.check_additive().pass);

    Ok(TheoremReport {
        ring: ring.name().to_string(),
        order: ring.order(),
        unital: ring.is_unital(),
        commutative: ring.is_commutative()?,
        idempotent: ring.element(e),
        conditions,
        config: cfg.clone(),
        complete: result.complete,
        stats: result.stats,
        maps,
        verdicts: Verdicts {
            nonadditive_exists,
            only_zero_is_additive,
            hypotheses_not_necessary,
            theorems,
        },
    })
}
