//! Annihilator-style hypothesis sets on a ring with an idempotent `e`.
//!
//! Every condition reads "if `W(x, r) = 0` for all `r` in `R`, then `V(x) = 0`"
//! where `W` and `V` are products of `x`, `e`, `1 - e` and `r`. Factors `1 - e`
//! are expanded (`y(1-e) = y - ye`), so no unit is needed.
//!
//! | set    | id  | antecedent              | consequent |
//! |--------|-----|-------------------------|------------|
//! | `thm1` | i   | `x e R (1-e) = 0`       | `x = 0`    |
//! | `thm1` | ii  | `R e x = 0`             | `x = 0`    |
//! | `thm2` | i   | `x e R = 0`             | `x = 0`    |
//! | `thm2` | ii  | `R x = 0`               | `x = 0`    |
//! | `thm2` | iii | `e x e R (1-e) = 0`     | `exe = 0`  |
//! | `ei`   | I   | `e1 m e1 R e2 = 0`      | `e1 m e1 = 0` |
//! | `ei`   | II  | `e1 m e2 R e1 = 0`      | `e1 m e2 = 0` |
//! | `ei`   | III | `e1 m e2 R e2 = 0`      | `e1 m e2 = 0` |
//! | `ei`   | IV  | `e2 m e1 R e2 = 0`      | `e2 m e1 = 0` |
//! | `ei`   | V   | `e2 m e2 R e1 = 0`      | `e2 m e2 = 0` |
//! | `ei`   | VI  | `e2 m e2 R e2 = 0`      | `e2 m e2 = 0` |
//!
//! with `e1 = e`, `e2 = 1 - e`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionSet {
    Thm1,
    Thm2,
    Ei,
}

impl ConditionSet {
    pub const ALL: [ConditionSet; 3] = [ConditionSet::Thm1, ConditionSet::Thm2, ConditionSet::Ei];

    pub fn conditions(self) -> &'static [ConditionId] {
        use ConditionId::*;
        match self {
            ConditionSet::Thm1 => &[Thm1I, Thm1II],
            ConditionSet::Thm2 => &[Thm2I, Thm2II, Thm2III],
            ConditionSet::Ei => &[EiI, EiII, EiIII, EiIV, EiV, EiVI],
        }
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionSet::Thm1 => "thm1",
            ConditionSet::Thm2 => "thm2",
            ConditionSet::Ei => "ei",
        })
    }
}

impl FromStr for ConditionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm1" => Ok(ConditionSet::Thm1),
            "thm2" => Ok(ConditionSet::Thm2),
            "ei" => Ok(ConditionSet::Ei),
            other => Err(Error::Malformed(format!("unknown condition set `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionId {
    Thm1I,
    Thm1II,
    Thm2I,
    Thm2II,
    Thm2III,
    EiI,
    EiII,
    EiIII,
    EiIV,
    EiV,
    EiVI,
}

impl ConditionId {
    pub fn set(self) -> ConditionSet {
        use ConditionId::*;
        match self {
            Thm1I | Thm1II => ConditionSet::Thm1,
            Thm2I | Thm2II | Thm2III => ConditionSet::Thm2,
            _ => ConditionSet::Ei,
        }
    }

    /// Item id within its set: `i`, `ii`, `iii` or `I` ... `VI`.
    pub fn item(self) -> &'static str {
        use ConditionId::*;
        match self {
            Thm1I | Thm2I => "i",
            Thm1II | Thm2II => "ii",
            Thm2III => "iii",
            EiI => "I",
            EiII => "II",
            EiIII => "III",
            EiIV => "IV",
            EiV => "V",
            EiVI => "VI",
        }
    }

    /// Parses `set.item`, e.g. `thm1.i` or `ei.IV`.
    pub fn parse(text: &str) -> Result<ConditionId> {
        let (set, item) = text
            .split_once('.')
            .ok_or_else(|| Error::Malformed(format!("condition id `{text}` is not `set.item`")))?;
        let set: ConditionSet = set.parse()?;
        set.conditions()
            .iter()
            .copied()
            .find(|c| c.item() == item)
            .ok_or_else(|| Error::Malformed(format!("unknown condition `{text}`")))
    }

    fn words(self) -> (&'static [Factor], &'static [Factor]) {
        use ConditionId::*;
        use Factor::{Candidate as X, Complement as C, Idempotent as E, Quantified as R};
        match self {
            Thm1I => (&[X, E, R, C], &[X]),
            Thm1II => (&[R, E, X], &[X]),
            Thm2I => (&[X, E, R], &[X]),
            Thm2II => (&[R, X], &[X]),
            Thm2III | EiI => (&[E, X, E, R, C], &[E, X, E]),
            EiII => (&[E, X, C, R, E], &[E, X, C]),
            EiIII => (&[E, X, C, R, C], &[E, X, C]),
            EiIV => (&[C, X, E, R, C], &[C, X, E]),
            EiV => (&[C, X, C, R, E], &[C, X, C]),
            EiVI => (&[C, X, C, R, C], &[C, X, C]),
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.set(), self.item())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Candidate,
    Idempotent,
    Complement,
    Quantified,
}

/// A product of `x`, `e`, `r` with a sign; the expansion of a word with
/// `1 - e` factors.
#[derive(Clone, Debug)]
struct SignedWord {
    negative: bool,
    factors: Vec<Factor>,
}

fn expand(word: &[Factor]) -> Vec<SignedWord> {
    let mut out = vec![SignedWord {
        negative: false,
        factors: Vec::new(),
    }];
    for &f in word {
        if f == Factor::Complement {
            let mut with_e = out.clone();
            for w in with_e.iter_mut() {
                w.negative = !w.negative;
                w.factors.push(Factor::Idempotent);
            }
            out.extend(with_e);
        } else {
            for w in out.iter_mut() {
                w.factors.push(f);
            }
        }
    }
    debug_assert!(out.iter().all(|w| !w.factors.is_empty()));
    out
}

fn eval(ring: &Ring, words: &[SignedWord], e: usize, x: usize, r: usize) -> usize {
    let mut total = ring.zero();
    let mut buf = Vec::with_capacity(6);
    for w in words {
        buf.clear();
        buf.extend(w.factors.iter().map(|f| match f {
            Factor::Candidate => x,
            Factor::Idempotent => e,
            Factor::Quantified => r,
            Factor::Complement => unreachable!("expanded"),
        }));
        let p = ring.product(&buf);
        total = if w.negative {
            ring.sub(total, p)
        } else {
            ring.add(total, p)
        };
    }
    total
}

/// Which candidates `x` (or `m`) are quantified over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every element of `R`.
    All,
    /// Only `m` with `m Z(R) = 0`.
    AnnihilatesCenter,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionItem {
    pub id: String,
    pub pass: bool,
    pub witness: Option<Element>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub set: ConditionSet,
    pub ring: String,
    pub idempotent: Element,
    pub mode: Mode,
    pub items: Vec<ConditionItem>,
    pub overall: bool,
}

impl ConditionReport {
    pub fn item(&self, id: &str) -> Option<&ConditionItem> {
        self.items.iter().find(|i| i.id == id)
    }
}

fn require_idempotent(ring: &Ring, e: usize) -> Result<()> {
    if ring.mul(e, e) != e {
        return Err(Error::NotIdempotent(ring.element(e).to_string()));
    }
    Ok(())
}

fn candidates(ring: &Ring, mode: Mode) -> Result<Vec<usize>> {
    Ok(match mode {
        Mode::All => (0..ring.order()).collect(),
        Mode::AnnihilatesCenter => {
            let center = ring.center()?;
            (0..ring.order())
                .filter(|&m| center.iter().all(|&z| ring.mul(m, z) == ring.zero()))
                .collect()
        }
    })
}

/// Lowest-index element violating the condition, if any.
pub fn find_witness(ring: &Ring, e: usize, id: ConditionId, mode: Mode) -> Result<Option<usize>> {
    ring.ensure_scan()?;
    require_idempotent(ring, e)?;
    let (antecedent, consequent) = id.words();
    let antecedent = expand(antecedent);
    let consequent = expand(consequent);
    let n = ring.order();
    Ok(candidates(ring, mode)?.into_iter().find(|&x| {
        eval(ring, &consequent, e, x, ring.zero()) != ring.zero()
            && (0..n).all(|r| eval(ring, &antecedent, e, x, r) == ring.zero())
    }))
}

pub fn check_conditions(
    ring: &Ring,
    e: usize,
    set: ConditionSet,
    mode: Mode,
) -> Result<ConditionReport> {
    let mut items = Vec::new();
    for &id in set.conditions() {
        let witness = find_witness(ring, e, id, mode)?;
        items.push(ConditionItem {
            id: id.item().to_string(),
            pass: witness.is_none(),
            witness: witness.map(|w| ring.element(w)),
        });
    }
    Ok(ConditionReport {
        set,
        ring: ring.name().to_string(),
        idempotent: ring.element(e),
        mode,
        overall: items.iter().all(|i| i.pass),
        items,
    })
}

/// True iff `w` satisfies the antecedent of `id` and violates its consequent.
/// Written out per condition, independently of the word expansion used by
/// [`check_conditions`].
pub fn witness_revalidate(ring: &Ring, e: usize, id: ConditionId, w: usize) -> Result<bool> {
    ring.ensure_scan()?;
    require_idempotent(ring, e)?;
    let zero = ring.zero();
    let m = |a: usize, b: usize| ring.mul(a, b);
    // y(1-e) and (1-e)y
    let right_c = |y: usize| ring.sub(y, m(y, e));
    let left_c = |y: usize| ring.sub(y, m(e, y));
    let for_all_r = |f: &dyn Fn(usize) -> usize| (0..ring.order()).all(|r| f(r) == zero);

    let (antecedent, consequent) = match id {
        ConditionId::Thm1I => (for_all_r(&|r| right_c(m(m(w, e), r))), w),
        ConditionId::Thm1II => (for_all_r(&|r| m(m(r, e), w)), w),
        ConditionId::Thm2I => (for_all_r(&|r| m(m(w, e), r)), w),
        ConditionId::Thm2II => (for_all_r(&|r| m(r, w)), w),
        ConditionId::Thm2III | ConditionId::EiI => {
            let ewe = m(m(e, w), e);
            (for_all_r(&|r| right_c(m(ewe, r))), ewe)
        }
        ConditionId::EiII => {
            let e1we2 = right_c(m(e, w));
            (for_all_r(&|r| m(m(e1we2, r), e)), e1we2)
        }
        ConditionId::EiIII => {
            let e1we2 = right_c(m(e, w));
            (for_all_r(&|r| right_c(m(e1we2, r))), e1we2)
        }
        ConditionId::EiIV => {
            let e2we1 = left_c(m(w, e));
            (for_all_r(&|r| right_c(m(e2we1, r))), e2we1)
        }
        ConditionId::EiV => {
            let e2we2 = left_c(right_c(w));
            (for_all_r(&|r| m(m(e2we2, r), e)), e2we2)
        }
        ConditionId::EiVI => {
            let e2we2 = left_c(right_c(w));
            (for_all_r(&|r| right_c(m(e2we2, r))), e2we2)
        }
    };
    Ok(antecedent && consequent != zero)
}
