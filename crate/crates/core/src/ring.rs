//! Finite rings presented by structure constants.
//!
//! The additive group is `Z_{d_1} x ... x Z_{d_k}` with basis `b_1..b_k`, and the
//! product is the bilinear extension of `b_i * b_j = sum_l c[i][j][l] b_l`.
//! Elements are addressed either as coordinate vectors ([`Element`]) or by their
//! mixed-radix index, first coordinate most significant, so index 0 is zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Check;

/// Default bound on `|R|` for construction and for full pair/triple scans.
pub const DEFAULT_MAX_RING_SIZE: usize = 4096;

/// Environment variable overriding [`DEFAULT_MAX_RING_SIZE`].
pub const MAX_RING_SIZE_ENV: &str = "PEIRCE_LAB_MAX_RING_SIZE";

/// Rings up to this order get precomputed addition/multiplication tables.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_ring_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_size: DEFAULT_MAX_RING_SIZE,
        }
    }
}

impl Limits {
    /// Default limits, with `PEIRCE_LAB_MAX_RING_SIZE` applied when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_RING_SIZE_ENV) {
            Ok(raw) => {
                let max_ring_size = raw.trim().parse::<usize>().map_err(|_| {
                    Error::Malformed(format!("{MAX_RING_SIZE_ENV}={raw} is not a size"))
                })?;
                Ok(Limits { max_ring_size })
            }
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn check(&self, order: usize) -> Result<()> {
        if order > self.max_ring_size {
            return Err(Error::GuardExceeded {
                order,
                limit: self.max_ring_size,
            });
        }
        Ok(())
    }
}

/// A ring element as a vector of canonical residues, one per modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn new(coords: Vec<u64>) -> Self {
        Element(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<u64>> for Element {
    fn from(coords: Vec<u64>) -> Self {
        Element(coords)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses the canonical text form `"3,0"`. Residues are not reduced here; use
/// [`Ring::index_of`] or [`Ring::reduce`] to validate against a ring.
impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|part| part.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidElement(s.to_string()))?;
        Ok(Element(coords))
    }
}

/// The ring file format: `{"name", "moduli", "mul", "unit"}` where `mul[i][j]`
/// is the coordinate vector of `b_i * b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub name: String,
    pub moduli: Vec<u64>,
    pub mul: Vec<Vec<Vec<u64>>>,
    #[serde(default)]
    pub unit: Option<Element>,
}

impl RingSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ring spec serializes")
    }
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// First counterexamples of a full-element axiom scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub ring: String,
    pub order: usize,
    pub associativity: Check,
    pub left_distributivity: Check,
    pub right_distributivity: Check,
    pub unit: Option<Check>,
    pub pass: bool,
}

/// A validated finite ring.
#[derive(Clone, Debug)]
pub struct Ring {
    spec: RingSpec,
    unit_index: Option<usize>,
    order: usize,
    strides: Vec<usize>,
    limits: Limits,
    tables: Option<Tables>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Ring {
    /// Validates a spec: shape, size guard, well-definedness of the constants,
    /// associativity on basis triples and, if declared, the unit.
    pub fn build(spec: RingSpec, limits: Limits) -> Result<Ring> {
        let ring = Ring::build_unchecked(spec, limits)?;
        ring.check_well_defined()?;
        ring.check_basis_associativity()?;
        ring.check_unit()?;
        Ok(ring)
    }

    /// Shape checks and canonical reduction only. The result may violate the
    /// ring axioms; it exists so that [`Ring::verify_axioms`] can diagnose
    /// corrupted specs.
    pub fn build_unchecked(mut spec: RingSpec, limits: Limits) -> Result<Ring> {
        let k = spec.moduli.len();
        if k == 0 {
            return Err(Error::Shape("moduli must be non-empty".into()));
        }
        if let Some(d) = spec.moduli.iter().find(|&&d| d < 2) {
            return Err(Error::Shape(format!("modulus {d} is smaller than 2")));
        }
        if spec.mul.len() != k
            || spec
                .mul
                .iter()
                .any(|row| row.len() != k || row.iter().any(|v| v.len() != k))
        {
            return Err(Error::Shape(format!(
                "structure constants must be shaped {k}x{k}x{k}"
            )));
        }
        let mut order: usize = 1;
        for &d in &spec.moduli {
            order = usize::try_from(d)
                .ok()
                .and_then(|d| order.checked_mul(d))
                .ok_or(Error::GuardExceeded {
                    order: usize::MAX,
                    limit: limits.max_ring_size,
                })?;
        }
        limits.check(order)?;

        for row in spec.mul.iter_mut() {
            for v in row.iter_mut() {
                for (c, &d) in v.iter_mut().zip(&spec.moduli) {
                    *c %= d;
                }
            }
        }
        let mut strides = vec![1usize; k];
        for l in (0..k.saturating_sub(1)).rev() {
            strides[l] = strides[l + 1] * spec.moduli[l + 1] as usize;
        }

        let mut ring = Ring {
            spec,
            unit_index: None,
            order,
            strides,
            limits,
            tables: None,
        };
        if let Some(unit) = ring.spec.unit.take() {
            let unit = ring.reduce(&unit)?;
            ring.unit_index = Some(ring.index_unchecked(&unit));
            ring.spec.unit = Some(unit);
        }
        if order <= TABLE_LIMIT {
            ring.tables = Some(ring.compute_tables());
        }
        Ok(ring)
    }

    pub fn from_json(text: &str, limits: Limits) -> Result<Ring> {
        Ring::build(RingSpec::from_json(text)?, limits)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn moduli(&self) -> &[u64] {
        &self.spec.moduli
    }

    pub fn arity(&self) -> usize {
        self.spec.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn unit(&self) -> Option<&Element> {
        self.spec.unit.as_ref()
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.unit_index
    }

    pub fn is_unital(&self) -> bool {
        self.unit_index.is_some()
    }

    /// Errors unless a full scan over this ring is within the configured guard.
    pub fn ensure_scan(&self) -> Result<()> {
        self.limits.check(self.order)
    }

    /// Reduces every coordinate into `[0, d_l)`.
    pub fn reduce(&self, x: &Element) -> Result<Element> {
        if x.arity() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                found: x.arity(),
            });
        }
        Ok(Element(
            x.0.iter()
                .zip(&self.spec.moduli)
                .map(|(c, d)| c % d)
                .collect(),
        ))
    }

    /// Index of an element whose coordinates are already canonical residues.
    pub fn index_of(&self, x: &Element) -> Result<usize> {
        if x.arity() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                found: x.arity(),
            });
        }
        if x.0.iter().zip(&self.spec.moduli).any(|(c, d)| c >= d) {
            return Err(Error::InvalidElement(format!(
                "{x} is out of range for moduli {:?}",
                self.spec.moduli
            )));
        }
        Ok(self.index_unchecked(x))
    }

    fn index_unchecked(&self, x: &Element) -> usize {
        x.0.iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn element(&self, index: usize) -> Element {
        debug_assert!(index < self.order);
        Element(
            self.strides
                .iter()
                .zip(&self.spec.moduli)
                .map(|(&s, &d)| ((index / s) as u64) % d)
                .collect(),
        )
    }

    /// Parses the text form `"3,0"`, reducing each residue.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let x: Element = text.parse()?;
        Ok(self.index_unchecked(&self.reduce(&x)?))
    }

    /// All elements in index order; index 0 is zero.
    pub fn enumerate_elements(&self) -> Result<Vec<Element>> {
        self.ensure_scan()?;
        Ok((0..self.order).map(|i| self.element(i)).collect())
    }

    /// Index of basis element `b_i`.
    pub fn basis(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[a * self.order + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.tables {
            Some(t) => t.neg[a] as usize,
            None => self.neg_slow(a),
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[a * self.order + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    /// Product of a sequence of elements, left to right. Empty products are
    /// not defined in a non-unital ring, so at least one factor is required.
    pub fn product(&self, factors: &[usize]) -> usize {
        let (&first, rest) = factors.split_first().expect("non-empty product");
        rest.iter().fold(first, |acc, &f| self.mul(acc, f))
    }

    pub fn add_elements(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.element(self.add(self.index_of(x)?, self.index_of(y)?)))
    }

    pub fn neg_element(&self, x: &Element) -> Result<Element> {
        Ok(self.element(self.neg(self.index_of(x)?)))
    }

    pub fn sub_elements(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.element(self.sub(self.index_of(x)?, self.index_of(y)?)))
    }

    pub fn mul_elements(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.element(self.mul(self.index_of(x)?, self.index_of(y)?)))
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let sum =
            x.0.iter()
                .zip(&y.0)
                .zip(&self.spec.moduli)
                .map(|((p, q), d)| (p + q) % d)
                .collect();
        self.index_unchecked(&Element(sum))
    }

    fn neg_slow(&self, a: usize) -> usize {
        let x = self.element(a);
        let neg =
            x.0.iter()
                .zip(&self.spec.moduli)
                .map(|(p, d)| (d - p) % d)
                .collect();
        self.index_unchecked(&Element(neg))
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let product = self.mul_coords(&self.element(a), &self.element(b));
        self.index_unchecked(&product)
    }

    fn mul_coords(&self, x: &Element, y: &Element) -> Element {
        let moduli = &self.spec.moduli;
        let k = moduli.len();
        let mut acc = vec![0u128; k];
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.0.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = &self.spec.mul[i][j];
                for l in 0..k {
                    if c[l] != 0 {
                        let d = moduli[l] as u128;
                        let term = (xi as u128 * yj as u128 % d) * c[l] as u128 % d;
                        acc[l] = (acc[l] + term) % d;
                    }
                }
            }
        }
        Element(acc.into_iter().map(|v| v as u64).collect())
    }

    fn compute_tables(&self) -> Tables {
        let n = self.order;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(self.add_slow(a, b) as u32);
                mul.push(self.mul_slow(a, b) as u32);
            }
        }
        let neg = (0..n).map(|a| self.neg_slow(a) as u32).collect();
        Tables { add, mul, neg }
    }

    fn check_well_defined(&self) -> Result<()> {
        let moduli = &self.spec.moduli;
        let k = moduli.len();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let value = self.spec.mul[i][j][l];
                    for side in [i, j] {
                        if !(moduli[side] as u128 * value as u128).is_multiple_of(moduli[l] as u128)
                        {
                            return Err(Error::WellDefined {
                                i,
                                j,
                                l,
                                side,
                                value,
                                modulus: moduli[l],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_basis_associativity(&self) -> Result<()> {
        let k = self.arity();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let (bi, bj, bl) = (self.basis(i), self.basis(j), self.basis(l));
                    if self.mul(self.mul(bi, bj), bl) != self.mul(bi, self.mul(bj, bl)) {
                        return Err(Error::Associativity { i, j, k: l });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        if let Some(u) = self.unit_index {
            for i in 0..self.arity() {
                let b = self.basis(i);
                if self.mul(u, b) != b || self.mul(b, u) != b {
                    return Err(Error::Unit(i));
                }
            }
        }
        Ok(())
    }

    /// Full-element scan of associativity, both distributive laws and the
    /// declared unit. Witnesses are the lowest-index failing tuples.
    pub fn verify_axioms(&self) -> Result<AxiomReport> {
        self.ensure_scan()?;
        let n = self.order;
        let mut assoc = None;
        let mut left = None;
        let mut right = None;
        'outer: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if assoc.is_none() && self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        assoc = Some([a, b, c]);
                    }
                    // a(b+c) = ab + ac and (a+b)c = ac + bc
                    if left.is_none() && self.mul(a, self.add(b, c)) != self.add(ab, self.mul(a, c))
                    {
                        left = Some([a, b, c]);
                    }
                    if right.is_none()
                        && self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c))
                    {
                        right = Some([a, b, c]);
                    }
                    if assoc.is_some() && left.is_some() && right.is_some() {
                        break 'outer;
                    }
                }
            }
        }
        let unit = self.unit_index.map(|u| {
            let bad = (0..n).find(|&x| self.mul(u, x) != x || self.mul(x, u) != x);
            Check::from_witness(bad.map(|x| vec![self.element(x)]))
        });
        let to_check = |w: Option<[usize; 3]>| {
            Check::from_witness(w.map(|t| t.iter().map(|&i| self.element(i)).collect()))
        };
        let associativity = to_check(assoc);
        let left_distributivity = to_check(left);
        let right_distributivity = to_check(right);
        let pass = associativity.pass
            && left_distributivity.pass
            && right_distributivity.pass
            && unit.as_ref().is_none_or(|c| c.pass);
        Ok(AxiomReport {
            ring: self.name().to_string(),
            order: n,
            associativity,
            left_distributivity,
            right_distributivity,
            unit,
            pass,
        })
    }

    /// `{z : zx = xz for all x}`, tested against the basis only.
    pub fn center(&self) -> Result<Vec<usize>> {
        self.ensure_scan()?;
        let basis: Vec<usize> = (0..self.arity()).map(|i| self.basis(i)).collect();
        Ok((0..self.order)
            .filter(|&z| basis.iter().all(|&b| self.mul(z, b) == self.mul(b, z)))
            .collect())
    }

    pub fn is_commutative(&self) -> Result<bool> {
        self.ensure_scan()?;
        let k = self.arity();
        Ok((0..k).all(|i| {
            (0..k).all(|j| {
                self.mul(self.basis(i), self.basis(j)) == self.mul(self.basis(j), self.basis(i))
            })
        }))
    }

    /// `1 - e` when the ring is unital.
    pub fn complement(&self, e: usize) -> Option<usize> {
        self.unit_index.map(|u| self.sub(u, e))
    }
}
