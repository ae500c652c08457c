//! Self-maps of a finite ring, not assumed additive, and their classification.
//!
//! Every law is decided by an exhaustive scan; failing laws carry the
//! lowest-index violating tuple as witness.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dsl::MapExpr;
use crate::error::{Error, Result};
use crate::peirce::{Component, PeirceDecomposition};
use crate::report::Check;
use crate::ring::{Element, Ring};

pub const CATALOG_MAPS: &[&str] = &["zero", "identity", "eg1_map", "eg2_map", "lambda", "phi"];

/// DSL text equivalent to each catalog map, for rings of matching arity.
pub fn catalog_map_expr(name: &str) -> Option<&'static str> {
    match name {
        "eg1_map" => Some("vars m,n,p : (m, n*p, -p)"),
        "eg2_map" => Some("vars a,b : (0, b)"),
        "lambda" => Some("vars a,b,c : (0, -b, c)"),
        "phi" => Some("vars a,b,c : (0, -b, -c)"),
        _ => None,
    }
}

/// The map file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MapSource {
    Table { entries: Vec<(Element, Element)> },
    Catalog { name: String },
    Expr { vars: Vec<String>, expr: String },
}

impl MapSource {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A total function on ring elements, stored by element index.
#[derive(Clone, Debug)]
pub struct MapTable {
    ring: Arc<Ring>,
    table: Vec<u32>,
    label: String,
}

impl PartialEq for MapTable {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.ring == other.ring
    }
}

impl Eq for MapTable {}

impl MapTable {
    pub fn from_fn(ring: Arc<Ring>, label: impl Into<String>, f: impl Fn(usize) -> usize) -> Self {
        let table = (0..ring.order()).map(|x| f(x) as u32).collect();
        MapTable {
            ring,
            table,
            label: label.into(),
        }
    }

    /// Wraps a raw index table, which must be total and in range.
    pub fn from_indices(
        ring: Arc<Ring>,
        label: impl Into<String>,
        table: Vec<u32>,
    ) -> Result<Self> {
        if table.len() != ring.order() {
            return Err(Error::Malformed(format!(
                "table has {} entries, ring has {} elements",
                table.len(),
                ring.order()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= ring.order()) {
            return Err(Error::Malformed(format!(
                "image index {bad} is out of range"
            )));
        }
        Ok(MapTable {
            ring,
            table,
            label: label.into(),
        })
    }

    pub fn build(ring: Arc<Ring>, source: &MapSource) -> Result<Self> {
        ring.ensure_scan()?;
        match source {
            MapSource::Catalog { name } => catalog_map(ring, name),
            MapSource::Expr { vars, expr } => {
                let text = if expr.trim_start().starts_with("vars") {
                    expr.clone()
                } else {
                    format!("vars {} : {}", vars.join(","), expr)
                };
                let parsed = MapExpr::parse(&text)?;
                if !vars.is_empty() && parsed.vars != *vars {
                    return Err(Error::Malformed(format!(
                        "declared vars {vars:?} disagree with expression vars {:?}",
                        parsed.vars
                    )));
                }
                MapTable::from_expr(ring, &parsed)
            }
            MapSource::Table { entries } => {
                let mut table: Vec<Option<u32>> = vec![None; ring.order()];
                for (x, y) in entries {
                    let xi = ring.index_of(x)?;
                    let yi = ring.index_of(y).map_err(|_| {
                        Error::Malformed(format!("image {y} of {x} is out of range"))
                    })?;
                    if table[xi].replace(yi as u32).is_some() {
                        return Err(Error::Malformed(format!("element {x} listed twice")));
                    }
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.ok_or_else(|| {
                            Error::Malformed(format!("no image given for {}", ring.element(i)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MapTable {
                    ring,
                    table,
                    label: "table".into(),
                })
            }
        }
    }

    pub fn from_expr(ring: Arc<Ring>, expr: &MapExpr) -> Result<Self> {
        expr.check_arity(&ring)?;
        let mut table = Vec::with_capacity(ring.order());
        for x in 0..ring.order() {
            let image = expr.apply(&ring, &ring.element(x))?;
            table.push(ring.index_of(&image)? as u32);
        }
        Ok(MapTable {
            ring,
            table,
            label: expr.to_string(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn get(&self, x: usize) -> usize {
        self.table[x] as usize
    }

    pub fn indices(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        Ok(self.ring.element(self.get(self.ring.index_of(x)?)))
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    /// Map file form listing every `(x, image)` pair.
    pub fn to_source(&self) -> MapSource {
        MapSource::Table {
            entries: (0..self.ring.order())
                .map(|x| (self.ring.element(x), self.ring.element(self.get(x))))
                .collect(),
        }
    }

    /// `ψ(x, y) = f(x + y) - f(x) - f(y)`.
    pub fn psi(&self, x: usize, y: usize) -> usize {
        let r = &self.ring;
        r.sub(r.sub(self.get(r.add(x, y)), self.get(x)), self.get(y))
    }

    pub fn psi_defect(&self, x: &Element, y: &Element) -> Result<Element> {
        let r = &self.ring;
        Ok(r.element(self.psi(r.index_of(x)?, r.index_of(y)?)))
    }

    fn first_pair(&self, law: impl Fn(usize, usize) -> bool) -> Check {
        let n = self.ring.order();
        for a in 0..n {
            for b in 0..n {
                if !law(a, b) {
                    return Check::failed(vec![self.ring.element(a), self.ring.element(b)]);
                }
            }
        }
        Check::passed()
    }

    pub fn check_additive(&self) -> Check {
        let r = &self.ring;
        self.first_pair(|a, b| self.get(r.add(a, b)) == r.add(self.get(a), self.get(b)))
    }

    /// `f(ab) = f(a)b + af(b)`
    pub fn check_derivation_law(&self) -> Check {
        let r = &self.ring;
        self.first_pair(|a, b| {
            self.get(r.mul(a, b)) == r.add(r.mul(self.get(a), b), r.mul(a, self.get(b)))
        })
    }

    /// `f(ab) = f(b)a + bf(a)`
    pub fn check_reverse_law(&self) -> Check {
        let r = &self.ring;
        self.first_pair(|a, b| {
            self.get(r.mul(a, b)) == r.add(r.mul(self.get(b), a), r.mul(b, self.get(a)))
        })
    }

    /// `f(ab + ba) = f(a)b + af(b) + f(b)a + bf(a)`
    pub fn check_jordan_law(&self) -> Check {
        let r = &self.ring;
        self.first_pair(|a, b| {
            let lhs = self.get(r.add(r.mul(a, b), r.mul(b, a)));
            let rhs = r.add(
                r.add(r.mul(self.get(a), b), r.mul(a, self.get(b))),
                r.add(r.mul(self.get(b), a), r.mul(b, self.get(a))),
            );
            lhs == rhs
        })
    }

    /// `f(ab) = f(a)b`
    pub fn check_left_centralizer(&self) -> Check {
        let r = &self.ring;
        self.first_pair(|a, b| self.get(r.mul(a, b)) == r.mul(self.get(a), b))
    }

    /// `f(ab) = af(b)`
    pub fn check_right_centralizer(&self) -> Check {
        let r = &self.ring;
        self.first_pair(|a, b| self.get(r.mul(a, b)) == r.mul(a, self.get(b)))
    }

    pub fn classify(&self) -> Result<MapClassification> {
        self.ring.ensure_scan()?;
        Ok(MapClassification {
            map: self.label.clone(),
            ring: self.ring.name().to_string(),
            additive: self.check_additive(),
            derivation: self.check_derivation_law(),
            reverse_derivation: self.check_reverse_law(),
            jordan_derivation: self.check_jordan_law(),
            left_centralizer: self.check_left_centralizer(),
            right_centralizer: self.check_right_centralizer(),
        })
    }

    /// `f(a_1 ... a_n) = sum_i a_1 ... f(a_i) ... a_n` for `n` in {2, 3}.
    pub fn check_n_multiplicative(&self, n: usize) -> Result<Check> {
        self.ring.ensure_scan()?;
        let r = &self.ring;
        let order = r.order();
        match n {
            2 => Ok(self.check_derivation_law()),
            3 => {
                for a in 0..order {
                    for b in 0..order {
                        let ab = r.mul(a, b);
                        for c in 0..order {
                            let lhs = self.get(r.mul(ab, c));
                            let rhs = r.add(
                                r.add(
                                    r.product(&[self.get(a), b, c]),
                                    r.product(&[a, self.get(b), c]),
                                ),
                                r.mul(ab, self.get(c)),
                            );
                            if lhs != rhs {
                                return Ok(Check::failed(vec![
                                    r.element(a),
                                    r.element(b),
                                    r.element(c),
                                ]));
                            }
                        }
                    }
                }
                Ok(Check::passed())
            }
            other => Err(Error::Precondition(format!(
                "n-multiplicative check supports n = 2 or 3, got {other}"
            ))),
        }
    }

    /// `F(ab) = F(a)b + aδ(b)` with `self` as `F` and `associated` as `δ`.
    pub fn check_generalized_derivation(&self, associated: &MapTable) -> Result<Check> {
        if self.ring != associated.ring {
            return Err(Error::RingMismatch);
        }
        self.ring.ensure_scan()?;
        let r = &self.ring;
        Ok(self.first_pair(|a, b| {
            self.get(r.mul(a, b)) == r.add(r.mul(self.get(a), b), r.mul(a, associated.get(b)))
        }))
    }

    fn require_reverse_law(&self) -> Result<()> {
        if !self.check_reverse_law().pass {
            return Err(Error::Precondition(format!(
                "map `{}` does not satisfy f(ab) = f(b)a + bf(a)",
                self.label
            )));
        }
        Ok(())
    }

    /// `rψ(x,y) = ψ(xr,yr)` and `ψ(x,y)r = ψ(rx,ry)` over all triples `(r, x, y)`.
    pub fn check_psi_identities(&self) -> Result<PsiIdentities> {
        self.ring.ensure_scan()?;
        self.require_reverse_law()?;
        let ring = &self.ring;
        let n = ring.order();
        let mut left = None;
        let mut right = None;
        'scan: for r in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let psi = self.psi(x, y);
                    if left.is_none()
                        && ring.mul(r, psi) != self.psi(ring.mul(x, r), ring.mul(y, r))
                    {
                        left = Some([r, x, y]);
                    }
                    if right.is_none()
                        && ring.mul(psi, r) != self.psi(ring.mul(r, x), ring.mul(r, y))
                    {
                        right = Some([r, x, y]);
                    }
                    if left.is_some() && right.is_some() {
                        break 'scan;
                    }
                }
            }
        }
        let to_check = |w: Option<[usize; 3]>| {
            Check::from_witness(w.map(|t| t.iter().map(|&i| ring.element(i)).collect()))
        };
        let left = to_check(left);
        let right = to_check(right);
        Ok(PsiIdentities {
            pass: left.pass && right.pass,
            left,
            right,
        })
    }

    /// Per-component structure of a reverse derivable map relative to a Peirce
    /// decomposition. Each item is an observation on this instance.
    pub fn verify_structure(&self, d: &PeirceDecomposition) -> Result<StructureReport> {
        if **d.ring() != *self.ring {
            return Err(Error::RingMismatch);
        }
        self.ring.ensure_scan()?;
        self.require_reverse_law()?;
        let ring = &self.ring;
        let e = d.idempotent();
        let mut items = Vec::new();

        let e_zero = self.get(e) == ring.zero();
        items.push(StructureItem::from_witness(
            "image_of_idempotent_is_zero",
            (!e_zero).then(|| vec![ring.element(e)]),
        ));

        for c in Component::ALL {
            let id = format!("maps_{}_into_{}", c, c.transpose());
            if e_zero {
                let bad = d
                    .component(c)
                    .iter()
                    .find(|&&x| !d.contains(c.transpose(), self.get(x)));
                items.push(StructureItem::from_witness(
                    id,
                    bad.map(|&x| vec![ring.element(x)]),
                ));
            } else {
                items.push(StructureItem::skipped(id));
            }
        }

        let additive_on = |xs: &[usize], ys: &[usize]| {
            xs.iter()
                .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
                .find(|&(x, y)| self.psi(x, y) != ring.zero())
                .map(|(x, y)| vec![ring.element(x), ring.element(y)])
        };

        for c in Component::ALL {
            items.push(StructureItem::from_witness(
                format!("additive_on_{c}"),
                additive_on(d.component(c), d.component(c)),
            ));
        }
        for diag in [Component::R11, Component::R22] {
            for off in [Component::R12, Component::R21] {
                items.push(StructureItem::from_witness(
                    format!("additive_on_{diag}_plus_{off}"),
                    additive_on(d.component(diag), d.component(off)),
                ));
            }
        }
        let left_part = d.left_ideal_part();
        items.push(StructureItem::from_witness(
            "additive_on_eR",
            additive_on(&left_part, &left_part),
        ));

        Ok(StructureReport {
            map: self.label.clone(),
            idempotent: ring.element(e),
            items,
        })
    }
}

fn catalog_map(ring: Arc<Ring>, name: &str) -> Result<MapTable> {
    let need = |k: usize| -> Result<()> {
        if ring.arity() != k {
            return Err(Error::Arity {
                expected: k,
                found: ring.arity(),
            });
        }
        Ok(())
    };
    let moduli = ring.moduli().to_vec();
    let neg = |v: u64, d: u64| (d - v % d) % d;
    let coordwise = |f: &dyn Fn(&[u64]) -> Vec<u64>| -> Result<MapTable> {
        let mut table = Vec::with_capacity(ring.order());
        for x in 0..ring.order() {
            let image = Element::new(f(ring.element(x).coords()));
            table.push(ring.index_of(&image)? as u32);
        }
        Ok(MapTable {
            ring: ring.clone(),
            table,
            label: name.to_string(),
        })
    };
    match name {
        "zero" => Ok(MapTable::from_fn(ring.clone(), name, |_| 0)),
        "identity" => Ok(MapTable::from_fn(ring.clone(), name, |x| x)),
        "eg1_map" => {
            need(3)?;
            coordwise(&|c| {
                vec![
                    c[0],
                    ((c[1] as u128 * c[2] as u128) % moduli[1] as u128) as u64,
                    neg(c[2], moduli[2]),
                ]
            })
        }
        "eg2_map" => {
            need(2)?;
            coordwise(&|c| vec![0, c[1]])
        }
        "lambda" => {
            need(3)?;
            coordwise(&|c| vec![0, neg(c[1], moduli[1]), c[2]])
        }
        "phi" => {
            need(3)?;
            coordwise(&|c| vec![0, neg(c[1], moduli[1]), neg(c[2], moduli[2])])
        }
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapClassification {
    pub map: String,
    pub ring: String,
    pub additive: Check,
    pub derivation: Check,
    pub reverse_derivation: Check,
    pub jordan_derivation: Check,
    pub left_centralizer: Check,
    pub right_centralizer: Check,
}

impl MapClassification {
    /// Reverse law together with additivity: a reverse derivation in the classical sense.
    pub fn is_additive_reverse_derivation(&self) -> bool {
        self.additive.pass && self.reverse_derivation.pass
    }

    pub fn is_additive_derivation(&self) -> bool {
        self.additive.pass && self.derivation.pass
    }

    pub fn is_centralizer(&self) -> bool {
        self.left_centralizer.pass && self.right_centralizer.pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsiIdentities {
    pub pass: bool,
    /// `rψ(x,y) = ψ(xr,yr)`, witness `(r, x, y)`
    pub left: Check,
    /// `ψ(x,y)r = ψ(rx,ry)`, witness `(r, x, y)`
    pub right: Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureItem {
    pub id: String,
    pub status: Status,
    pub witness: Option<Vec<Element>>,
}

impl StructureItem {
    fn from_witness(id: impl Into<String>, witness: Option<Vec<Element>>) -> Self {
        StructureItem {
            id: id.into(),
            status: if witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness,
        }
    }

    fn skipped(id: impl Into<String>) -> Self {
        StructureItem {
            id: id.into(),
            status: Status::Skipped,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub map: String,
    pub idempotent: Element,
    pub items: Vec<StructureItem>,
}

impl StructureReport {
    pub fn item(&self, id: &str) -> Option<&StructureItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }
}
