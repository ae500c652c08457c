//! Idempotents and the two-sided Peirce decomposition.
//!
//! Projections use unit-free formulas so non-unital rings are covered:
//!
//! ```text
//! x11 = exe    x12 = ex - exe    x21 = xe - exe    x22 = x - ex - xe + exe
//! ```
//!
//! In a unital ring these agree with `eRe`, `eR(1-e)`, `(1-e)Re`, `(1-e)R(1-e)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Check;
use crate::ring::{Element, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Idempotent {
    pub element: Element,
    pub index: usize,
    /// `e != 0` and, in a unital ring, `e != 1`.
    pub nontrivial: bool,
}

pub fn find_idempotents(ring: &Ring) -> Result<Vec<Idempotent>> {
    ring.ensure_scan()?;
    Ok((0..ring.order())
        .filter(|&e| ring.mul(e, e) == e)
        .map(|e| Idempotent {
            element: ring.element(e),
            index: e,
            nontrivial: is_nontrivial(ring, e),
        })
        .collect())
}

fn is_nontrivial(ring: &Ring, e: usize) -> bool {
    e != ring.zero() && Some(e) != ring.unit_index()
}

/// Errors unless `e` is an idempotent other than 0 (and 1, when unital).
pub fn require_nontrivial_idempotent(ring: &Ring, e: usize) -> Result<()> {
    if ring.mul(e, e) != e {
        return Err(Error::NotIdempotent(ring.element(e).to_string()));
    }
    if !is_nontrivial(ring, e) {
        return Err(Error::TrivialIdempotent(ring.element(e).to_string()));
    }
    Ok(())
}

/// One of the four Peirce components, `R_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    R11,
    R12,
    R21,
    R22,
}

impl Component {
    pub const ALL: [Component; 4] = [
        Component::R11,
        Component::R12,
        Component::R21,
        Component::R22,
    ];

    pub fn from_indices(i: u8, j: u8) -> Component {
        match (i, j) {
            (1, 1) => Component::R11,
            (1, 2) => Component::R12,
            (2, 1) => Component::R21,
            (2, 2) => Component::R22,
            _ => panic!("Peirce indices must be 1 or 2"),
        }
    }

    pub fn indices(self) -> (u8, u8) {
        match self {
            Component::R11 => (1, 1),
            Component::R12 => (1, 2),
            Component::R21 => (2, 1),
            Component::R22 => (2, 2),
        }
    }

    /// `R_ji` for `R_ij`.
    pub fn transpose(self) -> Component {
        let (i, j) = self.indices();
        Component::from_indices(j, i)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.indices();
        write!(f, "R{i}{j}")
    }
}

/// Where a single element sits relative to the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Zero,
    In(Component),
    Mixed,
}

#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    ring: Arc<Ring>,
    e: usize,
    components: [Vec<usize>; 4],
    projections: Vec<[usize; 4]>,
}

/// Projections of `x`, ordered `[x11, x12, x21, x22]`.
pub fn project(ring: &Ring, e: usize, x: usize) -> [usize; 4] {
    let ex = ring.mul(e, x);
    let xe = ring.mul(x, e);
    let exe = ring.mul(ex, e);
    let x12 = ring.sub(ex, exe);
    let x21 = ring.sub(xe, exe);
    let x22 = ring.add(ring.sub(ring.sub(x, ex), xe), exe);
    [exe, x12, x21, x22]
}

impl PeirceDecomposition {
    /// Decomposes relative to a nontrivial idempotent and checks that the
    /// decomposition is direct.
    pub fn new(ring: Arc<Ring>, e: usize) -> Result<Self> {
        ring.ensure_scan()?;
        require_nontrivial_idempotent(&ring, e)?;
        let n = ring.order();
        let projections: Vec<[usize; 4]> = (0..n).map(|x| project(&ring, e, x)).collect();
        let mut members = vec![vec![false; n]; 4];
        for (x, parts) in projections.iter().enumerate() {
            if parts.iter().fold(ring.zero(), |acc, &p| ring.add(acc, p)) != x {
                return Err(Error::Internal(format!(
                    "projections of {} do not sum back to it",
                    ring.element(x)
                )));
            }
            for (slot, &p) in parts.iter().enumerate() {
                members[slot][p] = true;
            }
        }
        let components: [Vec<usize>; 4] =
            std::array::from_fn(|slot| (0..n).filter(|&x| members[slot][x]).collect::<Vec<_>>());
        let size_product: usize = components.iter().map(Vec::len).product();
        if size_product != n {
            return Err(Error::Internal(format!(
                "decomposition is not direct: component sizes multiply to {size_product}, |R| = {n}"
            )));
        }
        Ok(PeirceDecomposition {
            ring,
            e,
            components,
            projections,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn idempotent(&self) -> usize {
        self.e
    }

    pub fn component(&self, c: Component) -> &[usize] {
        &self.components[c.slot()]
    }

    pub fn projections(&self, x: usize) -> [usize; 4] {
        self.projections[x]
    }

    pub fn projection(&self, x: usize, c: Component) -> usize {
        self.projections[x][c.slot()]
    }

    pub fn contains(&self, c: Component, x: usize) -> bool {
        self.projection(x, c) == x
    }

    pub fn component_of(&self, x: usize) -> Membership {
        let zero = self.ring.zero();
        if x == zero {
            return Membership::Zero;
        }
        let mut nonzero = Component::ALL
            .into_iter()
            .filter(|&c| self.projection(x, c) != zero);
        match (nonzero.next(), nonzero.next()) {
            (Some(c), None) => Membership::In(c),
            _ => Membership::Mixed,
        }
    }

    /// `eR = R11 + R12` as the set `{x11 + x12}`.
    pub fn left_ideal_part(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .component(Component::R11)
            .iter()
            .flat_map(|&a| {
                self.component(Component::R12)
                    .iter()
                    .map(move |&b| self.ring.add(a, b))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Full scan of `R_ij R_kl ⊆ R_il` when `j = k` and `R_ij R_kl = 0` otherwise.
    pub fn check_multiplication_rule(&self) -> Check {
        let ring = &self.ring;
        for left in Component::ALL {
            let (i, j) = left.indices();
            for right in Component::ALL {
                let (k, l) = right.indices();
                for &a in self.component(left) {
                    for &b in self.component(right) {
                        let ab = ring.mul(a, b);
                        let ok = if j == k {
                            self.contains(Component::from_indices(i, l), ab)
                        } else {
                            ab == ring.zero()
                        };
                        if !ok {
                            return Check::failed(vec![ring.element(a), ring.element(b)]);
                        }
                    }
                }
            }
        }
        Check::passed()
    }

    pub fn report(&self) -> DecompositionReport {
        let ring = &self.ring;
        let components = Component::ALL
            .into_iter()
            .map(|c| ComponentReport {
                component: c.to_string(),
                size: self.component(c).len(),
                members: self.component(c).to_vec(),
            })
            .collect::<Vec<_>>();
        let size_product = components.iter().map(|c| c.size).product::<usize>();
        DecompositionReport {
            ring: ring.name().to_string(),
            order: ring.order(),
            idempotent: ring.element(self.e),
            unital: ring.is_unital(),
            nontrivial_rule: if ring.is_unital() {
                "e != 0 and e != 1"
            } else {
                "e != 0 (ring has no unit)"
            },
            components,
            direct: size_product == ring.order(),
            multiplication_rule: self.check_multiplication_rule(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentReport {
    pub component: String,
    pub size: usize,
    /// Element indices in mixed-radix order.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub ring: String,
    pub order: usize,
    pub idempotent: Element,
    pub unital: bool,
    pub nontrivial_rule: &'static str,
    pub components: Vec<ComponentReport>,
    pub direct: bool,
    pub multiplication_rule: Check,
}
