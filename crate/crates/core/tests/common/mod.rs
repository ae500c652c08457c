#![allow(dead_code)]

use std::sync::Arc;

use peirce_core::{construct_catalog_ring, Element, Limits, MapTable, Ring};

pub fn ring(name: &str, params: &[u64]) -> Arc<Ring> {
    Arc::new(construct_catalog_ring(name, params, Limits::default()).expect("catalog ring"))
}

pub fn idx(r: &Ring, coords: &[u64]) -> usize {
    r.index_of(&Element::new(coords.to_vec())).expect("element")
}

pub fn el(coords: &[u64]) -> Element {
    Element::new(coords.to_vec())
}

/// Square matrices over Z_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub m: u64,
    pub a: Vec<Vec<u64>>,
}

impl Mat {
    pub fn zero(n: usize, m: u64) -> Mat {
        Mat {
            m,
            a: vec![vec![0; n]; n],
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.a.len();
        let mut r = Mat::zero(n, self.m);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = (s + self.a[i][k] * o.a[k][j]) % self.m;
                }
                r.a[i][j] = s;
            }
        }
        r
    }

    pub fn add(&self, o: &Mat) -> Mat {
        let mut r = self.clone();
        for (row, orow) in r.a.iter_mut().zip(&o.a) {
            for (x, y) in row.iter_mut().zip(orow) {
                *x = (*x + y) % self.m;
            }
        }
        r
    }
}

fn neg(x: u64, m: u64) -> u64 {
    (m - x % m) % m
}

/// Strictly upper triangular 3x3 matrix [[0,m,n],[0,0,p],[0,0,0]].
pub fn eg1_matrix(x: &[u64], m: u64) -> Mat {
    let mut t = Mat::zero(3, m);
    t.a[0][1] = x[0];
    t.a[0][2] = x[1];
    t.a[1][2] = x[2];
    t
}

pub fn eg1_coords(t: &Mat) -> Vec<u64> {
    assert_eq!(
        t.a[1][0] + t.a[2][0] + t.a[2][1] + t.a[0][0] + t.a[1][1] + t.a[2][2],
        0
    );
    vec![t.a[0][1], t.a[0][2], t.a[1][2]]
}

/// 4x4 matrix [[0,a,b,c],[0,0,0,-b],[0,0,0,a],[0,0,0,0]].
pub fn eg3_matrix(x: &[u64], m: u64) -> Mat {
    let mut t = Mat::zero(4, m);
    t.a[0][1] = x[0];
    t.a[0][2] = x[1];
    t.a[0][3] = x[2];
    t.a[1][3] = neg(x[1], m);
    t.a[2][3] = x[0];
    t
}

/// Reads (a,b,c) back, asserting the matrix has the required shape.
pub fn eg3_coords(t: &Mat) -> Vec<u64> {
    let m = t.m;
    let (a, b, c) = (t.a[0][1], t.a[0][2], t.a[0][3]);
    assert_eq!(t.a[1][3], neg(b, m), "closure: (1,3) entry");
    assert_eq!(t.a[2][3], a, "closure: (2,3) entry");
    vec![a, b, c]
}

/// [[a,b],[0,a]] over Z_m.
pub fn eg2_matrix(x: &[u64], m: u64) -> Mat {
    Mat {
        m,
        a: vec![vec![x[0], x[1]], vec![0, x[0]]],
    }
}

pub fn eg2_coords(t: &Mat) -> Vec<u64> {
    assert_eq!(t.a[1][0], 0);
    assert_eq!(t.a[0][0], t.a[1][1]);
    vec![t.a[0][0], t.a[0][1]]
}

/// k x k matrix from row-major coordinates.
pub fn square_matrix(x: &[u64], k: usize, m: u64) -> Mat {
    let mut t = Mat::zero(k, m);
    for i in 0..k {
        for j in 0..k {
            t.a[i][j] = x[i * k + j];
        }
    }
    t
}

pub fn square_coords(t: &Mat) -> Vec<u64> {
    t.a.iter().flatten().copied().collect()
}

/// Direct check of the reverse law on a raw table.
pub fn satisfies_reverse_law(r: &Ring, table: &[usize]) -> bool {
    let n = r.order();
    (0..n).all(|a| {
        (0..n).all(|b| table[r.mul(a, b)] == r.add(r.mul(table[b], a), r.mul(b, table[a])))
    })
}

/// Every table on the ring, filtered by the reverse law. Only for tiny rings.
pub fn brute_force_reverse_maps(r: &Ring) -> Vec<Vec<usize>> {
    let n = r.order();
    let total = (n as u64).pow(n as u32);
    assert!(total <= 1 << 20, "brute force is for tiny rings only");
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut table = vec![0; n];
        for slot in table.iter_mut().rev() {
            *slot = (c % n as u64) as usize;
            c /= n as u64;
        }
        if satisfies_reverse_law(r, &table) {
            out.push(table);
        }
    }
    out
}

pub fn table_of(m: &MapTable) -> Vec<usize> {
    (0..m.ring().order()).map(|x| m.get(x)).collect()
}

/// Unit-free Peirce projections written out directly.
pub fn projections(r: &Ring, e: usize, x: usize) -> [usize; 4] {
    let ex = r.mul(e, x);
    let xe = r.mul(x, e);
    let exe = r.mul(ex, e);
    let x12 = r.sub(ex, exe);
    let x21 = r.sub(xe, exe);
    let x22 = r.add(r.sub(r.sub(x, ex), xe), exe);
    [exe, x12, x21, x22]
}

/// Members of component `c` (0..4 for 11, 12, 21, 22).
pub fn component(r: &Ring, e: usize, c: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..r.order()).map(|x| projections(r, e, x)[c]).collect();
    v.sort_unstable();
    v.dedup();
    v
}
