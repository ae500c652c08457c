//! Named ring constructors.
//!
//! | id       | params        | ring                                                       |
//! |----------|---------------|------------------------------------------------------------|
//! | `zn`     | `n`           | `Z_n`                                                      |
//! | `product`| `n1 n2 ...`   | `Z_n1 x Z_n2 x ...`, componentwise                         |
//! | `matrix` | `k n`         | `M_k(Z_n)`, basis `E_ij` in row-major order                |
//! | `eg1`    | `m`           | strictly upper triangular 3x3 over `Z_m`, coords `(m,n,p)` |
//! | `eg2`    | `[m]` (6)     | `[[a,b],[0,a]]` over `Z_m`, coords `(a,b)`                 |
//! | `eg3`    | `m`           | the 4x4 ring `M(a,b,c)` over `Z_m`, coords `(a,b,c)`       |

use crate::error::{Error, Result};
use crate::ring::{Element, Limits, Ring, RingSpec};

pub const CATALOG_IDS: &[&str] = &["zn", "product", "matrix", "eg1", "eg2", "eg3"];

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn modulus(name: &str, value: u64) -> Result<u64> {
    if value < 2 {
        return Err(invalid(name, format!("modulus {value} must be at least 2")));
    }
    Ok(value)
}

fn exact_params<'a>(name: &str, params: &'a [u64], count: usize) -> Result<&'a [u64]> {
    if params.len() != count {
        return Err(invalid(
            name,
            format!("expected {count} parameter(s), got {}", params.len()),
        ));
    }
    Ok(params)
}

fn zero_constants(k: usize) -> Vec<Vec<Vec<u64>>> {
    vec![vec![vec![0; k]; k]; k]
}

pub fn catalog_spec(name: &str, params: &[u64]) -> Result<RingSpec> {
    match name {
        "zn" => {
            let n = modulus(name, exact_params(name, params, 1)?[0])?;
            Ok(RingSpec {
                name: format!("Z_{n}"),
                moduli: vec![n],
                mul: vec![vec![vec![1]]],
                unit: Some(Element::new(vec![1])),
            })
        }
        "product" => {
            if params.is_empty() {
                return Err(invalid(name, "expected at least one modulus"));
            }
            let moduli = params
                .iter()
                .map(|&n| modulus(name, n))
                .collect::<Result<Vec<_>>>()?;
            let k = moduli.len();
            let mut mul = zero_constants(k);
            for (i, row) in mul.iter_mut().enumerate() {
                row[i][i] = 1;
            }
            let label = moduli
                .iter()
                .map(|n| format!("Z_{n}"))
                .collect::<Vec<_>>()
                .join("x");
            Ok(RingSpec {
                name: label,
                moduli,
                mul,
                unit: Some(Element::new(vec![1; k])),
            })
        }
        "matrix" => {
            let p = exact_params(name, params, 2)?;
            let size = p[0] as usize;
            if size == 0 {
                return Err(invalid(name, "matrix size must be positive"));
            }
            let n = modulus(name, p[1])?;
            let k = size * size;
            let basis_index = |i: usize, j: usize| i * size + j;
            // E_ij E_kl = delta_jk E_il
            let mut mul = zero_constants(k);
            for i in 0..size {
                for j in 0..size {
                    for l in 0..size {
                        mul[basis_index(i, j)][basis_index(j, l)][basis_index(i, l)] = 1;
                    }
                }
            }
            let mut unit = vec![0; k];
            for i in 0..size {
                unit[basis_index(i, i)] = 1;
            }
            Ok(RingSpec {
                name: format!("M_{size}(Z_{n})"),
                moduli: vec![n; k],
                mul,
                unit: Some(Element::new(unit)),
            })
        }
        "eg1" => {
            let m = modulus(name, exact_params(name, params, 1)?[0])?;
            // coords (m, n, p) = entries (1,2), (1,3), (2,3); only E12 E23 = E13 survives
            let mut mul = zero_constants(3);
            mul[0][2][1] = 1;
            Ok(RingSpec {
                name: format!("eg1(Z_{m})"),
                moduli: vec![m; 3],
                mul,
                unit: None,
            })
        }
        "eg2" => {
            let m = match params {
                [] => 6,
                [m] => modulus(name, *m)?,
                _ => return Err(invalid(name, "expected at most one parameter")),
            };
            // coords (a, b) = a I + b N with N^2 = 0
            let mut mul = zero_constants(2);
            mul[0][0][0] = 1;
            mul[0][1][1] = 1;
            mul[1][0][1] = 1;
            Ok(RingSpec {
                name: format!("eg2(Z_{m})"),
                moduli: vec![m; 2],
                mul,
                unit: Some(Element::new(vec![1, 0])),
            })
        }
        "eg3" => {
            let m = modulus(name, exact_params(name, params, 1)?[0])?;
            // M(a1,b1,c1) M(a2,b2,c2) = M(0, 0, a2 b1 - a1 b2)
            let mut mul = zero_constants(3);
            mul[0][1][2] = m - 1;
            mul[1][0][2] = 1;
            Ok(RingSpec {
                name: format!("eg3(Z_{m})"),
                moduli: vec![m; 3],
                mul,
                unit: None,
            })
        }
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

pub fn construct_catalog_ring(name: &str, params: &[u64], limits: Limits) -> Result<Ring> {
    Ring::build(catalog_spec(name, params)?, limits)
}
