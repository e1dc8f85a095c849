//! Coxeter matrices of the named types `An`, `Bn`, `Dn`, `F4`, `H3`, `H4`,
//! `I2(m)` and their direct products.
//!
//! Generators are numbered along the diagram as in Bourbaki, so the bond of
//! `Bn` sits between `s(n-1)` and `sn`, and `Dn` branches at `s(n-2)`.

use crate::error::{Error, Result};
use crate::system::{Bond, CoxeterMatrix};

/// Bond rows of a single irreducible named type.
fn component(name: &str) -> Result<Vec<Vec<Bond>>> {
    let bad = || Error::MalformedMatrix(format!("unknown Coxeter type {name:?}"));
    let name = name.trim();
    let chain = |n: usize, edges: &[(usize, usize, Bond)]| {
        let mut rows = vec![vec![Bond::Finite(2); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        for &(a, b, m) in edges {
            rows[a][b] = m;
            rows[b][a] = m;
        }
        rows
    };
    let path = |n: usize| -> Vec<(usize, usize, Bond)> {
        (1..n).map(|i| (i - 1, i, Bond::Finite(3))).collect()
    };

    if let Some(arg) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m = match arg.trim() {
            "inf" | "infinity" | "∞" => Bond::Infinite,
            v => {
                let m: u32 = v.parse().map_err(|_| bad())?;
                if m < 2 {
                    return Err(bad());
                }
                Bond::Finite(m)
            }
        };
        return Ok(chain(2, &[(0, 1, m)]));
    }
    if name.is_empty() || !name.is_char_boundary(1) {
        return Err(bad());
    }
    let (family, rank) = name.split_at(1);
    let n: usize = rank.parse().map_err(|_| bad())?;
    match (family, n) {
        ("A", n) if n >= 1 => Ok(chain(n, &path(n))),
        ("B" | "C", n) if n >= 2 => {
            let mut edges = path(n);
            edges[n - 2].2 = Bond::Finite(4);
            Ok(chain(n, &edges))
        }
        ("D", n) if n >= 4 => {
            let mut edges = path(n - 1);
            edges.push((n - 3, n - 1, Bond::Finite(3)));
            Ok(chain(n, &edges))
        }
        ("F", 4) => Ok(chain(
            4,
            &[(0, 1, Bond::Finite(3)), (1, 2, Bond::Finite(4)), (2, 3, Bond::Finite(3))],
        )),
        ("H", 3) => Ok(chain(3, &[(0, 1, Bond::Finite(5)), (1, 2, Bond::Finite(3))])),
        ("H", 4) => Ok(chain(
            4,
            &[(0, 1, Bond::Finite(5)), (1, 2, Bond::Finite(3)), (2, 3, Bond::Finite(3))],
        )),
        _ => Err(bad()),
    }
}

/// Block-diagonal product of named components, generators numbered
/// consecutively in component order.
pub fn product(components: &[&str]) -> Result<CoxeterMatrix> {
    let blocks = components
        .iter()
        .map(|c| component(c))
        .collect::<Result<Vec<_>>>()?;
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut rows = vec![vec![Bond::Finite(2); n]; n];
    let mut offset = 0;
    for block in blocks {
        for (i, row) in block.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                rows[offset + i][offset + j] = m;
            }
        }
        offset += block.len();
    }
    CoxeterMatrix::new(rows)
}

/// Matrix of a named type. Products may be written `A1xA1` or `A2×A2`.
pub fn matrix(name: &str) -> Result<CoxeterMatrix> {
    let parts: Vec<&str> = name.split(['x', '×', '*']).collect();
    product(&parts)
}
