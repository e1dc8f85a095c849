//! TOML group descriptions.
//!
//! ```toml
//! type = "F4"                 # or "A2xA2", or ["A2", "A2"]
//! # matrix = [[1, "inf"], ["inf", 1]]   instead of `type`; 0 also means ∞
//! L = [1, 2, 3, 4]            # 1-based, default: all generators
//! theta = [[1, 4], [2, 3]]    # swapped pairs, default: identity
//! cap = 100000
//! generator_names = ["x", "y"]
//! ```

use std::path::Path;

use coxtwist::verify::{Suite, SystemCase};
use coxtwist::{named, Bond, CoxeterMatrix, DEFAULT_CAP};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum TypeSpec {
    One(String),
    Product(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Order(u32),
    Word(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    name: Option<String>,
    #[serde(rename = "type")]
    kind: Option<TypeSpec>,
    matrix: Option<Vec<Vec<Entry>>>,
    #[serde(rename = "L")]
    subset: Option<Vec<usize>>,
    #[serde(default)]
    theta: Vec<(usize, usize)>,
    cap: Option<usize>,
    #[serde(default)]
    generator_names: Vec<String>,
    // only read by `verify`
    #[serde(default)]
    suites: Vec<String>,
    seed: Option<u64>,
    samples: Option<usize>,
    #[serde(default)]
    corrupt_oracle: bool,
}

/// A parsed description plus the verification settings it may carry.
#[derive(Debug, Clone)]
pub struct Description {
    pub case: SystemCase,
    pub suites: Vec<Suite>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub corrupt_oracle: bool,
}

pub fn load(path: &Path) -> Result<Description, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse(text: &str) -> Result<Description, String> {
    let raw: Raw = toml::from_str(text).map_err(|e| e.message().to_owned())?;
    let (matrix, default_name) = match (raw.kind, raw.matrix) {
        (Some(_), Some(_)) => return Err("give either `type` or `matrix`, not both".into()),
        (None, None) => return Err("missing `type` or `matrix`".into()),
        (Some(TypeSpec::One(name)), None) => (named::matrix(&name).map_err(|e| e.to_string())?, name),
        (Some(TypeSpec::Product(parts)), None) => {
            let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
            (named::product(&parts).map_err(|e| e.to_string())?, parts.join("x"))
        }
        (None, Some(rows)) => (bond_matrix(rows)?, "custom".to_owned()),
    };
    let rank = matrix.rank();
    let index = |i: usize| {
        if (1..=rank).contains(&i) {
            Ok(i - 1)
        } else {
            Err(format!("generator index {i} out of range 1..={rank}"))
        }
    };
    let subset = match raw.subset {
        Some(l) => l.into_iter().map(index).collect::<Result<Vec<_>, _>>()?,
        None => (0..rank).collect(),
    };
    let swaps = raw
        .theta
        .into_iter()
        .map(|(a, b)| Ok((index(a)?, index(b)?)))
        .collect::<Result<Vec<_>, String>>()?;
    let suites = raw
        .suites
        .iter()
        .map(|s| s.parse::<Suite>())
        .collect::<Result<Vec<_>, _>>()?;
    let name = raw.name.unwrap_or_else(|| {
        if swaps.is_empty() {
            default_name
        } else {
            format!("{default_name} swap")
        }
    });
    Ok(Description {
        case: SystemCase {
            name,
            matrix,
            subset,
            swaps,
            cap: raw.cap.unwrap_or(DEFAULT_CAP),
            nicknames: raw.generator_names,
        },
        suites,
        seed: raw.seed,
        samples: raw.samples,
        corrupt_oracle: raw.corrupt_oracle,
    })
}

fn bond_matrix(rows: Vec<Vec<Entry>>) -> Result<CoxeterMatrix, String> {
    let rows = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Order(0) => Ok(Bond::Infinite),
                    Entry::Order(m) => Ok(Bond::Finite(m)),
                    Entry::Word(w) if matches!(w.as_str(), "inf" | "infinity" | "∞") => Ok(Bond::Infinite),
                    Entry::Word(w) => Err(format!("bad matrix entry {w:?}")),
                })
                .collect::<Result<Vec<_>, String>>()
        })
        .collect::<Result<Vec<_>, String>>()?;
    CoxeterMatrix::new(rows).map_err(|e| e.to_string())
}
