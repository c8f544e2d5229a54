//! Complex nilpotent orbits: partitions for types A and D, embedded tables
//! for the exceptional types.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::OrbitError;
use crate::rootsys::{Root, RootSystem, Series};

/// Which of the two orbits sharing a very even partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VeryEvenClass {
    I,
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitLabel {
    Partition {
        parts: Vec<u32>,
        very_even: Option<VeryEvenClass>,
    },
    BalaCarter {
        label: String,
    },
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Partition { parts, very_even } => {
                write!(f, "(")?;
                let mut i = 0;
                while i < parts.len() {
                    let p = parts[i];
                    let k = parts[i..].iter().take_while(|&&x| x == p).count();
                    if k == 1 {
                        write!(f, "{p}")?;
                    } else {
                        write!(f, "{p}^{k}")?;
                    }
                    i += k;
                }
                write!(f, ")")?;
                if let Some(c) = very_even {
                    write!(f, "^{c:?}")?;
                }
                Ok(())
            }
            OrbitLabel::BalaCarter { label } => f.write_str(label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentOrbit {
    pub group: String,
    pub label: OrbitLabel,
    /// Bala–Carter name where one is recorded.
    pub bala_carter: Option<String>,
    pub dim: u32,
    pub zero: bool,
    pub minimal: bool,
    pub next_to_minimal: bool,
    /// Pairwise orthogonal positive roots whose root vectors sum to an
    /// element of the orbit, for orbits of type kA1.
    pub representative: Option<Vec<Root>>,
    /// Position in the closure chain, for table-driven types.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<u32>,
}

impl NilpotentOrbit {
    /// Gelfand–Kirillov dimension of representations attached to the orbit.
    pub fn gk_dim(&self) -> u32 {
        self.dim / 2
    }
}

/// Partitions of `n` in non-increasing order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn transpose(parts: &[u32]) -> Vec<u32> {
    let max = parts.first().copied().unwrap_or(0);
    (1..=max)
        .map(|k| parts.iter().filter(|&&p| p >= k).count() as u32)
        .collect()
}

/// `a ≤ b` in the dominance order (partitions of the same integer).
pub fn dominated_by(a: &[u32], b: &[u32]) -> bool {
    let (mut sa, mut sb) = (0u32, 0u32);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    true
}

/// Parse `31111111`, `3,1,1` or `3 1 1`.
pub fn parse_partition(text: &str) -> Result<Vec<u32>, OrbitError> {
    let bad = || OrbitError::BadPartition(text.to_string());
    let mut parts: Vec<u32> = if text.contains([',', ' ']) {
        text.split([',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect::<Result<_, _>>()?
    };
    if parts.is_empty() || parts.contains(&0) {
        return Err(bad());
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

fn type_a_bala_carter(parts: &[u32]) -> String {
    let mut pieces = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let p = parts[i];
        let k = parts[i..].iter().take_while(|&&x| x == p).count();
        if p > 1 {
            let mult = if k > 1 { k.to_string() } else { String::new() };
            pieces.push(format!("{mult}A{}", p - 1));
        }
        i += k;
    }
    if pieces.is_empty() {
        "0".into()
    } else {
        pieces.join("+")
    }
}

fn simple_roots(rs: &RootSystem, nodes: &[usize]) -> Vec<Root> {
    nodes.iter().map(|&n| rs.simple_root(n)).collect()
}

fn catalog_a(rs: &RootSystem) -> Vec<NilpotentOrbit> {
    let n = rs.rank() as u32 + 1;
    partitions(n)
        .into_iter()
        .map(|parts| {
            let t = transpose(&parts);
            let dim = n * n - t.iter().map(|x| x * x).sum::<u32>();
            let twos = parts.iter().filter(|&&p| p == 2).count();
            let rest_ones = parts.iter().all(|&p| p <= 2);
            let bc = type_a_bala_carter(&parts);
            let representative = rest_ones
                .then(|| simple_roots(rs, &(0..twos).map(|k| 2 * k + 1).collect::<Vec<_>>()));
            NilpotentOrbit {
                group: rs.label(),
                zero: dim == 0,
                minimal: rest_ones && twos == 1,
                next_to_minimal: rest_ones && twos == 2,
                label: OrbitLabel::Partition {
                    parts,
                    very_even: None,
                },
                bala_carter: Some(bc),
                dim,
                representative,
                chain: None,
            }
        })
        .collect()
}

fn catalog_d(rs: &RootSystem) -> Vec<NilpotentOrbit> {
    let rank = rs.rank();
    let n2 = 2 * rank as u32;
    let mut out = Vec::new();
    for parts in partitions(n2) {
        let valid = parts
            .iter()
            .filter(|&&p| p % 2 == 0)
            .all(|&p| parts.iter().filter(|&&x| x == p).count() % 2 == 0);
        if !valid {
            continue;
        }
        let t = transpose(&parts);
        let odd = parts.iter().filter(|&&p| p % 2 == 1).count() as u32;
        let centralizer = (t.iter().map(|x| x * x).sum::<u32>() - odd) / 2;
        let dim = n2 * (n2 - 1) / 2 - centralizer;
        let ones = parts.iter().filter(|&&p| p == 1).count() as u32;
        let twos = parts.iter().filter(|&&p| p == 2).count() as u32;
        let small = parts.iter().all(|&p| p <= 2);
        let is_31 = parts[0] == 3 && ones == n2 - 3;
        let (bc, minimal, ntm, representative) = if dim == 0 {
            (Some("0".to_string()), false, false, Some(vec![]))
        } else if small && twos == 2 {
            (
                Some("A1".to_string()),
                true,
                false,
                Some(simple_roots(rs, &[1])),
            )
        } else if is_31 {
            (
                Some("(2A1)'".to_string()),
                false,
                true,
                Some(simple_roots(rs, &[rank - 1, rank])),
            )
        } else if small && twos == 4 {
            (
                Some("(2A1)''".to_string()),
                false,
                true,
                Some(simple_roots(rs, &[1, 3])),
            )
        } else {
            (None, false, false, None)
        };
        let very_even = parts.iter().all(|&p| p % 2 == 0);
        let classes: Vec<Option<VeryEvenClass>> = if very_even {
            vec![Some(VeryEvenClass::I), Some(VeryEvenClass::II)]
        } else {
            vec![None]
        };
        for c in classes {
            // The second very even class of (2^4) in D4 is the image of (2A1)'' under the diagram swap of nodes 3 and 4.
            let rep = match (c, &representative) {
                (Some(VeryEvenClass::II), Some(_)) => Some(simple_roots(rs, &[1, 4])),
                _ => representative.clone(),
            };
            out.push(NilpotentOrbit {
                group: rs.label(),
                label: OrbitLabel::Partition {
                    parts: parts.clone(),
                    very_even: c,
                },
                bala_carter: bc.clone(),
                dim,
                zero: dim == 0,
                minimal,
                next_to_minimal: ntm,
                representative: rep,
                chain: None,
            });
        }
    }
    out
}

/// (label, dim, orthogonal simple-root representative) along the closure chain.
const E6_TABLE: &[(&str, u32, &[usize])] = &[
    ("0", 0, &[]),
    ("A1", 22, &[1]),
    ("2A1", 32, &[1, 4]),
    ("3A1", 40, &[1, 4, 6]),
    ("A2", 42, &[]),
];
const E7_TABLE: &[(&str, u32, &[usize])] = &[
    ("0", 0, &[]),
    ("A1", 34, &[1]),
    ("2A1", 52, &[1, 4]),
    ("(3A1)''", 54, &[]),
    ("(3A1)'", 64, &[]),
    ("A2", 66, &[]),
];
const E8_TABLE: &[(&str, u32, &[usize])] = &[
    ("0", 0, &[]),
    ("A1", 58, &[1]),
    ("2A1", 92, &[1, 4]),
    ("3A1", 112, &[1, 4, 6]),
    ("A2", 114, &[]),
];

fn catalog_e(rs: &RootSystem) -> Vec<NilpotentOrbit> {
    let table = match rs.rank() {
        6 => E6_TABLE,
        7 => E7_TABLE,
        _ => E8_TABLE,
    };
    table
        .iter()
        .enumerate()
        .map(|(i, &(label, dim, rep))| NilpotentOrbit {
            group: rs.label(),
            label: OrbitLabel::BalaCarter {
                label: label.into(),
            },
            bala_carter: Some(label.into()),
            dim,
            zero: dim == 0,
            minimal: label == "A1",
            next_to_minimal: label == "2A1",
            representative: (!rep.is_empty() || dim == 0).then(|| simple_roots(rs, rep)),
            chain: Some(i as u32),
        })
        .collect()
}

/// All orbits for types A and D; the small-orbit table for E6, E7, E8.
pub fn orbit_catalog(rs: &RootSystem) -> Vec<NilpotentOrbit> {
    match rs.series() {
        Series::A => catalog_a(rs),
        Series::D => catalog_d(rs),
        Series::E => catalog_e(rs),
    }
}

/// Whether `a` lies in the Zariski closure of `b`.
pub fn closure_leq(a: &NilpotentOrbit, b: &NilpotentOrbit) -> Result<bool, OrbitError> {
    if a.group != b.group {
        return Err(OrbitError::GroupMismatch(a.group.clone(), b.group.clone()));
    }
    match (&a.label, &b.label) {
        (
            OrbitLabel::Partition {
                parts: pa,
                very_even: ca,
            },
            OrbitLabel::Partition {
                parts: pb,
                very_even: cb,
            },
        ) => {
            if pa == pb {
                return Ok(ca == cb);
            }
            Ok(dominated_by(pa, pb))
        }
        _ => match (a.chain, b.chain) {
            (Some(x), Some(y)) => Ok(x <= y),
            _ => Err(OrbitError::Unsupported(a.group.clone())),
        },
    }
}

/// Orbits whose closure covers `o` directly within the catalog.
pub fn covers<'a>(catalog: &'a [NilpotentOrbit], o: &NilpotentOrbit) -> Vec<&'a NilpotentOrbit> {
    let above: Vec<&NilpotentOrbit> = catalog
        .iter()
        .filter(|b| *b != o && closure_leq(o, b).unwrap_or(false))
        .collect();
    above
        .iter()
        .copied()
        .filter(|b| {
            !above
                .iter()
                .any(|c| c != b && closure_leq(c, b).unwrap_or(false))
        })
        .collect()
}

pub fn find_by_partition<'a>(
    catalog: &'a [NilpotentOrbit],
    parts: &[u32],
) -> Vec<&'a NilpotentOrbit> {
    catalog
        .iter()
        .filter(|o| matches!(&o.label, OrbitLabel::Partition { parts: p, .. } if p == parts))
        .collect()
}

pub fn find_by_label<'a>(catalog: &'a [NilpotentOrbit], label: &str) -> Option<&'a NilpotentOrbit> {
    catalog
        .iter()
        .find(|o| o.bala_carter.as_deref() == Some(label) || o.label.to_string() == label)
}
