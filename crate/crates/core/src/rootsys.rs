//! Root systems of types A, D and E in Bourbaki labelling.
//!
//! Roots are stored in the simple-root basis, weights in the
//! fundamental-weight basis.  The pairing is normalized so that every root
//! has squared length 2; for a simply-laced type this makes the Cartan matrix
//! the Gram matrix of the simple roots and its inverse the Gram matrix of the
//! fundamental weights.
//!
//! Node numbers are 1-based everywhere in the public API.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{q, AffineArg, Q};

/// A node of the Dynkin diagram, numbered from 1 as in Bourbaki.
pub type Node = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    D,
    E,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootSystemError {
    #[error("unsupported root system {series:?}{rank}: supported are A_n (n>=1), D_n (n>=4), E6, E7, E8")]
    Unsupported { series: Series, rank: usize },
    #[error("cannot parse group label `{0}` (expected e.g. A3, D5, E8)")]
    BadLabel(String),
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: Node, rank: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn coeff(&self, node: Node) -> i64 {
        self.0[node - 1]
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn fundamental(rank: usize, node: Node) -> Self {
        let mut v = vec![Q::zero(); rank];
        v[node - 1] = Q::one();
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, k: Q) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

/// A weight whose fundamental-weight coordinates are affine in `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight(pub Vec<AffineArg>);

impl AffineWeight {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn from_weight(w: &Weight) -> Self {
        AffineWeight(w.0.iter().map(|&c| AffineArg::constant(c)).collect())
    }

    pub fn at(&self, s: Q) -> Weight {
        Weight(self.0.iter().map(|c| c.eval(s)).collect())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    positive_roots: Vec<Root>,
    root_index: HashMap<Root, usize>,
}

fn cartan_matrix(series: Series, rank: usize) -> Result<Vec<Vec<i64>>, RootSystemError> {
    let ok = match series {
        Series::A => rank >= 1,
        Series::D => rank >= 4,
        Series::E => (6..=8).contains(&rank),
    };
    if !ok {
        return Err(RootSystemError::Unsupported { series, rank });
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match series {
        Series::A => edges.extend((1..rank).map(|i| (i, i + 1))),
        Series::D => {
            edges.extend((1..rank - 1).map(|i| (i, i + 1)));
            edges.push((rank - 2, rank));
        }
        Series::E => {
            edges.push((1, 3));
            edges.push((2, 4));
            edges.extend((3..rank).map(|i| (i, i + 1)));
        }
    }
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    }
    Ok(c)
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| q(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootSystemError> {
        let cartan = cartan_matrix(series, rank)?;
        let cartan_inv = invert(&cartan);
        // Close the simple roots upward: in a simply-laced system β + α_i is a
        // root exactly when (β|α_i) = -1.
        let mut positive_roots: Vec<Root> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                Root(v)
            })
            .collect();
        let mut root_index: HashMap<Root, usize> = positive_roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let mut k = 0;
        while k < positive_roots.len() {
            let beta = positive_roots[k].clone();
            for i in 0..rank {
                let p: i64 = (0..rank).map(|j| beta.0[j] * cartan[j][i]).sum();
                if p == -1 {
                    let mut v = beta.0.clone();
                    v[i] += 1;
                    let r = Root(v);
                    if !root_index.contains_key(&r) {
                        root_index.insert(r.clone(), positive_roots.len());
                        positive_roots.push(r);
                    }
                }
            }
            k += 1;
        }
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        let root_index = positive_roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        Ok(Self {
            series,
            rank,
            cartan,
            cartan_inv,
            positive_roots,
            root_index,
        })
    }

    /// Parses labels like `A3`, `D5`, `E8` (case-insensitive, optional `_`).
    pub fn from_label(label: &str) -> Result<Self, RootSystemError> {
        let (series, rank) = parse_label(label)?;
        Self::new(series, rank)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{:?}{}", self.series, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_entry(&self, i: Node, j: Node) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// All roots, positive first.
    pub fn roots(&self) -> Vec<Root> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(Root::neg));
        v
    }

    pub fn simple_root(&self, node: Node) -> Root {
        let mut v = vec![0; self.rank];
        v[node - 1] = 1;
        Root(v)
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (1..=self.rank).map(|i| self.simple_root(i)).collect()
    }

    pub fn highest_root(&self) -> Root {
        self.positive_roots.last().cloned().expect("nonempty")
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.root_index.contains_key(r) || self.root_index.contains_key(&r.neg())
    }

    /// Index of a positive root in [`Self::positive_roots`].
    pub fn positive_root_index(&self, r: &Root) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    pub fn check_node(&self, node: Node) -> Result<(), RootSystemError> {
        if node == 0 || node > self.rank {
            Err(RootSystemError::NodeOutOfRange {
                node,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// Fundamental weight Λ_i in simple-root coordinates (row of C⁻¹).
    pub fn fundamental_weight_in_roots(&self, node: Node) -> Vec<Q> {
        self.cartan_inv[node - 1].clone()
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        (1..=self.rank)
            .map(|i| Weight::fundamental(self.rank, i))
            .collect()
    }

    /// ρ = Σ Λ_i.
    pub fn weyl_vector(&self) -> Weight {
        Weight(vec![Q::one(); self.rank])
    }

    pub fn root_to_weight(&self, r: &Root) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| q((0..self.rank).map(|j| r.0[j] * self.cartan[j][i]).sum()))
                .collect(),
        )
    }

    /// The normalized invariant pairing on weights.
    pub fn pairing(&self, v: &Weight, w: &Weight) -> Result<Q, RootSystemError> {
        for x in [v, w] {
            if x.rank() != self.rank {
                return Err(RootSystemError::DimensionMismatch {
                    left: x.rank(),
                    right: self.rank,
                });
            }
        }
        let mut acc = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += v.0[i] * self.cartan_inv[i][j] * w.0[j];
            }
        }
        Ok(acc)
    }

    pub fn pair_roots(&self, a: &Root, b: &Root) -> i64 {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| a.0[i] * self.cartan[i][j] * b.0[j])
                    .sum::<i64>()
            })
            .sum()
    }

    /// ⟨α|w⟩ for a root α and a weight w: Σ c_i w_i.
    pub fn pair_root_weight(&self, r: &Root, w: &Weight) -> Q {
        r.0.iter().zip(&w.0).map(|(&c, x)| x * c).sum()
    }

    pub fn pair_root_affine(&self, r: &Root, w: &AffineWeight) -> AffineArg {
        r.0.iter()
            .zip(&w.0)
            .fold(AffineArg::zero(), |acc, (&c, x)| acc + x.scale(q(c)))
    }

    /// Simple reflection s_i on a root.
    pub fn reflect_root(&self, node: Node, r: &Root) -> Root {
        let i = node - 1;
        let p: i64 = (0..self.rank).map(|j| r.0[j] * self.cartan[j][i]).sum();
        let mut v = r.0.clone();
        v[i] -= p;
        Root(v)
    }

    /// The Eisenstein weight 2sΛ_{i*} − ρ.
    pub fn eisenstein_weight(&self, node: Node) -> Result<AffineWeight, RootSystemError> {
        self.check_node(node)?;
        Ok(AffineWeight(
            (1..=self.rank)
                .map(|i| {
                    if i == node {
                        AffineArg::new(q(2), q(-1))
                    } else {
                        AffineArg::constant(q(-1))
                    }
                })
                .collect(),
        ))
    }

    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// Order of the parabolic subgroup generated by the given nodes.
    pub fn parabolic_order(&self, nodes: &[Node]) -> u128 {
        components(self, nodes)
            .iter()
            .map(|comp| {
                let sub: Vec<Vec<i64>> = comp
                    .iter()
                    .map(|&i| comp.iter().map(|&j| self.cartan[i - 1][j - 1]).collect())
                    .collect();
                let (series, rank) = classify_connected(&sub);
                RootSystem::new(series, rank)
                    .expect("subdiagram of a supported type")
                    .weyl_group_order()
            })
            .product()
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            series: self.series,
            rank: self.rank,
            cartan_matrix: self.cartan.clone(),
            simple_roots: self.simple_roots().into_iter().map(|r| r.0).collect(),
            positive_roots: self.positive_roots.iter().map(|r| r.0.clone()).collect(),
            fundamental_weights: self
                .cartan_inv
                .iter()
                .map(|row| row.iter().map(crate::affine::fmt_q).collect())
                .collect(),
        }
    }
}

/// JSON shape of a root system.  Roots are simple-root coordinates; the
/// fundamental weights are rows of the inverse Cartan matrix (simple-root
/// coordinates, rationals as `p/q` strings).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub series: Series,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub fundamental_weights: Vec<Vec<String>>,
}

pub fn parse_label(label: &str) -> Result<(Series, usize), RootSystemError> {
    let t = label.trim().replace('_', "");
    let mut chars = t.chars();
    let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Series::A,
        Some('D') => Series::D,
        Some('E') => Series::E,
        _ => return Err(RootSystemError::BadLabel(label.into())),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| RootSystemError::BadLabel(label.into()))?;
    cartan_matrix(series, rank)?;
    Ok((series, rank))
}

impl FromStr for RootSystem {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_label(s)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Connected components of the Dynkin subdiagram on `nodes`, each sorted.
pub fn components(rs: &RootSystem, nodes: &[Node]) -> Vec<Vec<Node>> {
    let mut seen = vec![false; nodes.len()];
    let mut out = Vec::new();
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![nodes[start]];
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for (idx, &b) in nodes.iter().enumerate() {
                if !seen[idx] && rs.cartan_entry(a, b) != 0 {
                    seen[idx] = true;
                    comp.push(b);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

/// Type of a connected simply-laced Cartan matrix.
pub fn classify_connected(c: &[Vec<i64>]) -> (Series, usize) {
    let n = c.len();
    let degrees: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && c[i][j] != 0).count())
        .collect();
    let Some(branch) = degrees.iter().position(|&d| d == 3) else {
        return (Series::A, n);
    };
    // Arm lengths from the branch node.
    let mut arms: Vec<usize> = Vec::new();
    for start in (0..n).filter(|&j| j != branch && c[branch][j] != 0) {
        let (mut prev, mut cur, mut len) = (branch, start, 1);
        loop {
            let next = (0..n).find(|&j| j != prev && j != cur && c[cur][j] != 0);
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                    len += 1;
                }
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    if arms[0] == 1 && arms[1] == 1 {
        (Series::D, n)
    } else {
        (Series::E, n)
    }
}
