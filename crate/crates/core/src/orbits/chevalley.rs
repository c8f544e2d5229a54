//! Chevalley basis of a simply-laced Lie algebra with integer structure
//! constants.
//!
//! Signs come from the bimultiplicative cocycle `ε` on the root lattice with
//! `ε(α_i, α_i) = −1`, `ε(α_i, α_j) = (−1)^{A_ij}` for `i < j` and `1` for
//! `i > j`.  Negative root vectors are rescaled by `−1` so that
//! `[X_α, X_{−α}] = α^∨` for every root.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::affine::{q, Q};
use crate::rootsys::{Node, Root, RootSystem};

/// Label of a basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisElement {
    RootVector(Root),
    Coroot(Node),
}

#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem) -> Self {
        let roots = rs.roots();
        let index = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        Self {
            rs: rs.clone(),
            roots,
            index,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank()
    }

    /// Number of root vectors; coroots follow them in the basis.
    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn coroot_index(&self, node: Node) -> usize {
        self.roots.len() + node - 1
    }

    pub fn basis_label(&self, i: usize) -> BasisElement {
        if i < self.roots.len() {
            BasisElement::RootVector(self.roots[i].clone())
        } else {
            BasisElement::Coroot(i - self.roots.len() + 1)
        }
    }

    pub fn zero_vector(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = self.zero_vector();
        v[i] = Q::one();
        v
    }

    /// Cartan element `h` with `α_i(h) = values[i−1]`.
    pub fn cartan_from_values(&self, values: &[Q]) -> Vec<Q> {
        // α_i(h_j) = A_ji; solve A c = values.
        let r = self.rank();
        let mut m: Vec<Vec<Q>> = (0..r)
            .map(|i| {
                let mut row: Vec<Q> = (0..r).map(|j| q(self.rs.cartan_matrix()[j][i])).collect();
                row.push(values[i]);
                row
            })
            .collect();
        super::linalg::rref(&mut m);
        let mut v = self.zero_vector();
        for (i, row) in m.iter().enumerate() {
            v[self.roots.len() + i] = row[r];
        }
        v
    }

    /// Coroot `α^∨` as an element of the Cartan subalgebra.
    pub fn coroot(&self, r: &Root) -> Vec<Q> {
        let mut v = self.zero_vector();
        for (i, &c) in r.0.iter().enumerate() {
            v[self.roots.len() + i] = q(c);
        }
        v
    }

    /// `β(S)` for a basis vector, given `S` by its values on simple roots.
    pub fn eigenvalue(&self, i: usize, values: &[Q]) -> Q {
        if i < self.roots.len() {
            self.roots[i]
                .0
                .iter()
                .zip(values)
                .map(|(&c, v)| v * c)
                .sum()
        } else {
            Q::zero()
        }
    }

    fn cocycle(&self, a: &Root, b: &Root) -> i64 {
        let cm = self.rs.cartan_matrix();
        let mut parity = 0i64;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                let e = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Less => cm[i][j].rem_euclid(2),
                    std::cmp::Ordering::Greater => 0,
                };
                parity += e * ai * bj;
            }
        }
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn sign(r: &Root) -> i64 {
        if r.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Bracket of two basis vectors as a sparse integer combination.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let n = self.roots.len();
        match (i < n, j < n) {
            (false, false) => vec![],
            (false, true) => {
                let k = i - n;
                let b = &self.roots[j];
                let v: i64 = (0..self.rank())
                    .map(|l| b.0[l] * self.rs.cartan_matrix()[l][k])
                    .sum();
                if v == 0 {
                    vec![]
                } else {
                    vec![(j, v)]
                }
            }
            (true, false) => self
                .bracket_basis(j, i)
                .into_iter()
                .map(|(k, c)| (k, -c))
                .collect(),
            (true, true) => {
                let (a, b) = (&self.roots[i], &self.roots[j]);
                let sum = Root(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                if sum.0.iter().all(|&c| c == 0) {
                    return a
                        .0
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (n + k, c))
                        .collect();
                }
                match self.index.get(&sum) {
                    Some(&k) => {
                        let c =
                            Self::sign(a) * Self::sign(b) * Self::sign(&sum) * self.cocycle(a, b);
                        vec![(k, c)]
                    }
                    None => vec![],
                }
            }
        }
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = self.zero_vector();
        let nx: Vec<usize> = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
        let ny: Vec<usize> = (0..y.len()).filter(|&i| !y[i].is_zero()).collect();
        for &i in &nx {
            for &j in &ny {
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] += x[i] * y[j] * c;
                }
            }
        }
        out
    }

    /// Invariant form with `(X_α, X_{−α}) = 1` and `(α_i^∨, α_j^∨) = A_ij`.
    pub fn form(&self, x: &[Q], y: &[Q]) -> Q {
        let n = self.roots.len();
        let mut acc = Q::zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            if i < n {
                let j = self.index[&self.roots[i].neg()];
                acc += xi * y[j];
            } else {
                for k in 0..self.rank() {
                    acc += xi * y[n + k] * self.rs.cartan_matrix()[i - n][k];
                }
            }
        }
        acc
    }
}
