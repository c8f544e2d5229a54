//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::affine::Q;

/// Reduce `rows` to reduced row-echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` for an `m × ncols` matrix.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free];
        }
        out.push(v);
    }
    out
}

/// A linear subspace of `Q^n`, held as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Q>>) -> Self {
        let mut basis: Vec<Vec<Q>> = vectors.into_iter().collect();
        debug_assert!(basis.iter().all(|v| v.len() == ambient));
        let pivots = rref(&mut basis);
        Self {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, [])
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            ambient,
            indices.into_iter().map(|i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            }),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut r = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = r[pc];
            if !f.is_zero() {
                for (x, b) in r.iter_mut().zip(row) {
                    *x -= f * b;
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Vectors orthogonal to this subspace under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient, nullspace(&self.basis, self.ambient))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let constraints = other.annihilator();
        // coefficients x with C·(Σ x_i b_i) = 0
        let rows: Vec<Vec<Q>> = constraints
            .basis
            .iter()
            .map(|c| self.basis.iter().map(|b| dot(c, b)).collect())
            .collect();
        let combos = nullspace(&rows, self.dim());
        Subspace::span(
            self.ambient,
            combos.iter().map(|x| combine(&self.basis, x, self.ambient)),
        )
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn combine(vectors: &[Vec<Q>], coeffs: &[Q], ambient: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); ambient];
    for (v, c) in vectors.iter().zip(coeffs) {
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            assert!(dot(row, &k[0]).is_zero());
        }
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::coordinate(4, [0, 1]);
        let b = Subspace::span(4, [v(&[1, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[2, 2, 0, 0])));
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.sum(&b).contains_subspace(&i));
        assert_eq!(a.annihilator(), Subspace::coordinate(4, [2, 3]));
        assert_eq!(
            Subspace::zero(4).intersect(&a.sum(&b).annihilator()).dim(),
            0
        );
    }
}
