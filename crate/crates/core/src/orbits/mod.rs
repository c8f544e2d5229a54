//! Nilpotent orbits and the linear algebra of Whittaker pairs `(S, φ)` with
//! `S` in the Cartan subalgebra.
//!
//! A functional `φ` is carried by the nilpotent element `f_φ = Σ c_β X_β`
//! that represents it under the invariant form, so `φ(X) = (f_φ, X)`.

pub mod catalog;
pub mod chevalley;
pub mod linalg;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::{q, Q};
use crate::rootsys::Root;

pub use catalog::{closure_leq, covers, orbit_catalog, NilpotentOrbit, OrbitLabel, VeryEvenClass};
pub use chevalley::ChevalleyAlgebra;
pub use linalg::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("no orbit data for {0}")]
    Unsupported(String),
    #[error("orbits of {0} and {1} cannot be compared")]
    GroupMismatch(String, String),
    #[error("cannot parse partition `{0}`")]
    BadPartition(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("charge on {0} is zero")]
    ZeroCharge(String),
    #[error("S has {got} values, expected {rank}")]
    CartanRank { got: usize, rank: usize },
    #[error("not a Whittaker pair: root {root} has value {value} on S, expected -2")]
    WrongDegree { root: String, value: String },
    #[error("the two pairs carry different functionals")]
    PhiMismatch,
    #[error("roots {0} and {1} are not orthogonal")]
    NonOrthogonal(String, String),
    #[error("sl2 relation {0} fails")]
    Sl2Relation(&'static str),
}

fn root_str(r: &Root) -> String {
    format!("{:?}", r.0)
}

/// `(S, φ)` with `S` given by `α_i(S)` and `φ` by the terms of `f_φ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhittakerPair {
    #[serde(with = "values_serde")]
    pub s: Vec<Q>,
    #[serde(with = "phi_serde")]
    pub phi: Vec<(Root, Q)>,
}

mod values_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(crate::affine::fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|x| crate::affine::parse_q(x).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod phi_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Term {
        root: Vec<i64>,
        charge: String,
    }

    pub fn serialize<S: Serializer>(v: &[(Root, Q)], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|(r, c)| Term {
            root: r.0.clone(),
            charge: crate::affine::fmt_q(c),
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Root, Q)>, D::Error> {
        let v: Vec<Term> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|t| {
                let c = crate::affine::parse_q(&t.charge).map_err(serde::de::Error::custom)?;
                Ok((Root(t.root), c))
            })
            .collect()
    }
}

impl WhittakerPair {
    /// Validates `β(S) = −2` on every root in the support of `f_φ`.
    pub fn new(alg: &ChevalleyAlgebra, s: Vec<Q>, phi: Vec<(Root, Q)>) -> Result<Self, OrbitError> {
        if s.len() != alg.rank() {
            return Err(OrbitError::CartanRank {
                got: s.len(),
                rank: alg.rank(),
            });
        }
        for (r, c) in &phi {
            let i = alg
                .root_index(r)
                .ok_or_else(|| OrbitError::NotARoot(root_str(r)))?;
            if c.is_zero() {
                return Err(OrbitError::ZeroCharge(root_str(r)));
            }
            let v = alg.eigenvalue(i, &s);
            if v != q(-2) {
                return Err(OrbitError::WrongDegree {
                    root: root_str(r),
                    value: crate::affine::fmt_q(&v),
                });
            }
        }
        Ok(Self { s, phi })
    }

    /// `f_φ` as a vector.
    pub fn f_phi(&self, alg: &ChevalleyAlgebra) -> Vec<Q> {
        let mut v = alg.zero_vector();
        for (r, c) in &self.phi {
            v[alg.root_index(r).expect("validated")] += c;
        }
        v
    }

    /// `φ` as a row vector: `φ(X) = (f_φ, X)`.
    fn phi_row(&self, alg: &ChevalleyAlgebra) -> Vec<Q> {
        let mut v = alg.zero_vector();
        for (r, c) in &self.phi {
            v[alg.root_index(&r.neg()).expect("validated")] += c;
        }
        v
    }

    /// The same functional with a different `S`.
    pub fn with_s(&self, alg: &ChevalleyAlgebra, s: Vec<Q>) -> Result<Self, OrbitError> {
        Self::new(alg, s, self.phi.clone())
    }
}

/// Eigenspace decomposition of `g` under `ad(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    pub spaces: BTreeMap<Q, Vec<usize>>,
}

impl GradedSubspace {
    pub fn dims(&self) -> BTreeMap<Q, usize> {
        self.spaces.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    pub fn dim_of(&self, eigenvalue: Q) -> usize {
        self.spaces.get(&eigenvalue).map_or(0, Vec::len)
    }

    fn indices(&self, keep: impl Fn(&Q) -> bool) -> Vec<usize> {
        self.spaces
            .iter()
            .filter(|(k, _)| keep(k))
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }

    /// `g^S_{>t}` or `g^S_{≥t}` as a coordinate subspace.
    pub fn above(&self, ambient: usize, t: Q, strict: bool) -> Subspace {
        Subspace::coordinate(
            ambient,
            self.indices(|k| if strict { *k > t } else { *k >= t }),
        )
    }

    pub fn exactly(&self, ambient: usize, t: Q) -> Subspace {
        Subspace::coordinate(ambient, self.indices(|k| *k == t))
    }
}

pub fn grade_by(alg: &ChevalleyAlgebra, s: &[Q]) -> GradedSubspace {
    let mut spaces: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    for i in 0..alg.dim() {
        spaces.entry(alg.eigenvalue(i, s)).or_default().push(i);
    }
    GradedSubspace { spaces }
}

/// Stabilizer `g_φ = {X : φ([X, Y]) = 0 for all Y}`.
pub fn stabilizer(alg: &ChevalleyAlgebra, pair: &WhittakerPair) -> Subspace {
    let d = alg.dim();
    let phi = pair.phi_row(alg);
    let support: Vec<usize> = (0..d).filter(|&k| !phi[k].is_zero()).collect();
    // row Y, column X: φ([X, Y])
    let rows: Vec<Vec<Q>> = (0..d)
        .map(|y| {
            (0..d)
                .map(|x| {
                    alg.bracket_basis(x, y)
                        .into_iter()
                        .filter(|(k, _)| support.contains(k))
                        .map(|(k, c)| phi[k] * c)
                        .sum()
                })
                .collect()
        })
        .collect();
    Subspace::span(d, linalg::nullspace(&rows, d))
}

/// `n_{S,φ} = g^S_{>1} ⊕ (g^S_1 ∩ g_φ)`.
pub fn n_s_phi(alg: &ChevalleyAlgebra, pair: &WhittakerPair) -> Subspace {
    let d = alg.dim();
    let g = grade_by(alg, &pair.s);
    let one = g.exactly(d, q(1));
    g.above(d, q(1), true)
        .sum(&one.intersect(&stabilizer(alg, pair)))
}

/// Radical of `ω_φ(X, Y) = φ([X, Y])` on `u_S = g^S_{≥1}`.
pub fn omega_radical(alg: &ChevalleyAlgebra, pair: &WhittakerPair) -> Subspace {
    let d = alg.dim();
    let g = grade_by(alg, &pair.s);
    let u = g.indices(|k| *k >= q(1));
    let phi = pair.phi_row(alg);
    let gram: Vec<Vec<Q>> = u
        .iter()
        .map(|&i| {
            u.iter()
                .map(|&j| {
                    alg.bracket_basis(i, j)
                        .into_iter()
                        .map(|(k, c)| phi[k] * c)
                        .sum()
                })
                .collect()
        })
        .collect();
    let kernel = linalg::nullspace(&gram, u.len());
    Subspace::span(
        d,
        kernel.into_iter().map(|x| {
            let mut v = vec![Q::zero(); d];
            for (c, &i) in x.iter().zip(&u) {
                v[i] = *c;
            }
            v
        }),
    )
}

/// Whether `(H, φ)` dominates `(S, φ)`: `g_φ ∩ g^H_{≥1} ⊆ g^{S−H}_{≥0}`.
pub fn dominates(
    alg: &ChevalleyAlgebra,
    h: &WhittakerPair,
    s: &WhittakerPair,
) -> Result<bool, OrbitError> {
    if h.phi != s.phi {
        return Err(OrbitError::PhiMismatch);
    }
    let d = alg.dim();
    let lhs = stabilizer(alg, h).intersect(&grade_by(alg, &h.s).above(d, q(1), false));
    let diff: Vec<Q> = s.s.iter().zip(&h.s).map(|(a, b)| a - b).collect();
    let rhs = grade_by(alg, &diff).above(d, Q::zero(), false);
    Ok(rhs.contains_subspace(&lhs))
}

/// Neutral pair for `f_φ = Σ c_β X_{−β}` over pairwise orthogonal roots `β`,
/// with `h = Σ β^∨` and `e = Σ c_β^{−1} X_β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeutralPair {
    pub pair: WhittakerPair,
    pub e: Vec<Q>,
    pub h: Vec<Q>,
    pub f: Vec<Q>,
}

pub fn neutral_pair_for(
    alg: &ChevalleyAlgebra,
    support: &[(Root, Q)],
) -> Result<NeutralPair, OrbitError> {
    let rs = alg.root_system();
    for (i, (a, c)) in support.iter().enumerate() {
        if alg.root_index(a).is_none() {
            return Err(OrbitError::NotARoot(root_str(a)));
        }
        if c.is_zero() {
            return Err(OrbitError::ZeroCharge(root_str(a)));
        }
        for (b, _) in &support[i + 1..] {
            if rs.pair_roots(a, b) != 0 {
                return Err(OrbitError::NonOrthogonal(root_str(a), root_str(b)));
            }
        }
    }
    let mut h = alg.zero_vector();
    let mut e = alg.zero_vector();
    let mut f = alg.zero_vector();
    for (b, c) in support {
        for (x, y) in h.iter_mut().zip(alg.coroot(b)) {
            *x += y;
        }
        e[alg.root_index(b).expect("checked")] += c.recip();
        f[alg.root_index(&b.neg()).expect("checked")] += c;
    }
    let two = |v: &[Q], k: i64| v.iter().map(|x| x * q(k)).collect::<Vec<Q>>();
    if alg.bracket(&h, &e) != two(&e, 2) {
        return Err(OrbitError::Sl2Relation("[h, e] = 2e"));
    }
    if alg.bracket(&h, &f) != two(&f, -2) {
        return Err(OrbitError::Sl2Relation("[h, f] = -2f"));
    }
    if alg.bracket(&e, &f) != h {
        return Err(OrbitError::Sl2Relation("[e, f] = h"));
    }
    let s: Vec<Q> = (1..=alg.rank())
        .map(|node| {
            let x = alg.root_index(&rs.simple_root(node)).expect("simple root");
            alg.bracket(&h, &alg.unit(x))[x]
        })
        .collect();
    let phi = support.iter().map(|(b, c)| (b.neg(), *c)).collect();
    let pair = WhittakerPair::new(alg, s, phi)?;
    Ok(NeutralPair { pair, e, h, f })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicCheck {
    pub n_dim: usize,
    pub g1_dim: usize,
    pub i_max: usize,
    pub orbit_dim: u32,
    pub holds: bool,
}

/// `dim n_{S,φ} + dim g^S_1 / 2` against half the orbit dimension.
pub fn isotropic_dimension_check(
    alg: &ChevalleyAlgebra,
    pair: &WhittakerPair,
    orbit: &NilpotentOrbit,
) -> IsotropicCheck {
    let n_dim = n_s_phi(alg, pair).dim();
    let g1_dim = grade_by(alg, &pair.s).dim_of(q(1));
    let i_max = n_dim + g1_dim / 2;
    IsotropicCheck {
        n_dim,
        g1_dim,
        i_max,
        orbit_dim: orbit.dim,
        holds: g1_dim % 2 == 0 && 2 * i_max as u32 == orbit.dim,
    }
}

/// Neutral pair built from an orbit's recorded representative, unit charges.
pub fn representative_pair(
    alg: &ChevalleyAlgebra,
    orbit: &NilpotentOrbit,
) -> Option<Result<NeutralPair, OrbitError>> {
    let rep = orbit.representative.as_ref()?;
    let support: Vec<(Root, Q)> = rep.iter().map(|r| (r.clone(), q(1))).collect();
    Some(neutral_pair_for(alg, &support))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RootSystem;

    fn alg(l: &str) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(&RootSystem::from_label(l).unwrap())
    }

    #[test]
    fn grading_examples() {
        let g = alg("A2");
        let dims = grade_by(&g, &[q(2), q(2)]).dims();
        let v: Vec<(i64, usize)> = dims.iter().map(|(k, d)| (k.to_integer(), *d)).collect();
        assert_eq!(v, vec![(-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1)]);
        assert_eq!(grade_by(&g, &[q(0), q(0)]).dims().len(), 1);
        let e6 = alg("E6");
        assert_eq!(grade_by(&e6, &[q(1); 6]).dims().values().sum::<usize>(), 78);
    }

    #[test]
    fn zero_functional() {
        let g = alg("A3");
        let p = WhittakerPair::new(&g, vec![q(1), q(0), q(2)], vec![]).unwrap();
        let u = grade_by(&g, &p.s).above(g.dim(), q(1), false);
        assert_eq!(n_s_phi(&g, &p), u);
        assert_eq!(omega_radical(&g, &p), u);
    }

    #[test]
    fn single_root_neutral_pair() {
        let g = alg("A2");
        let rs = g.root_system().clone();
        let np = neutral_pair_for(&g, &[(rs.simple_root(1), q(1))]).unwrap();
        assert_eq!(np.h, g.coroot(&rs.simple_root(1)));
        assert_eq!(n_s_phi(&g, &np.pair).dim(), 1);
        assert_eq!(grade_by(&g, &np.pair.s).dim_of(q(1)), 2);
        let a1 = alg("A1");
        let np = neutral_pair_for(&a1, &[(a1.root_system().simple_root(1), q(3))]).unwrap();
        assert_eq!(np.pair.s, vec![q(2)]);
    }

    #[test]
    fn rejects_bad_input() {
        let g = alg("A3");
        let rs = g.root_system().clone();
        let adj = [(rs.simple_root(1), q(1)), (rs.simple_root(2), q(1))];
        assert!(matches!(
            neutral_pair_for(&g, &adj),
            Err(OrbitError::NonOrthogonal(..))
        ));
        assert!(matches!(
            WhittakerPair::new(&g, vec![q(0); 3], vec![(rs.simple_root(1).neg(), q(1))]),
            Err(OrbitError::WrongDegree { .. })
        ));
        let p = WhittakerPair::new(&g, vec![q(0); 3], vec![]).unwrap();
        let p2 = WhittakerPair::new(
            &g,
            vec![q(2), q(-1), q(0)],
            vec![(rs.simple_root(1).neg(), q(1))],
        )
        .unwrap();
        assert_eq!(dominates(&g, &p, &p2), Err(OrbitError::PhiMismatch));
    }

    #[test]
    fn pair_json_round_trip() {
        let g = alg("A3");
        let rs = g.root_system().clone();
        let p = WhittakerPair::new(
            &g,
            vec![q(2), Q::new(-1, 2), q(0)],
            vec![(rs.simple_root(1).neg(), q(5))],
        )
        .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<WhittakerPair>(&s).unwrap(), p);
    }
}
