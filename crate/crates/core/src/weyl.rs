//! Weyl group elements and minimal-length coset representatives.
//!
//! An element is identified by its image of ρ, which is regular, so
//! `w ↦ wρ` is injective.  Every element carries the reduced word read off
//! from that image by repeatedly stripping the smallest left descent, so two
//! enumerations that reach the same element produce the same word.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::{q, AffineArg};
use crate::par::{self, Execution};
use crate::rootsys::{AffineWeight, Node, Root, RootSystem, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error(
        "exhaustive enumeration of W({group}) needs |W| = {order} > cap {cap}; \
         use the Levi-pruned strategy (or raise the cap for a slow run)"
    )]
    CapExceeded {
        group: String,
        order: u128,
        cap: u128,
    },
    #[error("Levi subset must be all simple roots but one; got {0:?}")]
    BadLevi(Vec<Node>),
    #[error("node {0} is not a node of the diagram")]
    BadNode(Node),
    #[error("coset table is for {found}, expected {expected}")]
    GroupMismatch { expected: String, found: String },
    #[error("stored coset table is inconsistent: {0}")]
    Corrupt(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    word: Vec<u8>,
    /// Row-major matrix of the action on fundamental-weight coordinates.
    action: Vec<i16>,
}

fn reflect_weight_in_place(rs: &RootSystem, node: Node, v: &mut [i64]) {
    let c = v[node - 1];
    if c != 0 {
        for (k, x) in v.iter_mut().enumerate() {
            *x -= c * rs.cartan_entry(node, k + 1);
        }
    }
}

/// Reduced word of the element with `wρ = key`: strip left descents
/// (negative coordinates) smallest node first.
fn canonical_word(rs: &RootSystem, key: &[i64]) -> Vec<u8> {
    let mut mu = key.to_vec();
    let mut word = Vec::new();
    while let Some(i) = mu.iter().position(|&c| c < 0) {
        word.push((i + 1) as u8);
        reflect_weight_in_place(rs, i + 1, &mut mu);
    }
    word
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut action = vec![0i16; rank * rank];
        for i in 0..rank {
            action[i * rank + i] = 1;
        }
        Self {
            rank,
            word: Vec::new(),
            action,
        }
    }

    pub fn simple(rs: &RootSystem, node: Node) -> Self {
        Self::from_word(rs, &[node as u8])
    }

    /// The product `s_{w[0]} s_{w[1]} ⋯`, not necessarily reduced as given;
    /// the stored word is the canonical reduced one.
    pub fn from_word(rs: &RootSystem, word: &[u8]) -> Self {
        let n = rs.rank();
        let mut m: Vec<i64> = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        for &j in word {
            // Right-multiplying by s_j changes column j only.
            let j = j as usize;
            for r in 0..n {
                let row = &m[r * n..(r + 1) * n];
                let corr: i64 = (0..n).map(|k| row[k] * rs.cartan_entry(j, k + 1)).sum();
                let val = row[j - 1] - corr;
                m[r * n + (j - 1)] = val;
            }
        }
        let key: Vec<i64> = (0..n).map(|r| m[r * n..(r + 1) * n].iter().sum()).collect();
        Self {
            rank: n,
            word: canonical_word(rs, &key),
            action: m.into_iter().map(|x| x as i16).collect(),
        }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|r| {
                (0..self.rank)
                    .map(|c| self.action[r * self.rank + c] as i64)
                    .collect()
            })
            .collect()
    }

    fn entry(&self, r: usize, c: usize) -> i64 {
        self.action[r * self.rank + c] as i64
    }

    /// `wρ` in fundamental-weight coordinates; identifies the element.
    pub fn key(&self) -> Vec<i64> {
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| self.entry(r, c)).sum())
            .collect()
    }

    pub fn act(&self, v: &Weight) -> Weight {
        Weight(
            (0..self.rank)
                .map(|r| (0..self.rank).map(|c| v.0[c] * q(self.entry(r, c))).sum())
                .collect(),
        )
    }

    pub fn act_affine(&self, v: &AffineWeight) -> AffineWeight {
        AffineWeight(
            (0..self.rank)
                .map(|r| {
                    (0..self.rank).fold(AffineArg::zero(), |acc, c| {
                        acc + v.0[c].scale(q(self.entry(r, c)))
                    })
                })
                .collect(),
        )
    }

    /// `w⁻¹v`, applying the letters of the word left to right.
    pub fn act_inverse_affine(&self, rs: &RootSystem, v: &AffineWeight) -> AffineWeight {
        let mut out = v.clone();
        for &j in &self.word {
            let c = out.0[j as usize - 1];
            if !(c.slope.is_zero() && c.offset.is_zero()) {
                for k in 0..self.rank {
                    let a = rs.cartan_entry(j as usize, k + 1);
                    if a != 0 {
                        out.0[k] = out.0[k] - c.scale(q(a));
                    }
                }
            }
        }
        out
    }

    pub fn act_inverse_int(&self, rs: &RootSystem, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for &j in &self.word {
            reflect_weight_in_place(rs, j as usize, &mut out);
        }
        out
    }

    /// Image of a root, in simple-root coordinates.
    pub fn act_root(&self, rs: &RootSystem, r: &Root) -> Root {
        let mut out = r.clone();
        for &j in self.word.iter().rev() {
            out = rs.reflect_root(j as usize, &out);
        }
        out
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let rev: Vec<u8> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &rev)
    }

    pub fn mul(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let mut w = self.word.clone();
        w.extend_from_slice(&other.word);
        WeylElement::from_word(rs, &w)
    }

    /// `{α > 0 : wα < 0}`.
    pub fn inversion_set(&self, rs: &RootSystem) -> Vec<Root> {
        let rho = vec![1i64; self.rank];
        let inv_rho = self.act_inverse_int(rs, &rho);
        negative_pairings(rs, &inv_rho)
    }

    /// `{α > 0 : w⁻¹α < 0}`, the index set of the intertwiner `M(w⁻¹, λ)`.
    pub fn inverse_inversion_set(&self, rs: &RootSystem) -> Vec<Root> {
        negative_pairings(rs, &self.key())
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Positive roots α with ⟨α|μ⟩ < 0.
fn negative_pairings(rs: &RootSystem, mu: &[i64]) -> Vec<Root> {
    rs.positive_roots()
        .iter()
        .filter(|r| r.0.iter().zip(mu).map(|(a, b)| a * b).sum::<i64>() < 0)
        .cloned()
        .collect()
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({})", self)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.word.iter().map(|j| format!("s{j}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The longest element, found by walking ρ down to −ρ.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let mut mu = vec![1i64; rs.rank()];
    let mut word: Vec<u8> = Vec::new();
    while let Some(i) = mu.iter().position(|&c| c > 0) {
        reflect_weight_in_place(rs, i + 1, &mut mu);
        word.insert(0, (i + 1) as u8);
    }
    WeylElement::from_word(rs, &word)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CosetStrategy {
    Exhaustive,
    LeviPruned { levi: Vec<Node> },
}

/// Caps for exhaustive enumeration, in terms of |W|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveLimits {
    pub max_group_order: u128,
}

impl ExhaustiveLimits {
    /// Covers A_n (n ≤ 7), D_n (n ≤ 6) and E6.
    pub const DEFAULT: Self = Self {
        max_group_order: 100_000,
    };
    /// Admits E7 (|W| = 2 903 040); E8 stays out of reach.
    pub const SLOW: Self = Self {
        max_group_order: 3_000_000,
    };
}

impl Default for ExhaustiveLimits {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Minimal-length representatives of W/W' (w(α) > 0 for α ∈ Π').
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub group: String,
    pub support: Vec<Node>,
    pub strategy: CosetStrategy,
    pub reps: Vec<WeylElement>,
}

fn check_nodes(rs: &RootSystem, nodes: &[Node]) -> Result<Vec<Node>, WeylError> {
    let mut v = nodes.to_vec();
    for &n in &v {
        if n == 0 || n > rs.rank() {
            return Err(WeylError::BadNode(n));
        }
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Breadth-first descent through the W-orbit of a dominant integral weight.
/// Returns `(μ, word)` pairs with `word` giving the minimal `u` with `uν = μ`.
fn orbit_words(rs: &RootSystem, start: Vec<i64>, exec: Execution) -> Vec<(Vec<i64>, Vec<u8>)> {
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut all = vec![(start.clone(), Vec::new())];
    let mut frontier = vec![(start, Vec::<u8>::new())];
    while !frontier.is_empty() {
        let mut candidates: Vec<(Vec<i64>, Vec<u8>)> = par::map(&frontier, exec, |(mu, word)| {
            let mut out = Vec::new();
            for i in 0..mu.len() {
                if mu[i] > 0 {
                    let mut next = mu.clone();
                    reflect_weight_in_place(rs, i + 1, &mut next);
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push((i + 1) as u8);
                    w.extend_from_slice(word);
                    out.push((next, w));
                }
            }
            out
        })
        .into_iter()
        .flatten()
        .collect();
        candidates.sort_unstable();
        frontier = Vec::new();
        for (mu, w) in candidates {
            if seen.insert(mu.clone(), ()).is_none() {
                frontier.push((mu.clone(), w.clone()));
                all.push((mu, w));
            }
        }
    }
    all
}

fn sort_reps(reps: &mut [WeylElement]) {
    reps.sort_by(|a, b| {
        a.length()
            .cmp(&b.length())
            .then_with(|| a.key().cmp(&b.key()))
    });
}

/// All minimal-length representatives of W/W_{Π'}, via the orbit of
/// Σ_{i∉Π'} Λ_i (whose stabilizer is exactly W_{Π'}).
pub fn coset_reps_exhaustive(
    rs: &RootSystem,
    support: &[Node],
    limits: ExhaustiveLimits,
    exec: Execution,
) -> Result<CosetTable, WeylError> {
    let support = check_nodes(rs, support)?;
    let order = rs.weyl_group_order();
    if order > limits.max_group_order {
        return Err(WeylError::CapExceeded {
            group: rs.label(),
            order,
            cap: limits.max_group_order,
        });
    }
    let start: Vec<i64> = (1..=rs.rank())
        .map(|i| i64::from(!support.contains(&i)))
        .collect();
    let orbit = orbit_words(rs, start, exec);
    let mut reps = par::map(&orbit, exec, |(_, w)| WeylElement::from_word(rs, w));
    sort_reps(&mut reps);
    Ok(CosetTable {
        group: rs.label(),
        support,
        strategy: CosetStrategy::Exhaustive,
        reps,
    })
}

/// Representatives w of W/W_{Π'} that also satisfy w⁻¹(α) > 0 for every α in
/// the Levi subset Π̃ = Π ∖ {α_{i*}}: one per double coset W̃\W/W'.
///
/// The orbit of Λ_{i*} is traversed breadth first; each orbit weight μ
/// indexes the candidate w = u⁻¹ with uΛ_{i*} = μ, which is then moved to
/// the minimal element of its right W'-coset and deduplicated.
pub fn coset_reps_levi_pruned(
    rs: &RootSystem,
    levi: &[Node],
    support: &[Node],
    exec: Execution,
) -> Result<CosetTable, WeylError> {
    let support = check_nodes(rs, support)?;
    let levi = check_nodes(rs, levi)?;
    if levi.len() + 1 != rs.rank() {
        return Err(WeylError::BadLevi(levi));
    }
    let inducing = (1..=rs.rank())
        .find(|i| !levi.contains(i))
        .expect("one node missing");
    let start: Vec<i64> = (1..=rs.rank()).map(|i| i64::from(i == inducing)).collect();
    let orbit = orbit_words(rs, start, exec);
    let candidates = par::filter_map(&orbit, exec, |(_, u_word)| {
        let rev: Vec<u8> = u_word.iter().rev().copied().collect();
        let mut w = WeylElement::from_word(rs, &rev);
        // Right-coset canonicalization: strip right descents inside W'.
        loop {
            let inv_rho = w.act_inverse_int(rs, &vec![1; rs.rank()]);
            match support.iter().find(|&&j| inv_rho[j - 1] < 0) {
                Some(&j) => {
                    let mut word = w.word().to_vec();
                    word.push(j as u8);
                    w = WeylElement::from_word(rs, &word);
                }
                None => break,
            }
        }
        let key = w.key();
        levi.iter().all(|&i| key[i - 1] > 0).then_some(w)
    });
    let mut reps: Vec<WeylElement> = Vec::new();
    let mut seen = HashMap::new();
    for w in candidates {
        if seen.insert(w.key(), ()).is_none() {
            reps.push(w);
        }
    }
    sort_reps(&mut reps);
    Ok(CosetTable {
        group: rs.label(),
        support,
        strategy: CosetStrategy::LeviPruned { levi },
        reps,
    })
}

/// On-disk form of a coset table: the reduced words of the representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTableJson {
    pub group: String,
    pub support: Vec<Node>,
    pub strategy: CosetStrategy,
    pub reps: Vec<Vec<u8>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn to_json(&self) -> CosetTableJson {
        CosetTableJson {
            group: self.group.clone(),
            support: self.support.clone(),
            strategy: self.strategy.clone(),
            reps: self.reps.iter().map(|w| w.word().to_vec()).collect(),
        }
    }

    pub fn from_json(rs: &RootSystem, json: &CosetTableJson) -> Result<Self, WeylError> {
        if json.group != rs.label() {
            return Err(WeylError::GroupMismatch {
                expected: rs.label(),
                found: json.group.clone(),
            });
        }
        let support = check_nodes(rs, &json.support)?;
        let mut reps = Vec::with_capacity(json.reps.len());
        for word in &json.reps {
            if word.iter().any(|&j| j == 0 || j as usize > rs.rank()) {
                return Err(WeylError::Corrupt(format!(
                    "letter out of range in {word:?}"
                )));
            }
            let w = WeylElement::from_word(rs, word);
            if w.word() != word.as_slice() {
                return Err(WeylError::Corrupt(format!(
                    "word {word:?} is not canonical"
                )));
            }
            reps.push(w);
        }
        let table = CosetTable {
            group: json.group.clone(),
            support,
            strategy: json.strategy.clone(),
            reps,
        };
        if !table.is_minimal(rs) {
            return Err(WeylError::Corrupt(
                "representative not of minimal length".into(),
            ));
        }
        Ok(table)
    }

    /// Every representative maps the support roots to positive roots.
    pub fn is_minimal(&self, rs: &RootSystem) -> bool {
        self.reps.iter().all(|w| {
            self.support
                .iter()
                .all(|&j| w.act_root(rs, &rs.simple_root(j)).is_positive())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Q;
    use num_traits::One;

    fn rs(l: &str) -> RootSystem {
        RootSystem::from_label(l).unwrap()
    }

    #[test]
    fn identity_and_simple_reflection() {
        let a2 = rs("A2");
        let lam = Weight::fundamental(2, 1);
        assert_eq!(WeylElement::identity(2).act(&lam), lam);
        let s1 = WeylElement::simple(&a2, 1);
        let alpha1 = a2.root_to_weight(&a2.simple_root(1));
        assert_eq!(s1.act(&lam), lam.sub(&alpha1));
        assert_eq!(s1.inversion_set(&a2), vec![a2.simple_root(1)]);
        assert!(WeylElement::identity(2).inversion_set(&a2).is_empty());
    }

    #[test]
    fn longest_elements() {
        let a1 = rs("A1");
        assert_eq!(longest_element(&a1).word(), &[1]);
        let e6 = rs("E6");
        let w0 = longest_element(&e6);
        assert_eq!(w0.length(), 36);
        assert_eq!(w0.inversion_set(&e6).len(), 36);
        let d5 = rs("D5");
        let w0 = longest_element(&d5);
        assert!(w0.mul(&d5, &w0).is_identity());
        let a3 = rs("A3");
        let w0 = longest_element(&a3);
        assert_eq!(w0.act(&a3.weyl_vector()), a3.weyl_vector().neg());
        let a2 = rs("A2");
        assert_eq!(longest_element(&a2).inversion_set(&a2).len(), 3);
    }

    #[test]
    fn exhaustive_counts() {
        let a2 = rs("A2");
        let t =
            coset_reps_exhaustive(&a2, &[1], ExhaustiveLimits::DEFAULT, Execution::Auto).unwrap();
        assert_eq!(t.len(), 3);
        let d5 = rs("D5");
        let t = coset_reps_exhaustive(&d5, &[4, 5], ExhaustiveLimits::DEFAULT, Execution::Auto)
            .unwrap();
        assert_eq!(t.len(), 480);
        assert!(t.is_minimal(&d5));
        let e8 = rs("E8");
        assert!(matches!(
            coset_reps_exhaustive(&e8, &[8], ExhaustiveLimits::SLOW, Execution::Auto),
            Err(WeylError::CapExceeded { .. })
        ));
    }

    #[test]
    fn levi_counts_from_the_text() {
        let e6 = rs("E6");
        let t = coset_reps_levi_pruned(&e6, &[2, 3, 4, 5, 6], &[1], Execution::Auto).unwrap();
        assert_eq!(t.len(), 21);
        for n in 4..=8 {
            let d = RootSystem::new(crate::rootsys::Series::D, n).unwrap();
            let levi: Vec<Node> = (2..=n).collect();
            let t = coset_reps_levi_pruned(&d, &levi, &[n - 1, n], Execution::Auto).unwrap();
            assert_eq!(t.len(), 2 * n - 3, "D{n}");
        }
        assert!(coset_reps_levi_pruned(&e6, &[2, 3], &[1], Execution::Auto).is_err());
    }

    #[test]
    fn words_are_reduced_and_lengths_step_by_one() {
        let d4 = rs("D4");
        let t =
            coset_reps_exhaustive(&d4, &[], ExhaustiveLimits::DEFAULT, Execution::Auto).unwrap();
        assert_eq!(t.len() as u128, d4.weyl_group_order());
        for w in &t.reps {
            assert_eq!(w.inversion_set(&d4).len(), w.length());
            for j in 1..=4 {
                let ws = w.mul(&d4, &WeylElement::simple(&d4, j));
                assert_eq!((ws.length() as i64 - w.length() as i64).abs(), 1);
            }
        }
    }

    #[test]
    fn affine_inverse_action_matches_matrix_inverse() {
        let e6 = rs("E6");
        let lam = e6.eisenstein_weight(1).unwrap();
        let w = WeylElement::from_word(&e6, &[1, 3, 4, 2, 5, 4]);
        let winv = w.inverse(&e6);
        assert_eq!(w.act_inverse_affine(&e6, &lam), winv.act_affine(&lam));
        assert_eq!(w.act(&winv.act(&e6.weyl_vector())), e6.weyl_vector());
        let _ = Q::one();
    }

    #[test]
    fn json_round_trip_and_corruption() {
        let e6 = rs("E6");
        let t = coset_reps_levi_pruned(&e6, &[2, 3, 4, 5, 6], &[1, 4], Execution::Auto).unwrap();
        let j = t.to_json();
        let back = CosetTable::from_json(&e6, &j).unwrap();
        assert_eq!(back, t);
        let mut bad = j.clone();
        bad.reps[0] = vec![9];
        assert!(CosetTable::from_json(&e6, &bad).is_err());
        assert!(CosetTable::from_json(&rs("E7"), &j).is_err());
    }
}
