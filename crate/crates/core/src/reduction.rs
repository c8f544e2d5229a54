//! Degenerate Whittaker coefficients of maximal-parabolic Eisenstein series
//! at the identity, as sums over Weyl cosets W/W' of
//!
//! ```text
//!   M(w⁻¹, λ) · W^{G'}[w⁻¹λ](1),    M(w⁻¹, λ) = Π_{α>0, w⁻¹α<0} ξ(⟨α|λ⟩) / ξ(⟨α|λ⟩+1),
//! ```
//!
//! where G' is the subgroup generated by the support of the character and
//! the block coefficient `W^{G'}` is a product of `B_m` (A1 components) and
//! `B_{m,n}` (A2 components) evaluated at the restricted parameters
//! `s'_j = (⟨w⁻¹λ|α_j⟩ + 1)/2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::affine::{fmt_q, half, AffineArg, ParseError, Q};
use crate::par::{self, Execution};
use crate::rootsys::{
    classify_connected, components, AffineWeight, Node, RootSystem, RootSystemError, Series,
};
use crate::symzeta::{
    evaluate_symbolic, BFactor, ChargeSlot, CoeffExpr, CosetRef, Evaluation, PoleReport, TermExpr,
    XiProduct,
};
use crate::weyl::{
    coset_reps_exhaustive, coset_reps_levi_pruned, CosetStrategy, CosetTable, ExhaustiveLimits,
    WeylElement, WeylError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("character support is empty; use the constant term instead")]
    EmptySupport,
    #[error("charge at node {0} is zero; leave the node out of the support instead")]
    ZeroCharge(Node),
    #[error("support component {nodes:?} is of type {kind}; only A1 and A2 blocks are supported")]
    UnsupportedComponent { nodes: Vec<Node>, kind: String },
    #[error("the Levi-pruned strategy needs λ = 2sΛ_i − ρ with a known inducing node")]
    NoInducingNode,
    #[error("λ has {found} coordinates, the root system has rank {rank}")]
    LambdaRank { found: usize, rank: usize },
    #[error("coset table does not match this request: {0}")]
    TableMismatch(String),
}

/// The charge attached to one support node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Charge {
    Value(i64),
    Symbol(String),
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Charge::Value(v) => write!(f, "{v}"),
            Charge::Symbol(s) => f.write_str(s),
        }
    }
}

/// Simple-root nodes carrying a nonzero character charge.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSupport {
    pub charges: BTreeMap<Node, Charge>,
}

const SLOT_NAMES: [&str; 8] = ["m", "n", "p", "q", "r", "t", "u", "v"];

impl CharacterSupport {
    /// Symbolic charges named `m, n, p, …` in increasing node order.
    pub fn symbolic(nodes: &[Node]) -> Self {
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let charges = sorted
            .into_iter()
            .enumerate()
            .map(|(k, n)| {
                let name = SLOT_NAMES
                    .get(k)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("m{}", k + 1));
                (n, Charge::Symbol(name))
            })
            .collect();
        Self { charges }
    }

    pub fn nodes(&self) -> Vec<Node> {
        self.charges.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.charges.is_empty()
    }

    pub fn slot(&self, node: Node) -> Option<ChargeSlot> {
        self.charges
            .get(&node)
            .map(|c| ChargeSlot::new(node, c.to_string()))
    }

    /// `(name, node)` pairs for reading expressions written with these slots.
    pub fn slot_names(&self) -> Vec<(String, Node)> {
        self.charges
            .iter()
            .map(|(&n, c)| (c.to_string(), n))
            .collect()
    }

    /// Integer values of bound charges.
    pub fn bound_values(&self) -> BTreeMap<Node, i64> {
        self.charges
            .iter()
            .filter_map(|(&n, c)| match c {
                Charge::Value(v) => Some((n, *v)),
                Charge::Symbol(_) => None,
            })
            .collect()
    }

    /// Check nodes and charges, and split the support into its A1/A2 blocks.
    pub fn blocks(&self, rs: &RootSystem) -> Result<Vec<Vec<Node>>, ReductionError> {
        for (&n, c) in &self.charges {
            rs.check_node(n)?;
            if *c == Charge::Value(0) {
                return Err(ReductionError::ZeroCharge(n));
            }
        }
        let comps = components(rs, &self.nodes());
        for comp in &comps {
            let sub: Vec<Vec<i64>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| rs.cartan_entry(i, j)).collect())
                .collect();
            let (series, rank) = classify_connected(&sub);
            if !(series == Series::A && rank <= 2) {
                return Err(ReductionError::UnsupportedComponent {
                    nodes: comp.clone(),
                    kind: format!("{series:?}{rank}"),
                });
            }
        }
        Ok(comps)
    }
}

/// Parses `6:m,8:n` or `1:3,4:-2`.
impl FromStr for CharacterSupport {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut charges = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (node, charge) = part
                .split_once(':')
                .ok_or_else(|| ParseError::new(text, format!("`{part}` is not node:charge")))?;
            let node: Node = node
                .trim()
                .parse()
                .map_err(|_| ParseError::new(text, format!("bad node `{node}`")))?;
            let charge = charge.trim();
            let c = match charge.parse::<i64>() {
                Ok(v) => Charge::Value(v),
                Err(_)
                    if !charge.is_empty() && charge.chars().all(|c| c.is_ascii_alphanumeric()) =>
                {
                    Charge::Symbol(charge.to_string())
                }
                Err(_) => return Err(ParseError::new(text, format!("bad charge `{charge}`"))),
            };
            if charges.insert(node, c).is_some() {
                return Err(ParseError::new(text, format!("node {node} given twice")));
            }
        }
        Ok(Self { charges })
    }
}

/// The Eisenstein series: a root system and an affine weight λ(s).
#[derive(Debug, Clone)]
pub struct EisensteinSpec {
    pub rs: RootSystem,
    pub lambda: AffineWeight,
    /// Set when λ = 2sΛ_i − ρ.
    pub inducing_node: Option<Node>,
}

impl EisensteinSpec {
    /// λ = 2sΛ_node − ρ.
    pub fn maximal_parabolic(rs: RootSystem, node: Node) -> Result<Self, ReductionError> {
        let lambda = rs.eisenstein_weight(node)?;
        Ok(Self {
            rs,
            lambda,
            inducing_node: Some(node),
        })
    }

    pub fn custom(rs: RootSystem, lambda: AffineWeight) -> Result<Self, ReductionError> {
        if lambda.rank() != rs.rank() {
            return Err(ReductionError::LambdaRank {
                found: lambda.rank(),
                rank: rs.rank(),
            });
        }
        Ok(Self {
            rs,
            lambda,
            inducing_node: None,
        })
    }

    pub fn levi(&self) -> Option<Vec<Node>> {
        self.inducing_node
            .map(|i| (1..=self.rs.rank()).filter(|&j| j != i).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive(ExhaustiveLimits),
    LeviPruned,
}

impl Strategy {
    pub fn exhaustive() -> Self {
        Strategy::Exhaustive(ExhaustiveLimits::DEFAULT)
    }
}

/// `M(w⁻¹, λ)`.
pub fn intertwiner(rs: &RootSystem, w: &WeylElement, lambda: &AffineWeight) -> XiProduct {
    let mut p = XiProduct::one();
    for alpha in w.inverse_inversion_set(rs) {
        let x = rs.pair_root_affine(&alpha, lambda);
        p = p
            .mul(&XiProduct::xi(x))
            .div(&XiProduct::xi(x.shift(Q::one())));
    }
    p
}

/// `s'_j = (⟨w⁻¹λ|α_j⟩ + 1)/2` for every support node j.
pub fn restricted_parameters(
    rs: &RootSystem,
    w: &WeylElement,
    lambda: &AffineWeight,
    support: &[Node],
) -> BTreeMap<Node, AffineArg> {
    let mu = w.act_inverse_affine(rs, lambda);
    support
        .iter()
        .map(|&j| (j, mu.0[j - 1].shift(Q::one()).scale(half())))
        .collect()
}

/// The coset table the strategy calls for.
pub fn coset_table(
    spec: &EisensteinSpec,
    support: &[Node],
    strategy: Strategy,
    exec: Execution,
) -> Result<CosetTable, ReductionError> {
    Ok(match strategy {
        Strategy::Exhaustive(limits) => coset_reps_exhaustive(&spec.rs, support, limits, exec)?,
        Strategy::LeviPruned => {
            let levi = spec.levi().ok_or(ReductionError::NoInducingNode)?;
            coset_reps_levi_pruned(&spec.rs, &levi, support, exec)?
        }
    })
}

/// A computed coefficient together with enumeration statistics.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub expr: CoeffExpr,
    /// Cosets visited.
    pub candidates: usize,
    pub strategy: CosetStrategy,
}

/// One term per coset of W/W' whose contribution is not identically zero.
pub fn degenerate_whittaker(
    spec: &EisensteinSpec,
    support: &CharacterSupport,
    strategy: Strategy,
) -> Result<CoeffExpr, ReductionError> {
    degenerate_whittaker_detailed(spec, support, strategy, Execution::Auto).map(|r| r.expr)
}

pub fn degenerate_whittaker_detailed(
    spec: &EisensteinSpec,
    support: &CharacterSupport,
    strategy: Strategy,
    exec: Execution,
) -> Result<Reduction, ReductionError> {
    if support.is_empty() {
        return Err(ReductionError::EmptySupport);
    }
    support.blocks(&spec.rs)?;
    let table = coset_table(spec, &support.nodes(), strategy, exec)?;
    degenerate_whittaker_from_table(spec, support, &table, exec)
}

/// Same as [`degenerate_whittaker_detailed`] with a precomputed coset table.
pub fn degenerate_whittaker_from_table(
    spec: &EisensteinSpec,
    support: &CharacterSupport,
    table: &CosetTable,
    exec: Execution,
) -> Result<Reduction, ReductionError> {
    let blocks = support.blocks(&spec.rs)?;
    if support.is_empty() {
        return Err(ReductionError::EmptySupport);
    }
    if table.group != spec.rs.label() || table.support != support.nodes() {
        return Err(ReductionError::TableMismatch(format!(
            "table for {} {:?}, request for {} {:?}",
            table.group,
            table.support,
            spec.rs.label(),
            support.nodes()
        )));
    }
    if let CosetStrategy::LeviPruned { levi } = &table.strategy {
        if spec.levi().as_ref() != Some(levi) {
            return Err(ReductionError::TableMismatch(format!(
                "Levi subset {levi:?}"
            )));
        }
    }
    let rs = &spec.rs;
    let nodes = support.nodes();
    let terms = par::filter_map(&table.reps, exec, |w| {
        let params = restricted_parameters(rs, w, &spec.lambda, &nodes);
        let bfactors = blocks
            .iter()
            .map(|b| match b.as_slice() {
                [i] => BFactor::A1 {
                    slot: support.slot(*i).expect("support node"),
                    param: params[i],
                },
                [i, j] => BFactor::A2 {
                    slots: [
                        support.slot(*i).expect("support node"),
                        support.slot(*j).expect("support node"),
                    ],
                    params: [params[i], params[j]],
                },
                _ => unreachable!("blocks are validated"),
            })
            .collect();
        let t = TermExpr::new(intertwiner(rs, w, &spec.lambda), bfactors)
            .with_coset(CosetRef {
                word: w.word().to_vec(),
                key: w.key(),
            })
            .canonical();
        (!t.is_identically_zero()).then_some(t)
    });
    Ok(Reduction {
        expr: CoeffExpr::new(terms),
        candidates: table.len(),
        strategy: table.strategy.clone(),
    })
}

/// Constant term at the identity: `Σ M(w⁻¹, λ)` over the cosets with
/// w⁻¹ positive on the Levi roots.
pub fn constant_term(spec: &EisensteinSpec, exec: Execution) -> Result<CoeffExpr, ReductionError> {
    let levi = spec.levi().ok_or(ReductionError::NoInducingNode)?;
    let table = coset_reps_levi_pruned(&spec.rs, &levi, &[], exec)?;
    let terms = par::filter_map(&table.reps, exec, |w| {
        let t =
            TermExpr::new(intertwiner(&spec.rs, w, &spec.lambda), vec![]).with_coset(CosetRef {
                word: w.word().to_vec(),
                key: w.key(),
            });
        (!t.is_identically_zero()).then_some(t)
    });
    Ok(CoeffExpr::new(terms))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EulerianityVerdict {
    /// Exactly one term survives.
    Eulerian {
        term: TermExpr,
    },
    Zero,
    NonEulerian {
        surviving: usize,
    },
    Pole {
        report: PoleReport,
    },
}

impl EulerianityVerdict {
    pub fn is_eulerian(&self) -> bool {
        matches!(self, EulerianityVerdict::Eulerian { .. })
    }
}

impl fmt::Display for EulerianityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EulerianityVerdict::Eulerian { .. } => f.write_str("Eulerian (single term)"),
            EulerianityVerdict::Zero => f.write_str("Zero"),
            EulerianityVerdict::NonEulerian { surviving } => {
                write!(f, "non-Eulerian ({surviving} terms)")
            }
            EulerianityVerdict::Pole { report } => write!(f, "{report}"),
        }
    }
}

/// Classify by the number of terms surviving at `s0` (`None` = generic s).
pub fn eulerianity_report(c: &CoeffExpr, s0: Option<Q>) -> EulerianityVerdict {
    let survivors = match s0 {
        None => CoeffExpr::new(
            c.terms
                .iter()
                .filter(|t| !t.is_identically_zero())
                .cloned()
                .collect(),
        ),
        Some(s0) => match evaluate_symbolic(c, s0) {
            Evaluation::Terms(t) => t,
            Evaluation::Pole(report) => return EulerianityVerdict::Pole { report },
        },
    };
    match survivors.terms.len() {
        0 => EulerianityVerdict::Zero,
        1 => EulerianityVerdict::Eulerian {
            term: survivors.terms.into_iter().next().expect("one term"),
        },
        n => EulerianityVerdict::NonEulerian { surviving: n },
    }
}

/// Exported result: `{group, lambda, support, strategy, terms, verdicts}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub group: String,
    pub lambda: Vec<String>,
    pub support: BTreeMap<Node, Charge>,
    pub strategy: CosetStrategy,
    pub candidates: usize,
    pub terms: Vec<TermExpr>,
    /// Keyed by `generic` or the rational evaluation point.
    pub verdicts: BTreeMap<String, EulerianityVerdict>,
}

pub const RESULT_SCHEMA_VERSION: u32 = 1;

impl ResultRecord {
    pub fn new(
        spec: &EisensteinSpec,
        support: &CharacterSupport,
        r: &Reduction,
        points: &[Option<Q>],
    ) -> Self {
        let verdicts = points
            .iter()
            .map(|p| {
                let key = p.map_or_else(|| "generic".to_string(), |q| fmt_q(&q));
                (key, eulerianity_report(&r.expr, *p))
            })
            .collect();
        Self {
            schema_version: RESULT_SCHEMA_VERSION,
            group: spec.rs.label(),
            lambda: spec.lambda.0.iter().map(ToString::to_string).collect(),
            support: support.charges.clone(),
            strategy: r.strategy.clone(),
            candidates: r.candidates,
            terms: r.expr.terms.clone(),
            verdicts,
        }
    }
}
