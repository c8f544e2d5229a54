//! The symbolic output language: products of completed zeta factors
//! `ξ(a·s+b)^k`, rank-one and rank-two Whittaker blocks `B_m(·)` and
//! `B_{m,n}(·,·)`, and sums of such terms.
//!
//! Vanishing is tracked by an order ledger.  ξ has simple poles at 0 and 1
//! and is finite and nonzero at every other real point, so a factor
//! `ξ(x)^k` contributes order `-k` when `x ∈ {0, 1}` and nothing otherwise.
//! The Whittaker blocks vanish only through their ξ prefactors.

mod parse;
mod render;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{half, q, AffineArg, Q};
use crate::rootsys::Node;

pub use parse::parse_coeff;
pub use render::{affine_latex, RenderFormat};

/// Order of ξ at a real point: −1 at the poles 0 and 1, else 0.
pub fn xi_order_at(x: Q) -> i32 {
    if x.is_zero() || x.is_one() {
        -1
    } else {
        0
    }
}

/// A finite product `Π ξ(arg)^exp`.  The empty product is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<XiFactor>", from = "Vec<XiFactor>")]
pub struct XiProduct {
    factors: BTreeMap<AffineArg, i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiFactor {
    pub arg: AffineArg,
    pub exponent: i32,
}

impl From<XiProduct> for Vec<XiFactor> {
    fn from(p: XiProduct) -> Self {
        p.factors
            .into_iter()
            .map(|(arg, exponent)| XiFactor { arg, exponent })
            .collect()
    }
}

impl From<Vec<XiFactor>> for XiProduct {
    fn from(v: Vec<XiFactor>) -> Self {
        XiProduct::raw(v.into_iter().map(|f| (f.arg, f.exponent)))
    }
}

impl XiProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// Product with arguments kept as given (identical arguments merge).
    pub fn raw(factors: impl IntoIterator<Item = (AffineArg, i32)>) -> Self {
        let mut p = Self::one();
        for (a, e) in factors {
            p.push(a, e);
        }
        p
    }

    /// `ξ(arg)` in canonical form.
    pub fn xi(arg: AffineArg) -> Self {
        Self::raw([(arg.canonical(), 1)])
    }

    pub fn xi_pow(arg: AffineArg, exp: i32) -> Self {
        Self::raw([(arg.canonical(), exp)])
    }

    fn push(&mut self, arg: AffineArg, exp: i32) {
        if exp == 0 {
            return;
        }
        let e = self.factors.entry(arg).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.factors.remove(&arg);
        }
    }

    /// Replace every argument by its representative under `x ↔ 1−x` and
    /// merge.
    pub fn canonicalize(&self) -> Self {
        Self::raw(self.factors.iter().map(|(a, &e)| (a.canonical(), e)))
    }

    pub fn is_canonical(&self) -> bool {
        self.factors.keys().all(|a| a.canonical() == *a)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&AffineArg, i32)> {
        self.factors.iter().map(|(a, &e)| (a, e))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, arg: &AffineArg) -> i32 {
        self.factors.get(arg).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &XiProduct) -> XiProduct {
        let mut p = self.clone();
        for (a, e) in other.factors() {
            p.push(*a, e);
        }
        p
    }

    pub fn inv(&self) -> XiProduct {
        Self::raw(self.factors.iter().map(|(a, &e)| (*a, -e)))
    }

    pub fn div(&self, other: &XiProduct) -> XiProduct {
        self.mul(&other.inv())
    }

    /// Factors with positive exponent.
    pub fn numerator(&self) -> XiProduct {
        Self::raw(
            self.factors
                .iter()
                .filter(|(_, &e)| e > 0)
                .map(|(a, &e)| (*a, e)),
        )
    }

    /// Factors with negative exponent, returned with positive exponents.
    pub fn denominator(&self) -> XiProduct {
        Self::raw(
            self.factors
                .iter()
                .filter(|(_, &e)| e < 0)
                .map(|(a, &e)| (*a, -e)),
        )
    }

    pub fn order_at(&self, s0: Q) -> i32 {
        self.factors
            .iter()
            .map(|(a, &e)| e * xi_order_at(a.eval(s0)))
            .sum()
    }

    /// Order at a generic point: only constant arguments contribute.
    pub fn generic_order(&self) -> i32 {
        self.factors
            .iter()
            .filter(|(a, _)| a.is_constant())
            .map(|(a, &e)| e * xi_order_at(a.offset))
            .sum()
    }

    /// Substitute `s = s0` into every factor that is finite and nonzero there;
    /// factors sitting on a pole keep their `s`-dependence.
    pub fn substitute_finite(&self, s0: Q) -> XiProduct {
        XiProduct::raw(self.factors.iter().map(|(a, &e)| {
            let v = a.eval(s0);
            if xi_order_at(v) == 0 {
                (AffineArg::constant(v).canonical(), e)
            } else {
                (*a, e)
            }
        }))
    }
}

impl fmt::Debug for XiProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XiProduct({})", render::xi_text(self))
    }
}

impl fmt::Display for XiProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::xi_text(self))
    }
}

/// A character charge attached to a simple root.  In symbolic mode the name
/// is an opaque label; numeric evaluation binds it to an integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChargeSlot {
    pub node: Node,
    pub name: String,
}

impl ChargeSlot {
    pub fn new(node: Node, name: impl Into<String>) -> Self {
        Self {
            node,
            name: name.into(),
        }
    }
}

/// Generic Whittaker coefficient of a rank-one or rank-two block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BFactor {
    /// `B_m(s) = 2/ξ(2s) |m|^{s-1/2} σ_{1-2s}(m) K_{s-1/2}(2π|m|)`.
    A1 { slot: ChargeSlot, param: AffineArg },
    /// `B_{m,n}(s1,s2) = K̃_{s1,s2}(m,n) / (ξ(2s1) ξ(2s2) ξ(2s1+2s2-1))`,
    /// parameters in increasing node order.
    A2 {
        slots: [ChargeSlot; 2],
        params: [AffineArg; 2],
    },
}

impl BFactor {
    pub fn a1(node: Node, name: &str, param: AffineArg) -> Self {
        BFactor::A1 {
            slot: ChargeSlot::new(node, name),
            param,
        }
    }

    pub fn params(&self) -> Vec<AffineArg> {
        match self {
            BFactor::A1 { param, .. } => vec![*param],
            BFactor::A2 { params, .. } => params.to_vec(),
        }
    }

    pub fn slots(&self) -> Vec<&ChargeSlot> {
        match self {
            BFactor::A1 { slot, .. } => vec![slot],
            BFactor::A2 { slots, .. } => slots.iter().collect(),
        }
    }

    /// The ξ prefactor that alone controls where the block vanishes.
    pub fn prefactor(&self) -> XiProduct {
        let two = q(2);
        match self {
            BFactor::A1 { param, .. } => XiProduct::raw([(param.scale(two), -1)]),
            BFactor::A2 {
                params: [p1, p2], ..
            } => XiProduct::raw([
                (p1.scale(two), -1),
                (p2.scale(two), -1),
                ((*p1 + *p2).scale(two).shift(-Q::one()), -1),
            ]),
        }
    }

    pub fn order_at(&self, s0: Q) -> i32 {
        self.prefactor().order_at(s0)
    }

    pub fn generic_order(&self) -> i32 {
        self.prefactor().generic_order()
    }

    /// Some parameter is a constant in {0, 1/2}: the restricted weight is not
    /// a generic quasi-character of the block.
    pub fn is_nongeneric(&self) -> bool {
        self.params()
            .iter()
            .any(|p| p.is_constant() && (p.offset.is_zero() || p.offset == half()))
    }

    /// Rewrite the block at the Weyl image of its parameter lying in the
    /// chosen chamber.  With `ν_i = 2s_i − 1` the completed coefficient
    /// `Π_{α>0} ξ(1+⟨α|ν⟩) · B(ν)` is invariant under the block's Weyl group,
    /// so `B(ν) = [Π ξ(1+⟨α|wν⟩) / Π ξ(1+⟨α|ν⟩)] · B(wν)`.  Returns that
    /// ξ-quotient and the rewritten block.
    pub fn orient(&self, o: BlockOrientation) -> (XiProduct, BFactor) {
        let two = q(2);
        let mut nu: Vec<AffineArg> = self
            .params()
            .iter()
            .map(|p| p.scale(two).shift(-Q::one()))
            .collect();
        let before = block_completion(&nu);
        let wrong = |x: &AffineArg| match o {
            BlockOrientation::Rising => lex_sign(x) == Ordering::Less,
            BlockOrientation::Falling => lex_sign(x) == Ordering::Greater,
        };
        while let Some(i) = (0..nu.len()).find(|&i| wrong(&nu[i])) {
            let c = nu[i];
            for (k, x) in nu.iter_mut().enumerate() {
                let a = if k == i { 2 } else { -1 };
                *x = *x - c.scale(q(a));
            }
        }
        let after = block_completion(&nu);
        let params: Vec<AffineArg> = nu.iter().map(|x| x.shift(Q::one()).scale(half())).collect();
        let b = match self {
            BFactor::A1 { slot, .. } => BFactor::A1 {
                slot: slot.clone(),
                param: params[0],
            },
            BFactor::A2 { slots, .. } => BFactor::A2 {
                slots: slots.clone(),
                params: [params[0], params[1]],
            },
        };
        (after.div(&before).canonicalize(), b)
    }

    fn substitute_finite(&self, s0: Q) -> BFactor {
        if self.order_at(s0) != 0 {
            return self.clone();
        }
        let sub = |p: &AffineArg| AffineArg::constant(p.eval(s0));
        match self {
            BFactor::A1 { slot, param } => BFactor::A1 {
                slot: slot.clone(),
                param: sub(param),
            },
            BFactor::A2 { slots, params } => BFactor::A2 {
                slots: slots.clone(),
                params: [sub(&params[0]), sub(&params[1])],
            },
        }
    }
}

/// Sign of an affine function in the lexicographic order on (slope, offset).
fn lex_sign(x: &AffineArg) -> Ordering {
    x.slope.cmp(&Q::zero()).then(x.offset.cmp(&Q::zero()))
}

/// `Π_{α>0} ξ(1+⟨α|ν⟩)` for a rank-one or rank-two type A block.
fn block_completion(nu: &[AffineArg]) -> XiProduct {
    let one = Q::one();
    let mut args: Vec<AffineArg> = nu.iter().map(|x| x.shift(one)).collect();
    if nu.len() == 2 {
        args.push((nu[0] + nu[1]).shift(one));
    }
    XiProduct::raw(args.into_iter().map(|a| (a.canonical(), 1)))
}

/// Which Weyl chamber block parameters are written in.  `Rising` puts every
/// `2s_i − 1` at or above zero in the lexicographic order on
/// (slope, offset), e.g. `B_m(s-3/2)`; `Falling` puts them at or below,
/// e.g. `B_m(5/2-s)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockOrientation {
    #[default]
    Rising,
    Falling,
}

/// Identifies the Weyl coset a term came from: the canonical reduced word of
/// its minimal representative `w` and the integer weight `wρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetRef {
    pub word: Vec<u8>,
    pub key: Vec<i64>,
}

/// One summand: intertwiner times Whittaker blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermExpr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset: Option<CosetRef>,
    pub xi: XiProduct,
    pub bfactors: Vec<BFactor>,
}

impl TermExpr {
    pub fn new(xi: XiProduct, bfactors: Vec<BFactor>) -> Self {
        let mut bfactors = bfactors;
        bfactors.sort();
        Self {
            coset: None,
            xi,
            bfactors,
        }
    }

    pub fn with_coset(mut self, coset: CosetRef) -> Self {
        self.coset = Some(coset);
        self
    }

    /// ξ-product and every block prefactor, multiplied out.
    pub fn full_ledger(&self) -> XiProduct {
        self.bfactors
            .iter()
            .fold(self.xi.clone(), |acc, b| acc.mul(&b.prefactor()))
    }

    pub fn generic_order(&self) -> i32 {
        self.xi.generic_order()
            + self
                .bfactors
                .iter()
                .map(BFactor::generic_order)
                .sum::<i32>()
    }

    /// The term cannot be nonzero for any s.
    pub fn is_identically_zero(&self) -> bool {
        self.bfactors.iter().any(BFactor::is_nongeneric) || self.generic_order() > 0
    }

    pub fn mul(&self, other: &TermExpr) -> TermExpr {
        let mut b = self.bfactors.clone();
        b.extend(other.bfactors.iter().cloned());
        TermExpr::new(self.xi.mul(&other.xi), b)
    }

    /// Every block rewritten in the given chamber, the ξ-product adjusted to
    /// keep the same function.
    pub fn oriented(&self, o: BlockOrientation) -> TermExpr {
        let mut xi = self.xi.canonicalize();
        let mut bfactors = Vec::with_capacity(self.bfactors.len());
        for b in &self.bfactors {
            let (corr, nb) = b.orient(o);
            xi = xi.mul(&corr);
            bfactors.push(nb);
        }
        bfactors.sort();
        TermExpr {
            coset: self.coset.clone(),
            xi,
            bfactors,
        }
    }

    /// Canonical ξ arguments and rising blocks.
    pub fn canonical(&self) -> TermExpr {
        self.oriented(BlockOrientation::Rising)
    }

    fn sort_key(&self) -> (XiProduct, Vec<BFactor>) {
        (self.xi.clone(), self.bfactors.clone())
    }
}

/// Net order of vanishing of a term at `s0`; negative means a pole.
pub fn term_order_at(t: &TermExpr, s0: Q) -> i32 {
    t.xi.order_at(s0) + t.bfactors.iter().map(|b| b.order_at(s0)).sum::<i32>()
}

/// A sum of terms, one per contributing Weyl coset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffExpr {
    pub terms: Vec<TermExpr>,
}

impl CoeffExpr {
    pub fn new(terms: Vec<TermExpr>) -> Self {
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonical arguments, canonical term order.
    pub fn canonical(&self) -> CoeffExpr {
        let mut terms: Vec<TermExpr> = self.terms.iter().map(TermExpr::canonical).collect();
        terms.sort_by(|a, b| {
            a.sort_key()
                .cmp(&b.sort_key())
                .then_with(|| a.coset.cmp(&b.coset))
        });
        CoeffExpr { terms }
    }

    pub fn oriented(&self, o: BlockOrientation) -> CoeffExpr {
        CoeffExpr {
            terms: self.terms.iter().map(|t| t.oriented(o)).collect(),
        }
    }

    /// Equality as expressions: canonical terms compared in canonical order,
    /// ignoring which coset each term came from.
    pub fn symbolic_eq(&self, other: &CoeffExpr) -> bool {
        let strip = |c: &CoeffExpr| -> Vec<(XiProduct, Vec<BFactor>)> {
            c.canonical().terms.iter().map(TermExpr::sort_key).collect()
        };
        strip(self) == strip(other)
    }

    /// Terms sharing block factors and denominator, in order of first
    /// appearance, collected the way sums are usually displayed: `den⁻¹ · (num₁ + num₂ + …) · blocks`.
    pub fn grouped(&self) -> Vec<TermGroup> {
        let mut groups: Vec<TermGroup> = Vec::new();
        for t in &self.terms {
            let xi = t.xi.canonicalize();
            let den = xi.denominator();
            match groups
                .iter_mut()
                .find(|g| g.denominator == den && g.bfactors == t.bfactors)
            {
                Some(g) => g.numerators.push(xi.numerator()),
                None => groups.push(TermGroup {
                    denominator: den,
                    numerators: vec![xi.numerator()],
                    bfactors: t.bfactors.clone(),
                }),
            }
        }
        groups
    }

    pub fn render(&self, fmt: RenderFormat) -> String {
        render::render(self, fmt)
    }

    /// Like [`Self::render`], with terms merged per [`Self::grouped`].
    pub fn render_grouped(&self, fmt: RenderFormat) -> String {
        render::render_grouped(self, fmt)
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderFormat::Text))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermGroup {
    pub denominator: XiProduct,
    pub numerators: Vec<XiProduct>,
    pub bfactors: Vec<BFactor>,
}

/// Terms whose order at the evaluation point is negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleReport {
    #[serde(
        serialize_with = "crate::affine::ser_q",
        deserialize_with = "crate::affine::de_q"
    )]
    pub at: Q,
    /// `(index into the input expression, order)` for each offending term.
    pub offending: Vec<(usize, i32)>,
}

impl fmt::Display for PoleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .offending
            .iter()
            .map(|(i, o)| format!("term {} (order {})", i + 1, o))
            .collect();
        write!(
            f,
            "pole at s = {}: {}",
            crate::affine::fmt_q(&self.at),
            parts.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    /// The surviving terms, with `s = s0` substituted wherever that is finite.
    Terms(CoeffExpr),
    Pole(PoleReport),
}

/// Drop the terms vanishing at `s0`; report a pole if any survivor has one.
pub fn evaluate_symbolic(c: &CoeffExpr, s0: Q) -> Evaluation {
    let mut survivors = Vec::new();
    let mut poles = Vec::new();
    for (i, t) in c.terms.iter().enumerate() {
        let ord = term_order_at(t, s0);
        if ord < 0 {
            poles.push((i, ord));
        } else if ord == 0 {
            let mut sub = t.clone();
            sub.xi = t.xi.substitute_finite(s0);
            sub.bfactors = t.bfactors.iter().map(|b| b.substitute_finite(s0)).collect();
            sub.bfactors.sort();
            survivors.push(sub);
        }
    }
    if poles.is_empty() {
        Evaluation::Terms(CoeffExpr::new(survivors))
    } else {
        Evaluation::Pole(PoleReport {
            at: s0,
            offending: poles,
        })
    }
}

/// Indices of the terms of `c` that survive at `s0` (order exactly zero).
pub fn surviving_indices(c: &CoeffExpr, s0: Q) -> Vec<usize> {
    c.terms
        .iter()
        .enumerate()
        .filter(|(_, t)| term_order_at(t, s0) == 0)
        .map(|(i, _)| i)
        .collect()
}
