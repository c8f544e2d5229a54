//! Floating-point evaluation of symbolic results.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::rootsys::Node;
use crate::symzeta::{BFactor, CoeffExpr, TermExpr, XiProduct};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumevalError {
    #[error("ξ has a pole at {x} (within {tol:e} of 0 or 1)")]
    Pole { x: f64, tol: f64 },
    #[error("{what} outside the supported domain: {detail}")]
    Domain { what: &'static str, detail: String },
    #[error("no numeric kernel for the rank-two block B_{{{0}}}; it is symbolic only")]
    RankTwoKernel(String),
    #[error("charge at node {0} is not bound to an integer")]
    UnboundCharge(Node),
    #[error("invalid numeric configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    /// Target relative error.
    pub target: f64,
    /// Terms in the alternating zeta series.
    pub zeta_terms: usize,
    /// Distance from 0 or 1 below which ξ counts as a pole.
    pub pole_tolerance: f64,
    /// Cap on step halvings in the Bessel quadrature.
    pub bessel_max_refinements: u32,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            target: 1e-10,
            zeta_terms: 32,
            pole_tolerance: 1e-9,
            bessel_max_refinements: 12,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<(), NumevalError> {
        if !(self.target > 0.0 && self.target < 1e-4) {
            return Err(NumevalError::Config(format!(
                "target {} not in (0, 1e-4)",
                self.target
            )));
        }
        if self.zeta_terms < 8 {
            return Err(NumevalError::Config("zeta_terms must be at least 8".into()));
        }
        Ok(())
    }
}

/// ζ(x) for real x ≥ 1/2, x ≠ 1, by the Borwein alternating-series
/// acceleration of the eta function.
fn zeta_right_half(x: f64, n: usize) -> f64 {
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!), built incrementally.
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / nf; // i = 0 term divided by n
    let mut acc = term;
    d.push(nf * acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= (nf + fi - 1.0) * 4.0 * (nf - fi + 1.0) / ((2.0 * fi - 1.0) * (2.0 * fi));
        acc += term;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = 0.0;
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - dn) / ((k + 1) as f64).powf(x);
    }
    -sum / (dn * (1.0 - 2f64.powf(1.0 - x)))
}

/// Riemann ζ at a real point; reflects through the functional equation for
/// x < 1/2.
pub fn zeta(x: f64, cfg: &NumericConfig) -> Result<f64, NumevalError> {
    if (x - 1.0).abs() < cfg.pole_tolerance {
        return Err(NumevalError::Pole {
            x,
            tol: cfg.pole_tolerance,
        });
    }
    if x >= 0.5 {
        return Ok(zeta_right_half(x, cfg.zeta_terms));
    }
    // ζ(x) = ξ(1−x) / (π^{−x/2} Γ(x/2)); trivial zeros come out as 1/Γ poles.
    let g = gamma(x / 2.0);
    let r = xi_num(1.0 - x, cfg)?;
    if !g.is_finite() {
        return Ok(0.0);
    }
    Ok(r / (PI.powf(-x / 2.0) * g))
}

/// Completed zeta `ξ(x) = π^{−x/2} Γ(x/2) ζ(x)`.
pub fn xi_num(x: f64, cfg: &NumericConfig) -> Result<f64, NumevalError> {
    if x.abs() < cfg.pole_tolerance || (x - 1.0).abs() < cfg.pole_tolerance {
        return Err(NumevalError::Pole {
            x,
            tol: cfg.pole_tolerance,
        });
    }
    let y = if x < 0.5 { 1.0 - x } else { x };
    let z = zeta_right_half(y, cfg.zeta_terms);
    if y > 300.0 {
        return Err(NumevalError::Domain {
            what: "ξ argument",
            detail: format!("|{x}| too large for double precision"),
        });
    }
    Ok(PI.powf(-y / 2.0) * gamma(y / 2.0) * z)
}

/// `Σ_{d|m} d^t` for `m ≠ 0` (sign ignored), from the prime factorization.
pub fn divisor_sigma(t: f64, m: i64) -> Result<f64, NumevalError> {
    if m == 0 {
        return Err(NumevalError::Domain {
            what: "divisor sum",
            detail: "m = 0".into(),
        });
    }
    let mut n = m.unsigned_abs();
    let mut out = 1.0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let pt = (p as f64).powf(t);
            let (mut sum, mut pow) = (1.0, 1.0);
            while n % p == 0 {
                n /= p;
                pow *= pt;
                sum += pow;
            }
            out *= sum;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out *= 1.0 + (n as f64).powf(t);
    }
    Ok(out)
}

/// Trapezoid sum of the scaled integrand `exp(−x(cosh t − 1) + |ν|t) ·
/// (1 + e^{−2|ν|t})/2` on `t ≥ 0`, relative to its peak exponent.  Returns
/// `(sum·h, peak)`.
fn bessel_trapezoid(nu: f64, x: f64, h: f64) -> (f64, f64) {
    let f = |t: f64| {
        -x * (t.cosh() - 1.0) + nu * t + (-(2.0 * nu * t)).exp().ln_1p() - std::f64::consts::LN_2
    };
    let peak_t = (nu / x).asinh();
    let peak = f(peak_t);
    let mut sum = 0.5 * (f(0.0) - peak).exp();
    let mut k = 1u64;
    loop {
        let t = k as f64 * h;
        let e = f(t) - peak;
        sum += e.exp();
        if t > peak_t && e < -50.0 {
            break;
        }
        k += 1;
    }
    (sum * h, peak)
}

/// Modified Bessel function of the second kind, `K_ν(x)` for real ν and x > 0,
/// from `K_ν(x) = ∫_0^∞ e^{−x cosh t} cosh(νt) dt`.
pub fn bessel_k(nu: f64, x: f64, cfg: &NumericConfig) -> Result<f64, NumevalError> {
    if !(x > 0.0) || !x.is_finite() || !nu.is_finite() {
        return Err(NumevalError::Domain {
            what: "Bessel K",
            detail: format!("nu = {nu}, x = {x}"),
        });
    }
    let nu = nu.abs();
    let mut h = (0.5 / x).sqrt().min(0.25);
    let (mut prev, peak) = bessel_trapezoid(nu, x, h);
    for _ in 0..cfg.bessel_max_refinements {
        h /= 2.0;
        let (cur, _) = bessel_trapezoid(nu, x, h);
        let done = (cur - prev).abs() <= cfg.target * 0.1 * cur.abs();
        prev = cur;
        if done {
            break;
        }
    }
    let log_scale = peak - x;
    if log_scale > 700.0 {
        return Err(NumevalError::Domain {
            what: "Bessel K",
            detail: format!("K_{nu}({x}) overflows"),
        });
    }
    Ok(prev * log_scale.exp())
}

/// `B_m(s) = 2/ξ(2s) |m|^{s−1/2} σ_{1−2s}(m) K_{s−1/2}(2π|m|)`.
pub fn rank_one_block(m: i64, s: f64, cfg: &NumericConfig) -> Result<f64, NumevalError> {
    let am = m.unsigned_abs() as f64;
    let xi = xi_num(2.0 * s, cfg)?;
    let sigma = divisor_sigma(1.0 - 2.0 * s, m)?;
    let k = bessel_k(s - 0.5, 2.0 * PI * am, cfg)?;
    Ok(2.0 / xi * am.powf(s - 0.5) * sigma * k)
}

pub fn eval_xi_product(p: &XiProduct, s0: f64, cfg: &NumericConfig) -> Result<f64, NumevalError> {
    p.factors().try_fold(1.0, |acc, (a, e)| {
        Ok(acc * xi_num(a.eval_f64(s0), cfg)?.powi(e))
    })
}

/// Value of one term at `s0` with charges bound by node.
pub fn eval_term(
    t: &TermExpr,
    s0: f64,
    charges: &BTreeMap<Node, i64>,
    cfg: &NumericConfig,
) -> Result<f64, NumevalError> {
    let mut v = eval_xi_product(&t.xi, s0, cfg)?;
    for b in &t.bfactors {
        match b {
            BFactor::A1 { slot, param } => {
                let m = *charges
                    .get(&slot.node)
                    .ok_or(NumevalError::UnboundCharge(slot.node))?;
                v *= rank_one_block(m, param.eval_f64(s0), cfg)?;
            }
            BFactor::A2 { slots, .. } => {
                return Err(NumevalError::RankTwoKernel(format!(
                    "{},{}",
                    slots[0].name, slots[1].name
                )));
            }
        }
    }
    Ok(v)
}

pub fn eval_coeff(
    c: &CoeffExpr,
    s0: f64,
    charges: &BTreeMap<Node, i64>,
    cfg: &NumericConfig,
) -> Result<f64, NumevalError> {
    c.terms
        .iter()
        .try_fold(0.0, |acc, t| Ok(acc + eval_term(t, s0, charges, cfg)?))
}

/// A number with its error estimate, serialized as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericValue {
    pub value: String,
    pub rel_error: String,
}

impl NumericValue {
    pub fn new(value: f64, cfg: &NumericConfig) -> Self {
        Self {
            value: format!("{value:.15e}"),
            rel_error: format!("{:.0e}", cfg.target),
        }
    }
}

/// One sample of the comparison between `B_m(s)` and `B_m(1−s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectionSample {
    pub m: i64,
    pub s: f64,
    /// `|B_m(s) / B_m(1−s) − 1|`.
    pub raw_mismatch: f64,
    /// Same for the completed coefficient `ξ(2s)·B_m(s)`.
    pub completed_mismatch: f64,
}

/// How far `B_m(s) = B_m(1−s)` is from holding, raw and completed, on the
/// given samples.
pub fn block_reflection_report(
    samples: &[(i64, f64)],
    cfg: &NumericConfig,
) -> Result<Vec<ReflectionSample>, NumevalError> {
    samples
        .iter()
        .map(|&(m, s)| {
            let a = rank_one_block(m, s, cfg)?;
            let b = rank_one_block(m, 1.0 - s, cfg)?;
            let ca = a * xi_num(2.0 * s, cfg)?;
            let cb = b * xi_num(2.0 - 2.0 * s, cfg)?;
            Ok(ReflectionSample {
                m,
                s,
                raw_mismatch: (a / b - 1.0).abs(),
                completed_mismatch: (ca / cb - 1.0).abs(),
            })
        })
        .collect()
}
