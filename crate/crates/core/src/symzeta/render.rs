use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{BFactor, CoeffExpr, TermExpr, TermGroup, XiProduct};
use crate::affine::{AffineArg, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Text,
    Latex,
    Json,
}

pub(super) fn render(c: &CoeffExpr, fmt: RenderFormat) -> String {
    match fmt {
        RenderFormat::Text => join_terms(c, term_text),
        RenderFormat::Latex => join_terms(c, term_latex),
        RenderFormat::Json => serde_json::to_string_pretty(c).expect("expression serializes"),
    }
}

/// Grouped display: `common * (n_1 + n_2 + ...) / den * blocks`.
pub(super) fn render_grouped(c: &CoeffExpr, fmt: RenderFormat) -> String {
    let groups = c.grouped();
    if groups.is_empty() {
        return "0".into();
    }
    match fmt {
        RenderFormat::Json => serde_json::to_string_pretty(&groups).expect("groups serialize"),
        RenderFormat::Text => groups
            .iter()
            .map(group_text)
            .collect::<Vec<_>>()
            .join(" + "),
        RenderFormat::Latex => groups
            .iter()
            .map(group_latex)
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

/// Largest product dividing every numerator, and the quotients.
fn split_common(g: &TermGroup) -> (XiProduct, Vec<XiProduct>) {
    let first = &g.numerators[0];
    let common = XiProduct::raw(first.factors().filter_map(|(a, e)| {
        let m = g
            .numerators
            .iter()
            .map(|n| n.exponent(a))
            .min()
            .unwrap_or(0)
            .min(e);
        (m > 0).then_some((*a, m))
    }));
    let rest = g.numerators.iter().map(|n| n.div(&common)).collect();
    (common, rest)
}

fn group_text(g: &TermGroup) -> String {
    if g.numerators.len() == 1 {
        return term_text(&TermExpr::new(
            g.numerators[0].div(&g.denominator),
            g.bfactors.clone(),
        ));
    }
    let (common, rest) = split_common(g);
    let sum = rest
        .iter()
        .map(|r| {
            if r.is_one() {
                "1".to_string()
            } else {
                factors_text(r)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ");
    let mut num = if common.is_one() {
        String::new()
    } else {
        format!("{} * ", factors_text(&common))
    };
    num.push_str(&format!("({sum})"));
    let mut parts = vec![match g.denominator.len() {
        0 => num,
        1 => format!("{num} / {}", factors_text(&g.denominator)),
        _ => format!("{num} / ({})", factors_text(&g.denominator)),
    }];
    parts.extend(g.bfactors.iter().map(bfactor_text));
    parts.join(" * ")
}

fn group_latex(g: &TermGroup) -> String {
    if g.numerators.len() == 1 {
        return term_latex(&TermExpr::new(
            g.numerators[0].div(&g.denominator),
            g.bfactors.clone(),
        ));
    }
    let (common, rest) = split_common(g);
    let sum = rest
        .iter()
        .map(|r| {
            if r.is_one() {
                "1".to_string()
            } else {
                factors_latex(r)
            }
        })
        .collect::<Vec<_>>()
        .join("+");
    let lead = if common.is_one() {
        String::new()
    } else {
        format!("{}\\,", factors_latex(&common))
    };
    let num = format!("{lead}\\big({sum}\\big)");
    let mut parts = vec![if g.denominator.is_empty() {
        num
    } else {
        format!("\\frac{{{num}}}{{{}}}", factors_latex(&g.denominator))
    }];
    parts.extend(g.bfactors.iter().map(bfactor_latex));
    parts.join("\\,")
}

fn join_terms(c: &CoeffExpr, f: fn(&TermExpr) -> String) -> String {
    if c.terms.is_empty() {
        return "0".into();
    }
    c.terms.iter().map(f).collect::<Vec<_>>().join(" + ")
}

/// Factors in display order: larger arguments first, as in `ξ(2s) ξ(2s-3)`.
fn display_order(p: &XiProduct) -> Vec<(&AffineArg, i32)> {
    let mut v: Vec<_> = p.factors().collect();
    v.reverse();
    v
}

fn factors_text(p: &XiProduct) -> String {
    display_order(p)
        .into_iter()
        .map(|(a, e)| {
            if e == 1 {
                format!("xi({a})")
            } else {
                format!("xi({a})^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// `xi(a)^2 / (xi(b) * xi(c))`, or `1` for the empty product.
pub(super) fn xi_text(p: &XiProduct) -> String {
    let num = p.numerator();
    let den = p.denominator();
    let n = if num.is_empty() {
        "1".to_string()
    } else {
        factors_text(&num)
    };
    match den.len() {
        0 => n,
        1 => format!("{n} / {}", factors_text(&den)),
        _ => format!("{n} / ({})", factors_text(&den)),
    }
}

fn bfactor_text(b: &BFactor) -> String {
    match b {
        BFactor::A1 { slot, param } => format!("B_{}({param})", slot.name),
        BFactor::A2 { slots, params } => format!(
            "B_{{{},{}}}({}, {})",
            slots[0].name, slots[1].name, params[0], params[1]
        ),
    }
}

fn term_text(t: &TermExpr) -> String {
    let mut parts = Vec::new();
    if !t.xi.is_one() || t.bfactors.is_empty() {
        parts.push(xi_text(&t.xi));
    }
    parts.extend(t.bfactors.iter().map(bfactor_text));
    parts.join(" * ")
}

fn q_latex(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        let sign = if x.is_negative() { "-" } else { "" };
        format!("{sign}\\tfrac{{{}}}{{{}}}", x.numer().abs(), x.denom())
    }
}

fn slope_latex(a: Q) -> String {
    if a.is_one() {
        "s".into()
    } else if a.is_integer() {
        format!("{}s", a.numer())
    } else {
        format!("{}s", q_latex(&a))
    }
}

/// `2s-4`, `\tfrac{5}{2}-s`.
pub fn affine_latex(x: &AffineArg) -> String {
    let (a, b) = (x.slope, x.offset);
    if a.is_zero() {
        return q_latex(&b);
    }
    if b.is_zero() {
        return if a.is_negative() {
            format!("-{}", slope_latex(-a))
        } else {
            slope_latex(a)
        };
    }
    if a.is_negative() {
        format!("{}-{}", q_latex(&b), slope_latex(-a))
    } else if b.is_negative() {
        format!("{}-{}", slope_latex(a), q_latex(&-b))
    } else {
        format!("{}+{}", slope_latex(a), q_latex(&b))
    }
}

fn factors_latex(p: &XiProduct) -> String {
    display_order(p)
        .into_iter()
        .map(|(a, e)| {
            if e == 1 {
                format!("\\xi({})", affine_latex(a))
            } else {
                format!("\\xi({})^{{{e}}}", affine_latex(a))
            }
        })
        .collect::<Vec<_>>()
        .join("\\,")
}

fn xi_latex(p: &XiProduct) -> String {
    let num = p.numerator();
    let den = p.denominator();
    let n = if num.is_empty() {
        "1".to_string()
    } else {
        factors_latex(&num)
    };
    if den.is_empty() {
        n
    } else {
        format!("\\frac{{{n}}}{{{}}}", factors_latex(&den))
    }
}

fn bfactor_latex(b: &BFactor) -> String {
    match b {
        BFactor::A1 { slot, param } => format!("B_{{{}}}({})", slot.name, affine_latex(param)),
        BFactor::A2 { slots, params } => format!(
            "B_{{{},{}}}({}, {})",
            slots[0].name,
            slots[1].name,
            affine_latex(&params[0]),
            affine_latex(&params[1])
        ),
    }
}

fn term_latex(t: &TermExpr) -> String {
    let mut parts = Vec::new();
    if !t.xi.is_one() || t.bfactors.is_empty() {
        parts.push(xi_latex(&t.xi));
    }
    parts.extend(t.bfactors.iter().map(bfactor_latex));
    parts.join("\\,")
}
