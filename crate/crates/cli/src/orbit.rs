//! `orbit` and `pair`: nilpotent orbit data and Whittaker-pair analysis.

use std::fmt::Write;

use degwhit::affine::{fmt_q, parse_q};
use degwhit::orbits::catalog::{find_by_label, find_by_partition, parse_partition};
use degwhit::orbits::{
    covers, dominates, grade_by, isotropic_dimension_check, n_s_phi, neutral_pair_for,
    omega_radical, orbit_catalog, stabilizer, ChevalleyAlgebra, IsotropicCheck, NilpotentOrbit,
    WhittakerPair,
};
use degwhit::rootsys::Root;
use degwhit::{RootSystem, Q};
use serde::Serialize;

use crate::exit::Invalid;
use crate::{OrbitArgs, OutputFormat, PairArgs};

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Invalid(msg.into()))
}

#[derive(Debug, Serialize)]
pub struct OrbitInfo {
    pub label: String,
    pub bala_carter: Option<String>,
    pub dim: u32,
    pub gk_dim: u32,
    pub zero: bool,
    pub minimal: bool,
    pub next_to_minimal: bool,
    /// Orbits whose closure directly covers this one.
    pub covered_by: Vec<String>,
}

fn orbit_info(catalog: &[NilpotentOrbit], o: &NilpotentOrbit) -> OrbitInfo {
    OrbitInfo {
        label: o.label.to_string(),
        bala_carter: o.bala_carter.clone(),
        dim: o.dim,
        gk_dim: o.gk_dim(),
        zero: o.zero,
        minimal: o.minimal,
        next_to_minimal: o.next_to_minimal,
        covered_by: covers(catalog, o)
            .iter()
            .map(|c| c.label.to_string())
            .collect(),
    }
}

pub fn run_orbit(a: &OrbitArgs) -> anyhow::Result<()> {
    let rs = RootSystem::from_label(&a.group)?;
    let catalog = orbit_catalog(&rs);
    let chosen: Vec<&NilpotentOrbit> = if let Some(p) = &a.partition {
        find_by_partition(&catalog, &parse_partition(p)?)
    } else if let Some(l) = &a.label {
        find_by_label(&catalog, l).into_iter().collect()
    } else if a.list {
        catalog.iter().collect()
    } else {
        return Err(invalid("give one of --partition, --label or --list"));
    };
    if chosen.is_empty() {
        return Err(invalid(format!(
            "no such orbit in the {} catalog",
            rs.label()
        )));
    }
    let infos: Vec<OrbitInfo> = chosen.iter().map(|o| orbit_info(&catalog, o)).collect();
    let mut out = String::new();
    match a.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&infos)?)?,
        _ => {
            for i in &infos {
                let mut flags = Vec::new();
                for (on, name) in [
                    (i.zero, "zero"),
                    (i.minimal, "minimal"),
                    (i.next_to_minimal, "next-to-minimal"),
                ] {
                    if on {
                        flags.push(name);
                    }
                }
                let bc = match i.bala_carter.as_deref() {
                    Some(b) if b != i.label => format!(" {b}"),
                    _ => String::new(),
                };
                writeln!(out, "{}{bc}: dim {}, GK dim {}", i.label, i.dim, i.gk_dim)?;
                if !flags.is_empty() {
                    writeln!(out, "  {}", flags.join(", "))?;
                }
                if !i.covered_by.is_empty() {
                    writeln!(out, "  covered by: {}", i.covered_by.join(", "))?;
                }
            }
        }
    }
    crate::emit(&out)
}

/// A simple-root node (`3`) or simple-root coordinates (`[1,1,0]`).
fn parse_root(rs: &RootSystem, text: &str) -> anyhow::Result<Root> {
    let t = text.trim();
    let root = if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| invalid(format!("bad coordinate in `{t}`")))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Root(coords)
    } else {
        let node: usize = t.parse().map_err(|_| invalid(format!("bad root `{t}`")))?;
        rs.check_node(node)?;
        rs.simple_root(node)
    };
    if !rs.is_root(&root) {
        return Err(invalid(format!("{t} is not a root of {}", rs.label())));
    }
    Ok(root)
}

fn parse_root_charges(rs: &RootSystem, items: &[String]) -> anyhow::Result<Vec<(Root, Q)>> {
    let mut out = Vec::new();
    for item in items
        .iter()
        .flat_map(|s| s.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        let (r, c) = item
            .rsplit_once(':')
            .ok_or_else(|| invalid(format!("`{item}` is not ROOT:CHARGE")))?;
        out.push((parse_root(rs, r)?, parse_q(c.trim())?));
    }
    if out.is_empty() {
        return Err(invalid("no ROOT:CHARGE terms given"));
    }
    Ok(out)
}

fn parse_values(text: &str, rank: usize) -> anyhow::Result<Vec<Q>> {
    let v = text
        .split(',')
        .map(|x| parse_q(x.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != rank {
        return Err(invalid(format!(
            "`{text}` has {} values, rank is {rank}",
            v.len()
        )));
    }
    Ok(v)
}

#[derive(Debug, Serialize)]
pub struct DominanceResult {
    pub s: Vec<String>,
    pub dominated: bool,
}

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub group: String,
    pub pair: WhittakerPair,
    /// Set when the pair came from a neutral triple; the sl2 relations hold exactly.
    pub sl2_relations: Option<bool>,
    /// Dimension of each S-eigenspace, keyed by eigenvalue.
    pub grading: Vec<(String, usize)>,
    pub stabilizer_dim: usize,
    pub n_dim: usize,
    pub radical_matches: bool,
    pub dominance: Vec<DominanceResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isotropic: Option<IsotropicCheck>,
}

pub fn analyze_pair(a: &PairArgs) -> anyhow::Result<PairReport> {
    let rs = RootSystem::from_label(&a.group)?;
    let alg = ChevalleyAlgebra::new(&rs);
    let (pair, sl2) = if !a.neutral.is_empty() {
        let np = neutral_pair_for(&alg, &parse_root_charges(&rs, &a.neutral)?)?;
        (np.pair, Some(true))
    } else if let Some(s) = &a.s {
        let phi = parse_root_charges(&rs, &a.phi)?;
        (
            WhittakerPair::new(&alg, parse_values(s, rs.rank())?, phi)?,
            None,
        )
    } else {
        return Err(invalid("give --neutral, or --s with --phi"));
    };
    let grading = grade_by(&alg, &pair.s)
        .dims()
        .into_iter()
        .map(|(k, d)| (fmt_q(&k), d))
        .collect();
    let n = n_s_phi(&alg, &pair);
    let rad = omega_radical(&alg, &pair);
    let mut dominance = Vec::new();
    for text in &a.dominates {
        let other = pair.with_s(&alg, parse_values(text, rs.rank())?)?;
        dominance.push(DominanceResult {
            s: other.s.iter().map(fmt_q).collect(),
            dominated: dominates(&alg, &pair, &other)?,
        });
    }
    let isotropic = match &a.orbit {
        Some(label) => {
            let catalog = orbit_catalog(&rs);
            let o = find_by_label(&catalog, label).ok_or_else(|| {
                invalid(format!("no orbit `{label}` in the {} catalog", rs.label()))
            })?;
            Some(isotropic_dimension_check(&alg, &pair, o))
        }
        None => None,
    };
    Ok(PairReport {
        group: rs.label(),
        sl2_relations: sl2,
        grading,
        stabilizer_dim: stabilizer(&alg, &pair).dim(),
        n_dim: n.dim(),
        radical_matches: n.contains_subspace(&rad) && rad.contains_subspace(&n),
        dominance,
        isotropic,
        pair,
    })
}

pub fn run_pair(a: &PairArgs) -> anyhow::Result<()> {
    let r = analyze_pair(a)?;
    let mut out = String::new();
    if a.format == OutputFormat::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
        return crate::emit(&out);
    }
    writeln!(out, "group: {}", r.group)?;
    writeln!(
        out,
        "S: [{}]",
        r.pair.s.iter().map(fmt_q).collect::<Vec<_>>().join(", ")
    )?;
    let phi: Vec<String> = r
        .pair
        .phi
        .iter()
        .map(|(root, c)| format!("{:?}:{}", root.0, fmt_q(c)))
        .collect();
    writeln!(out, "f_phi: {}", phi.join(" + "))?;
    if r.sl2_relations == Some(true) {
        writeln!(out, "sl2 relations: verified")?;
    }
    let g: Vec<String> = r.grading.iter().map(|(k, d)| format!("{k}:{d}")).collect();
    writeln!(out, "grading dims: {}", g.join(" "))?;
    writeln!(out, "stabilizer dim: {}", r.stabilizer_dim)?;
    writeln!(out, "n_S,phi dim: {}", r.n_dim)?;
    writeln!(
        out,
        "radical of omega equals n_S,phi: {}",
        r.radical_matches
    )?;
    for d in &r.dominance {
        writeln!(out, "dominates S' = [{}]: {}", d.s.join(", "), d.dominated)?;
    }
    if let Some(i) = &r.isotropic {
        writeln!(
            out,
            "isotropic check: dim n = {}, dim g_1 = {}, I_max = {}, orbit dim = {}, holds: {}",
            i.n_dim, i.g1_dim, i.i_max, i.orbit_dim, i.holds
        )?;
    }
    crate::emit(&out)
}
