//! `coeff`: one degenerate Whittaker coefficient with its verdicts.

use std::path::PathBuf;

use anyhow::Context;
use clap::ValueEnum;
use degwhit::affine::{fmt_q, parse_q};
use degwhit::numeval::{eval_coeff, NumericConfig, NumericValue, NumevalError};
use degwhit::reduction::{
    degenerate_whittaker_from_table, CharacterSupport, Charge, EisensteinSpec, EulerianityVerdict,
    ResultRecord, Strategy,
};
use degwhit::symzeta::{
    evaluate_symbolic, BFactor, BlockOrientation, CoeffExpr, Evaluation, RenderFormat,
};
use degwhit::weyl::ExhaustiveLimits;
use degwhit::{Execution, Node, RootSystem, Q};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cache::{CacheOutcome, TableCache, CACHE_ENV};
use crate::config::ConfigFile;
use crate::exit::{Invalid, PoleAt};
use crate::{Blocks, CoeffArgs, OutputFormat, StrategyArg};

/// A validated `coeff` request.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub spec: EisensteinSpec,
    pub node: Node,
    pub support: CharacterSupport,
    pub s: Option<Q>,
    pub strategy: Strategy,
    pub format: OutputFormat,
    pub blocks: BlockOrientation,
    pub grouped: bool,
    pub cache_dir: Option<PathBuf>,
    pub numeric: NumericConfig,
}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Invalid(msg.into()))
}

fn value_enum<T: ValueEnum>(key: &str, text: &str) -> anyhow::Result<T> {
    T::from_str(text, true).map_err(|_| invalid(format!("bad value `{text}` for {key}")))
}

/// `6:m,8:n`, `1:3` or a bare node list `6,8` (charges named in node order).
pub fn parse_support(text: &str) -> anyhow::Result<CharacterSupport> {
    if text.contains(':') {
        return Ok(text.parse::<CharacterSupport>()?);
    }
    let nodes = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<Node>()
                .map_err(|_| invalid(format!("bad node `{p}` in `{text}`")))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(CharacterSupport::symbolic(&nodes))
}

pub fn parse_point(text: &str) -> anyhow::Result<Option<Q>> {
    if text.trim().eq_ignore_ascii_case("generic") {
        Ok(None)
    } else {
        Ok(Some(parse_q(text)?))
    }
}

impl JobSpec {
    /// Flags first, then the config file, then the environment for the cache.
    pub fn resolve(a: &CoeffArgs) -> anyhow::Result<Self> {
        let file = match &a.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let group = a
            .group
            .clone()
            .or(file.group)
            .ok_or_else(|| invalid("--group is required"))?;
        let node = a
            .node
            .or(file.node)
            .ok_or_else(|| invalid("--node is required"))?;
        let support_text = a
            .support
            .clone()
            .or(file.support)
            .ok_or_else(|| invalid("--support is required"))?;
        let rs = RootSystem::from_label(&group)?;
        let spec = EisensteinSpec::maximal_parabolic(rs, node)?;
        let support = parse_support(&support_text)?;
        if support.is_empty() {
            return Err(invalid("--support names no nodes"));
        }
        let s = match a.s.clone().or(file.s) {
            Some(t) => parse_point(&t)?,
            None => None,
        };
        let format = match (a.format, &file.format) {
            (Some(f), _) => f,
            (None, Some(t)) => value_enum("format", t)?,
            (None, None) => OutputFormat::Text,
        };
        let blocks = match (a.blocks, &file.blocks) {
            (Some(b), _) => b,
            (None, Some(t)) => value_enum("blocks", t)?,
            (None, None) => Blocks::Rising,
        };
        let strategy = match (a.strategy, &file.strategy) {
            (Some(x), _) => x,
            (None, Some(t)) => value_enum("strategy", t)?,
            (None, None) => StrategyArg::Pruned,
        };
        let slow = a.slow || file.slow.unwrap_or(false);
        let strategy = match strategy {
            StrategyArg::Pruned => Strategy::LeviPruned,
            StrategyArg::Exhaustive if slow => Strategy::Exhaustive(ExhaustiveLimits::SLOW),
            StrategyArg::Exhaustive => Strategy::exhaustive(),
        };
        let cache_dir = a
            .cache_dir
            .clone()
            .or_else(|| {
                std::env::var_os(CACHE_ENV)
                    .filter(|v| !v.is_empty())
                    .map(PathBuf::from)
            })
            .or(file.cache_dir);
        let numeric = file.numeric.to_config();
        numeric.validate()?;
        Ok(Self {
            spec,
            node,
            support,
            s,
            strategy,
            format,
            blocks: match blocks {
                Blocks::Rising => BlockOrientation::Rising,
                Blocks::Falling => BlockOrientation::Falling,
            },
            grouped: a.grouped || file.grouped.unwrap_or(false),
            cache_dir,
            numeric,
        })
    }

    pub fn support_label(&self) -> String {
        self.support
            .charges
            .iter()
            .map(|(n, c)| format!("{n}:{c}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Numeric value at the requested point, when one is defined.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NumericOutcome {
    Value {
        at: String,
        #[serde(flatten)]
        value: NumericValue,
    },
    Unavailable {
        reason: String,
    },
}

fn to_f64(x: Q) -> f64 {
    x.to_f64().expect("rational converts")
}

/// Only when every charge is an integer and `s` is a number.
fn numeric_value(job: &JobSpec, expr: &CoeffExpr) -> Option<NumericOutcome> {
    let s0 = job.s?;
    if job
        .support
        .charges
        .values()
        .any(|c| matches!(c, Charge::Symbol(_)))
    {
        return None;
    }
    let survivors = match evaluate_symbolic(expr, s0) {
        Evaluation::Terms(t) => t,
        Evaluation::Pole(_) => return None,
    };
    if let Some(b) = survivors
        .terms
        .iter()
        .flat_map(|t| &t.bfactors)
        .find(|b| matches!(b, BFactor::A2 { .. }))
    {
        let names: Vec<&str> = b.slots().iter().map(|s| s.name.as_str()).collect();
        return Some(NumericOutcome::Unavailable {
            reason: NumevalError::RankTwoKernel(names.join(",")).to_string(),
        });
    }
    match eval_coeff(
        &survivors,
        to_f64(s0),
        &job.support.bound_values(),
        &job.numeric,
    ) {
        Ok(v) => Some(NumericOutcome::Value {
            at: fmt_q(&s0),
            value: NumericValue::new(v, &job.numeric),
        }),
        Err(e @ NumevalError::Pole { .. }) => Some(NumericOutcome::Unavailable {
            reason: format!("removable singularity at s = {}: {e}", fmt_q(&s0)),
        }),
        Err(e) => Some(NumericOutcome::Unavailable {
            reason: e.to_string(),
        }),
    }
}

#[derive(Serialize)]
struct CoeffJson {
    #[serde(flatten)]
    record: ResultRecord,
    node: Node,
    blocks: BlockOrientation,
    text: String,
    latex: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<NumericOutcome>,
}

/// Everything `coeff` prints, before formatting.
pub struct CoeffOutcome {
    pub expr: CoeffExpr,
    pub record: ResultRecord,
    pub numeric: Option<NumericOutcome>,
    pub cache: CacheOutcome,
}

pub fn compute(job: &JobSpec) -> anyhow::Result<CoeffOutcome> {
    let cache = TableCache::new(job.cache_dir.clone());
    job.support.blocks(&job.spec.rs)?;
    let (table, outcome) = cache
        .table(
            &job.spec,
            &job.support.nodes(),
            job.strategy,
            Execution::Auto,
        )
        .context("enumerating cosets")?;
    let mut r = degenerate_whittaker_from_table(&job.spec, &job.support, &table, Execution::Auto)?;
    r.expr = r.expr.oriented(job.blocks);
    let mut points = vec![None];
    if job.s.is_some() {
        points.push(job.s);
    }
    let record = ResultRecord::new(&job.spec, &job.support, &r, &points);
    let numeric = numeric_value(job, &r.expr);
    Ok(CoeffOutcome {
        expr: r.expr,
        record,
        numeric,
        cache: outcome,
    })
}

fn render(job: &JobSpec, c: &CoeffExpr, fmt: RenderFormat) -> String {
    if job.grouped {
        c.render_grouped(fmt)
    } else {
        c.render(fmt)
    }
}

fn verdict_key(s: Option<Q>) -> String {
    s.map_or_else(|| "generic".to_string(), |q| fmt_q(&q))
}

fn point_label(s: Option<Q>) -> String {
    s.map_or_else(|| "generic s".to_string(), |q| format!("s = {}", fmt_q(&q)))
}

pub fn format_outcome(job: &JobSpec, o: &CoeffOutcome) -> String {
    let points: Vec<Option<Q>> = std::iter::once(None).chain(job.s.map(Some)).collect();
    let group = o.record.group.as_str();
    let mut out = String::new();
    match job.format {
        OutputFormat::Json => {
            let j = CoeffJson {
                record: o.record.clone(),
                node: job.node,
                blocks: job.blocks,
                text: render(job, &o.expr, RenderFormat::Text),
                latex: render(job, &o.expr, RenderFormat::Latex),
                numeric: o.numeric.clone(),
            };
            out.push_str(&serde_json::to_string_pretty(&j).expect("result serializes"));
            out.push('\n');
        }
        OutputFormat::Latex => {
            out.push_str(&format!(
                "% {group}, node {}, support {}\n",
                job.node,
                job.support_label()
            ));
            out.push_str(&render(job, &o.expr, RenderFormat::Latex));
            out.push('\n');
            for p in &points {
                out.push_str(&format!(
                    "% {}: {}\n",
                    point_label(*p),
                    o.record.verdicts[&verdict_key(*p)]
                ));
            }
        }
        OutputFormat::Text => {
            out.push_str(&format!("group: {group}, node {}\n", job.node));
            out.push_str(&format!("support: {}\n", job.support_label()));
            let strategy = match job.strategy {
                Strategy::LeviPruned => "levi-pruned",
                Strategy::Exhaustive(_) => "exhaustive",
            };
            out.push_str(&format!(
                "strategy: {strategy}, cosets: {}, terms: {}\n",
                o.record.candidates,
                o.expr.len()
            ));
            out.push_str(&format!(
                "coefficient: {}\n",
                render(job, &o.expr, RenderFormat::Text)
            ));
            for p in &points {
                let v = &o.record.verdicts[&verdict_key(*p)];
                out.push_str(&format!("verdict at {}: {v}\n", point_label(*p)));
                if let (Some(_), EulerianityVerdict::Eulerian { term }) = (p, v) {
                    let t = CoeffExpr::new(vec![term.clone()]);
                    out.push_str(&format!(
                        "  surviving term: {}\n",
                        t.render(RenderFormat::Text)
                    ));
                }
            }
            match &o.numeric {
                Some(NumericOutcome::Value { at, value }) => {
                    out.push_str(&format!(
                        "value at s = {at}: {} (rel. error {})\n",
                        value.value, value.rel_error
                    ));
                }
                Some(NumericOutcome::Unavailable { reason }) => {
                    out.push_str(&format!("value: unavailable ({reason})\n"));
                }
                None => {}
            }
        }
    }
    out
}

pub fn run(a: &CoeffArgs) -> anyhow::Result<()> {
    let job = JobSpec::resolve(a)?;
    let o = compute(&job)?;
    if o.cache != CacheOutcome::Disabled {
        eprintln!("coset table cache: {:?}", o.cache);
    }
    crate::emit(&format_outcome(&job, &o))?;
    if let Some(s) = job.s {
        if let Some(EulerianityVerdict::Pole { report }) = o.record.verdicts.get(&fmt_q(&s)) {
            return Err(anyhow::Error::new(PoleAt(report.clone())));
        }
    }
    Ok(())
}
