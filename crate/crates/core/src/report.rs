//! Scope selection, table rendering and parallel orchestration of checks.

use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::appendix::{derived_row, fmt_set};
use crate::checks::{run_checks, CheckKind, CheckReport};
use crate::eisenstein::{eisenstein_poles, PoleReport};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicDatum;
use crate::rational::Q;
use crate::rootsystem::{CartanType, Series};

/// `(type, node)` pairs selected by optional series, rank and node filters.
///
/// Without a rank, classical series run over `2..=max_classical` (A and D from
/// their smallest ranks) and exceptional series over their usual ranks.
pub fn select(
    series: Option<Series>,
    rank: Option<usize>,
    node: Option<usize>,
    max_classical: usize,
) -> Result<Vec<(CartanType, usize)>> {
    let types: Vec<CartanType> = match (series, rank) {
        (Some(s), Some(r)) => vec![CartanType::new(s, r)?],
        (Some(s), None) => CartanType::classical(max_classical, 4)
            .into_iter()
            .chain(CartanType::exceptional())
            .filter(|c| c.series() == s)
            .collect(),
        (None, None) => CartanType::classical(max_classical, 4)
            .into_iter()
            .chain(CartanType::exceptional())
            .collect(),
        (None, Some(_)) => return Err(Error::Usage("--rank requires --type".into())),
    };
    let mut out = Vec::new();
    for c in types {
        match node {
            Some(n) if n == 0 || n > c.rank() => {
                return Err(Error::Usage(format!("node {n} is out of range for {c}")));
            }
            Some(n) => out.push((c, n)),
            None => out.extend((1..=c.rank()).map(|n| (c, n))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::Usage(format!("unknown format `{s}`"))),
        }
    }
}

/// Serializes through `serde_json::Value`, whose maps keep keys sorted.
pub fn sorted_json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("serializable report");
    serde_json::to_string_pretty(&v).expect("json value")
}

#[derive(Debug, Clone, Serialize)]
struct TableRow {
    node: usize,
    levels: std::collections::BTreeMap<String, Vec<String>>,
    s_k: String,
}

#[derive(Debug, Clone, Serialize)]
struct Table {
    #[serde(rename = "type")]
    cartan: CartanType,
    rows: Vec<TableRow>,
}

fn latex_q(x: Q) -> String {
    let sign = if x < Q::from_integer(0) { "-" } else { "" };
    let a = if x < Q::from_integer(0) { -x } else { x };
    if a.is_integer() {
        format!("{sign}{}", a.numer())
    } else {
        format!("{sign}\\tfrac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

/// A table with its raw level columns and `s_k` values, one per row.
type RawTable = (Table, Vec<Vec<Vec<Q>>>, Vec<Q>);

/// Derived `L(d)` columns and `s_k` for each selected node, grouped by type.
pub fn render_tables(scope: &[(CartanType, usize)], format: Format) -> Result<String> {
    let mut tables: Vec<RawTable> = Vec::new();
    for &(c, n) in scope {
        let p = ParabolicDatum::from_type(c, n)?;
        let (levels, s_k) = derived_row(&p);
        if tables.last().map(|t| t.0.cartan) != Some(c) {
            tables.push((
                Table {
                    cartan: c,
                    rows: Vec::new(),
                },
                Vec::new(),
                Vec::new(),
            ));
        }
        let t = tables.last_mut().expect("just pushed");
        let width = levels.keys().max().copied().unwrap_or(1) as usize;
        t.1.push(
            (1..=width as u32)
                .map(|d| levels.get(&d).cloned().unwrap_or_default())
                .collect(),
        );
        t.2.push(s_k);
        t.0.rows.push(TableRow {
            node: n,
            levels: levels
                .iter()
                .map(|(d, v)| (d.to_string(), v.iter().map(ToString::to_string).collect()))
                .collect(),
            s_k: s_k.to_string(),
        });
    }
    let mut out = String::new();
    match format {
        Format::Json => {
            let all: Vec<&Table> = tables.iter().map(|t| &t.0).collect();
            out = sorted_json(&all);
            out.push('\n');
        }
        Format::Text => {
            for (t, cols, sks) in &tables {
                let width = cols.iter().map(Vec::len).max().unwrap_or(1);
                let cells: Vec<Vec<String>> = cols
                    .iter()
                    .map(|row| {
                        (0..width)
                            .map(|d| row.get(d).map(|v| fmt_set(v)).unwrap_or_default())
                            .collect()
                    })
                    .collect();
                let mut w: Vec<usize> = (1..=width).map(|d| format!("L({d})").len()).collect();
                for row in &cells {
                    for (i, c) in row.iter().enumerate() {
                        w[i] = w[i].max(c.chars().count());
                    }
                }
                writeln!(out, "{}", t.cartan).unwrap();
                write!(out, "{:<5}", "node").unwrap();
                for (d, wd) in w.iter().enumerate() {
                    write!(out, "  {:<wd$}", format!("L({})", d + 1)).unwrap();
                }
                writeln!(out, "  s_k").unwrap();
                for ((row, cells), sk) in t.rows.iter().zip(&cells).zip(sks) {
                    write!(out, "{:<5}", row.node).unwrap();
                    for (c, wd) in cells.iter().zip(&w) {
                        let pad = wd - c.chars().count();
                        write!(out, "  {c}{}", " ".repeat(pad)).unwrap();
                    }
                    writeln!(out, "  {sk}").unwrap();
                }
                out.push('\n');
            }
        }
        Format::Latex => {
            for (t, cols, sks) in &tables {
                let width = cols.iter().map(Vec::len).max().unwrap_or(1);
                let name = format!("{}_{{{}}}", t.cartan.series(), t.cartan.rank());
                writeln!(out, "\\begin{{center}}").unwrap();
                writeln!(out, "    \\begin{{tabular}}{{@{{}}{}@{{}}}}", "c".repeat(width + 2)).unwrap();
                writeln!(out, "\\multicolumn{{{}}}{{c}}{{${name}$}} \\\\ \\midrule", width + 2).unwrap();
                let heads: Vec<String> = (1..=width).map(|d| format!("$L({d})$")).collect();
                writeln!(out, "Node & {} & $s_k$ \\\\ \\midrule", heads.join(" & ")).unwrap();
                for (i, ((row, levels), sk)) in t.rows.iter().zip(cols).zip(sks).enumerate() {
                    let cells: Vec<String> = (0..width)
                        .map(|d| match levels.get(d) {
                            Some(v) if !v.is_empty() => {
                                let xs: Vec<String> = v.iter().map(|&x| latex_q(x)).collect();
                                format!("$\\{{{}\\}}$", xs.join(","))
                            }
                            _ => String::new(),
                        })
                        .collect();
                    let rule = if i + 1 == t.rows.len() {
                        "\\bottomrule"
                    } else {
                        "\\midrule"
                    };
                    writeln!(
                        out,
                        "${}$ & {} & ${}$ \\\\ {rule}",
                        row.node,
                        cells.join(" & "),
                        latex_q(*sk)
                    )
                    .unwrap();
                }
                writeln!(out, "\\end{{tabular}}").unwrap();
                writeln!(out, "\\end{{center}}").unwrap();
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

/// Runs `kinds` on every `(type, node)` in `scope` with `jobs` threads. The
/// result is in scope order whatever the thread count. `budget` applies per
/// `(type, node)`.
pub fn verify(
    scope: &[(CartanType, usize)],
    kinds: &[CheckKind],
    budget: Option<Duration>,
    jobs: usize,
) -> Result<Vec<CheckReport>> {
    let data: Vec<ParabolicDatum> = scope
        .iter()
        .map(|&(c, n)| ParabolicDatum::from_type(c, n))
        .collect::<Result<_>>()?;
    let out = pool(jobs)?.install(|| {
        data.par_iter()
            .with_max_len(1)
            .map(|p| run_checks(p, kinds, budget))
            .collect::<Vec<_>>()
    });
    Ok(out.into_iter().flatten().collect())
}

pub fn verify_json(reports: &[CheckReport], timings: bool) -> String {
    let v = Value::Array(reports.iter().map(|r| r.to_json(timings)).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

/// Pole reports for every `(type, node)` in `scope`, in scope order.
pub fn eisenstein_scope(scope: &[(CartanType, usize)], jobs: usize) -> Result<Vec<PoleReport>> {
    let data: Vec<ParabolicDatum> = scope
        .iter()
        .map(|&(c, n)| ParabolicDatum::from_type(c, n))
        .collect::<Result<_>>()?;
    pool(jobs)?.install(|| {
        data.par_iter()
            .with_max_len(1)
            .map(|p| eisenstein_poles(p, None))
            .collect()
    })
}
