use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bkpoles::appendix::{self, fmt_set, Outcome};
use bkpoles::checks::{CheckKind, CheckStatus};
use bkpoles::quotient::quotient_stats;
use bkpoles::report::{self, sorted_json, Format};
use bkpoles::words::{self, ReducedWord};
use bkpoles::{CartanType, Error, ParabolicDatum, RootDatum, Series};

#[derive(Parser)]
#[command(
    name = "bkpoles",
    version,
    about = "Level sets, L-factor normalizations and exhaustive checks for maximal parabolics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Select {
    /// Series A|B|C|D|E|F|G (or a full name such as E8).
    #[arg(long = "type")]
    series: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Node in Bourbaki numbering.
    #[arg(long)]
    node: Option<usize>,
}

#[derive(Args, Clone)]
struct Output {
    /// text, json or latex (where supported).
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print L(d) ∩ ℝ and s_k for each node.
    Tables {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        output: Output,
    },
    /// Run exhaustive checks over the quotient W/W_M.
    Verify {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        output: Output,
        /// Comma-separated list, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Time budget per (type, node), e.g. `30s` or `30m`.
        #[arg(long)]
        budget: Option<humantime::Duration>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include wall times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Compare derived tables with the printed ones.
    AppendixCompare {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        output: Output,
    },
    /// Size and length histogram of W/W_M.
    Quotient {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        output: Output,
    },
    /// Reduced words of the longest element of W/W_M.
    Words {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        output: Output,
        /// Compare the explicit words' coroot sequences with the table layouts.
        #[arg(long)]
        check_tables: bool,
        /// Certify the swap rules on the braid-move graph.
        #[arg(long)]
        certify_rules: bool,
        /// Bound on explored words for --certify-rules.
        #[arg(long, default_value_t = words::DEFAULT_NODE_CAP)]
        cap: usize,
        /// Number of random braid moves to apply and check.
        #[arg(long, default_value_t = 0)]
        rewrites: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use this word instead of the canonical one, e.g. `s1s2s1`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Candidate pole data (Γ, N, d_0) of degenerate Eisenstein series.
    Eisenstein {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// A finished command: text to emit and whether it counts as success.
struct Done {
    body: String,
    ok: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn scope(sel: &Select, max_classical: usize) -> Result<Vec<(CartanType, usize)>, Error> {
    let (series, rank) = match &sel.series {
        None => (None, sel.rank),
        Some(s) if s.len() > 1 => {
            let c: CartanType = s.parse()?;
            if sel.rank.is_some_and(|r| r != c.rank()) {
                return Err(usage(format!("--type {s} conflicts with --rank")));
            }
            (Some(c.series()), Some(c.rank()))
        }
        Some(s) => (Some(s.parse::<Series>()?), sel.rank),
    };
    report::select(series, rank, sel.node, max_classical)
}

fn single(sel: &Select) -> Result<ParabolicDatum, Error> {
    match scope(sel, 8)?.as_slice() {
        [(c, n)] => ParabolicDatum::from_type(*c, *n),
        _ => Err(usage("this command needs --type, --rank and --node")),
    }
}

fn format(o: &Output, allowed: &[Format]) -> Result<Format, Error> {
    let f: Format = o.format.parse()?;
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage(format!("format `{}` is not supported here", o.format)))
    }
}

fn cmd_verify(
    sel: &Select,
    o: &Output,
    checks: &str,
    budget: Option<Duration>,
    jobs: usize,
    timings: bool,
) -> Result<Done, Error> {
    let fmt = format(o, &[Format::Text, Format::Json])?;
    let kinds = CheckKind::parse_list(checks)?;
    let reports = report::verify(&scope(sel, 6)?, &kinds, budget, jobs)?;
    let ok = reports.iter().all(|r| r.status == CheckStatus::Verified);
    let body = match fmt {
        Format::Json => report::verify_json(&reports, timings),
        _ => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.to_string());
                if timings {
                    s.push_str(&format!(" [{} ms]", r.millis));
                }
                s.push('\n');
            }
            let count = |st| reports.iter().filter(|r| r.status == st).count();
            s.push_str(&format!(
                "{} verified, {} failed, {} skipped\n",
                count(CheckStatus::Verified),
                count(CheckStatus::Failed),
                count(CheckStatus::Skipped)
            ));
            s
        }
    };
    Ok(Done { body, ok })
}

fn cmd_appendix(sel: &Select, o: &Output) -> Result<Done, Error> {
    let fmt = format(o, &[Format::Text, Format::Json])?;
    let diff = appendix::compare(&scope(sel, 10)?)?;
    let body = match fmt {
        Format::Json => sorted_json(&diff) + "\n",
        _ => {
            let mut s = String::new();
            for c in &diff.cells {
                let tag = match c.outcome {
                    Outcome::Allowlisted => "allowlisted",
                    Outcome::Unexpected => "UNEXPECTED",
                    Outcome::Stale => "STALE",
                    Outcome::Exact => "exact",
                };
                s.push_str(&format!(
                    "{:<11} {} node {} {}: printed {} derived {}\n",
                    tag,
                    c.cartan,
                    c.node,
                    c.column,
                    fmt_set(&c.printed),
                    fmt_set(&c.derived)
                ));
                if let Some(j) = c.justification {
                    s.push_str(&format!("            {j}\n"));
                }
            }
            s.push_str(&format!(
                "{} exact, {} allowlisted, {} unexpected, {} stale\n",
                diff.exact, diff.allowlisted, diff.unexpected, diff.stale
            ));
            s
        }
    };
    Ok(Done { body, ok: diff.ok() })
}

fn cmd_quotient(sel: &Select, o: &Output) -> Result<Done, Error> {
    let fmt = format(o, &[Format::Text, Format::Json])?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (c, n) in scope(sel, 8)? {
        let p = ParabolicDatum::from_type(c, n)?;
        let st = quotient_stats(&p)?;
        let expected = c.weyl_order() / c.levi_weyl_order(n);
        ok &= u128::from(st.count) == expected;
        rows.push(json!({
            "type": c.to_string(),
            "node": n,
            "count": st.count,
            "expected": expected.to_string(),
            "max_length": st.max_length,
            "histogram": st.histogram,
        }));
    }
    let body = match fmt {
        Format::Json => sorted_json(&rows) + "\n",
        _ => rows
            .iter()
            .map(|r| {
                format!(
                    "{:<4} {:>2}  |W/W_M| = {} (expected {})  max length {}  histogram {}\n",
                    r["type"].as_str().unwrap_or_default(),
                    r["node"],
                    r["count"],
                    r["expected"].as_str().unwrap_or_default(),
                    r["max_length"],
                    r["histogram"]
                )
            })
            .collect(),
    };
    Ok(Done { body, ok })
}

#[allow(clippy::too_many_arguments)]
fn cmd_words(
    sel: &Select,
    o: &Output,
    check_tables: bool,
    certify: bool,
    cap: usize,
    rewrites: usize,
    seed: u64,
    word: Option<&str>,
) -> Result<Done, Error> {
    let fmt = format(o, &[Format::Text, Format::Json])?;
    let p = single(sel)?;
    let root: &RootDatum = p.root();
    let (w, canonical) = match word {
        Some(s) => (s.parse::<ReducedWord>()?, false),
        None => words::canonical_w0_word(&p)?,
    };
    let seq = words::coroot_sequence(&w, root, Some(p.node()))?;
    let mut ok = true;
    let mut out = json!({
        "type": p.cartan().to_string(),
        "node": p.node(),
        "word": w.to_string(),
        "canonical": canonical,
        "coroots": seq,
    });
    if check_tables {
        let table = words::coroot_table(p.cartan(), p.node());
        let matches = table.as_ref().map(|t| *t == seq);
        ok &= matches != Some(false);
        out["tables_match"] = json!(matches);
    }
    if certify {
        let cert = words::certify_swap_rules(&p, cap)?;
        ok &= cert.status != CheckStatus::Failed;
        out["certificate"] = serde_json::to_value(&cert).map_err(|e| Error::Internal(e.to_string()))?;
    }
    if rewrites > 0 {
        let walk = words::random_rewrites(&w, root, Some(p.node()), rewrites, seed)?;
        out["rewrites"] = serde_json::to_value(&walk).map_err(|e| Error::Internal(e.to_string()))?;
    }
    let body = match fmt {
        Format::Json => sorted_json(&out) + "\n",
        _ => {
            let mut s = format!(
                "{} node {}: {}{}\n",
                p.cartan(),
                p.node(),
                w,
                if canonical { "" } else { " (not canonical)" }
            );
            for (i, v) in seq.iter().enumerate() {
                s.push_str(&format!("  {:>3}  {:?}\n", i + 1, v));
            }
            if let Some(m) = out.get("tables_match") {
                s.push_str(&format!("tables match: {m}\n"));
            }
            if let Some(c) = out.get("certificate") {
                s.push_str(&format!(
                    "swap rules: {} ({} words, {} pairs, {} reversible); pattern (c′): {}\n",
                    c["status"].as_str().unwrap_or_default(),
                    c["words"],
                    c["pairs"],
                    c["reversible_pairs"],
                    c["pattern_c_prime"].as_str().unwrap_or_default()
                ));
                if let Some(r) = c["reason"].as_str() {
                    s.push_str(&format!("  {r}\n"));
                }
                for m in c["mismatches"].as_array().into_iter().flatten() {
                    s.push_str(&format!("  {}\n", m.as_str().unwrap_or_default()));
                }
            }
            if let Some(r) = out.get("rewrites") {
                s.push_str(&format!(
                    "rewrites: {} steps, ending at {}\n",
                    r["steps"],
                    r["final_word"].as_str().unwrap_or_default()
                ));
            }
            s
        }
    };
    Ok(Done { body, ok })
}

fn cmd_eisenstein(sel: &Select, o: &Output, jobs: usize) -> Result<Done, Error> {
    let fmt = format(o, &[Format::Text, Format::Json])?;
    let reports = report::eisenstein_scope(&scope(sel, 6)?, jobs)?;
    let ok = reports
        .iter()
        .all(|r| r.invariants.iter().filter(|i| i.name != "lattice").all(|i| i.holds));
    let body = match fmt {
        Format::Json => sorted_json(&reports) + "\n",
        _ => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "{} node {}: d0 = {}, N = {}, strip |x| <= {}\n",
                    r.cartan, r.node, r.d0, r.n_max, r.strip_bound
                ));
                let gamma: Vec<String> = r
                    .gamma
                    .iter()
                    .map(|e| format!("({}, {}, {})", e.real_part, e.character_order, e.max_order))
                    .collect();
                s.push_str(&format!("  Γ = [{}]\n", gamma.join(", ")));
                for i in &r.invariants {
                    s.push_str(&format!("  {}: {}\n", i.name, if i.holds { "holds" } else { "FAILED" }));
                }
            }
            s
        }
    };
    Ok(Done { body, ok })
}

fn run(cli: Cli) -> Result<Done, Error> {
    match &cli.command {
        Command::Tables { select, output } => {
            let fmt = format(output, &[Format::Text, Format::Json, Format::Latex])?;
            let body = report::render_tables(&scope(select, 10)?, fmt)?;
            Ok(Done { body, ok: true })
        }
        Command::Verify {
            select,
            output,
            checks,
            budget,
            jobs,
            timings,
        } => cmd_verify(select, output, checks, budget.map(Into::into), *jobs, *timings),
        Command::AppendixCompare { select, output } => cmd_appendix(select, output),
        Command::Quotient { select, output } => cmd_quotient(select, output),
        Command::Words {
            select,
            output,
            check_tables,
            certify_rules,
            cap,
            rewrites,
            seed,
            word,
        } => cmd_words(
            select,
            output,
            *check_tables,
            *certify_rules,
            *cap,
            *rewrites,
            *seed,
            word.as_deref(),
        ),
        Command::Eisenstein { select, output, jobs } => cmd_eisenstein(select, output, *jobs),
    }
}

fn out_path(cli: &Cli) -> Option<PathBuf> {
    match &cli.command {
        Command::Tables { output, .. }
        | Command::Verify { output, .. }
        | Command::AppendixCompare { output, .. }
        | Command::Quotient { output, .. }
        | Command::Words { output, .. }
        | Command::Eisenstein { output, .. } => output.out.clone(),
    }
}

/// Exit status and standard output of one invocation.
struct Finished {
    code: u8,
    stdout: String,
}

fn finished(code: u8, stdout: String) -> Finished {
    Finished { code, stdout }
}

/// Parses `args` (program name first), runs the command and writes `--out`.
fn execute<I, T>(args: I) -> Finished
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return finished(code, String::new());
        }
    };
    let path = out_path(&cli);
    match run(cli) {
        Ok(done) => {
            let code = if done.ok { 0 } else { 1 };
            match path {
                Some(p) => match std::fs::write(&p, &done.body) {
                    Ok(()) => finished(code, String::new()),
                    Err(e) => {
                        eprintln!("error: {}: {e}", p.display());
                        finished(2, String::new())
                    }
                },
                None => finished(code, done.body),
            }
        }
        Err(Error::Usage(m)) => {
            eprintln!("error: {m}");
            finished(2, String::new())
        }
        Err(e) => {
            eprintln!("error: {e}");
            finished(1, String::new())
        }
    }
}

fn main() -> ExitCode {
    let f = execute(std::env::args_os());
    if let Err(e) = std::io::stdout().write_all(f.stdout.as_bytes()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(f.code)
}

#[cfg(test)]
mod tests;
