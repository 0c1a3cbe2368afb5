//! Exhaustive verification of the combinatorial statements over `W/W_M`.
//!
//! Every check walks the quotient (or inspects the parabolic datum) and returns
//! a [`CheckReport`]. A failure is a finding, not an error: the report carries a
//! counterexample that can be replayed from the type, node and inversion set.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lfactor::LFactorProduct;
use crate::parabolic::{ParabolicDatum, Profile};
use crate::quotient::{a_w, c_w, c_w_closed, d_product, walk_quotient, CorootSet, CosetRep, LayerStep};
use crate::rational::{fmt_q, int};
use crate::rootsystem::CartanType;

/// The individual checks, named as on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    CombMinus,
    CombPlus,
    Comb1,
    Direct,
    CdPrime,
    ProductOfL,
    Symmetry,
    Strip,
    D0,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::CombMinus,
        CheckKind::CombPlus,
        CheckKind::Comb1,
        CheckKind::Direct,
        CheckKind::CdPrime,
        CheckKind::ProductOfL,
        CheckKind::Symmetry,
        CheckKind::Strip,
        CheckKind::D0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::CombMinus => "comb-",
            CheckKind::CombPlus => "comb+",
            CheckKind::Comb1 => "comb1",
            CheckKind::Direct => "direct",
            CheckKind::CdPrime => "cdprime",
            CheckKind::ProductOfL => "productL",
            CheckKind::Symmetry => "symmetry",
            CheckKind::Strip => "strip",
            CheckKind::D0 => "d0",
        }
    }

    /// Parses a comma-separated list; `all` expands to every check.
    pub fn parse_list(s: &str) -> Result<Vec<CheckKind>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(CheckKind::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Usage("empty check list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Verified,
    Failed,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Verified => "VERIFIED",
            CheckStatus::Failed => "FAILED",
            CheckStatus::Skipped => "SKIPPED",
        })
    }
}

/// Replay data for a failed check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Inversion set of the offending representative, as coroot vectors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inversion_set: Option<Vec<Vec<i32>>>,
    /// 1-based simple index of the covering edge.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub new_coroot: Option<Vec<i32>>,
    /// `[h, λ, h′, λ′]`; the primed pair is absent for single-cell checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<Vec<i64>>,
    pub detail: String,
}

/// Outcome of one check for one `(type, node)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: CheckKind,
    pub cartan: CartanType,
    pub node: usize,
    pub status: CheckStatus,
    pub reason: Option<String>,
    pub counterexample: Option<Counterexample>,
    pub stats: BTreeMap<String, u64>,
    pub millis: u64,
}

impl CheckReport {
    fn new(check: CheckKind, p: &ParabolicDatum) -> Self {
        CheckReport {
            check,
            cartan: p.cartan(),
            node: p.node(),
            status: CheckStatus::Verified,
            reason: None,
            counterexample: None,
            stats: BTreeMap::new(),
            millis: 0,
        }
    }

    fn fail(&mut self, cx: Counterexample) {
        self.status = CheckStatus::Failed;
        self.counterexample = Some(cx);
    }

    pub fn is_failure(&self) -> bool {
        self.status == CheckStatus::Failed
    }

    /// JSON object with sorted keys. Wall time is included only on request so
    /// that default reports are byte-identical across runs.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("check".into(), Value::from(self.check.name()));
        m.insert("type".into(), Value::from(self.cartan.to_string()));
        m.insert("node".into(), Value::from(self.node));
        m.insert("status".into(), serde_json::to_value(self.status).unwrap());
        if let Some(r) = &self.reason {
            m.insert("reason".into(), Value::from(r.clone()));
        }
        if let Some(cx) = &self.counterexample {
            m.insert("counterexample".into(), serde_json::to_value(cx).unwrap());
        }
        if !self.stats.is_empty() {
            m.insert("stats".into(), serde_json::to_value(&self.stats).unwrap());
        }
        if timings {
            m.insert("millis".into(), Value::from(self.millis));
        }
        Value::Object(m)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {:>3} {:<9} {}",
            self.cartan,
            self.node,
            self.check.name(),
            self.status
        )?;
        if let Some(r) = &self.reason {
            write!(f, " ({r})")?;
        }
        if let Some(cx) = &self.counterexample {
            write!(f, ": {}", cx.detail)?;
        }
        Ok(())
    }
}

fn coroot_vectors(p: &ParabolicDatum, set: &CorootSet) -> Vec<Vec<i32>> {
    set.iter().map(|k| p.root().positive_coroots()[k].clone()).collect()
}

fn edge_cx(
    p: &ParabolicDatum,
    parent: &CosetRep,
    simple: usize,
    coroot: usize,
    cell: Vec<i64>,
    detail: String,
) -> Counterexample {
    Counterexample {
        inversion_set: Some(coroot_vectors(p, &parent.inversions)),
        simple: Some(simple + 1),
        new_coroot: Some(p.root().positive_coroots()[coroot].clone()),
        cell: Some(cell),
        detail,
    }
}

fn profiles(p: &ParabolicDatum, reps: &[CosetRep]) -> Vec<Profile> {
    if reps.len() > 4096 {
        reps.par_iter().map(|r| r.profile(p)).collect()
    } else {
        reps.iter().map(|r| r.profile(p)).collect()
    }
}

/// Walks the quotient, calling `edge` on every covering edge with the parent
/// and child profiles; stops at the first failure.
fn scan_edges<F>(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport, mut edge: F) -> Result<()>
where
    F: FnMut(&LayerStep<'_>, usize, &Profile, &Profile, &mut BTreeMap<String, u64>) -> Option<Counterexample>,
{
    let mut prev_next: Option<Vec<Profile>> = None;
    let mut found = None;
    let mut violations = 0u64;
    let mut stats = BTreeMap::new();
    let summary = walk_quotient(p, deadline, |step| {
        let cur = prev_next.take().unwrap_or_else(|| profiles(p, step.reps));
        let nxt = profiles(p, step.next);
        for (k, e) in step.edges.iter().enumerate() {
            if let Some(cx) = edge(step, k, &cur[e.parent], &nxt[e.child], &mut stats) {
                violations += 1;
                found.get_or_insert(cx);
            }
        }
        prev_next = Some(nxt);
        ControlFlow::Continue(())
    })?;
    stats.insert("reps".into(), summary.count);
    stats.insert("edges".into(), summary.edges);
    stats.insert("violating_edges".into(), violations);
    report.stats.extend(stats);
    if let Some(cx) = found {
        report.fail(cx);
    }
    Ok(())
}

fn note_vacuity(p: &ParabolicDatum, report: &mut CheckReport) {
    let max_lambda = p.full_profile().max_lambda() as u64;
    report.stats.insert("max_lambda".into(), max_lambda);
    if max_lambda == 1 {
        report.stats.insert("vacuous_lambda_ge2".into(), 1);
    }
}

fn check_comb_minus(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport) -> Result<()> {
    note_vacuity(p, report);
    let (hmax, lmax) = (
        p.full_profile().max_height() as i64,
        p.full_profile().max_lambda() as i64,
    );
    scan_edges(p, deadline, report, |step, k, w, sw, _| {
        let e = step.edges[k];
        for l in 1..=lmax {
            for h in 1..=hmax {
                let (a, b) = (w.left_drop(h, l), sw.left_drop(h, l));
                if a > b {
                    return Some(edge_cx(
                        p,
                        &step.reps[e.parent],
                        e.simple,
                        e.coroot,
                        vec![h, l],
                        format!("max(0, m_w(h,λ) − m_w(h−1,λ)) = {a} exceeds {b} for s_α w at (h, λ) = ({h}, {l})"),
                    ));
                }
            }
        }
        None
    })
}

fn check_comb_plus(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport) -> Result<()> {
    note_vacuity(p, report);
    let mut ii = 0u64;
    scan_edges(p, deadline, report, |step, k, w, _, _| {
        let e = step.edges[k];
        let (h, l) = p.coroot_cells()[e.coroot];
        if w.get(h, l) < w.get(h - 1, l) {
            ii += 1;
        }
        if w.get(h, l) < w.get(h + 1, l) {
            return Some(edge_cx(
                p,
                &step.reps[e.parent],
                e.simple,
                e.coroot,
                vec![h, l],
                format!(
                    "m_w({h},{l}) = {} < m_w({},{l}) = {}",
                    w.get(h, l),
                    h + 1,
                    w.get(h + 1, l)
                ),
            ));
        }
        None
    })?;
    report.stats.insert("ii_dependent_edges".into(), ii);
    Ok(())
}

fn check_comb1(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport) -> Result<()> {
    note_vacuity(p, report);
    let full = p.full_profile().clone();
    let cells: Vec<(i64, i64)> = full.cells().into_keys().filter(|c| c.1 >= 1).collect();
    let mut qualifying = 0u64;
    scan_edges(p, deadline, report, |step, k, w, sw, _| {
        let e = step.edges[k];
        let (h, l) = p.coroot_cells()[e.coroot];
        if sw.left_drop(h, l) != w.left_drop(h, l) + 1 {
            return None;
        }
        qualifying += 1;
        for &(h2, l2) in &cells {
            // λ′(h−1)/λ − h′ < 1  ⇔  λ′(h−1) − λh′ < λ
            if full.get(h2, l2) > w.get(h2, l2) && l2 * (h - 1) - l * h2 >= l {
                return Some(edge_cx(
                    p,
                    &step.reps[e.parent],
                    e.simple,
                    e.coroot,
                    vec![h, l, h2, l2],
                    format!(
                        "λ′(h−1)/λ − h′ = {} ≥ 1 at (h,λ,h′,λ′) = ({h},{l},{h2},{l2})",
                        fmt_q(&(int(l2 * (h - 1)) / int(l) - int(h2)))
                    ),
                ));
            }
        }
        None
    })?;
    report.stats.insert("qualifying_edges".into(), qualifying);
    Ok(())
}

/// The maximal representative, reached by walking the quotient.
fn top_rep(p: &ParabolicDatum, deadline: Option<Instant>) -> Result<CosetRep> {
    let mut top = None;
    walk_quotient(p, deadline, |step| {
        if step.next.is_empty() {
            top = step.reps.first().cloned();
        }
        ControlFlow::Continue(())
    })?;
    top.ok_or_else(|| Error::Internal("walk produced no maximal element".into()))
}

fn check_direct(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport) -> Result<()> {
    let top = top_rep(p, deadline)?;
    let prof = top.profile(p);
    if &prof != p.full_profile() {
        report.fail(Counterexample {
            inversion_set: Some(coroot_vectors(p, &top.inversions)),
            detail: "profile of the maximal representative differs from m_{w0}".into(),
            ..Default::default()
        });
        return Ok(());
    }
    let aw0 = a_w(p, &prof);
    let (app, appop) = p.normalizers();
    let d = d_product(p);
    if aw0 != appop {
        report.fail(Counterexample {
            inversion_set: Some(coroot_vectors(p, &top.inversions)),
            detail: format!("a_w0 = {aw0} but a_P|P^op = {appop}"),
            ..Default::default()
        });
    } else if d != app {
        report.fail(Counterexample {
            detail: format!("d = {d} but a_P|P = {app}"),
            ..Default::default()
        });
    }
    Ok(())
}

fn check_cd_prime(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport) -> Result<()> {
    let top = top_rep(p, deadline)?;
    let cw0 = c_w(p, &top)?;
    let lhs = d_product(p).mul(&cw0);
    let rhs = p.a_ppop();
    if lhs != rhs {
        report.fail(Counterexample {
            inversion_set: Some(coroot_vectors(p, &top.inversions)),
            detail: format!("d·c_w0 = {lhs} but a_P|P^op = {rhs}"),
            ..Default::default()
        });
    }
    Ok(())
}

/// Applies `f` to every representative, in parallel within a layer, and keeps
/// the first failure in walk order.
fn scan_reps<F>(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport, f: F) -> Result<()>
where
    F: Fn(&CosetRep) -> Option<Counterexample> + Sync,
{
    let mut found = None;
    let summary = walk_quotient(p, deadline, |step| {
        let hit = if step.reps.len() > 256 {
            step.reps.par_iter().map(&f).find_first(Option::is_some).flatten()
        } else {
            step.reps.iter().find_map(&f)
        };
        match hit {
            Some(cx) => {
                found = Some(cx);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    })?;
    report.stats.insert("reps".into(), summary.count);
    if let Some(cx) = found {
        report.fail(cx);
    }
    Ok(())
}

fn check_product_of_l(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport) -> Result<()> {
    let d = d_product(p);
    scan_reps(p, deadline, report, |rep| {
        let cx = |detail: String| Counterexample {
            inversion_set: Some(coroot_vectors(p, &rep.inversions)),
            detail,
            ..Default::default()
        };
        let c = match c_w(p, rep) {
            Ok(c) => c,
            Err(e) => return Some(cx(e.to_string())),
        };
        let prod = d.mul(&c);
        if !prod.is_product_of_l() {
            return Some(cx(format!("d·c_w = {prod} has a negative exponent")));
        }
        for (k, e) in c.iter() {
            if e < 0 && -e > d.exponent(k.lambda, k.shift) {
                return Some(cx(format!("denominator {k}^{} of c_w is not covered by d", -e)));
            }
        }
        None
    })
}

fn check_symmetry(p: &ParabolicDatum, report: &mut CheckReport) {
    let m = p.full_profile();
    let kappa = p.kappa();
    for l in 1..=m.max_lambda() as i64 {
        for h in 0..=m.max_height() as i64 {
            let mirror = l * kappa - h;
            if m.get(h, l) != m.get(mirror, l) {
                report.fail(Counterexample {
                    cell: Some(vec![h, l, mirror, l]),
                    detail: format!(
                        "m_w0({h},{l}) = {} but m_w0({mirror},{l}) = {}",
                        m.get(h, l),
                        m.get(mirror, l)
                    ),
                    ..Default::default()
                });
                return;
            }
        }
    }
}

/// Pole real parts of `d·c_w` for all character orders up to `d_0`, keyed by
/// the profile of `w` (which determines `c_w`).
pub(crate) fn poles_of_profile(
    p: &ParabolicDatum,
    d: &LFactorProduct,
    prof: &Profile,
) -> Vec<crate::lfactor::PoleEntry> {
    let prod = d.mul(&c_w_closed(p, prof));
    (1..=p.d0()).flat_map(|o| prod.pole_locus(o).entries).collect()
}

fn check_strip(p: &ParabolicDatum, deadline: Option<Instant>, report: &mut CheckReport) -> Result<()> {
    let bound = p.s_k1();
    let two_sk1 = p.s_k() * 2 + 1;
    for &k in p.outside_coroots() {
        let (h, l) = p.coroot_cells()[k];
        if int(h) > int(l) * two_sk1 {
            report.fail(Counterexample {
                new_coroot: Some(p.root().positive_coroots()[k].clone()),
                cell: Some(vec![h, l]),
                detail: format!("height {h} exceeds λ(2s_k+1) = {}", int(l) * two_sk1),
                ..Default::default()
            });
            return Ok(());
        }
    }
    let d = d_product(p);
    let cache: std::sync::Mutex<HashMap<Profile, bool>> = Default::default();
    scan_reps(p, deadline, report, |rep| {
        let prof = rep.profile(p);
        if let Some(&ok) = cache.lock().unwrap().get(&prof) {
            if ok {
                return None;
            }
        }
        let bad = poles_of_profile(p, &d, &prof)
            .into_iter()
            .find(|e| e.real_part.abs() > bound);
        cache.lock().unwrap().insert(prof, bad.is_none());
        bad.map(|e| Counterexample {
            inversion_set: Some(coroot_vectors(p, &rep.inversions)),
            detail: format!(
                "pole at real part {} (character order {}) outside |x| ≤ {}",
                e.real_part, e.character_order, bound
            ),
            ..Default::default()
        })
    })?;
    report
        .stats
        .insert("distinct_profiles".into(), cache.into_inner().unwrap().len() as u64);
    Ok(())
}

fn check_d0(p: &ParabolicDatum, report: &mut CheckReport) {
    let d0 = p.d0() as i64;
    let mark = p.root().highest_coroot()[p.node() - 1] as i64;
    let max_l = p.full_profile().max_lambda() as i64;
    report.stats.insert("d0".into(), d0 as u64);
    if d0 > 6 || d0 != mark || d0 != max_l {
        report.fail(Counterexample {
            detail: format!("d_0 = {d0}, highest-coroot mark {mark}, largest λ-value {max_l}"),
            ..Default::default()
        });
    }
}

/// Runs one check. Errors other than an exhausted budget surface as failures.
pub fn run_check(p: &ParabolicDatum, kind: CheckKind, deadline: Option<Instant>) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new(kind, p);
    let res = match kind {
        CheckKind::CombMinus => check_comb_minus(p, deadline, &mut report),
        CheckKind::CombPlus => check_comb_plus(p, deadline, &mut report),
        CheckKind::Comb1 => check_comb1(p, deadline, &mut report),
        CheckKind::Direct => check_direct(p, deadline, &mut report),
        CheckKind::CdPrime => check_cd_prime(p, deadline, &mut report),
        CheckKind::ProductOfL => check_product_of_l(p, deadline, &mut report),
        CheckKind::Symmetry => {
            check_symmetry(p, &mut report);
            Ok(())
        }
        CheckKind::Strip => check_strip(p, deadline, &mut report),
        CheckKind::D0 => {
            check_d0(p, &mut report);
            Ok(())
        }
    };
    match res {
        Ok(()) => {}
        Err(Error::BudgetExceeded) => {
            report.status = CheckStatus::Skipped;
            report.reason = Some("time budget exhausted".into());
            report.stats.clear();
        }
        Err(e) => report.fail(Counterexample {
            detail: e.to_string(),
            ..Default::default()
        }),
    }
    report.millis = start.elapsed().as_millis() as u64;
    report
}

/// Runs `kinds` in order for one `(type, node)` under a shared time budget.
pub fn run_checks(p: &ParabolicDatum, kinds: &[CheckKind], budget: Option<Duration>) -> Vec<CheckReport> {
    let deadline = budget.map(|b| Instant::now() + b);
    kinds.iter().map(|&k| run_check(p, k, deadline)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(t: &str, node: usize) -> ParabolicDatum {
        ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap()
    }

    #[test]
    fn spec_examples_verified() {
        let cases: &[(&str, usize, CheckKind)] = &[
            ("G2", 1, CheckKind::CombMinus),
            ("B2", 1, CheckKind::CombMinus),
            ("E6", 1, CheckKind::CombMinus),
            ("A2", 1, CheckKind::CombPlus),
            ("D4", 2, CheckKind::CombPlus),
            ("F4", 2, CheckKind::CombPlus),
            ("G2", 2, CheckKind::Comb1),
            ("C3", 2, CheckKind::Comb1),
            ("A4", 2, CheckKind::Comb1),
        ];
        for &(t, n, k) in cases {
            let r = run_check(&datum(t, n), k, None);
            assert_eq!(r.status, CheckStatus::Verified, "{r}");
        }
        for k in CheckKind::ALL {
            let r = run_check(&datum("C2", 2), k, None);
            assert_eq!(r.status, CheckStatus::Verified, "{r}");
        }
    }

    #[test]
    fn e6_node4_comb_minus_counterexample() {
        let p = datum("E6", 4);
        let r = run_check(&p, CheckKind::CombMinus, None);
        assert_eq!(r.status, CheckStatus::Failed);
        let cx = r.counterexample.as_ref().unwrap();
        let inv = cx.inversion_set.as_ref().unwrap();
        let new = cx.new_coroot.as_ref().unwrap();
        let (h, l) = (cx.cell.as_ref().unwrap()[0], cx.cell.as_ref().unwrap()[1]);
        let m = |set: &[Vec<i32>], h: i64| {
            set.iter()
                .filter(|v| v.iter().map(|&x| x as i64).sum::<i64>() == h && v[3] as i64 == l)
                .count() as i64
        };
        let mut grown = inv.clone();
        grown.push(new.clone());
        let drop = |set: &[Vec<i32>]| (m(set, h) - m(set, h - 1)).max(0);
        assert!(drop(inv) > drop(&grown));
        let plus = run_check(&p, CheckKind::CombPlus, None);
        assert_eq!(plus.status, CheckStatus::Failed);
        assert_eq!(plus.stats["violating_edges"], r.stats["violating_edges"]);
    }

    #[test]
    fn a_type_vacuity_is_recorded() {
        let r = run_check(&datum("A5", 3), CheckKind::Comb1, None);
        assert_eq!(r.stats.get("vacuous_lambda_ge2"), Some(&1));
    }

    #[test]
    fn e8_node4_d0() {
        let r = run_check(&datum("E8", 4), CheckKind::D0, None);
        assert_eq!(r.status, CheckStatus::Verified);
        assert_eq!(r.stats["d0"], 6);
    }

    #[test]
    fn expired_budget_skips() {
        let r = run_check(&datum("E7", 4), CheckKind::CombMinus, Some(Instant::now()));
        assert_eq!(r.status, CheckStatus::Skipped);
    }

    #[test]
    fn parse_lists() {
        assert_eq!(CheckKind::parse_list("all").unwrap().len(), 9);
        assert_eq!(
            CheckKind::parse_list("comb+,comb-").unwrap(),
            vec![CheckKind::CombMinus, CheckKind::CombPlus]
        );
        assert!(CheckKind::parse_list("bogus").is_err());
    }

    #[test]
    fn json_is_timing_free_by_default() {
        let r = run_check(&datum("G2", 1), CheckKind::CombPlus, None);
        let v = r.to_json(false);
        assert!(v.get("millis").is_none());
        assert_eq!(v["status"], "verified");
        assert!(r.to_json(true).get("millis").is_some());
    }
}
