//! Checks the closed-form claims about stars, complete multipartite graphs and
//! the two special cases (complete graphs, consecutive T) against exact spans.
//!
//! A claim that fails on some instance is a finding, not an error: it is
//! recorded with `agree = false` and the run carries on.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::Serialize;

use crate::checker::{c_span, is_valid};
use crate::colouring::Colour;
use crate::error::{Error, Result};
use crate::families::{
    kpartite_colouring, kpartite_upper_bound, lpq_reference_span, star_colouring,
    star_span_predicted, PredictionMode,
};
use crate::graph::Graph;
use crate::io::{generate, FamilySpec};
use crate::solver::{exact_span, Budget};
use crate::tset::TSet;

pub const STAR_FORMULA: &str = "star-span-formula";
pub const STAR_STRICT: &str = "star-strict-bound";
pub const STAR_GAP: &str = "star-gap-decrease";
pub const STAR_INVARIANCE: &str = "star-span-set-invariance";
pub const KPARTITE_BOUND: &str = "kpartite-bound";
pub const COMPLETE_T_SPAN: &str = "complete-graph-t-span";
pub const LP1_EQUIVALENCE: &str = "lp1-equivalence";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Stars,
    Kpartite,
    Remarks,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stars" => Ok(Suite::Stars),
            "kpartite" => Ok(Suite::Kpartite),
            "remarks" => Ok(Suite::Remarks),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("unknown suite `{s}`"),
            }),
        }
    }
}

/// Grid bounds. `None` picks the per-suite default (stars: r <= 4, n <= 7;
/// kpartite: r <= 3, total <= 6; remarks: r <= 3, n <= 6).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    pub max_r: Option<u32>,
    pub max_n: Option<usize>,
    pub max_tset_len: usize,
    pub budget: Budget,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            max_r: None,
            max_n: None,
            max_tset_len: 5,
            budget: Budget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub instance: String,
    pub claim: String,
    pub predicted: String,
    /// `None` when the exact search ran out of budget.
    pub exact: Option<Colour>,
    /// `None` for unresolved instances.
    pub agree: Option<bool>,
    pub notes: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub instances: usize,
    pub agree: usize,
    pub discrepancies: usize,
    pub unresolved: usize,
    /// Per-claim `[agree, discrepancies, unresolved]`.
    pub by_claim: BTreeMap<String, [usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub records: Vec<AuditRecord>,
    pub summary: AuditSummary,
}

impl AuditReport {
    fn new(records: Vec<AuditRecord>) -> Self {
        let mut summary = AuditSummary {
            instances: records.len(),
            ..AuditSummary::default()
        };
        for r in &records {
            let slot = summary.by_claim.entry(r.claim.clone()).or_default();
            match r.agree {
                Some(true) => {
                    summary.agree += 1;
                    slot[0] += 1;
                }
                Some(false) => {
                    summary.discrepancies += 1;
                    slot[1] += 1;
                }
                None => {
                    summary.unresolved += 1;
                    slot[2] += 1;
                }
            }
        }
        AuditReport { records, summary }
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &AuditRecord> {
        self.records.iter().filter(|r| r.agree == Some(false))
    }

    /// Summary table plus one row per discrepancy or unresolved instance.
    pub fn to_markdown(&self) -> String {
        let mut out =
            String::from("| claim | agree | discrepancies | unresolved |\n|---|---|---|---|\n");
        for (claim, [ok, bad, open]) in &self.summary.by_claim {
            out.push_str(&format!("| {claim} | {ok} | {bad} | {open} |\n"));
        }
        let flagged: Vec<&AuditRecord> = self
            .records
            .iter()
            .filter(|r| r.agree != Some(true))
            .collect();
        if !flagged.is_empty() {
            out.push_str(
                "\n| claim | instance | predicted | exact | notes |\n|---|---|---|---|---|\n",
            );
            for r in flagged {
                let exact = r
                    .exact
                    .map_or_else(|| "unresolved".to_string(), |e| e.to_string());
                out.push_str(&format!(
                    "| {} | `{}` | {} | {} | {} |\n",
                    r.claim, r.instance, r.predicted, exact, r.notes
                ));
            }
        }
        out
    }

    /// 0 when every claim held, 2 when something was unresolved, otherwise 3.
    pub fn exit_code(&self) -> u8 {
        if self.summary.unresolved > 0 {
            2
        } else if self.summary.discrepancies > 0 {
            3
        } else {
            0
        }
    }
}

/// Every T containing 0 with `max T <= max_r` and `|T| <= max_len`, ordered by
/// max and then lexicographically.
pub fn tsets_up_to(max_r: u32, max_len: usize) -> Vec<TSet> {
    let mut out = vec![TSet::new([0]).unwrap()];
    for r in 1..=max_r {
        for k in 0..=(r as usize - 1) {
            if k + 2 > max_len {
                break;
            }
            for mid in (1..r).combinations(k) {
                let elements = std::iter::once(0).chain(mid).chain(std::iter::once(r));
                out.push(TSet::new(elements).unwrap());
            }
        }
    }
    out
}

/// Ordered part-size tuples with `k` parts in `ks` and total at most `max_total`.
pub fn part_tuples(ks: &[usize], max_total: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, k: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let remaining_parts = k - prefix.len() - 1;
        for s in 1..=left.saturating_sub(remaining_parts) {
            prefix.push(s);
            extend(prefix, k, left - s, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for &k in ks {
        extend(&mut Vec::new(), k, max_total, &mut out);
    }
    out
}

/// Smallest `s` such that `n` colours in `0..=s` have pairwise differences
/// outside T: the T-span of `K_n`, by direct search over increasing sets.
pub fn complete_graph_t_span(n: usize, t: &TSet) -> Colour {
    fn place(chosen: &mut Vec<Colour>, n: usize, span: Colour, t: &TSet) -> bool {
        if chosen.len() == n {
            return true;
        }
        let from = chosen.last().map_or(0, |&c| c + 1);
        for c in from..=span {
            if chosen.iter().all(|&d| !t.contains(c - d)) {
                chosen.push(c);
                if place(chosen, n, span, t) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    (0..)
        .find(|&s| place(&mut Vec::with_capacity(n), n, s, t))
        .unwrap()
}

fn tset_label(t: &TSet) -> String {
    format!("T={{{}}}", t)
}

struct SpanCache {
    budget: Budget,
    stars: HashMap<(usize, Vec<u32>), std::result::Result<Colour, String>>,
}

impl SpanCache {
    fn star(&mut self, n: usize, t: &TSet) -> std::result::Result<Colour, String> {
        let budget = self.budget;
        self.stars
            .entry((n, t.elements().to_vec()))
            .or_insert_with(|| {
                let g = generate(&FamilySpec::Star(n)).unwrap();
                exact(&g, t, budget)
            })
            .clone()
    }
}

fn exact(g: &Graph, t: &TSet, budget: Budget) -> std::result::Result<Colour, String> {
    exact_span(g, t, budget)
        .map(|r| r.lambda)
        .map_err(|e| format!("unresolved: {e}"))
}

fn unresolved(instance: String, claim: &str, predicted: String, why: String) -> AuditRecord {
    AuditRecord {
        instance,
        claim: claim.to_string(),
        predicted,
        exact: None,
        agree: None,
        notes: why,
    }
}

fn audit_stars(
    max_r: u32,
    max_n: usize,
    max_len: usize,
    cache: &mut SpanCache,
) -> Vec<AuditRecord> {
    let tsets = tsets_up_to(max_r, max_len);
    let mut records = Vec::new();

    for t in &tsets {
        let (r, sigma) = (t.r(), t.sigma());
        for n in 1..=max_n {
            let instance = format!("star:{n} {}", tset_label(t));
            let prediction = star_span_predicted(n, t);
            let construction = star_colouring(n, t);
            let g = generate(&FamilySpec::Star(n)).unwrap();
            let built_ok = is_valid(&g, t, &construction);
            let built_span = c_span(&construction).unwrap();
            let (claim, predicted) = match prediction.mode {
                PredictionMode::Exact => (STAR_FORMULA, format!("= {}", prediction.value)),
                PredictionMode::StrictUpperBound => {
                    (STAR_STRICT, format!("< {}", prediction.value))
                }
            };
            let notes = format!(
                "sigma={sigma} r={r}; centre-0 construction span {built_span}{}",
                if built_ok {
                    ""
                } else {
                    " (INVALID construction)"
                }
            );
            records.push(match cache.star(n, t) {
                Ok(lambda) => AuditRecord {
                    instance,
                    claim: claim.to_string(),
                    predicted,
                    exact: Some(lambda),
                    agree: Some(prediction.holds_for(lambda) && built_ok),
                    notes,
                },
                Err(why) => unresolved(instance, claim, predicted, why),
            });
        }
    }

    // Removing one interior element of T keeps r and raises sigma by one.
    for t in &tsets {
        let interior: Vec<u32> = match t.elements() {
            [_, mid @ .., _] => mid.to_vec(),
            _ => Vec::new(),
        };
        for &drop in &interior {
            let smaller = TSet::new(t.elements().iter().copied().filter(|&e| e != drop)).unwrap();
            for n in (smaller.sigma() as usize + 1)..=max_n {
                let instance = format!("star:{n} {} -> {}", tset_label(t), tset_label(&smaller));
                let (before, after) = match (cache.star(n, t), cache.star(n, &smaller)) {
                    (Ok(b), Ok(a)) => (b, a),
                    (Err(why), _) | (_, Err(why)) => {
                        records.push(unresolved(instance, STAR_GAP, "decrease by 1".into(), why));
                        continue;
                    }
                };
                let expected = before.saturating_sub(1);
                records.push(AuditRecord {
                    instance,
                    claim: STAR_GAP.to_string(),
                    predicted: format!("= {expected} (span with larger T is {before})"),
                    exact: Some(after),
                    agree: Some(before >= 1 && after == expected),
                    notes: if after > before {
                        "span INCREASED".to_string()
                    } else if after == before {
                        "span unchanged".to_string()
                    } else {
                        format!("span decreased by {}", before - after)
                    },
                });
            }
        }
    }

    // Sets with the same size and maximum should give the same star span.
    let mut groups: BTreeMap<(usize, u32), Vec<&TSet>> = BTreeMap::new();
    for t in &tsets {
        groups.entry((t.len(), t.r())).or_default().push(t);
    }
    for ((_, _), group) in groups {
        for (a, b) in group.iter().tuple_combinations() {
            for n in (a.sigma() as usize + 1)..=max_n {
                let instance = format!("star:{n} {} vs {}", tset_label(a), tset_label(b));
                match (cache.star(n, a), cache.star(n, b)) {
                    (Ok(x), Ok(y)) => records.push(AuditRecord {
                        instance,
                        claim: STAR_INVARIANCE.to_string(),
                        predicted: format!("= {x}"),
                        exact: Some(y),
                        agree: Some(x == y),
                        notes: format!("|T|={} r={} sigma={}", a.len(), a.r(), a.sigma()),
                    }),
                    (Err(why), _) | (_, Err(why)) => records.push(unresolved(
                        instance,
                        STAR_INVARIANCE,
                        "equal spans".into(),
                        why,
                    )),
                }
            }
        }
    }
    records
}

fn audit_kpartite(
    max_r: u32,
    max_total: usize,
    max_len: usize,
    budget: Budget,
) -> Vec<AuditRecord> {
    let mut records = Vec::new();
    for sizes in part_tuples(&[2, 3], max_total) {
        let spec = FamilySpec::CompleteMultipartite(sizes.clone());
        let g = generate(&spec).unwrap();
        for t in tsets_up_to(max_r, max_len) {
            let instance = format!("{spec} {}", tset_label(&t));
            let bound = kpartite_upper_bound(&sizes, &t).unwrap();
            let predicted = format!("<= {bound}");
            let construction = kpartite_colouring(&sizes, &t).unwrap();
            let built_ok = is_valid(&g, &t, &construction);
            let built_span = c_span(&construction).unwrap();
            let consecutive = t.sigma() == 0;
            match exact(&g, &t, budget) {
                Ok(lambda) => {
                    let attained = if lambda == bound {
                        "attained".to_string()
                    } else {
                        format!("not attained (gap {})", bound - lambda)
                    };
                    records.push(AuditRecord {
                        instance,
                        claim: KPARTITE_BOUND.to_string(),
                        predicted,
                        exact: Some(lambda),
                        agree: Some(lambda <= bound && built_ok && built_span <= bound),
                        notes: format!(
                            "{attained}; T {}consecutive; construction span {built_span}{}",
                            if consecutive { "" } else { "not " },
                            if built_ok {
                                ""
                            } else {
                                " (INVALID construction)"
                            }
                        ),
                    });
                }
                Err(why) => records.push(unresolved(instance, KPARTITE_BOUND, predicted, why)),
            }
        }
    }
    records
}

/// Graphs used for the consecutive-T comparison: standard families plus a few
/// seeded random graphs for each order.
pub fn lp1_graphs(max_n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(FamilySpec::Path(n));
        if n >= 3 {
            out.push(FamilySpec::Cycle(n));
        }
        out.push(FamilySpec::Star(n - 1));
        out.push(FamilySpec::Complete(n));
        for seed in 0..8 {
            out.push(FamilySpec::Random { n, p: 0.5, seed });
        }
    }
    out
}

fn audit_remarks(max_r: u32, max_n: usize, max_len: usize, budget: Budget) -> Vec<AuditRecord> {
    let mut records = Vec::new();
    for n in 1..=max_n.min(5) {
        let g = generate(&FamilySpec::Complete(n)).unwrap();
        let no_d2 = g.distance_two_pairs().is_empty();
        for t in tsets_up_to(max_r, max_len) {
            let instance = format!("complete:{n} {}", tset_label(&t));
            let t_span = complete_graph_t_span(n, &t);
            let predicted = format!("= {t_span}");
            match exact(&g, &t, budget) {
                Ok(lambda) => records.push(AuditRecord {
                    instance,
                    claim: COMPLETE_T_SPAN.to_string(),
                    predicted,
                    exact: Some(lambda),
                    agree: Some(no_d2 && lambda == t_span),
                    notes: format!(
                        "distance-two pairs: {}",
                        if no_d2 { "none" } else { "PRESENT" }
                    ),
                }),
                Err(why) => records.push(unresolved(instance, COMPLETE_T_SPAN, predicted, why)),
            }
        }
    }
    for p in 1..=3u32 {
        let t = TSet::consecutive(p).unwrap();
        for spec in lp1_graphs(max_n) {
            let g = generate(&spec).unwrap();
            let instance = format!("{spec} p={p} {}", tset_label(&t));
            let reference = match lpq_reference_span(&g, p, budget) {
                Ok(v) => v,
                Err(e) => {
                    records.push(unresolved(
                        instance,
                        LP1_EQUIVALENCE,
                        "= L(p,1) span".into(),
                        format!("unresolved: {e}"),
                    ));
                    continue;
                }
            };
            let predicted = format!("= {reference}");
            match exact(&g, &t, budget) {
                Ok(lambda) => records.push(AuditRecord {
                    instance,
                    claim: LP1_EQUIVALENCE.to_string(),
                    predicted,
                    exact: Some(lambda),
                    agree: Some(lambda == reference),
                    notes: String::new(),
                }),
                Err(why) => records.push(unresolved(instance, LP1_EQUIVALENCE, predicted, why)),
            }
        }
    }
    records
}

pub fn run(suite: Suite, config: &AuditConfig) -> AuditReport {
    let mut cache = SpanCache {
        budget: config.budget,
        stars: HashMap::new(),
    };
    let len = config.max_tset_len;
    let mut records = Vec::new();
    if matches!(suite, Suite::Stars | Suite::All) {
        records.extend(audit_stars(
            config.max_r.unwrap_or(4),
            config.max_n.unwrap_or(7),
            len,
            &mut cache,
        ));
    }
    if matches!(suite, Suite::Kpartite | Suite::All) {
        records.extend(audit_kpartite(
            config.max_r.unwrap_or(3),
            config.max_n.unwrap_or(6),
            len,
            config.budget,
        ));
    }
    if matches!(suite, Suite::Remarks | Suite::All) {
        records.extend(audit_remarks(
            config.max_r.unwrap_or(3),
            config.max_n.unwrap_or(6),
            len,
            config.budget,
        ));
    }
    AuditReport::new(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tset_enumeration() {
        let all: Vec<String> = tsets_up_to(3, 5).iter().map(|t| t.to_string()).collect();
        assert_eq!(
            all,
            ["0", "0,1", "0,2", "0,1,2", "0,3", "0,1,3", "0,2,3", "0,1,2,3"]
        );
        assert_eq!(tsets_up_to(4, 5).len(), 1 + 1 + 2 + 4 + 8);
        assert!(tsets_up_to(4, 2).iter().all(|t| t.len() <= 2));
    }

    #[test]
    fn part_tuple_enumeration() {
        let t = part_tuples(&[2], 4);
        assert_eq!(
            t,
            vec![
                vec![1, 1],
                vec![1, 2],
                vec![1, 3],
                vec![2, 1],
                vec![2, 2],
                vec![3, 1]
            ]
        );
        assert_eq!(part_tuples(&[2, 3], 6).len(), 15 + 20);
    }

    #[test]
    fn complete_t_spans() {
        assert_eq!(complete_graph_t_span(1, &TSet::new([0, 4]).unwrap()), 0);
        assert_eq!(complete_graph_t_span(3, &TSet::new([0, 1, 2]).unwrap()), 6);
        assert_eq!(complete_graph_t_span(2, &TSet::new([0, 1]).unwrap()), 2);
    }

    #[test]
    fn small_star_audit_finds_known_counterexample() {
        // K_{1,2} with T={0,2}: centre 1 and leaves 0, 2 give span 2, below
        // the formula's 3.
        let report = run(
            Suite::Stars,
            &AuditConfig {
                max_r: Some(2),
                max_n: Some(3),
                ..AuditConfig::default()
            },
        );
        let hit = report
            .records
            .iter()
            .find(|r| r.claim == STAR_FORMULA && r.instance == "star:2 T={0,2}")
            .unwrap();
        assert_eq!((hit.exact, hit.agree), (Some(2), Some(false)));
        assert_eq!(report.exit_code(), 3);
    }

    #[test]
    fn unresolved_instances_exit_two() {
        let report = run(
            Suite::Kpartite,
            &AuditConfig {
                max_r: Some(1),
                max_n: Some(4),
                max_tset_len: 5,
                budget: Budget::nodes(1),
            },
        );
        assert!(report.summary.unresolved > 0);
        assert_eq!(report.exit_code(), 2);
    }
}
