//! Classification of catalog groups by their number of end vertices, and the
//! comparison against the reference tables for `|E_G| = 1..=10`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{Catalog, CatalogEntry, SmallGroupId};
use crate::graph::build_graph;
use crate::numtheory::{max_phi_inverse, phi, prime_power_base, rad};
use crate::theorems::general_order_bound;

/// Group orders that can carry exactly `n` end vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleOrders {
    pub n: u64,
    /// `None` when every order is possible (`n = 0`).
    pub orders: Option<BTreeSet<u64>>,
    pub reason: String,
}

impl AdmissibleOrders {
    pub fn admits(&self, order: u64) -> bool {
        self.orders.as_ref().is_none_or(|o| o.contains(&order))
    }
}

pub fn admissible_orders(n: u64) -> AdmissibleOrders {
    if n == 0 {
        return AdmissibleOrders {
            n,
            orders: None,
            reason: "no restriction on groups without end vertices".into(),
        };
    }
    if n % 2 == 1 {
        let orders: BTreeSet<u64> = if (n + 1).is_power_of_two() {
            [n + 1].into()
        } else {
            BTreeSet::new()
        };
        let reason = if orders.is_empty() {
            format!("odd, {} not a power of 2", n + 1)
        } else {
            format!("odd, only 2-groups of order {}", n + 1)
        };
        return AdmissibleOrders {
            n,
            orders: Some(orders),
            reason,
        };
    }
    // Outside p-groups an end vertex has composite radical, phi(|x|) <= n,
    // hence |x| <= M; the group order shares its radical and is a multiple.
    let bound = general_order_bound(n / 2);
    let end_orders: Vec<u64> = (1..=max_phi_inverse(n))
        .filter(|&m| m > 1 && phi(m) <= n && prime_power_base(m).is_none())
        .collect();
    let mut orders = BTreeSet::new();
    if prime_power_base(n + 1).is_some() {
        orders.insert(n + 1);
    }
    for &m in &end_orders {
        let r = rad(m);
        orders.extend(
            (m..=bound)
                .step_by(m as usize)
                .filter(|&order| rad(order) == r),
        );
    }
    AdmissibleOrders {
        n,
        orders: Some(orders),
        reason: format!(
            "even, orders up to {bound} sharing a radical with a possible end-vertex order"
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Confidence {
    #[serde(rename = "PROVEN-COMPLETE")]
    ProvenComplete,
    #[serde(rename = "CATALOG-RELATIVE")]
    CatalogRelative,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::ProvenComplete => "PROVEN-COMPLETE",
            Confidence::CatalogRelative => "CATALOG-RELATIVE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Found,
    Missing,
    /// The identifier names no catalog entry, so nothing can be checked.
    NotInCatalog,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Found => "found",
            Verdict::Missing => "missing",
            Verdict::NotInCatalog => "not-in-catalog",
        })
    }
}

/// The groups known to have exactly `n` end vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Labels(&'static [&'static str]),
    SmallGroupIds(&'static [(u64, u64)]),
}

#[rustfmt::skip]
const EIGHT_END_VERTICES: &[(u64, u64)] = &[
    (9, 1), (9, 2), (15, 1), (18, 2), (18, 5), (24, 3), (24, 13), (30, 4),
    (36, 1), (36, 4), (36, 7), (36, 13), (48, 28), (48, 29), (48, 30), (48, 48),
    (60, 1), (60, 2), (60, 3), (60, 10), (60, 11), (60, 12), (72, 19), (72, 45),
    (120, 6), (120, 7), (120, 8), (120, 9), (120, 10), (120, 11), (120, 12), (120, 13),
    (120, 14), (120, 40), (120, 41), (120, 42), (144, 114), (144, 120), (144, 185), (144, 187),
    (240, 95), (240, 96), (240, 97), (240, 98), (240, 99), (240, 100), (240, 101), (240, 195),
];

/// Reference classification for `1 <= n <= 10`, in terms of bundled catalog
/// labels, or small-group identifiers for `n = 8`.
pub fn reference_expectation(n: u64) -> Option<Expectation> {
    Some(Expectation::Labels(match n {
        1 => &["Z2"],
        2 => &["Z3", "Z6", "D12", "Dic12"],
        3 => &["Z4", "Z2xZ2"],
        4 => &["Z5", "Z10", "D20", "Dic20", "GA(1,5)xZ2", "Z5:Z8"],
        5 | 9 => &[],
        6 => &[
            "Z7",
            "Z12",
            "Z2xZ6",
            "Z14",
            "S3xZ3",
            "D24",
            "Dic24",
            "S3xZ4",
            "Dic12xZ2",
            "D12xZ2",
            "Z3:Z8",
            "(Z6xZ2):Z2",
            "D28",
            "Dic28",
            "Z3xA4",
            "Z2^2:Z9",
            "G72a",
            "G72b",
        ],
        7 => &["Z8", "Z4xZ2", "D8", "Q8", "Z2^3"],
        8 => return Some(Expectation::SmallGroupIds(EIGHT_END_VERTICES)),
        10 => &["Z11", "Z22", "D44", "Dic44"],
        _ => return None,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Match {
    pub label: String,
    pub order: u64,
    pub end_vertices: u64,
    pub small_group_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedVerdict {
    pub expected: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extra {
    pub label: String,
    pub order: u64,
    pub complete_order: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryFailure {
    pub label: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: u64,
    pub admissible: AdmissibleOrders,
    pub searched_orders: BTreeSet<u64>,
    pub complete_orders: BTreeSet<u64>,
    pub pruned: usize,
    pub matches: Vec<Match>,
    pub expected: Vec<ExpectedVerdict>,
    pub extras: Vec<Extra>,
    pub failures: Vec<EntryFailure>,
    pub confidence: Confidence,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Worker threads; 0 uses the default pool.
    pub jobs: usize,
    /// Skip entries whose order is not admissible.
    pub prune: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            jobs: 0,
            prune: true,
        }
    }
}

fn end_vertex_count(entry: &CatalogEntry) -> Result<u64, String> {
    let group = entry.realize().map_err(|e| e.to_string())?;
    Ok(build_graph(&group).end_vertices().count as u64)
}

fn in_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return work();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

pub fn classify(n: u64, catalog: &Catalog, options: ClassifyOptions) -> ClassificationReport {
    let admissible = admissible_orders(n);
    let selected: Vec<&CatalogEntry> = catalog
        .entries
        .iter()
        .filter(|e| !options.prune || admissible.admits(e.order))
        .collect();
    let counts: Vec<Result<u64, String>> = in_pool(options.jobs, || {
        selected.par_iter().map(|e| end_vertex_count(e)).collect()
    });

    let searched_orders: BTreeSet<u64> = selected.iter().map(|e| e.order).collect();
    let complete_orders = searched_orders
        .iter()
        .copied()
        .filter(|&o| catalog.is_complete(o))
        .collect();
    let mut matches = Vec::new();
    let mut failures = Vec::new();
    for (entry, count) in selected.iter().zip(counts) {
        match count {
            Ok(c) if c == n => matches.push(Match {
                label: entry.label.clone(),
                order: entry.order,
                end_vertices: c,
                small_group_id: entry.small_group_id.map(|id| id.to_string()),
            }),
            Ok(_) => {}
            Err(message) => failures.push(EntryFailure {
                label: entry.label.clone(),
                message,
            }),
        }
    }

    let confidence = match &admissible.orders {
        Some(orders) if orders.iter().all(|&o| catalog.is_complete(o)) => {
            Confidence::ProvenComplete
        }
        _ => Confidence::CatalogRelative,
    };
    let (expected, extras) = compare(n, catalog, &matches);
    let passed = expected.iter().all(|v| v.verdict != Verdict::Missing)
        && extras.iter().all(|x| !x.complete_order);
    ClassificationReport {
        n,
        admissible,
        searched_orders,
        complete_orders,
        pruned: catalog.len() - selected.len(),
        matches,
        expected,
        extras,
        failures,
        confidence,
        passed,
    }
}

fn compare(n: u64, catalog: &Catalog, matches: &[Match]) -> (Vec<ExpectedVerdict>, Vec<Extra>) {
    let extra = |m: &Match| Extra {
        label: m.label.clone(),
        order: m.order,
        complete_order: catalog.is_complete(m.order),
    };
    match reference_expectation(n) {
        None => (Vec::new(), Vec::new()),
        Some(Expectation::Labels(labels)) => {
            let expected = labels
                .iter()
                .map(|&label| ExpectedVerdict {
                    expected: label.to_string(),
                    verdict: if matches.iter().any(|m| m.label == label) {
                        Verdict::Found
                    } else {
                        Verdict::Missing
                    },
                })
                .collect();
            let extras = matches
                .iter()
                .filter(|m| !labels.contains(&m.label.as_str()))
                .map(extra)
                .collect();
            (expected, extras)
        }
        Some(Expectation::SmallGroupIds(ids)) => {
            let id_of = |m: &Match| catalog.get(&m.label).and_then(|e| e.small_group_id);
            let expected = ids
                .iter()
                .map(|&(order, index)| {
                    let id = SmallGroupId { order, index };
                    let verdict = if matches.iter().any(|m| id_of(m) == Some(id)) {
                        Verdict::Found
                    } else if catalog.entries.iter().any(|e| e.small_group_id == Some(id)) {
                        Verdict::Missing
                    } else {
                        Verdict::NotInCatalog
                    };
                    ExpectedVerdict {
                        expected: id.to_string(),
                        verdict,
                    }
                })
                .collect();
            let extras = matches
                .iter()
                .filter(|m| id_of(m).is_none_or(|id| !ids.contains(&(id.order, id.index))))
                .map(extra)
                .collect();
            (expected, extras)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableVerification {
    pub reports: Vec<ClassificationReport>,
    pub passed: bool,
}

/// Classifies `n = 1..=10` against the reference tables. Beyond the per-report
/// verdicts, `n = 7` must match exactly the groups of order 8.
pub fn verify_reference_tables(catalog: &Catalog, options: ClassifyOptions) -> TableVerification {
    let mut reports: Vec<ClassificationReport> =
        (1..=10).map(|n| classify(n, catalog, options)).collect();
    for report in &mut reports {
        if report.n == 7 {
            let order_8: BTreeSet<&str> = catalog
                .entries
                .iter()
                .filter(|e| e.order == 8)
                .map(|e| e.label.as_str())
                .collect();
            let matched: BTreeSet<&str> = report.matches.iter().map(|m| m.label.as_str()).collect();
            report.passed &= order_8 == matched;
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    TableVerification { reports, passed }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "|E_G| = {}: {} ({})",
            self.n,
            if self.passed { "PASS" } else { "FAIL" },
            self.confidence
        )?;
        match &self.admissible.orders {
            Some(orders) => {
                let list: Vec<String> = orders.iter().map(u64::to_string).collect();
                writeln!(
                    f,
                    "  admissible orders: {{{}}} ({})",
                    list.join(", "),
                    self.admissible.reason
                )?;
            }
            None => writeln!(f, "  admissible orders: any ({})", self.admissible.reason)?,
        }
        writeln!(
            f,
            "  searched {} orders, {} entries pruned",
            self.searched_orders.len(),
            self.pruned
        )?;
        for m in &self.matches {
            let id = m
                .small_group_id
                .as_deref()
                .map(|s| format!(" {s}"))
                .unwrap_or_default();
            writeln!(f, "  match {} (order {}){id}", m.label, m.order)?;
        }
        for v in self.expected.iter().filter(|v| v.verdict != Verdict::Found) {
            writeln!(f, "  expected {}: {}", v.expected, v.verdict)?;
        }
        let found = self
            .expected
            .iter()
            .filter(|v| v.verdict == Verdict::Found)
            .count();
        if !self.expected.is_empty() {
            writeln!(f, "  expected found: {found}/{}", self.expected.len())?;
        }
        for x in &self.extras {
            let context = if x.complete_order {
                "complete order"
            } else {
                "catalog-relative order"
            };
            writeln!(f, "  extra {} (order {}, {context})", x.label, x.order)?;
        }
        for e in &self.failures {
            writeln!(f, "  error {}: {}", e.label, e.message)?;
        }
        Ok(())
    }
}
