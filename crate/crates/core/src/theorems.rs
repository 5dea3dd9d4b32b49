//! Executable checks of the structural facts about end vertices, and the
//! order bounds derived from them.
//!
//! Each check recomputes its conclusion directly from the realized group and
//! reports a witness when it fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::graph::{brute_force_edges, build_graph, CoprimeGraph, GraphError};
use crate::numtheory::{max_phi_inverse, phi, prime_power_base, rad};
use crate::perm::FiniteGroup;

/// Groups up to this order are also compared against the quadratic edge oracle.
pub const ORACLE_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Fails,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub group: String,
    pub outcome: Outcome,
    pub witness: Option<String>,
    pub details: BTreeMap<String, String>,
}

impl CheckResult {
    fn new(name: &str, group: &FiniteGroup) -> Self {
        CheckResult {
            name: name.to_string(),
            group: group.label().to_string(),
            outcome: Outcome::Holds,
            witness: None,
            details: BTreeMap::new(),
        }
    }

    fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    fn fail(mut self, witness: impl Into<String>) -> Self {
        self.outcome = Outcome::Fails;
        self.witness = Some(witness.into());
        self
    }

    fn not_applicable(mut self, reason: &str) -> Self {
        self.outcome = Outcome::NotApplicable;
        self.details.insert("reason".into(), reason.into());
        self
    }

    fn require(self, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok || self.outcome == Outcome::Fails {
            self
        } else {
            self.fail(witness())
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome != Outcome::Fails
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<26} {:<15}", self.name, self.outcome.to_string())?;
        let details: Vec<String> = self
            .details
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if !details.is_empty() {
            write!(f, " {}", details.join(" "))?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

fn end_set(graph: &CoprimeGraph) -> Vec<usize> {
    graph.end_vertices().end_vertices
}

fn describe(group: &FiniteGroup, x: usize) -> String {
    format!("element {x} of order {}", group.element_order(x))
}

fn require_order_3(group: &FiniteGroup) -> Result<(), GraphError> {
    if group.order() < 3 {
        Err(GraphError::DegenerateGroup)
    } else {
        Ok(())
    }
}

/// End vertices are exactly the elements whose order has the same radical as
/// the group order.
pub fn check_rad_characterization(group: &FiniteGroup) -> Result<CheckResult, GraphError> {
    require_order_3(group)?;
    let graph = build_graph(group);
    let from_graph: BTreeSet<usize> = end_set(&graph).into_iter().collect();
    let target = rad(group.order() as u64);
    let from_rad: BTreeSet<usize> = (1..group.order())
        .filter(|&x| rad(group.element_order(x)) == target)
        .collect();
    let result = CheckResult::new("rad_characterization", group)
        .detail("end_vertices", from_graph.len())
        .detail("rad", target);
    Ok(match from_graph.symmetric_difference(&from_rad).next() {
        None => result,
        Some(&x) => result.fail(format!(
            "{} is {} by degree but {} by radical",
            describe(group, x),
            if from_graph.contains(&x) {
                "an end vertex"
            } else {
                "not an end vertex"
            },
            if from_rad.contains(&x) {
                "is one"
            } else {
                "is not"
            },
        )),
    })
}

pub fn check_phi_bound(group: &FiniteGroup) -> Result<CheckResult, GraphError> {
    require_order_3(group)?;
    let ends = end_set(&build_graph(group));
    let mut result = CheckResult::new("phi_bound", group).detail("end_vertices", ends.len());
    if let Some(&x) = ends
        .iter()
        .find(|&&x| phi(group.element_order(x)) > ends.len() as u64)
    {
        let o = group.element_order(x);
        result = result.fail(format!(
            "{}: phi = {} > {}",
            describe(group, x),
            phi(o),
            ends.len()
        ));
    }
    let max_phi = ends.iter().map(|&x| phi(group.element_order(x))).max();
    if let Some(m) = max_phi {
        result = result.detail("max_phi", m);
    }
    Ok(result)
}

/// Equality case of the phi bound: the end vertex has squarefree order and
/// generates the only cyclic subgroup of that order.
pub fn check_unique_cyclic(group: &FiniteGroup) -> Result<CheckResult, GraphError> {
    require_order_3(group)?;
    let ends = end_set(&build_graph(group));
    let count = ends.len() as u64;
    let mut result = CheckResult::new("unique_cyclic", group);
    let Some(&x) = ends.iter().find(|&&x| phi(group.element_order(x)) == count) else {
        return Ok(result.detail("vacuous", "no end vertex with phi(|x|) = |E_G|"));
    };
    let o = group.element_order(x);
    result = result.detail("order", o);
    if rad(o) != o {
        return Ok(result.fail(format!("{}: order is not squarefree", describe(group, x))));
    }
    let mut span = group.cyclic_subgroup(x);
    span.sort_unstable();
    for y in (0..group.order()).filter(|&y| group.element_order(y) == o) {
        let mut other = group.cyclic_subgroup(y);
        other.sort_unstable();
        if other != span {
            return Ok(result.fail(format!(
                "{} generates a second cyclic subgroup of order {o}",
                describe(group, y)
            )));
        }
    }
    Ok(result)
}

/// A prime-power-order end vertex exists iff the group is a p-group, and then
/// `|G| = |E_G| + 1`.
pub fn check_prime_power_equivalence(group: &FiniteGroup) -> CheckResult {
    let ends = end_set(&build_graph(group));
    let prime_power_end = ends
        .iter()
        .copied()
        .find(|&x| prime_power_base(group.element_order(x)).is_some());
    let p_group = group.is_p_group();
    let result = CheckResult::new("prime_power_equivalence", group)
        .detail("end_vertices", ends.len())
        .detail(
            "p_group",
            p_group.map_or("no".to_string(), |p| p.to_string()),
        );
    let result =
        result.require(
            prime_power_end.is_some() == p_group.is_some(),
            || match prime_power_end {
                Some(x) => format!("{} is an end vertex of a non-p-group", describe(group, x)),
                None => "p-group without a prime-power end vertex".to_string(),
            },
        );
    if p_group.is_some() {
        result.require(group.order() == ends.len() + 1, || {
            format!("|G| = {} but |E_G| + 1 = {}", group.order(), ends.len() + 1)
        })
    } else {
        result
    }
}

/// `|E_G|` is odd iff the group is a 2-group, and odd counts are `2^n - 1`.
pub fn check_parity(group: &FiniteGroup) -> CheckResult {
    let count = end_set(&build_graph(group)).len();
    let two_group = group.is_p_group() == Some(2);
    let odd = count % 2 == 1;
    let result = CheckResult::new("parity", group)
        .detail("end_vertices", count)
        .detail("two_group", two_group)
        .require(odd == two_group, || {
            format!(
                "|E_G| = {count} is {} but 2-group = {two_group}",
                if odd { "odd" } else { "even" }
            )
        });
    if odd {
        result.require((count + 1).is_power_of_two(), || {
            format!("|E_G| + 1 = {} is not a power of 2", count + 1)
        })
    } else {
        result
    }
}

/// The centralizer of an end vertex is covered by the cyclic subgroups of the
/// end vertices it contains.
pub fn check_centralizer_union(group: &FiniteGroup) -> CheckResult {
    let ends = end_set(&build_graph(group));
    let result = CheckResult::new("centralizer_union", group).detail("end_vertices", ends.len());
    if ends.is_empty() {
        return result.detail("vacuous", "E_G is empty");
    }
    let mut is_end = vec![false; group.order()];
    for &y in &ends {
        is_end[y] = true;
    }
    for &x in &ends {
        let centralizer = group.centralizer(x);
        let mut union = BTreeSet::new();
        for &y in centralizer.iter().filter(|&&y| is_end[y]) {
            union.extend(group.cyclic_subgroup(y));
        }
        let centralizer: BTreeSet<usize> = centralizer.into_iter().collect();
        if union != centralizer {
            return result.fail(format!(
                "{}: |C(x)| = {} but the union has {} elements",
                describe(group, x),
                centralizer.len(),
                union.len()
            ));
        }
    }
    result
}

/// `2n(Mn - n + 1)` with `M = max_phi_inverse(2n)`: the largest possible order
/// of a group with exactly `2n` end vertices.
pub fn general_order_bound(n: u64) -> u64 {
    let m = max_phi_inverse(2 * n);
    2 * n * (m * n - n + 1)
}

pub fn check_general_bound(group: &FiniteGroup) -> CheckResult {
    let count = end_set(&build_graph(group)).len() as u64;
    let result = CheckResult::new("general_order_bound", group).detail("end_vertices", count);
    if count == 0 || count % 2 == 1 {
        return result.not_applicable("|E_G| is not a positive even number");
    }
    let bound = general_order_bound(count / 2);
    let order = group.order() as u64;
    result
        .detail("bound", bound)
        .require(order <= bound, || format!("|G| = {order} exceeds {bound}"))
}

/// When all end vertices lie in one cyclic subgroup `<x>`, `|G| <= |x| phi(|x|)`.
/// Such an `x` is itself an end vertex, so only end vertices are scanned.
pub fn check_cyclic_containment_bound(group: &FiniteGroup) -> Result<CheckResult, GraphError> {
    require_order_3(group)?;
    let ends = end_set(&build_graph(group));
    let result =
        CheckResult::new("cyclic_containment_bound", group).detail("end_vertices", ends.len());
    let ends_set: BTreeSet<usize> = ends.iter().copied().collect();
    let generator = ends.iter().copied().find(|&x| {
        let span: BTreeSet<usize> = group.cyclic_subgroup(x).into_iter().collect();
        ends_set.is_subset(&span)
    });
    let Some(x) = generator else {
        return Ok(result.not_applicable("E_G is not inside one cyclic subgroup"));
    };
    let o = group.element_order(x);
    let bound = o * phi(o);
    let order = group.order() as u64;
    Ok(result
        .detail("order_of_x", o)
        .detail("bound", bound)
        .detail("sharp", order == bound)
        .require(order <= bound, || {
            format!("|G| = {order} exceeds |x| phi(|x|) = {bound}")
        }))
}

/// Structural graph facts: class adjacency matches the pairwise oracle for
/// small groups, the identity is universal, and the diameter is at most 2.
pub fn check_graph_invariants(group: &FiniteGroup) -> CheckResult {
    let graph = build_graph(group);
    let n = group.order();
    let mut result = CheckResult::new("graph_invariants", group);
    if n <= ORACLE_LIMIT {
        let edges = graph.edges();
        let oracle = brute_force_edges(graph.vertex_orders());
        result = result
            .detail("edges", edges.len())
            .require(edges == oracle, || {
                let first = edges.iter().zip(&oracle).find(|(a, b)| a != b);
                format!(
                    "class edges ({}) differ from the oracle ({}) near {:?}",
                    edges.len(),
                    oracle.len(),
                    first
                )
            });
    } else {
        result = result.detail("oracle", "skipped");
    }
    result = result.require(graph.degree(0) == n - 1, || {
        format!(
            "identity has degree {} instead of {}",
            graph.degree(0),
            n - 1
        )
    });
    for x in 0..n {
        let inverse = group.inverse(x);
        let both = graph.degree(x) == 1 && graph.degree(inverse) == 1;
        let neither = graph.degree(x) != 1 && graph.degree(inverse) != 1;
        if x != 0 && !(both || neither) {
            result = result.fail(format!(
                "{} and its inverse disagree on being an end vertex",
                describe(group, x)
            ));
            break;
        }
    }
    if n >= 2 {
        let d = graph.diameter().expect("at least two vertices");
        result = result
            .detail("diameter", d)
            .require(d <= 2, || format!("diameter {d}"));
        let star = graph.is_star().expect("at least two vertices");
        result = result
            .detail("star", star)
            .require(star == group.is_p_group().is_some(), || {
                format!(
                    "star = {star} but p-group = {}",
                    group.is_p_group().is_some()
                )
            });
    }
    result
}

/// Every check, in a fixed order. Checks that need `|G| >= 3` are reported as
/// not applicable for smaller groups.
pub fn run_full_suite(group: &FiniteGroup) -> Vec<CheckResult> {
    let degenerate = |name: &str| CheckResult::new(name, group).not_applicable("needs |G| >= 3");
    vec![
        check_rad_characterization(group).unwrap_or_else(|_| degenerate("rad_characterization")),
        check_phi_bound(group).unwrap_or_else(|_| degenerate("phi_bound")),
        check_unique_cyclic(group).unwrap_or_else(|_| degenerate("unique_cyclic")),
        check_prime_power_equivalence(group),
        check_parity(group),
        check_centralizer_union(group),
        check_general_bound(group),
        check_cyclic_containment_bound(group)
            .unwrap_or_else(|_| degenerate("cyclic_containment_bound")),
        check_graph_invariants(group),
    ]
}
