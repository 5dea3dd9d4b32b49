//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use coprime_core::numtheory::gcd;
use coprime_core::perm::FiniteGroup;

/// Degree-1 non-identity elements, found by scanning every pair.
pub fn brute_end_vertices(group: &FiniteGroup) -> Vec<usize> {
    let orders = group.element_orders();
    (1..orders.len())
        .filter(|&x| {
            (0..orders.len())
                .filter(|&y| y != x && gcd(orders[x], orders[y]) == 1)
                .count()
                == 1
        })
        .collect()
}

/// Isomorphism invariants: element-order histogram, centre size, number of
/// conjugacy classes, size of the derived subgroup, the histogram of
/// (order, centralizer size) pairs, and the histogram of square-root counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub orders: BTreeMap<u64, usize>,
    pub center: usize,
    pub classes: usize,
    pub derived: usize,
    pub centralizers: BTreeMap<(u64, usize), usize>,
    pub square_roots: BTreeMap<usize, usize>,
}

pub fn fingerprint(group: &FiniteGroup) -> Fingerprint {
    let n = group.order();
    let mut orders = BTreeMap::new();
    let mut centralizers = BTreeMap::new();
    let mut center = 0;
    for x in 0..n {
        *orders.entry(group.element_order(x)).or_default() += 1;
        let c = group.centralizer(x).len();
        *centralizers.entry((group.element_order(x), c)).or_default() += 1;
        if c == n {
            center += 1;
        }
    }
    let mut seen = vec![false; n];
    let mut classes = 0;
    for x in 0..n {
        if !seen[x] {
            classes += 1;
            for y in group.conjugacy_class(x) {
                seen[y] = true;
            }
        }
    }
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[group.mul(y, y)] += 1;
    }
    let mut square_roots = BTreeMap::new();
    for r in roots {
        *square_roots.entry(r).or_default() += 1;
    }
    Fingerprint {
        orders,
        center,
        classes,
        derived: derived_subgroup_size(group),
        centralizers,
        square_roots,
    }
}

fn derived_subgroup_size(group: &FiniteGroup) -> usize {
    let n = group.order();
    let mut members: BTreeSet<usize> = BTreeSet::from([0]);
    for x in 0..n {
        for y in 0..n {
            let c = group.mul(
                group.mul(group.inverse(x), group.inverse(y)),
                group.mul(x, y),
            );
            members.insert(c);
        }
    }
    // close under multiplication
    loop {
        let current: Vec<usize> = members.iter().copied().collect();
        let before = members.len();
        for &a in &current {
            for &b in &current {
                members.insert(group.mul(a, b));
            }
        }
        if members.len() == before {
            return members.len();
        }
    }
}
