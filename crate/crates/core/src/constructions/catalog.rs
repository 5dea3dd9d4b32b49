//! Line-oriented group catalog.
//!
//! ```text
//! # comment
//! @complete 1-24, 28, 36
//! Z6 | Cyclic(6) | order=6 | expect=2 | sgid=(6,2) | note=cyclic
//! ```
//!
//! Fields after the construction are `key=value` pairs; only `order` is
//! required. `|` inside a quoted presentation does not split fields. An
//! `@complete` line lists orders for which the catalog holds every group up to
//! isomorphism.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::perm::FiniteGroup;

use super::{ConstructionError, GroupSpec};

/// The catalog shipped with the crate.
pub const BUNDLED_CATALOG: &str = include_str!("../../data/catalog.txt");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate label '{label}'")]
    DuplicateLabel { line: usize, label: String },
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
}

/// Index of a group in the standard small-groups library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SmallGroupId {
    pub order: u64,
    pub index: u64,
}

impl fmt::Display for SmallGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.order, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub spec: GroupSpec,
    pub order: u64,
    pub expected_end_vertices: Option<u64>,
    pub small_group_id: Option<SmallGroupId>,
    pub note: String,
    pub line: usize,
}

impl CatalogEntry {
    /// Builds the group and checks it against the declared order.
    pub fn realize(&self) -> Result<FiniteGroup, ConstructionError> {
        let g = self.spec.build()?;
        if g.order() as u64 != self.order {
            return Err(ConstructionError::OrderMismatch {
                declared: self.order,
                realized: g.order() as u64,
            });
        }
        Ok(g.with_label(self.label.clone()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub complete_orders: BTreeSet<u64>,
}

impl Catalog {
    pub fn bundled() -> Catalog {
        parse_catalog(BUNDLED_CATALOG).expect("bundled catalog parses")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn is_complete(&self, order: u64) -> bool {
        self.complete_orders.contains(&order)
    }

    /// Sub-catalog of the entries accepted by `keep`; completeness claims are
    /// kept only for orders whose entries all survive.
    pub fn filtered(&self, mut keep: impl FnMut(&CatalogEntry) -> bool) -> Catalog {
        let entries: Vec<CatalogEntry> = self.entries.iter().filter(|e| keep(e)).cloned().collect();
        let complete_orders = self
            .complete_orders
            .iter()
            .copied()
            .filter(|&o| {
                let before = self.entries.iter().filter(|e| e.order == o).count();
                let after = entries.iter().filter(|e| e.order == o).count();
                before == after
            })
            .collect();
        Catalog {
            entries,
            complete_orders,
        }
    }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let mut catalog = Catalog::default();
    let mut labels = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(rest) = content.strip_prefix("@complete") {
            for order in
                parse_order_list(rest).map_err(|message| CatalogError::Parse { line, message })?
            {
                catalog.complete_orders.insert(order);
            }
            continue;
        }
        let entry = parse_entry(content, line)?;
        if !labels.insert(entry.label.clone()) {
            return Err(CatalogError::DuplicateLabel {
                line,
                label: entry.label,
            });
        }
        catalog.entries.push(entry);
    }
    Ok(catalog)
}

fn parse_order_list(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad order '{s}'"))
        };
        match item.split_once('-') {
            Some((lo, hi)) => out.extend(num(lo)?..=num(hi)?),
            None => out.push(num(item)?),
        }
    }
    Ok(out)
}

/// Splits on `|` outside double quotes.
fn split_fields(line: &str) -> Vec<&str> {
    let mut fields = Vec::new();
    let mut quoted = false;
    let mut start = 0;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '|' if !quoted => {
                fields.push(line[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    fields.push(line[start..].trim());
    fields
}

fn parse_entry(content: &str, line: usize) -> Result<CatalogEntry, CatalogError> {
    let err = |message: String| CatalogError::Parse { line, message };
    let fields = split_fields(content);
    if fields.len() < 3 {
        return Err(err("expected 'label | spec | order=N | ...'".into()));
    }
    let label = fields[0].to_string();
    if label.is_empty() {
        return Err(err("empty label".into()));
    }
    let spec = GroupSpec::parse(fields[1]).map_err(|e| err(format!("in spec: {e}")))?;

    let mut order = None;
    let mut expected_end_vertices = None;
    let mut small_group_id = None;
    let mut note = String::new();
    for field in &fields[2..] {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got '{field}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let number = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| err(format!("bad number '{v}' for {key}")))
        };
        match key {
            "order" => order = Some(number(value)?),
            "expect" => expected_end_vertices = Some(number(value)?),
            "sgid" => {
                let inner = value
                    .strip_prefix('(')
                    .and_then(|v| v.strip_suffix(')'))
                    .and_then(|v| v.split_once(','))
                    .ok_or_else(|| err(format!("bad sgid '{value}'")))?;
                small_group_id = Some(SmallGroupId {
                    order: number(inner.0.trim())?,
                    index: number(inner.1.trim())?,
                });
            }
            "note" => note = value.to_string(),
            other => return Err(err(format!("unknown field '{other}'"))),
        }
    }
    let order = order.ok_or_else(|| err("missing order=N".into()))?;
    if let Some(id) = small_group_id {
        if id.order != order {
            return Err(err(format!("sgid {id} disagrees with order {order}")));
        }
    }
    Ok(CatalogEntry {
        label,
        spec,
        order,
        expected_end_vertices,
        small_group_id,
        note,
        line,
    })
}
