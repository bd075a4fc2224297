//! Rational double points, their known group actions and towers of covers.
//!
//! Fixed actions live in `registry.json`; the chain flip on `A_n`, the
//! branch swap on `D_n` and trivial actions are generated for every rank.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::Rational64;
use serde::Deserialize;

use crate::dcc::{check_descent, ChainRecord, DescentReport};
use crate::dualgraph::{ResolutionGraph, Vertex};
use crate::equivariant::{GraphAction, Permutation};
use crate::error::{Error, Result};
use crate::stringy::quotient_motive;

#[derive(Deserialize)]
struct Registry {
    version: u32,
    graphs: Vec<String>,
    actions: Vec<ActionRecord>,
}

#[derive(Deserialize)]
struct ActionRecord {
    graph: String,
    group: String,
    label: String,
    generators: Vec<BTreeMap<String, String>>,
}

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| serde_json::from_str(include_str!("registry.json")).expect("registry parses"))
}

pub fn registry_version() -> u32 {
    registry().version
}

/// The simply laced Dynkin diagram `X_n` with every `a = 1` and `w = 2`.
///
/// Vertices are `v1..vn`. `A_n` is the path; `D_n` is the path
/// `v1..v(n-2)` with `v(n-1)` and `vn` attached to `v(n-2)`; `E_n` is the
/// path `v1..v(n-1)` with `vn` attached to `v3`. `A0` is the empty graph.
pub fn dynkin(family: &str, n: usize) -> Result<ResolutionGraph> {
    let unknown = || Error::UnknownEntry(format!("{family}{n}"));
    let edges: Vec<(usize, usize)> = match family {
        "A" => (1..n).map(|i| (i - 1, i)).collect(),
        "D" if n >= 4 => {
            let mut e: Vec<_> = (1..n - 2).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 2));
            e.push((n - 3, n - 1));
            e
        }
        "E" if (6..=8).contains(&n) => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((2, n - 1));
            e
        }
        _ => return Err(unknown()),
    };
    let vertices = (1..=n)
        .map(|i| {
            Vertex::new(format!("v{i}"))
                .with_a(Rational64::from_integer(1))
                .with_w(2)
        })
        .collect();
    ResolutionGraph::new(vertices, edges)
}

fn split_name(name: &str) -> Result<(&str, usize)> {
    let unknown = || Error::UnknownEntry(name.to_string());
    let family = name.get(..1).ok_or_else(unknown)?;
    let n = name[1..].parse::<usize>().map_err(|_| unknown())?;
    Ok((family, n))
}

/// Graph by catalog name, e.g. `"E6"`.
pub fn graph(name: &str) -> Result<ResolutionGraph> {
    let (family, n) = split_name(name)?;
    dynkin(family, n).map_err(|_| Error::UnknownEntry(name.to_string()))
}

fn permutation(g: &ResolutionGraph, map: &BTreeMap<String, String>) -> Result<Permutation> {
    let mut p: Permutation = (0..g.len()).collect();
    for (from, to) in map {
        let i = g
            .index_of(from)
            .ok_or_else(|| Error::UnknownEntry(format!("vertex `{from}`")))?;
        let j = g
            .index_of(to)
            .ok_or_else(|| Error::UnknownEntry(format!("vertex `{to}`")))?;
        p[i] = j;
    }
    Ok(p)
}

/// Graph and action for a key `NAME[:GROUP]`, e.g. `"D4:Z3"`, `"A7:Z2"`,
/// `"E7"` (trivial action) or `"A0:BO"` (smooth germ, any group).
pub fn known_action(cover: &str) -> Result<(ResolutionGraph, GraphAction)> {
    let unknown = || Error::UnknownEntry(cover.to_string());
    let (name, group) = match cover.split_once(':') {
        Some((n, g)) => (n.trim(), g.trim()),
        None => (cover.trim(), "trivial"),
    };
    let (family, n) = split_name(name).map_err(|_| unknown())?;
    let g = dynkin(family, n).map_err(|_| unknown())?;
    if g.is_empty() {
        // the smooth germ: every group acts with quotient motive 1
        let act = GraphAction::new(&g, Vec::new(), group)?;
        return Ok((g, act));
    }
    if matches!(group, "trivial" | "1") {
        let act = GraphAction::trivial(&g);
        return Ok((g, act));
    }
    if let Some(rec) = registry()
        .actions
        .iter()
        .find(|r| r.graph == name && r.group == group)
    {
        let gens = rec
            .generators
            .iter()
            .map(|m| permutation(&g, m))
            .collect::<Result<Vec<_>>>()?;
        let act = GraphAction::new(&g, gens, rec.label.as_str())?;
        return Ok((g, act));
    }
    let generator: Permutation = match (family, group) {
        ("A", "Z2") if n >= 2 => (0..n).rev().collect(),
        ("D", "Z2") if n >= 5 => {
            let mut p: Permutation = (0..n).collect();
            p.swap(n - 2, n - 1);
            p
        }
        _ => return Err(unknown()),
    };
    let act = GraphAction::new(&g, vec![generator], "Z/2")?;
    Ok((g, act))
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: ResolutionGraph,
    /// `(action, group key)`, trivial action first.
    pub known_actions: Vec<(GraphAction, String)>,
}

/// Every named entry of the registry with its known actions.
pub fn catalog() -> Vec<CatalogEntry> {
    registry()
        .graphs
        .iter()
        .map(|name| {
            let (family, n) = split_name(name).expect("registry names are valid");
            let mut keys = vec!["trivial".to_string()];
            keys.extend(
                registry()
                    .actions
                    .iter()
                    .filter(|r| &r.graph == name)
                    .map(|r| r.group.clone()),
            );
            if (family == "A" && n >= 2) || (family == "D" && n >= 5) {
                keys.push("Z2".into());
            }
            let known_actions = keys
                .into_iter()
                .map(|k| {
                    let (_, act) = known_action(&format!("{name}:{k}")).expect("registry actions are valid");
                    (act, k)
                })
                .collect();
            CatalogEntry {
                name: name.clone(),
                graph: graph(name).expect("registry names are valid"),
                known_actions,
            }
        })
        .collect()
}

/// `(name, group)` pairs, bottom of the tower first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    pub entries: Vec<(String, String)>,
}

impl TowerSpec {
    /// From keys such as `["E7", "E6:Z2", "D4:S3", "A0:BO"]`.
    pub fn parse<S: AsRef<str>>(keys: &[S]) -> Self {
        let entries = keys
            .iter()
            .map(|k| match k.as_ref().split_once(':') {
                Some((n, g)) => (n.trim().to_string(), g.trim().to_string()),
                None => (k.as_ref().trim().to_string(), "trivial".to_string()),
            })
            .collect();
        TowerSpec { entries }
    }
}

/// Quotient motive of every entry, then a strict descent check.
pub fn verify_tower(t: &TowerSpec) -> Result<(ChainRecord, DescentReport)> {
    let entries = t
        .entries
        .iter()
        .map(|(name, group)| {
            let (g, act) = known_action(&format!("{name}:{group}"))?;
            let (_, value) = quotient_motive(&g, &act)?;
            let label = match group.as_str() {
                "trivial" | "1" => format!("{name}/1"),
                _ => format!("{name}/{group}"),
            };
            Ok((label, value))
        })
        .collect::<Result<Vec<_>>>()?;
    let chain = ChainRecord::new(entries);
    let report = check_descent(&chain, true);
    Ok((chain, report))
}
