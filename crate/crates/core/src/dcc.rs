//! Descent along towers of covers, and the finiteness checks behind the
//! descending chain condition, verified by exhaustive enumeration of
//! abstract quotient data.
//!
//! The enumerated data are combinatorial: every tree of straight or
//! three-branch shape with discrepancies in `(1/r)Z ∩ (0, 2]`, at most one
//! of them above 1. Not all of them come from actual singularities, so the
//! verification here is a combinatorial DCC check.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::equivariant::QuotientGraph;
use crate::error::{Error, Result};
use crate::laurent::MotiveValue;
use crate::stringy::{stringy_local, truncation_report, TruncationReport};

/// Quotient stringy motives along a tower of covers, bottom first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainRecord {
    pub entries: Vec<(String, MotiveValue)>,
}

impl ChainRecord {
    pub fn new(entries: Vec<(String, MotiveValue)>) -> Self {
        ChainRecord { entries }
    }

    pub fn common_root_index(&self) -> u32 {
        use num_integer::Integer;
        self.entries
            .iter()
            .fold(1, |r, (_, v)| r.lcm(&v.root_index()))
    }

    /// Every value re-expressed over the common root index.
    pub fn promoted(&self) -> ChainRecord {
        let r = self.common_root_index();
        ChainRecord {
            entries: self
                .entries
                .iter()
                .map(|(l, v)| (l.clone(), v.promoted(r)))
                .collect(),
        }
    }

    pub fn values(&self) -> impl Iterator<Item = &MotiveValue> {
        self.entries.iter().map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub strict: bool,
    /// Index of the first entry that fails to be below its predecessor.
    pub first_violation: Option<usize>,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl fmt::Display for DescentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.strict { "strict" } else { "non-strict" };
        match self.first_violation {
            None => write!(f, "PASS ({kind} descent)"),
            Some(i) => write!(f, "FAIL at index {i} ({kind} descent)"),
        }
    }
}

/// Checks `v_0 > v_1 > ...` (or `>=` when not strict).
pub fn check_descent(chain: &ChainRecord, strict: bool) -> DescentReport {
    let first_violation = chain
        .entries
        .windows(2)
        .position(|w| {
            let ord = w[0].1.compare(&w[1].1);
            if strict {
                ord.is_le()
            } else {
                ord.is_lt()
            }
        })
        .map(|i| i + 1);
    DescentReport {
        strict,
        first_violation,
    }
}

/// An unlabeled tree of straight or three-branch shape with a fixed vertex
/// numbering. Paths are numbered along the path; three-branch trees number
/// the node 0 and then each branch outward, shortest branch first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeShape {
    n: usize,
    edges: Vec<(usize, usize)>,
    branches: Option<[usize; 3]>,
}

impl TreeShape {
    pub fn path(n: usize) -> Self {
        TreeShape {
            n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
            branches: None,
        }
    }

    /// Three branches of lengths `p <= q <= s` at a node.
    pub fn three_branch(p: usize, q: usize, s: usize) -> Self {
        assert!(1 <= p && p <= q && q <= s);
        let mut edges = Vec::new();
        let mut next = 1;
        for len in [p, q, s] {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        TreeShape {
            n: next,
            edges,
            branches: Some([p, q, s]),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    pub fn name(&self) -> String {
        match self.branches {
            None => format!("P{}", self.n),
            Some([p, q, s]) => format!("T{p},{q},{s}"),
        }
    }

    /// Every shape with exactly `n` vertices, paths first.
    pub fn all_with(n: usize) -> Vec<TreeShape> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        out.push(TreeShape::path(n));
        for p in 1..n {
            for q in p..n {
                if 1 + p + 2 * q > n {
                    break;
                }
                let s = n - 1 - p - q;
                if s >= q {
                    out.push(TreeShape::three_branch(p, q, s));
                }
            }
        }
        out
    }

    /// Automorphisms as vertex permutations, identity first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..self.n).collect();
        permutations(&mut perm, 0, &mut |p| {
            if self.edges.iter().all(|&(i, j)| adj[p[i]][p[j]]) {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }
}

fn permutations(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Lexicographically least labeled adjacency encoding of a vertex-labeled
/// graph over all relabelings. Brute force; meant for small graphs.
pub fn canonical_form<L: Ord + Clone>(
    n: usize,
    edges: &[(usize, usize)],
    labels: &[L],
) -> (Vec<L>, Vec<(usize, usize)>) {
    let mut best: Option<(Vec<L>, Vec<(usize, usize)>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        // p sends old vertex i to new position p[i]
        let mut lab = vec![labels[0].clone(); n];
        for i in 0..n {
            lab[p[i]] = labels[i].clone();
        }
        let mut es: Vec<_> = edges
            .iter()
            .map(|&(i, j)| (p[i].min(p[j]), p[i].max(p[j])))
            .collect();
        es.sort();
        let cand = (lab, es);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    });
    best.unwrap_or_default()
}

/// One abstract quotient datum: a tree with discrepancies; `m = 1 - degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedDatum {
    pub shape: TreeShape,
    pub a: Vec<Rational64>,
}

impl EnumeratedDatum {
    pub fn quotient(&self) -> QuotientGraph {
        QuotientGraph::from_tree(&self.a, self.shape.edges()).expect("enumerated trees are simple")
    }

    /// Vertices with `a <= 1`.
    pub fn non_special_count(&self) -> usize {
        self.a.iter().filter(|&&x| x <= Rational64::from_integer(1)).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.a.len()
    }

    /// One line of the enumeration dump.
    pub fn record(&self, value: &MotiveValue, report: &TruncationReport) -> serde_json::Value {
        let c = report
            .c()
            .to_i64()
            .map_or_else(|| json!(report.c().to_string()), |c| json!(c));
        json!({
            "shape": {
                "name": self.shape.name(),
                "vertices": self.shape.len(),
                "edges": self.shape.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            },
            "a": self.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "motive": value.to_string(),
            "N": report.n().to_string(),
            "C": c,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_r: u32,
    pub max_vertices: usize,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            max_r: 6,
            max_vertices: 8,
        }
    }
}

/// Enumerates with the default bounds (`r <= 6`, at most 8 vertices).
pub fn enumerate_space(r: u32, max_vertices: usize) -> Result<Vec<(EnumeratedDatum, MotiveValue)>> {
    enumerate_space_within(EnumerationBounds::default(), r, max_vertices)
}

/// Every datum up to relabeling, in a fixed order: by vertex count, then
/// shape, then the discrepancy vector (as multiples of `1/r`) ascending.
/// Among labelings related by a shape automorphism only the least is kept.
pub fn enumerate_space_within(
    bounds: EnumerationBounds,
    r: u32,
    max_vertices: usize,
) -> Result<Vec<(EnumeratedDatum, MotiveValue)>> {
    if r == 0 || r > bounds.max_r {
        return Err(Error::BoundExceeded(format!("r = {r}, allowed 1..={}", bounds.max_r)));
    }
    if max_vertices > bounds.max_vertices {
        return Err(Error::BoundExceeded(format!(
            "max_vertices = {max_vertices}, allowed up to {}",
            bounds.max_vertices
        )));
    }
    let r = r as i64;
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for shape in TreeShape::all_with(n) {
            let autos = shape.automorphisms();
            let mut k = vec![1i64; n];
            loop {
                let above_one = k.iter().filter(|&&x| x > r).count();
                let least = autos[1..]
                    .iter()
                    .all(|p| (0..n).map(|i| k[p[i]]).cmp(k.iter().copied()).is_ge());
                if above_one <= 1 && least {
                    let datum = EnumeratedDatum {
                        shape: shape.clone(),
                        a: k.iter().map(|&x| Rational64::new(x, r)).collect(),
                    };
                    let value = stringy_local(&datum.quotient())?;
                    out.push((datum, value));
                }
                if !odometer(&mut k, 2 * r) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Advances `k` through `{1..=top}^n`, last position fastest. Returns
/// false after the final vector.
fn odometer(k: &mut [i64], top: i64) -> bool {
    for x in k.iter_mut().rev() {
        if *x < top {
            *x += 1;
            return true;
        }
        *x = 1;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DccReport {
    pub r: u32,
    pub max_vertices: usize,
    pub data: usize,
    pub distinct_values: usize,
    pub fibers: usize,
    /// Largest number of data sharing one `N`.
    pub largest_fiber: usize,
    pub violations: Vec<String>,
}

impl DccReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DccReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "combinatorial DCC, r = {}, at most {} vertices",
            self.r, self.max_vertices
        )?;
        writeln!(f, "  data: {}", self.data)?;
        writeln!(f, "  distinct motives: {}", self.distinct_values)?;
        writeln!(f, "  N-fibres: {} (largest {})", self.fibers, self.largest_fiber)?;
        for v in &self.violations {
            writeln!(f, "  violation: {v}")?;
        }
        write!(f, "  {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs the finiteness checks on one enumeration:
///
/// * every `N` has nonnegative coefficients;
/// * each datum has at most `C` vertices with `a <= 1` and at most `C + 1`
///   vertices in total, for the `C` of its own `N`;
/// * no datum is listed twice;
/// * the distinct values, sorted, form a strictly decreasing chain, so no
///   strictly decreasing sequence is longer than the value set.
pub fn verify_dcc_on_enumeration(r: u32, max_vertices: usize) -> Result<DccReport> {
    let space = enumerate_space(r, max_vertices)?;
    let mut violations = Vec::new();
    let mut fibers: HashMap<MotiveValue, usize> = HashMap::new();
    let mut keys: BTreeMap<(String, Vec<Rational64>), usize> = BTreeMap::new();
    for (idx, (datum, value)) in space.iter().enumerate() {
        let report = truncation_report(value)?;
        let c = report.c().clone();
        if !report.has_nonnegative_coefficients() {
            violations.push(format!("{} {:?}: N = {} has a negative coefficient", datum.shape.name(), datum.a, report.n()));
        }
        if BigInt::from(datum.non_special_count()) > c {
            violations.push(format!(
                "{} {:?}: {} non-special vertices but C = {c}",
                datum.shape.name(),
                datum.a,
                datum.non_special_count()
            ));
        }
        if BigInt::from(datum.vertex_count()) > &c + 1 {
            violations.push(format!(
                "{} {:?}: {} vertices but C + 1 = {}",
                datum.shape.name(),
                datum.a,
                datum.vertex_count(),
                &c + 1
            ));
        }
        if let Some(prev) = keys.insert((datum.shape.name(), datum.a.clone()), idx) {
            violations.push(format!("data {prev} and {idx} coincide"));
        }
        *fibers.entry(report.n()).or_default() += 1;
    }
    let mut values: Vec<&MotiveValue> = space.iter().map(|(_, v)| v).collect();
    values.sort_by(|a, b| b.compare(a));
    values.dedup_by(|a, b| a == b);
    if let Some(w) = values.windows(2).find(|w| !w[0].compare(w[1]).is_gt()) {
        violations.push(format!("sorted values {} and {} are not strictly decreasing", w[0], w[1]));
    }
    Ok(DccReport {
        r,
        max_vertices,
        data: space.len(),
        distinct_values: values.len(),
        fibers: fibers.len(),
        largest_fiber: fibers.values().copied().max().unwrap_or(0),
        violations,
    })
}
