//! Resolution dual graphs of log terminal surface singularities.
//!
//! Vertices are exceptional rational curves `E_i` carrying a log
//! discrepancy `a_i` and a self-intersection weight `w_i` (`E_i^2 = -w_i`);
//! edges are transverse intersection points.

mod io;
mod solve;

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use solve::{discrepancies_from_weights, intersection_matrix, is_negative_definite};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    /// Log discrepancy, if known.
    pub a: Option<Rational64>,
    /// Self-intersection weight `w` with `E^2 = -w`, if known.
    pub w: Option<u32>,
    /// Set on the curve inserted by the middle-edge blowup.
    pub special: bool,
}

impl Vertex {
    pub fn new(id: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            a: None,
            w: None,
            special: false,
        }
    }

    pub fn with_a(mut self, a: Rational64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_w(mut self, w: u32) -> Self {
        self.w = Some(w);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    StraightOdd,
    StraightEven,
    ThreeBranch,
}

impl ShapeClass {
    pub fn name(self) -> &'static str {
        match self {
            ShapeClass::StraightOdd => "STRAIGHT_ODD",
            ShapeClass::StraightEven => "STRAIGHT_EVEN",
            ShapeClass::ThreeBranch => "THREE_BRANCH",
        }
    }

    pub fn is_straight(self) -> bool {
        !matches!(self, ShapeClass::ThreeBranch)
    }
}

/// A weighted dual graph. Edges are stored as sorted index pairs `(i, j)`
/// with `i < j`; the graph itself need not be a tree until [`validate`]
/// is called.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl ResolutionGraph {
    pub fn new(vertices: Vec<Vertex>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.id.is_empty() {
                return Err(Error::InvalidGraph("empty vertex id".into()));
            }
            if seen.insert(v.id.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id `{}`", v.id)));
            }
            if v.w == Some(0) {
                return Err(Error::InvalidGraph(format!("weight of `{}` must be positive", v.id)));
            }
        }
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at `{}`", vertices[i].id)));
            }
            if !set.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge `{}`-`{}`",
                    vertices[i].id, vertices[j].id
                )));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        Ok(ResolutionGraph {
            vertices,
            edges,
            adjacency,
        })
    }

    /// Builds a graph whose edges are given by vertex ids.
    pub fn from_id_edges(vertices: Vec<Vertex>, edges: &[(&str, &str)]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("edge references unknown vertex `{id}`")))
        };
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, pairs)
    }

    /// The empty graph: the exceptional locus of a smooth germ.
    pub fn empty() -> Self {
        ResolutionGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(&j)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// All discrepancies, or `None` if some vertex has none.
    pub fn discrepancies(&self) -> Option<Vec<Rational64>> {
        self.vertices.iter().map(|v| v.a).collect()
    }

    pub fn weights(&self) -> Option<Vec<u32>> {
        self.vertices.iter().map(|v| v.w).collect()
    }

    pub fn with_discrepancies(&self, a: &[Rational64]) -> Self {
        assert_eq!(a.len(), self.len());
        let mut g = self.clone();
        for (v, &x) in g.vertices.iter_mut().zip(a) {
            v.a = Some(x);
        }
        g
    }

    pub fn special_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.special).count()
    }

    fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for &j in &self.adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        count == self.len()
    }

    /// Vertices of a straight graph in path order, starting from the end
    /// with the smaller index. `None` if the graph is not a path.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if self.is_empty() {
            return Some(Vec::new());
        }
        if self.len() == 1 {
            return Some(vec![0]);
        }
        let start = (0..self.len()).find(|&i| self.degree(i) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.adjacency[cur].iter().copied().find(|&j| j != prev);
            match next {
                Some(j) if order.len() < self.len() => {
                    order.push(j);
                    prev = cur;
                    cur = j;
                }
                _ => break,
            }
        }
        (order.len() == self.len()).then_some(order)
    }
}

/// Checks every structural invariant and classifies the shape.
///
/// The empty graph (smooth germ) is reported as `StraightEven`.
pub fn validate(g: &ResolutionGraph) -> Result<ShapeClass> {
    let n = g.len();
    if n > 0 && (g.edges().len() != n - 1 || !g.is_connected()) {
        return Err(Error::NotATree(format!(
            "{n} vertices, {} edges{}",
            g.edges().len(),
            if g.is_connected() { "" } else { ", disconnected" }
        )));
    }
    let mut branch_points = 0;
    for i in 0..n {
        match g.degree(i) {
            0..=2 => {}
            3 => branch_points += 1,
            d => {
                return Err(Error::BadShape(format!(
                    "vertex `{}` has degree {d}",
                    g.vertex(i).id
                )))
            }
        }
    }
    if branch_points > 1 {
        return Err(Error::BadShape(format!("{branch_points} vertices of degree 3")));
    }
    if g.special_count() > 1 {
        return Err(Error::BadShape("more than one special vertex".into()));
    }
    let two = Rational64::from_integer(2);
    for v in g.vertices() {
        if let Some(a) = v.a {
            if a <= Rational64::zero() || a > two {
                return Err(Error::DiscrepancyRange(format!("a({}) = {a} not in (0, 2]", v.id)));
            }
            if !v.special && a > Rational64::one() {
                return Err(Error::DiscrepancyRange(format!(
                    "a({}) = {a} exceeds 1 on a non-special vertex",
                    v.id
                )));
            }
        }
    }
    Ok(match (branch_points, n % 2) {
        (1, _) => ShapeClass::ThreeBranch,
        (_, 0) => ShapeClass::StraightEven,
        _ => ShapeClass::StraightOdd,
    })
}

/// Lcm of the denominators of all log discrepancies.
pub fn gorenstein_index(g: &ResolutionGraph) -> Result<u64> {
    let a = g
        .discrepancies()
        .ok_or_else(|| Error::MissingData("log discrepancies are not all set".into()))?;
    Ok(a.iter().fold(1u64, |acc, x| acc.lcm(&(*x.denom() as u64))))
}

/// Blows up the point of the middle edge of a straight graph with an even
/// number of vertices. The new curve is appended as the last vertex, is
/// marked special, has `a = a_i + a_j` and no recorded weight.
pub fn middle_blowup(g: &ResolutionGraph) -> Result<ResolutionGraph> {
    let shape = validate(g)?;
    if shape != ShapeClass::StraightEven || g.is_empty() {
        return Err(Error::WrongShape(format!(
            "middle blowup needs a nonempty STRAIGHT_EVEN graph, got {} with {} vertices",
            shape.name(),
            g.len()
        )));
    }
    let order = g.path_order().expect("validated straight graph");
    let (i, j) = (order[g.len() / 2 - 1], order[g.len() / 2]);
    let mut id = String::from("blowup");
    let mut k = 2;
    while g.index_of(&id).is_some() {
        id = format!("blowup{k}");
        k += 1;
    }
    let a = match (g.vertex(i).a, g.vertex(j).a) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    let mut vertices = g.vertices().to_vec();
    vertices.push(Vertex {
        id,
        a,
        w: None,
        special: true,
    });
    let new = vertices.len() - 1;
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != (i.min(j), i.max(j)))
        .chain([(i, new), (j, new)]);
    ResolutionGraph::new(vertices, edges)
}

/// A straight chain `v1 - v2 - ... - vn` with the given discrepancies.
pub fn chain(a: &[Rational64]) -> ResolutionGraph {
    let vertices = a
        .iter()
        .enumerate()
        .map(|(i, &x)| Vertex::new(format!("v{}", i + 1)).with_a(x))
        .collect();
    ResolutionGraph::new(vertices, (1..a.len()).map(|i| (i - 1, i))).expect("chain is well formed")
}
