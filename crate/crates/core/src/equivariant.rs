//! Finite group actions on dual graphs and their quotients.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::dualgraph::{middle_blowup, validate, ResolutionGraph, ShapeClass, Vertex};
use crate::error::{Error, Result};

/// A vertex permutation: `perm[i]` is the image of vertex `i`.
pub type Permutation = Vec<usize>;

/// A permutation group acting on the vertices of one particular graph by
/// automorphisms that preserve discrepancies, weights and the special flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAction {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    label: String,
}

fn identity(n: usize) -> Permutation {
    (0..n).collect()
}

fn compose(p: &[usize], q: &[usize]) -> Permutation {
    // (p after q)(i) = p[q[i]]
    q.iter().map(|&i| p[i]).collect()
}

fn check_generator(g: &ResolutionGraph, perm: &[usize]) -> Result<()> {
    let n = g.len();
    if perm.len() != n {
        return Err(Error::ActionMismatch(format!(
            "permutation of {} points on a graph with {n} vertices",
            perm.len()
        )));
    }
    let mut hit = vec![false; n];
    for &j in perm {
        if j >= n || std::mem::replace(&mut hit[j], true) {
            return Err(Error::ActionMismatch("generator is not a bijection".into()));
        }
    }
    for (i, &j) in perm.iter().enumerate() {
        let (vi, vj) = (g.vertex(i), g.vertex(j));
        if vi.a != vj.a || vi.w != vj.w || vi.special != vj.special {
            return Err(Error::ActionMismatch(format!(
                "`{}` -> `{}` changes the curve's data",
                vi.id, vj.id
            )));
        }
    }
    for &(i, j) in g.edges() {
        if !g.has_edge(perm[i], perm[j]) {
            return Err(Error::ActionMismatch(format!(
                "edge `{}`-`{}` is not mapped to an edge",
                g.vertex(i).id,
                g.vertex(j).id
            )));
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    generators: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    label: String,
}

impl GraphAction {
    pub fn new(g: &ResolutionGraph, generators: Vec<Permutation>, label: impl Into<String>) -> Result<Self> {
        for p in &generators {
            check_generator(g, p)?;
        }
        let n = g.len();
        let mut elements = vec![identity(n)];
        let mut seen: HashSet<Permutation> = elements.iter().cloned().collect();
        let mut queue = VecDeque::from([identity(n)]);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = compose(s, &x);
                if seen.insert(y.clone()) {
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(GraphAction {
            generators,
            elements,
            label: label.into(),
        })
    }

    pub fn trivial(g: &ResolutionGraph) -> Self {
        Self::new(g, Vec::new(), "1").expect("trivial action is valid")
    }

    /// Builds generators from `(source id, target id)` lists; omitted
    /// vertices are fixed.
    pub fn from_id_maps(g: &ResolutionGraph, maps: &[&[(&str, &str)]], label: &str) -> Result<Self> {
        let generators = maps
            .iter()
            .map(|pairs| {
                let mut perm = identity(g.len());
                for (s, t) in pairs.iter() {
                    let i = g
                        .index_of(s)
                        .ok_or_else(|| Error::ActionMismatch(format!("unknown vertex `{s}`")))?;
                    let j = g
                        .index_of(t)
                        .ok_or_else(|| Error::ActionMismatch(format!("unknown vertex `{t}`")))?;
                    perm[i] = j;
                }
                Ok(perm)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, generators, label)
    }

    /// Reads `{"generators": [{"v1": "v3", "v3": "v1"}], "label": "Z/2"}`.
    pub fn from_json(g: &ResolutionGraph, text: &str) -> Result<Self> {
        let file: ActionFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("action file: {e}")))?;
        let maps: Vec<Vec<(&str, &str)>> = file
            .generators
            .iter()
            .map(|m| m.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect())
            .collect();
        let refs: Vec<&[(&str, &str)]> = maps.iter().map(Vec::as_slice).collect();
        Self::from_id_maps(g, &refs, &file.label)
    }

    pub fn to_json(&self, g: &ResolutionGraph) -> String {
        let file = ActionFile {
            generators: self
                .generators
                .iter()
                .map(|p| {
                    p.iter()
                        .enumerate()
                        .filter(|(i, j)| i != *j)
                        .map(|(i, &j)| (g.vertex(i).id.clone(), g.vertex(j).id.clone()))
                        .collect()
                })
                .collect(),
            label: self.label.clone(),
        };
        serde_json::to_string_pretty(&file).expect("action serializes")
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Every group element, identity first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The same action on a graph with `extra` appended vertices, each
    /// fixed by every element.
    fn extended(&self, extra: usize) -> (Vec<Permutation>, String) {
        let gens = self
            .generators
            .iter()
            .map(|p| {
                let n = p.len();
                p.iter().copied().chain(n..n + extra).collect()
            })
            .collect();
        (gens, self.label.clone())
    }

    fn check_against(&self, g: &ResolutionGraph) -> Result<()> {
        if self.elements[0].len() != g.len() {
            return Err(Error::ActionMismatch(format!(
                "action on {} points paired with a graph of {} vertices",
                self.elements[0].len(),
                g.len()
            )));
        }
        self.generators.iter().try_for_each(|p| check_generator(g, p))
    }
}

/// True iff no group element maps an edge to itself with its ends swapped.
pub fn is_g_normal(g: &ResolutionGraph, act: &GraphAction) -> Result<bool> {
    act.check_against(g)?;
    Ok(act
        .elements()
        .iter()
        .all(|p| g.edges().iter().all(|&(i, j)| !(p[i] == j && p[j] == i))))
}

/// Minimal resolution, followed by the blowup of the middle edge when the
/// graph is a straight line with an even number of vertices. The blowup
/// point is fixed by every automorphism, so the action extends by fixing
/// the new curve.
pub fn modified_minimal_resolution(
    g: &ResolutionGraph,
    act: &GraphAction,
) -> Result<(ResolutionGraph, GraphAction)> {
    let shape = validate(g)?;
    act.check_against(g)?;
    if shape != ShapeClass::StraightEven || g.is_empty() {
        return Ok((g.clone(), act.clone()));
    }
    let blown = middle_blowup(g)?;
    let (gens, label) = act.extended(1);
    let extended = GraphAction::new(&blown, gens, label)?;
    Ok((blown, extended))
}

/// A vertex of `Γ/G`: one orbit of exceptional curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitVertex {
    /// Id of the representative (the member with the least index).
    pub id: String,
    pub members: Vec<usize>,
    pub a: Rational64,
    /// Number of `Stab(rep)`-orbits on the neighbours of the representative.
    pub quotient_degree: usize,
    /// `{E_ι°/G} = L + m`.
    pub m: i64,
    pub special: bool,
}

impl OrbitVertex {
    pub fn orbit_size(&self) -> usize {
        self.members.len().max(1)
    }
}

/// The orbit graph `Γ/G` together with the data the stringy formula reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    vertices: Vec<OrbitVertex>,
    edges: Vec<(usize, usize)>,
}

impl QuotientGraph {
    /// Abstract quotient data on a tree: every orbit is a single curve and
    /// `m = 1 - degree`. Vertices with `a > 1` are flagged special.
    pub fn from_tree(a: &[Rational64], edges: &[(usize, usize)]) -> Result<Self> {
        let n = a.len();
        let mut degree = vec![0usize; n];
        let mut set = BTreeSet::new();
        for &(i, j) in edges {
            if i >= n || j >= n || i == j || !set.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("bad edge ({i}, {j})")));
            }
            degree[i] += 1;
            degree[j] += 1;
        }
        let vertices = a
            .iter()
            .enumerate()
            .map(|(i, &x)| OrbitVertex {
                id: format!("v{}", i + 1),
                members: vec![i],
                a: x,
                quotient_degree: degree[i],
                m: 1 - degree[i] as i64,
                special: x > Rational64::from_integer(1),
            })
            .collect();
        Ok(QuotientGraph {
            vertices,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> &[OrbitVertex] {
        &self.vertices
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

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(x, y)| x == i || y == i).count()
    }

    /// The orbit graph as a plain dual graph, for shape checks.
    pub fn as_graph(&self) -> ResolutionGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                special: v.special,
                ..Vertex::new(v.id.clone()).with_a(v.a)
            })
            .collect();
        ResolutionGraph::new(vertices, self.edges.iter().copied()).expect("orbit graph is simple")
    }
}

/// Builds `Γ/G` for a G-normal action.
pub fn quotient(g: &ResolutionGraph, act: &GraphAction) -> Result<QuotientGraph> {
    if !is_g_normal(g, act)? {
        return Err(Error::NotGNormal(format!(
            "some element of `{}` swaps the ends of an edge",
            act.label()
        )));
    }
    let a = g
        .discrepancies()
        .ok_or_else(|| Error::MissingData("log discrepancies are not all set".into()))?;
    let n = g.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut vertices: Vec<OrbitVertex> = Vec::new();
    for rep in 0..n {
        if orbit_of[rep] != usize::MAX {
            continue;
        }
        let members: BTreeSet<usize> = act.elements().iter().map(|p| p[rep]).collect();
        for &i in &members {
            orbit_of[i] = vertices.len();
        }
        let stab: Vec<&Permutation> = act.elements().iter().filter(|p| p[rep] == rep).collect();
        let mut neighbor_orbits: Vec<BTreeSet<usize>> = Vec::new();
        for &nb in g.neighbors(rep) {
            if neighbor_orbits.iter().any(|o| o.contains(&nb)) {
                continue;
            }
            neighbor_orbits.push(stab.iter().map(|p| p[nb]).collect());
        }
        let qd = neighbor_orbits.len();
        vertices.push(OrbitVertex {
            id: g.vertex(rep).id.clone(),
            members: members.into_iter().collect(),
            a: a[rep],
            quotient_degree: qd,
            m: 1 - qd as i64,
            special: g.vertex(rep).special,
        });
    }
    let mut edges = BTreeSet::new();
    for &(i, j) in g.edges() {
        let (x, y) = (orbit_of[i], orbit_of[j]);
        if x == y {
            return Err(Error::MultiEdge(vertices[x].id.clone()));
        }
        edges.insert((x.min(y), x.max(y)));
    }
    let q = QuotientGraph {
        vertices,
        edges: edges.into_iter().collect(),
    };
    for (k, v) in q.vertices.iter().enumerate() {
        if q.degree(k) != v.quotient_degree {
            return Err(Error::MultiEdge(v.id.clone()));
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::chain;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn ones(n: usize) -> Vec<Rational64> {
        vec![q(1, 1); n]
    }

    fn flip(n: usize) -> Permutation {
        (0..n).rev().collect()
    }

    fn d4() -> ResolutionGraph {
        let vs = (1..=4).map(|i| Vertex::new(format!("v{i}")).with_a(q(1, 1)).with_w(2)).collect();
        ResolutionGraph::new(vs, [(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    fn e6() -> ResolutionGraph {
        let vs = (1..=6).map(|i| Vertex::new(format!("v{i}")).with_a(q(1, 1)).with_w(2)).collect();
        ResolutionGraph::new(vs, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn group_closure() {
        let g = d4();
        let z3 = GraphAction::new(&g, vec![vec![2, 1, 3, 0]], "Z/3").unwrap();
        assert_eq!(z3.group_order(), 3);
        let s3 = GraphAction::new(&g, vec![vec![2, 1, 3, 0], vec![2, 1, 0, 3]], "S3").unwrap();
        assert_eq!(s3.group_order(), 6);
        assert_eq!(GraphAction::trivial(&g).group_order(), 1);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let g = d4();
        assert!(matches!(
            GraphAction::new(&g, vec![vec![1, 0, 2, 3]], "bad"),
            Err(Error::ActionMismatch(_))
        ));
        assert!(GraphAction::new(&g, vec![vec![0, 0, 2, 3]], "bad").is_err());
        assert!(GraphAction::new(&g, vec![vec![0, 1, 2]], "bad").is_err());
        let uneven = chain(&[q(1, 1), q(1, 2), q(1, 1), q(1, 1)]);
        assert!(GraphAction::new(&uneven, vec![flip(4)], "Z/2").is_err());
    }

    #[test]
    fn g_normality_of_paths() {
        let a3 = chain(&ones(3));
        let swap = GraphAction::new(&a3, vec![flip(3)], "Z/2").unwrap();
        assert!(is_g_normal(&a3, &swap).unwrap());
        let a2 = chain(&ones(2));
        let swap = GraphAction::new(&a2, vec![flip(2)], "Z/2").unwrap();
        assert!(!is_g_normal(&a2, &swap).unwrap());
        assert!(matches!(quotient(&a2, &swap), Err(Error::NotGNormal(_))));
        assert!(is_g_normal(&a2, &GraphAction::trivial(&a2)).unwrap());
    }

    #[test]
    fn mismatched_pairing_is_reported() {
        let swap = GraphAction::new(&chain(&ones(3)), vec![flip(3)], "Z/2").unwrap();
        assert!(matches!(
            is_g_normal(&chain(&ones(4)), &swap),
            Err(Error::ActionMismatch(_))
        ));
    }

    #[test]
    fn modified_resolution_of_a2() {
        let a2 = chain(&ones(2));
        let swap = GraphAction::new(&a2, vec![flip(2)], "Z/2").unwrap();
        let (g, act) = modified_minimal_resolution(&a2, &swap).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.vertex(2).a, Some(q(2, 1)));
        assert_eq!(act.generators()[0], vec![1, 0, 2]);
        assert!(is_g_normal(&g, &act).unwrap());
    }

    #[test]
    fn modified_resolution_leaves_others_alone() {
        let g = e6();
        let refl = GraphAction::new(&g, vec![vec![4, 3, 2, 1, 0, 5]], "Z/2").unwrap();
        let (h, act) = modified_minimal_resolution(&g, &refl).unwrap();
        assert_eq!(h, g);
        assert_eq!(act, refl);
        let (h, _) = modified_minimal_resolution(&d4(), &GraphAction::trivial(&d4())).unwrap();
        assert_eq!(h, d4());
    }

    #[test]
    fn d4_mod_z3() {
        let g = d4();
        let z3 = GraphAction::new(&g, vec![vec![2, 1, 3, 0]], "Z/3").unwrap();
        let qg = quotient(&g, &z3).unwrap();
        assert_eq!(qg.len(), 2);
        assert_eq!(qg.edges(), &[(0, 1)]);
        for v in qg.vertices() {
            assert_eq!(v.quotient_degree, 1);
            assert_eq!(v.m, 0);
        }
        assert_eq!(qg.vertices()[0].orbit_size(), 3);
        assert_eq!(qg.vertices()[1].orbit_size(), 1);
    }

    #[test]
    fn e6_mod_z2() {
        let g = e6();
        let refl = GraphAction::new(&g, vec![vec![4, 3, 2, 1, 0, 5]], "Z/2").unwrap();
        let qg = quotient(&g, &refl).unwrap();
        let ids: Vec<_> = qg.vertices().iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, ["v1", "v2", "v3", "v6"]);
        let degs: Vec<_> = qg.vertices().iter().map(|v| v.quotient_degree).collect();
        assert_eq!(degs, [1, 2, 2, 1]);
        let ms: Vec<_> = qg.vertices().iter().map(|v| v.m).collect();
        assert_eq!(ms, [0, -1, -1, 0]);
        assert_eq!(validate(&qg.as_graph()).unwrap(), ShapeClass::StraightEven);
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let g = e6();
        let qg = quotient(&g, &GraphAction::trivial(&g)).unwrap();
        assert_eq!(qg.len(), 6);
        for (i, v) in qg.vertices().iter().enumerate() {
            assert_eq!(v.orbit_size(), 1);
            assert_eq!(v.m, 1 - g.degree(i) as i64);
        }
        assert_eq!(qg.edges(), g.edges());
    }

    #[test]
    fn action_json_round_trip() {
        let g = d4();
        let text = r#"{"generators": [{"v1": "v3", "v3": "v4", "v4": "v1"}], "label": "Z/3"}"#;
        let act = GraphAction::from_json(&g, text).unwrap();
        assert_eq!(act.group_order(), 3);
        assert_eq!(act.label(), "Z/3");
        let again = GraphAction::from_json(&g, &act.to_json(&g)).unwrap();
        assert_eq!(again, act);
        assert!(matches!(
            GraphAction::from_json(&g, r#"{"generators": [{"v9": "v1"}]}"#),
            Err(Error::ActionMismatch(_))
        ));
        assert!(matches!(GraphAction::from_json(&g, "[]"), Err(Error::Parse(_))));
    }

    #[test]
    fn abstract_tree_quotient() {
        let qg = QuotientGraph::from_tree(&[q(1, 2), q(2, 1)], &[(0, 1)]).unwrap();
        assert!(!qg.vertices()[0].special);
        assert!(qg.vertices()[1].special);
        assert_eq!(qg.vertices()[0].m, 0);
        assert!(QuotientGraph::from_tree(&[q(1, 1)], &[(0, 0)]).is_err());
    }
}
