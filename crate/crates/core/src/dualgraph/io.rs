//! JSON interchange for dual graphs:
//!
//! ```json
//! {"root_index": 5,
//!  "vertices": [{"id": "v1", "a": "4/5", "w": 2}, {"id": "v2", "a": "3/5", "w": 3}],
//!  "edges": [["v1", "v2"]]}
//! ```
//!
//! Discrepancies are exact rational strings. `special` is written only when
//! true; `a` and `w` only when known. `root_index` is written when every
//! discrepancy is known and, when read, must clear all denominators.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{gorenstein_index, ResolutionGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root_index: Option<u32>,
    vertices: Vec<VertexRecord>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    special: bool,
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational64> {
    s.trim()
        .parse::<Rational64>()
        .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

impl ResolutionGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph file: {e}")))?;
        let vertices = file
            .vertices
            .into_iter()
            .map(|r| {
                Ok(Vertex {
                    a: r.a.as_deref().map(parse_rational).transpose()?,
                    id: r.id,
                    w: r.w,
                    special: r.special,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(r) = file.root_index {
            if r == 0 {
                return Err(Error::Parse("root_index must be positive".into()));
            }
            if let Some(v) = vertices
                .iter()
                .find(|v| v.a.is_some_and(|a| r as i64 % *a.denom() != 0))
            {
                return Err(Error::InvalidGraph(format!(
                    "a({}) = {} is not in (1/{r})Z",
                    v.id,
                    v.a.unwrap()
                )));
            }
        }
        let edges: Vec<(&str, &str)> = file
            .edges
            .iter()
            .map(|[x, y]| (x.as_str(), y.as_str()))
            .collect();
        Self::from_id_edges(vertices, &edges)
    }

    /// Canonical pretty-printed JSON; `from_json(to_json(g)) == g`.
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            root_index: gorenstein_index(self).ok().map(|r| r as u32),
            vertices: self
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    id: v.id.clone(),
                    a: v.a.map(|a| a.to_string()),
                    w: v.w,
                    special: v.special,
                })
                .collect(),
            edges: self
                .edges()
                .iter()
                .map(|&(i, j)| [self.vertex(i).id.clone(), self.vertex(j).id.clone()])
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"root_index": 5,
        "vertices": [{"id": "v1", "a": "4/5", "w": 2}, {"id": "v2", "a": "3/5", "w": 3}],
        "edges": [["v1", "v2"]]}"#;

    #[test]
    fn reads_sample() {
        let g = ResolutionGraph::from_json(SAMPLE).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.vertex(0).a, Some(Rational64::new(4, 5)));
        assert_eq!(g.vertex(1).w, Some(3));
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn canonical_text_is_a_fixed_point() {
        let g = ResolutionGraph::from_json(SAMPLE).unwrap();
        let text = g.to_json();
        let again = ResolutionGraph::from_json(&text).unwrap();
        assert_eq!(again, g);
        assert_eq!(again.to_json(), text);
    }

    #[test]
    fn optional_fields() {
        let g = ResolutionGraph::from_json(r#"{"vertices": [{"id": "x", "w": 4}]}"#).unwrap();
        assert_eq!(g.vertex(0).a, None);
        let text = g.to_json();
        assert!(!text.contains("root_index"));
        assert!(!text.contains("special"));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(ResolutionGraph::from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            ResolutionGraph::from_json(r#"{"vertices": [{"id": "x", "a": "1/0"}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            ResolutionGraph::from_json(r#"{"root_index": 2, "vertices": [{"id": "x", "a": "1/3"}]}"#),
            Err(Error::InvalidGraph(_))
        ));
        assert!(ResolutionGraph::from_json(r#"{"vertices": [], "colour": 1}"#).is_err());
    }
}
