//! JSON graph file format.
//!
//! ```json
//! {
//!   "vertices": ["v1", "v2"],
//!   "edges": [{"id": "e1", "tail": "v1", "head": "v2"}],
//!   "plaquettes": [{"id": "p1", "chain": [{"edge": "e1", "sign": 1}]}]
//! }
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::chain_complex::{CellComplex, Edge, Plaquette};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub plaquettes: Vec<PlaquetteRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaquetteRecord {
    pub id: String,
    pub chain: Vec<SignedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedEdge {
    pub edge: String,
    pub sign: i32,
}

impl GraphFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidComplex(format!("graph JSON: {e}")))
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph records always serialize");
        s.push('\n');
        s
    }

    pub fn to_complex(&self) -> Result<CellComplex> {
        let vertex_index: HashMap<&str, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let edge_index: HashMap<&str, usize> =
            self.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();

        let lookup_vertex = |id: &str, edge: &str| {
            vertex_index.get(id).copied().ok_or_else(|| {
                Error::InvalidComplex(format!("edge {edge:?} names unknown vertex {id:?}"))
            })
        };

        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    id: e.id.clone(),
                    tail: lookup_vertex(&e.tail, &e.id)?,
                    head: lookup_vertex(&e.head, &e.id)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let plaquettes = self
            .plaquettes
            .iter()
            .map(|p| {
                let chain = p
                    .chain
                    .iter()
                    .map(|s| {
                        let e = edge_index.get(s.edge.as_str()).copied().ok_or_else(|| {
                            Error::InvalidComplex(format!(
                                "plaquette {:?} names unknown edge {:?}",
                                p.id, s.edge
                            ))
                        })?;
                        Ok((e, s.sign))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Plaquette { id: p.id.clone(), chain })
            })
            .collect::<Result<Vec<_>>>()?;

        CellComplex::new(self.vertices.clone(), edges, plaquettes)
    }
}

impl From<&CellComplex> for GraphFile {
    fn from(c: &CellComplex) -> Self {
        let vs = c.vertices();
        let es = c.edges();
        GraphFile {
            vertices: vs.to_vec(),
            edges: es
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.clone(),
                    tail: vs[e.tail].clone(),
                    head: vs[e.head].clone(),
                })
                .collect(),
            plaquettes: c
                .plaquettes()
                .iter()
                .map(|p| PlaquetteRecord {
                    id: p.id.clone(),
                    chain: p
                        .chain
                        .iter()
                        .map(|&(e, sign)| SignedEdge { edge: es[e].id.clone(), sign })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::build_ladder;
    use proptest::prelude::*;

    #[test]
    fn parses_minimal_document() {
        let g = GraphFile::from_json(
            r#"{"vertices":["a","b"],"edges":[{"id":"x","tail":"a","head":"b"}],"plaquettes":[]}"#,
        )
        .unwrap();
        let c = g.to_complex().unwrap();
        assert_eq!(c.edges()[0].tail, 0);
        assert_eq!(c.edges()[0].head, 1);
    }

    #[test]
    fn unknown_references_are_rejected() {
        let bad_vertex = r#"{"vertices":["a"],"edges":[{"id":"x","tail":"a","head":"z"}]}"#;
        assert!(GraphFile::from_json(bad_vertex).unwrap().to_complex().is_err());
        let bad_edge = r#"{"vertices":["a","b"],"edges":[{"id":"x","tail":"a","head":"b"}],
            "plaquettes":[{"id":"p","chain":[{"edge":"y","sign":1}]}]}"#;
        assert!(GraphFile::from_json(bad_edge).unwrap().to_complex().is_err());
        assert!(GraphFile::from_json(r#"{"vertices":[],"links":[]}"#).is_err());
    }

    proptest! {
        #[test]
        fn ladder_json_round_trips(n in 2usize..15) {
            let c = build_ladder(n).unwrap();
            let file = GraphFile::from(&c);
            let parsed = GraphFile::from_json(&file.to_json()).unwrap();
            prop_assert_eq!(&parsed, &file);
            prop_assert_eq!(parsed.to_complex().unwrap(), c);
        }
    }
}
