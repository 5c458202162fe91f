//! JSON graph files: `{"name": "...", "order": n, "edges": [[u, v], ...]}`.
//!
//! Emission writes edges as `u < v` in lexicographic order, so the same graph
//! always serializes to the same bytes.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct GraphFile {
    #[serde(default)]
    name: String,
    order: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            name: self.name.clone(),
            order: self.order(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&file).expect("graph serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        let edges = file.edges.into_iter().map(|[u, v]| (u, v));
        Ok(Graph::new(file.order, edges)?.with_name(file.name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emission_is_sorted_and_canonical() {
        let g = Graph::new(4, [(3, 2), (1, 0), (2, 0)]).unwrap().with_name("demo");
        assert_eq!(
            g.to_json(),
            r#"{"name":"demo","order":4,"edges":[[0,1],[0,2],[2,3]]}"#
        );
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(matches!(Graph::from_json("{"), Err(Error::MalformedJson(_))));
        assert!(matches!(
            Graph::from_json(r#"{"order":2,"edges":[[0,0]]}"#),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            Graph::from_json(r#"{"order":2,"edges":[[0,2]]}"#),
            Err(Error::VertexOutOfRange { .. })
        ));
        // name is optional on ingestion
        assert_eq!(Graph::from_json(r#"{"order":1,"edges":[]}"#).unwrap().order(), 1);
    }
}
