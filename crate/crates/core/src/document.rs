//! JSON input documents.
//!
//! Exactly one of `normals`, `flats`, `graph` or `builtin` is present;
//! `label` is optional. Graph vertices and edge endpoints are 1-based.

use serde::{Deserialize, Serialize};

use crate::builtins::{builtin, builtin_graph};
use crate::error::{Error, Result};
use crate::graphic::{graphic_arrangement, Graph};
use crate::lattice::Arrangement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatsInput {
    pub n: usize,
    pub multi_flats: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normals: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flats: Option<FlatsInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: InputDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed document: {e}")))?;
        let present = [
            doc.normals.is_some(),
            doc.flats.is_some(),
            doc.graph.is_some(),
            doc.builtin.is_some(),
        ]
        .iter()
        .filter(|&&p| p)
        .count();
        if present != 1 {
            return Err(Error::InvalidInput(format!(
                "expected exactly one of normals, flats, graph, builtin; found {present}"
            )));
        }
        Ok(doc)
    }

    pub fn builtin(name: &str) -> Self {
        InputDocument {
            builtin: Some(name.to_string()),
            ..Default::default()
        }
    }

    /// The flats variant describing `a`, suitable for re-ingestion.
    pub fn from_arrangement(a: &Arrangement) -> Self {
        InputDocument {
            flats: Some(FlatsInput {
                n: a.b1(),
                multi_flats: a.multi_flats().iter().map(|f| f.members.clone()).collect(),
            }),
            label: a.label.clone(),
            ..Default::default()
        }
    }

    /// The graph variant describing `g`, with 1-based endpoints.
    pub fn from_graph(g: &Graph, label: Option<String>) -> Self {
        InputDocument {
            graph: Some(GraphInput {
                vertices: g.vertex_count(),
                edges: g.edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
            }),
            label,
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn to_graph(&self) -> Result<Option<Graph>> {
        if let Some(g) = &self.graph {
            return Graph::from_one_based(g.vertices, &g.edges).map(Some);
        }
        if let Some(name) = &self.builtin {
            builtin(name)?;
            return Ok(builtin_graph(name));
        }
        Ok(None)
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let a = if let Some(normals) = &self.normals {
            Arrangement::from_normals(normals)?
        } else if let Some(f) = &self.flats {
            if let Some(bad) = f.multi_flats.iter().find(|m| m.len() < 3) {
                return Err(Error::InvalidInput(format!("multi-flat {bad:?} has fewer than 3 members")));
            }
            Arrangement::from_flats(f.n, &f.multi_flats)?
        } else if self.graph.is_some() {
            let g = self.to_graph()?.expect("graph variant");
            graphic_arrangement(&g)?
        } else if let Some(name) = &self.builtin {
            builtin(name)?
        } else {
            return Err(Error::InvalidInput("empty document".into()));
        };
        Ok(match &self.label {
            Some(l) => a.with_label(l.clone()),
            None => a,
        })
    }
}
