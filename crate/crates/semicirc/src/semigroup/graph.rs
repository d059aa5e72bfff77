//! Directed graphs as semigroup elements.

use super::SemigroupError;
use std::collections::BTreeSet;
use std::fmt;

/// A directed graph `(V, E)` with `E ⊆ V × V`, in explicit set form.
///
/// Overlay is pairwise union. Connect adds every edge from the left vertex
/// set to the right one (self-loops appear when the sets intersect).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiGraph {
    vertices: BTreeSet<u32>,
    edges: BTreeSet<(u32, u32)>,
}

impl DiGraph {
    pub fn empty() -> Self {
        DiGraph::default()
    }

    pub fn vertex(v: u32) -> Self {
        DiGraph {
            vertices: BTreeSet::from([v]),
            edges: BTreeSet::new(),
        }
    }

    pub fn from_parts(
        vertices: impl IntoIterator<Item = u32>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Self {
        let mut g = DiGraph {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        };
        for &(u, v) in &g.edges {
            g.vertices.insert(u);
            g.vertices.insert(v);
        }
        g
    }

    pub fn overlay(&self, other: &DiGraph) -> DiGraph {
        DiGraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn connect(&self, other: &DiGraph) -> DiGraph {
        let mut out = self.overlay(other);
        for &u in &self.vertices {
            for &v in &other.vertices {
                out.edges.insert((u, v));
            }
        }
        out
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }
}

impl fmt::Display for DiGraph {
    /// `1,2,3;1->2,1->3`: sorted vertices, `;`, sorted edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ";")?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}->{v}")?;
        }
        Ok(())
    }
}

pub(super) fn parse_graph(text: &str) -> Result<DiGraph, SemigroupError> {
    let bad = || SemigroupError::BadValue {
        kind: "graph",
        text: text.to_string(),
    };
    let (vert_part, edge_part) = text.trim().split_once(';').ok_or_else(bad)?;
    let mut vertices = BTreeSet::new();
    for tok in vert_part.split(',').filter(|t| !t.is_empty()) {
        vertices.insert(tok.trim().parse::<u32>().map_err(|_| bad())?);
    }
    let mut edges = BTreeSet::new();
    for tok in edge_part.split(',').filter(|t| !t.is_empty()) {
        let (u, v) = tok.trim().split_once("->").ok_or_else(bad)?;
        let u = u.parse::<u32>().map_err(|_| bad())?;
        let v = v.parse::<u32>().map_err(|_| bad())?;
        if !vertices.contains(&u) || !vertices.contains(&v) {
            return Err(bad());
        }
        edges.insert((u, v));
    }
    Ok(DiGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connect_adds_cross_edges() {
        let left = DiGraph::from_parts([1, 2], []);
        let right = DiGraph::vertex(3);
        let g = left.connect(&right);
        assert_eq!(g, DiGraph::from_parts([1, 2, 3], [(1, 3), (2, 3)]));
    }

    #[test]
    fn connect_introduces_self_loop_on_overlap() {
        let g = DiGraph::vertex(1).connect(&DiGraph::vertex(1));
        assert_eq!(g, DiGraph::from_parts([1], [(1, 1)]));
    }

    #[test]
    fn display_round_trips() {
        let g = DiGraph::from_parts([1, 2, 3], [(1, 2), (1, 3)]);
        assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
        let empty = DiGraph::empty();
        assert_eq!(parse_graph(&empty.to_string()).unwrap(), empty);
    }
}
