use crate::error::{Error, Result};

/// A hypergraph with sorted vertex ids and sorted, duplicate-free edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(mut vertices: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let mut norm = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::input("hypergraph edges must be non-empty"));
            }
            if let Some(v) = e.iter().find(|v| vertices.binary_search(v).is_err()) {
                return Err(Error::input(format!("edge vertex {v} is not a vertex")));
            }
            norm.push(e);
        }
        norm.sort();
        norm.dedup();
        if norm.is_empty() {
            return Err(Error::input("a hypergraph needs at least one edge"));
        }
        Ok(Hypergraph {
            vertices,
            edges: norm,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// (max edge size, max number of edges per vertex).
    pub fn arity_degree(&self) -> (usize, usize) {
        let arity = self.edges.iter().map(Vec::len).max().unwrap_or(0);
        let degree = self.incidence().iter().map(Vec::len).max().unwrap_or(0);
        (arity, degree)
    }

    /// Edges rewritten over dense vertex indices.
    pub fn dense_edges(&self) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .map(|e| e.iter().map(|v| self.index_of(*v).unwrap()).collect())
            .collect()
    }

    /// Edge indices per dense vertex index.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.dense_edges().iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Sorted neighbor lists of the primal graph over dense indices.
    pub fn primal_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in self.dense_edges() {
            for &a in &e {
                for &b in &e {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }
}
